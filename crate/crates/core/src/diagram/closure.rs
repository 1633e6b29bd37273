//! The closure of a colored braid as a colored diagram.

use crate::braid::ClosableBraid;

use super::{ArcId, ColoredDiagram, Component, Crossing, Sign};

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

impl ClosableBraid {
    /// Diagram of the closure. Components follow the cycles of the strand
    /// permutation; arcs are named `1..m` in traversal order.
    pub fn closure_diagram(&self) -> ColoredDiagram {
        self.closure_with_top_arcs().0
    }

    /// The closure together with the arc at each top position.
    pub fn closure_with_top_arcs(&self) -> (ColoredDiagram, Vec<ArcId>) {
        let b = self.braid();
        let n = b.strands();
        // raw arcs: 0..n are the top arcs, one more per letter
        let mut strand_arcs: Vec<Vec<usize>> = (0..n).map(|p| vec![p]).collect();
        let mut at: Vec<usize> = (0..n).collect(); // at[pos] = strand (top position)
        let mut cur: Vec<usize> = (0..n).collect(); // cur[pos] = current raw arc
        let mut raw_count = n;
        let mut raw_crossings = Vec::with_capacity(b.word().len());
        for &g in b.word() {
            let i = g.unsigned_abs() as usize - 1;
            let (under, over, sign) = if g > 0 { (i, i + 1, Sign::Positive) } else { (i + 1, i, Sign::Negative) };
            let out = raw_count;
            raw_count += 1;
            raw_crossings.push((sign, cur[over], cur[under], out));
            strand_arcs[at[under]].push(out);
            cur[under] = out;
            cur.swap(i, i + 1);
            at.swap(i, i + 1);
        }
        let mut parent: Vec<usize> = (0..raw_count).collect();
        for (pos, &arc) in cur.iter().enumerate() {
            let (x, y) = (find(&mut parent, arc), find(&mut parent, pos));
            parent[x] = y;
        }

        let info = b.permutation_info();
        let mut final_id = vec![usize::MAX; raw_count];
        let mut names = Vec::new();
        let mut components = Vec::new();
        for (k, cycle) in info.cycles.iter().enumerate() {
            let mut raw: Vec<usize> = cycle.iter().flat_map(|&p| strand_arcs[p][1..].iter().copied()).collect();
            if raw.is_empty() {
                raw.push(cycle[0]);
            }
            let mut arcs = Vec::with_capacity(raw.len());
            for r in raw {
                let root = find(&mut parent, r);
                if final_id[root] == usize::MAX {
                    final_id[root] = names.len();
                    names.push((names.len() + 1).to_string());
                }
                arcs.push(ArcId(final_id[root]));
            }
            components.push(Component { id: (k + 1).to_string(), color: b.top_colors()[cycle[0]], arcs });
        }
        let mut id = |r| ArcId(final_id[find(&mut parent, r)]);
        let crossings = raw_crossings
            .into_iter()
            .map(|(sign, o, i, u)| Crossing { sign, over: id(o), under_in: id(i), under_out: id(u) })
            .collect();
        let top = (0..n).map(id).collect();
        let d = ColoredDiagram::new(names, components, crossings).expect("braid closures are well-formed");
        (d, top)
    }
}
