//! Arc colorings of a diagram by constraint propagation and backtracking.
//!
//! Each crossing is the ternary constraint `out = in ▷^s_c over`. Domains are
//! bitsets; propagation keeps every crossing generalized arc consistent, and
//! search branches on the arc with the fewest candidates left.

use std::collections::VecDeque;

use crate::diagram::ColoredDiagram;
use crate::quandle::MultiQuandle;

use super::{check_colors, ColoringSet, InvariantError, DEFAULT_SOLUTION_CAP};

#[derive(Clone, PartialEq, Eq)]
struct Domain(Vec<u64>);

impl Domain {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        Domain(words)
    }

    fn empty(n: usize) -> Self {
        Domain(vec![0; n.div_ceil(64)])
    }

    fn single(n: usize, v: usize) -> Self {
        let mut d = Self::empty(n);
        d.insert(v);
        d
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn len(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + b
                })
            })
        })
    }

    fn first(&self) -> usize {
        self.iter().next().expect("domain is nonempty")
    }
}

#[derive(Clone, Copy)]
struct Constraint {
    positive: bool,
    color: usize,
    over: usize,
    under_in: usize,
    under_out: usize,
}

struct Solver<'a> {
    mq: &'a MultiQuandle,
    order: usize,
    constraints: Vec<Constraint>,
    /// constraints touching each arc
    watch: Vec<Vec<usize>>,
    cap: usize,
    count: u64,
    solutions: Vec<Vec<usize>>,
    overflow: bool,
}

impl Solver<'_> {
    /// Removes unsupported values for one constraint. Returns the arcs whose
    /// domains shrank, or `None` on a wipe-out.
    fn revise(&self, doms: &mut [Domain], c: &Constraint) -> Option<Vec<usize>> {
        let (i, o, u) = (c.under_in, c.over, c.under_out);
        let mut new_in = Domain::empty(self.order);
        let mut new_over = Domain::empty(self.order);
        let mut new_out = Domain::empty(self.order);
        for x in doms[i].iter() {
            for y in doms[o].iter() {
                if i == o && x != y {
                    continue;
                }
                let z = self.mq.act(c.color, c.positive, x, y);
                if !doms[u].contains(z) || (u == i && z != x) || (u == o && z != y) {
                    continue;
                }
                new_in.insert(x);
                new_over.insert(y);
                new_out.insert(z);
            }
        }
        let mut changed = Vec::new();
        for (arc, new) in [(i, new_in), (o, new_over), (u, new_out)] {
            if new.len() == 0 {
                return None;
            }
            // a shared arc receives the intersection of its roles
            let merged = Domain(doms[arc].0.iter().zip(&new.0).map(|(a, b)| a & b).collect());
            if merged != doms[arc] {
                if merged.len() == 0 {
                    return None;
                }
                doms[arc] = merged;
                changed.push(arc);
            }
        }
        Some(changed)
    }

    fn propagate(&self, doms: &mut [Domain], from: &[usize]) -> bool {
        let mut queued = vec![false; self.constraints.len()];
        let mut queue = VecDeque::new();
        for &arc in from {
            for &ci in &self.watch[arc] {
                if !std::mem::replace(&mut queued[ci], true) {
                    queue.push_back(ci);
                }
            }
        }
        while let Some(ci) = queue.pop_front() {
            queued[ci] = false;
            let Some(changed) = self.revise(doms, &self.constraints[ci]) else { return false };
            for arc in changed {
                for &cj in &self.watch[arc] {
                    if !std::mem::replace(&mut queued[cj], true) {
                        queue.push_back(cj);
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, doms: Vec<Domain>) {
        let branch = doms
            .iter()
            .enumerate()
            .filter(|(_, d)| d.len() > 1)
            .min_by_key(|(i, d)| (d.len(), *i))
            .map(|(i, _)| i);
        let Some(arc) = branch else {
            self.count += 1;
            if !self.overflow {
                if self.solutions.len() < self.cap {
                    self.solutions.push(doms.iter().map(Domain::first).collect());
                } else {
                    self.overflow = true;
                    self.solutions = Vec::new();
                }
            }
            return;
        };
        for v in doms[arc].iter().collect::<Vec<_>>() {
            let mut next = doms.clone();
            next[arc] = Domain::single(self.order, v);
            if self.propagate(&mut next, &[arc]) {
                self.search(next);
            }
        }
    }
}

pub fn count_colorings_diagram(d: &ColoredDiagram, mq: &MultiQuandle) -> Result<ColoringSet, InvariantError> {
    count_colorings_diagram_with_cap(d, mq, DEFAULT_SOLUTION_CAP)
}

/// All arc colorings of `d`, solutions indexed by arc in the diagram's arc
/// order.
pub fn count_colorings_diagram_with_cap(
    d: &ColoredDiagram,
    mq: &MultiQuandle,
    cap: usize,
) -> Result<ColoringSet, InvariantError> {
    check_colors(d.components().iter().map(|c| c.color), mq)?;
    let arcs = d.arc_count();
    let constraints: Vec<Constraint> = d
        .crossings()
        .iter()
        .map(|x| Constraint {
            positive: x.sign.is_positive(),
            color: d.color_of(x.over),
            over: x.over.0,
            under_in: x.under_in.0,
            under_out: x.under_out.0,
        })
        .collect();
    let mut watch = vec![Vec::new(); arcs];
    for (ci, c) in constraints.iter().enumerate() {
        for a in [c.over, c.under_in, c.under_out] {
            if !watch[a].contains(&ci) {
                watch[a].push(ci);
            }
        }
    }
    let mut solver = Solver {
        mq,
        order: mq.order(),
        constraints,
        watch,
        cap,
        count: 0,
        solutions: Vec::new(),
        overflow: false,
    };
    let mut doms = vec![Domain::full(mq.order()); arcs];
    let all: Vec<usize> = (0..arcs).collect();
    if solver.propagate(&mut doms, &all) {
        solver.search(doms);
    }
    let solutions = (!solver.overflow).then(|| {
        let mut s = solver.solutions;
        s.sort_unstable();
        s
    });
    Ok(ColoringSet::new(d.arc_names().to_vec(), solver.count, solutions, cap))
}

/// Whether `assignment` (one 0-based value per arc) satisfies every crossing.
pub fn satisfies_diagram(d: &ColoredDiagram, mq: &MultiQuandle, assignment: &[usize]) -> bool {
    assignment.len() == d.arc_count()
        && assignment.iter().all(|&v| v < mq.order())
        && d.crossings().iter().all(|x| {
            assignment[x.under_out.0]
                == mq.act(d.color_of(x.over), x.sign.is_positive(), assignment[x.under_in.0], assignment[x.over.0])
        })
}
