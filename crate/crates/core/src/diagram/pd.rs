//! Planar diagram (PD) codes.
//!
//! `X[a,b,c,d]` lists the four edge labels around a crossing counterclockwise,
//! starting with the incoming under-edge `a`; `c` is the outgoing under-edge.
//! The over-strand runs `d → b` at a positive crossing and `b → d` at a
//! negative one. Over-strand directions are recovered by propagating edge
//! orientations around the link; only when a component never passes under
//! does the label order (`d = b + 1` means `b → d`) decide.

use std::collections::{BTreeMap, BTreeSet};

use super::{ArcId, ColoredDiagram, Component, Crossing, DiagramError, Sign};

fn pd_err(msg: impl Into<String>) -> DiagramError {
    DiagramError::Pd(msg.into())
}

/// Extracts the 4-tuples of a PD code. Accepts `X[..] X[..]`, `PD[X[..],..]`,
/// `{{..},{..}}` and `[[..],[..]]` spellings.
pub fn parse_pd_tuples(text: &str) -> Result<Vec<[i64; 4]>, DiagramError> {
    let mut groups: Vec<Vec<i64>> = Vec::new();
    let mut current: Option<Vec<i64>> = None;
    let mut number = String::new();
    let flush = |number: &mut String, current: &mut Option<Vec<i64>>| -> Result<(), DiagramError> {
        if number.is_empty() {
            return Ok(());
        }
        let v = number.parse().map_err(|_| pd_err(format!("bad label `{number}`")))?;
        number.clear();
        current.as_mut().ok_or_else(|| pd_err("label outside brackets"))?.push(v);
        Ok(())
    };
    for ch in text.chars() {
        match ch {
            '[' | '{' => {
                flush(&mut number, &mut current)?;
                current = Some(Vec::new());
            }
            ']' | '}' => {
                flush(&mut number, &mut current)?;
                if let Some(g) = current.take() {
                    if !g.is_empty() {
                        groups.push(g);
                    }
                }
            }
            '0'..='9' | '-' => number.push(ch),
            ',' | ' ' | '\t' | '\n' | '\r' => flush(&mut number, &mut current)?,
            'X' | 'P' | 'D' => {}
            other => return Err(pd_err(format!("unexpected character `{other}`"))),
        }
    }
    if !number.is_empty() || current.as_ref().is_some_and(|g| !g.is_empty()) {
        return Err(pd_err("unterminated crossing"));
    }
    groups
        .into_iter()
        .map(|g| <[i64; 4]>::try_from(g.as_slice()).map_err(|_| pd_err(format!("crossing {g:?} does not have 4 labels"))))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    /// The edge's head is at this crossing.
    Enters,
    /// The edge's tail is at this crossing.
    Leaves,
}

/// Builds a colored diagram from a PD code. `colors` are 1-based and assigned
/// to components ordered by their smallest edge label.
pub fn from_pd_code(text: &str, colors: &[usize]) -> Result<ColoredDiagram, DiagramError> {
    let xs = parse_pd_tuples(text)?;
    if xs.is_empty() {
        return Err(pd_err("no crossings"));
    }

    // Every label names an edge and must sit at exactly two crossing slots.
    let mut slots: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, x) in xs.iter().enumerate() {
        for (s, &label) in x.iter().enumerate() {
            slots.entry(label).or_default().push((ci, s));
        }
    }
    if let Some((label, at)) = slots.iter().find(|(_, v)| v.len() != 2) {
        return Err(pd_err(format!("edge {label} is used {} times, expected 2", at.len())));
    }

    // over_b_to_d[c]: the over-strand at crossing c runs from slot 1 to slot 3.
    let mut over_b_to_d: Vec<Option<bool>> = vec![None; xs.len()];
    let end_at = |dirs: &[Option<bool>], (c, s): (usize, usize)| -> Option<End> {
        match s {
            0 => Some(End::Enters),
            2 => Some(End::Leaves),
            1 => dirs[c].map(|b_to_d| if b_to_d { End::Enters } else { End::Leaves }),
            _ => dirs[c].map(|b_to_d| if b_to_d { End::Leaves } else { End::Enters }),
        }
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for (&label, at) in &slots {
                let (p, q) = (at[0], at[1]);
                match (end_at(&over_b_to_d, p), end_at(&over_b_to_d, q)) {
                    (Some(a), Some(b)) if a == b => {
                        return Err(pd_err(format!("edge {label} is oriented inconsistently")));
                    }
                    (Some(a), None) | (None, Some(a)) => {
                        let (c, s) = if end_at(&over_b_to_d, p).is_none() { p } else { q };
                        // The unknown end is the opposite of the known one.
                        let want = if a == End::Enters { End::Leaves } else { End::Enters };
                        over_b_to_d[c] = Some((s == 1) == (want == End::Enters));
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let Some(c) = over_b_to_d.iter().position(Option::is_none) else { break };
        let [_, b, _, d] = xs[c];
        over_b_to_d[c] = Some(d == b + 1 || (b != d + 1 && b > d));
    }

    // Orientation-following successor on edges.
    let mut succ: BTreeMap<i64, i64> = BTreeMap::new();
    let mut under_entering: BTreeSet<i64> = BTreeSet::new();
    for (ci, &[a, b, c, d]) in xs.iter().enumerate() {
        let mut link = |from: i64, to: i64| -> Result<(), DiagramError> {
            if succ.insert(from, to).is_some() {
                return Err(pd_err(format!("edge {from} continues in two directions")));
            }
            Ok(())
        };
        link(a, c)?;
        under_entering.insert(a);
        if over_b_to_d[ci] == Some(true) {
            link(b, d)?;
        } else {
            link(d, b)?;
        }
    }

    // Components: cycles of `succ`, ordered by smallest label.
    let mut seen = BTreeSet::new();
    let mut edge_cycles: Vec<Vec<i64>> = Vec::new();
    for &start in slots.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut e = start;
        while seen.insert(e) {
            cycle.push(e);
            e = *succ.get(&e).ok_or_else(|| pd_err(format!("edge {e} has no continuation")))?;
        }
        if e != start {
            return Err(pd_err(format!("edge {e} is entered twice")));
        }
        edge_cycles.push(cycle);
    }
    if colors.len() != edge_cycles.len() {
        return Err(DiagramError::ColorCount { found: colors.len(), components: edge_cycles.len() });
    }
    if let Some(&c) = colors.iter().find(|&&c| c == 0) {
        return Err(pd_err(format!("color {c} is not positive")));
    }

    // Arcs: runs of edges between undercrossings, named by their smallest label.
    let mut arc_names = Vec::new();
    let mut arc_of_edge: BTreeMap<i64, ArcId> = BTreeMap::new();
    let mut components = Vec::new();
    for (k, cycle) in edge_cycles.iter().enumerate() {
        let len = cycle.len();
        // Start right after an undercrossing when there is one.
        let first = (0..len).find(|&i| under_entering.contains(&cycle[(i + len - 1) % len])).unwrap_or(0);
        let mut runs: Vec<Vec<i64>> = Vec::new();
        for i in 0..len {
            let e = cycle[(first + i) % len];
            let prev = cycle[(first + i + len - 1) % len];
            if runs.is_empty() || under_entering.contains(&prev) {
                runs.push(Vec::new());
            }
            runs.last_mut().unwrap().push(e);
        }
        // Rotate so the arc holding the component's smallest label comes first.
        let min = *cycle.iter().min().unwrap();
        let lead = runs.iter().position(|r| r.contains(&min)).unwrap();
        runs.rotate_left(lead);
        let mut arcs = Vec::new();
        for run in runs {
            let id = ArcId(arc_names.len());
            arc_names.push(run.iter().min().unwrap().to_string());
            for e in run {
                arc_of_edge.insert(e, id);
            }
            arcs.push(id);
        }
        components.push(Component { id: (k + 1).to_string(), color: colors[k] - 1, arcs });
    }

    let crossings = xs
        .iter()
        .enumerate()
        .map(|(ci, &[a, b, c, _])| Crossing {
            sign: if over_b_to_d[ci] == Some(true) { Sign::Negative } else { Sign::Positive },
            over: arc_of_edge[&b],
            under_in: arc_of_edge[&a],
            under_out: arc_of_edge[&c],
        })
        .collect();
    ColoredDiagram::new(arc_names, components, crossings)
}

/// Parses `pd "<X[..] ...>" colors=<c1,...,cm>`.
pub fn parse_pd_input(line: &str) -> Result<ColoredDiagram, DiagramError> {
    let rest = line.trim().strip_prefix("pd").ok_or_else(|| pd_err("expected `pd \"<code>\" colors=<list>`"))?;
    let rest = rest.trim_start().strip_prefix('"').ok_or_else(|| pd_err("expected a quoted PD code"))?;
    let (code, tail) = rest.split_once('"').ok_or_else(|| pd_err("unterminated PD code quote"))?;
    let list = tail.trim().strip_prefix("colors=").ok_or_else(|| pd_err("expected `colors=<list>` after the PD code"))?;
    let colors = parse_color_list(list)?;
    from_pd_code(code, &colors)
}

pub(crate) fn parse_color_list(list: &str) -> Result<Vec<usize>, DiagramError> {
    list.split(',')
        .map(|c| c.trim().parse::<usize>().map_err(|_| pd_err(format!("bad color `{c}`"))))
        .collect()
}
