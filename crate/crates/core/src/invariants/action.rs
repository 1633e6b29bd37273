//! The action of a colored braid on `X^n` and its fixed points.

use rayon::prelude::*;

use crate::braid::{ClosableBraid, ColoredBraid};
use crate::quandle::MultiQuandle;

use super::{check_colors, count_colorings_diagram_with_cap, ColoringSet, InvariantError, DEFAULT_SOLUTION_CAP, ENUMERATION_LIMIT};

/// One letter with the color of the operation it applies.
#[derive(Clone, Copy)]
struct Step {
    i: usize,
    positive: bool,
    color: usize,
}

fn compile(b: &ColoredBraid) -> Vec<Step> {
    b.levels()
        .map(|(v, g)| {
            let i = g.unsigned_abs() as usize - 1;
            if g > 0 {
                Step { i, positive: true, color: v[i + 1] }
            } else {
                Step { i, positive: false, color: v[i] }
            }
        })
        .collect()
}

#[inline]
fn run(steps: &[Step], mq: &MultiQuandle, x: &mut [usize]) {
    for s in steps {
        let (a, b) = (x[s.i], x[s.i + 1]);
        if s.positive {
            x[s.i] = b;
            x[s.i + 1] = mq.op(s.color, a, b);
        } else {
            x[s.i] = mq.inv_op(s.color, b, a);
            x[s.i + 1] = a;
        }
    }
}

/// Pushes the tuple `x` (0-based) through the braid, top to bottom.
pub fn braid_action(b: &ColoredBraid, mq: &MultiQuandle, x: &[usize]) -> Result<Vec<usize>, InvariantError> {
    check_colors(b.top_colors().iter().copied(), mq)?;
    if x.len() != b.strands() {
        return Err(InvariantError::InputLength { found: x.len(), expected: b.strands() });
    }
    if let Some(&value) = x.iter().find(|&&v| v >= mq.order()) {
        return Err(InvariantError::ElementOutOfRange { value, order: mq.order() });
    }
    let mut y = x.to_vec();
    run(&compile(b), mq, &mut y);
    Ok(y)
}

pub fn is_fixed_point(b: &ColoredBraid, mq: &MultiQuandle, x: &[usize]) -> bool {
    braid_action(b, mq, x).is_ok_and(|y| y == x)
}

pub fn count_colorings_braid(b: &ClosableBraid, mq: &MultiQuandle) -> Result<ColoringSet, InvariantError> {
    count_colorings_braid_with_cap(b, mq, DEFAULT_SOLUTION_CAP)
}

/// Fixed points of the braid action. Small spaces are enumerated directly;
/// larger ones are solved on the closure diagram and projected to the top
/// strands, which determine every other arc.
pub fn count_colorings_braid_with_cap(
    b: &ClosableBraid,
    mq: &MultiQuandle,
    cap: usize,
) -> Result<ColoringSet, InvariantError> {
    let braid = b.braid();
    check_colors(braid.top_colors().iter().copied(), mq)?;
    let n = braid.strands();
    let variables = (1..=n).map(|p| p.to_string()).collect();
    let order = mq.order() as u64;
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(order).filter(|&t| t <= ENUMERATION_LIMIT));
    let Some(total) = total else {
        let (d, top) = b.closure_with_top_arcs();
        let set = count_colorings_diagram_with_cap(&d, mq, cap)?;
        let solutions = set.solutions().ok().map(|sols| {
            let mut proj: Vec<Vec<usize>> = sols.iter().map(|s| top.iter().map(|a| s[a.0]).collect()).collect();
            proj.sort_unstable();
            proj
        });
        return Ok(ColoringSet::new(variables, set.count(), solutions, cap));
    };

    let steps = compile(braid);
    const CHUNK: u64 = 1 << 14;
    let chunks: Vec<Vec<Vec<usize>>> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut found = Vec::new();
            let mut x = vec![0; n];
            let mut y = vec![0; n];
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                // first strand is the most significant digit
                let mut r = idx;
                for p in (0..n).rev() {
                    x[p] = (r % order) as usize;
                    r /= order;
                }
                y.copy_from_slice(&x);
                run(&steps, mq, &mut y);
                if x == y {
                    found.push(x.clone());
                }
            }
            found
        })
        .collect();
    let count = chunks.iter().map(|c| c.len() as u64).sum();
    let solutions = (count <= cap as u64).then(|| chunks.into_iter().flatten().collect());
    Ok(ColoringSet::new(variables, count, solutions, cap))
}
