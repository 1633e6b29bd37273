//! Randomized move-invariance checks.
//!
//! Both harnesses draw small random closable braids, apply random moves, and
//! compare coloring counts before and after. Runs are reproducible from the
//! seed.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{ClosableBraid, ColoredBraid, Sign};
use crate::diagram::{ArcId, ColoredDiagram, Move, Site};
use crate::invariants::{count_colorings_braid, count_colorings_diagram};
use crate::quandle::MultiQuandle;

/// A random word of length `0..=max_len` on `strands` strands. With some
/// probability it contains a braid-relation triple, so closures have
/// triangles where R3 applies.
pub fn random_word(rng: &mut impl Rng, strands: usize, max_len: usize) -> Vec<i32> {
    if strands < 2 {
        return Vec::new();
    }
    let n = strands as i32;
    let len = rng.gen_range(0..=max_len);
    let mut word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..n);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    if strands >= 3 && rng.gen_bool(0.3) {
        let i = rng.gen_range(1..n - 1);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let triple = if rng.gen_bool(0.5) { [i, i + 1, i] } else { [i + 1, i, i + 1] };
        let at = rng.gen_range(0..=word.len());
        word.splice(at..at, triple.iter().map(|g| g * s));
    }
    word
}

/// A random closable braid: one random color per cycle of a random word.
pub fn random_closable_braid(rng: &mut impl Rng, max_strands: usize, max_len: usize, k: usize) -> ClosableBraid {
    let strands = rng.gen_range(1..=max_strands);
    let word = random_word(rng, strands, max_len);
    let plain = ColoredBraid::new(strands, word.clone(), vec![0; strands]).expect("letters are in range");
    let mut colors = vec![0; strands];
    for cycle in plain.permutation_info().cycles {
        let c = rng.gen_range(0..k);
        for p in cycle {
            colors[p] = c;
        }
    }
    ColoredBraid::new(strands, word, colors).expect("letters are in range").check_closable().expect("colors follow cycles")
}

/// A random braid whose bottom colors match the top colors of `b`.
pub fn random_conjugator(rng: &mut impl Rng, b: &ClosableBraid, max_len: usize) -> ColoredBraid {
    let n = b.braid().strands();
    let word = random_word(rng, n, max_len);
    let perm = ColoredBraid::new(n, word.clone(), vec![0; n]).expect("letters are in range").permutation_info().perm;
    let top = b.braid().top_colors();
    let colors = (0..n).map(|p| top[perm[p]]).collect();
    ColoredBraid::new(n, word, colors).expect("letters are in range")
}

/// Tallies of a fuzz run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzReport {
    /// Checks performed, by move name.
    pub checks: BTreeMap<&'static str, usize>,
    /// One line per count that changed.
    pub failures: Vec<String>,
}

impl FuzzReport {
    fn record(&mut self, kind: &'static str, before: u64, after: u64, what: impl FnOnce() -> String) {
        *self.checks.entry(kind).or_default() += 1;
        if before != after {
            self.failures.push(format!("{kind}: count {before} became {after} for {}", what()));
        }
    }

    pub fn total(&self) -> usize {
        self.checks.values().sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Conjugation and stabilization (both signs) of random closable braids.
pub fn markov_fuzz(mq: &MultiQuandle, iters: usize, seed: u64) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FuzzReport::default();
    let count = |b: &ClosableBraid| count_colorings_braid(b, mq).expect("colors are in range").count();
    for _ in 0..iters {
        let b = random_closable_braid(&mut rng, 3, 5, mq.k());
        let base = count(&b);
        match rng.gen_range(0..3) {
            0 => {
                let t = random_conjugator(&mut rng, &b, 3);
                let c = b.conjugate(&t).expect("interface colors match");
                report.record("conjugate", base, count(&c), || format!("{b} by {t}"));
            }
            choice => {
                let sign = if choice == 1 { Sign::Positive } else { Sign::Negative };
                let s = b.stabilize(sign);
                let kind = if sign.is_positive() { "stabilize+" } else { "stabilize-" };
                report.record(kind, base, count(&s), || b.to_string());
            }
        }
    }
    report
}

fn random_arc(rng: &mut impl Rng, d: &ColoredDiagram) -> ArcId {
    ArcId(rng.gen_range(0..d.arc_count()))
}

/// Random Reidemeister moves (R1±, R2±, R3 and the undo moves) along a walk
/// through diagrams, restarting from a fresh braid closure every few steps.
pub fn reid_fuzz(mq: &MultiQuandle, iters: usize, seed: u64) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FuzzReport::default();
    let count = |d: &ColoredDiagram| count_colorings_diagram(d, mq).expect("colors are in range").count();
    let fresh = |rng: &mut ChaCha8Rng| random_closable_braid(rng, 3, 5, mq.k()).closure_diagram();
    let mut d = fresh(&mut rng);
    let mut base = count(&d);
    let mut done = 0;
    while done < iters {
        if d.crossings().len() > 14 || rng.gen_bool(0.1) {
            d = fresh(&mut rng);
            base = count(&d);
        }
        let (kind, mv, site) = match rng.gen_range(0..6) {
            0 => ("R1+", Move::R1(Sign::Positive), Site::Arc(random_arc(&mut rng, &d))),
            1 => ("R1-", Move::R1(Sign::Negative), Site::Arc(random_arc(&mut rng, &d))),
            2 => {
                let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
                let (over, under) = (random_arc(&mut rng, &d), random_arc(&mut rng, &d));
                ("R2", Move::R2(sign), Site::ArcPair { over, under })
            }
            3 => match d.find_r3_sites().choose(&mut rng) {
                Some(&t) => ("R3", Move::R3, Site::Triangle(t)),
                None => continue,
            },
            4 if !d.crossings().is_empty() => {
                ("R1 undo", Move::R1Undo, Site::Crossing(rng.gen_range(0..d.crossings().len())))
            }
            _ => ("R2 undo", Move::R2Undo, Site::Arc(random_arc(&mut rng, &d))),
        };
        let Ok(next) = d.apply(mv, &site) else { continue };
        let after = count(&next);
        report.record(kind, base, after, || format!("{site:?}"));
        d = next;
        base = after;
        done += 1;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::five_element_three_quandle;

    #[test]
    fn conjugators_fit() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let b = random_closable_braid(&mut rng, 4, 6, 3);
            let t = random_conjugator(&mut rng, &b, 4);
            assert!(b.conjugate(&t).is_ok());
        }
    }

    #[test]
    fn short_runs_pass_and_repeat() {
        let mq = five_element_three_quandle();
        let a = markov_fuzz(&mq, 30, 9);
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a, markov_fuzz(&mq, 30, 9));
        let r = reid_fuzz(&mq, 60, 9);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.total(), 60);
    }
}
