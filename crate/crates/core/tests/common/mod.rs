#![allow(dead_code)]

use mquandle::diagram::ColoredDiagram;
use mquandle::quandle::{alexander, MultiQuandle};
use rand::Rng;

/// Counts arc colorings by trying every assignment.
pub fn brute_force_count(d: &ColoredDiagram, mq: &MultiQuandle) -> u64 {
    let n = mq.order();
    let arcs = d.arc_count();
    let mut x = vec![0usize; arcs];
    let mut count = 0;
    loop {
        let ok = d.crossings().iter().all(|c| {
            let j = d.color_of(c.over);
            let (i, o) = (x[c.under_in.0], x[c.over.0]);
            let out = if c.sign.is_positive() { mq.table(j).get(i, o) } else { mq.inverse_table(j).get(i, o) };
            out == x[c.under_out.0]
        });
        count += ok as u64;
        // odometer
        let mut p = 0;
        loop {
            if p == arcs {
                return count;
            }
            x[p] += 1;
            if x[p] < n {
                break;
            }
            x[p] = 0;
            p += 1;
        }
    }
}

pub fn units(m: i64) -> Vec<i64> {
    (1..m).filter(|&t| num_integer::gcd(t, m) == 1).collect()
}

/// A random Alexander multi-quandle with `k` operations.
pub fn random_alexander(rng: &mut impl Rng, k: usize) -> MultiQuandle {
    let m = [3, 4, 5, 7, 8, 9][rng.gen_range(0..6)];
    let us = units(m);
    let ts: Vec<i64> = (0..k).map(|_| us[rng.gen_range(0..us.len())]).collect();
    alexander(m, &ts).unwrap()
}

pub mod grid;
