//! Brute-force toric oracle: count solutions on the grid `(Z/N)^n` where `N`
//! is large enough that every component meets the grid the same way.
//!
//! With `r` the rank, `G` the gcd of the `r×r` minors (the product of the
//! invariant factors) and `L` the lcm of the right-hand-side denominators,
//! `N = L·G` makes each component contain exactly `N^(n−r)` grid points.

use itertools::Itertools;
use mquandle::torus::{Row, ToricAffineSystem, ToricSolution};
use num_integer::{gcd, lcm};
use num_rational::Ratio;

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

/// Rank and gcd of the nonzero maximal minors.
pub fn rank_and_minor_gcd(a: &[Vec<i64>], cols: usize) -> (usize, i64) {
    for r in (1..=a.len().min(cols)).rev() {
        let mut g = 0;
        for rows in (0..a.len()).combinations(r) {
            for cs in (0..cols).combinations(r) {
                let m: Vec<Vec<i64>> = rows.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = gcd(g, det(&m));
            }
        }
        if g != 0 {
            return (r, g);
        }
    }
    (0, 1)
}

/// Grid resolution for `sys`.
pub fn grid_size(sys: &ToricAffineSystem) -> i64 {
    let a: Vec<Vec<i64>> = sys.rows().iter().map(|r| r.coeffs.clone()).collect();
    let (_, g) = rank_and_minor_gcd(&a, sys.nvars());
    let l = sys.rows().iter().fold(1, |acc, r| lcm(acc, *r.rhs.denom()));
    l * g
}

/// Number of points of `(1/N · Z/Z)^n` on the solution set.
pub fn grid_count(sys: &ToricAffineSystem, n_grid: i64) -> u64 {
    let n = sys.nvars();
    let mut k = vec![0i64; n];
    let mut count = 0;
    loop {
        // Σ c·k/N ≡ p/q  ⇔  N·q | q·Σ c·k − p·N
        let ok = sys.rows().iter().all(|r| {
            let (p, q) = (*r.rhs.numer(), *r.rhs.denom());
            let s: i64 = r.coeffs.iter().zip(&k).map(|(c, x)| c * x).sum();
            (q * s - p * n_grid).rem_euclid(n_grid * q) == 0
        });
        count += ok as u64;
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            k[i] += 1;
            if k[i] < n_grid {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// The solution the grid count implies.
pub fn grid_solution(sys: &ToricAffineSystem) -> ToricSolution {
    let a: Vec<Vec<i64>> = sys.rows().iter().map(|r| r.coeffs.clone()).collect();
    let (rank, _) = rank_and_minor_gcd(&a, sys.nvars());
    let n_grid = grid_size(sys);
    let count = grid_count(sys, n_grid);
    if count == 0 {
        return ToricSolution::Empty;
    }
    let dimension = sys.nvars() - rank;
    let per = (n_grid as u64).pow(dimension as u32);
    assert_eq!(count % per, 0, "grid count {count} is not a multiple of {per}");
    ToricSolution::Nonempty { dimension, components: (count / per) as u128 }
}

pub const RHS: [(i64, i64); 6] = [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4)];

pub fn row(coeffs: &[i64], (p, q): (i64, i64)) -> Row {
    Row { coeffs: coeffs.to_vec(), rhs: Ratio::new(p, q) }
}

/// Every coefficient vector of length `n` over `[-3, 3]`.
pub fn coefficient_vectors(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|_| -3..=3i64).multi_cartesian_product().collect()
}

/// Every one-row system on at most 3 variables, and every two-row system on
/// at most 2 variables, with coefficients in `[-3, 3]` and right-hand sides
/// of denominator at most 4.
pub fn exhaustive_systems() -> Vec<ToricAffineSystem> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for c in coefficient_vectors(n) {
            for &b in &RHS {
                out.push(ToricAffineSystem::new(n, vec![row(&c, b)]).unwrap());
            }
        }
    }
    for n in 1..=2 {
        let cs = coefficient_vectors(n);
        for (c1, c2) in cs.iter().tuple_combinations() {
            for (&b1, &b2) in RHS.iter().cartesian_product(&RHS) {
                out.push(ToricAffineSystem::new(n, vec![row(c1, b1), row(c2, b2)]).unwrap());
            }
        }
    }
    out
}
