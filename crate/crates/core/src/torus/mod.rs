//! Fixed points of affine circle multi-quandles, solved exactly on the torus.
//!
//! Angles are measured in turns: the circle is `R/Z` and a row
//! `Σ c_i·θ_i ≡ p/q` means the same as `Σ c_i·θ_i ≡ 2π·p/q` in radians. All
//! arithmetic is on integers and rationals.

mod snf;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::braid::ClosableBraid;

pub use snf::{smith_normal_form, Smith};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("circle quandle parameter must be +1 or -1, got {0}")]
    BadParameter(i64),
    #[error("color {} is not available in a {k}-quandle", color + 1)]
    ColorOutOfRange { color: usize, k: usize },
    #[error("row has {found} coefficients, expected {expected}")]
    RowLength { found: usize, expected: usize },
    #[error("integer overflow while reducing the system")]
    Overflow,
}

/// `θ ▷_i φ = t_i·θ + (1 − t_i)·φ` on the circle, `t_i = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCircleQuandle {
    ts: Vec<i64>,
}

impl AffineCircleQuandle {
    pub fn new(ts: Vec<i64>) -> Result<Self, TorusError> {
        if let Some(&t) = ts.iter().find(|&&t| t != 1 && t != -1) {
            return Err(TorusError::BadParameter(t));
        }
        Ok(Self { ts })
    }

    pub fn k(&self) -> usize {
        self.ts.len()
    }

    pub fn ts(&self) -> &[i64] {
        &self.ts
    }

    /// Applies `▷_i` to affine forms. Both operations are involutions, so
    /// `▷_i⁻¹ = ▷_i`.
    fn apply(&self, i: usize, x: &AffineForm, y: &AffineForm) -> AffineForm {
        let t = self.ts[i];
        AffineForm {
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| t * a + (1 - t) * b).collect(),
            constant: x.constant * t + y.constant * (1 - t),
        }
    }
}

/// An integer combination of the variables plus a constant, in turns.
#[derive(Clone, Debug, PartialEq, Eq)]
struct AffineForm {
    coeffs: Vec<i64>,
    constant: Ratio<i64>,
}

/// `Σ coeffs·θ ≡ rhs (mod 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<i64>,
    pub rhs: Ratio<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricAffineSystem {
    nvars: usize,
    rows: Vec<Row>,
}

impl ToricAffineSystem {
    pub fn new(nvars: usize, rows: Vec<Row>) -> Result<Self, TorusError> {
        if let Some(r) = rows.iter().find(|r| r.coeffs.len() != nvars) {
            return Err(TorusError::RowLength { found: r.coeffs.len(), expected: nvars });
        }
        Ok(Self { nvars, rows })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Whether the point (in turns) satisfies every row.
    pub fn satisfied_by(&self, theta: &[Ratio<i128>]) -> bool {
        self.rows.iter().all(|r| {
            let lhs: Ratio<i128> = r.coeffs.iter().zip(theta).map(|(&c, t)| t * c as i128).sum();
            (lhs - widen(r.rhs)).is_integer()
        })
    }
}

fn widen(r: Ratio<i64>) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

impl FromStr for ToricAffineSystem {
    type Err = TorusError;

    /// `toric v1`, `vars <n>`, then rows `eq <c1> ... <cn> = <p>/<q>`.
    fn from_str(text: &str) -> Result<Self, TorusError> {
        let err = |line: usize, msg: String| TorusError::Parse { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, "toric v1")) => {}
            Some((ln, l)) => return Err(err(ln, format!("expected `toric v1`, found `{l}`"))),
            None => return Err(err(0, "empty input".into())),
        }
        let nvars = match lines.next() {
            Some((ln, l)) => l
                .strip_prefix("vars ")
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| err(ln, format!("expected `vars <n>`, found `{l}`")))?,
            None => return Err(err(0, "missing `vars <n>`".into())),
        };
        let mut rows = Vec::new();
        for (ln, l) in lines {
            let body = l.strip_prefix("eq ").ok_or_else(|| err(ln, format!("expected `eq ...`, found `{l}`")))?;
            let (lhs, rhs) = body.split_once('=').ok_or_else(|| err(ln, "missing `=`".into()))?;
            let coeffs = lhs
                .split_whitespace()
                .map(|c| c.parse::<i64>().map_err(|_| err(ln, format!("bad coefficient `{c}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != nvars {
                return Err(err(ln, format!("{} coefficients for {nvars} variables", coeffs.len())));
            }
            let rhs = rhs.trim();
            let (p, q) = rhs.split_once('/').unwrap_or((rhs, "1"));
            let p: i64 = p.trim().parse().map_err(|_| err(ln, format!("bad numerator `{p}`")))?;
            let q: i64 = q.trim().parse().map_err(|_| err(ln, format!("bad denominator `{q}`")))?;
            if q <= 0 {
                return Err(err(ln, format!("denominator must be positive, got {q}")));
            }
            rows.push(Row { coeffs, rhs: Ratio::new(p, q) });
        }
        Ok(Self { nvars, rows })
    }
}

impl fmt::Display for ToricAffineSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "toric v1\nvars {}", self.nvars)?;
        for r in &self.rows {
            let c: Vec<String> = r.coeffs.iter().map(i64::to_string).collect();
            writeln!(f, "eq {} = {}/{}", c.join(" "), r.rhs.numer(), r.rhs.denom())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToricSolution {
    Empty,
    /// A disjoint union of `components` translated subtori of `dimension`.
    Nonempty { dimension: usize, components: u128 },
}

impl fmt::Display for ToricSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToricSolution::Empty => f.write_str("empty"),
            ToricSolution::Nonempty { dimension, components } => {
                write!(f, "nonempty dim={dimension} components={components}")
            }
        }
    }
}

/// Fixed-point equations `σ(θ)_j ≡ θ_j` of the closed braid acting on the
/// top angles. Rows that vanish identically are dropped.
pub fn encode_braid_fixed_points(b: &ClosableBraid, q: &AffineCircleQuandle) -> Result<ToricAffineSystem, TorusError> {
    let braid = b.braid();
    let n = braid.strands();
    if let Some(&color) = braid.top_colors().iter().find(|&&c| c >= q.k()) {
        return Err(TorusError::ColorOutOfRange { color, k: q.k() });
    }
    let zero = Ratio::from_integer(0);
    let mut x: Vec<AffineForm> = (0..n)
        .map(|j| AffineForm { coeffs: (0..n).map(|i| i64::from(i == j)).collect(), constant: zero })
        .collect();
    for (v, g) in braid.levels() {
        let i = g.unsigned_abs() as usize - 1;
        let (a, b2) = (x[i].clone(), x[i + 1].clone());
        if g > 0 {
            x[i + 1] = q.apply(v[i + 1], &a, &b2);
            x[i] = b2;
        } else {
            x[i] = q.apply(v[i], &b2, &a);
            x[i + 1] = a;
        }
    }
    let rows = x
        .into_iter()
        .enumerate()
        .map(|(j, mut form)| {
            form.coeffs[j] -= 1;
            Row { coeffs: form.coeffs, rhs: -form.constant }
        })
        .filter(|r| r.coeffs.iter().any(|&c| c != 0) || !r.rhs.is_integer())
        .collect();
    ToricAffineSystem::new(n, rows)
}

/// The solution set as `θ = V·φ` with `d_i·φ_i ≡ c_i` for the pivot
/// coordinates and the rest free.
struct Parametrization {
    smith: Smith,
    /// transformed right-hand sides of the pivot rows
    pivot_rhs: Vec<Ratio<i128>>,
}

fn parametrize(sys: &ToricAffineSystem) -> Result<Option<Parametrization>, TorusError> {
    let a: Vec<Vec<i64>> = sys.rows.iter().map(|r| r.coeffs.clone()).collect();
    let smith = smith_normal_form(&a, sys.nvars).ok_or(TorusError::Overflow)?;
    let rhs: Vec<Ratio<i128>> = sys.rows.iter().map(|r| widen(r.rhs)).collect();
    let transformed: Vec<Ratio<i128>> = smith
        .u
        .iter()
        .map(|urow| urow.iter().zip(&rhs).map(|(&u, r)| r * u).sum())
        .collect();
    let rank = smith.diagonal.len();
    if transformed[rank..].iter().any(|c| !c.is_integer()) {
        return Ok(None);
    }
    let pivot_rhs = transformed[..rank].to_vec();
    Ok(Some(Parametrization { smith, pivot_rhs }))
}

pub fn solve_toric(sys: &ToricAffineSystem) -> Result<ToricSolution, TorusError> {
    Ok(match parametrize(sys)? {
        None => ToricSolution::Empty,
        Some(p) => {
            let components = p
                .smith
                .diagonal
                .iter()
                .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
                .ok_or(TorusError::Overflow)?;
            ToricSolution::Nonempty { dimension: sys.nvars - p.smith.diagonal.len(), components }
        }
    })
}

/// Re-derives the solution set, checks that `sol` describes it, then samples
/// random rational points on random components (all rows must hold) and
/// perturbed points off the solution set (some row must fail).
pub fn sample_verify(sys: &ToricAffineSystem, sol: &ToricSolution, samples: usize, seed: u64) -> bool {
    let Ok(param) = parametrize(sys) else { return false };
    let Ok(actual) = solve_toric(sys) else { return false };
    if actual != *sol {
        return false;
    }
    let Some(param) = param else { return true };
    let n = sys.nvars;
    let rank = param.smith.diagonal.len();
    // a prime larger than any coefficient keeps perturbations off the lattice
    const P: i128 = 1_000_003;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let phi: Vec<Ratio<i128>> = (0..n)
            .map(|i| {
                if i < rank {
                    let d = param.smith.diagonal[i];
                    (param.pivot_rhs[i] + rng.gen_range(0..d)) / d
                } else {
                    Ratio::new(rng.gen_range(0..P), P)
                }
            })
            .collect();
        let mut theta: Vec<Ratio<i128>> = param
            .smith
            .v
            .iter()
            .map(|vrow| vrow.iter().zip(&phi).map(|(&v, p)| p * v).sum())
            .collect();
        if !sys.satisfied_by(&theta) {
            return false;
        }
        if rank > 0 {
            let (j, _) = sys
                .rows
                .iter()
                .flat_map(|r| r.coeffs.iter().enumerate())
                .find(|(_, &c)| c != 0)
                .expect("positive rank implies a nonzero coefficient");
            let step = rng.gen_range(1..P);
            theta[j] += Ratio::new(step, P);
            if sys.satisfied_by(&theta) {
                return false;
            }
        }
    }
    true
}
