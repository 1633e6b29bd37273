use std::fmt;

use rayon::prelude::*;

use super::{MultiQuandle, OperationTable, QuandleError};

pub const DEFAULT_VIOLATION_CAP: usize = 100;

/// Which identity a [`Violation`] breaks. The derive order is the report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `x ▷_i x = x`
    Idempotency,
    /// `x ↦ x ▷_i y` is a bijection
    ColumnBijectivity,
    /// `(x ▷_i y) ▷_i z = (x ▷_i z) ▷_i (y ▷_i z)`
    SelfDistributivity,
    /// `(x ▷_i y) ▷_j z = (x ▷_j z) ▷_i (y ▷_j z)`, `i ≠ j`
    CrossDistributivity,
    /// `(x ▷_i y) ▷_j⁻¹ z = (x ▷_j⁻¹ z) ▷_i (y ▷_j⁻¹ z)`
    ForwardOverInverse,
    /// `(x ▷_i⁻¹ y) ▷_j z = (x ▷_j z) ▷_i⁻¹ (y ▷_j z)`
    InverseOverForward,
    /// `(x ▷_i⁻¹ y) ▷_j⁻¹ z = (x ▷_j⁻¹ z) ▷_i⁻¹ (y ▷_j⁻¹ z)`
    InverseOverInverse,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Idempotency => "idempotency",
            Axiom::ColumnBijectivity => "column-bijectivity",
            Axiom::SelfDistributivity => "self-distributivity",
            Axiom::CrossDistributivity => "cross-distributivity",
            Axiom::ForwardOverInverse => "forward-over-inverse",
            Axiom::InverseOverForward => "inverse-over-forward",
            Axiom::InverseOverInverse => "inverse-over-inverse",
        }
    }
}

/// Elements (0-based) exhibiting a violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    /// `x ▷ x ≠ x`
    Element(usize),
    /// `x1 ▷ y = x2 ▷ y` with `x1 ≠ x2`
    Collision { column: usize, rows: (usize, usize) },
    /// a failing distributivity instance
    Triple(usize, usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub axiom: Axiom,
    /// 0-based operation index `i`.
    pub op: usize,
    /// 0-based second operation index `j`, for the two-operation identities.
    pub other_op: Option<usize>,
    pub witness: Witness,
}

impl Violation {
    /// Re-evaluates the violated identity on `tables` (and derived inverses).
    /// Returns true when the violation is reproduced.
    pub fn recheck(&self, tables: &[OperationTable]) -> bool {
        let t = &tables[self.op];
        match (self.axiom, self.witness) {
            (Axiom::Idempotency, Witness::Element(x)) => t.get(x, x) != x,
            (Axiom::ColumnBijectivity, Witness::Collision { column, rows: (a, b) }) => {
                a != b && t.get(a, column) == t.get(b, column)
            }
            (Axiom::SelfDistributivity, Witness::Triple(x, y, z)) => {
                t.get(t.get(x, y), z) != t.get(t.get(x, z), t.get(y, z))
            }
            (axiom, Witness::Triple(x, y, z)) => {
                let Some(j) = self.other_op else { return false };
                let (i_inv, j_inv) = match axiom {
                    Axiom::CrossDistributivity => (false, false),
                    Axiom::ForwardOverInverse => (false, true),
                    Axiom::InverseOverForward => (true, false),
                    Axiom::InverseOverInverse => (true, true),
                    _ => return false,
                };
                let pick = |idx: usize, inv: bool| -> Option<OperationTable> {
                    if inv {
                        tables[idx].inverse()
                    } else {
                        Some(tables[idx].clone())
                    }
                };
                let (Some(a), Some(b)) = (pick(self.op, i_inv), pick(j, j_inv)) else {
                    return false;
                };
                b.get(a.get(x, y), z) != a.get(b.get(x, z), b.get(y, z))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} i={}", self.axiom.id(), self.op + 1)?;
        if let Some(j) = self.other_op {
            write!(f, " j={}", j + 1)?;
        }
        match self.witness {
            Witness::Element(x) => write!(f, " x={}", x + 1),
            Witness::Collision { column, rows: (a, b) } => {
                write!(f, " y={} x={},{}", column + 1, a + 1, b + 1)
            }
            Witness::Triple(x, y, z) => write!(f, " (x,y,z)=({},{},{})", x + 1, y + 1, z + 1),
        }
    }
}

/// Outcome of an exhaustive axiom check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// Set when more violations existed than the cap allowed to record.
    pub truncated: bool,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn from_parts(mut parts: Vec<Violation>, cap: usize, truncated: bool) -> Self {
        parts.sort();
        let truncated = truncated || parts.len() > cap;
        parts.truncate(cap);
        Self { violations: parts, truncated }
    }
}

fn check_shapes(tables: &[OperationTable]) -> Result<usize, QuandleError> {
    let first = tables.first().ok_or(QuandleError::NoOperations)?;
    let n = first.order();
    for (i, t) in tables.iter().enumerate() {
        if t.order() != n {
            return Err(QuandleError::OrderMismatch { op: i, found: t.order(), expected: n });
        }
    }
    Ok(n)
}

/// Distributivity of `a` over `b` on every triple, recording up to `cap` failures.
fn distributivity_failures(
    a: &OperationTable,
    b: &OperationTable,
    cap: usize,
    make: impl Fn(usize, usize, usize) -> Violation,
) -> (Vec<Violation>, bool) {
    let n = a.order();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xy = a.get(x, y);
            for z in 0..n {
                if b.get(xy, z) != a.get(b.get(x, z), b.get(y, z)) {
                    if out.len() == cap {
                        return (out, true);
                    }
                    out.push(make(x, y, z));
                }
            }
        }
    }
    (out, false)
}

/// [`validate_with_cap`] with [`DEFAULT_VIOLATION_CAP`].
pub fn validate(tables: &[OperationTable]) -> Result<AxiomReport, QuandleError> {
    validate_with_cap(tables, DEFAULT_VIOLATION_CAP)
}

/// Checks every multi-quandle axiom exhaustively.
///
/// Structural problems (no tables, mismatched orders) are errors; axiom
/// failures are reported as violations, sorted by axiom then indices and
/// capped at `cap` entries. The result does not depend on the worker count.
pub fn validate_with_cap(tables: &[OperationTable], cap: usize) -> Result<AxiomReport, QuandleError> {
    let n = check_shapes(tables)?;
    let k = tables.len();
    let mut found = Vec::new();
    let mut truncated = false;

    for (i, t) in tables.iter().enumerate() {
        for x in 0..n {
            if t.get(x, x) != x {
                found.push(Violation { axiom: Axiom::Idempotency, op: i, other_op: None, witness: Witness::Element(x) });
            }
        }
        for y in 0..n {
            if let Some(rows) = t.column_collision(y) {
                found.push(Violation {
                    axiom: Axiom::ColumnBijectivity,
                    op: i,
                    other_op: None,
                    witness: Witness::Collision { column: y, rows },
                });
            }
        }
    }

    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let per_pair: Vec<(Vec<Violation>, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let axiom = if i == j { Axiom::SelfDistributivity } else { Axiom::CrossDistributivity };
            let other_op = (i != j).then_some(j);
            distributivity_failures(&tables[i], &tables[j], cap, |x, y, z| Violation {
                axiom,
                op: i,
                other_op,
                witness: Witness::Triple(x, y, z),
            })
        })
        .collect();
    for (v, t) in per_pair {
        found.extend(v);
        truncated |= t;
    }
    Ok(AxiomReport::from_parts(found, cap, truncated))
}

/// Exhaustively checks the three mixed identities between the operations and
/// their inverses. Always valid for a genuine multi-quandle.
pub fn check_derived_identities(mq: &MultiQuandle) -> AxiomReport {
    let k = mq.k();
    let cap = DEFAULT_VIOLATION_CAP;
    let mut found = Vec::new();
    let mut truncated = false;
    for i in 0..k {
        for j in 0..k {
            let cases = [
                (Axiom::ForwardOverInverse, mq.table(i), mq.inverse_table(j)),
                (Axiom::InverseOverForward, mq.inverse_table(i), mq.table(j)),
                (Axiom::InverseOverInverse, mq.inverse_table(i), mq.inverse_table(j)),
            ];
            for (axiom, a, b) in cases {
                let (v, t) = distributivity_failures(a, b, cap, |x, y, z| Violation {
                    axiom,
                    op: i,
                    other_op: Some(j),
                    witness: Witness::Triple(x, y, z),
                });
                found.extend(v);
                truncated |= t;
            }
        }
    }
    AxiomReport::from_parts(found, cap, truncated)
}

/// Checks the mixed identities directly on raw tables whose columns are
/// bijective, without requiring cross-distributivity first.
pub fn check_derived_identities_raw(tables: &[OperationTable]) -> Result<AxiomReport, QuandleError> {
    check_shapes(tables)?;
    let inverses = tables
        .iter()
        .enumerate()
        .map(|(i, t)| t.inverse().ok_or(QuandleError::NotInvertible { op: i }))
        .collect::<Result<Vec<_>, _>>()?;
    let k = tables.len();
    let mut found = Vec::new();
    let mut truncated = false;
    for i in 0..k {
        for j in 0..k {
            let cases = [
                (Axiom::ForwardOverInverse, &tables[i], &inverses[j]),
                (Axiom::InverseOverForward, &inverses[i], &tables[j]),
                (Axiom::InverseOverInverse, &inverses[i], &inverses[j]),
            ];
            for (axiom, a, b) in cases {
                let (v, t) = distributivity_failures(a, b, DEFAULT_VIOLATION_CAP, |x, y, z| Violation {
                    axiom,
                    op: i,
                    other_op: Some(j),
                    witness: Witness::Triple(x, y, z),
                });
                found.extend(v);
                truncated |= t;
            }
        }
    }
    Ok(AxiomReport::from_parts(found, DEFAULT_VIOLATION_CAP, truncated))
}
