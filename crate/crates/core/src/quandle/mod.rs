//! Finite multi-quandles as operation tables.
//!
//! A multi-quandle of order `n` with `k` operations is a set `{0..n}` carrying
//! `k` quandle operations `▷_1..▷_k` that pairwise distribute over each other.
//! The inverse operations `▷_i⁻¹` are always derived from the tables.

mod axioms;
mod format;
mod table;

use thiserror::Error;

pub use axioms::{
    check_derived_identities, check_derived_identities_raw, validate, validate_with_cap, Axiom, AxiomReport,
    Violation, Witness, DEFAULT_VIOLATION_CAP,
};
pub use format::{parse_quandle_file, serialize_quandle, QuandleFile};
pub use table::{distributes_over, OperationTable};

#[derive(Debug, Error)]
pub enum QuandleError {
    #[error("a multi-quandle needs at least one operation")]
    NoOperations,
    #[error("operation table is empty")]
    EmptyTable,
    #[error("row {} has {len} entries, expected {order}", row + 1)]
    RaggedRow { row: usize, len: usize, order: usize },
    #[error("entry ({}, {}) = {} is outside 1..={order}", row + 1, col + 1, value + 1)]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("operation {} has order {found}, expected {expected}", op + 1)]
    OrderMismatch { op: usize, found: usize, expected: usize },
    #[error("operation {} has a non-bijective column", op + 1)]
    NotInvertible { op: usize },
    #[error("tables violate the multi-quandle axioms ({} violations, first: {})", .0.violations.len(), .0.violations[0])]
    Invalid(AxiomReport),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, i64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("supplied inverse block {} disagrees with the derived inverse at ({}, {})", op + 1, row + 1, col + 1)]
    InverseMismatch { op: usize, row: usize, col: usize },
}

/// A validated multi-quandle. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiQuandle {
    ops: Vec<OperationTable>,
    inverses: Vec<OperationTable>,
}

impl MultiQuandle {
    /// Validates `tables` and derives the inverse tables.
    pub fn new(tables: Vec<OperationTable>) -> Result<Self, QuandleError> {
        let report = validate(&tables)?;
        if !report.is_valid() {
            return Err(QuandleError::Invalid(report));
        }
        let inverses = tables
            .iter()
            .map(|t| t.inverse().expect("validated columns are bijective"))
            .collect();
        Ok(Self { ops: tables, inverses })
    }

    pub fn order(&self) -> usize {
        self.ops[0].order()
    }

    /// Number of operations.
    pub fn k(&self) -> usize {
        self.ops.len()
    }

    pub fn table(&self, i: usize) -> &OperationTable {
        &self.ops[i]
    }

    pub fn tables(&self) -> &[OperationTable] {
        &self.ops
    }

    pub fn inverse_table(&self, i: usize) -> &OperationTable {
        &self.inverses[i]
    }

    pub fn inverse_tables(&self) -> &[OperationTable] {
        &self.inverses
    }

    /// `x ▷_i y`
    #[inline]
    pub fn op(&self, i: usize, x: usize, y: usize) -> usize {
        self.ops[i].get(x, y)
    }

    /// `x ▷_i⁻¹ y`
    #[inline]
    pub fn inv_op(&self, i: usize, x: usize, y: usize) -> usize {
        self.inverses[i].get(x, y)
    }

    /// `x ▷_i y` when `positive`, else `x ▷_i⁻¹ y`.
    #[inline]
    pub fn act(&self, i: usize, positive: bool, x: usize, y: usize) -> usize {
        if positive {
            self.op(i, x, y)
        } else {
            self.inv_op(i, x, y)
        }
    }

    /// The multi-quandle whose operations are the inverses of these.
    pub fn inverted(&self) -> MultiQuandle {
        MultiQuandle { ops: self.inverses.clone(), inverses: self.ops.clone() }
    }
}

/// The inverse tables `▷_i⁻¹` of `mq`, one per operation.
pub fn invert(mq: &MultiQuandle) -> Vec<OperationTable> {
    mq.inverse_tables().to_vec()
}

fn check_unit(t: i64, m: i64) -> Result<i64, QuandleError> {
    let r = t.rem_euclid(m);
    if num_integer::gcd(r, m) != 1 {
        return Err(QuandleError::NotAUnit(t, m));
    }
    Ok(r)
}

/// The Alexander multi-quandle on `Z_m`: `x ▷_i y = t_i·x + (1 − t_i)·y mod m`.
pub fn alexander(modulus: i64, ts: &[i64]) -> Result<MultiQuandle, QuandleError> {
    if modulus < 2 {
        return Err(QuandleError::BadModulus(modulus));
    }
    if ts.is_empty() {
        return Err(QuandleError::NoOperations);
    }
    let m = modulus;
    let tables = ts
        .iter()
        .map(|&t| {
            let t = check_unit(t, m)?;
            let s = (1 - t).rem_euclid(m);
            OperationTable::from_fn(m as usize, |x, y| ((t * x as i64 + s * y as i64) % m) as usize)
        })
        .collect::<Result<Vec<_>, _>>()?;
    MultiQuandle::new(tables)
}

/// The diquandle on the cyclic group `Z_m` given by two automorphisms
/// `x ↦ u·x`: `x ▷_i y = σ_i(y)⁻¹ σ_i(x) y`, i.e. `u_i·x + (1 − u_i)·y` written
/// additively.
pub fn conjugation_diquandle(modulus: i64, auts: (i64, i64)) -> Result<MultiQuandle, QuandleError> {
    if modulus < 2 {
        return Err(QuandleError::BadModulus(modulus));
    }
    let m = modulus;
    let tables = [auts.0, auts.1]
        .into_iter()
        .map(|u| {
            let u = check_unit(u, m)?;
            // σ(y)⁻¹ + σ(x) + y
            OperationTable::from_fn(m as usize, |x, y| {
                let (x, y) = (x as i64, y as i64);
                (-(u * y) + u * x + y).rem_euclid(m) as usize
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    MultiQuandle::new(tables)
}

/// `k` copies of the trivial quandle `x ▷ y = x`.
pub fn trivial(order: usize, k: usize) -> MultiQuandle {
    MultiQuandle::new(vec![OperationTable::trivial(order); k]).expect("trivial tables are valid")
}

/// The dihedral quandle `x ▷ y = 2y − x mod n`, as a single-operation quandle.
pub fn dihedral(order: usize) -> Result<MultiQuandle, QuandleError> {
    let n = order;
    MultiQuandle::new(vec![OperationTable::from_fn(n, |x, y| (2 * y + n - x) % n)?])
}
