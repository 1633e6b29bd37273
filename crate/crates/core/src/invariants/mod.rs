//! Coloring counts of colored links over finite multi-quandles.
//!
//! Two independent engines compute the same number: fixed points of the
//! braid action on `X^n` ([`count_colorings_braid`]) and constraint solving
//! on a diagram ([`count_colorings_diagram`]).

mod action;
mod csp;
mod presentation;

use std::fmt::Write;

use thiserror::Error;

use crate::braid::ClosableBraid;
use crate::quandle::MultiQuandle;

pub use action::{braid_action, count_colorings_braid, count_colorings_braid_with_cap, is_fixed_point};
pub use csp::{count_colorings_diagram, count_colorings_diagram_with_cap, satisfies_diagram};
pub use presentation::{extract_presentation, Presentation, Relation, Word};

/// Solutions kept in memory before a [`ColoringSet`] retains only its count.
pub const DEFAULT_SOLUTION_CAP: usize = 1_000_000;

/// Plain enumeration of `X^n` is used up to this many tuples.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("color {} is not available in a {k}-quandle", color + 1)]
    ColorOutOfRange { color: usize, k: usize },
    #[error("element {} is outside 1..={order}", value + 1)]
    ElementOutOfRange { value: usize, order: usize },
    #[error("input has {found} entries, the braid has {expected} strands")]
    InputLength { found: usize, expected: usize },
    #[error("{count} solutions exceed the storage cap of {cap}; only the count is available")]
    TooManySolutions { count: u64, cap: usize },
}

/// The colorings of a braid closure or diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSet {
    variables: Vec<String>,
    count: u64,
    solutions: Option<Vec<Vec<usize>>>,
    cap: usize,
}

impl ColoringSet {
    pub(crate) fn new(variables: Vec<String>, count: u64, solutions: Option<Vec<Vec<usize>>>, cap: usize) -> Self {
        Self { variables, count, solutions, cap }
    }

    /// Strand positions `1..n` in braid mode, arc names in diagram mode.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// 0-based solution tuples in lexicographic order.
    pub fn solutions(&self) -> Result<&[Vec<usize>], InvariantError> {
        self.solutions.as_deref().ok_or(InvariantError::TooManySolutions { count: self.count, cap: self.cap })
    }

    /// `count N`, then one `solution v1,...` line per solution (1-based) when
    /// `list` is set.
    pub fn to_text(&self, list: bool) -> Result<String, InvariantError> {
        let mut s = format!("count {}\n", self.count);
        if list {
            for sol in self.solutions()? {
                let vals: Vec<String> = sol.iter().map(|v| (v + 1).to_string()).collect();
                writeln!(s, "solution {}", vals.join(",")).unwrap();
            }
        }
        Ok(s)
    }
}

/// Both sides of the disjoint-sum product law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DisjointUnion {
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// Counts the juxtaposition `b1 ⊔ b2` and compares it with the product of the
/// individual counts.
pub fn disjoint_union_check(
    b1: &ClosableBraid,
    b2: &ClosableBraid,
    mq: &MultiQuandle,
) -> Result<DisjointUnion, InvariantError> {
    let lhs = count_colorings_braid(&b1.beside(b2), mq)?.count();
    let rhs = count_colorings_braid(b1, mq)?.count() * count_colorings_braid(b2, mq)?.count();
    Ok(DisjointUnion { lhs, rhs, equal: lhs == rhs })
}

pub(crate) fn check_colors(colors: impl IntoIterator<Item = usize>, mq: &MultiQuandle) -> Result<(), InvariantError> {
    match colors.into_iter().find(|&c| c >= mq.k()) {
        Some(color) => Err(InvariantError::ColorOutOfRange { color, k: mq.k() }),
        None => Ok(()),
    }
}
