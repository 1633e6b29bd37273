//! Enumeration of small quandles and multi-quandles.
//!
//! A quandle table is built column by column: column `y` is a permutation
//! `σ_y` fixing `y`, and self-distributivity says `σ_z σ_y σ_z⁻¹ = σ_{σ_z(y)}`.
//! Every pair of known columns therefore forces or checks a third one.

use std::fs;
use std::io;
use std::path::Path;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::quandle::{distributes_over, serialize_quandle, MultiQuandle, OperationTable};

/// Largest order searched without an explicit override.
pub const ORDER_CAP: usize = 6;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("k must be at least 1")]
    ZeroK,
    #[error("order {order} exceeds the cap of {cap}; pass the override to search anyway")]
    OrderTooLarge { order: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    AllLabeled,
    UpToIsomorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub order: usize,
    pub k: usize,
    pub mode: Mode,
    pub allow_large: bool,
}

impl SearchSpec {
    pub fn check(&self) -> Result<(), SearchError> {
        if self.order == 0 {
            return Err(SearchError::ZeroOrder);
        }
        if self.k == 0 {
            return Err(SearchError::ZeroK);
        }
        if self.order > ORDER_CAP && !self.allow_large {
            return Err(SearchError::OrderTooLarge { order: self.order, cap: ORDER_CAP });
        }
        Ok(())
    }
}

type Perm = Vec<usize>;

fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

fn invert(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Closes the partial assignment under the conjugation rule. Returns false on
/// a contradiction.
fn propagate(cols: &mut [Option<Perm>]) -> bool {
    let n = cols.len();
    let mut changed = true;
    while changed {
        changed = false;
        for z in 0..n {
            let Some(sz) = cols[z].clone() else { continue };
            let sz_inv = invert(&sz);
            for y in 0..n {
                let Some(sy) = cols[y].as_ref() else { continue };
                let want = compose(&compose(&sz, sy), &sz_inv);
                let t = sz[y];
                match &cols[t] {
                    Some(st) if *st != want => return false,
                    Some(_) => {}
                    None => {
                        cols[t] = Some(want);
                        changed = true;
                    }
                }
            }
        }
    }
    true
}

fn table_of(cols: &[Option<Perm>]) -> OperationTable {
    let n = cols.len();
    OperationTable::from_fn(n, |x, y| cols[y].as_ref().expect("complete assignment")[x]).expect("permutation columns")
}

fn extend(cols: Vec<Option<Perm>>, choices: &[Vec<Perm>], out: &mut Vec<OperationTable>) {
    let Some(y) = cols.iter().position(Option::is_none) else {
        out.push(table_of(&cols));
        return;
    };
    for p in &choices[y] {
        let mut next = cols.clone();
        next[y] = Some(p.clone());
        if propagate(&mut next) {
            extend(next, choices, out);
        }
    }
}

/// Minimal relabeling of a tuple of tables under simultaneous permutation.
pub fn canonical_form(tables: &[OperationTable]) -> Vec<OperationTable> {
    let n = tables[0].order();
    (0..n)
        .permutations(n)
        .map(|p| tables.iter().map(|t| t.permuted(&p)).collect::<Vec<_>>())
        .min_by(|a, b| {
            let ka = a.iter().flat_map(|t| t.entries().iter());
            let kb = b.iter().flat_map(|t| t.entries().iter());
            ka.cmp(kb)
        })
        .expect("at least one permutation")
}

fn sort_tables(v: &mut [OperationTable]) {
    v.sort_by(|a, b| a.entries().cmp(b.entries()));
}

/// All quandle tables of the given order, sorted by entries. In
/// [`Mode::UpToIsomorphism`] only canonical representatives are returned.
pub fn enumerate_quandles(order: usize, mode: Mode) -> Vec<OperationTable> {
    let n = order;
    if n == 0 {
        return Vec::new();
    }
    let choices: Vec<Vec<Perm>> =
        (0..n).map(|y| (0..n).permutations(n).filter(|p| p[y] == y).collect()).collect();
    let mut all: Vec<OperationTable> = choices[0]
        .par_iter()
        .flat_map_iter(|p| {
            let mut cols = vec![None; n];
            cols[0] = Some(p.clone());
            let mut out = Vec::new();
            if propagate(&mut cols) {
                extend(cols, &choices, &mut out);
            }
            out
        })
        .collect();
    if mode == Mode::UpToIsomorphism {
        all = all.par_iter().map(|t| canonical_form(std::slice::from_ref(t)).remove(0)).collect();
        sort_tables(&mut all);
        all.dedup();
    }
    sort_tables(&mut all);
    all
}

/// All `k`-tuples (with repetition, in index order) of `tables` whose ordered
/// pairs all distribute over each other.
pub fn assemble_multi_quandles(tables: &[OperationTable], k: usize) -> Vec<MultiQuandle> {
    let m = tables.len();
    let compat: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|i| (0..m).map(|j| distributes_over(&tables[i], &tables[j])).collect())
        .collect();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn go(compat: &[Vec<bool>], k: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pick.len() == k {
            out.push(pick.clone());
            return;
        }
        for j in 0..compat.len() {
            if compat[j][j] && pick.iter().all(|&i| compat[i][j] && compat[j][i]) {
                pick.push(j);
                go(compat, k, pick, out);
                pick.pop();
            }
        }
    }
    if k > 0 {
        go(&compat, k, &mut pick, &mut out);
    }
    out.into_par_iter()
        .map(|idx| {
            let ts = idx.iter().map(|&i| tables[i].clone()).collect();
            MultiQuandle::new(ts).expect("pairwise distributive quandles form a multi-quandle")
        })
        .collect()
}

/// Multi-quandles for `spec`. Isomorphism is simultaneous relabeling of all
/// `k` tables.
pub fn search(spec: &SearchSpec) -> Result<Vec<MultiQuandle>, SearchError> {
    spec.check()?;
    let quandles = enumerate_quandles(spec.order, Mode::AllLabeled);
    let mut found = assemble_multi_quandles(&quandles, spec.k);
    if spec.mode == Mode::UpToIsomorphism {
        let mut reps: Vec<Vec<OperationTable>> = found.par_iter().map(|mq| canonical_form(mq.tables())).collect();
        reps.sort_by(|a, b| {
            a.iter().flat_map(|t| t.entries().iter()).cmp(b.iter().flat_map(|t| t.entries().iter()))
        });
        reps.dedup();
        found = reps.into_iter().map(|ts| MultiQuandle::new(ts).expect("relabeling preserves the axioms")).collect();
    }
    Ok(found)
}

/// Writes one `mq v1` file per result and a `manifest.txt` with the counts.
pub fn write_results(dir: &Path, spec: &SearchSpec, results: &[MultiQuandle]) -> Result<(), SearchError> {
    fs::create_dir_all(dir)?;
    let width = results.len().max(1).to_string().len();
    let mut manifest = format!(
        "order {}\nk {}\nmode {}\ncount {}\n",
        spec.order,
        spec.k,
        match spec.mode {
            Mode::AllLabeled => "labeled",
            Mode::UpToIsomorphism => "iso",
        },
        results.len()
    );
    for (i, mq) in results.iter().enumerate() {
        let name = format!("mq-{:0width$}.mq", i + 1);
        fs::write(dir.join(&name), serialize_quandle(mq, false))?;
        manifest.push_str(&format!("file {name}\n"));
    }
    fs::write(dir.join("manifest.txt"), manifest)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_orders() {
        assert_eq!(enumerate_quandles(1, Mode::AllLabeled).len(), 1);
        let two = enumerate_quandles(2, Mode::AllLabeled);
        assert_eq!(two, vec![OperationTable::trivial(2)]);
    }

    #[test]
    fn order_three_representatives() {
        let labeled = enumerate_quandles(3, Mode::AllLabeled);
        let iso = enumerate_quandles(3, Mode::UpToIsomorphism);
        // trivial, dihedral, and the one with a fixed point and a swap
        assert_eq!(iso.len(), 3);
        assert!(iso.iter().all(|t| labeled.contains(t)));
    }

    #[test]
    fn order_four_counts() {
        // order-4 quandles fall into 7 isomorphism classes
        assert_eq!(enumerate_quandles(4, Mode::UpToIsomorphism).len(), 7);
    }

    #[test]
    fn trivial_assembly() {
        let out = assemble_multi_quandles(&[OperationTable::trivial(4)], 3);
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn spec_caps() {
        let spec = SearchSpec { order: 7, k: 1, mode: Mode::AllLabeled, allow_large: false };
        assert!(matches!(spec.check(), Err(SearchError::OrderTooLarge { order: 7, cap: 6 })));
        assert!(SearchSpec { allow_large: true, ..spec }.check().is_ok());
        assert!(matches!(SearchSpec { k: 0, ..spec }.check(), Err(SearchError::ZeroK)));
    }
}
