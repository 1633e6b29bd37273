use std::fmt;

use super::QuandleError;

/// A binary operation on `{0..n}` stored row-major: entry `(x, y)` is `x ▷ y`.
///
/// Elements are 0-based in memory. Text formats and reports print them
/// 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationTable {
    order: usize,
    entries: Vec<usize>,
}

impl OperationTable {
    /// Builds a table from rows of 0-based entries. Checks shape and range only,
    /// not the quandle axioms.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, QuandleError> {
        let order = rows.len();
        if order == 0 {
            return Err(QuandleError::EmptyTable);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (x, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(QuandleError::RaggedRow { row: x, len: row.len(), order });
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(QuandleError::EntryOutOfRange { row: x, col: y, value: v, order });
                }
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { order, entries })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        let rows: Vec<Vec<usize>> =
            (0..order).map(|x| (0..order).map(|y| f(x, y)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// `x ▷ y = x`.
    pub fn trivial(order: usize) -> Self {
        Self::from_fn(order, |x, _| x).expect("trivial table is in range")
    }

    #[cfg(test)]
    pub(crate) fn from_raw(order: usize, entries: Vec<usize>) -> Self {
        debug_assert_eq!(entries.len(), order * order);
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.order + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.entries[x * self.order..(x + 1) * self.order]
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.order).map(|x| self.get(x, y)).collect()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Two distinct rows hitting the same value in column `y`, if any.
    pub fn column_collision(&self, y: usize) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.order];
        for x in 0..self.order {
            let v = self.get(x, y);
            if seen[v] != usize::MAX {
                return Some((seen[v], x));
            }
            seen[v] = x;
        }
        None
    }

    /// The table of `▷⁻¹`, defined by `(x ▷ y) ▷⁻¹ y = x`. `None` when some
    /// column is not a permutation.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.order;
        let mut inv = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = self.get(x, y);
                if inv[z * n + y] != usize::MAX {
                    return None;
                }
                inv[z * n + y] = x;
            }
        }
        Some(Self { order: n, entries: inv })
    }

    /// Checks idempotency, column bijectivity and self-distributivity.
    pub fn is_quandle(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| self.get(x, x) == x)
            && (0..n).all(|y| self.column_collision(y).is_none())
            && distributes_over(self, self)
    }

    /// Relabels by `perm`: the result maps `(σx, σy)` to `σ(x ▷ y)`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        let mut entries = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[perm[x] * n + perm[y]] = perm[self.get(x, y)];
            }
        }
        Self { order: n, entries }
    }
}

/// `(x ▷_a y) ▷_b z = (x ▷_b z) ▷_a (y ▷_b z)` for all `x, y, z`.
pub fn distributes_over(a: &OperationTable, b: &OperationTable) -> bool {
    let n = a.order();
    if b.order() != n {
        return false;
    }
    for z in 0..n {
        for y in 0..n {
            let yz = b.get(y, z);
            for x in 0..n {
                if b.get(a.get(x, y), z) != a.get(b.get(x, z), yz) {
                    return false;
                }
            }
        }
    }
    true
}

impl fmt::Debug for OperationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperationTable({}) [", self.order)?;
        for x in 0..self.order {
            if x > 0 {
                write!(f, "; ")?;
            }
            for (i, v) in self.row(x).iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v + 1)?;
            }
        }
        write!(f, "]")
    }
}

/// Prints the table 1-based, one row per line, as in the `mq v1` format.
impl fmt::Display for OperationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.order {
            let row: Vec<String> = self.row(x).iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(n: usize) -> OperationTable {
        OperationTable::from_fn(n, |x, y| (2 * y + n - x) % n).unwrap()
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            OperationTable::from_rows::<Vec<usize>>(&[]),
            Err(QuandleError::EmptyTable)
        ));
        assert!(matches!(
            OperationTable::from_rows(&[vec![0, 1], vec![1]]),
            Err(QuandleError::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            OperationTable::from_rows(&[vec![0, 2], vec![1, 1]]),
            Err(QuandleError::EntryOutOfRange { row: 0, col: 1, value: 2, .. })
        ));
    }

    #[test]
    fn dihedral_is_an_involutory_quandle() {
        for n in 3..8 {
            let t = dihedral(n);
            assert!(t.is_quandle(), "R_{n}");
            assert_eq!(t.inverse().unwrap(), t);
        }
    }

    #[test]
    fn inverse_undoes_columns() {
        let t = OperationTable::from_fn(5, |x, y| (2 * x + 4 * y) % 5).unwrap();
        let inv = t.inverse().unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(inv.get(t.get(x, y), y), x);
                assert_eq!(t.get(inv.get(x, y), y), x);
            }
        }
        assert_eq!(inv.inverse().unwrap(), t);
    }

    #[test]
    fn non_bijective_column_has_no_inverse() {
        let t = OperationTable::from_rows(&[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(t.column_collision(0), Some((0, 1)));
        assert!(t.inverse().is_none());
    }

    #[test]
    fn permuting_preserves_quandle_axioms() {
        let t = dihedral(5);
        let p = t.permuted(&[3, 0, 4, 1, 2]);
        assert!(p.is_quandle());
        assert_ne!(p, t);
    }
}
