//! The line-oriented `mq v1` text format.
//!
//! ```text
//! mq v1
//! order 2
//! k 1
//! op 1
//! 1 1
//! 2 2
//! ```
//!
//! Entries are 1-based. Optional `inv <i>` blocks are compared against the
//! derived inverse tables. Lines starting with `#` are ignored.

use std::fmt::Write;

use super::{MultiQuandle, OperationTable, QuandleError};

/// A parsed `mq v1` file: the operation tables plus any supplied inverse
/// blocks, before axiom validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleFile {
    pub tables: Vec<OperationTable>,
    pub supplied_inverses: Vec<(usize, OperationTable)>,
}

impl QuandleFile {
    /// Validates the tables and cross-checks supplied inverse blocks.
    pub fn into_multi_quandle(self) -> Result<MultiQuandle, QuandleError> {
        let mq = MultiQuandle::new(self.tables)?;
        for (i, supplied) in &self.supplied_inverses {
            let derived = mq.inverse_table(*i);
            let n = mq.order();
            for x in 0..n {
                for y in 0..n {
                    if supplied.get(x, y) != derived.get(x, y) {
                        return Err(QuandleError::InverseMismatch { op: *i, row: x, col: y });
                    }
                }
            }
        }
        Ok(mq)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> QuandleError {
    QuandleError::Parse { line, msg: msg.into() }
}

fn keyword_value(line: usize, text: &str, key: &str) -> Result<usize, QuandleError> {
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => {
            v.parse().map_err(|_| parse_err(line, format!("bad `{key}` value `{v}`")))
        }
        _ => Err(parse_err(line, format!("expected `{key} <int>`, found `{text}`"))),
    }
}

pub fn parse_quandle_file(text: &str) -> Result<QuandleFile, QuandleError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| lines.next().ok_or_else(|| parse_err(0, format!("unexpected end of input, expected {what}")));

    let (ln, header) = next("header")?;
    if header.split_whitespace().collect::<Vec<_>>() != ["mq", "v1"] {
        return Err(parse_err(ln, format!("expected `mq v1`, found `{header}`")));
    }
    let (ln, l) = next("order")?;
    let order = keyword_value(ln, l, "order")?;
    if order == 0 {
        return Err(parse_err(ln, "order must be positive"));
    }
    let (ln, l) = next("k")?;
    let k = keyword_value(ln, l, "k")?;
    if k == 0 {
        return Err(parse_err(ln, "k must be positive"));
    }

    let mut tables: Vec<Option<OperationTable>> = vec![None; k];
    let mut supplied_inverses = Vec::new();
    while let Ok((ln, l)) = next("block") {
        let mut parts = l.split_whitespace();
        let kind = parts.next().unwrap_or_default();
        let index: usize = match (parts.next().map(str::parse::<usize>), parts.next()) {
            (Some(Ok(i)), None) if (1..=k).contains(&i) => i - 1,
            _ => return Err(parse_err(ln, format!("expected `op <i>` or `inv <i>` with 1 <= i <= {k}, found `{l}`"))),
        };
        let mut rows = Vec::with_capacity(order);
        for _ in 0..order {
            let (rl, row) = next("table row")?;
            let values = row
                .split_whitespace()
                .map(|v| match v.parse::<usize>() {
                    Ok(v) if (1..=order).contains(&v) => Ok(v - 1),
                    _ => Err(parse_err(rl, format!("entry `{v}` is not in 1..={order}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != order {
                return Err(parse_err(rl, format!("row has {} entries, expected {order}", values.len())));
            }
            rows.push(values);
        }
        let table = OperationTable::from_rows(&rows)?;
        match kind {
            "op" => {
                if tables[index].replace(table).is_some() {
                    return Err(parse_err(ln, format!("duplicate block `op {}`", index + 1)));
                }
            }
            "inv" => supplied_inverses.push((index, table)),
            _ => return Err(parse_err(ln, format!("unknown block `{kind}`"))),
        }
    }
    let tables = tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| parse_err(0, format!("missing block `op {}`", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuandleFile { tables, supplied_inverses })
}

/// Writes `mq v1` text. With `with_inverses`, appends the derived `inv` blocks.
pub fn serialize_quandle(mq: &MultiQuandle, with_inverses: bool) -> String {
    let mut s = String::new();
    writeln!(s, "mq v1\norder {}\nk {}", mq.order(), mq.k()).unwrap();
    for (i, t) in mq.tables().iter().enumerate() {
        writeln!(s, "op {}", i + 1).unwrap();
        s.push_str(&t.to_string());
    }
    if with_inverses {
        for (i, t) in mq.inverse_tables().iter().enumerate() {
            writeln!(s, "inv {}", i + 1).unwrap();
            s.push_str(&t.to_string());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::alexander;

    #[test]
    fn round_trip_with_inverses() {
        let mq = alexander(7, &[3, 5, 6]).unwrap();
        let text = serialize_quandle(&mq, true);
        let parsed = parse_quandle_file(&text).unwrap();
        assert_eq!(parsed.supplied_inverses.len(), 3);
        assert_eq!(parsed.into_multi_quandle().unwrap(), mq);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# trivial\nmq v1\n\norder 2\nk 1\n# table\nop 1\n1 1\n2 2\n";
        let f = parse_quandle_file(text).unwrap();
        assert_eq!(f.tables[0], OperationTable::trivial(2));
    }

    #[test]
    fn rejects_mismatched_inverse_block() {
        let text = "mq v1\norder 3\nk 1\nop 1\n1 3 2\n3 2 1\n2 1 3\ninv 1\n1 2 3\n2 2 2\n3 3 1\n";
        let err = parse_quandle_file(text).unwrap().into_multi_quandle().unwrap_err();
        assert!(matches!(err, QuandleError::InverseMismatch { op: 0, .. }), "{err}");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_quandle_file("mq v1\norder 2\nk 1\nop 1\n1 1\n2 9\n").unwrap_err();
        assert!(matches!(err, QuandleError::Parse { line: 6, .. }), "{err}");
        let err = parse_quandle_file("mq v2\n").unwrap_err();
        assert!(matches!(err, QuandleError::Parse { line: 1, .. }));
        let err = parse_quandle_file("mq v1\norder 2\nk 2\nop 1\n1 1\n2 2\n").unwrap_err();
        assert!(err.to_string().contains("missing block `op 2`"));
    }
}
