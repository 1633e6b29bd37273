//! Small named multi-quandles used throughout the tests and the guide.

use crate::quandle::{MultiQuandle, OperationTable};

/// Rows of the order-5 3-quandle, blocks `▷_1 | ▷_2 | ▷_3` side by side, 1-based.
const TRICOLOR_ROWS: [[usize; 15]; 5] = [
    [1, 4, 5, 5, 4, 1, 1, 1, 5, 4, 1, 4, 5, 1, 1],
    [3, 2, 2, 3, 3, 3, 2, 2, 3, 3, 2, 2, 2, 2, 2],
    [2, 3, 3, 2, 2, 2, 3, 3, 2, 2, 3, 3, 3, 3, 3],
    [5, 5, 1, 4, 1, 5, 4, 4, 4, 1, 4, 5, 1, 4, 4],
    [4, 1, 4, 1, 5, 4, 5, 5, 1, 5, 5, 1, 4, 5, 5],
];

/// The five-element 3-quandle whose coloring counts separate the two
/// tricolorings of the closure of `σ₁⁻²σ₂²` (23 and 29 colorings) and give 71
/// colorings of the tricolored Borromean rings.
pub fn five_element_three_quandle() -> MultiQuandle {
    let tables = (0..3)
        .map(|b| {
            let rows: Vec<Vec<usize>> =
                TRICOLOR_ROWS.iter().map(|r| r[5 * b..5 * b + 5].iter().map(|v| v - 1).collect()).collect();
            OperationTable::from_rows(&rows).expect("static table is well-formed")
        })
        .collect();
    MultiQuandle::new(tables).expect("static table satisfies the axioms")
}
