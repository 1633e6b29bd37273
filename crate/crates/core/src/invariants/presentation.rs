//! Presentations of the fundamental multi-quandle of a diagram.

use std::fmt;

use crate::diagram::ColoredDiagram;

/// A multi-quandle word over arc generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Gen(String),
    /// `left ▷_op right`, or `left ▷_op⁻¹ right` when `inverse`; `op` is 0-based.
    Op { left: Box<Word>, op: usize, inverse: bool, right: Box<Word> },
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(g) => f.write_str(g),
            Word::Op { left, op, inverse, right } => {
                let wrap = |w: &Word| match w {
                    Word::Gen(_) => w.to_string(),
                    _ => format!("({w})"),
                };
                let inv = if *inverse { "^-1" } else { "" };
                write!(f, "{} ▷{}{} {}", wrap(left), op + 1, inv, wrap(right))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: String,
    pub rhs: Word,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.generators.join(","))?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Arcs as generators and one relation `out = in ▷^{±1}_c over` per crossing,
/// where `c` is the color of the over-arc.
pub fn extract_presentation(d: &ColoredDiagram) -> Presentation {
    let relations = d
        .crossings()
        .iter()
        .map(|x| Relation {
            lhs: d.arc_name(x.under_out).to_string(),
            rhs: Word::Op {
                left: Box::new(Word::Gen(d.arc_name(x.under_in).to_string())),
                op: d.color_of(x.over),
                inverse: !x.sign.is_positive(),
                right: Box::new(Word::Gen(d.arc_name(x.over).to_string())),
            },
        })
        .collect();
    Presentation { generators: d.arc_names().to_vec(), relations }
}
