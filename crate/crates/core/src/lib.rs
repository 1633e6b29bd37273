//! Multi-quandles and the colored-link invariants they define.
//!
//! A multi-quandle is a finite set with several quandle operations that
//! distribute over one another. Coloring the components of a link with
//! operation indices, the number of arc labelings compatible with every
//! crossing is an invariant of the colored link.
//!
//! ```
//! use mquandle::braid::ColoredBraid;
//! use mquandle::catalog::five_element_three_quandle;
//! use mquandle::invariants::count_colorings_braid;
//!
//! let mq = five_element_three_quandle();
//! let b: ColoredBraid = "strands=3 word=-1,-1,2,2 colors=1,2,3".parse().unwrap();
//! let set = count_colorings_braid(&b.check_closable().unwrap(), &mq).unwrap();
//! assert_eq!(set.count(), 23);
//! ```

pub mod braid;
pub mod catalog;
pub mod diagram;
pub mod fuzz;
pub mod invariants;
pub mod quandle;
pub mod search;
pub mod torus;

pub use braid::{ClosableBraid, ColoredBraid, Sign};
pub use diagram::ColoredDiagram;
pub use quandle::{MultiQuandle, OperationTable};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quandles.md")]
    mod quandles {}
    #[doc = include_str!("../../../book/src/braids.md")]
    mod braids {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/torus.md")]
    mod torus {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
