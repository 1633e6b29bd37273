//! Colored link diagrams.
//!
//! A diagram is stored combinatorially: arcs (maximal overpassing pieces,
//! broken at undercrossings), oriented components listing their arcs in
//! traversal order, and signed crossings `(over, under_in, under_out)`.
//! Arc identifiers are opaque strings; in memory they are indexed by
//! [`ArcId`].

mod closure;
mod format;
mod moves;
mod pd;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

pub use crate::braid::Sign;
pub use format::{parse_diagram, serialize_diagram};
pub use moves::{apply_reidemeister, Move, Site};
pub use pd::{from_pd_code, parse_pd_input, parse_pd_tuples};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate arc `{0}`")]
    DuplicateArc(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("arc `{0}` belongs to more than one component")]
    ArcInTwoComponents(String),
    #[error("arc `{0}` belongs to no component")]
    OrphanArc(String),
    #[error("component `{0}` has no arcs")]
    EmptyComponent(String),
    #[error("crossing {}: arc `{out}` does not follow `{under_in}` on its component", index + 1)]
    NotConsecutive { index: usize, under_in: String, out: String },
    #[error("arc `{0}` ends at more than one crossing")]
    ArcEndsTwice(String),
    #[error("arc `{0}` starts at more than one crossing")]
    ArcStartsTwice(String),
    #[error("arc `{0}` has no crossing where it ends")]
    OpenArc(String),
    #[error("PD code: {0}")]
    Pd(String),
    #[error("{found} colors given for {components} components")]
    ColorCount { found: usize, components: usize },
    #[error("illegal site for {0}: {1}")]
    IllegalSite(&'static str, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    /// 0-based color.
    pub color: usize,
    /// Arcs in traversal order, read cyclically.
    pub arcs: Vec<ArcId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub sign: Sign,
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDiagram {
    arcs: Vec<String>,
    components: Vec<Component>,
    crossings: Vec<Crossing>,
    arc_component: Vec<usize>,
}

impl ColoredDiagram {
    /// Builds and checks a diagram. Arcs listed in `arcs` but used by no
    /// component are an error.
    pub fn new(arcs: Vec<String>, components: Vec<Component>, crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        let mut index = HashMap::new();
        for (i, name) in arcs.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(DiagramError::DuplicateArc(name.clone()));
            }
        }
        let name = |a: ArcId| arcs.get(a.0).cloned().unwrap_or_else(|| format!("#{}", a.0));

        let mut arc_component = vec![usize::MAX; arcs.len()];
        let mut next_arc = vec![ArcId(usize::MAX); arcs.len()];
        for (ci, comp) in components.iter().enumerate() {
            if comp.arcs.is_empty() {
                return Err(DiagramError::EmptyComponent(comp.id.clone()));
            }
            for (pos, &a) in comp.arcs.iter().enumerate() {
                if a.0 >= arcs.len() {
                    return Err(DiagramError::UnknownArc(name(a)));
                }
                if arc_component[a.0] != usize::MAX {
                    return Err(DiagramError::ArcInTwoComponents(name(a)));
                }
                arc_component[a.0] = ci;
                next_arc[a.0] = comp.arcs[(pos + 1) % comp.arcs.len()];
            }
        }
        if let Some(orphan) = arc_component.iter().position(|&c| c == usize::MAX) {
            return Err(DiagramError::OrphanArc(arcs[orphan].clone()));
        }

        let mut ends = vec![false; arcs.len()];
        let mut starts = vec![false; arcs.len()];
        for (i, c) in crossings.iter().enumerate() {
            for a in [c.over, c.under_in, c.under_out] {
                if a.0 >= arcs.len() {
                    return Err(DiagramError::UnknownArc(name(a)));
                }
            }
            if next_arc[c.under_in.0] != c.under_out {
                return Err(DiagramError::NotConsecutive { index: i, under_in: name(c.under_in), out: name(c.under_out) });
            }
            if std::mem::replace(&mut ends[c.under_in.0], true) {
                return Err(DiagramError::ArcEndsTwice(name(c.under_in)));
            }
            if std::mem::replace(&mut starts[c.under_out.0], true) {
                return Err(DiagramError::ArcStartsTwice(name(c.under_out)));
            }
        }
        // Consecutive arcs on a component are separated by an undercrossing;
        // only a lone arc may close up without one.
        for comp in &components {
            if comp.arcs.len() > 1 {
                if let Some(&open) = comp.arcs.iter().find(|a| !ends[a.0]) {
                    return Err(DiagramError::OpenArc(name(open)));
                }
            }
        }
        Ok(Self { arcs, components, crossings, arc_component })
    }

    /// Builds a diagram, dropping arcs that no component references.
    pub(crate) fn compacted(arcs: Vec<String>, components: Vec<Component>, crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        let mut used = vec![false; arcs.len()];
        for comp in &components {
            for a in &comp.arcs {
                if let Some(u) = used.get_mut(a.0) {
                    *u = true;
                }
            }
        }
        let mut remap = vec![usize::MAX; arcs.len()];
        let mut kept = Vec::new();
        for (i, name) in arcs.into_iter().enumerate() {
            if used[i] {
                remap[i] = kept.len();
                kept.push(name);
            }
        }
        let map = |a: ArcId| ArcId(remap.get(a.0).copied().unwrap_or(usize::MAX));
        let components = components
            .into_iter()
            .map(|c| Component { arcs: c.arcs.into_iter().map(map).collect(), ..c })
            .collect();
        let crossings = crossings
            .into_iter()
            .map(|c| Crossing { over: map(c.over), under_in: map(c.under_in), under_out: map(c.under_out), ..c })
            .collect();
        Self::new(kept, components, crossings)
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_names(&self) -> &[String] {
        &self.arcs
    }

    pub fn arc_name(&self, a: ArcId) -> &str {
        &self.arcs[a.0]
    }

    pub fn arc(&self, name: &str) -> Option<ArcId> {
        self.arcs.iter().position(|n| n == name).map(ArcId)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn component_of(&self, a: ArcId) -> &Component {
        &self.components[self.arc_component[a.0]]
    }

    /// 0-based color of the component carrying `a`.
    pub fn color_of(&self, a: ArcId) -> usize {
        self.component_of(a).color
    }

    /// Largest color index used, plus one.
    pub fn colors_needed(&self) -> usize {
        self.components.iter().map(|c| c.color + 1).max().unwrap_or(0)
    }

    /// Renames arcs `1..m` in component traversal order and sorts crossings.
    /// Two diagrams that differ only by arc names have equal canonical forms.
    pub fn canonical(&self) -> ColoredDiagram {
        let mut remap = vec![0; self.arcs.len()];
        let mut next = 0;
        for comp in &self.components {
            for a in &comp.arcs {
                remap[a.0] = next;
                next += 1;
            }
        }
        let map = |a: ArcId| ArcId(remap[a.0]);
        let arcs = (1..=self.arcs.len()).map(|i| i.to_string()).collect();
        let components = self
            .components
            .iter()
            .map(|c| Component { id: c.id.clone(), color: c.color, arcs: c.arcs.iter().map(|&a| map(a)).collect() })
            .collect();
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing { sign: c.sign, over: map(c.over), under_in: map(c.under_in), under_out: map(c.under_out) })
            .collect();
        crossings.sort();
        ColoredDiagram::new(arcs, components, crossings).expect("renaming preserves well-formedness")
    }

    pub fn same_up_to_renaming(&self, other: &ColoredDiagram) -> bool {
        self.canonical() == other.canonical()
    }

    /// A name not yet used by any arc, derived from `base`.
    pub(crate) fn fresh_name(&self, base: &str, taken: &[String]) -> String {
        (1..)
            .map(|i| format!("{base}.{i}"))
            .find(|n| !self.arcs.contains(n) && !taken.contains(n))
            .expect("unbounded supply of names")
    }

    /// Number of crossings at which each arc passes over, indexed by arc.
    pub fn over_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.arcs.len()];
        for c in &self.crossings {
            counts[c.over.0] += 1;
        }
        counts
    }

    /// Colors keyed by component id, for reports.
    pub fn component_colors(&self) -> BTreeMap<&str, usize> {
        self.components.iter().map(|c| (c.id.as_str(), c.color)).collect()
    }
}
