//! Reidemeister moves on the combinatorial diagram.

use super::{ArcId, ColoredDiagram, Component, Crossing, DiagramError, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Adds a kink with a crossing of the given sign at the end of an arc.
    R1(Sign),
    /// Pushes one arc under another, creating crossings `sign` then `-sign`.
    R2(Sign),
    /// Slides a strand across a crossing.
    R3,
    /// Removes a kink crossing.
    R1Undo,
    /// Removes a bigon, given its middle under-arc.
    R2Undo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Site {
    Arc(ArcId),
    ArcPair { over: ArcId, under: ArcId },
    Crossing(usize),
    /// `[a, x, y]`: crossing `a` of the top strand over the middle strand, and
    /// the crossings `x`, `y` where the bottom strand passes under both.
    Triangle([usize; 3]),
}

impl Move {
    fn name(self) -> &'static str {
        match self {
            Move::R1(_) => "R1",
            Move::R2(_) => "R2",
            Move::R3 => "R3",
            Move::R1Undo => "R1 undo",
            Move::R2Undo => "R2 undo",
        }
    }
}

struct Parts {
    arcs: Vec<String>,
    components: Vec<Component>,
    crossings: Vec<Crossing>,
}

impl Parts {
    fn of(d: &ColoredDiagram) -> Self {
        Parts { arcs: d.arcs.clone(), components: d.components.clone(), crossings: d.crossings.clone() }
    }

    fn new_arc(&mut self, d: &ColoredDiagram, base: ArcId) -> ArcId {
        let name = d.fresh_name(d.arc_name(base), &self.arcs);
        self.arcs.push(name);
        ArcId(self.arcs.len() - 1)
    }

    /// Inserts `new` right after `after` on its component.
    fn insert_after(&mut self, after: ArcId, new: &[ArcId]) {
        for comp in &mut self.components {
            if let Some(pos) = comp.arcs.iter().position(|&a| a == after) {
                comp.arcs.splice(pos + 1..pos + 1, new.iter().copied());
                return;
            }
        }
    }

    /// The crossing where `a` ends, if any.
    fn end_of(&self, a: ArcId) -> Option<usize> {
        self.crossings.iter().position(|c| c.under_in == a)
    }

    /// Replaces `gone` by `keep` everywhere and drops it from its component.
    fn merge(&mut self, gone: ArcId, keep: ArcId) {
        for c in &mut self.crossings {
            for a in [&mut c.over, &mut c.under_in, &mut c.under_out] {
                if *a == gone {
                    *a = keep;
                }
            }
        }
        for comp in &mut self.components {
            comp.arcs.retain(|&a| a != gone);
        }
    }

    fn remove_crossings(&mut self, mut idx: Vec<usize>) {
        idx.sort_unstable();
        for i in idx.into_iter().rev() {
            self.crossings.remove(i);
        }
    }

    fn build(self) -> Result<ColoredDiagram, DiagramError> {
        ColoredDiagram::compacted(self.arcs, self.components, self.crossings)
    }
}

impl ColoredDiagram {
    /// Applies `mv` at `site`, returning the new diagram.
    pub fn apply(&self, mv: Move, site: &Site) -> Result<ColoredDiagram, DiagramError> {
        let illegal = |why: String| DiagramError::IllegalSite(mv.name(), why);
        let check_arc = |a: ArcId| {
            if a.0 < self.arc_count() {
                Ok(a)
            } else {
                Err(illegal(format!("no arc #{}", a.0)))
            }
        };
        let check_crossing = |i: usize| {
            self.crossings.get(i).copied().ok_or_else(|| illegal(format!("no crossing {}", i + 1)))
        };
        let mut p = Parts::of(self);
        match (mv, site) {
            (Move::R1(sign), Site::Arc(u)) => {
                let u = check_arc(*u)?;
                match p.end_of(u) {
                    None => p.crossings.push(Crossing { sign, over: u, under_in: u, under_out: u }),
                    Some(end) => {
                        let a2 = p.new_arc(self, u);
                        p.crossings[end].under_in = a2;
                        p.insert_after(u, &[a2]);
                        p.crossings.push(Crossing { sign, over: u, under_in: u, under_out: a2 });
                    }
                }
            }
            (Move::R2(sign), Site::ArcPair { over, under }) => {
                let (o, u) = (check_arc(*over)?, check_arc(*under)?);
                if o == u {
                    return Err(illegal(format!("arc `{}` cannot pass under itself", self.arc_name(u))));
                }
                let u2 = p.new_arc(self, u);
                match p.end_of(u) {
                    None => {
                        p.insert_after(u, &[u2]);
                        p.crossings.push(Crossing { sign, over: o, under_in: u, under_out: u2 });
                        p.crossings.push(Crossing { sign: sign.flip(), over: o, under_in: u2, under_out: u });
                    }
                    Some(end) => {
                        let u3 = p.new_arc(self, u);
                        p.crossings[end].under_in = u3;
                        p.insert_after(u, &[u2, u3]);
                        p.crossings.push(Crossing { sign, over: o, under_in: u, under_out: u2 });
                        p.crossings.push(Crossing { sign: sign.flip(), over: o, under_in: u2, under_out: u3 });
                    }
                }
            }
            (Move::R1Undo, Site::Crossing(i)) => {
                let c = check_crossing(*i)?;
                if c.over != c.under_in && c.over != c.under_out {
                    return Err(illegal(format!("crossing {} is not a kink", i + 1)));
                }
                p.remove_crossings(vec![*i]);
                if c.under_in != c.under_out {
                    p.merge(c.under_out, c.under_in);
                }
            }
            (Move::R2Undo, Site::Arc(m)) => {
                let m = check_arc(*m)?;
                let name = self.arc_name(m);
                let c1 = self.crossings.iter().position(|c| c.under_out == m);
                let c2 = self.crossings.iter().position(|c| c.under_in == m);
                let (Some(c1), Some(c2)) = (c1, c2) else {
                    return Err(illegal(format!("arc `{name}` does not run between two undercrossings")));
                };
                let (x, y) = (self.crossings[c1], self.crossings[c2]);
                if c1 == c2 || x.over != y.over || x.sign == y.sign {
                    return Err(illegal(format!("arc `{name}` is not the middle of a bigon")));
                }
                if self.crossings.iter().any(|c| c.over == m) {
                    return Err(illegal(format!("arc `{name}` passes over a crossing")));
                }
                p.remove_crossings(vec![c1, c2]);
                p.merge(m, x.under_in);
                if y.under_out != x.under_in {
                    p.merge(y.under_out, x.under_in);
                }
            }
            (Move::R3, Site::Triangle([a, x, y])) => {
                let (ca, cx, cy) = (check_crossing(*a)?, check_crossing(*x)?, check_crossing(*y)?);
                let (nx, ny) = r3_flip(self, ca, cx, cy).map_err(illegal)?;
                p.crossings[*x].over = nx;
                p.crossings[*y].over = ny;
            }
            (mv, site) => return Err(illegal(format!("site {site:?} does not fit {}", mv.name()))),
        }
        p.build()
    }

    /// Triangles where an R3 move applies: a crossing of equal-signed strands
    /// plus a third strand passing under both with a bare arc in between.
    pub fn find_r3_sites(&self) -> Vec<[usize; 3]> {
        let mut sites = Vec::new();
        for (xi, cx) in self.crossings.iter().enumerate() {
            let Some(yi) = self.crossings.iter().position(|c| c.under_in == cx.under_out) else { continue };
            let cy = self.crossings[yi];
            for (ai, ca) in self.crossings.iter().enumerate() {
                if ai != xi && ai != yi && r3_flip(self, *ca, *cx, cy).is_ok() {
                    sites.push([ai, xi, yi]);
                }
            }
        }
        sites
    }
}

/// New over-arcs for `x` and `y` after sliding across `a`.
fn r3_flip(d: &ColoredDiagram, a: Crossing, x: Crossing, y: Crossing) -> Result<(ArcId, ArcId), String> {
    if a.sign != x.sign || a.sign != y.sign {
        return Err("crossings have different signs".into());
    }
    let mid = x.under_out;
    if y.under_in != mid {
        return Err("second crossing does not follow the first along the lower strand".into());
    }
    if a == x || a == y || x == y || d.crossings.iter().any(|c| c.over == mid) {
        return Err(format!("arc `{}` is not a bare segment", d.arc_name(mid)));
    }
    let (t, m1, m2) = (a.over, a.under_in, a.under_out);
    if [t, m1, m2].contains(&mid) {
        return Err("strands overlap".into());
    }
    if x.over == t && y.over == m2 {
        Ok((m1, t))
    } else if x.over == m1 && y.over == t {
        Ok((t, m2))
    } else {
        Err("lower strand does not pass under both strands of the crossing".into())
    }
}

/// Applies `mv` at `site`.
pub fn apply_reidemeister(d: &ColoredDiagram, mv: Move, site: &Site) -> Result<ColoredDiagram, DiagramError> {
    d.apply(mv, site)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::ColoredBraid;

    fn closure(spec: &str) -> ColoredDiagram {
        spec.parse::<ColoredBraid>().unwrap().check_closable().unwrap().closure_diagram()
    }

    #[test]
    fn r1_round_trip() {
        let d = closure("strands=2 word=1,1,1 colors=1,1");
        for sign in [Sign::Positive, Sign::Negative] {
            let k = d.apply(Move::R1(sign), &Site::Arc(ArcId(0))).unwrap();
            assert_eq!(k.crossings().len(), 4);
            let back = k.apply(Move::R1Undo, &Site::Crossing(3)).unwrap();
            assert!(back.same_up_to_renaming(&d));
        }
        let u = closure("strands=1 word= colors=1");
        let k = u.apply(Move::R1(Sign::Negative), &Site::Arc(ArcId(0))).unwrap();
        assert_eq!(k.arc_count(), 1);
        assert!(k.apply(Move::R1Undo, &Site::Crossing(0)).unwrap().same_up_to_renaming(&u));
    }

    #[test]
    fn r2_round_trip() {
        let d = closure("strands=3 word=-1,-1,2,2 colors=1,2,3");
        let e = d.apply(Move::R2(Sign::Positive), &Site::ArcPair { over: ArcId(0), under: ArcId(2) }).unwrap();
        assert_eq!(e.crossings().len(), 6);
        let mid = e.crossings()[4].under_out;
        let back = e.apply(Move::R2Undo, &Site::Arc(mid)).unwrap();
        assert!(back.same_up_to_renaming(&d));

        let u = closure("strands=2 word= colors=1,2");
        let e = u.apply(Move::R2(Sign::Negative), &Site::ArcPair { over: ArcId(1), under: ArcId(0) }).unwrap();
        assert_eq!(e.arc_count(), 3);
        let mid = e.crossings()[0].under_out;
        assert!(e.apply(Move::R2Undo, &Site::Arc(mid)).unwrap().same_up_to_renaming(&u));
    }

    #[test]
    fn illegal_sites() {
        let d = closure("strands=2 word=1,1,1 colors=1,1");
        assert!(matches!(d.apply(Move::R1Undo, &Site::Crossing(0)), Err(DiagramError::IllegalSite("R1 undo", _))));
        assert!(d.apply(Move::R2Undo, &Site::Arc(ArcId(0))).is_err());
        assert!(d.apply(Move::R3, &Site::Triangle([0, 1, 2])).is_err());
        assert!(d.apply(Move::R1(Sign::Positive), &Site::Crossing(0)).is_err());
        assert!(d.apply(Move::R1(Sign::Positive), &Site::Arc(ArcId(9))).is_err());
    }

    #[test]
    fn r3_on_braid_relation() {
        let a = closure("strands=3 word=1,2,1 colors=1,2,1");
        let b = closure("strands=3 word=2,1,2 colors=1,2,1");
        let sites = a.find_r3_sites();
        assert!(!sites.is_empty());
        let moved = a.apply(Move::R3, &Site::Triangle(sites[0])).unwrap();
        assert!(moved.same_up_to_renaming(&b) || moved.find_r3_sites().contains(&sites[0]));
        let again = moved.apply(Move::R3, &Site::Triangle(sites[0])).unwrap();
        assert_eq!(again, a);
    }
}
