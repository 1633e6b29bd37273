//! The `diag v1` text format.
//!
//! ```text
//! diag v1
//! components 2
//! component 1 color 1 arcs a
//! component 2 color 2 arcs b
//! crossings 2
//! x + over=b in=a out=a
//! x + over=a in=b out=b
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use super::{ArcId, ColoredDiagram, Component, Crossing, DiagramError, Sign};

fn err(line: usize, msg: impl Into<String>) -> DiagramError {
    DiagramError::Parse { line, msg: msg.into() }
}

fn count_line(line: usize, text: &str, key: &str) -> Result<usize, DiagramError> {
    match text.split_whitespace().collect::<Vec<_>>().as_slice() {
        [k, v] if *k == key => v.parse().map_err(|_| err(line, format!("bad count `{v}`"))),
        _ => Err(err(line, format!("expected `{key} <count>`, found `{text}`"))),
    }
}

pub fn parse_diagram(text: &str) -> Result<ColoredDiagram, DiagramError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| lines.next().ok_or_else(|| err(0, format!("unexpected end of input, expected {what}")));

    let (ln, header) = next("header")?;
    if header.split_whitespace().collect::<Vec<_>>() != ["diag", "v1"] {
        return Err(err(ln, format!("expected `diag v1`, found `{header}`")));
    }
    let (ln, l) = next("components")?;
    let ncomp = count_line(ln, l, "components")?;

    let mut arcs: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut components = Vec::with_capacity(ncomp);
    for _ in 0..ncomp {
        let (ln, l) = next("component line")?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [kw, id, color_kw, color, arcs_kw, list] = parts.as_slice() else {
            return Err(err(ln, format!("expected `component <id> color <c> arcs <a1,...>`, found `{l}`")));
        };
        if *kw != "component" || *color_kw != "color" || *arcs_kw != "arcs" {
            return Err(err(ln, format!("expected `component <id> color <c> arcs <a1,...>`, found `{l}`")));
        }
        let color: usize = match color.parse::<usize>() {
            Ok(c) if c >= 1 => c - 1,
            _ => return Err(err(ln, format!("color `{color}` is not a positive integer"))),
        };
        let mut comp_arcs = Vec::new();
        for name in list.split(',') {
            if name.is_empty() {
                return Err(err(ln, "empty arc name"));
            }
            if index.contains_key(name) {
                return Err(err(ln, format!("arc `{name}` listed twice")));
            }
            index.insert(name.to_string(), arcs.len());
            comp_arcs.push(ArcId(arcs.len()));
            arcs.push(name.to_string());
        }
        components.push(Component { id: id.to_string(), color, arcs: comp_arcs });
    }

    let (ln, l) = next("crossings")?;
    let ncross = count_line(ln, l, "crossings")?;
    let mut crossings = Vec::with_capacity(ncross);
    for _ in 0..ncross {
        let (ln, l) = next("crossing line")?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [kw, sign, over, under_in, under_out] = parts.as_slice() else {
            return Err(err(ln, format!("expected `x <+|-> over=<arc> in=<arc> out=<arc>`, found `{l}`")));
        };
        if *kw != "x" {
            return Err(err(ln, format!("expected crossing line, found `{l}`")));
        }
        let sign = match *sign {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            s => return Err(err(ln, format!("sign `{s}` is not + or -"))),
        };
        let field = |text: &str, key: &str| -> Result<ArcId, DiagramError> {
            let name = text
                .strip_prefix(key)
                .and_then(|t| t.strip_prefix('='))
                .ok_or_else(|| err(ln, format!("expected `{key}=<arc>`, found `{text}`")))?;
            index.get(name).map(|&i| ArcId(i)).ok_or_else(|| err(ln, format!("unknown arc `{name}`")))
        };
        crossings.push(Crossing {
            sign,
            over: field(over, "over")?,
            under_in: field(under_in, "in")?,
            under_out: field(under_out, "out")?,
        });
    }
    if let Ok((ln, l)) = next("end") {
        return Err(err(ln, format!("trailing content `{l}`")));
    }
    ColoredDiagram::new(arcs, components, crossings)
}

pub fn serialize_diagram(d: &ColoredDiagram) -> String {
    let mut s = String::new();
    writeln!(s, "diag v1\ncomponents {}", d.components().len()).unwrap();
    for c in d.components() {
        let arcs: Vec<&str> = c.arcs.iter().map(|&a| d.arc_name(a)).collect();
        writeln!(s, "component {} color {} arcs {}", c.id, c.color + 1, arcs.join(",")).unwrap();
    }
    writeln!(s, "crossings {}", d.crossings().len()).unwrap();
    for c in d.crossings() {
        writeln!(
            s,
            "x {} over={} in={} out={}",
            c.sign.symbol(),
            d.arc_name(c.over),
            d.arc_name(c.under_in),
            d.arc_name(c.under_out)
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "diag v1\ncomponents 2\ncomponent 1 color 1 arcs a\ncomponent 2 color 2 arcs b\ncrossings 2\nx + over=b in=a out=a\nx + over=a in=b out=b\n";

    #[test]
    fn round_trip() {
        let d = parse_diagram(HOPF).unwrap();
        assert_eq!(serialize_diagram(&d), HOPF);
    }

    #[test]
    fn parse_errors() {
        let e = parse_diagram(&HOPF.replace("over=b in=a", "over=q in=a")).unwrap_err();
        assert_eq!(e, DiagramError::Parse { line: 6, msg: "unknown arc `q`".into() });
        let e = parse_diagram(&HOPF.replace("x +", "x *")).unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 6, .. }));
        let e = parse_diagram(&HOPF.replace("crossings 2", "crossings 3")).unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 0, .. }));
        let e = parse_diagram(&HOPF.replace("color 2", "color 0")).unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 4, .. }));
    }
}
