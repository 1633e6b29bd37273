//! Fixture regression: recompute every expected value listed in a manifest.

use std::fmt::Write as _;
use std::path::Path;

use mquandle::braid::ColoredBraid;
use mquandle::diagram::{from_pd_code, parse_diagram};
use mquandle::invariants::{count_colorings_braid, count_colorings_diagram};
use mquandle::quandle::MultiQuandle;
use mquandle::torus::{solve_toric, ToricAffineSystem};

use crate::{load_quandle, parse_colors, read, Failure, Outcome};

const MANIFEST: &str = "regress.txt";

/// A PD code with the colorings to evaluate it under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdFixture {
    pub code: String,
    /// 1-based colors, one list per coloring.
    pub colorings: Vec<Vec<usize>>,
}

/// Reads a `.pd` fixture: `code <PD>` then `colors <c1,...>` lines.
pub fn load_pd_fixture(path: &Path) -> Result<PdFixture, Failure> {
    let text = read(path)?;
    let mut code = None;
    let mut colorings = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(c) = line.strip_prefix("code ") {
            code = Some(c.trim().to_string());
        } else if let Some(c) = line.strip_prefix("colors ") {
            colorings.push(parse_colors(c)?);
        } else {
            return Err(Failure::Usage(format!("{}:{}: unexpected line `{line}`", path.display(), i + 1)));
        }
    }
    let code = code.ok_or_else(|| Failure::Usage(format!("{}: missing `code` line", path.display())))?;
    Ok(PdFixture { code, colorings })
}

fn parse_count(s: &str) -> Result<u64, Failure> {
    s.parse().map_err(|_| Failure::Usage(format!("bad expected count `{s}`")))
}

/// Sorted comparison; on mismatch names the first divergent value.
fn compare_multisets(mut expected: Vec<u64>, mut computed: Vec<u64>) -> Result<(), String> {
    expected.sort_unstable();
    computed.sort_unstable();
    if expected == computed {
        return Ok(());
    }
    let at = expected.iter().zip(&computed).position(|(a, b)| a != b).unwrap_or(expected.len().min(computed.len()));
    let show = |v: Option<&u64>| v.map_or("nothing".to_string(), u64::to_string);
    Err(format!(
        "expected {expected:?}, computed {computed:?}; first divergent count: expected {}, computed {}",
        show(expected.get(at)),
        show(computed.get(at))
    ))
}

enum Check {
    Pass(String),
    Fail(String),
}

fn need(mq: &Option<MultiQuandle>) -> Result<&MultiQuandle, Check> {
    mq.as_ref().ok_or_else(|| Check::Fail("no valid quandle loaded".into()))
}

fn run_line(dir: &Path, kw: &str, rest: &str, mq: &mut Option<MultiQuandle>) -> Result<Check, Failure> {
    let fields: Vec<&str> = rest.split_whitespace().collect();
    Ok(match (kw, fields.as_slice()) {
        ("quandle", [file, k, order]) => {
            let (k, order) = (parse_count(k)?, parse_count(order)?);
            match load_quandle(&dir.join(file)) {
                Ok(q) if (q.k() as u64, q.order() as u64) == (k, order) => {
                    let text = format!("valid {}-quandle, order {}", q.k(), q.order());
                    *mq = Some(q);
                    Check::Pass(text)
                }
                Ok(q) => {
                    *mq = None;
                    Check::Fail(format!("expected a {k}-quandle of order {order}, found {}-quandle of order {}", q.k(), q.order()))
                }
                Err(Failure::Math(m)) => {
                    *mq = None;
                    Check::Fail(m)
                }
                Err(usage) => return Err(usage),
            }
        }
        ("braid", [want, ..]) => {
            let want = parse_count(want)?;
            let spec = rest.trim_start().trim_start_matches(fields[0]).trim();
            let b = spec.parse::<ColoredBraid>()?.check_closable()?;
            let mq = match need(mq) {
                Ok(q) => q,
                Err(c) => return Ok(c),
            };
            let got = count_colorings_braid(&b, mq)?.count();
            verdict(got == want, format!("count {got}"), format!("expected {want}, computed {got}"))
        }
        ("diagram", [want, file]) => {
            let want = parse_count(want)?;
            let d = parse_diagram(&read(&dir.join(file))?)?;
            let mq = match need(mq) {
                Ok(q) => q,
                Err(c) => return Ok(c),
            };
            let got = count_colorings_diagram(&d, mq)?.count();
            verdict(got == want, format!("count {got}"), format!("expected {want}, computed {got}"))
        }
        ("pd", [file, list]) => {
            let expected = list.split(',').map(parse_count).collect::<Result<Vec<_>, _>>()?;
            let fixture = load_pd_fixture(&dir.join(file))?;
            let mq = match need(mq) {
                Ok(q) => q,
                Err(c) => return Ok(c),
            };
            let mut computed = Vec::new();
            for colors in &fixture.colorings {
                let d = from_pd_code(&fixture.code, colors)?;
                computed.push(count_colorings_diagram(&d, mq)?.count());
            }
            match compare_multisets(expected, computed.clone()) {
                Ok(()) => {
                    let mut sorted = computed;
                    sorted.sort_unstable();
                    Check::Pass(format!("multiset {sorted:?}"))
                }
                Err(msg) => Check::Fail(msg),
            }
        }
        ("toric", [file, ..]) => {
            let want = rest.trim_start().trim_start_matches(fields[0]).trim();
            let sys: ToricAffineSystem = read(&dir.join(file))?
                .parse()
                .map_err(|e| Failure::Usage(format!("{file}: {e}")))?;
            let got = solve_toric(&sys).map_err(|e| Failure::Math(e.to_string()))?.to_string();
            verdict(got == want, got.clone(), format!("expected `{want}`, computed `{got}`"))
        }
        _ => return Err(Failure::Usage(format!("{MANIFEST}: cannot parse `{kw} {rest}`"))),
    })
}

fn verdict(ok: bool, pass: String, fail: String) -> Check {
    if ok {
        Check::Pass(pass)
    } else {
        Check::Fail(fail)
    }
}

/// Runs every check in `<dir>/regress.txt`, one pass/FAIL line each.
pub fn regress(dir: &Path) -> Result<Outcome, Failure> {
    let manifest_path = dir.join(MANIFEST);
    if !manifest_path.is_file() {
        return Err(Failure::Usage(format!("{} has no {MANIFEST}", dir.display())));
    }
    let manifest = read(&manifest_path)?;
    let mut mq = None;
    let mut text = String::new();
    let mut failed = 0;
    let mut checks = 0;
    for line in manifest.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (kw, rest) = line.split_once(' ').unwrap_or((line, ""));
        let label = match kw {
            "braid" => rest.split_once(' ').map_or(rest, |(_, spec)| spec).to_string(),
            "diagram" => rest.split_whitespace().last().unwrap_or("").to_string(),
            _ => rest.split_whitespace().next().unwrap_or("").to_string(),
        };
        checks += 1;
        match run_line(dir, kw, rest, &mut mq)? {
            Check::Pass(detail) => writeln!(text, "pass {kw} {label}: {detail}").unwrap(),
            Check::Fail(detail) => {
                failed += 1;
                writeln!(text, "FAIL {kw} {label}: {detail}").unwrap();
            }
        }
    }
    if checks == 0 {
        return Err(Failure::Usage(format!("{} lists no fixtures", manifest_path.display())));
    }
    writeln!(text, "{} of {checks} fixtures pass", checks - failed).unwrap();
    Ok(Outcome { text, code: if failed == 0 { 0 } else { 1 } })
}
