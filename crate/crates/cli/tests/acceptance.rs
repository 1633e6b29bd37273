//! Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use common::grid;
use itertools::Itertools;
use mquandle::braid::ColoredBraid;
use mquandle::catalog::five_element_three_quandle;
use mquandle::diagram::{from_pd_code, parse_diagram};
use mquandle::fuzz::{markov_fuzz, random_closable_braid, reid_fuzz};
use mquandle::invariants::{count_colorings_braid, count_colorings_diagram, disjoint_union_check};
use mquandle::quandle::{parse_quandle_file, validate, MultiQuandle, OperationTable};
use mquandle::search::{assemble_multi_quandles, enumerate_quandles, Mode};
use mquandle::torus::{solve_toric, ToricAffineSystem, ToricSolution};
use mquandle::ClosableBraid;
use mquandle_cli::load_pd_fixture;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = mquandle_cli::run(std::iter::once("mq").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn closable(s: &str) -> ClosableBraid {
    s.parse::<ColoredBraid>().unwrap().check_closable().unwrap()
}

fn criterion_1() -> Outcome {
    let path = fixtures().join("mx.mq");
    let path = path.to_str().unwrap();
    let (code, out) = cli(&["validate", path]);
    ensure(code == 0 && out == "valid 3-quandle, order 5\n", || format!("validate said `{}` (exit {code})", out.trim()))?;
    let printed = parse_quandle_file(&std::fs::read_to_string(path).unwrap()).unwrap().supplied_inverses;
    let (code, out) = cli(&["invert", path]);
    ensure(code == 0, || format!("invert exited {code}"))?;
    let inverted = parse_quandle_file(&out).map_err(|e| e.to_string())?.tables;
    let mut entries = 0;
    for (i, table) in &printed {
        for x in 0..5 {
            for y in 0..5 {
                ensure(table.get(x, y) == inverted[*i].get(x, y), || {
                    format!("block {} entry ({}, {}) differs", i + 1, x + 1, y + 1)
                })?;
                entries += 1;
            }
        }
    }
    ensure(entries == 75, || format!("{entries} printed entries"))?;
    Ok("valid 3-quandle of order 5; 75 inverse entries match".into())
}

fn criterion_2() -> Outcome {
    let mq = five_element_three_quandle();
    let a = count_colorings_braid(&closable("strands=3 word=-1,-1,2,2 colors=1,2,3"), &mq).unwrap().count();
    let b = count_colorings_braid(&closable("strands=3 word=-1,-1,2,2 colors=1,3,2"), &mq).unwrap().count();
    let d = parse_diagram(&std::fs::read_to_string(fixtures().join("borromean.diag")).unwrap()).unwrap();
    let c = count_colorings_diagram(&d, &mq).unwrap().count();
    ensure((a, b, c) == (23, 29, 71), || format!("got {a}, {b}, {c}"))?;
    Ok("A = 23, B = 29, Borromean = 71".into())
}

fn multiset(file: &str, mq: &MultiQuandle) -> Vec<u64> {
    let f = load_pd_fixture(&fixtures().join(file)).unwrap_or_else(|_| panic!("cannot load {file}"));
    let mut v: Vec<u64> = f
        .colorings
        .iter()
        .map(|c| count_colorings_diagram(&from_pd_code(&f.code, c).unwrap(), mq).unwrap().count())
        .collect();
    v.sort_unstable();
    v
}

fn criterion_3() -> Outcome {
    let mq = five_element_three_quandle();
    let sorted = |mut v: Vec<u64>| {
        v.sort_unstable();
        v
    };
    let l9 = multiset("l9n27.pd", &mq);
    let want9 = sorted(vec![77, 77, 95, 95, 125, 125]);
    ensure(l9 == want9, || format!("L9n27 gave {l9:?}"))?;
    let l10 = multiset("l10n107.pd", &mq);
    let want10 = sorted(vec![307, 433, 337, 265, 481, 337, 307, 181, 283, 337, 433, 307, 283, 181, 307, 337, 481, 265]);
    ensure(l10 == want10, || format!("L10n107 gave {l10:?}"))?;
    Ok("L9n27 (6 colorings) and L10n107 (18 colorings) multisets match".into())
}

/// Every closable coloring of every word with at most `max_len` letters on
/// `strands` strands.
fn all_closable(strands: usize, max_len: usize, k: usize) -> Vec<ClosableBraid> {
    let letters: Vec<i32> = (1..strands as i32).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    for len in 0..=max_len {
        let words: Vec<Vec<i32>> =
            if len == 0 { vec![vec![]] } else { (0..len).map(|_| letters.iter().copied()).multi_cartesian_product().collect() };
        for word in words {
            if strands == 1 && !word.is_empty() {
                continue;
            }
            let plain = ColoredBraid::new(strands, word.clone(), vec![0; strands]).unwrap();
            let cycles = plain.permutation_info().cycles;
            for pick in (0..cycles.len()).map(|_| 0..k).multi_cartesian_product() {
                let mut colors = vec![0; strands];
                for (cycle, c) in cycles.iter().zip(&pick) {
                    for &p in cycle {
                        colors[p] = *c;
                    }
                }
                out.push(ColoredBraid::new(strands, word.clone(), colors).unwrap().check_closable().unwrap());
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mq = five_element_three_quandle();
    let braids: Vec<ClosableBraid> = (1..=3).flat_map(|n| all_closable(n, 4, 3)).collect();
    for b in &braids {
        let d = b.closure_diagram();
        let by_braid = count_colorings_braid(b, &mq).unwrap().count();
        let by_csp = count_colorings_diagram(&d, &mq).unwrap().count();
        let brute = common::brute_force_count(&d, &mq);
        ensure(by_braid == brute && by_csp == brute, || {
            format!("{b}: braid {by_braid}, diagram {by_csp}, brute force {brute}")
        })?;
    }
    Ok(format!("{} closable braids agree across three engines", braids.len()))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut quandles = vec![("M_X".to_string(), five_element_three_quandle())];
    for _ in 0..5 {
        let k = rng.gen_range(1..=3);
        let q = common::random_alexander(&mut rng, k);
        let ts: Vec<i64> = (0..k).map(|i| q.op(i, 1, 0) as i64).collect();
        quandles.push((format!("Alexander(Z/{}, {ts:?})", q.order()), q));
    }
    let mut total = 0;
    for (i, (name, q)) in quandles.iter().enumerate() {
        let seed = 100 + i as u64;
        let mut kinds = BTreeSet::new();
        for report in [markov_fuzz(q, 500, seed), reid_fuzz(q, 500, seed)] {
            ensure(report.passed(), || format!("{name}: {}", report.failures[0]))?;
            total += report.total();
            kinds.extend(report.checks.keys().copied());
        }
        for kind in ["conjugate", "stabilize+", "stabilize-", "R1+", "R1-", "R2", "R3"] {
            ensure(kinds.contains(kind), || format!("{name}: no {kind} move was exercised"))?;
        }
    }
    Ok(format!("{total} moves over M_X and 5 Alexander multi-quandles preserve counts"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mx = five_element_three_quandle();
    for i in 0..100 {
        let k = rng.gen_range(1..=3);
        let q = if i % 2 == 0 { mx.clone() } else { common::random_alexander(&mut rng, k) };
        let k = q.k();
        let b1 = random_closable_braid(&mut rng, 3, 5, k);
        let b2 = random_closable_braid(&mut rng, 3, 5, k);
        let r = disjoint_union_check(&b1, &b2, &q).unwrap();
        ensure(r.equal, || format!("{b1} and {b2}: {} vs {}", r.lhs, r.rhs))?;
    }
    let r = disjoint_union_check(&closable("strands=3 word=-1,-1,2,2 colors=1,2,3"), &closable("strands=1 word= colors=1"), &mx)
        .unwrap();
    ensure((r.lhs, r.rhs) == (115, 115), || format!("pinned case gave {} vs {}", r.lhs, r.rhs))?;
    Ok("100 random pairs multiply; 23 × 5 = 115".into())
}

fn criterion_7() -> Outcome {
    let read = |f: &str| -> ToricAffineSystem { std::fs::read_to_string(fixtures().join(f)).unwrap().parse().unwrap() };
    let l1 = solve_toric(&read("l1.toric")).unwrap();
    let l2 = solve_toric(&read("l2.toric")).unwrap();
    ensure(l1 == ToricSolution::Nonempty { dimension: 2, components: 2 }, || format!("L1 gave {l1}"))?;
    ensure(l2 == ToricSolution::Nonempty { dimension: 1, components: 4 }, || format!("L2 gave {l2}"))?;
    let mut systems = grid::exhaustive_systems();
    let exhaustive = systems.len();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while systems.len() < exhaustive + 300 {
        let rows = (0..rng.gen_range(2..=3))
            .map(|_| {
                let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
                grid::row(&c, grid::RHS[rng.gen_range(0..grid::RHS.len())])
            })
            .collect();
        let sys = ToricAffineSystem::new(3, rows).unwrap();
        if grid::grid_size(&sys) <= 48 {
            systems.push(sys);
        }
    }
    for sys in &systems {
        let got = solve_toric(sys).map_err(|e| e.to_string())?;
        let want = grid::grid_solution(sys);
        ensure(got == want, || format!("{sys}solver {got}, grid {want}"))?;
    }
    Ok(format!(
        "L1 dim=2 components=2, L2 dim=1 components=4; {exhaustive} exhaustive and 300 random systems agree with the grid oracle"
    ))
}

fn brute_force_quandles(n: usize) -> Vec<OperationTable> {
    let mut v: Vec<OperationTable> = (0..n * n)
        .map(|_| 0..n)
        .multi_cartesian_product()
        .filter_map(|e| OperationTable::from_fn(n, |x, y| e[x * n + y]).ok())
        .filter(|t| validate(std::slice::from_ref(t)).unwrap().is_valid())
        .collect();
    v.sort_by(|a, b| a.entries().cmp(b.entries()));
    v
}

fn criterion_8() -> Outcome {
    let mut assembled = 0;
    for n in 1..=3 {
        let found = enumerate_quandles(n, Mode::AllLabeled);
        let brute = brute_force_quandles(n);
        ensure(found == brute, || format!("order {n}: {} enumerated, {} by brute force", found.len(), brute.len()))?;
        for k in 1..=3 {
            for mq in assemble_multi_quandles(&found, k) {
                ensure(validate(mq.tables()).unwrap().is_valid(), || format!("order {n}, k {k}: invalid result"))?;
                assembled += 1;
            }
        }
    }
    Ok(format!("orders 1..3 match brute force; {assembled} assembled multi-quandles validate"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("M_X validates and inverts to the printed table", criterion_1),
        ("headline coloring counts", criterion_2),
        ("link table multisets", criterion_3),
        ("engine agreement, strands <= 3, length <= 4", criterion_4),
        ("Markov and Reidemeister invariance", criterion_5),
        ("disjoint-union multiplicativity", criterion_6),
        ("toric solutions and grid oracle", criterion_7),
        ("search soundness", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
