//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use deligne::arith::{int, unit_ratio, Matrix, Ring, UnitRatio};
use deligne::base::{BaseRing, PolyRing, QuadricCone};
use deligne::family::{BundleSection, ProjectiveFamily, SectionSequence};
use deligne::metric::{self, Grid, HermitianSection};
use deligne::norm::norm_element;
use deligne::pairing::{pairing_iterated, pairing_section, verify_base_change, Verdict};
use deligne::suites::{self, SuiteOptions, SuiteReport};
use deligne::task::DEFAULT_SEED;
use deligne::Result;

const MULTIPLICATIVITY_LIMIT: Duration = Duration::from_secs(5);
const FUNCTORIAL_LIMIT: Duration = Duration::from_secs(30);
const METRIC_D1_LIMIT: Duration = Duration::from_secs(10);
const METRIC_D0_TOL: f64 = 1e-10;
const METRIC_D1_TOL: f64 = 1e-3;
const COORDINATE_PAIR_VALUE: f64 = 0.5;
const COORDINATE_PAIR_TOL: f64 = 5e-3;

struct Line {
    passed: bool,
    detail: String,
}

fn suite(name: &str) -> (SuiteReport, Duration) {
    let opts = SuiteOptions {
        seed: DEFAULT_SEED,
        ..SuiteOptions::default()
    };
    let start = Instant::now();
    let r = suites::run_named(name, &opts).expect("known suite");
    (r, start.elapsed())
}

fn summary(r: &SuiteReport) -> String {
    let mut s = format!("{}: {}/{} passed", r.suite, r.passed + r.degenerate, r.instances);
    if r.degenerate > 0 {
        s.push_str(&format!(" ({} degenerate, flagged)", r.degenerate));
    }
    if r.failed > 0 {
        s.push_str(&format!(", {} failed: {}", r.failed, serde_json::to_string(&r.failures).unwrap_or_default()));
    }
    s
}

fn qt_example() -> Result<SectionSequence<PolyRing>> {
    let fam = ProjectiveFamily::new(PolyRing, 1)?;
    SectionSequence::new(
        &fam,
        vec![
            BundleSection::parse(&fam, 2, "x0^2 - t*x1^2")?,
            BundleSection::parse(&fam, 1, "x0 - x1")?,
        ],
    )
}

fn criterion_1() -> Result<Line> {
    let (r, t) = suite("multiplicativity");
    Ok(Line {
        passed: r.passed() && r.instances == 200 && t < MULTIPLICATIVITY_LIMIT,
        detail: format!("{}, {:.2} s (limit {} s)", summary(&r), t.as_secs_f64(), MULTIPLICATIVITY_LIMIT.as_secs()),
    })
}

fn criterion_2() -> Result<Line> {
    let (r, _) = suite("scalar_law");
    let cone = QuadricCone;
    let alg = suites::cone_algebra()?;
    let x = alg.element(vec![cone.from_rational(int(0)), cone.from_rational(int(1))])?;
    let nx = norm_element(&x)?;
    Ok(Line {
        passed: r.passed() && r.instances == 50 && nx == cone.a().neg(),
        detail: format!("{}; cone Nm(x) = {}", summary(&r), cone.format(&nx)),
    })
}

fn criterion_3() -> Result<Line> {
    let (r, _) = suite("route_equivalence");
    let seq = qt_example()?;
    let s = PolyRing.format(&pairing_section(&seq)?.value);
    let it = PolyRing.format(&pairing_iterated(&seq)?.value);
    Ok(Line {
        passed: r.passed() && r.instances == 100 && s == "1 - t" && it == "1 - t",
        detail: format!("{}; <x0^2 - t*x1^2, x0 - x1> = {s} (sylvester), {it} (iterated)", summary(&r)),
    })
}

fn criterion_4() -> Result<Line> {
    let (r, _) = suite("smith");
    let m = |rows: [[i64; 3]; 3]| Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
    let a = m([[2, 0, 0], [0, 3, 0], [0, 0, 1]]);
    let b = m([[6, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let c = m([[2, 0, 0], [0, 2, 0], [0, 0, 1]]);
    let equal = unit_ratio(&a, &b)?;
    let mismatched = unit_ratio(&a, &c)?;
    let ok = matches!(&equal, UnitRatio::Unit(u) if *u == BigInt::from(1)) && mismatched == UnitRatio::Incomparable;
    Ok(Line {
        passed: r.passed() && r.instances == 50 && ok,
        detail: format!("{}; diag(2,3,1) vs diag(6,1,1) -> {equal:?}, vs diag(2,2,1) -> {mismatched:?}", summary(&r)),
    })
}

fn criterion_5() -> Result<Line> {
    let (r, t) = suite("functorial");
    let expected = [
        ("multiadditivity", 20),
        ("symmetry", 20),
        ("base_change", 50),
        ("pullback", 20),
        ("restriction", 20),
        ("isomorphism", 20),
    ];
    let counts_ok = expected
        .iter()
        .all(|(name, n)| r.parts.iter().any(|p| p.suite == *name && p.instances == *n));
    let seq = qt_example()?;
    let degenerate = verify_base_change(&seq, &int(1))?;
    let generic = verify_base_change(&seq, &int(3))?;
    let flags_ok = degenerate.verdict == Verdict::Degenerate && generic.verdict == Verdict::Pass;
    let parts: Vec<String> = r.parts.iter().map(summary).collect();
    Ok(Line {
        passed: r.passed() && counts_ok && flags_ok && t < FUNCTORIAL_LIMIT,
        detail: format!(
            "{}; t0 = 1 -> {:?}, t0 = 3 -> {:?}; {:.2} s (limit {} s)",
            parts.join("; "),
            degenerate.verdict,
            generic.verdict,
            t.as_secs_f64(),
            FUNCTORIAL_LIMIT.as_secs()
        ),
    })
}

fn criterion_6() -> Result<Line> {
    let (r, _) = suite("projection");
    Ok(Line {
        passed: r.passed() && r.instances == 10,
        detail: summary(&r),
    })
}

fn criterion_7() -> Result<Line> {
    let (r, _) = suite("metric_d0");
    Ok(Line {
        passed: r.passed() && r.instances == 50 && r.tolerance == Some(METRIC_D0_TOL),
        detail: format!("{} within {:e}", summary(&r), METRIC_D0_TOL),
    })
}

fn criterion_8() -> Result<Line> {
    let x0 = HermitianSection::from_complex(1, vec![1.0.into(), 0.0.into()])?;
    let x1 = HermitianSection::from_complex(1, vec![0.0.into(), 1.0.into()])?;
    let start = Instant::now();
    let v = metric::metric_d1(&x0, &x1, Grid::default())?;
    let t = start.elapsed();
    // closed form of the Fubini-Study average of log ||x0||
    let oracle = -metric::mean_log_norm_exact(&x0)?;
    let value_ok = (v.value.log_norm - COORDINATE_PAIR_VALUE).abs() < COORDINATE_PAIR_TOL
        && (oracle - COORDINATE_PAIR_VALUE).abs() < 1e-12;
    let (r, _) = suite("metric_d1");
    Ok(Line {
        passed: value_ok && t < METRIC_D1_LIMIT && r.passed() && r.instances == 20 && r.tolerance == Some(METRIC_D1_TOL),
        detail: format!(
            "metric_d1(x0, x1) = {:.6} (closed form {oracle}, tol {COORDINATE_PAIR_TOL:e}), {:.3} s (limit {} s); {} (order, isometry, shift within {METRIC_D1_TOL:e})",
            v.value.log_norm,
            t.as_secs_f64(),
            METRIC_D1_LIMIT.as_secs(),
            summary(&r)
        ),
    })
}

fn run_cli(args: &[&str], stdin: &str) -> Vec<u8> {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_deligne"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().expect("stdin").write_all(stdin.as_bytes()).expect("write");
    let out = child.wait_with_output().expect("binary exits");
    let mut bytes = out.stdout;
    bytes.extend(format!("exit {:?}", out.status.code()).bytes());
    bytes
}

fn criterion_9() -> Result<Line> {
    let pair = "base = \"Q[t]\"\nfamily = \"P1\"\nsections = [(2, \"x0^2 - t*x1^2\"), (1, \"x0 - x1\")]\n";
    let metric = "base = \"C\"\nfamily = \"P1\"\nsections = [(2, \"x0^2 + i*x1^2\"), (1, \"x0 - 3*x1\")]\n";
    let runs: [(&[&str], &str); 4] = [
        (&["verify", "all", "--seed", "11", "--count", "4"], ""),
        (&["verify", "functorial", "--seed", "12"], ""),
        (&["pair", "-"], pair),
        (&["metric", "-"], metric),
    ];
    let mut identical = 0;
    for (args, stdin) in runs {
        if run_cli(args, stdin) == run_cli(args, stdin) {
            identical += 1;
        }
    }
    Ok(Line {
        passed: identical == runs.len(),
        detail: format!("{identical}/{} CLI invocations byte-identical across two runs", runs.len()),
    })
}

fn main() {
    let criteria: [(&str, fn() -> Result<Line>); 9] = [
        ("norm multiplicativity", criterion_1),
        ("scalar law", criterion_2),
        ("route equivalence", criterion_3),
        ("smith unit comparison", criterion_4),
        ("functorial suite", criterion_5),
        ("projection formula", criterion_6),
        ("metric d=0", criterion_7),
        ("metric d=1", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = f().unwrap_or_else(|e| Line {
            passed: false,
            detail: format!("error: {e}"),
        });
        if !line.passed {
            failed += 1;
        }
        println!("{} {} {name}: {}", if line.passed { "PASS" } else { "FAIL" }, i + 1, line.detail);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
