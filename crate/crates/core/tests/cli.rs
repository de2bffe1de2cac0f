use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const QT_PAIR: &str = "base = \"Q[t]\"\nfamily = \"P1\"\nsections = [(2, \"x0^2 - t*x1^2\"), (1, \"x0 - x1\")]\n";

fn deligne(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_deligne"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

#[test]
fn pair_from_stdin() {
    let out = deligne(&["pair", "-"], Some(QT_PAIR));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["pairing_section"], "1 - t");
    assert_eq!(v["normalization"], "sylvester");
    assert_eq!(v["iterated"]["pairing_section"], "1 - t");
    assert_eq!(v["inputs"][0]["form"], "x0^2 - x1^2*t");
    assert_eq!(v["regularity"]["bad_fibers"][0], "t = 1");
}

#[test]
fn intersect_twists() {
    let out = deligne(&["intersect", "-"], Some("family = \"P2\"\ntwists = [2, 3]\n"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["delta"], 6);
}

#[test]
fn norm_on_the_cone() {
    let task = "base = \"cone\"\nfamily = \"finite\"\nfiber = \"x^2 - a\"\nelement = [0, 1]\n";
    let out = deligne(&["norm", "-"], Some(task));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["norm"], "-a");
}

#[test]
fn verify_suite_with_flags() {
    let out = deligne(&["verify", "multiadditivity", "--seed", "7", "--count", "20"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["instances"], 20);
    assert_eq!(v["seed"], 7);
}

#[test]
fn input_errors_exit_2_with_json_on_stderr() {
    let out = deligne(&["pair", "-"], Some("sections = [(2, \"x0 - x1\")]\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(json(&out.stderr)["error"], "HomogeneityError");

    let out = deligne(&["pair", "-"], Some("family = \"P1\"\nsections = [(2, \"x0^^2\"), (1, \"x1\")]\n"));
    assert_eq!(out.status.code(), Some(2));
    let e = json(&out.stderr);
    assert_eq!(e["error"], "ParseError");
    assert_eq!(e["line"], 2);

    let out = deligne(&["norm", "/nonexistent/task"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "InvalidInput");
}

#[test]
fn failed_verification_exits_1() {
    let task = "base = \"C\"\nfamily = \"P1\"\nsections = [(1, \"x0 - 2*x1\"), (2, \"x0^2 + x1^2\")]\nnodes_theta = 16\nnodes_phi = 16\ntolerance = 1e-15\n";
    let out = deligne(&["verify", "metric_d1", "-"], Some(task));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stdout)["verdict"], "fail");
}

#[test]
fn task_checks() {
    let sym = format!("{QT_PAIR}permutation = [1, 0]\n");
    let out = deligne(&["verify", "symmetry", "-"], Some(&sym));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // t0 = 1 is a root of the pairing section: flagged, not failed
    let bc = format!("{QT_PAIR}t0 = 1\n");
    let out = deligne(&["verify", "base_change", "-"], Some(&bc));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["verdict"], "degenerate");

    let tower = "base = \"Q\"\nfamily = \"P1\"\nsections = [(2, \"x0^2 - 3*x1^2\")]\ninner_sections = [(1, 1, \"x0*y0 + x1*y1\"), (0, 2, \"y0^2 - 2*y1^2\")]\n";
    let out = deligne(&["verify", "projection", "-"], Some(tower));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn metric_of_coordinate_sections() {
    let task = "base = \"C\"\nfamily = \"P1\"\nsections = [(1, \"x0\"), (1, \"x1\")]\nnodes_theta = 256\nnodes_phi = 256\n";
    let out = deligne(&["metric", "-"], Some(task));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout)["log_norm"].as_f64().unwrap();
    assert!((v - 0.5).abs() < 5e-3, "{v}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = deligne(&["verify", "route_equivalence", "--seed", "3", "--count", "10"], None);
    let b = deligne(&["verify", "route_equivalence", "--seed", "3", "--count", "10"], None);
    assert_eq!(a.stdout, b.stdout);
    let c = deligne(&["verify", "route_equivalence", "--seed", "4", "--count", "10"], None);
    assert_ne!(a.stdout, c.stdout);
}
