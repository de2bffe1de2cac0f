//! Subcommand dispatch for the `deligne` binary and the C interface.
//!
//! Every subcommand maps a task file to one JSON document. Keys are sorted,
//! so equal inputs and seeds give byte-identical output.

use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::text::parse_poly;
use crate::arith::{Gaussian, MPoly, Rational, Ring, UPoly};
use crate::base::{BaseRing, Integers, PidBase, PolyRing, QuadricCone, Rationals};
use crate::error::{Error, Result};
use crate::family::{
    certify_regular, finite_degree, intersection_number, BundleSection, ProjectiveFamily, Regularity,
    SectionSequence,
};
use crate::metric::{self, Fiber, Grid, HermitianSection, MetricCheck};
use crate::norm::{norm_element, FiniteAlgebra};
use crate::pairing::{
    apply_isomorphism, pairing_finite, pairing_iterated, pairing_section, verify_base_change,
    verify_multiadditivity, verify_projection_formula, verify_pullback_finite, verify_pullback_formula,
    verify_restriction_to_divisor, verify_routes, verify_symmetry, CheckReport, ScalarIsomorphism, Tower,
    Verdict,
};
use crate::suites::{self, SuiteOptions};
use crate::task::{parse_gaussian, ScalarSyntax, TaskFile, DEFAULT_SEED, I_INDEX, TASK_VARS};

/// Exit status for a verification that ran and failed.
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
/// Exit status for unusable input.
pub const EXIT_INPUT_ERROR: i32 = 2;

const FIBER_VARS: [&str; 6] = ["x", "t", "a", "b", "c", "i"];
const DEFAULT_LAMBDA: &str = "2";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Norm,
    Pair,
    Intersect,
    Metric,
    Verify(String),
}

impl Subcommand {
    pub fn name(&self) -> &str {
        match self {
            Subcommand::Norm => "norm",
            Subcommand::Pair => "pair",
            Subcommand::Intersect => "intersect",
            Subcommand::Metric => "metric",
            Subcommand::Verify(_) => "verify",
        }
    }

    /// `verify` takes the suite name as a second word.
    pub fn parse(name: &str, suite: Option<&str>) -> Result<Self> {
        let cmd = match name {
            "norm" => Subcommand::Norm,
            "pair" => Subcommand::Pair,
            "intersect" => Subcommand::Intersect,
            "metric" => Subcommand::Metric,
            "verify" => {
                let suite = suite.ok_or_else(|| Error::InvalidInput("verify needs a suite name".into()))?;
                if !suites::SUITES.contains(&suite) {
                    return Err(Error::InvalidInput(format!(
                        "unknown suite {suite:?}; expected one of {:?}",
                        suites::SUITES
                    )));
                }
                return Ok(Subcommand::Verify(suite.to_string()));
            }
            other => return Err(Error::InvalidInput(format!("unknown subcommand {other:?}"))),
        };
        if suite.is_some() {
            return Err(Error::InvalidInput(format!("{name} takes no suite name")));
        }
        Ok(cmd)
    }
}

impl FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let name = words.next().unwrap_or("");
        let suite = words.next();
        if words.next().is_some() {
            return Err(Error::InvalidInput(format!("unexpected words in {s:?}")));
        }
        Subcommand::parse(name, suite)
    }
}

/// Command-line overrides; they win over the task file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub document: Value,
    pub exit_code: i32,
}

impl Output {
    fn ok(document: Value) -> Self {
        Output { document, exit_code: 0 }
    }

    fn checked(document: Value, passed: bool) -> Self {
        Output {
            document,
            exit_code: if passed { 0 } else { EXIT_VERIFICATION_FAILED },
        }
    }

    pub fn to_json(&self) -> String {
        render(&self.document)
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

/// The machine-readable object written to stderr on input errors.
pub fn error_document(e: &Error) -> Value {
    let mut v = json!({ "error": e.kind(), "message": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        v["line"] = json!(line);
        v["column"] = json!(column);
    }
    v
}

/// Runs one subcommand. `Err` means an input error (exit code 2).
pub fn run(cmd: &Subcommand, task: Option<&TaskFile>, opts: &RunOptions) -> Result<Output> {
    let empty = TaskFile::default();
    let t = task.unwrap_or(&empty);
    let mut out = match cmd {
        Subcommand::Verify(suite) if task.is_none() || !has_instance(t) => verify_suite(suite, t, opts)?,
        _ if task.is_none() => {
            return Err(Error::InvalidInput(format!("{} needs a task file", cmd.name())));
        }
        Subcommand::Norm => norm(t)?,
        Subcommand::Pair => pair(t)?,
        Subcommand::Intersect => intersect(t)?,
        Subcommand::Metric => metric_cmd(t)?,
        Subcommand::Verify(suite) => verify_task(suite, t)?,
    };
    if let Value::Object(m) = &mut out.document {
        m.insert("command".into(), json!(cmd.name()));
    }
    Ok(out)
}

/// Parses the task text (unless `None`) and runs; the returned triple is
/// `(stdout, stderr, exit code)`.
pub fn execute(cmd: &Subcommand, task_text: Option<&str>, opts: &RunOptions) -> (String, String, i32) {
    let result = task_text
        .map(crate::task::parse_task)
        .transpose()
        .and_then(|task| run(cmd, task.as_ref(), opts));
    match result {
        Ok(out) => (out.to_json(), String::new(), out.exit_code),
        Err(e) => (String::new(), render(&error_document(&e)), EXIT_INPUT_ERROR),
    }
}

fn has_instance(t: &TaskFile) -> bool {
    !t.sections.is_empty() || t.fiber.is_some() || t.structure_constants.is_some()
}

fn base_name(t: &TaskFile) -> &str {
    t.base.as_deref().unwrap_or("Q")
}

fn family_name(t: &TaskFile) -> Result<&str> {
    match t.family.as_deref() {
        Some(f) => Ok(f),
        None if t.fiber.is_some() || t.structure_constants.is_some() => Ok("finite"),
        None => Err(Error::InvalidInput("task has no family".into())),
    }
}

fn family_dim(name: &str) -> Option<usize> {
    match name {
        "P0" => Some(0),
        "P1" => Some(1),
        "P2" => Some(2),
        "P3" => Some(3),
        _ => None,
    }
}

fn section_inputs(t: &TaskFile) -> Value {
    Value::Array(
        t.sections
            .iter()
            .map(|(k, s)| json!({ "twist": k, "form": s }))
            .collect(),
    )
}

fn header(t: &TaskFile) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("base".into(), json!(base_name(t)));
    if let Ok(f) = family_name(t) {
        m.insert("family".into(), json!(f));
    }
    if !t.sections.is_empty() {
        m.insert("inputs".into(), section_inputs(t));
    }
    m
}

fn merge(mut m: Map<String, Value>, extra: impl Serialize) -> Result<Value> {
    match serde_json::to_value(extra).map_err(|e| Error::InvalidInput(e.to_string()))? {
        Value::Object(x) => m.extend(x),
        other => {
            m.insert("result".into(), other);
        }
    }
    Ok(Value::Object(m))
}

fn require<'a, T>(v: &'a Option<T>, key: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::InvalidInput(format!("task needs the key {key:?}")))
}

fn pid_only(name: &str) -> Error {
    Error::UnsupportedRing(format!("{name} (expected Z, Q or Q[t])"))
}

// ---------------------------------------------------------------- builders

fn sequence<B: PidBase>(base: &B, t: &TaskFile) -> Result<SectionSequence<B>> {
    let name = family_name(t)?;
    let dim = family_dim(name).ok_or_else(|| Error::InvalidInput(format!("family {name} has no sections")))?;
    let fam = ProjectiveFamily::new(base.clone(), dim)?;
    let sections = t
        .sections
        .iter()
        .map(|(k, s)| BundleSection::parse(&fam, *k, s))
        .collect::<Result<Vec<_>>>()?;
    SectionSequence::new(&fam, sections)
}

fn scalars<B: ScalarSyntax>(base: &B, v: &[String]) -> Result<Vec<B::Frac>> {
    v.iter().map(|s| base.parse_scalar(s)).collect()
}

/// Coefficients of the fiber polynomial in `x`, low degree first, each read
/// back as a base scalar.
fn fiber_coeffs(text: &str) -> Result<Vec<MPoly<Rational>>> {
    let p = parse_poly(text, &FIBER_VARS, 1, 1)?;
    let deg = p.terms().map(|(m, _)| usize::from(m.exp(0))).max().unwrap_or(0);
    let mut out = vec![MPoly::zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut exps: Vec<u16> = (0..FIBER_VARS.len()).map(|i| m.exp(i)).collect();
        let j = usize::from(exps[0]);
        exps[0] = 0;
        out[j] = out[j].add(&MPoly::term(c.clone(), crate::arith::Monomial::new(exps)));
    }
    Ok(out)
}

fn algebra<B: ScalarSyntax>(base: &B, t: &TaskFile) -> Result<FiniteAlgebra<B>> {
    if let Some(fiber) = &t.fiber {
        if t.structure_constants.is_some() {
            return Err(Error::InvalidInput("give either fiber or structure_constants".into()));
        }
        let coeffs = fiber_coeffs(fiber)?
            .iter()
            .map(|c| base.parse_scalar(&c.fmt_with(&FIBER_VARS)))
            .collect::<Result<Vec<_>>>()?;
        return FiniteAlgebra::companion(base.clone(), &UPoly::new(coeffs));
    }
    let table = require(&t.structure_constants, "structure_constants")?;
    let rank = match t.algebra_rank {
        Some(n) => n,
        None => (1..=8)
            .find(|n| n * n * n == table.len())
            .ok_or_else(|| Error::InvalidInput("structure_constants must have rank^3 entries".into()))?,
    };
    let unit = match &t.unit {
        Some(u) => scalars(base, u)?,
        None => {
            let mut u = vec![B::Frac::zero(); rank];
            if rank > 0 {
                u[0] = B::Frac::one();
            }
            u
        }
    };
    FiniteAlgebra::new(base.clone(), rank, scalars(base, table)?, unit)
}

fn element_coords<B: ScalarSyntax>(base: &B, alg: &FiniteAlgebra<B>, t: &TaskFile) -> Result<Vec<B::Frac>> {
    let mut c = scalars(base, require(&t.element, "element")?)?;
    if c.len() > alg.rank() {
        return Err(Error::ArityMismatch {
            expected: alg.rank(),
            actual: c.len(),
        });
    }
    c.resize(alg.rank(), B::Frac::zero());
    Ok(c)
}

fn algebra_header<B: BaseRing>(t: &TaskFile, alg: &FiniteAlgebra<B>) -> Map<String, Value> {
    let mut m = header(t);
    if let Some(f) = &t.fiber {
        m.insert("fiber".into(), json!(f));
    }
    if let Some(e) = &t.element {
        m.insert("element".into(), json!(e));
    }
    m.insert("algebra_rank".into(), json!(alg.rank()));
    m
}

// ---------------------------------------------------------------- norm

fn norm(t: &TaskFile) -> Result<Output> {
    match base_name(t) {
        "Z" => norm_over(Integers, t),
        "Q" => norm_over(Rationals, t),
        "Q[t]" => norm_over(PolyRing, t),
        "cone" => norm_over(QuadricCone, t),
        other => Err(Error::UnsupportedRing(other.into())),
    }
}

fn norm_over<B: ScalarSyntax>(base: B, t: &TaskFile) -> Result<Output> {
    let alg = algebra(&base, t)?;
    let coords = element_coords(&base, &alg, t)?;
    let elem = alg.element(coords)?;
    let value = norm_element(&elem)?;
    let mut m = algebra_header(t, &alg);
    m.insert("norm".into(), json!(base.format(&value)));
    m.insert("integral".into(), json!(base.contains(&value)));
    m.insert("unit_ambiguity".into(), json!(base.unit_group()));
    Ok(Output::ok(Value::Object(m)))
}

// ---------------------------------------------------------------- pair

fn pair(t: &TaskFile) -> Result<Output> {
    let finite = family_name(t)? == "finite";
    match base_name(t) {
        "Z" => pair_over(Integers, t),
        "Q" => pair_over(Rationals, t),
        "Q[t]" => pair_over(PolyRing, t),
        "cone" if finite => pair_finite_over(QuadricCone, t),
        other => Err(pid_only(other)),
    }
}

fn pair_over<B: PidBase + ScalarSyntax>(base: B, t: &TaskFile) -> Result<Output> {
    match family_name(t)? {
        "finite" => return pair_finite_over(base, t),
        "P0" => {
            let seq = sequence(&base, t)?;
            if seq.len() != 1 {
                return Err(Error::ArityMismatch {
                    expected: 1,
                    actual: seq.len(),
                });
            }
            let point = FiniteAlgebra::companion(base.clone(), &UPoly::new(vec![B::Frac::zero(), B::Frac::one()]))?;
            let value = seq.sections()[0].form().constant_term();
            let cert = pairing_finite(&point, &[value])?;
            return merge(header(t), cert.report(&base)).map(Output::ok);
        }
        _ => {}
    }
    let seq = sequence(&base, t)?;
    let cert = pairing_section(&seq)?;
    let mut m = header(t);
    m.insert("regularity".into(), regularity_json(&base, &seq)?);
    if seq.family().dim() == 1 {
        let it = pairing_iterated(&seq)?;
        m.insert("iterated".into(), serde_json::to_value(it.report(&base)).unwrap_or(Value::Null));
    }
    merge(m, cert.report(&base)).map(Output::ok)
}

fn pair_finite_over<B: ScalarSyntax>(base: B, t: &TaskFile) -> Result<Output> {
    let alg = algebra(&base, t)?;
    let coords = element_coords(&base, &alg, t)?;
    let cert = pairing_finite(&alg, &coords)?;
    merge(algebra_header(t, &alg), cert.report(&base)).map(Output::ok)
}

fn regularity_json<B: PidBase>(base: &B, seq: &SectionSequence<B>) -> Result<Value> {
    Ok(match certify_regular(seq, false)? {
        Regularity::Certified(c) => json!({
            "certified": true,
            "locus": base.format(&base.lift(&c.locus)),
            "global": c.is_global(),
            "bad_fibers": c.bad_fibers,
            "methods": c.methods,
        }),
        Regularity::Refuted(r) => json!({
            "certified": false,
            "index": r.index,
            "reason": r.reason,
            "bad_fibers": r.bad_fibers,
        }),
    })
}

// ---------------------------------------------------------------- intersect

fn intersect(t: &TaskFile) -> Result<Output> {
    let family = family_name(t)?;
    let mut m = header(t);
    let delta = if family == "finite" {
        let rank = match base_name(t) {
            "Z" => algebra(&Integers, t)?.rank(),
            "Q" => algebra(&Rationals, t)?.rank(),
            "Q[t]" => algebra(&PolyRing, t)?.rank(),
            "cone" => algebra(&QuadricCone, t)?.rank(),
            other => return Err(Error::UnsupportedRing(other.into())),
        };
        m.insert("algebra_rank".into(), json!(rank));
        match base_name(t) {
            "Q" => finite_degree(&algebra(&Rationals, t)?),
            _ => rank as u64,
        }
    } else {
        let dim = family_dim(family).ok_or_else(|| Error::InvalidInput(format!("unknown family {family}")))?;
        let twists: Vec<u32> = match &t.twists {
            Some(tw) => tw.clone(),
            None => t.sections.iter().map(|(k, _)| *k).collect(),
        };
        m.insert("twists".into(), json!(twists));
        intersection_number(dim, &twists)?
    };
    m.insert("delta".into(), json!(delta));
    Ok(Output::ok(Value::Object(m)))
}

// ---------------------------------------------------------------- metric

fn grid(t: &TaskFile) -> Result<Grid> {
    let d = Grid::default();
    Grid::new(t.nodes_theta.unwrap_or(d.n_theta), t.nodes_phi.unwrap_or(d.n_phi))
}

fn hermitian(t: &TaskFile) -> Result<Vec<HermitianSection>> {
    t.sections
        .iter()
        .map(|(k, s)| {
            let p = parse_poly(s, &TASK_VARS, 1, 1)?;
            HermitianSection::from_parsed(*k, &p, I_INDEX)
        })
        .collect()
}

fn complex_base(t: &TaskFile) -> Result<()> {
    match base_name(t) {
        "C" | "Q" | "Z" => Ok(()),
        other => Err(Error::UnsupportedRing(format!("{other} has no complex embedding here"))),
    }
}

fn metric_pair(t: &TaskFile) -> Result<(HermitianSection, HermitianSection)> {
    complex_base(t)?;
    if family_name(t)? != "P1" {
        return Err(Error::InvalidInput("metric at d = 1 needs family P1".into()));
    }
    let mut s = hermitian(t)?;
    if s.len() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            actual: s.len(),
        });
    }
    let s2 = s.pop().unwrap_or_else(|| unreachable!());
    let s1 = s.pop().unwrap_or_else(|| unreachable!());
    Ok((s1, s2))
}

/// Fiber polynomial and section over the Gaussian rationals.
fn gaussian_fiber(t: &TaskFile) -> Result<(UPoly<Gaussian>, UPoly<Gaussian>)> {
    complex_base(t)?;
    let fiber = require(&t.fiber, "fiber")?;
    let coeffs = fiber_coeffs(fiber)?
        .iter()
        .map(|c| {
            let mut acc = Gaussian::zero();
            for (m, q) in c.terms() {
                if (1..5).any(|i| m.exp(i) > 0) {
                    return Err(Error::InvalidInput(format!("fiber coefficient {c} is not a complex number")));
                }
                acc = acc.add(&Gaussian::i().pow(u64::from(m.exp(5))).mul(&Gaussian::real(q.clone())));
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let s = require(&t.element, "element")?
        .iter()
        .map(|e| parse_gaussian(e))
        .collect::<Result<Vec<_>>>()?;
    Ok((UPoly::new(coeffs), UPoly::new(s)))
}

fn metric_cmd(t: &TaskFile) -> Result<Output> {
    if family_name(t)? == "finite" {
        let (fiber, s) = gaussian_fiber(t)?;
        let f = Fiber::from_poly(&fiber)?;
        let v = metric::metric_d0(&f, &s);
        let mut m = header(t);
        m.insert("fiber".into(), json!(require(&t.fiber, "fiber")?));
        m.insert("element".into(), json!(require(&t.element, "element")?));
        m.insert("degree".into(), json!(f.degree()));
        return merge(m, v).map(Output::ok);
    }
    let (s1, s2) = metric_pair(t)?;
    let g = grid(t)?;
    let v = metric::metric_d1(&s1, &s2, g)?;
    let mut m = header(t);
    m.insert("grid".into(), json!(g));
    merge(m, v).map(Output::ok)
}

// ---------------------------------------------------------------- verify

fn verify_suite(suite: &str, t: &TaskFile, opts: &RunOptions) -> Result<Output> {
    let mut g = Grid::default();
    if t.nodes_theta.is_some() || t.nodes_phi.is_some() {
        g = grid(t)?;
    }
    let so = SuiteOptions {
        seed: opts.seed.or(t.seed).unwrap_or(DEFAULT_SEED),
        count: opts.count.or(t.count),
        grid: g,
        tolerance: t.tolerance,
    };
    let report = suites::run_named(suite, &so)?;
    let passed = report.passed();
    let doc = serde_json::to_value(&report).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(Output::checked(doc, passed))
}

fn check_output(t: &TaskFile, suite: &str, checks: Vec<CheckReport>) -> Result<Output> {
    let passed = checks.iter().all(CheckReport::passed);
    let verdict = if !passed {
        Verdict::Fail
    } else if checks.iter().any(|c| c.verdict == Verdict::Degenerate) {
        Verdict::Degenerate
    } else {
        Verdict::Pass
    };
    let mut m = header(t);
    m.insert("suite".into(), json!(suite));
    m.insert("verdict".into(), serde_json::to_value(verdict).unwrap_or(Value::Null));
    m.insert("checks".into(), serde_json::to_value(checks).unwrap_or(Value::Null));
    Ok(Output::checked(Value::Object(m), passed))
}

fn metric_output(t: &TaskFile, suite: &str, checks: Vec<MetricCheck>) -> Result<Output> {
    let passed = checks.iter().all(|c| c.passed);
    let mut m = header(t);
    m.insert("suite".into(), json!(suite));
    m.insert("verdict".into(), json!(if passed { "pass" } else { "fail" }));
    m.insert("checks".into(), serde_json::to_value(checks).unwrap_or(Value::Null));
    Ok(Output::checked(Value::Object(m), passed))
}

fn verify_task(suite: &str, t: &TaskFile) -> Result<Output> {
    match suite {
        "metric_d1" => return verify_metric_d1(t),
        "metric_d0" => return verify_metric_d0(t),
        "base_change" => {
            if base_name(t) != "Q[t]" {
                return Err(Error::UnsupportedRing(format!("base change needs Q[t], not {}", base_name(t))));
            }
            let seq = sequence(&PolyRing, t)?;
            let t0 = require(&t.t0, "t0")?;
            return check_output(t, suite, vec![verify_base_change(&seq, t0)?]);
        }
        _ => {}
    }
    match base_name(t) {
        "Z" => verify_task_over(Integers, suite, t),
        "Q" => verify_task_over(Rationals, suite, t),
        "Q[t]" => verify_task_over(PolyRing, suite, t),
        other => Err(pid_only(other)),
    }
}

fn verify_task_over<B: PidBase + ScalarSyntax>(base: B, suite: &str, t: &TaskFile) -> Result<Output> {
    let report = match suite {
        "route_equivalence" => verify_routes(&sequence(&base, t)?)?,
        "multiadditivity" => {
            let seq = sequence(&base, t)?;
            let slot = t.slot.unwrap_or(0);
            let (k, text) = require(&t.other, "other")?;
            let other = BundleSection::parse(seq.family(), *k, text)?;
            verify_multiadditivity(&seq, &seq.with_slot(slot, other)?, slot)?
        }
        "symmetry" => verify_symmetry(&sequence(&base, t)?, require(&t.permutation, "permutation")?)?,
        "pullback" => {
            let m = base.parse_scalar(require(&t.m, "m")?)?;
            if family_name(t)? == "finite" {
                verify_pullback_finite(&algebra(&base, t)?, &m)?
            } else {
                verify_pullback_formula(&sequence(&base, t)?, &m)?
            }
        }
        "restriction" => verify_restriction_to_divisor(&sequence(&base, t)?)?,
        "isomorphism" => {
            let seq = sequence(&base, t)?;
            let iso = ScalarIsomorphism::new(scalars(&base, require(&t.scalars, "scalars")?)?)?;
            let cert = pairing_section(&seq)?;
            apply_isomorphism(&seq, &cert, &iso)?.1
        }
        "projection" => {
            let [(a, s1)] = t.sections.as_slice() else {
                return Err(Error::ArityMismatch {
                    expected: 1,
                    actual: t.sections.len(),
                });
            };
            let [(e2, k2, m2), (e3, k3, m3)] = t.inner_sections.as_slice() else {
                return Err(Error::ArityMismatch {
                    expected: 2,
                    actual: t.inner_sections.len(),
                });
            };
            let tower = Tower::parse(base, (*a, s1), ((*e2, *k2), m2), ((*e3, *k3), m3))?;
            verify_projection_formula(&tower)?
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "suite {other} runs on seeded instances only; drop the sections from the task"
            )))
        }
    };
    check_output(t, suite, vec![report])
}

fn verify_metric_d1(t: &TaskFile) -> Result<Output> {
    let (s1, s2) = metric_pair(t)?;
    let g = grid(t)?;
    let tol = t.tolerance.unwrap_or(suites::METRIC_D1_TOL);
    let phases = match &t.phases {
        None => [Complex64::new(1.0, 0.0); 2],
        Some(p) => {
            let [u, v] = p.as_slice() else {
                return Err(Error::ArityMismatch {
                    expected: 2,
                    actual: p.len(),
                });
            };
            [phase(u)?, phase(v)?]
        }
    };
    let lambda = parse_gaussian(t.lambda.as_deref().unwrap_or(DEFAULT_LAMBDA))?;
    if lambda.is_zero() {
        return Err(Error::InvalidInput("lambda must be nonzero".into()));
    }
    let checks = vec![
        metric::verify_order_independence(&s1, &s2, g, tol)?,
        metric::verify_isometry_invariance(&s1, &s2, phases, g, tol)?,
        metric::verify_scalar_shift(&s1, &s2, lambda.to_complex(), g, tol)?,
    ];
    metric_output(t, "metric_d1", checks)
}

/// A phase is a Gaussian rational scaled to modulus one.
fn phase(text: &str) -> Result<Complex64> {
    let z = parse_gaussian(text)?.to_complex();
    if z.norm() == 0.0 {
        return Err(Error::InvalidInput("phase must be nonzero".into()));
    }
    Ok(z / z.norm())
}

fn verify_metric_d0(t: &TaskFile) -> Result<Output> {
    let (fiber, s) = gaussian_fiber(t)?;
    if !fiber.leading().is_one() {
        return Err(Error::InvalidAlgebra("fiber polynomial must be monic".into()));
    }
    let tol = t.tolerance.unwrap_or(suites::METRIC_D0_TOL);
    let v = metric::metric_d0(&Fiber::from_poly(&fiber)?, &s);
    let nm = gaussian_norm(&fiber, &s);
    let exact = nm.to_complex().norm().ln();
    metric_output(t, "metric_d0", vec![MetricCheck::new("exactness", v.log_norm, exact, tol)])
}

/// `prod_{f(p) = 0} s(p)` as the determinant of multiplication by `s` on
/// `Q(i)[x]/(f)`.
fn gaussian_norm(f: &UPoly<Gaussian>, s: &UPoly<Gaussian>) -> Gaussian {
    let n = f.degree().unwrap_or(0);
    let mut m = crate::arith::Matrix::<Gaussian>::zeros(n, n);
    for j in 0..n {
        let col = UPoly::monomial(Gaussian::one(), j).mul(s);
        let (_, r) = col.div_rem_poly(f);
        for i in 0..n {
            m[(i, j)] = r.coeff(i);
        }
    }
    m.det_bareiss()
}
