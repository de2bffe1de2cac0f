//! Seeded property suites. Instance `i` of a suite draws from a ChaCha8
//! stream `i` of the suite seed, so instances can run in parallel and the
//! report is identical for equal seeds.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::rational::rational_roots;
use crate::arith::{
    int, rat, smith::UnitRatio, unit_ratio, Field, Gaussian, MPoly, Matrix, Monomial, RatFunc, Rational,
    Ring, UPoly,
};
use crate::base::{BaseRing, Integers, PidBase, PolyRing, QuadricCone, Rationals};
use crate::error::{Error, Result};
use crate::family::{chart_det, zero_locus_algebra, BundleSection, ProjectiveFamily, SectionSequence};
use crate::metric::{self, Fiber, Grid, HermitianSection, MetricCheck};
use crate::norm::{norm_element, FiniteAlgebra};
use crate::pairing::{
    apply_isomorphism, pairing_iterated, pairing_section, verify_base_change, verify_multiadditivity,
    verify_projection_formula, verify_pullback_finite, verify_pullback_formula,
    verify_restriction_to_divisor, verify_symmetry, verify_symmetry_composition, CheckReport,
    ScalarIsomorphism, Tower, Verdict,
};
use crate::resultant::monomials_of_degree;

pub const SUITES: [&str; 17] = [
    "multiplicativity",
    "scalar_law",
    "route_equivalence",
    "smith",
    "multiadditivity",
    "symmetry",
    "base_change",
    "pullback",
    "restriction",
    "isomorphism",
    "projection",
    "metric_d0",
    "metric_d1",
    "convergence",
    "functorial",
    "metric",
    "all",
];

pub const FUNCTORIAL: [&str; 6] = [
    "multiadditivity",
    "symmetry",
    "base_change",
    "pullback",
    "restriction",
    "isomorphism",
];

pub fn default_count(suite: &str) -> usize {
    match suite {
        "multiplicativity" => 200,
        "scalar_law" | "smith" | "base_change" | "metric_d0" => 50,
        "route_equivalence" => 100,
        "projection" => 10,
        "convergence" => 10,
        _ => 20,
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub count: Option<usize>,
    pub grid: Grid,
    /// Overrides the suite's default tolerance for metric checks.
    pub tolerance: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub degenerate: usize,
    pub failed: usize,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<SuiteReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn combine(suite: &str, seed: u64, parts: Vec<SuiteReport>) -> SuiteReport {
        let sum = |f: fn(&SuiteReport) -> usize| parts.iter().map(f).sum::<usize>();
        let failed = sum(|p| p.failed);
        SuiteReport {
            suite: suite.to_string(),
            seed,
            instances: sum(|p| p.instances),
            passed: sum(|p| p.passed),
            degenerate: sum(|p| p.degenerate),
            failed,
            verdict: if failed == 0 { "pass" } else { "fail" },
            tolerance: None,
            failures: Vec::new(),
            parts,
        }
    }
}

enum Outcome {
    Pass,
    Degenerate,
    Fail(Value),
}

impl Outcome {
    fn from_report(r: &CheckReport) -> Outcome {
        match r.verdict {
            Verdict::Pass => Outcome::Pass,
            Verdict::Degenerate => Outcome::Degenerate,
            Verdict::Fail => Outcome::Fail(serde_json::to_value(r).unwrap_or(Value::Null)),
        }
    }

    fn from_checks(checks: &[MetricCheck]) -> Outcome {
        match checks.iter().find(|c| !c.passed) {
            None => Outcome::Pass,
            Some(c) => Outcome::Fail(serde_json::to_value(c).unwrap_or(Value::Null)),
        }
    }
}

fn error_outcome(e: Error) -> Outcome {
    Outcome::Fail(json!({ "error": e.kind(), "message": e.to_string() }))
}

const MAX_LISTED_FAILURES: usize = 5;

fn instance_rng(suite: &str, seed: u64, i: usize) -> ChaCha8Rng {
    let salt = suite.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(u64::from(b)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    rng.set_stream(i as u64);
    rng
}

fn run_suite(
    suite: &str,
    opts: &SuiteOptions,
    tolerance: Option<f64>,
    instance: impl Fn(usize, &mut ChaCha8Rng) -> Result<Outcome> + Sync,
) -> SuiteReport {
    let count = opts.count.unwrap_or_else(|| default_count(suite));
    let outcomes: Vec<Outcome> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(suite, opts.seed, i);
            instance(i, &mut rng).unwrap_or_else(error_outcome)
        })
        .collect();
    collect_report(suite, opts.seed, tolerance, outcomes)
}

fn collect_report(suite: &str, seed: u64, tolerance: Option<f64>, outcomes: Vec<Outcome>) -> SuiteReport {
    let mut report = SuiteReport {
        suite: suite.to_string(),
        seed,
        instances: outcomes.len(),
        passed: 0,
        degenerate: 0,
        failed: 0,
        verdict: "pass",
        tolerance,
        failures: Vec::new(),
        parts: Vec::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass => report.passed += 1,
            Outcome::Degenerate => report.degenerate += 1,
            Outcome::Fail(v) => {
                report.failed += 1;
                if report.failures.len() < MAX_LISTED_FAILURES {
                    report.failures.push(json!({ "instance": i, "detail": v }));
                }
            }
        }
    }
    if report.failed > 0 {
        report.verdict = "fail";
    }
    report
}

/// Random scalars for the PID bases used by the generators.
pub trait Sampler: PidBase {
    fn coeff(&self, rng: &mut ChaCha8Rng) -> Self::Frac;
    fn unit(&self, rng: &mut ChaCha8Rng) -> Self::Frac;

    fn nonzero(&self, rng: &mut ChaCha8Rng) -> Self::Frac {
        loop {
            let c = self.coeff(rng);
            if !c.is_zero() {
                return c;
            }
        }
    }
}

fn small(rng: &mut ChaCha8Rng, r: i64) -> i64 {
    rng.gen_range(-r..=r)
}

fn small_nonzero(rng: &mut ChaCha8Rng, r: i64) -> i64 {
    loop {
        let x = small(rng, r);
        if x != 0 {
            return x;
        }
    }
}

impl Sampler for Integers {
    fn coeff(&self, rng: &mut ChaCha8Rng) -> Rational {
        int(small(rng, 5))
    }
    fn unit(&self, rng: &mut ChaCha8Rng) -> Rational {
        int(if rng.gen_bool(0.5) { 1 } else { -1 })
    }
}

impl Sampler for Rationals {
    fn coeff(&self, rng: &mut ChaCha8Rng) -> Rational {
        if rng.gen_ratio(1, 5) {
            rat(small(rng, 5), rng.gen_range(2..=3))
        } else {
            int(small(rng, 5))
        }
    }
    fn unit(&self, rng: &mut ChaCha8Rng) -> Rational {
        rat(small_nonzero(rng, 4), rng.gen_range(1..=2))
    }
}

impl Sampler for PolyRing {
    fn coeff(&self, rng: &mut ChaCha8Rng) -> RatFunc {
        let a = RatFunc::from_rational(int(small(rng, 4)));
        if rng.gen_ratio(1, 2) {
            a.add(&RatFunc::t().mul(&RatFunc::from_rational(int(small(rng, 3)))))
        } else {
            a
        }
    }
    fn unit(&self, rng: &mut ChaCha8Rng) -> RatFunc {
        RatFunc::from_rational(int(small_nonzero(rng, 3)))
    }
}

/// A random form of degree `k` in `nvars` variables; with `lead_unit` the
/// coefficient of `x0^k` is a unit of the base.
pub fn random_form<B: Sampler>(base: &B, rng: &mut ChaCha8Rng, nvars: usize, k: u32, lead_unit: bool) -> MPoly<B::Frac> {
    let monos = monomials_of_degree(nvars, k);
    let mut terms: Vec<(Monomial, B::Frac)> = monos
        .iter()
        .map(|m| {
            let c = if rng.gen_ratio(3, 4) { base.coeff(rng) } else { B::Frac::zero() };
            (m.clone(), c)
        })
        .collect();
    if lead_unit || terms.iter().all(|(_, c)| c.is_zero()) {
        terms[0].1 = base.unit(rng);
    }
    MPoly::from_terms(terms)
}

pub fn random_sequence<B: Sampler>(
    fam: &ProjectiveFamily<B>,
    rng: &mut ChaCha8Rng,
    twists: &[u32],
    lead_unit: bool,
) -> Result<SectionSequence<B>> {
    let secs = twists
        .iter()
        .map(|&k| BundleSection::new(fam, k, random_form(fam.base(), rng, fam.nvars(), k, lead_unit)))
        .collect::<Result<Vec<_>>>()?;
    SectionSequence::new(fam, secs)
}

/// Draws until `accept` holds for a sequence with a certified prefix.
fn draw<B: Sampler>(
    fam: &ProjectiveFamily<B>,
    rng: &mut ChaCha8Rng,
    twists: &[u32],
    lead_unit: bool,
    accept: impl Fn(&SectionSequence<B>) -> bool,
) -> Result<SectionSequence<B>> {
    for _ in 0..64 {
        let s = random_sequence(fam, rng, twists, lead_unit)?;
        if s.len() == fam.dim() + 1 {
            match pairing_section(&s) {
                Ok(c) if !c.value.is_zero() && accept(&s) => return Ok(s),
                Ok(_) | Err(Error::NotCertified(_)) => continue,
                Err(e) => return Err(e),
            }
        } else if accept(&s) {
            return Ok(s);
        }
    }
    Err(Error::InvalidInput("generator found no admissible sequence".into()))
}

fn twists(rng: &mut ChaCha8Rng, n: usize, max: u32) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}

fn random_monic<B: Sampler>(base: &B, rng: &mut ChaCha8Rng, n: usize) -> UPoly<B::Frac> {
    let mut c: Vec<B::Frac> = (0..n).map(|_| base.coeff(rng)).collect();
    c.push(B::Frac::one());
    UPoly::new(c)
}

/// Unimodular integer matrix with its inverse, as a product of elementary
/// operations.
fn unimodular_pair(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (Matrix<Rational>, Matrix<Rational>) {
    let mut p: Matrix<Rational> = Matrix::identity(n);
    let mut q: Matrix<Rational> = Matrix::identity(n);
    for _ in 0..steps {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            if rng.gen_bool(0.5) {
                // negate column a of p, row a of q
                for r in 0..n {
                    p[(r, a)] = p[(r, a)].neg();
                    q[(a, r)] = q[(a, r)].neg();
                }
            }
            continue;
        }
        let c = int(small_nonzero(rng, 2));
        // p <- p E with E = I + c e_{b a}: column a += c * column b
        for r in 0..n {
            let v = p[(r, a)].add(&p[(r, b)].mul(&c));
            p[(r, a)] = v;
        }
        // q <- E^{-1} q: row b -= c * row a
        for col in 0..n {
            let v = q[(b, col)].sub(&q[(a, col)].mul(&c));
            q[(b, col)] = v;
        }
    }
    (p, q)
}

/// The same algebra written in the basis given by the columns of `p`.
fn rebase<B: BaseRing>(alg: &FiniteAlgebra<B>, p: &Matrix<Rational>, q: &Matrix<Rational>) -> Result<FiniteAlgebra<B>> {
    let n = alg.rank();
    let base = alg.base();
    let lift = |m: &Matrix<Rational>, i: usize, j: usize| base.from_rational(m[(i, j)].clone());
    let to_new = |v: &[B::Frac]| -> Vec<B::Frac> {
        (0..n)
            .map(|i| (0..n).fold(B::Frac::zero(), |acc, k| acc.add(&lift(q, i, k).mul(&v[k]))))
            .collect()
    };
    let cols: Vec<Vec<B::Frac>> = (0..n).map(|j| (0..n).map(|i| lift(p, i, j)).collect()).collect();
    let mut structure = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            let prod = alg.element(cols[a].clone())?.mul(&alg.element(cols[b].clone())?);
            structure.extend(to_new(prod.coords()));
        }
    }
    FiniteAlgebra::new(base.clone(), n, structure, to_new(alg.unit_coords()))
}

fn random_algebra<B: Sampler>(base: &B, rng: &mut ChaCha8Rng) -> Result<FiniteAlgebra<B>> {
    let n = rng.gen_range(1..=4);
    let alg = FiniteAlgebra::companion(base.clone(), &random_monic(base, rng, n))?;
    if rng.gen_bool(0.5) {
        let (p, q) = unimodular_pair(rng, n, 6);
        rebase(&alg, &p, &q)
    } else {
        Ok(alg)
    }
}

fn random_coords<B: Sampler>(base: &B, rng: &mut ChaCha8Rng, n: usize) -> Vec<B::Frac> {
    (0..n).map(|_| base.coeff(rng)).collect()
}

fn multiplicativity_instance<B: Sampler>(base: &B, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let alg = random_algebra(base, rng)?;
    let f = alg.element(random_coords(base, rng, alg.rank()))?;
    let g = alg.element(random_coords(base, rng, alg.rank()))?;
    let lhs = norm_element(&f.mul(&g))?;
    let rhs = norm_element(&f)?.mul(&norm_element(&g)?);
    Ok(if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({
            "rank": alg.rank(),
            "nm_fg": base.format(&lhs),
            "nm_f_nm_g": base.format(&rhs),
        }))
    })
}

pub fn multiplicativity(opts: &SuiteOptions) -> SuiteReport {
    run_suite("multiplicativity", opts, None, |i, rng| {
        if i % 2 == 0 {
            multiplicativity_instance(&Rationals, rng)
        } else {
            multiplicativity_instance(&PolyRing, rng)
        }
    })
}

fn scalar_law_instance<B: BaseRing>(alg: &FiniteAlgebra<B>, s: &B::Frac) -> Result<Outcome> {
    let lhs = norm_element(&alg.scalar(s))?;
    let rhs = s.pow(alg.rank() as u64);
    Ok(if lhs == rhs {
        Outcome::Pass
    } else {
        let b = alg.base();
        Outcome::Fail(json!({ "scalar": b.format(s), "nm": b.format(&lhs), "expected": b.format(&rhs) }))
    })
}

fn cone_scalar(rng: &mut ChaCha8Rng) -> crate::base::ConeScalar {
    let cone = QuadricCone;
    let gens = [cone.a(), cone.b(), cone.c()];
    let mut s = cone.from_rational(int(small(rng, 3)));
    for g in &gens {
        let c = small(rng, 2);
        if c != 0 {
            s = s.add(&g.mul(&cone.from_rational(int(c))));
        }
    }
    if s.is_zero() {
        cone.a()
    } else {
        s
    }
}

/// The cone algebra `A[x]/(x^2 - a)` over `A = Q[a,b,c]/(ac - b^2)`.
pub fn cone_algebra() -> Result<FiniteAlgebra<QuadricCone>> {
    let cone = QuadricCone;
    FiniteAlgebra::companion(
        cone,
        &UPoly::new(vec![cone.a().neg(), cone.from_rational(int(0)), cone.from_rational(int(1))]),
    )
}

pub fn scalar_law(opts: &SuiteOptions) -> SuiteReport {
    run_suite("scalar_law", opts, None, |i, rng| match i % 4 {
        0 if i == 0 => {
            // Nm(x) = -a and Nm((b/a) x) = -c on the cone algebra
            let cone = QuadricCone;
            let alg = cone_algebra()?;
            let zero = cone.from_rational(int(0));
            let nx = norm_element(&alg.element(vec![zero.clone(), cone.from_rational(int(1))])?)?;
            let nbx = norm_element(&alg.element(vec![zero, cone.b().div(&cone.a())])?)?;
            if nx != cone.a().neg() || nbx != cone.c().neg() {
                return Ok(Outcome::Fail(json!({ "nm_x": cone.format(&nx), "nm_bx_over_a": cone.format(&nbx) })));
            }
            scalar_law_instance(&alg, &cone.b())
        }
        0 | 1 => scalar_law_instance(&cone_algebra()?, &cone_scalar(rng)),
        2 => {
            let alg = random_algebra(&Rationals, rng)?;
            scalar_law_instance(&alg, &Rationals.nonzero(rng))
        }
        _ => {
            let alg = random_algebra(&PolyRing, rng)?;
            scalar_law_instance(&alg, &PolyRing.nonzero(rng))
        }
    })
}

fn route_instance<B: Sampler>(fam: &ProjectiveFamily<B>, seq: &SectionSequence<B>) -> Result<Outcome> {
    let base = fam.base();
    let it = pairing_iterated(seq)?.value;
    let sy = pairing_section(seq)?.value;
    let z = zero_locus_algebra(&seq.sections()[0])?;
    let tw = seq.twists();
    let (k1, k2) = (tw[0], tw[1]);
    let det = B::Frac::from_i64(chart_det(&z.chart));
    let predicted = det.pow(u64::from(k1 * k2)).div(&z.leading.pow(u64::from(k2)));
    let ok = if sy.is_zero() { it.is_zero() } else { it == sy.mul(&predicted) && base.is_unit(&predicted) };
    Ok(if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({
            "sections": seq.sections().iter().map(|s| s.text()).collect::<Vec<_>>(),
            "iterated": base.format(&it),
            "sylvester": base.format(&sy),
            "declared_unit": base.format(&predicted),
        }))
    })
}

pub fn route_equivalence(opts: &SuiteOptions) -> SuiteReport {
    run_suite("route_equivalence", opts, None, |i, rng| {
        if i == 0 {
            let fam = ProjectiveFamily::new(PolyRing, 1)?;
            let seq = SectionSequence::new(
                &fam,
                vec![
                    BundleSection::parse(&fam, 2, "x0^2 - t*x1^2")?,
                    BundleSection::parse(&fam, 1, "x0 - x1")?,
                ],
            )?;
            let v = pairing_section(&seq)?.value;
            if PolyRing.format(&v) != "1 - t" {
                return Ok(Outcome::Fail(json!({ "expected": "1 - t", "got": PolyRing.format(&v) })));
            }
            return route_instance(&fam, &seq);
        }
        let tw = twists(rng, 2, 3);
        if i % 2 == 0 {
            let fam = ProjectiveFamily::new(Rationals, 1)?;
            let seq = draw(&fam, rng, &tw, false, |_| true)?;
            route_instance(&fam, &seq)
        } else {
            let fam = ProjectiveFamily::new(PolyRing, 1)?;
            let seq = draw(&fam, rng, &tw, true, |_| true)?;
            route_instance(&fam, &seq)
        }
    })
}

fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<BigInt> {
    Matrix::from_fn(n, n, |_, _| BigInt::from(small(rng, 6)))
}

fn to_int(m: &Matrix<Rational>) -> Matrix<BigInt> {
    m.map(|q| q.to_integer())
}

pub fn smith(opts: &SuiteOptions) -> SuiteReport {
    run_suite("smith", opts, None, |i, rng| {
        let a = loop {
            let a = random_int_matrix(rng, 3);
            if !a.det_bareiss().is_zero() {
                break a;
            }
        };
        let (u, _) = unimodular_pair(rng, 3, 8);
        let (v, _) = unimodular_pair(rng, 3, 8);
        let b = to_int(&u).mul(&a).mul(&to_int(&v));
        let equal = unit_ratio(&a, &b)?;
        let ok_equal = matches!(&equal, UnitRatio::Unit(e) if num_traits::Signed::abs(e) == BigInt::from(1));
        // scaling one column by a prime changes the invariants
        let p = BigInt::from([2, 3, 5][i % 3]);
        let mut c = b.clone();
        for r in 0..3 {
            c[(r, 0)] = &c[(r, 0)] * &p;
        }
        let mismatched = unit_ratio(&a, &c)?;
        let ok_mismatch = matches!(mismatched, UnitRatio::Incomparable);
        Ok(if ok_equal && ok_mismatch {
            Outcome::Pass
        } else {
            Outcome::Fail(json!({
                "a": format!("{:?}", a.row(0)),
                "unit": format!("{equal:?}"),
                "mismatch": format!("{mismatched:?}"),
            }))
        })
    })
}

fn mixed_family(i: usize) -> usize {
    // P1 over Q, P1 over Q[t], P2 over Q
    i % 3
}

fn multiadditivity_generic<B: Sampler>(fam: &ProjectiveFamily<B>, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = fam.dim() + 1;
    let tw = twists(rng, n, 2);
    let a = draw(fam, rng, &tw, false, |_| true)?;
    let slot = rng.gen_range(0..n);
    let k = rng.gen_range(1..=2);
    for _ in 0..64 {
        let other = BundleSection::new(fam, k, random_form(fam.base(), rng, fam.nvars(), k, false))?;
        let b = a.with_slot(slot, other)?;
        match verify_multiadditivity(&a, &b, slot) {
            Ok(r) => return Ok(Outcome::from_report(&r)),
            Err(Error::NotCertified(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidInput("generator found no admissible factor".into()))
}

pub fn multiadditivity(opts: &SuiteOptions) -> SuiteReport {
    run_suite("multiadditivity", opts, None, |i, rng| match mixed_family(i) {
        0 => multiadditivity_generic(&ProjectiveFamily::new(Rationals, 1)?, rng),
        1 => multiadditivity_generic(&ProjectiveFamily::new(PolyRing, 1)?, rng),
        _ => multiadditivity_generic(&ProjectiveFamily::new(Rationals, 2)?, rng),
    })
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

fn symmetry_generic<B: Sampler>(fam: &ProjectiveFamily<B>, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = fam.dim() + 1;
    let tw = twists(rng, n, 3.min(4 - fam.dim() as u32));
    let perm = random_permutation(rng, n);
    let seq = draw(fam, rng, &tw, false, |s| {
        s.permuted(&perm).map(|p| pairing_section(&p).is_ok()).unwrap_or(false)
    })?;
    let r = verify_symmetry(&seq, &perm)?;
    if r.verdict == Verdict::Fail || n < 3 {
        return Ok(Outcome::from_report(&r));
    }
    let phi = random_permutation(rng, n);
    let psi = random_permutation(rng, n);
    match verify_symmetry_composition(&seq, &phi, &psi) {
        Ok(c) => Ok(Outcome::from_report(&c)),
        // an intermediate ordering may leave the certified range; the
        // transposition check above already covered the instance
        Err(Error::NotCertified(_)) => Ok(Outcome::from_report(&r)),
        Err(e) => Err(e),
    }
}

pub fn symmetry(opts: &SuiteOptions) -> SuiteReport {
    run_suite("symmetry", opts, None, |i, rng| match mixed_family(i) {
        0 => symmetry_generic(&ProjectiveFamily::new(Rationals, 1)?, rng),
        1 => symmetry_generic(&ProjectiveFamily::new(PolyRing, 1)?, rng),
        _ => symmetry_generic(&ProjectiveFamily::new(Rationals, 2)?, rng),
    })
}

pub fn base_change(opts: &SuiteOptions) -> SuiteReport {
    run_suite("base_change", opts, None, |i, rng| {
        let fam = ProjectiveFamily::new(PolyRing, 1)?;
        let (seq, t0) = if i < 2 {
            let seq = SectionSequence::new(
                &fam,
                vec![
                    BundleSection::parse(&fam, 2, "x0^2 - t*x1^2")?,
                    BundleSection::parse(&fam, 1, "x0 - x1")?,
                ],
            )?;
            (seq, int([1, 4][i]))
        } else {
            let tw = twists(rng, 2, 2);
            let seq = draw(&fam, rng, &tw, false, |_| true)?;
            let value = pairing_section(&seq)?.value;
            let roots = PolyRing
                .lower(&value)
                .map(|p| rational_roots(p.coeffs()))
                .unwrap_or_default();
            let t0 = if !roots.is_empty() && rng.gen_ratio(1, 3) {
                roots[rng.gen_range(0..roots.len())].clone()
            } else {
                rat(small(rng, 8), rng.gen_range(1..=3))
            };
            (seq, t0)
        };
        let r = verify_base_change(&seq, &t0)?;
        let flagged_correctly = match r.verdict {
            Verdict::Degenerate => r.lhs == "0",
            Verdict::Pass => r.lhs != "0",
            Verdict::Fail => false,
        };
        Ok(if flagged_correctly {
            Outcome::from_report(&r)
        } else {
            Outcome::Fail(serde_json::to_value(&r).unwrap_or(Value::Null))
        })
    })
}

fn pullback_generic<B: Sampler>(fam: &ProjectiveFamily<B>, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let tw = twists(rng, fam.dim(), 3);
    let seq = draw(fam, rng, &tw, true, |s| crate::family::certify_regular(s, false).map(|r| r.is_certified()).unwrap_or(false))?;
    let m = fam.base().nonzero(rng);
    Ok(Outcome::from_report(&verify_pullback_formula(&seq, &m)?))
}

pub fn pullback(opts: &SuiteOptions) -> SuiteReport {
    run_suite("pullback", opts, None, |i, rng| match i % 4 {
        0 => {
            let alg = random_algebra(&Rationals, rng)?;
            let m = Rationals.nonzero(rng);
            Ok(Outcome::from_report(&verify_pullback_finite(&alg, &m)?))
        }
        1 => pullback_generic(&ProjectiveFamily::new(Rationals, 1)?, rng),
        2 => pullback_generic(&ProjectiveFamily::new(PolyRing, 1)?, rng),
        _ => pullback_generic(&ProjectiveFamily::new(Rationals, 2)?, rng),
    })
}

fn restriction_generic<B: Sampler>(fam: &ProjectiveFamily<B>, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let tw = twists(rng, 2, 3);
    let seq = draw(fam, rng, &tw, true, |_| true)?;
    Ok(Outcome::from_report(&verify_restriction_to_divisor(&seq)?))
}

pub fn restriction(opts: &SuiteOptions) -> SuiteReport {
    run_suite("restriction", opts, None, |i, rng| match i % 3 {
        0 => restriction_generic(&ProjectiveFamily::new(Rationals, 1)?, rng),
        1 => restriction_generic(&ProjectiveFamily::new(Integers, 1)?, rng),
        _ => restriction_generic(&ProjectiveFamily::new(PolyRing, 1)?, rng),
    })
}

fn isomorphism_generic<B: Sampler>(fam: &ProjectiveFamily<B>, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = fam.dim() + 1;
    let tw = twists(rng, n, 2);
    let seq = draw(fam, rng, &tw, false, |_| true)?;
    let cert = pairing_section(&seq)?;
    let lambdas = (0..n).map(|_| fam.base().nonzero(rng)).collect();
    let iso = ScalarIsomorphism::new(lambdas)?;
    let (_, r) = apply_isomorphism(&seq, &cert, &iso)?;
    Ok(Outcome::from_report(&r))
}

pub fn isomorphism(opts: &SuiteOptions) -> SuiteReport {
    run_suite("isomorphism", opts, None, |i, rng| match mixed_family(i) {
        0 => isomorphism_generic(&ProjectiveFamily::new(Rationals, 1)?, rng),
        1 => isomorphism_generic(&ProjectiveFamily::new(PolyRing, 1)?, rng),
        _ => isomorphism_generic(&ProjectiveFamily::new(Rationals, 2)?, rng),
    })
}

/// Random bihomogeneous form of bidegree `(e, k)` in `(x0, x1; y0, y1)`.
fn random_biform<B: Sampler>(base: &B, rng: &mut ChaCha8Rng, e: u32, k: u32) -> MPoly<B::Frac> {
    loop {
        let mut terms = Vec::new();
        for a in 0..=e {
            for b in 0..=k {
                if rng.gen_ratio(3, 4) {
                    let m = Monomial::new(vec![(e - a) as u16, a as u16, (k - b) as u16, b as u16]);
                    terms.push((m, base.coeff(rng)));
                }
            }
        }
        let f = MPoly::from_terms(terms);
        if !f.is_zero() {
            return f;
        }
    }
}

fn projection_generic<B: Sampler>(base: &B, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let a = rng.gen_range(1..=2);
    let s1 = random_form(base, rng, 2, a, true);
    let e2 = rng.gen_range(0..=1);
    let k2 = rng.gen_range(1..=2);
    let e3 = rng.gen_range(0..=1);
    let k3 = 1;
    let m2 = random_biform(base, rng, e2, k2);
    let m3 = random_biform(base, rng, e3, k3);
    let tower = Tower::new(base.clone(), s1, a, (m2, e2, k2), (m3, e3, k3))?;
    Ok(Outcome::from_report(&verify_projection_formula(&tower)?))
}

pub fn projection(opts: &SuiteOptions) -> SuiteReport {
    run_suite("projection", opts, None, |i, rng| {
        if i % 2 == 0 {
            projection_generic(&Rationals, rng)
        } else {
            projection_generic(&PolyRing, rng)
        }
    })
}

pub const METRIC_D0_TOL: f64 = 1e-10;
pub const METRIC_D1_TOL: f64 = 1e-3;

pub fn metric_d0(opts: &SuiteOptions) -> SuiteReport {
    let tol = opts.tolerance.unwrap_or(METRIC_D0_TOL);
    run_suite("metric_d0", opts, Some(tol), |_, rng| {
        let n = rng.gen_range(1..=4);
        let mut fiber: UPoly<Rational> = random_monic(&Integers, rng, n);
        if n <= 2 && rng.gen_bool(0.5) {
            // repeated root
            fiber = fiber.mul(&UPoly::new(vec![int(small(rng, 3)), int(1)]));
        }
        let alg = FiniteAlgebra::companion(Rationals, &fiber)?;
        let (s, nm) = loop {
            let s: Vec<Rational> = random_coords(&Integers, rng, alg.rank());
            let nm = norm_element(&alg.element(s.clone())?)?;
            if !nm.is_zero() {
                break (s, nm);
            }
        };
        let fib = Fiber::from_rational(&fiber)?;
        let sp = UPoly::new(s.iter().map(|c| Gaussian::real(c.clone())).collect());
        let v = metric::metric_d0(&fib, &sp);
        let exact = nm.to_f64().unwrap_or(f64::NAN).abs().ln();
        Ok(Outcome::from_checks(&[MetricCheck::new("metric_d0", v.log_norm, exact, tol)]))
    })
}

fn random_hermitian(rng: &mut ChaCha8Rng, k: u32) -> Result<HermitianSection> {
    loop {
        let c: Vec<Gaussian> = (0..=k)
            .map(|_| Gaussian::new(int(small(rng, 3)), int(if rng.gen_bool(0.5) { small(rng, 3) } else { 0 })))
            .collect();
        if c.iter().any(|x| !x.is_zero()) {
            return HermitianSection::from_gaussian(k, c);
        }
    }
}

/// A pair whose zero sets stay apart, so both boundary terms are finite.
pub fn random_metric_pair(rng: &mut ChaCha8Rng) -> Result<(HermitianSection, HermitianSection)> {
    loop {
        let k1 = rng.gen_range(1..=3);
        let s1 = random_hermitian(rng, k1)?;
        let k2 = rng.gen_range(1..=2);
        let s2 = random_hermitian(rng, k2)?;
        let apart = |a: &HermitianSection, b: &HermitianSection| -> Result<bool> {
            Ok(a.zeros()?.iter().all(|p| {
                let z0 = Complex64::new(p.z0[0], p.z0[1]);
                let z1 = Complex64::new(p.z1[0], p.z1[1]);
                b.log_norm_at(z0, z1) > -6.0
            }))
        };
        if apart(&s1, &s2)? && apart(&s2, &s1)? {
            return Ok((s1, s2));
        }
    }
}

pub fn metric_d1(opts: &SuiteOptions) -> SuiteReport {
    let tol = opts.tolerance.unwrap_or(METRIC_D1_TOL);
    let grid = opts.grid;
    run_suite("metric_d1", opts, Some(tol), |_, rng| {
        let (s1, s2) = random_metric_pair(rng)?;
        let base = metric::metric_d1(&s1, &s2, grid)?.value.log_norm;
        let swapped = metric::metric_d1(&s2, &s1, grid)?.value.log_norm;
        let u1 = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let u2 = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let phased = metric::metric_d1(&s1.scaled(u1)?, &s2.scaled(u2)?, grid)?.value.log_norm;
        let lambda = Complex64::new(f64::from(rng.gen_range(2..=5)), f64::from(rng.gen_range(-2..=2)));
        let shifted = metric::metric_d1(&s1.scaled(lambda)?, &s2, grid)?.value.log_norm;
        let expected_shift = -f64::from(s2.twist()) * lambda.norm().ln();
        Ok(Outcome::from_checks(&[
            MetricCheck::new("order_independence", base, swapped, tol),
            MetricCheck::new("isometry_invariance", phased, base, tol),
            MetricCheck::new("scalar_shift", shifted - base, expected_shift, tol),
        ]))
    })
}

/// Node counts used by the convergence suite.
pub const CONVERGENCE_LADDER: [usize; 6] = [16, 32, 64, 128, 256, 512];

/// Errors, error estimates and the section text along the ladder.
type Ladder = (Vec<f64>, Vec<f64>, String);

/// Each instance must end below its coarsest error. The worst error and the
/// worst error estimate over the suite must not grow along the ladder; a
/// single instance oscillates with the position of its zeros in the grid.
pub fn convergence(opts: &SuiteOptions) -> SuiteReport {
    let count = opts.count.unwrap_or_else(|| default_count("convergence"));
    let ladders: Vec<Result<Ladder>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng("convergence", opts.seed, i);
            let k = rng.gen_range(1..=3);
            let s = random_hermitian(&mut rng, k)?;
            let exact = metric::mean_log_norm_exact(&s)?;
            let (errors, estimates) = CONVERGENCE_LADDER
                .iter()
                .map(|&n| {
                    let (value, estimate, _) = metric::mean_log_norm(&s, Grid { n_theta: n, n_phi: n });
                    ((value - exact).abs(), estimate)
                })
                .unzip();
            Ok((errors, estimates, format!("{:?}", s.coeffs())))
        })
        .collect();
    let mut worst_error = vec![0f64; CONVERGENCE_LADDER.len()];
    let mut worst_estimate = vec![0f64; CONVERGENCE_LADDER.len()];
    let mut outcomes = Vec::with_capacity(count);
    for ladder in ladders {
        outcomes.push(match ladder {
            Err(e) => error_outcome(e),
            Ok((errors, estimates, coefficients)) => {
                for (w, e) in worst_error.iter_mut().zip(&errors) {
                    *w = w.max(*e);
                }
                for (w, e) in worst_estimate.iter_mut().zip(&estimates) {
                    *w = w.max(*e);
                }
                let first = errors[0];
                let last = errors[errors.len() - 1];
                if last.is_finite() && last < first {
                    Outcome::Pass
                } else {
                    Outcome::Fail(json!({ "coefficients": coefficients, "errors": errors }))
                }
            }
        });
    }
    let mut report = collect_report("convergence", opts.seed, None, outcomes);
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] <= w[0]);
    if count > 0 && !(decreasing(&worst_error) && decreasing(&worst_estimate)) {
        report.failed += 1;
        report.verdict = "fail";
        report.failures.push(json!({
            "instance": "suite",
            "detail": { "worst_errors": worst_error, "worst_estimates": worst_estimate },
        }));
    }
    report
}

pub fn run_named(suite: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    Ok(match suite {
        "multiplicativity" => multiplicativity(opts),
        "scalar_law" => scalar_law(opts),
        "route_equivalence" => route_equivalence(opts),
        "smith" => smith(opts),
        "multiadditivity" => multiadditivity(opts),
        "symmetry" => symmetry(opts),
        "base_change" => base_change(opts),
        "pullback" => pullback(opts),
        "restriction" => restriction(opts),
        "isomorphism" => isomorphism(opts),
        "projection" => projection(opts),
        "metric_d0" => metric_d0(opts),
        "metric_d1" => metric_d1(opts),
        "convergence" => convergence(opts),
        "functorial" => SuiteReport::combine(
            suite,
            opts.seed,
            FUNCTORIAL.iter().map(|s| run_named(s, &parts(opts))).collect::<Result<_>>()?,
        ),
        "metric" => SuiteReport::combine(
            suite,
            opts.seed,
            ["metric_d0", "metric_d1", "convergence"]
                .iter()
                .map(|s| run_named(s, &parts(opts)))
                .collect::<Result<_>>()?,
        ),
        "all" => SuiteReport::combine(
            suite,
            opts.seed,
            SUITES[..14].iter().map(|s| run_named(s, &parts(opts))).collect::<Result<_>>()?,
        ),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite {other:?}; expected one of {SUITES:?}"
            )))
        }
    })
}

/// Composite suites run each part at its own default count.
fn parts(opts: &SuiteOptions) -> SuiteOptions {
    SuiteOptions {
        count: None,
        ..opts.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(count: usize) -> SuiteOptions {
        SuiteOptions {
            seed: 7,
            count: Some(count),
            grid: Grid::new(128, 128).unwrap(),
            tolerance: None,
        }
    }

    #[test]
    fn small_runs_pass() {
        for s in &SUITES[..14] {
            let r = run_named(s, &opts(4)).unwrap();
            assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
            assert_eq!(r.instances, 4);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_named("route_equivalence", &opts(6)).unwrap()).unwrap();
        let b = serde_json::to_string(&run_named("route_equivalence", &opts(6)).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rebase_preserves_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alg = FiniteAlgebra::companion(Rationals, &UPoly::new(vec![int(2), int(-1), int(0), int(1)])).unwrap();
        let (p, q) = unimodular_pair(&mut rng, 3, 10);
        assert_eq!(p.mul(&q), Matrix::identity(3));
        let re = rebase(&alg, &p, &q).unwrap();
        // the element with old coordinates p e_0 is new e_0
        let old = alg.element((0..3).map(|i| p[(i, 0)].clone()).collect()).unwrap();
        let new = re.element(vec![int(1), int(0), int(0)]).unwrap();
        assert_eq!(norm_element(&old).unwrap(), norm_element(&new).unwrap());
    }

    #[test]
    fn unknown_suite() {
        assert!(run_named("nope", &opts(1)).is_err());
    }
}
