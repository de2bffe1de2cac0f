//! Fubini-Study metrics on `O(k)` over `P^1(C)` and the induced metric on
//! pairings over a point base.
//!
//! `log ||<s1, s2>||` is evaluated as `k2 * Int log||s1|| w + sum_p m_p log||s2(p)||`
//! with `w` the normalized Fubini-Study area form and `p` running over the
//! zeros of `s1`. The reported `log_norm` is the negative of that quantity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Gaussian, MPoly, Monomial, Rational, Ring, UPoly};
use crate::base::Rationals;
use crate::error::{Error, Result};
use crate::family::BundleSection;
use crate::norm::{norm_element, FiniteAlgebra};

/// Distance below which a quadrature node counts as hitting a zero.
pub const NODE_HIT: f64 = 1e-9;
/// Residual tolerance for polished roots.
pub const ROOT_TOL: f64 = 1e-12;

/// A binary form `sum_j c_j x0^{k-j} x1^j` carrying the Fubini-Study metric
/// `||s(z)|| = |s(z)| / |z|^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSection {
    twist: u32,
    coeffs: Vec<Complex64>,
    exact: Option<Vec<Gaussian>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FiberPoint {
    pub z0: [f64; 2],
    pub z1: [f64; 2],
    pub multiplicity: usize,
}

impl FiberPoint {
    fn coords(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.z0[0], self.z0[1]),
            Complex64::new(self.z1[0], self.z1[1]),
        )
    }
}

impl HermitianSection {
    pub fn from_gaussian(twist: u32, coeffs: Vec<Gaussian>) -> Result<Self> {
        if coeffs.len() != twist as usize + 1 {
            return Err(Error::ArityMismatch {
                expected: twist as usize + 1,
                actual: coeffs.len(),
            });
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("zero section".into()));
        }
        Ok(HermitianSection {
            twist,
            coeffs: coeffs.iter().map(Gaussian::to_complex).collect(),
            exact: Some(coeffs),
        })
    }

    pub fn from_complex(twist: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != twist as usize + 1 {
            return Err(Error::ArityMismatch {
                expected: twist as usize + 1,
                actual: coeffs.len(),
            });
        }
        if coeffs.iter().all(|c| c.norm() == 0.0) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("section coefficients must be finite and not all zero".into()));
        }
        Ok(HermitianSection {
            twist,
            coeffs,
            exact: None,
        })
    }

    pub fn from_section(s: &BundleSection<Rationals>) -> Result<Self> {
        if s.family().dim() != 1 {
            return Err(Error::UnsupportedDimension(s.family().dim()));
        }
        let k = s.twist();
        let coeffs = (0..=k)
            .map(|j| Gaussian::real(s.form().coeff(&Monomial::new(vec![(k - j) as u16, j as u16]))))
            .collect();
        Self::from_gaussian(k, coeffs)
    }

    /// A form over `Q(i)` in `x0, x1` given as a polynomial in `x0, x1, i`.
    pub fn from_parsed(twist: u32, poly: &MPoly<Rational>, i_index: usize) -> Result<Self> {
        let mut coeffs = vec![Gaussian::zero(); twist as usize + 1];
        for (mono, c) in poly.terms() {
            let e0 = mono.exp(0);
            let e1 = mono.exp(1);
            let rest = mono.exps().iter().enumerate().any(|(v, &e)| v > 1 && v != i_index && e > 0);
            if rest || u32::from(e0 + e1) != twist {
                return Err(Error::Homogeneity {
                    declared: twist,
                    actual: poly.fmt_with(&["x0", "x1", "x2", "x3", "t", "y0", "y1", "i"]),
                });
            }
            let unit = Gaussian::i().pow(u64::from(mono.exp(i_index)));
            let j = e1 as usize;
            coeffs[j] = coeffs[j].add(&unit.mul(&Gaussian::real(c.clone())));
        }
        Self::from_gaussian(twist, coeffs)
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn exact(&self) -> Option<&[Gaussian]> {
        self.exact.as_deref()
    }

    pub fn eval(&self, z0: Complex64, z1: Complex64) -> Complex64 {
        let k = self.twist as i32;
        let mut acc = Complex64::new(0.0, 0.0);
        if z1.norm() <= z0.norm() {
            // Horner in w = z1 / z0, then multiply by z0^k
            let w = z1 / z0;
            for c in self.coeffs.iter().rev() {
                acc = acc * w + c;
            }
            acc * z0.powi(k)
        } else {
            let w = z0 / z1;
            for c in &self.coeffs {
                acc = acc * w + c;
            }
            acc * z1.powi(k)
        }
    }

    pub fn log_norm_at(&self, z0: Complex64, z1: Complex64) -> f64 {
        let r2 = z0.norm_sqr() + z1.norm_sqr();
        self.eval(z0, z1).norm().ln() - 0.5 * f64::from(self.twist) * r2.ln()
    }

    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        if lambda.norm() == 0.0 {
            return Err(Error::InvalidInput("scalar must be nonzero".into()));
        }
        Ok(HermitianSection {
            twist: self.twist,
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
            exact: None,
        })
    }

    pub fn scaled_exact(&self, lambda: &Gaussian) -> Result<Self> {
        match &self.exact {
            Some(ex) => Self::from_gaussian(self.twist, ex.iter().map(|c| c.mul(lambda)).collect()),
            None => self.scaled(lambda.to_complex()),
        }
    }

    /// Zeros on `P^1` with multiplicities, as unit vectors.
    pub fn zeros(&self) -> Result<Vec<FiberPoint>> {
        let k = self.twist as usize;
        let at_infinity = self.coeffs.iter().take_while(|c| c.norm() == 0.0).count();
        let mut out = Vec::new();
        if at_infinity > 0 {
            out.push(FiberPoint {
                z0: [1.0, 0.0],
                z1: [0.0, 0.0],
                multiplicity: at_infinity,
            });
        }
        // s(x, 1) = sum_j c_j x^{k-j}, low-to-high coefficient list
        let finite: Vec<(Complex64, usize)> = match &self.exact {
            Some(ex) => {
                let p = UPoly::new(ex.iter().rev().cloned().collect());
                roots_exact(&p)?
            }
            None => {
                let low: Vec<Complex64> = self.coeffs[at_infinity..].iter().rev().copied().collect();
                roots_clustered(&low)?
            }
        };
        debug_assert_eq!(finite.iter().map(|r| r.1).sum::<usize>() + at_infinity, k);
        for (x, m) in finite {
            let r = (x.norm_sqr() + 1.0).sqrt();
            let z0 = x / r;
            out.push(FiberPoint {
                // adding 0.0 turns -0.0 into 0.0 in the printed output
                z0: [z0.re + 0.0, z0.im + 0.0],
                z1: [1.0 / r, 0.0],
                multiplicity: m,
            });
        }
        Ok(out)
    }

    /// Leading coefficient of the factorization `c * prod (x0 - a_j x1) * x1^m`.
    fn factor_constant(&self) -> Complex64 {
        self.coeffs
            .iter()
            .copied()
            .find(|c| c.norm() != 0.0)
            .unwrap_or_default()
    }
}

/// `Int log||s|| w` in closed form: `log|c| + sum_j (log(1 + |a_j|^2)/2 - 1/2)`
/// over the zeros `[a_j : 1]`, and `-1/2` for each zero at infinity.
pub fn mean_log_norm_exact(s: &HermitianSection) -> Result<f64> {
    let mut acc = s.factor_constant().norm().ln();
    for p in s.zeros()? {
        let (z0, z1) = p.coords();
        let m = p.multiplicity as f64;
        if z1.norm() == 0.0 {
            acc -= 0.5 * m;
        } else {
            let a = z0 / z1;
            acc += m * (0.5 * (1.0 + a.norm_sqr()).ln() - 0.5);
        }
    }
    Ok(acc)
}

fn companion_roots(low: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = low.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = low[n];
    if n == 1 {
        return Ok(vec![-low[0] / lc]);
    }
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -low[i] / lc;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, 1e-15, 100_000)
        .ok_or_else(|| Error::SingularInput("eigenvalue iteration did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::SingularInput("eigenvalue iteration did not converge".into()))?;
    Ok(ev.iter().map(|&x| polish(low, x)).collect())
}

fn horner(low: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in low.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

fn polish(low: &[Complex64], mut x: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp) = horner(low, x);
        if p.norm() <= ROOT_TOL || dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        if step.norm() <= f64::EPSILON * (1.0 + x.norm()) {
            break;
        }
    }
    x
}

/// Roots with multiplicity of an exact polynomial, using its square-free
/// decomposition.
fn roots_exact(p: &UPoly<Gaussian>) -> Result<Vec<(Complex64, usize)>> {
    let mut out = Vec::new();
    for (g, m) in p.squarefree_decomposition() {
        let low: Vec<Complex64> = g.coeffs().iter().map(Gaussian::to_complex).collect();
        for r in companion_roots(&low)? {
            out.push((r, m));
        }
    }
    Ok(out)
}

/// Roots of a float polynomial, merging numerically coincident ones.
fn roots_clustered(low: &[Complex64]) -> Result<Vec<(Complex64, usize)>> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for r in companion_roots(low)? {
        match out.iter_mut().find(|(c, _)| (*c - r).norm() <= 1e-6 * (1.0 + r.norm())) {
            Some(entry) => {
                let m = entry.1 as f64;
                entry.0 = (entry.0 * m + r) / (m + 1.0);
                entry.1 += 1;
            }
            None => out.push((r, 1)),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricValue {
    /// `f64::NEG_INFINITY` (serialized as `null`) when `degenerate`.
    pub log_norm: f64,
    pub abs_error_estimate: f64,
    pub quadrature_nodes: usize,
    pub degenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            n_theta: 512,
            n_phi: 512,
        }
    }
}

impl Grid {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 2 {
            return Err(Error::InvalidInput("quadrature needs at least 2 nodes per direction".into()));
        }
        Ok(Grid { n_theta, n_phi })
    }

    pub fn nodes(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn halved(&self) -> Grid {
        Grid {
            n_theta: (self.n_theta / 2).max(1),
            n_phi: (self.n_phi / 2).max(1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: f64,
    pub jittered_nodes: usize,
}

fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Midpoint rule for `Int_{P^1} log||s|| w` on the sphere `[cos(a/2) : sin(a/2) e^{ib}]`
/// with measure `sin a da db / (4 pi)`.
pub fn integrate_log_norm(s: &HermitianSection, grid: Grid) -> Quadrature {
    use std::f64::consts::PI;
    let ht = PI / grid.n_theta as f64;
    let hp = 2.0 * PI / grid.n_phi as f64;
    let scale = s.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let rows: Vec<(f64, usize)> = (0..grid.n_theta)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::with_capacity(grid.n_phi);
            let mut jit = 0;
            for j in 0..grid.n_phi {
                let mut theta = (i as f64 + 0.5) * ht;
                let mut phi = (j as f64 + 0.5) * hp;
                let point = |theta: f64, phi: f64| {
                    (
                        Complex64::new((theta / 2.0).cos(), 0.0),
                        Complex64::from_polar((theta / 2.0).sin(), phi),
                    )
                };
                let (mut z0, mut z1) = point(theta, phi);
                if s.eval(z0, z1).norm() <= NODE_HIT * scale {
                    // move the node to its cell corner; the weight keeps the cell area
                    theta += 0.5 * ht;
                    phi += 0.5 * hp;
                    (z0, z1) = point(theta, phi);
                    jit += 1;
                }
                let w = ((i as f64 + 0.5) * ht).sin();
                row.push(s.eval(z0, z1).norm().ln() * w);
            }
            (pairwise_sum(&row), jit)
        })
        .collect();
    let sums: Vec<f64> = rows.iter().map(|r| r.0).collect();
    Quadrature {
        value: pairwise_sum(&sums) * ht * hp / (4.0 * PI),
        jittered_nodes: rows.iter().map(|r| r.1).sum(),
    }
}

/// `Int log||s|| w` with the difference to the half-resolution grid as error
/// estimate.
pub fn mean_log_norm(s: &HermitianSection, grid: Grid) -> (f64, f64, usize) {
    let fine = integrate_log_norm(s, grid);
    let coarse = integrate_log_norm(s, grid.halved());
    (fine.value, (fine.value - coarse.value).abs(), fine.jittered_nodes)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingMetric {
    #[serde(flatten)]
    pub value: MetricValue,
    /// `log ||<s1, s2>||` of the pairing section itself, `-log_norm`.
    pub section_log_norm: f64,
    pub integral: f64,
    pub boundary: f64,
    pub zeros: Vec<FiberPoint>,
    pub jittered_nodes: usize,
}

/// Metric on `<s1, s2>` for `P^1` over a point.
pub fn metric_d1(s1: &HermitianSection, s2: &HermitianSection, grid: Grid) -> Result<PairingMetric> {
    let (integral, err, jittered) = mean_log_norm(s1, grid);
    let zeros = s1.zeros()?;
    let mut boundary = 0.0;
    for p in &zeros {
        let (z0, z1) = p.coords();
        boundary += p.multiplicity as f64 * s2.log_norm_at(z0, z1);
    }
    let k2 = f64::from(s2.twist);
    let section = k2 * integral + boundary;
    let degenerate = !boundary.is_finite();
    Ok(PairingMetric {
        value: MetricValue {
            log_norm: if degenerate { f64::NEG_INFINITY } else { -section },
            abs_error_estimate: k2 * err + ROOT_TOL * zeros.len() as f64,
            quadrature_nodes: grid.nodes(),
            degenerate,
        },
        section_log_norm: if degenerate { f64::NEG_INFINITY } else { section },
        integral,
        boundary,
        zeros,
        jittered_nodes: jittered,
    })
}

/// Points of `Spec C[x]/(p)` with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiber {
    points: Vec<(Complex64, usize)>,
}

impl Fiber {
    pub fn from_poly(p: &UPoly<Gaussian>) -> Result<Self> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidAlgebra("fiber polynomial must have positive degree".into()));
        }
        Ok(Fiber {
            points: roots_exact(p)?,
        })
    }

    pub fn from_rational(p: &UPoly<Rational>) -> Result<Self> {
        Self::from_poly(&p.map(|c| Gaussian::real(c.clone())))
    }

    pub fn degree(&self) -> usize {
        self.points.iter().map(|p| p.1).sum()
    }

    pub fn points(&self) -> &[(Complex64, usize)] {
        &self.points
    }
}

/// `log ||Nm(s)|| = sum_p m_p log|s(p)|` with `s` a polynomial in the fiber
/// coordinate.
pub fn metric_d0(fiber: &Fiber, s: &UPoly<Gaussian>) -> MetricValue {
    let low: Vec<Complex64> = s.coeffs().iter().map(Gaussian::to_complex).collect();
    let mut acc = 0.0;
    let mut err = 0.0;
    for &(x, m) in &fiber.points {
        let (v, dv) = horner(&low, x);
        acc += m as f64 * v.norm().ln();
        err += m as f64 * ROOT_TOL * (1.0 + x.norm()) * dv.norm() / v.norm().max(f64::MIN_POSITIVE);
    }
    let degenerate = !acc.is_finite();
    MetricValue {
        log_norm: if degenerate { f64::NEG_INFINITY } else { acc },
        abs_error_estimate: if degenerate { 0.0 } else { err },
        quadrature_nodes: 0,
        degenerate,
    }
}

/// `metric_d0` on a finite algebra over Q through the eigenvalues of the
/// multiplication matrix of `s`.
pub fn metric_d0_algebra(alg: &FiniteAlgebra<Rationals>, coords: &[Rational]) -> Result<MetricValue> {
    let elem = alg.element(coords.to_vec())?;
    if norm_element(&elem)?.is_zero() {
        return Ok(MetricValue {
            log_norm: f64::NEG_INFINITY,
            abs_error_estimate: 0.0,
            quadrature_nodes: 0,
            degenerate: true,
        });
    }
    let m = elem.multiplication_matrix();
    let n = alg.rank();
    let mut cm = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            cm[(i, j)] = Gaussian::real(m[(i, j)].clone()).to_complex();
        }
    }
    let schur = nalgebra::linalg::Schur::try_new(cm, 1e-15, 100_000)
        .ok_or_else(|| Error::SingularInput("eigenvalue iteration did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::SingularInput("eigenvalue iteration did not converge".into()))?;
    let log_norm = ev.iter().map(|e| e.norm().ln()).sum();
    Ok(MetricValue {
        log_norm,
        abs_error_estimate: ROOT_TOL * n as f64,
        quadrature_nodes: 0,
        degenerate: false,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricCheck {
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl MetricCheck {
    pub fn new(check: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let difference = (lhs - rhs).abs();
        MetricCheck {
            check: check.to_string(),
            lhs,
            rhs,
            difference,
            tolerance,
            passed: difference < tolerance,
        }
    }
}

/// Scaling each slot by a unit-modulus scalar leaves the metric unchanged.
pub fn verify_isometry_invariance(
    s1: &HermitianSection,
    s2: &HermitianSection,
    phases: [Complex64; 2],
    grid: Grid,
    tolerance: f64,
) -> Result<MetricCheck> {
    if phases.iter().any(|u| (u.norm() - 1.0).abs() > 1e-12) {
        return Err(Error::InvalidInput("phases must have modulus 1".into()));
    }
    let v = metric_d1(s1, s2, grid)?.value.log_norm;
    let w = metric_d1(&s1.scaled(phases[0])?, &s2.scaled(phases[1])?, grid)?.value.log_norm;
    Ok(MetricCheck::new("isometry_invariance", w, v, tolerance))
}

/// `metric_d1(s1, s2) = metric_d1(s2, s1)`.
pub fn verify_order_independence(
    s1: &HermitianSection,
    s2: &HermitianSection,
    grid: Grid,
    tolerance: f64,
) -> Result<MetricCheck> {
    let a = metric_d1(s1, s2, grid)?.value.log_norm;
    let b = metric_d1(s2, s1, grid)?.value.log_norm;
    Ok(MetricCheck::new("order_independence", a, b, tolerance))
}

/// `metric_d1(lambda s1, s2) - metric_d1(s1, s2) = -k2 log|lambda|`.
pub fn verify_scalar_shift(
    s1: &HermitianSection,
    s2: &HermitianSection,
    lambda: Complex64,
    grid: Grid,
    tolerance: f64,
) -> Result<MetricCheck> {
    let a = metric_d1(s1, s2, grid)?.value.log_norm;
    let b = metric_d1(&s1.scaled(lambda)?, s2, grid)?.value.log_norm;
    let expected = -f64::from(s2.twist) * lambda.norm().ln();
    Ok(MetricCheck::new("scalar_shift", b - a, expected, tolerance))
}

/// `log ||Nm(f^* m)|| = delta log|m|`.
pub fn verify_pullback_metric_d0(fiber: &Fiber, m: &Gaussian, tolerance: f64) -> Result<MetricCheck> {
    if m.is_zero() {
        return Err(Error::InvalidInput("m must be nonzero".into()));
    }
    let v = metric_d0(fiber, &UPoly::constant(m.clone()));
    let expected = fiber.degree() as f64 * m.to_complex().norm().ln();
    Ok(MetricCheck::new("pullback_metric", v.log_norm, expected, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::new(int(re), int(im))
    }

    fn hs(k: u32, c: &[(i64, i64)]) -> HermitianSection {
        HermitianSection::from_gaussian(k, c.iter().map(|&(a, b)| g(a, b)).collect()).unwrap()
    }

    fn upoly(c: &[(i64, i64)]) -> UPoly<Gaussian> {
        UPoly::new(c.iter().map(|&(a, b)| g(a, b)).collect())
    }

    #[test]
    fn d0_examples() {
        let f = Fiber::from_poly(&upoly(&[(-2, 0), (0, 0), (1, 0)])).unwrap();
        let v = metric_d0(&f, &upoly(&[(0, 0), (1, 0)]));
        assert!((v.log_norm - 2f64.ln()).abs() < 1e-12);
        let f = Fiber::from_poly(&upoly(&[(-5, 0), (1, 0)])).unwrap();
        assert!((metric_d0(&f, &upoly(&[(1, 0), (1, 0)])).log_norm - 6f64.ln()).abs() < 1e-12);
        // roots +-i of x^2 + 1, evaluated directly
        let f = Fiber::from_poly(&upoly(&[(1, 0), (0, 0), (1, 0)])).unwrap();
        let s = upoly(&[(-1, 0), (1, 0)]);
        let direct = (Complex64::i() - 1.0).norm().ln() + (-Complex64::i() - 1.0).norm().ln();
        assert!((metric_d0(&f, &s).log_norm - direct).abs() < 1e-12);
        // double root keeps multiplicity
        let f = Fiber::from_poly(&upoly(&[(1, 0), (-2, 0), (1, 0)])).unwrap();
        assert_eq!(f.points().len(), 1);
        assert!((metric_d0(&f, &upoly(&[(2, 0)])).log_norm - 4f64.ln()).abs() < 1e-12);
        let deg = metric_d0(&f, &upoly(&[(-1, 0), (1, 0)]));
        assert!(deg.degenerate);
    }

    #[test]
    fn d0_algebra_route() {
        let alg = FiniteAlgebra::companion(Rationals, &UPoly::new(vec![int(-2), int(0), int(1)])).unwrap();
        let v = metric_d0_algebra(&alg, &[int(1), int(1)]).unwrap();
        assert!((v.log_norm - 1f64.ln()).abs() < 1e-12);
        assert!(metric_d0_algebra(&alg, &[int(0), int(0)]).unwrap().degenerate);
    }

    #[test]
    fn norm_is_scale_invariant() {
        let s = hs(2, &[(1, 0), (0, 2), (-3, 1)]);
        let z0 = Complex64::new(0.3, -1.2);
        let z1 = Complex64::new(2.0, 0.7);
        let lam = Complex64::new(-0.4, 3.1);
        assert!((s.log_norm_at(z0, z1) - s.log_norm_at(z0 * lam, z1 * lam)).abs() < 1e-12);
    }

    #[test]
    fn zeros_with_infinity() {
        // x0 x1^2 (x0 - 2 x1): double zero at [1:0], simple zeros at [0:1] and [2:1]
        let s = hs(4, &[(0, 0), (0, 0), (1, 0), (-2, 0), (0, 0)]);
        let z = s.zeros().unwrap();
        let total: usize = z.iter().map(|p| p.multiplicity).sum();
        assert_eq!(total, 4);
        assert_eq!(z[0].multiplicity, 2);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let s = hs(1, &[(1, 0), (0, 0)]);
        let (v, err, _) = mean_log_norm(&s, Grid::default());
        assert!((v + 0.5).abs() < 1e-3, "{v}");
        assert!(err < 1e-2);
        let s = hs(3, &[(2, 1), (0, -1), (3, 0), (1, 1)]);
        let (v, _, _) = mean_log_norm(&s, Grid::default());
        let exact = mean_log_norm_exact(&s).unwrap();
        assert!((v - exact).abs() < 1e-3, "{v} vs {exact}");
    }

    #[test]
    fn d1_example_and_laws() {
        let x0 = hs(1, &[(1, 0), (0, 0)]);
        let x1 = hs(1, &[(0, 0), (1, 0)]);
        let m = metric_d1(&x0, &x1, Grid::default()).unwrap();
        assert!((m.value.log_norm - 0.5).abs() < 5e-3);
        assert!((m.section_log_norm + 0.5).abs() < 5e-3);
        let grid = Grid::new(256, 256).unwrap();
        let s1 = hs(2, &[(1, 0), (1, 1), (-2, 0)]);
        let s2 = hs(1, &[(3, 0), (-1, 2)]);
        assert!(verify_order_independence(&s1, &s2, grid, 1e-3).unwrap().passed);
        let u = Complex64::from_polar(1.0, std::f64::consts::PI / 7.0);
        assert!(verify_isometry_invariance(&s1, &s2, [u, u], grid, 1e-3).unwrap().passed);
        let c = verify_scalar_shift(&s1, &s2, Complex64::new(2.0, 0.0), grid, 1e-3).unwrap();
        assert!(c.passed, "{c:?}");
    }

    #[test]
    fn pullback_metric_examples() {
        let f = Fiber::from_poly(&upoly(&[(-2, 0), (0, 0), (1, 0)])).unwrap();
        let c = verify_pullback_metric_d0(&f, &g(3, 0), 1e-10).unwrap();
        assert!((c.lhs - 9f64.ln()).abs() < 1e-12 && c.passed);
        let f = Fiber::from_poly(&upoly(&[(1, 0), (1, 0), (0, 0), (1, 0)])).unwrap();
        let c = verify_pullback_metric_d0(&f, &g(1, 1), 1e-10).unwrap();
        assert!((c.lhs - 3.0 * 2f64.sqrt().ln()).abs() < 1e-12);
    }

    #[test]
    fn parsed_gaussian_form() {
        let p = crate::arith::text::parse_poly("x0^2 + i*x0*x1 - (1 + 2*i)*x1^2", &["x0", "x1", "i"], 1, 1).unwrap();
        let s = HermitianSection::from_parsed(2, &p, 2).unwrap();
        assert_eq!(s.exact().unwrap()[1], g(0, 1));
        assert_eq!(s.exact().unwrap()[2], g(-1, -2));
    }
}
