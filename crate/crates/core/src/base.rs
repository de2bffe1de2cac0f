//! Base rings `A` (the base scheme `S = Spec A`) and their fraction fields.
//!
//! Every supported base is a normal domain, so a fraction-field element that
//! is integral over `A` already lies in `A`; `contains` is the certificate
//! test used by the norm computations.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::rational::{fmt_rational, rational_roots, small_prime_factors};
use crate::arith::{Euclidean, Field, Frac, FractionField, MPoly, RatFunc, Rational, Ring, UPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseKind {
    Integers,
    Rationals,
    UnivariatePolyOverRationals,
    QuadricCone,
}

pub trait BaseRing: Clone + Debug + Default + Send + Sync + 'static {
    type Frac: FractionField;

    fn kind(&self) -> BaseKind;
    /// Selector as written in task files.
    fn name(&self) -> &'static str;
    fn contains(&self, x: &Self::Frac) -> bool;
    fn is_unit(&self, x: &Self::Frac) -> bool;
    /// Human-readable unit group, e.g. `{1, -1}`.
    fn unit_group(&self) -> &'static str;
    fn format(&self, x: &Self::Frac) -> String;

    /// The scalar `c * t^e`; bases without a parameter reject `e > 0`.
    fn param_term(&self, c: Rational, t_exp: u16) -> Result<Self::Frac>;

    fn from_rational(&self, q: Rational) -> Self::Frac {
        self.param_term(q, 0).expect("constants always embed")
    }
}

/// A base ring that is a principal ideal domain with an explicit Euclidean
/// model, so Smith forms and unit comparisons are available.
pub trait PidBase: BaseRing {
    type Elem: Euclidean;

    fn lower(&self, x: &Self::Frac) -> Option<Self::Elem>;
    fn lift(&self, e: &Self::Elem) -> Self::Frac;

    /// Closed points of `S` where the base-ring element `r` vanishes, as
    /// far as they can be listed cheaply.
    fn bad_fibers(&self, r: &Self::Elem) -> Vec<String>;
}

/// Base rings with a parameter `t` that can be specialized to a rational.
pub trait Specialize: BaseRing {
    fn specialize(&self, x: &Self::Frac, t0: &Rational) -> Option<Rational>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// `Q[t]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PolyRing;

/// The quadric cone `Q[a, b, c]/(ac - b^2)`, a normal but non-factorial
/// domain, embedded in its fraction field `Q(a, b)` via `c = b^2/a`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadricCone;

pub type ConeScalar = Frac<MPoly<Rational>>;

impl BaseRing for Integers {
    type Frac = Rational;

    fn kind(&self) -> BaseKind {
        BaseKind::Integers
    }
    fn name(&self) -> &'static str {
        "Z"
    }
    fn contains(&self, x: &Rational) -> bool {
        x.is_integer()
    }
    fn is_unit(&self, x: &Rational) -> bool {
        x.is_integer() && x.numer().abs() == BigInt::from(1)
    }
    fn unit_group(&self) -> &'static str {
        "{1, -1}"
    }
    fn format(&self, x: &Rational) -> String {
        crate::arith::rational::fmt_rational(x)
    }
    fn param_term(&self, c: Rational, t_exp: u16) -> Result<Rational> {
        if t_exp > 0 {
            return Err(Error::InvalidInput("parameter t is not available over Z".into()));
        }
        Ok(c)
    }
}

impl PidBase for Integers {
    type Elem = BigInt;

    fn lower(&self, x: &Rational) -> Option<BigInt> {
        x.is_integer().then(|| x.numer().clone())
    }
    fn lift(&self, e: &BigInt) -> Rational {
        Rational::from_integer(e.clone())
    }
    fn bad_fibers(&self, r: &BigInt) -> Vec<String> {
        if Ring::is_zero(r) {
            return vec!["all primes".into()];
        }
        match small_prime_factors(r) {
            Some(ps) => ps.iter().map(|p| format!("p = {p}")).collect(),
            None => vec![format!("primes dividing {r}")],
        }
    }
}

impl BaseRing for Rationals {
    type Frac = Rational;

    fn kind(&self) -> BaseKind {
        BaseKind::Rationals
    }
    fn name(&self) -> &'static str {
        "Q"
    }
    fn contains(&self, _x: &Rational) -> bool {
        true
    }
    fn is_unit(&self, x: &Rational) -> bool {
        !Ring::is_zero(x)
    }
    fn unit_group(&self) -> &'static str {
        "Q^*"
    }
    fn format(&self, x: &Rational) -> String {
        crate::arith::rational::fmt_rational(x)
    }
    fn param_term(&self, c: Rational, t_exp: u16) -> Result<Rational> {
        if t_exp > 0 {
            return Err(Error::InvalidInput("parameter t is not available over Q".into()));
        }
        Ok(c)
    }
}

impl PidBase for Rationals {
    type Elem = Rational;

    fn lower(&self, x: &Rational) -> Option<Rational> {
        Some(x.clone())
    }
    fn lift(&self, e: &Rational) -> Rational {
        e.clone()
    }
    fn bad_fibers(&self, r: &Rational) -> Vec<String> {
        if Ring::is_zero(r) {
            vec!["generic point".into()]
        } else {
            Vec::new()
        }
    }
}

impl BaseRing for PolyRing {
    type Frac = RatFunc;

    fn kind(&self) -> BaseKind {
        BaseKind::UnivariatePolyOverRationals
    }
    fn name(&self) -> &'static str {
        "Q[t]"
    }
    fn contains(&self, x: &RatFunc) -> bool {
        x.den().is_constant()
    }
    fn is_unit(&self, x: &RatFunc) -> bool {
        !x.is_zero() && x.num().is_constant() && x.den().is_constant()
    }
    fn unit_group(&self) -> &'static str {
        "Q^*"
    }
    fn format(&self, x: &RatFunc) -> String {
        x.to_string()
    }
    fn param_term(&self, c: Rational, t_exp: u16) -> Result<RatFunc> {
        Ok(RatFunc::from_ring(UPoly::monomial(c, t_exp as usize)))
    }
}

impl PidBase for PolyRing {
    type Elem = UPoly<Rational>;

    fn lower(&self, x: &RatFunc) -> Option<UPoly<Rational>> {
        x.as_ring()
    }
    fn lift(&self, e: &UPoly<Rational>) -> RatFunc {
        RatFunc::from_ring(e.clone())
    }
    fn bad_fibers(&self, r: &UPoly<Rational>) -> Vec<String> {
        if r.is_zero() {
            return vec!["every t".into()];
        }
        let roots = rational_roots(r.coeffs());
        let mut rest = r.clone();
        let mut out = Vec::new();
        for root in &roots {
            out.push(format!("t = {}", fmt_rational(root)));
            let lin = UPoly::new(vec![root.neg(), Rational::one()]);
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
            }
        }
        if rest.degree().is_some_and(|d| d > 0) {
            out.push(format!("roots of {}", rest.monic()));
        }
        out
    }
}

impl Specialize for PolyRing {
    fn specialize(&self, x: &RatFunc, t0: &Rational) -> Option<Rational> {
        x.eval_at(t0)
    }
}

impl QuadricCone {
    pub fn a(&self) -> ConeScalar {
        Frac::from_ring(MPoly::var(0))
    }

    pub fn b(&self) -> ConeScalar {
        Frac::from_ring(MPoly::var(1))
    }

    pub fn c(&self) -> ConeScalar {
        self.b().mul(&self.b()).div(&self.a())
    }

    /// Image in `Q[x, y]` under `a = x^2, b = x*y`; `None` when the image
    /// is not a polynomial.
    fn embed(&self, x: &ConeScalar) -> Option<MPoly<Rational>> {
        let sub = [
            MPoly::var(0).mul(&MPoly::var(0)),
            MPoly::var(0).mul(&MPoly::var(1)),
        ];
        let n = x.num().substitute(&sub);
        let d = x.den().substitute(&sub);
        n.exact_div(&d)
    }
}

impl BaseRing for QuadricCone {
    type Frac = ConeScalar;

    fn kind(&self) -> BaseKind {
        BaseKind::QuadricCone
    }
    fn name(&self) -> &'static str {
        "Q[a,b,c]/(a*c-b^2)"
    }
    /// `A` is the even-degree Veronese subring `Q[x^2, xy, y^2]` of `Q[x, y]`;
    /// the embedding is homogeneous of even degree, so polynomiality of the
    /// image is the whole test.
    fn contains(&self, x: &ConeScalar) -> bool {
        self.embed(x).is_some()
    }
    fn is_unit(&self, x: &ConeScalar) -> bool {
        !x.is_zero() && x.num().is_constant() && x.den().is_constant()
    }
    fn unit_group(&self) -> &'static str {
        "Q^*"
    }
    fn format(&self, x: &ConeScalar) -> String {
        let names = ["a", "b"];
        if x.den().is_one() {
            x.num().fmt_with(&names)
        } else {
            format!("({})/({})", x.num().fmt_with(&names), x.den().fmt_with(&names))
        }
    }
    fn param_term(&self, c: Rational, t_exp: u16) -> Result<ConeScalar> {
        if t_exp > 0 {
            return Err(Error::InvalidInput("parameter t is not available over the cone".into()));
        }
        Ok(Frac::from_ring(MPoly::constant(c)))
    }
}

/// Splits a scalar of `Q(t)` expressed as an `MPoly` in the single variable
/// at `index` into a fraction-field element.
pub fn scalar_from_poly<B: BaseRing>(base: &B, p: &MPoly<Rational>, index: usize) -> Result<B::Frac> {
    let mut acc = B::Frac::zero();
    for (m, c) in p.terms() {
        if m.exps().iter().enumerate().any(|(i, &e)| i != index && e > 0) {
            return Err(Error::InvalidInput(format!("scalar {p} involves a form variable")));
        }
        acc = acc.add(&base.param_term(c.clone(), m.exp(index))?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn integer_membership() {
        assert!(Integers.contains(&int(4)));
        assert!(!Integers.contains(&rat(1, 2)));
        assert!(Integers.is_unit(&int(-1)));
        assert!(!Integers.is_unit(&int(2)));
    }

    #[test]
    fn poly_membership() {
        let t = RatFunc::t();
        assert!(PolyRing.contains(&t.mul(&t)));
        assert!(!PolyRing.contains(&RatFunc::one().div(&t)));
        assert!(PolyRing.is_unit(&RatFunc::from_rational(rat(3, 2))));
        assert!(!PolyRing.is_unit(&t));
    }

    #[test]
    fn cone_membership() {
        let cone = QuadricCone;
        assert!(cone.contains(&cone.c()));
        assert!(cone.contains(&cone.a().mul(&cone.c()).sub(&cone.b().mul(&cone.b()))));
        // b/a = y/x is not in A
        assert!(!cone.contains(&cone.b().div(&cone.a())));
        // a^(1/2)-type elements are not representable; x*y/x^2... 1/a is not in A
        assert!(!cone.contains(&cone.a().inv()));
    }
}
