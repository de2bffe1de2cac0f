//! Fields of fractions over polynomial rings: Q(t) and Q(a, b).

use std::fmt;

use super::mpoly::MPoly;
use super::rational::Rational;
use super::ring::{Euclidean, Field, FractionField, Ring};
use super::upoly::UPoly;

/// How a numerator/denominator pair is brought to a reduced form.
pub trait Reduce: Ring {
    fn reduce(num: Self, den: Self) -> (Self, Self);
    fn lcm(a: &Self, b: &Self) -> Self {
        a.mul(b)
    }
}

impl Reduce for UPoly<Rational> {
    fn reduce(num: Self, den: Self) -> (Self, Self) {
        let g = Euclidean::gcd(&num, &den);
        let (mut n, mut d) = (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap());
        let lc = d.leading();
        if !lc.is_one() {
            let inv = lc.inv();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        (n, d)
    }
    fn lcm(a: &Self, b: &Self) -> Self {
        let g = Euclidean::gcd(a, b);
        a.mul(b).exact_div(&g).unwrap()
    }
}

/// No multivariate gcd: cancel only when the denominator divides the
/// numerator, and scale the denominator's leading coefficient to one.
impl Reduce for MPoly<Rational> {
    fn reduce(num: Self, den: Self) -> (Self, Self) {
        if let Some(q) = num.exact_div(&den) {
            return (q, Self::one());
        }
        let lc = den.leading_coeff();
        let inv = lc.inv();
        (num.scale(&inv), den.scale(&inv))
    }
}

#[derive(Clone, Debug)]
pub struct Frac<R> {
    num: R,
    den: R,
}

/// Rational functions in one parameter `t`.
pub type RatFunc = Frac<UPoly<Rational>>;

impl<R: Reduce> Frac<R> {
    pub fn new(num: R, den: R) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Frac {
                num,
                den: R::one(),
            };
        }
        let (num, den) = R::reduce(num, den);
        Frac { num, den }
    }

    pub fn from_ring(x: R) -> Self {
        Frac { num: x, den: R::one() }
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    /// The element as a ring element, if its denominator cancels.
    pub fn as_ring(&self) -> Option<R> {
        self.num.exact_div(&self.den)
    }
}

impl RatFunc {
    pub fn from_rational(q: Rational) -> Self {
        Self::from_ring(UPoly::constant(q))
    }

    pub fn t() -> Self {
        Self::from_ring(UPoly::var())
    }

    /// Value at `t = t0`; `None` at a pole.
    pub fn eval_at(&self, t0: &Rational) -> Option<Rational> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(t0).div(&d))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let p = self.as_ring()?;
        p.is_constant().then(|| p.coeff(0))
    }
}

impl<R: Reduce> PartialEq for Frac<R> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<R: Reduce> fmt::Display for Frac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |s: String| {
            if s.contains(' ') || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(
            f,
            "{}/{}",
            wrap(self.num.to_string()),
            wrap(self.den.to_string())
        )
    }
}

impl<R: Reduce> Ring for Frac<R> {
    fn zero() -> Self {
        Self::from_ring(R::zero())
    }
    fn one() -> Self {
        Self::from_ring(R::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::from_ring(R::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return self.is_zero().then(Self::zero);
        }
        Some(self.div(other))
    }
}

impl<R: Reduce> Field for Frac<R> {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl<R: Reduce> FractionField for Frac<R> {
    type Base = R;

    fn numer(&self) -> R {
        self.num.clone()
    }
    fn denom(&self) -> R {
        self.den.clone()
    }
    fn from_base(x: &R) -> Self {
        Self::from_ring(x.clone())
    }
    fn from_parts(num: &R, den: &R) -> Self {
        Self::new(num.clone(), den.clone())
    }
    fn common_denominator(dens: &[R]) -> R {
        dens.iter().fold(R::one(), |acc, d| R::lcm(&acc, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn t() -> RatFunc {
        RatFunc::t()
    }

    #[test]
    fn reduces_common_factors() {
        let one = RatFunc::one();
        let x = t().mul(&t()).sub(&one).div(&t().sub(&one));
        assert_eq!(x.as_ring().unwrap().to_string(), "1 + t");
        assert_eq!(x.den(), &UPoly::one());
    }

    #[test]
    fn evaluation_and_poles() {
        let x = RatFunc::one().div(&t().sub(&RatFunc::from_i64(4)));
        assert!(x.eval_at(&int(4)).is_none());
        assert_eq!(x.eval_at(&int(5)), Some(int(1)));
    }

    #[test]
    fn display() {
        let x = RatFunc::one().div(&t().sub(&RatFunc::one()));
        assert_eq!(x.to_string(), "1/(-1 + t)");
    }
}
