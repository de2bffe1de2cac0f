//! Algebraic structure traits shared by every exact type in the crate.

use std::fmt::{Debug, Display};

/// A commutative ring with exact (checked) division.
///
/// All implementors are integral domains, so `exact_div` is well defined
/// whenever the quotient exists.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `Some(q)` with `q * other == self`, or `None` if `other` does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// A field presented as fractions over a distinguished integral domain.
///
/// Fraction-free elimination clears denominators into `Base`, works there,
/// and maps the result back.
pub trait FractionField: Field {
    type Base: Ring;

    fn numer(&self) -> Self::Base;
    fn denom(&self) -> Self::Base;
    fn from_base(x: &Self::Base) -> Self;
    fn from_parts(num: &Self::Base, den: &Self::Base) -> Self;

    /// A common multiple of the given denominators. The default is the product;
    /// implementors with a gcd return the lcm.
    fn common_denominator(dens: &[Self::Base]) -> Self::Base {
        dens.iter()
            .fold(Self::Base::one(), |acc, d| acc.mul(d))
    }
}

/// A Euclidean domain with canonical unit normalization.
pub trait Euclidean: Ring {
    /// Size used for choosing pivots; zero only for the zero element.
    fn size(&self) -> u64;

    fn div_rem(&self, other: &Self) -> (Self, Self);

    /// Splits `self = unit * normal` with `normal` in canonical form
    /// (positive integer, monic polynomial). Returns `(normal, unit)`.
    fn normalize(&self) -> (Self, Self);

    fn is_unit(&self) -> bool {
        !self.is_zero() && self.normalize().0.is_one()
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.normalize().0
    }

    /// Bezout coefficients: `(g, x, y)` with `x*self + y*other = g`, `g` normalized.
    fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let (g, unit) = r0.normalize();
        let unit_inv = Self::one()
            .exact_div(&unit)
            .expect("normalization unit must be invertible");
        (g, s0.mul(&unit_inv), t0.mul(&unit_inv))
    }
}
