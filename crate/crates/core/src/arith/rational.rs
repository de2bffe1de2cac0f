//! `Ring` impls for big integers and big rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{Euclidean, Field, FractionField, Ring};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return if Zero::is_zero(self) { Some(Zero::zero()) } else { None };
        }
        let (q, r) = Integer::div_rem(self, other);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Euclidean for BigInt {
    fn size(&self) -> u64 {
        // Saturating magnitude is enough for pivot selection.
        self.abs().to_u64().unwrap_or(u64::MAX)
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        let (q, r) = self.div_mod_floor(other);
        // Keep the remainder strictly smaller in absolute value.
        if r.abs() * 2 > other.abs() {
            (q + 1, r - other)
        } else {
            (q, r)
        }
    }
    fn normalize(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self, -<BigInt as One>::one())
        } else {
            (self.clone(), <BigInt as One>::one())
        }
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return if Zero::is_zero(self) { Some(Zero::zero()) } else { None };
        }
        Some(self / other)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

impl FractionField for BigRational {
    type Base = BigInt;

    fn numer(&self) -> BigInt {
        BigRational::numer(self).clone()
    }
    fn denom(&self) -> BigInt {
        BigRational::denom(self).clone()
    }
    fn from_base(x: &BigInt) -> Self {
        BigRational::from_integer(x.clone())
    }
    fn from_parts(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }
    fn common_denominator(dens: &[BigInt]) -> BigInt {
        dens.iter().fold(<BigInt as One>::one(), |acc, d| acc.lcm(d))
    }
}

/// Every nonzero rational is a unit, so Smith forms over Q collapse to 1s.
impl Euclidean for BigRational {
    fn size(&self) -> u64 {
        u64::from(!Zero::is_zero(self))
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        (self / other, Zero::zero())
    }
    fn normalize(&self) -> (Self, Self) {
        if Zero::is_zero(self) {
            (Zero::zero(), One::one())
        } else {
            (One::one(), self.clone())
        }
    }
}

/// Rational roots of an integer-coefficient polynomial (low to high), by the
/// rational root theorem. Intended for small certificates only.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let den_lcm = c
        .iter()
        .fold(<BigInt as One>::one(), |acc, x| acc.lcm(BigRational::denom(x)));
    let ints: Vec<BigInt> = c
        .iter()
        .map(|x| (x * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let mut shift = 0usize;
    while Zero::is_zero(&ints[shift]) {
        shift += 1;
    }
    if shift > 0 {
        roots.push(<Rational as Zero>::zero());
    }
    let ints = &ints[shift..];
    if ints.len() <= 1 {
        return roots;
    }
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let (Some(pd), Some(qd)) = (small_divisors(&constant), small_divisors(&lead)) else {
        return roots;
    };
    let eval = |p: &BigInt, q: &BigInt| -> bool {
        // sum ints[i] p^i q^(n-i) == 0
        let n = ints.len() - 1;
        let mut acc = <BigInt as Zero>::zero();
        for (i, a) in ints.iter().enumerate() {
            acc += a * num_traits::pow(p.clone(), i) * num_traits::pow(q.clone(), n - i);
        }
        Zero::is_zero(&acc)
    };
    for q in &qd {
        for p in &pd {
            for sign in [1i64, -1] {
                let ps = p * BigInt::from(sign);
                if One::is_one(&Integer::gcd(&ps, q)) && eval(&ps, q) {
                    let r = BigRational::new(ps.clone(), q.clone());
                    if !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Prime factors of |n| by trial division; `None` if n is too large to factor cheaply.
pub fn small_prime_factors(n: &BigInt) -> Option<Vec<u64>> {
    let mut m = n.abs().to_u64()?;
    if m > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    Some(out)
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
