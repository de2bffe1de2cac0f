//! Gaussian rationals Q(i), used for exact complex section coefficients.

use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::rational::{fmt_rational, Rational};
use super::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Gaussian {
            re,
            im: <Rational as Ring>::zero(),
        }
    }

    pub fn i() -> Self {
        Gaussian::new(<Rational as Ring>::zero(), <Rational as Ring>::one())
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = <Rational as Ring>::zero();
        match (self.re == zero, self.im == zero) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im == <Rational as Ring>::one() {
                    write!(f, "i")
                } else if self.im == -<Rational as Ring>::one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let im_abs = if self.im < zero { -self.im.clone() } else { self.im.clone() };
                let sign = if self.im < zero { "-" } else { "+" };
                if im_abs == <Rational as Ring>::one() {
                    write!(f, "{} {sign} i", fmt_rational(&self.re))
                } else {
                    write!(f, "{} {sign} {}*i", fmt_rational(&self.re), fmt_rational(&im_abs))
                }
            }
        }
    }
}

impl Ring for Gaussian {
    fn zero() -> Self {
        Gaussian::real(<Rational as Ring>::zero())
    }
    fn one() -> Self {
        Gaussian::real(<Rational as Ring>::one())
    }
    fn from_i64(n: i64) -> Self {
        Gaussian::real(Rational::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.re) && Ring::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Gaussian::new(-self.re.clone(), -self.im.clone())
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Ring::is_zero(o) {
            return Ring::is_zero(self).then(Self::zero);
        }
        Some(self.div(o))
    }
}

impl Field for Gaussian {
    fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!Ring::is_zero(&n), "inverse of zero");
        Gaussian::new(&self.re / &n, -&self.im / &n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn arithmetic() {
        let a = Gaussian::new(int(1), int(1));
        let b = Gaussian::new(int(1), int(-1));
        assert_eq!(a.mul(&b), Gaussian::from_i64(2));
        assert_eq!(a.div(&b), Gaussian::i());
        assert_eq!(a.to_string(), "1 + i");
        assert_eq!(b.to_string(), "1 - i");
    }
}
