//! Dense univariate polynomials over a field.

use std::fmt;

use super::ring::{Euclidean, Field, Ring};

/// Coefficients low-to-high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * var^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![K::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn var() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&K::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> UPoly<L> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    /// Polynomial long division. Panics if `divisor` is zero.
    pub fn div_rem_poly(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(b));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Square-free decomposition (Yun, characteristic zero): returns `(g_i, i)`
    /// with `self = lc * prod g_i^i`, each `g_i` monic square-free and coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Euclidean::gcd(&f, &df);
        let mut b = f.div_rem_poly(&a0).0;
        let mut c = df.div_rem_poly(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = Euclidean::gcd(&b, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem_poly(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem_poly(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn fmt_with(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                (c.clone(), mono)
            })
            .collect::<Vec<_>>();
        join_terms(&terms)
    }
}

/// Joins `(coefficient, monomial)` pairs as `a - b*m + ...`, with parenthesised
/// compound coefficients. An empty monomial denotes the constant term.
pub(crate) fn join_terms<K: Ring>(terms: &[(K, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let (negative, body) = term_body(c, mono);
        match (i, negative) {
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false) => out.push_str(&body),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    out
}

fn is_compound(s: &str) -> bool {
    let inner = s.strip_prefix('-').unwrap_or(s);
    inner.contains(" + ") || inner.contains(" - ")
}

fn term_body<K: Ring>(c: &K, mono: &str) -> (bool, String) {
    if mono.is_empty() {
        let s = c.to_string();
        if !is_compound(&s) {
            if let Some(rest) = s.strip_prefix('-') {
                return (true, rest.to_string());
            }
            return (false, s);
        }
        return (false, format!("({s})"));
    }
    if c.is_one() {
        return (false, mono.to_string());
    }
    if c.neg().is_one() {
        return (true, mono.to_string());
    }
    let s = c.to_string();
    if is_compound(&s) {
        (false, format!("({s})*{mono}"))
    } else if let Some(rest) = s.strip_prefix('-') {
        (true, format!("{rest}*{mono}"))
    } else {
        (false, format!("{s}*{mono}"))
    }
}

impl<K: Field> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("t"))
    }
}

impl<K: Field> Ring for UPoly<K> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(K::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return self.is_zero().then(Self::zero);
        }
        let (q, r) = self.div_rem_poly(other);
        r.is_zero().then_some(q)
    }
}

impl<K: Field> Euclidean for UPoly<K> {
    fn size(&self) -> u64 {
        self.coeffs.len() as u64
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        self.div_rem_poly(other)
    }
    fn normalize(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::zero(), Self::one());
        }
        let lc = self.leading();
        (self.scale(&lc.inv()), Self::constant(lc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, Rational};

    fn p(c: &[i64]) -> UPoly<Rational> {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[1, -1]).to_string(), "1 - t");
        assert_eq!(p(&[0, 0, 3]).to_string(), "3*t^2");
        assert_eq!(p(&[-2, 0, 1]).to_string(), "-2 + t^2");
        assert_eq!(p(&[]).to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // t^2 - 1
        let b = p(&[-1, 1]); // t - 1
        assert_eq!(a.exact_div(&b), Some(p(&[1, 1])));
        assert_eq!(Euclidean::gcd(&a, &p(&[1, 2, 1])), p(&[1, 1]));
        assert!(p(&[1, 0, 1]).exact_div(&b).is_none());
    }

    #[test]
    fn yun_multiplicities() {
        // (t-1)^2 (t+2)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
    }
}
