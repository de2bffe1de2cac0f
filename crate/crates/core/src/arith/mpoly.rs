//! Sparse multivariate polynomials over a field, lexicographic term order.

use std::collections::BTreeMap;
use std::fmt;

use super::ring::{Field, Ring};
use super::upoly::join_terms;

/// Exponent vector with trailing zeros trimmed; the derived `Ord` is lex
/// order on the zero-padded vectors (variable 0 is the most significant).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(mut exps: Vec<u16>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e <= other.exp(i))
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let n = other.0.len();
        Monomial::new((0..n).map(|i| other.exp(i) - self.exp(i)).collect())
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = names.get(i).map(|s| s.to_string()).unwrap_or(format!("x{i}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<K> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> MPoly<K> {
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut map: BTreeMap<Monomial, K> = BTreeMap::new();
        for (m, c) in terms {
            let entry = map.entry(m).or_insert_with(K::zero);
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        MPoly { terms: map }
    }

    pub fn constant(c: K) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn var(i: usize) -> Self {
        Self::from_terms([(Monomial::var(i), K::one())])
    }

    pub fn term(c: K, m: Monomial) -> Self {
        Self::from_terms([(m, c)])
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> K {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(K::zero)
    }

    /// Highest variable index appearing, plus one.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.exps().len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(k)` if every term has total degree `k`; the zero polynomial is
    /// homogeneous of no particular degree and yields `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::one())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, c: &K, m: &Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))))
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> MPoly<L> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<L: Field, E>(
        &self,
        f: impl Fn(&K) -> Result<L, E>,
    ) -> Result<MPoly<L>, E> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            out.push((m.clone(), f(c)?));
        }
        Ok(MPoly::from_terms(out))
    }

    /// Substitutes polynomial `values[i]` for variable `i`.
    pub fn substitute(&self, values: &[MPoly<K>]) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&values[i].pow(u64::from(e)));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval(&self, point: &[K]) -> K {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(u64::from(e)));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial evaluation of variable `var` at `value`.
    pub fn eval_var(&self, var: usize, value: &K) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            let e = exps.get(var).copied().unwrap_or(0);
            if var < exps.len() {
                exps[var] = 0;
            }
            (Monomial::new(exps), c.mul(&value.pow(u64::from(e))))
        }))
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    /// Coefficient of `x_var^k` as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: usize, k: u16) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.exp(var) == k).map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            (Monomial::new(exps), c.clone())
        }))
    }

    /// Terms written lex-descending with the given variable names.
    pub fn fmt_with(&self, names: &[&str]) -> String {
        let terms: Vec<(K, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (c.clone(), m.fmt_with(names)))
            .collect();
        join_terms(&terms)
    }
}

impl<K: Field> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl<K: Field> Ring for MPoly<K> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(K::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(a) => {
                    *a = a.add(c);
                    if a.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MPoly { terms }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, K> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match terms.get_mut(&m) {
                    Some(a) => *a = a.add(&c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }
    fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        let Some((lm, lc)) = other.leading() else {
            return self.is_zero().then(Self::zero);
        };
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.mul(&lc_inv);
            rem = rem.sub(&other.mul_monomial(&qc, &qm));
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, Rational};

    fn x(i: usize) -> MPoly<Rational> {
        MPoly::var(i)
    }

    #[test]
    fn lex_order_and_display() {
        let f = x(0).pow(2).sub(&x(1).pow(2).scale(&int(2)));
        assert_eq!(f.fmt_with(&["x0", "x1"]), "x0^2 - 2*x1^2");
        assert_eq!(f.homogeneous_degree(), Some(2));
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(2));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.add(&MPoly::one()).exact_div(&a), None);
    }

    #[test]
    fn monomial_order_ignores_trailing_zeros() {
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::var(0));
        assert!(Monomial::var(0) > Monomial::new(vec![0, 5]));
    }
}
