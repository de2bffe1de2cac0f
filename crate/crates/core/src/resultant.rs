//! Resultants of homogeneous forms: Sylvester for two binary forms and the
//! Macaulay quotient formula for `n + 1` forms in `n + 1` variables.
//!
//! Both are normalized so that `Res(x_0^{d_0}, ..., x_n^{d_n}) = 1`.

use crate::arith::{FractionField, MPoly, Matrix, Monomial, Ring};
use crate::error::{Error, Result};

/// Coefficients of a binary form of formal degree `k` in `x0, x1`, listed
/// from `x0^k` down to `x1^k`.
pub fn binary_coeffs<K: FractionField>(form: &MPoly<K>, k: u32) -> Vec<K> {
    (0..=k)
        .map(|j| form.coeff(&Monomial::new(vec![(k - j) as u16, j as u16])))
        .collect()
}

/// Sylvester matrix of two coefficient lists (highest power of `x0` first):
/// `k2` shifted rows of `f` followed by `k1` shifted rows of `g`.
pub fn sylvester_matrix<R: Ring>(f: &[R], g: &[R]) -> Matrix<R> {
    let k1 = f.len() - 1;
    let k2 = g.len() - 1;
    let n = k1 + k2;
    let mut m = Matrix::zeros(n, n);
    for r in 0..k2 {
        for (j, c) in f.iter().enumerate() {
            m[(r, r + j)] = c.clone();
        }
    }
    for r in 0..k1 {
        for (j, c) in g.iter().enumerate() {
            m[(k2 + r, r + j)] = c.clone();
        }
    }
    m
}

pub fn sylvester<K: FractionField>(f: &MPoly<K>, k1: u32, g: &MPoly<K>, k2: u32) -> K {
    sylvester_matrix(&binary_coeffs(f, k1), &binary_coeffs(g, k2)).det_fraction_free()
}

/// All monomials of total degree `deg` in `nvars` variables, lex-descending.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u16>, left: u32, remaining: usize, out: &mut Vec<Monomial>) {
        if remaining == 1 {
            prefix.push(left as u16);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e as u16);
            rec(prefix, left - e, remaining - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(&mut Vec::new(), deg, nvars, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct MacaulayValue<K> {
    pub value: K,
    /// Integer unimodular substitution `x -> U x` applied when the extraneous
    /// minor was singular; the resultant is invariant under it.
    pub change: Option<Vec<Vec<i64>>>,
    pub matrix_size: usize,
}

/// Resultant of `n + 1` forms (form, degree) in `n + 1` variables, each of
/// positive degree.
pub fn macaulay<K: FractionField>(forms: &[(MPoly<K>, u32)]) -> Result<MacaulayValue<K>> {
    let n = forms.len();
    if n == 0 {
        return Err(Error::InvalidInput("no forms".into()));
    }
    if forms.iter().any(|(_, d)| *d == 0) {
        return Err(Error::InvalidInput("Macaulay resultant needs positive degrees".into()));
    }
    if let Some((v, size)) = macaulay_quotient(forms) {
        return Ok(MacaulayValue {
            value: v,
            change: None,
            matrix_size: size,
        });
    }
    for trial in 0..32 {
        let u = unimodular(n, trial);
        let subs: Vec<MPoly<K>> = (0..n)
            .map(|j| {
                let mut acc = MPoly::zero();
                for (k, &c) in u[j].iter().enumerate() {
                    if c != 0 {
                        acc = acc.add(&MPoly::var(k).scale(&K::from_i64(c)));
                    }
                }
                acc
            })
            .collect();
        let changed: Vec<(MPoly<K>, u32)> = forms
            .iter()
            .map(|(f, d)| (f.substitute(&subs), *d))
            .collect();
        if let Some((v, size)) = macaulay_quotient(&changed) {
            return Ok(MacaulayValue {
                value: v,
                change: Some(u),
                matrix_size: size,
            });
        }
    }
    Err(Error::SingularInput(
        "every tried coordinate change leaves the extraneous minor singular".into(),
    ))
}

/// `det M / det M'`, or `None` when the extraneous minor `M'` is singular.
fn macaulay_quotient<K: FractionField>(forms: &[(MPoly<K>, u32)]) -> Option<(K, usize)> {
    let n = forms.len();
    let degs: Vec<u32> = forms.iter().map(|(_, d)| *d).collect();
    let big_d: u32 = degs.iter().map(|d| d - 1).sum::<u32>() + 1;
    let monos = monomials_of_degree(n, big_d);
    let index: std::collections::HashMap<&Monomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let size = monos.len();
    let mut m: Matrix<K> = Matrix::zeros(size, size);
    let mut extraneous = Vec::new();
    for (r, alpha) in monos.iter().enumerate() {
        let divisible: Vec<usize> = (0..n)
            .filter(|&i| u32::from(alpha.exp(i)) >= degs[i])
            .collect();
        let i = divisible[0];
        if divisible.len() > 1 {
            extraneous.push(r);
        }
        let mut q = alpha.exps().to_vec();
        q.resize(n, 0);
        q[i] -= degs[i] as u16;
        let shift = Monomial::new(q);
        for (mono, c) in forms[i].0.terms() {
            let col = index[&shift.mul(mono)];
            m[(r, col)] = c.clone();
        }
    }
    let minor = m.select(&extraneous, &extraneous).det_fraction_free();
    if minor.is_zero() {
        return None;
    }
    let full = m.det_fraction_free();
    Some((full.exact_div(&minor)?, size))
}

/// A deterministic integer matrix `L * U` with unit triangular factors.
fn unimodular(n: usize, trial: usize) -> Vec<Vec<i64>> {
    let entry = |a: usize, b: usize, salt: usize| -> i64 {
        (((trial + 1) * (3 * a + 5 * b + salt) + trial / 3) % 5) as i64 - 2
    };
    let mut l = vec![vec![0i64; n]; n];
    let mut u = vec![vec![0i64; n]; n];
    for a in 0..n {
        l[a][a] = 1;
        u[a][a] = 1;
        for b in 0..a {
            l[a][b] = entry(a, b, 1);
        }
        for b in a + 1..n {
            u[a][b] = entry(a, b, 2);
        }
    }
    let mut out = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[a][b] = (0..n).map(|k| l[a][k] * u[k][b]).sum();
        }
    }
    out
}

/// Resultant of `n + 1` forms: Sylvester for two binary forms, Macaulay
/// otherwise.
pub fn resultant<K: FractionField>(forms: &[(MPoly<K>, u32)]) -> Result<K> {
    if forms.len() == 2 {
        return Ok(sylvester(&forms[0].0, forms[0].1, &forms[1].0, forms[1].1));
    }
    Ok(macaulay(forms)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, RatFunc, Rational};

    fn x(i: usize) -> MPoly<Rational> {
        MPoly::var(i)
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester(&x(0), 1, &x(1), 1), int(1));
        assert_eq!(sylvester(&x(1), 1, &x(0), 1), int(-1));
        // x0^2 - 2 x1^2 against x0 - 3 x1
        let f = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)).scale(&int(2)));
        let g = x(0).sub(&x(1).scale(&int(3)));
        assert_eq!(sylvester(&f, 2, &g, 1), int(7));
        // degree-zero form m gives m^k
        assert_eq!(sylvester(&f, 2, &MPoly::constant(int(3)), 0), int(9));
    }

    #[test]
    fn sylvester_over_qt() {
        let t = RatFunc::t();
        let x0 = MPoly::<RatFunc>::var(0);
        let x1 = MPoly::<RatFunc>::var(1);
        let f = x0.mul(&x0).sub(&x1.mul(&x1).scale(&t));
        let g = x0.sub(&x1);
        let r = sylvester(&f, 2, &g, 1);
        assert_eq!(r.to_string(), "1 - t");
    }

    #[test]
    fn monomial_listing() {
        let m = monomials_of_degree(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], Monomial::new(vec![2]));
        assert_eq!(m[5], Monomial::new(vec![0, 0, 2]));
    }

    #[test]
    fn macaulay_coordinate_system() {
        let forms = vec![(x(0), 1), (x(1), 1), (x(2), 1)];
        assert_eq!(macaulay(&forms).unwrap().value, int(1));
        let forms = vec![(x(0).pow(2), 2), (x(1).pow(3), 3), (x(2).pow(2), 2)];
        assert_eq!(macaulay(&forms).unwrap().value, int(1));
    }

    #[test]
    fn macaulay_linear_is_determinant() {
        // three linear forms: resultant is the coefficient determinant
        let l = |a: i64, b: i64, c: i64| {
            x(0).scale(&int(a)).add(&x(1).scale(&int(b))).add(&x(2).scale(&int(c)))
        };
        let forms = vec![(l(1, 2, 0), 1), (l(0, 1, 3), 1), (l(2, 0, 1), 1)];
        let det = Matrix::from_rows(vec![
            vec![int(1), int(2), int(0)],
            vec![int(0), int(1), int(3)],
            vec![int(2), int(0), int(1)],
        ])
        .det_cofactor();
        assert_eq!(macaulay(&forms).unwrap().value, det);
    }

    #[test]
    fn macaulay_agrees_with_sylvester_for_binary_forms() {
        let f = x(0).pow(2).sub(&x(1).pow(2).scale(&int(2)));
        let g = x(0).sub(&x(1).scale(&int(3)));
        let m = macaulay(&[(f.clone(), 2), (g.clone(), 1)]).unwrap().value;
        assert_eq!(m, sylvester(&f, 2, &g, 1));
    }

    #[test]
    fn macaulay_detects_common_zero() {
        // all vanish at [1:1:1]
        let f = x(0).sub(&x(1));
        let g = x(1).mul(&x(2)).sub(&x(0).pow(2));
        let h = x(2).sub(&x(0));
        let v = macaulay(&[(f, 1), (g, 2), (h, 1)]).unwrap().value;
        assert!(v.is_zero());
    }

    #[test]
    fn macaulay_product_of_linear_evaluations() {
        // Res(l1, l2, q) = q(p) * det-normalization, with p the point cut by l1, l2.
        // l1 = x0 - x2, l2 = x1 - 2 x2 meet at [1:2:1]; q = x0^2 + x1^2 - x2^2.
        let l1 = x(0).sub(&x(2));
        let l2 = x(1).sub(&x(2).scale(&int(2)));
        let q = x(0).pow(2).add(&x(1).pow(2)).sub(&x(2).pow(2));
        let v = macaulay(&[(l1, 1), (l2, 1), (q, 2)]).unwrap().value;
        // Poisson formula: the linear pair restricted to x2 = 0 is (x0, x1),
        // so the value is q(1, 2, 1).
        assert_eq!(v, int(4));
    }
}
