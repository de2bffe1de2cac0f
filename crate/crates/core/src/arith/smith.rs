//! Smith normal form over Euclidean domains and the determinant unit
//! comparison for endomorphisms with isomorphic cokernels.

use super::matrix::Matrix;
use super::ring::Euclidean;
use crate::error::{Error, Result};

/// Invariant factors `q_1 | q_2 | ... | q_r` (normalized, nonzero) and the
/// number of zero diagonal entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithData<E> {
    pub invariants: Vec<E>,
    pub rank_deficiency: usize,
}

impl<E: Euclidean> SmithData<E> {
    pub fn chain_holds(&self) -> bool {
        self.invariants
            .windows(2)
            .all(|w| w[1].exact_div(&w[0]).is_some())
    }

    pub fn product(&self) -> E {
        if self.rank_deficiency > 0 {
            return E::zero();
        }
        self.invariants.iter().fold(E::one(), |acc, q| acc.mul(q))
    }

    /// Invariants that are not units, i.e. the cokernel's torsion structure.
    pub fn nontrivial(&self) -> Vec<E> {
        self.invariants
            .iter()
            .filter(|q| !q.is_unit())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form<E: Euclidean>(m: &Matrix<E>) -> SmithData<E> {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for t in 0..steps {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..rows {
            for j in t..cols {
                let s = a[(i, j)].size();
                if s > 0 && best.is_none_or(|(_, _, b)| s < b) {
                    best = Some((i, j, s));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, t)].div_rem(&a[(t, t)]);
                for j in t..cols {
                    let v = a[(i, j)].sub(&q.mul(&a[(t, j)]));
                    a[(i, j)] = v;
                }
                if !r.is_zero() {
                    a.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(t, j)].div_rem(&a[(t, t)]);
                for i in t..rows {
                    let v = a[(i, j)].sub(&q.mul(&a[(i, t)]));
                    a[(i, j)] = v;
                }
                if !r.is_zero() {
                    a.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Pivot must divide the remaining block; otherwise fold a row in.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| a[(i, j)].exact_div(&a[(t, t)]).is_none())
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[(t, j)].add(&a[(i, j)]);
                        a[(t, j)] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[(t, t)].normalize().0);
    }
    let rank = diag.len();
    SmithData {
        invariants: diag,
        rank_deficiency: rows.min(cols) - rank,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum UnitRatio<E> {
    /// `det(u) = unit * det(u')`.
    Unit(E),
    Incomparable,
}

/// Compares two endomorphisms with isomorphic cokernels: returns the unit
/// `a` with `det(u) = a * det(u')`. Unit invariants are ignored, so `u` and
/// `u'` may act on free modules of different ranks.
pub fn unit_ratio<E: Euclidean>(u: &Matrix<E>, u_prime: &Matrix<E>) -> Result<UnitRatio<E>> {
    if !u.is_square() || !u_prime.is_square() {
        return Err(Error::InvalidInput("unit_ratio needs square matrices".into()));
    }
    let d = u.det_bareiss();
    let d_prime = u_prime.det_bareiss();
    match (d.is_zero(), d_prime.is_zero()) {
        (true, true) => return Ok(UnitRatio::Unit(E::one())),
        (true, false) | (false, true) => {
            return Err(Error::SingularInput(format!(
                "det(u) = {d}, det(u') = {d_prime}"
            )))
        }
        _ => {}
    }
    let s = smith_normal_form(u).nontrivial();
    let s_prime = smith_normal_form(u_prime).nontrivial();
    if s != s_prime {
        return Ok(UnitRatio::Incomparable);
    }
    match d.exact_div(&d_prime) {
        Some(a) if a.is_unit() => Ok(UnitRatio::Unit(a)),
        _ => Ok(UnitRatio::Incomparable),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, Rational};
    use crate::arith::upoly::UPoly;
    use crate::arith::ring::Ring;
    use num_bigint::BigInt;

    fn z(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn zs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_two_three() {
        let s = smith_normal_form(&z(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariants, zs(&[1, 6]));
        assert!(s.chain_holds());
    }

    #[test]
    fn identity_and_singular() {
        let s = smith_normal_form(&Matrix::<BigInt>::identity(4));
        assert_eq!(s.invariants, zs(&[1, 1, 1, 1]));
        let s = smith_normal_form(&z(&[&[2, 4], &[1, 2]]));
        assert_eq!(s.invariants, zs(&[1]));
        assert_eq!(s.rank_deficiency, 1);
    }

    #[test]
    fn polynomial_chain() {
        let t = UPoly::<Rational>::var();
        let m = Matrix::diagonal(&[t.clone(), t.mul(&t)]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariants, vec![t.clone(), t.mul(&t)]);
        // diag(t^2, t) reorders
        let s = smith_normal_form(&Matrix::diagonal(&[t.mul(&t), t.clone()]));
        assert_eq!(s.invariants, vec![t.clone(), t.mul(&t)]);
        // diag(t, t+1) -> (1, t(t+1))
        let t1 = t.add(&UPoly::one());
        let s = smith_normal_form(&Matrix::diagonal(&[t.clone(), t1.clone()]));
        assert_eq!(s.invariants, vec![UPoly::one(), t.mul(&t1)]);
    }

    #[test]
    fn rational_field_case() {
        let m = Matrix::diagonal(&[int(2), int(3)]);
        assert_eq!(smith_normal_form(&m).invariants, vec![int(1), int(1)]);
    }

    #[test]
    fn unit_ratio_cases() {
        assert!(matches!(
            unit_ratio(&z(&[&[1, 0], &[0, 6]]), &z(&[&[2, 0], &[0, 3]])).unwrap(),
            UnitRatio::Unit(a) if a == BigInt::from(1)
        ));
        assert_eq!(
            unit_ratio(&z(&[&[2, 0], &[0, 2]]), &z(&[&[1, 0], &[0, 4]])).unwrap(),
            UnitRatio::Incomparable
        );
        assert!(unit_ratio(&z(&[&[1, 0], &[0, 0]]), &z(&[&[1, 0], &[0, 1]])).is_err());
        assert_eq!(
            unit_ratio(&z(&[&[0]]), &z(&[&[0, 0], &[0, 0]])).unwrap(),
            UnitRatio::Unit(BigInt::from(1))
        );
    }
}
