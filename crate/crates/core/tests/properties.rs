use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use deligne::arith::{int, smith_normal_form, unit_ratio, Matrix, Rational, Ring, UnitRatio, UPoly};
use deligne::base::Rationals;
use deligne::family::{BundleSection, ProjectiveFamily, SectionSequence};
use deligne::norm::{norm_element, FiniteAlgebra};
use deligne::pairing::pairing_section;

fn matrix3() -> impl Strategy<Value = Matrix<BigInt>> {
    proptest::collection::vec(-20i64..=20, 9)
        .prop_map(|v| Matrix::from_fn(3, 3, |i, j| BigInt::from(v[3 * i + j])))
}

/// Elementary row operations `(target, source, factor)` and swaps.
fn unimodular3() -> impl Strategy<Value = Matrix<BigInt>> {
    proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3, any::<bool>()), 1..10).prop_map(|ops| {
        let mut u = Matrix::<BigInt>::identity(3);
        for (a, b, f, swap) in ops {
            if a == b {
                continue;
            }
            if swap {
                u.swap_rows(a, b);
            } else {
                for c in 0..3 {
                    let v = &u[(a, c)] + &u[(b, c)] * BigInt::from(f);
                    u[(a, c)] = v;
                }
            }
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn det_is_multiplicative(a in matrix3(), b in matrix3()) {
        prop_assert_eq!(a.mul(&b).det_bareiss(), a.det_bareiss() * b.det_bareiss());
        // cofactor expansion is an independent route
        prop_assert_eq!(a.det_bareiss(), a.det_cofactor());
    }

    #[test]
    fn smith_invariant_under_unimodular(a in matrix3(), p in unimodular3(), q in unimodular3()) {
        let b = p.mul(&a).mul(&q);
        let sa = smith_normal_form(&a);
        let sb = smith_normal_form(&b);
        prop_assert_eq!(&sa, &sb);
        prop_assert!(sa.chain_holds());
        prop_assert_eq!(sa.product(), a.det_bareiss().abs());
        if !a.det_bareiss().is_zero() {
            match unit_ratio(&b, &a).unwrap() {
                UnitRatio::Unit(u) => prop_assert_eq!(u.abs(), BigInt::from(1)),
                UnitRatio::Incomparable => prop_assert!(false, "equal cokernels reported incomparable"),
            }
        }
    }
}

fn linear_product(roots: &[i64]) -> String {
    roots
        .iter()
        .map(|r| format!("(x0 - ({r})*x1)"))
        .collect::<Vec<_>>()
        .join("*")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, ..ProptestConfig::default() })]

    /// For split forms the resultant is `prod (a_i - b_j)`.
    #[test]
    fn sylvester_matches_root_products(
        a in proptest::collection::vec(-4i64..=4, 1..4),
        b in proptest::collection::vec(-4i64..=4, 1..4),
    ) {
        let fam = ProjectiveFamily::new(Rationals, 1).unwrap();
        let s1 = BundleSection::parse(&fam, a.len() as u32, &linear_product(&a)).unwrap();
        let s2 = BundleSection::parse(&fam, b.len() as u32, &linear_product(&b)).unwrap();
        let seq = SectionSequence::new(&fam, vec![s1, s2]).unwrap();
        let expected: i64 = a.iter().flat_map(|x| b.iter().map(move |y| x - y)).product();
        prop_assert_eq!(pairing_section(&seq).unwrap().value, int(expected));
    }

    /// `Nm(f)` on `Q[x]/(prod (x - r_i))` is `prod f(r_i)`.
    #[test]
    fn norm_matches_evaluation_at_roots(
        roots in proptest::collection::vec(-3i64..=3, 1..5),
        f in proptest::collection::vec(-3i64..=3, 1..5),
    ) {
        let mut monic = UPoly::new(vec![int(1)]);
        for r in &roots {
            monic = monic.mul(&UPoly::new(vec![int(-r), int(1)]));
        }
        let alg = FiniteAlgebra::companion(Rationals, &monic).unwrap();
        let mut coords: Vec<Rational> = f.iter().map(|&c| int(c)).collect();
        coords.resize(alg.rank(), int(0));
        coords.truncate(alg.rank());
        let fp = UPoly::new(coords.clone());
        let expected = roots.iter().fold(int(1), |acc, r| acc.mul(&fp.eval(&int(*r))));
        prop_assert_eq!(norm_element(&alg.element(coords).unwrap()).unwrap(), expected);
    }
}

#[test]
fn p2_resultant_of_coordinate_forms() {
    let fam = ProjectiveFamily::new(Rationals, 2).unwrap();
    let seq = SectionSequence::new(
        &fam,
        vec![
            BundleSection::parse(&fam, 2, "x0^2").unwrap(),
            BundleSection::parse(&fam, 1, "x1").unwrap(),
            BundleSection::parse(&fam, 3, "x2^3").unwrap(),
        ],
    )
    .unwrap();
    assert_eq!(pairing_section(&seq).unwrap().value, int(1));
}

#[test]
fn p2_resultant_scales_by_degree_products() {
    // Res(a x0, b x1, c x2) = a b c
    let fam = ProjectiveFamily::new(Rationals, 2).unwrap();
    let seq = |f: &str, g: &str, h: &str, k: [u32; 3]| {
        SectionSequence::new(
            &fam,
            vec![
                BundleSection::parse(&fam, k[0], f).unwrap(),
                BundleSection::parse(&fam, k[1], g).unwrap(),
                BundleSection::parse(&fam, k[2], h).unwrap(),
            ],
        )
        .unwrap()
    };
    assert_eq!(pairing_section(&seq("2*x0", "3*x1", "5*x2", [1, 1, 1])).unwrap().value, int(30));
    // the first form carries exponent k2*k3 = 2
    assert_eq!(pairing_section(&seq("3*x0", "x1^2", "x2", [1, 2, 1])).unwrap().value, int(9));
    assert_eq!(pairing_section(&seq("x0", "x1", "-7*x2^2", [1, 1, 2])).unwrap().value, int(-7));
}
