//! Families `X = P^d_S`, sections of `O(k)` and f-regular sequences.

use crate::arith::text::parse_poly;
use crate::arith::{Euclidean, Field, FractionField, MPoly, Monomial, Rational, Ring, UPoly};
use crate::base::{BaseRing, PidBase, Rationals, Specialize};
use crate::error::{Error, Result};
use crate::norm::FiniteAlgebra;
use crate::resultant::{macaulay, resultant};

pub const X_NAMES: [&str; 4] = ["x0", "x1", "x2", "x3"];

/// Variable names understood in section text: the fiber coordinates and the
/// base parameter `t` (index 4).
pub const SECTION_VARS: [&str; 5] = ["x0", "x1", "x2", "x3", "t"];
pub const T_INDEX: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveFamily<B> {
    base: B,
    dim: usize,
}

impl<B: BaseRing> ProjectiveFamily<B> {
    pub fn new(base: B, dim: usize) -> Result<Self> {
        if dim > 3 {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(ProjectiveFamily { base, dim })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.dim + 1
    }

    pub fn name(&self) -> String {
        format!("P{}", self.dim)
    }

    pub fn var_names(&self) -> &'static [&'static str] {
        &X_NAMES[..self.dim + 1]
    }
}

/// A section of `O(k)` on `P^d_S`: a form of degree `k` with base-ring
/// coefficients. Twist zero only appears as the pulled-back slot.
#[derive(Clone, Debug)]
pub struct BundleSection<B: BaseRing> {
    family: ProjectiveFamily<B>,
    twist: u32,
    form: MPoly<B::Frac>,
}

impl<B: BaseRing> BundleSection<B> {
    pub fn new(family: &ProjectiveFamily<B>, twist: u32, form: MPoly<B::Frac>) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::InvalidInput("section is identically zero".into()));
        }
        if let Some(bad) = form
            .terms()
            .find(|(m, _)| m.exps().len() > family.nvars())
        {
            return Err(Error::InvalidInput(format!(
                "monomial {} is outside the coordinates of {}",
                bad.0.fmt_with(&X_NAMES),
                family.name()
            )));
        }
        match form.homogeneous_degree() {
            Some(k) if k == twist => {}
            Some(k) => {
                return Err(Error::Homogeneity {
                    declared: twist,
                    actual: k.to_string(),
                })
            }
            None => {
                return Err(Error::Homogeneity {
                    declared: twist,
                    actual: "inhomogeneous".into(),
                })
            }
        }
        if let Some((_, c)) = form.terms().find(|(_, c)| !family.base.contains(c)) {
            return Err(Error::InvalidInput(format!(
                "coefficient {} is not in {}",
                family.base.format(c),
                family.base.name()
            )));
        }
        Ok(BundleSection {
            family: family.clone(),
            twist,
            form,
        })
    }

    /// Parses section text over the variables `x0..x3` and `t`.
    pub fn parse(family: &ProjectiveFamily<B>, twist: u32, text: &str) -> Result<Self> {
        Self::parse_at(family, twist, text, 1, 1)
    }

    pub fn parse_at(
        family: &ProjectiveFamily<B>,
        twist: u32,
        text: &str,
        line: usize,
        column: usize,
    ) -> Result<Self> {
        let p = parse_poly(text, &SECTION_VARS, line, column)?;
        let form = form_from_parsed(&family.base, &p, T_INDEX)?;
        Self::new(family, twist, form)
    }

    pub fn family(&self) -> &ProjectiveFamily<B> {
        &self.family
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn form(&self) -> &MPoly<B::Frac> {
        &self.form
    }

    pub fn text(&self) -> String {
        form_text(&self.form)
    }

    pub fn scaled(&self, lambda: &B::Frac) -> Result<Self> {
        Self::new(&self.family, self.twist, self.form.scale(lambda))
    }

    /// Product section in `O(k + k')`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        Self::new(&self.family, self.twist + other.twist, self.form.mul(&other.form))
    }
}

/// Canonical text of a form: `x`-monomials lex-descending, base-ring
/// coefficients as leading factors.
pub fn form_text<K: FractionField>(form: &MPoly<K>) -> String {
    form.fmt_with(&X_NAMES)
}

/// Moves the `t`-part of each parsed term into the coefficient.
pub fn form_from_parsed<B: BaseRing>(
    base: &B,
    p: &MPoly<Rational>,
    t_index: usize,
) -> Result<MPoly<B::Frac>> {
    let mut acc = MPoly::zero();
    for (m, c) in p.terms() {
        let mut exps = m.exps().to_vec();
        let te = if exps.len() > t_index {
            let e = exps[t_index];
            exps[t_index] = 0;
            e
        } else {
            0
        };
        if exps.len() > t_index + 1 && exps[t_index + 1..].iter().any(|&e| e > 0) {
            return Err(Error::InvalidInput(format!("unexpected variable in {p}")));
        }
        let coeff = base.param_term(c.clone(), te)?;
        acc = acc.add(&MPoly::term(coeff, Monomial::new(exps)));
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct SectionSequence<B: BaseRing> {
    family: ProjectiveFamily<B>,
    sections: Vec<BundleSection<B>>,
}

impl<B: BaseRing> SectionSequence<B> {
    pub fn new(family: &ProjectiveFamily<B>, sections: Vec<BundleSection<B>>) -> Result<Self> {
        if sections.len() > family.dim + 1 {
            return Err(Error::ArityMismatch {
                expected: family.dim + 1,
                actual: sections.len(),
            });
        }
        if sections.iter().any(|s| s.family.dim != family.dim) {
            return Err(Error::InvalidInput("sections live on different families".into()));
        }
        Ok(SectionSequence {
            family: family.clone(),
            sections,
        })
    }

    pub fn family(&self) -> &ProjectiveFamily<B> {
        &self.family
    }

    pub fn sections(&self) -> &[BundleSection<B>] {
        &self.sections
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn twists(&self) -> Vec<u32> {
        self.sections.iter().map(|s| s.twist).collect()
    }

    /// `perm[i]` is the index of the section placed in slot `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        Ok(SectionSequence {
            family: self.family.clone(),
            sections: perm.iter().map(|&i| self.sections[i].clone()).collect(),
        })
    }

    pub fn with_slot(&self, slot: usize, s: BundleSection<B>) -> Result<Self> {
        if slot >= self.len() {
            return Err(Error::InvalidInput(format!("slot {slot} out of range")));
        }
        let mut sections = self.sections.clone();
        sections[slot] = s;
        Self::new(&self.family, sections)
    }

    pub fn forms(&self) -> Vec<(MPoly<B::Frac>, u32)> {
        self.sections
            .iter()
            .map(|s| (s.form.clone(), s.twist))
            .collect()
    }
}

pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            actual: perm.len(),
        });
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Parity of a permutation: `true` when odd.
pub fn is_odd_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

/// Specializes a `Q[t]` section at `t = t0`.
pub fn specialize_section<B: Specialize>(
    s: &BundleSection<B>,
    t0: &Rational,
) -> Result<BundleSection<Rationals>> {
    let base = s.family.base.clone();
    let form = s.form.try_map_coeffs(|c| {
        base.specialize(c, t0)
            .ok_or_else(|| Error::SpecializationPole(crate::arith::rational::fmt_rational(t0)))
    })?;
    let fam = ProjectiveFamily::new(Rationals, s.family.dim)?;
    if form.is_zero() {
        return Err(Error::InvalidInput(format!(
            "section {} vanishes identically at t = {}",
            s.text(),
            crate::arith::rational::fmt_rational(t0)
        )));
    }
    BundleSection::new(&fam, s.twist, form)
}

pub fn specialize_sequence<B: Specialize>(
    seq: &SectionSequence<B>,
    t0: &Rational,
) -> Result<SectionSequence<Rationals>> {
    let fam = ProjectiveFamily::new(Rationals, seq.family.dim)?;
    let sections = seq
        .sections
        .iter()
        .map(|s| specialize_section(s, t0))
        .collect::<Result<Vec<_>>>()?;
    SectionSequence::new(&fam, sections)
}

#[derive(Clone, Debug)]
pub struct RegularityCertificate<B: PidBase> {
    /// `r` with the sequence f-regular over the locus `r != 0`.
    pub locus: B::Elem,
    /// One locus element per prefix length.
    pub prefix_loci: Vec<B::Elem>,
    pub bad_fibers: Vec<String>,
    /// How each prefix was certified.
    pub methods: Vec<String>,
}

impl<B: PidBase> RegularityCertificate<B> {
    pub fn is_global(&self) -> bool {
        self.locus.is_unit()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Refutation {
    /// 1-based index of the first failing section.
    pub index: usize,
    pub reason: String,
    pub bad_fibers: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum Regularity<B: PidBase> {
    Certified(RegularityCertificate<B>),
    Refuted(Refutation),
}

impl<B: PidBase> Regularity<B> {
    pub fn is_certified(&self) -> bool {
        matches!(self, Regularity::Certified(_))
    }

    pub fn certificate(&self) -> Option<&RegularityCertificate<B>> {
        match self {
            Regularity::Certified(c) => Some(c),
            Regularity::Refuted(_) => None,
        }
    }
}

/// Certifies f-regularity by resultant nonvanishing. The first section is
/// checked through its coefficient content, a full sequence of length
/// `d + 1` through its resultant, and intermediate prefixes through
/// resultants after completing by linear forms from a fixed list.
///
/// With `demand_global`, a locus polynomial that is not a unit turns into a
/// refutation naming the bad fibers.
pub fn certify_regular<B: PidBase>(seq: &SectionSequence<B>, demand_global: bool) -> Result<Regularity<B>> {
    let d = seq.family.dim;
    if d > 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    let base = &seq.family.base;
    let mut prefix_loci = Vec::new();
    let mut methods = Vec::new();
    for i in 1..=seq.len() {
        let (value, method) = if i == 1 {
            (content(base, seq.sections[0].form())?, "content".to_string())
        } else if i == d + 1 {
            let r = resultant(&seq.forms())?;
            let tag = if d == 1 { "sylvester" } else { "macaulay" };
            (lower(base, &r)?, tag.to_string())
        } else {
            prefix_by_completion(seq, i)?
        };
        if value.is_zero() {
            return Ok(Regularity::Refuted(Refutation {
                index: i,
                reason: if i == 1 {
                    "section vanishes identically on the generic fiber".into()
                } else {
                    format!("section {i} is a zero divisor on the zero locus of the first {}", i - 1)
                },
                bad_fibers: vec!["generic fiber".into()],
            }));
        }
        prefix_loci.push(value.normalize().0);
        methods.push(method);
    }
    let locus = if seq.len() == d + 1 {
        prefix_loci.last().cloned().unwrap()
    } else {
        prefix_loci
            .iter()
            .fold(B::Elem::one(), |acc, r| lcm(&acc, r))
    };
    let bad_fibers = base.bad_fibers(&locus);
    if demand_global && !locus.is_unit() {
        let index = prefix_loci.iter().position(|r| !r.is_unit()).unwrap_or(0) + 1;
        return Ok(Regularity::Refuted(Refutation {
            index,
            reason: format!(
                "regular only away from the zeros of {}",
                base.format(&base.lift(&locus))
            ),
            bad_fibers,
        }));
    }
    Ok(Regularity::Certified(RegularityCertificate {
        locus,
        prefix_loci,
        bad_fibers,
        methods,
    }))
}

fn lower<B: PidBase>(base: &B, x: &B::Frac) -> Result<B::Elem> {
    base.lower(x).ok_or_else(|| {
        Error::IntegralityViolation(base.format(x))
    })
}

fn lcm<E: Euclidean>(a: &E, b: &E) -> E {
    let g = a.gcd(b);
    a.mul(b).exact_div(&g).unwrap().normalize().0
}

/// gcd of the coefficients of a form, as a base-ring element.
pub fn content<B: PidBase>(base: &B, form: &MPoly<B::Frac>) -> Result<B::Elem> {
    let mut g = B::Elem::zero();
    for (_, c) in form.terms() {
        g = g.gcd(&lower(base, c)?);
    }
    Ok(g)
}

/// Linear forms completing a prefix of length `i` to `d + 1` forms:
/// coordinate subsets first, then small integer combinations.
fn completions(nvars: usize, needed: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..needed).collect();
    loop {
        out.push(
            combo
                .iter()
                .map(|&j| (0..nvars).map(|k| i64::from(k == j)).collect())
                .collect(),
        );
        let mut p = needed;
        while p > 0 && combo[p - 1] == nvars - needed + p - 1 {
            p -= 1;
        }
        if p == 0 {
            break;
        }
        combo[p - 1] += 1;
        for q in p..needed {
            combo[q] = combo[q - 1] + 1;
        }
    }
    for trial in 0..8i64 {
        out.push(
            (0..needed as i64)
                .map(|m| {
                    (0..nvars as i64)
                        .map(|k| ((trial + 2) * (k + 1) + 3 * m + trial * k * m) % 7 - 3)
                        .collect()
                })
                .collect(),
        );
    }
    out
}

fn prefix_by_completion<B: PidBase>(seq: &SectionSequence<B>, i: usize) -> Result<(B::Elem, String)> {
    let d = seq.family.dim;
    let base = &seq.family.base;
    let nvars = d + 1;
    let prefix: Vec<(MPoly<B::Frac>, u32)> = seq.forms()[..i].to_vec();
    let mut found: Vec<B::Elem> = Vec::new();
    let mut tried = 0;
    for completion in completions(nvars, nvars - i) {
        tried += 1;
        let mut forms = prefix.clone();
        for coeffs in &completion {
            let mut l = MPoly::zero();
            for (k, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    l = l.add(&MPoly::var(k).scale(&B::Frac::from_i64(c)));
                }
            }
            if l.is_zero() {
                continue;
            }
            forms.push((l, 1));
        }
        if forms.len() != nvars {
            continue;
        }
        let r = macaulay(&forms)?.value;
        if !r.is_zero() {
            found.push(lower(base, &r)?);
            if found.len() == 3 {
                break;
            }
        }
    }
    let g = found
        .iter()
        .fold(B::Elem::zero(), |acc, r| acc.gcd(r));
    Ok((g, format!("macaulay with linear completion ({tried} tried)")))
}

/// Certifies `perm * seq` and `seq` and reports whether the verdicts agree;
/// for full-length sequences the loci must also agree up to a unit.
pub fn order_permuted_is_regular<B: PidBase>(seq: &SectionSequence<B>, perm: &[usize]) -> Result<bool> {
    let a = certify_regular(seq, false)?;
    let b = certify_regular(&seq.permuted(perm)?, false)?;
    Ok(match (&a, &b) {
        (Regularity::Certified(x), Regularity::Certified(y)) => {
            seq.len() != seq.family.dim + 1 || x.locus == y.locus
        }
        (Regularity::Refuted(_), Regularity::Refuted(_)) => true,
        _ => false,
    })
}

/// Bezout number `k_1 * ... * k_d` on `P^d`.
pub fn intersection_number(dim: usize, twists: &[u32]) -> Result<u64> {
    if dim == 0 {
        return Err(Error::InvalidInput(
            "relative dimension 0: the degree is the rank of the finite algebra".into(),
        ));
    }
    if twists.len() != dim {
        return Err(Error::ArityMismatch {
            expected: dim,
            actual: twists.len(),
        });
    }
    Ok(twists.iter().map(|&k| u64::from(k)).product())
}

/// Degree of a finite morphism given by an algebra.
pub fn finite_degree<B: BaseRing>(alg: &FiniteAlgebra<B>) -> u64 {
    alg.rank() as u64
}

/// Coordinate change `x -> M x` applied to a binary form.
pub type Chart = [[i64; 2]; 2];

pub fn apply_chart<K: FractionField>(form: &MPoly<K>, m: &Chart) -> MPoly<K> {
    let lin = |row: &[i64; 2]| {
        MPoly::var(0)
            .scale(&K::from_i64(row[0]))
            .add(&MPoly::var(1).scale(&K::from_i64(row[1])))
    };
    form.substitute(&[lin(&m[0]), lin(&m[1])])
}

pub fn chart_det(m: &Chart) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Charts searched for a unit leading coefficient, in order.
pub fn chart_candidates() -> Vec<Chart> {
    let mut out = vec![[[1, 0], [0, 1]], [[0, 1], [1, 0]]];
    for c in 1..=6i64 {
        for s in [c, -c] {
            out.push([[1, 0], [s, 1]]);
            out.push([[s, 1], [1, 0]]);
        }
    }
    out
}

/// The coordinate ring `A[x]/(s~)` of `Z(s)` on `P^1`.
#[derive(Clone, Debug)]
pub struct ZeroLocus<B: BaseRing> {
    pub algebra: FiniteAlgebra<B>,
    /// The section was replaced by `s(M x)` before dehomogenizing at `x1 = 1`.
    pub chart: Chart,
    /// Coefficient of `x0^k` in `s(M x)`, a unit of the base.
    pub leading: B::Frac,
    /// `s(M x)(x, 1) / leading`, monic.
    pub monic: UPoly<B::Frac>,
}

impl<B: BaseRing> ZeroLocus<B> {
    /// Coordinates of a binary form restricted to `Z(s)` in the same chart.
    pub fn restrict(&self, form: &MPoly<B::Frac>) -> Vec<B::Frac> {
        let moved = apply_chart(form, &self.chart);
        let p = dehomogenize(&moved);
        let (_, r) = p.div_rem_poly(&self.monic);
        (0..self.algebra.rank()).map(|j| r.coeff(j)).collect()
    }
}

/// `f(x, 1)` as a univariate polynomial.
pub fn dehomogenize<K: FractionField>(form: &MPoly<K>) -> UPoly<K> {
    let mut coeffs: Vec<K> = Vec::new();
    for (m, c) in form.terms() {
        let e = m.exp(0) as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, K::zero());
        }
        coeffs[e] = coeffs[e].add(c);
    }
    UPoly::new(coeffs)
}

pub fn zero_locus_algebra<B: BaseRing>(s: &BundleSection<B>) -> Result<ZeroLocus<B>> {
    if s.family.dim != 1 {
        return Err(Error::InvalidInput("zero loci are computed on P1 only".into()));
    }
    if s.twist == 0 {
        return Err(Error::InvalidInput("a twist-0 section has no zero locus".into()));
    }
    let base = &s.family.base;
    let k = s.twist as u16;
    for chart in chart_candidates() {
        let moved = apply_chart(&s.form, &chart);
        let lc = moved.coeff(&Monomial::new(vec![k]));
        if !base.is_unit(&lc) {
            continue;
        }
        let monic = dehomogenize(&moved).scale(&lc.inv());
        let algebra = FiniteAlgebra::companion(base.clone(), &monic)?;
        return Ok(ZeroLocus {
            algebra,
            chart,
            leading: lc,
            monic,
        });
    }
    Err(Error::ZeroAtInfinity(s.text()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, RatFunc};
    use crate::base::{Integers, PolyRing};
    use num_bigint::BigInt;

    fn p1q() -> ProjectiveFamily<Rationals> {
        ProjectiveFamily::new(Rationals, 1).unwrap()
    }

    fn p1t() -> ProjectiveFamily<PolyRing> {
        ProjectiveFamily::new(PolyRing, 1).unwrap()
    }

    fn seq<B: BaseRing>(fam: &ProjectiveFamily<B>, items: &[(u32, &str)]) -> SectionSequence<B> {
        let secs = items
            .iter()
            .map(|(k, s)| BundleSection::parse(fam, *k, s).unwrap())
            .collect();
        SectionSequence::new(fam, secs).unwrap()
    }

    #[test]
    fn canonical_text() {
        let s = BundleSection::parse(&p1t(), 2, "-t*x1^2 + x0^2").unwrap();
        assert_eq!(s.text(), "x0^2 - t*x1^2");
        let s = BundleSection::parse(&p1t(), 1, "(1 - t)*x0 + x1").unwrap();
        assert_eq!(s.text(), "(1 - t)*x0 + x1");
    }

    #[test]
    fn homogeneity_errors() {
        let e = BundleSection::parse(&p1q(), 2, "x0 - x1").unwrap_err();
        assert!(matches!(e, Error::Homogeneity { declared: 2, .. }));
        assert!(BundleSection::parse(&p1q(), 2, "x0^2 - x1").is_err());
        assert!(BundleSection::parse(&p1q(), 1, "x2").is_err());
        assert!(ProjectiveFamily::new(Rationals, 4).is_err());
        let z = ProjectiveFamily::new(Integers, 1).unwrap();
        assert!(BundleSection::parse(&z, 1, "x0/2").is_err());
    }

    #[test]
    fn certify_coordinate_pair() {
        let r = certify_regular(&seq(&p1q(), &[(1, "x0"), (1, "x1")]), true).unwrap();
        assert!(r.is_certified());
        assert!(r.certificate().unwrap().is_global());
    }

    #[test]
    fn certify_over_qt() {
        let s = seq(&p1t(), &[(2, "x0^2 - t*x1^2"), (1, "x0 - x1")]);
        let r = certify_regular(&s, false).unwrap();
        let c = r.certificate().unwrap();
        assert_eq!(c.locus, UPoly::new(vec![int(-1), int(1)]));
        assert_eq!(c.bad_fibers, vec!["t = 1".to_string()]);
        match certify_regular(&s, true).unwrap() {
            Regularity::Refuted(f) => {
                assert_eq!(f.index, 2);
                assert_eq!(f.bad_fibers, vec!["t = 1".to_string()]);
            }
            _ => panic!("expected a refutation"),
        }
    }

    #[test]
    fn refute_repeated_section() {
        match certify_regular(&seq(&p1q(), &[(1, "x0"), (1, "x0")]), false).unwrap() {
            Regularity::Refuted(f) => assert_eq!(f.index, 2),
            _ => panic!("expected a refutation"),
        }
    }

    #[test]
    fn integer_bad_primes() {
        let z = ProjectiveFamily::new(Integers, 1).unwrap();
        let s = seq(&z, &[(2, "x0^2 - 2*x1^2"), (1, "x0 - 3*x1")]);
        let c = certify_regular(&s, false).unwrap();
        let c = c.certificate().unwrap();
        assert_eq!(c.locus, BigInt::from(7));
        assert_eq!(c.bad_fibers, vec!["p = 7".to_string()]);
    }

    #[test]
    fn permutation_agreement() {
        let s = seq(&p1q(), &[(1, "x0"), (1, "x1")]);
        assert!(order_permuted_is_regular(&s, &[1, 0]).unwrap());
        let s = seq(&p1q(), &[(1, "x0"), (1, "x0")]);
        assert!(order_permuted_is_regular(&s, &[1, 0]).unwrap());
        let s = seq(&p1t(), &[(2, "x0^2 - t*x1^2"), (1, "x0 - x1")]);
        assert!(order_permuted_is_regular(&s, &[1, 0]).unwrap());
    }

    #[test]
    fn intermediate_prefix_on_p2() {
        let p2 = ProjectiveFamily::new(Rationals, 2).unwrap();
        let s = seq(&p2, &[(1, "x0"), (2, "x1^2 - x2^2")]);
        assert!(certify_regular(&s, false).unwrap().is_certified());
        let s = seq(&p2, &[(1, "x0"), (2, "x0*x1")]);
        match certify_regular(&s, false).unwrap() {
            Regularity::Refuted(f) => assert_eq!(f.index, 2),
            _ => panic!("x0*x1 vanishes on a component of Z(x0)"),
        }
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(intersection_number(1, &[2]).unwrap(), 2);
        assert_eq!(intersection_number(2, &[2, 3]).unwrap(), 6);
        assert!(matches!(
            intersection_number(2, &[2]),
            Err(Error::ArityMismatch { .. })
        ));
        let alg = FiniteAlgebra::companion(Rationals, &UPoly::new(vec![int(-2), int(0), int(1)])).unwrap();
        assert_eq!(finite_degree(&alg), 2);
    }

    #[test]
    fn zero_loci() {
        let z = zero_locus_algebra(&BundleSection::parse(&p1q(), 2, "x0^2 - 2*x1^2").unwrap()).unwrap();
        assert_eq!(z.algebra.rank(), 2);
        assert_eq!(z.monic, UPoly::new(vec![int(-2), int(0), int(1)]));
        let z = zero_locus_algebra(&BundleSection::parse(&p1q(), 1, "x0").unwrap()).unwrap();
        assert_eq!(z.monic, UPoly::new(vec![int(0), int(1)]));
        let z = zero_locus_algebra(&BundleSection::parse(&p1t(), 2, "x0^2 - t*x1^2").unwrap()).unwrap();
        assert_eq!(z.monic.coeff(0), RatFunc::t().neg());
        // zero at infinity: x1 alone moves to the swapped chart
        let z = zero_locus_algebra(&BundleSection::parse(&p1q(), 1, "x1").unwrap()).unwrap();
        assert_eq!(z.chart, [[0, 1], [1, 0]]);
        // t*x0*x1 + x1^2 - ... has no unit leading coefficient in any chart
        let bad = BundleSection::parse(&p1t(), 2, "t*x0^2 + t*x1^2").unwrap();
        assert!(matches!(zero_locus_algebra(&bad), Err(Error::ZeroAtInfinity(_))));
    }

    #[test]
    fn specialization_of_sections() {
        let s = BundleSection::parse(&p1t(), 2, "x0^2 - t*x1^2").unwrap();
        let sp = specialize_section(&s, &int(4)).unwrap();
        assert_eq!(sp.text(), "x0^2 - 4*x1^2");
        let s = BundleSection::parse(&p1t(), 1, "t*x0").unwrap();
        assert!(specialize_section(&s, &int(0)).is_err());
    }

    #[test]
    fn permutation_parity() {
        assert!(!is_odd_permutation(&[0, 1, 2]));
        assert!(is_odd_permutation(&[1, 0, 2]));
        assert!(!is_odd_permutation(&[1, 2, 0]));
    }
}
