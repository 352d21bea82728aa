//! Symmetric polynomials in the basis `e_λ = e_{k1}···e_{kl}`.
//!
//! An [`EExpansion`] is a polynomial ring element in the algebraically
//! independent generators `e1..en`; parts larger than `n` are dropped as
//! soon as they appear because `e_k = 0` for `k > n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::json::{self, EExpansionDoc};
use crate::linalg;
use crate::multipoly::{elementary, MPoly};
use crate::partition::{partitions, Partition};
use crate::poly::{Monomial, Poly};
use crate::render::{render_partition_poly, FactorOrder, Style};
use crate::ring::{Coeff, RingSpec};

/// A symmetric polynomial in `n` variables written in the e-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EExpansion {
    n: usize,
    // variable i stands for e_{i+1}
    poly: Poly,
}

impl EExpansion {
    pub fn zero(n: usize, spec: RingSpec) -> Self {
        EExpansion { n, poly: Poly::zero(spec) }
    }

    pub fn one(n: usize, spec: RingSpec) -> Self {
        EExpansion { n, poly: Poly::one(spec) }
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        EExpansion { n, poly: Poly::constant(c) }
    }

    /// The generator `e_k` (`1` for `k = 0`, zero for `k > n`).
    pub fn e(k: usize, n: usize, spec: RingSpec) -> Self {
        match k {
            0 => EExpansion::one(n, spec),
            k if k > n => EExpansion::zero(n, spec),
            k => EExpansion { n, poly: Poly::var(spec, k - 1) },
        }
    }

    /// `c · e_λ`; zero when a part exceeds `n`.
    pub fn from_partition(n: usize, part: &Partition, c: Coeff) -> Self {
        if part.largest() as usize > n {
            return EExpansion::zero(n, c.spec());
        }
        EExpansion { n, poly: Poly::monomial(part.to_monomial(), c) }
    }

    /// Sums `c · e_λ` over the given terms, dropping those with a part
    /// above `n`.
    pub fn from_terms(
        n: usize,
        spec: RingSpec,
        terms: impl IntoIterator<Item = (Partition, Coeff)>,
    ) -> Self {
        let poly = Poly::from_terms(
            spec,
            terms
                .into_iter()
                .filter(|(p, _)| p.largest() as usize <= n)
                .map(|(p, c)| (p.to_monomial(), c)),
        );
        EExpansion { n, poly }
    }

    /// Wraps a polynomial in the e-variables (variable `i` is `e_{i+1}`).
    pub fn from_poly(n: usize, poly: Poly) -> Result<Self> {
        if poly.width() > n {
            return Err(Error::MixedContext(format!("e{} used with n = {n}", poly.width())));
        }
        Ok(EExpansion { n, poly })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> RingSpec {
        self.poly.spec()
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    /// Terms as `(λ, coefficient)`, highest monomial first.
    pub fn terms(&self) -> Vec<(Partition, Coeff)> {
        self.poly
            .terms()
            .rev()
            .map(|(m, c)| (Partition::from_monomial(m), c.clone()))
            .collect()
    }

    /// Partitions with non-zero coefficient.
    pub fn support(&self) -> Vec<Partition> {
        self.poly.terms().map(|(m, _)| Partition::from_monomial(m)).collect()
    }

    pub fn coeff(&self, part: &Partition) -> Coeff {
        self.poly.coeff(&part.to_monomial())
    }

    fn check(&self, other: &EExpansion) -> Result<()> {
        if self.n != other.n || self.spec() != other.spec() {
            return Err(Error::MixedContext(format!(
                "({}, {}) vs ({}, {})",
                self.n,
                self.spec(),
                other.n,
                other.spec()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &EExpansion) -> Result<Self> {
        self.check(other)?;
        Ok(EExpansion { n: self.n, poly: &self.poly + &other.poly })
    }

    pub fn try_sub(&self, other: &EExpansion) -> Result<Self> {
        self.check(other)?;
        Ok(EExpansion { n: self.n, poly: &self.poly - &other.poly })
    }

    pub fn try_mul(&self, other: &EExpansion) -> Result<Self> {
        self.check(other)?;
        Ok(EExpansion { n: self.n, poly: &self.poly * &other.poly })
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        EExpansion { n: self.n, poly: self.poly.scale(c) }
    }

    pub fn pow(&self, k: u32) -> Self {
        EExpansion { n: self.n, poly: self.poly.pow(k) }
    }

    /// Splits into homogeneous components keyed by degree in `x`
    /// (the weight of `λ`).
    pub fn homogeneous_components(&self) -> Vec<(u32, EExpansion)> {
        let mut by_weight: std::collections::BTreeMap<u32, Vec<(Monomial, Coeff)>> =
            Default::default();
        for (m, c) in self.poly.terms() {
            by_weight.entry(weight(m)).or_default().push((m.clone(), c.clone()));
        }
        by_weight
            .into_iter()
            .map(|(w, terms)| {
                (w, EExpansion { n: self.n, poly: Poly::from_terms(self.spec(), terms) })
            })
            .collect()
    }

    /// Degree in `x` when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let comps = self.homogeneous_components();
        match comps.as_slice() {
            [] => Some(0),
            [(w, _)] => Some(*w),
            _ => None,
        }
    }

    /// Multiplies out `e_λ` as polynomials in `x1..xn`.
    pub fn expand(&self) -> MPoly {
        let spec = self.spec();
        let images: Vec<Poly> =
            (1..=self.n).map(|k| elementary(k, self.n, spec).into_poly()).collect();
        MPoly::new(self.n, self.poly.substitute(&images)).expect("variables stay within n")
    }

    pub fn render(&self, style: Style) -> String {
        render_partition_poly(&self.poly, "e", style, FactorOrder::Descending)
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    pub fn to_json(&self) -> EExpansionDoc {
        EExpansionDoc {
            n: self.n,
            ring: self.spec().to_string(),
            terms: json::partition_terms(&self.poly),
        }
    }

    pub fn from_json(doc: &EExpansionDoc) -> Result<Self> {
        if doc.n == 0 || doc.n > json::MAX_SYMBOL {
            return Err(Error::Json(format!("n = {} out of range", doc.n)));
        }
        let spec = json::parse_ring(&doc.ring)?;
        let poly = json::poly_from_partition_terms(spec, &doc.terms, Some(doc.n as u32))?;
        Ok(EExpansion { n: doc.n, poly })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: EExpansionDoc =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        EExpansion::from_json(&doc)
    }
}

impl fmt::Display for EExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

impl std::ops::Add for &EExpansion {
    type Output = EExpansion;
    fn add(self, rhs: &EExpansion) -> EExpansion {
        self.try_add(rhs).expect("mismatched e-expansion context")
    }
}

impl std::ops::Sub for &EExpansion {
    type Output = EExpansion;
    fn sub(self, rhs: &EExpansion) -> EExpansion {
        self.try_sub(rhs).expect("mismatched e-expansion context")
    }
}

impl std::ops::Mul for &EExpansion {
    type Output = EExpansion;
    fn mul(self, rhs: &EExpansion) -> EExpansion {
        self.try_mul(rhs).expect("mismatched e-expansion context")
    }
}

/// Degree in `x` of the e-monomial `m` (variable `i` has weight `i + 1`).
pub fn weight(m: &Monomial) -> u32 {
    m.exponents().iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum()
}

/// Writes a symmetric polynomial in the e-basis by repeatedly cancelling
/// the graded-lex leading monomial `x^a` against `e_1^{a1-a2}···e_n^{an}`.
pub fn decompose(f: &MPoly) -> Result<EExpansion> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let (n, spec) = (f.n(), f.spec());
    let elems: Vec<Poly> = (1..=n).map(|k| elementary(k, n, spec).into_poly()).collect();
    let mut rem = f.as_poly().clone();
    let mut out = Poly::zero(spec);
    while let Some((lm, lc)) = rem.leading_term() {
        let mut a = lm.exponents().to_vec();
        a.resize(n, 0);
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric);
        }
        let mut e_exps = vec![0u32; n];
        for i in 0..n {
            e_exps[i] = a[i] - a.get(i + 1).copied().unwrap_or(0);
        }
        let e_mono = Monomial::from_exponents(e_exps);
        let lc = lc.clone();
        let product = Poly::monomial(e_mono.clone(), spec.one()).substitute(&elems);
        rem = &rem - &product.scale(&lc);
        out = &out + &Poly::monomial(e_mono, lc);
    }
    Ok(EExpansion { n, poly: out })
}

/// `p_0, p_1, .., p_max` in the e-basis by the Newton recursion
/// `p_m = (-1)^{m-1} m e_m + Σ_{i=1}^{m-1} (-1)^{m-1-i} e_{m-i} p_i`.
pub fn p_to_e_table(max: usize, n: usize, spec: RingSpec) -> Vec<EExpansion> {
    let mut table = vec![EExpansion::constant(n, spec.from_i64(n as i64))];
    for m in 1..=max {
        let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
        let mut acc = EExpansion::e(m, n, spec).scale(&spec.from_i64(sign(m - 1) * m as i64));
        for i in 1..m {
            let term = &EExpansion::e(m - i, n, spec) * &table[i];
            acc = &acc + &term.scale(&spec.from_i64(sign(m - 1 - i)));
        }
        table.push(acc);
    }
    table
}

/// `p_m` in the e-basis via the Newton recursion.
pub fn p_to_e_recursive(m: usize, n: usize, spec: RingSpec) -> EExpansion {
    p_to_e_table(m, n, spec).pop().expect("table is non-empty")
}

/// `p_m` in the e-basis from the closed form
/// `p_m = (-1)^m Σ c_t Π (-e_i)^{t_i}` over `t1 + 2 t2 + .. + m tm = m`,
/// `c_t = m (t1 + .. + tm - 1)! / (t1! ··· tm!)`, with integer
/// coefficients reduced into the ring afterwards.
pub fn p_to_e_closed(m: usize, n: usize, spec: RingSpec) -> EExpansion {
    assert!(m >= 1);
    let factorial = |k: u32| -> BigInt { (1..=k).fold(BigInt::one(), |acc, i| acc * i) };
    let terms = partitions(m as u32, m as u32).into_iter().map(|lambda| {
        let total_parts = lambda.len() as u32;
        let mut denom = BigInt::one();
        let mut distinct = lambda.parts().to_vec();
        distinct.dedup();
        for &part in &distinct {
            denom *= factorial(lambda.multiplicity(part));
        }
        let c = BigInt::from(m) * factorial(total_parts - 1) / denom;
        // (-1)^m from the prefactor and (-1)^{Σt} from Π(-e_i)^{t_i}
        let negative = (m as u32 + total_parts) % 2 == 1;
        let c = if negative { -c } else { c };
        (lambda, spec.from_bigint(&c))
    });
    EExpansion::from_terms(n, spec, terms)
}

/// `h_k` in the e-basis via `h_k = Σ_{i=1}^k (-1)^{i-1} e_i h_{k-i}`.
pub fn h_to_e(k: usize, n: usize, spec: RingSpec) -> EExpansion {
    let mut table = vec![EExpansion::one(n, spec)];
    for j in 1..=k {
        let mut acc = EExpansion::zero(n, spec);
        for i in 1..=j {
            let term = &EExpansion::e(i, n, spec) * &table[j - i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        table.push(acc);
    }
    table.pop().expect("table is non-empty")
}

/// Values that Newton's identity can be evaluated in: e-expansions,
/// power-sum fractions, plain coefficients.
pub trait NewtonValue: Clone {
    fn nv_zero(&self) -> Self;
    fn nv_add(&self, other: &Self) -> Self;
    fn nv_sub(&self, other: &Self) -> Self;
    fn nv_mul(&self, other: &Self) -> Self;
    fn nv_scale(&self, c: &Coeff) -> Self;
}

impl NewtonValue for Coeff {
    fn nv_zero(&self) -> Self {
        self.spec().zero()
    }
    fn nv_add(&self, other: &Self) -> Self {
        self + other
    }
    fn nv_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn nv_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn nv_scale(&self, c: &Coeff) -> Self {
        self * c
    }
}

impl NewtonValue for EExpansion {
    fn nv_zero(&self) -> Self {
        EExpansion::zero(self.n, self.spec())
    }
    fn nv_add(&self, other: &Self) -> Self {
        self + other
    }
    fn nv_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn nv_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn nv_scale(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
}

impl NewtonValue for Poly {
    fn nv_zero(&self) -> Self {
        Poly::zero(self.spec())
    }
    fn nv_add(&self, other: &Self) -> Self {
        self + other
    }
    fn nv_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn nv_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn nv_scale(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
}

/// `e_k = k^{-1} Σ_{i=1}^k (-1)^{i-1} e_{k-i} p_i`.
///
/// `lower_e` holds `e_0..e_{k-1}` and `p` holds `p_1..p_k` (at least).
/// Fails with [`Error::NonInvertible`] when `k` is not a unit in `spec`.
pub fn newton_e_from_p_invertible<T: NewtonValue>(
    k: usize,
    spec: RingSpec,
    lower_e: &[T],
    p: &[T],
) -> Result<T> {
    assert!(k >= 1 && lower_e.len() >= k && p.len() >= k);
    if !spec.is_invertible_int(k as u64) {
        return Err(Error::NonInvertible(k as u64));
    }
    let inv = spec.from_i64(k as i64).inv().map_err(|_| Error::NonInvertible(k as u64))?;
    let mut acc = p[0].nv_zero();
    for i in 1..=k {
        let term = lower_e[k - i].nv_mul(&p[i - 1]);
        acc = if i % 2 == 1 { acc.nv_add(&term) } else { acc.nv_sub(&term) };
    }
    Ok(acc.nv_scale(&inv))
}

/// The determinant form `e_k = det(M) / k!` where `M` has `p_{i-j+1}` on
/// and below the diagonal and `1, 2, .., k-1` on the superdiagonal.
/// Requires `k!` to be a unit.
pub fn newton_determinant_form(k: usize, spec: RingSpec, p: &[Poly]) -> Result<Poly> {
    assert!(k >= 1 && p.len() >= k);
    if let Some(bad) = (2..=k).find(|&j| !spec.is_invertible_int(j as u64)) {
        return Err(Error::NonInvertible(bad as u64));
    }
    let zero = Poly::zero(spec);
    let m: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if j <= i {
                        p[i - j].clone()
                    } else if j == i + 1 {
                        Poly::from_i64(spec, (i + 1) as i64)
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    let det = linalg::determinant(&m);
    let fact = (1..=k as i64).fold(spec.one(), |acc, j| &acc * &spec.from_i64(j));
    Ok(det.scale(&fact.inv()?))
}
