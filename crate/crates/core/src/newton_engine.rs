//! Elementary symmetric polynomials as rational functions of power sums.
//!
//! `e_k` is built inductively for `k = 1..n`. When `k` is a unit the
//! Newton identity divides by `k`; otherwise the Hankel system of Newton
//! identities for `N = n+1, .., 2n-k+1` is reduced and its last row
//! expresses `e_k` through `e_0, .., e_{k-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{self, PartitionTerm};
use crate::linalg;
use crate::multipoly::{elementary, power_sum, MPoly};
use crate::p_rational::{bareiss_last_row, PPoly, PRat};
use crate::poly::Poly;
use crate::render::Style;
use crate::ring::{Coeff, RingSpec};
use crate::sym_basis::{newton_e_from_p_invertible, p_to_e_table, EExpansion, NewtonValue};

/// The `d × d` Hankel matrix with entry `(i, j)` equal to
/// `P_{start+i+j-2}` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HankelSpec {
    pub d: usize,
    pub n: usize,
    pub start: usize,
}

impl HankelSpec {
    /// `P_{d,n}`: the Hankel matrix starting at `P1`.
    pub fn standard(d: usize, n: usize) -> Self {
        HankelSpec { d, n, start: 1 }
    }

    /// Symbol index at 1-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.start + i + j - 2
    }
}

impl fmt::Display for HankelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == 1 {
            write!(f, "det P_{{{},{}}}", self.d, self.n)
        } else {
            write!(f, "det P_{{{},{}}}[start={}]", self.d, self.n, self.start)
        }
    }
}

pub fn hankel_matrix(h: &HankelSpec, spec: RingSpec) -> Vec<Vec<PPoly>> {
    assert!(h.d >= 1 && h.start >= 1, "Hankel matrix needs d >= 1 and start >= 1");
    (1..=h.d)
        .map(|i| (1..=h.d).map(|j| PPoly::symbol(spec, h.entry(i, j))).collect())
        .collect()
}

/// `det` of the Hankel matrix as a polynomial in the symbols `P_i`.
pub fn hankel_det(h: &HankelSpec, spec: RingSpec) -> PPoly {
    linalg::determinant(&hankel_matrix(h, spec))
}

/// `det P_{d,n}` expanded in `x1..xn`.
pub fn hankel_det_x(d: usize, n: usize, spec: RingSpec) -> MPoly {
    hankel_det(&HankelSpec::standard(d, n), spec).subst_x(n)
}

/// `Σ det P_{d,d}(x_{i1}, .., x_{id})` over all `d`-subsets of `x1..xn`.
pub fn hankel_subset_sum(d: usize, n: usize, spec: RingSpec) -> MPoly {
    let small = hankel_det_x(d, d, spec);
    (1..=n).combinations(d).fold(MPoly::zero(n, spec), |acc, subset| &acc + &small.embed(n, &subset))
}

/// The `(n-k+1) × (n+1)` system of Newton identities for
/// `N = n+1, .., 2n-k+1` in the unknowns `(e_n, .., e_1, 1)`.
pub fn build_system(n: usize, k: usize, spec: RingSpec) -> Result<Vec<Vec<PPoly>>> {
    if k == 0 || k > n {
        return Err(Error::InvalidRange(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if spec.is_invertible_int(k as u64) {
        return Err(Error::InvalidRange(format!(
            "{k} is invertible in {spec}; use the Newton identity"
        )));
    }
    let rows = n - k + 1;
    Ok((1..=rows)
        .map(|t| {
            (1..=n + 1)
                .map(|j| {
                    let p = PPoly::symbol(spec, t + j - 1);
                    if (t + j) % 2 == 0 { p } else { -&p }
                })
                .collect()
        })
        .collect())
}

/// `δ·e_k + Σ_{i<k} N_i·e_i = 0`, the last row of the reduced system
/// before the final division by the pivot `δ = ±det P_{n-k+1,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastRowRelation {
    pub k: usize,
    pub n: usize,
    pub spec: RingSpec,
    /// `coeffs[i]` multiplies `e_i`, for `i = 0..k`.
    pub coeffs: Vec<PPoly>,
    pub delta: PPoly,
}

impl LastRowRelation {
    pub fn new(n: usize, k: usize, spec: RingSpec) -> Result<Self> {
        let system = build_system(n, k, spec)?;
        let row = bareiss_last_row(system)?;
        let delta = row[n - k].clone();
        let coeffs = (0..k).map(|i| row[n - i].clone()).collect();
        Ok(LastRowRelation { k, n, spec, coeffs, delta })
    }

    /// `e_k = -Σ N_i e_i / δ` with the given values for `e_0..e_{k-1}`.
    pub fn solve<T: NewtonValue>(&self, lower_e: &[T], lift: impl Fn(&PPoly) -> T) -> (T, PPoly) {
        let mut acc = lower_e[0].nv_zero();
        for (c, e) in self.coeffs.iter().zip(lower_e) {
            if !c.is_zero() {
                acc = acc.nv_sub(&lift(c).nv_mul(e));
            }
        }
        (acc, self.delta.clone())
    }

    /// Numerator `-Σ N_i·E_i` with `E_i` as formal symbols.
    pub fn render(&self) -> String {
        let m = self
            .coeffs
            .iter()
            .map(PPoly::max_symbol)
            .chain([self.delta.max_symbol()])
            .max()
            .unwrap_or(0);
        let mut num = Poly::zero(self.spec);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = if i == 0 { Poly::one(self.spec) } else { Poly::var(self.spec, m + i - 1) };
            num = &num - &(c.as_poly() * &e);
        }
        let name = |v: usize| if v < m { format!("p{}", v + 1) } else { format!("e{}", v - m + 1) };
        format!("({}) / ({})", num.render(name), self.delta.as_poly().render(name))
    }
}

/// Which route produced a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Newton,
    Hankel,
}

/// The new division introduced at step `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DenominatorId {
    Unit,
    Hankel(HankelSpec),
}

impl fmt::Display for DenominatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenominatorId::Unit => f.write_str("unit"),
            DenominatorId::Hankel(h) => h.fmt(f),
        }
    }
}

/// `e_k` in `n` variables as a fraction of power sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EFormula {
    pub k: usize,
    pub n: usize,
    pub spec: RingSpec,
    pub value: PRat,
    pub route: Route,
    pub denominator_id: DenominatorId,
}

/// JSON form of an [`EFormula`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EFormulaDoc {
    pub k: usize,
    pub n: usize,
    pub ring: String,
    pub num: Vec<PartitionTerm>,
    pub den: Vec<PartitionTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl EFormula {
    pub fn render(&self, style: Style) -> String {
        self.value.render(style)
    }

    pub fn to_json(&self, verified: Option<bool>) -> EFormulaDoc {
        EFormulaDoc {
            k: self.k,
            n: self.n,
            ring: self.spec.to_string(),
            num: self.value.num().to_json_terms(),
            den: self.value.den().to_json_terms(),
            verified,
        }
    }

    /// Reads the fraction back; route information is not part of the
    /// document and is reconstructed from `k` and the ring.
    pub fn from_json(doc: &EFormulaDoc) -> Result<Self> {
        let spec = json::parse_ring(&doc.ring)?;
        if doc.k == 0 || doc.k > doc.n || doc.n > json::MAX_SYMBOL {
            return Err(Error::Json(format!("need 1 <= k <= n, got k = {}, n = {}", doc.k, doc.n)));
        }
        let num = PPoly::from_poly(json::poly_from_partition_terms(spec, &doc.num, None)?);
        let den = PPoly::from_poly(json::poly_from_partition_terms(spec, &doc.den, None)?);
        let invertible = spec.is_invertible_int(doc.k as u64);
        Ok(EFormula {
            k: doc.k,
            n: doc.n,
            spec,
            value: PRat::new(num, den)?,
            route: if invertible { Route::Newton } else { Route::Hankel },
            denominator_id: if invertible {
                DenominatorId::Unit
            } else {
                DenominatorId::Hankel(HankelSpec::standard(doc.n - doc.k + 1, doc.n))
            },
        })
    }
}

impl fmt::Display for EFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}^({}) = {}", self.k, self.n, self.value)
    }
}

impl NewtonValue for PRat {
    fn nv_zero(&self) -> Self {
        PRat::zero(self.spec())
    }
    fn nv_add(&self, other: &Self) -> Self {
        self.try_add(other).expect("same ring")
    }
    fn nv_sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("same ring")
    }
    fn nv_mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same ring")
    }
    fn nv_scale(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
}

type BookKey = (usize, RingSpec);

/// Memo of formulas `e_1..e_m` per `(n, ring)`. Reads run concurrently;
/// extending an entry takes the write lock.
#[derive(Default)]
pub struct FormulaBook {
    entries: RwLock<HashMap<BookKey, Arc<Vec<EFormula>>>>,
}

impl FormulaBook {
    pub fn new() -> Self {
        FormulaBook::default()
    }

    /// The process-wide book used by [`express_e`].
    pub fn global() -> &'static FormulaBook {
        static BOOK: OnceLock<FormulaBook> = OnceLock::new();
        BOOK.get_or_init(FormulaBook::new)
    }

    /// Formulas for `e_1..e_k`.
    pub fn prefix(&self, k: usize, n: usize, spec: RingSpec) -> Result<Arc<Vec<EFormula>>> {
        check_range(k, n)?;
        if let Some(v) = self.entries.read().expect("book lock").get(&(n, spec)) {
            if v.len() >= k {
                return Ok(v.clone());
            }
        }
        let mut guard = self.entries.write().expect("book lock");
        let existing = guard.get(&(n, spec)).cloned().unwrap_or_default();
        if existing.len() >= k {
            return Ok(existing);
        }
        let mut formulas: Vec<EFormula> = existing.as_ref().clone();
        while formulas.len() < k {
            let next = synthesize(formulas.len() + 1, n, spec, &formulas)?;
            formulas.push(next);
        }
        let arc = Arc::new(formulas);
        guard.insert((n, spec), arc.clone());
        Ok(arc)
    }

    pub fn get(&self, k: usize, n: usize, spec: RingSpec) -> Result<EFormula> {
        Ok(self.prefix(k, n, spec)?[k - 1].clone())
    }
}

fn check_range(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidRange(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// `e_k` in `n` variables as a fraction of power-sum symbols.
pub fn express_e(k: usize, n: usize, spec: RingSpec) -> Result<EFormula> {
    FormulaBook::global().get(k, n, spec)
}

/// Builds `e_k` from the formulas for `e_1..e_{k-1}`.
fn synthesize(k: usize, n: usize, spec: RingSpec, lower: &[EFormula]) -> Result<EFormula> {
    let mut lower_e: Vec<PRat> = vec![PRat::one(spec)];
    lower_e.extend(lower.iter().take(k - 1).map(|f| f.value.clone()));
    if spec.is_invertible_int(k as u64) {
        let p: Vec<PRat> = (1..=k).map(|i| PRat::symbol(spec, i)).collect();
        let value = newton_e_from_p_invertible(k, spec, &lower_e, &p)?;
        return Ok(EFormula { k, n, spec, value, route: Route::Newton, denominator_id: DenominatorId::Unit });
    }
    let rel = LastRowRelation::new(n, k, spec)?;
    let (sum, delta) = rel.solve(&lower_e, |c| PRat::from_ppoly(c.clone()));
    let value = sum.div_ppoly(&delta)?;
    Ok(EFormula {
        k,
        n,
        spec,
        value,
        route: Route::Hankel,
        denominator_id: DenominatorId::Hankel(HankelSpec::standard(n - k + 1, n)),
    })
}

/// Whether `det P_{n-k+1,n}` is non-zero at the point `values`, i.e.
/// whether the last-row relation for `e_k` can be divided out there.
pub fn denominator_test(k: usize, n: usize, values: &[Coeff]) -> bool {
    assert!(k >= 1 && k <= n && values.len() == n, "need 1 <= k <= n and n values");
    let d = n - k + 1;
    let spec = values[0].spec();
    let sums: Vec<Coeff> = (1..2 * d).map(|i| power_sum(i, n, spec).eval(values)).collect();
    let m: Vec<Vec<Coeff>> =
        (0..d).map(|i| (0..d).map(|j| sums[i + j].clone()).collect()).collect();
    !linalg::determinant(&m).is_zero()
}

/// Outcome of checking a formula against `e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Mismatch,
    DenominatorVanishes,
}

/// Substitutes `P_i ↦ p_i` written in the e-basis and checks
/// `num = e_k · den`. Since `e_1..e_n` are algebraically independent this
/// is equivalent to the identity in `x1..xn`.
pub fn check_formula(f: &EFormula) -> Verdict {
    let table = p_to_e_table(f.value.max_symbol(), f.n, f.spec);
    let den = f.value.den().subst_e_with(f.n, &table);
    if den.is_zero() {
        return Verdict::DenominatorVanishes;
    }
    let num = f.value.num().subst_e_with(f.n, &table);
    if num == &EExpansion::e(f.k, f.n, f.spec) * &den {
        Verdict::Verified
    } else {
        Verdict::Mismatch
    }
}

pub fn verify_formula(f: &EFormula) -> bool {
    check_formula(f) == Verdict::Verified
}

/// The same certificate computed in `x1..xn`: `exact_divide(num, den)`
/// must equal `e_k(x1..xn)`.
pub fn verify_formula_x(f: &EFormula) -> bool {
    match f.value.subst_x(f.n) {
        Ok((num, den)) => num.exact_divide(&den).is_ok_and(|q| q == elementary(f.k, f.n, f.spec)),
        Err(_) => false,
    }
}
