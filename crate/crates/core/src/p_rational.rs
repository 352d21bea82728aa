//! Polynomials and fractions in formal power-sum symbols `P1, P2, ...`.
//!
//! A [`PPoly`] stores the formal monomial `P_{k1}···P_{kl}` under the
//! partition `(k1, .., kl)`. The symbols are algebraically independent:
//! no relation such as `P2 = P1^2` is ever applied automatically.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::json::{self, PRatDoc, PartitionTerm};
use crate::linalg::RingElement;
use crate::multipoly::{power_sum, MPoly};
use crate::partition::Partition;
use crate::poly::{Monomial, Poly};
use crate::render::{render_partition_poly, FactorOrder, Style};
use crate::ring::{Coeff, RingSpec};
use crate::sym_basis::{p_to_e_table, EExpansion};

/// A polynomial in the formal symbols `P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    // variable i stands for P_{i+1}
    poly: Poly,
}

impl PPoly {
    pub fn zero(spec: RingSpec) -> Self {
        PPoly { poly: Poly::zero(spec) }
    }

    pub fn one(spec: RingSpec) -> Self {
        PPoly { poly: Poly::one(spec) }
    }

    pub fn constant(c: Coeff) -> Self {
        PPoly { poly: Poly::constant(c) }
    }

    pub fn from_i64(spec: RingSpec, v: i64) -> Self {
        PPoly { poly: Poly::from_i64(spec, v) }
    }

    /// The symbol `P_i` (1-based).
    pub fn symbol(spec: RingSpec, i: usize) -> Self {
        assert!(i >= 1, "power-sum symbols start at P1");
        PPoly { poly: Poly::var(spec, i - 1) }
    }

    /// `c · P_λ`.
    pub fn from_partition(part: &Partition, c: Coeff) -> Self {
        PPoly { poly: Poly::monomial(part.to_monomial(), c) }
    }

    pub fn from_terms(
        spec: RingSpec,
        terms: impl IntoIterator<Item = (Partition, Coeff)>,
    ) -> Self {
        PPoly { poly: Poly::from_terms(spec, terms.into_iter().map(|(p, c)| (p.to_monomial(), c))) }
    }

    pub fn from_poly(poly: Poly) -> Self {
        PPoly { poly }
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn spec(&self) -> RingSpec {
        self.poly.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.poly.is_constant()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    /// Terms as `(λ, coefficient)`, highest first.
    pub fn terms(&self) -> Vec<(Partition, Coeff)> {
        self.poly
            .terms()
            .rev()
            .map(|(m, c)| (Partition::from_monomial(m), c.clone()))
            .collect()
    }

    pub fn coeff(&self, part: &Partition) -> Coeff {
        self.poly.coeff(&part.to_monomial())
    }

    /// Largest symbol index occurring (0 for constants).
    pub fn max_symbol(&self) -> usize {
        self.poly.width()
    }

    /// Indices of the symbols that occur.
    pub fn symbols(&self) -> Vec<usize> {
        let mut used = vec![false; self.max_symbol()];
        for (m, _) in self.poly.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i + 1).collect()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        PPoly { poly: self.poly.scale(c) }
    }

    pub fn pow(&self, k: u32) -> Self {
        PPoly { poly: self.poly.pow(k) }
    }

    pub fn try_add(&self, other: &PPoly) -> Result<Self> {
        Ok(PPoly { poly: self.poly.try_add(&other.poly)? })
    }

    pub fn try_sub(&self, other: &PPoly) -> Result<Self> {
        Ok(PPoly { poly: self.poly.try_sub(&other.poly)? })
    }

    pub fn try_mul(&self, other: &PPoly) -> Result<Self> {
        Ok(PPoly { poly: self.poly.try_mul(&other.poly)? })
    }

    pub fn exact_div(&self, other: &PPoly) -> Result<Self> {
        Ok(PPoly { poly: self.poly.exact_div(&other.poly)? })
    }

    /// Replaces `P_i` by `images[i-1]`; symbols beyond the list are kept.
    pub fn substitute(&self, images: &[PPoly]) -> PPoly {
        let spec = self.spec();
        let full: Vec<Poly> = (0..self.max_symbol())
            .map(|i| images.get(i).map_or_else(|| Poly::var(spec, i), |p| p.poly.clone()))
            .collect();
        PPoly { poly: self.poly.substitute(&full) }
    }

    /// Replaces `P_i` by `values[i-1]` where it is `Some`.
    pub fn partial_eval(&self, values: &[Option<Coeff>]) -> PPoly {
        PPoly { poly: self.poly.partial_eval(values) }
    }

    /// Evaluates with `values[i-1]` for `P_i`.
    pub fn eval(&self, values: &[Coeff]) -> Result<Coeff> {
        if values.len() < self.max_symbol() {
            return Err(Error::InsufficientTraces { needed: self.max_symbol(), got: values.len() });
        }
        Ok(self.poly.eval(values))
    }

    /// `P_i ↦ p_i(x1..xn)`.
    pub fn subst_x(&self, n: usize) -> MPoly {
        let spec = self.spec();
        let images: Vec<Poly> =
            (1..=self.max_symbol()).map(|i| power_sum(i, n, spec).into_poly()).collect();
        MPoly::new(n, self.poly.substitute(&images)).expect("power sums live in n variables")
    }

    /// `P_i ↦ p_i` written in the e-basis of `n` variables.
    pub fn subst_e(&self, n: usize) -> EExpansion {
        let table = p_to_e_table(self.max_symbol(), n, self.spec());
        self.subst_e_with(n, &table)
    }

    /// As [`PPoly::subst_e`] with a precomputed table `p_0, p_1, ..`.
    pub fn subst_e_with(&self, n: usize, table: &[EExpansion]) -> EExpansion {
        let images: Vec<Poly> =
            table[1..=self.max_symbol()].iter().map(|e| e.as_poly().clone()).collect();
        EExpansion::from_poly(n, self.poly.substitute(&images)).expect("e-variables stay within n")
    }

    pub fn render(&self, style: Style) -> String {
        render_partition_poly(&self.poly, "p", style, FactorOrder::Ascending)
    }

    pub fn to_json_terms(&self) -> Vec<PartitionTerm> {
        json::partition_terms(&self.poly)
    }
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

impl std::ops::Add for &PPoly {
    type Output = PPoly;
    fn add(self, rhs: &PPoly) -> PPoly {
        PPoly { poly: &self.poly + &rhs.poly }
    }
}

impl std::ops::Sub for &PPoly {
    type Output = PPoly;
    fn sub(self, rhs: &PPoly) -> PPoly {
        PPoly { poly: &self.poly - &rhs.poly }
    }
}

impl std::ops::Mul for &PPoly {
    type Output = PPoly;
    fn mul(self, rhs: &PPoly) -> PPoly {
        PPoly { poly: &self.poly * &rhs.poly }
    }
}

impl std::ops::Neg for &PPoly {
    type Output = PPoly;
    fn neg(self) -> PPoly {
        PPoly { poly: -&self.poly }
    }
}

impl RingElement for PPoly {
    fn zero_like(&self) -> Self {
        PPoly::zero(self.spec())
    }
    fn one_like(&self) -> Self {
        PPoly::one(self.spec())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn exact_div_elem(&self, other: &Self) -> Option<Self> {
        self.exact_div(other).ok()
    }
}

/// A normalized fraction of [`PPoly`]s.
///
/// Normal form: no common monomial factor, no common integer content
/// (over `Z`), and a denominator whose leading coefficient is `1` over a
/// field or positive over `Z`. Equality compares by cross-multiplication.
#[derive(Clone, Debug)]
pub struct PRat {
    num: PPoly,
    den: PPoly,
}

impl PRat {
    pub fn new(num: PPoly, den: PPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFraction);
        }
        if num.spec() != den.spec() {
            return Err(Error::MixedContext(format!("{} vs {}", num.spec(), den.spec())));
        }
        Ok(PRat::normalized(num, den))
    }

    pub fn from_ppoly(p: PPoly) -> Self {
        let spec = p.spec();
        PRat { num: p, den: PPoly::one(spec) }
    }

    pub fn zero(spec: RingSpec) -> Self {
        PRat::from_ppoly(PPoly::zero(spec))
    }

    pub fn one(spec: RingSpec) -> Self {
        PRat::from_ppoly(PPoly::one(spec))
    }

    pub fn symbol(spec: RingSpec, i: usize) -> Self {
        PRat::from_ppoly(PPoly::symbol(spec, i))
    }

    pub fn num(&self) -> &PPoly {
        &self.num
    }

    pub fn den(&self) -> &PPoly {
        &self.den
    }

    pub fn spec(&self) -> RingSpec {
        self.num.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn max_symbol(&self) -> usize {
        self.num.max_symbol().max(self.den.max_symbol())
    }

    fn normalized(num: PPoly, den: PPoly) -> Self {
        let spec = num.spec();
        if num.is_zero() {
            return PRat { num, den: PPoly::one(spec) };
        }
        let g = num.poly.monomial_content().gcd(&den.poly.monomial_content());
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                PPoly { poly: num.poly.div_monomial(&g).expect("content divides") },
                PPoly { poly: den.poly.div_monomial(&g).expect("content divides") },
            )
        };
        match spec {
            RingSpec::Integers => {
                let mut content = num_bigint::BigInt::zero();
                for (_, c) in num.poly.terms().chain(den.poly.terms()) {
                    content = content.gcd(&c.to_bigint().expect("integer coefficient"));
                    if content.is_one() {
                        break;
                    }
                }
                let lc_negative = den
                    .poly
                    .leading_term()
                    .map(|(_, c)| c.to_bigint().expect("integer").is_negative())
                    .unwrap_or(false);
                if lc_negative {
                    content = -content;
                }
                if !content.is_one() {
                    let divide = |p: &Poly| {
                        Poly::from_terms(
                            spec,
                            p.terms().map(|(m, c)| {
                                (m.clone(), Coeff::Int(c.to_bigint().expect("integer") / &content))
                            }),
                        )
                    };
                    num = PPoly { poly: divide(&num.poly) };
                    den = PPoly { poly: divide(&den.poly) };
                }
            }
            _ => {
                let lc = den.poly.leading_term().expect("non-zero denominator").1.clone();
                if !lc.is_one() {
                    let inv = lc.inv().expect("field element is a unit");
                    num = num.scale(&inv);
                    den = den.scale(&inv);
                }
            }
        }
        PRat { num, den }
    }

    /// Re-applies normalization; a no-op on values built by this module.
    pub fn normalize(&self) -> Self {
        PRat::normalized(self.num.clone(), self.den.clone())
    }

    fn check(&self, other: &PRat) -> Result<()> {
        if self.spec() != other.spec() {
            return Err(Error::MixedContext(format!("{} vs {}", self.spec(), other.spec())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PRat) -> Result<Self> {
        self.check(other)?;
        if self.den == other.den {
            return Ok(PRat::normalized(&self.num + &other.num, self.den.clone()));
        }
        if let Ok(q) = other.den.exact_div(&self.den) {
            return Ok(PRat::normalized(&(&self.num * &q) + &other.num, other.den.clone()));
        }
        if let Ok(q) = self.den.exact_div(&other.den) {
            return Ok(PRat::normalized(&self.num + &(&other.num * &q), self.den.clone()));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(PRat::normalized(num, &self.den * &other.den))
    }

    pub fn try_sub(&self, other: &PRat) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &PRat) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(PRat::zero(self.spec()));
        }
        // cross-cancel exact factors before multiplying out
        let (a, d) = cancel_exact(&self.num, &other.den);
        let (c, b) = cancel_exact(&other.num, &self.den);
        Ok(PRat::normalized(&a * &c, &b * &d))
    }

    pub fn try_div(&self, other: &PRat) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZeroFraction);
        }
        self.try_mul(&PRat { num: other.den.clone(), den: other.num.clone() })
    }

    pub fn neg(&self) -> Self {
        PRat { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        PRat::normalized(self.num.scale(c), self.den.clone())
    }

    /// Multiplies by a polynomial.
    pub fn mul_ppoly(&self, p: &PPoly) -> Self {
        let (a, d) = cancel_exact(p, &self.den);
        PRat::normalized(&self.num * &a, d)
    }

    /// Divides by a non-zero polynomial.
    pub fn div_ppoly(&self, p: &PPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::DivisionByZeroFraction);
        }
        let (a, d) = cancel_exact(&self.num, p);
        Ok(PRat::normalized(a, &self.den * &d))
    }

    /// Removes common monomial factors and, when numerator and
    /// denominator involve at most one symbol, their polynomial gcd.
    pub fn cancel_common(&self) -> Self {
        let base = self.normalize();
        let mut syms = base.num.symbols();
        syms.extend(base.den.symbols());
        syms.sort_unstable();
        syms.dedup();
        if syms.len() != 1 || base.den.is_constant() {
            return base;
        }
        let var = syms[0] - 1;
        let g = univariate_gcd(&base.num.poly, &base.den.poly, var);
        if g.is_constant() {
            return base;
        }
        let num = base.num.poly.exact_div(&g).expect("gcd divides numerator");
        let den = base.den.poly.exact_div(&g).expect("gcd divides denominator");
        PRat::normalized(PPoly { poly: num }, PPoly { poly: den })
    }

    /// Substitutes `P_i ↦ p_i(x1..xn)` and returns `(num, den)`.
    pub fn subst_x(&self, n: usize) -> Result<(MPoly, MPoly)> {
        let den = self.den.subst_x(n);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes(n));
        }
        Ok((self.num.subst_x(n), den))
    }

    /// Substitutes `P_i ↦ p_i` in the e-basis of `n` variables.
    pub fn subst_e(&self, n: usize) -> Result<(EExpansion, EExpansion)> {
        let table = p_to_e_table(self.max_symbol(), n, self.spec());
        let den = self.den.subst_e_with(n, &table);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes(n));
        }
        Ok((self.num.subst_e_with(n, &table), den))
    }

    /// Replaces `P_i` by `images[i-1]` in numerator and denominator.
    pub fn substitute(&self, images: &[PPoly]) -> Result<Self> {
        PRat::new(self.num.substitute(images), self.den.substitute(images))
    }

    pub fn partial_eval(&self, values: &[Option<Coeff>]) -> Result<Self> {
        PRat::new(self.num.partial_eval(values), self.den.partial_eval(values))
    }

    /// Evaluates at `P_i = values[i-1]`; a vanishing denominator is an
    /// error.
    pub fn eval(&self, values: &[Coeff]) -> Result<Coeff> {
        let den = self.den.eval(values)?;
        if den.is_zero() {
            return Err(Error::DivisionByZeroFraction);
        }
        let num = self.num.eval(values)?;
        num.checked_div(&den).map_err(Error::from)
    }

    pub fn render(&self, style: Style) -> String {
        let num = self.num.render(style);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.render(style);
        match style {
            Style::Text => {
                let wrap = |s: String, p: &PPoly| if p.len() > 1 { format!("({s})") } else { s };
                format!("{} / {}", wrap(num, &self.num), wrap(den, &self.den))
            }
            _ => format!("\\frac{{{num}}}{{{den}}}"),
        }
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    pub fn to_json(&self) -> PRatDoc {
        PRatDoc {
            ring: self.spec().to_string(),
            num: self.num.to_json_terms(),
            den: self.den.to_json_terms(),
        }
    }

    pub fn from_json(doc: &PRatDoc) -> Result<Self> {
        let spec = json::parse_ring(&doc.ring)?;
        let num = json::poly_from_partition_terms(spec, &doc.num, None)?;
        let den = json::poly_from_partition_terms(spec, &doc.den, None)?;
        PRat::new(PPoly { poly: num }, PPoly { poly: den })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: PRatDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        PRat::from_json(&doc)
    }
}

impl PartialEq for PRat {
    fn eq(&self, other: &PRat) -> bool {
        self.spec() == other.spec() && &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for PRat {}

impl fmt::Display for PRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

impl From<PPoly> for PRat {
    fn from(p: PPoly) -> Self {
        PRat::from_ppoly(p)
    }
}

/// Divides out `b` from `a` (or `a` from `b`) when one divides the other.
fn cancel_exact(a: &PPoly, b: &PPoly) -> (PPoly, PPoly) {
    let spec = a.spec();
    if b.is_constant() || a.is_zero() {
        return (a.clone(), b.clone());
    }
    if let Ok(q) = a.exact_div(b) {
        return (q, PPoly::one(spec));
    }
    if !a.is_constant() {
        if let Ok(q) = b.exact_div(a) {
            return (PPoly::one(spec), q);
        }
    }
    (a.clone(), b.clone())
}

/// Gcd of two polynomials in the single variable `var`, normalized to be
/// monic over a field and primitive with positive leading coefficient
/// over `Z`.
fn univariate_gcd(a: &Poly, b: &Poly, var: usize) -> Poly {
    let spec = a.spec();
    let field = if spec == RingSpec::Integers { RingSpec::Rationals } else { spec };
    let lift = |c: &Coeff| match c {
        Coeff::Int(v) => Coeff::Rat(num_rational::BigRational::from_integer(v.clone())),
        other => other.clone(),
    };
    let dense = |p: &Poly| -> Vec<Coeff> {
        let deg = p.terms().map(|(m, _)| m.exponent(var)).max().unwrap_or(0) as usize;
        let mut v = vec![field.zero(); deg + 1];
        for (m, c) in p.terms() {
            v[m.exponent(var) as usize] = lift(c);
        }
        v
    };
    let mut x = dense(a);
    let mut y = dense(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return Poly::one(spec);
    }
    let lc_inv = x.last().expect("non-empty").inv().expect("field unit");
    let monic: Vec<Coeff> = x.iter().map(|c| c * &lc_inv).collect();
    let coeffs: Vec<Coeff> = if spec == RingSpec::Integers {
        let mut lcm = num_bigint::BigInt::one();
        for c in &monic {
            if let Coeff::Rat(q) = c {
                lcm = lcm.lcm(q.denom());
            }
        }
        let ints: Vec<num_bigint::BigInt> = monic
            .iter()
            .map(|c| match c {
                Coeff::Rat(q) => (q * num_rational::BigRational::from_integer(lcm.clone())).to_integer(),
                _ => unreachable!("lifted to rationals"),
            })
            .collect();
        let content = ints.iter().fold(num_bigint::BigInt::zero(), |g, v| g.gcd(v));
        ints.into_iter().map(|v| Coeff::Int(v / &content)).collect()
    } else {
        monic
    };
    Poly::from_terms(
        spec,
        coeffs.into_iter().enumerate().map(|(e, c)| (Monomial::var(var, e as u32), c)),
    )
}

fn trim(v: &mut Vec<Coeff>) {
    while v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
}

fn poly_rem(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let mut r = a.to_vec();
    let lb_inv = b.last().expect("non-zero divisor").inv().expect("field unit");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().expect("non-empty") * &lb_inv;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&q * c);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Clears the denominators of one row by multiplying with the product of
/// its distinct denominators.
fn clear_row(row: &[PRat]) -> Vec<PPoly> {
    let spec = row[0].spec();
    let mut dens: Vec<&PPoly> = Vec::new();
    for q in row {
        if !q.den.is_one() && !dens.contains(&&q.den) {
            dens.push(&q.den);
        }
    }
    let l = dens.iter().fold(PPoly::one(spec), |acc, d| &acc * d);
    row.iter()
        .map(|q| &q.num * &l.exact_div(&q.den).expect("denominator divides the product"))
        .collect()
}

/// Row-reduces a `d × (d + c)` matrix of fractions to `(I_d | C)`.
///
/// Denominators are cleared row by row, then fraction-free Gauss–Jordan
/// elimination runs on polynomials, dividing exactly by the previous
/// pivot; each row is divided by the final common pivot at the end.
pub fn solve_reduce(m: &[Vec<PRat>]) -> Result<Vec<Vec<PRat>>> {
    let d = m.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let cols = m[0].len();
    if cols < d || m.iter().any(|row| row.len() != cols) {
        return Err(Error::InvalidRange(format!("expected d × (d + c) matrix, got {d} rows")));
    }
    let spec = m[0][0].spec();
    let mut a: Vec<Vec<PPoly>> = m.iter().map(|row| clear_row(row)).collect();
    fraction_free_gauss_jordan(&mut a)?;
    let mut out = Vec::with_capacity(d);
    for (i, row) in a.iter().enumerate() {
        let pivot = &row[i];
        let mut reduced = Vec::with_capacity(cols);
        for (j, entry) in row.iter().enumerate() {
            reduced.push(if j < d {
                if i == j { PRat::one(spec) } else { PRat::zero(spec) }
            } else {
                PRat::new(entry.clone(), pivot.clone())?
            });
        }
        out.push(reduced);
    }
    Ok(out)
}

/// In-place fraction-free Gauss–Jordan elimination on the leading square
/// block. Afterwards the block is `δ·I` with `δ = ±det`.
pub fn fraction_free_gauss_jordan(a: &mut [Vec<PPoly>]) -> Result<()> {
    let d = a.len();
    let spec = a[0][0].spec();
    let mut prev = PPoly::one(spec);
    for k in 0..d {
        let pivot_row = (k..d).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularBlock(k))?;
        a.swap(k, pivot_row);
        let pivot = a[k][k].clone();
        let row_k = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for (j, entry) in row.iter_mut().enumerate() {
                if j == k {
                    continue;
                }
                let t = &(&pivot * entry) - &(&factor * &row_k[j]);
                *entry = if prev.is_one() { t } else { t.exact_div(&prev)? };
            }
            row[k] = PPoly::zero(spec);
        }
        prev = pivot;
    }
    Ok(())
}

/// Fraction-free forward elimination (Bareiss) on the leading block;
/// returns the last row, whose pivot entry is `±det` of the block.
pub fn bareiss_last_row(mut a: Vec<Vec<PPoly>>) -> Result<Vec<PPoly>> {
    let d = a.len();
    let spec = a[0][0].spec();
    let mut prev = PPoly::one(spec);
    for k in 0..d {
        let pivot_row = (k..d).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularBlock(k))?;
        a.swap(k, pivot_row);
        if k + 1 == d {
            break;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let row_k = &top[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..row.len() {
                let t = &(&row_k[k] * &row[j]) - &(&factor * &row_k[j]);
                row[j] = if prev.is_one() { t } else { t.exact_div(&prev)? };
            }
            row[k] = PPoly::zero(spec);
        }
        prev = a[k][k].clone();
    }
    Ok(a.pop().expect("non-empty"))
}
