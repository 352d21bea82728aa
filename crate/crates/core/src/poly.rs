//! Sparse polynomials over a [`RingSpec`] in an open-ended set of variables.
//!
//! [`Poly`] is the shared engine behind [`MPoly`](crate::MPoly) (variables
//! `x1..xn`), [`EExpansion`](crate::EExpansion) (variables `e1..en`) and
//! [`PPoly`](crate::PPoly) (formal symbols `P1, P2, ...`). Terms are kept in a
//! `BTreeMap` under graded-lexicographic order, so the leading term is always
//! the last entry.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ring::{Coeff, RingSpec};

/// Exponent vector with trailing zeros trimmed.
///
/// The derived ordering compares total degree first and then exponent
/// vectors lexicographically, with `x1 > x2 > ...`. Trimming makes the
/// `Vec` comparison agree with comparing zero-padded vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    /// `x_var^exp` with a 0-based variable index.
    pub fn var(var: usize, exp: u32) -> Self {
        let mut exps = vec![0; var + 1];
        exps[var] = exp;
        Monomial::from_exponents(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// One past the highest variable index that occurs.
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (&self.exps, &other.exps)
        } else {
            (&other.exps, &self.exps)
        };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short) {
            *e += s;
        }
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut exps = self.exps.clone();
        for (e, o) in exps.iter_mut().zip(&other.exps) {
            *e -= o;
        }
        Some(Monomial::from_exponents(exps))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial::from_exponents(exps)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial::from_exponents(self.exps.iter().map(|e| e * k).collect())
    }
}

/// A sparse polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    spec: RingSpec,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(spec: RingSpec) -> Self {
        Poly { spec, terms: BTreeMap::new() }
    }

    pub fn one(spec: RingSpec) -> Self {
        Poly::constant(spec.one())
    }

    pub fn constant(c: Coeff) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn from_i64(spec: RingSpec, value: i64) -> Self {
        Poly::constant(spec.from_i64(value))
    }

    pub fn var(spec: RingSpec, var: usize) -> Self {
        Poly::monomial(Monomial::var(var, 1), spec.one())
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        let spec = c.spec();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { spec, terms }
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms(spec: RingSpec, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(c.spec(), spec, "coefficient from a different ring");
            match acc.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut o) => o.get_mut().add_assign_ref(&c),
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { spec, terms: acc }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.last_key_value()
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// One past the highest variable index in use.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_spec(&self, other: &Poly) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::MixedContext(format!("rings {} and {}", self.spec, other.spec)))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        let mut out = self.clone();
        out.add_assign_poly(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &self.spec.from_i64(-1), &Monomial::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_assign_poly(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Coeff) {
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
        }
    }

    /// `self += scale * shift * other`.
    fn add_scaled(&mut self, other: &Poly, scale: &Coeff, shift: &Monomial) {
        for (m, c) in &other.terms {
            self.add_term(m.mul(shift), &(c * scale));
        }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.spec);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            return large.scale_shift(c, m);
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(large.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    Entry::Occupied(mut o) => o.get_mut().add_assign_ref(&prod),
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly { spec: self.spec, terms }
    }

    fn scale_shift(&self, c: &Coeff, m: &Monomial) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .filter(|(_, cc)| !cc.is_zero())
            .collect();
        Poly { spec: self.spec, terms }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.scale_shift(c, &Monomial::one())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        self.scale_shift(&self.spec.one(), m)
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.spec);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails with [`Error::NotDivisible`]
    /// when there is a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        self.check_spec(divisor)?;
        let (lm_d, lc_d) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::NotDivisible),
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.spec);
        while let Some((lm, lc)) = rem.leading_term() {
            let m = lm.div(&lm_d).ok_or(Error::NotDivisible)?;
            let c = lc.checked_div(&lc_d).map_err(|_| Error::NotDivisible)?;
            rem.add_scaled(divisor, &-&c, &m);
            quot.add_term(m, &c);
        }
        Ok(quot)
    }

    /// Divides every term by `m`, which must divide all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (mm, c) in &self.terms {
            terms.insert(mm.div(m)?, c.clone());
        }
        Some(Poly { spec: self.spec, terms })
    }

    /// Largest monomial dividing every term (`1` for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Ring homomorphism sending variable `i` to `images[i]`, evaluated by
    /// nested Horner schemes (outermost in the highest variable).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let width = self.width();
        assert!(width <= images.len(), "missing image for variable {}", images.len());
        let target = images.first().map_or(self.spec, |p| p.spec);
        let terms: Vec<(&[u32], &Coeff)> =
            self.terms.iter().map(|(m, c)| (m.exponents(), c)).collect();
        horner(target, &terms, width, images)
    }

    /// Evaluates at a point; missing coordinates must not occur.
    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        let mut acc = self.spec.zero();
        let mut powers: HashMap<(usize, u32), Coeff> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| point[i].pow(e));
                term = &term * p;
            }
            acc.add_assign_ref(&term);
        }
        acc
    }

    /// Substitutes constants for the variables with `Some` value and keeps
    /// the others symbolic.
    pub fn partial_eval(&self, values: &[Option<Coeff>]) -> Poly {
        let mut out = Poly::zero(self.spec);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exponents().to_vec();
            for (i, e) in exps.iter_mut().enumerate() {
                if *e == 0 {
                    continue;
                }
                if let Some(Some(v)) = values.get(i) {
                    coeff = &coeff * &v.pow(*e);
                    *e = 0;
                }
            }
            out.add_term(Monomial::from_exponents(exps), &coeff);
        }
        out
    }

    /// Renames variables: variable `i` becomes `map[i]`.
    pub fn rename_vars(&self, map: &[usize]) -> Poly {
        let mut out = Poly::zero(self.spec);
        for (m, c) in &self.terms {
            let mut exps = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i];
                if exps.len() <= j {
                    exps.resize(j + 1, 0);
                }
                exps[j] += e;
            }
            out.add_term(Monomial::from_exponents(exps), c);
        }
        out
    }

    /// Maps every coefficient into another ring through `f`.
    pub fn map_coeffs(&self, spec: RingSpec, f: impl Fn(&Coeff) -> Coeff) -> Poly {
        Poly::from_terms(spec, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Human-readable rendering, highest term first.
    pub fn render(&self, var_name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative_display();
            let text = c.balanced_string();
            let magnitude = text.trim_start_matches('-');
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        var_name(i)
                    } else {
                        format!("{}^{}", var_name(i), e)
                    }
                })
                .collect();
            if body.is_empty() {
                out.push_str(magnitude);
            } else {
                if magnitude != "1" {
                    let _ = write!(out, "{magnitude}*");
                }
                out.push_str(&body.join("*"));
            }
        }
        out
    }
}

fn horner(spec: RingSpec, terms: &[(&[u32], &Coeff)], width: usize, images: &[Poly]) -> Poly {
    if width == 0 {
        let mut acc = spec.zero();
        for (_, c) in terms {
            acc.add_assign_ref(c);
        }
        return Poly::constant(acc);
    }
    let var = width - 1;
    let mut buckets: BTreeMap<u32, Vec<(&[u32], &Coeff)>> = BTreeMap::new();
    for &(exps, c) in terms {
        let e = exps.get(var).copied().unwrap_or(0);
        buckets.entry(e).or_default().push((exps, c));
    }
    let top = *buckets.keys().next_back().unwrap_or(&0);
    let mut acc = Poly::zero(spec);
    for j in (0..=top).rev() {
        if !acc.is_zero() {
            acc = &acc * &images[var];
        }
        if let Some(bucket) = buckets.get(&j) {
            let inner = horner(spec, bucket, var, images);
            acc.add_assign_poly(&inner);
        }
    }
    acc
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("mixed rings")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("mixed rings")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("mixed rings")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&self.spec.from_i64(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn x(i: usize) -> Poly {
        Poly::var(z(), i)
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert_eq!(Monomial::from_exponents(vec![1, 0, 0]).exponents(), &[1]);
    }

    #[test]
    fn exact_division_round_trip() {
        let a = &(&x(0) + &x(1)) * &x(2);
        let b = &x(0) - &x(1);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!((&x(0) + &x(1)).exact_div(&(&x(0) * &x(1))), Err(Error::NotDivisible));
    }

    #[test]
    fn integer_exact_division_needs_divisible_coefficients() {
        let two_x = x(0).scale(&z().from_i64(2));
        assert!(x(0).exact_div(&two_x).is_err());
        assert_eq!(two_x.exact_div(&x(0)).unwrap(), Poly::from_i64(z(), 2));
    }

    #[test]
    fn substitution_is_horner_evaluation() {
        // f = x0^2 x1 + 3 x1 + 1, x0 -> y0 + y1, x1 -> y0
        let f = &(&(&x(0) * &x(0)) * &x(1)) + &(&x(1).scale(&z().from_i64(3)) + &Poly::one(z()));
        let img = [&x(0) + &x(1), x(0)];
        let direct = &(&(&img[0] * &img[0]) * &img[1])
            + &(&img[1].scale(&z().from_i64(3)) + &Poly::one(z()));
        assert_eq!(f.substitute(&img), direct);
    }

    #[test]
    fn render_uses_balanced_residues() {
        let f3 = RingSpec::PrimeField(3);
        let p = Poly::from_terms(
            f3,
            [
                (Monomial::var(0, 2), f3.from_i64(1)),
                (Monomial::var(1, 1), f3.from_i64(2)),
                (Monomial::one(), f3.from_i64(2)),
            ],
        );
        assert_eq!(p.render(|i| format!("x{}", i + 1)), "x1^2 - x2 - 1");
    }

    #[test]
    fn partial_evaluation_keeps_symbols() {
        let f = &(&x(0) * &x(1)) + &x(2);
        let part = f.partial_eval(&[Some(z().from_i64(2)), None, None]);
        assert_eq!(part, &x(1).scale(&z().from_i64(2)) + &x(2));
    }
}
