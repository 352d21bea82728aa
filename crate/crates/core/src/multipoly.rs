//! Polynomials in `x1..xn` and the symmetric families `e_k`, `p_k`, `h_k`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::json::{self, MPolyDoc};
use crate::linalg;
use crate::poly::{Monomial, Poly};
use crate::ring::{Coeff, RingSpec};

/// A polynomial in the variables `x1..xn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    n: usize,
    poly: Poly,
}

impl MPoly {
    /// Wraps a [`Poly`] whose variables all lie in `x1..xn`.
    pub fn new(n: usize, poly: Poly) -> Result<Self> {
        if poly.width() > n {
            return Err(Error::MixedContext(format!(
                "polynomial uses x{} but n = {n}",
                poly.width()
            )));
        }
        Ok(MPoly { n, poly })
    }

    pub fn zero(n: usize, spec: RingSpec) -> Self {
        MPoly { n, poly: Poly::zero(spec) }
    }

    pub fn one(n: usize, spec: RingSpec) -> Self {
        MPoly { n, poly: Poly::one(spec) }
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        MPoly { n, poly: Poly::constant(c) }
    }

    /// The variable `x_i`, `1 <= i <= n`.
    pub fn var(n: usize, spec: RingSpec, i: usize) -> Self {
        assert!((1..=n).contains(&i), "x{i} out of range for n = {n}");
        MPoly { n, poly: Poly::var(spec, i - 1) }
    }

    /// The monomial with the given exponent vector (length `n`).
    pub fn monomial(exps: &[u32], c: Coeff) -> Self {
        MPoly { n: exps.len(), poly: Poly::monomial(Monomial::from_exponents(exps.to_vec()), c) }
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

    pub fn into_poly(self) -> Poly {
        self.poly
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

    /// Coefficient of the monomial with exponent vector `exps`.
    pub fn coeff(&self, exps: &[u32]) -> Coeff {
        self.poly.coeff(&Monomial::from_exponents(exps.to_vec()))
    }

    /// Terms as `(exponent vector of length n, coefficient)`, highest first.
    pub fn terms(&self) -> Vec<(Vec<u32>, Coeff)> {
        self.poly
            .terms()
            .rev()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(self.n, 0);
                (e, c.clone())
            })
            .collect()
    }

    fn check(&self, other: &MPoly) -> Result<()> {
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

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        Ok(MPoly { n: self.n, poly: &self.poly + &other.poly })
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        Ok(MPoly { n: self.n, poly: &self.poly - &other.poly })
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        Ok(MPoly { n: self.n, poly: &self.poly * &other.poly })
    }

    pub fn pow(&self, k: u32) -> MPoly {
        MPoly { n: self.n, poly: self.poly.pow(k) }
    }

    pub fn scale(&self, c: &Coeff) -> MPoly {
        MPoly { n: self.n, poly: self.poly.scale(c) }
    }

    /// `self / divisor`, failing with [`Error::NotDivisible`] on a remainder.
    pub fn exact_divide(&self, divisor: &MPoly) -> Result<MPoly> {
        self.check(divisor)?;
        Ok(MPoly { n: self.n, poly: self.poly.exact_div(&divisor.poly)? })
    }

    /// Sets `x_k := 0` (1-based). For power sums `p_j` with `j >= 1` and
    /// for sums of monomials this is `f(x1, .., x̂k, .., xn)`; it does not
    /// model `p_0(x̂k) = n - 1`.
    pub fn drop_variable(&self, k: usize) -> MPoly {
        assert!((1..=self.n).contains(&k), "x{k} out of range for n = {}", self.n);
        let mut values = vec![None; self.n];
        values[k - 1] = Some(self.spec().zero());
        MPoly { n: self.n, poly: self.poly.partial_eval(&values) }
    }

    /// Exchanges `x_i` and `x_j` (1-based).
    pub fn swap_variables(&self, i: usize, j: usize) -> MPoly {
        let mut map: Vec<usize> = (0..self.n).collect();
        map.swap(i - 1, j - 1);
        MPoly { n: self.n, poly: self.poly.rename_vars(&map) }
    }

    /// Invariance under every adjacent transposition.
    pub fn is_symmetric(&self) -> bool {
        (1..self.n).all(|i| self.swap_variables(i, i + 1) == *self)
    }

    /// Places this polynomial into `n_new` variables, sending `x_i` to
    /// `x_{positions[i-1]}` (positions are 1-based).
    pub fn embed(&self, n_new: usize, positions: &[usize]) -> MPoly {
        assert_eq!(positions.len(), self.n);
        assert!(positions.iter().all(|&p| (1..=n_new).contains(&p)));
        let map: Vec<usize> = positions.iter().map(|p| p - 1).collect();
        MPoly { n: n_new, poly: self.poly.rename_vars(&map) }
    }

    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.n);
        self.poly.eval(point)
    }

    pub fn to_json(&self) -> MPolyDoc {
        MPolyDoc { n: self.n, ring: self.spec().to_string(), terms: json::exp_terms(&self.poly, self.n) }
    }

    pub fn from_json(doc: &MPolyDoc) -> Result<MPoly> {
        if doc.n == 0 || doc.n > json::MAX_SYMBOL {
            return Err(Error::Json(format!("n = {} out of range", doc.n)));
        }
        let spec = json::parse_ring(&doc.ring)?;
        Ok(MPoly { n: doc.n, poly: json::poly_from_exp_terms(spec, doc.n, &doc.terms)? })
    }

    pub fn from_json_str(text: &str) -> Result<MPoly> {
        let doc: MPolyDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        MPoly::from_json(&doc)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(|i| format!("x{}", i + 1)))
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.try_add(rhs).expect("mismatched polynomial context")
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.try_sub(rhs).expect("mismatched polynomial context")
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.try_mul(rhs).expect("mismatched polynomial context")
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { n: self.n, poly: -&self.poly }
    }
}

/// `e_k(x1..xn)`: the sum over all `k`-subsets. `e_0 = 1`, `e_k = 0` for
/// `k > n`.
pub fn elementary(k: usize, n: usize, spec: RingSpec) -> MPoly {
    let one = spec.one();
    let terms = (0..n).combinations(k).map(|subset| {
        let mut exps = vec![0u32; n];
        for i in subset {
            exps[i] = 1;
        }
        (Monomial::from_exponents(exps), one.clone())
    });
    MPoly { n, poly: Poly::from_terms(spec, terms) }
}

/// `p_k = x1^k + ... + xn^k`; `p_0` is the image of `n`.
pub fn power_sum(k: usize, n: usize, spec: RingSpec) -> MPoly {
    if k == 0 {
        return MPoly::constant(n, spec.from_i64(n as i64));
    }
    let terms = (0..n).map(|i| (Monomial::var(i, k as u32), spec.one()));
    MPoly { n, poly: Poly::from_terms(spec, terms) }
}

/// `h_k`: the sum of all monomials of degree `k`.
pub fn complete_homogeneous(k: usize, n: usize, spec: RingSpec) -> MPoly {
    let one = spec.one();
    let terms = (0..n).combinations_with_replacement(k).map(|multiset| {
        let mut exps = vec![0u32; n];
        for i in multiset {
            exps[i] += 1;
        }
        (Monomial::from_exponents(exps), one.clone())
    });
    MPoly { n, poly: Poly::from_terms(spec, terms) }
}

/// `prod_{i<j} (x_i - x_j)^2`.
pub fn vandermonde_squared(n: usize, spec: RingSpec) -> MPoly {
    let mut acc = MPoly::one(n, spec);
    for i in 1..=n {
        for j in i + 1..=n {
            let diff = &MPoly::var(n, spec, i) - &MPoly::var(n, spec, j);
            acc = &acc * &diff.pow(2);
        }
    }
    acc
}

/// The Hankel matrix of power sums with entry `(i, j)` equal to
/// `p_{start+i+j-2}` (1-based), in `n` variables.
pub fn power_sum_hankel(d: usize, start: usize, n: usize, spec: RingSpec) -> Vec<Vec<MPoly>> {
    (0..d)
        .map(|i| (0..d).map(|j| power_sum(start + i + j, n, spec)).collect())
        .collect()
}

/// Determinant of a square matrix of polynomials sharing `n` and ring.
pub fn determinant(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let first = m
        .first()
        .and_then(|r| r.first())
        .ok_or_else(|| Error::InvalidRange("empty matrix".into()))?;
    let (n, spec) = (first.n, first.spec());
    if m.iter().any(|row| row.len() != m.len()) {
        return Err(Error::InvalidRange("matrix is not square".into()));
    }
    if m.iter().flatten().any(|e| e.n != n || e.spec() != spec) {
        return Err(Error::MixedContext("matrix entries disagree on n or ring".into()));
    }
    let inner: Vec<Vec<Poly>> =
        m.iter().map(|row| row.iter().map(|e| e.poly.clone()).collect()).collect();
    Ok(MPoly { n, poly: linalg::determinant(&inner) })
}
