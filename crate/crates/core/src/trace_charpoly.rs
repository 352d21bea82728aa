//! Characteristic polynomials of operators over a field recovered from the
//! traces `Tr(T), Tr(T^2), ..`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::newton_engine::LastRowRelation;
use crate::p_rational::{PPoly, PRat};
use crate::poly::{Monomial, Poly};
use crate::ring::{Coeff, RingSpec};

/// Upper bound on the number of candidate coefficient vectors examined by
/// the uniqueness check.
pub const GATE_BRANCH_LIMIT: usize = 1 << 16;

/// Largest accepted matrix dimension.
pub const MAX_DIMENSION: usize = 64;

/// `traces[d-1] = Tr(T^d)` for an `n`-dimensional operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSequence {
    spec: RingSpec,
    n: usize,
    traces: Vec<Coeff>,
}

impl TraceSequence {
    pub fn new(spec: RingSpec, n: usize, traces: Vec<Coeff>) -> Result<Self> {
        if !spec.is_field() {
            return Err(Error::NotAField(spec));
        }
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::InvalidRange(format!("dimension {n} outside 1..={MAX_DIMENSION}")));
        }
        if let Some(c) = traces.iter().find(|c| c.spec() != spec) {
            return Err(Error::MixedContext(format!("trace in {} for ring {spec}", c.spec())));
        }
        Ok(TraceSequence { spec, n, traces })
    }

    /// Parses integers or fractions into the field.
    pub fn from_strs(spec: RingSpec, n: usize, values: &[&str]) -> Result<Self> {
        let traces = values
            .iter()
            .map(|s| spec.parse_coeff(s).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        TraceSequence::new(spec, n, traces)
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn traces(&self) -> &[Coeff] {
        &self.traces
    }

    /// Number of traces needed: `2n+1-r` when the characteristic `r` is at
    /// most `n`, otherwise `n`.
    pub fn horizon(spec: RingSpec, n: usize) -> usize {
        match spec.characteristic() as usize {
            r if r != 0 && r <= n => 2 * n + 1 - r,
            _ => n,
        }
    }

    /// Values of `k` with `kr` in range and `Tr(T^{kr}) ≠ Tr(T^k)^r`.
    pub fn frobenius_violations(&self) -> Vec<usize> {
        let r = self.spec.characteristic() as usize;
        if r == 0 {
            return Vec::new();
        }
        (1..=self.traces.len() / r)
            .filter(|&k| self.traces[k * r - 1] != self.traces[k - 1].pow(r as u32))
            .collect()
    }
}

/// How a coefficient `e_k` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Newton,
    Hankel,
    RemovablePole,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Newton => "newton",
            Provenance::Hankel => "hankel",
            Provenance::RemovablePole => "removable-pole",
        })
    }
}

/// `X^n - e1 X^{n-1} + .. + (-1)^n e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    spec: RingSpec,
    /// `e_1..e_n`
    e: Vec<Coeff>,
    provenance: Vec<Provenance>,
}

/// JSON form: `{"coeffs": [...], "provenance": {"e1": "newton", ..}}` with
/// coefficients listed from `X^n` down to `X^0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharPolyDoc {
    pub ring: String,
    pub coeffs: Vec<String>,
    pub provenance: BTreeMap<String, Provenance>,
}

impl CharPoly {
    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    /// `e_1(λ)..e_n(λ)`.
    pub fn elementary_values(&self) -> &[Coeff] {
        &self.e
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    /// Coefficients from `X^n` down to `X^0`.
    pub fn coefficients(&self) -> Vec<Coeff> {
        let mut out = vec![self.spec.one()];
        for (k, e) in self.e.iter().enumerate() {
            out.push(if k % 2 == 0 { -e } else { e.clone() });
        }
        out
    }

    pub fn to_json(&self) -> CharPolyDoc {
        CharPolyDoc {
            ring: self.spec.to_string(),
            coeffs: self.coefficients().iter().map(Coeff::to_string).collect(),
            provenance: self
                .provenance
                .iter()
                .enumerate()
                .map(|(i, p)| (format!("e{}", i + 1), *p))
                .collect(),
        }
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_univariate(&self.coefficients()))
    }
}

/// Renders coefficients (highest degree first) as a polynomial in `X`.
pub fn render_univariate(coeffs: &[Coeff]) -> String {
    let n = coeffs.len() - 1;
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let deg = n - i;
        let text = c.balanced_string();
        let negative = text.starts_with('-');
        let magnitude = text.trim_start_matches('-');
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let x = match deg {
            0 => String::new(),
            1 => "X".to_string(),
            d => format!("X^{d}"),
        };
        match (x.is_empty(), magnitude) {
            (true, m) => out.push_str(m),
            (false, "1") => out.push_str(&x),
            (false, m) => out.push_str(&format!("{m}*{x}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Determinant of the `(n-k+1)`-square Hankel matrix of traces with entry
/// `(i, j)` equal to `Tr(T^{i+j-1})`.
pub fn determinant_condition(t: &TraceSequence, k: usize) -> Result<Coeff> {
    if k == 0 || k > t.n {
        return Err(Error::InvalidRange(format!("need 1 <= k <= n, got k = {k}")));
    }
    let d = t.n - k + 1;
    if t.traces.len() < 2 * d - 1 {
        return Err(Error::InsufficientTraces { needed: 2 * d - 1, got: t.traces.len() });
    }
    let m: Vec<Vec<Coeff>> =
        (0..d).map(|i| (0..d).map(|j| t.traces[i + j].clone()).collect()).collect();
    Ok(linalg::determinant(&m))
}

/// Options for [`charpoly_from_traces_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharpolyOptions {
    /// After the inductive computation, enumerate every coefficient vector
    /// consistent with the traces and report `Indeterminate` unless the
    /// computed one is the only one.
    pub uniqueness_check: bool,
}

impl Default for CharpolyOptions {
    fn default() -> Self {
        CharpolyOptions { uniqueness_check: true }
    }
}

/// The characteristic polynomial determined by the traces, or
/// `Indeterminate(k)` when `e_k` is not determined by them.
pub fn charpoly_from_traces(t: &TraceSequence) -> Result<CharPoly> {
    charpoly_from_traces_with(t, CharpolyOptions::default())
}

pub fn charpoly_from_traces_with(t: &TraceSequence, opts: CharpolyOptions) -> Result<CharPoly> {
    let computed = inductive(t)?;
    if !opts.uniqueness_check {
        return Ok(computed);
    }
    let candidates = consistent_vectors(t)?;
    match candidates.as_slice() {
        [] => Err(Error::InconsistentTraces(t.n)),
        [only] if *only == computed.e => Ok(computed),
        [_] => Err(Error::Indeterminate(first_removable_pole(&computed).unwrap_or(1))),
        [first, rest @ ..] => {
            let k = (0..t.n)
                .find(|&i| rest.iter().any(|v| v[i] != first[i]))
                .expect("distinct candidates differ somewhere");
            Err(Error::Indeterminate(k + 1))
        }
    }
}

fn first_removable_pole(c: &CharPoly) -> Option<usize> {
    c.provenance.iter().position(|p| *p == Provenance::RemovablePole).map(|i| i + 1)
}

/// `e_k` from the Newton identity when `k` is a unit.
fn newton_step(spec: RingSpec, k: usize, e: &[Coeff], traces: &[Coeff]) -> Coeff {
    let mut acc = spec.zero();
    for i in 1..=k {
        let term = &e[k - i] * &traces[i - 1];
        acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    &acc * &spec.from_i64(k as i64).inv().expect("k is a unit")
}

/// `-Σ N_i(t) e_i` and `δ(t)` of the last-row relation.
fn relation_values(rel: &LastRowRelation, e: &[Coeff], traces: &[Coeff]) -> Result<(Coeff, Coeff)> {
    let (num, delta) = rel.solve(e, |c| c.eval(traces).expect("enough traces"));
    let delta = delta.eval(traces)?;
    Ok((num, delta))
}

fn inductive(t: &TraceSequence) -> Result<CharPoly> {
    let (spec, n) = (t.spec, t.n);
    let mut e = vec![spec.one()];
    let mut provenance = Vec::with_capacity(n);
    for k in 1..=n {
        if spec.is_invertible_int(k as u64) {
            if t.traces.len() < k {
                return Err(Error::InsufficientTraces { needed: k, got: t.traces.len() });
            }
            e.push(newton_step(spec, k, &e, &t.traces));
            provenance.push(Provenance::Newton);
            continue;
        }
        let needed = 2 * n - k + 1;
        if t.traces.len() < needed {
            return Err(Error::InsufficientTraces { needed, got: t.traces.len() });
        }
        let rel = LastRowRelation::new(n, k, spec)?;
        let (num, delta) = relation_values(&rel, &e, &t.traces)?;
        if !delta.is_zero() {
            e.push(num.checked_div(&delta)?);
            provenance.push(Provenance::Hankel);
            continue;
        }
        e.push(removable_pole(&rel, &e, &t.traces).ok_or(Error::Indeterminate(k))?);
        provenance.push(Provenance::RemovablePole);
    }
    e.remove(0);
    Ok(CharPoly { spec, e, provenance })
}

/// Substitutes the lower `e_i` and every non-zero trace, keeps the
/// symbols whose trace is zero formal, cancels, then substitutes zeros.
fn removable_pole(rel: &LastRowRelation, e: &[Coeff], traces: &[Coeff]) -> Option<Coeff> {
    let mut numerator = PPoly::zero(rel.spec);
    for (c, v) in rel.coeffs.iter().zip(e) {
        numerator = &numerator - &c.scale(v);
    }
    let partial: Vec<Option<Coeff>> =
        traces.iter().map(|v| if v.is_zero() { None } else { Some(v.clone()) }).collect();
    let num = numerator.partial_eval(&partial);
    let den = rel.delta.partial_eval(&partial);
    let frac = PRat::new(num, den).ok()?.cancel_common();
    frac.eval(traces).ok()
}

/// Every `(e_1..e_n)` over the field whose power sums reproduce all given
/// traces. Steps where the traces force `e_k` are not branched.
fn consistent_vectors(t: &TraceSequence) -> Result<Vec<Vec<Coeff>>> {
    let (spec, n) = (t.spec, t.n);
    let mut partial: Vec<Vec<Coeff>> = vec![vec![spec.one()]];
    for k in 1..=n {
        if spec.is_invertible_int(k as u64) {
            for e in partial.iter_mut() {
                let v = newton_step(spec, k, e, &t.traces);
                e.push(v);
            }
            continue;
        }
        let rel = LastRowRelation::new(n, k, spec)?;
        let mut next = Vec::new();
        for e in partial {
            let (num, delta) = relation_values(&rel, &e, &t.traces)?;
            if !delta.is_zero() {
                let mut e = e;
                e.push(num.checked_div(&delta)?);
                next.push(e);
                continue;
            }
            let r = spec.characteristic();
            if next.len() as u64 + r > GATE_BRANCH_LIMIT as u64 {
                return Err(Error::Indeterminate(k));
            }
            for v in 0..r {
                let mut branch = e.clone();
                branch.push(spec.from_i64(v as i64));
                next.push(branch);
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .filter(|e| power_sums_from_e(spec, e, t.traces.len()) == t.traces)
        .map(|mut e| {
            e.remove(0);
            e
        })
        .collect())
}

/// `p_1..p_m` from `e_0..e_n` by the Newton identities.
pub fn power_sums_from_e(spec: RingSpec, e: &[Coeff], m: usize) -> Vec<Coeff> {
    let n = e.len() - 1;
    let e_at = |i: usize| if i <= n { e[i].clone() } else { spec.zero() };
    let mut p: Vec<Coeff> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut acc = &e_at(k) * &spec.from_i64(k as i64);
        if k % 2 == 0 {
            acc = -&acc;
        }
        for i in 1..k {
            let term = &e_at(i) * &p[k - i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        p.push(acc);
    }
    p
}

fn check_square(m: &[Vec<Coeff>]) -> Result<RingSpec> {
    let n = m.len();
    if n == 0 || n > MAX_DIMENSION || m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidRange(format!("expected a square matrix of size 1..={MAX_DIMENSION}")));
    }
    let spec = m[0][0].spec();
    if m.iter().flatten().any(|c| c.spec() != spec) {
        return Err(Error::MixedContext("matrix entries in different rings".into()));
    }
    Ok(spec)
}

fn mat_mul(a: &[Vec<Coeff>], b: &[Vec<Coeff>]) -> Vec<Vec<Coeff>> {
    let n = a.len();
    let spec = a[0][0].spec();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = spec.zero();
                    for (l, row) in b.iter().enumerate() {
                        acc.add_assign_ref(&(&a[i][l] * &row[j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `Tr(T), .., Tr(T^count)`.
pub fn power_traces(m: &[Vec<Coeff>], count: usize) -> Result<Vec<Coeff>> {
    let spec = check_square(m)?;
    let mut power = m.to_vec();
    let mut traces = Vec::with_capacity(count);
    for d in 1..=count {
        if d > 1 {
            power = mat_mul(&power, m);
        }
        let mut tr = spec.zero();
        for (i, row) in power.iter().enumerate() {
            tr.add_assign_ref(&row[i]);
        }
        traces.push(tr);
    }
    Ok(traces)
}

/// `Tr(T^d)` for `d` up to the horizon of the matrix's field.
pub fn simulate_traces(m: &[Vec<Coeff>]) -> Result<TraceSequence> {
    let spec = check_square(m)?;
    let n = m.len();
    TraceSequence::new(spec, n, power_traces(m, TraceSequence::horizon(spec, n))?)
}

/// Coefficients of `det(X·I - T)` from `X^n` down, by expanding the
/// determinant over the polynomial ring.
pub fn direct_charpoly(m: &[Vec<Coeff>]) -> Result<Vec<Coeff>> {
    let spec = check_square(m)?;
    let n = m.len();
    let x = Poly::var(spec, 0);
    let entries: Vec<Vec<Poly>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, c)| {
                    let c = Poly::constant(-c);
                    if i == j { &x + &c } else { c }
                })
                .collect()
        })
        .collect();
    let det = linalg::determinant(&entries);
    Ok((0..=n).rev().map(|d| det.coeff(&Monomial::var(0, d as u32))).collect())
}

/// Reads a matrix given as a JSON array of rows whose entries are
/// integers or coefficient strings.
pub fn parse_matrix_json(text: &str, spec: RingSpec) -> Result<Vec<Vec<Coeff>>> {
    let rows: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let n = rows.len();
    if n == 0 || n > MAX_DIMENSION || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Json(format!("expected a square matrix of size 1..={MAX_DIMENSION}")));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| {
                    let text = match v {
                        serde_json::Value::Number(num) if num.is_i64() || num.is_u64() => num.to_string(),
                        serde_json::Value::String(s) => s.clone(),
                        _ => return Err(Error::Json(format!("entry ({i}, {j}) is not a coefficient"))),
                    };
                    spec.parse_coeff(&text).map_err(|e| Error::Json(format!("entry ({i}, {j}): {e}")))
                })
                .collect()
        })
        .collect()
}

/// Companion matrix of the monic polynomial with the given coefficients
/// (from `X^n` down).
pub fn companion_matrix(coeffs: &[Coeff]) -> Vec<Vec<Coeff>> {
    let n = coeffs.len() - 1;
    let spec = coeffs[0].spec();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == n - 1 {
                        -&coeffs[n - i]
                    } else if i == j + 1 {
                        spec.one()
                    } else {
                        spec.zero()
                    }
                })
                .collect()
        })
        .collect()
}
