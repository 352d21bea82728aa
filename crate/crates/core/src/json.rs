//! Serde document types shared by the JSON interfaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::{Monomial, Poly};
use crate::ring::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpTerm {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionTerm {
    pub partition: Vec<u32>,
    pub coeff: String,
}

/// `{"n", "ring", "terms": [{"exp", "coeff"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MPolyDoc {
    pub n: usize,
    pub ring: String,
    pub terms: Vec<ExpTerm>,
}

/// `{"n", "ring", "terms": [{"partition", "coeff"}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EExpansionDoc {
    pub n: usize,
    pub ring: String,
    pub terms: Vec<PartitionTerm>,
}

/// `{"ring", "num", "den"}` with partition-indexed terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PRatDoc {
    pub ring: String,
    pub num: Vec<PartitionTerm>,
    pub den: Vec<PartitionTerm>,
}

pub(crate) fn parse_ring(text: &str) -> Result<RingSpec> {
    text.parse::<RingSpec>().map_err(Error::from)
}

pub(crate) fn partition_terms(p: &Poly) -> Vec<PartitionTerm> {
    p.terms()
        .rev()
        .map(|(m, c)| PartitionTerm {
            partition: Partition::from_monomial(m).parts().to_vec(),
            coeff: c.to_string(),
        })
        .collect()
}

/// Reads partition-indexed terms; parts above `max_part` are rejected
/// when a bound is given.
pub(crate) fn poly_from_partition_terms(
    spec: RingSpec,
    terms: &[PartitionTerm],
    max_part: Option<u32>,
) -> Result<Poly> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let part = Partition::new(t.partition.clone())
            .map_err(|_| Error::Json(format!("term {i}: partition parts must be positive")))?;
        if let Some(max) = max_part {
            if part.largest() > max {
                return Err(Error::Json(format!("term {i}: part {} exceeds n = {max}", part.largest())));
            }
        }
        if part.len() > MAX_TERM_DEGREE || part.largest() as usize > MAX_SYMBOL {
            return Err(Error::Json(format!("term {i}: partition too large")));
        }
        let c = spec
            .parse_coeff(&t.coeff)
            .map_err(|e| Error::Json(format!("term {i}: {e}")))?;
        out.push((part.to_monomial(), c));
    }
    Ok(Poly::from_terms(spec, out))
}

pub(crate) fn exp_terms(p: &Poly, n: usize) -> Vec<ExpTerm> {
    p.terms()
        .rev()
        .map(|(m, c)| {
            let mut exp = m.exponents().to_vec();
            exp.resize(n, 0);
            ExpTerm { exp, coeff: c.to_string() }
        })
        .collect()
}

pub(crate) fn poly_from_exp_terms(spec: RingSpec, n: usize, terms: &[ExpTerm]) -> Result<Poly> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        if t.exp.len() != n {
            return Err(Error::Json(format!(
                "term {i}: exponent vector has {} entries, expected {n}",
                t.exp.len()
            )));
        }
        if t.exp.iter().map(|&e| e as u64).sum::<u64>() > MAX_TERM_DEGREE as u64 {
            return Err(Error::Json(format!("term {i}: degree too large")));
        }
        let c = spec
            .parse_coeff(&t.coeff)
            .map_err(|e| Error::Json(format!("term {i}: {e}")))?;
        out.push((Monomial::from_exponents(t.exp.clone()), c));
    }
    Ok(Poly::from_terms(spec, out))
}

/// Upper bound on the degree of a single term read from JSON.
pub const MAX_TERM_DEGREE: usize = 4096;
/// Upper bound on symbol indices and variable counts read from JSON.
pub const MAX_SYMBOL: usize = 4096;
