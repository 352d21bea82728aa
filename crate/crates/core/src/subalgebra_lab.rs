//! Membership of symmetric polynomials in the subalgebra generated by
//! power sums, decided one homogeneous degree at a time.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve_over_field;
use crate::partition::{partitions, partitions_with_parts, Partition};
use crate::ring::{Coeff, RingSpec};
use crate::sym_basis::{p_to_e_table, EExpansion};

/// Is `target` in `K[p_i : i ∈ generators]`?
#[derive(Clone, Debug)]
pub struct MembershipQuery {
    pub spec: RingSpec,
    pub n: usize,
    pub target: EExpansion,
    /// Allowed power-sum indices; `None` means every index coprime to the
    /// characteristic (every index in characteristic zero).
    pub generator_indices: Option<BTreeSet<u32>>,
    /// Largest degree considered; defaults to the top degree of the target.
    pub degree_bound: Option<u32>,
}

impl MembershipQuery {
    pub fn new(target: EExpansion) -> Self {
        MembershipQuery {
            spec: target.spec(),
            n: target.n(),
            target,
            generator_indices: None,
            degree_bound: None,
        }
    }

    pub fn with_generators(mut self, indices: impl IntoIterator<Item = u32>) -> Self {
        self.generator_indices = Some(indices.into_iter().collect());
        self
    }

    fn allows(&self, i: u32) -> bool {
        match &self.generator_indices {
            Some(set) => set.contains(&i),
            None => {
                let r = self.spec.characteristic();
                r == 0 || u64::from(i) % r != 0
            }
        }
    }
}

/// Dimensions of one graded slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceStats {
    pub degree: u32,
    /// Number of `e_λ` of this degree with parts at most `n`.
    pub slice_dimension: usize,
    /// Number of products `p_λ` of allowed generators of this degree.
    pub generators: usize,
    /// Dimension of their span.
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipAnswer {
    pub member: bool,
    /// `target = Σ c_λ p_λ` when `member`.
    pub certificate: Vec<(Partition, Coeff)>,
    pub slices: Vec<SliceStats>,
}

/// JSON form of a [`MembershipAnswer`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipDoc {
    pub ring: String,
    pub n: usize,
    pub member: bool,
    pub certificate: Vec<crate::json::PartitionTerm>,
    pub slices: Vec<SliceStats>,
}

impl MembershipAnswer {
    pub fn to_json(&self, spec: RingSpec, n: usize) -> MembershipDoc {
        MembershipDoc {
            ring: spec.to_string(),
            n,
            member: self.member,
            certificate: self
                .certificate
                .iter()
                .map(|(p, c)| crate::json::PartitionTerm {
                    partition: p.parts().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
            slices: self.slices.clone(),
        }
    }
}

/// `p_λ = Π p_{λ_i}` in the e-basis.
pub fn p_lambda(part: &Partition, table: &[EExpansion], n: usize, spec: RingSpec) -> EExpansion {
    part.parts()
        .iter()
        .fold(EExpansion::one(n, spec), |acc, &i| &acc * &table[i as usize])
}

/// Solves the membership question degree by degree in the e-basis.
pub fn membership(q: &MembershipQuery) -> Result<MembershipAnswer> {
    if !q.spec.is_field() {
        return Err(Error::NotAField(q.spec));
    }
    if q.target.spec() != q.spec || q.target.n() != q.n {
        return Err(Error::MixedContext("target does not match the query's ring or n".into()));
    }
    let components = q.target.homogeneous_components();
    let top = components.last().map_or(0, |(w, _)| *w);
    let bound = q.degree_bound.unwrap_or(top);
    if bound < top {
        return Err(Error::InvalidRange(format!("degree bound {bound} below target degree {top}")));
    }
    let table = p_to_e_table(top as usize, q.n, q.spec);
    let mut member = true;
    let mut certificate = Vec::new();
    let mut slices = Vec::new();
    for (w, component) in components {
        let gens: Vec<Partition> = partitions_with_parts(w, |i| q.allows(i));
        let coords: Vec<Partition> = partitions(w, q.n as u32);
        let index: BTreeMap<&Partition, usize> = coords.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let vector = |e: &EExpansion| -> Vec<Coeff> {
            let mut v = vec![q.spec.zero(); coords.len()];
            for (p, c) in e.terms() {
                v[index[&p]] = c;
            }
            v
        };
        let columns: Vec<Vec<Coeff>> =
            gens.iter().map(|g| vector(&p_lambda(g, &table, q.n, q.spec))).collect();
        let sol = solve_over_field(&columns, &vector(&component));
        slices.push(SliceStats {
            degree: w,
            slice_dimension: coords.len(),
            generators: gens.len(),
            rank: sol.rank,
        });
        match sol.solution {
            Some(x) => certificate.extend(
                gens.into_iter().zip(x).filter(|(_, c)| !c.is_zero()),
            ),
            None => member = false,
        }
    }
    if !member {
        certificate.clear();
    }
    Ok(MembershipAnswer { member, certificate, slices })
}

/// Re-expands a certificate `Σ c_λ p_λ` in the e-basis.
pub fn expand_certificate(cert: &[(Partition, Coeff)], n: usize, spec: RingSpec) -> EExpansion {
    let top = cert.iter().map(|(p, _)| p.largest()).max().unwrap_or(0);
    let table = p_to_e_table(top as usize, n, spec);
    cert.iter().fold(EExpansion::zero(n, spec), |acc, (p, c)| {
        &acc + &p_lambda(p, &table, n, spec).scale(c)
    })
}

fn prime_of(spec: RingSpec) -> Result<u64> {
    match spec.characteristic() {
        0 => Err(Error::InvalidRange(format!("{spec} has characteristic zero"))),
        r => Ok(r),
    }
}

/// Whether every `e_λ` in the support of `p_m` has a part coprime to the
/// characteristic. Factors of `r` in `m` are removed first, using
/// `p_{kr} = p_k^r`.
pub fn coprime_part_check(m: usize, spec: RingSpec, n: usize) -> Result<bool> {
    let r = prime_of(spec)? as usize;
    if m == 0 {
        return Err(Error::InvalidRange("m must be positive".into()));
    }
    let mut m = m;
    while m.is_multiple_of(r) {
        m /= r;
    }
    let table = p_to_e_table(m, n, spec);
    Ok(table[m]
        .support()
        .iter()
        .all(|lambda| lambda.parts().iter().any(|&part| !(part as usize).is_multiple_of(r))))
}

/// `k = a·r + b` with `0 < b < r`, and the witness partition `(r^a, b)`.
pub fn witness_partition(k: usize, r: u64) -> Result<(u64, u64, Partition)> {
    let (a, b) = (k as u64 / r, k as u64 % r);
    if b == 0 {
        return Err(Error::InvalidRange(format!("{r} divides {k}")));
    }
    let mut parts = vec![r as u32; a as usize];
    parts.push(b as u32);
    Ok((a, b, Partition::new(parts)?))
}

/// Coefficient of `e_r^a e_b` in `p_k`.
pub fn witness_coefficient(k: usize, spec: RingSpec, n: usize) -> Result<Coeff> {
    let r = prime_of(spec)?;
    let (_, _, part) = witness_partition(k, r)?;
    if (n as u64) < r {
        return Err(Error::InvalidRange(format!("need n >= {r}, got {n}")));
    }
    let table = p_to_e_table(k, n, spec);
    Ok(table[k].coeff(&part))
}

/// The value `(-1)^{k+a+1}·k` that the closed form gives for
/// [`witness_coefficient`].
pub fn witness_closed_form(k: usize, spec: RingSpec) -> Result<Coeff> {
    let r = prime_of(spec)?;
    let (a, _, _) = witness_partition(k, r)?;
    let sign = if (k as u64 + a + 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(spec.from_i64(sign * k as i64))
}

/// Whether `p_k ∉ K[p_1, .., p_{k-1}]`, checked at degree `k`.
pub fn chain_gap_check(k: usize, spec: RingSpec, n: usize, degree_bound: Option<u32>) -> Result<bool> {
    let r = prime_of(spec)?;
    if (k as u64).is_multiple_of(r) {
        return Err(Error::InvalidRange(format!("{r} divides {k}")));
    }
    let target = p_to_e_table(k, n, spec).swap_remove(k);
    let mut q = MembershipQuery::new(target).with_generators(1..k as u32);
    q.degree_bound = degree_bound;
    Ok(!membership(&q)?.member)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: u64) -> RingSpec {
        RingSpec::prime_field(r).unwrap()
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn ask(target: EExpansion) -> MembershipAnswer {
        membership(&MembershipQuery::new(target)).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(!ask(EExpansion::e(2, 2, f(2))).member);
        assert!(!ask(EExpansion::e(3, 3, f(2))).member);

        let a = ask(EExpansion::e(2, 3, f(3)));
        assert!(a.member);
        let s = f(3);
        assert_eq!(a.certificate, vec![(part(&[2]), s.one()), (part(&[1, 1]), s.from_i64(2))]);
        assert_eq!(expand_certificate(&a.certificate, 3, s), EExpansion::e(2, 3, s));

        let target = &EExpansion::e(1, 2, f(2)) * &EExpansion::e(2, 2, f(2));
        let a = ask(target.clone());
        assert!(a.member);
        assert_eq!(expand_certificate(&a.certificate, 2, f(2)), target);
    }

    #[test]
    fn non_membership_reports_slices() {
        let a = ask(EExpansion::e(2, 2, f(2)));
        assert!(a.certificate.is_empty());
        assert_eq!(a.slices, vec![SliceStats { degree: 2, slice_dimension: 2, generators: 1, rank: 1 }]);
    }

    #[test]
    fn inhomogeneous_targets_split() {
        let s = f(3);
        let target = &EExpansion::e(2, 3, s) + &EExpansion::e(1, 3, s);
        let a = ask(target.clone());
        assert!(a.member);
        assert_eq!(a.slices.len(), 2);
        assert_eq!(expand_certificate(&a.certificate, 3, s), target);
    }

    #[test]
    fn integers_rejected() {
        let q = MembershipQuery::new(EExpansion::e(1, 2, RingSpec::Integers));
        assert_eq!(membership(&q), Err(Error::NotAField(RingSpec::Integers)));
    }

    #[test]
    fn coprime_examples() {
        assert!(coprime_part_check(3, f(2), 3).unwrap());
        assert!(coprime_part_check(4, f(3), 4).unwrap());
        assert!(coprime_part_check(1, f(2), 1).unwrap());
        assert!(coprime_part_check(6, f(2), 3).unwrap());
    }

    #[test]
    fn witness_examples() {
        assert!(witness_coefficient(3, f(2), 3).unwrap().is_one());
        assert!(witness_coefficient(4, f(3), 4).unwrap().is_one());
        assert!(witness_coefficient(5, f(2), 5).unwrap().is_one());
        assert_eq!(witness_coefficient(7, RingSpec::Rationals, 7), Err(Error::InvalidRange("Q has characteristic zero".into())));
        for (k, r) in [(7, 3), (8, 3), (7, 5), (12, 5)] {
            assert_eq!(witness_coefficient(k, f(r), k).unwrap(), witness_closed_form(k, f(r)).unwrap());
        }
    }

    #[test]
    fn chain_gap_examples() {
        assert!(chain_gap_check(3, f(2), 2, None).unwrap());
        assert!(chain_gap_check(5, f(2), 2, None).unwrap());
        assert!(chain_gap_check(4, f(3), 3, None).unwrap());
        assert!(chain_gap_check(4, f(2), 2, None).is_err());
    }
}
