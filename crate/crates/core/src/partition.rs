//! Integer partitions and their correspondence with exponent vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Largest part accepted by [`Partition::new`].
pub const MAX_PART: u32 = 4096;

/// A weakly decreasing list of positive parts. The empty partition has
/// weight zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; parts must lie in
    /// `1..=MAX_PART`.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::parse(pos, "partition parts must be positive"));
        }
        if let Some(pos) = parts.iter().position(|&p| p > MAX_PART) {
            return Err(Error::parse(pos, format!("partition parts must be at most {MAX_PART}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Multiplicity of `part`.
    pub fn multiplicity(&self, part: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == part).count() as u32
    }

    /// Exponent vector whose `i`-th slot counts the parts equal to `i + 1`.
    pub fn to_monomial(&self) -> Monomial {
        let mut exps = vec![0u32; self.largest() as usize];
        for &p in &self.parts {
            exps[p as usize - 1] += 1;
        }
        Monomial::from_exponents(exps)
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        let mut parts = Vec::with_capacity(m.degree() as usize);
        for (i, &e) in m.exponents().iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, e as usize));
        }
        Partition { parts }
    }

    /// Compact form such as `1334`, with commas once a part exceeds 9.
    pub fn shorthand(&self) -> String {
        let mut asc = self.parts.clone();
        asc.reverse();
        let sep = if self.largest() > 9 { "," } else { "" };
        asc.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts comma-separated parts, optionally in parentheses: `3,1,1`
    /// or `(2,2)`. The empty string and `()` denote the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut offset = 0;
        for piece in inner.split(',') {
            let v: u32 = piece
                .trim()
                .parse()
                .map_err(|_| Error::parse(offset, format!("bad part {:?}", piece.trim())))?;
            if v == 0 {
                return Err(Error::parse(offset, "partition parts must be positive"));
            }
            parts.push(v);
            offset += piece.len() + 1;
        }
        Partition::new(parts)
    }
}

/// All partitions of `weight` whose parts are at most `max_part`, in
/// reverse lexicographic order.
pub fn partitions(weight: u32, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(weight, max_part.min(weight.max(1)), &mut current, &mut out, &|_| true);
    out
}

/// Partitions of `weight` whose parts all satisfy `allowed`.
pub fn partitions_with_parts(weight: u32, allowed: impl Fn(u32) -> bool) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(weight, weight.max(1), &mut current, &mut out, &allowed);
    out
}

fn fill(
    remaining: u32,
    max_part: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
    allowed: &dyn Fn(u32) -> bool,
) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        if !allowed(part) {
            continue;
        }
        current.push(part);
        fill(remaining - part, part, current, out, allowed);
        current.pop();
    }
}
