//! Exact linear algebra over commutative rings: determinants by cofactor
//! expansion or fraction-free elimination, and linear solving over fields.

use crate::poly::Poly;
use crate::ring::Coeff;

/// The operations determinant routines need from matrix entries.
pub trait RingElement: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// Exact quotient, `None` if `other` does not divide `self`.
    fn exact_div_elem(&self, other: &Self) -> Option<Self>;
}

impl RingElement for Coeff {
    fn zero_like(&self) -> Self {
        self.spec().zero()
    }
    fn one_like(&self) -> Self {
        self.spec().one()
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
        self.checked_div(other).ok()
    }
}

impl RingElement for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.spec())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.spec())
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

/// Size up to which [`determinant`] uses cofactor expansion.
pub const COFACTOR_LIMIT: usize = 4;

/// Determinant of a square matrix: cofactor expansion up to
/// [`COFACTOR_LIMIT`], fraction-free Bareiss elimination above.
///
/// Panics on an empty or non-square matrix.
pub fn determinant<T: RingElement>(m: &[Vec<T>]) -> T {
    let d = m.len();
    assert!(d > 0 && m.iter().all(|row| row.len() == d), "square matrix required");
    if d <= COFACTOR_LIMIT {
        cofactor(m)
    } else {
        bareiss(m)
    }
}

/// Laplace expansion along the first row.
pub fn cofactor<T: RingElement>(m: &[Vec<T>]) -> T {
    let d = m.len();
    match d {
        1 => m[0][0].clone(),
        2 => m[0][0].mul_elem(&m[1][1]).sub_elem(&m[0][1].mul_elem(&m[1][0])),
        _ => {
            let mut acc = m[0][0].zero_like();
            for j in 0..d {
                if m[0][j].is_zero_elem() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul_elem(&cofactor(&minor));
                acc = if j % 2 == 0 { acc.add_elem(&term) } else { acc.sub_elem(&term) };
            }
            acc
        }
    }
}

/// Fraction-free Gaussian elimination. Every division is exact in an
/// integral domain, so intermediate entries stay in the ring.
pub fn bareiss<T: RingElement>(m: &[Vec<T>]) -> T {
    let d = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut prev = a[0][0].one_like();
    let mut negate = false;
    for k in 0..d - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..d).find(|&i| !a[i][k].is_zero_elem()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return a[0][0].zero_like(),
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = a[k][k].mul_elem(&a[i][j]).sub_elem(&a[i][k].mul_elem(&a[k][j]));
                a[i][j] = num
                    .exact_div_elem(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
            a[i][k] = a[i][k].zero_like();
        }
        prev = a[k][k].clone();
    }
    let det = a[d - 1][d - 1].clone();
    if negate {
        det.neg_elem()
    } else {
        det
    }
}

/// Result of solving `A c = b` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSolution {
    /// A particular solution when the system is consistent.
    pub solution: Option<Vec<Coeff>>,
    /// Rank of `A`.
    pub rank: usize,
    /// Non-zero entries of the reduced right-hand side outside the pivot
    /// rows; empty exactly when the system is consistent.
    pub residual: Vec<Coeff>,
}

/// Gauss-Jordan elimination over a field. `columns[j]` is column `j` of
/// `A`; all columns and `rhs` must have the same length.
pub fn solve_over_field(columns: &[Vec<Coeff>], rhs: &[Coeff]) -> FieldSolution {
    let rows = rhs.len();
    let cols = columns.len();
    let spec = rhs.first().map(Coeff::spec);
    let mut a: Vec<Vec<Coeff>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Coeff> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("field element");
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..=cols {
                    let t = &factor * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let residual: Vec<Coeff> =
        a[r..].iter().map(|row| row[cols].clone()).filter(|v| !v.is_zero()).collect();
    let solution = if residual.is_empty() {
        spec.map(|s| {
            let mut x = vec![s.zero(); cols];
            for (i, &c) in pivots.iter().enumerate() {
                x[c] = a[i][cols].clone();
            }
            x
        })
        .or_else(|| Some(Vec::new()))
    } else {
        None
    };
    FieldSolution { solution, rank: pivots.len(), residual }
}
