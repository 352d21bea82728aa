//! Exact coefficient domains: the integers, the rationals and prime fields.
//!
//! Every polynomial type in the crate carries a [`RingSpec`] and stores its
//! coefficients as [`Coeff`] values. Prime-field residues are kept in
//! `0..r` and rationals in lowest terms, so structural equality coincides
//! with equality in the ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::RingError;

/// Largest accepted prime-field modulus.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// A coefficient domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// `F_r` for a prime `r`. Construct through [`RingSpec::prime_field`].
    PrimeField(u64),
}

impl RingSpec {
    /// The prime field with `r` elements. Fails unless `r` is a prime
    /// below [`MAX_MODULUS`].
    pub fn prime_field(r: u64) -> Result<Self, RingError> {
        if r > MAX_MODULUS {
            Err(RingError::ModulusTooLarge(r))
        } else if is_prime(r) {
            Ok(RingSpec::PrimeField(r))
        } else {
            Err(RingError::NotPrime(r))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            RingSpec::PrimeField(r) => r,
            _ => 0,
        }
    }

    /// Smallest positive integer that is not a unit in the ring.
    ///
    /// Undefined for the rationals, where every positive integer is a unit.
    pub fn r0(&self) -> Result<u64, RingError> {
        match *self {
            RingSpec::Integers => Ok(2),
            RingSpec::PrimeField(r) => Ok(r),
            RingSpec::Rationals => Err(RingError::NoNonUnitInteger),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    /// Whether the image of the positive integer `k` is a unit.
    pub fn is_invertible_int(&self, k: u64) -> bool {
        debug_assert!(k >= 1);
        match *self {
            RingSpec::Integers => k == 1,
            RingSpec::Rationals => k != 0,
            RingSpec::PrimeField(r) => !k.is_multiple_of(r),
        }
    }

    pub fn zero(&self) -> Coeff {
        match *self {
            RingSpec::Integers => Coeff::Int(BigInt::zero()),
            RingSpec::Rationals => Coeff::Rat(BigRational::zero()),
            RingSpec::PrimeField(r) => Coeff::Mod { v: 0, r },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, value: i64) -> Coeff {
        match *self {
            RingSpec::Integers => Coeff::Int(BigInt::from(value)),
            RingSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(value))),
            RingSpec::PrimeField(r) => {
                let v = (value as i128).rem_euclid(r as i128) as u64;
                Coeff::Mod { v, r }
            }
        }
    }

    /// Image of an arbitrary-precision integer in the ring.
    pub fn from_bigint(&self, value: &BigInt) -> Coeff {
        match *self {
            RingSpec::Integers => Coeff::Int(value.clone()),
            RingSpec::Rationals => Coeff::Rat(BigRational::from_integer(value.clone())),
            RingSpec::PrimeField(r) => {
                let m = value.mod_floor(&BigInt::from(r));
                Coeff::Mod { v: m.to_u64().expect("residue fits u64"), r }
            }
        }
    }

    /// Parses a coefficient written in this ring: an integer, or `a/b` for
    /// the rationals (and for prime fields, where `b` must be a unit).
    pub fn parse_coeff(&self, text: &str) -> Result<Coeff, RingError> {
        let text = text.trim();
        let bad = || RingError::BadCoeff(text.to_string());
        let parse_int = |s: &str| -> Result<BigInt, RingError> {
            let s = s.trim();
            let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(s).map_err(|_| bad())
        };
        match text.split_once('/') {
            None => Ok(self.from_bigint(&parse_int(text)?)),
            Some((a, b)) => {
                let num = parse_int(a)?;
                let den = parse_int(b)?;
                match *self {
                    RingSpec::Integers => {
                        if den.is_zero() || !(&num % &den).is_zero() {
                            return Err(bad());
                        }
                        Ok(Coeff::Int(num / den))
                    }
                    RingSpec::Rationals => {
                        if den.is_zero() {
                            return Err(RingError::DivisionByNonUnit(text.to_string()));
                        }
                        Ok(Coeff::Rat(BigRational::new(num, den)))
                    }
                    RingSpec::PrimeField(_) => {
                        let n = self.from_bigint(&num);
                        let d = self.from_bigint(&den);
                        n.checked_div(&d)
                    }
                }
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(r) => write!(f, "F{r}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(RingSpec::Integers),
            "Q" => Ok(RingSpec::Rationals),
            other => {
                let digits = other
                    .strip_prefix('F')
                    .ok_or_else(|| RingError::BadRingSpec(s.to_string()))?;
                if digits.is_empty()
                    || !digits.bytes().all(|b| b.is_ascii_digit())
                    || (digits.len() > 1 && digits.starts_with('0'))
                {
                    return Err(RingError::BadRingSpec(s.to_string()));
                }
                let r: u64 = digits
                    .parse()
                    .map_err(|_| RingError::BadRingSpec(s.to_string()))?;
                RingSpec::prime_field(r)
            }
        }
    }
}

/// Deterministic trial-division primality test; moduli are small.
pub fn is_prime(r: u64) -> bool {
    if r < 2 {
        return false;
    }
    if r < 4 {
        return true;
    }
    if r.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= r {
        if r.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of one of the coefficient domains of [`RingSpec`].
///
/// The arithmetic operators panic when the operands live in different
/// rings; the `checked_*` methods report [`RingError::MixedRings`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Mod { v: u64, r: u64 },
}

impl Coeff {
    pub fn spec(&self) -> RingSpec {
        match self {
            Coeff::Int(_) => RingSpec::Integers,
            Coeff::Rat(_) => RingSpec::Rationals,
            Coeff::Mod { r, .. } => RingSpec::PrimeField(*r),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(a) => a.is_zero(),
            Coeff::Rat(a) => a.is_zero(),
            Coeff::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Int(a) => a.is_one(),
            Coeff::Rat(a) => a.is_one(),
            Coeff::Mod { v, .. } => *v == 1,
        }
    }

    fn same_ring(&self, other: &Coeff) -> Result<(), RingError> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(RingError::MixedRings(self.spec(), other.spec()))
        }
    }

    pub fn checked_add(&self, other: &Coeff) -> Result<Coeff, RingError> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a + b),
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Mod { v: a, r }, Coeff::Mod { v: b, .. }) => Coeff::Mod {
                v: ((*a as u128 + *b as u128) % *r as u128) as u64,
                r: *r,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Coeff) -> Result<Coeff, RingError> {
        self.same_ring(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Coeff) -> Result<Coeff, RingError> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => Coeff::Int(a * b),
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Mod { v: a, r }, Coeff::Mod { v: b, .. }) => Coeff::Mod {
                v: ((*a as u128 * *b as u128) % *r as u128) as u64,
                r: *r,
            },
            _ => unreachable!(),
        })
    }

    fn neg_ref(&self) -> Coeff {
        match self {
            Coeff::Int(a) => Coeff::Int(-a),
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Mod { v, r } => Coeff::Mod { v: if *v == 0 { 0 } else { r - v }, r: *r },
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Coeff::Int(a) => a.abs().is_one(),
            Coeff::Rat(a) => !a.is_zero(),
            Coeff::Mod { v, .. } => *v != 0,
        }
    }

    /// Multiplicative inverse; fails on non-units.
    pub fn inv(&self) -> Result<Coeff, RingError> {
        if !self.is_unit() {
            return Err(RingError::DivisionByNonUnit(self.to_string()));
        }
        Ok(match self {
            Coeff::Int(a) => Coeff::Int(a.clone()),
            Coeff::Rat(a) => Coeff::Rat(a.recip()),
            Coeff::Mod { v, r } => Coeff::Mod { v: mod_inverse(*v, *r), r: *r },
        })
    }

    /// Division by a unit. Over the integers, also succeeds whenever the
    /// quotient is exact (`6 / 3`), which is what fraction-free elimination
    /// and polynomial exact division need.
    pub fn checked_div(&self, other: &Coeff) -> Result<Coeff, RingError> {
        self.same_ring(other)?;
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => {
                if b.is_zero() {
                    return Err(RingError::DivisionByNonUnit(other.to_string()));
                }
                let (q, rem) = a.div_rem(b);
                if rem.is_zero() {
                    Ok(Coeff::Int(q))
                } else {
                    Err(RingError::DivisionByNonUnit(other.to_string()))
                }
            }
            _ => self.checked_mul(&other.inv()?),
        }
    }

    pub fn pow(&self, exp: u32) -> Coeff {
        match self {
            Coeff::Int(a) => Coeff::Int(num_traits::pow(a.clone(), exp as usize)),
            Coeff::Rat(a) => Coeff::Rat(num_traits::pow(a.clone(), exp as usize)),
            Coeff::Mod { v, r } => Coeff::Mod { v: mod_pow(*v, exp as u64, *r), r: *r },
        }
    }

    /// In-place `self += other`; panics on mixed rings.
    pub fn add_assign_ref(&mut self, other: &Coeff) {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => *a += b,
            (Coeff::Rat(a), Coeff::Rat(b)) => *a += b,
            (Coeff::Mod { v: a, r }, Coeff::Mod { v: b, r: rb }) if r == rb => {
                *a = ((*a as u128 + *b as u128) % *r as u128) as u64
            }
            (a, b) => panic!("mixed rings: {} and {}", a.spec(), b.spec()),
        }
    }

    /// Image in the integers when the value is integral (for rationals and
    /// integers); prime-field residues return their canonical representative.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Coeff::Int(a) => Some(a.clone()),
            Coeff::Rat(a) => a.is_integer().then(|| a.to_integer()),
            Coeff::Mod { v, .. } => Some(BigInt::from(*v)),
        }
    }

    /// Rendering used in human-readable output: prime-field residues above
    /// `r/2` are shown as negative numbers (`2` in `F3` prints as `-1`).
    pub fn balanced_string(&self) -> String {
        match self {
            Coeff::Mod { v, r } if *r > 2 && *v > r / 2 => format!("-{}", r - v),
            other => other.to_string(),
        }
    }

    /// Whether the balanced rendering starts with a minus sign.
    pub(crate) fn is_negative_display(&self) -> bool {
        match self {
            Coeff::Int(a) => a.is_negative(),
            Coeff::Rat(a) => a.is_negative(),
            Coeff::Mod { v, r } => *r > 2 && *v > r / 2,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(a) => write!(f, "{a}"),
            Coeff::Rat(a) => {
                if a.is_integer() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Coeff::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.checked_add(rhs).expect("mixed rings")
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self.checked_sub(rhs).expect("mixed rings")
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.checked_mul(rhs).expect("mixed rings")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.neg_ref()
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.neg_ref()
    }
}

fn mod_pow(base: u64, mut exp: u64, r: u64) -> u64 {
    let mut acc = 1u128 % r as u128;
    let mut b = base as u128 % r as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % r as u128;
        }
        b = b * b % r as u128;
        exp >>= 1;
    }
    acc as u64
}

fn mod_inverse(v: u64, r: u64) -> u64 {
    // r is prime, v is non-zero
    mod_pow(v, r - 2, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(r: u64) -> RingSpec {
        RingSpec::prime_field(r).unwrap()
    }

    #[test]
    fn f2_one_plus_one_is_zero() {
        let s = f(2);
        assert!((&s.one() + &s.one()).is_zero());
    }

    #[test]
    fn f3_inverse_of_two() {
        let s = f(3);
        assert_eq!(s.from_i64(2).inv().unwrap(), s.from_i64(2));
    }

    #[test]
    fn rational_sum() {
        let q = RingSpec::Rationals;
        let a = q.parse_coeff("1/2").unwrap();
        let b = q.parse_coeff("1/3").unwrap();
        assert_eq!(&a + &b, q.parse_coeff("5/6").unwrap());
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn integer_invertibility() {
        assert!(!f(3).is_invertible_int(6));
        assert!(f(3).is_invertible_int(5));
        assert!(!RingSpec::Integers.is_invertible_int(2));
        assert!(RingSpec::Integers.is_invertible_int(1));
        assert!(RingSpec::Rationals.is_invertible_int(12));
    }

    #[test]
    fn r0_and_characteristic() {
        assert_eq!(RingSpec::Integers.r0().unwrap(), 2);
        assert_eq!(f(5).r0().unwrap(), 5);
        assert!(RingSpec::Rationals.r0().is_err());
        assert_eq!(f(7).characteristic(), 7);
        assert_eq!(RingSpec::Integers.characteristic(), 0);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(matches!(RingSpec::prime_field(6), Err(RingError::NotPrime(6))));
        assert!("F4".parse::<RingSpec>().is_err());
        assert!("F1".parse::<RingSpec>().is_err());
    }

    #[test]
    fn ring_spec_strings() {
        for s in ["Z", "Q", "F2", "F3", "F101"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
        assert!("F".parse::<RingSpec>().is_err());
        assert!("F03".parse::<RingSpec>().is_err());
        assert!("R".parse::<RingSpec>().is_err());
    }

    #[test]
    fn division_by_non_unit() {
        let z = RingSpec::Integers;
        assert!(z.from_i64(2).inv().is_err());
        assert!(z.from_i64(3).checked_div(&z.from_i64(2)).is_err());
        assert_eq!(z.from_i64(6).checked_div(&z.from_i64(3)).unwrap(), z.from_i64(2));
        assert!(f(5).zero().inv().is_err());
    }

    #[test]
    fn mixed_rings_reported() {
        let a = f(3).one();
        let b = f(5).one();
        assert!(matches!(a.checked_add(&b), Err(RingError::MixedRings(..))));
    }

    #[test]
    fn residues_are_canonical() {
        let s = f(3);
        assert_eq!(s.from_i64(-1), Coeff::Mod { v: 2, r: 3 });
        assert_eq!(s.parse_coeff("-4").unwrap(), Coeff::Mod { v: 2, r: 3 });
        assert_eq!(s.parse_coeff("1/2").unwrap(), Coeff::Mod { v: 2, r: 3 });
        assert_eq!(s.from_i64(2).balanced_string(), "-1");
    }

    #[test]
    fn rationals_are_reduced() {
        let q = RingSpec::Rationals;
        let a = q.parse_coeff("4/-6").unwrap();
        assert_eq!(a.to_string(), "-2/3");
    }

    #[test]
    fn malformed_coefficients() {
        let z = RingSpec::Integers;
        for bad in ["", "-", "1.5", "abc", "1/", "/2", "3/0", "1/2"] {
            assert!(z.parse_coeff(bad).is_err(), "{bad}");
        }
    }
}
