#![allow(dead_code)]

use powersym::{PPoly, PRat, Partition, RingSpec};

pub const Z: RingSpec = RingSpec::Integers;

pub fn field(r: u64) -> RingSpec {
    RingSpec::prime_field(r).unwrap()
}

/// Builds `Σ c·p_λ` from terms written in the shorthand `p_{1334}`, one
/// digit per part.
pub fn pp(spec: RingSpec, terms: &[(i64, &str)]) -> PPoly {
    PPoly::from_terms(
        spec,
        terms.iter().map(|&(c, digits)| {
            let parts = digits.bytes().map(|b| u32::from(b - b'0')).collect();
            (Partition::new(parts).unwrap(), spec.from_i64(c))
        }),
    )
}

pub fn frac(num: PPoly, den: PPoly) -> PRat {
    PRat::new(num, den).unwrap()
}

/// The reference `e_2` in two variables.
pub fn e2_of_2(spec: RingSpec) -> PRat {
    frac(pp(spec, &[(1, "12"), (-1, "3")]), pp(spec, &[(1, "1")]))
}

/// The reference `e_2` in three variables.
pub fn e2_of_3(spec: RingSpec) -> PRat {
    frac(
        pp(spec, &[(1, "123"), (-1, "114"), (-1, "24"), (1, "15")]),
        pp(spec, &[(1, "22"), (-1, "13")]),
    )
}

/// The reference numerator of `e_2` in four variables, with the trailing
/// pair `+ p_{245} - p_{335}` either kept (so both terms are doubled) or
/// read as a repetition of the earlier pair.
pub fn e2_of_4(spec: RingSpec, keep_duplicate: bool) -> PRat {
    let mut num = vec![
        (1, "1334"),
        (-1, "1244"),
        (-1, "1235"),
        (1, "1145"),
        (-1, "335"),
        (1, "245"),
        (1, "1226"),
        (-1, "1136"),
        (-1, "146"),
        (1, "137"),
        (1, "236"),
        (-1, "227"),
    ];
    if keep_duplicate {
        num.extend([(1, "245"), (-1, "335")]);
    }
    let den = pp(spec, &[(1, "333"), (-2, "234"), (1, "144"), (1, "225"), (-1, "135")]);
    frac(pp(spec, &num), den)
}

/// The reference `e_3` in three variables, `(-p1 p3 + p2 e2 + p4) / p1`.
pub fn e3_of_3(spec: RingSpec) -> PRat {
    let e2 = e2_of_3(spec);
    let num = e2
        .mul_ppoly(&pp(spec, &[(1, "2")]))
        .try_add(&PRat::from_ppoly(pp(spec, &[(-1, "13"), (1, "4")])))
        .unwrap();
    num.div_ppoly(&pp(spec, &[(1, "1")])).unwrap()
}

/// The reference `e_3` in four variables, built on the given `e_2`.
pub fn e3_of_4(spec: RingSpec, e2: &PRat) -> PRat {
    let e2_part = e2.mul_ppoly(&pp(spec, &[(-1, "14"), (1, "23")]));
    let rest = PRat::from_ppoly(pp(spec, &[(1, "115"), (-1, "124"), (-1, "16"), (1, "25")]));
    e2_part.try_add(&rest).unwrap().div_ppoly(&pp(spec, &[(1, "22"), (-1, "13")])).unwrap()
}
