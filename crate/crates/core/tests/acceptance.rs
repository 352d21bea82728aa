//! One PASS/FAIL line per acceptance criterion. Built without the libtest
//! harness so the report is always printed.
//!
//! Two criteria are reported as FAIL: the library deliberately disagrees
//! with the expected outcome there, and the test asserts that the failure
//! is exactly the analysed one, so any other change still breaks the build.

mod common;

use std::time::{Duration, Instant};

use common::*;
use powersym::multipoly::{determinant, elementary, power_sum, power_sum_hankel, vandermonde_squared};
use powersym::newton_engine::{hankel_det_x, hankel_subset_sum, verify_formula_x, EFormula};
use powersym::subalgebra_lab::{
    chain_gap_check, coprime_part_check, expand_certificate, membership, witness_closed_form,
    witness_coefficient, witness_partition, MembershipQuery,
};
use powersym::sym_basis::{p_to_e_closed, p_to_e_recursive, p_to_e_table};
use powersym::trace_charpoly::{
    charpoly_from_traces, charpoly_from_traces_with, direct_charpoly, simulate_traces, CharpolyOptions,
    Provenance, TraceSequence,
};
use powersym::{express_e, verify_formula, Coeff, EExpansion, Error, PPoly, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_1: Duration = Duration::from_secs(5);
const LIMIT_2: Duration = Duration::from_secs(60);
const LIMIT_3: Duration = Duration::from_secs(1);
const LIMIT_4: Duration = Duration::from_secs(30);
const LIMIT_5: Duration = Duration::from_secs(30);
const LIMIT_6: Duration = Duration::from_secs(30);
const LIMIT_7: Duration = Duration::from_secs(1);
const LIMIT_8: Duration = Duration::from_secs(60);
const LIMIT_9: Duration = Duration::from_secs(10);
const LIMIT_10: Duration = Duration::from_secs(30);
const LIMIT_11: Duration = Duration::from_secs(30);
const LIMIT_12: Duration = Duration::from_secs(5);

/// Seed for the random matrices of criterion 8.
const SEED: u64 = 0x5eed_c0ef;
const RANDOM_MATRICES: usize = 200;

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
        Err(d) => (false, d),
    };
    println!(
        "{} criterion {id:>2} ({name}) [{elapsed:.2?} / {limit:?}]: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    Outcome { id, pass, detail }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_known_formulas() -> Result<String, String> {
    let ours = |k, n| express_e(k, n, Z).map_err(|e| e.to_string());
    ensure(ours(2, 2)?.value == e2_of_2(Z), || "e2 in 2 variables differs".into())?;
    ensure(ours(2, 3)?.value == e2_of_3(Z), || "e2 in 3 variables differs".into())?;
    ensure(ours(3, 3)?.value == e3_of_3(Z), || "e3 in 3 variables differs".into())?;
    let e24 = ours(2, 4)?;
    let single = EFormula { value: e2_of_4(Z, false), ..e24.clone() };
    let doubled = EFormula { value: e2_of_4(Z, true), ..e24.clone() };
    let reading = match (verify_formula(&single), verify_formula(&doubled)) {
        (true, false) => single,
        (s, d) => return Err(format!("e2 in 4 variables: single reading verifies {s}, doubled {d}")),
    };
    ensure(e24.value == reading.value, || "e2 in 4 variables differs from the verified reading".into())?;
    ensure(ours(3, 4)?.value == e3_of_4(Z, &reading.value), || "e3 in 4 variables differs".into())?;
    Ok("five reference formulas match; the repeated p_{245} - p_{335} pair in e2^(4) is a duplicate".into())
}

fn c2_soundness_sweep() -> Result<String, String> {
    let mut count = 0;
    for spec in [Z, field(2), field(3), field(5)] {
        for n in 1..=5 {
            for k in 1..=n {
                let f = express_e(k, n, spec).map_err(|e| format!("{spec} k={k} n={n}: {e}"))?;
                ensure(verify_formula(&f), || format!("{spec} k={k} n={n} does not verify"))?;
                count += 1;
            }
        }
    }
    let f = express_e(3, 4, field(3)).unwrap();
    ensure(verify_formula_x(&f), || "x-route disagrees for F3 k=3 n=4".into())?;
    Ok(format!("{count}/60 formulas verified"))
}

fn c3_mod_two_specialization() -> Result<String, String> {
    let f2 = field(2);
    let f = express_e(2, 2, f2).map_err(|e| e.to_string())?;
    let p1 = PPoly::symbol(f2, 1);
    let reduced = f.value.substitute(&[p1.clone(), &p1 * &p1]).map_err(|e| e.to_string())?;
    let target = frac(pp(f2, &[(1, "111"), (1, "3")]), pp(f2, &[(1, "1")]));
    ensure(reduced == target, || format!("got {reduced}"))?;
    Ok(format!("P2 -> P1^2 gives {reduced}"))
}

fn c4_square_hankel() -> Result<String, String> {
    for n in 1..=5 {
        let expected = &elementary(n, n, Z) * &vandermonde_squared(n, Z);
        ensure(hankel_det_x(n, n, Z) == expected, || format!("n = {n}"))?;
        if n <= 3 {
            let direct = determinant(&power_sum_hankel(n, 1, n, Z)).map_err(|e| e.to_string())?;
            ensure(direct == expected, || format!("direct determinant, n = {n}"))?;
        }
    }
    Ok("det P_{n,n} = e_n * V^2 for n <= 5".into())
}

fn c5_subset_sum_and_vanishing() -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=5 {
        for d in 1..=n {
            ensure(hankel_det_x(d, n, Z) == hankel_subset_sum(d, n, Z), || format!("d = {d}, n = {n}"))?;
            checked += 1;
        }
    }
    for d in 2..=6 {
        for n in 1..d {
            ensure(hankel_det_x(d, n, Z).is_zero(), || format!("d = {d}, n = {n} does not vanish"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cases"))
}

fn c6_witness_monomial() -> Result<String, String> {
    for n in 1..=5 {
        for d in 1..=n {
            let mut exps = vec![0u32; n];
            for (i, e) in exps.iter_mut().take(d).enumerate() {
                *e = 2 * i as u32 + 1;
            }
            let c = hankel_det_x(d, n, Z).coeff(&exps);
            ensure(c.is_one(), || format!("d = {d}, n = {n}: coefficient {c}"))?;
        }
    }
    Ok("coefficient 1 for all d <= n <= 5".into())
}

/// The traces `(0, -1, 0, -1)` over F3 are shared by `X^3 - X - c` for
/// every `c`, so `e3` is not a function of them. The default call reports
/// this; without the uniqueness check the inductive result is `X^3 - X`.
fn c7_charpoly_example() -> Result<String, String> {
    let f3 = field(3);
    let t = TraceSequence::from_strs(f3, 3, &["0", "-1", "0", "-1"]).map_err(|e| e.to_string())?;
    let ungated = charpoly_from_traces_with(&t, CharpolyOptions { uniqueness_check: false })
        .map_err(|e| e.to_string())?;
    let ungated_ok = ungated.to_string() == "X^3 - X" && ungated.provenance()[2] == Provenance::RemovablePole;
    let mut shared = Vec::new();
    for c in 0..3 {
        let coeffs = [f3.one(), f3.zero(), f3.from_i64(-1), f3.from_i64(-c)];
        let m = powersym::trace_charpoly::companion_matrix(&coeffs);
        if simulate_traces(&m).map_err(|e| e.to_string())? == t {
            shared.push(c);
        }
    }
    match charpoly_from_traces(&t) {
        Ok(cp) if cp.to_string() == "X^3 - X" => Ok("X^3 - X with e3 from the removable pole".into()),
        Err(Error::Indeterminate(3)) if ungated_ok && shared == [0, 1, 2] => Err(format!(
            "default call returns Indeterminate(3): X^3 - X - c has these traces for c = {shared:?}; \
             with the uniqueness check off the result is X^3 - X with e3 {}",
            Provenance::RemovablePole
        )),
        other => Err(format!("unexpected outcome {other:?}")),
    }
}

fn all_matrices(spec: RingSpec, n: usize) -> Vec<Vec<Vec<Coeff>>> {
    let r = spec.characteristic() as i64;
    let cells = n * n;
    (0..r.pow(cells as u32))
        .map(|mut code| {
            let mut flat = Vec::with_capacity(cells);
            for _ in 0..cells {
                flat.push(spec.from_i64(code % r));
                code /= r;
            }
            flat.chunks(n).map(<[Coeff]>::to_vec).collect()
        })
        .collect()
}

fn c8_round_trip() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases: Vec<Vec<Vec<Coeff>>> = all_matrices(field(2), 2);
    cases.extend(all_matrices(field(3), 2));
    for r in [3i64, 5] {
        let spec = field(r as u64);
        for _ in 0..RANDOM_MATRICES {
            cases.push((0..3).map(|_| (0..3).map(|_| spec.from_i64(rng.gen_range(0..r))).collect()).collect());
        }
    }
    let (mut ok, mut refused) = (0, 0);
    for m in &cases {
        let t = simulate_traces(m).map_err(|e| e.to_string())?;
        match charpoly_from_traces(&t) {
            Ok(cp) => {
                let direct = direct_charpoly(m).map_err(|e| e.to_string())?;
                ensure(cp.coefficients() == direct, || format!("false success on {m:?}"))?;
                ok += 1;
            }
            Err(Error::Indeterminate(_)) => refused += 1,
            Err(e) => return Err(format!("{e} on {m:?}")),
        }
    }
    Ok(format!("{} matrices: {ok} recovered, {refused} indeterminate, 0 wrong", cases.len()))
}

fn c9_membership() -> Result<String, String> {
    let f2 = field(2);
    let f3 = field(3);
    for n in [2, 3] {
        let q = MembershipQuery::new(EExpansion::e(n, n, f2));
        let a = membership(&q).map_err(|e| e.to_string())?;
        ensure(!a.member, || format!("e{n} reported as a member over F2"))?;
    }
    let target = EExpansion::e(2, 3, f3);
    let a = membership(&MembershipQuery::new(target.clone())).map_err(|e| e.to_string())?;
    ensure(a.member, || "e2 not a member over F3".into())?;
    ensure(expand_certificate(&a.certificate, 3, f3) == target, || "certificate does not expand to e2".into())?;
    Ok("e2, e3 not in F2[p]; e2 in F3[p] with checked certificate".into())
}

fn c10_closed_form() -> Result<String, String> {
    for spec in [Z, field(2), field(3), field(5)] {
        for n in 1..=10 {
            let table = p_to_e_table(10, n, spec);
            for m in 1..=10 {
                ensure(p_to_e_closed(m, n, spec) == table[m], || format!("{spec} m={m} n={n}"))?;
                ensure(p_to_e_recursive(m, n, spec) == table[m], || format!("table {spec} m={m} n={n}"))?;
                if m <= 8 && n <= 4 {
                    ensure(table[m].expand() == power_sum(m, n, spec), || format!("expand {spec} m={m} n={n}"))?;
                }
            }
        }
    }
    Ok("closed form = recursion for m, n <= 10; both expand to p_m for m <= 8, n <= 4".into())
}

/// The coefficient of `e_r^a e_b` in `p_k` is `(-1)^{k+a+1} k`. This agrees
/// with `(-1)^{a+1}` modulo `r` for `r = 2`, but over F3 only when
/// `(-1)^k k ≡ 1 (mod 3)`, i.e. `k ≡ 4, 5 (mod 6)`.
fn c11_coprime_and_witness() -> Result<String, String> {
    let mut mismatches = Vec::new();
    for r in [2u64, 3] {
        let spec = field(r);
        for m in (1..=8).filter(|m| m % r as usize != 0) {
            ensure(coprime_part_check(m, spec, m).map_err(|e| e.to_string())?, || format!("F{r} m={m}"))?;
        }
        for k in (1..=9).filter(|k| k % r as usize != 0) {
            let n = k.max(r as usize);
            let (a, _, _) = witness_partition(k, r).map_err(|e| e.to_string())?;
            let got = witness_coefficient(k, spec, n).map_err(|e| e.to_string())?;
            let closed = witness_closed_form(k, spec).map_err(|e| e.to_string())?;
            ensure(got == closed, || format!("F{r} k={k}: {got} vs closed form {closed}"))?;
            let claimed = spec.from_i64(if a % 2 == 1 { 1 } else { -1 });
            if got != claimed {
                mismatches.push((r, k));
            }
            ensure(chain_gap_check(k, spec, n, None).map_err(|e| e.to_string())?, || format!("chain F{r} k={k}"))?;
        }
    }
    if mismatches.is_empty() {
        Ok("coprime parts, witness sign and chain gaps all hold".into())
    } else {
        Err(format!(
            "coprime_part_check and chain_gap_check hold, but the witness coefficient differs from \
             (-1)^(a+1) at (r, k) = {mismatches:?}; it equals (-1)^(k+a+1)*k in every case"
        ))
    }
}

fn c12_frobenius() -> Result<String, String> {
    for r in [2u64, 3, 5] {
        let spec = field(r);
        let r = r as usize;
        for k in (1..).take_while(|k| k * r <= 12) {
            for n in 1..=4 {
                ensure(power_sum(k * r, n, spec) == power_sum(k, n, spec).pow(r as u32), || {
                    format!("x-basis F{r} k={k} n={n}")
                })?;
            }
            for n in 1..=6 {
                let table = p_to_e_table(k * r, n, spec);
                ensure(table[k * r] == table[k].pow(r as u32), || format!("e-basis F{r} k={k} n={n}"))?;
            }
        }
    }
    Ok("p_{kr} = p_k^r in both bases for kr <= 12".into())
}

fn main() {
    let outcomes = vec![
        criterion(1, "known formulas", LIMIT_1, c1_known_formulas),
        criterion(2, "soundness sweep", LIMIT_2, c2_soundness_sweep),
        criterion(3, "mod-2 specialization", LIMIT_3, c3_mod_two_specialization),
        criterion(4, "square Hankel determinant", LIMIT_4, c4_square_hankel),
        criterion(5, "subset sum and vanishing", LIMIT_5, c5_subset_sum_and_vanishing),
        criterion(6, "witness monomial", LIMIT_6, c6_witness_monomial),
        criterion(7, "charpoly example", LIMIT_7, c7_charpoly_example),
        criterion(8, "charpoly round trip", LIMIT_8, c8_round_trip),
        criterion(9, "membership", LIMIT_9, c9_membership),
        criterion(10, "closed form for p_m", LIMIT_10, c10_closed_form),
        criterion(11, "coprime parts and witness", LIMIT_11, c11_coprime_and_witness),
        criterion(12, "Frobenius", LIMIT_12, c12_frobenius),
    ];
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed}/{} criteria pass", outcomes.len());

    for o in &outcomes {
        match o.id {
            7 => assert!(
                !o.pass && o.detail.starts_with("default call returns Indeterminate(3)"),
                "criterion 7 changed: {}",
                o.detail
            ),
            11 => assert!(
                !o.pass && o.detail.ends_with("(r, k) = [(3, 1), (3, 2), (3, 7), (3, 8)]; it equals (-1)^(k+a+1)*k in every case"),
                "criterion 11 changed: {}",
                o.detail
            ),
            _ => assert!(o.pass, "criterion {} failed: {}", o.id, o.detail),
        }
    }
}
