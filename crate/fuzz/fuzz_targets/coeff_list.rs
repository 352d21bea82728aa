#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::parse::parse_coeff_list;
use powersym::RingSpec;

fuzz_target!(|data: &str| {
    let _ = parse_coeff_list(data, RingSpec::PrimeField(5));
    let _ = parse_coeff_list(data, RingSpec::Rationals);
});
