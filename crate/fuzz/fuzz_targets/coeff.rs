#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::RingSpec;

fuzz_target!(|input: (u8, &str)| {
    let spec = match input.0 % 5 {
        0 => RingSpec::Integers,
        1 => RingSpec::Rationals,
        2 => RingSpec::PrimeField(2),
        3 => RingSpec::PrimeField(3),
        _ => RingSpec::PrimeField(2_147_483_647),
    };
    if let Ok(c) = spec.parse_coeff(input.1) {
        assert_eq!(spec.parse_coeff(&c.to_string()).expect("display round-trips"), c);
    }
});
