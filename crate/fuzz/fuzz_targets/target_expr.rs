#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::parse::parse_target;
use powersym::RingSpec;

fuzz_target!(|input: (u8, &str)| {
    let n = usize::from(input.0 % 4) + 1;
    if input.1.len() > 64 {
        return;
    }
    let _ = parse_target(input.1, n, RingSpec::PrimeField(3));
});
