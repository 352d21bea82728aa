#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::trace_charpoly::{direct_charpoly, parse_matrix_json};
use powersym::RingSpec;

fuzz_target!(|data: &str| {
    if let Ok(m) = parse_matrix_json(data, RingSpec::PrimeField(3)) {
        if m.len() <= 4 {
            let _ = direct_charpoly(&m);
        }
    }
});
