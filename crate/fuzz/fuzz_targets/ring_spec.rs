#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::RingSpec;

fuzz_target!(|data: &str| {
    if let Ok(spec) = data.parse::<RingSpec>() {
        let again: RingSpec = spec.to_string().parse().expect("display round-trips");
        assert_eq!(spec, again);
    }
});
