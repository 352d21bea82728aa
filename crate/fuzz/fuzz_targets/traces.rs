#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::parse::parse_coeff_list;
use powersym::trace_charpoly::{charpoly_from_traces, power_sums_from_e};
use powersym::{RingSpec, TraceSequence};

fuzz_target!(|input: (u8, &str)| {
    let spec = if input.0 & 1 == 0 { RingSpec::PrimeField(2) } else { RingSpec::PrimeField(3) };
    let n = usize::from(input.0 >> 1) % 4 + 1;
    let Ok(values) = parse_coeff_list(input.1, spec) else {
        return;
    };
    let Ok(t) = TraceSequence::new(spec, n, values) else {
        return;
    };
    if let Ok(cp) = charpoly_from_traces(&t) {
        let mut e = vec![spec.one()];
        e.extend_from_slice(cp.elementary_values());
        let sums = power_sums_from_e(spec, &e, t.traces().len());
        assert_eq!(sums, t.traces());
    }
});
