#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::Partition;

fuzz_target!(|parts: Vec<u32>| {
    if let Ok(p) = Partition::new(parts.clone()) {
        assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(p.len(), parts.len());
        assert_eq!(Partition::from_monomial(&p.to_monomial()), p);
    }
});
