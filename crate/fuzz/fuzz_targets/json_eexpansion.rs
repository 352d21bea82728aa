#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::EExpansion;

fuzz_target!(|data: &str| {
    if let Ok(value) = EExpansion::from_json_str(data) {
        let text = serde_json::to_string(&value.to_json()).expect("serializable");
        assert_eq!(EExpansion::from_json_str(&text).expect("round-trips"), value);
    }
});
