#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::PRat;

fuzz_target!(|data: &str| {
    if let Ok(value) = PRat::from_json_str(data) {
        let text = serde_json::to_string(&value.to_json()).expect("serializable");
        assert_eq!(PRat::from_json_str(&text).expect("round-trips"), value);
    }
});
