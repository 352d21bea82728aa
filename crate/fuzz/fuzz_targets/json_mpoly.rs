#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::MPoly;

fuzz_target!(|data: &str| {
    if let Ok(value) = MPoly::from_json_str(data) {
        let text = serde_json::to_string(&value.to_json()).expect("serializable");
        assert_eq!(MPoly::from_json_str(&text).expect("round-trips"), value);
    }
});
