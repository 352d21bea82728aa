#![no_main]

use libfuzzer_sys::fuzz_target;
use powersym::newton_engine::{EFormula, EFormulaDoc};

fuzz_target!(|data: &str| {
    let Ok(doc) = serde_json::from_str::<EFormulaDoc>(data) else {
        return;
    };
    if let Ok(f) = EFormula::from_json(&doc) {
        let again = EFormula::from_json(&f.to_json(doc.verified)).expect("round-trips");
        assert_eq!(again, f);
    }
});
