#![no_main]

use libfuzzer_sys::fuzz_target;
use rdmt::verify::parse_suite_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(suite) = parse_suite_json(text) {
        let again = serde_json::to_string(&suite).expect("checks serialize");
        assert_eq!(parse_suite_json(&again).expect("serialized checks parse").len(), suite.len());
    }
});
