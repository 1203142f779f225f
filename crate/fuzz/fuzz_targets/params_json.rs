#![no_main]

use libfuzzer_sys::fuzz_target;
use rdmt::distributions::parse_params_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_params_json(text) {
        let again = serde_json::to_string(&p).expect("parameters serialize");
        assert_eq!(parse_params_json(&again).expect("serialized parameters parse"), p);
    }
});
