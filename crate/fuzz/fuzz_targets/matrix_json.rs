#![no_main]

use libfuzzer_sys::fuzz_target;
use rdmt::io::{matrix_to_json_line, parse_matrix_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_matrix_json(text) {
        let back = parse_matrix_json(&matrix_to_json_line(&x)).expect("serialized matrices parse");
        assert_eq!(back, x);
    }
});
