#![no_main]

use libfuzzer_sys::fuzz_target;
use rdmt::io::read_matrices_jsonl;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = read_matrices_jsonl(text);
});
