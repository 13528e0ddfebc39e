#![no_main]

use jgroup_core::notation::parse_triad_name;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_triad_name(s);
    }
});
