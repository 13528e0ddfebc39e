#![no_main]

use jgroup_core::notation::parse_vec3;
use jgroup_core::prelude::*;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let modulus = Modulus::TWELVE;
    if let Ok(x) = parse_vec3(s, modulus) {
        assert_eq!(parse_vec3(&x.to_string(), modulus).unwrap(), x);
    }
});
