#![no_main]

use jgroup_core::notation::parse_utt;
use jgroup_core::triadic::{rho, rho_inverse};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(u) = parse_utt(s) {
        assert_eq!(parse_utt(&u.to_string()).unwrap(), u);
        assert_eq!(rho_inverse(&rho(&u)), u);
    }
});
