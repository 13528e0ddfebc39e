#![no_main]

use jgroup_core::notation::parse_perm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_perm(s) {
        assert_eq!(parse_perm(&p.to_string()).unwrap(), p);
    }
});
