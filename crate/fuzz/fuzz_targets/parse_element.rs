#![no_main]

use jgroup_core::notation::parse_element;
use jgroup_core::prelude::*;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for n in [2, 7, 12] {
        let modulus = Modulus::new(n).unwrap();
        if let Ok(a) = parse_element(s, modulus) {
            // whatever parses must print to something that parses back to it
            assert_eq!(parse_element(&a.to_string(), modulus).unwrap(), a);
        }
    }
});
