#![no_main]

use jgroup_core::extension::ext_decode;
use jgroup_core::notation::parse_matrix;
use jgroup_core::prelude::*;
use jgroup_core::voicing::decode;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for n in [2, 12] {
        let modulus = Modulus::new(n).unwrap();
        let Ok(m) = parse_matrix(s, modulus) else { continue };
        // both decoders must either reject or reproduce the matrix exactly
        if let Ok(a) = decode(&m) {
            assert_eq!(a.matrix(), m);
        }
        if let Ok(a) = ext_decode(&m) {
            assert_eq!(a.matrix(), m);
        }
    }
});
