#![no_main]

use jgroup_core::analysis::{solve_uniform_all, Progression};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = Progression::from_json(s) {
        assert_eq!(Progression::from_json(&p.to_json()).unwrap(), p);
        // keep the solver on small inputs so a run stays fast
        if p.modulus().get() <= 64 && p.tuples().len() <= 16 {
            let _ = solve_uniform_all(&p);
        }
    }
});
