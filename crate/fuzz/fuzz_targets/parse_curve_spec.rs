#![no_main]
//! Fuzz target for the JSON curve-spec parser and the generators behind it.
//!
//! Arbitrary input may be rejected but must never panic; accepted specs
//! with a modest sample count must generate cleanly or return an error.

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = curveturn::io::parse_curve_spec(text) {
            if spec.samples <= 2048 {
                let _ = curveturn::generate(&spec);
            }
        }
    }
});
