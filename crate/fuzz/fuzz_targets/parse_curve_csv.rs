#![no_main]
//! Fuzz target for the curve CSV parser.
//!
//! The parser takes untrusted files from the CLI; it may reject input but
//! must never panic. Accepted curves must survive a write/parse round trip.

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(curve) = curveturn::io::parse_curve_csv(text) {
            let rewritten = curveturn::io::write_curve_csv(&curve);
            let back = curveturn::io::parse_curve_csv(&rewritten)
                .expect("round trip of an accepted curve");
            assert_eq!(back.vertices(), curve.vertices());
            assert_eq!(back.is_closed(), curve.is_closed());
        }
    }
});
