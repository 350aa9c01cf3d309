#![no_main]

use libfuzzer_sys::fuzz_target;

use diffpow::parse::{format_polynomial, parse_polynomial};
use diffpow::ring::Ring;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = Ring::standard(&["x", "y", "z"], 2).unwrap();
    if let Ok(poly) = parse_polynomial(&ring, text) {
        // Canonical forms must round-trip.
        let printed = format_polynomial(&poly);
        let back = parse_polynomial(&ring, &printed).expect("canonical form reparses");
        assert_eq!(back, poly);
    }
});
