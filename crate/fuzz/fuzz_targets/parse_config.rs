#![no_main]

use libfuzzer_sys::fuzz_target;

use diffpow::config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Parsing plus resolution must never panic: every malformed input maps
    // to a ConfigError.
    let _ = config::validate_text(text);
});
