//! Replays the checked-in fuzz corpora through the same code paths as the
//! fuzz targets, so the seeds keep working without a libFuzzer toolchain.

use diffpow::config;
use diffpow::parse::{format_polynomial, parse_polynomial};
use diffpow::ring::Ring;

fn corpus_dir(target: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target)
}

#[test]
fn parse_expr_corpus_replays_cleanly() {
    let ring = Ring::standard(&["x", "y", "z"], 2).unwrap();
    let dir = corpus_dir("parse_expr");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).expect("corpus directory exists") {
        let path = entry.unwrap().path();
        let Ok(text) = std::fs::read_to_string(&path) else {
            continue;
        };
        seen += 1;
        if let Ok(poly) = parse_polynomial(&ring, &text) {
            let printed = format_polynomial(&poly);
            let back = parse_polynomial(&ring, &printed).unwrap();
            assert_eq!(back, poly, "roundtrip failed for {}", path.display());
        }
    }
    assert!(seen >= 8, "corpus looks empty: {seen} files");
}

#[test]
fn parse_config_corpus_replays_cleanly() {
    let dir = corpus_dir("parse_config");
    let mut seen = 0;
    let mut valid = 0;
    for entry in std::fs::read_dir(&dir).expect("corpus directory exists") {
        let path = entry.unwrap().path();
        let Ok(text) = std::fs::read_to_string(&path) else {
            continue;
        };
        seen += 1;
        if config::validate_text(&text).is_ok() {
            valid += 1;
        }
    }
    assert!(seen >= 6, "corpus looks empty: {seen} files");
    // The bundled configs are part of the corpus and must stay valid.
    assert!(
        valid >= 4,
        "expected the bundled configs to validate: {valid}"
    );
}
