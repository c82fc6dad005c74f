#![no_main]
//! Fuzzes the radical-sum text parser: arbitrary input must never panic, and
//! anything that parses must round-trip through the canonical rendering.

use clean_sombor::RadicalSum;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Bound term count; each term's squarefree extraction is O(ms).
    if data.len() > 512 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = text.parse::<RadicalSum>() {
        let rendered = value.to_string();
        let reparsed: RadicalSum = rendered
            .parse()
            .expect("canonical rendering must re-parse");
        assert_eq!(reparsed, value, "rendering of `{text}` did not round-trip");
    }
});
