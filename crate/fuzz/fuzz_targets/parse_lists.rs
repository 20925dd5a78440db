#![no_main]

use ecd_sweep::{parse_bins, parse_reals, parse_vec3};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let reals = parse_reals(text);
    if let Ok(v) = parse_vec3(text) {
        assert_eq!(reals.as_deref().ok(), Some(&v[..]));
    }
    if let Ok(bins) = parse_bins(text) {
        assert!(!bins.is_empty() && bins.iter().all(|&m| m > 0));
        assert_eq!(bins.len(), text.split(',').count());
    }
});
