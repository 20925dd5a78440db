#![no_main]

use ecd_sweep::{ConfigLayer, SweepConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(layer) = ConfigLayer::from_toml_str(text) else {
        return;
    };
    let merged = layer.clone().overlay(ConfigLayer::default());
    assert_eq!(merged, layer);
    if let Ok(cfg) = SweepConfig::resolve(layer) {
        let values = cfg.grid.values();
        assert_eq!(values.len(), cfg.grid.count);
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        assert!(!cfg.bins.is_empty() && cfg.samples >= 1 && cfg.window.span >= 1);
    }
});
