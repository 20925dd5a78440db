#![no_main]

use ecd_sweep::parse_grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = parse_grid(text) {
        let values = grid.values();
        assert_eq!(values.len(), grid.count);
        assert_eq!(values[0], grid.start);
        if grid.count > 1 {
            assert_eq!(values[grid.count - 1], grid.stop);
        }
        assert!(values.iter().all(|v| v.is_finite()));
    }
});
