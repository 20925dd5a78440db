#![no_main]

use ecd_sweep::{csv_string, parse_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rows) = parse_csv(text) else { return };
    let emitted = csv_string(&rows);
    let again = parse_csv(&emitted).expect("emitted CSV parses");
    assert_eq!(again.len(), rows.len());
    assert_eq!(csv_string(&again), emitted);
});
