#![no_main]

use adhesive::replay::{collect_witnesses, rerun};
use libfuzzer_sys::fuzz_target;

// Replays are bounded by the witness's own bound, so keep inputs small.
fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    for w in collect_witnesses(&v) {
        if w.bound.is_some_and(|b| b > 3) {
            continue;
        }
        let _ = rerun(&w);
    }
});
