#![no_main]

use adhesive::adhesion::{cancellation_lemma_check, CancellationConfig};
use adhesive::StructCat;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let cat = StructCat::finset();
    if let Ok(cfg) = CancellationConfig::from_json(&cat, &v) {
        let _ = cancellation_lemma_check(&cat, &cfg, 2);
    }
});
