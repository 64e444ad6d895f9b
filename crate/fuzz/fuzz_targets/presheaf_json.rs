#![no_main]

use adhesive::presheaf::presheaf_from_json;
use adhesive::sheaf::demo::Demo;
use adhesive::sheaf::{is_j_sheaf, is_k_separated, Site};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let site = Site::from_json(&serde_json::from_str(Demo::FiveObject.shipped()).unwrap()).unwrap();
    if let Ok(f) = presheaf_from_json(&site.cat, &v) {
        let _ = is_j_sheaf(&site, f.as_ref());
        let _ = is_k_separated(&site, f.as_ref());
    }
});
