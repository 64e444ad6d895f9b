#![no_main]

use adhesive::presentation::Presentation;
use adhesive::sheaf::Site;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(p) = Presentation::from_json(&v) {
        let again = Presentation::from_json(&p.to_json()).expect("serialized presentations parse");
        assert_eq!(again, p);
    }
    if let Ok(site) = Site::from_json(&v) {
        let _ = site.j_families();
    }
});
