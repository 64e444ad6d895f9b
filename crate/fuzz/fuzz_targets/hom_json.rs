#![no_main]

use adhesive::instances::Kind;
use adhesive::{Category, StructCat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    for kind in [Kind::FinSet, Kind::FinGraph, Kind::RelSet, Kind::AcyclicRel] {
        let cat = StructCat::new(kind);
        if let Ok(h) = cat.mor_from_json(&v) {
            cat.check_hom(&h).expect("parsed morphisms are valid");
            assert_eq!(cat.mor_from_json(&cat.mor_to_json(&h)).unwrap(), h);
        }
    }
});
