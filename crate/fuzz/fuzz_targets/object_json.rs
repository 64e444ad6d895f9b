#![no_main]

use adhesive::instances::json::object_from_json;
use adhesive::instances::Kind;
use adhesive::{Category, StructCat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    for kind in [Kind::FinSet, Kind::FinGraph, Kind::RelSet, Kind::AcyclicRel] {
        let cat = StructCat::new(kind);
        if let Ok(x) = object_from_json(&cat, &v) {
            cat.check_object(&x.obj).expect("parsed objects are valid");
            let back = object_from_json(&cat, &cat.obj_to_json(&x.obj)).expect("serialized objects parse");
            assert_eq!(back.obj, x.obj);
        }
    }
});
