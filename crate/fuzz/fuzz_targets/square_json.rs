#![no_main]

use adhesive::instances::Kind;
use adhesive::{Cube, Square, StructCat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    for kind in [Kind::FinSet, Kind::FinGraph, Kind::RelSet] {
        let cat = StructCat::new(kind);
        if let Ok(sq) = Square::from_json(&cat, &v) {
            let _ = adhesive::universal::pushout_holds(&cat, &sq);
            let _ = adhesive::universal::pullback_holds(&cat, &sq);
        }
        let _ = Cube::from_json(&cat, &v);
    }
});
