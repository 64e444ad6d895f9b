#![no_main]

use adhesive::dpo::{dpo_step, host_from_json, Rule};
use adhesive::report::rule_category;
use libfuzzer_sys::fuzz_target;

// Input: a JSON array `[rule, host]`.
fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let (Some(rule_v), Some(host_v)) = (v.get(0), v.get(1)) else { return };
    let Ok(cat) = rule_category(rule_v) else { return };
    let Ok(rule) = Rule::from_json(&cat, rule_v) else { return };
    if let Ok((_, Some(m))) = host_from_json(&cat, &rule, host_v) {
        let _ = dpo_step(&cat, &rule, &m);
    }
});
