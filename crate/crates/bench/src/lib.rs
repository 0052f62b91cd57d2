//! Fixed inputs shared by the `engine` benchmarks.

use fuchs_core::{FgAbGroup, FinAbGroup};

/// Groups covering each decision path of the engine.
pub const DECIDE_CASES: [&str; 6] = [
    "Z/328Z x Z",
    "Z/4Z x Z/16Z",
    "(Z/5Z)^2 x Z/600Z",
    "Z/24Z x (Z/5Z)^2",
    "Z/4Z x (Z/3Z)^4",
    "Z/2Z x Z/2Z x Z/3Z x Z",
];

pub fn decide_cases() -> Vec<(&'static str, FgAbGroup)> {
    DECIDE_CASES
        .iter()
        .map(|s| (*s, s.parse().expect("fixture parses")))
        .collect()
}

/// `Z/nZ` for `n = 1..=max`.
pub fn cyclic_groups(max: u64) -> Vec<FinAbGroup> {
    (1..=max).map(FinAbGroup::cyclic).collect()
}
