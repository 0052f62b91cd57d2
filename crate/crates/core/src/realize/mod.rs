//! The decision engine.

mod any;
mod check;
mod finite;
mod rank;
mod tn;
mod verdict;

pub use any::{cyclic_rank_bound, decide_any, direct_factor_pairs, SPLIT_CAP};
pub use check::{certificate_check, checked};
pub use finite::{cover_factors, decide_finite, NODE_CAP};
pub use rank::{cyclic_two_part, g_value, ge_classify, lambda, r_value, GeClass, NotInClass};
pub use tn::{decide_tn, two_power_family};
pub use verdict::{
    Case, Certificate, FamilyWitness, Gap, LocalFactor, LocalWitness, Obstruction, Outcome,
    RingClass, Theorem, Verdict,
};
