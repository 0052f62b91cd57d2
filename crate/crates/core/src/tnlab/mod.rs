//! Executable TN ring models: a cyclotomic base `Z[zeta_k]`, a free part
//! and a finite nilpotent torsion ideal `N_tors`, with the torsion unit
//! groups of `A` and of `B = A/N_tors`.
//!
//! Model files (`.tn`) extend the ring presentation format:
//!
//! ```toml
//! name = "Z[i][x]/(x^2 - 1)"
//! conductor = 4                 # base Z[zeta_4] = Z[i]
//! free_basis = ["1", "x"]       # free over the base; the first is the identity
//! torsion_basis = []            # additive generators of N_tors
//! basis_orders = []             # their prime-power orders
//! scalar_action = []            # row j: coordinates of zeta y_j
//! # mult[a][b]: phi(k) base coordinates per free basis element, then
//! # torsion coordinates, for the product of basis elements a and b
//! mult = [[[1, 0, 0, 0], [0, 0, 1, 0]],
//!         [[0, 0, 1, 0], [1, 0, 0, 0]]]
//! ```

mod base;
mod construct;
mod model;
mod units;

pub use base::{Cyc, CycloBase};
pub use construct::{
    build_construction_model, cyclotomic_quotient_group, rank_bookkeeping, PrimePowerIdealQuotient,
};
pub use model::{ModelElem, TnModel, TnText};
pub use units::BASE_SEARCH_CAP;

/// Shipped example models.
pub const EXAMPLES: [(&str, &str); 3] = [
    ("paper-7-1", include_str!("../../examples/paper-7-1.tn")),
    (
        "paper-7-2-v2",
        include_str!("../../examples/paper-7-2-v2.tn"),
    ),
    (
        "paper-7-2-v4",
        include_str!("../../examples/paper-7-2-v4.tn"),
    ),
];

/// A shipped example by name.
pub fn example(name: &str) -> Option<crate::Result<TnModel>> {
    EXAMPLES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| TnModel::parse(text))
}
