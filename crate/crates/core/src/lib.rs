//! Decide whether a finitely generated abelian group `T x Z^r` is the full
//! unit group of a ring, and check the underlying theory on explicit rings.
//!
//! The crate is split into:
//!
//! * [`abelian`]: canonical forms for finite and finitely generated abelian
//!   groups, Smith normal form, black-box structure recovery;
//! * [`numtheory`]: factorisation, multiplicative orders, cyclotomic
//!   polynomials and their factorisation modulo primes, coprime factor covers;
//! * [`radical`]: finite commutative radical rings, adjoint groups and their
//!   exhaustive enumeration;
//! * [`finring`]: finite commutative unital rings and their unit groups;
//! * [`tnlab`]: explicit models of characteristic-zero rings whose torsion is
//!   nilpotent;
//! * [`realize`]: the decision engine and certificate checker;
//! * [`presentation`]: the shared text format for rings and models.

pub mod abelian;
pub mod error;
pub mod finring;
pub mod numtheory;
pub mod presentation;
pub mod radical;
pub mod realize;
pub mod tnlab;

pub use abelian::{FgAbGroup, FinAbGroup, IntMatrix};
pub use error::{Error, Result};
pub use finring::FinCommRing;
pub use radical::RadicalRing;
pub use realize::{RingClass, Verdict};
pub use tnlab::TnModel;

/// Default cap on the number of ring elements an oracle will enumerate.
pub const DEFAULT_RING_CAP: u128 = 1 << 12;

/// Environment variable overriding the enumeration caps.
pub const CAP_ENV: &str = "FUCHS_ORACLE_CAP";

/// Reads [`CAP_ENV`], falling back to `default`.
pub fn cap_from_env(default: u128) -> u128 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
