//! Finite and finitely generated abelian groups.
//!
//! Groups are stored in prime-power canonical form: a sorted list of
//! `(p, e, mult)` meaning `(Z/p^e Z)^mult`. Invariant factors are a derived view.

mod blackbox;
mod matrix;
mod parse;

pub use blackbox::{peel_basis, recover_structure, BlackBox, PeeledBasis};
pub use matrix::{group_from_relations, Cokernel, IntMatrix, SmithForm};

use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime};
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u32, u32)>", into = "Vec<(u64, u32, u32)>")]
pub struct FinAbGroup {
    factors: Vec<(u64, u32, u32)>,
}

impl TryFrom<Vec<(u64, u32, u32)>> for FinAbGroup {
    type Error = Error;
    fn try_from(v: Vec<(u64, u32, u32)>) -> Result<Self> {
        FinAbGroup::new(v)
    }
}

impl From<FinAbGroup> for Vec<(u64, u32, u32)> {
    fn from(g: FinAbGroup) -> Self {
        g.factors
    }
}

impl FinAbGroup {
    /// Builds a group from `(p, e, mult)` triples in any order; entries with
    /// `e = 0` or `mult = 0` are dropped, repeated keys are merged.
    pub fn new(factors: impl IntoIterator<Item = (u64, u32, u32)>) -> Result<Self> {
        let mut map: BTreeMap<(u64, u32), u32> = BTreeMap::new();
        for (p, e, m) in factors {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e == 0 || m == 0 {
                continue;
            }
            *map.entry((p, e)).or_default() += m;
        }
        Ok(FinAbGroup {
            factors: map.into_iter().map(|((p, e), m)| (p, e, m)).collect(),
        })
    }

    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    /// `Z/nZ`, split into prime-power parts. `n = 0` is rejected.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "Z/0Z is not finite");
        FinAbGroup::from_cyclic_orders(&[n])
    }

    /// `prod Z/n_i Z` for arbitrary positive `n_i`.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let triples = orders
            .iter()
            .flat_map(|&n| factorize(n).0.into_iter().map(|(p, e)| (p, e, 1)));
        FinAbGroup::new(triples).expect("factorize yields primes")
    }

    /// `(Z/p^e)^mult` for a single prime power.
    pub fn elementary(p: u64, e: u32, mult: u32) -> Result<Self> {
        FinAbGroup::new([(p, e, mult)])
    }

    pub fn factors(&self) -> &[(u64, u32, u32)] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, &(p, e, m)| {
            acc * BigUint::from(p).pow(e * m)
        })
    }

    /// Order as `u128`, or `None` on overflow.
    pub fn order_u128(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &(p, e, m)| {
            (p as u128)
                .checked_pow(e.checked_mul(m)?)
                .and_then(|x| acc.checked_mul(x))
        })
    }

    pub fn exponent(&self) -> BigUint {
        let mut out = BigUint::one();
        for p in self.primes() {
            let e = self.max_exponent(p);
            out *= BigUint::from(p).pow(e);
        }
        out
    }

    /// Distinct primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|f| f.0).collect();
        ps.dedup();
        ps
    }

    pub fn sylow(&self, p: u64) -> FinAbGroup {
        FinAbGroup {
            factors: self.factors.iter().copied().filter(|f| f.0 == p).collect(),
        }
    }

    /// The part of coprime-to-`p` order.
    pub fn p_complement(&self, p: u64) -> FinAbGroup {
        FinAbGroup {
            factors: self.factors.iter().copied().filter(|f| f.0 != p).collect(),
        }
    }

    /// Number of cyclic factors of the Sylow `p`-subgroup.
    pub fn prufer_rank(&self, p: u64) -> u32 {
        self.factors.iter().filter(|f| f.0 == p).map(|f| f.2).sum()
    }

    /// Largest number of cyclic factors over all primes.
    pub fn rank(&self) -> u32 {
        self.primes()
            .into_iter()
            .map(|p| self.prufer_rank(p))
            .max()
            .unwrap_or(0)
    }

    pub fn max_exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .filter(|f| f.0 == p)
            .map(|f| f.1)
            .max()
            .unwrap_or(0)
    }

    pub fn min_exponent(&self, p: u64) -> Option<u32> {
        self.factors.iter().filter(|f| f.0 == p).map(|f| f.1).min()
    }

    /// Exponents of the cyclic `p`-factors, descending, with repetition.
    pub fn partition(&self, p: u64) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .factors
            .iter()
            .filter(|f| f.0 == p)
            .flat_map(|&(_, e, m)| std::iter::repeat(e).take(m as usize))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Prime-power orders of the cyclic factors, in canonical order.
    pub fn cyclic_factor_orders(&self) -> Vec<u64> {
        self.factors
            .iter()
            .flat_map(|&(p, e, m)| std::iter::repeat(p.pow(e)).take(m as usize))
            .collect()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.factors.iter().all(|f| f.0 == p)
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.iter().all(|f| f.2 == 1) && {
            let ps = self.primes();
            ps.len() == self.factors.len()
        }
    }

    /// `Prank < lambda (p - 1)` for a `p`-group.
    pub fn is_lambda_small(&self, p: u64, lambda: u32) -> Result<bool> {
        if let Some(&(q, e, _)) = self.factors.iter().find(|f| f.0 != p) {
            return Err(Error::NotAPGroup { p, found: q.pow(e) });
        }
        Ok((self.prufer_rank(p) as u64) < lambda as u64 * (p - 1))
    }

    /// `V` with `V^lambda = self`, when every multiplicity is divisible by `lambda`.
    pub fn lambda_power_decompose(&self, lambda: u32) -> Option<FinAbGroup> {
        assert!(lambda >= 1);
        self.factors
            .iter()
            .all(|f| f.2 % lambda == 0)
            .then(|| FinAbGroup {
                factors: self
                    .factors
                    .iter()
                    .map(|&(p, e, m)| (p, e, m / lambda))
                    .collect(),
            })
    }

    /// `self^lambda`, the direct product of `lambda` copies.
    pub fn power(&self, lambda: u32) -> FinAbGroup {
        if lambda == 0 {
            return FinAbGroup::trivial();
        }
        FinAbGroup {
            factors: self
                .factors
                .iter()
                .map(|&(p, e, m)| (p, e, m * lambda))
                .collect(),
        }
    }

    pub fn product(&self, other: &FinAbGroup) -> FinAbGroup {
        FinAbGroup::new(self.factors.iter().chain(other.factors.iter()).copied())
            .expect("factors already valid")
    }

    /// `K` with `self = other x K`, if `other` is a direct factor.
    pub fn cancel(&self, other: &FinAbGroup) -> Option<FinAbGroup> {
        let mut map: BTreeMap<(u64, u32), u32> =
            self.factors.iter().map(|&(p, e, m)| ((p, e), m)).collect();
        for &(p, e, m) in &other.factors {
            let slot = map.get_mut(&(p, e))?;
            *slot = slot.checked_sub(m)?;
        }
        Some(FinAbGroup {
            factors: map
                .into_iter()
                .filter(|&(_, m)| m > 0)
                .map(|((p, e), m)| (p, e, m))
                .collect(),
        })
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self == other
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k`, all greater than 1.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let k = self.rank() as usize;
        let mut out = vec![BigUint::one(); k];
        for p in self.primes() {
            let part = self.partition(p);
            for (i, e) in part.into_iter().enumerate() {
                out[k - 1 - i] *= BigUint::from(p).pow(e);
            }
        }
        out
    }

    /// Number of elements `x` with `p^j x = 0`, as an exponent of `p`.
    pub fn log_p_torsion_count(&self, p: u64, j: u32) -> u32 {
        self.factors
            .iter()
            .filter(|f| f.0 == p)
            .map(|&(_, e, m)| e.min(j) * m)
            .sum()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e, m)| {
                let n = BigUint::from(p).pow(e);
                if m == 1 {
                    format!("Z/{n}Z")
                } else {
                    format!("(Z/{n}Z)^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `T x Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub torsion: FinAbGroup,
    pub free_rank: u32,
}

/// The 2-part invariant: the smallest `k` with a cyclic factor `Z/2^k` in
/// the torsion, or the absence of any 2-torsion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Epsilon {
    NoTwoPart,
    Min(u32),
}

impl Epsilon {
    pub fn value(self) -> Option<u32> {
        match self {
            Epsilon::NoTwoPart => None,
            Epsilon::Min(k) => Some(k),
        }
    }
}

impl FgAbGroup {
    pub fn new(torsion: FinAbGroup, free_rank: u32) -> Self {
        FgAbGroup { torsion, free_rank }
    }

    pub fn finite(torsion: FinAbGroup) -> Self {
        FgAbGroup {
            torsion,
            free_rank: 0,
        }
    }

    pub fn epsilon(&self) -> Epsilon {
        match self.torsion.min_exponent(2) {
            None => Epsilon::NoTwoPart,
            Some(k) => Epsilon::Min(k),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.torsion.is_trivial(), self.free_rank) {
            (true, 0) => write!(f, "1"),
            (true, r) => write!(f, "{}", free_part(r)),
            (false, 0) => write!(f, "{}", self.torsion),
            (false, r) => write!(f, "{} x {}", self.torsion, free_part(r)),
        }
    }
}

fn free_part(r: u32) -> String {
    if r == 1 {
        "Z".to_string()
    } else {
        format!("Z^{r}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse::<FgAbGroup>().unwrap().torsion
    }

    #[test]
    fn prufer_examples() {
        assert_eq!(FinAbGroup::trivial().prufer_rank(3), 0);
        assert_eq!(g("(Z/5Z)^2 x Z/25Z").prufer_rank(5), 3);
        assert_eq!(g("Z/8Z x Z/41Z").prufer_rank(2), 1);
    }

    #[test]
    fn lambda_small_examples() {
        assert!(g("Z/9Z").is_lambda_small(3, 1).unwrap());
        assert!(g("(Z/5Z)^2 x Z/25Z").is_lambda_small(5, 2).unwrap());
        assert!(!g("(Z/3Z)^2").is_lambda_small(3, 1).unwrap());
        assert_eq!(
            g("Z/6Z").is_lambda_small(3, 1),
            Err(Error::NotAPGroup { p: 3, found: 2 })
        );
    }

    #[test]
    fn lambda_power_examples() {
        let v = g("(Z/7Z)^4 x (Z/49Z)^2").lambda_power_decompose(2).unwrap();
        assert_eq!(v, g("(Z/7Z)^2 x Z/49Z"));
        assert_eq!(v.power(2), g("(Z/7Z)^4 x (Z/49Z)^2"));
        assert!(g("Z/5Z").lambda_power_decompose(2).is_none());
        let x = g("Z/12Z x Z/18Z");
        assert_eq!(x.lambda_power_decompose(1).unwrap(), x);
    }

    #[test]
    fn sylow_examples() {
        assert_eq!(FinAbGroup::cyclic(600).sylow(5), FinAbGroup::cyclic(25));
        assert!(FinAbGroup::cyclic(600).sylow(7).is_trivial());
        assert_eq!(g("(Z/5Z)^2 x Z/600Z").sylow(5), g("(Z/5Z)^2 x Z/25Z"));
    }

    #[test]
    fn epsilon_examples() {
        let e = |s: &str| s.parse::<FgAbGroup>().unwrap().epsilon();
        assert_eq!(e("Z/4Z x Z/8Z"), Epsilon::Min(2));
        assert_eq!(e("Z/2Z x Z/2Z x Z/4Z x Z/8Z"), Epsilon::Min(1));
        assert_eq!(e("Z/9Z x Z^3"), Epsilon::NoTwoPart);
    }

    #[test]
    fn isomorphism_examples() {
        assert!(g("Z/2Z x Z/3Z").is_isomorphic(&FinAbGroup::cyclic(6)));
        assert!(!FinAbGroup::cyclic(4).is_isomorphic(&g("(Z/2Z)^2")));
        assert!(FinAbGroup::trivial().is_isomorphic(&g("1")));
    }

    #[test]
    fn invariant_factor_view() {
        let inv = g("Z/2Z x Z/4Z x Z/3Z x Z/9Z x Z/5Z").invariant_factors();
        assert_eq!(inv, vec![BigUint::from(6u32), BigUint::from(180u32)]);
        assert!(FinAbGroup::trivial().invariant_factors().is_empty());
        assert!(FinAbGroup::cyclic(600).is_cyclic());
        assert!(!g("(Z/2Z)^2").is_cyclic());
    }

    #[test]
    fn cancel_and_display() {
        let a = g("Z/24Z x (Z/5Z)^2");
        let b = g("Z/8Z x Z/5Z");
        assert_eq!(a.cancel(&b).unwrap(), g("Z/3Z x Z/5Z"));
        assert!(b.cancel(&a).is_none());
        assert_eq!(a.to_string(), "Z/8Z x Z/3Z x (Z/5Z)^2");
        let fg = FgAbGroup::new(FinAbGroup::cyclic(4), 2);
        assert_eq!(fg.to_string(), "Z/4Z x Z^2");
        assert_eq!(FgAbGroup::default().to_string(), "1");
    }
}
