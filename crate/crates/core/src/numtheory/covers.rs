//! Exact covers of an integer by pairwise coprime factors of the shapes
//! `p^lambda - 1` and `(p - 1) p^k`.

use super::{divisors, factorize, is_fermat_prime, prime_power};
use crate::error::{Error, Result};
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum CoverFactor {
    /// `p^lambda - 1`
    PowerMinusOne { p: u64, lambda: u32 },
    /// `(p - 1) p^k` with `p` odd and `k >= 1`
    PMinusOneTimesPower { p: u64, k: u32 },
}

impl CoverFactor {
    pub fn value(&self) -> u64 {
        match *self {
            CoverFactor::PowerMinusOne { p, lambda } => p.pow(lambda) - 1,
            CoverFactor::PMinusOneTimesPower { p, k } => (p - 1) * p.pow(k),
        }
    }

    /// The finite field or Galois ring whose unit group is cyclic of order
    /// `value()`, as `(p, lambda, length)`: `GR(p^length, lambda)`.
    pub fn ring_parameters(&self) -> (u64, u32, u32) {
        match *self {
            CoverFactor::PowerMinusOne { p, lambda } => (p, lambda, 1),
            CoverFactor::PMinusOneTimesPower { p, k } => (p, 1, k + 1),
        }
    }
}

impl std::fmt::Display for CoverFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CoverFactor::PowerMinusOne { p, lambda } => write!(f, "{p}^{lambda}-1"),
            CoverFactor::PMinusOneTimesPower { p, k } => write!(f, "({p}-1)*{p}^{k}"),
        }
    }
}

/// A factorisation of `m` into pairwise coprime admissible factors, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PsCover {
    pub factors: Vec<CoverFactor>,
}

impl PsCover {
    pub fn product(&self) -> u128 {
        self.factors.iter().map(|f| f.value() as u128).product()
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        let vals: Vec<u64> = self.factors.iter().map(|f| f.value()).collect();
        vals.iter()
            .enumerate()
            .all(|(i, a)| vals[i + 1..].iter().all(|b| a.gcd(b) == 1))
    }

    /// Re-check the factor shapes, coprimality and product against `m`.
    pub fn verify(&self, m: u64) -> bool {
        self.product() == m as u128
            && self.is_pairwise_coprime()
            && self
                .factors
                .iter()
                .all(|f| admissible_tags(f.value()).contains(f))
    }
}

/// Every admissible reading of `d > 1`.
pub fn admissible_tags(d: u64) -> Vec<CoverFactor> {
    let mut out = Vec::new();
    if d < 2 {
        return out;
    }
    if let Some(n) = d.checked_add(1) {
        if let Some((p, lambda)) = prime_power(n) {
            out.push(CoverFactor::PowerMinusOne { p, lambda });
        }
    }
    for (p, k) in factorize(d).0 {
        if p == 2 {
            continue;
        }
        if d / p.pow(k) == p - 1 {
            out.push(CoverFactor::PMinusOneTimesPower { p, k });
        }
    }
    out
}

fn admissible_divisors(m: u64) -> Vec<(u64, CoverFactor)> {
    divisors(m)
        .into_iter()
        .flat_map(|d| admissible_tags(d).into_iter().map(move |t| (d, t)))
        .collect()
}

// Covers are built by always covering the smallest prime of the remaining
// cofactor, which makes every cover appear exactly once.
fn dfs(
    rest: u64,
    cands: &[(u64, CoverFactor)],
    stack: &mut Vec<CoverFactor>,
    out: &mut Vec<PsCover>,
) {
    if rest == 1 {
        let mut factors = stack.clone();
        factors.sort();
        out.push(PsCover { factors });
        return;
    }
    let p = factorize(rest).0[0].0;
    let pk = p.pow(factorize(rest).exponent_of(p));
    for &(d, tag) in cands {
        // d must swallow the full p-part of rest and be coprime to what is left
        if d % pk == 0 && rest % d == 0 && (rest / d).gcd(&d) == 1 {
            stack.push(tag);
            dfs(rest / d, cands, stack, out);
            stack.pop();
        }
    }
}

fn top_branches(m: u64) -> (Vec<(u64, CoverFactor)>, Vec<(u64, CoverFactor)>) {
    let cands = admissible_divisors(m);
    if m == 1 {
        return (cands, Vec::new());
    }
    let f = factorize(m);
    let p = f.0[0].0;
    let pk = p.pow(f.0[0].1);
    let top = cands
        .iter()
        .copied()
        .filter(|&(d, _)| d % pk == 0 && (m / d).gcd(&d) == 1)
        .collect();
    (cands, top)
}

/// All covers of `m`; empty when `Z/mZ` is not the unit group of a finite ring.
pub fn pearson_schneider_covers(m: u64) -> Vec<PsCover> {
    assert!(m >= 1);
    let mut out = Vec::new();
    if m == 1 {
        out.push(PsCover { factors: vec![] });
        return out;
    }
    let (cands, top) = top_branches(m);
    for (d, tag) in top {
        let mut stack = vec![tag];
        dfs(m / d, &cands, &mut stack, &mut out);
    }
    out.sort();
    out
}

/// Same result as [`pearson_schneider_covers`], splitting the first branching
/// level across the rayon pool.
pub fn pearson_schneider_covers_par(m: u64) -> Vec<PsCover> {
    if m == 1 {
        return pearson_schneider_covers(1);
    }
    let (cands, top) = top_branches(m);
    let mut out: Vec<PsCover> = top
        .par_iter()
        .flat_map_iter(|&(d, tag)| {
            let mut local = Vec::new();
            let mut stack = vec![tag];
            dfs(m / d, &cands, &mut stack, &mut local);
            local
        })
        .collect();
    out.sort();
    out
}

fn is_mersenne_product(d: u64) -> bool {
    // d = prod (2^l_i - 1), pairwise coprime, l_i >= 2
    fn go(d: u64, min_l: u32) -> bool {
        if d == 1 {
            return true;
        }
        let mut l = min_l;
        while l < 64 && (1u64 << l) - 1 <= d {
            let f = (1u64 << l) - 1;
            if d % f == 0 && (d / f).gcd(&f) == 1 && go(d / f, l + 1) {
                return true;
            }
            l += 1;
        }
        false
    }
    go(d, 2)
}

/// Divisors `d` of an even `m` with `gcd(d, m/d) = 1` that are products of
/// pairwise coprime numbers `2^lambda - 1`; always contains 1.
pub fn mersenne_divisor_set(m: u64) -> Result<Vec<u64>> {
    if m % 2 == 1 {
        return Err(Error::OddModulus(m));
    }
    Ok(divisors(m)
        .into_iter()
        .filter(|&d| (m / d).gcd(&d) == 1 && is_mersenne_product(d))
        .collect())
}

/// `(p, lambda)` with `p^lambda = 2^u + 1`, so that `Z[i] x F_{p^lambda}` has
/// unit group `Z/4 x Z/2^u`. Besides `u = 0` (the prime 2) and Fermat primes
/// the only solution is `3^2 = 2^3 + 1`.
pub fn two_power_finite_witness(u: u32) -> Option<(u64, u32)> {
    match u {
        0 => Some((2, 1)),
        3 => Some((3, 2)),
        u if u < 63 && is_fermat_prime((1u64 << u) + 1) => Some(((1u64 << u) + 1, 1)),
        _ => None,
    }
}
