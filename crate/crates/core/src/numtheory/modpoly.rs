//! Polynomials over `Z/qZ` and the splitting of cyclotomic polynomials.

use super::{cyclotomic_poly, is_prime, mult_order, pow_mod};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Seed for the randomised equal-degree splitting, fixed so that factor
/// lists and certificates are reproducible byte for byte.
pub const FACTOR_SEED: u64 = 0x5EED_F0C5;

/// A polynomial over `Z/qZ`, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolyMod {
    pub q: u64,
    pub coeffs: Vec<u64>,
}

impl PolyMod {
    pub fn new(q: u64, coeffs: Vec<u64>) -> Self {
        let mut p = PolyMod {
            q,
            coeffs: coeffs.into_iter().map(|c| c % q).collect(),
        };
        p.trim();
        p
    }

    pub fn from_signed(q: u64, coeffs: &[i64]) -> Self {
        let qi = q as i64;
        PolyMod::new(q, coeffs.iter().map(|&c| c.rem_euclid(qi) as u64).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(q: u64) -> Self {
        PolyMod { q, coeffs: vec![] }
    }

    pub fn one(q: u64) -> Self {
        PolyMod::new(q, vec![1])
    }

    pub fn x(q: u64) -> Self {
        PolyMod::new(q, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.q - 2, self.q)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0)
                    + other.coeffs.get(i).copied().unwrap_or(0))
                    % self.q
            })
            .collect();
        PolyMod::new(self.q, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let q = self.q;
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + q
                    - other.coeffs.get(i).copied().unwrap_or(0))
                    % q
            })
            .collect();
        PolyMod::new(q, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyMod::zero(self.q);
        }
        let q = self.q as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % q;
            }
        }
        PolyMod::new(self.q, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let q = self.q;
        let dd = d.coeffs.len() - 1;
        let lead_inv = self.inv(d.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyMod::zero(q), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = ((rem[i + dd] as u128 * lead_inv as u128) % q as u128) as u64;
            quot[i] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    let sub = ((c as u128 * dj as u128) % q as u128) as u64;
                    rem[i + j] = (rem[i + j] + q - sub) % q;
                }
            }
        }
        (PolyMod::new(q, quot), PolyMod::new(q, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let li = self.inv(l) as u128;
                let q = self.q as u128;
                PolyMod::new(
                    self.q,
                    self.coeffs
                        .iter()
                        .map(|&c| ((c as u128 * li) % q) as u64)
                        .collect(),
                )
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m` with an arbitrary-precision exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = PolyMod::one(self.q).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let q = self.q as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % q) as u64
    }
}

/// Cantor-Zassenhaus splitting of a squarefree `f` whose irreducible factors
/// all have degree `d`. For odd `q` the splitter is `a^((q^d - 1)/2) - 1`,
/// for `q = 2` the trace `a + a^2 + ... + a^(2^(d-1))`.
fn equal_degree_split(f: &PolyMod, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<PolyMod>) {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.monic());
        return;
    }
    let q = f.q;
    let exp = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
        let a = PolyMod::new(q, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f);
        if g.degree().unwrap() > 0 && g.degree() != f.degree() {
            let (h, _) = f.div_rem(&g);
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&h.monic(), d, rng, out);
            return;
        }
        let b = if q == 2 {
            let two = BigUint::from(2u32);
            let mut t = a.rem(f);
            let mut sum = t.clone();
            for _ in 1..d {
                t = t.pow_mod(&two, f);
                sum = sum.add(&t);
            }
            sum
        } else {
            a.pow_mod(&exp, f).sub(&PolyMod::one(q))
        };
        let g = b.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let (h, _) = f.div_rem(&g);
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&h.monic(), d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of `Phi_n` modulo a prime `q` not dividing
/// `n`. All factors share the degree `lambda(q, n)`; the list is sorted.
pub fn factor_cyclo_mod(n: u64, q: u64) -> Result<Vec<PolyMod>> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if n.gcd(&q) != 1 {
        return Err(Error::NotCoprime { a: q, n });
    }
    let d = mult_order(q, n)? as usize;
    let f = PolyMod::from_signed(q, &cyclotomic_poly(n).coeffs);
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED ^ (n << 20) ^ q);
    let mut out = Vec::new();
    equal_degree_split(&f, d, &mut rng, &mut out);
    out.sort();
    Ok(out)
}
