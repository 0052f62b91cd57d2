//! Finite commutative radical rings given by structure constants, their
//! adjoint groups `(N, o)` with `x o y = x + y + xy`, and exhaustive
//! enumeration of small ones up to isomorphism.

mod enumerate;
mod iso;
mod theorems;

pub use enumerate::{
    enumerate_radical_rings, enumerate_radical_rings_par, raw_presentation_count,
    DEFAULT_RADICAL_CAP, MAX_EXPONENT,
};
pub use iso::{are_isomorphic, RingInvariants};
pub use theorems::{check_byott, check_small_theorem, SmallTheoremReport, Violation};

use crate::abelian::{recover_structure, BlackBox, FinAbGroup};
use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use serde::{Deserialize, Serialize};

/// Coordinates of an element with respect to the additive basis.
pub type Elem = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRadical", into = "RawRadical")]
pub struct RadicalRing {
    p: u64,
    /// `x_k` has additive order `p^{exps[k]}`.
    exps: Vec<u32>,
    /// `mult[i][j]` are the coordinates of `x_i x_j`.
    mult: Vec<Vec<Elem>>,
    orders: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawRadical {
    prime: u64,
    exps: Vec<u32>,
    mult: Vec<Vec<Elem>>,
}

impl TryFrom<RawRadical> for RadicalRing {
    type Error = Error;
    fn try_from(r: RawRadical) -> Result<Self> {
        RadicalRing::new(r.prime, r.exps, r.mult)
    }
}

impl From<RadicalRing> for RawRadical {
    fn from(r: RadicalRing) -> Self {
        RawRadical {
            prime: r.p,
            exps: r.exps,
            mult: r.mult,
        }
    }
}

impl RadicalRing {
    /// Validates commutativity, well-definedness, associativity and nilpotency.
    pub fn new(p: u64, exps: Vec<u32>, mult: Vec<Vec<Elem>>) -> Result<Self> {
        let r = RadicalRing::new_unchecked(p, exps, mult)?;
        r.validate()?;
        Ok(r)
    }

    fn new_unchecked(p: u64, exps: Vec<u32>, mult: Vec<Vec<Elem>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = exps.len();
        if exps.iter().any(|&e| e == 0) {
            return Err(Error::InvalidRing("basis element of order 1".into()));
        }
        if mult.len() != n
            || mult
                .iter()
                .any(|row| row.len() != n || row.iter().any(|c| c.len() != n))
        {
            return Err(Error::InvalidRing(
                "structure constants have the wrong shape".into(),
            ));
        }
        let orders: Vec<u64> = exps.iter().map(|&e| p.pow(e)).collect();
        let mult = mult
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| c.iter().zip(&orders).map(|(&v, &o)| v % o).collect())
                    .collect()
            })
            .collect();
        Ok(RadicalRing {
            p,
            exps,
            mult,
            orders,
        })
    }

    /// The zero ring on `prod Z/p^{e_k}`.
    pub fn zero_ring(p: u64, exps: Vec<u32>) -> Result<Self> {
        let n = exps.len();
        RadicalRing::new(p, exps, vec![vec![vec![0; n]; n]; n])
    }

    /// The ideal `pZ/p^eZ` of `Z/p^eZ`.
    pub fn pz_mod(p: u64, e: u32) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidRing("pZ/pZ is the zero ring".into()));
        }
        // generator x = p, x*x = p*x
        RadicalRing::new(p, vec![e - 1], vec![vec![vec![p]]])
    }

    /// `t F_p[t]/(t^{k+1})` with basis `t, ..., t^k`.
    pub fn truncated_poly(p: u64, k: usize) -> Result<Self> {
        let mut mult = vec![vec![vec![0; k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i + j + 1 < k {
                    mult[i][j][i + j + 1] = 1;
                }
            }
        }
        RadicalRing::new(p, vec![1; k], mult)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn basis_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn structure_constants(&self) -> &[Vec<Elem>] {
        &self.mult
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Elem {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &o)| (a + b) % o)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &o)| (o - a) % o)
            .collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &o)| ((a as u128 * k as u128) % o as u128) as u64)
            .collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Elem {
        let n = self.dim();
        let mut acc = vec![0u128; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] as u128 * y[j] as u128;
                for (k, &v) in self.mult[i][j].iter().enumerate() {
                    if v != 0 {
                        acc[k] = (acc[k] + c * v as u128) % self.orders[k] as u128;
                    }
                }
            }
        }
        acc.into_iter().map(|v| v as u64).collect()
    }

    /// `x o y = x + y + xy`.
    pub fn circle(&self, x: &[u64], y: &[u64]) -> Elem {
        self.add(&self.add(x, y), &self.mul(x, y))
    }

    /// Mixed-radix index of an element.
    pub fn index(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for k in (0..self.dim()).rev() {
            idx = idx * self.orders[k] as usize + x[k] as usize;
        }
        idx
    }

    pub fn elem(&self, mut idx: usize) -> Elem {
        self.orders
            .iter()
            .map(|&o| {
                let v = idx % o as usize;
                idx /= o as usize;
                v as u64
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size() as usize).map(move |i| self.elem(i))
    }

    pub fn additive_group(&self) -> FinAbGroup {
        FinAbGroup::new(self.exps.iter().map(|&e| (self.p, e, 1))).expect("p is prime")
    }

    /// `(N, o)` as an abstract abelian group.
    pub fn adjoint_group(&self) -> Result<FinAbGroup> {
        let size = self.size();
        if size > usize::MAX as u128 {
            return Err(Error::TooLarge);
        }
        let bb = BlackBox::new(size as usize, 0, |a, b| {
            self.index(&self.circle(&self.elem(a), &self.elem(b)))
        });
        recover_structure(&bb)
    }

    pub fn is_zero_ring(&self) -> bool {
        self.mult.iter().flatten().flatten().all(|&v| v == 0)
    }

    /// Subgroup generated by `gens`, as a sorted list of element indices.
    pub fn span(&self, gens: &[Elem]) -> Vec<usize> {
        let mut seen = vec![false; self.size() as usize];
        seen[0] = true;
        let mut members = vec![0usize];
        for g in gens {
            let gi = self.index(g);
            if seen[gi] {
                continue;
            }
            // add multiples of g to every current member until closure
            let mut frontier = members.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &m in &frontier {
                    let s = self.index(&self.add(&self.elem(m), g));
                    if !seen[s] {
                        seen[s] = true;
                        members.push(s);
                        next.push(s);
                    }
                }
                frontier = next;
            }
        }
        members.sort_unstable();
        members
    }

    /// Additive generators of `N^{t+1}` from those of `N^t`.
    fn next_power(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::new();
        for g in gens {
            for i in 0..self.dim() {
                let prod = self.mul(g, &self.basis_elem(i));
                if prod.iter().any(|&v| v != 0) {
                    out.push(prod);
                }
            }
        }
        out
    }

    /// Orders `|N^t|` for `t = 1, 2, ...` until the power vanishes.
    pub fn power_series_sizes(&self) -> Vec<usize> {
        let mut gens: Vec<Elem> = (0..self.dim()).map(|i| self.basis_elem(i)).collect();
        let mut out = Vec::new();
        loop {
            let s = self.span(&gens);
            out.push(s.len());
            if s.len() == 1 {
                return out;
            }
            let members: Vec<Elem> = s.iter().map(|&i| self.elem(i)).collect();
            gens = self.next_power(&members);
            if out.len() > 2 + self.exps.iter().sum::<u32>() as usize {
                return out;
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.mult[i][j] != self.mult[j][i] {
                    return Err(Error::InvalidRing(format!("x{i}x{j} != x{j}x{i}")));
                }
                let m = self.exps[i].min(self.exps[j]);
                if self
                    .scale(self.p.pow(m), &self.mult[i][j])
                    .iter()
                    .any(|&v| v != 0)
                {
                    return Err(Error::InvalidRing(format!(
                        "x{i}x{j} is not killed by the order of its factors"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.basis_elem(i), self.basis_elem(j), self.basis_elem(k));
                    if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                        return Err(Error::InvalidRing(format!(
                            "(x{i}x{j})x{k} != x{i}(x{j}x{k})"
                        )));
                    }
                }
            }
        }
        let bound = 1 + self.exps.iter().sum::<u32>() as usize;
        let sizes = self.power_series_sizes();
        if *sizes.last().unwrap() != 1 || sizes.len() > bound {
            return Err(Error::InvalidRing("ring is not nilpotent".into()));
        }
        Ok(())
    }
}
