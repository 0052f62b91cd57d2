//! Local structure: idempotent splitting, maximal ideal, residue field, the
//! unit-group formula and the unit exact sequence.

use super::{Elem, FinCommRing};
use crate::abelian::{peel_basis, BlackBox, FinAbGroup};
use crate::error::{Error, Result};
use crate::numtheory::prime_power;
use crate::radical::RadicalRing;
use crate::{cap_from_env, DEFAULT_RING_CAP};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub p: u64,
    pub lambda: u32,
    /// additive generators of the maximal ideal
    pub maximal_ideal: Vec<Elem>,
    pub ideal_size: u128,
    pub residue_size: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Locality {
    Local(LocalData),
    /// a nontrivial idempotent `e`, so that `A = eA x (1 - e)A`
    Split {
        idempotent: Elem,
    },
}

impl FinCommRing {
    pub fn localize(&self) -> Result<Locality> {
        self.localize_capped(cap_from_env(DEFAULT_RING_CAP))
    }

    /// A finite commutative ring is local iff `0` and `1` are its only
    /// idempotents; the non-units are then the maximal ideal.
    pub fn localize_capped(&self, cap: u128) -> Result<Locality> {
        let n = self.check_cap(cap)?;
        let (zero, one) = (self.zero(), self.one());
        for i in 0..n {
            let x = self.elem(i);
            if x != zero && x != one && self.mul(&x, &x) == x {
                return Ok(Locality::Split { idempotent: x });
            }
        }
        let units = self.units_capped(cap)?;
        let nonunits = complement(&units, n);
        let residue = (n / nonunits.len()) as u64;
        let (p, lambda) = prime_power(residue).ok_or_else(|| {
            Error::InvalidRing(format!("residue size {residue} is not a prime power"))
        })?;
        // the residue field's units must show up as an element of order p^lambda - 1
        let exponent = self.group_on(&units)?.exponent();
        if !(exponent % (residue - 1)).is_zero() {
            return Err(Error::InvalidRing(
                "unit group lacks the residue field units".into(),
            ));
        }
        Ok(Locality::Local(LocalData {
            p,
            lambda,
            maximal_ideal: self.subgroup_generators(&nonunits),
            ideal_size: nonunits.len() as u128,
            residue_size: residue as u128,
        }))
    }

    pub fn local_data(&self) -> Result<LocalData> {
        match self.localize()? {
            Locality::Local(d) => Ok(d),
            Locality::Split { .. } => Err(Error::NotLocal),
        }
    }

    /// `(A/(1 - e), A/(e))`, isomorphic to `eA` and `(1 - e)A`.
    pub fn split_at(&self, e: &[u64]) -> Result<(FinCommRing, FinCommRing)> {
        let f = self.sub(&self.one(), e);
        Ok((self.quotient(&[f])?, self.quotient(&[e.to_vec()])?))
    }

    /// The local factors, by repeated idempotent splitting.
    pub fn local_factors(&self) -> Result<Vec<FinCommRing>> {
        match self.localize()? {
            Locality::Local(_) => Ok(vec![self.clone()]),
            Locality::Split { idempotent } => {
                let (a, b) = self.split_at(&idempotent)?;
                let mut out = a.local_factors()?;
                out.extend(b.local_factors()?);
                Ok(out)
            }
        }
    }

    fn maximal_ideal_members(&self) -> Result<(LocalData, Vec<usize>)> {
        let data = self.local_data()?;
        let members = self.additive_span(&data.maximal_ideal);
        Ok((data, members))
    }

    /// The maximal ideal as a radical ring.
    pub fn maximal_ideal_ring(&self) -> Result<RadicalRing> {
        let (data, members) = self.maximal_ideal_members()?;
        let mut pos = vec![usize::MAX; self.size() as usize];
        for (k, &i) in members.iter().enumerate() {
            pos[i] = k;
        }
        let zero = pos[self.index(&self.zero())];
        let bb = BlackBox::new(members.len(), zero, |a, b| {
            pos[self.index(&self.add(&self.elem(members[a]), &self.elem(members[b])))]
        });
        let peeled = peel_basis(&bb)?;
        let basis: Vec<Elem> = peeled
            .basis
            .iter()
            .map(|&(b, _)| self.elem(members[b]))
            .collect();
        let exps: Vec<u32> = peeled
            .basis
            .iter()
            .map(|&(_, ord)| prime_power(ord).map_or(0, |(_, e)| e))
            .collect();
        let k = basis.len();
        let mut mult = vec![vec![Vec::new(); k]; k];
        for s in 0..k {
            for t in 0..k {
                let prod = self.mul(&basis[s], &basis[t]);
                mult[s][t] = peeled.coordinates(pos[self.index(&prod)]).to_vec();
            }
        }
        RadicalRing::new(data.p, exps, mult)
    }

    /// `A^* = F_{p^lambda}^* x (1 + m)`, both sides computed independently.
    pub fn verify_local_formula(&self) -> Result<bool> {
        let data = self.local_data()?;
        let m = self.maximal_ideal_ring()?;
        let residue_units = FinAbGroup::cyclic(data.p.pow(data.lambda) - 1);
        let rhs = residue_units.product(&m.adjoint_group()?);
        Ok(self.unit_group()? == rhs)
    }

    /// All ideals inside the maximal ideal, as sorted member indices.
    pub fn ideals_in_maximal(&self) -> Result<Vec<Vec<usize>>> {
        let (_, m) = self.maximal_ideal_members()?;
        let mut found: Vec<Vec<usize>> = vec![self.ideal(&[])];
        let mut cursor = 0;
        while cursor < found.len() {
            let current = found[cursor].clone();
            let gens = self.subgroup_generators(&current);
            for &x in &m {
                if current.binary_search(&x).is_ok() {
                    continue;
                }
                let mut g = gens.clone();
                g.push(self.elem(x));
                let next = self.ideal(&g);
                if !found.contains(&next) {
                    found.push(next);
                }
            }
            cursor += 1;
        }
        found.sort();
        Ok(found)
    }

    /// For an ideal `I` inside the maximal ideal: `1 -> 1 + I -> A^* ->
    /// (A/I)^* -> 1` is exact, checked elementwise on cosets.
    pub fn check_exact_sequence(&self, ideal: &[usize]) -> Result<bool> {
        let (_, m) = self.maximal_ideal_members()?;
        if !ideal.iter().all(|i| m.binary_search(i).is_ok()) {
            return Err(Error::HypothesisViolated(
                "ideal is not inside the maximal ideal".into(),
            ));
        }
        let n = self.size() as usize;
        let rep: Vec<usize> = (0..n)
            .map(|x| {
                let xe = self.elem(x);
                ideal
                    .iter()
                    .map(|&i| self.index(&self.add(&xe, &self.elem(i))))
                    .min()
                    .unwrap()
            })
            .collect();
        let mut cosets: Vec<usize> = rep.clone();
        cosets.sort_unstable();
        cosets.dedup();
        let one = self.one();
        let one_rep = rep[self.index(&one)];
        let unit_cosets: Vec<usize> = cosets
            .iter()
            .copied()
            .filter(|&c| {
                let ce = self.elem(c);
                cosets
                    .iter()
                    .any(|&d| rep[self.index(&self.mul(&ce, &self.elem(d)))] == one_rep)
            })
            .collect();
        let units = self.units_capped(cap_from_env(DEFAULT_RING_CAP))?;
        let mut image: Vec<usize> = units.iter().map(|&u| rep[u]).collect();
        image.sort_unstable();
        image.dedup();
        let kernel: Vec<usize> = units
            .iter()
            .copied()
            .filter(|&u| rep[u] == one_rep)
            .collect();
        let mut one_plus: Vec<usize> = ideal
            .iter()
            .map(|&i| self.index(&self.add(&one, &self.elem(i))))
            .collect();
        one_plus.sort_unstable();
        Ok(image == unit_cosets
            && kernel == one_plus
            && units.len() == one_plus.len() * unit_cosets.len())
    }
}

fn complement(sorted: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n - sorted.len());
    let mut it = sorted.iter().peekable();
    for i in 0..n {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}
