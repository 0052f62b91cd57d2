//! `N_tors`, `1 + N_tors`, and the torsion units of `A` and `B = A/N_tors`.

use super::base::Cyc;
use super::model::{ModelElem, TnModel};
use crate::abelian::{recover_structure, BlackBox, FinAbGroup};
use crate::error::{Error, Result};
use crate::numtheory::prime_power;
use crate::radical::RadicalRing;
use crate::{cap_from_env, DEFAULT_RING_CAP};
use num_integer::Integer;
use std::collections::HashMap;

/// Upper bound on the number of coefficient vectors tried for `B^*_tors`.
pub const BASE_SEARCH_CAP: u128 = 1 << 20;

/// The multiplication table of a finite abelian group on `elems`, or the
/// first product that leaves the set.
fn closed_table(
    elems: &[ModelElem],
    op: impl Fn(&ModelElem, &ModelElem) -> ModelElem,
) -> std::result::Result<Vec<usize>, ModelElem> {
    let index: HashMap<&ModelElem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elems.len();
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in a..n {
            let c = op(&elems[a], &elems[b]);
            let &k = index.get(&c).ok_or(c)?;
            table[a * n + b] = k;
            table[b * n + a] = k;
        }
    }
    Ok(table)
}

fn structure(elems: &[ModelElem], identity: &ModelElem, table: &[usize]) -> Result<FinAbGroup> {
    let n = elems.len();
    let id = elems
        .iter()
        .position(|e| e == identity)
        .expect("identity is listed");
    recover_structure(&BlackBox::new(n, id, |a, b| table[a * n + b]))
}

impl TnModel {
    fn torsion_size(&self) -> u128 {
        self.torsion_orders().iter().map(|&n| n as u128).product()
    }

    /// Every element of `N_tors`, in mixed-radix order.
    pub fn torsion_elements(&self) -> Result<Vec<ModelElem>> {
        let size = self.torsion_size();
        let cap = cap_from_env(DEFAULT_RING_CAP);
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        let orders = self.torsion_orders();
        Ok((0..size as u64)
            .map(|mut i| {
                let v = orders
                    .iter()
                    .map(|&n| {
                        let c = i % n;
                        i /= n;
                        c
                    })
                    .collect();
                self.torsion_vector(v)
            })
            .collect())
    }

    /// The additive group of `N_tors`.
    pub fn nil_torsion_additive(&self) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(self.torsion_orders())
    }

    /// `N_tors` as radical rings, one per prime dividing its order; empty
    /// when the torsion part is zero.
    pub fn nil_torsion(&self) -> Result<Vec<RadicalRing>> {
        let f = self.free_rank();
        let mut by_prime: Vec<(u64, Vec<usize>)> = Vec::new();
        for (j, &n) in self.torsion_orders().iter().enumerate() {
            let (p, _) = prime_power(n).expect("validated prime power");
            match by_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, v)) => v.push(j),
                None => by_prime.push((p, vec![j])),
            }
        }
        by_prime.sort();
        let mut out = Vec::new();
        for (p, idx) in by_prime {
            let exps: Vec<u32> = idx
                .iter()
                .map(|&j| prime_power(self.torsion_orders()[j]).unwrap().1)
                .collect();
            let mut mult = vec![vec![Vec::new(); idx.len()]; idx.len()];
            for (a, &ja) in idx.iter().enumerate() {
                for (b, &jb) in idx.iter().enumerate() {
                    let e = self.table(f + ja, f + jb);
                    let outside =
                        (0..self.torsion_rank()).any(|j| !idx.contains(&j) && e.tors[j] != 0);
                    if outside {
                        return Err(Error::InvalidModel("torsion product mixes primes".into()));
                    }
                    mult[a][b] = idx.iter().map(|&j| e.tors[j]).collect();
                }
            }
            out.push(RadicalRing::new(p, exps, mult)?);
        }
        Ok(out)
    }

    /// `1 + N_tors` under the multiplication of the model.
    pub fn adjoint_of_nil_torsion(&self) -> Result<FinAbGroup> {
        let one = self.one();
        let elems: Vec<ModelElem> = self
            .torsion_elements()?
            .iter()
            .map(|n| self.add(&one, n))
            .collect();
        let table = closed_table(&elems, |a, b| self.mul(a, b))
            .map_err(|_| Error::InvalidModel("1 + N_tors is not closed".into()))?;
        structure(&elems, &one, &table)
    }

    /// For free basis `b_0 .. b_{f-1}` forming a finite group `Gamma` modulo
    /// `N_tors`, the table `b_i b_j = b_{sigma(i, j)}` in `B`.
    fn group_basis(&self) -> Result<Vec<Vec<usize>>> {
        let f = self.free_rank();
        let base = self.base();
        let mut sigma = vec![vec![0usize; f]; f];
        for i in 0..f {
            for j in 0..f {
                let e = self.table(i, j);
                let hits: Vec<usize> = (0..f).filter(|&l| !base.is_zero(&e.free[l])).collect();
                match hits.as_slice() {
                    [l] if e.free[*l] == base.one() => sigma[i][j] = *l,
                    _ => {
                        return Err(Error::UnsupportedBase(
                            "free basis is not a group modulo the torsion".into(),
                        ))
                    }
                }
            }
            let mut row = sigma[i].clone();
            row.sort_unstable();
            if row != (0..f).collect::<Vec<_>>() {
                return Err(Error::UnsupportedBase(
                    "free basis products are not a group".into(),
                ));
            }
        }
        Ok(sigma)
    }

    fn base_mul(&self, sigma: &[Vec<usize>], x: &[Cyc], y: &[Cyc]) -> Vec<Cyc> {
        let base = self.base();
        let mut out = vec![base.zero(); x.len()];
        for (i, a) in x.iter().enumerate() {
            if base.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !base.is_zero(b) {
                    let l = sigma[i][j];
                    out[l] = base.add(&out[l], &base.mul(a, b));
                }
            }
        }
        out
    }

    fn base_pow(&self, sigma: &[Vec<usize>], x: &[Cyc], mut k: u64) -> Vec<Cyc> {
        let mut acc: Vec<Cyc> = self.one().free;
        let mut sq = x.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.base_mul(sigma, &acc, &sq);
            }
            sq = self.base_mul(sigma, &sq, &sq);
            k >>= 1;
        }
        acc
    }

    /// Exponent of the group `Gamma` of free basis elements modulo torsion.
    fn gamma_exponent(&self, sigma: &[Vec<usize>]) -> u64 {
        let mut e = 1u64;
        for g in 0..sigma.len() {
            let (mut cur, mut k) = (g, 1u64);
            while cur != 0 {
                cur = sigma[cur][g];
                k += 1;
            }
            e = e.lcm(&k);
        }
        e
    }

    /// `B^*_tors` for `B = Z[zeta_k][Gamma]`.
    ///
    /// Coefficient lemma: if `u = sum c_g g` is a torsion unit then
    /// `sigma(c_g) = |Gamma|^{-1} sum_chi sigma chi(u) chi(g)^{-1}` has absolute
    /// value at most 1 under every embedding `sigma`, so by Kronecker `c_g` is
    /// zero or one of the `lcm(2, k)` roots of unity `+-zeta^j`. Every
    /// component of `B (x) Q` lies in `Q(zeta_L)`, `L = lcm(k, exp Gamma)`,
    /// whose roots of unity have order dividing `lcm(2, L)`.
    pub fn base_torsion_units(&self) -> Result<Vec<Vec<Cyc>>> {
        let sigma = self.group_basis()?;
        let base = self.base();
        let mut coeffs = vec![base.zero()];
        coeffs.extend(base.roots_of_unity());
        let f = self.free_rank();
        let total = (coeffs.len() as u128)
            .checked_pow(f as u32)
            .unwrap_or(u128::MAX);
        if total > BASE_SEARCH_CAP {
            return Err(Error::CapExceeded {
                size: total,
                cap: BASE_SEARCH_CAP,
            });
        }
        let l = base.conductor().lcm(&self.gamma_exponent(&sigma)).lcm(&2);
        let one = self.one().free;
        let mut out = Vec::new();
        for mut i in 0..total as u64 {
            let u: Vec<Cyc> = (0..f)
                .map(|_| {
                    let c = coeffs[(i % coeffs.len() as u64) as usize].clone();
                    i /= coeffs.len() as u64;
                    c
                })
                .collect();
            if self.base_pow(&sigma, &u, l) == one {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// `(A/N_tors)^*_tors`.
    pub fn base_torsion_group(&self) -> Result<FinAbGroup> {
        let sigma = self.group_basis()?;
        let units = self.base_torsion_units()?;
        let zero_tors = vec![0u64; self.torsion_rank()];
        let elems: Vec<ModelElem> = units
            .into_iter()
            .map(|free| ModelElem {
                free,
                tors: zero_tors.clone(),
            })
            .collect();
        let table = closed_table(&elems, |a, b| ModelElem {
            free: self.base_mul(&sigma, &a.free, &b.free),
            tors: zero_tors.clone(),
        })
        .map_err(|_| {
            Error::NonFiniteTorsion("torsion units of the quotient are not closed".into())
        })?;
        structure(&elems, &self.one(), &table)
    }

    /// Multiplicative order of `zeta` in `B`; it equals the conductor on
    /// every valid model.
    pub fn base_root_order(&self) -> Result<u64> {
        let sigma = self.group_basis()?;
        let z = self.free_elem(0, &self.base().zeta_pow(1)).free;
        let one = self.one().free;
        let (mut cur, mut k) = (z.clone(), 1u64);
        while cur != one {
            cur = self.base_mul(&sigma, &cur, &z);
            k += 1;
        }
        Ok(k)
    }

    /// The full preimage of `B^*_tors` in `A`, all torsion units.
    ///
    /// Order bound lemma: a lift `u` of `ubar` with `ubar^m = 1` has
    /// `u^m` in `1 + N_tors`, so `u` has order dividing `m exp(1 + N_tors)`;
    /// hence every lift is a torsion unit and `|A^*_tors| = |B^*_tors| |N_tors|`.
    pub fn torsion_unit_elements(&self) -> Result<Vec<ModelElem>> {
        let lifts = self.base_torsion_units()?;
        let nil = self.torsion_elements()?;
        let mut out = Vec::with_capacity(lifts.len() * nil.len());
        for free in &lifts {
            for n in &nil {
                out.push(ModelElem {
                    free: free.clone(),
                    tors: n.tors.clone(),
                });
            }
        }
        Ok(out)
    }

    /// `A^*_tors`.
    pub fn torsion_units(&self) -> Result<FinAbGroup> {
        let elems = self.torsion_unit_elements()?;
        let table = closed_table(&elems, |a, b| self.mul(a, b))
            .map_err(|c| Error::NonFiniteTorsion(format!("product {c:?} leaves the lifted set")))?;
        structure(&elems, &self.one(), &table)
    }

    /// Whether `A^*_tors = (1 + N_tors) x B^*_tors`.
    pub fn sequence_splits(&self) -> Result<bool> {
        let whole = self.torsion_units()?;
        let split = self
            .adjoint_of_nil_torsion()?
            .product(&self.base_torsion_group()?);
        Ok(whole == split)
    }
}
