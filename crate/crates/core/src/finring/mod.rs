//! Finite commutative unital rings given by structure constants on a basis
//! of the additive group `Z/n_0 x ... x Z/n_{r-1}`.

mod build;
mod catalogue;
mod corpus;
mod decide;
mod local;

pub use catalogue::{named_ring, one_plus_m, two_local_corpus, two_local_witness, TwoLocal};
pub use corpus::{corpus, CorpusEntry};
pub use decide::decide_local_small;
pub use local::{LocalData, Locality};

use crate::abelian::{recover_structure, BlackBox, FinAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::{cap_from_env, DEFAULT_RING_CAP};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// An element as coordinates, `x_i` in `[0, n_i)`.
pub type Elem = Vec<u64>;

/// Units are found by exhaustive pairing below this many elements and by a
/// Smith normal form test above.
const EXHAUSTIVE_UNIT_LIMIT: u128 = 1 << 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRing", into = "RawRing")]
pub struct FinCommRing {
    orders: Vec<u64>,
    mult: Vec<Vec<Elem>>,
    one: Elem,
    size: u128,
}

#[derive(Serialize, Deserialize)]
struct RawRing {
    basis_orders: Vec<u64>,
    mult: Vec<Vec<Elem>>,
    one: Elem,
}

impl TryFrom<RawRing> for FinCommRing {
    type Error = Error;

    fn try_from(r: RawRing) -> Result<Self> {
        FinCommRing::new(r.basis_orders, r.mult, r.one)
    }
}

impl From<FinCommRing> for RawRing {
    fn from(r: FinCommRing) -> Self {
        RawRing {
            basis_orders: r.orders,
            mult: r.mult,
            one: r.one,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidRing(msg.into())
}

impl FinCommRing {
    /// Validates shape, ranges, commutativity, well-definedness on the
    /// additive relations, associativity on basis triples and the identity.
    pub fn new(orders: Vec<u64>, mult: Vec<Vec<Elem>>, one: Elem) -> Result<Self> {
        let r = orders.len();
        if orders.iter().any(|&n| n < 2) {
            return Err(invalid("basis orders must be at least 2"));
        }
        let size = orders
            .iter()
            .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128))
            .ok_or(Error::TooLarge)?;
        let in_range = |v: &Elem| v.len() == r && v.iter().zip(&orders).all(|(&c, &n)| c < n);
        if mult.len() != r
            || mult
                .iter()
                .any(|row| row.len() != r || !row.iter().all(in_range))
        {
            return Err(invalid("structure constants have the wrong shape or range"));
        }
        if !in_range(&one) {
            return Err(invalid("identity has the wrong shape or range"));
        }
        let ring = FinCommRing {
            orders,
            mult,
            one,
            size,
        };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<()> {
        let r = self.dim();
        for i in 0..r {
            for j in 0..r {
                if self.mult[i][j] != self.mult[j][i] {
                    return Err(invalid(format!("e{i} e{j} != e{j} e{i}")));
                }
                for (l, &c) in self.mult[i][j].iter().enumerate() {
                    let n = self.orders[l] as u128;
                    let ok = |k: u64| (k as u128 * c as u128) % n == 0;
                    if !ok(self.orders[i]) {
                        return Err(invalid(format!(
                            "e{i} e{j} is not killed by {}",
                            self.orders[i]
                        )));
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let lhs = self.mul(&self.mult[i][j], &self.basis_elem(k));
                    let rhs = self.mul(&self.basis_elem(i), &self.mult[j][k]);
                    if lhs != rhs {
                        return Err(invalid(format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})")));
                    }
                }
            }
        }
        for i in 0..r {
            if self.mul(&self.one, &self.basis_elem(i)) != self.basis_elem(i) {
                return Err(invalid(format!("identity fails on e{i}")));
            }
        }
        Ok(())
    }

    pub fn basis_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn structure_constants(&self) -> &[Vec<Elem>] {
        &self.mult
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Elem {
        self.one.clone()
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> u64 {
        self.additive_order(&self.one)
    }

    pub fn additive_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))))
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Elem {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &n)| (n - a) % n)
            .collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &n)| ((k as u128 * a as u128) % n as u128) as u64)
            .collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Elem {
        let r = self.dim();
        let mut acc = vec![0u128; r];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let k = xi as u128 * yj as u128;
                for (l, &c) in self.mult[i][j].iter().enumerate() {
                    if c != 0 {
                        let n = self.orders[l] as u128;
                        acc[l] = (acc[l] + (k % n) * c as u128) % n;
                    }
                }
            }
        }
        acc.into_iter().map(|v| v as u64).collect()
    }

    pub fn pow(&self, x: &[u64], mut k: u64) -> Elem {
        let mut base = x.to_vec();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Mixed-radix index, first coordinate least significant.
    pub fn index(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.orders)
            .rev()
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn elem(&self, mut idx: usize) -> Elem {
        self.orders
            .iter()
            .map(|&n| {
                let c = (idx % n as usize) as u64;
                idx /= n as usize;
                c
            })
            .collect()
    }

    /// Fails with `CapExceeded` unless the ring has at most `cap` elements.
    pub fn check_cap(&self, cap: u128) -> Result<usize> {
        if self.size > cap {
            return Err(Error::CapExceeded {
                size: self.size,
                cap,
            });
        }
        Ok(self.size as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size as usize).map(|i| self.elem(i))
    }

    /// Whether `x` is invertible.
    pub fn is_unit(&self, x: &[u64]) -> bool {
        if self.size < EXHAUSTIVE_UNIT_LIMIT {
            self.elements().any(|y| self.mul(x, &y) == self.one)
        } else {
            self.multiplication_is_onto(x)
        }
    }

    /// `y -> x y` is onto iff `Z^r / (diag(n_i), x e_j)` is trivial.
    fn multiplication_is_onto(&self, x: &[u64]) -> bool {
        let r = self.dim();
        let mut m = IntMatrix::zeros(0, r);
        for (i, &n) in self.orders.iter().enumerate() {
            let mut row = vec![0i64; r];
            row[i] = n as i64;
            m.push_row(row.into_iter().map(Into::into).collect());
        }
        for j in 0..r {
            let img = self.mul(x, &self.basis_elem(j));
            m.push_row(img.into_iter().map(Into::into).collect());
        }
        let cok = m.cokernel();
        cok.free_rank == 0 && cok.group.is_trivial()
    }

    /// Indices of all units, in increasing order.
    pub fn units_capped(&self, cap: u128) -> Result<Vec<usize>> {
        let n = self.check_cap(cap)?;
        Ok((0..n).filter(|&i| self.is_unit(&self.elem(i))).collect())
    }

    /// Unit group structure, with the element cap from the environment.
    pub fn unit_group(&self) -> Result<FinAbGroup> {
        self.unit_group_capped(cap_from_env(DEFAULT_RING_CAP))
    }

    pub fn unit_group_capped(&self, cap: u128) -> Result<FinAbGroup> {
        let units = self.units_capped(cap)?;
        self.group_on(&units)
    }

    /// Structure of a multiplicatively closed set of units, by index.
    pub(crate) fn group_on(&self, members: &[usize]) -> Result<FinAbGroup> {
        let mut pos = vec![usize::MAX; self.size as usize];
        for (k, &i) in members.iter().enumerate() {
            pos[i] = k;
        }
        let one = pos[self.index(&self.one)];
        let bb = BlackBox::new(members.len(), one, |a, b| {
            let prod = self.mul(&self.elem(members[a]), &self.elem(members[b]));
            pos[self.index(&prod)]
        });
        recover_structure(&bb)
    }

    /// Additive subgroup generated by `gens`, as sorted element indices.
    pub fn additive_span(&self, gens: &[Elem]) -> Vec<usize> {
        let mut seen = vec![false; self.size as usize];
        let zero = self.index(&self.zero());
        seen[zero] = true;
        let mut members = vec![zero];
        for g in gens {
            let gi = self.index(g);
            if seen[gi] {
                continue;
            }
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

    /// The ideal generated by `gens`, as sorted element indices.
    pub fn ideal(&self, gens: &[Elem]) -> Vec<usize> {
        let mut all: Vec<Elem> = Vec::new();
        for g in gens {
            all.push(g.clone());
            for i in 0..self.dim() {
                all.push(self.mul(g, &self.basis_elem(i)));
            }
        }
        self.additive_span(&all)
    }

    /// Additive generators of the subgroup with the given member indices.
    pub fn subgroup_generators(&self, members: &[usize]) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = self.additive_span(&[]);
        for &m in members {
            if span.binary_search(&m).is_err() {
                gens.push(self.elem(m));
                span = self.additive_span(&gens);
            }
        }
        gens
    }

    /// The quotient by the ideal generated by `gens`.
    pub fn quotient(&self, gens: &[Elem]) -> Result<FinCommRing> {
        let ideal = self.ideal(gens);
        let ideal_gens = self.subgroup_generators(&ideal);
        let r = self.dim();
        let mut m = IntMatrix::zeros(0, r);
        for (i, &n) in self.orders.iter().enumerate() {
            let mut row = vec![0i64; r];
            row[i] = n as i64;
            m.push_row(row.into_iter().map(Into::into).collect());
        }
        for g in &ideal_gens {
            m.push_row(g.iter().map(|&c| (c as i64).into()).collect());
        }
        let cok = m.cokernel();
        if cok.free_rank != 0 {
            return Err(invalid("quotient is not finite"));
        }
        let lift = |g: &[num_bigint::BigInt]| -> Elem {
            g.iter()
                .zip(&self.orders)
                .map(|(c, &n)| {
                    let n = num_bigint::BigInt::from(n);
                    let v = ((c % &n) + &n) % &n;
                    u64::try_from(v).expect("reduced coordinate")
                })
                .collect()
        };
        let new_orders: Vec<u64> = cok
            .orders
            .iter()
            .map(|o| u64::try_from(o.clone()).expect("finite order"))
            .collect();
        let reps: Vec<Elem> = cok.gens.iter().map(|g| lift(g)).collect();
        let coords = |x: &Elem| -> Elem {
            let big: Vec<num_bigint::BigInt> = x.iter().map(|&c| c.into()).collect();
            cok.coordinates(&big)
                .into_iter()
                .zip(&new_orders)
                .map(|(c, &n)| {
                    let n = num_bigint::BigInt::from(n);
                    u64::try_from(((c % &n) + &n) % &n).expect("reduced coordinate")
                })
                .collect()
        };
        if new_orders.is_empty() {
            return Err(invalid("quotient is the zero ring"));
        }
        let k = new_orders.len();
        let mut mult = vec![vec![Vec::new(); k]; k];
        for s in 0..k {
            for t in 0..k {
                mult[s][t] = coords(&self.mul(&reps[s], &reps[t]));
            }
        }
        let one = coords(&self.one);
        FinCommRing::new(new_orders, mult, one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_groups_of_examples() {
        assert_eq!(
            FinCommRing::zn(9).unwrap().unit_group().unwrap(),
            FinAbGroup::cyclic(6)
        );
        assert_eq!(
            FinCommRing::field(2, 2).unwrap().unit_group().unwrap(),
            FinAbGroup::cyclic(3)
        );
        // Z/4[t]/(t^2, 2t)
        let r =
            FinCommRing::poly_quotient(&FinCommRing::zn(4).unwrap(), &[vec![0], vec![0], vec![1]])
                .unwrap();
        let t = r.basis_elem(1);
        let q = r.quotient(&[r.scale(2, &t)]).unwrap();
        assert_eq!(q.size(), 8);
        assert_eq!(
            q.unit_group().unwrap(),
            FinAbGroup::elementary(2, 1, 2).unwrap()
        );
    }

    #[test]
    fn snf_unit_test_agrees_with_pairing() {
        let r = FinCommRing::zn(2)
            .unwrap()
            .product(&FinCommRing::zn(9).unwrap())
            .unwrap();
        let r = r.product(&FinCommRing::field(2, 2).unwrap()).unwrap();
        for x in r.elements().take(200) {
            let pairing = r.elements().any(|y| r.mul(&x, &y) == r.one());
            assert_eq!(r.multiplication_is_onto(&x), pairing);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        // e0 e0 = e0 on Z/2 but identity claims e0 twice
        assert!(FinCommRing::new(vec![2], vec![vec![vec![1]]], vec![1]).is_ok());
        assert!(FinCommRing::new(vec![2], vec![vec![vec![0]]], vec![1]).is_err());
        // a product of order 3 inside Z/2
        assert!(FinCommRing::new(
            vec![2, 3],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]],],
            vec![1, 0]
        )
        .is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let r = FinCommRing::zn(5000).unwrap();
        assert_eq!(
            r.units_capped(4096),
            Err(Error::CapExceeded {
                size: 5000,
                cap: 4096
            })
        );
    }
}
