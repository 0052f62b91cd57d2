//! Enumeration by triangular presentations.
//!
//! Every commutative nilpotent ring of order `p^k` has generators
//! `x_0, ..., x_{k-1}` with
//!
//! ```text
//! p x_i     = sum_{l > i}        a[i][l] x_l
//! x_i x_j   = sum_{l > max(i,j)} b[i][j][l] x_l
//! ```
//!
//! and all coefficients in `[0, p)`: refine the ideal chain
//! `F_{t+1} = p F_t + N F_t` to a composition series and pick one element
//! from each step. Conversely such data defines a ring of order `p^k`
//! exactly when `p (x_i x_j) = (p x_i) x_j` and multiplication is associative
//! on generators. The search fills the data for `x_{k-1}` first and checks
//! each constraint as soon as everything it reads has been assigned, so the
//! span of `x_m, ..., x_{k-1}` is already a consistent ring when `x_{m-1}`
//! is added.

use super::iso::{isomorphic_prepared, Prepared, RingInvariants, Tables};
use super::RadicalRing;
use crate::abelian::IntMatrix;
use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    /// `a[i][*]`
    A(usize),
    /// `b[i][j][*]`, `i <= j`
    B(usize, usize),
}

#[derive(Debug, Clone, Copy)]
enum Check {
    /// `p (x_i x_j) = (p x_i) x_j`
    WellDefined(usize, usize),
    /// `x_i (x_j x_l) = x_j (x_i x_l) = x_l (x_i x_j)`
    Assoc(usize, usize, usize),
}

#[derive(Clone)]
struct Pc {
    p: u64,
    k: usize,
    a: Vec<Vec<u64>>,
    b: Vec<Vec<Vec<u64>>>,
}

impl Pc {
    fn new(p: u64, k: usize) -> Self {
        Pc {
            p,
            k,
            a: vec![vec![0; k]; k],
            b: vec![vec![vec![0; k]; k]; k],
        }
    }

    fn normalize(&self, c: &mut [u64]) {
        for i in 0..self.k {
            if c[i] >= self.p {
                let q = c[i] / self.p;
                c[i] %= self.p;
                for l in i + 1..self.k {
                    c[l] += q * self.a[i][l];
                }
            }
        }
    }

    /// `x_i * v` for a normalised `v`.
    fn mul_gen(&self, i: usize, v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.k];
        for (j, &vj) in v.iter().enumerate() {
            if vj != 0 {
                for l in 0..self.k {
                    acc[l] += vj * self.b[i][j][l];
                }
            }
        }
        self.normalize(&mut acc);
        acc
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.k];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let t = self.mul_gen(i, y);
            for l in 0..self.k {
                acc[l] += xi * t[l];
            }
            self.normalize(&mut acc);
        }
        acc
    }

    fn holds(&self, c: Check) -> bool {
        match c {
            Check::WellDefined(i, j) => {
                let mut lhs: Vec<u64> = self.b[i][j].iter().map(|&v| v * self.p).collect();
                self.normalize(&mut lhs);
                lhs == self.mul_gen(j, &self.a[i])
            }
            Check::Assoc(i, j, l) => {
                let u = self.mul_gen(i, &self.b[j][l]);
                u == self.mul_gen(j, &self.b[i][l]) && u == self.mul_gen(l, &self.b[i][j])
            }
        }
    }

    fn slot_len(&self, s: Slot) -> usize {
        match s {
            Slot::A(i) => self.k - 1 - i,
            Slot::B(_, j) => self.k - 1 - j,
        }
    }

    fn assign(&mut self, s: Slot, digits: &[u64]) {
        match s {
            Slot::A(i) => self.a[i][i + 1..].copy_from_slice(digits),
            Slot::B(i, j) => {
                self.b[i][j][j + 1..].copy_from_slice(digits);
                self.b[j][i][j + 1..].copy_from_slice(digits);
            }
        }
    }

    fn index(&self, c: &[u64]) -> usize {
        c.iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p as usize + d as usize)
    }

    fn digits(&self, idx: usize) -> Vec<u64> {
        digits_of(idx as u64, self.p, self.k)
    }

    /// Operation tables on digit vectors, `x_i` at index `p^i`. Only the
    /// generator rows use the presentation; the rest follows by writing
    /// each element as a smaller one plus a generator.
    fn tables(&self) -> Tables {
        let p = self.p as usize;
        let n = p.pow(self.k as u32);
        let gens: Vec<usize> = (0..self.k).map(|i| p.pow(i as u32)).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for y in 0..n {
            add[y] = y as u32;
            let yd = self.digits(y);
            for (i, &g) in gens.iter().enumerate() {
                let mut c = yd.clone();
                c[i] += 1;
                self.normalize(&mut c);
                add[g * n + y] = self.index(&c) as u32;
                mul[g * n + y] = self.index(&self.mul_gen(i, &yd)) as u32;
            }
        }
        let split = |x: usize| {
            let i = (0..self.k).find(|&i| (x / gens[i]) % p != 0).unwrap();
            (x - gens[i], gens[i])
        };
        for x in 1..n {
            let (prev, g) = split(x);
            for y in 0..n {
                if prev != 0 {
                    add[x * n + y] = add[g * n + add[prev * n + y] as usize];
                }
            }
        }
        for x in 1..n {
            let (prev, g) = split(x);
            for y in 0..n {
                if prev != 0 {
                    let (u, v) = (mul[prev * n + y] as usize, mul[g * n + y] as usize);
                    mul[x * n + y] = add[u * n + v];
                }
            }
        }
        Tables {
            p: self.p,
            n,
            add,
            mul,
            gens,
        }
    }

    /// Presentation data to an explicit structure-constant ring.
    fn to_ring(&self) -> Result<RadicalRing> {
        let k = self.k;
        let mut rows = IntMatrix::zeros(0, k);
        for i in 0..k {
            let mut r = vec![BigInt::from(0); k];
            r[i] = BigInt::from(self.p);
            for l in i + 1..k {
                r[l] -= BigInt::from(self.a[i][l]);
            }
            rows.push_row(r);
        }
        let cok = rows.cokernel();
        let modulus = BigInt::from(self.p.pow(k as u32));
        let as_digits = |g: &[BigInt]| {
            let mut v: Vec<u64> = g
                .iter()
                .map(|c| {
                    let r = ((c % &modulus) + &modulus) % &modulus;
                    r.to_u64().unwrap()
                })
                .collect();
            self.normalize(&mut v);
            v
        };
        let gens: Vec<Vec<u64>> = cok.gens.iter().map(|g| as_digits(g)).collect();
        let exps: Vec<u32> = cok
            .orders
            .iter()
            .map(|o| {
                let mut o = o.to_u64().unwrap();
                let mut e = 0;
                while o > 1 {
                    o /= self.p;
                    e += 1;
                }
                e
            })
            .collect();
        let n = gens.len();
        let mut mult = vec![vec![vec![0u64; n]; n]; n];
        for s in 0..n {
            for t in s..n {
                let prod = self.mul(&gens[s], &gens[t]);
                let x: Vec<BigInt> = prod.iter().map(|&v| BigInt::from(v)).collect();
                let c: Vec<u64> = cok
                    .coordinates(&x)
                    .iter()
                    .map(|v| v.to_u64().unwrap())
                    .collect();
                mult[s][t] = c.clone();
                mult[t][s] = c;
            }
        }
        RadicalRing::new(self.p, exps, mult)
    }
}

struct Plan {
    slots: Vec<Slot>,
    /// checks that become decidable right after slot `s` is assigned
    ready: Vec<Vec<Check>>,
    /// checks with no inputs at all
    initial: Vec<Check>,
}

fn plan(k: usize) -> Plan {
    let mut slots = Vec::new();
    for m in (0..k).rev() {
        for j in (m + 1..k).rev() {
            slots.push(Slot::B(m, j));
        }
        slots.push(Slot::B(m, m));
        slots.push(Slot::A(m));
    }
    let len = |s: &Slot| match *s {
        Slot::A(i) => k - 1 - i,
        Slot::B(_, j) => k - 1 - j,
    };
    slots.retain(|s| len(s) > 0);
    let pos = |s: Slot| -> Option<usize> {
        let s = match s {
            Slot::B(i, j) if i > j => Slot::B(j, i),
            other => other,
        };
        slots.iter().position(|&t| t == s)
    };
    let last = |reads: Vec<Slot>| reads.into_iter().filter_map(pos).max();

    let mut ready = vec![Vec::new(); slots.len()];
    let mut initial = Vec::new();
    let mut place = |c: Check, at: Option<usize>| match at {
        Some(s) => ready[s].push(c),
        None => initial.push(c),
    };
    for i in 0..k {
        for j in 0..k {
            let mut reads = vec![Slot::A(i), Slot::B(i, j)];
            reads.extend((i + 1..k).map(|l| Slot::B(l, j)));
            reads.extend((i.max(j) + 1..k).map(Slot::A));
            place(Check::WellDefined(i, j), last(reads));
        }
    }
    for i in 0..k {
        for j in i..k {
            for l in j..k {
                let mut reads = vec![Slot::B(j, l), Slot::B(i, l), Slot::B(i, j)];
                reads.extend((l + 1..k).flat_map(|t| [Slot::B(i, t), Slot::B(j, t)]));
                reads.extend((j + 1..k).map(|t| Slot::B(l, t)));
                reads.extend((j + 1..k).map(Slot::A));
                place(Check::Assoc(i, j, l), last(reads));
            }
        }
    }
    Plan {
        slots,
        ready,
        initial,
    }
}

fn digits_of(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn search(pc: &mut Pc, plan: &Plan, s: usize, leaf: &mut dyn FnMut(&Pc)) {
    if s == plan.slots.len() {
        leaf(pc);
        return;
    }
    let slot = plan.slots[s];
    let len = pc.slot_len(slot);
    let count = pc.p.pow(len as u32);
    for v in 0..count {
        pc.assign(slot, &digits_of(v, pc.p, len));
        if plan.ready[s].iter().all(|&c| pc.holds(c)) {
            search(pc, plan, s + 1, leaf);
        }
    }
    pc.assign(slot, &vec![0; len]);
}

/// Classes found so far, bucketed by invariants; first found wins.
#[derive(Default)]
struct Dedup {
    reps: Vec<(Pc, Prepared)>,
    buckets: HashMap<RingInvariants, Vec<usize>>,
}

impl Dedup {
    fn offer(&mut self, pc: Pc, prep: Prepared) {
        let bucket = self.buckets.entry(prep.invariants().clone()).or_default();
        if bucket
            .iter()
            .any(|&i| isomorphic_prepared(&self.reps[i].1, &prep))
        {
            return;
        }
        bucket.push(self.reps.len());
        self.reps.push((pc, prep));
    }

    fn offer_pc(&mut self, pc: &Pc) {
        let prep = Prepared::new(pc.tables());
        self.offer(pc.clone(), prep);
    }
}

/// Default bound on `p^k` for enumeration. Order `5^4` has about 1.8e7
/// consistent presentations, which is out of reach; `FUCHS_ORACLE_CAP`
/// raises the bound.
pub const DEFAULT_RADICAL_CAP: u128 = 343;

/// Largest supported exponent `k`.
pub const MAX_EXPONENT: u32 = 4;

fn check_args(p: u64, k: u32, cap: u128) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k > MAX_EXPONENT {
        return Err(Error::HypothesisViolated(format!(
            "exponent {k} exceeds the supported maximum {MAX_EXPONENT}"
        )));
    }
    let size = (p as u128).checked_pow(k).ok_or(Error::CapExceeded {
        size: u128::MAX,
        cap,
    })?;
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

/// Branches of the first non-trivial slot, each searched to completion.
fn branches(p: u64, k: usize) -> (Plan, Vec<Pc>) {
    let plan = plan(k);
    let mut pc = Pc::new(p, k);
    if plan.slots.is_empty() {
        return (plan, vec![pc]);
    }
    let slot = plan.slots[0];
    let len = pc.slot_len(slot);
    let mut out = Vec::new();
    for v in 0..p.pow(len as u32) {
        pc.assign(slot, &digits_of(v, p, len));
        if plan.ready[0].iter().all(|&c| pc.holds(c)) {
            out.push(pc.clone());
        }
    }
    (plan, out)
}

fn branch_reps(plan: &Plan, mut pc: Pc) -> Vec<(Pc, Prepared)> {
    let mut d = Dedup::default();
    let start = if plan.slots.is_empty() { 0 } else { 1 };
    search(&mut pc, plan, start, &mut |pc| d.offer_pc(pc));
    d.reps
}

fn run(p: u64, k: u32, cap: u128, parallel: bool) -> Result<Vec<RadicalRing>> {
    check_args(p, k, cap)?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let (plan, tops) = branches(p, k as usize);
    if !plan
        .initial
        .iter()
        .all(|&c| Pc::new(p, k as usize).holds(c))
    {
        return Ok(Vec::new());
    }
    let per_branch: Vec<Vec<(Pc, Prepared)>> = if parallel {
        tops.into_par_iter()
            .map(|pc| branch_reps(&plan, pc))
            .collect()
    } else {
        tops.into_iter().map(|pc| branch_reps(&plan, pc)).collect()
    };
    let mut d = Dedup::default();
    for (pc, prep) in per_branch.into_iter().flatten() {
        d.offer(pc, prep);
    }
    d.reps.iter().map(|(pc, _)| pc.to_ring()).collect()
}

/// One ring per isomorphism class of commutative nilpotent rings of order
/// `p^k`, in a deterministic order. `cap` bounds `p^k`.
pub fn enumerate_radical_rings(p: u64, k: u32, cap: u128) -> Result<Vec<RadicalRing>> {
    run(p, k, cap, false)
}

/// As [`enumerate_radical_rings`], with the first branching level spread
/// over the rayon pool; the output is identical.
pub fn enumerate_radical_rings_par(p: u64, k: u32, cap: u128) -> Result<Vec<RadicalRing>> {
    run(p, k, cap, true)
}

/// Number of consistent triangular presentations before deduplication.
pub fn raw_presentation_count(p: u64, k: u32, cap: u128) -> Result<u64> {
    check_args(p, k, cap)?;
    let plan = plan(k as usize);
    let mut pc = Pc::new(p, k as usize);
    let mut n = 0u64;
    search(&mut pc, &plan, 0, &mut |_| n += 1);
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;

    #[test]
    fn order_p_has_one_class() {
        for p in [2u64, 3, 5, 7] {
            let rs = enumerate_radical_rings(p, 1, 1 << 20).unwrap();
            assert_eq!(rs.len(), 1);
            assert!(rs[0].is_zero_ring());
        }
    }

    #[test]
    fn order_four_classes() {
        let rs = enumerate_radical_rings(2, 2, 1 << 20).unwrap();
        let has = |r: &RadicalRing| rs.iter().any(|s| super::super::are_isomorphic(r, s));
        assert!(has(&RadicalRing::zero_ring(2, vec![2]).unwrap()));
        assert!(has(&RadicalRing::zero_ring(2, vec![1, 1]).unwrap()));
        assert!(has(&RadicalRing::pz_mod(2, 3).unwrap()));
        assert!(has(&RadicalRing::truncated_poly(2, 2).unwrap()));
        // pairwise non-isomorphic
        for (i, a) in rs.iter().enumerate() {
            for b in &rs[i + 1..] {
                assert!(!super::super::are_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn parallel_is_identical() {
        let a = enumerate_radical_rings(2, 3, 1 << 20).unwrap();
        let b = enumerate_radical_rings_par(2, 3, 1 << 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_radical_rings(5, 4, 343),
            Err(Error::CapExceeded {
                size: 625,
                cap: 343
            })
        );
    }

    #[test]
    fn to_ring_keeps_additive_type() {
        // p x_0 = x_1 gives Z/p^2
        let mut pc = Pc::new(3, 2);
        pc.a[0][1] = 1;
        let r = pc.to_ring().unwrap();
        assert_eq!(r.additive_group(), FinAbGroup::cyclic(9));
    }
}
