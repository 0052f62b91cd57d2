//! Structure recovery for a finite abelian group given only by its
//! multiplication on element indices `0..size`.

use super::FinAbGroup;
use crate::error::{Error, Result};
use crate::numtheory::factorize;
use std::collections::{BTreeSet, HashMap};

pub struct BlackBox<F: Fn(usize, usize) -> usize> {
    pub size: usize,
    pub identity: usize,
    pub op: F,
}

impl<F: Fn(usize, usize) -> usize> BlackBox<F> {
    pub fn new(size: usize, identity: usize, op: F) -> Self {
        BlackBox { size, identity, op }
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut acc = self.identity;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = (self.op)(acc, base);
            }
            base = (self.op)(base, base);
            k >>= 1;
        }
        acc
    }

    /// Order of `x`, which must divide `size`.
    pub fn order(&self, x: usize) -> u64 {
        let mut n = self.size as u64;
        for (p, _) in factorize(n).0 {
            while n % p == 0 && self.pow(x, n / p) == self.identity {
                n /= p;
            }
        }
        n
    }

    fn sylow_elements(&self, pa: u64) -> Vec<usize> {
        let m = self.size as u64 / pa;
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            let y = self.pow(x, m);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        out.sort_unstable();
        debug_assert!(out.iter().all(|&y| self.pow(y, pa) == self.identity));
        out
    }
}

fn bad(msg: &str) -> Error {
    Error::InvalidRing(format!("black-box group: {msg}"))
}

/// Isomorphism type from element-order counts: `log_p |G[p^j]| = sum min(e_i, j)`.
pub fn recover_structure<F: Fn(usize, usize) -> usize>(g: &BlackBox<F>) -> Result<FinAbGroup> {
    if g.size == 0 {
        return Err(bad("empty"));
    }
    let mut triples = Vec::new();
    for (p, a) in factorize(g.size as u64).0 {
        let pa = p.pow(a);
        let syl = g.sylow_elements(pa);
        if syl.len() as u64 != pa {
            return Err(bad("Sylow subgroup has the wrong size"));
        }
        // count[j] = #{y : y^{p^j} = 1}
        let mut by_log_order = vec![0u64; a as usize + 1];
        for &y in &syl {
            let mut z = y;
            let mut j = 0;
            while z != g.identity {
                z = g.pow(z, p);
                j += 1;
                if j > a as usize {
                    return Err(bad("element order exceeds the group order"));
                }
            }
            by_log_order[j] += 1;
        }
        let mut logs = Vec::with_capacity(a as usize + 1);
        let mut cum = 0u64;
        for c in &by_log_order {
            cum += c;
            let mut l = 0u32;
            let mut v = cum;
            while v % p == 0 {
                v /= p;
                l += 1;
            }
            if v != 1 {
                return Err(bad("torsion count is not a prime power"));
            }
            logs.push(l);
        }
        // r_j = #{i : e_i >= j} = logs[j] - logs[j-1]
        let r: Vec<u32> = (1..logs.len()).map(|j| logs[j] - logs[j - 1]).collect();
        for j in 0..r.len() {
            let next = r.get(j + 1).copied().unwrap_or(0);
            if r[j] < next {
                return Err(bad("inconsistent torsion counts"));
            }
            if r[j] > next {
                triples.push((p, j as u32 + 1, r[j] - next));
            }
        }
    }
    FinAbGroup::new(triples)
}

/// An explicit basis of a black-box group together with coordinates of every
/// element.
#[derive(Debug, Clone)]
pub struct PeeledBasis {
    pub group: FinAbGroup,
    /// `(element, order)` pairs; the group is the direct sum of their cyclic spans.
    pub basis: Vec<(usize, u64)>,
    coords: HashMap<usize, Vec<u64>>,
}

impl PeeledBasis {
    pub fn coordinates(&self, x: usize) -> &[u64] {
        &self.coords[&x]
    }
}

/// Maximal-order peeling: repeatedly take an element of largest order modulo
/// the span found so far, corrected so that its span meets that span trivially.
pub fn peel_basis<F: Fn(usize, usize) -> usize>(g: &BlackBox<F>) -> Result<PeeledBasis> {
    let mut basis: Vec<(usize, u64)> = Vec::new();
    for (p, a) in factorize(g.size as u64).0 {
        let pa = p.pow(a);
        let syl = g.sylow_elements(pa);
        let mut span: BTreeSet<usize> = BTreeSet::from([g.identity]);
        while (span.len() as u64) < pa {
            let coset_log = |x: usize| {
                let mut z = x;
                let mut j = 0u32;
                while !span.contains(&z) {
                    z = g.pow(z, p);
                    j += 1;
                }
                j
            };
            let best = syl.iter().map(|&x| coset_log(x)).max().unwrap();
            let q = p.pow(best);
            let mut chosen = None;
            for &x in syl.iter().filter(|&&x| coset_log(x) == best) {
                let h = g.pow(x, q);
                if let Some(&y) = span.iter().find(|&&y| g.pow(y, q) == h) {
                    let y_inv = g.pow(y, g.order(y) - 1);
                    chosen = Some((g.op)(x, y_inv));
                    break;
                }
            }
            let x = chosen.ok_or_else(|| bad("peeling found no complement"))?;
            let old: Vec<usize> = span.iter().copied().collect();
            let mut xk = g.identity;
            for _ in 1..q {
                xk = (g.op)(xk, x);
                for &h in &old {
                    span.insert((g.op)(h, xk));
                }
            }
            if span.len() != old.len() * q as usize {
                return Err(bad("peeled generator is not independent"));
            }
            basis.push((x, q));
        }
    }
    // coordinates by enumerating all combinations of the basis
    let mut coords: HashMap<usize, Vec<u64>> = HashMap::from([(g.identity, vec![])]);
    for &(b, ord) in &basis {
        let mut next = HashMap::with_capacity(coords.len() * ord as usize);
        for (&h, c) in &coords {
            let mut z = h;
            for k in 0..ord {
                let mut cc = c.clone();
                cc.push(k);
                next.insert(z, cc);
                z = (g.op)(z, b);
            }
        }
        coords = next;
    }
    if coords.len() != g.size {
        return Err(bad("basis does not span"));
    }
    let orders: Vec<u64> = basis.iter().map(|b| b.1).collect();
    Ok(PeeledBasis {
        group: FinAbGroup::from_cyclic_orders(&orders),
        basis,
        coords,
    })
}
