//! Isomorphism testing for radical rings: invariants to bucket candidates,
//! then an explicit search for a ring isomorphism. Everything runs on
//! precomputed addition and multiplication tables.

use super::RadicalRing;
use crate::abelian::{recover_structure, BlackBox, FinAbGroup};
use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

/// Addition and multiplication tables of a finite ring without unit, with
/// `0` as the zero element and `gens` generating the additive group.
#[derive(Debug, Clone)]
pub(crate) struct Tables {
    pub p: u64,
    pub n: usize,
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub gens: Vec<usize>,
}

impl Tables {
    pub fn build(
        p: u64,
        n: usize,
        gens: Vec<usize>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut a = vec![0u32; n * n];
        let mut m = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let s = add(x, y) as u32;
                let t = mul(x, y) as u32;
                a[x * n + y] = s;
                a[y * n + x] = s;
                m[x * n + y] = t;
                m[y * n + x] = t;
            }
        }
        Tables {
            p,
            n,
            add: a,
            mul: m,
            gens,
        }
    }

    pub fn of_ring(r: &RadicalRing) -> Self {
        let gens = (0..r.dim()).map(|i| r.index(&r.basis_elem(i))).collect();
        Tables::build(
            r.p(),
            r.size() as usize,
            gens,
            |x, y| r.index(&r.add(&r.elem(x), &r.elem(y))),
            |x, y| r.index(&r.mul(&r.elem(x), &r.elem(y))),
        )
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    fn additive_order(&self, x: usize) -> u64 {
        let mut z = x;
        let mut k = 1;
        while z != 0 {
            z = self.add(z, x);
            k += 1;
        }
        k
    }

    fn scale(&self, k: u64, x: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, x))
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut members = vec![0usize];
        for &g in gens {
            if seen[g] {
                continue;
            }
            let mut frontier = members.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &m in &frontier {
                    let s = self.add(m, g);
                    if !seen[s] {
                        seen[s] = true;
                        members.push(s);
                        next.push(s);
                    }
                }
                frontier = next;
            }
        }
        seen
    }

    fn is_zero_ring(&self) -> bool {
        self.mul.iter().all(|&v| v == 0)
    }

    fn additive_group(&self) -> FinAbGroup {
        let bb = BlackBox::new(self.n, 0, |a, b| self.add(a, b));
        recover_structure(&bb).expect("valid additive group")
    }

    fn adjoint_group(&self) -> FinAbGroup {
        let bb = BlackBox::new(self.n, 0, |a, b| self.add(self.add(a, b), self.mul(a, b)));
        recover_structure(&bb).expect("valid adjoint group")
    }
}

/// Invariants of a radical ring under isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingInvariants {
    pub additive: FinAbGroup,
    pub adjoint: FinAbGroup,
    /// `|N^t|` for `t = 1, 2, ...`
    pub powers: Vec<usize>,
    /// `|pN + N^2|`
    pub frattini: usize,
    /// sorted multiset of per-element profiles
    pub profiles: Vec<ElemProfile>,
}

/// Isomorphism-invariant data attached to one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElemProfile {
    additive_order: u64,
    square_order: u64,
    /// largest `t` with `x` in `N^t`
    depth: u32,
    in_frattini: bool,
    annihilator: usize,
    /// multiset hash of the coarse profiles of `x y` over all `y`
    products: u64,
}

pub(crate) struct Analysis {
    pub invariants: RingInvariants,
    profiles: Vec<ElemProfile>,
    frattini: Vec<bool>,
}

/// splitmix64 finaliser, so that sums of hashes behave like multiset hashes
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn analyse(t: &Tables) -> Analysis {
    let n = t.n;
    let mut depth = vec![0u32; n];
    let mut layer: Vec<usize> = t.gens.clone();
    let mut powers = Vec::new();
    let mut square_mask = vec![false; n];
    for level in 1u32.. {
        let mask = t.span(&layer);
        let members: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        powers.push(members.len());
        for &i in &members {
            depth[i] = level;
        }
        if level == 2 {
            square_mask = mask;
        }
        if members.len() == 1 {
            break;
        }
        layer = members
            .iter()
            .flat_map(|&z| t.gens.iter().map(move |&g| (z, g)))
            .map(|(z, g)| t.mul(z, g))
            .filter(|&v| v != 0)
            .collect();
        layer.sort_unstable();
        layer.dedup();
    }
    let mut fr_gens: Vec<usize> = t.gens.iter().map(|&g| t.scale(t.p, g)).collect();
    fr_gens.extend((0..n).filter(|&i| square_mask[i]));
    let frattini = t.span(&fr_gens);
    let orders: Vec<u64> = (0..n).map(|x| t.additive_order(x)).collect();
    let mut profiles: Vec<ElemProfile> = (0..n)
        .map(|x| ElemProfile {
            additive_order: orders[x],
            square_order: orders[t.mul(x, x)],
            depth: depth[x],
            in_frattini: frattini[x],
            annihilator: (0..n).filter(|&y| t.mul(x, y) == 0).count(),
            products: 0,
        })
        .collect();
    let coarse: Vec<u64> = profiles
        .iter()
        .map(|prof| {
            let mut h = DefaultHasher::new();
            prof.hash(&mut h);
            mix(h.finish())
        })
        .collect();
    for (x, prof) in profiles.iter_mut().enumerate() {
        prof.products = (0..n).fold(0u64, |acc, y| acc.wrapping_add(coarse[t.mul(x, y)]));
    }
    let mut sorted = profiles.clone();
    sorted.sort_unstable();
    let invariants = RingInvariants {
        additive: t.additive_group(),
        adjoint: t.adjoint_group(),
        powers,
        frattini: frattini.iter().filter(|&&b| b).count(),
        profiles: sorted,
    };
    Analysis {
        invariants,
        profiles,
        frattini,
    }
}

impl RingInvariants {
    pub fn of(r: &RadicalRing) -> Self {
        analyse(&Tables::of_ring(r)).invariants
    }
}

/// Rank of vectors over `F_p` by elimination.
fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v % p).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = crate::numtheory::pow_mod(m[rank][c], p - 2, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % p;
                for k in 0..cols {
                    m[i][k] = (m[i][k] + p * p - f * m[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coordinates of every element in `N / (pN + N^2)` over `F_p`, and lifts
/// of the chosen quotient basis.
fn frattini_quotient(t: &Tables, frattini: &[bool]) -> (Vec<Vec<u64>>, Vec<usize>) {
    let n = t.n;
    let mut lifts: Vec<usize> = Vec::new();
    let mut coord: Vec<Option<Vec<u64>>> = (0..n).map(|i| frattini[i].then(Vec::new)).collect();
    for x in 0..n {
        if coord[x].is_some() {
            continue;
        }
        lifts.push(x);
        let known: Vec<(usize, Vec<u64>)> = (0..n)
            .filter_map(|i| coord[i].clone().map(|c| (i, c)))
            .collect();
        for (i, c) in known {
            let mut z = i;
            for k in 0..t.p {
                let mut cc = c.clone();
                cc.push(k);
                coord[z] = Some(cc);
                z = t.add(z, x);
            }
        }
    }
    let d = lifts.len();
    let coords = coord
        .into_iter()
        .map(|c| {
            let mut c = c.expect("quotient covers the ring");
            c.resize(d, 0);
            c
        })
        .collect();
    (coords, lifts)
}

/// A straight-line program building every element from generators.
struct Program {
    /// (kind, left, right): 0 = generator `left`, 1 = sum, 2 = product
    steps: Vec<(u8, usize, usize)>,
    /// element index produced by each step
    produces: Vec<usize>,
}

fn program(t: &Tables, gens: &[usize]) -> Option<Program> {
    let mut seen = vec![false; t.n];
    let mut prog = Program {
        steps: Vec::new(),
        produces: Vec::new(),
    };
    let mut emit = |prog: &mut Program, step: (u8, usize, usize), idx: usize| {
        if !seen[idx] {
            seen[idx] = true;
            prog.steps.push(step);
            prog.produces.push(idx);
        }
    };
    emit(&mut prog, (0, usize::MAX, 0), 0);
    for (g, &x) in gens.iter().enumerate() {
        emit(&mut prog, (0, g, 0), x);
    }
    let mut cursor = 0;
    while cursor < prog.produces.len() {
        for other in 0..=cursor {
            let (x, y) = (prog.produces[cursor], prog.produces[other]);
            emit(&mut prog, (1, cursor, other), t.add(x, y));
            emit(&mut prog, (2, cursor, other), t.mul(x, y));
        }
        cursor += 1;
    }
    (prog.produces.len() == t.n).then_some(prog)
}

fn run_program(prog: &Program, s: &Tables, imgs: &[usize]) -> Vec<usize> {
    let mut vals: Vec<usize> = Vec::with_capacity(prog.steps.len());
    for &(kind, a, b) in &prog.steps {
        let v = match kind {
            0 if a == usize::MAX => 0,
            0 => imgs[a],
            1 => s.add(vals[a], vals[b]),
            _ => s.mul(vals[a], vals[b]),
        };
        vals.push(v);
    }
    let mut map = vec![0usize; s.n];
    for (i, &src) in prog.produces.iter().enumerate() {
        map[src] = vals[i];
    }
    map
}

fn is_ring_iso(r: &Tables, s: &Tables, map: &[usize]) -> bool {
    let mut hit = vec![false; s.n];
    for &m in map {
        if hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..r.n).all(|x| {
        r.gens.iter().all(|&b| {
            map[r.add(x, b)] == s.add(map[x], map[b]) && map[r.mul(x, b)] == s.mul(map[x], map[b])
        })
    })
}

/// Precomputed data for repeated isomorphism tests against one ring.
pub(crate) struct Prepared {
    pub tables: Tables,
    pub analysis: Analysis,
    coords: Vec<Vec<u64>>,
    lifts: Vec<usize>,
    prog: Option<Program>,
}

impl Prepared {
    pub fn new(tables: Tables) -> Self {
        let analysis = analyse(&tables);
        let (coords, lifts) = frattini_quotient(&tables, &analysis.frattini);
        let prog = program(&tables, &lifts);
        Prepared {
            tables,
            analysis,
            coords,
            lifts,
            prog,
        }
    }

    pub fn invariants(&self) -> &RingInvariants {
        &self.analysis.invariants
    }
}

/// Decides whether `r` and `s` are isomorphic rings.
pub(crate) fn isomorphic_prepared(r: &Prepared, s: &Prepared) -> bool {
    if r.tables.p != s.tables.p || r.invariants() != s.invariants() {
        return false;
    }
    if r.tables.is_zero_ring() || s.tables.is_zero_ring() {
        return r.tables.is_zero_ring() && s.tables.is_zero_ring();
    }
    let Some(prog) = &r.prog else { return false };
    let (rt, st) = (&r.tables, &s.tables);
    let (rp, sp) = (&r.analysis.profiles, &s.analysis.profiles);
    let cands: Vec<Vec<usize>> = r
        .lifts
        .iter()
        .map(|&g| {
            (0..st.n)
                .filter(|&y| sp[y] == rp[g] && !s.analysis.frattini[y])
                .collect()
        })
        .collect();
    let pair_profiles: Vec<Vec<ElemProfile>> = r
        .lifts
        .iter()
        .map(|&g| r.lifts.iter().map(|&h| rp[rt.mul(g, h)]).collect())
        .collect();
    let search = Search {
        r: rt,
        s: st,
        cands: &cands,
        s_coords: &s.coords,
        pair_profiles: &pair_profiles,
        s_profiles: sp,
        prog,
    };
    search.dfs(&mut Vec::with_capacity(cands.len()))
}

/// Decides `r = s` as rings.
pub fn are_isomorphic(r: &RadicalRing, s: &RadicalRing) -> bool {
    if r.p() != s.p() || r.size() != s.size() || r.additive_group() != s.additive_group() {
        return false;
    }
    isomorphic_prepared(
        &Prepared::new(Tables::of_ring(r)),
        &Prepared::new(Tables::of_ring(s)),
    )
}

struct Search<'a> {
    r: &'a Tables,
    s: &'a Tables,
    cands: &'a [Vec<usize>],
    s_coords: &'a [Vec<u64>],
    pair_profiles: &'a [Vec<ElemProfile>],
    s_profiles: &'a [ElemProfile],
    prog: &'a Program,
}

impl Search<'_> {
    fn dfs(&self, chosen: &mut Vec<usize>) -> bool {
        let t = chosen.len();
        if t == self.cands.len() {
            let map = run_program(self.prog, self.s, chosen);
            return is_ring_iso(self.r, self.s, &map);
        }
        for &y in &self.cands[t] {
            // products with earlier images must match profiles
            let ok = (0..=t).all(|u| {
                let other = if u == t { y } else { chosen[u] };
                self.s_profiles[self.s.mul(y, other)] == self.pair_profiles[t][u]
            });
            if !ok {
                continue;
            }
            let mut rows: Vec<Vec<u64>> =
                chosen.iter().map(|&c| self.s_coords[c].clone()).collect();
            rows.push(self.s_coords[y].clone());
            if rank_mod_p(&rows, self.s.p) != t + 1 {
                continue;
            }
            chosen.push(y);
            if self.dfs(chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_pairs() {
        let a = RadicalRing::pz_mod(2, 3).unwrap();
        let b = RadicalRing::truncated_poly(2, 2).unwrap();
        assert!(!are_isomorphic(&a, &b));
        assert!(are_isomorphic(&a, &a));
        let r = RadicalRing::truncated_poly(3, 2).unwrap();
        let twisted = RadicalRing::new(
            3,
            vec![1, 1],
            vec![vec![vec![0, 2], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]],
        )
        .unwrap();
        assert!(are_isomorphic(&r, &twisted));
        assert_eq!(RingInvariants::of(&r), RingInvariants::of(&twisted));
        // x^2 = 3x versus x^2 = 6x in 3Z/27Z-like rings
        let u = RadicalRing::new(3, vec![2], vec![vec![vec![3]]]).unwrap();
        let v = RadicalRing::new(3, vec![2], vec![vec![vec![6]]]).unwrap();
        assert!(are_isomorphic(&u, &v));
    }
}
