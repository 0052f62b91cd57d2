//! Brute-force class counts for small nilpotent rings: every symmetric
//! bilinear product on every additive type, canonicalised by the least
//! table over all additive automorphisms.

use fuchs_core::radical::{
    check_small_theorem, enumerate_radical_rings, raw_presentation_count, RadicalRing,
};
use std::collections::BTreeSet;

/// Additive type `Z/n_0 x ... x Z/n_{r-1}` with elements as mixed-radix indices.
struct Group {
    orders: Vec<u64>,
    size: usize,
}

impl Group {
    fn new(orders: Vec<u64>) -> Self {
        let size = orders.iter().product::<u64>() as usize;
        Group { orders, size }
    }

    fn coords(&self, mut x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&n| {
                let c = x as u64 % n;
                x /= n as usize;
                c
            })
            .collect()
    }

    fn index(&self, c: &[u64]) -> usize {
        c.iter()
            .zip(&self.orders)
            .rev()
            .fold(0, |acc, (&v, &n)| acc * n as usize + (v % n) as usize)
    }

    fn lin(&self, terms: &[(u64, usize)]) -> usize {
        let mut acc = vec![0u64; self.orders.len()];
        for &(k, x) in terms {
            for (a, c) in acc.iter_mut().zip(self.coords(x)) {
                *a += k * c;
            }
        }
        self.index(&acc)
    }

    fn order(&self, x: usize) -> u64 {
        (1..).find(|&k| self.lin(&[(k, x)]) == 0).unwrap()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Full multiplication table from products of basis elements.
fn table(g: &Group, m: &[Vec<usize>]) -> Vec<usize> {
    let r = g.orders.len();
    let mut t = vec![0; g.size * g.size];
    for x in 0..g.size {
        let cx = g.coords(x);
        for y in 0..g.size {
            let cy = g.coords(y);
            let mut terms = Vec::new();
            for i in 0..r {
                for j in 0..r {
                    terms.push((cx[i] * cy[j], m[i][j]));
                }
            }
            t[x * g.size + y] = g.lin(&terms);
        }
    }
    t
}

fn is_nilpotent_ring(g: &Group, t: &[usize]) -> bool {
    let n = g.size;
    let assoc = (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]]))
    });
    // commutative nil rings of finite order are nilpotent
    assoc
        && (0..n).all(|x| {
            let mut p = x;
            for _ in 0..n {
                p = t[p * n + x];
            }
            p == 0
        })
}

fn automorphisms(g: &Group) -> Vec<Vec<usize>> {
    let r = g.orders.len();
    let mut out = Vec::new();
    let mut imgs = vec![0usize; r];
    fn rec(g: &Group, t: usize, imgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if t == imgs.len() {
            let map: Vec<usize> = (0..g.size)
                .map(|x| {
                    let c = g.coords(x);
                    g.lin(
                        &c.iter()
                            .zip(imgs.iter())
                            .map(|(&k, &y)| (k, y))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            let distinct: BTreeSet<_> = map.iter().collect();
            if distinct.len() == g.size {
                out.push(map);
            }
            return;
        }
        for y in 0..g.size {
            if g.orders[t] % g.order(y) == 0 {
                imgs[t] = y;
                rec(g, t + 1, imgs, out);
            }
        }
    }
    rec(g, 0, &mut imgs, &mut out);
    out
}

fn additive_types(p: u64, k: u32) -> Vec<Vec<u64>> {
    fn parts(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        (1..=n.min(max))
            .rev()
            .flat_map(|a| {
                parts(n - a, a).into_iter().map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
            })
            .collect()
    }
    parts(k, k)
        .into_iter()
        .map(|part| part.into_iter().map(|a| p.pow(a)).collect())
        .collect()
}

fn brute_class_count(p: u64, k: u32) -> usize {
    let mut total = 0;
    for orders in additive_types(p, k) {
        let g = Group::new(orders);
        let r = g.orders.len();
        let auts = automorphisms(&g);
        let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut choice = vec![0usize; pairs.len()];
        loop {
            let mut m = vec![vec![0usize; r]; r];
            let mut ok = true;
            for (&(i, j), &v) in pairs.iter().zip(&choice) {
                if gcd(g.orders[i], g.orders[j]) % g.order(v) != 0 {
                    ok = false;
                }
                m[i][j] = v;
                m[j][i] = v;
            }
            if ok {
                let t = table(&g, &m);
                if is_nilpotent_ring(&g, &t) {
                    let n = g.size;
                    let best = auts
                        .iter()
                        .map(|phi| {
                            let mut inv = vec![0; n];
                            for (x, &y) in phi.iter().enumerate() {
                                inv[y] = x;
                            }
                            (0..n * n)
                                .map(|xy| phi[t[inv[xy / n] * n + inv[xy % n]]])
                                .collect::<Vec<_>>()
                        })
                        .min()
                        .unwrap();
                    canon.insert(best);
                }
            }
            // next choice vector
            let mut pos = 0;
            while pos < choice.len() {
                choice[pos] += 1;
                if choice[pos] < g.size {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
        total += canon.len();
    }
    total
}

#[test]
fn class_counts_match_brute_force() {
    for (p, k) in [(2u64, 1u32), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)] {
        let fast = enumerate_radical_rings(p, k, 1 << 12).unwrap().len();
        assert_eq!(fast, brute_class_count(p, k), "order {p}^{k}");
    }
}

#[test]
fn raw_counts_are_at_least_class_counts() {
    for (p, k) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let raw = raw_presentation_count(p, k, 1 << 12).unwrap() as usize;
        assert!(raw >= brute_class_count(p, k));
    }
}

#[test]
fn enumerated_rings_are_valid_and_adjoint_is_a_group() {
    for (p, k) in [(2u64, 3u32), (3, 2), (2, 4)] {
        for r in enumerate_radical_rings(p, k, 1 << 12).unwrap() {
            let back = RadicalRing::new(r.p(), r.exps().to_vec(), r.structure_constants().to_vec());
            assert!(back.is_ok());
            let elems: Vec<_> = r.elements().collect();
            let zero = r.zero();
            for x in &elems {
                assert_eq!(&r.circle(x, &zero), x);
                assert!(elems.iter().any(|y| r.circle(x, y) == zero));
            }
            assert_eq!(r.adjoint_group().unwrap().order_u128(), Some(r.size()));
        }
    }
}

#[test]
fn small_theorem_for_odd_primes() {
    for (p, k) in [(3u64, 2u32), (3, 3), (5, 2), (5, 3)] {
        let rep = check_small_theorem(p, k, 1 << 12).unwrap();
        assert!(rep.holds(), "violation at {p}^{k}");
    }
}

#[test]
fn cyclic_adjoint_forces_cyclic_additive_in_orders_8_and_16() {
    for k in [3u32, 4] {
        for r in enumerate_radical_rings(2, k, 1 << 12).unwrap() {
            assert!(fuchs_core::radical::check_byott(&r).unwrap());
        }
    }
}
