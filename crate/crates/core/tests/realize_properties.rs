//! Properties of the decision engine against closed forms, explicit rings
//! and its own certificate checker.

use fuchs_core::abelian::{FgAbGroup, FinAbGroup};
use fuchs_core::finring::corpus;
use fuchs_core::numtheory::factorize;
use fuchs_core::realize::{
    certificate_check, decide_any, decide_finite, decide_tn, g_value, Verdict,
};
use fuchs_core::Error;
use proptest::prelude::*;

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn from_parts(parts: &[(u64, Vec<u32>)]) -> FinAbGroup {
    FinAbGroup::new(
        parts
            .iter()
            .flat_map(|(p, part)| part.iter().map(move |&e| (*p, e, 1))),
    )
    .unwrap()
}

/// Every abelian group of order `n`.
fn groups_of_order(n: u64) -> Vec<FinAbGroup> {
    let mut acc: Vec<Vec<(u64, Vec<u32>)>> = vec![vec![]];
    for (p, e) in factorize(n).0 {
        acc = acc
            .into_iter()
            .flat_map(|pre| {
                partitions(e, e).into_iter().map(move |part| {
                    let mut v = pre.clone();
                    v.push((p, part));
                    v
                })
            })
            .collect();
    }
    acc.iter().map(|parts| from_parts(parts)).collect()
}

/// Partitions `mu` with `mu_i <= lambda_i`: the subgroup types of a
/// `p`-group of type `lambda`.
fn dominated(lambda: &[u32]) -> Vec<Vec<u32>> {
    match lambda.split_first() {
        None => vec![vec![]],
        Some((&first, rest)) => {
            let tails = dominated(rest);
            let mut out = Vec::new();
            for m in 0..=first {
                for t in &tails {
                    if t.first().map_or(true, |&x| x <= m) {
                        let mut v = vec![m];
                        v.extend(t);
                        out.push(v);
                    }
                }
            }
            out
        }
    }
}

fn subgroup_types(g: &FinAbGroup) -> Vec<FinAbGroup> {
    let mut acc: Vec<Vec<(u64, Vec<u32>)>> = vec![vec![]];
    for p in g.primes() {
        let lambda = g.partition(p);
        acc = acc
            .into_iter()
            .flat_map(|pre| {
                dominated(&lambda).into_iter().map(move |mu| {
                    let mut v = pre.clone();
                    v.push((p, mu.into_iter().filter(|&e| e > 0).collect()));
                    v
                })
            })
            .collect();
    }
    acc.iter().map(|parts| from_parts(parts)).collect()
}

fn tn(t: &FinAbGroup, r: u32) -> Verdict {
    decide_tn(&FgAbGroup::new(t.clone(), r))
}

#[test]
fn cyclic_tn_matches_closed_form() {
    for n in 1..=1000u64 {
        let h = n >> n.trailing_zeros();
        let expected = match n.trailing_zeros() {
            1 => true,
            2 => factorize(h).primes().all(|p| p % 4 == 1),
            _ => false,
        };
        let v = tn(&FinAbGroup::cyclic(n), 0);
        assert!(!v.is_unknown(), "{n}");
        assert_eq!(v.is_realisable(), expected, "{n}");
    }
}

#[test]
fn fermat_family_matches_primality() {
    let prime = |q: u64| q > 1 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0);
    for u in 0..=20u32 {
        let g = FinAbGroup::cyclic(4).product(&FinAbGroup::cyclic(1 << u));
        let v = decide_any(&FgAbGroup::finite(g));
        assert!(!v.is_unknown(), "{u}");
        assert_eq!(v.is_realisable(), u <= 3 || prime((1 << u) + 1), "{u}");
    }
}

#[test]
fn g_is_monotone_on_subgroups() {
    for n in (2..=200u64).step_by(2) {
        for t in groups_of_order(n) {
            let Ok(gt) = g_value(&t) else { continue };
            for s in subgroup_types(&t) {
                if let Ok(gs) = g_value(&s) {
                    assert!(gs <= gt, "g({s}) = {gs} > g({t}) = {gt}");
                }
            }
        }
    }
}

#[test]
fn subgroup_oracle_counts() {
    assert_eq!(groups_of_order(16).len(), 5);
    assert_eq!(subgroup_types(&"Z/2Z x Z/4Z".parse().unwrap()).len(), 5);
}

/// Unit groups of explicit finite rings are never declared unrealisable.
#[test]
fn corpus_unit_groups_are_finite_realisable() {
    let units: Vec<FinAbGroup> = corpus()
        .unwrap()
        .iter()
        .map(|e| e.ring.unit_group().unwrap())
        .collect();
    for a in &units {
        for b in &units {
            let g = a.product(b);
            let v = decide_finite(&g);
            assert!(!v.is_not_realisable(), "{v}");
            assert!(!decide_any(&FgAbGroup::finite(g)).is_not_realisable());
        }
    }
}

/// Every decided verdict over all groups of order at most 64 and rank at
/// most 2 re-checks; returns (decided, unchecked at scale).
fn sweep() -> (usize, usize) {
    let (mut decided, mut uncheckable) = (0, 0);
    for n in 1..=64u64 {
        for t in groups_of_order(n) {
            for r in 0..=2u32 {
                let g = FgAbGroup::new(t.clone(), r);
                let mut vs = vec![decide_tn(&g), decide_any(&g)];
                if r == 0 {
                    vs.push(decide_finite(&t));
                }
                for v in vs.into_iter().filter(|v| !v.is_unknown()) {
                    decided += 1;
                    match certificate_check(&v) {
                        Ok(ok) => assert!(ok, "{v}"),
                        Err(Error::UncheckableAtScale(_)) => uncheckable += 1,
                        Err(e) => panic!("{v}: {e}"),
                    }
                }
            }
        }
    }
    (decided, uncheckable)
}

#[test]
fn certificates_check_across_sweep() {
    let (decided, uncheckable) = sweep();
    assert!(decided > 500, "{decided}");
    assert!(uncheckable * 20 < decided);
}

fn small_group() -> impl Strategy<Value = FinAbGroup> {
    prop::collection::vec(
        (prop::sample::select(vec![2u64, 3, 5, 7, 13]), 1u32..4),
        0..4,
    )
    .prop_map(|v| FinAbGroup::new(v.into_iter().map(|(p, e)| (p, e, 1))).unwrap())
}

proptest! {
    #[test]
    fn tn_is_monotone_in_rank(t in small_group(), r in 0u32..5) {
        // decided verdicts never contradict each other across ranks
        if tn(&t, r).is_realisable() {
            prop_assert!(!tn(&t, r + 1).is_not_realisable());
        }
        if tn(&t, r + 1).is_not_realisable() {
            prop_assert!(!tn(&t, r).is_realisable());
        }
    }

    #[test]
    fn tn_realisable_implies_any_realisable(t in small_group(), r in 0u32..3) {
        let g = FgAbGroup::new(t, r);
        if decide_tn(&g).is_realisable() {
            prop_assert!(!decide_any(&g).is_not_realisable());
        }
    }

    #[test]
    fn finite_realisable_implies_any_realisable(t in small_group(), r in 0u32..3) {
        if decide_finite(&t).is_realisable() {
            prop_assert!(decide_any(&FgAbGroup::new(t, r)).is_realisable());
        }
    }
}
