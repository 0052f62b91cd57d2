//! Realisability by arbitrary rings.
//!
//! Up to replacing the ring by the subring generated by its torsion units
//! (which can only lower the rank), a ring is a product `A_1 x A_2` with
//! `A_1` finite and `A_2` TN. Rank lost this way is restored by a factor
//! `F_2[x, 1/x]`, whose units are `Z`. So `T x Z^r` is realisable iff
//! `T = T_1 x T_2` with `T_1` finite-realisable and either `T_2 = 1` or
//! `T_2 x Z^s` TN-realisable for some `s <= r`.

use super::{
    decide_finite, decide_tn, ge_classify, r_value, two_power_family, Certificate, FamilyWitness,
    Obstruction, Outcome, RingClass, Theorem, Verdict,
};
use crate::abelian::{FgAbGroup, FinAbGroup};
use crate::numtheory::{mersenne_divisor_set, pearson_schneider_covers, two_power_finite_witness};
use num_traits::ToPrimitive;

/// Splits `T = T_1 x T_2` tried before giving up.
pub const SPLIT_CAP: usize = 4096;

pub fn decide_any(g: &FgAbGroup) -> Verdict {
    let t = &g.torsion;
    if g.free_rank == 0 {
        if let Some(u) = two_power_family(t) {
            return fermat_family(g.to_string(), u);
        }
    }
    if t.is_cyclic() {
        return cyclic_all(g);
    }
    split_search(g)
}

fn fermat_family(query: String, u: u32) -> Verdict {
    let any = RingClass::Any;
    // 2^u + 1 is composite unless u is a power of two
    if u >= 63 && u.is_power_of_two() {
        return Verdict::unknown(
            query,
            any,
            Theorem::FermatFamily,
            "primality of 2^u + 1 decidable in 64 bits",
            format!("u = {u}"),
        );
    }
    let witness = if u <= 3 {
        Some(FamilyWitness::Tn)
    } else {
        two_power_finite_witness(u).map(|(p, lambda)| FamilyWitness::Finite { p, lambda })
    };
    match witness {
        Some(witness) => {
            let c = Certificate::FermatFamily { u, witness };
            Verdict::realisable(query, any, Theorem::FermatFamily, c)
        }
        None => {
            let o = Obstruction::FermatFamily { u };
            Verdict::not_realisable(query, any, Theorem::FermatFamily, o)
        }
    }
}

/// The least `r(Z/(m/d))` over `d` in the Mersenne divisor set, with `d`.
pub fn cyclic_rank_bound(m: u64) -> Option<(u64, u64, super::Case)> {
    let mut best: Option<(u64, u64, super::Case)> = None;
    for d in mersenne_divisor_set(m).ok()? {
        let class = ge_classify(&FinAbGroup::cyclic(m / d)).ok()?;
        let (req, case) = r_value(&class).ok()?;
        if best.map_or(true, |(b, _, _)| req < b) {
            best = Some((req, d, case));
        }
    }
    best
}

fn cyclic_all(g: &FgAbGroup) -> Verdict {
    let query = g.to_string();
    let any = RingClass::Any;
    let r = g.free_rank as u64;
    let Some(m) = g.torsion.order().to_u64() else {
        return Verdict::unknown(
            query,
            any,
            Theorem::CyclicAll,
            "|T| < 2^64",
            "order exceeds 64 bits",
        );
    };
    if let Some(cover) = pearson_schneider_covers(m).into_iter().next() {
        return Verdict::realisable(
            query,
            any,
            Theorem::CyclicAll,
            Certificate::Cover { m, cover },
        );
    }
    if m % 2 == 1 {
        let o = Obstruction::CyclicAll {
            m,
            r,
            required: None,
        };
        return Verdict::not_realisable(query, any, Theorem::CyclicAll, o);
    }
    // every Z/(m/d) is cyclic of even order, hence in G(eps)
    let (required, d, case) =
        cyclic_rank_bound(m).expect("cyclic groups of even order lie in G(eps)");
    if r >= required {
        let c = Certificate::MersenneSplit {
            m,
            d,
            r,
            required,
            case,
        };
        Verdict::realisable(query, any, Theorem::CyclicAll, c)
    } else {
        let o = Obstruction::CyclicAll {
            m,
            r,
            required: Some(required),
        };
        Verdict::not_realisable(query, any, Theorem::CyclicAll, o)
    }
}

/// Every `T_2` with `T = T_1 x T_2`, as sub-multisets of the components.
pub fn direct_factor_pairs(t: &FinAbGroup) -> Vec<(FinAbGroup, FinAbGroup)> {
    let mut out = vec![FinAbGroup::trivial()];
    for &(p, e, m) in t.factors() {
        out = out
            .iter()
            .flat_map(|h| {
                (0..=m).map(move |k| h.product(&FinAbGroup::elementary(p, e, k).unwrap()))
            })
            .collect();
    }
    out.into_iter()
        .map(|t2| (t.cancel(&t2).expect("sub-multiset"), t2))
        .collect()
}

fn split_count(t: &FinAbGroup) -> u128 {
    t.factors().iter().map(|&(_, _, m)| m as u128 + 1).product()
}

/// The TN side: `T_2 x Z^s` for some `s <= r`. Outside `r = 0` the
/// theorems only decide through the rank threshold, which is monotone, so
/// `s = r` and `s = 0` are the only ranks worth trying.
fn tn_side(t2: &FinAbGroup, r: u32) -> Verdict {
    let at_r = decide_tn(&FgAbGroup::new(t2.clone(), r));
    if r == 0 || !at_r.is_unknown() {
        return at_r;
    }
    let at_0 = decide_tn(&FgAbGroup::finite(t2.clone()));
    if at_0.is_realisable() {
        at_0
    } else {
        at_r
    }
}

fn split_search(g: &FgAbGroup) -> Verdict {
    let query = g.to_string();
    let any = RingClass::Any;
    let t = &g.torsion;
    let count = split_count(t);
    if count > SPLIT_CAP as u128 {
        return Verdict::unknown(
            query,
            any,
            Theorem::Split,
            format!("at most {SPLIT_CAP} splits T = T_1 x T_2"),
            format!("{count} splits"),
        );
    }
    let mut trace = Vec::new();
    let mut open: Option<String> = None;
    for (t1, t2) in direct_factor_pairs(t) {
        let fin = decide_finite(&t1);
        if fin.is_not_realisable() {
            trace.push(format!("{t1} x {t2}: finite part fails, {}", fin.reason()));
            continue;
        }
        if t2.is_trivial() {
            if let Outcome::Realisable { certificate } = fin.outcome {
                return Verdict::realisable(query, any, Theorem::Split, certificate);
            }
            open.get_or_insert_with(|| format!("finite part {t1}: {}", fin.reason()));
            continue;
        }
        let tn = tn_side(&t2, g.free_rank);
        if tn.is_not_realisable() {
            trace.push(format!("{t1} x {t2}: TN part fails, {}", tn.reason()));
            continue;
        }
        if fin.is_realisable() && tn.is_realisable() {
            let c = Certificate::Split {
                finite: Box::new(fin),
                tn: Box::new(tn),
            };
            return Verdict::realisable(query, any, Theorem::Split, c);
        }
        let pending = if fin.is_unknown() { &fin } else { &tn };
        open.get_or_insert_with(|| format!("{t1} x {t2}: {}", pending.reason()));
    }
    match open {
        Some(detail) => Verdict::unknown(
            query,
            any,
            Theorem::Split,
            "some split T_1 x T_2 decided",
            detail,
        ),
        None => {
            let o = Obstruction::SplitExhausted { trace };
            Verdict::not_realisable(query, any, Theorem::Split, o)
        }
    }
}
