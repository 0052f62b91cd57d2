//! Realisability by TN rings: rings whose torsion ideal is nilpotent.

use super::{ge_classify, r_value, Certificate, Obstruction, RingClass, Theorem, Verdict};
use crate::abelian::{FgAbGroup, FinAbGroup};

/// `u` with `t = Z/4 x Z/2^u`, if `t` has that shape.
pub fn two_power_family(t: &FinAbGroup) -> Option<u32> {
    if t.is_trivial() || !t.is_p_group(2) {
        return None;
    }
    let log: u32 = t.factors().iter().map(|&(_, e, m)| e * m).sum();
    let u = log.checked_sub(2)?;
    (FinAbGroup::cyclic(4).product(&FinAbGroup::cyclic(1u64 << u)) == *t).then_some(u)
}

/// `V` with `V^2 = t_p` and `V` 1-small, if there is one.
fn square_root_of_small(p: u64, sylow: &FinAbGroup) -> Option<FinAbGroup> {
    let v = sylow.lambda_power_decompose(2)?;
    ((v.prufer_rank(p) as u64) < p - 1).then_some(v)
}

/// Primes `p = 3 mod 4` dividing `|t|`.
fn primes_3_mod_4(t: &FinAbGroup) -> Vec<u64> {
    t.primes().into_iter().filter(|p| p % 4 == 3).collect()
}

pub fn decide_tn(g: &FgAbGroup) -> Verdict {
    let query = g.to_string();
    let t = &g.torsion;
    let r = g.free_rank as u64;
    let tn = RingClass::Tn;
    if t.sylow(2).is_trivial() {
        let o = Obstruction::OddTorsion { torsion: t.clone() };
        return Verdict::not_realisable(query, tn, Theorem::CharZeroParity, o);
    }
    let why = match ge_classify(t) {
        Ok(class) => {
            let (required, case) = r_value(&class).expect("members of G(eps) have an r value");
            let torsion = t.clone();
            return if r >= required {
                let c = Certificate::Rank {
                    torsion,
                    r,
                    required,
                    case,
                };
                Verdict::realisable(query, tn, Theorem::RankThreshold, c)
            } else {
                let o = Obstruction::RankTooSmall {
                    torsion,
                    r,
                    required,
                    case,
                };
                Verdict::not_realisable(query, tn, Theorem::RankThreshold, o)
            };
        }
        Err(why) => why,
    };
    if let Some(u) = two_power_family(t) {
        if r == 0 {
            return if u <= 3 {
                let c = Certificate::TwoPowerTn { u };
                Verdict::realisable(query, tn, Theorem::TwoPowerTn, c)
            } else {
                let o = Obstruction::TwoPowerTn { u };
                Verdict::not_realisable(query, tn, Theorem::TwoPowerTn, o)
            };
        }
        return Verdict::unknown(
            query,
            tn,
            Theorem::TwoPowerTn,
            "r = 0 for Z/4Z x Z/2^uZ",
            format!("u = {u} with r = {r}, and {why}"),
        );
    }
    if r > 0 {
        return Verdict::unknown(
            query,
            tn,
            Theorem::RankThreshold,
            "T in G(eps)",
            why.to_string(),
        );
    }
    if let Some(eps) = g.epsilon().value().filter(|&e| e > 2) {
        let o = Obstruction::EpsilonTooLarge { epsilon: eps };
        return Verdict::not_realisable(query, tn, Theorem::EpsilonBound, o);
    }
    if t.sylow(2) != FinAbGroup::cyclic(4) {
        return Verdict::unknown(
            query,
            tn,
            Theorem::RankThreshold,
            "T in G(eps)",
            why.to_string(),
        );
    }
    let mut roots = Vec::new();
    for p in primes_3_mod_4(t) {
        let sylow = t.sylow(p);
        if !sylow.is_lambda_small(p, 2).expect("Sylow subgroup") {
            return Verdict::unknown(
                query,
                tn,
                Theorem::SquareOfSmall,
                "T_p 2-small at every p = 3 mod 4",
                format!("{why}; {sylow} is not 2-small"),
            );
        }
        match square_root_of_small(p, &sylow) {
            Some(v) => roots.push((p, v)),
            None => {
                let o = Obstruction::NotSquare { p, sylow };
                return Verdict::not_realisable(query, tn, Theorem::SquareOfSmall, o);
            }
        }
    }
    let c = Certificate::SquareRoots {
        torsion: t.clone(),
        roots,
    };
    Verdict::realisable(query, tn, Theorem::SquareOfSmall, c)
}
