//! Re-derivation of verdicts from their certificates and obstructions.
//!
//! Every check redoes the arithmetic behind the verdict. Witness rings are
//! rebuilt and their unit groups recomputed whenever they fit the oracle
//! caps.

use super::{
    cyclic_rank_bound, decide_any, decide_finite, ge_classify, r_value, two_power_family, Case,
    Certificate, FamilyWitness, LocalFactor, LocalWitness, Obstruction, Outcome, RingClass,
    Verdict,
};
use crate::abelian::{FgAbGroup, FinAbGroup};
use crate::error::{Error, Result};
use crate::finring::{decide_local_small, named_ring, one_plus_m, FinCommRing};
use crate::numtheory::{is_prime, mersenne_divisor_set, pearson_schneider_covers, PsCover};
use crate::tnlab::{build_construction_model, example, TnModel};
use crate::{cap_from_env, DEFAULT_RING_CAP};

/// Checks a decided verdict; unknown verdicts carry nothing to check.
pub fn certificate_check(v: &Verdict) -> Result<bool> {
    let g: FgAbGroup = v.query.parse()?;
    match &v.outcome {
        Outcome::Realisable { certificate } => check_certificate(&g, v.class, certificate),
        Outcome::NotRealisable { obstruction } => check_obstruction(&g, v.class, obstruction),
        Outcome::Unknown { .. } => Err(Error::HypothesisViolated(
            "an unknown verdict has no certificate".into(),
        )),
    }
}

/// `v` with `checked` set, or an error if the check fails.
pub fn checked(mut v: Verdict) -> Result<Verdict> {
    if certificate_check(&v)? {
        v.checked = true;
        Ok(v)
    } else {
        Err(Error::HypothesisViolated(format!(
            "certificate for {} does not check",
            v.query
        )))
    }
}

fn cap() -> u128 {
    cap_from_env(DEFAULT_RING_CAP)
}

fn rank_matches(t: &FinAbGroup, required: u64, case: Case) -> bool {
    match ge_classify(t) {
        Ok(class) => r_value(&class).ok() == Some((required, case)),
        Err(_) => false,
    }
}

/// `Z/4 x Z/2^u`, `u <= 3`, from an explicit TN model.
fn two_power_model(u: u32) -> Result<TnModel> {
    match u {
        0 => TnModel::parse("conductor = 4\nfree_basis = [\"1\"]\nmult = [[[1, 0]]]\n"),
        1 => TnModel::parse(
            "conductor = 4\nfree_basis = [\"1\", \"x\"]\n\
             mult = [[[1, 0, 0, 0], [0, 0, 1, 0]], [[0, 0, 1, 0], [1, 0, 0, 0]]]\n",
        ),
        2 => example("paper-7-2-v2").expect("shipped"),
        3 => example("paper-7-2-v4").expect("shipped"),
        _ => Err(Error::HypothesisViolated(format!("u = {u} > 3"))),
    }
}

/// `A^*_tors` of the construction over `Z[zeta_k]` equals `t`, when the
/// model fits the caps.
fn construction_matches(k: u64, t: &FinAbGroup) -> Result<bool> {
    let odd = t.p_complement(2);
    if odd.order_u128().map_or(true, |n| n > cap()) {
        return Ok(true);
    }
    let model = build_construction_model(k, &odd)?;
    Ok(model.torsion_units()? == *t)
}

fn cover_rings_match(cover: &PsCover) -> Result<bool> {
    for f in &cover.factors {
        let (p, lambda, len) = f.ring_parameters();
        let size = (p as u128).checked_pow(lambda * len).unwrap_or(u128::MAX);
        if size > cap() {
            continue;
        }
        let ring = if len == 1 {
            FinCommRing::field(p, lambda)?
        } else {
            FinCommRing::zn(p.pow(len))?
        };
        if ring.unit_group()? != FinAbGroup::cyclic(f.value()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn local_factor_ok(f: &LocalFactor) -> Result<bool> {
    if !is_prime(f.p) || f.lambda == 0 || !f.one_plus_m.is_p_group(f.p) {
        return Ok(false);
    }
    Ok(match &f.witness {
        LocalWitness::Field => {
            let size = (f.p as u128).checked_pow(f.lambda).unwrap_or(u128::MAX);
            f.one_plus_m.is_trivial()
                && (size > cap() || FinCommRing::field(f.p, f.lambda)?.unit_group()? == f.units())
        }
        LocalWitness::Power { root } => {
            f.p != 2
                && root.is_p_group(f.p)
                && (root.prufer_rank(f.p) as u64) < f.p - 1
                && root.power(f.lambda) == f.one_plus_m
        }
        LocalWitness::Known { ring } => {
            f.p == 2 && one_plus_m(&named_ring(ring)?)? == (2, f.lambda, f.one_plus_m.clone())
        }
    })
}

fn check_certificate(g: &FgAbGroup, class: RingClass, c: &Certificate) -> Result<bool> {
    let t = &g.torsion;
    let r = g.free_rank as u64;
    let finite_ok = class == RingClass::Any || (class == RingClass::Finite && r == 0);
    match c {
        Certificate::Cover { m, cover } => Ok(finite_ok
            && *t == FinAbGroup::cyclic(*m)
            && cover.verify(*m)
            && cover_rings_match(cover)?),
        Certificate::LocalProduct { factors } => {
            let mut units = FinAbGroup::trivial();
            for f in factors {
                if !local_factor_ok(f)? {
                    return Ok(false);
                }
                units = units.product(&f.units());
            }
            Ok(finite_ok && units == *t)
        }
        Certificate::Rank {
            torsion,
            r: rr,
            required,
            case,
        } => Ok(class == RingClass::Tn
            && torsion == t
            && *rr == r
            && r >= *required
            && rank_matches(t, *required, *case)
            && (*required > 0 || construction_matches(1 << ge_epsilon(t), t)?)),
        Certificate::TwoPowerTn { u } => Ok(class == RingClass::Tn
            && r == 0
            && two_power_family(t) == Some(*u)
            && *u <= 3
            && two_power_model(*u)?.torsion_units()? == *t),
        Certificate::SquareRoots { torsion, roots } => {
            let primes: Vec<u64> = t.primes().into_iter().filter(|p| p % 4 == 3).collect();
            let roots_ok = roots.len() == primes.len()
                && roots.iter().zip(&primes).all(|((p, v), q)| {
                    p == q && v.power(2) == t.sylow(*p) && (v.prufer_rank(*p) as u64) < p - 1
                });
            Ok(class == RingClass::Tn
                && r == 0
                && torsion == t
                && t.sylow(2) == FinAbGroup::cyclic(4)
                && roots_ok
                && construction_matches(4, t)?)
        }
        Certificate::MersenneSplit {
            m,
            d,
            r: rr,
            required,
            case,
        } => Ok(class == RingClass::Any
            && *t == FinAbGroup::cyclic(*m)
            && *rr == r
            && r >= *required
            && m % 2 == 0
            && mersenne_divisor_set(*m)?.contains(d)
            && rank_matches(&FinAbGroup::cyclic(m / d), *required, *case)),
        Certificate::FermatFamily { u, witness } => {
            let shape = class == RingClass::Any && r == 0 && two_power_family(t) == Some(*u);
            Ok(shape
                && match *witness {
                    FamilyWitness::Tn => *u <= 3 && two_power_model(*u)?.torsion_units()? == *t,
                    FamilyWitness::Finite { p, lambda } => {
                        is_prime(p)
                            && p.checked_pow(lambda) == 1u64.checked_shl(*u).map(|x| x + 1)
                            && (p.pow(lambda) as u128 > cap()
                                || FinCommRing::field(p, lambda)?.unit_group()?
                                    == FinAbGroup::cyclic(1 << u))
                    }
                })
        }
        Certificate::Split { finite, tn } => {
            let f: FgAbGroup = finite.query.parse()?;
            let n: FgAbGroup = tn.query.parse()?;
            Ok(class == RingClass::Any
                && finite.class == RingClass::Finite
                && tn.class == RingClass::Tn
                && finite.is_realisable()
                && tn.is_realisable()
                && f.free_rank == 0
                && n.free_rank <= g.free_rank
                && f.torsion.product(&n.torsion) == *t
                && certificate_check(finite)?
                && certificate_check(tn)?)
        }
    }
}

fn ge_epsilon(t: &FinAbGroup) -> u32 {
    ge_classify(t).map(|c| c.epsilon).unwrap_or(0)
}

fn check_obstruction(g: &FgAbGroup, class: RingClass, o: &Obstruction) -> Result<bool> {
    let t = &g.torsion;
    let r = g.free_rank as u64;
    let tn = class == RingClass::Tn;
    match o {
        Obstruction::OddTorsion { torsion } => Ok(tn && torsion == t && t.sylow(2).is_trivial()),
        Obstruction::RankTooSmall {
            torsion,
            r: rr,
            required,
            case,
        } => Ok(tn
            && torsion == t
            && *rr == r
            && r < *required
            && rank_matches(t, *required, *case)),
        Obstruction::EpsilonTooLarge { epsilon } => {
            Ok(tn && r == 0 && *epsilon > 2 && t.min_exponent(2) == Some(*epsilon))
        }
        Obstruction::TwoPowerTn { u } => {
            Ok(tn && r == 0 && *u > 3 && two_power_family(t) == Some(*u))
        }
        Obstruction::NotSquare { p, sylow } => {
            let small = t
                .primes()
                .into_iter()
                .filter(|q| q % 4 == 3)
                .all(|q| t.sylow(q).is_lambda_small(q, 2).unwrap_or(false));
            let square = sylow
                .lambda_power_decompose(2)
                .is_some_and(|v| (v.prufer_rank(*p) as u64) < p - 1);
            Ok(tn
                && r == 0
                && p % 4 == 3
                && t.sylow(2) == FinAbGroup::cyclic(4)
                && small
                && t.sylow(*p) == *sylow
                && !square)
        }
        Obstruction::NoCover { m } => Ok(class == RingClass::Finite
            && *t == FinAbGroup::cyclic(*m)
            && pearson_schneider_covers(*m).is_empty()),
        Obstruction::NotLambdaPower { p, lambda, .. }
        | Obstruction::ResidueMismatch { p, lambda, .. } => {
            let again = decide_local_small(t, *p, *lambda)?;
            Ok(class == RingClass::Finite
                && matches!(&again.outcome, Outcome::NotRealisable { obstruction } if obstruction == o))
        }
        Obstruction::SearchExhausted { .. } => {
            let again = decide_finite(t);
            Ok(class == RingClass::Finite
                && matches!(&again.outcome, Outcome::NotRealisable { obstruction } if obstruction == o))
        }
        Obstruction::CyclicAll { m, r: rr, required } => {
            let shape = class == RingClass::Any
                && *t == FinAbGroup::cyclic(*m)
                && *rr == r
                && pearson_schneider_covers(*m).is_empty();
            Ok(shape
                && match required {
                    None => m % 2 == 1,
                    Some(q) => {
                        m % 2 == 0 && r < *q && cyclic_rank_bound(*m).map(|b| b.0) == Some(*q)
                    }
                })
        }
        Obstruction::FermatFamily { u } => {
            let shape =
                class == RingClass::Any && r == 0 && *u > 3 && two_power_family(t) == Some(*u);
            // 2^a + 1 divides 2^u + 1 for every odd cofactor of u, and
            // 3^2 = 2^3 + 1 is the only prime power of this shape
            let composite = if !u.is_power_of_two() {
                true
            } else {
                let n = 1u64
                    .checked_shl(*u)
                    .filter(|_| *u < 64)
                    .ok_or_else(|| Error::UncheckableAtScale(format!("2^{u} + 1")))?;
                !is_prime(n + 1)
            };
            Ok(shape && composite)
        }
        Obstruction::SplitExhausted { .. } => {
            let again = decide_any(g);
            Ok(class == RingClass::Any
                && matches!(&again.outcome, Outcome::NotRealisable { obstruction } if obstruction == o))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::{decide_tn, Theorem};

    fn all(s: &str) -> Vec<Verdict> {
        let g: FgAbGroup = s.parse().unwrap();
        vec![decide_tn(&g), decide_finite(&g.torsion), decide_any(&g)]
    }

    #[test]
    fn decided_verdicts_check() {
        for s in [
            "Z/6Z",
            "Z/328Z",
            "Z/328Z x Z",
            "Z/4Z x Z/16Z",
            "Z/4Z x Z/32Z",
            "Z/4Z x Z/8Z",
            "Z/2Z x Z/4Z",
            "Z/8Z",
            "Z/3Z x Z^2",
            "(Z/5Z)^2 x Z/600Z",
            "Z/24Z x (Z/5Z)^2",
            "Z/4Z x (Z/3Z)^2 x Z/5Z",
            "Z/4Z x Z/7Z x Z/49Z",
            "Z/2Z x Z/2Z x Z",
            "Z/2Z x Z/8Z",
        ] {
            for v in all(s) {
                if !v.is_unknown() {
                    assert!(certificate_check(&v).unwrap(), "{v}");
                }
            }
        }
    }

    #[test]
    fn tampered_verdicts_fail() {
        let mut v = decide_tn(&"Z/328Z x Z".parse().unwrap());
        v.query = "Z/328Z".into();
        assert!(!certificate_check(&v).unwrap());
        let v = Verdict::not_realisable(
            "Z/4Z x Z/16Z".into(),
            RingClass::Any,
            Theorem::FermatFamily,
            Obstruction::FermatFamily { u: 4 },
        );
        assert!(!certificate_check(&v).unwrap());
    }
}
