//! The rank constants `g(T)` and `r(T)` and the class `G(epsilon)`.

use super::Case;
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, mult_order};
use serde::{Deserialize, Serialize};
use std::fmt;

/// `lambda(l, n)`: the multiplicative order of `l` modulo `n`, the residue
/// degree of `l` in `Z[zeta_n]`.
pub fn lambda(l: u64, n: u64) -> Result<u32> {
    Ok(mult_order(l % n.max(1), n)? as u32)
}

/// `2^epsilon` for a group with cyclic, nontrivial Sylow 2-subgroup.
pub fn cyclic_two_part(t: &FinAbGroup) -> Result<u32> {
    match t.sylow(2).factors() {
        [] => Err(Error::OddOrder),
        [(2, e, 1)] => Ok(*e),
        _ => Err(Error::NonCyclicTwoPart),
    }
}

fn half_phi_minus_one(n: u64) -> u64 {
    (euler_phi(n) / 2).saturating_sub(1)
}

/// `g(T) = sum_i (phi(2^eps p_i^{a_i})/2 - 1) + c(T)` over the odd
/// prime-power cyclic factors, with `c(T) = (phi(2^eps)/2 - 1)*` unless
/// exactly one odd prime divides `|T|`, where `c(T) = 0`.
pub fn g_value(t: &FinAbGroup) -> Result<u64> {
    let eps = cyclic_two_part(t)?;
    let two = 1u64 << eps;
    let mut sum = 0u64;
    for &(p, e, m) in t.factors().iter().filter(|f| f.0 != 2) {
        sum += m as u64 * half_phi_minus_one(two * p.pow(e));
    }
    let distinct = t.primes().iter().filter(|&&p| p != 2).count();
    if distinct != 1 {
        sum += half_phi_minus_one(two);
    }
    Ok(sum)
}

/// Membership data for `G(epsilon)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeClass {
    pub epsilon: u32,
    /// `(p, T_p)` with `T_p` not a `lambda_p`-power and `Prank < lambda_p`
    pub bad_primes: Vec<(u64, FinAbGroup)>,
    /// `(q, V_q, lambda_q)` with `T_q = V_q^lambda_q`
    pub good_primes: Vec<(u64, FinAbGroup, u32)>,
}

impl GeClass {
    pub fn s0(&self) -> usize {
        self.bad_primes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotInClass {
    OddOrder,
    NonCyclicTwoPart,
    /// `T_p` is neither a `lambda`-power nor of Prufer rank below `lambda`
    LargeRank {
        p: u64,
        lambda: u32,
        sylow: FinAbGroup,
    },
}

impl fmt::Display for NotInClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotInClass::OddOrder => write!(f, "group has odd order"),
            NotInClass::NonCyclicTwoPart => write!(f, "Sylow 2-subgroup is not cyclic"),
            NotInClass::LargeRank { p, lambda, sylow } => write!(
                f,
                "Sylow {p}-subgroup {sylow} is not a {lambda}-power and has Prufer rank >= {lambda}"
            ),
        }
    }
}

pub fn ge_classify(t: &FinAbGroup) -> std::result::Result<GeClass, NotInClass> {
    let epsilon = match cyclic_two_part(t) {
        Ok(e) => e,
        Err(Error::OddOrder) => return Err(NotInClass::OddOrder),
        Err(_) => return Err(NotInClass::NonCyclicTwoPart),
    };
    let mut class = GeClass {
        epsilon,
        bad_primes: Vec::new(),
        good_primes: Vec::new(),
    };
    for p in t.primes().into_iter().filter(|&p| p != 2) {
        let lam = lambda(p, 1 << epsilon).expect("odd prime is coprime to 2^eps");
        let sylow = t.sylow(p);
        match sylow.lambda_power_decompose(lam) {
            Some(v) => class.good_primes.push((p, v, lam)),
            None if sylow.prufer_rank(p) < lam => class.bad_primes.push((p, sylow)),
            None => {
                return Err(NotInClass::LargeRank {
                    p,
                    lambda: lam,
                    sylow,
                })
            }
        }
    }
    Ok(class)
}

/// The least `r` with `T x Z^r` realisable by a TN ring, for `T` in
/// `G(epsilon)`.
pub fn r_value(class: &GeClass) -> Result<(u64, Case)> {
    let two = FinAbGroup::cyclic(1 << class.epsilon);
    let bad = class
        .bad_primes
        .iter()
        .fold(two.clone(), |acc, (_, s)| acc.product(s));
    let case = if let [(p, tp)] = class.bad_primes.as_slice() {
        let a1 = tp.min_exponent(*p).expect("bad Sylow is nontrivial");
        let modulus = (1u64 << class.epsilon) * p.pow(a1);
        let mut case = Case::C1;
        for (q, v, lam) in &class.good_primes {
            let tq = v.power(*lam);
            if tq.lambda_power_decompose(lambda(*q, modulus)?).is_none() {
                case = Case::C2;
            }
        }
        case
    } else {
        Case::C1
    };
    let r = match case {
        Case::C1 => g_value(&bad)?,
        Case::C2 => g_value(&bad)? + g_value(&two)?,
    };
    Ok((r, case))
}
