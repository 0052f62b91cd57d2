use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use crate::realize::{
    Certificate, LocalFactor, LocalWitness, Obstruction, RingClass, Theorem, Verdict,
};

/// Whether `g` is the unit group of a local ring with residue field
/// `F_{p^lambda}`, `p` odd, decided when the Sylow `p`-subgroup is
/// lambda-small.
pub fn decide_local_small(g: &FinAbGroup, p: u64, lambda: u32) -> Result<Verdict> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let query = g.to_string();
    let sylow = g.sylow(p);
    if !sylow.is_lambda_small(p, lambda)? {
        return Ok(Verdict::unknown(
            query,
            RingClass::Finite,
            Theorem::LocalSmall,
            format!("Sylow {p}-subgroup is {lambda}-small"),
            format!(
                "{sylow} has Prufer rank {} >= {}",
                sylow.prufer_rank(p),
                lambda as u64 * (p - 1)
            ),
        ));
    }
    let expected = p.pow(lambda) - 1;
    let rest = g.p_complement(p);
    if rest != FinAbGroup::cyclic(expected) {
        let o = Obstruction::ResidueMismatch {
            p,
            lambda,
            expected,
            found: rest,
        };
        return Ok(Verdict::not_realisable(
            query,
            RingClass::Finite,
            Theorem::LocalSmall,
            o,
        ));
    }
    Ok(match sylow.lambda_power_decompose(lambda) {
        Some(root) => {
            let factor = LocalFactor {
                p,
                lambda,
                one_plus_m: sylow,
                witness: LocalWitness::Power { root },
            };
            let c = Certificate::LocalProduct {
                factors: vec![factor],
            };
            Verdict::realisable(query, RingClass::Finite, Theorem::LocalSmall, c)
        }
        None => {
            let o = Obstruction::NotLambdaPower { p, lambda, sylow };
            Verdict::not_realisable(query, RingClass::Finite, Theorem::LocalSmall, o)
        }
    })
}
