use super::{enumerate_radical_rings_par, RadicalRing};
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub ring: RadicalRing,
    pub additive: FinAbGroup,
    pub adjoint: FinAbGroup,
    pub prufer_rank: u32,
}

/// Outcome of comparing `(N, +)` with `(N, o)` over all classes of order `p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallTheoremReport {
    pub p: u64,
    pub k: u32,
    pub classes: usize,
    /// classes with Prufer rank below `p - 1`
    pub small_classes: usize,
    /// small classes whose two groups differ
    pub violations: Vec<Violation>,
    /// every class whose two groups differ, small or not
    pub mismatches: Vec<Violation>,
}

impl SmallTheoremReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `(N, +) = (N, o)` whenever `Prank N < p - 1`, on every class.
pub fn check_small_theorem(p: u64, k: u32, cap: u128) -> Result<SmallTheoremReport> {
    let rings = enumerate_radical_rings_par(p, k, cap)?;
    let mut report = SmallTheoremReport {
        p,
        k,
        classes: rings.len(),
        small_classes: 0,
        violations: Vec::new(),
        mismatches: Vec::new(),
    };
    for ring in rings {
        let additive = ring.additive_group();
        let adjoint = ring.adjoint_group()?;
        let prufer_rank = additive.prufer_rank(p);
        let small = (prufer_rank as u64) < p - 1;
        if small {
            report.small_classes += 1;
        }
        if additive != adjoint {
            let v = Violation {
                ring,
                additive,
                adjoint,
                prufer_rank,
            };
            if small {
                report.violations.push(v.clone());
            }
            report.mismatches.push(v);
        }
    }
    Ok(report)
}

/// For `|N| = 2^v`, `v >= 3`: if `(N, o)` is cyclic then so is `(N, +)`.
pub fn check_byott(n: &RadicalRing) -> Result<bool> {
    let size = n.size();
    if n.p() != 2 || size < 8 {
        return Err(Error::WrongOrder(size));
    }
    let adjoint = n.adjoint_group()?;
    Ok(!adjoint.is_cyclic() || n.additive_group().is_cyclic())
}

#[cfg(test)]
mod tests {
    use super::*;
    const CAP: u128 = 1 << 20;

    #[test]
    fn small_theorem_examples() {
        let r = check_small_theorem(3, 2, CAP).unwrap();
        assert!(r.holds());
        let r = check_small_theorem(2, 2, CAP).unwrap();
        let two = RadicalRing::pz_mod(2, 3).unwrap();
        assert!(r
            .mismatches
            .iter()
            .any(|v| super::super::are_isomorphic(&v.ring, &two)));
    }

    #[test]
    fn byott_examples() {
        assert!(check_byott(&RadicalRing::pz_mod(2, 5).unwrap()).unwrap());
        assert!(check_byott(&RadicalRing::zero_ring(2, vec![3]).unwrap()).unwrap());
        assert!(check_byott(&RadicalRing::zero_ring(2, vec![1, 1, 1]).unwrap()).unwrap());
        assert_eq!(
            check_byott(&RadicalRing::zero_ring(2, vec![2]).unwrap()),
            Err(Error::WrongOrder(4))
        );
    }
}
