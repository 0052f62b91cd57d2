//! A generated corpus of small unital rings: every unitisation
//! `Z/p^e + N` of order at most 16, plus stock families.

use super::{Elem, FinCommRing};
use crate::error::Result;
use crate::radical::enumerate_radical_rings;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    /// file-name safe identifier
    pub name: String,
    pub ring: FinCommRing,
}

const MAX_UNITISATION: u64 = 16;

fn entry(name: impl Into<String>, ring: FinCommRing) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        ring,
    }
}

/// The corpus, in a fixed order with unique names.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in 2..=16 {
        out.push(entry(format!("z{n}"), FinCommRing::zn(n)?));
    }
    for (p, l) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)] {
        out.push(entry(format!("f{}", p.pow(l)), FinCommRing::field(p, l)?));
    }
    for (a, b) in [
        (2u64, 2u64),
        (2, 3),
        (2, 4),
        (3, 3),
        (2, 5),
        (3, 4),
        (4, 4),
        (2, 8),
    ] {
        let r = FinCommRing::zn(a)?.product(&FinCommRing::zn(b)?)?;
        out.push(entry(format!("z{a}xz{b}"), r));
    }
    out.push(entry(
        "f4xz3",
        FinCommRing::field(2, 2)?.product(&FinCommRing::zn(3)?)?,
    ));
    for p in [2u64, 3] {
        for k in 1u32.. {
            if p.pow(k + 1) > MAX_UNITISATION {
                break;
            }
            for (idx, n) in enumerate_radical_rings(p, k, 1 << 12)?.iter().enumerate() {
                let top = n.exps().iter().copied().max().unwrap_or(1);
                for e in top.max(1).. {
                    if p.pow(e + k) > MAX_UNITISATION {
                        break;
                    }
                    let r = FinCommRing::unitisation(e, n)?;
                    out.push(entry(format!("u{p}_{k}_{idx}_e{e}"), r));
                }
            }
        }
    }
    out.extend(quotients()?);
    Ok(out)
}

fn monomial(base: &FinCommRing, deg: usize, lower: &[(usize, Elem)]) -> Vec<Elem> {
    let mut f = vec![base.zero(); deg + 1];
    f[deg] = base.one();
    for (i, c) in lower {
        f[*i] = c.clone();
    }
    f
}

fn quotients() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let f2 = FinCommRing::zn(2)?;
    for k in 2..=4 {
        out.push(entry(
            format!("f2_t{k}"),
            FinCommRing::poly_quotient(&f2, &monomial(&f2, k, &[]))?,
        ));
    }
    let f3 = FinCommRing::zn(3)?;
    out.push(entry(
        "f3_t2",
        FinCommRing::poly_quotient(&f3, &monomial(&f3, 2, &[]))?,
    ));
    out.push(entry(
        "f3_t3",
        FinCommRing::poly_quotient(&f3, &monomial(&f3, 3, &[]))?,
    ));
    let f4 = FinCommRing::field(2, 2)?;
    out.push(entry(
        "f4_t2",
        FinCommRing::poly_quotient(&f4, &monomial(&f4, 2, &[]))?,
    ));
    let f9 = FinCommRing::field(3, 2)?;
    out.push(entry(
        "f9_t2",
        FinCommRing::poly_quotient(&f9, &monomial(&f9, 2, &[]))?,
    ));
    let z4 = FinCommRing::zn(4)?;
    let z4t2 = FinCommRing::poly_quotient(&z4, &monomial(&z4, 2, &[]))?;
    let t = z4t2.basis_elem(1);
    out.push(entry("z4_t2_2t", z4t2.quotient(&[z4t2.scale(2, &t)])?));
    out.push(entry("z4_t2", z4t2));
    // t^2 = 2 and t^2 = 2 + 2t, the two ramified quadratic extensions mod 4
    out.push(entry(
        "z4_t2m2",
        FinCommRing::poly_quotient(&z4, &monomial(&z4, 2, &[(0, vec![2])]))?,
    ));
    out.push(entry(
        "z4_t2m2m2t",
        FinCommRing::poly_quotient(&z4, &monomial(&z4, 2, &[(0, vec![2]), (1, vec![2])]))?,
    ));
    // Galois ring GR(4, 2) = Z/4[t]/(t^2 + t + 1)
    out.push(entry(
        "gr4_2",
        FinCommRing::poly_quotient(&z4, &monomial(&z4, 2, &[(0, vec![1]), (1, vec![1])]))?,
    ));
    let z9 = FinCommRing::zn(9)?;
    out.push(entry(
        "z9_t2m3",
        FinCommRing::poly_quotient(&z9, &monomial(&z9, 2, &[(0, vec![6])]))?,
    ));
    let z8 = FinCommRing::zn(8)?;
    let z8t2 = FinCommRing::poly_quotient(&z8, &monomial(&z8, 2, &[]))?;
    let t = z8t2.basis_elem(1);
    out.push(entry("z8_t2_2t", z8t2.quotient(&[z8t2.scale(2, &t)])?));
    Ok(out)
}
