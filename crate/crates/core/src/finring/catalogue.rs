//! Named local rings of `(2, lambda)`-type whose `1 + m` is known, used as
//! witnesses by the finite search and rebuilt by the certificate checker.
//!
//! Names are `Z/2^k`, `F_q[t]/(t^2)` for `q = 2^lambda`, or a corpus name.

use super::{corpus, Elem, FinCommRing, Locality};
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLocal {
    pub name: String,
    pub lambda: u32,
    pub one_plus_m: FinAbGroup,
}

/// `1 + m` of a local ring: its unit group's Sylow `p`-subgroup.
pub fn one_plus_m(ring: &FinCommRing) -> Result<(u64, u32, FinAbGroup)> {
    match ring.localize()? {
        Locality::Local(d) => Ok((d.p, d.lambda, ring.unit_group()?.sylow(d.p))),
        Locality::Split { .. } => Err(Error::NotLocal),
    }
}

/// Local `(2, lambda)` rings of the corpus.
pub fn two_local_corpus() -> &'static [TwoLocal] {
    static CELL: OnceLock<Vec<TwoLocal>> = OnceLock::new();
    CELL.get_or_init(|| {
        corpus()
            .expect("corpus builds")
            .into_iter()
            .filter_map(|e| match one_plus_m(&e.ring) {
                Ok((2, lambda, h)) => Some(TwoLocal {
                    name: e.name,
                    lambda,
                    one_plus_m: h,
                }),
                _ => None,
            })
            .collect()
    })
}

/// A catalogued `(2, lambda)` ring with `1 + m = h`.
///
/// `F_q[t]/(t^2)` has `1 + m = (F_q, +)`; `Z/2^k` has
/// `1 + m = Z/2 x Z/2^{k-2}` for `k >= 2`.
pub fn two_local_witness(lambda: u32, h: &FinAbGroup) -> Option<String> {
    if lambda < 64 && *h == FinAbGroup::elementary(2, 1, lambda).ok()? {
        return Some(format!("F_{}[t]/(t^2)", 1u64 << lambda));
    }
    if lambda == 1 && h.is_p_group(2) && !h.is_trivial() {
        let k = h.factors().iter().map(|&(_, e, m)| e * m).sum::<u32>() + 1;
        if k < 64 && FinAbGroup::cyclic(2).product(&FinAbGroup::cyclic(1 << (k - 2))) == *h {
            return Some(format!("Z/{}", 1u64 << k));
        }
    }
    two_local_corpus()
        .iter()
        .find(|t| t.lambda == lambda && t.one_plus_m == *h)
        .map(|t| t.name.clone())
}

/// Rebuilds a ring named by [`two_local_witness`].
pub fn named_ring(name: &str) -> Result<FinCommRing> {
    if let Some(n) = name.strip_prefix("Z/") {
        let n: u64 = n.parse().map_err(|_| Error::Parse(name.into()))?;
        return FinCommRing::zn(n);
    }
    if let Some(q) = name
        .strip_prefix("F_")
        .and_then(|s| s.strip_suffix("[t]/(t^2)"))
    {
        let q: u64 = q.parse().map_err(|_| Error::Parse(name.into()))?;
        let lambda = q.trailing_zeros();
        if q != 1 << lambda || lambda == 0 {
            return Err(Error::Parse(name.into()));
        }
        let field = FinCommRing::field(2, lambda)?;
        let t2: Vec<Elem> = vec![field.zero(), field.zero(), field.one()];
        return FinCommRing::poly_quotient(&field, &t2);
    }
    corpus()?
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.ring)
        .ok_or_else(|| Error::Parse(format!("unknown ring `{name}`")))
}
