//! Cyclotomic prime-power quotients and the group-level construction of
//! TN rings with prescribed `1 + N_tors`.

use super::base::{Cyc, CycloBase};
use super::model::{ModelElem, TnModel};
use crate::abelian::{FinAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::numtheory::{factor_cyclo_mod, PolyMod};
use crate::realize::{g_value, lambda};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// `Z[zeta_k]/Q^b` for the prime `Q = (q, f(zeta))` above `q`, where `f` is
/// an irreducible factor of `Phi_k` modulo `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerIdealQuotient {
    pub conductor: u64,
    pub q: u64,
    pub factor: PolyMod,
    pub exponent: u32,
}

impl PrimePowerIdealQuotient {
    /// Uses the first factor of `Phi_k mod q` in sorted order.
    pub fn new(conductor: u64, q: u64, exponent: u32) -> Result<Self> {
        if conductor.gcd(&q) != 1 {
            return Err(Error::NotCoprime { a: q, n: conductor });
        }
        let factor = factor_cyclo_mod(conductor, q)?.remove(0);
        Ok(PrimePowerIdealQuotient {
            conductor,
            q,
            factor,
            exponent,
        })
    }

    /// Rows `zeta^j q^{b-i} f(zeta)^i` spanning `Q^b` in the power basis.
    pub fn relations(&self) -> IntMatrix {
        let base = CycloBase::new(self.conductor);
        let d = base.degree();
        let modulus = (self.q as i64).pow(self.exponent);
        let lift: Vec<i64> = self.factor.coeffs.iter().map(|&c| c as i64).collect();
        let f = base.eval(&lift);
        // q^b Z^d lies in Q^b, so the other rows may be reduced modulo q^b
        let mut rows: Vec<Vec<i64>> = (0..d)
            .map(|j| base.scale(modulus, &base.zeta_pow(j as i64)))
            .collect();
        let mut f_pow = base.one();
        for i in 1..=self.exponent {
            f_pow = base.reduce_mod(&base.mul(&f_pow, &f), modulus);
            let g = base.reduce_mod(
                &base.scale((self.q as i64).pow(self.exponent - i), &f_pow),
                modulus,
            );
            for j in 0..d as i64 {
                rows.push(base.reduce_mod(&base.mul(&g, &base.zeta_pow(j)), modulus));
            }
        }
        IntMatrix::from_rows(d, &rows)
    }
}

/// The additive group of `Z[zeta_k]/Q^b` from its relation lattice, checked
/// against `(Z/q^b)^lambda(q, k)`.
pub fn cyclotomic_quotient_group(quot: &PrimePowerIdealQuotient) -> Result<FinAbGroup> {
    let cok = quot.relations().cokernel();
    let lam = lambda(quot.q, quot.conductor)?;
    let expected = FinAbGroup::elementary(quot.q, quot.exponent, lam)?;
    if cok.free_rank != 0 || cok.group != expected {
        return Err(Error::InvalidModel(format!(
            "quotient has group {} and free rank {}, expected {expected}",
            cok.group, cok.free_rank
        )));
    }
    Ok(cok.group)
}

/// `A = Z[zeta_k] + N` with `N = sum_j Z[zeta_k]/Q_j^{e_j}`, `N^2 = 0`, one
/// block per cyclic factor `Z/q^e` of each `lambda(q, k)`-th root of `H_q`.
/// Then `N_tors = N` and `1 + N` are both isomorphic to `H`.
pub fn build_construction_model(k: u64, h: &FinAbGroup) -> Result<TnModel> {
    let violated = |msg: String| Error::HypothesisViolated(msg);
    if h.primes().contains(&2) {
        return Err(violated(format!("{h} has even order")));
    }
    let mut blocks: Vec<(u64, u32)> = Vec::new();
    for q in h.primes() {
        if k.gcd(&q) != 1 {
            return Err(violated(format!("{q} divides the conductor {k}")));
        }
        let lam = lambda(q, k)?;
        let sylow = h.sylow(q);
        let root = sylow
            .lambda_power_decompose(lam)
            .ok_or_else(|| violated(format!("Sylow {q}-subgroup {sylow} is not a {lam}-power")))?;
        for &(_, e, m) in root.factors() {
            blocks.extend(std::iter::repeat((q, e)).take(m as usize));
        }
    }
    let base = CycloBase::new(k);
    let d = base.degree();
    let mut names = Vec::new();
    let mut orders = Vec::new();
    let mut actions: Vec<Vec<Vec<u64>>> = Vec::new();
    for (b, &(q, e)) in blocks.iter().enumerate() {
        let quot = PrimePowerIdealQuotient::new(k, q, e)?;
        cyclotomic_quotient_group(&quot)?;
        let cok = quot.relations().cokernel();
        let block_gens: Vec<Cyc> = cok
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|c| c.to_i64().expect("small generator"))
                    .collect()
            })
            .collect();
        let act: Vec<Vec<u64>> = block_gens
            .iter()
            .map(|g| {
                let zg: Vec<BigInt> = base
                    .mul(&base.zeta_pow(1), g)
                    .into_iter()
                    .map(BigInt::from)
                    .collect();
                cok.coordinates(&zg)
                    .iter()
                    .map(|c| c.to_u64().expect("reduced coordinate"))
                    .collect()
            })
            .collect();
        for (s, o) in cok.orders.iter().enumerate() {
            names.push(format!("x{b}_{s}"));
            orders.push(o.to_u64().expect("finite order"));
        }
        actions.push(act);
    }
    let t = orders.len();
    let mut action = vec![vec![0u64; t]; t];
    let mut offset = 0;
    for act in &actions {
        for (r, row) in act.iter().enumerate() {
            action[offset + r][offset..offset + row.len()].copy_from_slice(row);
        }
        offset += act.len();
    }
    let elem = |free: Cyc, tors: Vec<u64>| ModelElem {
        free: vec![free],
        tors,
    };
    let mut mult = vec![vec![elem(vec![0; d], vec![0; t]); t + 1]; t + 1];
    mult[0][0] = elem(base.one(), vec![0; t]);
    for l in 0..t {
        let mut y = vec![0u64; t];
        y[l] = 1;
        mult[0][l + 1] = elem(vec![0; d], y.clone());
        mult[l + 1][0] = elem(vec![0; d], y);
    }
    let model = TnModel::new(
        Some(format!("construction k={k} H={h}")),
        k,
        vec!["1".into()],
        names,
        orders,
        action,
        mult,
    )?;
    let additive = model.nil_torsion_additive();
    let adjoint = model.adjoint_of_nil_torsion()?;
    if additive != *h || adjoint != *h {
        return Err(Error::InvalidModel(format!(
            "construction gave N = {additive}, 1 + N = {adjoint}"
        )));
    }
    Ok(model)
}

/// `g(B_tors) + r`: the unit rank of `B[t_1^{+-1}, ..., t_r^{+-1}]`.
pub fn rank_bookkeeping(b_tors: &FinAbGroup, laurent_vars: u64) -> Result<u64> {
    Ok(g_value(b_tors)? + laurent_vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_examples() {
        let g = |k, q, b| {
            cyclotomic_quotient_group(&PrimePowerIdealQuotient::new(k, q, b).unwrap()).unwrap()
        };
        assert_eq!(g(4, 5, 1), FinAbGroup::cyclic(5));
        assert_eq!(g(8, 41, 2), FinAbGroup::cyclic(1681));
        assert_eq!(g(4, 3, 1), FinAbGroup::elementary(3, 1, 2).unwrap());
        assert!(PrimePowerIdealQuotient::new(4, 2, 1).is_err());
    }

    #[test]
    fn construction_examples() {
        let h = FinAbGroup::elementary(3, 1, 2).unwrap();
        let m = build_construction_model(4, &h).unwrap();
        assert_eq!(m.torsion_rank(), 2);
        assert_eq!(m.nil_torsion().unwrap()[0].additive_group(), h);
        let m = build_construction_model(4, &FinAbGroup::cyclic(5)).unwrap();
        assert_eq!(m.adjoint_of_nil_torsion().unwrap(), FinAbGroup::cyclic(5));
        assert!(matches!(
            build_construction_model(4, &FinAbGroup::cyclic(3)),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn bookkeeping_examples() {
        assert_eq!(rank_bookkeeping(&FinAbGroup::cyclic(8), 0).unwrap(), 1);
        assert_eq!(
            rank_bookkeeping(&"Z/8Z x Z/41Z".parse().unwrap(), 0).unwrap(),
            79
        );
        assert_eq!(rank_bookkeeping(&FinAbGroup::cyclic(2), 3).unwrap(), 3);
    }
}
