//! Stock constructions: `Z/n`, finite fields, polynomial quotients,
//! products and unitisations of radical rings.

use super::{Elem, FinCommRing};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, PolyMod};
use crate::radical::RadicalRing;
use num_bigint::BigUint;

impl FinCommRing {
    pub fn zn(n: u64) -> Result<Self> {
        FinCommRing::new(vec![n], vec![vec![vec![1 % n]]], vec![1 % n])
    }

    /// `F_{p^lambda}` as `F_p[x]/(f)` for the first monic irreducible `f`
    /// of degree `lambda` in lexicographic order.
    pub fn field(p: u64, lambda: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if lambda == 0 {
            return Err(Error::InvalidRing("field degree must be positive".into()));
        }
        let base = FinCommRing::zn(p)?;
        if lambda == 1 {
            return Ok(base);
        }
        let f = first_irreducible(p, lambda as usize);
        let coeffs: Vec<Elem> = f.into_iter().map(|c| vec![c]).collect();
        FinCommRing::poly_quotient(&base, &coeffs)
    }

    /// `base[x]/(f)` for monic `f`, coefficients listed from the constant
    /// term up. The basis is `e_i x^a`, blocks ordered by `a`.
    pub fn poly_quotient(base: &FinCommRing, f: &[Elem]) -> Result<Self> {
        let d = f
            .len()
            .checked_sub(1)
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::InvalidRing("modulus must have positive degree".into()))?;
        if f[d] != base.one() {
            return Err(Error::InvalidRing("modulus must be monic".into()));
        }
        let r = base.dim();
        let orders: Vec<u64> = (0..d)
            .flat_map(|_| base.basis_orders().iter().copied())
            .collect();
        // polynomial product of coefficient vectors, reduced mod f
        let poly_mul = |a: &[Elem], b: &[Elem]| -> Vec<Elem> {
            let mut prod = vec![base.zero(); 2 * d - 1];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    prod[i + j] = base.add(&prod[i + j], &base.mul(ai, bj));
                }
            }
            for k in (d..prod.len()).rev() {
                let lead = prod[k].clone();
                for (t, ft) in f[..d].iter().enumerate() {
                    let sub = base.mul(&lead, ft);
                    prod[k - d + t] = base.sub(&prod[k - d + t], &sub);
                }
                prod[k] = base.zero();
            }
            prod.truncate(d);
            prod
        };
        let unit = |i: usize, a: usize| -> Vec<Elem> {
            let mut v = vec![base.zero(); d];
            v[a] = base.basis_elem(i);
            v
        };
        let flatten = |v: Vec<Elem>| -> Elem { v.into_iter().flatten().collect() };
        let n = r * d;
        let mut mult = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                let (i, a) = (s % r, s / r);
                let (j, b) = (t % r, t / r);
                mult[s][t] = flatten(poly_mul(&unit(i, a), &unit(j, b)));
            }
        }
        let mut one = vec![base.zero(); d];
        one[0] = base.one();
        FinCommRing::new(orders, mult, flatten(one))
    }

    /// Direct product.
    pub fn product(&self, other: &FinCommRing) -> Result<Self> {
        let (r, s) = (self.dim(), other.dim());
        let orders: Vec<u64> = self
            .basis_orders()
            .iter()
            .chain(other.basis_orders())
            .copied()
            .collect();
        let mut mult = vec![vec![vec![0u64; r + s]; r + s]; r + s];
        for i in 0..r {
            for j in 0..r {
                mult[i][j][..r].copy_from_slice(&self.structure_constants()[i][j]);
            }
        }
        for i in 0..s {
            for j in 0..s {
                mult[r + i][r + j][r..].copy_from_slice(&other.structure_constants()[i][j]);
            }
        }
        let one: Elem = self.one().into_iter().chain(other.one()).collect();
        FinCommRing::new(orders, mult, one)
    }

    /// `Z/p^e + N` with `(a, x)(b, y) = (ab, ay + bx + xy)`, a local ring
    /// with maximal ideal `pZ/p^e + N` and residue field `F_p`. Needs
    /// `p^e N = 0`.
    pub fn unitisation(e: u32, n: &RadicalRing) -> Result<Self> {
        let p = n.p();
        if n.exps().iter().any(|&x| x > e) {
            return Err(Error::InvalidRing(format!(
                "p^{e} does not kill the radical ring"
            )));
        }
        let k = n.dim();
        let mut orders = vec![p.pow(e)];
        orders.extend(n.basis_orders());
        let mut mult = vec![vec![vec![0u64; k + 1]; k + 1]; k + 1];
        mult[0][0][0] = 1 % orders[0];
        for i in 0..k {
            mult[0][i + 1][i + 1] = 1;
            mult[i + 1][0][i + 1] = 1;
            for j in 0..k {
                let c = &n.structure_constants()[i][j];
                mult[i + 1][j + 1][1..].copy_from_slice(c);
            }
        }
        let mut one = vec![0u64; k + 1];
        one[0] = 1 % orders[0];
        FinCommRing::new(orders, mult, one)
    }
}

/// Rabin's test: `f` of degree `d` is irreducible over `F_p` iff
/// `x^{p^d} = x mod f` and `gcd(x^{p^{d/q}} - x, f) = 1` for primes `q | d`.
fn is_irreducible(f: &PolyMod, p: u64, d: usize) -> bool {
    let x = PolyMod::x(p);
    let frob = |k: usize| -> PolyMod {
        let e = BigUint::from(p).pow(k as u32);
        x.pow_mod(&e, f).sub(&x).rem(f)
    };
    if !frob(d).is_zero() {
        return false;
    }
    factorize(d as u64).0.iter().all(|&(q, _)| {
        let g = frob(d / q as usize).gcd(f);
        g.degree() == Some(0)
    })
}

fn first_irreducible(p: u64, d: usize) -> Vec<u64> {
    let total = p.pow(d as u32);
    for v in 0..total {
        let mut coeffs: Vec<u64> = (0..d).map(|i| (v / p.pow(i as u32)) % p).collect();
        coeffs.push(1);
        let f = PolyMod::new(p, coeffs.clone());
        if is_irreducible(&f, p, d) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;

    #[test]
    fn fields_have_cyclic_units() {
        for (p, l) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)] {
            let f = FinCommRing::field(p, l).unwrap();
            assert_eq!(f.size(), (p as u128).pow(l));
            assert_eq!(f.unit_group().unwrap(), FinAbGroup::cyclic(p.pow(l) - 1));
        }
    }

    #[test]
    fn products_and_unitisations() {
        let r = FinCommRing::zn(4)
            .unwrap()
            .product(&FinCommRing::zn(3).unwrap())
            .unwrap();
        assert_eq!(
            r.unit_group().unwrap(),
            FinAbGroup::elementary(2, 1, 2).unwrap()
        );
        // Z/4 + 2Z/8Z-like radical: x^2 = 2x
        let n = RadicalRing::pz_mod(2, 3).unwrap();
        let a = FinCommRing::unitisation(2, &n).unwrap();
        assert_eq!(a.size(), 16);
        assert!(FinCommRing::unitisation(1, &n).is_err());
    }

    #[test]
    fn truncated_polynomials() {
        // F_4[t]/(t^2): units F_4^* x (1 + tF_4) = Z/3 x (Z/2)^2
        let f4 = FinCommRing::field(2, 2).unwrap();
        let (z, o) = (f4.zero(), f4.one());
        let r = FinCommRing::poly_quotient(&f4, &[z.clone(), z, o]).unwrap();
        let expect = FinAbGroup::cyclic(3).product(&FinAbGroup::elementary(2, 1, 2).unwrap());
        assert_eq!(r.unit_group().unwrap(), expect);
    }
}
