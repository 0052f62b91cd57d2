//! `Z[zeta_k]` in the power basis `1, zeta, ..., zeta^{phi(k)-1}`.

use crate::numtheory::cyclotomic_poly;
use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloBase {
    k: u64,
    /// `Phi_k`, constant term first
    phi: Vec<i64>,
}

/// An element of the base, `phi(k)` integer coordinates.
pub type Cyc = Vec<i64>;

impl CycloBase {
    pub fn new(k: u64) -> Self {
        assert!(k >= 1, "conductor must be positive");
        CycloBase {
            k,
            phi: cyclotomic_poly(k).coeffs,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Cyc {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Cyc {
        self.zeta_pow(0)
    }

    /// `zeta^j` for any integer `j`.
    pub fn zeta_pow(&self, j: i64) -> Cyc {
        let j = j.rem_euclid(self.k as i64) as usize;
        let mut v = vec![0i64; j + 1];
        v[j] = 1;
        self.reduce(v.into_iter().map(i128::from).collect())
    }

    /// The roots of unity of `Z[zeta_k]`: `+-zeta^j`, `lcm(2, k)` of them.
    pub fn roots_of_unity(&self) -> Vec<Cyc> {
        let w = self.k.lcm(&2);
        let mut out: Vec<Cyc> = Vec::new();
        for j in 0..self.k as i64 {
            for s in [1, -1] {
                let z = self.scale(s, &self.zeta_pow(j));
                if !out.contains(&z) {
                    out.push(z);
                }
            }
        }
        debug_assert_eq!(out.len() as u64, w);
        out
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, s: i64, a: &[i64]) -> Cyc {
        a.iter().map(|x| s * x).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Cyc {
        let d = self.degree();
        let mut prod = vec![0i128; (2 * d).saturating_sub(1).max(1)];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as i128 * y as i128;
            }
        }
        self.reduce(prod)
    }

    /// `a` with every coordinate reduced into `[0, m)`.
    pub fn reduce_mod(&self, a: &[i64], m: i64) -> Cyc {
        a.iter().map(|c| c.rem_euclid(m)).collect()
    }

    /// Reduction of a coefficient vector modulo the monic `Phi_k`.
    fn reduce(&self, mut v: Vec<i128>) -> Cyc {
        let d = self.degree();
        for top in (d..v.len()).rev() {
            let c = v[top];
            if c != 0 {
                for (t, &f) in self.phi.iter().enumerate() {
                    v[top - d + t] -= c * f as i128;
                }
            }
        }
        v.resize(d, 0);
        v.into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coordinate overflow"))
            .collect()
    }

    /// Value of an integer polynomial at `zeta`.
    pub fn eval(&self, poly: &[i64]) -> Cyc {
        self.reduce(poly.iter().map(|&c| c as i128).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gaussian_integers() {
        let b = CycloBase::new(4);
        let i = b.zeta_pow(1);
        assert_eq!(b.mul(&i, &i), vec![-1, 0]);
        assert_eq!(b.roots_of_unity().len(), 4);
        let z3 = CycloBase::new(3);
        assert_eq!(z3.roots_of_unity().len(), 6);
        assert_eq!(CycloBase::new(1).roots_of_unity(), vec![vec![1], vec![-1]]);
    }

    proptest! {
        #[test]
        fn zeta_has_order_k(k in 1u64..40) {
            let b = CycloBase::new(k);
            let z = b.zeta_pow(1);
            let mut x = b.one();
            for j in 1..=k {
                x = b.mul(&x, &z);
                prop_assert_eq!(x == b.one(), j == k);
            }
        }

        #[test]
        fn mul_is_associative(k in 1u64..20, a in prop::collection::vec(-3i64..4, 20),
                              c in prop::collection::vec(-3i64..4, 20), e in prop::collection::vec(-3i64..4, 20)) {
            let b = CycloBase::new(k);
            let d = b.degree();
            let (a, c, e) = (&a[..d], &c[..d], &e[..d]);
            prop_assert_eq!(b.mul(&b.mul(a, c), e), b.mul(a, &b.mul(c, e)));
        }
    }
}
