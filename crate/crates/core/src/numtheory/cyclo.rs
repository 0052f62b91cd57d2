use super::{divisors, euler_phi, mobius};
use serde::{Deserialize, Serialize};

/// The cyclotomic polynomial `Phi_n`, coefficients listed from the constant
/// term upwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloPoly {
    pub n: u64,
    pub coeffs: Vec<i64>,
}

impl CycloPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

pub(crate) fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
pub(crate) fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        assert!(rem.iter().all(|&c| c == 0));
        return vec![0];
    }
    let mut quot = vec![0i128; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

fn x_pow_minus_one(n: usize) -> Vec<i128> {
    let mut v = vec![0i128; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

fn narrow(v: Vec<i128>, n: u64) -> CycloPoly {
    CycloPoly {
        n,
        coeffs: v
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
            .collect(),
    }
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u64) -> CycloPoly {
    assert!(n >= 1);
    let mut num = x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d: Vec<i128> = cyclotomic_poly(d)
            .coeffs
            .iter()
            .map(|&c| c as i128)
            .collect();
        num = poly_div_exact(&num, &phi_d);
    }
    let out = narrow(num, n);
    debug_assert_eq!(out.degree() as u64, euler_phi(n));
    out
}

/// `Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}`, an independent route.
pub fn cyclotomic_poly_mobius(n: u64) -> CycloPoly {
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d as usize)),
            -1 => den = poly_mul(&den, &x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    // den is monic up to sign (-1)^k
    let lead = *den.last().unwrap();
    if lead == -1 {
        den.iter_mut().for_each(|c| *c = -*c);
        num.iter_mut().for_each(|c| *c = -*c);
    }
    narrow(poly_div_exact(&num, &den), n)
}
