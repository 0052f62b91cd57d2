//! Integer number theory: factorisation, totients, multiplicative orders,
//! cyclotomic polynomials and the coprime factor covers used for cyclic
//! groups.

mod covers;
mod cyclo;
mod modpoly;

pub use covers::{
    mersenne_divisor_set, pearson_schneider_covers, pearson_schneider_covers_par,
    two_power_finite_witness, CoverFactor, PsCover,
};
pub use cyclo::{cyclotomic_poly, cyclotomic_poly_mobius, CycloPoly};
pub use modpoly::{factor_cyclo_mod, PolyMod, FACTOR_SEED};

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Prime factorisation with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u128 {
        self.0.iter().map(|&(p, e)| (p as u128).pow(e)).product()
    }

    /// Prime-power components `p^e`.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.0.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // These twelve bases are a proven witness set below 3.3e24.
    'outer: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Factorises `n >= 1` (trial division by small primes, then Pollard rho).
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize(0)");
    let mut primes = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
    }
    factor_into(m, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Factorization(out)
}

/// Factorises a wider integer, rejecting anything above 2^64.
pub fn factorize_u128(n: u128) -> Result<Factorization> {
    let n = u64::try_from(n).map_err(|_| Error::TooLarge)?;
    Ok(factorize(n))
}

/// Returns `(p, e)` when `n = p^e` with `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let f = factorize(n);
    (f.0.len() == 1).then(|| f.0[0])
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .0
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n).0 {
        let base = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(base.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.0.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.0.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Order of `a` modulo `n`: the least `k >= 1` with `a^k = 1 (mod n)`.
pub fn mult_order(a: u64, n: u64) -> Result<u64> {
    assert!(n >= 1, "modulus must be positive");
    if n == 1 {
        return Ok(1);
    }
    if a.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let mut k = euler_phi(n);
    for (p, _) in factorize(k).0 {
        while k % p == 0 && pow_mod(a, k / p, n) == 1 {
            k /= p;
        }
    }
    Ok(k)
}

/// `q = 2^u + 1` prime for some `u >= 1`.
pub fn is_fermat_prime(q: u64) -> bool {
    q >= 3 && (q - 1).is_power_of_two() && is_prime(q)
}

/// `2^u + 1` is prime (without overflowing for large `u`).
pub fn fermat_number_is_prime(u: u32) -> bool {
    u >= 1 && u < 64 && is_fermat_prime((1u64 << u) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_order(a: u64, n: u64) -> u64 {
        let mut x = a % n;
        let mut k = 1;
        while x != 1 % n {
            x = x * a % n;
            k += 1;
        }
        k
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(3, 4).unwrap(), 2);
        assert_eq!(mult_order(41, 8).unwrap(), 1);
        assert_eq!(mult_order(2, 15).unwrap(), 4);
        assert_eq!(mult_order(5, 1).unwrap(), 1);
        assert_eq!(mult_order(6, 9), Err(Error::NotCoprime { a: 6, n: 9 }));
    }

    #[test]
    fn order_divides_phi_and_matches_powering() {
        for n in (1..2000u64).step_by(7) {
            for a in [2u64, 3, 5, 10, 41, 97] {
                if a.gcd(&n) != 1 {
                    continue;
                }
                let k = mult_order(a, n).unwrap();
                assert_eq!(euler_phi(n) % k, 0);
                assert_eq!(k, naive_order(a, n), "a={a} n={n}");
            }
        }
    }

    #[test]
    fn totients() {
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(328), 160);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn fermat() {
        assert!(is_fermat_prime(17));
        assert!(!is_fermat_prime(33));
        assert!(is_fermat_prime(5));
        assert!(is_fermat_prime(65537));
        assert!(!is_fermat_prime(7));
        let us: Vec<u32> = (0..=40).filter(|&u| fermat_number_is_prime(u)).collect();
        assert_eq!(us, vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn factorisation_reconstructs() {
        for n in [1u64, 2, 600, 328, 65537, 1 << 40, 999_999_000_001, u64::MAX] {
            let f = factorize(n);
            assert_eq!(f.value(), n as u128);
            assert!(f.0.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.0.iter().all(|&(p, e)| is_prime(p) && e >= 1));
        }
        assert_eq!(factorize_u128(1u128 << 70), Err(Error::TooLarge));
    }

    #[test]
    fn primality_small_agrees_with_sieve() {
        let n = 5000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), s, "{i}");
        }
    }
}
