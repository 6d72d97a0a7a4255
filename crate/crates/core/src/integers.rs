//! Integer substrate: canonical factorization, divisors, gcd, sieving and
//! prime counting, binomial coefficients.
//!
//! Inputs are positive `u64` values of desk scale (up to about 10^9).
//! Anything that can grow beyond that range (binomials, factorials) is
//! returned as a [`BigInt`], and products of components use checked
//! arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Trial divisors cover every n < 2^32 without falling back to odd stepping.
const TRIAL_PRIME_LIMIT: u64 = 1 << 16;

static TRIAL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| sieve_primes(TRIAL_PRIME_LIMIT));

/// Canonical form of a positive integer: `(prime, exponent)` pairs with
/// strictly increasing primes and exponents at least 1. The empty list is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Ω: number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.pairs.iter().map(|&(_, r)| r).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, r)| r == 1)
    }

    /// Multiplies the pairs back together. Fails only on overflow.
    pub fn value(&self) -> Result<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, r)| {
            checked_pow(p, r).and_then(|pr| acc.checked_mul(pr)).ok_or(Error::Overflow("factorization product"))
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, r)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if r == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{r}")?;
            }
        }
        Ok(())
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Factorizes `n` by trial division against a precomputed prime table.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    let mut rest = n;
    let mut pairs = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut r = 0;
        while *rest % p == 0 {
            *rest /= p;
            r += 1;
        }
        if r > 0 {
            pairs.push((p, r));
        }
    };
    for &p in TRIAL_PRIMES.iter() {
        if p * p > rest {
            break;
        }
        push(p, &mut rest);
    }
    // Beyond the table: odd trial division (only reached for n >= 2^32).
    let mut d = TRIAL_PRIME_LIMIT + 1;
    while d.checked_mul(d).is_some_and(|dd| dd <= rest) {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let fac = factorize(n)?;
    Ok(divisors_of(&fac))
}

pub fn divisors_of(fac: &Factorization) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, r) in fac.pairs() {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..r {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// τ(n) = ∏ (r_i + 1).
pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?.pairs().iter().map(|&(_, r)| u64::from(r) + 1).product())
}

pub fn gcd(n: u64, m: u64) -> Result<u64> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroArgument("gcd argument"));
    }
    Ok(num_integer::gcd(n, m))
}

pub fn lcm(n: u64, m: u64) -> Result<u64> {
    let g = gcd(n, m)?;
    (n / g).checked_mul(m).ok_or(Error::Overflow("lcm"))
}

pub fn big_omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.big_omega())
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(factorize(n)?.is_squarefree())
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.pairs() == [(n, 1)]).unwrap_or(false)
}

/// Sieve of Eratosthenes: all primes `<= limit`, ascending.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// π(x): the number of primes `<= x`.
pub fn prime_count(x: u64) -> u64 {
    sieve_primes(x).len() as u64
}

/// Exact binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
