//! Integer number theory on arbitrary-precision naturals: gcd, trial-division
//! factorization, prime exponents, Euler's totient and divisor sets.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sparse prime factorization of a positive integer.
///
/// Primes are strictly increasing and every stored exponent is at least one;
/// the factorization of `1` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    factors: Vec<(BigUint, u32)>,
}

impl PrimeFactorization {
    /// Builds a factorization from `(prime, exponent)` pairs, validating the
    /// ordering, primality and exponent invariants.
    pub fn from_factors(factors: Vec<(BigUint, u32)>) -> Result<Self> {
        for (idx, (p, e)) in factors.iter().enumerate() {
            if *e == 0 {
                return Err(Error::InvalidParameter(format!("exponent of {p} is zero")));
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p.clone()));
            }
            if idx > 0 && factors[idx - 1].0 >= *p {
                return Err(Error::InvalidParameter(
                    "primes must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> + '_ {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Exponent of `p`, zero when `p` does not occur.
    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|idx| self.factors[idx].1)
            .unwrap_or(0)
    }

    /// The integer `∏ p^e`.
    pub fn reconstruct(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (idx, (p, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn ensure_positive(x: &BigUint) -> Result<()> {
    if x.is_zero() {
        Err(Error::ZeroInput)
    } else {
        Ok(())
    }
}

pub fn gcd(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    ensure_positive(a)?;
    ensure_positive(b)?;
    Ok(a.gcd(b))
}

/// Left fold of [`gcd`] over a nonempty list.
pub fn gcd_many(xs: &[BigUint]) -> Result<BigUint> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyInput)?;
    ensure_positive(first)?;
    rest.iter().try_fold(first.clone(), |acc, x| {
        ensure_positive(x)?;
        Ok(acc.gcd(x))
    })
}

pub fn lcm(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    ensure_positive(a)?;
    ensure_positive(b)?;
    Ok(a.lcm(b))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
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

const WITNESS_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in WITNESS_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for a in WITNESS_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test. Exact below 2^64; above that a strong probable-prime test
/// to the first twelve prime bases.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for a in WITNESS_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Candidate trial divisors 2, 3, 5, 7, 11, 13, ... (a 6k±1 wheel).
fn trial_divisors() -> impl Iterator<Item = u64> {
    [2u64, 3].into_iter().chain((1u64..).flat_map(|k| [6 * k - 1, 6 * k + 1]))
}

// Below this, plain trial division is cheaper than a primality test.
const PRIMALITY_SHORTCUT: u64 = 1 << 24;

fn factorize_u64(mut x: u64, out: &mut Vec<(BigUint, u32)>) {
    let mut cofactor_changed = true;
    for d in trial_divisors() {
        if x == 1 {
            return;
        }
        if d.saturating_mul(d) > x
            || (cofactor_changed && x > PRIMALITY_SHORTCUT && is_prime_u64(x))
        {
            out.push((BigUint::from(x), 1));
            return;
        }
        cofactor_changed = false;
        let mut e = 0;
        while x.is_multiple_of(d) {
            x /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
            cofactor_changed = true;
        }
    }
}

// Big cofactors are trial divided this far before primality tests start.
const BIG_TRIAL_LIMIT: u64 = 1 << 16;

/// Removes the full power of `p` from `rest` and returns its exponent, using
/// divisions by `p^(2^k)` so large exponents cost `O(log e)` divisions.
fn strip_power(rest: &mut BigUint, p: &BigUint) -> u32 {
    if !(&*rest % p).is_zero() {
        return 0;
    }
    let mut powers = vec![p.clone()];
    loop {
        let last = powers.last().expect("powers starts non-empty");
        let next = last * last;
        if next.bits() > rest.bits() || !(&*rest % &next).is_zero() {
            break;
        }
        powers.push(next);
    }
    // p^(2^K) | rest but p^(2^(K+1)) does not, so each power divides at most once
    let mut e = 0;
    for (k, pk) in powers.iter().enumerate().rev() {
        let (q, r) = rest.div_rem(pk);
        if r.is_zero() {
            *rest = q;
            e += 1 << k;
        }
    }
    e
}

/// Prime factorization by trial division.
///
/// Cost is governed by the second-largest prime factor, so anything built from
/// small primes factors quickly regardless of size.
pub fn factorize(x: &BigUint) -> Result<PrimeFactorization> {
    ensure_positive(x)?;
    let mut factors = Vec::new();
    let mut rest = x.clone();
    let mut untested = true;
    for d in trial_divisors() {
        if let Some(small) = rest.to_u64() {
            // every prime below d is already removed
            factorize_u64(small, &mut factors);
            break;
        }
        if d > BIG_TRIAL_LIMIT && untested {
            if is_prime(&rest) {
                factors.push((rest, 1));
                break;
            }
            untested = false;
        }
        let big_d = BigUint::from(d);
        let e = strip_power(&mut rest, &big_d);
        if e > 0 {
            factors.push((big_d, e));
            untested = true;
        }
    }
    Ok(PrimeFactorization { factors })
}

/// Exact power of the prime `p` dividing `x`.
pub fn exponent_of(x: &BigUint, p: &BigUint) -> Result<u32> {
    ensure_positive(x)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(strip_power(&mut x.clone(), p))
}

/// Euler's totient through the factorization, `∏ p^(e-1) (p-1)`.
pub fn euler_phi(x: &BigUint) -> Result<BigUint> {
    Ok(phi_from_factorization(&factorize(x)?))
}

pub fn phi_from_factorization(f: &PrimeFactorization) -> BigUint {
    f.factors().iter().fold(BigUint::one(), |acc, (p, e)| {
        acc * p.pow(e - 1) * (p - 1u32)
    })
}

/// Number of divisors, `σ₀`.
pub fn divisor_count(x: &BigUint) -> Result<BigUint> {
    let f = factorize(x)?;
    Ok(f.factors()
        .iter()
        .fold(BigUint::one(), |acc, (_, e)| acc * (e + 1)))
}

/// Sum of divisors, `σ₁`.
pub fn divisor_sum(x: &BigUint) -> Result<BigUint> {
    let f = factorize(x)?;
    Ok(f.factors().iter().fold(BigUint::one(), |acc, (p, e)| {
        // (p^(e+1) - 1) / (p - 1)
        acc * ((p.pow(e + 1) - 1u32) / (p - 1u32))
    }))
}

/// All divisors of `x` in increasing order.
pub fn divisors(x: &BigUint) -> Result<Vec<BigUint>> {
    let f = factorize(x)?;
    let mut out = vec![BigUint::one()];
    for (p, e) in f.factors() {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut power = d.clone();
            next.push(power.clone());
            for _ in 0..*e {
                power *= p;
                next.push(power.clone());
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Sorted, duplicate-free union of the divisors of every element of `xs`.
pub fn divisor_closure(xs: &[BigUint]) -> Result<Vec<BigUint>> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut all = BTreeSet::new();
    for x in xs {
        all.extend(divisors(x)?);
    }
    Ok(all.into_iter().collect())
}

/// Converts a slice of machine integers into naturals.
pub fn naturals(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().copied().map(BigUint::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn brute_phi(x: u64) -> u64 {
        (1..=x).filter(|k| k.gcd(&x) == 1).count() as u64
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&n(1), &n(17)).unwrap(), n(1));
        assert_eq!(gcd(&n(12), &n(18)).unwrap(), n(6));
        assert_eq!(gcd(&n(35), &n(35)).unwrap(), n(35));
        assert_eq!(gcd(&n(0), &n(3)), Err(Error::ZeroInput));
        assert_eq!(gcd(&n(3), &n(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn gcd_many_examples() {
        assert_eq!(gcd_many(&naturals(&[4, 6, 10])).unwrap(), n(2));
        assert_eq!(gcd_many(&naturals(&[9])).unwrap(), n(9));
        assert_eq!(gcd_many(&naturals(&[2, 3, 5])).unwrap(), n(1));
        assert_eq!(gcd_many(&[]), Err(Error::EmptyInput));
        assert_eq!(gcd_many(&naturals(&[4, 0])), Err(Error::ZeroInput));
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(&n(1)).unwrap().is_empty());
        let f = factorize(&n(12)).unwrap();
        assert_eq!(f.factors(), &[(n(2), 2), (n(3), 1)]);
        assert_eq!(f.to_string(), "2^2 * 3");
        assert_eq!(factorize(&n(97)).unwrap().factors(), &[(n(97), 1)]);
        assert_eq!(factorize(&n(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn factorize_beyond_u64() {
        let x = n(2).pow(100) * n(3).pow(7) * n(1_000_003);
        let f = factorize(&x).unwrap();
        assert_eq!(f.factors(), &[(n(2), 100), (n(3), 7), (n(1_000_003), 1)]);
        assert_eq!(f.reconstruct(), x);
        // a prime cofactor above 2^64 is detected without trial division
        let p = n(2).pow(89) - 1u32;
        let f = factorize(&(&p * n(6))).unwrap();
        assert_eq!(f.factors(), &[(n(2), 1), (n(3), 1), (p, 1)]);
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exponent_of(&n(8), &n(2)).unwrap(), 3);
        assert_eq!(exponent_of(&n(9), &n(2)).unwrap(), 0);
        assert_eq!(exponent_of(&n(12), &n(3)).unwrap(), 1);
        assert_eq!(exponent_of(&n(12), &n(4)), Err(Error::NotPrime(n(4))));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(&n(1)).unwrap(), n(1));
        assert_eq!(euler_phi(&n(12)).unwrap(), n(4));
        for p in [2u64, 3, 5, 7, 97, 7919] {
            assert_eq!(euler_phi(&n(p)).unwrap(), n(p - 1));
        }
    }

    #[test]
    fn divisor_closure_examples() {
        assert_eq!(divisor_closure(&naturals(&[6])).unwrap(), naturals(&[1, 2, 3, 6]));
        assert_eq!(
            divisor_closure(&naturals(&[4, 6])).unwrap(),
            naturals(&[1, 2, 3, 4, 6])
        );
        assert_eq!(divisor_closure(&naturals(&[1])).unwrap(), naturals(&[1]));
        assert_eq!(divisor_closure(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn sigma_functions() {
        assert_eq!(divisor_count(&n(12)).unwrap(), n(6));
        assert_eq!(divisor_sum(&n(12)).unwrap(), n(28));
        assert_eq!(divisor_sum(&n(1)).unwrap(), n(1));
    }

    #[test]
    fn primality_against_sieve() {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=limit {
            if sieve[i] {
                for j in (i * i..=limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(i as u64), expected, "{i}");
        }
        // strong pseudoprime to base 2
        assert!(!is_prime_u64(2047));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn totient_sum_identity() {
        for x in 1..=10_000u64 {
            let total: BigUint = divisors(&n(x))
                .unwrap()
                .iter()
                .map(|d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(total, n(x), "sum of phi over divisors of {x}");
        }
    }

    #[test]
    fn factorization_reconstructs_up_to_a_million() {
        for x in 1..=1_000_000u64 {
            let f = factorize(&n(x)).unwrap();
            assert_eq!(f.reconstruct(), n(x));
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors().iter().all(|(p, e)| *e >= 1 && is_prime(p)));
        }
    }

    #[test]
    fn phi_matches_coprime_count() {
        for x in 1..=5000u64 {
            assert_eq!(euler_phi(&n(x)).unwrap(), n(brute_phi(x)), "phi({x})");
        }
    }

    proptest! {
        #[test]
        fn gcd_is_greatest_common_divisor(a in 1u64..=10_000, b in 1u64..=10_000) {
            let g = gcd(&n(a), &n(b)).unwrap().to_u64().unwrap();
            prop_assert_eq!(a % g, 0);
            prop_assert_eq!(b % g, 0);
            for d in 1..=a.min(b) {
                if a % d == 0 && b % d == 0 {
                    prop_assert_eq!(g % d, 0);
                }
            }
        }

        #[test]
        fn gcd_many_is_order_independent(mut xs in proptest::collection::vec(1u64..5000, 1..8)) {
            let forward = gcd_many(&naturals(&xs)).unwrap();
            xs.reverse();
            prop_assert_eq!(gcd_many(&naturals(&xs)).unwrap(), forward);
        }

        #[test]
        fn exponent_shifts_by_one(x in 1u64..1_000_000, idx in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][idx];
            let before = exponent_of(&n(x), &n(p)).unwrap();
            let after = exponent_of(&n(x * p), &n(p)).unwrap();
            prop_assert_eq!(after, before + 1);
        }
    }
}
