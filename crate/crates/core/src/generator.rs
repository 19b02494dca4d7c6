//! Seeded construction of TN and non-TN vectors.
//!
//! `S(X)` is TN exactly when every prime's exponent sequence along `X` is
//! monotone, so TN vectors are built from monotone exponent profiles and
//! non-TN vectors by planting a `0, 1, 0` bump of a fresh prime. Each call is
//! a pure function of its seed; [`derive_seed`] splits one seed into
//! independent streams for parallel corpus generation.

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::num_theory::{is_prime, is_prime_u64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

impl Direction {
    pub fn admits(self, seq: &[u32]) -> bool {
        seq.windows(2).all(|w| match self {
            Direction::NonDecreasing => w[0] <= w[1],
            Direction::NonIncreasing => w[0] >= w[1],
        })
    }
}

/// Per-prime exponent sequences of a vector of length `len`, each monotone
/// in its declared direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentProfile {
    primes: Vec<BigUint>,
    sequences: Vec<Vec<u32>>,
    directions: Vec<Direction>,
    len: usize,
}

impl ExponentProfile {
    pub fn new(
        primes: Vec<BigUint>,
        sequences: Vec<Vec<u32>>,
        directions: Vec<Direction>,
        len: usize,
    ) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidProfile("length must be at least 1".into()));
        }
        if primes.len() != sequences.len() || primes.len() != directions.len() {
            return Err(Error::InvalidProfile(format!(
                "{} primes, {} sequences and {} directions",
                primes.len(),
                sequences.len(),
                directions.len()
            )));
        }
        let mut sorted = primes.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidProfile("primes must be distinct".into()));
        }
        for ((p, seq), dir) in primes.iter().zip(&sequences).zip(&directions) {
            if !is_prime(p) {
                return Err(Error::InvalidProfile(format!("{p} is not prime")));
            }
            if seq.len() != len {
                return Err(Error::InvalidProfile(format!(
                    "sequence for {p} has length {}, expected {len}",
                    seq.len()
                )));
            }
            if !dir.admits(seq) {
                return Err(Error::InvalidProfile(format!(
                    "sequence for {p} is not {}",
                    match dir {
                        Direction::NonDecreasing => "non-decreasing",
                        Direction::NonIncreasing => "non-increasing",
                    }
                )));
            }
        }
        Ok(Self {
            primes,
            sequences,
            directions,
            len,
        })
    }

    /// Infers each direction from the sequence itself, preferring
    /// non-decreasing for constant sequences.
    pub fn monotone(primes: Vec<BigUint>, sequences: Vec<Vec<u32>>, len: usize) -> Result<Self> {
        let directions = sequences
            .iter()
            .map(|s| {
                if Direction::NonDecreasing.admits(s) {
                    Direction::NonDecreasing
                } else {
                    Direction::NonIncreasing
                }
            })
            .collect();
        Self::new(primes, sequences, directions, len)
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    pub fn sequences(&self) -> &[Vec<u32>] {
        &self.sequences
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// `x_i = ∏ p^{e_p(i)}`.
pub fn synthesize(profile: &ExponentProfile) -> Vec<BigUint> {
    (0..profile.len)
        .map(|i| {
            profile
                .primes
                .iter()
                .zip(&profile.sequences)
                .fold(BigUint::one(), |acc, (p, seq)| acc * p.pow(seq[i]))
        })
        .collect()
}

/// The seed of the `index`-th independent stream derived from `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

fn first_primes(count: usize) -> Vec<u64> {
    (2u64..).filter(|&v| is_prime_u64(v)).take(count).collect()
}

fn check_positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::InvalidParameter(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

// Primes are drawn from the first `prime_count + PRIME_POOL_SLACK` primes.
const PRIME_POOL_SLACK: usize = 4;

fn choose_primes(rng: &mut ChaCha8Rng, count: usize) -> Vec<u64> {
    let pool = first_primes(count + PRIME_POOL_SLACK);
    let mut picked: Vec<u64> = sample(rng, pool.len(), count)
        .into_iter()
        .map(|i| pool[i])
        .collect();
    picked.sort_unstable();
    picked
}

fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    if rng.random::<bool>() {
        Direction::NonDecreasing
    } else {
        Direction::NonIncreasing
    }
}

fn orient(mut seq: Vec<u32>, dir: Direction) -> Vec<u32> {
    if dir == Direction::NonIncreasing {
        seq.reverse();
    }
    seq
}

fn build_profile(
    primes: &[u64],
    sequences: Vec<Vec<u32>>,
    directions: Vec<Direction>,
    n: usize,
) -> ExponentProfile {
    ExponentProfile::new(
        primes.iter().map(|&p| BigUint::from(p)).collect(),
        sequences,
        directions,
        n,
    )
    .expect("sampled profiles are monotone by construction")
}

/// A TN vector of length `n` over `prime_count` primes with exponents in
/// `0..=max_exponent`; each prime's direction is drawn independently.
pub fn sample_tn_profile(
    n: usize,
    prime_count: usize,
    max_exponent: u32,
    seed: u64,
) -> Result<ExponentProfile> {
    check_positive("n", n)?;
    check_positive("prime count", prime_count)?;
    check_positive("max exponent", max_exponent as usize)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = choose_primes(&mut rng, prime_count);
    let mut sequences = Vec::with_capacity(prime_count);
    let mut directions = Vec::with_capacity(prime_count);
    for _ in 0..prime_count {
        let dir = random_direction(&mut rng);
        let mut seq: Vec<u32> = (0..n).map(|_| rng.random_range(0..=max_exponent)).collect();
        seq.sort_unstable();
        sequences.push(orient(seq, dir));
        directions.push(dir);
    }
    Ok(build_profile(&primes, sequences, directions, n))
}

pub fn sample_tn(n: usize, prime_count: usize, max_exponent: u32, seed: u64) -> Result<Vec<BigUint>> {
    Ok(synthesize(&sample_tn_profile(n, prime_count, max_exponent, seed)?))
}

/// Like [`sample_tn_profile`] but with pairwise distinct entries: every
/// step along `X` moves at least one prime. Needs
/// `n - 1 <= prime_count * max_exponent`.
pub fn sample_tn_distinct_profile(
    n: usize,
    prime_count: usize,
    max_exponent: u32,
    seed: u64,
) -> Result<ExponentProfile> {
    check_positive("n", n)?;
    check_positive("prime count", prime_count)?;
    check_positive("max exponent", max_exponent as usize)?;
    let capacity = prime_count as u64 * u64::from(max_exponent);
    if (n - 1) as u64 > capacity {
        return Err(Error::InvalidParameter(format!(
            "{n} distinct entries need more than {prime_count} primes with exponents up to {max_exponent}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = choose_primes(&mut rng, prime_count);
    // steps[t][s]: whether prime t moves between positions s and s+1
    let mut budget = vec![max_exponent; prime_count];
    let mut steps = vec![vec![false; n.saturating_sub(1)]; prime_count];
    #[allow(clippy::needless_range_loop)]
    for s in 0..n - 1 {
        let open: Vec<usize> = (0..prime_count).filter(|&t| budget[t] > 0).collect();
        // keep enough budget for the remaining steps
        let remaining_after = (n - 2 - s) as u64;
        let forced = open[rng.random_range(0..open.len())];
        steps[forced][s] = true;
        budget[forced] -= 1;
        for &t in &open {
            let spare: u64 = budget.iter().map(|&b| u64::from(b)).sum();
            if t != forced && budget[t] > 0 && spare > remaining_after && rng.random_bool(0.25) {
                steps[t][s] = true;
                budget[t] -= 1;
            }
        }
    }
    let mut sequences = Vec::with_capacity(prime_count);
    let mut directions = Vec::with_capacity(prime_count);
    for (t, moves) in steps.into_iter().enumerate() {
        // a strictly-moving step must stay a move after orientation, so
        // decreasing sequences count down rather than being reversed
        let dir = random_direction(&mut rng);
        let delta: i64 = match dir {
            Direction::NonDecreasing => 1,
            Direction::NonIncreasing => -1,
        };
        let used = moves.iter().filter(|&&m| m).count() as u32;
        let low = rng.random_range(0..=budget[t]);
        let mut e = i64::from(if delta > 0 { low } else { low + used });
        let mut seq = Vec::with_capacity(n);
        seq.push(e as u32);
        for m in moves {
            if m {
                e += delta;
            }
            seq.push(e as u32);
        }
        sequences.push(seq);
        directions.push(dir);
    }
    Ok(build_profile(&primes, sequences, directions, n))
}

pub fn sample_tn_distinct(
    n: usize,
    prime_count: usize,
    max_exponent: u32,
    seed: u64,
) -> Result<Vec<BigUint>> {
    Ok(synthesize(&sample_tn_distinct_profile(
        n,
        prime_count,
        max_exponent,
        seed,
    )?))
}

/// A vector of length `n >= 3` whose GCD matrix is not TN: a TN base vector
/// with one interior entry multiplied by a prime that divides no other
/// entry. With `distinct`, entries are pairwise distinct.
pub fn sample_non_tn(n: usize, seed: u64, distinct: bool) -> Result<Vec<BigUint>> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "every GCD matrix of order at most 2 is TN; n must be at least 3".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_exponent = rng.random_range(1..=3u32);
    let min_primes = if distinct {
        (n - 1).div_ceil(max_exponent as usize)
    } else {
        1
    };
    let prime_count = rng.random_range(min_primes..=min_primes + 2);
    let base_seed = rng.next_u64();
    let profile = if distinct {
        sample_tn_distinct_profile(n, prime_count, max_exponent, base_seed)?
    } else {
        sample_tn_profile(n, prime_count, max_exponent, base_seed)?
    };
    let largest = profile
        .primes()
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(BigUint::one);
    let mut fresh = largest + 1u32;
    while !is_prime(&fresh) {
        fresh += 1u32;
    }
    let mut xs = synthesize(&profile);
    let bump = rng.random_range(1..n - 1);
    xs[bump] *= fresh;
    Ok(xs)
}
