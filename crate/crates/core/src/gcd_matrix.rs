//! GCD matrices `S(X) = (gcd(x_i, x_j))`, the divisor-closure factorization
//! `S = E diag(φ) Eᵀ`, and Smith's determinant.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{det, ExactRational, RationalMatrix};
use crate::num_theory::{divisor_closure, euler_phi};

/// Rejects empty vectors and zero entries.
pub fn validate_vector(xs: &[BigUint]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if xs.iter().any(Zero::is_zero) {
        return Err(Error::ZeroInput);
    }
    Ok(())
}

pub fn all_distinct(xs: &[BigUint]) -> bool {
    let mut sorted: Vec<&BigUint> = xs.iter().collect();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// The vector `X` (order preserved, duplicates allowed) and its GCD matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdMatrix {
    xs: Vec<BigUint>,
    entries: Vec<BigUint>,
}

impl GcdMatrix {
    pub fn build(xs: &[BigUint]) -> Result<Self> {
        validate_vector(xs)?;
        let n = xs.len();
        let mut entries = vec![BigUint::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = xs[i].clone();
            for j in i + 1..n {
                let g = xs[i].gcd(&xs[j]);
                entries[j * n + i] = g.clone();
                entries[i * n + j] = g;
            }
        }
        Ok(Self {
            xs: xs.to_vec(),
            entries,
        })
    }

    pub fn xs(&self) -> &[BigUint] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.len() + j]
    }

    pub fn has_distinct_entries(&self) -> bool {
        all_distinct(&self.xs)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let n = self.len();
        RationalMatrix::from_fn(n, n, |i, j| {
            ExactRational::from_integer(BigInt::from(self.get(i, j).clone()))
        })
    }
}

impl fmt::Display for GcdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        let width = self.entries.iter().map(|e| e.to_string().len()).max().unwrap_or(1);
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| format!("{:>width$}", self.get(i, j).to_string()))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `S(X) = E · diag(φ(d_1), …, φ(d_m)) · Eᵀ` over the divisor closure `D`.
///
/// The `√φ` split of the usual `A Aᵀ` form is folded into the diagonal so the
/// identity can be checked in integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeslinFactorization {
    pub divisors: Vec<BigUint>,
    /// Row-major `n × m` incidence, `incidence[i][j]` iff `d_j | x_i`.
    pub incidence: Vec<Vec<bool>>,
    pub phi: Vec<BigUint>,
}

impl BeslinFactorization {
    /// The product `E diag(φ) Eᵀ`, row-major.
    pub fn product(&self) -> Vec<Vec<BigUint>> {
        let n = self.incidence.len();
        let mut out = vec![vec![BigUint::zero(); n]; n];
        for (i, row_i) in self.incidence.iter().enumerate() {
            for (j, row_j) in self.incidence.iter().enumerate() {
                out[i][j] = (0..self.divisors.len())
                    .filter(|&k| row_i[k] && row_j[k])
                    .map(|k| &self.phi[k])
                    .sum();
            }
        }
        out
    }

    pub fn reconstructs(&self, s: &GcdMatrix) -> bool {
        let prod = self.product();
        prod.len() == s.len()
            && prod
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, v)| v == s.get(i, j)))
    }
}

pub fn beslin_factorization(xs: &[BigUint]) -> Result<BeslinFactorization> {
    let s = GcdMatrix::build(xs)?;
    let divisors = divisor_closure(xs)?;
    let incidence = xs
        .iter()
        .map(|x| divisors.iter().map(|d| (x % d).is_zero()).collect())
        .collect();
    let phi = divisors.iter().map(euler_phi).collect::<Result<Vec<_>>>()?;
    let f = BeslinFactorization {
        divisors,
        incidence,
        phi,
    };
    assert!(
        f.reconstructs(&s),
        "divisor-closure factorization failed to reproduce S(X)"
    );
    Ok(f)
}

/// Smith's product `φ(1) φ(2) ⋯ φ(n)`, equal to `det S((1, …, n))`.
pub fn smith_determinant(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    (1..=n).try_fold(BigUint::one(), |acc, k| Ok(acc * euler_phi(&BigUint::from(k))?))
}

/// Leading principal minors of orders `1..=n`.
pub fn leading_principal_minors(s: &GcdMatrix) -> Vec<ExactRational> {
    let m = s.to_rational();
    (1..=s.len())
        .map(|k| {
            let idx: Vec<usize> = (0..k).collect();
            det(&m.submatrix(&idx, &idx).expect("leading indices are valid"))
                .expect("leading submatrix is square")
        })
        .collect()
}

/// True iff every leading principal minor is strictly positive.
pub fn is_positive_definite(s: &GcdMatrix) -> bool {
    leading_principal_minors(s).iter().all(Signed::is_positive)
}
