//! Green's (single-pair) matrices `a_ij = p_min(i,j) q_max(i,j)`.
//!
//! A totally nonnegative GCD matrix is always of this form, with
//! `p_i = gcd(x_i, x_n) / gcd(x_1, x_n)` and `q_j = gcd(x_1, x_j)`. That
//! structure gives every minor as a product of 2x2 determinants and the
//! inverse as a symmetric tridiagonal matrix, both in linear time. The dense
//! routines in [`crate::exact_linalg`] are the reference these are tested
//! against.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{rat, validate_index_set, ExactRational, RationalMatrix};
use crate::gcd_matrix::{all_distinct, validate_vector, GcdMatrix};
use crate::num_theory::{factorize, PrimeFactorization};
use crate::tn_analysis::monotone_factored;

/// The pair `(p, q)` of a Green's matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenForm {
    p: Vec<ExactRational>,
    q: Vec<ExactRational>,
}

impl GreenForm {
    pub fn new(p: Vec<ExactRational>, q: Vec<ExactRational>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::DimensionMismatch(format!(
                "|p| = {} but |q| = {}",
                p.len(),
                q.len()
            )));
        }
        if p.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self { p, q })
    }

    pub fn from_integers(p: &[i64], q: &[i64]) -> Result<Self> {
        Self::new(
            p.iter().map(|&v| rat(v)).collect(),
            q.iter().map(|&v| rat(v)).collect(),
        )
    }

    pub fn p(&self) -> &[ExactRational] {
        &self.p
    }

    pub fn q(&self) -> &[ExactRational] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> ExactRational {
        &self.p[i.min(j)] * &self.q[i.max(j)]
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.len(), self.len(), |i, j| self.entry(i, j))
    }

    /// First `(i, j)` with `i <= j` where the form disagrees with `m`.
    pub fn first_mismatch(&self, m: &RationalMatrix) -> Option<(usize, usize)> {
        let n = self.len();
        if m.rows() != n || m.cols() != n {
            return Some((0, 0));
        }
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| *m.get(i, j) != self.entry(i, j))
    }

    pub fn reconstructs(&self, m: &RationalMatrix) -> bool {
        self.first_mismatch(m).is_none()
    }

    /// Entrywise comparison against a GCD matrix without materializing it.
    pub fn first_gcd_mismatch(&self, s: &GcdMatrix) -> Option<(usize, usize)> {
        let n = self.len();
        if s.len() != n {
            return Some((0, 0));
        }
        for i in 0..n {
            for j in i..n {
                let expected = ExactRational::from_integer(BigInt::from(s.get(i, j).clone()));
                if self.entry(i, j) != expected {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Symmetric tridiagonal matrix: diagonal `b_1..b_n` and off-diagonal
/// `a_2..a_n` (entry `(i, i+1)` holds `offdiag[i]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricTridiagonal {
    diag: Vec<ExactRational>,
    offdiag: Vec<ExactRational>,
}

impl SymmetricTridiagonal {
    pub fn new(diag: Vec<ExactRational>, offdiag: Vec<ExactRational>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} diagonal and {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn diag(&self) -> &[ExactRational] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[ExactRational] {
        &self.offdiag
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> ExactRational {
        match i.abs_diff(j) {
            0 => self.diag[i].clone(),
            1 => self.offdiag[i.min(j)].clone(),
            _ => ExactRational::zero(),
        }
    }

    pub fn to_dense(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.len(), self.len(), |i, j| self.get(i, j))
    }

    /// Exact check of `m · T = I` using the band structure (`O(n²)`).
    pub fn is_inverse_of(&self, m: &RationalMatrix) -> bool {
        let n = self.len();
        if m.rows() != n || m.cols() != n {
            return false;
        }
        self.is_right_inverse(n, |i, j| m.get(i, j).clone())
    }

    /// Exact check of `S(X) · T = I`.
    pub fn is_inverse_of_gcd(&self, s: &GcdMatrix) -> bool {
        let n = self.len();
        s.len() == n
            && self.is_right_inverse(n, |i, j| {
                ExactRational::from_integer(BigInt::from(s.get(i, j).clone()))
            })
    }

    fn is_right_inverse(&self, n: usize, entry: impl Fn(usize, usize) -> ExactRational) -> bool {
        for i in 0..n {
            for j in 0..n {
                let mut acc = entry(i, j) * &self.diag[j];
                if j > 0 {
                    acc += entry(i, j - 1) * &self.offdiag[j - 1];
                }
                if j + 1 < n {
                    acc += entry(i, j + 1) * &self.offdiag[j];
                }
                let expected = if i == j {
                    ExactRational::one()
                } else {
                    ExactRational::zero()
                };
                if acc != expected {
                    return false;
                }
            }
        }
        true
    }
}

fn to_rat(x: &BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from(x.clone()))
}

/// Integer pieces of the GCD Green form: `P_i = gcd(x_i, x_n)`,
/// `Q_j = gcd(x_1, x_j)` and `g = gcd(x_1, x_n)`.
struct GcdPieces {
    p: Vec<BigUint>,
    q: Vec<BigUint>,
    g: BigUint,
}

impl GcdPieces {
    fn new(xs: &[BigUint]) -> Self {
        let first = &xs[0];
        let last = &xs[xs.len() - 1];
        Self {
            p: xs.iter().map(|x| x.gcd(last)).collect(),
            q: xs.iter().map(|x| first.gcd(x)).collect(),
            g: first.gcd(last),
        }
    }

    fn p(&self, i: usize) -> BigInt {
        BigInt::from(self.p[i].clone())
    }

    fn q(&self, i: usize) -> BigInt {
        BigInt::from(self.q[i].clone())
    }
}

/// Validates `X` and checks TN through prime exponents, in time linear in
/// `n` apart from factoring. Returns the factorizations of the entries.
fn ensure_tn(xs: &[BigUint]) -> Result<Vec<PrimeFactorization>> {
    validate_vector(xs)?;
    let factorizations = xs.iter().map(factorize).collect::<Result<Vec<_>>>()?;
    if !monotone_factored(&factorizations).holds {
        return Err(Error::NotTotallyNonnegative);
    }
    Ok(factorizations)
}

/// The Green form `p_i = gcd(x_i,x_n)/gcd(x_1,x_n)`, `q_j = gcd(x_1,x_j)`,
/// verified to reconstruct `S(X)`; fails exactly when `S(X)` is not TN.
pub fn gcd_green_form(xs: &[BigUint]) -> Result<GreenForm> {
    let s = GcdMatrix::build(xs)?;
    let form = gcd_green_candidate(&s);
    if form.first_gcd_mismatch(&s).is_some() {
        return Err(Error::NotTotallyNonnegative);
    }
    Ok(form)
}

/// The GCD Green formula evaluated without checking that it reconstructs.
pub(crate) fn gcd_green_candidate(s: &GcdMatrix) -> GreenForm {
    let pieces = GcdPieces::new(s.xs());
    let g = to_rat(&pieces.g);
    GreenForm {
        p: pieces.p.iter().map(|v| to_rat(v) / &g).collect(),
        q: pieces.q.iter().map(to_rat).collect(),
    }
}

/// Recovers a Green form for a symmetric matrix, or `None` if there is none.
///
/// The gauge `(p, q) ~ (cp, q/c)` is fixed by `p_1 = 1`, so `q_j = m[1][j]`
/// and `p_i = m[i][n] / m[1][n]`; the candidate is then checked entrywise.
/// Matrices whose first row ends in zero are reported as `None` (zero
/// patterns are not analyzed).
pub fn recognize_green(m: &RationalMatrix) -> Result<Option<GreenForm>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 || !m.is_symmetric() {
        return Ok(None);
    }
    let corner = m.get(0, n - 1);
    if corner.is_zero() {
        return Ok(None);
    }
    let q: Vec<ExactRational> = m.row(0).to_vec();
    let p: Vec<ExactRational> = (0..n).map(|i| m.get(i, n - 1) / corner).collect();
    let form = GreenForm { p, q };
    Ok(form.reconstructs(m).then_some(form))
}

/// Karlin's criterion: the form is TN iff all `2n` numbers share one strict
/// sign and `p_1/q_1 <= … <= p_n/q_n`.
pub fn green_tn_criterion(g: &GreenForm) -> bool {
    let all: Vec<&ExactRational> = g.p.iter().chain(&g.q).collect();
    let same_sign = all.iter().all(|v| v.is_positive()) || all.iter().all(|v| v.is_negative());
    if !same_sign {
        return false;
    }
    let ratios: Vec<ExactRational> = g.p.iter().zip(&g.q).map(|(p, q)| p / q).collect();
    ratios.windows(2).all(|w| w[0] <= w[1])
}

/// `k_s = min(i_s, j_s)` and `l_s = max(i_s, j_s)`, or `None` when the
/// interleaving condition `l_s < k_{s+1}` fails somewhere.
fn interleaved_support(alpha: &[usize], beta: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let k: Vec<usize> = alpha.iter().zip(beta).map(|(a, b)| *a.min(b)).collect();
    let l: Vec<usize> = alpha.iter().zip(beta).map(|(a, b)| *a.max(b)).collect();
    (1..k.len()).all(|s| l[s - 1] < k[s]).then_some((k, l))
}

fn check_index_sets(alpha: &[usize], beta: &[usize], n: usize) -> Result<()> {
    if alpha.len() != beta.len() {
        return Err(Error::MalformedIndexSet(format!(
            "|rows| = {} but |cols| = {}",
            alpha.len(),
            beta.len()
        )));
    }
    validate_index_set(alpha, n)?;
    validate_index_set(beta, n)
}

/// Minor `det A[α, β]` of a Green's matrix by the product formula
/// `p_{k_1} q_{l_m} ∏ (p_{k_{s+1}} q_{l_s} − p_{l_s} q_{k_{s+1}})`; zero when
/// the index sets do not interleave. Indices are 0-based.
pub fn green_minor(g: &GreenForm, alpha: &[usize], beta: &[usize]) -> Result<ExactRational> {
    check_index_sets(alpha, beta, g.len())?;
    if alpha.is_empty() {
        return Ok(ExactRational::one());
    }
    let Some((k, l)) = interleaved_support(alpha, beta) else {
        return Ok(ExactRational::zero());
    };
    let m = k.len();
    let mut value = &g.p[k[0]] * &g.q[l[m - 1]];
    for s in 0..m - 1 {
        value *= &g.p[k[s + 1]] * &g.q[l[s]] - &g.p[l[s]] * &g.q[k[s + 1]];
    }
    Ok(value)
}

/// The same minor for a TN GCD matrix, written in integer gcds:
/// `gcd(x_{k_1},x_n) gcd(x_1,x_{l_m}) / gcd(x_1,x_n)^m · ∏ det(2x2 of gcds)`.
pub fn gcd_tn_minor(xs: &[BigUint], alpha: &[usize], beta: &[usize]) -> Result<ExactRational> {
    ensure_tn(xs)?;
    check_index_sets(alpha, beta, xs.len())?;
    if alpha.is_empty() {
        return Ok(ExactRational::one());
    }
    let Some((k, l)) = interleaved_support(alpha, beta) else {
        return Ok(ExactRational::zero());
    };
    let pieces = GcdPieces::new(xs);
    let m = k.len();
    let mut numer = pieces.p(k[0]) * pieces.q(l[m - 1]);
    for s in 0..m - 1 {
        numer *= pieces.p(k[s + 1]) * pieces.q(l[s]) - pieces.p(l[s]) * pieces.q(k[s + 1]);
    }
    let denom = BigInt::from(pieces.g.pow(m as u32));
    Ok(ExactRational::new(numer, denom))
}

/// `num/den` for positive integers, reducing the larger operand modulo the
/// smaller before the gcd so unbalanced sizes stay cheap.
fn positive_ratio(num: BigUint, den: BigUint) -> ExactRational {
    let (small, large) = if num.bits() <= den.bits() { (&num, &den) } else { (&den, &num) };
    let g = small.gcd(&(large % small));
    ExactRational::new_raw(BigInt::from(num / &g), BigInt::from(den / g))
}

/// Closed-form tridiagonal inverse of a TN GCD matrix with distinct entries.
///
/// `a_{i+1} = g / (P_i Q_{i+1} − P_{i+1} Q_i)` and
/// `b_1 = −(P_2/g) a_2`, `b_i = −((P_{i−1} Q_{i+1} − P_{i+1} Q_{i−1})/g) a_i a_{i+1}`,
/// `b_n = −(Q_{n−1}/g) a_n`, with `P_i = gcd(x_i,x_n)`, `Q_j = gcd(x_1,x_j)`,
/// `g = gcd(x_1,x_n)`. Runs in `O(n)` big-integer operations once TN is
/// established.
///
/// Monotone exponents give `P_i Q_{i+1} = g d_i` and `P_{i+1} Q_i = g d_i u_i`
/// with `d_i = gcd(x_i,x_{i+1})` and `u_i = x_i x_{i+1} / d_i²`, so the same
/// entries are evaluated as `a_{i+1} = −1/(d_i (u_i − 1))`,
/// `b_1 = u_1/((u_1 − 1) x_1)`, `b_i = (u_{i−1} u_i − 1)/((u_{i−1} − 1)(u_i − 1) x_i)`
/// and `b_n = u_{n−1}/((u_{n−1} − 1) x_n)`. The gcds `d_i` come from the
/// factorizations already computed for the TN check.
pub fn gcd_tn_inverse(xs: &[BigUint]) -> Result<SymmetricTridiagonal> {
    validate_vector(xs)?;
    if !all_distinct(xs) {
        return Err(Error::DuplicateEntries);
    }
    let fs = ensure_tn(xs)?;
    let n = xs.len();
    if n == 1 {
        return SymmetricTridiagonal::new(vec![to_rat(&xs[0]).recip()], vec![]);
    }
    let d: Vec<BigUint> = (0..n - 1)
        .map(|i| {
            fs[i].factors()
                .iter()
                .map(|(p, e)| p.pow((*e).min(fs[i + 1].exponent(p))))
                .product()
        })
        .collect();
    // u_i > 1 because adjacent entries differ
    let u: Vec<BigUint> = (0..n - 1)
        .map(|i| (&xs[i] / &d[i]) * (&xs[i + 1] / &d[i]))
        .collect();
    let w: Vec<BigUint> = u.iter().map(|u| u - 1u32).collect();
    // 1/(d_i w_i) is already in lowest terms
    let off = (0..n - 1)
        .map(|i| ExactRational::new_raw(-BigInt::one(), BigInt::from(&d[i] * &w[i])))
        .collect();
    let mut diag = Vec::with_capacity(n);
    diag.push(positive_ratio(u[0].clone(), &w[0] * &xs[0]));
    for i in 1..n - 1 {
        diag.push(positive_ratio(&u[i - 1] * &u[i] - 1u32, &w[i - 1] * &w[i] * &xs[i]));
    }
    diag.push(positive_ratio(u[n - 2].clone(), &w[n - 2] * &xs[n - 1]));
    SymmetricTridiagonal::new(diag, off)
}

/// Tridiagonal inverse of a nonsingular Green's matrix:
/// `a_{i+1} = 1/(p_i q_{i+1} − p_{i+1} q_i)` and the three-case diagonal.
pub fn green_inverse(g: &GreenForm) -> Result<SymmetricTridiagonal> {
    let n = g.len();
    let (p, q) = (&g.p, &g.q);
    if n == 1 {
        let d = &p[0] * &q[0];
        if d.is_zero() {
            return Err(Error::Singular);
        }
        return SymmetricTridiagonal::new(vec![d.recip()], vec![]);
    }
    let delta: Vec<ExactRational> = (0..n - 1)
        .map(|i| &p[i] * &q[i + 1] - &p[i + 1] * &q[i])
        .collect();
    if delta.iter().any(Zero::is_zero) || p[0].is_zero() || q[n - 1].is_zero() {
        return Err(Error::Singular);
    }
    let off: Vec<ExactRational> = delta.iter().map(ExactRational::recip).collect();
    let mut diag = Vec::with_capacity(n);
    diag.push(-(&p[1] / (&p[0] * &delta[0])));
    for i in 1..n - 1 {
        let cross = &p[i - 1] * &q[i + 1] - &p[i + 1] * &q[i - 1];
        diag.push(-(cross / (&delta[i - 1] * &delta[i])));
    }
    diag.push(-(&q[n - 2] / (&q[n - 1] * &delta[n - 2])));
    SymmetricTridiagonal::new(diag, off)
}

/// True iff `m` vanishes off the three central diagonals and every
/// superdiagonal entry is nonzero.
pub fn is_tridiagonal_nonzero_superdiag(m: &RationalMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j);
            if i.abs_diff(j) > 1 && !v.is_zero() {
                return Ok(false);
            }
            if j == i + 1 && v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
