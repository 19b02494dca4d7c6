//! Exact rational linear algebra.
//!
//! Everything here is the reference path: determinants, minors and inverses
//! computed with no floating point, against which the closed-form Green's
//! matrix formulas are checked. Determinants use fraction-free (Bareiss)
//! elimination over integers after clearing row denominators, with a checked
//! `i128` fast path that falls back to big integers on overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::check::Check;
use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

pub(crate) fn rat(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&v| rat(v)).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { rat(1) } else { rat(0) })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExactRational,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExactRational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[ExactRational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[ExactRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self.get(i, k).is_zero())
                .map(|k| self.get(i, k) * other.get(k, j))
                .fold(rat(0), |acc, v| acc + v)
        }))
    }

    /// The submatrix `M[α, β]`; index sets are 0-based and validated.
    pub fn submatrix(&self, alpha: &[usize], beta: &[usize]) -> Result<Self> {
        validate_index_set(alpha, self.rows)?;
        validate_index_set(beta, self.cols)?;
        Ok(Self::from_fn(alpha.len(), beta.len(), |i, j| {
            self.get(alpha[i], beta[j]).clone()
        }))
    }

    /// `Some` when every entry is an integer.
    fn integer_entries(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.is_integer().then(|| e.numer().clone()))
            .collect()
    }

    /// Rows scaled by the lcm of their denominators, plus the scale factors.
    fn clear_row_denominators(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut scales = Vec::with_capacity(self.rows);
        let mut out = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            out.extend(row.iter().map(|e| e.numer() * (&l / e.denom())));
            scales.push(l);
        }
        (out, scales)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Checks that `set` is strictly increasing with every index below `bound`.
pub fn validate_index_set(set: &[usize], bound: usize) -> Result<()> {
    if let Some(&bad) = set.iter().find(|&&i| i >= bound) {
        return Err(Error::MalformedIndexSet(format!(
            "index {} out of range 1..={bound}",
            bad + 1
        )));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedIndexSet(
            "indices must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Lexicographic k-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        // advance to the next subset in lexicographic order
        match (0..k).rev().find(|&i| self.current[i] < self.n - k + i) {
            Some(i) => {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

fn bareiss_i128(mut a: Vec<i128>, n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let t = pivot
                    .checked_mul(a[i * n + j])?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = t / prev;
            }
        }
        prev = pivot;
    }
    sign.checked_mul(a[n * n - 1])
}

fn bareiss_bigint(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let t = &pivot * &a[i * n + j] - &lead * &a[k * n + j];
                a[i * n + j] = t / &prev;
            }
        }
        prev = pivot;
    }
    let d = a.swap_remove(n * n - 1);
    if negate {
        -d
    } else {
        d
    }
}

fn integer_det(values: &[BigInt], n: usize) -> BigInt {
    let small: Option<Vec<i128>> = values.iter().map(ToPrimitive::to_i128).collect();
    if let Some(d) = small.and_then(|s| bareiss_i128(s, n)) {
        return BigInt::from(d);
    }
    bareiss_bigint(values.to_vec(), n)
}

/// Exact determinant by fraction-free elimination; the 0x0 determinant is 1.
pub fn det(m: &RationalMatrix) -> Result<ExactRational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if let Some(ints) = m.integer_entries() {
        return Ok(BigRational::from_integer(integer_det(&ints, m.rows)));
    }
    let (ints, scales) = m.clear_row_denominators();
    let scale: BigInt = scales.iter().product();
    Ok(BigRational::new(integer_det(&ints, m.rows), scale))
}

/// Determinant by Laplace expansion along the first row. Exponential time;
/// kept as a second, structurally unrelated route for small matrices.
pub fn det_cofactor(m: &RationalMatrix) -> Result<ExactRational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    fn expand(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> ExactRational {
        if rows.is_empty() {
            return rat(1);
        }
        let mut total = rat(0);
        for (pos, &c) in cols.iter().enumerate() {
            let entry = m.get(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * expand(m, &rows[1..], &rest);
            if pos % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    Ok(expand(m, &idx, &idx))
}

/// `det M[α, β]` for 0-based strictly increasing index sets of equal size.
pub fn minor(m: &RationalMatrix, alpha: &[usize], beta: &[usize]) -> Result<ExactRational> {
    if alpha.len() != beta.len() {
        return Err(Error::MalformedIndexSet(format!(
            "|rows| = {} but |cols| = {}",
            alpha.len(),
            beta.len()
        )));
    }
    det(&m.submatrix(alpha, beta)?)
}

/// Exact inverse by Gauss-Jordan elimination over reduced fractions.
///
/// Reduced fractions stay small on structured inputs such as Green's
/// matrices, where fraction-free elimination would carry determinant-sized
/// integers in every entry. Zero entries are skipped.
pub fn invert(m: &RationalMatrix) -> Result<RationalMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let w = 2 * n;
    let mut a = vec![rat(0); n * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = m.get(i, j).clone();
        }
        a[i * w + n + i] = rat(1);
    }
    for k in 0..n {
        let r = (k..n)
            .find(|&r| !a[r * w + k].is_zero())
            .ok_or(Error::Singular)?;
        if r != k {
            for j in 0..w {
                a.swap(k * w + j, r * w + j);
            }
        }
        let pivot = a[k * w + k].recip();
        let support: Vec<usize> = (0..w).filter(|&j| !a[k * w + j].is_zero()).collect();
        for &j in &support {
            a[k * w + j] *= &pivot;
        }
        for i in (0..n).filter(|&i| i != k) {
            let lead = a[i * w + k].clone();
            if lead.is_zero() {
                continue;
            }
            for &j in &support {
                let delta = &lead * &a[k * w + j];
                a[i * w + j] -= delta;
            }
        }
    }
    Ok(RationalMatrix::from_fn(n, n, |i, j| a[i * w + n + j].clone()))
}

/// A minor together with its (0-based) row and column index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: ExactRational,
}

impl MinorWitness {
    /// Recomputes the minor on `m` and checks it matches the stored value.
    pub fn reevaluate(&self, m: &RationalMatrix) -> Result<bool> {
        Ok(minor(m, &self.rows, &self.cols)? == self.value)
    }
}

impl fmt::Display for MinorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |s: &[usize]| {
            s.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "det A[{{{}}}, {{{}}}] = {}",
            one_based(&self.rows),
            one_based(&self.cols),
            self.value
        )
    }
}

/// Outcome of a scan over minors; the witness is the first offending minor
/// in canonical order.
pub type MinorScan = Check<MinorWitness>;

/// Finds the first minor of order `1..=max_order`, enumerated by order and
/// then lexicographically by rows and columns, whose value satisfies `bad`.
pub fn find_minor(
    m: &RationalMatrix,
    max_order: usize,
    bad: impl Fn(&ExactRational) -> bool,
) -> Result<Option<MinorWitness>> {
    if max_order > m.rows.min(m.cols) {
        return Err(Error::InvalidParameter(format!(
            "max order {max_order} exceeds min(rows, cols) = {}",
            m.rows.min(m.cols)
        )));
    }
    // integer-scaled copy; row scaling only rescales minors by a positive factor
    let (ints, scales) = m.clear_row_denominators();
    let small: Option<Vec<i128>> = ints.iter().map(ToPrimitive::to_i128).collect();
    let mut buf_small = Vec::new();
    let mut buf_big = Vec::new();
    for k in 1..=max_order {
        let row_sets: Vec<Vec<usize>> = Combinations::new(m.rows, k).collect();
        for alpha in &row_sets {
            for beta in Combinations::new(m.cols, k) {
                let mut value = None;
                if let Some(s) = &small {
                    buf_small.clear();
                    for &i in alpha {
                        buf_small.extend(beta.iter().map(|&j| s[i * m.cols + j]));
                    }
                    value = bareiss_i128(buf_small.clone(), k).map(BigInt::from);
                }
                let value = value.unwrap_or_else(|| {
                    buf_big.clear();
                    for &i in alpha {
                        buf_big.extend(beta.iter().map(|&j| ints[i * m.cols + j].clone()));
                    }
                    bareiss_bigint(buf_big.clone(), k)
                });
                let scale: BigInt = alpha.iter().map(|&i| &scales[i]).product();
                let value = BigRational::new(value, scale);
                if bad(&value) {
                    return Ok(Some(MinorWitness {
                        rows: alpha.clone(),
                        cols: beta,
                        value,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// True iff every minor of order at most `max_order` is nonnegative; on
/// failure the first negative minor in canonical order is returned.
pub fn all_minors_nonneg(m: &RationalMatrix, max_order: usize) -> Result<MinorScan> {
    Ok(Check::from_witness(find_minor(m, max_order, |v| {
        v.is_negative()
    })?))
}

/// True iff every minor of order at most `max_order` is strictly positive.
pub fn all_minors_positive(m: &RationalMatrix, max_order: usize) -> Result<MinorScan> {
    Ok(Check::from_witness(find_minor(m, max_order, |v| {
        !v.is_positive()
    })?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(rows: usize, cols: usize, v: &[i64]) -> RationalMatrix {
        RationalMatrix::from_integers(rows, cols, v).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    fn gcd_mat(xs: &[i64]) -> RationalMatrix {
        let n = xs.len();
        RationalMatrix::from_fn(n, n, |i, j| rat(xs[i].gcd(&xs[j])))
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&RationalMatrix::identity(3)).unwrap(), rat(1));
        assert_eq!(det(&ints(2, 2, &[1, 1, 1, 2])).unwrap(), rat(1));
        assert_eq!(det(&gcd_mat(&[1, 2, 3])).unwrap(), rat(2));
        assert_eq!(det(&RationalMatrix::identity(0)).unwrap(), rat(1));
        assert_eq!(
            det(&ints(2, 3, &[1, 2, 3, 4, 5, 6])),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn det_with_fractions_and_pivoting() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(0), q(1, 2), rat(1)],
            vec![q(2, 3), rat(1), rat(0)],
            vec![rat(1), rat(0), q(-1, 4)],
        ])
        .unwrap();
        assert_eq!(det(&m).unwrap(), det_cofactor(&m).unwrap());
    }

    #[test]
    fn det_falls_back_to_bigint() {
        let big = 1i64 << 62;
        let m = ints(3, 3, &[big, 1, 0, 1, big, 1, 0, 1, big]);
        assert_eq!(det(&m).unwrap(), det_cofactor(&m).unwrap());
    }

    #[test]
    fn minor_examples() {
        let m = gcd_mat(&[2, 3, 5]);
        assert_eq!(minor(&m, &[0, 1, 2], &[0, 1, 2]).unwrap(), det(&m).unwrap());
        assert_eq!(minor(&m, &[1], &[2]).unwrap(), rat(1));
        // gcd(2,3)gcd(3,5) - 3 gcd(2,5)
        assert_eq!(minor(&m, &[0, 1], &[1, 2]).unwrap(), rat(-2));
        assert!(matches!(
            minor(&m, &[0, 1], &[1]),
            Err(Error::MalformedIndexSet(_))
        ));
        assert!(matches!(
            minor(&m, &[0, 3], &[0, 1]),
            Err(Error::MalformedIndexSet(_))
        ));
        assert!(matches!(
            minor(&m, &[1, 0], &[0, 1]),
            Err(Error::MalformedIndexSet(_))
        ));
    }

    #[test]
    fn invert_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(invert(&id).unwrap(), id);
        assert_eq!(
            invert(&ints(2, 2, &[2, 0, 0, 4])).unwrap(),
            RationalMatrix::from_rows(vec![vec![q(1, 2), rat(0)], vec![rat(0), q(1, 4)]]).unwrap()
        );
        let s = gcd_mat(&[1, 2, 4]);
        let expected = RationalMatrix::from_rows(vec![
            vec![rat(2), rat(-1), rat(0)],
            vec![rat(-1), q(3, 2), q(-1, 2)],
            vec![rat(0), q(-1, 2), q(1, 2)],
        ])
        .unwrap();
        assert_eq!(s.mul(&expected).unwrap(), RationalMatrix::identity(3));
        assert_eq!(invert(&s).unwrap(), expected);
    }

    #[test]
    fn invert_errors_are_distinct() {
        assert_eq!(invert(&gcd_mat(&[4, 4])), Err(Error::Singular));
        assert_eq!(
            invert(&ints(1, 2, &[1, 2])),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn all_minors_examples() {
        for k in 1..=4 {
            assert!(all_minors_nonneg(&RationalMatrix::identity(4), k).unwrap().holds);
        }
        let scan = all_minors_nonneg(&gcd_mat(&[2, 3, 5]), 2).unwrap();
        assert!(!scan.holds);
        assert_eq!(
            scan.witness,
            Some(MinorWitness {
                rows: vec![0, 1],
                cols: vec![1, 2],
                value: rat(-2)
            })
        );
        assert!(all_minors_nonneg(&gcd_mat(&[1, 2, 4]), 3).unwrap().holds);
        assert!(all_minors_nonneg(&gcd_mat(&[1, 2, 4]), 4).is_err());
    }

    #[test]
    fn witness_display_is_one_based() {
        let w = MinorWitness {
            rows: vec![0, 1],
            cols: vec![1, 2],
            value: rat(-2),
        };
        assert_eq!(w.to_string(), "det A[{1,2}, {2,3}] = -2");
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn green_form_with_same_sign_and_rising_ratios_is_tn() {
        // p = (1, 3, 4, 9), q = (5, 4, 2, 1); p/q increasing
        let p = [1i64, 3, 4, 9];
        let qv = [5i64, 4, 2, 1];
        let m = RationalMatrix::from_fn(4, 4, |i, j| rat(p[i.min(j)] * qv[i.max(j)]));
        assert!(all_minors_nonneg(&m, 4).unwrap().holds);
        let neg = RationalMatrix::from_fn(4, 4, |i, j| rat(-p[i.min(j)] * -qv[i.max(j)]));
        assert_eq!(neg, m);
    }

    fn square(max_n: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |v| {
                RationalMatrix::new(n, n, v.into_iter().map(|(a, b)| q(a, b)).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in square(4)) {
            prop_assert_eq!(det(&m).unwrap(), det_cofactor(&m).unwrap());
        }

        #[test]
        fn row_swap_negates_det(m in square(5), a in 0usize..5, b in 0usize..5) {
            let n = m.rows();
            let (a, b) = (a % n, b % n);
            prop_assume!(a != b);
            let mut swapped = m.clone();
            swapped.swap_rows(a, b);
            prop_assert_eq!(det(&swapped).unwrap(), -det(&m).unwrap());
        }

        #[test]
        fn minor_matches_materialized_submatrix(
            m in square(5),
            rmask in 1u32..32,
            cshift in 0u32..5,
        ) {
            let n = m.rows();
            let alpha: Vec<usize> = (0..n).filter(|i| rmask >> i & 1 == 1).collect();
            prop_assume!(!alpha.is_empty());
            let beta: Vec<usize> = (0..n).map(|j| (j + cshift as usize) % n).take(alpha.len())
                .collect::<std::collections::BTreeSet<_>>().into_iter().collect();
            let sub = RationalMatrix::from_fn(alpha.len(), beta.len(), |i, j| m.get(alpha[i], beta[j]).clone());
            prop_assert_eq!(minor(&m, &alpha, &beta).unwrap(), det_cofactor(&sub).unwrap());
        }

        #[test]
        fn inverse_times_matrix_is_identity(
            n in 1usize..=6,
            v in proptest::collection::vec(-20i64..=20, 36),
        ) {
            let m = RationalMatrix::from_integers(n, n, &v[..n * n]).unwrap();
            match invert(&m) {
                Ok(inv) => {
                    prop_assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(n));
                    prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(n));
                }
                Err(Error::Singular) => prop_assert!(det(&m).unwrap().is_zero()),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn inverse_of_fractional_matrix(m in square(4)) {
            if let Ok(inv) = invert(&m) {
                prop_assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(m.rows()));
            } else {
                prop_assert!(det(&m).unwrap().is_zero());
            }
        }
    }
}
