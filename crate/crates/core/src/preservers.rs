//! Entrywise transforms `f ∘ S(X)` of GCD matrices.
//!
//! If `f` is multiplicative and `x | y` implies `f(x) <= f(y)`, then `f ∘ S(X)`
//! is TN whenever `S(X)` is. Functions are real-valued (exact rationals) so
//! that the order hypothesis makes sense.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exact_linalg::{all_minors_nonneg, ExactRational, MinorWitness, RationalMatrix};
use crate::gcd_matrix::GcdMatrix;
use crate::green::GreenForm;
use crate::num_theory::{divisor_count, divisor_sum, euler_phi, factorize};
use crate::tn_analysis::is_monotone_exponents;

/// A named map from positive integers to exact rationals, total on
/// `[1, domain_bound]`.
#[derive(Clone, Copy)]
pub struct ArithmeticFunction {
    pub name: &'static str,
    pub eval: fn(&BigUint) -> ExactRational,
    pub domain_bound: u64,
}

impl ArithmeticFunction {
    /// Evaluates `f(x)`, rejecting arguments outside `[1, domain_bound]`.
    pub fn apply(&self, x: &BigUint) -> Result<ExactRational> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        if *x > BigUint::from(self.domain_bound) {
            return Err(Error::DomainOverflow {
                function: self.name.to_string(),
                value: x.clone(),
                bound: self.domain_bound,
            });
        }
        Ok((self.eval)(x))
    }
}

impl fmt::Debug for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithmeticFunction")
            .field("name", &self.name)
            .field("domain_bound", &self.domain_bound)
            .finish()
    }
}

fn int(x: BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from(x))
}

// Trial division stays cheap below this bound.
const FACTORING_BOUND: u64 = 1_000_000_000_000;

/// Every function the crate knows by name. Extend this table to register a
/// new candidate; lookups, the CLI and the verdict pipeline all read it.
pub const REGISTRY: &[ArithmeticFunction] = &[
    ArithmeticFunction {
        name: "identity",
        eval: |x| int(x.clone()),
        domain_bound: u64::MAX,
    },
    ArithmeticFunction {
        name: "one",
        eval: |_| ExactRational::one(),
        domain_bound: u64::MAX,
    },
    ArithmeticFunction {
        name: "square",
        eval: |x| int(x.pow(2)),
        domain_bound: u64::MAX,
    },
    ArithmeticFunction {
        name: "cube",
        eval: |x| int(x.pow(3)),
        domain_bound: u64::MAX,
    },
    ArithmeticFunction {
        name: "phi",
        eval: |x| int(euler_phi(x).expect("argument is positive")),
        domain_bound: FACTORING_BOUND,
    },
    ArithmeticFunction {
        name: "sigma0",
        eval: |x| int(divisor_count(x).expect("argument is positive")),
        domain_bound: FACTORING_BOUND,
    },
    ArithmeticFunction {
        name: "sigma1",
        eval: |x| int(divisor_sum(x).expect("argument is positive")),
        domain_bound: FACTORING_BOUND,
    },
    ArithmeticFunction {
        name: "succ",
        eval: |x| int(x + 1u32),
        domain_bound: u64::MAX,
    },
    ArithmeticFunction {
        name: "reciprocal",
        eval: |x| ExactRational::new(BigInt::one(), BigInt::from(x.clone())),
        domain_bound: u64::MAX,
    },
];

pub fn lookup(name: &str) -> Option<ArithmeticFunction> {
    REGISTRY.iter().find(|f| f.name == name).copied()
}

pub fn registered_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|f| f.name).collect()
}

fn table(f: &ArithmeticFunction, bound: u64) -> Result<Vec<ExactRational>> {
    if bound == 0 {
        return Err(Error::InvalidParameter("range bound must be at least 1".into()));
    }
    if bound > f.domain_bound {
        return Err(Error::DomainOverflow {
            function: f.name.to_string(),
            value: BigUint::from(bound),
            bound: f.domain_bound,
        });
    }
    let len = usize::try_from(bound)
        .map_err(|_| Error::InvalidParameter(format!("range bound {bound} is too large")))?;
    // index 0 is unused
    let mut values = Vec::with_capacity(len + 1);
    values.push(ExactRational::zero());
    values.extend((1..=bound).map(|x| (f.eval)(&BigUint::from(x))));
    Ok(values)
}

/// `f(xy) = f(x) f(y)` for all coprime `x, y` with `xy <= bound`.
///
/// Pairs `2 <= x < y` are scanned first, then those involving 1, so the
/// witness names a nontrivial pair whenever one exists.
pub fn is_multiplicative(f: &ArithmeticFunction, bound: u64) -> Result<Check<(u64, u64)>> {
    let v = table(f, bound)?;
    let at = |x: u64| &v[x as usize];
    for x in 2..=bound {
        if x * (x + 1) > bound {
            break;
        }
        for y in x + 1..=bound / x {
            if x.gcd(&y) == 1 && *at(x * y) != at(x) * at(y) {
                return Ok(Check::fail((x, y)));
            }
        }
    }
    for y in 1..=bound {
        if *at(y) != at(1) * at(y) {
            return Ok(Check::fail((1, y)));
        }
    }
    Ok(Check::pass())
}

/// `f(x) <= f(y)` whenever `x | y <= bound`.
pub fn is_divisibility_monotone(f: &ArithmeticFunction, bound: u64) -> Result<Check<(u64, u64)>> {
    let v = table(f, bound)?;
    for x in 1..=bound {
        for y in (2 * x..=bound).step_by(x as usize) {
            if v[x as usize] > v[y as usize] {
                return Ok(Check::fail((x, y)));
            }
        }
    }
    Ok(Check::pass())
}

/// The matrix `(f(gcd(x_i, x_j)))`.
pub fn apply_entrywise(f: &ArithmeticFunction, s: &GcdMatrix) -> Result<RationalMatrix> {
    let n = s.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(f.apply(s.get(i, j))?);
        }
    }
    RationalMatrix::new(n, n, entries)
}

/// Outcome of transforming a TN GCD matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreserverVerdict {
    /// First failure of multiplicativity on `[1, range]`, if any.
    pub multiplicative: Check<(u64, u64)>,
    /// First failure of divisibility monotonicity on `[1, range]`, if any.
    pub monotone: Check<(u64, u64)>,
    /// Upper end of the range the hypotheses were checked on: `max X`.
    pub range: u64,
    pub transformed: RationalMatrix,
    /// Brute-force scan of every minor of the transformed matrix.
    pub brute_force: Check<MinorWitness>,
}

impl PreserverVerdict {
    /// Both hypotheses hold, so the transform is guaranteed TN.
    pub fn guaranteed(&self) -> bool {
        self.multiplicative.holds && self.monotone.holds
    }

    pub fn is_tn(&self) -> bool {
        self.brute_force.holds
    }

    /// False only if a guaranteed transform fails the brute-force scan.
    pub fn consistent(&self) -> bool {
        !self.guaranteed() || self.is_tn()
    }
}

/// Checks the hypotheses on `[1, max X]` and scans every minor of `f ∘ S(X)`.
/// `X` must give a TN matrix.
pub fn preserver_verdict(f: &ArithmeticFunction, xs: &[BigUint]) -> Result<PreserverVerdict> {
    let s = GcdMatrix::build(xs)?;
    if !is_monotone_exponents(&s).holds {
        return Err(Error::NotTotallyNonnegative);
    }
    let max = xs.iter().max().expect("build rejects empty input");
    let range = max.to_u64().ok_or_else(|| Error::DomainOverflow {
        function: f.name.to_string(),
        value: max.clone(),
        bound: u64::MAX,
    })?;
    let transformed = apply_entrywise(f, &s)?;
    let brute_force = all_minors_nonneg(&transformed, s.len())?;
    Ok(PreserverVerdict {
        multiplicative: is_multiplicative(f, range)?,
        monotone: is_divisibility_monotone(f, range)?,
        range,
        transformed,
        brute_force,
    })
}

/// `(gcd(x_i, x_n) / g, gcd(x_1, x_j))` with `g = gcd(x_1, x_n)`: the
/// integer Green factors of a TN GCD matrix, `S_ij = P_min(i,j) Q_max(i,j)`.
///
/// Consecutive factors form divisibility chains `P_i | P_{i+1}` and
/// `Q_{i+1} | Q_i`, but `P_i` and `Q_j` need not be coprime: `X = (6, 2, 4)`
/// gives `P = (1, 1, 2)` and `Q = (6, 2, 2)`.
pub fn integer_green_factors(xs: &[BigUint]) -> Result<(Vec<BigUint>, Vec<BigUint>)> {
    let s = GcdMatrix::build(xs)?;
    if !is_monotone_exponents(&s).holds {
        return Err(Error::NotTotallyNonnegative);
    }
    let n = xs.len();
    let g = s.get(0, n - 1);
    let p = (0..n).map(|i| s.get(i, n - 1) / g).collect();
    let q = (0..n).map(|j| s.get(0, j).clone()).collect();
    Ok((p, q))
}

/// Green factors of a TN GCD matrix split by prime: `P_i` collects the
/// primes whose exponents never decrease along `X` (constant ones included)
/// and `Q_j` the rest, each at its exponent in `x_i` or `x_j`. Then
/// `S_ij = P_min(i,j) Q_max(i,j)`, every `P_i` is coprime to every `Q_j`,
/// `P_i | P_{i+1}` and `Q_{i+1} | Q_i`. For multiplicative `f` this gives
/// `f(S_ij) = f(P_min(i,j)) f(Q_max(i,j))`.
pub fn coprime_green_factors(xs: &[BigUint]) -> Result<(Vec<BigUint>, Vec<BigUint>)> {
    let s = GcdMatrix::build(xs)?;
    if !is_monotone_exponents(&s).holds {
        return Err(Error::NotTotallyNonnegative);
    }
    let factorizations = xs
        .iter()
        .map(factorize)
        .collect::<Result<Vec<_>>>()?;
    let mut primes: Vec<BigUint> = factorizations
        .iter()
        .flat_map(|f| f.primes().cloned())
        .collect();
    primes.sort();
    primes.dedup();
    let n = xs.len();
    let mut p = vec![BigUint::one(); n];
    let mut q = vec![BigUint::one(); n];
    for prime in &primes {
        let e: Vec<u32> = factorizations.iter().map(|f| f.exponent(prime)).collect();
        let side = if e.windows(2).all(|w| w[0] <= w[1]) {
            &mut p
        } else {
            &mut q
        };
        for (slot, &k) in side.iter_mut().zip(&e) {
            *slot *= prime.pow(k);
        }
    }
    Ok((p, q))
}

/// The Green form `(f(P), f(Q))` built from [`coprime_green_factors`]. For a
/// multiplicative `f` it reconstructs `f ∘ S(X)`.
pub fn transformed_green_form(f: &ArithmeticFunction, xs: &[BigUint]) -> Result<GreenForm> {
    let (p, q) = coprime_green_factors(xs)?;
    GreenForm::new(
        p.iter().map(|v| f.apply(v)).collect::<Result<_>>()?,
        q.iter().map(|v| f.apply(v)).collect::<Result<_>>()?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::green_tn_criterion;
    use crate::num_theory::naturals;
    use crate::tn_analysis::{is_tn, Method};

    fn f(name: &str) -> ArithmeticFunction {
        lookup(name).unwrap()
    }

    fn matrix(rows: &[&[i64]]) -> RationalMatrix {
        let n = rows.len();
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        RationalMatrix::from_integers(n, n, &flat).unwrap()
    }

    #[test]
    fn registry_names_are_unique() {
        let mut names = registered_names();
        let len = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), len);
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn multiplicative_examples() {
        assert!(is_multiplicative(&f("phi"), 500).unwrap().holds);
        assert!(is_multiplicative(&f("square"), 500).unwrap().holds);
        let c = is_multiplicative(&f("succ"), 10).unwrap();
        assert_eq!(c.witness, Some((2, 3)));
        // only the pair (1, 1) is available
        assert_eq!(is_multiplicative(&f("succ"), 1).unwrap().witness, Some((1, 1)));
        assert!(is_multiplicative(&f("reciprocal"), 100).unwrap().holds);
    }

    #[test]
    fn monotone_examples() {
        assert!(is_divisibility_monotone(&f("phi"), 500).unwrap().holds);
        assert!(is_divisibility_monotone(&f("identity"), 500).unwrap().holds);
        let c = is_divisibility_monotone(&f("reciprocal"), 4).unwrap();
        assert_eq!(c.witness, Some((1, 2)));
        assert!(is_divisibility_monotone(&f("succ"), 500).unwrap().holds);
    }

    #[test]
    fn hypothesis_checks_reject_bad_ranges() {
        assert!(is_multiplicative(&f("phi"), 0).is_err());
        assert!(matches!(
            is_divisibility_monotone(&f("phi"), FACTORING_BOUND + 1),
            Err(Error::DomainOverflow { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let s = GcdMatrix::build(&naturals(&[1, 2, 4])).unwrap();
        assert_eq!(apply_entrywise(&f("identity"), &s).unwrap(), s.to_rational());
        assert_eq!(
            apply_entrywise(&f("phi"), &s).unwrap(),
            matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 2]])
        );
        let ones = apply_entrywise(&f("one"), &s).unwrap();
        assert_eq!(ones, matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]));
        assert!(all_minors_nonneg(&ones, 3).unwrap().holds);
    }

    #[test]
    fn apply_reports_domain_overflow() {
        let tiny = ArithmeticFunction {
            name: "tiny",
            eval: |x| int(x.clone()),
            domain_bound: 3,
        };
        let s = GcdMatrix::build(&naturals(&[2, 4])).unwrap();
        assert_eq!(
            apply_entrywise(&tiny, &s),
            Err(Error::DomainOverflow {
                function: "tiny".into(),
                value: BigUint::from(4u32),
                bound: 3
            })
        );
    }

    #[test]
    fn verdict_examples() {
        for name in ["phi", "identity", "square"] {
            let v = preserver_verdict(&f(name), &naturals(&[1, 2, 4])).unwrap();
            assert!(v.guaranteed() && v.is_tn() && v.consistent(), "{name}");
        }
        let v = preserver_verdict(&f("identity"), &naturals(&[6, 2, 4])).unwrap();
        assert!(v.is_tn());
        assert_eq!(v.range, 6);
        let v = preserver_verdict(&f("succ"), &naturals(&[1, 2, 4])).unwrap();
        assert!(!v.guaranteed());
        assert_eq!(
            preserver_verdict(&f("phi"), &naturals(&[2, 3, 5])),
            Err(Error::NotTotallyNonnegative)
        );
    }

    #[test]
    fn phi_transform_of_first_naturals() {
        // S((1,..,n)) is not TN from n = 3 on, so TN of the transform is not
        // implied; it survives for n = 3 and fails from n = 4.
        for n in 1..=6u64 {
            let xs: Vec<u64> = (1..=n).collect();
            let s = GcdMatrix::build(&naturals(&xs)).unwrap();
            let m = apply_entrywise(&f("phi"), &s).unwrap();
            assert!(crate::exact_linalg::det(&m).unwrap() >= ExactRational::zero());
            let scan = all_minors_nonneg(&m, n as usize).unwrap();
            assert_eq!(scan.holds, n <= 3, "n = {n}");
            if let Some(w) = scan.witness {
                assert_eq!((w.rows, w.cols), (vec![0, 2], vec![2, 3]));
                assert_eq!(w.value, -ExactRational::one());
            }
        }
    }

    #[test]
    fn integer_factors_need_not_be_coprime() {
        let (p, q) = integer_green_factors(&naturals(&[6, 2, 4])).unwrap();
        assert_eq!(p, naturals(&[1, 1, 2]));
        assert_eq!(q, naturals(&[6, 2, 2]));
        assert_eq!(p[2].gcd(&q[2]), BigUint::from(2u32));
    }

    #[test]
    fn coprime_factors_example() {
        // (6, 2, 4): 2 has exponents (1,1,2), 3 has (1,0,0)
        let (p, q) = coprime_green_factors(&naturals(&[6, 2, 4])).unwrap();
        assert_eq!(p, naturals(&[2, 2, 4]));
        assert_eq!(q, naturals(&[3, 1, 1]));
        let (p, q) = coprime_green_factors(&naturals(&[4, 6, 9])).unwrap();
        assert_eq!(p, naturals(&[1, 3, 9]));
        assert_eq!(q, naturals(&[4, 2, 1]));
    }

    fn tn_corpus(max: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for a in 1..=max {
            for b in 1..=max {
                for c in 1..=max {
                    let xs = vec![a, b, c];
                    if is_tn(&GcdMatrix::build(&naturals(&xs)).unwrap(), Method::Condition4).is_tn() {
                        out.push(xs);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn factor_chains_and_coprimality_over_corpus() {
        for xs in tn_corpus(30) {
            let x = naturals(&xs);
            let s = GcdMatrix::build(&x).unwrap();
            let (ip, iq) = integer_green_factors(&x).unwrap();
            let (cp, cq) = coprime_green_factors(&x).unwrap();
            for i in 0..3 {
                for j in i..3 {
                    assert_eq!(&ip[i] * &iq[j], *s.get(i, j), "{xs:?}");
                    assert_eq!(&cp[i] * &cq[j], *s.get(i, j), "{xs:?}");
                    assert!(cp[i].gcd(&cq[j]).is_one(), "{xs:?}");
                }
            }
            for i in 0..2 {
                assert!(ip[i + 1].is_multiple_of(&ip[i]) && iq[i].is_multiple_of(&iq[i + 1]));
                assert!(cp[i + 1].is_multiple_of(&cp[i]) && cq[i].is_multiple_of(&cq[i + 1]));
            }
        }
    }

    #[test]
    fn transformed_green_form_reconstructs_for_registered_preservers() {
        let family = ["one", "identity", "square", "cube", "phi", "sigma0", "sigma1"];
        for xs in tn_corpus(20) {
            let x = naturals(&xs);
            let s = GcdMatrix::build(&x).unwrap();
            for name in family {
                let g = transformed_green_form(&f(name), &x).unwrap();
                let m = apply_entrywise(&f(name), &s).unwrap();
                assert!(g.reconstructs(&m), "{name} {xs:?}");
                assert!(green_tn_criterion(&g), "{name} {xs:?}");
            }
        }
    }
}
