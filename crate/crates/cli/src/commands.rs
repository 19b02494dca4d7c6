use std::time::Instant;

use num_bigint::BigUint;

use gcdtn::exact_linalg::{all_minors_nonneg, det, invert, minor, ExactRational, RationalMatrix};
use gcdtn::gcd_matrix::{smith_determinant, GcdMatrix};
use gcdtn::generator::{sample_non_tn, sample_tn, sample_tn_distinct};
use gcdtn::green::{gcd_green_form, gcd_tn_inverse, gcd_tn_minor, green_minor};
use gcdtn::preservers::{
    apply_entrywise, is_divisibility_monotone, is_multiplicative, lookup, registered_names,
};
use gcdtn::tn_analysis::{is_monotone_exponents, is_tn, Method, Verdict};

use crate::report::{self, Body, MethodRecord, Report, WitnessRecord};
use crate::{CliError, Exit};

/// Largest `max X` for which preserver hypotheses are tabulated.
pub const HYPOTHESIS_RANGE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    One(Method),
    All,
}

impl MethodChoice {
    pub fn parse(name: &str) -> Option<Self> {
        if name == "all" {
            Some(MethodChoice::All)
        } else {
            Method::from_name(name).map(MethodChoice::One)
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MethodChoice::All => "all",
            MethodChoice::One(m) => m.name(),
        }
    }
}

pub type Outcome = Result<(Report, Exit), CliError>;

fn echo(xs: &[BigUint]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn finish(mut r: Report, started: Instant, exit: Exit) -> Outcome {
    r.elapsed_us = u64::try_from(started.elapsed().as_micros()).unwrap_or(u64::MAX);
    Ok((r, exit))
}

fn report(command: &str, xs: &[BigUint], result: Body) -> Report {
    Report {
        command: command.into(),
        input: echo(xs),
        method: None,
        result,
        witness: None,
        notes: Vec::new(),
        elapsed_us: 0,
    }
}

pub fn build(xs: &[BigUint]) -> Outcome {
    let started = Instant::now();
    let s = GcdMatrix::build(xs)?;
    let r = report("build", xs, Body::Build {
        matrix: report::matrix(&s.to_rational()),
    });
    finish(r, started, Exit::Success)
}

fn verdict_name(v: Verdict) -> String {
    v.to_string()
}

/// Brute force limited to minors of order `max_order`. A negative minor is
/// conclusive; a clean partial scan is not.
fn brute_force_record(s: &GcdMatrix, max_order: usize) -> Result<MethodRecord, CliError> {
    let scan = all_minors_nonneg(&s.to_rational(), max_order)?;
    Ok(MethodRecord {
        method: Method::BruteForce.name().into(),
        verdict: if scan.holds { "TN" } else { "NOT_TN" }.into(),
        partial: scan.holds && max_order < s.len(),
        witness: scan.witness.as_ref().map(WitnessRecord::from),
    })
}

fn method_record(s: &GcdMatrix, method: Method) -> MethodRecord {
    let r = is_tn(s, method);
    MethodRecord {
        method: method.name().into(),
        verdict: verdict_name(r.verdict),
        partial: false,
        witness: Some(WitnessRecord::from(&r.witness)),
    }
}

/// Runs the chosen characterizations. `max_order` is the brute-force cap;
/// `None` means brute force is infeasible, which is an error when it was
/// requested alone and a skipped method under `all`.
pub fn classify(
    s: &GcdMatrix,
    choice: MethodChoice,
    max_order: Option<usize>,
) -> Result<(Vec<MethodRecord>, Vec<String>), CliError> {
    let mut notes = Vec::new();
    let methods: Vec<Method> = match choice {
        MethodChoice::One(m) => vec![m],
        MethodChoice::All => Method::ALL.to_vec(),
    };
    let mut records = Vec::with_capacity(methods.len());
    for m in methods {
        if m != Method::BruteForce {
            records.push(method_record(s, m));
            continue;
        }
        match (max_order, choice) {
            (Some(k), _) => {
                if k < s.len() {
                    notes.push(format!("brute force limited to minors of order <= {k}"));
                }
                records.push(brute_force_record(s, k)?);
            }
            (None, MethodChoice::All) => notes.push(format!(
                "brute force skipped for n = {}; set {} to run it",
                s.len(),
                crate::input::MAX_ORDER_VAR
            )),
            (None, MethodChoice::One(_)) => {
                crate::input::brute_force_order(s.len(), None)?;
            }
        }
    }
    Ok((records, notes))
}

pub fn check(xs: &[BigUint], choice: MethodChoice, max_order: Option<usize>) -> Outcome {
    let started = Instant::now();
    let s = GcdMatrix::build(xs)?;
    let (methods, mut notes) = classify(&s, choice, max_order)?;
    let conclusive: Vec<&MethodRecord> = methods.iter().filter(|m| !m.partial).collect();
    let consistent = conclusive.windows(2).all(|w| w[0].verdict == w[1].verdict);
    let verdict = conclusive
        .first()
        .map(|m| m.verdict.clone())
        .unwrap_or_else(|| "TN".into());
    // under `all`, the triple conditions supply the headline witness
    let headline = match choice {
        MethodChoice::One(m) => methods.iter().find(|r| r.method == m.name()),
        MethodChoice::All => methods
            .iter()
            .find(|r| r.method == Method::Condition3.name()),
    };
    let witness = headline.and_then(|r| r.witness.clone());
    if !consistent {
        notes.push("characterizations disagree".into());
    }
    let exit = if !consistent {
        Exit::Inconsistent
    } else if verdict == "TN" {
        Exit::Success
    } else {
        Exit::Negative
    };
    let mut r = report("check", xs, Body::Check {
        verdict,
        methods,
        consistent,
    });
    r.method = Some(choice.name().into());
    r.witness = witness;
    r.notes = notes;
    finish(r, started, exit)
}

/// `rows` and `cols` are 0-based.
pub fn minor_cmd(xs: &[BigUint], rows: &[usize], cols: &[usize]) -> Outcome {
    let started = Instant::now();
    let s = GcdMatrix::build(xs)?;
    let oracle = minor(&s.to_rational(), rows, cols)?;
    let mut notes = Vec::new();
    let (closed, gcd) = if is_monotone_exponents(&s).holds {
        let g = gcd_green_form(xs)?;
        (
            Some(green_minor(&g, rows, cols)?),
            Some(gcd_tn_minor(xs, rows, cols)?),
        )
    } else {
        notes.push("S(X) is not TN; the closed form does not apply, value from the exact oracle".into());
        (None, None)
    };
    let agree = [&closed, &gcd].iter().all(|v| v.as_ref().is_none_or(|v| *v == oracle));
    let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect();
    let mut r = report("minor", xs, Body::Minor {
        rows: one_based(rows),
        cols: one_based(cols),
        oracle: report::rational(&oracle),
        closed_form: closed.as_ref().map(report::rational),
        gcd_closed_form: gcd.as_ref().map(report::rational),
        agree,
    });
    r.notes = notes;
    finish(r, started, if agree { Exit::Success } else { Exit::Inconsistent })
}

pub fn invert_cmd(xs: &[BigUint]) -> Outcome {
    let started = Instant::now();
    let s = GcdMatrix::build(xs)?;
    if !s.has_distinct_entries() {
        return Err(CliError::Negative(
            "S(X) is singular: X has repeated entries".into(),
        ));
    }
    let tn = is_monotone_exponents(&s).holds;
    let mut notes = Vec::new();
    let body = if tn {
        let t = gcd_tn_inverse(xs)?;
        Body::Invert {
            structure: "tridiagonal".into(),
            tn,
            diagonal: Some(report::rationals(t.diag())),
            off_diagonal: Some(report::rationals(t.offdiag())),
            matrix: None,
            verified: t.is_inverse_of_gcd(&s),
        }
    } else {
        notes.push("S(X) is not TN; dense exact inverse".into());
        let m = s.to_rational();
        let inv = invert(&m)?;
        Body::Invert {
            structure: "dense".into(),
            tn,
            diagonal: None,
            off_diagonal: None,
            matrix: Some(report::matrix(&inv)),
            verified: m.mul(&inv)? == RationalMatrix::identity(s.len()),
        }
    };
    let verified = matches!(body, Body::Invert { verified: true, .. });
    let mut r = report("invert", xs, body);
    r.notes = notes;
    finish(r, started, if verified { Exit::Success } else { Exit::Inconsistent })
}

pub fn transform(xs: &[BigUint], function: &str, max_order: usize) -> Outcome {
    let started = Instant::now();
    let f = lookup(function).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown function `{function}`; known: {}",
            registered_names().join(", ")
        ))
    })?;
    let s = GcdMatrix::build(xs)?;
    let m = apply_entrywise(&f, &s)?;
    let scan = all_minors_nonneg(&m, max_order)?;
    let input_tn = is_monotone_exponents(&s).holds;
    let mut notes = Vec::new();
    let max_x = xs.iter().max().expect("X is non-empty");
    let range = u64::try_from(max_x).ok().filter(|&r| r <= HYPOTHESIS_RANGE_LIMIT);
    let (mult, mono) = match range {
        Some(r) if input_tn => (
            is_multiplicative(&f, r)?.witness,
            is_divisibility_monotone(&f, r)?.witness,
        ),
        _ => (None, None),
    };
    let guaranteed = input_tn && range.is_some() && mult.is_none() && mono.is_none();
    if !input_tn {
        notes.push("S(X) is not TN, so no preservation guarantee applies".into());
    } else if range.is_none() {
        notes.push(format!(
            "max X exceeds {HYPOTHESIS_RANGE_LIMIT}; hypotheses not checked"
        ));
    }
    if scan.holds && max_order < s.len() {
        notes.push(format!("brute force limited to minors of order <= {max_order}"));
    }
    let verdict = if scan.holds { "TN" } else { "NOT_TN" };
    let exit = match (scan.holds, guaranteed) {
        (false, true) => Exit::Inconsistent,
        (false, false) => Exit::Negative,
        (true, _) => Exit::Success,
    };
    let mut r = report("transform", xs, Body::Transform {
        function: f.name.into(),
        matrix: report::matrix(&m),
        verdict: verdict.into(),
        max_order,
        input_tn,
        multiplicative_failure: mult.map(|(a, b)| [a, b]),
        monotone_failure: mono.map(|(a, b)| [a, b]),
        hypothesis_range: range.filter(|_| input_tn),
        guaranteed,
    });
    r.method = Some(Method::BruteForce.name().into());
    r.witness = scan.witness.as_ref().map(WitnessRecord::from);
    r.notes = notes;
    finish(r, started, exit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateArgs {
    pub n: usize,
    pub seed: u64,
    pub non_tn: bool,
    pub distinct: bool,
    pub primes: usize,
    pub max_exponent: u32,
}

pub fn generate(args: GenerateArgs, max_order: Option<usize>) -> Outcome {
    let started = Instant::now();
    let xs = match (args.non_tn, args.distinct) {
        (true, distinct) => sample_non_tn(args.n, args.seed, distinct)?,
        (false, true) => sample_tn_distinct(args.n, args.primes, args.max_exponent, args.seed)?,
        (false, false) => sample_tn(args.n, args.primes, args.max_exponent, args.seed)?,
    };
    let s = GcdMatrix::build(&xs)?;
    let (methods, mut notes) = classify(&s, MethodChoice::All, max_order)?;
    let conclusive: Vec<&MethodRecord> = methods.iter().filter(|m| !m.partial).collect();
    let verdict = conclusive[0].verdict.clone();
    let consistent = conclusive.iter().all(|m| m.verdict == verdict);
    let requested = if args.non_tn { "NOT_TN" } else { "TN" };
    let exit = if consistent && verdict == requested {
        Exit::Success
    } else {
        notes.push("generated vector does not have the requested verdict".into());
        Exit::Inconsistent
    };
    let mut r = report("generate", &xs, Body::Generate {
        n: args.n,
        seed: args.seed,
        requested: requested.into(),
        distinct: args.distinct,
        xs: echo(&xs),
        verdict,
    });
    r.method = Some(MethodChoice::All.name().into());
    r.notes = notes;
    finish(r, started, exit)
}

pub fn smith(n: u64) -> Outcome {
    let started = Instant::now();
    let product = smith_determinant(n)?;
    let count = usize::try_from(n)
        .map_err(|_| CliError::Usage(format!("n = {n} is too large")))?;
    let xs: Vec<BigUint> = (1..=n).map(BigUint::from).collect();
    let determinant = det(&GcdMatrix::build(&xs)?.to_rational())?;
    let equal = determinant == ExactRational::from_integer(product.clone().into());
    let r = Report {
        command: "smith".into(),
        input: vec![n.to_string()],
        method: None,
        result: Body::Smith {
            n,
            product: product.to_string(),
            determinant: report::rational(&determinant),
            equal,
        },
        witness: None,
        notes: if count > 1 {
            Vec::new()
        } else {
            vec!["S((1)) = [1]".into()]
        },
        elapsed_us: 0,
    };
    finish(r, started, if equal { Exit::Success } else { Exit::Inconsistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::WitnessDetail;
    use gcdtn::num_theory::naturals;

    #[test]
    fn check_all_agrees_and_names_the_triple() {
        let (r, exit) = check(&naturals(&[2, 3, 5]), MethodChoice::All, Some(3)).unwrap();
        assert_eq!(exit, Exit::Negative);
        match &r.witness.as_ref().unwrap().detail {
            WitnessDetail::Triple { i, j, k, .. } => assert_eq!((*i, *j, *k), (1, 2, 3)),
            other => panic!("unexpected witness {other:?}"),
        }
        let (_, exit) = check(&naturals(&[1, 2, 4]), MethodChoice::All, Some(3)).unwrap();
        assert_eq!(exit, Exit::Success);
    }

    #[test]
    fn partial_brute_force_is_not_conclusive() {
        let (r, exit) = check(&naturals(&[1, 2, 4]), MethodChoice::One(Method::BruteForce), Some(1)).unwrap();
        assert_eq!(exit, Exit::Success);
        match r.result {
            Body::Check { methods, .. } => assert!(methods[0].partial),
            _ => unreachable!(),
        }
        // a negative minor is conclusive even under a cap
        let (_, exit) = check(&naturals(&[2, 3, 5]), MethodChoice::All, Some(2)).unwrap();
        assert_eq!(exit, Exit::Negative);
    }

    #[test]
    fn brute_force_alone_requires_a_feasible_order() {
        let xs: Vec<u64> = (1..=13).map(|i| 1u64 << i).collect();
        let err = check(&naturals(&xs), MethodChoice::One(Method::BruteForce), None).unwrap_err();
        assert_eq!(err.exit(), Exit::Usage);
        let (r, exit) = check(&naturals(&xs), MethodChoice::All, None).unwrap();
        assert_eq!(exit, Exit::Success);
        assert!(r.notes.iter().any(|n| n.contains("skipped")));
    }

    #[test]
    fn transform_reports_hypotheses() {
        let (r, exit) = transform(&naturals(&[1, 2, 4]), "succ", 3).unwrap();
        assert_eq!(exit, Exit::Success);
        match r.result {
            Body::Transform {
                multiplicative_failure,
                guaranteed,
                ..
            } => {
                assert_eq!(multiplicative_failure, Some([1, 1]));
                assert!(!guaranteed);
            }
            _ => unreachable!(),
        }
        assert!(transform(&naturals(&[1, 2]), "nope", 2).is_err());
    }
}
