//! Structured reports. Every command produces one [`Report`]; the JSON form
//! round-trips exactly. Indices in reports are 1-based and rationals are
//! strings `num/den` in lowest terms (integers without `/1`).

use serde::{Deserialize, Serialize};

use gcdtn::exact_linalg::{ExactRational, MinorWitness, RationalMatrix};
use gcdtn::tn_analysis::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// `X` as decimal strings.
    pub input: Vec<String>,
    pub method: Option<String>,
    pub result: Body,
    pub witness: Option<WitnessRecord>,
    pub notes: Vec<String>,
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Build {
        matrix: Vec<Vec<String>>,
    },
    Check {
        verdict: String,
        methods: Vec<MethodRecord>,
        consistent: bool,
    },
    Minor {
        rows: Vec<usize>,
        cols: Vec<usize>,
        oracle: String,
        closed_form: Option<String>,
        gcd_closed_form: Option<String>,
        agree: bool,
    },
    Invert {
        structure: String,
        tn: bool,
        diagonal: Option<Vec<String>>,
        off_diagonal: Option<Vec<String>>,
        matrix: Option<Vec<Vec<String>>>,
        verified: bool,
    },
    Transform {
        function: String,
        matrix: Vec<Vec<String>>,
        verdict: String,
        max_order: usize,
        input_tn: bool,
        multiplicative_failure: Option<[u64; 2]>,
        monotone_failure: Option<[u64; 2]>,
        hypothesis_range: Option<u64>,
        guaranteed: bool,
    },
    Generate {
        n: usize,
        seed: u64,
        requested: String,
        distinct: bool,
        xs: Vec<String>,
        verdict: String,
    },
    Smith {
        n: u64,
        product: String,
        determinant: String,
        equal: bool,
    },
}

/// Verdict of a single characterization inside a `check` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodRecord {
    pub method: String,
    pub verdict: String,
    /// True when the method scanned less than it needs to be conclusive.
    pub partial: bool,
    pub witness: Option<WitnessRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub description: String,
    pub detail: WitnessDetail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDetail {
    Minor {
        rows: Vec<usize>,
        cols: Vec<usize>,
        value: String,
    },
    Triple {
        i: usize,
        j: usize,
        k: usize,
        condition: String,
    },
    Exponent {
        prime: String,
        exponents: Vec<u32>,
        rise: [usize; 2],
        fall: [usize; 2],
    },
    GreenMismatch {
        row: usize,
        col: usize,
    },
    GreenForm {
        p: Vec<String>,
        q: Vec<String>,
    },
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn rational(v: &ExactRational) -> String {
    v.to_string()
}

pub fn rationals(v: &[ExactRational]) -> Vec<String> {
    v.iter().map(rational).collect()
}

pub fn matrix(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rationals(m.row(i))).collect()
}

impl From<&MinorWitness> for WitnessRecord {
    fn from(w: &MinorWitness) -> Self {
        Self {
            description: w.to_string(),
            detail: WitnessDetail::Minor {
                rows: one_based(&w.rows),
                cols: one_based(&w.cols),
                value: rational(&w.value),
            },
        }
    }
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        let detail = match w {
            Witness::Minor(m) => return m.into(),
            Witness::Triple(t) => WitnessDetail::Triple {
                i: t.i + 1,
                j: t.j + 1,
                k: t.k + 1,
                condition: t.condition.name().to_string(),
            },
            Witness::Exponent(e) => WitnessDetail::Exponent {
                prime: e.prime.to_string(),
                exponents: e.exponents.clone(),
                rise: [e.rise.0 + 1, e.rise.1 + 1],
                fall: [e.fall.0 + 1, e.fall.1 + 1],
            },
            Witness::GreenMismatch { row, col } => WitnessDetail::GreenMismatch {
                row: row + 1,
                col: col + 1,
            },
            Witness::Green(g) => WitnessDetail::GreenForm {
                p: rationals(g.p()),
                q: rationals(g.q()),
            },
        };
        Self {
            description: w.to_string(),
            detail,
        }
    }
}

fn grid(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| format!("{v:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering; the first line carries the headline result.
    pub fn to_text(&self) -> String {
        let mut out: Vec<String> = Vec::new();
        match &self.result {
            Body::Build { matrix } => out.push(grid(matrix)),
            Body::Check {
                verdict, methods, ..
            } => {
                out.push(verdict.clone());
                if let Some(m) = &self.method {
                    out.push(format!("method: {m}"));
                }
                if let Some(w) = &self.witness {
                    out.push(format!("witness: {}", w.description));
                }
                if methods.len() > 1 {
                    for m in methods {
                        let partial = if m.partial { " (partial)" } else { "" };
                        let witness = m
                            .witness
                            .as_ref()
                            .map(|w| format!(": {}", w.description))
                            .unwrap_or_default();
                        out.push(format!("  {}: {}{partial}{witness}", m.method, m.verdict));
                    }
                }
            }
            Body::Minor {
                rows,
                cols,
                oracle,
                closed_form,
                gcd_closed_form,
                agree,
            } => {
                out.push(oracle.clone());
                let set = |s: &[usize]| {
                    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                };
                out.push(format!("minor: det A[{{{}}}, {{{}}}]", set(rows), set(cols)));
                out.push(format!("oracle: {oracle}"));
                if let Some(v) = closed_form {
                    out.push(format!("green closed form: {v}"));
                }
                if let Some(v) = gcd_closed_form {
                    out.push(format!("gcd closed form: {v}"));
                }
                if !agree {
                    out.push("MISMATCH between closed form and oracle".into());
                }
            }
            Body::Invert {
                structure,
                diagonal,
                off_diagonal,
                matrix,
                verified,
                ..
            } => {
                out.push(format!("structure: {structure}"));
                if let Some(d) = diagonal {
                    out.push(format!("diagonal: {}", d.join(" ")));
                }
                if let Some(o) = off_diagonal {
                    out.push(format!("off-diagonal: {}", o.join(" ")));
                }
                if let Some(m) = matrix {
                    out.push(grid(m));
                }
                out.push(format!(
                    "verified: {}",
                    if *verified { "S·inverse = I" } else { "FAILED" }
                ));
            }
            Body::Transform {
                function,
                matrix,
                verdict,
                guaranteed,
                ..
            } => {
                out.push(verdict.clone());
                out.push(format!("function: {function}"));
                out.push(grid(matrix));
                if *guaranteed {
                    out.push("guaranteed TN: multiplicative and divisibility-monotone on the range".into());
                }
                if let Some(w) = &self.witness {
                    out.push(format!("witness: {}", w.description));
                }
            }
            Body::Generate { xs, verdict, .. } => {
                out.push(xs.join(","));
                out.push(format!("verdict: {verdict}"));
            }
            Body::Smith {
                product,
                determinant,
                ..
            } => {
                out.push(format!("{product} = {determinant}"));
                out.push(format!(
                    "phi(1)...phi(n) = {product}; det S((1..n)) = {determinant}"
                ));
            }
        }
        for note in &self.notes {
            out.push(format!("note: {note}"));
        }
        out.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            command: "check".into(),
            input: vec!["2".into(), "3".into(), "5".into()],
            method: Some("all".into()),
            result: Body::Check {
                verdict: "NOT_TN".into(),
                methods: vec![MethodRecord {
                    method: "exponents".into(),
                    verdict: "NOT_TN".into(),
                    partial: false,
                    witness: Some(WitnessRecord {
                        description: "exponents of 3".into(),
                        detail: WitnessDetail::Exponent {
                            prime: "3".into(),
                            exponents: vec![0, 1, 0],
                            rise: [1, 2],
                            fall: [2, 3],
                        },
                    }),
                }],
                consistent: true,
            },
            witness: Some(WitnessRecord {
                description: "triple".into(),
                detail: WitnessDetail::Triple {
                    i: 1,
                    j: 2,
                    k: 3,
                    condition: "3b".into(),
                },
            }),
            notes: vec!["a note".into()],
            elapsed_us: 17,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let minor = Report {
            result: Body::Minor {
                rows: vec![1, 2],
                cols: vec![2, 3],
                oracle: "-3/2".into(),
                closed_form: None,
                gcd_closed_form: None,
                agree: true,
            },
            witness: None,
            ..sample()
        };
        assert_eq!(Report::from_json(&minor.to_json()).unwrap(), minor);
    }

    #[test]
    fn grid_is_right_aligned() {
        let rows = vec![vec!["1".to_string(), "10".to_string()], vec!["3/2".to_string(), "4".to_string()]];
        assert_eq!(grid(&rows), "  1  10\n3/2   4");
    }
}
