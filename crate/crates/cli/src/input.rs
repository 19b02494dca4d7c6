//! Parsing of vectors, index sets, batch files and the brute-force cap.

use std::fs;

use num_bigint::BigUint;

use crate::CliError;

/// Name of the environment variable capping brute-force minor order.
pub const MAX_ORDER_VAR: &str = "GCDTN_MAX_MINOR_ORDER";

/// Largest order scanned in full when the cap is unset.
pub const DEFAULT_FULL_ORDER: usize = 12;

/// Parses `X` from tokens holding comma- or whitespace-separated positive
/// integers. A single token `@path` reads the list from a file instead.
pub fn parse_vector(tokens: &[String]) -> Result<Vec<BigUint>, CliError> {
    if let [only] = tokens {
        if let Some(path) = only.strip_prefix('@') {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            let body: String = text
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join(" ");
            return parse_list(&body);
        }
    }
    parse_list(&tokens.join(" "))
}

/// Parses a comma- or whitespace-separated list of positive integers.
pub fn parse_list(text: &str) -> Result<Vec<BigUint>, CliError> {
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: BigUint = t
                .parse()
                .map_err(|_| CliError::Usage(format!("`{t}` is not a positive integer")))?;
            if v == BigUint::ZERO {
                return Err(CliError::Usage(
                    "entries of X must be positive; got 0".into(),
                ));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Usage("X is empty".into()));
    }
    Ok(values)
}

/// Parses 1-based indices such as `1,2,4` into 0-based positions.
pub fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(CliError::Usage(format!(
                "`{t}` is not a valid 1-based index"
            ))),
        })
        .collect()
}

/// One vector per non-empty line; lines starting with `#` are ignored.
/// Returns `(line number, X)` pairs.
pub fn parse_batch(text: &str) -> Result<Vec<(usize, Vec<BigUint>)>, CliError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            parse_list(l)
                .map(|xs| (i + 1, xs))
                .map_err(|e| CliError::Usage(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

/// The minor order a brute-force scan of an `n x n` matrix may reach:
/// `min(n, cap)` when the cap is set, `n` when `n <= 12`, and a usage error
/// otherwise.
pub fn brute_force_order(n: usize, cap: Option<&str>) -> Result<usize, CliError> {
    match cap {
        Some(raw) => match raw.trim().parse::<usize>() {
            Ok(c) if c >= 1 => Ok(c.min(n)),
            _ => Err(CliError::Usage(format!(
                "{MAX_ORDER_VAR} must be a positive integer, got `{raw}`"
            ))),
        },
        None if n <= DEFAULT_FULL_ORDER => Ok(n),
        None => Err(CliError::Usage(format!(
            "a full brute-force scan of order {n} is infeasible; set {MAX_ORDER_VAR} to cap the minor order"
        ))),
    }
}

/// [`brute_force_order`] reading the cap from the environment.
pub fn env_brute_force_order(n: usize) -> Result<usize, CliError> {
    let cap = std::env::var(MAX_ORDER_VAR).ok();
    brute_force_order(n, cap.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("1,2,3").unwrap(), nums(&[1, 2, 3]));
        assert_eq!(parse_list(" 4  6,\t9 ").unwrap(), nums(&[4, 6, 9]));
        assert_eq!(parse_list("7").unwrap(), nums(&[7]));
        assert!(parse_list("0,1").is_err());
        assert!(parse_list("1,-2").is_err());
        assert!(parse_list("1,x").is_err());
        assert!(parse_list(" , ").is_err());
        let big = "123456789012345678901234567890";
        assert_eq!(parse_list(big).unwrap()[0].to_string(), big);
    }

    #[test]
    fn vectors_from_several_tokens() {
        let t = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(parse_vector(&t(&["1", "2", "4"])).unwrap(), nums(&[1, 2, 4]));
        assert_eq!(parse_vector(&t(&["1,2", "4"])).unwrap(), nums(&[1, 2, 4]));
        assert!(parse_vector(&t(&["@/nonexistent/file"])).is_err());
    }

    #[test]
    fn indices() {
        assert_eq!(parse_indices("1,2").unwrap(), vec![0, 1]);
        assert_eq!(parse_indices("3").unwrap(), vec![2]);
        assert!(parse_indices("0").is_err());
        assert!(parse_indices("a").is_err());
    }

    #[test]
    fn batch() {
        let text = "# header\n1 2 4\n\n2,3,5\n  # indented comment\n7\n";
        let rows = parse_batch(text).unwrap();
        assert_eq!(
            rows,
            vec![(2, nums(&[1, 2, 4])), (4, nums(&[2, 3, 5])), (6, nums(&[7]))]
        );
        let err = parse_batch("1 2\n0 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn brute_force_cap() {
        assert_eq!(brute_force_order(5, None).unwrap(), 5);
        assert_eq!(brute_force_order(12, None).unwrap(), 12);
        assert!(brute_force_order(13, None).is_err());
        assert_eq!(brute_force_order(13, Some("3")).unwrap(), 3);
        assert_eq!(brute_force_order(4, Some("9")).unwrap(), 4);
        assert!(brute_force_order(4, Some("0")).is_err());
        assert!(brute_force_order(4, Some("many")).is_err());
    }
}
