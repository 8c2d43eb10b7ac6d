use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use super::BasedExactSequence;
use crate::error::{contract, Result};
use crate::linalg::RatMatrix;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<Value>>>,
    #[serde(default = "one")]
    first_index: usize,
    #[serde(default)]
    log_scales: Option<Vec<f64>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn one() -> usize {
    1
}

pub(super) fn parse_sequence(text: &str) -> Result<BasedExactSequence> {
    let raw: RawSequence = match serde_json::from_str(text) {
        Ok(r) => r,
        Err(e) => return contract(format!("sequence JSON: {e}")),
    };
    if raw.maps.len() + 1 != raw.dims.len() {
        return contract(format!("{} spaces need {} maps, got {}", raw.dims.len(), raw.dims.len().saturating_sub(1), raw.maps.len()));
    }
    let mut maps = Vec::new();
    for (k, rows) in raw.maps.iter().enumerate() {
        let (r, c) = (raw.dims[k + 1], raw.dims[k]);
        if rows.len() != r {
            return contract(format!("map {k} has {} rows, expected {r}", rows.len()));
        }
        let mut m = RatMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return contract(format!("map {k} row {i} has {} entries, expected {c}", row.len()));
            }
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = parse_entry(v).map_err(|e| crate::Error::Contract(format!("map {k} entry ({i}, {j}): {e}")))?;
            }
        }
        maps.push(m);
    }
    let mut s = BasedExactSequence::new(raw.first_index, raw.dims, maps)?;
    if let Some(l) = raw.log_scales {
        s = s.with_log_scales(l)?;
    }
    if let Some(l) = raw.labels {
        s = s.with_labels(l)?;
    }
    Ok(s)
}

fn parse_entry(v: &Value) -> std::result::Result<BigRational, String> {
    match v {
        Value::Number(n) => parse_decimal(&n.to_string()),
        Value::String(s) => parse_fraction(s.trim()),
        other => Err(format!("expected a number or \"p/q\", got {other}")),
    }
}

fn parse_fraction(s: &str) -> std::result::Result<BigRational, String> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(BigRational::new(p, q))
        }
        None => parse_decimal(s),
    }
}

/// Exact value of a plain decimal such as `-1.25`.
fn parse_decimal(s: &str) -> std::result::Result<BigRational, String> {
    if s.contains(['e', 'E']) {
        return Err(format!("exponent notation not supported: `{s}`"));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| format!("not a number: `{s}`"))?;
    Ok(BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries() {
        assert_eq!(parse_entry(&serde_json::json!(3)).unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_entry(&serde_json::json!("-2/4")).unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_entry(&serde_json::json!(-1.25)).unwrap(), BigRational::new((-5).into(), 4.into()));
        assert!(parse_entry(&serde_json::json!("1/0")).is_err());
        assert!(parse_entry(&serde_json::json!(true)).is_err());
    }

    #[test]
    fn empty_spaces_and_shapes() {
        let s = parse_sequence(r#"{"dims": [0, 1, 1, 0], "maps": [[[]], [[4]], []], "first_index": 2}"#).unwrap();
        assert_eq!(s.first_index(), 2);
        assert!(parse_sequence(r#"{"dims": [1, 1], "maps": [[[1, 2]]]}"#).is_err());
        assert!(parse_sequence(r#"{"dims": [1, 1], "maps": []}"#).is_err());
    }
}
