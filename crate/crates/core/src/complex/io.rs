//! Line-based complex files.
//!
//! ```text
//! # boundary of a triangle
//! dim 1
//! 0 1
//! 1 2
//! 0 2
//! ```
//!
//! Each remaining line is one top simplex as an increasing vertex tuple;
//! `cone-vertex v` marks `v` as the cone point.

use std::path::Path;

use super::{SimplicialComplex, Stratification};
use crate::error::{Error, Result};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn parse_vertex(tok: &str, line: usize) -> Result<usize> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) || tok.is_empty() {
        return parse_err(line, format!("malformed tuple: `{tok}` is not a vertex index"));
    }
    match tok.parse::<u32>() {
        Ok(v) => Ok(v as usize),
        Err(_) => parse_err(line, format!("vertex index out of range: {tok}")),
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut declared_dim: Option<usize> = None;
    let mut cone_vertex: Option<(usize, usize)> = None;
    let mut tops: Vec<Vec<usize>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        match words.next() {
            Some("dim") => {
                let rest: Vec<&str> = words.collect();
                match rest.as_slice() {
                    [d] => match d.parse::<usize>() {
                        Ok(d) => declared_dim = Some(d),
                        Err(_) => return parse_err(line, format!("bad dimension `{d}`")),
                    },
                    _ => return parse_err(line, "expected `dim <d>`"),
                }
                continue;
            }
            Some("cone-vertex") => {
                let rest: Vec<&str> = words.collect();
                match rest.as_slice() {
                    [v] => cone_vertex = Some((parse_vertex(v, line)?, line)),
                    _ => return parse_err(line, "expected `cone-vertex <v>`"),
                }
                continue;
            }
            _ => {}
        }
        let cleaned: String =
            content.chars().map(|c| if c == ',' || c == '(' || c == ')' { ' ' } else { c }).collect();
        let tuple: Vec<usize> =
            cleaned.split_whitespace().map(|t| parse_vertex(t, line)).collect::<Result<_>>()?;
        if tuple.is_empty() {
            return parse_err(line, "malformed tuple: no vertices");
        }
        for w in tuple.windows(2) {
            if w[0] == w[1] {
                return parse_err(line, format!("degenerate simplex: vertex {} repeated", w[0]));
            }
            if w[0] > w[1] {
                return parse_err(line, "malformed tuple: vertices must be increasing");
            }
        }
        if let Some(d) = declared_dim {
            if tuple.len() > d + 1 {
                return parse_err(line, format!("simplex of dimension {} exceeds declared dim {d}", tuple.len() - 1));
            }
        }
        tops.push(tuple);
    }
    let mut k = SimplicialComplex::from_simplices(tops).map_err(|e| Error::Parse { line: 0, message: e.to_string() })?;
    if let Some((v, line)) = cone_vertex {
        if !k.contains(&[v]) {
            return parse_err(line, format!("vertex index out of range: cone vertex {v} is not a vertex"));
        }
        k.set_label(v, "w");
        let n = k.dim().unwrap_or(0);
        k.set_stratification(Stratification::cone(n, v)).map_err(|e| Error::Parse { line, message: e.to_string() })?;
    }
    Ok(k)
}

pub fn read_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_complex(&text)
}

/// Maximal simplices, one per line, in a form [`parse_complex`] reads back.
pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    if let Some(d) = k.dim() {
        out.push_str(&format!("dim {d}\n"));
    }
    if let Some(w) = k.cone_vertex() {
        out.push_str(&format!("cone-vertex {w}\n"));
    }
    let top = k.dim().map_or(0, |d| d + 1);
    for d in 0..top {
        for s in k.simplices(d) {
            let maximal = k.simplices(d + 1).iter().all(|t| !s.iter().all(|v| t.contains(v)));
            if maximal {
                let words: Vec<String> = s.iter().map(usize::to_string).collect();
                out.push_str(&words.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_circle() {
        let k = parse_complex("# circle\ndim 1\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(k.counts(), vec![3, 3]);
    }

    #[test]
    fn degenerate_names_line() {
        let e = parse_complex("0 1\n(1,1,2)\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, message: "degenerate simplex: vertex 1 repeated".into() });
        assert!(e.to_string().contains("degenerate simplex"));
    }

    #[test]
    fn malformed_and_out_of_range() {
        assert!(matches!(parse_complex("0 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_complex("0 1\n0 99999999999\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_complex("dim 1\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_complex("0 1\ncone-vertex 5\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn round_trip() {
        let text = "dim 2\ncone-vertex 3\n0 1 3\n0 2 3\n1 2 3\n";
        let k = parse_complex(text).unwrap();
        assert_eq!(k.cone_vertex(), Some(3));
        let again = parse_complex(&write_complex(&k)).unwrap();
        assert_eq!(again, k);
        assert_eq!(again.cone_vertex(), Some(3));
    }
}
