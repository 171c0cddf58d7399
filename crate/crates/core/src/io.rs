//! File formats.
//!
//! Degree sequences are either plain text (`t n` on the first line, the `n`
//! degrees on the second) or JSON
//! (`{"t":3,"degrees":[..],"alpha_prime":"1/2","alpha":"1/1"}`).
//! Hypergraphs are plain text: `t n m` followed by `m` lines of `t` strictly
//! increasing vertex ids, edges in colex order.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::colex_cmp;
use crate::exponent::Exponent;
use crate::hypergraph::{Edge, UniformHypergraph};
use crate::params::{ParamsError, SparseParams};
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid JSON instance: {0}")]
    Json(String),
    #[error("alpha_prime and alpha must be given together")]
    PartialParams,
    #[error(transparent)]
    Params(#[from] ParamsError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// A degree sequence with its uniformity and optional sparse parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub t: usize,
    pub degrees: DegreeSequence,
    pub params: Option<SparseParams>,
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    t: usize,
    degrees: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha_prime: Option<Exponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Exponent>,
}

/// Content lines with their 1-based line numbers; blank lines and `#` comments are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, FormatError> {
    s.split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| syntax(line, format!("expected a nonnegative integer, found {w:?}")))
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, FormatError> {
    if text.trim_start().starts_with('{') {
        let raw: JsonInstance =
            serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        let degrees =
            DegreeSequence::new(raw.degrees).map_err(|e| FormatError::Json(e.to_string()))?;
        let params = match (raw.alpha_prime, raw.alpha) {
            (Some(ap), Some(a)) => Some(SparseParams::new(raw.t, ap, a)?),
            (None, None) => None,
            _ => return Err(FormatError::PartialParams),
        };
        return Ok(InstanceFile {
            t: raw.t,
            degrees,
            params,
        });
    }
    let mut lines = content_lines(text);
    let (l1, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    let head: Vec<usize> = numbers(l1, header)?;
    let [t, n] = head[..] else {
        return Err(syntax(l1, "expected `t n`"));
    };
    let mut degrees = Vec::with_capacity(n);
    let mut last = l1;
    for (ln, l) in lines {
        degrees.extend(numbers::<u64>(ln, l)?);
        last = ln;
    }
    if degrees.len() != n {
        return Err(syntax(
            last,
            format!("expected {n} degrees, found {}", degrees.len()),
        ));
    }
    let degrees = DegreeSequence::new(degrees).map_err(|e| syntax(l1, e.to_string()))?;
    Ok(InstanceFile {
        t,
        degrees,
        params: None,
    })
}

pub fn write_instance_text(t: usize, d: &DegreeSequence) -> String {
    let body: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("{t} {}\n{}\n", d.len(), body.join(" "))
}

pub fn write_instance_json(t: usize, d: &DegreeSequence, params: Option<&SparseParams>) -> String {
    let raw = JsonInstance {
        t,
        degrees: d.as_slice().to_vec(),
        alpha_prime: params.map(|p| p.alpha_prime()),
        alpha: params.map(|p| p.alpha()),
    };
    serde_json::to_string(&raw).expect("plain data") + "\n"
}

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph, FormatError> {
    let mut lines = content_lines(text);
    let (l1, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    let head: Vec<usize> = numbers(l1, header)?;
    let [t, n, m] = head[..] else {
        return Err(syntax(l1, "expected `t n m`"));
    };
    let mut h = UniformHypergraph::empty(t, n).map_err(|e| syntax(l1, e.to_string()))?;
    let mut prev: Option<(usize, Vec<usize>)> = None;
    let mut count = 0;
    for (ln, l) in lines {
        let vs: Vec<usize> = numbers(ln, l)?;
        if vs.len() != t {
            return Err(syntax(
                ln,
                format!("expected {t} vertices, found {}", vs.len()),
            ));
        }
        if vs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(syntax(ln, "vertex ids must be strictly increasing"));
        }
        if let Some((pl, p)) = &prev {
            match colex_cmp(p, &vs) {
                Ordering::Less => {}
                Ordering::Equal => {
                    return Err(syntax(ln, format!("duplicate of the edge on line {pl}")))
                }
                Ordering::Greater => return Err(syntax(ln, "edges are not in colex order")),
            }
        }
        let e = Edge::new(vs.clone()).map_err(|e| syntax(ln, e.to_string()))?;
        h.insert(e).map_err(|e| syntax(ln, e.to_string()))?;
        prev = Some((ln, vs));
        count += 1;
    }
    if count != m {
        return Err(syntax(
            l1,
            format!("header announces {m} edges, found {count}"),
        ));
    }
    Ok(h)
}

pub fn write_hypergraph(h: &UniformHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.t(), h.n(), h.edge_count());
    for e in h.edges_colex() {
        let vs: Vec<String> = e.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&vs.join(" "));
        out.push('\n');
    }
    out
}
