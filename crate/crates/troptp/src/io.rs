//! Structured-text documents for matrices and networks.
//!
//! Matrix files:
//!
//! ```text
//! kind: trop-matrix        # or weight-matrix
//! rows: 2
//! cols: 2
//! data:
//! 0 1
//! 2 5
//! ```
//!
//! Scalars are exact rationals (`p/q`, integer, or exact decimal like
//! `-1.25`); the token `-inf` is allowed only in `trop-matrix` data.
//! Network files list named nodes, sources, targets, and weighted arcs:
//!
//! ```text
//! kind: network
//! nodes: s1 s2 a t1 t2
//! sources: s1 s2
//! targets: t1 t2
//! arcs:
//! s1 a 0
//! a t1 3
//! ```

use num::bigint::BigInt;
use num::pow::Pow;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::network::{NetArc, PlanarNetwork, WeightMatrix};
use crate::scalar::{fmt_rat, Rat, TropValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    TropMatrix,
    WeightMatrix,
    Network,
}

/// A parsed input file: either kind of matrix, or a network.
#[derive(Clone, Debug)]
pub enum Document {
    Trop(TropMatrix),
    Weights(WeightMatrix),
    Net(PlanarNetwork),
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses an exact rational: `p/q`, integer, or terminating decimal.
pub fn parse_rat(token: &str) -> Result<Rat> {
    if let Some((num, den)) = token.split_once('/') {
        let n: BigInt = num.parse().map_err(|_| parse_err(format!("bad numerator {num:?}")))?;
        let d: BigInt = den.parse().map_err(|_| parse_err(format!("bad denominator {den:?}")))?;
        if d == BigInt::from(0) {
            return Err(parse_err("zero denominator"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = token.split_once('.') {
        let bad = || parse_err(format!("bad number {token:?}"));
        let negative = whole.starts_with('-');
        let digits = if negative { &whole[1..] } else { whole };
        if digits.is_empty()
            || frac.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let w: BigInt = digits.parse().map_err(|_| bad())?;
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let mag = Rat::from_integer(w) + Rat::new(f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = token.parse().map_err(|_| parse_err(format!("bad number {token:?}")))?;
    Ok(Rat::from_integer(n))
}

fn parse_trop_token(token: &str) -> Result<TropValue> {
    if token == "-inf" {
        Ok(TropValue::NegInf)
    } else {
        parse_rat(token).map(TropValue::Finite)
    }
}

/// Key-value header lines followed by a `data:`/`arcs:` block.
struct Lines<'a> {
    rest: std::str::Lines<'a>,
}

fn header<'a>(lines: &mut std::str::Lines<'a>, key: &str) -> Result<&'a str> {
    for line in lines.by_ref() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        return line
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(':'))
            .map(str::trim)
            .ok_or_else(|| parse_err(format!("expected {key:?} line, found {line:?}")));
    }
    Err(parse_err(format!("missing {key:?} line")))
}

impl<'a> Lines<'a> {
    fn data_rows(self) -> impl Iterator<Item = &'a str> {
        self.rest
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
    }
}

/// Parses any supported document, dispatching on the `kind:` header.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = text.lines();
    let kind = header(&mut lines, "kind")?;
    match kind {
        "trop-matrix" | "weight-matrix" => parse_matrix(kind, lines),
        "network" => parse_network(lines),
        other => Err(parse_err(format!("unknown kind {other:?}"))),
    }
}

fn parse_matrix(kind: &str, mut lines: std::str::Lines<'_>) -> Result<Document> {
    let rows: usize = header(&mut lines, "rows")?
        .parse()
        .map_err(|_| parse_err("bad rows"))?;
    let cols: usize = header(&mut lines, "cols")?
        .parse()
        .map_err(|_| parse_err("bad cols"))?;
    let data = header(&mut lines, "data")?;
    if !data.is_empty() {
        return Err(parse_err("data must start on the following line"));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for line in (Lines { rest: lines }).data_rows() {
        for token in line.split_whitespace() {
            entries.push(match kind {
                "trop-matrix" => parse_trop_token(token)?,
                _ => {
                    if token == "-inf" {
                        return Err(parse_err("-inf not allowed in weight-matrix"));
                    }
                    TropValue::Finite(parse_rat(token)?)
                }
            });
        }
    }
    if entries.len() != rows * cols {
        return Err(parse_err(format!(
            "expected {} entries, found {}",
            rows * cols,
            entries.len()
        )));
    }
    if kind == "trop-matrix" {
        let m = TropMatrix::from_fn(rows, cols, |i, j| entries[i * cols + j].clone());
        Ok(Document::Trop(m))
    } else {
        if rows != cols {
            return Err(parse_err("weight-matrix must be square"));
        }
        let w = entries
            .into_iter()
            .map(|v| v.as_rat().cloned().expect("finite by construction"))
            .collect();
        Ok(Document::Weights(WeightMatrix::new(rows, w).expect("shape checked")))
    }
}

fn parse_network(mut lines: std::str::Lines<'_>) -> Result<Document> {
    let nodes: Vec<String> = header(&mut lines, "nodes")?
        .split_whitespace()
        .map(String::from)
        .collect();
    let index = |name: &str| {
        nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| parse_err(format!("unknown node {name:?}")))
    };
    let sources = header(&mut lines, "sources")?
        .split_whitespace()
        .map(index)
        .collect::<Result<Vec<_>>>()?;
    let targets = header(&mut lines, "targets")?
        .split_whitespace()
        .map(index)
        .collect::<Result<Vec<_>>>()?;
    let arcs_hdr = header(&mut lines, "arcs")?;
    if !arcs_hdr.is_empty() {
        return Err(parse_err("arcs must start on the following line"));
    }
    let mut arcs = Vec::new();
    for line in (Lines { rest: lines }).data_rows() {
        let mut parts = line.split_whitespace();
        let (from, to, weight) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(f), Some(t), Some(w), None) => (f, t, w),
            _ => return Err(parse_err(format!("bad arc line {line:?}"))),
        };
        arcs.push(NetArc {
            from: index(from)?,
            to: index(to)?,
            weight: parse_trop_token(weight)?,
        });
    }
    let net = PlanarNetwork::new(nodes, arcs, sources, targets)
        .map_err(|_| parse_err("invalid node references"))?;
    Ok(Document::Net(net))
}

/// Renders a tropical matrix document.
pub fn render_trop(a: &TropMatrix) -> String {
    let mut out = format!("kind: trop-matrix\nrows: {}\ncols: {}\ndata:\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = (0..a.cols()).map(|j| a.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Renders a weight matrix document.
pub fn render_weights(w: &WeightMatrix) -> String {
    let n = w.n();
    let mut out = format!("kind: weight-matrix\nrows: {n}\ncols: {n}\ndata:\n");
    for i in 1..=n {
        let row: Vec<String> = (1..=n).map(|j| fmt_rat(w.at(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
