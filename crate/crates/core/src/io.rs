//! Text formats: whitespace-separated edge lists with a `n <bits>` header
//! (`u v s` lines when signed, `u v` otherwise, `vertex v` for isolated
//! vertices, `#` comments) and a dense matrix format (side, then row-major
//! entries; non-integer entries as `num/den`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{SignedGraph, UnsignedGraph};
use crate::linalg::DenseSymMatrix;
use crate::oracle::EitherGraph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((idx + 1, toks))
    })
}

fn parse_u64(line: usize, tok: &str, what: &str) -> Result<u64> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_sign(line: usize, tok: &str) -> Result<i8> {
    match tok {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(parse_err(line, format!("invalid sign `{tok}`"))),
    }
}

enum Line {
    Header(u32),
    Vertex(u64),
    Edge(u64, u64, Option<i8>),
}

fn parse_line(line: usize, toks: &[&str]) -> Result<Line> {
    match toks {
        ["n", bits] => Ok(Line::Header(parse_u64(line, bits, "bit width")? as u32)),
        ["vertex", v] => Ok(Line::Vertex(parse_u64(line, v, "vertex id")?)),
        [u, v] => Ok(Line::Edge(
            parse_u64(line, u, "vertex id")?,
            parse_u64(line, v, "vertex id")?,
            None,
        )),
        [u, v, s] => Ok(Line::Edge(
            parse_u64(line, u, "vertex id")?,
            parse_u64(line, v, "vertex id")?,
            Some(parse_sign(line, s)?),
        )),
        _ => Err(parse_err(line, "expected `n <bits>`, `vertex <v>`, `u v [s]`")),
    }
}

/// Parses an edge list, inferring signedness from the first edge line.
/// Files with no edges parse as unsigned.
pub fn parse_graph(text: &str) -> Result<EitherGraph> {
    let mut n_bits: Option<u32> = None;
    let mut entries: Vec<(usize, Line)> = Vec::new();
    for (line, toks) in tokens(text) {
        match parse_line(line, &toks)? {
            Line::Header(bits) => {
                if n_bits.replace(bits).is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
            }
            other => entries.push((line, other)),
        }
    }
    let n_bits = n_bits.ok_or_else(|| parse_err(0, "missing `n <bits>` header"))?;
    if n_bits == 0 || n_bits > crate::graph::MAX_N_BITS {
        return Err(parse_err(0, format!("unsupported bit width {n_bits}")));
    }
    let signed = entries.iter().any(|(_, l)| matches!(l, Line::Edge(_, _, Some(_))));
    let map = |line: usize, r: std::result::Result<(), Error>| {
        r.map_err(|e| parse_err(line, e.to_string()))
    };
    if signed {
        let mut g = SignedGraph::new(n_bits);
        for (line, entry) in entries {
            match entry {
                Line::Vertex(v) => map(line, g.add_vertex(v))?,
                Line::Edge(u, v, Some(s)) => map(line, g.add_edge(u, v, s))?,
                Line::Edge(..) => {
                    return Err(parse_err(line, "unsigned edge in signed file"))
                }
                Line::Header(_) => unreachable!(),
            }
        }
        Ok(EitherGraph::Signed(g))
    } else {
        let mut g = UnsignedGraph::new(n_bits);
        for (line, entry) in entries {
            match entry {
                Line::Vertex(v) => map(line, g.add_vertex(v))?,
                Line::Edge(u, v, None) => map(line, g.add_edge(u, v))?,
                Line::Edge(..) => unreachable!("signed inferred"),
                Line::Header(_) => unreachable!(),
            }
        }
        Ok(EitherGraph::Unsigned(g))
    }
}

pub fn parse_signed_graph(text: &str) -> Result<SignedGraph> {
    match parse_graph(text)? {
        EitherGraph::Signed(g) => Ok(g),
        EitherGraph::Unsigned(_) => Err(parse_err(0, "expected signed edge list (u v s lines)")),
    }
}

pub fn parse_unsigned_graph(text: &str) -> Result<UnsignedGraph> {
    match parse_graph(text)? {
        EitherGraph::Unsigned(g) => Ok(g),
        EitherGraph::Signed(_) => Err(parse_err(0, "expected unsigned edge list (u v lines)")),
    }
}

pub fn write_unsigned_graph(g: &UnsignedGraph) -> String {
    let mut out = format!("n {}\n", g.n_bits());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        out.push_str(&format!("vertex {v}\n"));
    }
    out
}

pub fn write_signed_graph(g: &SignedGraph) -> String {
    let mut out = format!("n {}\n", g.n_bits());
    for (u, v, s) in g.edges() {
        out.push_str(&format!("{u} {v} {}\n", if s == 1 { "+1" } else { "-1" }));
    }
    for v in g.base().vertices().filter(|&v| g.base().degree(v) == 0) {
        out.push_str(&format!("vertex {v}\n"));
    }
    out
}

pub fn write_either_graph(g: &EitherGraph) -> String {
    match g {
        EitherGraph::Signed(s) => write_signed_graph(s),
        EitherGraph::Unsigned(u) => write_unsigned_graph(u),
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense matrix text: side on the first line, then one row per line.
pub fn write_matrix(m: &DenseSymMatrix) -> String {
    let mut out = format!("{}\n", m.side());
    for i in 0..m.side() {
        let row: Vec<String> = (0..m.side()).map(|j| format_rational(m.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_rational(line: usize, tok: &str) -> Result<BigRational> {
    let parse_int = |t: &str| {
        BigInt::from_str(t).map_err(|_| parse_err(line, format!("invalid entry `{tok}`")))
    };
    match tok.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_negative() || den == BigInt::from(0) {
                return Err(parse_err(line, format!("invalid denominator in `{tok}`")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(tok)?)),
    }
}

pub fn parse_matrix(text: &str) -> Result<DenseSymMatrix> {
    let mut rows = tokens(text);
    let (line, head) = rows.next().ok_or_else(|| parse_err(0, "empty matrix file"))?;
    let side = parse_u64(line, head[0], "matrix side")? as usize;
    let mut entries = Vec::with_capacity(side * side);
    for (line, toks) in rows {
        for tok in toks {
            entries.push(parse_rational(line, tok)?);
        }
    }
    if entries.len() != side * side {
        return Err(parse_err(
            0,
            format!("expected {} entries, found {}", side * side, entries.len()),
        ));
    }
    let m = DenseSymMatrix::from_fn(side, |i, j| entries[i * side + j].clone());
    Ok(m)
}
