//! Plain-text instance formats.
//!
//! All three formats share the conventions: one header line naming the
//! format, `#` starts a comment, blank lines are ignored, and element ids
//! are 1-based on disk (the library itself is 0-based).
//!
//! ```text
//! poset <n> <arc-count>     perm <n>        graph <n> <m>
//! a <u> <v>                 <v1> ... <vn>   e <u> <v>
//! ```
//!
//! A poset file lists arcs `u ≺ v` of any DAG generating the order; the
//! parser always takes the transitive closure. The writer emits the cover
//! arcs (the Hasse diagram), which round-trips to the identical poset.

use crate::graph::Graph;
use crate::poset::Poset;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// The three instance formats, distinguished by their header keyword.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Poset,
    Permutation,
    Graph,
}

impl Format {
    pub fn keyword(self) -> &'static str {
        match self {
            Format::Poset => "poset",
            Format::Permutation => "perm",
            Format::Graph => "graph",
        }
    }
}

/// Tokens with their 1-based source line numbers, comments stripped.
fn tokens(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().flat_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        body.split_whitespace().map(move |t| (i + 1, t))
    })
}

/// Reads the header keyword without consuming the input; `None` on empty
/// or unrecognized input.
pub fn detect_format(input: &str) -> Option<Format> {
    match tokens(input).next()?.1 {
        "poset" => Some(Format::Poset),
        "perm" => Some(Format::Permutation),
        "graph" => Some(Format::Graph),
        _ => None,
    }
}

fn expect_usize(
    tok: Option<(usize, &str)>,
    what: &str,
    last_line: usize,
) -> Result<(usize, usize), ParseError> {
    let (line, t) = tok.ok_or_else(|| err(last_line, format!("missing {what}")))?;
    let v = t
        .parse::<usize>()
        .map_err(|_| err(line, format!("expected {what}, found {t:?}")))?;
    Ok((line, v))
}

/// One-based id from disk to internal 0-based.
fn to_index(
    tok: Option<(usize, &str)>,
    n: usize,
    what: &str,
    last_line: usize,
) -> Result<usize, ParseError> {
    let (line, v) = expect_usize(tok, what, last_line)?;
    if v == 0 || v > n {
        return Err(err(line, format!("{what} {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

fn expect_keyword(tok: Option<(usize, &str)>, keyword: &str) -> Result<usize, ParseError> {
    match tok {
        Some((line, t)) if t == keyword => Ok(line),
        Some((line, t)) => Err(err(
            line,
            format!("expected {keyword:?} header, found {t:?}"),
        )),
        None => Err(err(1, format!("empty input; expected {keyword:?} header"))),
    }
}

fn expect_end(tok: Option<(usize, &str)>) -> Result<(), ParseError> {
    match tok {
        None => Ok(()),
        Some((line, t)) => Err(err(line, format!("unexpected trailing token {t:?}"))),
    }
}

/// Parses the `poset` format and transitively closes the arc set.
pub fn parse_poset(input: &str) -> Result<Poset, ParseError> {
    let mut toks = tokens(input);
    let header_line = expect_keyword(toks.next(), "poset")?;
    let (_, n) = expect_usize(toks.next(), "element count", header_line)?;
    let (mut last, arc_count) = expect_usize(toks.next(), "arc count", header_line)?;
    let mut arcs = Vec::with_capacity(arc_count);
    for _ in 0..arc_count {
        let line = expect_keyword(toks.next(), "a")?;
        let u = to_index(toks.next(), n, "arc source", line)?;
        let v = to_index(toks.next(), n, "arc target", line)?;
        arcs.push((u, v));
        last = line;
    }
    expect_end(toks.next())?;
    Poset::from_arcs(n, &arcs).map_err(|e| err(last, e.to_string()))
}

/// Parses the `perm` format into a 0-based permutation.
pub fn parse_permutation(input: &str) -> Result<Vec<usize>, ParseError> {
    let mut toks = tokens(input);
    let header_line = expect_keyword(toks.next(), "perm")?;
    let (mut last, n) = expect_usize(toks.next(), "length", header_line)?;
    let mut pi = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for _ in 0..n {
        let tok = toks.next();
        if let Some((line, _)) = tok {
            last = line;
        }
        let v = to_index(tok, n, "value", last)?;
        if seen[v] {
            return Err(err(last, format!("duplicate value {}", v + 1)));
        }
        seen[v] = true;
        pi.push(v);
    }
    expect_end(toks.next())?;
    Ok(pi)
}

/// Parses the `graph` format.
pub fn parse_graph(input: &str) -> Result<Graph, ParseError> {
    let mut toks = tokens(input);
    let header_line = expect_keyword(toks.next(), "graph")?;
    let (_, n) = expect_usize(toks.next(), "vertex count", header_line)?;
    let (mut last, m) = expect_usize(toks.next(), "edge count", header_line)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = expect_keyword(toks.next(), "e")?;
        let u = to_index(toks.next(), n, "edge endpoint", line)?;
        let v = to_index(toks.next(), n, "edge endpoint", line)?;
        edges.push((u, v));
        last = line;
    }
    expect_end(toks.next())?;
    Graph::from_edges(n, &edges).map_err(|e| err(last, e.to_string()))
}

/// Writes a poset as its cover arcs; reparsing restores the identical poset.
pub fn write_poset(p: &Poset) -> String {
    let arcs = p.cover_relation().base_cover_arcs();
    let mut out = String::new();
    writeln!(out, "poset {} {}", p.n(), arcs.len()).unwrap();
    for (u, v) in arcs {
        writeln!(out, "a {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_permutation(pi: &[usize]) -> String {
    let mut out = format!("perm {}", pi.len());
    out.push('\n');
    let values: Vec<String> = pi.iter().map(|v| (v + 1).to_string()).collect();
    out.push_str(&values.join(" "));
    out.push('\n');
    out
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {}", g.n(), g.m()).unwrap();
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            if u < v {
                writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_poset_with_comments() {
        let text = "# three-element chain\nposet 3 2\na 1 2\na 2 3 # closure adds 1 -> 3\n";
        let p = parse_poset(text).unwrap();
        assert_eq!(p, Poset::chain(3));
        assert_eq!(detect_format(text), Some(Format::Poset));
    }

    #[test]
    fn poset_round_trips_through_cover_arcs() {
        let mut arcs = Vec::new();
        for i in 0..6 {
            for j in i + 2..6 {
                arcs.push((i, j));
            }
        }
        let p = Poset::from_arcs(6, &arcs).unwrap();
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_poset("poset 2 1\na 1 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_poset("poset 2\n").unwrap_err();
        assert_eq!(e.line, 1); // arc count missing from the header itself
        assert!(e.message.contains("arc count"), "{e}");
    }

    #[test]
    fn poset_rejects_zero_ids_and_cycles() {
        assert!(parse_poset("poset 2 1\na 0 1\n").is_err());
        let e = parse_poset("poset 2 2\na 1 2\na 2 1\n").unwrap_err();
        assert!(e.message.contains("cycle"), "{e}");
    }

    #[test]
    fn permutation_round_trip() {
        let pi = vec![1, 0, 3, 2];
        assert_eq!(parse_permutation(&write_permutation(&pi)).unwrap(), pi);
        let text = "perm 4\n2 1\n4 3\n";
        assert_eq!(parse_permutation(text).unwrap(), pi);
    }

    #[test]
    fn permutation_rejects_duplicates_and_range() {
        assert!(parse_permutation("perm 2\n1 1\n").is_err());
        assert!(parse_permutation("perm 2\n1 3\n").is_err());
        assert!(parse_permutation("perm 2\n1\n").is_err());
    }

    #[test]
    fn graph_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_rejects_malformed_edges() {
        assert!(parse_graph("graph 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("graph 2 2\ne 1 2\ne 2 1\n").is_err());
    }

    #[test]
    fn trailing_tokens_are_rejected() {
        assert!(parse_permutation("perm 2\n1 2 junk\n").is_err());
        assert!(parse_poset("poset 1 0\nextra\n").is_err());
    }

    #[test]
    fn detect_format_matches_headers() {
        assert_eq!(detect_format("perm 3\n1 2 3"), Some(Format::Permutation));
        assert_eq!(detect_format("graph 1 0"), Some(Format::Graph));
        assert_eq!(detect_format("# comment\nposet 0 0"), Some(Format::Poset));
        assert_eq!(detect_format("nonsense"), None);
        assert_eq!(detect_format(""), None);
    }

    #[test]
    fn empty_instances_parse() {
        assert_eq!(parse_poset("poset 0 0\n").unwrap(), Poset::antichain(0));
        assert_eq!(parse_permutation("perm 0\n").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_graph("graph 0 0\n").unwrap(), Graph::empty(0));
    }
}
