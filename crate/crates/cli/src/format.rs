//! Line-oriented text formats.
//!
//! Instance: `p tg <n> <m> <tau>` then `m` lines `e <u> <v> <t>`.
//! DAG: `p dag <n> <m> <r>`, `m` arc lines `a <u> <v>`, `r` lines `t <s> <t>`.
//! Static graph: `p edge <n> <m>` then `m` lines `e <u> <v>`.
//! CNF: DIMACS. In all of the above `c` lines are comments.
//!
//! Solution: optional `YES` line, optional `s <size>`, then `e <u> <v> <t>`
//! or `c <u> <v>` lines. No comments, since `c` is taken.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use tfes_core::graph::{Connection, StaticGraph, TemporalGraph, TimeEdge};
use tfes_core::reduce::{CnfFormula, Dag, TerminalPairs};
use tfes_core::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty, non-comment lines with 1-based numbers, split into fields.
fn records(text: &str, comments: bool) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(move |(i, l)| {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") if comments => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[u32; N], ParseError> {
    if fields.len() != N {
        return err(line, format!("expected {N} numbers, found {}", fields.len()));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = match f.parse() {
            Ok(x) => x,
            Err(_) => return err(line, format!("not a number: {f:?}")),
        };
    }
    Ok(out)
}

fn header<'a, const N: usize>(
    recs: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    kind: &str,
) -> Result<[u32; N], ParseError> {
    match recs.next() {
        Some((line, f)) if f.len() >= 2 && f[0] == "p" && f[1] == kind => numbers::<N>(line, &f[2..]),
        Some((line, _)) => err(line, format!("expected `p {kind}` header")),
        None => err(0, format!("missing `p {kind}` header")),
    }
}

fn count_check(line: usize, what: &str, declared: u32, found: usize) -> Result<(), ParseError> {
    if declared as usize != found {
        return err(line, format!("header declares {declared} {what}, found {found}"));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<TemporalGraph, ParseError> {
    let mut recs = records(text, true);
    let [n, m, tau] = header::<3>(&mut recs, "tg")?;
    let mut edges = BTreeSet::new();
    let mut last = 0;
    for (line, f) in recs {
        last = line;
        if f[0] != "e" {
            return err(line, format!("unexpected line type {:?}", f[0]));
        }
        let [u, v, t] = numbers::<3>(line, &f[1..])?;
        if u == 0 || u >= v || v > n {
            return err(line, format!("need 1 <= u < v <= {n}, got {u} {v}"));
        }
        if t == 0 || t > tau {
            return err(line, format!("label {t} outside 1..={tau}"));
        }
        let e = TimeEdge::new(u, v, t).expect("validated above");
        if !edges.insert(e) {
            return err(line, format!("duplicate time-edge {e}"));
        }
    }
    count_check(last, "edges", m, edges.len())?;
    Ok(TemporalGraph::new(n, tau, edges).expect("validated above"))
}

/// Header, then edges sorted by label, then endpoints.
pub fn serialize_instance(g: &TemporalGraph) -> String {
    let mut out = format!("p tg {} {} {}\n", g.n(), g.num_edges(), g.tau());
    // TimeEdge orders by (t, conn) and Connection by (u, v)
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.conn.u(), e.conn.v(), e.t).unwrap();
    }
    out
}

pub fn parse_static_graph(text: &str) -> Result<StaticGraph, ParseError> {
    let mut recs = records(text, true);
    let [n, m] = header::<2>(&mut recs, "edge")?;
    let mut edges = BTreeSet::new();
    let mut last = 0;
    for (line, f) in recs {
        last = line;
        if f[0] != "e" {
            return err(line, format!("unexpected line type {:?}", f[0]));
        }
        let [u, v] = numbers::<2>(line, &f[1..])?;
        if u == 0 || v == 0 || u > n || v > n || u == v {
            return err(line, format!("invalid edge {u} {v} for {n} vertices"));
        }
        if !edges.insert(Connection::new(u, v).expect("validated above")) {
            return err(line, format!("duplicate edge {u} {v}"));
        }
    }
    count_check(last, "edges", m, edges.len())?;
    Ok(StaticGraph::new(n, edges).expect("validated above"))
}

pub fn parse_dag(text: &str) -> Result<(Dag, TerminalPairs), ParseError> {
    let mut recs = records(text, true);
    let [n, m, r] = header::<3>(&mut recs, "dag")?;
    let mut arcs = Vec::new();
    let mut pairs = Vec::new();
    let mut last = 0;
    for (line, f) in recs {
        last = line;
        let [a, b] = numbers::<2>(line, &f[1..])?;
        if a == 0 || b == 0 || a > n || b > n {
            return err(line, format!("vertex outside 1..={n}"));
        }
        match f[0] {
            "a" => arcs.push((a, b)),
            "t" => pairs.push((a, b)),
            other => return err(line, format!("unexpected line type {other:?}")),
        }
    }
    count_check(last, "arcs", m, arcs.len())?;
    count_check(last, "terminal pairs", r, pairs.len())?;
    let dag = Dag::new(n, &arcs).or_else(|e| err(last, e.to_string()))?;
    Ok((dag, TerminalPairs::new(pairs)))
}

pub fn parse_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let mut recs = records(text, true).peekable();
    let (hline, f) = recs.next().ok_or(ParseError {
        line: 0,
        message: "missing `p cnf` header".into(),
    })?;
    if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
        return err(hline, "expected `p cnf <vars> <clauses>` header");
    }
    let [num_vars, m] = numbers::<2>(hline, &f[2..])?;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last = hline;
    'lines: for (line, f) in recs {
        last = line;
        for tok in f {
            if tok == "%" {
                break 'lines;
            }
            let lit: i32 = match tok.parse() {
                Ok(x) => x,
                Err(_) => return err(line, format!("not a literal: {tok:?}")),
            };
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    count_check(last, "clauses", m, clauses.len())?;
    CnfFormula::new(num_vars, clauses).or_else(|e| err(last, e.to_string()))
}

pub fn serialize_solution(s: &Solution) -> String {
    let mut out = format!("s {}\n", s.size());
    match s {
        Solution::Edges(es) => {
            for e in es {
                writeln!(out, "e {} {} {}", e.conn.u(), e.conn.v(), e.t).unwrap();
            }
        }
        Solution::Connections(cs) => {
            for c in cs {
                writeln!(out, "c {} {}", c.u(), c.v()).unwrap();
            }
        }
    }
    out
}

/// Edge lines or connection lines, not both. Endpoints may come in either
/// order.
pub fn parse_solution(text: &str) -> Result<Solution, ParseError> {
    let mut edges = BTreeSet::new();
    let mut conns = BTreeSet::new();
    let mut declared = None;
    let mut last = 0;
    for (line, f) in records(text, false) {
        last = line;
        match f[0] {
            "YES" if f.len() == 1 && line_is_first(text, line) => {}
            "s" => {
                let [size] = numbers::<1>(line, &f[1..])?;
                declared = Some(size);
            }
            "e" => {
                let [u, v, t] = numbers::<3>(line, &f[1..])?;
                let e = TimeEdge::new(u, v, t).or_else(|e| err(line, e.to_string()))?;
                edges.insert(e);
            }
            "c" => {
                let [u, v] = numbers::<2>(line, &f[1..])?;
                let c = Connection::new(u, v).or_else(|e| err(line, e.to_string()))?;
                conns.insert(c);
            }
            other => return err(line, format!("unexpected line type {other:?}")),
        }
    }
    let sol = match (edges.is_empty(), conns.is_empty()) {
        (_, true) => Solution::Edges(edges),
        (true, false) => Solution::Connections(conns),
        (false, false) => return err(last, "mixes time-edges and connections"),
    };
    if let Some(size) = declared {
        count_check(last, "items", size, sol.size())?;
    }
    Ok(sol)
}

fn line_is_first(text: &str, line: usize) -> bool {
    records(text, false).next().map(|r| r.0) == Some(line)
}
