//! Adjacency text formats.
//!
//! Dense: one whitespace-separated row per line. Edge list: `i j [weight]`
//! per line, 0-based, weight defaulting to 1, each undirected edge once.
//! Blank lines and `#` comments are ignored in both.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_number<T: Scalar>(tok: &str, line: usize) -> Result<T> {
    let x: f64 = tok
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("not a number: {tok:?}") })?;
    T::from_f64(x).ok_or_else(|| Error::Parse { line, msg: format!("out of range: {tok:?}") })
}

pub fn parse_dense<T: Scalar>(text: &str) -> Result<Matrix<T>> {
    let mut rows = Vec::new();
    for (line, content) in content_lines(text) {
        let row = content
            .split_whitespace()
            .map(|tok| parse_number(tok, line))
            .collect::<Result<Vec<T>>>()?;
        if let Some(first) = rows.first() {
            let first: &Vec<T> = first;
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {} entries, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    if rows.len() != rows[0].len() {
        return Err(Error::NotSquare { rows: rows.len(), row: 0, cols: rows[0].len() });
    }
    Matrix::from_rows(&rows)
}

/// Parses an edge list; `n` defaults to one past the largest index seen.
pub fn parse_edge_list<T: Scalar>(text: &str, n: Option<usize>) -> Result<Matrix<T>> {
    let mut edges = Vec::new();
    let mut max_index = None;
    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(Error::Parse { line, msg: "expected `i j [weight]`".into() });
        }
        let idx = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse { line, msg: format!("bad node index {tok:?}") })
        };
        let (i, j) = (idx(toks[0])?, idx(toks[1])?);
        let w = match toks.get(2) {
            Some(tok) => parse_number(tok, line)?,
            None => T::one(),
        };
        max_index = Some(max_index.map_or(i.max(j), |m: usize| m.max(i).max(j)));
        edges.push((line, i, j, w));
    }
    let n = match (n, max_index) {
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => return Err(Error::Empty),
    };
    let mut g = Matrix::zeros(n, n);
    let mut present = vec![false; n * n];
    for (line, i, j, w) in edges {
        if i >= n || j >= n {
            return Err(Error::Parse { line, msg: format!("edge ({i}, {j}) outside {n} nodes") });
        }
        if i == j {
            return Err(Error::Parse { line, msg: format!("self-loop at node {i}") });
        }
        if present[i * n + j] {
            return Err(Error::Parse { line, msg: format!("duplicate edge ({i}, {j})") });
        }
        present[i * n + j] = true;
        present[j * n + i] = true;
        g[(i, j)] = w;
        g[(j, i)] = w;
    }
    Ok(g)
}

pub fn emit_dense<T: Scalar>(g: &Matrix<T>) -> String {
    let mut out = String::new();
    for i in 0..g.n_rows() {
        let row: Vec<String> = g.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Upper-triangle edges; weight omitted when it equals one.
pub fn emit_edge_list<T: Scalar>(g: &Matrix<T>) -> String {
    let mut out = String::new();
    for i in 0..g.n_rows() {
        for j in (i + 1)..g.n_cols() {
            let w = g[(i, j)];
            if w == T::one() {
                let _ = writeln!(out, "{i} {j}");
            } else if w != T::zero() {
                let _ = writeln!(out, "{i} {j} {w}");
            }
        }
    }
    out
}
