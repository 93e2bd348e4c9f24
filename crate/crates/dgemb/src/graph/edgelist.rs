//! Plain-text edge-list format.
//!
//! Lines starting with `#` are comments. The first non-comment line is
//! `n <N>`; every following line is one `u v` pair, 0-indexed and
//! whitespace-separated. Duplicate edge lines are rejected. Writing is
//! deterministic: edges in sorted order, one trailing newline.

use super::DiGraph;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

pub fn write_edge_list(g: &DiGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", g.node_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<DiGraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));

    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `n <N>` header line".into()))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("n") {
        return Err(Error::Parse(format!(
            "expected `n <N>` header, got `{header}`"
        )));
    }
    let n: usize = parts
        .next()
        .ok_or_else(|| Error::Parse("header `n` missing its count".into()))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad node count in `{header}`")))?;
    if parts.next().is_some() {
        return Err(Error::Parse(format!(
            "trailing tokens in header `{header}`"
        )));
    }

    let mut seen = BTreeSet::new();
    for line in lines {
        let mut toks = line.split_whitespace();
        let u: u32 = toks
            .next()
            .ok_or_else(|| Error::Parse(format!("bad edge line `{line}`")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad edge line `{line}`")))?;
        let v: u32 = toks
            .next()
            .ok_or_else(|| Error::Parse(format!("bad edge line `{line}`")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad edge line `{line}`")))?;
        if toks.next().is_some() {
            return Err(Error::Parse(format!(
                "trailing tokens in edge line `{line}`"
            )));
        }
        if u as usize >= n || v as usize >= n {
            return Err(Error::Parse(format!(
                "edge ({u}, {v}) out of range for n = {n}"
            )));
        }
        if !seen.insert((u, v)) {
            return Err(Error::Parse(format!("duplicate edge line `{line}`")));
        }
    }
    DiGraph::from_edges(n, seen)
}
