//! Text format for covers: a header line `cycles k`, then one line per
//! cycle listing its vertices in order without repeating the first.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use crate::cycle::{Cycle, CycleCover};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn write_cover(cover: &CycleCover) -> String {
    write_cycles(&cover.cycles)
}

pub fn write_cycles(cycles: &[Cycle]) -> String {
    let mut out = format!("cycles {}\n", cycles.len());
    for c in cycles {
        let open = &c.vertices[..c.vertices.len().saturating_sub(1)];
        let line: Vec<String> = open.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// Vertex sequences as written, without closing them or checking edges.
pub fn parse_cover(text: &str) -> Result<Vec<Vec<Vertex>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty cover file".into() })?;
    let k: usize = header
        .strip_prefix("cycles")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::Parse { line: hline, message: format!("expected `cycles k`, found `{header}`") })?;
    let mut out = Vec::with_capacity(k);
    for (line, l) in lines {
        let seq = l
            .split_whitespace()
            .map(|t| t.parse::<Vertex>().map_err(|_| Error::Parse { line, message: format!("bad vertex `{t}`") }))
            .collect::<Result<Vec<_>>>()?;
        out.push(seq);
    }
    if out.len() != k {
        return Err(Error::Parse { line: hline, message: format!("header promises {k} cycles, found {}", out.len()) });
    }
    Ok(out)
}

/// Closes each sequence, as `verify_cover` expects.
pub fn closed_walks(seqs: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    seqs.iter()
        .map(|s| {
            let mut w = s.clone();
            if let Some(&f) = s.first() {
                w.push(f);
            }
            w
        })
        .collect()
}

/// Parses and resolves every cycle against `g`.
pub fn read_cover(g: &Graph, text: &str) -> Result<CycleCover> {
    let cycles = parse_cover(text)?
        .iter()
        .map(|s| Cycle::from_vertices(g, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(CycleCover::new(g.m(), cycles))
}
