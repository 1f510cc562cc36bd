//! Text and JSON serialization of triple systems and graphs.
//!
//! `.3uh` format: `#` starts a comment line, the first data line is `n m`,
//! followed by `m` lines of three whitespace-separated vertex labels.
//! Labels that already look like integers below `n` are taken verbatim;
//! any other labels are normalized to dense indices in order of first
//! appearance.  Writing always emits dense 0-based labels, so
//! `read(write(F)) == F` exactly.
//!
//! Graph edge lists (`.edges`) follow the same scheme with two labels per
//! line.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::system::TripleSystem;

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

struct Labeler {
    n: usize,
    numeric: bool,
    map: HashMap<String, usize>,
}

impl Labeler {
    fn new(n: usize, tokens: &[&str]) -> Self {
        let numeric = tokens
            .iter()
            .all(|t| t.parse::<usize>().map(|v| v < n).unwrap_or(false));
        Labeler {
            n,
            numeric,
            map: HashMap::new(),
        }
    }

    fn resolve(&mut self, token: &str) -> Result<usize> {
        if self.numeric {
            return Ok(token.parse::<usize>().unwrap());
        }
        let next = self.map.len();
        if let Some(&v) = self.map.get(token) {
            return Ok(v);
        }
        if next >= self.n {
            return Err(Error::Parse(format!(
                "more than {} distinct labels (at label {token:?})",
                self.n
            )));
        }
        self.map.insert(token.to_string(), next);
        Ok(next)
    }
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let n = it
        .next()
        .ok_or_else(|| Error::Parse("missing vertex count".into()))?
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
    let m = it
        .next()
        .ok_or_else(|| Error::Parse("missing edge count".into()))?
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("bad edge count: {e}")))?;
    if it.next().is_some() {
        return Err(Error::Parse("trailing tokens after header".into()));
    }
    Ok((n, m))
}

/// Parse a `.3uh` document.
pub fn parse_3uh(text: &str) -> Result<TripleSystem> {
    let mut lines = data_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    let (n, m) = parse_header(header)?;
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split_whitespace().collect()).collect();
    if rows.len() != m {
        return Err(Error::Parse(format!(
            "expected {m} triples, found {}",
            rows.len()
        )));
    }
    let all_tokens: Vec<&str> = rows.iter().flatten().copied().collect();
    let mut labeler = Labeler::new(n, &all_tokens);
    let mut sets = Vec::with_capacity(m);
    for row in &rows {
        if row.len() != 3 {
            return Err(Error::Parse(format!("expected 3 labels, got {row:?}")));
        }
        let mut t = [0usize; 3];
        for (slot, token) in t.iter_mut().zip(row) {
            *slot = labeler.resolve(token)?;
        }
        sets.push(t);
    }
    TripleSystem::build(n, sets)
}

/// Render a system as `.3uh` text (dense labels, sorted triples).
pub fn render_3uh(ts: &TripleSystem) -> String {
    ts.to_string()
}

pub fn read_3uh(path: &Path) -> Result<TripleSystem> {
    parse_3uh(&std::fs::read_to_string(path)?)
}

pub fn write_3uh(path: &Path, ts: &TripleSystem) -> Result<()> {
    Ok(std::fs::write(path, render_3uh(ts))?)
}

/// JSON mirror of the `.3uh` format.
#[derive(Debug, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub triples: Vec<[usize; 3]>,
}

pub fn to_json(ts: &TripleSystem) -> String {
    let doc = SystemJson {
        n: ts.n(),
        triples: ts.triples().iter().map(|t| t.vertices()).collect(),
    };
    serde_json::to_string(&doc).expect("serializing a triple system cannot fail")
}

pub fn from_json(text: &str) -> Result<TripleSystem> {
    let doc: SystemJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad json: {e}")))?;
    TripleSystem::build(doc.n, doc.triples)
}

/// Parse an edge-list graph document (`n m` header, then `u v` lines).
pub fn parse_edges(text: &str) -> Result<Graph> {
    let mut lines = data_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    let (n, m) = parse_header(header)?;
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split_whitespace().collect()).collect();
    if rows.len() != m {
        return Err(Error::Parse(format!(
            "expected {m} edges, found {}",
            rows.len()
        )));
    }
    let all_tokens: Vec<&str> = rows.iter().flatten().copied().collect();
    let mut labeler = Labeler::new(n, &all_tokens);
    let mut edges = Vec::with_capacity(m);
    for row in &rows {
        if row.len() != 2 {
            return Err(Error::Parse(format!("expected 2 labels, got {row:?}")));
        }
        let u = labeler.resolve(row[0])?;
        let v = labeler.resolve(row[1])?;
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

pub fn render_edges(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_edges(path: &Path) -> Result<Graph> {
    parse_edges(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_3uh() {
        let f = TripleSystem::build(6, [[0, 1, 3], [0, 2, 4], [1, 2, 5]]).unwrap();
        let text = render_3uh(&f);
        assert_eq!(parse_3uh(&text).unwrap(), f);
    }

    #[test]
    fn comments_and_one_based_labels() {
        let text = "# configuration A, as usually written 1-based\n6 3\n1 2 4\n1 3 5\n2 3 6\n";
        let f = parse_3uh(text).unwrap();
        assert_eq!(f.n(), 6);
        assert_eq!(f.len(), 3);
        // labels were normalized by first appearance: 1->0, 2->1, 4->2, 3->3, 5->4, 6->5
        assert!(f.contains(&crate::system::Triple::new(0, 1, 2).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let f = TripleSystem::build(5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn bad_counts_are_errors() {
        assert!(parse_3uh("3 2\n0 1 2\n").is_err());
        assert!(parse_3uh("3 1\n0 1\n").is_err());
    }

    #[test]
    fn edges_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(parse_edges(&render_edges(&g)).unwrap(), g);
    }
}
