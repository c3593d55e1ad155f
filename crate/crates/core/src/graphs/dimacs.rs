//! DIMACS undirected graph format: `c` comments, one `p edge n m` line and
//! `e u v` lines with 1-based vertices.

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

pub fn write(g: &Graph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.num_vertices(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn parse(text: &str) -> Result<Graph> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut seen = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let mut parts = line.split_whitespace();
        let bad = |what: &str| Error::parse(format!("line {}: {what}: {line:?}", lineno + 1));
        match parts.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(bad("second problem line"));
                }
                let kind = parts.next().ok_or_else(|| bad("missing format"))?;
                if kind != "edge" && kind != "col" {
                    return Err(bad("unsupported format"));
                }
                let n: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("bad vertex count"))?;
                let m: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("bad edge count"))?;
                graph = Some((Graph::new(n), m));
            }
            Some("e") => {
                let (g, _) = graph.as_mut().ok_or_else(|| bad("edge before problem line"))?;
                let mut endpoint = || -> Result<usize> {
                    let x: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("bad endpoint"))?;
                    if x == 0 || x > g.num_vertices() {
                        return Err(bad("endpoint out of range"));
                    }
                    Ok(x - 1)
                };
                let u = endpoint()?;
                let v = endpoint()?;
                g.add_edge(u, v);
                seen += 1;
            }
            Some(_) => return Err(bad("unknown line type")),
        }
    }
    let (g, m) = graph.ok_or_else(|| Error::parse("missing problem line"))?;
    if seen != m {
        return Err(Error::parse(format!(
            "problem line declares {m} edges, found {seen}"
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_reads() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        let text = write(&g, &["two edges"]);
        assert_eq!(text, "c two edges\np edge 4 2\ne 1 2\ne 3 4\n");
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse("e 1 2\n").is_err());
        assert!(parse("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse("x\n").is_err());
    }
}
