//! Edge-list files: a header line `n m`, then `m` lines `u v` (ASCII decimal,
//! whitespace-separated). The writer emits `u < v` in lexicographic order.
//! Blank lines are ignored by the reader.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub fn write_edge_list_to<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    write_edge_list_to(g, BufWriter::new(file))?;
    Ok(())
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_edge_list_from(BufReader::new(file), path)
}

/// `origin` only labels error messages.
pub fn read_edge_list_from<R: BufRead>(reader: R, origin: &Path) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Load {
        path: PathBuf::from(origin),
        line,
        message,
    };

    let mut lines = reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header".into()))?;
    let header = header?;
    let [n, m] = parse_pair(&header).map_err(|e| err(hline, e))?;
    let n = usize::try_from(n).map_err(|_| err(hline, "n too large".into()))?;
    if n > VertexId::MAX as usize {
        return Err(err(hline, format!("n = {n} exceeds the vertex ID range")));
    }

    let mut edges = Vec::with_capacity(m.min(1 << 24) as usize);
    let mut seen_at = std::collections::HashMap::new();
    for (lineno, line) in lines {
        let line = line?;
        let [u, v] = parse_pair(&line).map_err(|e| err(lineno, e))?;
        if u >= n as u64 || v >= n as u64 {
            return Err(err(lineno, format!("edge ({u}, {v}) out of range for n = {n}")));
        }
        if u == v {
            return Err(err(lineno, format!("self-loop at vertex {u}")));
        }
        let e = (u.min(v) as VertexId, u.max(v) as VertexId);
        if let Some(first) = seen_at.insert(e, lineno) {
            return Err(err(lineno, format!("duplicate edge ({}, {}), first seen on line {first}", e.0, e.1)));
        }
        edges.push(e);
        if edges.len() as u64 > m {
            return Err(err(lineno, format!("more than the {m} edges declared in the header")));
        }
    }
    if edges.len() as u64 != m {
        return Err(err(hline, format!("header declares {m} edges, found {}", edges.len())));
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n, &edges))
}

fn parse_pair(line: &str) -> std::result::Result<[u64; 2], String> {
    let mut it = line.split_whitespace();
    let mut next = || -> std::result::Result<u64, String> {
        let tok = it.next().ok_or_else(|| format!("expected two integers, got {line:?}"))?;
        tok.parse().map_err(|_| format!("not a nonnegative integer: {tok:?}"))
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(format!("expected two integers, got {line:?}"));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read_str(s: &str) -> Result<Graph> {
        read_edge_list_from(s.as_bytes(), Path::new("<mem>"))
    }

    fn load_error_line(r: Result<Graph>) -> usize {
        match r {
            Err(Error::Load { line, .. }) => line,
            other => panic!("expected a load error, got {other:?}"),
        }
    }

    #[test]
    fn triangle_text() {
        let g = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list_to(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "3 3\n0 1\n0 2\n1 2\n");
        assert_eq!(read_str(std::str::from_utf8(&buf).unwrap()).unwrap(), g);
    }

    #[test]
    fn empty_graph_text() {
        let g = Graph::edgeless(5);
        let mut buf = Vec::new();
        write_edge_list_to(&g, &mut buf).unwrap();
        assert_eq!(buf, b"5 0\n");
        assert_eq!(read_str("5 0\n").unwrap(), g);
    }

    #[test]
    fn load_errors_name_the_line() {
        assert_eq!(load_error_line(read_str("2 1\n0 0\n")), 2);
        assert_eq!(load_error_line(read_str("3 2\n0 1\n1 0\n")), 3);
        assert_eq!(load_error_line(read_str("3 1\n0 3\n")), 2);
        assert_eq!(load_error_line(read_str("3 1\n0 x\n")), 2);
        assert_eq!(load_error_line(read_str("3 1\n0 1 2\n")), 2);
        assert_eq!(load_error_line(read_str("3 2\n0 1\n")), 1);
        assert_eq!(load_error_line(read_str("3 1\n0 1\n1 2\n")), 3);
        assert_eq!(load_error_line(read_str("")), 1);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let g = Graph::from_edges(6, [(0, 5), (1, 2), (2, 5), (3, 4)]).unwrap();
        write_edge_list(&g, &path).unwrap();
        assert_eq!(read_edge_list(&path).unwrap(), g);
    }
}
