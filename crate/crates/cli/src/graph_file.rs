//! Plain-text graph files.
//!
//! ```text
//! # optional comments
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use treepack_core::Graph;

#[derive(Debug, Error)]
pub enum GraphFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loaded {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphFileError {
    GraphFileError::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<(usize, usize), GraphFileError> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| {
        fields
            .next()
            .ok_or_else(|| parse_err(line, format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|e| parse_err(line, format!("bad {what}: {e}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(parse_err(line, "expected exactly two fields"));
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Loaded, GraphFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header \"n m\""))?;
    let (n, m) = numbers(header_line, header)?;
    let mut pairs = Vec::with_capacity(m);
    let mut warnings = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, text) in lines {
        let (u, v) = numbers(line, text)?;
        if u >= n || v >= n {
            return Err(parse_err(
                line,
                format!("edge {u} {v} out of range for n={n}"),
            ));
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        if u > v {
            warnings.push(format!("line {line}: edge {u} {v} written with u > v"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            warnings.push(format!("line {line}: duplicate edge {u} {v} ignored"));
            continue;
        }
        pairs.push((u, v));
    }
    let declared_lines = pairs.len() + warnings.iter().filter(|w| w.contains("duplicate")).count();
    if declared_lines != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, found {declared_lines}"),
        ));
    }
    let graph =
        Graph::from_edge_list(n, &pairs).map_err(|e| parse_err(header_line, e.to_string()))?;
    Ok(Loaded { graph, warnings })
}

pub fn load_graph(path: &Path) -> Result<Loaded, GraphFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| GraphFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph(&text)
}

/// Normalized form: header, then edges sorted with `u < v`.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn save_graph(g: &Graph, path: &Path) -> Result<(), GraphFileError> {
    std::fs::write(path, format_graph(g)).map_err(|source| GraphFileError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let l = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(l.graph.edge_list(), vec![(0, 1), (1, 2)]);
        assert!(l.warnings.is_empty());
    }

    #[test]
    fn comments_and_blank_lines() {
        let l = parse_graph("# a path\n3 2\n\n0 1 # first\n1 2\n").unwrap();
        assert_eq!(l.graph.edge_count(), 2);
    }

    #[test]
    fn out_of_range_names_the_line() {
        let err = parse_graph("3 2\n5 1\n1 2\n").unwrap_err();
        assert!(
            matches!(err, GraphFileError::Parse { line: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn duplicates_warn() {
        let l = parse_graph("3 3\n0 1\n1 0\n1 2\n").unwrap();
        assert_eq!(l.graph.edge_count(), 2);
        assert!(l.warnings.iter().any(|w| w.contains("duplicate")));
    }

    #[test]
    fn edge_count_mismatch() {
        assert!(matches!(
            parse_graph("3 3\n0 1\n"),
            Err(GraphFileError::Parse { line: 1, .. })
        ));
        assert!(parse_graph("").is_err());
        assert!(parse_graph("3 1\n0 x\n").is_err());
    }

    #[test]
    fn normalized_round_trip() {
        let text = "4 3\n0 1\n0 3\n1 2\n";
        assert_eq!(format_graph(&parse_graph(text).unwrap().graph), text);
    }
}
