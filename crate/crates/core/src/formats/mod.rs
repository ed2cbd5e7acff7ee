//! Interchange formats: graph6, sparse6 (read-only), a plain edge list and a
//! rotation-system text format for plane embeddings.

mod graph6;

pub use graph6::{emit_graph6, emit_graph6_string, parse_auto, parse_graph6, parse_sparse6};

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::planarity::{EmbeddingError, PlanarEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("input ends before the encoded graph is complete")]
    Truncated,
    #[error("{0} unexpected trailing byte(s)")]
    TrailingData(usize),
    #[error("invalid byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("encoded graph is not simple: {0}")]
    NotSimple(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses an edge list: one `u v` pair of labels per line, a lone label for
/// an isolated vertex, `#` starts a comment. Vertices are numbered in order
/// of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut pairs = Vec::new();
    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        let mut id = |t: &str| -> usize {
            *index.entry(t.to_string()).or_insert_with(|| {
                labels.push(t.to_string());
                labels.len() - 1
            })
        };
        match toks.as_slice() {
            [a] => {
                id(a);
            }
            [a, b] => {
                let (u, v) = (id(a), id(b));
                pairs.push((line, u, v));
            }
            _ => return Err(syntax(line, "expected one or two labels")),
        }
    }
    let mut g = Graph::with_labels(labels)?;
    for (line, u, v) in pairs {
        g.insert_edge(u, v)
            .map_err(|e| syntax(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.order() {
        if g.degree(v) == 0 {
            let _ = writeln!(out, "{}", g.label(v));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}

/// Parses the rotation-system format:
///
/// ```text
/// embedding <order> <faces>
/// <label>: <neighbour> <neighbour> ...
/// ```
///
/// Neighbours are listed clockwise. The header counts are checked against
/// the data and the traced faces.
pub fn parse_embedding(text: &str) -> Result<PlanarEmbedding, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::Truncated)?;
    let h: Vec<&str> = header.split_whitespace().collect();
    let (order, face_count) = match h.as_slice() {
        ["embedding", n, f] => (
            n.parse::<usize>().map_err(|_| syntax(hline, "bad order"))?,
            f.parse::<usize>().map_err(|_| syntax(hline, "bad face count"))?,
        ),
        _ => return Err(syntax(hline, "expected `embedding <order> <faces>`")),
    };
    let mut rows: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (line, content) in lines {
        let (lab, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `label: neighbours`"))?;
        let lab = lab.trim();
        if lab.is_empty() {
            return Err(syntax(line, "empty vertex label"));
        }
        rows.push((
            line,
            lab.to_string(),
            rest.split_whitespace().map(str::to_string).collect(),
        ));
    }
    if rows.len() != order {
        return Err(FormatError::HeaderMismatch(format!(
            "header declares {order} vertices, found {}",
            rows.len()
        )));
    }
    let labels: Vec<String> = rows.iter().map(|r| r.1.clone()).collect();
    let mut g = Graph::with_labels(labels)?;
    let mut rotation = Vec::with_capacity(order);
    for (line, _, nbrs) in &rows {
        let mut rot = Vec::with_capacity(nbrs.len());
        for w in nbrs {
            let wi = g
                .vertex(w)
                .ok_or_else(|| syntax(*line, format!("unknown neighbour {w:?}")))?;
            rot.push(wi);
        }
        rotation.push(rot);
    }
    for (v, rot) in rotation.iter().enumerate() {
        for &w in rot {
            if !rotation[w].contains(&v) {
                return Err(syntax(
                    rows[v].0,
                    format!("{} lists {} but not conversely", g.label(v), g.label(w)),
                ));
            }
            if v < w && !g.has_edge(v, w) {
                g.insert_edge(v, w).map_err(|e| syntax(rows[v].0, e.to_string()))?;
            }
        }
    }
    let e = PlanarEmbedding::from_rotation(g, rotation)?;
    if e.faces().len() != face_count {
        return Err(FormatError::HeaderMismatch(format!(
            "header declares {face_count} faces, rotation traces {}",
            e.faces().len()
        )));
    }
    Ok(e)
}

pub fn emit_embedding(e: &PlanarEmbedding) -> String {
    let g = e.graph();
    let mut out = format!("embedding {} {}\n", g.order(), e.faces().len());
    for v in 0..g.order() {
        let nbrs: Vec<&str> = e.rotation(v).iter().map(|&w| g.label(w)).collect();
        let _ = writeln!(out, "{}: {}", g.label(v), nbrs.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::planarity::planar_embedding;

    const CUBE: &str = "\
# the 3-cube, outer face 0 1 3 2
embedding 8 6
0: 1 2 4
1: 0 5 3
2: 0 3 6
3: 1 7 2
4: 0 6 5
5: 1 4 7
6: 2 7 4
7: 3 5 6
";

    #[test]
    fn cube_embedding_file() {
        let e = parse_embedding(CUBE).unwrap();
        assert_eq!(e.face_profile().count(4), 6);
        let again = parse_embedding(&emit_embedding(&e)).unwrap();
        assert_eq!(again, e);
    }

    #[test]
    fn k4_embedding_file() {
        let text = "embedding 4 4\na: b c d\nb: a d c\nc: a b d\nd: a c b\n";
        let e = parse_embedding(text).unwrap();
        assert_eq!(e.face_profile().count(3), 4);
    }

    #[test]
    fn embedding_errors() {
        // asymmetric rotation
        let bad = "embedding 3 2\na: b c\nb: a\nc: a b\n";
        assert!(matches!(parse_embedding(bad), Err(FormatError::Syntax { .. })));
        // wrong face count in header
        let bad = "embedding 4 5\na: b c d\nb: a d c\nc: a b d\nd: a c b\n";
        assert!(matches!(parse_embedding(bad), Err(FormatError::HeaderMismatch(_))));
        // non-planar rotation (genus one)
        let bad = "embedding 4 2\na: b c d\nb: a c d\nc: a b d\nd: a b c\n";
        assert!(matches!(
            parse_embedding(bad),
            Err(FormatError::Embedding(EmbeddingError::Euler { .. }))
        ));
        assert!(parse_embedding("").is_err());
        assert!(parse_embedding("embedding 2 1\na: b\n").is_err());
    }

    #[test]
    fn embedding_truncations_fail() {
        let text = emit_embedding(&planar_embedding(&named::dodecahedron()).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        for keep in 0..lines.len() {
            let cut = lines[..keep].join("\n");
            assert!(parse_embedding(&cut).is_err(), "kept {keep} lines");
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = named::petersen().add_vertex("lonely").unwrap().0;
        let text = emit_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back.order(), 11);
        assert_eq!(back.size(), 15);
        let named_edges = |g: &Graph| {
            let mut v: Vec<(String, String)> = g
                .edges()
                .into_iter()
                .map(|(a, b)| {
                    let (a, b) = (g.label(a).to_string(), g.label(b).to_string());
                    if a < b { (a, b) } else { (b, a) }
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(named_edges(&back), named_edges(&g));
        assert!(parse_edge_list("a b c\n").is_err());
        assert!(parse_edge_list("a a\n").is_err());
        assert!(parse_edge_list("a b\nb a\n").is_err());
    }
}
