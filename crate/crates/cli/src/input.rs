//! Where a command's graph comes from.

use std::path::PathBuf;
use std::str::FromStr;

use hypoham_core::formats::{parse_auto, parse_edge_list, parse_embedding};
use hypoham_core::planarity::PlanarEmbedding;
use hypoham_core::{named, Graph};
use hypoham_hog::HogClient;

use crate::CliError;

/// `hog:<id>`, `name:<figure name>`, `builtin:<name>`, `-` for stdin, or a
/// file path. Files may hold graph6, sparse6, an edge list or an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Hog(u64),
    Named(String),
    Builtin(String),
    Stdin,
    File(PathBuf),
}

impl FromStr for GraphSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(id) = s.strip_prefix("hog:") {
            return id
                .parse()
                .map(GraphSpec::Hog)
                .map_err(|_| format!("bad HoG ID {id:?}"));
        }
        if let Some(name) = s.strip_prefix("name:") {
            return Ok(GraphSpec::Named(name.to_string()));
        }
        if let Some(name) = s.strip_prefix("builtin:") {
            builtin(name).ok_or_else(|| format!("unknown builtin graph {name:?}"))?;
            return Ok(GraphSpec::Builtin(name.to_string()));
        }
        if s == "-" {
            return Ok(GraphSpec::Stdin);
        }
        Ok(GraphSpec::File(PathBuf::from(s)))
    }
}

fn sized(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// `petersen`, `cube`, `dodecahedron`, `wiener-araya`, `k<n>`, `c<n>`,
/// `p<n>`, `prism<n>`, `star<n>`, `k<a>,<b>`.
pub fn builtin(name: &str) -> Option<Graph> {
    let name = name.to_ascii_lowercase();
    match name.as_str() {
        "petersen" => return Some(named::petersen()),
        "cube" => return Some(named::cube()),
        "dodecahedron" => return Some(named::dodecahedron()),
        "wiener-araya" => return Some(named::wiener_araya()),
        _ => {}
    }
    if let Some((a, b)) = name.strip_prefix('k').and_then(|r| r.split_once(',')) {
        return Some(named::complete_bipartite(a.parse().ok()?, b.parse().ok()?));
    }
    if let Some(k) = sized(&name, "prism") {
        return (k >= 3).then(|| named::prism(k));
    }
    if let Some(k) = sized(&name, "star") {
        return Some(named::star(k));
    }
    if let Some(n) = sized(&name, "k") {
        return Some(named::complete(n));
    }
    if let Some(n) = sized(&name, "c") {
        return (n >= 3).then(|| named::cycle(n));
    }
    if let Some(n) = sized(&name, "p") {
        return (n >= 1).then(|| named::path(n));
    }
    None
}

/// A parsed input; embeddings keep their rotation system.
pub enum Loaded {
    Graph(Graph),
    Embedding(PlanarEmbedding),
}

impl Loaded {
    pub fn graph(&self) -> &Graph {
        match self {
            Loaded::Graph(g) => g,
            Loaded::Embedding(e) => e.graph(),
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            Loaded::Graph(g) => g,
            Loaded::Embedding(e) => e.graph().clone(),
        }
    }
}

pub fn parse_text(text: &str, origin: &str) -> Result<Loaded, CliError> {
    let bad = |e: hypoham_core::formats::FormatError| CliError::Input(format!("{origin}: {e}"));
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("embedding ") {
        return parse_embedding(text).map(Loaded::Embedding).map_err(bad);
    }
    let single_token = text.split_whitespace().count() == 1;
    if single_token || first.starts_with(">>") {
        return parse_auto(text.trim().as_bytes()).map(Loaded::Graph).map_err(bad);
    }
    parse_edge_list(text).map(Loaded::Graph).map_err(bad)
}

pub fn load(spec: &GraphSpec, client: &HogClient) -> Result<Loaded, CliError> {
    match spec {
        GraphSpec::Hog(id) => Ok(Loaded::Graph(client.fetch(*id)?)),
        GraphSpec::Named(name) => {
            let store = client
                .config()
                .fixtures
                .as_ref()
                .ok_or_else(|| CliError::Environment(format!("no fixture directory for {name}")))?;
            match store.named(name)? {
                Some(g) => Ok(Loaded::Graph(g)),
                None => Err(CliError::Environment(format!(
                    "no fixture {name}.g6 in {}",
                    store.dir().display()
                ))),
            }
        }
        GraphSpec::Builtin(name) => builtin(name)
            .map(Loaded::Graph)
            .ok_or_else(|| CliError::Usage(format!("unknown builtin graph {name:?}"))),
        GraphSpec::Stdin => {
            let mut text = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
                .map_err(|e| CliError::Environment(format!("reading stdin: {e}")))?;
            parse_text(&text, "stdin")
        }
        GraphSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Environment(format!("{}: {e}", path.display())))?;
            parse_text(&text, &path.display().to_string())
        }
    }
}
