use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use hypoham_core::formats::parse_auto;
use hypoham_core::Graph;

use crate::cache::{id_key, DiskCache, FixtureStore};
use crate::transport::{HttpTransport, Transport};
use crate::{HogError, DEFAULT_BASE_URL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Cache,
    Fixture,
    Network,
}

#[derive(Debug, Clone)]
pub struct Fetched {
    pub graph: Graph,
    pub source: Source,
}

#[derive(Debug, Clone)]
pub struct ClientConfig {
    pub base_url: String,
    pub cache: DiskCache,
    pub fixtures: Option<FixtureStore>,
    pub offline: bool,
    pub timeout: Duration,
}

impl Default for ClientConfig {
    fn default() -> Self {
        ClientConfig {
            base_url: DEFAULT_BASE_URL.to_string(),
            cache: DiskCache::new(crate::default_cache_dir()),
            fixtures: Some(FixtureStore::bundled()),
            offline: false,
            timeout: Duration::from_secs(30),
        }
    }
}

/// Safe to share between threads. Fetches of one ID are serialized so a
/// cold cache is filled once; distinct IDs proceed in parallel.
pub struct HogClient {
    config: ClientConfig,
    transport: Option<Arc<dyn Transport>>,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl HogClient {
    /// Builds the reqwest transport unless the config is offline.
    pub fn new(config: ClientConfig) -> Result<Self, HogError> {
        let transport: Option<Arc<dyn Transport>> = if config.offline {
            None
        } else {
            let t = HttpTransport::new(config.timeout).map_err(|e| HogError::Network {
                url: config.base_url.clone(),
                message: e.0,
            })?;
            Some(Arc::new(t))
        };
        Ok(HogClient {
            config,
            transport,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_transport(config: ClientConfig, transport: Arc<dyn Transport>) -> Self {
        HogClient {
            transport: (!config.offline).then_some(transport),
            config,
            locks: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &ClientConfig {
        &self.config
    }

    pub fn graph_url(&self, id: u64) -> String {
        format!("{}/graphs/{id}", self.config.base_url.trim_end_matches('/'))
    }

    pub fn search_url(&self, query: &str) -> String {
        let base = format!("{}/graphs", self.config.base_url.trim_end_matches('/'));
        match reqwest::Url::parse_with_params(&base, &[("text", query)]) {
            Ok(u) => u.to_string(),
            Err(_) => base,
        }
    }

    fn lock_for(&self, key: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|e| e.into_inner());
        locks.entry(key.to_string()).or_default().clone()
    }

    fn get(&self, url: &str, what: impl FnOnce() -> String) -> Result<(u16, Vec<u8>), HogError> {
        let transport = self.transport.as_ref().ok_or_else(|| HogError::Offline(what()))?;
        let resp = transport.get(url).map_err(|e| HogError::Network {
            url: url.to_string(),
            message: e.0,
        })?;
        Ok((resp.status, resp.body))
    }

    pub fn fetch(&self, id: u64) -> Result<Graph, HogError> {
        self.fetch_with_source(id).map(|f| f.graph)
    }

    pub fn fetch_with_source(&self, id: u64) -> Result<Fetched, HogError> {
        let key = id_key(id);
        let lock = self.lock_for(&key);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(graph) = self.config.cache.get(&key)? {
            return Ok(Fetched {
                graph,
                source: Source::Cache,
            });
        }
        if let Some(graph) = self.fixture(id)? {
            self.config.cache.put(&key, &graph)?;
            return Ok(Fetched {
                graph,
                source: Source::Fixture,
            });
        }
        let url = self.graph_url(id);
        let (status, body) = self.get(&url, || format!("HoG graph {id}"))?;
        match status {
            200 => {}
            404 | 410 => return Err(HogError::UnknownId(id)),
            status => return Err(HogError::Status { url, status }),
        }
        let graph = parse_graph_payload(&body, &url)?;
        self.config.cache.put(&key, &graph)?;
        Ok(Fetched {
            graph,
            source: Source::Network,
        })
    }

    fn fixture(&self, id: u64) -> Result<Option<Graph>, HogError> {
        match &self.config.fixtures {
            Some(f) => f.get(id),
            None => Ok(None),
        }
    }

    /// IDs returned by the free-text search endpoint, in service order.
    pub fn search(&self, query: &str) -> Result<Vec<u64>, HogError> {
        let url = self.search_url(query);
        let (status, body) = self.get(&url, || format!("search for {query:?}"))?;
        if status != 200 {
            return Err(HogError::Status { url, status });
        }
        parse_search_payload(&body, &url)
    }

    /// Finds a graph known only by name: a fixture or cached copy first,
    /// then search results of the right order that pass `accept`.
    /// Whatever `accept` admits is cached under the name.
    pub fn resolve_named(
        &self,
        name: &str,
        query: &str,
        order: usize,
        accept: &(dyn Fn(&Graph) -> bool + Sync),
    ) -> Result<Option<Fetched>, HogError> {
        let key = format!("name-{name}");
        let lock = self.lock_for(&key);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(graph) = self.config.cache.get(&key)? {
            return Ok(Some(Fetched {
                graph,
                source: Source::Cache,
            }));
        }
        if let Some(fixtures) = &self.config.fixtures {
            if let Some(graph) = fixtures.named(name)? {
                return Ok(Some(Fetched {
                    graph,
                    source: Source::Fixture,
                }));
            }
        }
        for id in self.search(query)? {
            let graph = match self.fetch(id) {
                Ok(g) => g,
                Err(HogError::UnknownId(_) | HogError::Parse { .. } | HogError::Payload { .. }) => continue,
                Err(e) => return Err(e),
            };
            if graph.order() == order && accept(&graph) {
                self.config.cache.put(&key, &graph)?;
                return Ok(Some(Fetched {
                    graph,
                    source: Source::Network,
                }));
            }
        }
        Ok(None)
    }
}

const GRAPH_FIELDS: &[&str] = &["graph6", "canonicalForm", "canonical_form", "g6", "sparse6"];

fn find_encoded(v: &Value, depth: usize) -> Option<&str> {
    if depth > 4 {
        return None;
    }
    match v {
        Value::Object(map) => GRAPH_FIELDS
            .iter()
            .find_map(|k| map.get(*k).and_then(Value::as_str))
            .or_else(|| map.values().find_map(|x| find_encoded(x, depth + 1))),
        Value::Array(xs) => xs.iter().find_map(|x| find_encoded(x, depth + 1)),
        _ => None,
    }
}

/// Accepts a JSON document carrying a graph6/sparse6 string under one of the
/// usual field names, or a bare graph6/sparse6 line.
pub fn parse_graph_payload(body: &[u8], origin: &str) -> Result<Graph, HogError> {
    let parse = |bytes: &[u8]| {
        parse_auto(bytes).map_err(|source| HogError::Parse {
            origin: origin.to_string(),
            source,
        })
    };
    match serde_json::from_slice::<Value>(body) {
        Ok(v @ (Value::Object(_) | Value::Array(_))) => match find_encoded(&v, 0) {
            Some(s) => parse(s.as_bytes()),
            None => Err(HogError::Payload {
                url: origin.to_string(),
                message: "no graph6 or sparse6 field".into(),
            }),
        },
        Ok(Value::String(s)) => parse(s.as_bytes()),
        _ => parse(body),
    }
}

const ID_FIELDS: &[&str] = &["graphId", "graph_id", "id", "hogId"];
const LIST_FIELDS: &[&str] = &["results", "graphs", "content", "items", "data"];

fn id_of(v: &Value) -> Option<u64> {
    match v {
        Value::Number(n) => n.as_u64(),
        Value::Object(map) => ID_FIELDS.iter().find_map(|k| map.get(*k).and_then(Value::as_u64)),
        _ => None,
    }
}

/// Accepts a list of IDs or of objects with an ID field, either bare or
/// wrapped in an object under a list-like key.
pub fn parse_search_payload(body: &[u8], origin: &str) -> Result<Vec<u64>, HogError> {
    let bad = |message: String| HogError::Payload {
        url: origin.to_string(),
        message,
    };
    let v: Value = serde_json::from_slice(body).map_err(|e| bad(e.to_string()))?;
    let list = match &v {
        Value::Array(xs) => xs,
        Value::Object(map) => LIST_FIELDS
            .iter()
            .find_map(|k| map.get(*k).and_then(Value::as_array))
            .ok_or_else(|| bad("no result list".into()))?,
        _ => return Err(bad("expected a list of results".into())),
    };
    Ok(list.iter().filter_map(id_of).collect())
}
