//! House of Graphs ingestion: fetch by ID through a replaceable HTTP port,
//! cache graph6 files on disk, and fall back to shipped fixtures.
//!
//! Lookup order for an ID is cache, fixtures, network. In offline mode the
//! network step becomes [`HogError::Offline`].

mod cache;
mod client;
pub mod manifest;
pub mod transport;

use std::path::PathBuf;

use thiserror::Error;

use hypoham_core::formats::FormatError;

pub use cache::{default_cache_dir, DiskCache, FixtureStore, CACHE_DIR_VAR, FIXTURE_DIR_VAR};
pub use client::{parse_graph_payload, parse_search_payload, ClientConfig, Fetched, HogClient, Source};
pub use manifest::{manifest, Claim, ExpectedOrder, HogManifestEntry, NamedTarget};
pub use transport::{FakeTransport, HttpTransport, Response, Transport, TransportError};

pub const DEFAULT_BASE_URL: &str = "https://houseofgraphs.org/api";

#[derive(Debug, Error)]
pub enum HogError {
    #[error("network failure requesting {url}: {message}")]
    Network { url: String, message: String },
    #[error("House of Graphs has no graph with ID {0}")]
    UnknownId(u64),
    #[error("unexpected HTTP status {status} from {url}")]
    Status { url: String, status: u16 },
    #[error("could not parse graph from {origin}: {source}")]
    Parse {
        origin: String,
        #[source]
        source: FormatError,
    },
    #[error("response from {url} is not understood: {message}")]
    Payload { url: String, message: String },
    #[error("{0} is not available offline")]
    Offline(String),
    #[error("invalid cache key {0:?}")]
    InvalidKey(String),
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HogError {
    /// Failures caused by the environment rather than by the data.
    pub fn is_environmental(&self) -> bool {
        matches!(
            self,
            HogError::Network { .. } | HogError::Offline(_) | HogError::Io { .. } | HogError::Status { .. }
        )
    }
}
