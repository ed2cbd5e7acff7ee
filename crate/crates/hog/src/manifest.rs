//! Every House of Graphs entry the reproduction relies on, with the
//! properties claimed for it. Claims are checked locally, never trusted.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "claim", content = "value")]
pub enum Claim {
    Planar,
    Hypohamiltonian,
    AlmostHypohamiltonian,
    Girth(usize),
    CubicVertices(usize),
    TrivialAutomorphisms,
    NontrivialAutomorphisms,
    /// Contains the 51085 building block as a subgraph.
    ContainsH4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum ExpectedOrder {
    Exact(usize),
    OneOf(&'static [usize]),
    Unknown,
}

impl ExpectedOrder {
    pub fn admits(&self, n: usize) -> bool {
        match self {
            ExpectedOrder::Exact(m) => *m == n,
            ExpectedOrder::OneOf(ms) => ms.contains(&n),
            ExpectedOrder::Unknown => true,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            ExpectedOrder::Exact(m) => Some(*m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HogManifestEntry {
    pub hog_id: u64,
    pub name: &'static str,
    pub expected_order: ExpectedOrder,
    pub expected_properties: &'static [Claim],
}

use Claim::*;

const HYPO: &[Claim] = &[Planar, Hypohamiltonian];
const HYPO_ASYM: &[Claim] = &[Planar, Hypohamiltonian, TrivialAutomorphisms];
const HYPO_SYM: &[Claim] = &[Planar, Hypohamiltonian, NontrivialAutomorphisms];

const ENTRIES: &[HogManifestEntry] = &[
    HogManifestEntry {
        hog_id: 1431,
        name: "WienerAraya",
        expected_order: ExpectedOrder::Exact(42),
        expected_properties: HYPO,
    },
    HogManifestEntry {
        hog_id: 17030,
        name: "G5",
        expected_order: ExpectedOrder::Exact(40),
        expected_properties: HYPO_ASYM,
    },
    HogManifestEntry {
        hog_id: 17052,
        name: "G6",
        expected_order: ExpectedOrder::Exact(40),
        expected_properties: HYPO_ASYM,
    },
    HogManifestEntry {
        hog_id: 51072,
        name: "Wiener31",
        expected_order: ExpectedOrder::Exact(31),
        expected_properties: &[Planar, AlmostHypohamiltonian, Girth(4)],
    },
    HogManifestEntry {
        hog_id: 51085,
        name: "H4",
        expected_order: ExpectedOrder::Unknown,
        expected_properties: &[],
    },
    HogManifestEntry {
        hog_id: 51093,
        name: "Graph51093",
        expected_order: ExpectedOrder::Exact(37),
        expected_properties: HYPO,
    },
    HogManifestEntry {
        hog_id: 51094,
        name: "Graph51094",
        expected_order: ExpectedOrder::Exact(37),
        expected_properties: HYPO,
    },
    HogManifestEntry {
        hog_id: 51095,
        name: "Graph51095",
        expected_order: ExpectedOrder::Exact(37),
        expected_properties: HYPO_ASYM,
    },
    HogManifestEntry {
        hog_id: 51096,
        name: "Graph51096",
        expected_order: ExpectedOrder::Exact(37),
        expected_properties: HYPO_ASYM,
    },
    HogManifestEntry {
        hog_id: 51101,
        name: "Graph51101",
        expected_order: ExpectedOrder::Exact(40),
        expected_properties: HYPO_SYM,
    },
    HogManifestEntry {
        hog_id: 51102,
        name: "Graph51102",
        expected_order: ExpectedOrder::Exact(40),
        expected_properties: HYPO_SYM,
    },
    HogManifestEntry {
        hog_id: 51107,
        name: "Graph51107",
        expected_order: ExpectedOrder::OneOf(&[43, 46, 49]),
        expected_properties: &[Planar, Hypohamiltonian, ContainsH4],
    },
];

pub fn manifest() -> &'static [HogManifestEntry] {
    ENTRIES
}

pub fn entry(hog_id: u64) -> Option<&'static HogManifestEntry> {
    ENTRIES.iter().find(|e| e.hog_id == hog_id)
}

pub fn entry_by_name(name: &str) -> Option<&'static HogManifestEntry> {
    ENTRIES.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// A graph known only by its figure name, found through text search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedTarget {
    pub name: &'static str,
    pub order: usize,
    pub query: &'static str,
    pub expected_properties: &'static [Claim],
}

const G34: &[Claim] = &[
    Planar,
    Hypohamiltonian,
    Girth(4),
    CubicVertices(26),
    NontrivialAutomorphisms,
];

const NAMED: &[NamedTarget] = &[
    NamedTarget {
        name: "G7",
        order: 34,
        query: "planar hypohamiltonian graph",
        expected_properties: G34,
    },
    NamedTarget {
        name: "G8",
        order: 34,
        query: "planar hypohamiltonian graph",
        expected_properties: G34,
    },
    NamedTarget {
        name: "G9",
        order: 37,
        query: "planar hypohamiltonian graph",
        expected_properties: &[Planar, Hypohamiltonian, CubicVertices(28)],
    },
    NamedTarget {
        name: "G10",
        order: 37,
        query: "planar hypohamiltonian graph",
        expected_properties: &[Planar, Hypohamiltonian, CubicVertices(28)],
    },
];

pub fn named_targets() -> &'static [NamedTarget] {
    NAMED
}

pub fn named_target(name: &str) -> Option<&'static NamedTarget> {
    NAMED.iter().find(|t| t.name.eq_ignore_ascii_case(name))
}
