use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use hypoham_cli::input::{load, GraphSpec, Loaded};
use hypoham_cli::output::{envelope, repro_table, table};
use hypoham_cli::repro::{self, HogProvider, Options, Scope};
use hypoham_cli::{exit, CliError};
use hypoham_core::constructions::{build_order, combine_four, insert, th, FourCycleSpec};
use hypoham_core::formats::{emit_embedding, emit_graph6_string};
use hypoham_core::grinberg::{exact_feasibility, residue_screen, ExactOptions};
use hypoham_core::hamiltonicity::{
    classify_with, validate, Budget, Certificate, ClassificationReport, ClassifyOptions, Decision, VertexCheck,
};
use hypoham_core::planarity::{crossing_number_at_most_one, is_planar, planar_embedding, Planarity};
use hypoham_core::symmetry::{canonical_form, is_isomorphic};
use hypoham_core::{Graph, Vertex};
use hypoham_hog::{ClientConfig, DiskCache, FixtureStore, HogClient};

#[derive(Parser)]
#[command(name = "hypoham", version, about = "Verify and construct hypohamiltonian and hypotraceable graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Treat any network access as an error.
    #[arg(long, global = true, env = "HYPOHAM_OFFLINE")]
    offline: bool,
    #[arg(long, global = true, env = "HYPOHAM_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, env = "HYPOHAM_FIXTURE_DIR")]
    fixture_dir: Option<PathBuf>,
    #[arg(long, global = true, env = "HYPOHAM_BASE_URL", default_value = hypoham_hog::DEFAULT_BASE_URL)]
    base_url: String,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "HYPOHAM_THREADS", default_value_t = 0)]
    threads: usize,
    /// Search-node cap per exhaustive search.
    #[arg(long, global = true, env = "HYPOHAM_MAX_NODES")]
    max_nodes: Option<u64>,
    /// Wall-clock cap per exhaustive search, in seconds.
    #[arg(long, global = true, env = "HYPOHAM_MAX_SECONDS")]
    max_seconds: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Download a House of Graphs entry into the cache and print it as graph6.
    Fetch { id: u64 },
    /// Compute every predicate and statistic for one graph.
    Classify {
        graph: GraphSpec,
        /// Allow Hamiltonian graphs to count as almost hypohamiltonian.
        #[arg(long)]
        almost_allow_hamiltonian: bool,
        /// Exit with status 1 unless the predicate holds; repeatable.
        #[arg(long, value_enum)]
        expect: Vec<Expect>,
    },
    /// Emit and self-validate Hamiltonicity certificates, or check a saved bundle.
    Certify {
        graph: GraphSpec,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "out")]
        check: Option<PathBuf>,
    },
    /// Planarity verdict with an embedding or a Kuratowski subdivision.
    Planar {
        graph: GraphSpec,
        #[arg(long)]
        embedding_out: Option<PathBuf>,
    },
    /// Decide whether the crossing number is 0, 1 or larger.
    Crossing { graph: GraphSpec },
    /// Grinberg residue screen and exact inside/outside feasibility.
    Grinberg {
        graph: GraphSpec,
        #[arg(long, default_value_t = 3)]
        modulus: u64,
        #[arg(long, default_value_t = 30)]
        max_faces: usize,
    },
    /// Graph-building operations.
    #[command(subcommand)]
    Construct(Construct),
    /// Test two graphs for isomorphism.
    Iso { first: GraphSpec, second: GraphSpec },
    /// Automorphism group order and canonical form.
    Aut { graph: GraphSpec },
    /// Recompute every claim and compare with the published values.
    Reproduce {
        #[arg(long, default_value = "quick")]
        scope: Scope,
        /// Also write the machine-readable report here.
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Cap in seconds for best-effort searches on large graphs.
        #[arg(long, default_value_t = 60)]
        best_effort_seconds: u64,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Thomassen expansion on a 4-cycle given by vertex labels.
    Th {
        graph: GraphSpec,
        /// Four comma-separated labels, e.g. `0,1,3,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<String>,
        /// Keep the edges v1v2 and v3v4.
        #[arg(long)]
        keep_edges: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace every vertex of a cubic host by G - w.
    Insert {
        graph: GraphSpec,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        host: GraphSpec,
        /// Contract the edges that came from the host.
        #[arg(long)]
        contract: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-graph join; each part is `<graph>@<vertex label>`.
    Combine {
        #[arg(long = "part", num_args = 1, required = true)]
        parts: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verified planar hypohamiltonian graph of order n >= 40.
    Ladder {
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum Expect {
    Planar,
    Hamiltonian,
    NonHamiltonian,
    Traceable,
    Hypohamiltonian,
    Hypotraceable,
    AlmostHypohamiltonian,
}

struct Ctx {
    client: HogClient,
    format: Format,
}

impl Ctx {
    fn load(&self, spec: &GraphSpec) -> Result<Loaded, CliError> {
        load(spec, &self.client)
    }

    fn graph(&self, spec: &GraphSpec) -> Result<Graph, CliError> {
        self.load(spec).map(Loaded::into_graph)
    }

    fn print<T: Serialize>(&self, command: &str, result: &T, human: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", envelope(command, result)),
            Format::Table => print!("{}", human()),
        }
    }
}

fn vertex(g: &Graph, label: &str) -> Result<Vertex, CliError> {
    g.vertex(label)
        .ok_or_else(|| CliError::Usage(format!("graph has no vertex labelled {label:?}")))
}

fn write_graph(path: &Option<PathBuf>, g: &Graph) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, emit_graph6_string(g) + "\n")
            .map_err(|e| CliError::Environment(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn write_text(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Environment(format!("{}: {e}", path.display())))
}

fn kv(pairs: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    table(&["property", "value"], &rows)
}

fn summary(r: &ClassificationReport) -> String {
    let census: Vec<String> = r.degree_census.counts.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    let mut pairs = vec![
        ("order", r.order.to_string()),
        ("size", r.size.to_string()),
        ("planar", r.planar.to_string()),
        ("girth", r.girth.map_or("none".into(), |g| g.to_string())),
        ("degrees", census.join(" ")),
        ("hamiltonian", r.hamiltonian.to_string()),
        ("traceable", r.traceable.to_string()),
        ("hypohamiltonian", r.hypohamiltonian.to_string()),
        ("hypotraceable", r.hypotraceable.to_string()),
        ("almost hypohamiltonian", r.almost_hypohamiltonian.decision.to_string()),
        ("automorphism group order", r.automorphism_group_order.clone().unwrap_or("-".into())),
    ];
    if let Some(w) = r.almost_hypohamiltonian.exceptional {
        pairs.push(("exceptional vertex", w.to_string()));
    }
    let mut out = kv(&pairs);
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

fn expectation_holds(e: Expect, r: &ClassificationReport) -> bool {
    match e {
        Expect::Planar => r.planar,
        Expect::Hamiltonian => r.hamiltonian == Decision::Yes,
        Expect::NonHamiltonian => r.hamiltonian == Decision::No,
        Expect::Traceable => r.traceable == Decision::Yes,
        Expect::Hypohamiltonian => r.hypohamiltonian == Decision::Yes,
        Expect::Hypotraceable => r.hypotraceable == Decision::Yes,
        Expect::AlmostHypohamiltonian => r.almost_hypohamiltonian.decision == Decision::Yes,
    }
}

/// Saved by `certify --out`, read back by `certify --check`.
#[derive(Serialize, Deserialize)]
struct Bundle {
    graph6: String,
    cycle: Option<Certificate>,
    path: Option<Certificate>,
    vertex_deleted: Vec<VertexCheck>,
}

fn check_bundle(g: &Graph, b: &Bundle) -> Vec<String> {
    let mut failures = Vec::new();
    let mut check = |what: String, cert: &Option<Certificate>, skip: &[Vertex]| {
        if let Some(c) = cert.as_ref().filter(|c| c.is_positive()) {
            if let Err(e) = validate(g, c, skip) {
                failures.push(format!("{what}: {e}"));
            }
        }
    };
    check("cycle".into(), &b.cycle, &[]);
    check("path".into(), &b.path, &[]);
    for v in &b.vertex_deleted {
        check(format!("G-{} cycle", v.label), &v.cycle, &[v.vertex]);
        check(format!("G-{} path", v.label), &v.path, &[v.vertex]);
    }
    failures
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    if g.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(g.threads)
            .build_global()
            .map_err(|e| CliError::Environment(e.to_string()))?;
    }
    let mut budget = Budget::default();
    if let Some(n) = g.max_nodes {
        budget.max_nodes = Some(n);
    }
    if let Some(s) = g.max_seconds {
        budget.max_time = Some(Duration::from_secs(s));
    }
    let config = ClientConfig {
        base_url: g.base_url.clone(),
        cache: g.cache_dir.clone().map_or_else(|| ClientConfig::default().cache, DiskCache::new),
        fixtures: Some(g.fixture_dir.clone().map_or_else(FixtureStore::bundled, FixtureStore::new)),
        offline: g.offline,
        ..ClientConfig::default()
    };
    let ctx = Ctx {
        client: HogClient::new(config)?,
        format: g.format,
    };
    let classify_opts = ClassifyOptions {
        budget,
        ..ClassifyOptions::default()
    };

    match cli.command {
        Command::Fetch { id } => {
            let f = ctx.client.fetch_with_source(id)?;
            let g6 = emit_graph6_string(&f.graph);
            let result = json!({"hog_id": id, "order": f.graph.order(), "size": f.graph.size(), "graph6": g6, "source": f.source});
            ctx.print("fetch", &result, || format!("{g6}\n"));
        }
        Command::Classify {
            graph,
            almost_allow_hamiltonian,
            expect,
        } => {
            let g = ctx.graph(&graph)?;
            let opts = ClassifyOptions {
                almost_requires_non_hamiltonian: !almost_allow_hamiltonian,
                ..classify_opts
            };
            let r = classify_with(&g, &opts);
            ctx.print("classify", &r, || summary(&r));
            let failed: Vec<Expect> = expect.into_iter().filter(|&e| !expectation_holds(e, &r)).collect();
            if !failed.is_empty() {
                return Err(CliError::Mismatch(format!("expectation failed: {failed:?}")));
            }
        }
        Command::Certify { graph, out, check } => {
            let g = ctx.graph(&graph)?;
            if let Some(path) = check {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Environment(format!("{}: {e}", path.display())))?;
                let b: Bundle = serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))?;
                if b.graph6 != emit_graph6_string(&g) {
                    return Err(CliError::Mismatch("bundle was made for a different graph".into()));
                }
                let failures = check_bundle(&g, &b);
                let result = json!({"valid": failures.is_empty(), "failures": failures});
                ctx.print("certify", &result, || {
                    if failures.is_empty() { "all certificates valid\n".into() } else { failures.join("\n") + "\n" }
                });
                if !failures.is_empty() {
                    return Ok(exit::MISMATCH);
                }
                return Ok(exit::SUCCESS);
            }
            let r = classify_with(&g, &classify_opts);
            let b = Bundle {
                graph6: emit_graph6_string(&g),
                cycle: r.cycle.clone(),
                path: r.path.clone(),
                vertex_deleted: r.vertex_deleted.clone(),
            };
            let failures = check_bundle(&g, &b);
            if let Some(p) = &out {
                write_text(p, &serde_json::to_string_pretty(&b).expect("serializable"))?;
            }
            let positive = b.vertex_deleted.iter().filter(|v| v.cycle.as_ref().is_some_and(Certificate::is_positive)).count();
            ctx.print("certify", &b, || {
                kv(&[
                    ("hamiltonian", r.hamiltonian.to_string()),
                    ("vertex-deleted cycles", format!("{positive} of {}", g.order())),
                    ("validation failures", failures.len().to_string()),
                ])
            });
            if !failures.is_empty() {
                return Err(CliError::Mismatch(failures.join("; ")));
            }
        }
        Command::Planar { graph, embedding_out } => {
            let g = ctx.graph(&graph)?;
            match is_planar(&g) {
                Planarity::Planar(e) => {
                    if let Some(p) = &embedding_out {
                        write_text(p, &emit_embedding(&e))?;
                    }
                    let profile = e.face_profile();
                    let result = json!({"planar": true, "faces": e.faces().len(), "face_profile": profile});
                    ctx.print("planar", &result, || kv(&[("planar", "true".into()), ("faces", profile.to_string())]));
                }
                Planarity::NonPlanar(k) => {
                    let result = json!({"planar": false, "obstruction": k});
                    ctx.print("planar", &result, || {
                        kv(&[("planar", "false".into()), ("obstruction", format!("{:?} on {:?}", k.kind, k.branch_vertices))])
                    });
                }
            }
        }
        Command::Crossing { graph } => {
            let g = ctx.graph(&graph)?;
            let v = crossing_number_at_most_one(&g);
            ctx.print("crossing", &v, || format!("{v:?}\n"));
        }
        Command::Grinberg { graph, modulus, max_faces } => {
            let loaded = ctx.load(&graph)?;
            let e = match loaded {
                Loaded::Embedding(e) => e,
                Loaded::Graph(g) => planar_embedding(&g).ok_or_else(|| CliError::Usage("graph is not planar".into()))?,
            };
            let profile = e.face_profile();
            let screen = residue_screen(&profile, modulus).map_err(|e| CliError::Usage(e.to_string()))?;
            let verdict = exact_feasibility(&e, &ExactOptions { max_faces, modulus }).map_err(|e| CliError::Usage(e.to_string()))?;
            let result = json!({"face_profile": profile, "screen": screen, "verdict": verdict});
            ctx.print("grinberg", &result, || {
                let mut out = kv(&[
                    ("face profile", profile.to_string()),
                    ("screen survivors", screen.len().to_string()),
                    ("exact verdict", if verdict.is_infeasible() { "infeasible" } else { "feasible" }.into()),
                ]);
                for s in &screen {
                    out.push_str(&format!("  {s}\n"));
                }
                out
            });
        }
        Command::Construct(c) => return construct(&ctx, c, &classify_opts),
        Command::Iso { first, second } => {
            let (a, b) = (ctx.graph(&first)?, ctx.graph(&second)?);
            let iso = is_isomorphic(&a, &b);
            ctx.print("iso", &json!({"isomorphic": iso}), || format!("{iso}\n"));
        }
        Command::Aut { graph } => {
            let g = ctx.graph(&graph)?;
            let f = canonical_form(&g);
            ctx.print("aut", &f, || kv(&[("group order", f.group_order.to_string()), ("canonical graph6", f.graph6.clone())]));
        }
        Command::Reproduce {
            scope,
            json_out,
            best_effort_seconds,
        } => {
            let provider = HogProvider { client: &ctx.client };
            let opts = Options {
                scope,
                budget,
                best_effort: Duration::from_secs(best_effort_seconds),
            };
            let report = repro::reproduce(&provider, &opts);
            if let Some(p) = &json_out {
                write_text(p, &serde_json::to_string_pretty(&report).expect("serializable"))?;
            }
            ctx.print("reproduce", &report, || repro_table(&report));
            if report.has_mismatch() {
                return Ok(exit::MISMATCH);
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn construct(ctx: &Ctx, c: Construct, opts: &ClassifyOptions) -> Result<i32, CliError> {
    let (name, g, extra) = match c {
        Construct::Th {
            graph,
            cycle,
            keep_edges,
            out,
        } => {
            if cycle.len() != 4 {
                return Err(CliError::Usage(format!("--cycle needs 4 labels, got {}", cycle.len())));
            }
            let g = ctx.graph(&graph)?;
            let vs: Vec<Vertex> = cycle.iter().map(|l| vertex(&g, l)).collect::<Result<_, _>>()?;
            let spec = FourCycleSpec::new([vs[0], vs[1], vs[2], vs[3]], keep_edges);
            let e = th(&g, &spec)?;
            write_graph(&out, &e.graph)?;
            let fresh: Vec<&str> = e.fresh.iter().map(|&v| e.graph.label(v)).collect();
            ("th", e.graph.clone(), json!({"fresh": fresh}))
        }
        Construct::Insert {
            graph,
            vertex: w,
            host,
            contract,
            out,
        } => {
            let g = ctx.graph(&graph)?;
            let h = ctx.graph(&host)?;
            let w = vertex(&g, &w)?;
            let ins = insert(&g, w, &h)?;
            let inserted = ins.graph.order();
            let result = if contract { ins.graph.contract_edges(&ins.host_edges)? } else { ins.graph.clone() };
            write_graph(&out, &result)?;
            ("insert", result, json!({"inserted_order": inserted, "host_edges": ins.host_edges.len(), "contracted": contract}))
        }
        Construct::Combine { parts, out } => {
            if parts.len() != 4 {
                return Err(CliError::Usage(format!("combine needs exactly 4 parts, got {}", parts.len())));
            }
            let mut graphs = Vec::new();
            for p in &parts {
                let (spec, label) = p
                    .rsplit_once('@')
                    .ok_or_else(|| CliError::Usage(format!("part {p:?} is not <graph>@<vertex>")))?;
                let spec: GraphSpec = spec.parse().map_err(CliError::Usage)?;
                let g = ctx.graph(&spec)?;
                let w = vertex(&g, label)?;
                graphs.push((g, w));
            }
            let joined = combine_four(
                [(&graphs[0].0, graphs[0].1), (&graphs[1].0, graphs[1].1), (&graphs[2].0, graphs[2].1), (&graphs[3].0, graphs[3].1)],
                None,
            )?;
            write_graph(&out, &joined)?;
            let total: usize = graphs.iter().map(|(g, _)| g.order()).sum();
            ("combine", joined, json!({"order_identity": format!("{total} − 6 = {}", total - 6)}))
        }
        Construct::Ladder { order, out } => {
            let provider = HogProvider { client: &ctx.client };
            let bases = repro::ladder_bases(&provider, opts);
            let lookup = |n: usize| n.checked_sub(40).and_then(|i| bases.get(i)).cloned().flatten();
            let l = build_order(order, &lookup, &ClassifyOptions { traceability: false, ..*opts })?;
            write_graph(&out, &l.graph)?;
            let steps: Vec<String> = l.steps.iter().map(|s| format!("{}:{:?}", s.order, s.spec.cycle)).collect();
            ("ladder", l.graph.clone(), json!({"base_order": l.base_order, "steps": steps, "hypohamiltonian": l.report.hypohamiltonian}))
        }
    };
    let g6 = emit_graph6_string(&g);
    let result = json!({"order": g.order(), "size": g.size(), "graph6": g6, "details": extra});
    ctx.print(&format!("construct {name}"), &result, || format!("{g6}\n"));
    Ok(exit::SUCCESS)
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hypoham: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
