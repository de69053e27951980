//! `topecube` — command line front end for the tope-graph library.
//!
//! Every subcommand prints a report to stdout: human-readable text by
//! default, a schema-versioned JSON document under `--json`. Reports carry
//! the exact inputs, the results with re-verifiable witnesses (vertex lists,
//! covectors, cover pairs), and wall-clock timing.
//!
//! Exit codes: `0` success, `2` a size guard refused the request, `1` any
//! other error (bad input, parse failure, I/O).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use topecube::canon::{key_digest, CanonLevel};
use topecube::corners::{
    corner_peeling, find_corners, min_degree_vs_rank, simplicial_vertices, theta_las_vergnas,
    verify_peeling, Corner, PeelStrategy, PeelingSequence, DEFAULT_CORNER_BUDGET,
};
use topecube::euclid::{
    cocircuit_graph, is_euclidean_aom, is_euclidean_om, is_mandel, is_strictly_acyclic, orient,
    CocircuitGraph, EdgeState, MandelVerdict, DEFAULT_MANDEL_LIMIT,
};
use topecube::faces::classify;
use topecube::generate::{filter_class, Predicate};
use topecube::graph::ToGraph;
use topecube::mutation::{build_mutation_graph, is_connected, mutation_graph_dot};
use topecube::topes::{read_topes_file, write_topes_file};
use topecube::word::SignWord;
use topecube::{
    classify_realizable, read_arrangement_file, realizable_corner_peeling, tope_graph_of, Catalog,
    Error, Family,
};

/// Version stamp for the report JSON layout.
const REPORT_SCHEMA: u32 = 1;

/// Version stamp for the cocircuit-graph JSON layout.
const COCIRCUIT_SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "topecube",
    version,
    about = "Analyze, generate, mutate, peel and realize tope graphs of complexes of oriented matroids",
    after_help = "Exit codes: 0 success, 2 size-guard refusal, 1 other errors."
)]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel phases; 0 means one per core. Results are
    /// identical for every thread count.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Seed recorded in the report; all current commands are deterministic
    /// and ignore it, but it is reserved so sampling extensions stay
    /// reproducible.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Catalog directory; overrides the TOPECUBE_CATALOG environment
    /// variable (default: ./catalog).
    #[arg(long, global = true, value_name = "DIR")]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a tope graph and run every analysis that applies to its class.
    Analyze {
        /// Input `.topes` file.
        file: PathBuf,
        /// Size cap for the generic corner search.
        #[arg(long, default_value_t = DEFAULT_CORNER_BUDGET)]
        budget: usize,
        /// Candidate cap for the Mandel search on oriented matroids.
        #[arg(long, default_value_t = DEFAULT_MANDEL_LIMIT)]
        mandel_limit: usize,
    },

    /// Populate a catalog family for isometric dimension n and count the
    /// classes matching the given predicates.
    Generate {
        /// Isometric dimension.
        n: usize,
        /// Class predicate (repeatable): all, antipodal, affine, com, om,
        /// aom, lop, uom, rank=N. `uom` together with `rank=N` selects the
        /// uniform family; antipodal, om or uom alone select the antipodal
        /// family; anything else enumerates all partial cubes.
        #[arg(long = "predicate", value_name = "PRED")]
        predicates: Vec<String>,
        /// Honor an interrupted run's checkpoint instead of starting the
        /// family from scratch. Complete families are always reused.
        #[arg(long)]
        resume: bool,
    },

    /// Build the mutation graph of the uniform classes with parameters (n, r).
    MutationGraph {
        /// Isometric dimension (number of elements).
        n: usize,
        /// Rank.
        r: usize,
        /// Equivalence level: labeled, reorientation, or isomorphism.
        #[arg(long, default_value = "isomorphism")]
        level: String,
        /// Write the graph in DOT format to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Honor an interrupted catalog run's checkpoint.
        #[arg(long)]
        resume: bool,
    },

    /// Compute a corner peeling of a COM tope graph.
    Peel {
        /// Input `.topes` file.
        file: PathBuf,
        /// Strategy: lop, rank2, hypercellular, or generic.
        #[arg(long, default_value = "generic")]
        strategy: String,
    },

    /// Build the chamber graph of a hyperplane arrangement given as JSON.
    Realize {
        /// Arrangement description (JSON).
        file: PathBuf,
        /// Write the chamber tope graph to this `.topes` file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Also compute a sweep corner peeling (requires a bounded region of
        /// a simple arrangement).
        #[arg(long)]
        peel: bool,
    },

    /// Decide whether an OM or AOM tope graph is Euclidean.
    Euclidean {
        /// Input `.topes` file.
        file: PathBuf,
        /// Write the cocircuit graph with its per-class sweep orientations
        /// to this JSON file.
        #[arg(long, value_name = "FILE")]
        emit_cocircuit_graph: Option<PathBuf>,
    },

    /// Search for a general-position cover of an OM with two Euclidean sides.
    Mandel {
        /// Input `.topes` file.
        file: PathBuf,
        /// Candidate cap on the sign-map scan.
        #[arg(long, default_value_t = DEFAULT_MANDEL_LIMIT)]
        limit: usize,
        /// Write the cocircuit graph with its per-class sweep orientations
        /// to this JSON file.
        #[arg(long, value_name = "FILE")]
        emit_cocircuit_graph: Option<PathBuf>,
    },

    /// Enumerate the corners of a COM tope graph.
    Corners {
        /// Input `.topes` file.
        file: PathBuf,
        /// Size cap for the generic corner search.
        #[arg(long, default_value_t = DEFAULT_CORNER_BUDGET)]
        budget: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version go to stdout and succeed; genuine usage
            // errors follow the error contract and exit 1 (clap's default
            // exit code 2 is reserved for guard refusals here).
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        let guard = err
            .chain()
            .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::GuardExceeded { .. })));
        std::process::exit(if guard { 2 } else { 1 });
    }
}

fn run(cli: Cli) -> Result<()> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let catalog_root = cli
        .catalog
        .clone()
        .or_else(|| std::env::var_os("TOPECUBE_CATALOG").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("catalog"));

    let started = Instant::now();
    let out = match &cli.command {
        Command::Analyze {
            file,
            budget,
            mandel_limit,
        } => cmd_analyze(file, *budget, *mandel_limit)?,
        Command::Generate {
            n,
            predicates,
            resume,
        } => cmd_generate(&catalog_root, *n, predicates, *resume)?,
        Command::MutationGraph {
            n,
            r,
            level,
            dot,
            resume,
        } => cmd_mutation_graph(&catalog_root, *n, *r, level, dot.as_deref(), *resume)?,
        Command::Peel { file, strategy } => cmd_peel(file, strategy)?,
        Command::Realize { file, out, peel } => cmd_realize(file, out.as_deref(), *peel)?,
        Command::Euclidean {
            file,
            emit_cocircuit_graph,
        } => cmd_euclidean(file, emit_cocircuit_graph.as_deref())?,
        Command::Mandel {
            file,
            limit,
            emit_cocircuit_graph,
        } => cmd_mandel(file, *limit, emit_cocircuit_graph.as_deref())?,
        Command::Corners { file, budget } => cmd_corners(file, *budget)?,
    };

    let mut inputs = out.inputs;
    if let Some(map) = inputs.as_object_mut() {
        map.insert("seed".into(), json!(cli.seed));
    }
    let report = json!({
        "schema": REPORT_SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": out.command,
        "inputs": inputs,
        "results": out.results,
        "timing_ms": started.elapsed().as_millis() as u64,
    });

    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for line in &out.lines {
            println!("{line}");
        }
        println!("elapsed: {} ms", started.elapsed().as_millis());
    }
    Ok(())
}

/// What one subcommand hands back: the report pieces plus the text lines.
struct Output {
    command: &'static str,
    inputs: Value,
    results: Value,
    lines: Vec<String>,
}

fn load_graph(path: &Path) -> Result<ToGraph> {
    Ok(read_topes_file(path)?)
}

fn words_json(words: &[SignWord], width: usize) -> Value {
    json!(words.iter().map(|w| w.render(width)).collect::<Vec<_>>())
}

fn words_text(words: &[SignWord], width: usize) -> String {
    words
        .iter()
        .map(|w| w.render(width))
        .collect::<Vec<_>>()
        .join(" ")
}

fn corner_json(c: &Corner, width: usize) -> Value {
    json!({
        "vertices": words_json(&c.vertices, width),
        "host_face": c.host_face.covector.render(width),
        "chunk_size": c.chunk.len(),
    })
}

fn peeling_json(seq: &PeelingSequence, width: usize) -> Value {
    json!(seq
        .steps
        .iter()
        .map(|c| corner_json(c, width))
        .collect::<Vec<_>>())
}

fn peeling_lines(seq: &PeelingSequence, width: usize, lines: &mut Vec<String>) {
    for (i, step) in seq.steps.iter().enumerate() {
        lines.push(format!(
            "  step {}: remove {} vertex{} [{}] from face {}",
            i + 1,
            step.vertices.len(),
            if step.vertices.len() == 1 { "" } else { "es" },
            words_text(&step.vertices, width),
            step.host_face.covector.render(width),
        ));
    }
}

fn mask_coords(mask: u32) -> Vec<usize> {
    (0..32).filter(|e| mask & (1 << e) != 0).collect()
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn cmd_analyze(file: &Path, budget: usize, mandel_limit: usize) -> Result<Output> {
    let g = load_graph(file)?;
    let c = classify(&g)?;
    let width = g.width();
    let rank = g.rank();
    let labels = c.labels();

    let mut results = serde_json::Map::new();
    results.insert("width".into(), json!(width));
    results.insert("vertices".into(), json!(g.len()));
    results.insert("edges".into(), json!(g.edge_count()));
    results.insert("rank".into(), json!(rank));
    results.insert("labels".into(), json!(labels));

    let mut lines = vec![format!("analyze {}", file.display())];
    lines.push(format!(
        "  vertices {}, edges {}, width {}, rank {}",
        g.len(),
        g.edge_count(),
        width,
        rank
    ));
    if labels.is_empty() {
        let reason = g
            .is_partial_cube()
            .reason()
            .unwrap_or_else(|| "no reason recorded".into());
        results.insert("not_partial_cube_reason".into(), json!(reason));
        lines.push(format!("  not a partial cube: {reason}"));
    } else {
        lines.push(format!("  classes: {}", labels.join(" ")));
    }

    if c.partial_cube {
        let simp = simplicial_vertices(&g)?;
        results.insert("simplicial_vertices".into(), words_json(&simp, width));
        lines.push(format!(
            "  simplicial vertices: {}{}",
            simp.len(),
            if simp.is_empty() {
                String::new()
            } else {
                format!(" [{}]", words_text(&simp, width))
            }
        ));
    }

    if c.antipodal {
        let dr = min_degree_vs_rank(&g)?;
        results.insert(
            "degree_rank".into(),
            json!({
                "min_degree": dr.min_degree,
                "rank": dr.rank,
                "within_bound": dr.within_bound,
                "low_degree_forces_equality": dr.low_degree_forces_equality,
            }),
        );
        lines.push(format!(
            "  min degree {} vs rank {}: bound {}{}",
            dr.min_degree,
            dr.rank,
            if dr.within_bound { "holds" } else { "FAILS" },
            match dr.low_degree_forces_equality {
                Some(true) => ", low degree forces equality: holds",
                Some(false) => ", low degree forces equality: FAILS",
                None => "",
            }
        ));

        let tlv = theta_las_vergnas(&g)?;
        let witnesses: Vec<Value> = tlv
            .witnesses
            .iter()
            .map(|w| match w {
                Some(v) => json!(v.render(width)),
                None => Value::Null,
            })
            .collect();
        results.insert(
            "theta_las_vergnas".into(),
            json!({ "holds": tlv.holds, "witnesses": witnesses }),
        );
        lines.push(format!(
            "  simplicial vertex in every class: {}",
            if tlv.holds { "holds" } else { "FAILS" }
        ));
    }

    if c.com {
        let search = find_corners(&g, budget)?;
        results.insert(
            "corners".into(),
            json!({
                "budget": budget,
                "count": search.corners.len(),
                "complete": search.complete,
                "corners": search.corners.iter().map(|k| corner_json(k, width)).collect::<Vec<_>>(),
            }),
        );
        lines.push(format!(
            "  corners: {} found ({})",
            search.corners.len(),
            if search.complete {
                "search complete"
            } else {
                "budget reached, list may be partial"
            }
        ));
    }

    if c.om {
        let e = is_euclidean_om(&g)?;
        results.insert("euclidean".into(), json!({ "class": "om", "value": e }));
        lines.push(format!("  euclidean (as OM): {e}"));
        let m = is_mandel(&g, mandel_limit)?;
        results.insert("mandel".into(), mandel_json(&m, width));
        lines.push(format!("  mandel: {}", mandel_text(&m)));
    } else if c.aom {
        let e = is_euclidean_aom(&g)?;
        results.insert("euclidean".into(), json!({ "class": "aom", "value": e }));
        lines.push(format!("  euclidean (as AOM): {e}"));
    }

    Ok(Output {
        command: "analyze",
        inputs: json!({
            "file": file.display().to_string(),
            "budget": budget,
            "mandel_limit": mandel_limit,
        }),
        results: Value::Object(results),
        lines,
    })
}

fn mandel_json(m: &topecube::euclid::MandelReport, width: usize) -> Value {
    let verdict = match m.verdict {
        MandelVerdict::Mandel => "mandel",
        MandelVerdict::NotMandel => "not-mandel",
        MandelVerdict::UnknownAtLimit => "unknown-at-limit",
    };
    let witness = m.witness.as_ref().map(|(side, anti)| {
        json!({
            "side": words_json(side, width),
            "antipodal_side": words_json(anti, width),
        })
    });
    json!({ "verdict": verdict, "checked": m.checked, "witness": witness })
}

fn mandel_text(m: &topecube::euclid::MandelReport) -> String {
    match m.verdict {
        MandelVerdict::Mandel => format!("yes (witness found, {} sign maps checked)", m.checked),
        MandelVerdict::NotMandel => format!("no ({} sign maps exhausted)", m.checked),
        MandelVerdict::UnknownAtLimit => {
            format!("unknown at limit ({} sign maps checked)", m.checked)
        }
    }
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

fn cmd_generate(root: &Path, n: usize, predicate_args: &[String], resume: bool) -> Result<Output> {
    let mut predicates = Vec::new();
    for s in predicate_args {
        predicates.push(s.parse::<Predicate>()?);
    }
    let rank_pred = predicates.iter().find_map(|p| match p {
        Predicate::Rank(r) => Some(*r),
        _ => None,
    });
    let wants = |p: &Predicate| predicates.contains(p);
    let family = match rank_pred {
        Some(r) if wants(&Predicate::Uom) => Family::Uniform { n, r },
        _ if wants(&Predicate::Antipodal) || wants(&Predicate::Om) || wants(&Predicate::Uom) => {
            Family::Antipodal { n }
        }
        _ => Family::Cubes { n },
    };

    let catalog = Catalog::at(root);
    let manifest = catalog.ensure(family, resume)?;
    let classes = catalog.load(family)?;
    let matching = filter_class(&classes, &predicates)?;

    let mut lines = vec![format!("generate n={n} ({family} family)")];
    lines.push(format!("  catalog: {}", root.display()));
    lines.push(format!(
        "  classes in family: {} ({})",
        manifest.count,
        if manifest.complete {
            "complete"
        } else {
            "incomplete"
        }
    ));
    if !manifest.labels.is_empty() {
        let label_list = manifest
            .labels
            .iter()
            .map(|(k, v)| format!("{k} {v}"))
            .collect::<Vec<_>>()
            .join(", ");
        lines.push(format!("  labels: {label_list}"));
    }
    if !predicates.is_empty() {
        let preds = predicates
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        lines.push(format!("  matching [{preds}]: {}", matching.len()));
    }

    Ok(Output {
        command: "generate",
        inputs: json!({
            "n": n,
            "predicates": predicate_args,
            "resume": resume,
            "catalog": root.display().to_string(),
        }),
        results: json!({
            "family": family.to_string(),
            "count": manifest.count,
            "complete": manifest.complete,
            "labels": manifest.labels,
            "ranks": manifest.ranks,
            "matching": matching.len(),
        }),
        lines,
    })
}

// ---------------------------------------------------------------------------
// mutation-graph
// ---------------------------------------------------------------------------

fn cmd_mutation_graph(
    root: &Path,
    n: usize,
    r: usize,
    level: &str,
    dot: Option<&Path>,
    resume: bool,
) -> Result<Output> {
    let level = CanonLevel::parse(level)?;
    let catalog = Catalog::at(root);
    catalog.ensure_uniform(n, r, resume)?;
    let classes = catalog.load(Family::Uniform { n, r })?;
    let mg = build_mutation_graph(&classes, level)?;
    let conn = is_connected(&mg);

    let keys: Vec<String> = mg.keys.iter().map(|k| key_digest(k)).collect();
    let mut lines = vec![format!("mutation-graph n={n} r={r} ({level} level)")];
    lines.push(format!(
        "  {} class{}, {} edge{}, {}",
        mg.len(),
        if mg.len() == 1 { "" } else { "es" },
        mg.edges.len(),
        if mg.edges.len() == 1 { "" } else { "s" },
        if conn.connected {
            "connected".to_string()
        } else {
            format!("NOT connected ({} components)", conn.components.len())
        }
    ));
    if let Some(path) = dot {
        std::fs::write(path, mutation_graph_dot(&mg))
            .with_context(|| format!("writing {}", path.display()))?;
        lines.push(format!("  wrote DOT to {}", path.display()));
    }

    Ok(Output {
        command: "mutation-graph",
        inputs: json!({
            "n": n,
            "r": r,
            "level": level.to_string(),
            "resume": resume,
            "catalog": root.display().to_string(),
            "dot": dot.map(|p| p.display().to_string()),
        }),
        results: json!({
            "nodes": mg.len(),
            "edges": mg.edges,
            "keys": keys,
            "connected": conn.connected,
            "components": conn.components,
        }),
        lines,
    })
}

// ---------------------------------------------------------------------------
// peel
// ---------------------------------------------------------------------------

fn cmd_peel(file: &Path, strategy_name: &str) -> Result<Output> {
    let strategy = PeelStrategy::parse(strategy_name).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown strategy `{strategy_name}` (expected lop, rank2, hypercellular, or generic)"
        ))
    })?;
    let g = load_graph(file)?;
    let width = g.width();
    let peeling = corner_peeling(&g, strategy)?;
    let seq = peeling.sequence();
    let complete = peeling.is_complete();
    if complete && !verify_peeling(&g, seq)? {
        return Err(Error::Internal("complete peeling failed replay".into()).into());
    }

    let mut lines = vec![format!(
        "peel {} (strategy {})",
        file.display(),
        strategy.as_str()
    )];
    lines.push(format!(
        "  {}: {} step{}, {} of {} vertices removed",
        if complete { "complete" } else { "stuck" },
        seq.len(),
        if seq.len() == 1 { "" } else { "s" },
        seq.total_vertices(),
        g.len(),
    ));
    peeling_lines(seq, width, &mut lines);

    let mut results = serde_json::Map::new();
    results.insert("strategy".into(), json!(strategy.as_str()));
    results.insert("complete".into(), json!(complete));
    results.insert("steps".into(), peeling_json(seq, width));
    results.insert("total_vertices".into(), json!(seq.total_vertices()));
    results.insert("verified".into(), json!(complete));
    if let topecube::corners::Peeling::Stuck { residual, .. } = &peeling {
        results.insert(
            "residual".into(),
            json!({
                "vertices": residual.len(),
                "words": words_json(residual.words(), width),
            }),
        );
        lines.push(format!("  residual: {} vertices", residual.len()));
    }

    Ok(Output {
        command: "peel",
        inputs: json!({
            "file": file.display().to_string(),
            "strategy": strategy.as_str(),
        }),
        results: Value::Object(results),
        lines,
    })
}

// ---------------------------------------------------------------------------
// realize
// ---------------------------------------------------------------------------

fn cmd_realize(file: &Path, out: Option<&Path>, peel: bool) -> Result<Output> {
    let arr = read_arrangement_file(file)?;
    let g = tope_graph_of(&arr)?;
    let labels = classify_realizable(&arr)?;
    let width = g.width();

    let mut lines = vec![format!("realize {}", file.display())];
    lines.push(format!(
        "  dimension {}, {} hyperplane{}, {} region constraint{}",
        arr.dim(),
        arr.hyperplanes().len(),
        if arr.hyperplanes().len() == 1 { "" } else { "s" },
        arr.region().len(),
        if arr.region().len() == 1 { "" } else { "s" },
    ));
    lines.push(format!(
        "  central: {}, simple: {}",
        arr.is_central(),
        arr.is_simple()
    ));
    lines.push(format!(
        "  chambers: {}, rank {}, classes: {}",
        g.len(),
        g.rank(),
        labels.join(" ")
    ));

    let mut results = serde_json::Map::new();
    results.insert("dim".into(), json!(arr.dim()));
    results.insert("hyperplanes".into(), json!(arr.hyperplanes().len()));
    results.insert("region_constraints".into(), json!(arr.region().len()));
    results.insert("central".into(), json!(arr.is_central()));
    results.insert("simple".into(), json!(arr.is_simple()));
    results.insert("chambers".into(), json!(g.len()));
    results.insert("rank".into(), json!(g.rank()));
    results.insert("labels".into(), json!(labels));
    results.insert("topes".into(), words_json(g.words(), width));

    if let Some(path) = out {
        write_topes_file(path, &g)?;
        lines.push(format!("  wrote tope graph to {}", path.display()));
        results.insert("out".into(), json!(path.display().to_string()));
    }
    if peel {
        let seq = realizable_corner_peeling(&arr)?;
        lines.push(format!(
            "  sweep peeling: {} step{}, {} vertices",
            seq.len(),
            if seq.len() == 1 { "" } else { "s" },
            seq.total_vertices()
        ));
        peeling_lines(&seq, width, &mut lines);
        results.insert("peeling".into(), peeling_json(&seq, width));
    }

    Ok(Output {
        command: "realize",
        inputs: json!({
            "file": file.display().to_string(),
            "out": out.map(|p| p.display().to_string()),
            "peel": peel,
        }),
        results: Value::Object(results),
        lines,
    })
}

// ---------------------------------------------------------------------------
// euclidean / mandel
// ---------------------------------------------------------------------------

fn cocircuit_json(cg: &CocircuitGraph) -> Value {
    let width = cg.host.width();
    let nodes: Vec<String> = cg
        .nodes
        .iter()
        .map(|f| f.covector.render(width))
        .collect();
    let meets: Vec<String> = cg
        .meets
        .iter()
        .map(|f| f.covector.render(width))
        .collect();
    let lines: Vec<Value> = cg
        .lines
        .iter()
        .map(|l| {
            json!({
                "nodes": l.nodes,
                "follows": mask_coords(l.follows),
                "closes": l.closes,
            })
        })
        .collect();
    let mut orientations = Vec::new();
    for class in 0..width {
        let mo = match orient(cg, class) {
            Ok(mo) => mo,
            Err(_) => continue,
        };
        let acyc = is_strictly_acyclic(cg, &mo);
        let states: Vec<&'static str> = mo
            .states
            .iter()
            .map(|s| match s {
                EdgeState::Undirected => "undirected",
                EdgeState::Forward => "forward",
                EdgeState::Backward => "backward",
            })
            .collect();
        orientations.push(json!({
            "class": class,
            "states": states,
            "strictly_acyclic": acyc.strictly_acyclic,
            "witness_cycle": acyc.witness,
        }));
    }
    json!({
        "schema": COCIRCUIT_SCHEMA,
        "width": width,
        "antipodal_host": cg.antipodal_host,
        "node_rank": cg.node_rank,
        "nodes": nodes,
        "edges": cg.edges,
        "meets": meets,
        "lines": lines,
        "orientations": orientations,
    })
}

fn emit_cocircuit(g: &ToGraph, path: &Path) -> Result<usize> {
    let cg = cocircuit_graph(g)?;
    let doc = cocircuit_json(&cg);
    std::fs::write(path, serde_json::to_string_pretty(&doc)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(cg.len())
}

fn cmd_euclidean(file: &Path, emit: Option<&Path>) -> Result<Output> {
    let g = load_graph(file)?;
    let c = classify(&g)?;
    let (class, value) = if c.om {
        ("om", is_euclidean_om(&g)?)
    } else if c.aom {
        ("aom", is_euclidean_aom(&g)?)
    } else {
        return Err(Error::WrongClass {
            required: "an OM or AOM tope graph",
        }
        .into());
    };

    let mut lines = vec![format!("euclidean {}", file.display())];
    lines.push(format!("  class: {}", class.to_uppercase()));
    lines.push(format!("  euclidean: {value}"));
    let mut results = serde_json::Map::new();
    results.insert("class".into(), json!(class));
    results.insert("euclidean".into(), json!(value));
    if let Some(path) = emit {
        let nodes = emit_cocircuit(&g, path)?;
        lines.push(format!(
            "  wrote cocircuit graph ({nodes} nodes) to {}",
            path.display()
        ));
        results.insert(
            "cocircuit_graph_file".into(),
            json!(path.display().to_string()),
        );
    }

    Ok(Output {
        command: "euclidean",
        inputs: json!({
            "file": file.display().to_string(),
            "emit_cocircuit_graph": emit.map(|p| p.display().to_string()),
        }),
        results: Value::Object(results),
        lines,
    })
}

fn cmd_mandel(file: &Path, limit: usize, emit: Option<&Path>) -> Result<Output> {
    let g = load_graph(file)?;
    let c = classify(&g)?;
    if !c.om {
        return Err(Error::WrongClass {
            required: "an OM tope graph",
        }
        .into());
    }
    let width = g.width();
    let m = is_mandel(&g, limit)?;

    let mut lines = vec![format!("mandel {}", file.display())];
    lines.push(format!("  mandel: {}", mandel_text(&m)));
    let mut results = serde_json::Map::new();
    results.insert("mandel".into(), mandel_json(&m, width));
    if let Some(path) = emit {
        let nodes = emit_cocircuit(&g, path)?;
        lines.push(format!(
            "  wrote cocircuit graph ({nodes} nodes) to {}",
            path.display()
        ));
        results.insert(
            "cocircuit_graph_file".into(),
            json!(path.display().to_string()),
        );
    }

    Ok(Output {
        command: "mandel",
        inputs: json!({
            "file": file.display().to_string(),
            "limit": limit,
            "emit_cocircuit_graph": emit.map(|p| p.display().to_string()),
        }),
        results: Value::Object(results),
        lines,
    })
}

// ---------------------------------------------------------------------------
// corners
// ---------------------------------------------------------------------------

fn cmd_corners(file: &Path, budget: usize) -> Result<Output> {
    let g = load_graph(file)?;
    let width = g.width();
    let search = find_corners(&g, budget)?;

    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &search.corners {
        *by_size.entry(c.vertices.len()).or_insert(0) += 1;
    }
    let mut lines = vec![format!("corners {}", file.display())];
    lines.push(format!(
        "  {} corner{} ({})",
        search.corners.len(),
        if search.corners.len() == 1 { "" } else { "s" },
        if search.complete {
            "search complete"
        } else {
            "budget reached, list may be partial"
        }
    ));
    for (size, count) in &by_size {
        lines.push(format!("  of size {size}: {count}"));
    }
    for c in &search.corners {
        lines.push(format!(
            "  [{}] in face {}",
            words_text(&c.vertices, width),
            c.host_face.covector.render(width)
        ));
    }

    Ok(Output {
        command: "corners",
        inputs: json!({
            "file": file.display().to_string(),
            "budget": budget,
        }),
        results: json!({
            "count": search.corners.len(),
            "complete": search.complete,
            "corners": search.corners.iter().map(|c| corner_json(c, width)).collect::<Vec<_>>(),
        }),
        lines,
    })
}
