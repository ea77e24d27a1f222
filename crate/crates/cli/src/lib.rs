//! Argument parsing and dispatch for the `cycmod` executable. Every command
//! produces one JSON value; [`run`] never prints.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cycmod::chords::{
    chord_bound, path_with_chords, path_with_special_edges, random_chord_instance, ChordInstance,
    SpecialEdgeInstance,
};
use cycmod::counterexamples::{build_counterexample, Verdict};
use cycmod::error::Error;
use cycmod::graph::{edge_key, Graph};
use cycmod::graph6::{emit_graph6, parse_graph6_lines};
use cycmod::necklaces::{kgood_realize, KGoodCertificate, KGoodWitness};
use cycmod::oracle::{has_cycle_mod, residue_spectrum, residue_spectrum_enumerated};
use cycmod::path_pairs::{find_pair_diff12, three_exception_hypotheses};
use cycmod::theta_decomp::{bounds, decompose, kgood_search, shortest_theta, BoundsTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NotFound,
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            exit_code: 0,
        }
    }

    fn not_found(payload: Value) -> Self {
        CommandResult {
            status: Status::NotFound,
            payload,
            exit_code: 1,
        }
    }

    fn error(kind: &str, message: String) -> Self {
        CommandResult {
            status: Status::Error,
            payload: json!({"status": "error", "error": {"kind": kind, "message": message}}),
            exit_code: 1,
        }
    }

    fn usage(message: String) -> Self {
        CommandResult {
            exit_code: 2,
            ..CommandResult::error("usage", message)
        }
    }

    /// Output text for stdout, with a trailing newline.
    pub fn render(&self, pretty: bool) -> String {
        let mut s = if pretty {
            serde_json::to_string_pretty(&self.payload)
        } else {
            serde_json::to_string(&self.payload)
        }
        .expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

impl From<Error> for CommandResult {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Parse { .. } => "parse",
            Error::InvalidGraph(_) | Error::VertexOutOfRange { .. } | Error::Disconnected => {
                "invalid-input"
            }
            Error::Precondition(_) | Error::InsufficientLevel(_) => "precondition",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::Unreachable(..) | Error::NoTheta(..) | Error::NotFound(_) => "not-found",
            Error::Invalid(_) | Error::Falsified(_) => "falsified",
        };
        CommandResult::error(kind, e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "cycmod",
    version,
    about = "Cycle lengths modulo k in cubic graphs"
)]
pub struct Cli {
    /// Worker threads for commands taking several input files.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Cap on enumerated cycles where enumeration is used.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_cycles: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Residues of cycle lengths modulo k.
    Spectrum(SpectrumArgs),
    /// A path through at least k chords of a Hamiltonian path.
    Chords(ChordsArgs),
    /// A path through at least k special edges.
    Special(SpecialArgs),
    /// Validate a goodness witness or realize a residue from it.
    Necklace(NecklaceArgs),
    /// Two x-y paths whose lengths differ by 1 or 2.
    Pathpair(PathpairArgs),
    /// Shortest θ-graph between two vertices and its decomposition.
    Theta(ThetaArgs),
    /// Search a cubic 3-connected graph for a k-good witness.
    Kgood(KgoodArgs),
    /// A 2-connected cubic graph with no cycle of length m mod k.
    Counterexample(CounterexampleArgs),
    /// Exact threshold values and the bound chain for k.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub k: usize,
    /// Report one cycle of length ≡ m (mod k).
    #[arg(long)]
    pub m: Option<usize>,
    /// Include one witness cycle per residue.
    #[arg(long)]
    pub witnesses: bool,
    /// Enumerate cycles instead of running the dynamic program.
    #[arg(long)]
    pub enumerate: bool,
    /// graph6 files; each line is one graph.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ChordsArgs {
    #[arg(long)]
    pub k: usize,
    /// graph6 file; every edge off `--path` is a chord.
    #[arg(required_unless_present = "random")]
    pub file: Option<PathBuf>,
    /// Hamiltonian path as a comma-separated vertex list.
    #[arg(long, value_delimiter = ',', required_unless_present = "random")]
    pub path: Vec<usize>,
    /// Generate a random instance with this many chords instead of reading a file.
    #[arg(long, requires = "seed", conflicts_with = "file")]
    pub random: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SpecialArgs {
    #[arg(long)]
    pub k: usize,
    pub file: PathBuf,
    /// Special edges as `a-b` pairs, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub special: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NecklaceAction {
    Validate,
    Realize,
}

#[derive(Args, Debug)]
pub struct NecklaceArgs {
    pub action: NecklaceAction,
    /// Residue to realize.
    #[arg(long)]
    pub m: Option<usize>,
    /// Modulus.
    #[arg(long)]
    pub k: Option<usize>,
    /// JSON file holding a graph and a witness.
    pub witness: PathBuf,
}

#[derive(Args, Debug)]
pub struct PathpairArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub y: usize,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub u: usize,
    #[arg(long)]
    pub v: usize,
    /// Also decompose the rest of the graph (cubic 3-connected input).
    #[arg(long)]
    pub decompose: bool,
}

#[derive(Args, Debug)]
pub struct KgoodArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CounterexampleArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub min_n: usize,
    /// Write the graph in graph6 format.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the report JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub k: usize,
}

/// Input of `necklace`: the host graph and a tagged witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessFile {
    pub graph: Graph,
    pub witness: KGoodWitness,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            CommandResult::ok(json!({"help": e.to_string()}))
        }
        Err(e) => CommandResult::usage(e.to_string()),
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    let out = match &cli.command {
        Command::Spectrum(a) => spectrum(cli, a),
        Command::Chords(a) => chords(a),
        Command::Special(a) => special(a),
        Command::Necklace(a) => necklace(a),
        Command::Pathpair(a) => pathpair(a),
        Command::Theta(a) => theta(a),
        Command::Kgood(a) => kgood(cli, a),
        Command::Counterexample(a) => counterexample(a),
        Command::Bounds(a) => Ok(CommandResult::ok(bounds_json(&bounds(a.k)))),
    };
    out.unwrap_or_else(|e| e)
}

type Outcome = Result<CommandResult, CommandResult>;

fn io_error(path: &Path, e: std::io::Error) -> CommandResult {
    CommandResult::error("io", format!("{}: {e}", path.display()))
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>, CommandResult> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let graphs = parse_graph6_lines(&text)?;
    if graphs.is_empty() {
        return Err(CommandResult::error(
            "invalid-input",
            format!("{}: no graphs", path.display()),
        ));
    }
    Ok(graphs)
}

fn read_graph(path: &Path) -> Result<Graph, CommandResult> {
    let mut graphs = read_graphs(path)?;
    if graphs.len() > 1 {
        return Err(CommandResult::error(
            "invalid-input",
            format!("{}: expected one graph", path.display()),
        ));
    }
    Ok(graphs.remove(0))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

/// Runs `f` on every graph of every file, in parallel over files. A single
/// graph gives its own result; several give an array in input order.
fn per_graph(cli: &Cli, files: &[PathBuf], f: impl Fn(&Graph) -> CommandResult + Sync) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| CommandResult::error("internal", e.to_string()))?;
    let results: Vec<Result<Vec<CommandResult>, CommandResult>> = pool.install(|| {
        files
            .par_iter()
            .map(|p| Ok(read_graphs(p)?.iter().map(&f).collect()))
            .collect()
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    if all.len() == 1 {
        return Ok(all.remove(0));
    }
    let exit_code = all.iter().map(|r| r.exit_code).max().unwrap_or(0);
    let status = if exit_code == 0 {
        Status::Ok
    } else {
        Status::Error
    };
    let payload = Value::Array(all.into_iter().map(|r| r.payload).collect());
    Ok(CommandResult {
        status,
        payload,
        exit_code,
    })
}

fn spectrum(cli: &Cli, a: &SpectrumArgs) -> Outcome {
    if a.k == 0 {
        return Err(CommandResult::usage("--k must be positive".into()));
    }
    per_graph(cli, &a.files, |g| {
        if let Some(m) = a.m {
            return match has_cycle_mod(g, m % a.k, a.k) {
                Some(c) => CommandResult::ok(json!({"m": m % a.k, "k": a.k, "cycle": c})),
                None => CommandResult::not_found(
                    json!({"status": "not-found", "m": m % a.k, "k": a.k, "cycle": null}),
                ),
            };
        }
        let s = if a.enumerate {
            match residue_spectrum_enumerated(g, a.k, Some(cli.max_cycles)) {
                Ok(s) => s,
                Err(e) => return e.into(),
            }
        } else {
            residue_spectrum(g, a.k)
        };
        let mut out = json!({"residues": s.residues});
        if a.witnesses {
            out["witnesses"] = to_value(&s.witnesses);
        }
        CommandResult::ok(out)
    })
}

fn chords(a: &ChordsArgs) -> Outcome {
    let inst = match (a.random, a.seed) {
        (Some(c), Some(seed)) => random_chord_instance(c, 0, &mut ChaCha8Rng::seed_from_u64(seed)),
        _ => {
            let file = a
                .file
                .as_ref()
                .ok_or_else(|| CommandResult::usage("missing graph file".into()))?;
            let g = read_graph(file)?;
            let on_path: BTreeSet<(usize, usize)> =
                a.path.windows(2).map(|w| edge_key(w[0], w[1])).collect();
            if on_path.len() + 1 != a.path.len()
                || !a.path.windows(2).all(|w| g.has_edge(w[0], w[1]))
            {
                return Err(CommandResult::error(
                    "invalid-input",
                    "--path is not a path of the graph".into(),
                ));
            }
            let chords = g
                .edges()
                .into_iter()
                .filter(|e| !on_path.contains(e))
                .collect();
            if a.path.len() != g.vertex_count() {
                return Err(CommandResult::error(
                    "invalid-input",
                    "--path must visit every vertex".into(),
                ));
            }
            ChordInstance::new(a.path.clone(), chords)?
        }
    };
    let p = path_with_chords(&inst, a.k)?;
    let count = inst
        .validate(&p)
        .map_err(|e| CommandResult::error("falsified", e))?;
    let payload = json!({
        "k": a.k,
        "chords": inst.chords.len(),
        "bound": chord_bound(a.k),
        "instance": inst,
        "path": p,
        "chord_count": count,
    });
    Ok(if count >= a.k {
        CommandResult::ok(payload)
    } else {
        CommandResult::not_found(payload)
    })
}

fn parse_edge(s: &str) -> Result<(usize, usize), CommandResult> {
    let bad = || CommandResult::usage(format!("bad edge {s:?}, expected a-b"));
    let (a, b) = s.split_once('-').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn special(a: &SpecialArgs) -> Outcome {
    let g = read_graph(&a.file)?;
    let edges = a
        .special
        .iter()
        .map(|s| parse_edge(s))
        .collect::<Result<Vec<_>, _>>()?;
    let inst = SpecialEdgeInstance::new(g, edges)?;
    let p = path_with_special_edges(&inst, a.k)?;
    Ok(CommandResult::ok(json!({
        "k": a.k,
        "path": p.path,
        "special_count": inst.count(&p.path),
        "guaranteed": p.guaranteed,
        "trace": p.trace,
    })))
}

fn necklace(a: &NecklaceArgs) -> Outcome {
    let text = fs::read_to_string(&a.witness).map_err(|e| io_error(&a.witness, e))?;
    let w: WitnessFile = serde_json::from_str(&text)
        .map_err(|e| CommandResult::error("parse", format!("{}: {e}", a.witness.display())))?;
    let cert = KGoodCertificate {
        k: w.witness.level(),
        witness: w.witness,
    };
    let report = cert.validate(Some(&w.graph));
    match a.action {
        NecklaceAction::Validate => {
            let payload =
                json!({"level": cert.k, "valid": report.valid, "violations": report.violations});
            Ok(if report.valid {
                CommandResult::ok(payload)
            } else {
                CommandResult {
                    status: Status::Error,
                    payload,
                    exit_code: 1,
                }
            })
        }
        NecklaceAction::Realize => {
            let (m, k) = match (a.m, a.k) {
                (Some(m), Some(k)) => (m, k),
                _ => return Err(CommandResult::usage("realize needs --m and --k".into())),
            };
            if !report.valid {
                return Err(CommandResult::error(
                    "invalid-input",
                    report.violations.join("; "),
                ));
            }
            let r = kgood_realize(&w.graph, &cert, m, k)?;
            Ok(CommandResult::ok(json!({
                "m": m % k,
                "k": k,
                "cycle": r.cycle,
                "length": r.cycle.len(),
                "guaranteed": r.guaranteed,
                "chain": r.chain,
            })))
        }
    }
}

fn pathpair(a: &PathpairArgs) -> Outcome {
    let g = read_graph(&a.file)?;
    let pair = find_pair_diff12(&g, a.x, a.y)?;
    let hyp = three_exception_hypotheses(&g, a.x, a.y);
    let payload = json!({"x": a.x, "y": a.y, "pair": pair, "unmet_hypotheses": hyp});
    Ok(if pair.is_some() {
        CommandResult::ok(payload)
    } else {
        payload_not_found(payload)
    })
}

fn payload_not_found(mut payload: Value) -> CommandResult {
    payload["status"] = json!("not-found");
    CommandResult::not_found(payload)
}

fn theta(a: &ThetaArgs) -> Outcome {
    let g = read_graph(&a.file)?;
    let t = shortest_theta(&g, a.u, a.v)?;
    let mut payload =
        json!({"theta": t, "leg_lengths": t.leg_lengths(), "total_length": t.total_length()});
    if a.decompose {
        let d = decompose(&g, a.u, a.v)?;
        payload["decomposition"] = to_value(&d);
        payload["violations"] = to_value(&d.violations());
    }
    Ok(CommandResult::ok(payload))
}

fn kgood(cli: &Cli, a: &KgoodArgs) -> Outcome {
    per_graph(cli, &a.files, |g| match kgood_search(g, a.k) {
        Ok(s) => {
            let payload = json!({
                "k": a.k,
                "certificate": s.certificate,
                "census": s.census,
                "case_report": {
                    "u": s.u,
                    "v": s.v,
                    "theta": s.theta,
                    "detectors": s.detectors,
                    "source": s.source,
                },
            });
            if s.certificate.is_some() {
                CommandResult::ok(payload)
            } else {
                payload_not_found(payload)
            }
        }
        Err(e) => e.into(),
    })
}

fn counterexample(a: &CounterexampleArgs) -> Outcome {
    let r = build_counterexample(a.m, a.k, a.min_n)?;
    let payload = json!({
        "m": r.m,
        "k": r.k,
        "min_n": r.min_n,
        "n_prime": r.n_prime,
        "case": r.case,
        "vertices": r.graph.vertex_count(),
        "edges": r.graph.edge_count(),
        "graph6": emit_graph6(&r.graph),
        "residues": r.residues,
        "verdict": r.verdict,
    });
    if let Some(p) = &a.out {
        fs::write(p, emit_graph6(&r.graph) + "\n").map_err(|e| io_error(p, e))?;
    }
    if let Some(p) = &a.report {
        let text =
            serde_json::to_string_pretty(&payload).expect("JSON values always serialize") + "\n";
        fs::write(p, text).map_err(|e| io_error(p, e))?;
    }
    Ok(match r.verdict {
        Verdict::Certified => CommandResult::ok(payload),
        Verdict::Falsified => CommandResult {
            status: Status::Error,
            payload,
            exit_code: 1,
        },
    })
}

/// Bound values keyed by formula. Values beyond `u64` are decimal strings.
pub fn bounds_json(b: &BoundsTable) -> Value {
    let num = |x: &num_bigint::BigUint| match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    };
    json!({
        "k": b.k,
        "18k2": num(&b.kclose_to_necklace),
        "3k4": num(&b.theta_necklace),
        "2k": num(&b.wiggly),
        "162k8": num(&b.kclose),
        "2^(4k2)": num(&b.special_edges),
        "8k": num(&b.low_degree),
        "21k2+ceil(3k/2)": num(&b.connecting),
        "5700k6": num(&b.isolated),
        "5k": num(&b.chain),
        "1e9k13*2^(9k2)": num(&b.diameter),
        "log2_f": num(&b.f_exponent),
        "checks": b.checks,
        "chain_holds": b.chain_holds(),
    })
}
