use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minconn::bench::{self, BenchInstance, BenchMode};
use minconn::connecting::{
    connecting_set_bound, enumerate_connecting_supersets, enumerate_minimal_connecting, ConnectingOptions, McsMode,
};
use minconn::dcs::{self, DcsInstance, SolveOptions, Strategy};
use minconn::generate::{self, LayerVariant, LayeredSpec, NamedKind};
use minconn::io::{self as mio, Instance};
use minconn::paths::{enumerate_induced_paths, max_leaves, InducedPath};
use minconn::{oracle, VertexSet};

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Input(#[from] minconn::Error),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

type Outcome = Result<ExitCode, Failure>;

#[derive(Parser)]
#[command(name = "minconn", version, about = "Minimal connecting sets, induced paths and 2-DCS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Graph in DIMACS edge format.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Regime {
    Auto,
    Minimal,
    Subset,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Layered,
    Random,
    Path,
    Cycle,
    Star,
    Complete,
}

#[derive(Subcommand)]
enum Command {
    /// List the minimal sets connecting the terminals.
    EnumerateMcs {
        #[command(flatten)]
        common: Common,
        /// Terminal ids, overriding `c set T`.
        #[arg(long)]
        terminals: Option<String>,
        /// Stream the unfiltered branching output instead: may repeat sets
        /// and include non-minimal ones.
        #[arg(long)]
        raw: bool,
        /// Walk the original graph instead of rebuilding contracted graphs.
        #[arg(long)]
        incremental: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List induced paths from the source to the neighborhood of the target set.
    EnumeratePaths {
        #[command(flatten)]
        common: Common,
        /// Source id, overriding `c set v`.
        #[arg(long)]
        source: Option<String>,
        /// Target ids, overriding `c set R`.
        #[arg(long)]
        target_set: Option<String>,
        /// Only paths of branch depth at most this.
        #[arg(long)]
        t_limit: Option<usize>,
    },
    /// Decide 2-Disjoint Connected Subgraphs.
    #[command(name = "solve-2dcs")]
    Solve2dcs {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        z1: Option<String>,
        #[arg(long)]
        z2: Option<String>,
        /// Count every successful candidate instead of stopping at the first.
        #[arg(long)]
        count_all: bool,
        #[arg(long, value_enum, default_value_t = Regime::Auto)]
        regime: Regime,
    },
    /// Print l(t), the set-count bound and the runtime base curve.
    Bound {
        /// Leaf budget for l(t).
        #[arg(long)]
        t: Option<u64>,
        /// Vertex count for the set-count bound.
        #[arg(long, requires = "k")]
        n: Option<usize>,
        /// Terminal count for the set-count bound.
        #[arg(long, requires = "n")]
        k: Option<usize>,
        /// Print the runtime base on a grid up to --alpha-max.
        #[arg(long)]
        curve: bool,
        #[arg(long, default_value_t = dcs::ALPHA_THRESHOLD)]
        alpha_max: f64,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
    /// Write a generated instance to stdout.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Vertex count (random and named graphs).
        #[arg(long)]
        n: Option<usize>,
        /// Columns of width 3 (layered).
        #[arg(long, default_value_t = 1)]
        columns: usize,
        /// Size of the target set (layered).
        #[arg(long, default_value_t = 1)]
        targets: usize,
        /// exact3i, plus1 or plus2 (layered).
        #[arg(long, default_value = "exact3i")]
        variant: String,
        /// Edge probability (random).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attach a terminal set `T` to the output.
        #[arg(long)]
        terminals: Option<String>,
    },
    /// Compare an enumerator against its brute-force oracle on one instance.
    Verify {
        #[arg(value_enum)]
        mode: ModeArg,
        file: PathBuf,
        #[arg(long)]
        terminals: Option<String>,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target_set: Option<String>,
        #[arg(long)]
        z1: Option<String>,
        #[arg(long)]
        z2: Option<String>,
    },
    /// Run one mode over many instance files and print a CSV report.
    Bench {
        #[arg(long, value_enum)]
        mode: ModeArg,
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        incremental: bool,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Mcs,
    Paths,
    Dcs,
    Brute,
}

impl From<ModeArg> for BenchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Mcs => BenchMode::Mcs,
            ModeArg::Paths => BenchMode::Paths,
            ModeArg::Dcs => BenchMode::Dcs,
            ModeArg::Brute => BenchMode::Brute,
        }
    }
}

fn load(path: &PathBuf) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|source| Failure::Read { path: path.clone(), source })?;
    Ok(mio::parse_instance(&text)?)
}

/// Flag value if given, else the named set from the file.
fn pick_set(inst: &Instance, flag: &Option<String>, name: &str) -> Result<VertexSet, Failure> {
    let ids = match flag {
        Some(text) => mio::parse_id_list(text)?,
        None => inst
            .sets
            .get(name)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("no {name} set: pass it as a flag or a `c set {name}` line")))?,
    };
    Ok(inst.graph.set(ids)?)
}

fn pick_vertex(inst: &Instance, flag: &Option<String>, name: &str) -> Result<usize, Failure> {
    let s = pick_set(inst, flag, name)?;
    match s.to_vec().as_slice() {
        [v] => Ok(*v),
        _ => Err(Failure::Usage(format!("{name} must be a single vertex"))),
    }
}

/// Writes lines until the reader goes away.
struct Lines<W: Write> {
    out: W,
    format: Format,
}

impl<W: Write> Lines<W> {
    fn line(&mut self, text: &str) -> ControlFlow<()> {
        match writeln!(self.out, "{text}") {
            Ok(()) => ControlFlow::Continue(()),
            Err(_) => ControlFlow::Break(()),
        }
    }

    fn footer(&mut self, text: &str) {
        match self.format {
            Format::Text => {
                let _ = self.line(text);
            }
            Format::Csv => eprintln!("{text}"),
        }
        let _ = self.out.flush();
    }
}

fn stdout_lines(format: Format) -> Lines<BufWriter<io::StdoutLock<'static>>> {
    Lines { out: BufWriter::new(io::stdout().lock()), format }
}

fn enumerate_mcs(common: &Common, terminals: &Option<String>, raw: bool, incremental: bool, jobs: usize) -> Outcome {
    let inst = load(&common.file)?;
    let g = &inst.graph;
    let t = pick_set(&inst, terminals, "T")?;
    let mode = if incremental { McsMode::Incremental } else { McsMode::Rebuild };
    let mut out = stdout_lines(common.format);
    if matches!(common.format, Format::Csv) {
        let _ = out.line("vertices");
    }
    let mut emit = |s: &VertexSet| out.line(&mio::format_set(s));
    let (count, raw_count) = if raw {
        let stats = enumerate_connecting_supersets(g, &t, mode, &mut emit)?;
        (stats.emitted, stats.emitted)
    } else {
        let stats = enumerate_minimal_connecting(g, &t, &ConnectingOptions { mode, jobs }, &mut emit)?;
        (stats.emitted, stats.raw)
    };
    let bound = connecting_set_bound(g.n(), t.len()).ok().map(|b| b.ln);
    out.footer(&mio::format_footer(count, raw_count, bound));
    Ok(ExitCode::SUCCESS)
}

fn enumerate_paths(
    common: &Common,
    source: &Option<String>,
    target_set: &Option<String>,
    t_limit: Option<usize>,
) -> Outcome {
    let inst = load(&common.file)?;
    let v = pick_vertex(&inst, source, "v")?;
    let r = pick_set(&inst, target_set, "R")?;
    let mut out = stdout_lines(common.format);
    let csv = matches!(common.format, Format::Csv);
    if csv {
        let _ = out.line("vertices,branch_depth");
    }
    let mut emit = |p: &InducedPath| {
        if csv {
            out.line(&format!("{},{}", mio::join_ids(p.seq.iter().copied()), p.branch_depth))
        } else {
            out.line(&mio::format_path(p))
        }
    };
    let stats = enumerate_induced_paths(&inst.graph, v, &r, t_limit, &mut emit)?;
    out.footer(&format!("# count={} nodes={}", stats.paths, stats.nodes));
    Ok(ExitCode::SUCCESS)
}

fn solve_2dcs(common: &Common, z1: &Option<String>, z2: &Option<String>, count_all: bool, regime: Regime) -> Outcome {
    let inst = load(&common.file)?;
    let a = pick_set(&inst, z1, "Z1")?;
    let b = pick_set(&inst, z2, "Z2")?;
    let dcs_inst = DcsInstance::new(inst.graph, a, b)?;
    let strategy = match regime {
        Regime::Auto => None,
        Regime::Minimal => Some(Strategy::EnumerateMinimal),
        Regime::Subset => Some(Strategy::SubsetLoop),
    };
    let outcome = dcs::solve_with(&dcs_inst, &SolveOptions { strategy, count_all });
    let mut out = stdout_lines(common.format);
    let code = match &outcome.witness {
        Some(w) => {
            assert!(dcs::verify_witness(&dcs_inst, w), "solver returned an invalid witness");
            let _ = out.line("YES");
            let _ = out.line(&format!("A1: {}", mio::format_set(&w.a1)));
            let _ = out.line(&format!("A2: {}", mio::format_set(&w.a2)));
            ExitCode::SUCCESS
        }
        None => {
            let _ = out.line("NO");
            ExitCode::from(1)
        }
    };
    out.footer(&format!(
        "# strategy={:?} candidates={} witnesses={}",
        outcome.strategy, outcome.candidates, outcome.witnesses
    ));
    Ok(code)
}

fn bound(t: Option<u64>, nk: Option<(usize, usize)>, curve: bool, alpha_max: f64, step: f64) -> Outcome {
    if t.is_none() && nk.is_none() && !curve {
        return Err(Failure::Usage("pass --t, --n with --k, or --curve".into()));
    }
    if let Some(t) = t {
        println!("l({t}) = {}", max_leaves(t));
    }
    if let Some((n, k)) = nk {
        let b = connecting_set_bound(n, k)?;
        let exact = b.exact.map_or("NA".to_string(), |e| e.to_string());
        println!("set_bound n={n} k={k} ln={:.6} exact={exact}", b.ln);
    }
    if curve {
        for (alpha, base) in dcs::runtime_bound_curve(alpha_max, step)? {
            println!("alpha={alpha:.6} base={base:.6}");
        }
        println!("subset_base alpha={alpha_max:.6} base={:.6}", dcs::subset_regime_base(alpha_max));
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn gen(
    kind: GenKind,
    n: Option<usize>,
    columns: usize,
    targets: usize,
    variant: &str,
    p: f64,
    seed: u64,
    terminals: &Option<String>,
) -> Outcome {
    let need_n = || n.ok_or_else(|| Failure::Usage("--n is required for this generator".into()));
    let mut inst = match kind {
        GenKind::Layered => {
            let variant: LayerVariant = variant.parse()?;
            let l = generate::layered(LayeredSpec { columns, target_size: targets, variant })?;
            let mut inst = Instance::new(l.graph.clone());
            inst.meta.push(format!("generator=layered columns={columns} targets={targets} variant={}", variant.name()));
            inst.sets.insert("v".into(), vec![l.source]);
            inst.sets.insert("R".into(), l.targets.to_vec());
            inst.sets.insert("T".into(), l.terminals().to_vec());
            inst
        }
        GenKind::Random => {
            let n = need_n()?;
            let mut inst = Instance::new(generate::random(n, p, seed)?);
            inst.meta.push(format!("generator=random n={n} p={p} seed={seed}"));
            inst
        }
        named => {
            let n = need_n()?;
            let (k, name) = match named {
                GenKind::Path => (NamedKind::Path, "path"),
                GenKind::Cycle => (NamedKind::Cycle, "cycle"),
                GenKind::Star => (NamedKind::Star, "star"),
                _ => (NamedKind::Complete, "complete"),
            };
            let mut inst = Instance::new(generate::named(k, n)?);
            inst.meta.push(format!("generator={name} n={n}"));
            inst
        }
    };
    if let Some(text) = terminals {
        let ids = inst.graph.set(mio::parse_id_list(text)?)?.to_vec();
        inst.sets.insert("T".into(), ids);
    }
    print!("{}", mio::write_instance(&inst));
    Ok(ExitCode::SUCCESS)
}

struct VerifyFlags<'a> {
    terminals: &'a Option<String>,
    source: &'a Option<String>,
    target_set: &'a Option<String>,
    z1: &'a Option<String>,
    z2: &'a Option<String>,
}

fn verify(mode: BenchMode, file: &PathBuf, flags: VerifyFlags) -> Outcome {
    let inst = load(file)?;
    let g = &inst.graph;
    let (ours, theirs, same) = match mode {
        BenchMode::Mcs | BenchMode::Brute => {
            let t = pick_set(&inst, flags.terminals, "T")?;
            let expected = oracle::minimal_connecting(g, &t)?;
            let mut found = BTreeSet::new();
            let mut dup = false;
            let mut collect = |s: &VertexSet| {
                dup |= !found.insert(s.to_vec());
                ControlFlow::Continue(())
            };
            if mode == BenchMode::Brute {
                minconn::connecting::brute_force_connecting(g, &t, &mut collect)?;
            } else {
                enumerate_minimal_connecting(g, &t, &ConnectingOptions::default(), &mut collect)?;
            }
            if dup {
                println!("duplicate set reported");
                return Ok(ExitCode::from(1));
            }
            (found.len(), expected.len(), found == expected)
        }
        BenchMode::Paths => {
            let v = pick_vertex(&inst, flags.source, "v")?;
            let r = pick_set(&inst, flags.target_set, "R")?;
            let expected = oracle::induced_paths(g, v, &r)?;
            let mut found = BTreeSet::new();
            let mut collect = |p: &InducedPath| {
                found.insert(p.seq.clone());
                ControlFlow::Continue(())
            };
            enumerate_induced_paths(g, v, &r, None, &mut collect)?;
            (found.len(), expected.len(), found == expected)
        }
        BenchMode::Dcs => {
            let a = pick_set(&inst, flags.z1, "Z1")?;
            let b = pick_set(&inst, flags.z2, "Z2")?;
            let expected = oracle::two_dcs(g, &a, &b)?;
            let dcs_inst = DcsInstance::new(g.clone(), a, b)?;
            let out = dcs::solve(&dcs_inst);
            let valid = out.witness.as_ref().is_none_or(|w| dcs::verify_witness(&dcs_inst, w));
            let got = out.witness.is_some();
            println!("solver={} oracle={}", yes_no(got), yes_no(expected));
            return Ok(if valid && got == expected { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    };
    if same {
        println!("match count={ours}");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("mismatch enumerator={ours} oracle={theirs}");
        Ok(ExitCode::from(1))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn run_bench(mode: BenchMode, files: &[PathBuf], jobs: usize, incremental: bool, output: &Option<PathBuf>) -> Outcome {
    if files.is_empty() {
        return Err(Failure::Usage("no instance files given".into()));
    }
    let mut instances = Vec::new();
    for f in files {
        instances.push(BenchInstance { id: f.display().to_string(), instance: load(f)? });
    }
    let mcs_mode = if incremental { McsMode::Incremental } else { McsMode::Rebuild };
    let reports = bench::run_benchmark(&instances, mode, mcs_mode, jobs);
    let text = bench::to_csv(&reports);
    match output {
        Some(path) => fs::write(path, text).map_err(|source| Failure::Read { path: path.clone(), source })?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: Cli) -> Outcome {
    match &cli.command {
        Command::EnumerateMcs { common, terminals, raw, incremental, jobs } => {
            enumerate_mcs(common, terminals, *raw, *incremental, *jobs)
        }
        Command::EnumeratePaths { common, source, target_set, t_limit } => {
            enumerate_paths(common, source, target_set, *t_limit)
        }
        Command::Solve2dcs { common, z1, z2, count_all, regime } => solve_2dcs(common, z1, z2, *count_all, *regime),
        Command::Bound { t, n, k, curve, alpha_max, step } => bound(*t, n.zip(*k), *curve, *alpha_max, *step),
        Command::Gen { kind, n, columns, targets, variant, p, seed, terminals } => {
            gen(*kind, *n, *columns, *targets, variant, *p, *seed, terminals)
        }
        Command::Verify { mode, file, terminals, source, target_set, z1, z2 } => {
            verify((*mode).into(), file, VerifyFlags { terminals, source, target_set, z1, z2 })
        }
        Command::Bench { mode, files, jobs, incremental, output } => {
            run_bench((*mode).into(), files, *jobs, *incremental, output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match panic::catch_unwind(|| dispatch(cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(3),
    }
}
