use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hamlets::bench::{self, BenchSpec, Family};
use hamlets::graph::balanced_capacities;
use hamlets::{generate, io, metrics, vcg, Algorithm, Error, Graph, MetricsReport, Partition};

#[derive(Parser, Debug)]
#[command(
    name = "hamlets",
    version,
    about = "Partition graph states across networked QPUs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and write it as an edge list
    Gen(GenArgs),
    /// Partition a graph into k balanced parts
    Partition(PartitionArgs),
    /// Print cut edges, matching sum and cut-rank sum of a partition
    Eval(EvalArgs),
    /// Simulate vertex cover grafting for a partitioned graph
    Vcg(VcgArgs),
    /// Replay a grafting trace and compare the result with a graph
    Replay(ReplayArgs),
    /// Sweep family x size x k x algorithm x sample and write CSV
    Bench(BenchArgs),
    /// Convert an edge list to a METIS .graph file
    Metis(MetisArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyArg {
    Grid,
    Regular,
    ErdosRenyi,
    File,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, requires = "cols")]
    rows: Option<usize>,
    #[arg(long, requires = "rows")]
    cols: Option<usize>,
    /// Vertex count; for grids the most square factorization is used
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Edge probability for erdos-renyi
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    /// Edge-list file
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short)]
    k: usize,
    /// bury, bury-seed:<v>, kl, kl:<passes> or random:<trials>
    #[arg(long, default_value = "bury")]
    algo: Algorithm,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Partition file (stdout if omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MetricArg {
    Edges,
    Matching,
    Cutrank,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Partition file, one color per line
    #[arg(short, long)]
    partition: PathBuf,
    /// Number of parts (largest color + 1 if omitted)
    #[arg(short)]
    k: Option<usize>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "edges,matching,cutrank"
    )]
    metrics: Vec<MetricArg>,
    /// Print the full report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VcgArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    partition: PathBuf,
    #[arg(short)]
    k: Option<usize>,
    /// Check the final state and Bell count; exit 2 on mismatch
    #[arg(long)]
    verify: bool,
    /// Write the operation trace here
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// Trace written by `vcg --trace-out`
    #[arg(short, long)]
    trace: PathBuf,
    /// Graph the replayed state should equal
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Vertex counts, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "range")]
    sizes: Vec<usize>,
    /// Vertex counts as start:end:step, end inclusive
    #[arg(long)]
    range: Option<String>,
    #[arg(long, default_value_t = 6)]
    degree: usize,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Edge-list files for the file family
    #[arg(long, value_delimiter = ',')]
    inputs: Vec<PathBuf>,
    #[arg(short, value_delimiter = ',', default_value = "2")]
    k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    algos: Vec<Algorithm>,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output (stdout if omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print per-point means to stderr
    #[arg(long)]
    summary: bool,
}

#[derive(Args, Debug)]
struct MetisArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::Io(e.to_string()),
            Error::Verification { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn with_path(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Verification(m) => Failure::Verification(format!("{}: {m}", path.display())),
        Failure::Io(m) => Failure::Io(format!("{}: {m}", path.display())),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    io::read_edge_list(&read_text(path)?).map_err(with_path(path))
}

fn load_partition(path: &Path, k: Option<usize>, g: &Graph) -> CliResult<Partition> {
    let text = read_text(path)?;
    let k = match k {
        Some(k) => k,
        None => io::infer_part_count(&text).map_err(with_path(path))?,
    };
    io::read_partition_file(&text, k, Some(g.n())).map_err(with_path(path))
}

fn cmd_gen(args: GenArgs) -> CliResult<()> {
    let need_n = || {
        args.n
            .ok_or_else(|| Failure::Usage("--n is required for this family".into()))
    };
    let g = match args.family {
        FamilyArg::Grid => match (args.rows, args.cols, args.n) {
            (Some(r), Some(c), None) => generate::grid(r, c),
            (None, None, Some(n)) => generate::near_square_grid(n),
            _ => {
                return Err(Failure::Usage(
                    "grid needs --rows and --cols, or --n".into(),
                ))
            }
        },
        FamilyArg::Regular => generate::random_regular(need_n()?, args.degree, args.seed)?,
        FamilyArg::ErdosRenyi => generate::erdos_renyi(need_n()?, args.p, args.seed)?,
        FamilyArg::File => return Err(Failure::Usage("gen cannot produce the file family".into())),
    };
    write_out(args.output.as_deref(), &io::write_edge_list(&g))
}

fn cmd_partition(args: PartitionArgs) -> CliResult<()> {
    let g = load_graph(&args.input)?;
    if args.k == 0 {
        return Err(Failure::Usage("-k must be at least 1".into()));
    }
    let capacities = balanced_capacities(g.n(), args.k);
    let p = args.algo.run(&g, &capacities, args.seed)?;
    let report = metrics::evaluate(&g, &p)?;
    eprintln!(
        "{} n={} k={} capacities={:?} cut_edges={} matching_sum={} cutrank_sum={}",
        args.algo,
        g.n(),
        args.k,
        p.capacities(),
        report.cut_edges,
        report.matching_sum,
        report.cutrank_sum
    );
    write_out(args.output.as_deref(), &io::write_partition_file(&p))
}

fn format_report(report: &MetricsReport, selected: &[MetricArg]) -> String {
    let has = |m| selected.contains(&m);
    let mut out = String::new();
    for p in &report.pairs {
        write!(out, "pair {} {}:", p.a, p.b).unwrap();
        if has(MetricArg::Edges) {
            write!(out, " cut_edges={}", p.cut_edges).unwrap();
        }
        if has(MetricArg::Matching) {
            write!(out, " matching={}", p.matching).unwrap();
        }
        if has(MetricArg::Cutrank) {
            write!(out, " cut_rank={}", p.cut_rank).unwrap();
        }
        out.push('\n');
    }
    if has(MetricArg::Edges) {
        writeln!(out, "cut_edges {}", report.cut_edges).unwrap();
    }
    if has(MetricArg::Matching) {
        writeln!(out, "matching_sum {}", report.matching_sum).unwrap();
    }
    if has(MetricArg::Cutrank) {
        writeln!(out, "cutrank_sum {}", report.cutrank_sum).unwrap();
    }
    out
}

fn cmd_eval(args: EvalArgs) -> CliResult<()> {
    let g = load_graph(&args.input)?;
    let p = load_partition(&args.partition, args.k, &g)?;
    let with_rank = args.json || args.metrics.contains(&MetricArg::Cutrank);
    let report = metrics::evaluate_with(&g, &p, with_rank)?;
    if args.json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Io(e.to_string()))?;
        println!("{text}");
    } else {
        print!("{}", format_report(&report, &args.metrics));
    }
    Ok(())
}

fn edge_diff(missing: &[(usize, usize)], extra: &[(usize, usize)], leftover: &[usize]) -> String {
    let mut out = String::new();
    for (u, v) in missing {
        writeln!(out, "- {u} {v}").unwrap();
    }
    for (u, v) in extra {
        writeln!(out, "+ {u} {v}").unwrap();
    }
    for q in leftover {
        writeln!(out, "leftover qubit {q}").unwrap();
    }
    out
}

fn cmd_vcg(args: VcgArgs) -> CliResult<()> {
    let g = load_graph(&args.input)?;
    let p = load_partition(&args.partition, args.k, &g)?;
    let (state, trace) = vcg::execute_vcg(&g, &p)?;
    if let Some(path) = &args.trace_out {
        write_out(Some(path), &trace.to_text())?;
    }
    let matching_sum = metrics::matching_sum(&g, &p)?;
    println!("bell_pairs {}", trace.bell_pairs_used());
    println!("matching_sum {matching_sum}");
    for ((a, b), used) in &trace.per_pair_bells {
        println!("pair {a} {b}: bell_pairs={used}");
    }
    if args.verify {
        match vcg::verify(&g, &state, trace.bell_pairs_used(), matching_sum) {
            Ok(()) => println!("verified"),
            Err(Error::Verification {
                missing,
                extra,
                leftover,
                bell_pairs,
                matching_sum,
            }) => {
                eprint!("{}", edge_diff(&missing, &extra, &leftover));
                return Err(Failure::Verification(format!(
                    "verification failed: {} missing, {} extra, {} leftover, bell pairs {bell_pairs} vs matching sum {matching_sum}",
                    missing.len(),
                    extra.len(),
                    leftover.len()
                )));
            }
            Err(e) => return Err(Failure::Verification(e.to_string())),
        }
    }
    Ok(())
}

fn cmd_replay(args: ReplayArgs) -> CliResult<()> {
    let g = load_graph(&args.input)?;
    let text = read_text(&args.trace)?;
    let state = vcg::replay_trace(&text).map_err(with_path(&args.trace))?;
    let missing: Vec<_> = g.edges().filter(|&(u, v)| !state.has_edge(u, v)).collect();
    let extra: Vec<_> = state
        .edges()
        .into_iter()
        .filter(|&(u, v)| u >= g.n() || v >= g.n() || !g.has_edge(u, v))
        .collect();
    let leftover: Vec<_> = state.live_qubits().filter(|&q| q >= g.n()).collect();
    if missing.is_empty() && extra.is_empty() && leftover.is_empty() {
        println!("replay matches {} edges", g.m());
        Ok(())
    } else {
        eprint!("{}", edge_diff(&missing, &extra, &leftover));
        Err(Failure::Verification(
            "replayed state differs from the graph".into(),
        ))
    }
}

fn parse_range(s: &str) -> CliResult<Vec<usize>> {
    let bad = || Failure::Usage(format!("--range expects start:end:step, got {s:?}"));
    let parts: Vec<usize> = s
        .split(':')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    match parts[..] {
        [start, end, step] if step > 0 && start <= end => Ok((start..=end).step_by(step).collect()),
        _ => Err(bad()),
    }
}

fn cmd_bench(args: BenchArgs) -> CliResult<()> {
    let sizes = match &args.range {
        Some(r) => parse_range(r)?,
        None => args.sizes.clone(),
    };
    let family = match args.family {
        FamilyArg::Grid => Family::Grid,
        FamilyArg::Regular => Family::Regular {
            degree: args.degree,
        },
        FamilyArg::ErdosRenyi => Family::ErdosRenyi { p: args.p },
        FamilyArg::File => Family::File {
            paths: args.inputs.clone(),
        },
    };
    let spec = BenchSpec {
        family,
        sizes,
        ks: args.k.clone(),
        algorithms: args.algos.clone(),
        samples: args.samples,
        seed: args.seed,
    };
    let rows = bench::run_bench(&spec)?;
    let mut buf = Vec::new();
    bench::write_csv(&rows, &mut buf)?;
    write_out(
        args.output.as_deref(),
        &String::from_utf8(buf).expect("csv is utf-8"),
    )?;
    if args.summary {
        for s in bench::summarize(&rows) {
            eprintln!(
                "{} n={} k={} {}: matching_sum {:.2} cutrank_sum {:.2} cut_edges {:.2} ({} runs, {} errors)",
                s.family,
                s.n,
                s.k,
                s.algorithm,
                s.mean_matching_sum,
                s.mean_cutrank_sum,
                s.mean_cut_edges,
                s.runs,
                s.errors
            );
        }
    }
    Ok(())
}

fn cmd_metis(args: MetisArgs) -> CliResult<()> {
    let g = load_graph(&args.input)?;
    write_out(args.output.as_deref(), &io::write_metis_graph(&g))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Partition(a) => cmd_partition(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Vcg(a) => cmd_vcg(a),
        Command::Replay(a) => cmd_replay(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Metis(a) => cmd_metis(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
