//! `divchain`: counts, chains and searches in the divisor graph.
//!
//! Exit codes: 0 on success, 1 when a verification fails (invalid chain,
//! infeasible ordering, identity mismatch), 2 on usage errors.

mod chain_io;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use divchain::real::{display, parse_exact};
use divchain::{
    arrange, buchstab_check, build_chain, connect_astar, count_query, estimate_ct, lower_bound_f,
    peel_chain, search, verify_chain, Chain, Context, CountKind, CountQuery, Method, Rational,
    SearchOptions,
};
use num_traits::ToPrimitive;
use serde_json::json;

use chain_io::{read_chain, write_chain};

#[derive(Parser)]
#[command(name = "divchain", version, about = "Chains in the divisor graph")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for the parallel sieves and searches.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Count Ψ(x,y), A(x,y,z,t), A'(x,y,z,t), D(x,t) or D'(x,t).
    Count(CountArgs),
    /// Check the decomposition of A(x,y,z,t) by largest prime over a grid.
    BuchstabCheck(BuchstabArgs),
    /// D(x,t)·log x/x along a list of x.
    EstimateCt(EstimateArgs),
    /// Build, verify and combine chains.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Peel an element of A*(x,y) down to a power of q.
    Peel(PeelArgs),
    /// Join two elements of A*(x,y) by a chain inside A*(x,y).
    Connect(ConnectArgs),
    /// Longest chain in S(x,y) within a time budget.
    Exact(ExactArgs),
    /// Order blocks of the given sizes with no two neighbours from one block.
    Order(OrderArgs),
    /// Lower bound for f(x) times log x / x over a grid of x.
    ConjectureF(ConjectureArgs),
}

#[derive(Args)]
struct CountArgs {
    /// psi, a, a-prime, d or d-prime.
    #[arg(long)]
    kind: CountKind,
    #[arg(long, value_parser = number)]
    x: Rational,
    /// Defaults to x.
    #[arg(long, value_parser = number)]
    y: Option<Rational>,
    #[arg(long, value_parser = number, default_value = "1")]
    z: Rational,
    #[arg(long, value_parser = number, default_value = "1")]
    t: Rational,
}

#[derive(Args)]
struct BuchstabArgs {
    /// Largest x of the grid.
    #[arg(long, value_parser = integer, default_value = "2000")]
    x_max: u64,
    #[arg(long, value_parser = integer, default_value = "7")]
    step: u64,
    /// Values of y; `sqrt` and `x` follow each x.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,sqrt,x")]
    y: Vec<String>,
    #[arg(long, value_delimiter = ',', value_parser = number, default_value = "1,2,4")]
    z: Vec<Rational>,
    #[arg(long, value_delimiter = ',', value_parser = number, default_value = "1,2,8")]
    t: Vec<Rational>,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long, default_value_t = 2.0)]
    t: f64,
    #[arg(long, value_delimiter = ',', default_value = "1e3,1e4,1e5,1e6")]
    xs: Vec<f64>,
    /// Count squarefree integers only (D').
    #[arg(long)]
    squarefree: bool,
}

#[derive(Subcommand)]
enum ChainCommand {
    /// The recursive chain C(x,y).
    Build {
        #[arg(long, value_parser = number)]
        x: Rational,
        #[arg(long, value_parser = number)]
        y: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a chain file, optionally against S(x,y).
    Verify {
        file: PathBuf,
        #[arg(long, value_parser = integer, requires = "y")]
        x: Option<u64>,
        #[arg(long, value_parser = integer, requires = "x")]
        y: Option<u64>,
    },
    Invert {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Scale {
        file: PathBuf,
        #[arg(long, value_parser = integer)]
        m: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Concatenate, or collage when the touching ends are equal.
    Glue {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Join through an outside connector.
    Juxtapose {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = integer)]
        connector: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PeelArgs {
    #[arg(long, value_parser = integer)]
    a: u64,
    #[arg(long, value_parser = integer)]
    q: u64,
    #[arg(long, value_parser = number)]
    x: Rational,
    #[arg(long, value_parser = number)]
    y: Rational,
}

#[derive(Args)]
struct ConnectArgs {
    #[arg(long, value_parser = integer)]
    a: u64,
    #[arg(long, value_parser = integer)]
    b: u64,
    #[arg(long, value_parser = number)]
    x: Rational,
    #[arg(long, value_parser = number)]
    y: Rational,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long, value_parser = number)]
    x: Rational,
    /// Defaults to x.
    #[arg(long, value_parser = number)]
    y: Option<Rational>,
    /// Seconds.
    #[arg(long, value_parser = seconds, default_value = "60")]
    budget: Duration,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// A chain file to start from.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// Also write the best chain here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    BranchAndBound,
    CuttingPlane,
}

#[derive(Args)]
struct OrderArgs {
    /// Block sizes, e.g. 3,2,2.
    #[arg(long, value_delimiter = ',', required = true)]
    blocks: Vec<usize>,
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long, value_delimiter = ',', value_parser = integer, default_value = "100,1000,10000,100000,1000000")]
    xs: Vec<u64>,
}

/// Why a command did not succeed.
enum Failure {
    /// The input was well formed but a check failed.
    Check(String),
    Usage(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn number(s: &str) -> Result<Rational, String> {
    parse_exact(s).ok_or_else(|| format!("not a number: {s:?}"))
}

fn integer(s: &str) -> Result<u64, String> {
    let r = number(s)?;
    if !r.is_integer() {
        return Err(format!("not an integer: {s:?}"));
    }
    r.to_integer()
        .to_u64()
        .ok_or_else(|| format!("out of range: {s:?}"))
}

fn seconds(s: &str) -> Result<Duration, String> {
    let r = number(s)?.to_f64().filter(|v| v.is_finite() && *v >= 0.0);
    r.map(Duration::from_secs_f64)
        .ok_or_else(|| format!("not a duration in seconds: {s:?}"))
}

fn ratio6(r: f64) -> String {
    format!("{r:.6}")
}

fn log_ratio(count: u64, x: &Rational) -> f64 {
    let x = x.to_f64().unwrap_or(f64::NAN);
    count as f64 * x.ln() / x
}

fn count(args: CountArgs, format: Format) -> Outcome {
    let mut q = CountQuery::new(args.kind, args.x.clone())?;
    if let Some(y) = args.y {
        q = q.with_y(y)?;
    }
    let q = q.with_z(args.z)?.with_t(args.t)?;
    let n = count_query(&q)?;
    let ratio = ratio6(log_ratio(n, &q.x));
    Ok(match format {
        Format::Csv => format!("{},ratio\n{},{ratio}\n", CountQuery::CSV_HEADER, q.csv_row(n)),
        Format::Json => json!({
            "kind": q.kind, "x": display(&q.x), "y": display(&q.y), "z": display(&q.z), "t": display(&q.t),
            "count": n, "ratio": ratio,
        })
        .to_string() + "\n",
        Format::Text => format!(
            "{}(x={}, y={}, z={}, t={}) = {n}\ncount·log x/x = {ratio}\n",
            q.kind,
            display(&q.x),
            display(&q.y),
            display(&q.z),
            display(&q.t)
        ),
    })
}

fn buchstab(args: BuchstabArgs, format: Format) -> Outcome {
    if args.step == 0 {
        return Err(Failure::Usage("--step must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut failures = 0;
    for x in (1..=args.x_max).step_by(args.step as usize) {
        let mut ys = Vec::new();
        for y in &args.y {
            let v = match y.as_str() {
                "sqrt" => divchain::real::isqrt(x as u128) as u64,
                "x" => x,
                other => integer(other).map_err(Failure::Usage)?,
            };
            if v >= 2 && !ys.contains(&v) {
                ys.push(v);
            }
        }
        for &y in &ys {
            for z in &args.z {
                for t in &args.t {
                    let r = buchstab_check(x, y, z.clone(), t.clone())?;
                    failures += usize::from(!r.equal());
                    rows.push((x, y, display(z), display(t), r));
                }
            }
        }
    }
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("x,y,z,t,lhs,rhs,equal\n");
            for (x, y, z, t, r) in &rows {
                writeln!(out, "{x},{y},{z},{t},{},{},{}", r.lhs, r.rhs, r.equal()).unwrap();
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(x, y, z, t, r)| json!({"x": x, "y": y, "z": z, "t": t, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal()}))
                .collect();
            out = json!({"points": rows.len(), "failures": failures, "rows": items}).to_string()
                + "\n";
        }
        Format::Text => {
            for (x, y, z, t, r) in rows.iter().filter(|row| !row.4.equal()) {
                writeln!(
                    out,
                    "MISMATCH x={x} y={y} z={z} t={t}: {} != {}",
                    r.lhs, r.rhs
                )
                .unwrap();
            }
            writeln!(out, "{} grid points, {failures} failures", rows.len()).unwrap();
        }
    }
    if failures > 0 {
        return Err(Failure::Check(out));
    }
    Ok(out)
}

fn estimate(args: EstimateArgs, format: Format) -> Outcome {
    let series = estimate_ct(args.t, &args.xs, args.squarefree)?;
    Ok(match format {
        Format::Json => {
            let rows: Vec<_> = series
                .rows
                .iter()
                .map(|r| json!({"x": r.x, "count": r.count, "ratio": ratio6(r.ratio())}))
                .collect();
            json!({"t": series.t, "squarefree": series.squarefree, "target": series.target.map(ratio6), "rows": rows})
                .to_string()
                + "\n"
        }
        Format::Csv | Format::Text => series.to_csv(),
    })
}

fn emit_chain(chain: &Chain, out: Option<PathBuf>, format: Format) -> Outcome {
    if let Some(path) = out {
        write_chain(
            &path,
            chain,
            format == Format::Json || path.extension().is_some_and(|e| e == "json"),
        )?;
        return Ok(format!(
            "wrote {} entries to {}\n",
            chain.len(),
            path.display()
        ));
    }
    Ok(render_chain(chain, format))
}

fn render_chain(chain: &Chain, format: Format) -> String {
    match format {
        Format::Json => {
            let ctx = chain.context();
            json!({"x": ctx.map(|c| c.x), "y": ctx.map(|c| c.y), "length": chain.len(), "entries": chain.entries()})
                .to_string()
                + "\n"
        }
        Format::Csv => chain.to_text(),
        Format::Text => format!("{chain}\nlength {}\n", chain.len()),
    }
}

fn chain_command(cmd: ChainCommand, format: Format) -> Outcome {
    match cmd {
        ChainCommand::Build { x, y, out } => emit_chain(&build_chain(x, y)?, out, format),
        ChainCommand::Verify { file, x, y } => {
            let (entries, stored) = read_chain(&file)?;
            let ctx = match (x, y) {
                (Some(x), Some(y)) => Some(Context::new(x, y)),
                _ => stored,
            };
            let report = verify_chain(&entries, ctx);
            let text = match format {
                Format::Json => serde_json::to_string(&report)? + "\n",
                _ => format!("{report}\n"),
            };
            if report.is_ok() {
                Ok(text)
            } else {
                Err(Failure::Check(text))
            }
        }
        ChainCommand::Invert { file, out } => emit_chain(&load(&file)?.inverse(), out, format),
        ChainCommand::Scale { file, m, out } => emit_chain(&load(&file)?.scale(m)?, out, format),
        ChainCommand::Glue { first, second, out } => {
            emit_chain(&load(&first)?.glue(&load(&second)?)?, out, format)
        }
        ChainCommand::Juxtapose {
            first,
            second,
            connector,
            out,
        } => emit_chain(
            &load(&first)?.juxtapose(connector, &load(&second)?)?,
            out,
            format,
        ),
    }
}

/// Reads a chain file and rejects sequences that are not chains.
fn load(path: &Path) -> Result<Chain, Failure> {
    let (entries, ctx) = read_chain(path)?;
    let report = verify_chain(&entries, ctx);
    if !report.is_ok() {
        return Err(Failure::Check(format!("{}: {report}\n", path.display())));
    }
    Ok(match ctx {
        Some(ctx) => Chain::with_context(entries, ctx)?,
        None => Chain::new(entries)?,
    })
}

fn exact(args: ExactArgs, format: Format) -> Outcome {
    let y = args.y.unwrap_or_else(|| args.x.clone());
    let seed = args.seed.as_deref().map(load).transpose()?;
    let method = match args.method {
        MethodArg::Auto => Method::Auto,
        MethodArg::BranchAndBound => Method::BranchAndBound,
        MethodArg::CuttingPlane => Method::CuttingPlane,
    };
    let r = search(
        args.x,
        y,
        &SearchOptions {
            budget: args.budget,
            method,
            seed,
        },
    )?;
    if let Some(path) = &args.out {
        write_chain(
            path,
            &r.best_chain,
            path.extension().is_some_and(|e| e == "json"),
        )?;
    }
    Ok(match format {
        Format::Json => serde_json::to_string(&r)? + "\n",
        Format::Csv => format!(
            "x,y,best_length,status,nodes_explored,seconds\n{},{},{},{},{},{:.3}\n",
            r.best_chain.context().map_or(0, |c| c.x),
            r.best_chain.context().map_or(0, |c| c.y),
            r.best_length,
            r.status,
            r.nodes_explored,
            r.budget_used.as_secs_f64()
        ),
        Format::Text => format!(
            "{} {}\n{}\nnodes {} in {:.3}s\n",
            r.status,
            r.best_length,
            r.best_chain,
            r.nodes_explored,
            r.budget_used.as_secs_f64()
        ),
    })
}

fn order(args: OrderArgs, format: Format) -> Outcome {
    let blocks: Vec<Vec<(usize, usize)>> = args
        .blocks
        .iter()
        .enumerate()
        .map(|(b, &n)| (0..n).map(|i| (b, i)).collect())
        .collect();
    match arrange(&blocks) {
        Ok(seq) => Ok(match format {
            Format::Json => {
                json!({"feasible": true, "blocks": seq.iter().map(|e| e.0).collect::<Vec<_>>()})
                    .to_string()
                    + "\n"
            }
            Format::Csv => {
                "block,index\n".to_string()
                    + &seq
                        .iter()
                        .map(|(b, i)| format!("{b},{i}\n"))
                        .collect::<String>()
            }
            Format::Text => {
                seq.iter()
                    .map(|(b, _)| b.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
                    + "\n"
            }
        }),
        Err(e @ divchain::OrderingError::Infeasible { .. }) => {
            Err(Failure::Check(format!("infeasible: {e}\n")))
        }
        Err(e) => Err(e.into()),
    }
}

fn conjecture(args: ConjectureArgs, format: Format) -> Outcome {
    const TARGET: f64 = 0.306;
    let mut rows = Vec::new();
    for &x in &args.xs {
        let lb = lower_bound_f(x, x)?;
        let ratio = lb.bound as f64 * (x as f64).ln() / x as f64;
        rows.push((x, lb.bound, ratio));
    }
    Ok(match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|&(x, b, r)| json!({"x": x, "bound": b, "ratio": ratio6(r)}))
                .collect();
            json!({"target": ratio6(TARGET), "rows": items}).to_string() + "\n"
        }
        Format::Csv | Format::Text => {
            let mut out = String::from("x,bound,ratio,target\n");
            for (x, b, r) in rows {
                writeln!(out, "{x},{b},{},{}", ratio6(r), ratio6(TARGET)).unwrap();
            }
            out
        }
    })
}

fn peel(args: PeelArgs, format: Format) -> Outcome {
    Ok(render_chain(
        &peel_chain(args.a, args.q, args.x, args.y)?,
        format,
    ))
}

fn connect(args: ConnectArgs, format: Format) -> Outcome {
    Ok(render_chain(
        &connect_astar(args.a, args.b, args.x, args.y)?,
        format,
    ))
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    let format = cli.format;
    match cli.command {
        Command::Count(a) => count(a, format),
        Command::BuchstabCheck(a) => buchstab(a, format),
        Command::EstimateCt(a) => estimate(a, format),
        Command::Chain(c) => chain_command(c, format),
        Command::Peel(a) => peel(a, format),
        Command::Connect(a) => connect(a, format),
        Command::Exact(a) => exact(a, format),
        Command::Order(a) => order(a, format),
        Command::ConjectureF(a) => conjecture(a, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
