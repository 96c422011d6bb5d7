//! Command-line front end: build, verify, cost, bound and sweep schemes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration,
//! resource or I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lsdc::bounds::{fmt_sig, region_report, write_region_csv, REGION_CSV_HEADER};
use lsdc::covering::{build_covering_code, CandidatePolicy};
use lsdc::fq::{FieldSpec, FqMatrix, FqVector};
use lsdc::io::{read_matrix, read_scheme, scheme_to_json};
use lsdc::multishot::{build_multishot_scheme, multishot_gamma_bound};
use lsdc::scheme::{
    bounds_check, build_scheme_uncoded_centralized, build_scheme_uncoded_decentralized, verify_scheme,
    worked_example, Budgets, DemandMatrix, Scheme, Strategy, DEFAULT_SEED,
};
use lsdc::sim::{audit_costs, run_round};

#[derive(Parser)]
#[command(name = "lsdc", version, about = "Coded schemes for linearly-separable distributed computing")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a scheme and write it as JSON.
    Build(BuildArgs),
    /// Check D E = F for a scheme file.
    Verify { path: PathBuf },
    /// Print the exact costs of a scheme file.
    Costs {
        path: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the bound curves for one parameter point.
    Bounds(BoundsArgs),
    /// CSV of achieved costs and bound curves over a range of N.
    ///
    /// Columns: q,K,N,L,strategy,achieved_gamma,achieved_delta,
    /// achieved_big_delta, then converse_gamma,achievable_gamma,big_delta,
    /// delta,functional_capacity,uncoded_decentralized_delta,
    /// uncoded_centralized_gamma,uncoded_centralized_delta,seed (the seed of the
    /// row's random demand matrix).
    Sweep(SweepArgs),
    /// Run rounds of the protocol on random file values.
    Simulate {
        path: PathBuf,
        #[arg(long, default_value_t = 100)]
        rounds: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the first round's transcript as JSON lines.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Build a greedy covering code of GF(q)^n.
    Cover {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        radius: usize,
        /// Sample this many candidates per step instead of trying all.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the greedy trace as CSV
        /// (iteration,dimension,radius,uncovered,fraction,chosen).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    FullCovering,
    PartialCovering,
    PartialCoveringExact,
    GivenD,
    BlockDiagonal,
    UncodedDecentralized,
    UncodedCentralized,
}

#[derive(Args)]
struct BuildArgs {
    /// Emit the q=7, K=4, N=8, L=6 worked example.
    #[arg(long, alias = "paper-example")]
    worked_example: bool,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long = "T", default_value_t = 1)]
    t: usize,
    /// Demand matrix literal; a seeded random F is drawn otherwise.
    #[arg(long)]
    demand: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StrategyArg::FullCovering)]
    strategy: StrategyArg,
    #[arg(long)]
    radius: Option<usize>,
    /// Decoding matrix literal for --strategy given-d.
    #[arg(long = "decoder")]
    decoder: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct LimitArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = lsdc::code::DEFAULT_MAX_TABLE)]
    max_table: u64,
    #[arg(long, default_value_t = lsdc::covering::DEFAULT_MAX_POINTS)]
    max_points: u64,
    /// Candidates per greedy step when sampling.
    #[arg(long, default_value_t = lsdc::covering::DEFAULT_SAMPLE)]
    sample: usize,
    /// Keep idle servers idle instead of repairing zero rows of E.
    #[arg(long)]
    no_repair: bool,
}

impl LimitArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            max_table: self.max_table,
            max_points: self.max_points,
            seed: self.seed,
            sample: self.sample,
            repair_zero_rows: !self.no_repair,
            ..Budgets::default()
        }
    }
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    q: u32,
    #[arg(long = "K")]
    k: usize,
    #[arg(long = "N")]
    n: usize,
    #[arg(long = "L")]
    l: u64,
    #[arg(long = "T", default_value_t = 1)]
    t: usize,
    /// Emit CSV instead of text.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    q: u32,
    /// K/N as a fraction, e.g. 1/2.
    #[arg(long, default_value = "1/2")]
    ratio: String,
    /// Comma-separated N values or an inclusive range a..b.
    #[arg(long = "N", default_value = "8..24")]
    n: String,
    /// Subfunctions per point; defaults to K.
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long, value_enum, default_value_t = StrategyArg::BlockDiagonal)]
    strategy: StrategyArg,
    /// Only the bound curves, no scheme construction.
    #[arg(long)]
    bounds_only: bool,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.cmd {
        Cmd::Build(a) => cmd_build(a),
        Cmd::Verify { path } => {
            let s = read_scheme(&path).with_context(|| format!("reading {}", path.display()))?;
            let v = verify_scheme(&s)?;
            match v.mismatch {
                None => {
                    println!("OK");
                    Ok(Outcome::Ok)
                }
                Some((r, c)) => {
                    println!("MISMATCH at row {}, column {} (1-based)", r + 1, c + 1);
                    Ok(Outcome::Failed)
                }
            }
        }
        Cmd::Costs { path, json } => {
            let s = read_scheme(&path).with_context(|| format!("reading {}", path.display()))?;
            if json {
                println!("{}", serde_json::to_string_pretty(&s.costs())?);
            } else {
                print_summary(&mut std::io::stdout(), &s)?;
            }
            Ok(Outcome::Ok)
        }
        Cmd::Bounds(a) => cmd_bounds(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Simulate {
            path,
            rounds,
            seed,
            transcript,
        } => {
            let s = read_scheme(&path).with_context(|| format!("reading {}", path.display()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = 0usize;
            let mut audit_ok = true;
            for i in 0..rounds {
                let w = FqVector::new(s.field(), (0..s.l()).map(|_| rng.gen_range(0..s.q())).collect())?;
                let r = run_round(&s, &w)?;
                if !r.correct() {
                    failures += 1;
                }
                audit_ok &= audit_costs(&r.transcript) == s.costs();
                if i == 0 {
                    if let Some(p) = &transcript {
                        let f = std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
                        r.transcript.write_json_lines(std::io::BufWriter::new(f))?;
                    }
                }
            }
            println!("seed: {seed}");
            println!("rounds: {rounds}, decoding failures: {failures}");
            println!("transcript audit matches matrix costs: {audit_ok}");
            Ok(if failures == 0 && audit_ok { Outcome::Ok } else { Outcome::Failed })
        }
        Cmd::Cover {
            q,
            n,
            radius,
            sample,
            seed,
            trace,
        } => {
            let field = FieldSpec::new(q)?;
            let policy = match sample {
                Some(count) => CandidatePolicy::RandomSample { count, seed },
                None => CandidatePolicy::auto(field, n, seed),
            };
            let (code, tr) = build_covering_code(n, radius, field, policy)?;
            let measured = lsdc::code::covering_radius(&code)?;
            println!("seed: {seed}");
            println!("n = {n}, k = {}, requested radius = {radius}, measured radius = {measured}", code.k());
            println!("descent inequality holds at every step: {}", tr.descent_holds());
            if let Some(p) = trace {
                let f = std::fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                tr.write_csv(f)?;
            }
            Ok(if measured <= radius { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

fn random_demand(field: FieldSpec, k: usize, l: usize, seed: u64) -> anyhow::Result<DemandMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..k * l).map(|_| rng.gen_range(0..field.q())).collect();
    Ok(DemandMatrix::new(FqMatrix::from_flat(field, k, l, data)?)?)
}

fn build_from(a: &BuildArgs) -> anyhow::Result<Scheme> {
    if a.worked_example {
        return Ok(worked_example());
    }
    let demand = match &a.demand {
        Some(p) => DemandMatrix::new(read_matrix(p).with_context(|| format!("reading {}", p.display()))?)?,
        None => {
            let (Some(q), Some(k), Some(l)) = (a.q, a.k, a.l) else {
                bail!("give --demand or all of --q, --K, --L");
            };
            random_demand(FieldSpec::new(q)?, k, l, a.limits.seed)?
        }
    };
    if demand.exceeds_column_space() {
        eprintln!("warning: L > q^K, some demanded columns repeat");
    }
    let budgets = a.limits.budgets();
    let n = a.n;
    let need_n = || n.context("--N is required for this strategy");
    let mut s = match a.strategy {
        StrategyArg::UncodedDecentralized => build_scheme_uncoded_decentralized(&demand)?,
        StrategyArg::UncodedCentralized => build_scheme_uncoded_centralized(&demand, need_n()?)?,
        other => {
            let strategy = match other {
                StrategyArg::FullCovering => Strategy::FullCovering { radius: a.radius },
                StrategyArg::PartialCovering => Strategy::PartialCovering {
                    radius: a.radius,
                    exact: false,
                },
                StrategyArg::PartialCoveringExact => Strategy::PartialCovering {
                    radius: None,
                    exact: true,
                },
                StrategyArg::GivenD => {
                    let p = a.decoder.as_ref().context("--decoder is required for given-d")?;
                    Strategy::GivenD(read_matrix(p).with_context(|| format!("reading {}", p.display()))?)
                }
                StrategyArg::BlockDiagonal => Strategy::BlockDiagonal { blocks: a.blocks },
                _ => unreachable!(),
            };
            let n = match (&strategy, n) {
                (Strategy::GivenD(d), None) => d.cols() / a.t,
                (_, n) => n.context("--N is required")?,
            };
            build_multishot_scheme(&demand, n, a.t, &strategy, &budgets)?
        }
    };
    s.provenance.seed = Some(a.limits.seed);
    Ok(s)
}

fn cmd_build(a: BuildArgs) -> anyhow::Result<Outcome> {
    let s = build_from(&a)?;
    let json = scheme_to_json(&s);
    match &a.output {
        Some(p) => {
            std::fs::write(p, &json).with_context(|| format!("writing {}", p.display()))?;
            print_summary(&mut std::io::stdout(), &s)?;
        }
        None => {
            print!("{json}");
            print_summary(&mut std::io::stderr(), &s)?;
        }
    }
    Ok(if verify_scheme(&s)?.ok { Outcome::Ok } else { Outcome::Failed })
}

fn print_summary(out: &mut dyn Write, s: &Scheme) -> anyhow::Result<()> {
    let c = s.costs();
    let v = verify_scheme(s)?;
    let b = bounds_check(s);
    writeln!(out, "q={} K={} N={} L={} T={} strategy={}", s.q(), s.k(), s.n(), s.l(), s.t(), s.provenance.strategy)?;
    if let Some(seed) = s.provenance.seed {
        writeln!(out, "seed: {seed}")?;
    }
    writeln!(out, "verified: {}", v.ok)?;
    writeln!(out, "gamma = {} ({})", c.gamma, fmt_sig(c.gamma_f64(), 12))?;
    writeln!(out, "delta = {} ({})", c.delta, fmt_sig(c.delta_f64(), 12))?;
    writeln!(out, "Delta = {}", c.big_delta)?;
    writeln!(out, "symbols per user: {:?}", c.symbols_per_user)?;
    if let Some(raw) = s.provenance.raw_max_column_weight {
        writeln!(out, "gamma before zero-row repair = {raw}/{}", s.n() * s.t())?;
    }
    let opt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| fmt_sig(v, 12));
    writeln!(out, "converse gamma (leading order) = {}", opt(b.converse_gamma))?;
    writeln!(out, "achievable gamma (leading order) = {}", opt(b.achievable_gamma))?;
    if s.t() > 1 {
        let m = multishot_gamma_bound(s.k(), s.n(), s.t(), s.q())?;
        writeln!(out, "multi-slot achievable gamma = {}", fmt_sig(m.bound, 12))?;
    }
    writeln!(out, "finite-length converse consistent: {}", b.finite_converse_holds)?;
    Ok(())
}

fn cmd_bounds(a: BoundsArgs) -> anyhow::Result<Outcome> {
    let r = region_report(a.q, a.k, a.n, a.l)?;
    if a.csv {
        write_region_csv(std::slice::from_ref(&r), std::io::stdout())?;
        return Ok(Outcome::Ok);
    }
    println!("q={} K={} N={} L={} (leading-order bounds)", a.q, a.k, a.n, a.l);
    println!("converse gamma   = {}", fmt_sig(r.converse_gamma, 12));
    println!("achievable gamma = {}", fmt_sig(r.achievable_gamma, 12));
    println!("Delta bound      = {}", fmt_sig(r.big_delta, 12));
    println!("delta bound      = {}", fmt_sig(r.delta, 12));
    println!("H_q(gamma)       = {}", fmt_sig(r.functional_capacity, 12));
    for p in &r.points {
        println!("point {}: gamma = {}, delta = {}", p.label, fmt_sig(p.gamma, 12), fmt_sig(p.delta, 12));
    }
    if a.t > 1 {
        let m = multishot_gamma_bound(a.k, a.n, a.t, a.q)?;
        println!("multi-slot gamma bound (T={}) = {}{}", a.t, fmt_sig(m.bound, 12), if m.clamped { " (clamped)" } else { "" });
    }
    Ok(Outcome::Ok)
}

fn parse_ratio(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s.split_once('/').context("ratio must look like a/b")?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    if b == 0 || a >= b || a == 0 {
        bail!("ratio must satisfy 0 < a/b < 1");
    }
    Ok((a, b))
}

fn parse_ns(s: &str) -> anyhow::Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| Ok(x.trim().parse()?)).collect()
}

/// Block count for the sweep's block-diagonal builds: the fewest blocks
/// dividing gcd(N, K) whose block space has at most 2^16 points.
fn sweep_blocks(q: u32, n: usize, k: usize) -> Option<usize> {
    let g = (1..=n.min(k)).rev().find(|d| n % d == 0 && k % d == 0)?;
    (1..=g)
        .filter(|m| g % m == 0)
        .find(|m| (n / m) as f64 * (q as f64).log2() <= 16.0)
}

fn cmd_sweep(a: SweepArgs) -> anyhow::Result<Outcome> {
    let (num, den) = parse_ratio(&a.ratio)?;
    let field = FieldSpec::new(a.q)?;
    let budgets = a.limits.budgets();
    let out: Box<dyn Write> = match &a.output {
        Some(p) => Box::new(std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["q", "K", "N", "L", "strategy", "achieved_gamma", "achieved_delta", "achieved_big_delta"];
    header.extend(REGION_CSV_HEADER.iter().skip(4));
    header.push("seed");
    w.write_record(&header)?;
    for n in parse_ns(&a.n)? {
        if n * num % den != 0 {
            continue;
        }
        let k = n * num / den;
        let l = a.l.unwrap_or(k);
        let region = region_report(a.q, k, n, l as u64)?;
        let row_seed = a.limits.seed ^ n as u64;
        let mut row = vec![a.q.to_string(), k.to_string(), n.to_string(), l.to_string()];
        let built = if a.bounds_only {
            None
        } else {
            let demand = random_demand(field, k, l, row_seed)?;
            let strategy = match a.strategy {
                StrategyArg::BlockDiagonal => sweep_blocks(a.q, n, k).map(|m| Strategy::BlockDiagonal { blocks: m }),
                StrategyArg::FullCovering => Some(Strategy::FullCovering { radius: None }),
                StrategyArg::PartialCovering => Some(Strategy::PartialCovering { radius: None, exact: false }),
                _ => bail!("sweep supports block-diagonal, full-covering and partial-covering"),
            };
            match strategy {
                Some(st) => match lsdc::scheme::build_scheme_coded(&demand, n, &st, &budgets) {
                    Ok(s) => Some((st.name(), s.costs())),
                    Err(e) => {
                        eprintln!("N={n}: {e}");
                        None
                    }
                },
                None => None,
            }
        };
        match built {
            Some((name, c)) => {
                row.push(name.to_string());
                row.push(fmt_sig(c.gamma_f64(), 12));
                row.push(fmt_sig(c.delta_f64(), 12));
                row.push(fmt_sig(lsdc::scheme::ratio_f64(c.big_delta), 12));
            }
            None => row.extend(["none".to_string(), String::new(), String::new(), String::new()]),
        }
        row.extend(region.csv_row().into_iter().skip(4));
        row.push(row_seed.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(Outcome::Ok)
}
