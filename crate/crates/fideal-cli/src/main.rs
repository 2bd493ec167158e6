//! `fideal` — construct, verify and measure f-ideals from the command line.
//!
//! Exit codes: 0 success, 2 invalid argument (including unsupported ideals
//! and over-budget requests), 3 structurally impossible (odd slice),
//! 4 construction failed. Every error prints one machine-readable line to
//! stderr. JSON output is schema-stable and newline-terminated; runs that
//! consume randomness record their seed in the output.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fideal::{
    construct_block_even, construct_block_odd, construct_mixed_even, construct_mixed_odd_a,
    construct_mixed_odd_b, construct_pure, enumerate_exact, enumerate_monomials, f_ideal_report,
    is_lower_perfect, is_upper_perfect, newton_dual, pure_f_ideal_verdict, sample_densities,
    trend_report, Construction, DegreeSlice, DensityEstimate, Error, FIdealReport, GeneratorSet,
    Monomial, PureVerdict, SelectionPolicy, DEFAULT_EXACT_BUDGET, TREND_CSV_HEADER,
};

#[derive(Parser)]
#[command(name = "fideal", version, about = "f-ideal construction, verification and density lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for object-producing commands
    #[arg(long, short = 'f', global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Lex,
    Rand,
}

#[derive(Subcommand)]
enum Command {
    /// List all squarefree monomials of degree d over n variables
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Run a construction algorithm and emit the generator set plus trace
    Gen(GenArgs),
    /// Verify a generator set: f-vectors, ABCD table and f-ideal verdict
    Verify {
        /// Path to a GeneratorSet JSON file ("-" or absent: stdin)
        path: Option<PathBuf>,
    },
    /// f-vectors of the Stanley-Reisner and facet complexes
    Fvector {
        path: Option<PathBuf>,
    },
    /// ABCD degree partition
    Abcd {
        path: Option<PathBuf>,
    },
    /// Lower/upper/perfect predicates on a degree slice
    Perfect {
        path: Option<PathBuf>,
    },
    /// Newton complementary dual of a generator set
    Dual {
        path: Option<PathBuf>,
    },
    /// Density experiments
    Density {
        #[command(subcommand)]
        cmd: DensityCmd,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Algorithm: 4.1 | 4.4 | 4.6 | 4.8 | 4.9 | pure3 | pure4 | pure5 | dual
    #[arg(long)]
    alg: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Lex)]
    policy: PolicyArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Input GeneratorSet (only for --alg dual)
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DensityCmd {
    /// Walk every half-slice subset and count the four predicates
    Exact {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        budget: u64,
    },
    /// Monte Carlo estimates with 95% Wilson intervals
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// CSV table of densities and bounds over a list of n values
    Trend {
        #[arg(long)]
        d: u32,
        /// Comma-separated ambient sizes, e.g. 8,9,12
        #[arg(long)]
        ns: String,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        budget: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// FIDEAL_THREADS caps the rayon worker count.
fn configure_threads() {
    if let Some(v) = std::env::var_os("FIDEAL_THREADS") {
        if let Some(t) = v.to_str().and_then(|s| s.parse::<usize>().ok()) {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::StructurallyImpossible(_) => 3,
        Error::ConstructionFailed(_) => 4,
        Error::InvalidArgument(_)
        | Error::UnsupportedIdeal(_)
        | Error::TooLarge(_)
        | Error::UndefinedBound(_) => 2,
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| invalid(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| invalid(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_generators(path: &Option<PathBuf>) -> Result<GeneratorSet, Error> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("bad GeneratorSet JSON: {e}")))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let s = serde_json::to_string(value).map_err(|e| invalid(format!("serialize: {e}")))?;
    println!("{s}");
    Ok(())
}

#[derive(Serialize)]
struct EnumerateOut {
    n: u32,
    d: u32,
    count: usize,
    monomials: Vec<Monomial>,
}

#[derive(Serialize)]
struct GenOut<'a> {
    n: u32,
    generators: &'a [Monomial],
    trace: &'a fideal::ConstructionTrace,
}

#[derive(Serialize)]
struct ReportOut {
    n: u32,
    generators: usize,
    f_ideal: bool,
    sr: Vec<u64>,
    sr_tail: Vec<u64>,
    facet: Vec<u64>,
    facet_tail: Vec<u64>,
    abcd: Vec<fideal::AbcdRow>,
    abcd_complete: bool,
}

impl ReportOut {
    fn from_report(r: &FIdealReport) -> ReportOut {
        let (abcd, complete) = match r.abcd.full_rows() {
            Some(rows) => (rows, true),
            None => (r.abcd.computed_rows().to_vec(), false),
        };
        ReportOut {
            n: r.n,
            generators: r.generators,
            f_ideal: r.f_ideal,
            sr: r.sr.counts().to_vec(),
            sr_tail: r.sr.tail().to_vec(),
            facet: r.facet.counts().to_vec(),
            facet_tail: r.facet.tail().to_vec(),
            abcd,
            abcd_complete: complete,
        }
    }

    fn print_human(&self) {
        println!("n = {}, minimal generators = {}", self.n, self.generators);
        println!("f(SR complex)    = {:?}   tail {:?}", self.sr, self.sr_tail);
        println!("f(facet complex) = {:?}   tail {:?}", self.facet, self.facet_tail);
        println!("abcd table{}:", if self.abcd_complete { "" } else { " (truncated)" });
        for r in &self.abcd {
            println!("  degree {}: a={} b={} c={} d={}", r.degree, r.a, r.b, r.c, r.d);
        }
        println!("f-ideal: {}", self.f_ideal);
    }
}

#[derive(Serialize)]
struct PerfectOut {
    lower: bool,
    upper: bool,
    perfect: bool,
    pure_f_ideal: &'static str,
}

#[derive(Serialize)]
struct ExactOut {
    n: u32,
    d: u32,
    mode: &'static str,
    total: u64,
    lp: u64,
    up: u64,
    perfect: u64,
    fideal: u64,
}

#[derive(Serialize)]
struct SampleOut {
    n: u32,
    d: u32,
    mode: &'static str,
    trials: u64,
    seed: u64,
    estimates: Vec<DensityEstimate>,
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Enumerate { n, d } => {
            let monomials = enumerate_monomials(n, d)?;
            let out = EnumerateOut { n, d, count: monomials.len(), monomials };
            match cli.format {
                Format::Json => print_json(&out)?,
                Format::Human => {
                    println!("{} squarefree monomials of degree {d} on {n} variables:", out.count);
                    for m in &out.monomials {
                        println!("  {m}");
                    }
                }
            }
            Ok(())
        }
        Command::Gen(args) => run_gen(args, cli.format),
        Command::Verify { path } | Command::Fvector { path } | Command::Abcd { path } => {
            let g = read_generators(&path)?;
            let report = f_ideal_report(&g)?;
            let out = ReportOut::from_report(&report);
            match cli.format {
                Format::Json => print_json(&out)?,
                Format::Human => out.print_human(),
            }
            Ok(())
        }
        Command::Perfect { path } => {
            let text = read_input(&path)?;
            #[derive(serde::Deserialize)]
            struct SliceIn {
                n: u32,
                d: u32,
                monomials: Vec<Monomial>,
            }
            let raw: SliceIn = serde_json::from_str(&text)
                .map_err(|e| invalid(format!("bad DegreeSlice JSON: {e}")))?;
            let slice = DegreeSlice::new(raw.n, raw.d, raw.monomials)?;
            let lower = is_lower_perfect(&slice)?;
            let upper = is_upper_perfect(&slice)?;
            let pure = if raw.d < 2 {
                PureVerdict::No
            } else {
                pure_f_ideal_verdict(&slice)?
            };
            let out = PerfectOut {
                lower,
                upper,
                perfect: lower && upper,
                pure_f_ideal: pure.as_str(),
            };
            match cli.format {
                Format::Json => print_json(&out)?,
                Format::Human => {
                    println!("lower perfect: {lower}");
                    println!("upper perfect: {upper}");
                    println!("perfect: {}", lower && upper);
                    println!("pure f-ideal: {}", pure.as_str());
                }
            }
            Ok(())
        }
        Command::Dual { path } => {
            let g = read_generators(&path)?;
            let dual = newton_dual(&g)?;
            print_json(&dual)
        }
        Command::Density { cmd } => run_density(cmd),
    }
}

fn run_gen(args: GenArgs, format: Format) -> Result<(), Error> {
    let policy = match (args.policy, args.seed) {
        (PolicyArg::Lex, _) => SelectionPolicy::LexFirst,
        (PolicyArg::Rand, Some(s)) => SelectionPolicy::SeededRandom(s),
        (PolicyArg::Rand, None) => {
            return Err(invalid("--policy rand requires --seed"));
        }
    };
    let need = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| invalid(format!("--alg {} requires --{name}", args.alg)))
    };
    let construction: Construction = match args.alg.as_str() {
        "4.1" => construct_mixed_odd_a(need(args.k, "k")?, policy)?,
        "4.4" => construct_mixed_odd_b(need(args.k, "k")?, policy)?,
        "4.6" => construct_mixed_even(need(args.k, "k")?, policy)?,
        "4.8" => construct_block_odd(
            need(args.k, "k")?,
            need(args.l, "l")?,
            need(args.m, "m")?,
            policy,
        )?,
        "4.9" => construct_block_even(
            need(args.k, "k")?,
            need(args.l, "l")?,
            need(args.m, "m")?,
            policy,
        )?,
        "pure3" => construct_pure(3, need(args.n, "n")?, policy)?,
        "pure4" => construct_pure(4, need(args.n, "n")?, policy)?,
        "pure5" => construct_pure(5, need(args.n, "n")?, policy)?,
        "dual" => {
            let g = read_generators(&args.input)?;
            let dual = newton_dual(&g)?;
            return print_json(&dual);
        }
        other => return Err(invalid(format!("unknown algorithm {other}"))),
    };
    let out = GenOut {
        n: construction.ideal.n(),
        generators: construction.ideal.gens(),
        trace: &construction.trace,
    };
    match format {
        Format::Json => print_json(&out)?,
        Format::Human => {
            println!(
                "algorithm {} on {} variables: {} generators (policy {})",
                construction.trace.algorithm,
                out.n,
                out.generators.len(),
                construction.trace.policy
            );
            for part in &construction.trace.parts {
                println!("  {}: {} monomials", part.name, part.size);
            }
        }
    }
    Ok(())
}

fn run_density(cmd: DensityCmd) -> Result<(), Error> {
    match cmd {
        DensityCmd::Exact { n, d, budget } => {
            let c = enumerate_exact(n, d, budget)?;
            print_json(&ExactOut {
                n,
                d,
                mode: "exact",
                total: c.total,
                lp: c.lp,
                up: c.up,
                perfect: c.perfect,
                fideal: c.fideal,
            })
        }
        DensityCmd::Sample { n, d, trials, seed } => {
            let estimates = sample_densities(n, d, trials, seed)?;
            print_json(&SampleOut { n, d, mode: "sample", trials, seed, estimates })
        }
        DensityCmd::Trend { d, ns, trials, seed, budget, out } => {
            let ns: Vec<u32> = if ns.trim().is_empty() {
                Vec::new()
            } else {
                ns.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u32>()
                            .map_err(|_| invalid(format!("bad n value '{s}' in --ns")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let rows = trend_report(d, &ns, trials, seed, budget)?;
            let mut csv = String::from(TREND_CSV_HEADER);
            csv.push('\n');
            for row in &rows {
                csv.push_str(&row.to_csv());
                csv.push('\n');
            }
            match out {
                Some(path) => fs::write(&path, csv)
                    .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{csv}"),
            }
            Ok(())
        }
    }
}
