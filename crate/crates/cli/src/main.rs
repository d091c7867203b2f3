use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rootpath::analysis::{alternating_tail_constant, analyze, classify};
use rootpath::io::{parse_graph, parse_structure, serialize_structure};
use rootpath::random::{seeded, FamilyKind};
use rootpath::reductions::{gen_family, make_p_kl, reduce_longshort, reduce_ustcon};
use rootpath::solvers::{
    algorithm_ac, algorithm_b, brute_force_embedding, solve_longshort, solve_ustcon, AcConfig, ExactLongShort,
    LongShortInstance,
};
use rootpath::verify::{run_verification, Method, VerificationConfig};
use rootpath::{as_rooted_path, Graph, RootedPathStructure};

#[derive(Parser)]
#[command(name = "rootpath", version, about = "Embedding rooted path structures")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Largest k handled by color coding.
    #[arg(long, global = true, default_value_t = 4)]
    k_max: usize,
    /// Factor on log2 n in the hash family's prime bound.
    #[arg(long, global = true, default_value_t = 1.0)]
    log_base_multiplier: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Unfoldability and criticality of each structure, as JSON.
    Analyze {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Classifies a sample against a degree bound.
    Classify {
        files: Vec<PathBuf>,
        #[arg(long)]
        bound: usize,
        /// Adds generated members of this family (1-4 or Pkl) to the sample.
        #[arg(long)]
        family: Option<FamilyKind>,
        /// Size range for --family, such as 3..12 (inclusive).
        #[arg(long, default_value = "3..12")]
        sizes: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Decision problems; prints `yes` or `no`.
    #[command(subcommand)]
    Solve(Solve),
    /// Reductions to embedding instances.
    #[command(subcommand)]
    Reduce(Reduce),
    /// Writes `family<N> <size>` or `pkl <k> <l>` as structure JSON.
    Gen {
        name: String,
        a: usize,
        b: Option<usize>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Cross-checks the deciders and reductions against brute force.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Brute,
    Ac,
    Tail,
}

#[derive(Subcommand)]
enum Solve {
    /// Does P embed into B?
    Emb {
        p: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "ac")]
        method: SolveMethod,
        /// Alternating-tail constant for `--method tail`; defaults to the least one.
        #[arg(long)]
        c: Option<usize>,
    },
    /// A path of length at least l from s, or an s-t path of length exactly k?
    Longshort { g: PathBuf, s: usize, t: usize, k: usize, l: usize },
    /// An s-t path of length at most l?
    Ustcon { g: PathBuf, s: usize, t: usize, l: usize },
}

#[derive(Subcommand)]
enum Reduce {
    UstconToEmb {
        g: PathBuf,
        s: usize,
        t: usize,
        l: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        family: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        case: u8,
        /// Largest structure size tried from the family.
        #[arg(long, default_value_t = 64)]
        max_size: usize,
        #[arg(short, num_args = 2, value_names = ["P", "B"], required = true)]
        o: Vec<PathBuf>,
    },
    LongshortToEmb {
        g: PathBuf,
        s: usize,
        t: usize,
        k: usize,
        l: usize,
        #[arg(short, num_args = 2, value_names = ["P", "BPRIME"], required = true)]
        o: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 5)]
    max_k: usize,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,Pkl")]
    families: Vec<FamilyKind>,
    #[arg(long, value_delimiter = ',', default_value = "ac,tail")]
    methods: Vec<Method>,
    #[arg(short)]
    o: Option<PathBuf>,
}

/// Failure to write results, as opposed to bad input.
#[derive(Debug)]
struct OutputError(anyhow::Error);

impl std::fmt::Display for OutputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for OutputError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<OutputError>() {
                ExitCode::FAILURE
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_path(path: &Path) -> Result<RootedPathStructure> {
    let s = parse_structure(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    as_rooted_path(s).with_context(|| format!("{} is not a rooted path structure", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| OutputError(e).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn decision(answer: bool) -> Result<ExitCode> {
    println!("{}", if answer { "yes" } else { "no" });
    Ok(ExitCode::SUCCESS)
}

fn parse_sizes(spec: &str) -> Result<(usize, usize)> {
    let (lo, hi) = spec.split_once("..").ok_or_else(|| anyhow!("sizes must look like LO..HI, got `{spec}`"))?;
    let lo: usize = lo.parse().with_context(|| format!("bad size `{lo}`"))?;
    let hi: usize = hi.trim_start_matches('=').parse().with_context(|| format!("bad size `{hi}`"))?;
    if lo < 3 || hi < lo {
        bail!("size range {lo}..{hi} must satisfy 3 <= LO <= HI");
    }
    Ok((lo, hi))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let solver = AcConfig { k_max: cli.k_max, log_multiplier: cli.log_base_multiplier };
    match cli.command {
        Command::Analyze { files, o } => {
            let reports = files.iter().map(|f| load_path(f).map(|p| analyze(&p))).collect::<Result<Vec<_>>>()?;
            let text = if reports.len() == 1 { json(&reports[0]) } else { json(&reports) };
            emit(&text, o.as_deref())?;
        }
        Command::Classify { files, bound, family, sizes, o } => {
            let mut sample = files.iter().map(|f| load_path(f)).collect::<Result<Vec<_>>>()?;
            if let Some(kind) = family {
                let (lo, hi) = parse_sizes(&sizes)?;
                let mut rng = seeded(cli.seed);
                sample.extend((lo..=hi).map(|n| kind.generate(n, &mut rng)));
            }
            let c = classify(&sample, bound)?;
            emit(&json(&c), o.as_deref())?;
        }
        Command::Solve(Solve::Emb { p, b, method, c }) => {
            let p = load_path(&p)?;
            let b = parse_structure(&read(&b)?).with_context(|| format!("parsing {}", b.display()))?;
            let answer = match method {
                SolveMethod::Brute => brute_force_embedding(p.base(), &b)?.is_some(),
                SolveMethod::Ac => algorithm_ac(&p, &b, &ExactLongShort, &solver)?.accepted(),
                SolveMethod::Tail => {
                    let c = match c {
                        Some(c) => c,
                        None => alternating_tail_constant(&p)?,
                    };
                    algorithm_b(&p, &b, c, &solver)?.accepted()
                }
            };
            return decision(answer);
        }
        Command::Solve(Solve::Longshort { g, s, t, k, l }) => {
            let inst = LongShortInstance::new(load_graph(&g)?, s, t, k, l)?;
            return decision(solve_longshort(&inst));
        }
        Command::Solve(Solve::Ustcon { g, s, t, l }) => {
            return decision(solve_ustcon(&load_graph(&g)?, s, t, l)?);
        }
        Command::Reduce(Reduce::UstconToEmb { g, s, t, l, family, case, max_size, o }) => {
            let graph = load_graph(&g)?;
            let supply = |j: usize| gen_family(family, 3 + j).ok().filter(|p| p.k() <= max_size);
            let (p, b, x) = reduce_ustcon(&graph, s, t, l, supply, case, max_size.saturating_sub(2))?;
            emit(&serialize_structure(p.base()), Some(&o[0]))?;
            emit(&serialize_structure(&b), Some(&o[1]))?;
            eprintln!("|P| = {}, |B| = {}, X = {x:?}", p.k(), b.len());
        }
        Command::Reduce(Reduce::LongshortToEmb { g, s, t, k, l, o }) => {
            let (p, gp) = reduce_longshort(&load_graph(&g)?, s, t, k, l)?;
            emit(&serialize_structure(p.base()), Some(&o[0]))?;
            emit(&serialize_structure(&gp), Some(&o[1]))?;
        }
        Command::Gen { name, a, b, o } => {
            let p = match (name.as_str(), b) {
                ("pkl" | "Pkl", Some(l)) => make_p_kl(a, l)?,
                ("pkl" | "Pkl", None) => bail!("usage: gen pkl <k> <l>"),
                (_, None) => {
                    let id = name
                        .strip_prefix("family")
                        .and_then(|n| n.parse::<u8>().ok())
                        .ok_or_else(|| anyhow!("expected family<N> or pkl, got `{name}`"))?;
                    gen_family(id, a)?
                }
                (_, Some(_)) => bail!("family<N> takes a single size"),
            };
            emit(&serialize_structure(p.base()), o.as_deref())?;
        }
        Command::Verify(args) => {
            let cfg = VerificationConfig {
                seed: cli.seed,
                instance_count: args.count,
                max_k: args.max_k,
                max_n: args.max_n,
                families: args.families,
                methods: args.methods,
                solver,
            };
            let report = run_verification(&cfg)?;
            for check in &report.checks {
                eprintln!("{}: {} passed, {} failed in {:.2?}", check.name, check.passed, check.failed, check.elapsed);
            }
            emit(&report.to_json(), args.o.as_deref())?;
            if !report.all_passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
