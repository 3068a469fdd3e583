use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lvg_core::harness::bench::format_table;
use lvg_core::harness::{bench, dsm_property_check, gen_level_instance, GenSpec, Polarity};
use lvg_core::{
    check_scheme, compute_dmees, emit_scheme, emit_weighted, naive_recognize_level, parse_scheme, parse_weighted,
    recognize_level, ClassId, ParseOptions, Replay, WeightedGraph,
};

#[derive(Parser)]
#[command(name = "lvg", version, about = "Level-split, level-threshold and level-chain recognition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether every level graph is in the class.
    Recognize {
        #[arg(long)]
        class: ClassId,
        /// Check each level graph separately instead.
        #[arg(long)]
        naive: bool,
        /// Remap weights densely instead of rejecting unused weights.
        #[arg(long)]
        normalize: bool,
        file: PathBuf,
    },
    /// Print a degree-minimal elimination scheme.
    Scheme {
        #[arg(long)]
        normalize: bool,
        file: PathBuf,
    },
    /// Replay a scheme through the dynamic recognizer.
    CheckScheme {
        #[arg(long)]
        class: ClassId,
        graph: PathBuf,
        scheme: PathBuf,
    },
    /// Generate a level instance.
    Gen {
        #[arg(long)]
        class: ClassId,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Swap two weights of a yes-instance.
        #[arg(long)]
        perturb: bool,
    },
    /// Degree sandwich monotonicity check on random instances.
    Props {
        #[arg(long)]
        class: ClassId,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 9)]
        nmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the linear pipeline against the per-level baseline.
    Bench {
        #[arg(long)]
        class: ClassId,
        /// Edge counts, as `2^a..2^b` or a comma-separated list.
        #[arg(long, value_parser = parse_sizes)]
        sizes: Sizes,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 256)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Debug)]
struct Sizes(Vec<usize>);

fn parse_power(s: &str) -> Result<u32, String> {
    let exp = s.trim().strip_prefix("2^").ok_or_else(|| format!("expected `2^a`, found `{s}`"))?;
    let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
    if exp >= usize::BITS - 1 {
        return Err(format!("exponent {exp} too large"));
    }
    Ok(exp)
}

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let sizes: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse_power(a)?, parse_power(b)?);
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        (a..=b).map(|e| 1usize << e).collect()
    } else {
        s.split(',')
            .map(|x| {
                let x = x.trim();
                match x.strip_prefix("2^") {
                    Some(_) => parse_power(x).map(|e| 1usize << e),
                    None => x.parse().map_err(|_| format!("bad size `{x}`")),
                }
            })
            .collect::<Result<_, _>>()?
    };
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err("sizes must be ascending".into());
    }
    Ok(Sizes(sizes))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path, normalize: bool) -> Result<WeightedGraph, String> {
    parse_weighted(&read(path)?, ParseOptions { normalize }).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Recognize { class, naive, normalize, file } => {
            let wg = load(&file, normalize)?;
            let verdict = if naive { naive_recognize_level(&wg, class) } else { recognize_level(&wg, class) };
            println!("{verdict}");
            Ok(if verdict.accepted { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Scheme { normalize, file } => {
            let wg = load(&file, normalize)?;
            print!("{}", emit_scheme(&wg, compute_dmees(&wg).order()));
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckScheme { class, graph, scheme } => {
            let wg = load(&graph, false)?;
            let order = parse_scheme(&read(&scheme)?, &wg).map_err(|e| format!("{}: {e}", scheme.display()))?;
            match check_scheme(class, wg.graph(), &order).map_err(|e| e.to_string())? {
                Replay::AcceptAll => {
                    println!("SAFE");
                    Ok(ExitCode::SUCCESS)
                }
                Replay::RejectedAt(p) => {
                    println!("UNSAFE at={p}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Gen { class, n, k, seed, perturb } => {
            if n == 0 {
                return Err("--n must be at least 1".into());
            }
            let polarity = if perturb { Polarity::Perturbed } else { Polarity::Yes };
            let inst = gen_level_instance(GenSpec { class, n, k, seed, polarity });
            print!("{}", emit_weighted(&inst.wg));
            Ok(ExitCode::SUCCESS)
        }
        Command::Props { class, trials, nmax, seed } => {
            if !(1..=10).contains(&nmax) {
                return Err("--nmax must be between 1 and 10".into());
            }
            let report = dsm_property_check(class, trials, nmax, seed);
            print!("{report}");
            Ok(if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Bench { class, sizes, repeats, k, seed } => {
            print!("{}", format_table(&bench(class, &sizes.0, k, repeats, seed)));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli).unwrap_or_else(|e| {
        eprintln!("lvg: {e}");
        ExitCode::from(2)
    })
}
