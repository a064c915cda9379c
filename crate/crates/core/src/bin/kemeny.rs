use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kemeny_core::experiments::{emit_csv, run_sweep, SweepSpec};
use kemeny_core::format::{emit_profile, emit_solution, import_preflib, parse_profile};
use kemeny_core::mallows::{sample_profile, MallowsConfig};
use kemeny_core::verify::{run_verify, VerifyConfig};
use kemeny_core::{
    parameter_report, solve, Algorithm, Error, KOptSearch, Lambda, Limits, Mode, Profile, Ranking,
    SolveRequest,
};

#[derive(Parser)]
#[command(name = "kemeny", version, about = "Distinct optimal and approximate Kemeny rankings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Brute,
    Branch,
    SubsetDp,
    WindowD,
    WindowRange,
    PathwidthDp,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Brute => Algorithm::Brute,
            AlgorithmArg::Branch => Algorithm::Branch,
            AlgorithmArg::SubsetDp => Algorithm::SubsetDp,
            AlgorithmArg::WindowD => Algorithm::WindowD,
            AlgorithmArg::WindowRange => Algorithm::WindowRange,
            AlgorithmArg::PathwidthDp => Algorithm::PathwidthDp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchArg {
    Binary,
    Escalating,
}

#[derive(Subcommand)]
enum Command {
    /// Print the five structural parameters of a profile
    Params { input: PathBuf },
    /// Enumerate distinct optimal (default), budgeted or approximate rankings
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "subset-dp")]
        algorithm: AlgorithmArg,
        /// Number of distinct rankings requested
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Score budget: return rankings of score at most k
        #[arg(long)]
        k: Option<u64>,
        /// Approximation factor, e.g. 1.5 or 3/2
        #[arg(long)]
        lambda: Option<String>,
        /// How the optimal score is located for budget-driven algorithms
        #[arg(long, value_enum, default_value = "binary")]
        kopt_search: SearchArg,
    },
    /// Sample a Mallows profile
    Sample {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// "identity" or a file holding the central ranking
        #[arg(long, default_value = "identity")]
        central: String,
    },
    /// Run the parameter sweep and write it as CSV
    Experiment {
        #[arg(long, default_value_t = 10)]
        m: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [10, 25, 50, 100, 200])]
        voters: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1.5, 3.0, 5.0, 8.0])]
        thetas: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every solver against brute force on random profiles
    Verify {
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Convert a PrefLib strict-order-complete file to a profile file
    ImportPreflib { input: PathBuf },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Profile, Error> {
    parse_profile(&read(path)?)
}

fn central_ranking(spec: &str, m: usize) -> Result<Ranking, Error> {
    if spec == "identity" {
        return Ok(Ranking::identity(m));
    }
    let text = read(Path::new(spec))?;
    let ranking = match parse_profile(&text) {
        Ok(p) => p.votes()[0].clone(),
        Err(_) => {
            let line = text.lines().next().unwrap_or("");
            let order = line
                .split(',')
                .map(|f| f.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(1, "expected a comma-separated ranking"))?;
            Ranking::new(order)?
        }
    };
    if ranking.len() != m {
        return Err(Error::Invalid(format!(
            "central ranking has {} candidates, --m is {m}",
            ranking.len()
        )));
    }
    Ok(ranking)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Params { input } => {
            let rep = parameter_report(&load(&input)?, &Limits::default())?;
            println!("max_range={}", rep.max_range);
            println!("avg_kt={}", rep.avg_kt);
            println!("avg_kt_decimal={}", rep.avg_kt.decimal());
            println!("unanimity_width={}", rep.unanimity_width);
            println!("blocking_size={}", rep.blocking_size);
            println!("consensus_distance={}", rep.consensus_distance);
        }
        Command::Solve {
            input,
            algorithm,
            r,
            k,
            lambda,
            kopt_search,
        } => {
            let mode = match (k, lambda) {
                (Some(_), Some(_)) => {
                    return Err(Error::Invalid("--k and --lambda are mutually exclusive".into()))
                }
                (Some(k), None) => Mode::Budget(k),
                (None, Some(l)) => Mode::Approx(l.parse::<Lambda>()?),
                (None, None) => Mode::Opt,
            };
            let profile = load(&input)?;
            let mut req = SolveRequest::new(&profile, r, mode, algorithm.into());
            req.kopt_search = match kopt_search {
                SearchArg::Binary => KOptSearch::Binary,
                SearchArg::Escalating => KOptSearch::Escalating,
            };
            let out = solve(&req)?;
            if let Some(note) = &out.stats.rerouted {
                eprintln!("note: {note}");
            }
            print!("{}", emit_solution(&profile, &out.rankings));
            eprintln!("found {} of requested {r}", out.rankings.len());
        }
        Command::Sample {
            m,
            n,
            theta,
            seed,
            central,
        } => {
            let cfg = MallowsConfig::new(central_ranking(&central, m)?, theta, seed)?;
            print!("{}", emit_profile(&sample_profile(&cfg, n)?));
        }
        Command::Experiment {
            m,
            voters,
            thetas,
            samples,
            seed,
            out,
        } => {
            let spec = SweepSpec {
                m,
                voter_counts: voters,
                thetas,
                samples_per_cell: samples,
                seed,
                limits: Limits::default(),
            };
            let csv = emit_csv(&run_sweep(&spec)?);
            fs::write(&out, csv)
                .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
        }
        Command::Verify {
            m_max,
            n_max,
            trials,
            seed,
        } => {
            let rep = run_verify(&VerifyConfig {
                m_max,
                n_max,
                trials,
                seed,
            })?;
            match rep.failure {
                None => println!("ok: {} trials, {} checks", rep.trials, rep.checks),
                Some(f) => {
                    println!("FAIL at trial {}: {}", f.trial, f.detail);
                    print!("{}", f.profile);
                    std::process::exit(1);
                }
            }
        }
        Command::ImportPreflib { input } => {
            print!("{}", emit_profile(&import_preflib(&read(&input)?)?));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
