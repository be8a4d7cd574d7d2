use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use torusdef::cli::{parse_config, run, Config, RunOptions, EXIT_CONFIG, EXIT_INTERNAL};
use torusdef::extmodel::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "torusdef", version, about = "Deformation-ring invariants of generalised tori from finite data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the JSON report on stdout instead of the text rendering.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Small,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// ℰ, (ℰ⊗M)_Δ, q and the ring descriptors from (Δ, A, κ, M).
    Abstract {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check against brute-force cocycle counts.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Closed forms and model cross-check for a local-field preset.
    Local {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "small")]
        grid: GridArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The component torsor for torsion invariants μ, e.g. `--mu 2,4`.
    Components {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        mu: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &PathBuf, mode: &str) -> Result<Config, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let cfg = parse_config(&text).map_err(|e| e.to_string())?;
    if cfg.mode() != mode {
        return Err(format!("config error at mode: expected \"{mode}\", found \"{}\"", cfg.mode()));
    }
    Ok(cfg)
}

fn set_workers() {
    if let Some(n) = std::env::var("TORUSDEF_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_workers();
    let mut opts = RunOptions::default();
    let (cfg, out) = match cli.command {
        Command::Abstract {
            config,
            out,
            oracle,
            budget,
        } => {
            opts.require_oracle = oracle;
            opts.budget = budget;
            (load(&config, "abstract"), out)
        }
        Command::Local { config, out } => (load(&config, "local"), out),
        Command::Verify { grid, budget, seed, out } => {
            let grid = match grid {
                GridArg::Small => "small",
                GridArg::Full => "full",
            };
            let raw = json!({"mode": "verify", "grid": grid, "budget": budget, "seed": seed});
            (parse_config(&raw.to_string()).map_err(|e| e.to_string()), out)
        }
        Command::Components { mu, out } => {
            let raw = json!({"mode": "components", "mu": mu});
            (parse_config(&raw.to_string()).map_err(|e| e.to_string()), out)
        }
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let outcome = run(&cfg, &opts);
    let json = outcome.report.to_json();
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &json) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INTERNAL as u8);
        }
    }
    if cli.json {
        print!("{json}");
    } else {
        print!("{}", outcome.report.render_text());
    }
    ExitCode::from(outcome.exit_code as u8)
}
