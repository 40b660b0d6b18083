use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdiff_core::orchestrator::{
    anticommutativity_checks, duality, eigenvalue_checks, full_suite, hecke_selftest, poincare_biinv, poincare_left,
    spectrum_report, trace_identities, Config, Format, Report, BUDGET_ENV, DEFAULT_MEMORY_BUDGET,
};
use qdiff_core::{RankMode, Tau};

#[derive(Parser)]
#[command(name = "qdiff", version, about = "Verify exterior-algebra dimensions of bicovariant calculi on GL_q(N)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank of the antisymmetrizer A_k against binom(N², k)
    Poincare(Opts),
    /// Bi-invariant form dimensions against (1+t)(1+t³)⋯(1+t^{2N−1})
    Biinv(Opts),
    /// Spectral decomposition of the abstract antisymmetrizer
    Spectrum {
        #[command(flatten)]
        opts: Opts,
        /// single degree to inspect; defaults to every k in 2..=min(kmax, 3)
        #[arg(long)]
        k: Option<usize>,
    },
    /// Degree-two duality with the reflection equation algebra
    Dual(Opts),
    /// Hecke algebra identities and trace functionals
    HeckeSelftest(Opts),
    /// Every check, in a fixed order
    All(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Modular,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Args)]
struct Opts {
    /// size N of the quantum group
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// sign of the calculus (+ or -); both when omitted
    #[arg(long, allow_hyphen_values = true, value_parser = parse_tau)]
    tau: Option<Tau>,
    /// largest form degree
    #[arg(long, default_value_t = 4)]
    kmax: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// number of primes in (2^31, 2^32) for modular mode
    #[arg(long, default_value_t = 3)]
    primes: usize,
    /// evaluation points per prime for modular mode
    #[arg(long, default_value_t = 2)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutFormat::Pretty)]
    format: OutFormat,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// memory budget in bytes for dense operator work
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_MEMORY_BUDGET)]
    memory_budget: u128,
    /// leave the ms column at zero so reports are byte-identical across runs
    #[arg(long)]
    no_timing: bool,
}

fn parse_tau(s: &str) -> Result<Tau, String> {
    s.parse().map_err(|e: qdiff_core::Error| e.to_string())
}

impl Opts {
    fn config(&self) -> Config {
        let mode = match self.mode {
            Mode::Exact => RankMode::Exact,
            Mode::Modular => RankMode::Modular { primes: self.primes, trials: self.trials, seed: self.seed },
        };
        Config {
            n: self.n,
            tau: self.tau,
            kmax: self.kmax,
            mode,
            seed: self.seed,
            memory_budget: self.memory_budget,
            timing: !self.no_timing,
        }
    }

    fn format(&self) -> Format {
        match self.format {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
            OutFormat::Pretty => Format::Pretty,
        }
    }
}

fn run(cmd: &Cmd, cfg: &Config) -> qdiff_core::Result<Report> {
    let mut report = Report::default();
    match cmd {
        Cmd::Poincare(_) => report.extend(poincare_left(cfg)?),
        Cmd::Biinv(_) => {
            report.extend(poincare_biinv(cfg)?);
            report.extend(eigenvalue_checks(cfg)?);
            report.extend(anticommutativity_checks(cfg)?);
        }
        Cmd::Spectrum { k, .. } => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (2..=cfg.kmax.min(3)).collect(),
            };
            for k in ks {
                report.extend(spectrum_report(cfg, k)?);
            }
        }
        Cmd::Dual(_) => report.extend(duality(cfg)?),
        Cmd::HeckeSelftest(_) => {
            report.extend(hecke_selftest(cfg)?);
            report.extend(trace_identities(cfg, 10)?);
        }
        Cmd::All(_) => report = full_suite(cfg)?,
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = match &cli.cmd {
        Cmd::Poincare(o) | Cmd::Biinv(o) | Cmd::Dual(o) | Cmd::HeckeSelftest(o) | Cmd::All(o) => o,
        Cmd::Spectrum { opts, .. } => opts,
    };
    let cfg = opts.config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let report = match run(&cli.cmd, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match report.render(opts.format()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
