use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use monocone::cone::{THEOREM1_TOL, THEOREM2_TOL};
use monocone::states::generalized_ghz_sq;
use monocone::{Family, PureState3Q};

use monocone_cli::campaign::{self, Campaign};
use monocone_cli::error::exit;
use monocone_cli::record::{self, NodeChoice};
use monocone_cli::report;
use monocone_cli::svg::{self, PlotKind, PlotPoint};
use monocone_cli::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "monocone", version, about = "Monogamy scores and light-cone checks for three-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample random states and write one CSV row per state.
    Sample(SampleArgs),
    /// Scan the generalized GHZ family against closed forms.
    ScanGg(ScanArgs),
    /// Report every measure of a single state as JSON.
    Eval(EvalArgs),
    /// Run the invariant suite over random states.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Measure {
    Tangle,
    Discord,
}

impl Measure {
    fn as_str(self) -> &'static str {
        match self {
            Measure::Tangle => "tangle",
            Measure::Discord => "discord",
        }
    }
}

#[derive(Debug, Args)]
struct CampaignArgs {
    /// Comma-separated families: haar, ghz_class, w_class, gen_ghz.
    #[arg(long, value_delimiter = ',', default_value = "haar")]
    family: Vec<Family>,
    /// Total number of states; families take turns.
    #[arg(long, default_value_t = 1000)]
    n: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Default: available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = THEOREM1_TOL)]
    tol_tangle: f64,
    #[arg(long, default_value_t = THEOREM2_TOL)]
    tol_discord: f64,
    /// Node for plotted and informational discord scores: A, B, C or max-schmidt.
    #[arg(long, default_value = "max-schmidt")]
    node: NodeChoice,
}

impl CampaignArgs {
    fn campaign(&self) -> Campaign {
        Campaign {
            n: self.n,
            seed: self.seed,
            families: self.family.clone(),
            workers: self
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            tol_tangle: self.tol_tangle,
            tol_discord: self.tol_discord,
        }
    }
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    campaign: CampaignArgs,
    /// Score on the horizontal axis of the plot.
    #[arg(long, value_enum, default_value = "tangle")]
    measure: Measure,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Number of evenly spaced alpha^2 values in [1/2, 1].
    #[arg(long, default_value_t = 101)]
    alpha_grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NamedState {
    Ghz,
    W,
    Product,
    GenGhz,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Eight comma-separated amplitudes of |000>..|111>, e.g. `0.7071,0,0,0,0,0,0,0.7071i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["state", "family"])]
    amplitudes: Option<Vec<String>>,
    #[arg(long, value_enum, conflicts_with = "family")]
    state: Option<NamedState>,
    /// alpha^2 for `--state gen-ghz`.
    #[arg(long)]
    alpha_sq: Option<f64>,
    /// Replays state `--stream` of a sampling campaign.
    #[arg(long, requires = "stream")]
    family: Option<Family>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    stream: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    campaign: CampaignArgs,
    /// JSON report destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|source| CliError::Write {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    let mut out = open_output(path)?;
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Write {
            path: path.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
            source,
        })
}

fn sample(args: SampleArgs) -> Result<i32> {
    let c = args.campaign.campaign();
    let outcome = campaign::run_sample(&c)?;
    record::write_records(open_output(args.out.as_deref())?, &c.header(args.measure.as_str()), &outcome.records)?;
    if let Some(path) = &args.svg {
        let kind = match args.measure {
            Measure::Tangle => PlotKind::Tangle,
            Measure::Discord => PlotKind::Discord,
        };
        let points: Vec<PlotPoint> = outcome
            .records
            .iter()
            .map(|r| PlotPoint {
                score: match kind {
                    PlotKind::Tangle => r.delta_c,
                    PlotKind::Discord => r.delta_d(args.campaign.node.resolve(r.max_schmidt_party)),
                },
                ggm: r.ggm,
                family: r.family,
            })
            .collect();
        write_text(Some(path), &svg::render(kind, &points))?;
    }
    for f in &outcome.failures {
        eprintln!("optimizer failure: {}", serde_json::to_string(f)?);
    }
    eprintln!(
        "{} records, {} cone violations, {} failed states",
        outcome.records.len(),
        outcome.violations.len(),
        outcome.failures.len()
    );
    Ok(if !outcome.violations.is_empty() {
        eprintln!("violating state ids: {:?}", outcome.violations);
        exit::VIOLATION
    } else if !outcome.failures.is_empty() {
        exit::NUMERICAL
    } else {
        exit::SUCCESS
    })
}

fn scan(args: ScanArgs) -> Result<i32> {
    let rows = campaign::run_scan_gg(args.alpha_grid)?;
    campaign::write_scan(open_output(args.out.as_deref())?, &rows)?;
    let worst = rows.iter().map(|r| r.max_residual()).fold(0.0, f64::max);
    eprintln!("{} rows, max residual {worst:.3e}", rows.len());
    Ok(exit::SUCCESS)
}

fn eval_state(args: &EvalArgs) -> Result<PureState3Q> {
    if let Some(raw) = &args.amplitudes {
        if raw.len() != 8 {
            return Err(CliError::Usage(format!("--amplitudes needs 8 values, got {}", raw.len())));
        }
        let mut amps = [num_complex::Complex64::new(0.0, 0.0); 8];
        for (a, s) in amps.iter_mut().zip(raw) {
            *a = report::parse_complex(s)?;
        }
        return report::state_from_amplitudes(amps);
    }
    if let Some(named) = args.state {
        if args.alpha_sq.is_some() && !matches!(named, NamedState::GenGhz) {
            return Err(CliError::Usage("--alpha-sq only applies to --state gen-ghz".into()));
        }
        return Ok(match named {
            NamedState::Ghz => PureState3Q::ghz(),
            NamedState::W => PureState3Q::w(),
            NamedState::Product => PureState3Q::basis(0),
            NamedState::GenGhz => {
                let a2 = args
                    .alpha_sq
                    .ok_or_else(|| CliError::Usage("--state gen-ghz needs --alpha-sq".into()))?;
                generalized_ghz_sq(a2).map_err(|e| CliError::Usage(e.to_string()))?
            }
        });
    }
    if let (Some(family), Some(stream)) = (args.family, args.stream) {
        if family == Family::Explicit {
            return Err(CliError::Usage("`explicit` is not a sampling family".into()));
        }
        return Ok(campaign::regenerate(family, args.seed, stream)?);
    }
    Err(CliError::Usage(
        "eval needs --amplitudes, --state or --family with --stream".into(),
    ))
}

fn eval(args: EvalArgs) -> Result<i32> {
    let state = eval_state(&args)?;
    let report = report::evaluate(&state)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    write_text(args.out.as_deref(), &text)?;
    Ok(exit::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let report = campaign::run_verify(&args.campaign.campaign(), args.campaign.node)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    write_text(args.out.as_deref(), &text)?;
    for c in &report.checks {
        let status = match (c.passed(), c.informational) {
            (true, _) => "ok",
            (false, true) => "note",
            (false, false) => "VIOLATED",
        };
        eprintln!(
            "{status:>8}  {}: {} violations, max excess {:.3e} (tolerance {:.0e})",
            c.name, c.violations, c.max_excess, c.tolerance
        );
    }
    for f in &report.failures {
        eprintln!("optimizer failure: {}", serde_json::to_string(f)?);
    }
    Ok(if report.violated() {
        exit::VIOLATION
    } else if !report.failures.is_empty() {
        exit::NUMERICAL
    } else {
        exit::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(exit::USAGE as u8),
            };
        }
    };
    let result = match cli.command {
        Command::Sample(a) => sample(a),
        Command::ScanGg(a) => scan(a),
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
