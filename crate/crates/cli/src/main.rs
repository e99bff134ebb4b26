use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use gabidulin_core::campaign::{run_campaign, CampaignConfig, SolverChoice};
use gabidulin_core::io::{parse_json, CodeConfig, MessageFile, TowerSpec, VectorFile};
use gabidulin_core::scaling::{annihilator_scaling, decode_scaling, ScalingTable, DOUBLING_LIMIT};
use gabidulin_core::{decode_detailed, rank_weights, GabidulinCode, Solver};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gabidulin", version, about = "Gabidulin codes over Q(ζ_p) with a key-equation decoder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message file into a codeword file.
    Encode(EncodeArgs),
    /// Decode a received-word file into a message file.
    Decode(DecodeArgs),
    /// Run a seeded decoding campaign and emit a JSON report.
    Simulate(SimulateArgs),
    /// Print an L-operation scaling table.
    Bench(BenchArgs),
    /// Report the four rank weights of a vector file.
    Weights(WeightsArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// JSON code description: {"field": {"p", "g"}, "n", "k", "points"?}.
    #[arg(long, conflicts_with_all = ["field", "code"])]
    config: Option<PathBuf>,
    /// Field as `p,g`.
    #[arg(long, value_parser = parse_pair::<u32>)]
    field: Option<(u32, u32)>,
    /// Code parameters as `n,k`.
    #[arg(long, value_parser = parse_pair::<usize>)]
    code: Option<(usize, usize)>,
}

impl CodeArgs {
    fn build(&self) -> anyhow::Result<GabidulinCode> {
        let cfg = match (&self.config, self.field, self.code) {
            (Some(path), _, _) => parse_json::<CodeConfig>(&read(path)?)?,
            (None, Some((p, g)), Some((n, k))) => CodeConfig { field: TowerSpec { p, g }, n, k, points: None },
            _ => bail!("either --config or both --field and --code are required"),
        };
        Ok(cfg.build()?)
    }
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Message file: {"k", "coeffs"}.
    #[arg(long)]
    message: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Received-word file: {"n", "symbols"}.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "popov")]
    solver: Solver,
    /// Print the per-stage decoding trace as JSON on standard error.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Campaign configuration file; overrides all other campaign flags.
    #[arg(long, conflicts_with_all = ["field", "code", "tau"])]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_pair::<u32>)]
    field: Option<(u32, u32)>,
    #[arg(long, value_parser = parse_pair::<usize>)]
    code: Option<(usize, usize)>,
    /// Error rank, either `t` or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    tau: Option<(usize, usize)>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "popov")]
    solver: SolverChoice,
    /// Random coordinates are drawn from [-box, box].
    #[arg(long = "box", default_value_t = gabidulin_core::code::DEFAULT_BOX)]
    coeff_box: i64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_pair::<u32>, default_value = "13,2")]
    field: (u32, u32),
    /// Code lengths n, or subspace dimensions with --annihilator.
    #[arg(long, value_delimiter = ',', default_values_t = [6, 12])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    seeds: usize,
    #[arg(long, default_value = "popov")]
    solver: SolverChoice,
    /// Measure the annihilator construction instead of decoding.
    #[arg(long)]
    annihilator: bool,
    /// Coordinate box for the annihilator subspaces.
    #[arg(long = "box", default_value_t = 1)]
    coeff_box: i64,
    /// Emit the table as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long, value_parser = parse_pair::<u32>)]
    field: (u32, u32),
    /// Vector file: {"n", "symbols"}.
    #[arg(long, short)]
    input: PathBuf,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated values, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("invalid number {x:?}"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("invalid rank {x:?}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => parse(s).map(|t| (t, t)),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

enum Outcome {
    Ok,
    DecodingFailure,
}

fn encode(args: &EncodeArgs) -> anyhow::Result<Outcome> {
    let code = args.code.build()?;
    let msg = parse_json::<MessageFile>(&read(&args.message)?)?.to_message(code.tower())?;
    let c = code.encode(&msg)?;
    emit(args.output.as_deref(), &to_json(&VectorFile::from_symbols(&c)))?;
    Ok(Outcome::Ok)
}

fn decode(args: &DecodeArgs) -> anyhow::Result<Outcome> {
    let code = args.code.build()?;
    let r = parse_json::<VectorFile>(&read(&args.input)?)?.to_received(code.tower())?;
    let details = decode_detailed(&code, &r, args.solver)?;
    if args.trace {
        eprint!("{}", to_json(&details.trace));
    }
    match details.result {
        Ok(msg) => {
            emit(args.output.as_deref(), &to_json(&MessageFile::from_message(&msg, code.k())))?;
            Ok(Outcome::Ok)
        }
        Err(failure) => {
            eprintln!("decoding failure: {failure}");
            Ok(Outcome::DecodingFailure)
        }
    }
}

fn simulate(args: &SimulateArgs) -> anyhow::Result<Outcome> {
    let config = match &args.config {
        Some(path) => parse_json::<CampaignConfig>(&read(path)?)?,
        None => {
            let ((p, g), (n, k), (tau_min, tau_max)) = match (args.field, args.code, args.tau) {
                (Some(f), Some(c), Some(t)) => (f, c, t),
                _ => bail!("either --config or all of --field, --code and --tau are required"),
            };
            CampaignConfig {
                p,
                g,
                n,
                k,
                tau_min,
                tau_max,
                trials: args.trials,
                seed: args.seed,
                solver: args.solver,
                coeff_box: args.coeff_box,
            }
        }
    };
    let report = run_campaign(&config)?;
    emit(args.output.as_deref(), &report.to_json())?;
    Ok(Outcome::Ok)
}

fn bench(args: &BenchArgs) -> anyhow::Result<Outcome> {
    let (p, g) = args.field;
    if args.sizes.is_empty() {
        bail!("--sizes must list at least one size");
    }
    let table: ScalingTable = if args.annihilator {
        annihilator_scaling(p, g, &args.sizes, args.seeds, args.coeff_box)?
    } else {
        decode_scaling(p, g, &args.sizes, args.seeds, args.solver)?
    };
    let violations = table.violations(DOUBLING_LIMIT);
    if args.json {
        print!("{}", to_json(&json!({ "table": table, "limit": DOUBLING_LIMIT, "violation": !violations.is_empty() })));
    } else {
        print!("{}", table.render());
    }
    for row in &violations {
        eprintln!(
            "violation: size {} grows by {:.3} per doubling (limit {DOUBLING_LIMIT})",
            row.size,
            row.doubling_ratio.unwrap_or_default()
        );
    }
    Ok(if violations.is_empty() { Outcome::Ok } else { Outcome::DecodingFailure })
}

fn weights(args: &WeightsArgs) -> anyhow::Result<Outcome> {
    let tower = TowerSpec { p: args.field.0, g: args.field.1 }.build()?;
    let v = parse_json::<VectorFile>(&read(&args.input)?)?.to_symbols(&tower)?;
    let w = rank_weights(&tower, &v);
    print!("{}", to_json(&json!({ "n": v.len(), "weights": w, "chain": w.satisfies_chain() })));
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::Simulate(a) => simulate(a),
        Command::Bench(a) => bench(a),
        Command::Weights(a) => weights(a),
    };
    match outcome {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::DecodingFailure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
