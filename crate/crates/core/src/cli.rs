//! The `monty` command line.
//!
//! Machine output (`--json`, CSV) uses 0-indexed doors; human-readable
//! output names doors from 1. Exit codes: 0 success, 2 usage or validation
//! error, 1 internal error. Errors go to stderr as a one-line JSON object.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use crate::bayes::{analyze, AnalysisReport};
use crate::error::Error;
use crate::game::{n_door_game, standard_game, GameSpec};
use crate::matrix_game::{
    build_matrix, named_minimax_strategies, solve_lp, GameSolution, MontyGame, SolveReport,
};
use crate::montecarlo::{
    simulate, simulate_strategy_pair, sweep_bias, write_sweep_csv, SimConfig, SimResult,
};
use crate::rational::Rational;

#[derive(Debug, Parser)]
#[command(name = "monty", version, about = "Exact and simulated analysis of Monty Hall games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unconditional and conditional switch-win probabilities.
    Analyze(AnalyzeArgs),
    /// Solve the three-door game as a zero-sum matrix game.
    Solve(SolveArgs),
    /// Monte Carlo estimate of the win rate.
    Simulate(SimulateArgs),
    /// Exact vs simulated conditional win rate over a grid of host biases.
    Sweep(SweepArgs),
    /// Print the payoff matrix of the three-door game.
    Matrix(SolveArgs),
    /// Validate a game spec and optionally print its canonical form.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["spec", "standard_q", "n_doors"])))]
pub struct SpecSource {
    /// Game-spec JSON file.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Three-door game with host bias q, pick fixed at the first door.
    #[arg(long, value_name = "RAT")]
    pub standard_q: Option<Rational>,
    /// Symmetric n-door game.
    #[arg(long, value_name = "INT")]
    pub n_doors: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: SpecSource,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 3)]
    pub n_doors: usize,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, env = "MONTY_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker streams; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub streams: usize,
}

impl SimArgs {
    fn config(&self) -> SimConfig {
        SimConfig::new(self.seed, self.trials).with_streams(self.streams)
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("sim_source").required(true).args(["spec", "standard_q", "n_doors", "minimax"])))]
pub struct SimulateArgs {
    /// Game-spec JSON file.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Three-door game with host bias q, pick fixed at the first door.
    #[arg(long, value_name = "RAT")]
    pub standard_q: Option<Rational>,
    /// Symmetric n-door game.
    #[arg(long, value_name = "INT")]
    pub n_doors: Option<usize>,
    /// Play the minimax strategies against each other.
    #[arg(long)]
    pub minimax: bool,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated host biases, e.g. "0,1/2,1".
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub q_grid: String,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub source: SpecSource,
    /// Print the canonical spec document.
    #[arg(long)]
    pub emit: bool,
}

/// A failed invocation: process exit code plus what to print on stderr.
#[derive(Debug)]
pub struct Failure {
    pub exit_code: i32,
    pub code: String,
    pub message: String,
}

impl Failure {
    fn internal(message: impl Into<String>) -> Self {
        Failure {
            exit_code: 1,
            code: "internal".into(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.code, "message": self.message }).to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            exit_code: 2,
            code: e.code().into(),
            message: e.to_string(),
        }
    }
}

fn load(source: &SpecSource) -> Result<GameSpec, Failure> {
    if let Some(path) = &source.spec {
        let text = fs::read_to_string(path).map_err(|e| Failure {
            exit_code: 2,
            code: "unreadable-file".into(),
            message: format!("{}: {e}", path.display()),
        })?;
        return Ok(GameSpec::from_json(&text)?);
    }
    if let Some(q) = &source.standard_q {
        return Ok(standard_game(q)?);
    }
    let n = source.n_doors.expect("clap enforces one source");
    Ok(n_door_game(n)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn door(d: usize) -> String {
    format!("Door {}", d + 1)
}

fn format_analysis(spec: &GameSpec, report: &AnalysisReport) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut s = format!(
        "{} doors\nP(switch wins) = {}\n",
        spec.n_doors, report.unconditional
    );
    for c in &report.conditionals {
        let event = if spec.n_doors == 3 {
            format!("host opens {}", door(c.opened))
        } else {
            format!("host leaves {} closed", door(c.opened))
        };
        s += &format!(
            "  pick {}, {}: P = {}, P(switch wins | this) = {}\n",
            door(c.pick),
            event,
            c.p_condition,
            c.p_switch_wins_given
        );
    }
    s += &format!(
        "all conditionals equal the unconditional: {}\nevery conditional >= 1/2: {}\n",
        yes_no(report.symmetric_collapse),
        yes_no(report.floor_holds)
    );
    s
}

fn format_solution(game: &MontyGame, sol: &GameSolution, report: &SolveReport) -> String {
    let mut s = format!("value = {}\nplayer:\n", report.value());
    for (p, w) in game.row_support(sol) {
        s += &format!("  {w:>5}  {p}\n");
    }
    s += "host:\n";
    for (h, w) in game.col_support(sol) {
        s += &format!("  {w:>5}  {h}\n");
    }
    s += &format!(
        "saddle point verified: {}\n",
        if report.saddle_verified() { "yes" } else { "no" }
    );
    s
}

fn format_sim(res: &SimResult) -> String {
    let mut s = format!(
        "{} wins in {} trials: rate {:.6} (3-sigma band {:.6} .. {:.6})\n",
        res.wins, res.trials, res.rate, res.ci_low, res.ci_high
    );
    for (&(pick, opened), t) in &res.per_condition {
        s += &format!(
            "  pick {}, host move {}: {}/{} = {:.6}\n",
            door(pick),
            door(opened),
            t.wins,
            t.trials,
            t.rate().unwrap_or(f64::NAN)
        );
    }
    s
}

#[derive(Serialize)]
struct MatrixDoc<'a> {
    rows: Vec<RowLabel>,
    cols: Vec<ColLabel>,
    payoff: &'a [Vec<Rational>],
}

#[derive(Serialize)]
struct RowLabel {
    pick: usize,
    rule: String,
}

#[derive(Serialize)]
struct ColLabel {
    car: usize,
    free: usize,
}

fn format_matrix(game: &MontyGame) -> String {
    let mut s = String::from("rows: player (pick, rule); columns: host (car, free choice)\n");
    s += &format!("{:<40}", "");
    for h in &game.cols {
        s += &format!(" C{}F{}", h.car + 1, h.free_choice + 1);
    }
    s.push('\n');
    for (p, row) in game.rows.iter().zip(&game.payoff) {
        s += &format!("{:<40}", p.to_string());
        for a in row {
            s += &format!(" {:>4}", if a.is_one() { "1" } else { "0" });
        }
        s.push('\n');
    }
    s
}

fn parse_grid(list: &str) -> Result<Vec<Rational>, Failure> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|t| t.parse::<Rational>().map_err(Failure::from))
        .collect()
}

/// Runs one parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let text = match cli.command {
        Command::Analyze(args) => {
            let spec = load(&args.source)?;
            let report = analyze(&spec)?;
            if args.json {
                json(&report)
            } else {
                format_analysis(&spec, &report)
            }
        }
        Command::Solve(args) => {
            let game = build_matrix(args.n_doors)?;
            let sol = solve_lp(&game)?;
            let report = SolveReport::new(&game, &sol)?;
            if args.json {
                json(&report)
            } else {
                format_solution(&game, &sol, &report)
            }
        }
        Command::Simulate(args) => {
            let cfg = args.sim.config();
            let res = if args.minimax {
                let named = named_minimax_strategies();
                simulate_strategy_pair(&named.player, &named.host, &cfg)?
            } else {
                let source = SpecSource {
                    spec: args.spec,
                    standard_q: args.standard_q,
                    n_doors: args.n_doors,
                };
                simulate(&load(&source)?, &cfg)?
            };
            if args.json {
                json(&res)
            } else {
                format_sim(&res)
            }
        }
        Command::Sweep(args) => {
            let grid = parse_grid(&args.q_grid)?;
            let rows = sweep_bias(&grid, &args.sim.config())?;
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            if let Some(path) = args.out {
                fs::write(&path, &buf)
                    .map_err(|e| Failure::internal(format!("{}: {e}", path.display())))?;
                String::new()
            } else {
                String::from_utf8(buf).map_err(|e| Failure::internal(e.to_string()))?
            }
        }
        Command::Matrix(args) => {
            let game = build_matrix(args.n_doors)?;
            if args.json {
                json(&MatrixDoc {
                    rows: game
                        .rows
                        .iter()
                        .map(|p| RowLabel {
                            pick: p.pick,
                            rule: p.rule(),
                        })
                        .collect(),
                    cols: game
                        .cols
                        .iter()
                        .map(|h| ColLabel {
                            car: h.car,
                            free: h.free_choice,
                        })
                        .collect(),
                    payoff: &game.payoff,
                })
            } else {
                format_matrix(&game)
            }
        }
        Command::Validate(args) => {
            let spec = load(&args.source)?;
            if args.emit {
                spec.to_json()
            } else {
                "valid\n".to_string()
            }
        }
    };
    match out.write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::internal(e.to_string()))
        }
        _ => Ok(()),
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.to_json());
            f.exit_code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["monty"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("").unwrap(), Vec::<Rational>::new());
        assert_eq!(parse_grid("0, 1/2 ,1").unwrap().len(), 3);
        assert_eq!(parse_grid("1/0").unwrap_err().exit_code, 2);
    }

    #[test]
    fn source_flags_are_exclusive() {
        let (code, _, err) = call(&["analyze", "--standard-q", "1/2", "--n-doors", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("cannot be used with"));
        let (code, _, _) = call(&["analyze"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["analyze", "--n-doors", "3", "--bogus"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn human_output_names_doors_from_one() {
        let (code, out, err) = call(&["analyze", "--standard-q", "1/2"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("pick Door 1, host opens Door 3"));
        assert!(err.is_empty());
    }

    #[test]
    fn validation_errors_exit_two_with_code() {
        let (code, out, err) = call(&["analyze", "--standard-q", "2"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "invalid-bias");
    }
}
