//! Command-line front end: configuration ingestion, report rendering and
//! exit-code contract (0 verified, 1 verification failed, 2 configuration
//! error).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contest::{ContestGame, EffortProfile, ValueProfile};
use crate::csf::{CsfKind, CsfSpec};
use crate::equilibrium::{
    best_response_dynamics, cluster_certificates, grid_scan, verify_equilibrium,
    EquilibriumCertificate, SearchConfig,
};
use crate::error::ContestError;
use crate::theory::{
    aggregate_ratio, extractiveness_report, lemma2_analysis, power_equilibrium,
    power_partial_equilibrium, ActiveSet, ExtractivenessReport,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("config file {path}: {source}")]
    ConfigFile {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Contest(#[from] ContestError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

fn field_err<T>(field: &'static str, message: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Field {
        field,
        message: message.into(),
    })
}

#[derive(Debug, Parser)]
#[command(name = "contest-lab", version, about = "Contest success functions and equilibrium checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Winning probabilities, payoffs and aggregate effort of one profile.
    Eval(Options),
    /// Epsilon-Nash certificate of a profile; exit 0 iff verified.
    Verify(Options),
    /// Exhaustive grid search for epsilon-Nash equilibria.
    Scan(Options),
    /// Extractiveness report, or with `--format csv` an aggregate-ratio sweep.
    Report(Options),
    /// Round-robin best-response dynamics.
    Dynamics(Options),
    /// Closed-form maximizer against equal rivals, checked on a dense grid.
    Lemma2(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// JSON experiment file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// threshold-triple, common-indicator, max-indicator, power:a=<int> or lottery.
    #[arg(long)]
    pub csf: Option<String>,
    /// Comma-separated prize values.
    #[arg(long)]
    pub values: Option<String>,
    /// Comma-separated efforts.
    #[arg(long)]
    pub profile: Option<String>,
    /// Comma-separated active contestants; builds the closed-form power
    /// equilibrium when no profile is given.
    #[arg(long)]
    pub active: Option<String>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Best-response grid points on [0, v_i].
    #[arg(long)]
    pub grid: Option<usize>,
    /// Golden-section refinement steps.
    #[arg(long)]
    pub refine: Option<usize>,
    /// Clustering radius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Per-axis points of grid scans.
    #[arg(long)]
    pub per_axis: Option<usize>,
    /// Rounds of best-response dynamics.
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Inclusive exponent range for the aggregate-ratio sweep, e.g. 3..12.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Prize value for lemma2.
    #[arg(long)]
    pub value: Option<f64>,
    /// Power exponent parameter for lemma2.
    #[arg(long)]
    pub a: Option<u32>,
    /// Number of equal contestants for lemma2.
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Experiment description as read from a JSON file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub csf: Option<String>,
    pub values: Option<Vec<f64>>,
    pub profile: Option<Vec<f64>>,
    pub active: Option<Vec<usize>>,
    pub epsilon: Option<f64>,
    pub grid: Option<usize>,
    pub refine: Option<usize>,
    pub radius: Option<f64>,
    pub per_axis: Option<usize>,
    pub rounds: Option<usize>,
    pub seed: Option<u64>,
    pub sweep: Option<String>,
    pub value: Option<f64>,
    pub a: Option<u32>,
    pub b: Option<u32>,
    pub format: Option<Format>,
}

fn parse_list<T: std::str::FromStr>(field: &'static str, s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<T>()
                .map_err(|_| CliError::Field {
                    field,
                    message: format!("cannot parse `{tok}`"),
                })
        })
        .collect()
}

impl ExperimentConfig {
    pub fn from_json(text: &str, path: PathBuf) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|source| CliError::ConfigFile { path, source })
    }

    /// File fields (if any) overridden by flags.
    pub fn resolve(opts: &Options) -> Result<Self, CliError> {
        let mut cfg = match &opts.config {
            Some(path) => Self::from_json(&std::fs::read_to_string(path)?, path.clone())?,
            None => Self::default(),
        };
        if let Some(s) = &opts.csf {
            cfg.csf = Some(s.clone());
        }
        if let Some(s) = &opts.values {
            cfg.values = Some(parse_list("values", s)?);
        }
        if let Some(s) = &opts.profile {
            cfg.profile = Some(parse_list("profile", s)?);
        }
        if let Some(s) = &opts.active {
            cfg.active = Some(parse_list("active", s)?);
        }
        macro_rules! overlay {
            ($($f:ident),*) => { $( if opts.$f.is_some() { cfg.$f = opts.$f.clone(); } )* };
        }
        overlay!(epsilon, grid, refine, radius, per_axis, rounds, seed, sweep, value, a, b, format);
        Ok(cfg)
    }

    pub fn search(&self) -> Result<SearchConfig<f64>, CliError> {
        let mut s = SearchConfig::default();
        if let Some(e) = self.epsilon {
            s.epsilon = e;
        }
        if let Some(g) = self.grid {
            s.grid_points = g;
        }
        if let Some(r) = self.refine {
            s.refine_iters = r;
        }
        if let Some(r) = self.radius {
            s.neighborhood_radius = r;
        }
        s.validate()?;
        Ok(s)
    }

    pub fn game(&self) -> Result<ContestGame<f64>, CliError> {
        let Some(values) = &self.values else {
            return field_err("values", "missing");
        };
        let values = ValueProfile::new(values.clone()).or_else(|e| field_err("values", e.to_string()))?;
        let Some(name) = &self.csf else {
            return field_err("csf", "missing");
        };
        let csf = CsfSpec::parse(name, &values).or_else(|e| field_err("csf", e.to_string()))?;
        Ok(ContestGame::new(values, csf)?)
    }

    /// The explicit profile, or the closed-form power profile on `active`.
    pub fn profile(&self, game: &ContestGame<f64>) -> Result<EffortProfile<f64>, CliError> {
        if let Some(x) = &self.profile {
            let p = EffortProfile::new(x.clone()).or_else(|e| field_err("profile", e.to_string()))?;
            if p.len() != game.n() {
                return field_err(
                    "profile",
                    format!("has {} entries, values have {}", p.len(), game.n()),
                );
            }
            return Ok(p);
        }
        let Some(active) = &self.active else {
            return field_err("profile", "missing (give --profile or --active)");
        };
        let CsfKind::Power { a } = game.csf().kind else {
            return field_err("active", "only supported with a power CSF");
        };
        let set = ActiveSet::new(active.iter().copied(), game.n())
            .or_else(|e| field_err("active", e.to_string()))?;
        let built = if set.size() == a as usize {
            power_equilibrium(game.values(), a, &set)
        } else {
            power_partial_equilibrium(game.values(), a, &set)
        };
        built.or_else(|e| field_err("active", e.to_string()))
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Rounds to 12 significant digits and prints the shortest decimal that
/// round-trips to the rounded value.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let s = format!("{rounded}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(", ")
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn certificate_table(c: &EquilibriumCertificate<f64>) -> String {
    let rows: Vec<Vec<String>> = (0..c.profile.len())
        .map(|i| {
            vec![
                i.to_string(),
                fmt_num(c.profile.get(i)),
                fmt_num(c.probabilities[i]),
                fmt_num(c.payoffs[i]),
                fmt_num(c.best_responses[i].effort),
                fmt_num(c.per_player_regret[i]),
            ]
        })
        .collect();
    let mut s = table(&["player", "effort", "p", "payoff", "best_response", "regret"], &rows);
    let _ = writeln!(s, "aggregate         {}", fmt_num(c.aggregate));
    let _ = writeln!(s, "extraction_ratio  {}", fmt_num(c.extraction_ratio));
    let _ = writeln!(s, "max_regret        {}", fmt_num(c.max_regret));
    let _ = writeln!(s, "epsilon_ne        {}", yes_no(c.is_epsilon_ne));
    s
}

#[derive(Debug, Serialize)]
struct EvalOutput<'a> {
    csf: String,
    values: &'a [f64],
    profile: &'a [f64],
    probabilities: &'a [f64],
    payoffs: &'a [f64],
    aggregate: f64,
}

fn render_report(r: &ExtractivenessReport<f64>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "csf        {}", r.csf);
    let _ = writeln!(s, "values     {}", fmt_list(r.values.as_slice()));
    let _ = writeln!(s, "max value  {}", fmt_num(r.max_value));
    let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
    let _ = writeln!(s, "verdict    {}", verdict.as_str().unwrap_or_default());
    s.push('\n');
    let rows: Vec<Vec<String>> = r
        .candidates
        .iter()
        .map(|c| {
            vec![
                c.label.clone(),
                format!("({})", fmt_list(c.certificate.profile.as_slice())),
                fmt_num(c.certificate.aggregate),
                fmt_num(c.certificate.extraction_ratio),
                fmt_num(c.certificate.max_regret),
                yes_no(c.certificate.is_epsilon_ne),
            ]
        })
        .collect();
    s.push_str(&table(
        &["candidate", "profile", "aggregate", "ratio", "max_regret", "eps-NE"],
        &rows,
    ));
    if let Some(scan) = &r.scan {
        let _ = writeln!(
            s,
            "\nscan: {} per axis, {} confirmed, {} clusters",
            scan.per_axis_points,
            scan.confirmed,
            scan.clusters.len()
        );
        for cl in &scan.clusters {
            let _ = writeln!(
                s,
                "  ({}) ratio {} members {}",
                fmt_list(cl.representative.profile.as_slice()),
                fmt_num(cl.representative.extraction_ratio),
                cl.members
            );
        }
    }
    s.push('\n');
    if r.strictness_counter_witnesses.is_empty() {
        s.push_str("strict: no counter-witness\n");
    } else {
        s.push_str("strictness counter-witnesses:\n");
        for w in &r.strictness_counter_witnesses {
            let _ = writeln!(
                s,
                "  ({}) ratio {}",
                fmt_list(w.profile.as_slice()),
                fmt_num(w.extraction_ratio)
            );
        }
    }
    s
}

fn parse_sweep(s: &str) -> Result<(u32, u32), CliError> {
    let parsed = s
        .split_once("..")
        .and_then(|(lo, hi)| Some((lo.trim().parse::<u32>().ok()?, hi.trim().parse::<u32>().ok()?)));
    match parsed {
        Some((lo, hi)) if lo >= 3 && hi >= lo => Ok((lo, hi)),
        _ => field_err("sweep", format!("expected LO..HI with 3 <= LO <= HI, got `{s}`")),
    }
}

fn pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Rendered output plus exit code.
pub struct Outcome {
    pub text: String,
    pub exit: u8,
    /// Extra diagnostics for stderr.
    pub note: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            exit: EXIT_OK,
            note: None,
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Eval(o) => eval(&ExperimentConfig::resolve(o)?),
        Command::Verify(o) => verify(&ExperimentConfig::resolve(o)?),
        Command::Scan(o) => scan(&ExperimentConfig::resolve(o)?),
        Command::Report(o) => report(&ExperimentConfig::resolve(o)?),
        Command::Dynamics(o) => dynamics(&ExperimentConfig::resolve(o)?),
        Command::Lemma2(o) => lemma2(&ExperimentConfig::resolve(o)?),
    }
}

pub fn eval(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let profile = cfg.profile(&game)?;
    let p = game.probabilities(&profile)?;
    let u = game.payoff(&profile)?;
    let text = match cfg.format(Format::Json) {
        Format::Table => {
            let rows: Vec<Vec<String>> = (0..game.n())
                .map(|i| {
                    vec![
                        i.to_string(),
                        fmt_num(game.values().get(i)),
                        fmt_num(profile.get(i)),
                        fmt_num(p.get(i)),
                        fmt_num(u[i]),
                    ]
                })
                .collect();
            let mut s = table(&["player", "value", "effort", "p", "payoff"], &rows);
            let _ = writeln!(s, "aggregate  {}", fmt_num(profile.aggregate()));
            s
        }
        Format::Csv => {
            let mut s = String::from("player,value,effort,p,payoff\n");
            for (i, ui) in u.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{i},{},{},{},{}",
                    fmt_num(game.values().get(i)),
                    fmt_num(profile.get(i)),
                    fmt_num(p.get(i)),
                    fmt_num(*ui)
                );
            }
            s
        }
        Format::Json => pretty(&EvalOutput {
            csf: game.csf().to_string(),
            values: game.values().as_slice(),
            profile: profile.as_slice(),
            probabilities: p.as_slice(),
            payoffs: &u,
            aggregate: profile.aggregate(),
        })?,
    };
    Ok(Outcome::ok(text))
}

pub fn verify(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let profile = cfg.profile(&game)?;
    let cert = verify_equilibrium(&game, &profile, &cfg.search()?)?;
    let text = match cfg.format(Format::Json) {
        Format::Table => certificate_table(&cert),
        _ => pretty(&cert)?,
    };
    Ok(Outcome {
        text,
        exit: if cert.is_epsilon_ne { EXIT_OK } else { EXIT_FAILED },
        note: None,
    })
}

pub fn scan(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let search = cfg.search()?;
    let found = grid_scan(&game, &search, cfg.per_axis.unwrap_or(101))?;
    let text = match cfg.format(Format::Json) {
        Format::Json => {
            let mut s = String::new();
            for c in &found {
                s.push_str(&serde_json::to_string(c)?);
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let n = game.n();
            let mut s = (0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
            s.push_str(",aggregate,extraction_ratio,max_regret\n");
            for c in &found {
                let xs: Vec<String> = c.profile.as_slice().iter().map(|&x| fmt_num(x)).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    xs.join(","),
                    fmt_num(c.aggregate),
                    fmt_num(c.extraction_ratio),
                    fmt_num(c.max_regret)
                );
            }
            s
        }
        Format::Table => {
            let clusters = cluster_certificates(&found, search.neighborhood_radius);
            let rows: Vec<Vec<String>> = clusters
                .iter()
                .map(|cl| {
                    vec![
                        format!("({})", fmt_list(cl.representative.profile.as_slice())),
                        fmt_num(cl.representative.extraction_ratio),
                        fmt_num(cl.representative.max_regret),
                        cl.members.to_string(),
                    ]
                })
                .collect();
            table(&["cluster", "ratio", "max_regret", "members"], &rows)
        }
    };
    Ok(Outcome::ok(text))
}

pub fn report(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let format = cfg.format(Format::Json);
    if format == Format::Csv {
        let (lo, hi) = parse_sweep(cfg.sweep.as_deref().unwrap_or("3..12"))?;
        let mut s = String::from("a,aggregate_ratio\n");
        for a in lo..=hi {
            let _ = writeln!(s, "{a},{}", fmt_num(aggregate_ratio::<f64>(a)?));
        }
        return Ok(Outcome::ok(s));
    }
    let game = cfg.game()?;
    let r = extractiveness_report(&game, &cfg.search()?, cfg.per_axis)?;
    let text = match format {
        Format::Table => render_report(&r),
        _ => pretty(&r)?,
    };
    Ok(Outcome::ok(text))
}

pub fn dynamics(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let game = cfg.game()?;
    let init = if cfg.profile.is_some() || cfg.active.is_some() {
        cfg.profile(&game)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
        let x = game
            .values()
            .as_slice()
            .iter()
            .map(|&v| rng.gen_range(0.0..=v))
            .collect();
        EffortProfile::new(x)?
    };
    let d = best_response_dynamics(&game, &init, cfg.rounds.unwrap_or(100), &cfg.search()?)?;
    let exit = if d.certificate.is_epsilon_ne {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let (text, note) = match cfg.format(Format::Csv) {
        Format::Json => (pretty(&d)?, None),
        Format::Table => {
            let rows: Vec<Vec<String>> = d
                .trajectory
                .iter()
                .map(|s| {
                    vec![
                        s.round.to_string(),
                        s.player.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
                        format!("({})", fmt_list(s.profile.as_slice())),
                        fmt_num(s.profile.aggregate()),
                    ]
                })
                .collect();
            let mut s = table(&["round", "player", "profile", "aggregate"], &rows);
            s.push('\n');
            s.push_str(&certificate_table(&d.certificate));
            (s, None)
        }
        Format::Csv => {
            let mut s = String::from("round,player,");
            s.push_str(&(0..game.n()).map(|i| format!("x{i}")).collect::<Vec<_>>().join(","));
            s.push_str(",aggregate\n");
            for step in &d.trajectory {
                let xs: Vec<String> = step.profile.as_slice().iter().map(|&x| fmt_num(x)).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    step.round,
                    step.player.map(|p| p.to_string()).unwrap_or_default(),
                    xs.join(","),
                    fmt_num(step.profile.aggregate())
                );
            }
            (s, Some(serde_json::to_string(&d.certificate)?))
        }
    };
    Ok(Outcome { text, exit, note })
}

pub fn lemma2(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let v = cfg.value.unwrap_or(1.0);
    let Some(a) = cfg.a else {
        return field_err("a", "missing");
    };
    let b = cfg.b.unwrap_or(a);
    let check = lemma2_analysis(v, a, b, cfg.grid.unwrap_or(100_000))
        .or_else(|e| field_err("b", e.to_string()))?;
    let text = match cfg.format(Format::Json) {
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "v, a, b             {}, {a}, {b}", fmt_num(v));
            let _ = writeln!(s, "maximizer           {}", fmt_num(check.maximizer));
            let _ = writeln!(s, "value at maximizer  {}", fmt_num(check.value_at_maximizer));
            let _ = writeln!(s, "grid max            {}", fmt_num(check.grid_max));
            let _ = writeln!(
                s,
                "sign change         {}",
                check.sign_change.map(fmt_num).unwrap_or_else(|| "-".into())
            );
            let _ = writeln!(s, "holds               {}", yes_no(check.holds()));
            s
        }
        _ => pretty(&check)?,
    };
    Ok(Outcome {
        text,
        exit: if check.holds() { EXIT_OK } else { EXIT_FAILED },
        note: None,
    })
}

/// Parses arguments, runs the command, writes output and returns the exit code.
pub fn main_with_args<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Eval(o)
        | Command::Verify(o)
        | Command::Scan(o)
        | Command::Report(o)
        | Command::Dynamics(o)
        | Command::Lemma2(o) => o.out.clone(),
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let written = match out_path {
        Some(path) => std::fs::write(&path, outcome.text.as_bytes()),
        None => stdout.write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_CONFIG;
    }
    if let Some(note) = outcome.note {
        let _ = writeln!(stderr, "{note}");
    }
    outcome.exit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.75), "0.75");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_num(1e-20), "0.00000000000000000001");
    }

    #[test]
    fn sweep_parsing() {
        assert_eq!(parse_sweep("3..12").unwrap(), (3, 12));
        assert!(parse_sweep("2..12").is_err());
        assert!(parse_sweep("5..4").is_err());
        assert!(parse_sweep("x").is_err());
    }

    #[test]
    fn config_file_errors_name_the_field() {
        let err = ExperimentConfig::from_json("{\"csf\": \"lottery\",\n \"valuez\": [1]}", "c.json".into())
            .unwrap_err()
            .to_string();
        assert!(err.contains("valuez") && err.contains("line 2"), "{err}");
        let cfg = ExperimentConfig {
            csf: Some("lottery".into()),
            values: Some(vec![1.0, -1.0]),
            ..Default::default()
        };
        assert!(cfg.game().unwrap_err().to_string().starts_with("field `values`"));
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("exp.json");
        std::fs::write(&path, r#"{"csf": "lottery", "values": [1, 1], "epsilon": 0.1}"#).unwrap();
        let opts = Options {
            config: Some(path),
            values: Some("2,2,2".into()),
            ..Default::default()
        };
        let cfg = ExperimentConfig::resolve(&opts).unwrap();
        assert_eq!(cfg.values, Some(vec![2.0, 2.0, 2.0]));
        assert_eq!(cfg.epsilon, Some(0.1));
        assert_eq!(cfg.csf.as_deref(), Some("lottery"));
    }

    #[test]
    fn active_builds_power_profiles() {
        let cfg = ExperimentConfig {
            csf: Some("power:a=3".into()),
            values: Some(vec![1.0; 3]),
            active: Some(vec![0, 2]),
            ..Default::default()
        };
        let game = cfg.game().unwrap();
        assert_eq!(cfg.profile(&game).unwrap().as_slice(), &[0.375, 0.0, 0.375]);
    }
}
