//! Command-line surface. [`dispatch`] is the whole program minus process
//! exit, so it can be driven from tests.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, RngCore};
use serde::Serialize;
use serde_json::json;

use crate::action::{build_action, ActionInstance, FamilySpec, FAMILY_GRAMMARS};
use crate::diameter::{DEFAULT_BUDGET, DEFAULT_PIVOTS};
use crate::error::{Error, Result};
use crate::experiment::{
    emit_plot, run_sweep, summarize, write_csv, write_json, DiameterMode, FamilyTemplate, KRule, ResultRow,
    SweepConfig,
};
use crate::lemma::{
    double_count_check, explicit_growth_check, fill_check, growth_trace, minimal_feasible_schedule,
    one_step_growth_check, proof_schedule, theorem_pipeline, GrowthMode, PipelineOptions, Preconditions,
    TraceOptions, DEFAULT_MAX_TABLE_ENTRIES,
};
use crate::par;
use crate::random::SeededRng;
use crate::schreier::PointSet;

/// Environment variable capping the worker count (0 = automatic).
pub const THREADS_ENV: &str = "SCHREIER_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "schreier-lab", version, about = "Diameters of random Schreier graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diameter of one random Schreier graph per trial.
    Diameter(DiameterArgs),
    /// Diameters over a (family, n) grid.
    Sweep(SweepArgs),
    /// Sphere sizes along a growth schedule.
    GrowthTrace(TraceArgs),
    /// Grow, fill and double: a diameter certificate built from fresh draws.
    Pipeline(PipelineArgs),
    /// Per-lemma verifiers.
    #[command(subcommand)]
    Lemma(LemmaCommand),
    /// Block schedule arithmetic (no group is built).
    Schedule(ScheduleArgs),
    /// List the families and their parameter grammars.
    Info,
}

#[derive(Subcommand, Debug)]
enum LemmaCommand {
    /// Exact double count over all of G.
    DoubleCount(DoubleCountArgs),
    /// Monte Carlo check of one-step growth.
    OneStep(OneStepArgs),
    /// Monte Carlo check of |X^A| ≥ √k|X|.
    ExplicitGrowth(ExplicitArgs),
    /// Monte Carlo check of covering by X^B.
    Fill(FillArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Bounds,
    Auto,
}

impl From<ModeArg> for DiameterMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => DiameterMode::Exact,
            ModeArg::Bounds => DiameterMode::Bounds,
            ModeArg::Auto => DiameterMode::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GrowthArg {
    Lemma6,
    Prop1,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DiameterOpts {
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    /// Work budget (table lookups) for exact all-pairs BFS.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = DEFAULT_PIVOTS)]
    pivots: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Fill the elapsed_ms column.
    #[arg(long)]
    timing: bool,
    /// Skip the covering radius column.
    #[arg(long)]
    no_covering: bool,
}

#[derive(Args, Debug)]
#[group(id = "krule", required = true, multiple = false)]
struct KArgs {
    /// Fixed number of generators.
    #[arg(long)]
    k: Option<usize>,
    /// k = ⌈(ln n)^(1+ε)⌉
    #[arg(long)]
    epsilon: Option<f64>,
    /// k = ⌈n^δ⌉
    #[arg(long)]
    delta: Option<f64>,
}

impl KArgs {
    fn rule(&self) -> KRule {
        match (self.k, self.epsilon, self.delta) {
            (Some(k), _, _) => KRule::Fixed(k),
            (_, Some(e), _) => KRule::Power(e),
            (_, _, Some(d)) => KRule::Fraction(d),
            _ => unreachable!("clap enforces one k rule"),
        }
    }
}

#[derive(Args, Debug)]
struct DiameterArgs {
    /// Full family spec, e.g. cyclic:m=10
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    #[command(flatten)]
    k: KArgs,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[command(flatten)]
    opts: DiameterOpts,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Family templates, e.g. 'sym;cyclic;abelian:m=2' (separate with ';'
    /// or repeat the flag).
    #[arg(long = "family", required = true, value_delimiter = ';')]
    families: Vec<FamilyTemplate>,
    /// Degrees, comma separated; accepts 2^k and 1e6 forms.
    #[arg(long = "n", value_delimiter = ',', value_parser = parse_size)]
    n: Vec<usize>,
    #[command(flatten)]
    k: KArgs,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[command(flatten)]
    opts: DiameterOpts,
    /// SVG plot of the ratio column (one file per family).
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Print per-cell summaries to stderr.
    #[arg(long)]
    summary: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    epsilon: f64,
    #[arg(long, value_enum, default_value = "lemma6")]
    mode: GrowthArg,
    /// Start point.
    #[arg(long, default_value_t = 0)]
    omega: u32,
    /// Schedule constant (default: smallest feasible).
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long)]
    allow_unmet_preconditions: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    omega: u32,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Refuse runs whose union graph needs more than this many table entries.
    #[arg(long, default_value_t = DEFAULT_MAX_TABLE_ENTRIES)]
    max_table_entries: u64,
    #[arg(long)]
    allow_unmet_preconditions: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SetArgs {
    /// Explicit points of X, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "x_size")]
    x: Vec<u32>,
    /// X = {0, ..., s−1}.
    #[arg(long)]
    x_size: Option<usize>,
}

impl SetArgs {
    fn build(&self, n: usize, default_size: usize) -> Result<PointSet> {
        if !self.x.is_empty() {
            return point_set(n, &self.x);
        }
        let s = self.x_size.unwrap_or(default_size);
        if s > n {
            return Err(Error::PreconditionUnmet(format!("|X| = {s} exceeds n = {n}")));
        }
        Ok(PointSet::from_points(n, 0..s as u32))
    }
}

fn point_set(n: usize, pts: &[u32]) -> Result<PointSet> {
    if let Some(&p) = pts.iter().find(|&&p| p as usize >= n) {
        return Err(Error::PointOutOfRange { point: p as u64, degree: n });
    }
    Ok(PointSet::from_points(n, pts.iter().copied()))
}

#[derive(Args, Debug)]
struct DoubleCountArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    /// X (otherwise random subsets are drawn per case).
    #[arg(long, value_delimiter = ',', requires = "y")]
    x: Vec<u32>,
    #[arg(long, value_delimiter = ',', requires = "x")]
    y: Vec<u32>,
    /// Number of random (X, Y) cases when X and Y are not given.
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct OneStepArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    #[command(flatten)]
    set: SetArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    s: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    allow_unmet_preconditions: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ExplicitArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    #[command(flatten)]
    set: SetArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    allow_unmet_preconditions: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FillArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilySpec,
    #[command(flatten)]
    set: SetArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ScheduleArgs {
    /// Degree; accepts 2^k and 1e6 forms. Use --log2-n for huge n.
    #[arg(long, value_parser = parse_size, required_unless_present = "log2_n", conflicts_with = "log2_n")]
    n: Option<usize>,
    /// log2 of the degree.
    #[arg(long)]
    log2_n: Option<f64>,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    epsilon: f64,
    /// Schedule constant (default: smallest feasible).
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A family spec whose parameters are also valid (e.g. p prime), so that
/// bad parameters are reported as usage errors.
fn parse_family(s: &str) -> std::result::Result<FamilySpec, String> {
    let spec: FamilySpec = s.parse().map_err(|e: Error| e.to_string())?;
    build_action(spec).map_err(|e| format!("{e}; run `schreier-lab info` for the grammars"))?;
    Ok(spec)
}

/// Parses `65536`, `2^16` or `1e6`.
fn parse_size(s: &str) -> std::result::Result<usize, String> {
    let s = s.trim();
    let bad = || format!("invalid size `{s}`: expected an integer, 2^k or 1eK");
    if let Some((b, e)) = s.split_once('^') {
        let (b, e): (usize, u32) = (b.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?);
        return b.checked_pow(e).ok_or_else(bad);
    }
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let (m, e): (usize, u32) = (m.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?);
        return 10usize.checked_pow(e).and_then(|p| p.checked_mul(m)).ok_or_else(bad);
    }
    s.parse().map_err(|_| bad())
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json_value<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut w = output(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn emit_rows(rows: &[ResultRow], format: Format, path: Option<&Path>) -> Result<()> {
    let mut w = output(path)?;
    match format {
        Format::Csv => write_csv(rows, &mut w)?,
        Format::Json => write_json(rows, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn sweep_config(families: Vec<FamilyTemplate>, n: Vec<usize>, k: &KArgs, trials: u64, opts: &DiameterOpts, seed: u64) -> SweepConfig {
    let mut c = SweepConfig::new(families, n, k.rule());
    c.trials = trials;
    c.seed = seed;
    c.mode = opts.mode.into();
    c.budget = opts.budget;
    c.pivots = opts.pivots;
    c.covering = !opts.no_covering;
    c.timing = opts.timing;
    c
}

fn cmd_diameter(a: DiameterArgs) -> Result<()> {
    let config = sweep_config(vec![FamilyTemplate::Fixed(a.family)], vec![], &a.k, a.trials, &a.opts, a.common.seed);
    let rows = run_sweep(&config)?;
    emit_rows(&rows, a.opts.format, a.common.out.as_deref())
}

fn plot_path(base: &Path, family: &str, many: bool) -> PathBuf {
    if !many {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("plot");
    let tag: String = family.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    base.with_file_name(format!("{stem}-{tag}.svg"))
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let config = sweep_config(a.families, a.n, &a.k, a.trials, &a.opts, a.common.seed);
    let rows = run_sweep(&config)?;
    emit_rows(&rows, a.opts.format, a.common.out.as_deref())?;
    if let Some(base) = &a.plot {
        let many = config.families.len() > 1;
        for family in &config.families {
            let label = family.to_string();
            let subset: Vec<ResultRow> = rows.iter().filter(|r| r.family == label).cloned().collect();
            emit_plot(&subset, &plot_path(base, &label, many))?;
        }
    }
    if a.summary {
        let mut err = io::stderr().lock();
        writeln!(err, "family\tn\tk\tconnected\tmax_ratio\tmedian_ratio\tbaseline_ratio")?;
        let fmt = |v: Option<f64>| v.map(|x| format!("{x:.3}")).unwrap_or_else(|| "-".into());
        for s in summarize(&rows, &config) {
            writeln!(
                err,
                "{}\t{}\t{}\t{}/{}\t{}\t{}\t{}",
                s.family,
                s.n,
                s.k,
                s.connected,
                s.trials,
                fmt(s.max_ratio),
                fmt(s.median_ratio),
                fmt(s.baseline_ratio)
            )?;
        }
    }
    Ok(())
}

fn trace_options(c: Option<f64>, allow: bool) -> TraceOptions {
    TraceOptions { c, allow_infeasible: allow }
}

fn cmd_trace(a: TraceArgs) -> Result<()> {
    let inst = build_action(a.family)?;
    let mode = match a.mode {
        GrowthArg::Lemma6 => GrowthMode::Lemma6,
        GrowthArg::Prop1 => GrowthMode::Prop1,
    };
    let rng = SeededRng::new(a.common.seed);
    let opts = trace_options(a.c, a.allow_unmet_preconditions);
    let traces = (0..a.trials.max(1))
        .map(|t| growth_trace(&inst, a.omega, a.k, a.epsilon, mode, &mut rng.trial(t), opts))
        .collect::<Result<Vec<_>>>()?;
    let reached = traces.iter().filter(|t| t.reached_target).count();
    let first = &traces[0];
    let record = json!({
        "mode": mode,
        "stages": first.stages,
        "failure_stage": first.failure_stage,
        "final_size": first.final_size,
        "bound": first.target,
        "empirical": reached as f64 / traces.len() as f64,
        "trials": traces.len(),
        "seed": a.common.seed,
        "traces": traces,
    });
    emit_json_value(&record, a.common.out.as_deref())
}

fn cmd_pipeline(a: PipelineArgs) -> Result<()> {
    let inst = build_action(a.family)?;
    let rng = SeededRng::new(a.common.seed);
    let opts = PipelineOptions {
        allow_unmet: a.allow_unmet_preconditions,
        c: a.c,
        budget: a.budget,
        pivots: DEFAULT_PIVOTS,
        max_table_entries: a.max_table_entries,
    };
    let mut runs = Vec::new();
    for t in 0..a.trials.max(1) {
        let run = match theorem_pipeline(&inst, a.omega, a.k, a.epsilon, &mut rng.trial(t), opts) {
            Ok(report) => json!({ "trial": t, "ok": true, "report": report }),
            Err(e @ Error::PipelineStageFailed { .. }) => json!({ "trial": t, "ok": false, "error": e.to_string() }),
            Err(e) => return Err(e),
        };
        runs.push(run);
    }
    emit_json_value(&json!({ "seed": a.common.seed, "trials": runs.len(), "runs": runs }), a.common.out.as_deref())
}

fn random_subset<R: RngCore>(n: usize, rng: &mut R) -> PointSet {
    let size = rng.random_range(0..=n);
    let mut pts: Vec<u32> = (0..n as u32).collect();
    let (chosen, _) = rand::seq::SliceRandom::partial_shuffle(&mut pts[..], rng, size);
    PointSet::from_points(n, chosen.iter().copied())
}

fn cmd_double_count(a: DoubleCountArgs) -> Result<()> {
    let inst = build_action(a.family)?;
    let n = inst.degree();
    let mut rng = SeededRng::new(a.common.seed);
    let cases: Vec<(PointSet, PointSet)> = if a.x.is_empty() {
        (0..a.trials.max(1)).map(|_| (random_subset(n, &mut rng), random_subset(n, &mut rng))).collect()
    } else {
        vec![(point_set(n, &a.x)?, point_set(n, &a.y)?)]
    };
    let mut records = Vec::new();
    let mut all_hold = true;
    for (x, y) in &cases {
        let r = double_count_check(&inst, x, y, a.budget)?;
        all_hold &= r.holds();
        records.push(json!({ "x_size": x.len(), "y_size": y.len(), "lhs_sum": r.lhs_sum, "rhs": r.rhs, "holds": r.holds() }));
    }
    emit_json_value(
        &json!({ "family": a.family.to_string(), "seed": a.common.seed, "all_hold": all_hold, "cases": records }),
        a.common.out.as_deref(),
    )?;
    if all_hold {
        Ok(())
    } else {
        Err(Error::PreconditionUnmet("double count identity violated".into()))
    }
}

fn policy(allow: bool) -> Preconditions {
    if allow {
        Preconditions::AllowUnmet
    } else {
        Preconditions::Enforce
    }
}

fn check_record(
    inst: &ActionInstance,
    x: &PointSet,
    check: &crate::lemma::BoundCheck,
    seed: u64,
    extra: serde_json::Value,
) -> serde_json::Value {
    json!({
        "family": inst.spec().to_string(),
        "x_size": x.len(),
        "bound": check.analytic_bound,
        "empirical": check.empirical,
        "std_error": check.std_error,
        "trials": check.trials,
        "satisfied": check.satisfied,
        "precondition_met": check.precondition_met,
        "seed": seed,
        "params": extra,
    })
}

fn cmd_one_step(a: OneStepArgs) -> Result<()> {
    let inst = build_action(a.family)?;
    let x = a.set.build(inst.degree(), 1)?;
    let mut rng = SeededRng::new(a.common.seed);
    let c = one_step_growth_check(&inst, &x, a.k, a.r, a.s, a.trials, &mut rng, policy(a.allow_unmet_preconditions))?;
    let rec = check_record(&inst, &x, &c, a.common.seed, json!({ "k": a.k, "r": a.r, "s": a.s }));
    emit_json_value(&rec, a.common.out.as_deref())
}

fn cmd_explicit(a: ExplicitArgs) -> Result<()> {
    let inst = build_action(a.family)?;
    let x = a.set.build(inst.degree(), 1)?;
    let mut rng = SeededRng::new(a.common.seed);
    let c = explicit_growth_check(&inst, &x, a.k, a.d, a.trials, &mut rng, policy(a.allow_unmet_preconditions))?;
    let rec = check_record(&inst, &x, &c, a.common.seed, json!({ "k": a.k, "d": a.d }));
    emit_json_value(&rec, a.common.out.as_deref())
}

fn cmd_fill(a: FillArgs) -> Result<()> {
    let inst = build_action(a.family)?;
    let x = a.set.build(inst.degree(), inst.degree().div_ceil(2))?;
    let mut rng = SeededRng::new(a.common.seed);
    let f = fill_check(&inst, &x, a.k, a.trials, &mut rng)?;
    let mut rec = check_record(&inst, &x, &f.cover, a.common.seed, json!({ "k": a.k, "m": f.m }));
    rec["union_bound"] = json!(f.union_bound);
    rec["exact_cover"] = json!(f.exact_cover);
    rec["point_miss"] = json!(f.point_miss);
    emit_json_value(&rec, a.common.out.as_deref())
}

fn cmd_schedule(a: ScheduleArgs) -> Result<()> {
    let ln_n = match (a.n, a.log2_n) {
        (Some(n), _) => (n as f64).ln(),
        (_, Some(l)) => l * std::f64::consts::LN_2,
        _ => unreachable!("clap requires one of --n, --log2-n"),
    };
    let schedule = match a.c {
        Some(c) => proof_schedule(ln_n, a.k, a.epsilon, c)?,
        None => minimal_feasible_schedule(ln_n, a.k, a.epsilon)?.ok_or_else(|| {
            Error::ScheduleInfeasible(format!("h^(D/2) > n fails for every D <= k (k={})", a.k))
        })?,
    };
    emit_json_value(&schedule, a.out.as_deref())
}

fn cmd_info() -> Result<()> {
    let mut out = io::stdout().lock();
    for (name, grammar, description) in FAMILY_GRAMMARS {
        writeln!(out, "{name:<11} {grammar:<26} {description}")?;
    }
    writeln!(out)?;
    writeln!(out, "sweep also takes families without the size parameter (sym, cyclic, sym-tuples:r=2,")?;
    writeln!(out, "abelian:m=2, abelian:d=3, dihedral, affine, proj), scaled to each --n.")?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Diameter(a) => cmd_diameter(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::GrowthTrace(a) => cmd_trace(a),
        Command::Pipeline(a) => cmd_pipeline(a),
        Command::Lemma(LemmaCommand::DoubleCount(a)) => cmd_double_count(a),
        Command::Lemma(LemmaCommand::OneStep(a)) => cmd_one_step(a),
        Command::Lemma(LemmaCommand::ExplicitGrowth(a)) => cmd_explicit(a),
        Command::Lemma(LemmaCommand::Fill(a)) => cmd_fill(a),
        Command::Schedule(a) => cmd_schedule(a),
        Command::Info => cmd_info(),
    }
}

fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code: 0 on success, 1 on usage errors, 2 on runtime errors.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match par::with_workers(threads_from_env(), || run(cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_size("2^16"), Ok(65536));
        assert_eq!(parse_size("1e6"), Ok(1_000_000));
        assert_eq!(parse_size("300"), Ok(300));
        assert!(parse_size("2^x").is_err());
        assert!(parse_size("abc").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(dispatch(["schreier-lab", "frobnicate"]), 1);
        assert_eq!(dispatch(["schreier-lab", "diameter", "--family", "cyclic:m=10"]), 1);
        assert_eq!(dispatch(["schreier-lab", "diameter", "--family", "bogus", "--k", "1"]), 1);
        assert_eq!(dispatch(["schreier-lab", "--help"]), 0);
    }

    #[test]
    fn runtime_errors_exit_two() {
        assert_eq!(dispatch(["schreier-lab", "lemma", "double-count", "--family", "sym:n=12"]), 2);
    }
}
