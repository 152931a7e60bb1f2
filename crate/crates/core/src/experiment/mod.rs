//! Batch sweeps over (family, n, trial) grids and their tabular output.

mod output;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use output::{emit_csv, emit_json, emit_plot, read_csv, render_svg, write_csv, write_json, CSV_HEADER};

use crate::action::{is_prime, split_params, take_keys, ActionInstance, FamilySpec};
use crate::diameter::{auto_diameter, exact_diameter, pivot_bounds, DiameterReport, DEFAULT_BUDGET, DEFAULT_PIVOTS};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::random::{derive_trial_seed, sample_multiset, SeededRng};
use crate::schreier::{build_graph, default_cutoff};

/// A family either pinned to one instance or scaled to each n of the grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyTemplate {
    Fixed(FamilySpec),
    Sym,
    /// Smallest point count whose r-tuples number at least n.
    SymTuples { r: usize },
    Cyclic,
    /// (Z_m)^d with d = round(log_m n).
    AbelianBase { m: u64 },
    /// (Z_m)^d with m = round(n^(1/d)).
    AbelianRank { d: u32 },
    Dihedral,
    /// Smallest prime p ≥ n.
    Affine,
    /// Smallest prime p ≥ n − 1, so the degree is p + 1.
    Proj,
}

fn next_prime(from: u64) -> u64 {
    (from.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

impl FamilyTemplate {
    /// Concrete family near degree `n`. The degree actually obtained is
    /// `build_action(spec)?.degree()`.
    pub fn with_degree(&self, n: usize) -> Result<FamilySpec> {
        let n = n.max(1);
        Ok(match *self {
            FamilyTemplate::Fixed(spec) => spec,
            FamilyTemplate::Sym => FamilySpec::SymmetricNatural { n },
            FamilyTemplate::SymTuples { r } => {
                let falling = |n0: usize| (0..r).try_fold(1usize, |acc, i| acc.checked_mul(n0 - i));
                let n0 = (r.max(1)..).find(|&n0| falling(n0).is_none_or(|f| f >= n)).expect("unbounded");
                FamilySpec::SymmetricTuples { n: n0, r }
            }
            FamilyTemplate::Cyclic => FamilySpec::CyclicRegular { m: n as u64 },
            FamilyTemplate::AbelianBase { m } => {
                let d = ((n as f64).ln() / (m as f64).ln()).round().max(1.0) as u32;
                FamilySpec::AbelianPower { m, d }
            }
            FamilyTemplate::AbelianRank { d } => {
                let m = (n as f64).powf(1.0 / d as f64).round().max(2.0) as u64;
                FamilySpec::AbelianPower { m, d }
            }
            FamilyTemplate::Dihedral => FamilySpec::Dihedral { m: n as u64 },
            FamilyTemplate::Affine => FamilySpec::AffinePrime { p: next_prime(n as u64) },
            FamilyTemplate::Proj => FamilySpec::ProjectiveLine { p: next_prime(n as u64 - 1) },
        })
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, FamilyTemplate::Fixed(_))
    }

    /// Regular actions, i.e. Cayley graphs.
    pub fn is_regular(&self) -> bool {
        match self {
            FamilyTemplate::Fixed(spec) => spec.is_regular(),
            FamilyTemplate::Cyclic | FamilyTemplate::AbelianBase { .. } | FamilyTemplate::AbelianRank { .. } => true,
            _ => false,
        }
    }
}

impl fmt::Display for FamilyTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTemplate::Fixed(spec) => write!(f, "{spec}"),
            FamilyTemplate::Sym => f.write_str("sym"),
            FamilyTemplate::SymTuples { r } => write!(f, "sym-tuples:r={r}"),
            FamilyTemplate::Cyclic => f.write_str("cyclic"),
            FamilyTemplate::AbelianBase { m } => write!(f, "abelian:m={m}"),
            FamilyTemplate::AbelianRank { d } => write!(f, "abelian:d={d}"),
            FamilyTemplate::Dihedral => f.write_str("dihedral"),
            FamilyTemplate::Affine => f.write_str("affine"),
            FamilyTemplate::Proj => f.write_str("proj"),
        }
    }
}

impl FromStr for FamilyTemplate {
    type Err = Error;

    /// A full family spec (`cyclic:m=10`) or a scalable one with the size
    /// parameter left out (`cyclic`, `sym-tuples:r=2`, `abelian:m=2`).
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(spec) = s.parse::<FamilySpec>() {
            return Ok(FamilyTemplate::Fixed(spec));
        }
        let (name, params) = split_params(s)?;
        let key = params.first().map(|(k, _)| *k);
        Ok(match (name, params.len(), key) {
            ("sym", 0, _) => FamilyTemplate::Sym,
            ("sym-tuples", 1, _) => {
                let [r] = take_keys(s, &params, ["r"])?;
                FamilyTemplate::SymTuples { r: r as usize }
            }
            ("cyclic", 0, _) => FamilyTemplate::Cyclic,
            ("abelian", 0, _) => FamilyTemplate::AbelianBase { m: 2 },
            ("abelian", 1, Some("m")) if params[0].1 >= 2 => FamilyTemplate::AbelianBase { m: params[0].1 },
            ("abelian", 1, Some("d")) if params[0].1 >= 1 => {
                FamilyTemplate::AbelianRank { d: u32::try_from(params[0].1).map_err(|_| Error::FamilyParse(s.into()))? }
            }
            ("dihedral", 0, _) => FamilyTemplate::Dihedral,
            ("affine", 0, _) => FamilyTemplate::Affine,
            ("proj", 0, _) => FamilyTemplate::Proj,
            _ => return Err(Error::FamilyParse(s.to_string())),
        })
    }
}

/// How k depends on n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KRule {
    Fixed(usize),
    /// k = ⌈(ln n)^(1+ε)⌉
    Power(f64),
    /// k = ⌈n^δ⌉
    Fraction(f64),
}

impl KRule {
    pub fn k_for(&self, n: usize) -> usize {
        let nf = n.max(1) as f64;
        let k = match *self {
            KRule::Fixed(k) => return k.max(1),
            KRule::Power(eps) => nf.ln().powf(1.0 + eps).ceil(),
            KRule::Fraction(delta) => nf.powf(delta).ceil(),
        };
        (k as usize).max(1)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DiameterMode {
    Exact,
    Bounds,
    #[default]
    Auto,
}

impl FromStr for DiameterMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(DiameterMode::Exact),
            "bounds" => Ok(DiameterMode::Bounds),
            "auto" => Ok(DiameterMode::Auto),
            _ => Err(Error::PreconditionUnmet(format!("unknown diameter mode `{s}`, expected exact, bounds or auto"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub families: Vec<FamilyTemplate>,
    /// Must be empty exactly when every family is fixed.
    pub n_grid: Vec<usize>,
    pub k_rule: KRule,
    pub trials: u64,
    pub seed: u64,
    pub mode: DiameterMode,
    pub budget: u64,
    pub pivots: usize,
    /// Compute the covering radius from point 0.
    pub covering: bool,
    /// Fill `elapsed_ms`; off by default so output bytes are reproducible.
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(families: Vec<FamilyTemplate>, n_grid: Vec<usize>, k_rule: KRule) -> Self {
        SweepConfig {
            families,
            n_grid,
            k_rule,
            trials: 1,
            seed: 0,
            mode: DiameterMode::Auto,
            budget: DEFAULT_BUDGET,
            pivots: DEFAULT_PIVOTS,
            covering: true,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::PreconditionUnmet(m.to_string()));
        if self.families.is_empty() {
            return bad("sweep needs at least one family");
        }
        if self.trials == 0 {
            return bad("sweep needs trials >= 1");
        }
        let fixed = self.families.iter().filter(|f| f.is_fixed()).count();
        if fixed == self.families.len() {
            if !self.n_grid.is_empty() {
                return bad("fully specified families take no n grid");
            }
        } else if fixed > 0 {
            return bad("cannot mix fully specified and scaled families");
        } else if self.n_grid.is_empty() {
            return bad("scaled families need a nonempty n grid");
        }
        Ok(())
    }

    /// One cell per (family, n), in grid order.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        self.validate()?;
        let grid: Vec<Option<usize>> =
            if self.n_grid.is_empty() { vec![None] } else { self.n_grid.iter().map(|&n| Some(n)).collect() };
        let mut cells = Vec::new();
        for family in &self.families {
            for n in &grid {
                let spec = family.with_degree(n.unwrap_or(1))?;
                let instance = ActionInstance::new(spec)?;
                let k = self.k_rule.k_for(instance.degree());
                cells.push(Cell { label: family.to_string(), regular: family.is_regular(), instance, k });
            }
        }
        Ok(cells)
    }
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub label: String,
    pub regular: bool,
    pub instance: ActionInstance,
    pub k: usize,
}

/// One trial. Missing values are `None` and serialize as empty CSV fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub trial: u64,
    pub seed: u64,
    pub connected: bool,
    pub diam_lower: Option<u32>,
    pub diam_upper: Option<u32>,
    pub diam_exact: Option<u32>,
    pub covering_radius: Option<u32>,
    /// diam_upper · ln k / ln n
    pub ratio: Option<f64>,
    pub elapsed_ms: Option<f64>,
}

/// diam · ln k / ln n, with 0 when n = 1.
pub fn ratio(diam: u32, n: usize, k: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        diam as f64 * (k as f64).ln() / (n as f64).ln()
    }
}

/// Seed of `trial` in the cell at `cell_index`.
pub fn row_seed(master: u64, cell_index: usize, trial: u64) -> u64 {
    derive_trial_seed(derive_trial_seed(master, cell_index as u64), trial)
}

fn measure(cell: &Cell, config: &SweepConfig, seed: u64) -> (DiameterReport, Option<u32>) {
    let mut rng = SeededRng::new(seed);
    let a = sample_multiset(&cell.instance, cell.k, &mut rng).expect("k >= 1");
    let graph = build_graph(&cell.instance, &a).expect("sampled elements belong to the family");
    let report = match config.mode {
        DiameterMode::Auto => Ok(auto_diameter(&graph, config.budget, config.pivots, &mut rng)),
        DiameterMode::Exact => exact_diameter(&graph, config.budget),
        DiameterMode::Bounds => pivot_bounds(&graph, config.pivots, &mut rng),
    }
    .unwrap_or_else(|_| DiameterReport {
        lower: None,
        upper: None,
        exact: None,
        method: crate::diameter::Method::AllPairs,
        pivots_used: 0,
        connected: graph.is_connected(),
    });
    let covering = if config.covering && report.connected {
        graph.covering_radius(0, default_cutoff(graph.degree())).radius()
    } else {
        None
    };
    (report, covering)
}

/// Runs every (cell, trial) and returns rows sorted by (family, n, trial).
///
/// Per-trial failures (disconnected graph, budget) are recorded in the row.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<ResultRow>> {
    run_sweep_with(config, Exec::default())
}

pub fn run_sweep_with(config: &SweepConfig, exec: Exec) -> Result<Vec<ResultRow>> {
    let cells = config.cells()?;
    let trials = config.trials as usize;
    let mut rows = par::map_range(exec, cells.len() * trials, |job| {
        let (ci, trial) = (job / trials, (job % trials) as u64);
        let cell = &cells[ci];
        let seed = row_seed(config.seed, ci, trial);
        let start = Instant::now();
        let (report, covering_radius) = measure(cell, config, seed);
        let n = cell.instance.degree();
        ResultRow {
            family: cell.label.clone(),
            n,
            k: cell.k,
            trial,
            seed,
            connected: report.connected,
            diam_lower: report.lower,
            diam_upper: report.upper,
            diam_exact: report.exact,
            covering_radius,
            ratio: report.upper.filter(|_| report.connected).map(|u| ratio(u, n, cell.k)),
            elapsed_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        }
    });
    rows.sort_by(|a, b| (&a.family, a.n, a.trial).cmp(&(&b.family, b.n, b.trial)));
    Ok(rows)
}

/// Aggregates over the trials of one (family, n) cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellSummary {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub connected: usize,
    pub max_ratio: Option<f64>,
    pub median_ratio: Option<f64>,
    /// 2(1 + 1/ε), the ratio guaranteed w.h.p. for Cayley graphs of
    /// abelian groups when k = (ln n)^(1+ε).
    pub baseline_ratio: Option<f64>,
}

impl CellSummary {
    pub fn connected_fraction(&self) -> f64 {
        self.connected as f64 / self.trials as f64
    }
}

/// Summaries in row order. Rows must be sorted as [`run_sweep`] returns them.
pub fn summarize(rows: &[ResultRow], config: &SweepConfig) -> Vec<CellSummary> {
    let regular: std::collections::HashMap<String, bool> =
        config.families.iter().map(|f| (f.to_string(), f.is_regular())).collect();
    let baseline = match config.k_rule {
        KRule::Power(eps) if eps > 0.0 => Some(2.0 * (1.0 + 1.0 / eps)),
        _ => None,
    };
    rows.chunk_by(|a, b| a.family == b.family && a.n == b.n)
        .map(|cell| {
            let mut ratios: Vec<f64> = cell.iter().filter_map(|r| r.ratio).collect();
            ratios.sort_by(f64::total_cmp);
            let median = (!ratios.is_empty()).then(|| {
                let mid = ratios.len() / 2;
                if ratios.len() % 2 == 1 { ratios[mid] } else { (ratios[mid - 1] + ratios[mid]) / 2.0 }
            });
            CellSummary {
                family: cell[0].family.clone(),
                n: cell[0].n,
                k: cell[0].k,
                trials: cell.len(),
                connected: cell.iter().filter(|r| r.connected).count(),
                max_ratio: ratios.last().copied(),
                median_ratio: median,
                baseline_ratio: baseline.filter(|_| regular.get(&cell[0].family).copied().unwrap_or(false)),
            }
        })
        .collect()
}
