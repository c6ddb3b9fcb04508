//! Experiment runner behind the `jvf` binary.
//!
//! Each command has a `cmd_*` function returning plain data and a `write_*`
//! function emitting it as CSV with `#`-prefixed metadata lines. Floats are
//! written with 17 significant digits so output is reproducible bit for bit.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convergence::error_radius_sequence;
use crate::dynamics::contour::{zero_contours, Grid, Polyline};
use crate::dynamics::planar::boundary_indicator;
use crate::dynamics::{
    find_fixed_points, infinity_fixed_point_candidates, FixedPointReport, InfinityCandidate, PlanarFrame,
};
use crate::error::JvfError;
use crate::fraction::{eval_converged, eval_truncated, eval_truncated_scaled, validate, JvfParams};
use crate::geometry::{ExtVector, SignatureSpace, Vector};

/// Environment variable capping the worker count for grid commands.
pub const THREADS_ENV: &str = "JVF_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Jvf(#[from] JvfError),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    /// 2 for precondition failures, 3 for non-convergence, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Jvf(JvfError::NotConverged { .. } | JvfError::NoAttractiveFixedPoint) => 3,
            CliError::Jvf(_) | CliError::Config(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    pub point: Vec<f64>,
    pub rel_tol: f64,
    pub max_levels: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { point: vec![-0.26, 0.69, 0.001], rel_tol: 1e-12, max_levels: 100_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecayConfig {
    pub point: Vec<f64>,
    pub min_levels: usize,
    pub max_levels: usize,
    /// Reference level `M` standing in for the infinite fraction.
    pub ref_level: usize,
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig { point: vec![-0.26, 0.69, 0.001], min_levels: 1, max_levels: 1000, ref_level: 2000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub levels: usize,
    pub z_y: f64,
    pub grid: Grid,
    /// Contour heights `y_n = y_0 e^{k n}` for `n < contour_count`.
    pub contour_y0: f64,
    pub contour_k: f64,
    pub contour_count: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            levels: 3000,
            z_y: -0.001,
            grid: Grid::square(1.2, 241),
            contour_y0: 0.0864,
            contour_k: 0.312544,
            contour_count: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundaryConfig {
    pub grid: Grid,
}

impl Default for BoundaryConfig {
    fn default() -> Self {
        BoundaryConfig { grid: Grid::square(1.2, 241) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FixedConfig {
    pub point: Vec<f64>,
    pub multi_starts: usize,
    pub seed: u64,
}

impl Default for FixedConfig {
    fn default() -> Self {
        FixedConfig { point: vec![-0.26, 0.69, 0.001], multi_starts: 64, seed: 1 }
    }
}

/// Everything a run needs. Defaults reproduce the three-fold symmetric
/// experiment: `a = 0.4`, `β_n = 1/4`, signature `(+1, +1, −1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub signature: Vec<i8>,
    pub y_index: usize,
    pub shifts: Vec<Vec<f64>>,
    pub scales: Vec<f64>,
    /// Set for periodic lists (`shifts` and `scales` both of length `period`);
    /// absent for a finite fraction with one more scale than shifts.
    pub period: Option<usize>,
    pub eval: EvalConfig,
    pub decay: DecayConfig,
    pub scan: ScanConfig,
    pub boundary: BoundaryConfig,
    pub fixed: FixedConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let params = JvfParams::three_fold_symmetric(0.4, 0.25);
        ExperimentConfig {
            signature: vec![1, 1, -1],
            y_index: 2,
            shifts: params.shifts().iter().map(|a| a.to_vec()).collect(),
            scales: params.scales().to_vec(),
            period: Some(3),
            eval: EvalConfig::default(),
            decay: DecayConfig::default(),
            scan: ScanConfig::default(),
            boundary: BoundaryConfig::default(),
            fixed: FixedConfig::default(),
        }
    }
}

fn check_grid(grid: &Grid) -> Result<(), CliError> {
    if grid.nx < 2 || grid.ny < 2 {
        return Err(CliError::Config("grid needs at least 2 nodes per axis".into()));
    }
    if !(grid.x_min < grid.x_max && grid.y_min < grid.y_max) {
        return Err(CliError::Config("grid extents must be increasing".into()));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: ExperimentConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn space(&self) -> Result<SignatureSpace, CliError> {
        Ok(SignatureSpace::new(&self.signature, self.y_index)?)
    }

    pub fn params(&self) -> Result<JvfParams, CliError> {
        let shifts: Vec<Vector> = self.shifts.iter().map(|a| Vector::from_slice(a)).collect();
        let params = match self.period {
            Some(p) => {
                if shifts.len() != p {
                    return Err(CliError::Config(format!("period {p} but {} shifts", shifts.len())));
                }
                JvfParams::periodic(shifts, self.scales.clone())?
            }
            None => JvfParams::finite(shifts, self.scales.clone())?,
        };
        Ok(params)
    }

    /// Fraction hypotheses, grid sizes and `M > max N`.
    pub fn validate(&self) -> Result<(), CliError> {
        validate(&self.space()?, &self.params()?)?;
        check_grid(&self.scan.grid)?;
        check_grid(&self.boundary.grid)?;
        if self.decay.ref_level <= self.decay.max_levels {
            return Err(CliError::Config("decay.ref_level must exceed decay.max_levels".into()));
        }
        if self.decay.min_levels == 0 || self.decay.min_levels > self.decay.max_levels {
            return Err(CliError::Config("decay range must satisfy 1 <= min_levels <= max_levels".into()));
        }
        Ok(())
    }
}

fn point(space: &SignatureSpace, coords: &[f64]) -> Result<Vector, CliError> {
    let z = Vector::from_slice(coords);
    space.check_dim(&z)?;
    Ok(z)
}

/// A rayon pool honoring [`THREADS_ENV`]; unset or unparsable means the default size.
pub fn worker_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn fmt_ext(v: &ExtVector, dim: usize) -> Vec<String> {
    match v {
        ExtVector::Finite(c) => c.iter().map(|&x| fmt_f64(x)).collect(),
        ExtVector::Infinity => vec!["inf".to_string(); dim],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalRecord {
    /// `R_N(Z, 0)` without the leading scale.
    pub value: ExtVector,
    /// `β_0 R_N(Z, 0)`.
    pub scaled_value: ExtVector,
    pub levels_used: usize,
    pub log10_bound: f64,
}

pub fn cmd_eval(config: &ExperimentConfig) -> Result<EvalRecord, CliError> {
    let space = config.space()?;
    let params = config.params()?;
    let z = point(&space, &config.eval.point)?;
    let c = eval_converged(&space, &params, &z, config.eval.rel_tol, config.eval.max_levels)?;
    Ok(EvalRecord {
        scaled_value: c.value.scaled(params.scale(0)),
        value: c.value,
        levels_used: c.levels_used,
        log10_bound: c.bound.log10(),
    })
}

pub fn write_eval<W: Write>(out: &mut W, config: &ExperimentConfig, r: &EvalRecord) -> io::Result<()> {
    let dim = config.signature.len();
    writeln!(out, "# point,{}", config.eval.point.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(","))?;
    writeln!(out, "# rel_tol,{}", fmt_f64(config.eval.rel_tol))?;
    writeln!(out, "value,{}", fmt_ext(&r.value, dim).join(","))?;
    writeln!(out, "scaled_value,{}", fmt_ext(&r.scaled_value, dim).join(","))?;
    writeln!(out, "levels_used,{}", r.levels_used)?;
    writeln!(out, "log10_2rho,{}", fmt_f64(r.log10_bound))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayRow {
    pub levels: usize,
    pub log10_bound: f64,
    pub log10_error: f64,
    /// The difference to `R_M` has fallen below `1e−14 |R_M|` at this row or earlier.
    pub rounding_floor: bool,
}

/// Relative size below which `|R_N − R_M|` is rounding noise.
pub const ROUNDING_FLOOR: f64 = 1e-14;

/// `log10 2ρ_N` against `log10 |R_N − R_M|` for `N` in the configured range.
pub fn cmd_decay(config: &ExperimentConfig) -> Result<Vec<DecayRow>, CliError> {
    let space = config.space()?;
    let params = config.params()?;
    let d = &config.decay;
    let z = point(&space, &d.point)?;
    let balls = error_radius_sequence(&space, &params, &z, d.max_levels)?;
    params.check_levels(d.ref_level)?;
    let zero = ExtVector::zeros(space.dim());
    let reference =
        eval_truncated(&space, &params, &z, d.ref_level, &zero).into_finite().ok_or(JvfError::DegenerateDenominator)?;
    let floor = ROUNDING_FLOOR * reference.norm();
    let mut reached_floor = false;
    let rows = (d.min_levels..=d.max_levels)
        .map(|n| {
            let diff = match eval_truncated(&space, &params, &z, n, &zero) {
                ExtVector::Finite(r) => r.distance(&reference),
                ExtVector::Infinity => f64::INFINITY,
            };
            reached_floor |= diff < floor;
            DecayRow {
                levels: n,
                log10_bound: balls[n - 1].log10_diameter(),
                log10_error: diff.log10(),
                rounding_floor: reached_floor,
            }
        })
        .collect();
    Ok(rows)
}

pub fn write_decay<W: Write>(out: &mut W, config: &ExperimentConfig, rows: &[DecayRow]) -> io::Result<()> {
    let d = &config.decay;
    writeln!(out, "# point,{}", d.point.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(","))?;
    writeln!(out, "# ref_level,{}", d.ref_level)?;
    writeln!(out, "# rounding_floor_relative,{}", fmt_f64(ROUNDING_FLOOR))?;
    writeln!(out, "levels,log10_2rho,log10_error,flag")?;
    for r in rows {
        let flag = if r.rounding_floor { "rounding-floor" } else { "" };
        writeln!(out, "{},{},{},{}", r.levels, fmt_f64(r.log10_bound), fmt_f64(r.log10_error), flag)?;
    }
    Ok(())
}

/// `β_0 y·R_N(x1, x2, z_y)` on a grid, row-major with `x1` fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub grid: Grid,
    pub z_y: f64,
    pub levels: usize,
    pub values: Vec<f64>,
    /// Non-finite value or infinite fraction at the point.
    pub divergent: Vec<bool>,
}

impl ScanResult {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.nx + i]
    }
}

/// `β_0 y·R_N(Z, 0)` at a single point.
pub fn scan_value(space: &SignatureSpace, params: &JvfParams, z: &Vector, levels: usize) -> f64 {
    let zero = ExtVector::zeros(space.dim());
    match eval_truncated_scaled(space, params, z, levels, &zero, params.scale(0)) {
        ExtVector::Finite(v) => space.y_component(&v),
        ExtVector::Infinity => f64::INFINITY,
    }
}

pub fn cmd_scan(config: &ExperimentConfig) -> Result<ScanResult, CliError> {
    let space = config.space()?;
    let params = config.params()?;
    let frame = PlanarFrame::for_space(&space)?;
    let s = &config.scan;
    check_grid(&s.grid)?;
    if s.levels == 0 {
        return Err(JvfError::ZeroLevels.into());
    }
    params.check_levels(s.levels)?;
    let grid = s.grid;
    let nodes: Vec<(usize, usize)> = grid.nodes().collect();
    let values: Vec<f64> = worker_pool().install(|| {
        nodes
            .par_iter()
            .map(|&(i, j)| {
                let mut z = frame.to_vector(Complex64::new(grid.x(i), grid.y(j)), space.dim());
                z[space.y_index()] = s.z_y;
                scan_value(&space, &params, &z, s.levels)
            })
            .collect()
    });
    let divergent = values.iter().map(|v| !v.is_finite()).collect();
    Ok(ScanResult { grid, z_y: s.z_y, levels: s.levels, values, divergent })
}

/// Suggested contour heights `y_0 e^{k n}`.
pub fn contour_levels(s: &ScanConfig) -> Vec<f64> {
    (0..s.contour_count).map(|n| s.contour_y0 * (s.contour_k * n as f64).exp()).collect()
}

pub fn write_scan<W: Write>(out: &mut W, config: &ExperimentConfig, r: &ScanResult) -> io::Result<()> {
    let s = &config.scan;
    writeln!(out, "# levels,{}", r.levels)?;
    writeln!(out, "# z_y,{}", fmt_f64(r.z_y))?;
    writeln!(
        out,
        "# grid,{},{},{},{},{},{}",
        fmt_f64(r.grid.x_min),
        fmt_f64(r.grid.x_max),
        fmt_f64(r.grid.y_min),
        fmt_f64(r.grid.y_max),
        r.grid.nx,
        r.grid.ny
    )?;
    writeln!(out, "# contour_y0,{}", fmt_f64(s.contour_y0))?;
    writeln!(out, "# contour_k,{}", fmt_f64(s.contour_k))?;
    let levels: Vec<String> = contour_levels(s).iter().map(|&v| fmt_f64(v)).collect();
    writeln!(out, "# contour_levels,{}", levels.join(","))?;
    writeln!(out, "x1,x2,y_r,divergent")?;
    let mut line = String::new();
    for (k, (i, j)) in r.grid.nodes().enumerate() {
        line.clear();
        let _ = write!(
            line,
            "{},{},{},{}",
            fmt_f64(r.grid.x(i)),
            fmt_f64(r.grid.y(j)),
            fmt_f64(r.values[k]),
            u8::from(r.divergent[k])
        );
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// The convergent/oscillatory boundary on the plane, as zero contours of
/// the trace indicator of the reduced period map.
pub fn cmd_boundary(config: &ExperimentConfig) -> Result<Vec<Polyline>, CliError> {
    let space = config.space()?;
    let params = config.params()?;
    let frame = PlanarFrame::for_space(&space)?;
    let grid = config.boundary.grid;
    check_grid(&grid)?;
    // surfaces NotPeriodic / NotPlanar before the parallel pass
    boundary_indicator(&space, &params, &frame, Complex64::new(grid.x(0), grid.y(0)))?;
    let field = |x: f64, y: f64| boundary_indicator(&space, &params, &frame, Complex64::new(x, y)).unwrap_or(f64::NAN);
    let nodes: Vec<(usize, usize)> = grid.nodes().collect();
    let values: Vec<f64> =
        worker_pool().install(|| nodes.par_iter().map(|&(i, j)| field(grid.x(i), grid.y(j))).collect());
    Ok(zero_contours(&grid, &values, field))
}

pub fn write_boundary<W: Write>(out: &mut W, lines: &[Polyline]) -> io::Result<()> {
    writeln!(out, "# loops,{}", lines.len())?;
    for (id, l) in lines.iter().enumerate() {
        writeln!(out, "# loop,{id},points,{},closed,{}", l.points.len(), l.closed)?;
    }
    writeln!(out, "loop_id,x1,x2")?;
    for (id, l) in lines.iter().enumerate() {
        for &(x, y) in &l.points {
            writeln!(out, "{id},{},{}", fmt_f64(x), fmt_f64(y))?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedRecord {
    pub fixed_points: Vec<FixedPointReport>,
    pub infinity_candidates: Vec<InfinityCandidate>,
}

pub fn cmd_fixed(config: &ExperimentConfig) -> Result<FixedRecord, CliError> {
    let space = config.space()?;
    let params = config.params()?;
    let f = &config.fixed;
    let z = point(&space, &f.point)?;
    let fixed_points = find_fixed_points(&space, &params, &z, f.multi_starts, f.seed)?;
    let infinity_candidates = match infinity_fixed_point_candidates(&space, &params) {
        Ok(c) => c,
        Err(JvfError::NotPlanar(_)) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    Ok(FixedRecord { fixed_points, infinity_candidates })
}

pub fn write_fixed<W: Write>(out: &mut W, config: &ExperimentConfig, r: &FixedRecord) -> io::Result<()> {
    let dim = config.signature.len();
    writeln!(out, "# point,{}", config.fixed.point.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(","))?;
    writeln!(out, "record,kind,multiplier,{}", (0..dim).map(|i| format!("c{i}")).collect::<Vec<_>>().join(","))?;
    for fp in &r.fixed_points {
        let kind = format!("{:?}", fp.kind).to_lowercase();
        writeln!(out, "fixed_point,{kind},{},{}", fmt_f64(fp.multiplier), fmt_ext(&fp.location, dim).join(","))?;
    }
    for c in &r.infinity_candidates {
        let kind = if c.attractive { "attractive" } else { "repulsive" };
        let coords: Vec<String> = c.z.iter().map(|&x| fmt_f64(x)).collect();
        writeln!(out, "infinity_candidate,{kind},,{}", coords.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Parser)]
#[command(name = "jvf", version, about = "Jacobi-type vector continued fractions")]
pub struct Cli {
    /// TOML experiment config; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Converged value at a point with its error bound.
    Eval(Overrides),
    /// Error bound against realized error as the level count grows.
    Decay(Overrides),
    /// y-component grid scan just off the plane.
    Scan(Overrides),
    /// Convergent/oscillatory boundary loops on the plane.
    Boundary(Overrides),
    /// Fixed points of the period map and points where infinity is fixed.
    Fixed(Overrides),
    /// Print the effective config as TOML.
    Config(Overrides),
}

#[derive(Debug, Default, Args)]
pub struct Overrides {
    /// Levels: max levels for eval, decay and scan.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Reference level M for decay.
    #[arg(long)]
    pub ref_level: Option<usize>,
    /// Grid nodes per axis for scan and boundary.
    #[arg(long)]
    pub grid: Option<usize>,
    /// y-component of the scan plane.
    #[arg(long, allow_hyphen_values = true)]
    pub zy: Option<f64>,
    /// Comma-separated point for eval, decay and fixed.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Option<Vec<f64>>,
}

impl Overrides {
    pub fn apply(&self, config: &mut ExperimentConfig) {
        if let Some(n) = self.levels {
            config.eval.max_levels = n;
            config.decay.max_levels = n;
            config.scan.levels = n;
        }
        if let Some(m) = self.ref_level {
            config.decay.ref_level = m;
        }
        if let Some(n) = self.grid {
            config.scan.grid.nx = n;
            config.scan.grid.ny = n;
            config.boundary.grid.nx = n;
            config.boundary.grid.ny = n;
        }
        if let Some(zy) = self.zy {
            config.scan.z_y = zy;
        }
        if let Some(p) = &self.point {
            config.eval.point = p.clone();
            config.decay.point = p.clone();
            config.fixed.point = p.clone();
        }
    }
}

/// Parses, runs and writes; the `Err` carries the exit code.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let overrides = match &cli.command {
        Command::Eval(o)
        | Command::Decay(o)
        | Command::Scan(o)
        | Command::Boundary(o)
        | Command::Fixed(o)
        | Command::Config(o) => o,
    };
    overrides.apply(&mut config);
    config.validate()?;

    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    match &cli.command {
        Command::Eval(_) => write_eval(&mut sink, &config, &cmd_eval(&config)?)?,
        Command::Decay(_) => write_decay(&mut sink, &config, &cmd_decay(&config)?)?,
        Command::Scan(_) => write_scan(&mut sink, &config, &cmd_scan(&config)?)?,
        Command::Boundary(_) => write_boundary(&mut sink, &cmd_boundary(&config)?)?,
        Command::Fixed(_) => write_fixed(&mut sink, &config, &cmd_fixed(&config)?)?,
        Command::Config(_) => write!(sink, "{}", config.to_toml())?,
    }
    sink.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_round_trips() {
        let c = ExperimentConfig::default();
        let back = ExperimentConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(JvfError::OnBoundary).exit_code(), 2);
        assert_eq!(CliError::from(JvfError::NotConverged { levels: 1, bound: 1.0 }).exit_code(), 3);
        assert_eq!(CliError::from(JvfError::NoAttractiveFixedPoint).exit_code(), 3);
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
    }

    #[test]
    fn rejects_bad_decay_reference() {
        let mut c = ExperimentConfig::default();
        c.decay.ref_level = c.decay.max_levels;
        assert!(matches!(c.validate(), Err(CliError::Config(_))));
    }

    #[test]
    fn eval_on_plane_is_a_precondition_failure() {
        let mut c = ExperimentConfig::default();
        c.eval.point = vec![0.1, 0.2, 0.0];
        let e = cmd_eval(&c).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(matches!(e, CliError::Jvf(JvfError::OnBoundary)));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
    }

    #[test]
    fn overrides_reach_every_block() {
        let mut c = ExperimentConfig::default();
        Overrides {
            levels: Some(50),
            ref_level: Some(99),
            grid: Some(11),
            zy: Some(0.5),
            point: Some(vec![1.0, 2.0, 3.0]),
        }
        .apply(&mut c);
        assert_eq!((c.eval.max_levels, c.decay.max_levels, c.scan.levels), (50, 50, 50));
        assert_eq!(c.decay.ref_level, 99);
        assert_eq!((c.scan.grid.nx, c.boundary.grid.ny), (11, 11));
        assert_eq!(c.scan.z_y, 0.5);
        assert_eq!(c.fixed.point, vec![1.0, 2.0, 3.0]);
    }
}
