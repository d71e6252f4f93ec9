use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;

use dtqw_core::algebra::Vec3;
use dtqw_core::coin::CoinParams;
use dtqw_core::edge::{
    analytic_edge_state, default_ring_for_steps, eigen_residual, interface_experiment, EdgeBranch, InitialCase,
    InterfaceSpec,
};
use dtqw_core::lattice::ThetaProfile;
use dtqw_core::output;
use dtqw_core::symmetry::run_symmetry_checks;
use dtqw_core::topology::{
    bz_image, classify, invariant, predicted_edge_states, rel_homotopic, rotated_winding, winding_mt, Band,
    FrameVariant, RelHomotopyInvariant,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::sink::{emit, sibling, write_file, write_meta};
use crate::{Cli, Command, Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Core(dtqw_core::Error),
    Usage(String),
}

impl CliError {
    /// 2 for invalid input, 3 for a broken numerical contract, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_contract_violation() => 3,
            CliError::Core(dtqw_core::Error::Output(_)) => 1,
            CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<dtqw_core::Error> for CliError {
    fn from(e: dtqw_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

impl RunConfig {
    fn angle(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return usage(format!("angle {x} is not finite"));
        }
        Ok(if self.degrees { x.to_radians() } else { x })
    }

    fn theta(&self) -> Result<f64> {
        match self.theta {
            Some(t) => self.angle(t),
            None => Ok(FRAC_PI_4),
        }
    }

    fn params(&self) -> Result<CoinParams> {
        Ok(CoinParams::new(self.angle(self.delta)?, self.angle(self.alpha)?, self.angle(self.beta)?, self.theta()?))
    }

    fn theta_pair(&self) -> Result<Option<(f64, f64)>> {
        match (self.theta1, self.theta2) {
            (Some(a), Some(b)) => Ok(Some((self.angle(a)?, self.angle(b)?))),
            (None, None) => Ok(None),
            _ => usage("--theta1 and --theta2 must be given together"),
        }
    }

    fn interface(&self, ring_size: usize) -> Result<InterfaceSpec> {
        let (t1, t2) = self.theta_pair()?.unwrap_or((-FRAC_PI_4, FRAC_PI_4));
        Ok(InterfaceSpec::new(
            self.angle(self.delta)?,
            self.angle(self.alpha)?,
            self.angle(self.beta)?,
            t1,
            t2,
            ring_size,
        )?)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn json_only(&self) -> Result<()> {
        if self.format == Some(Format::Csv) {
            return usage("this subcommand only produces JSON");
        }
        Ok(())
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Band(cfg) => band(cli, cfg),
        Command::Map { config, frame } => map(cli, config, frame),
        Command::Winding(cfg) => winding(cli, cfg),
        Command::Invariant(cfg) => invariant_cmd(cli, cfg),
        Command::Symmetry(cfg) => symmetry(cli, cfg),
        Command::Edge { config, eta } => edge(cli, config, eta),
        Command::Evolve { config, case } => evolve(cli, config, case),
        Command::Sweep { config, theta_min, theta_max, count } => sweep(cli, config, *theta_min, *theta_max, *count),
    }
}

fn json<T: Serialize + ?Sized>(cli: &Cli, cfg: &RunConfig, value: &T) -> Result<()> {
    emit(cfg.out.as_deref(), cli, |w| output::write_json(value, w))
}

fn band(cli: &Cli, cfg: &RunConfig) -> Result<()> {
    let b = dtqw_core::band_structure(&cfg.params()?, cfg.grid)?;
    match cfg.format(Format::Csv) {
        Format::Csv => emit(cfg.out.as_deref(), cli, |w| output::write_band_csv(&b, w)),
        Format::Json => json(cli, cfg, &b),
    }
}

#[derive(Serialize)]
struct ImagePoint {
    frame: &'static str,
    k: f64,
    n: Vec3,
}

fn map(cli: &Cli, cfg: &RunConfig, frame: &str) -> Result<()> {
    let p = cfg.params()?;
    let frames: Vec<FrameVariant> =
        if frame.eq_ignore_ascii_case("all") { FrameVariant::ALL.to_vec() } else { vec![frame.parse()?] };
    let curves = frames
        .into_iter()
        .map(|f| Ok((f, bz_image(&p, f, cfg.grid)?)))
        .collect::<Result<Vec<_>>>()?;
    match cfg.format(Format::Csv) {
        Format::Csv => emit(cfg.out.as_deref(), cli, |w| output::write_bz_image_csv(&curves, w)),
        Format::Json => {
            let pts: Vec<ImagePoint> = curves
                .iter()
                .flat_map(|(f, pts)| pts.iter().map(|(k, n)| ImagePoint { frame: f.tag(), k: *k, n: *n }))
                .collect();
            json(cli, cfg, &pts)
        }
    }
}

#[derive(Serialize)]
struct WindingReport {
    params: CoinParams,
    grid: usize,
    winding_mt_upper: i64,
    winding_mt_lower: i64,
    v1_about_x: i64,
    v2_about_z: i64,
}

fn winding(cli: &Cli, cfg: &RunConfig) -> Result<()> {
    cfg.json_only()?;
    let p = cfg.params()?;
    let report = WindingReport {
        params: p,
        grid: cfg.grid,
        winding_mt_upper: winding_mt(&p, Band::Upper, cfg.grid)?,
        winding_mt_lower: winding_mt(&p, Band::Lower, cfg.grid)?,
        v1_about_x: rotated_winding(&p, FrameVariant::V1, &Vec3::X, cfg.grid)?,
        v2_about_z: rotated_winding(&p, FrameVariant::V2, &Vec3::Z, cfg.grid)?,
    };
    json(cli, cfg, &report)
}

#[derive(Serialize)]
struct Comparison {
    first: RelHomotopyInvariant,
    second: RelHomotopyInvariant,
    rel_homotopic: bool,
    predicted_edge_states: usize,
}

fn invariant_cmd(cli: &Cli, cfg: &RunConfig) -> Result<()> {
    cfg.json_only()?;
    let p = cfg.params()?;
    match cfg.theta_pair()? {
        None => json(cli, cfg, &invariant(&p, cfg.grid)?),
        Some((t1, t2)) => {
            let (p1, p2) = (p.with_theta(t1), p.with_theta(t2));
            let cmp = Comparison {
                first: invariant(&p1, cfg.grid)?,
                second: invariant(&p2, cfg.grid)?,
                rel_homotopic: rel_homotopic(&p1, &p2)?,
                predicted_edge_states: predicted_edge_states(&p1, &p2)?,
            };
            json(cli, cfg, &cmp)
        }
    }
}

/// Momenta sampled for the Bloch-level checks.
const SYMMETRY_SAMPLES: usize = 8;

fn symmetry(cli: &Cli, cfg: &RunConfig) -> Result<()> {
    cfg.json_only()?;
    let p = cfg.params()?;
    let n = cfg.ring_size.unwrap_or(16);
    let profile = match cfg.theta_pair()? {
        Some((t1, t2)) => ThetaProfile::sharp_interface(t1, t2, n)?,
        None => ThetaProfile::homogeneous(p.theta, n)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let momenta: Vec<f64> = (0..SYMMETRY_SAMPLES).map(|_| rng.random_range(-PI..PI)).collect();
    let reports = run_symmetry_checks(&p, &profile, n, &momenta)?;
    emit(cfg.out.as_deref(), cli, |w| output::write_symmetry_json(&reports, w))
}

#[derive(Serialize)]
struct EdgeReport {
    spec: InterfaceSpec,
    eta: f64,
    residual: f64,
    quasienergy: f64,
    expected_quasienergy: f64,
    decay_constants: [Complex64; 2],
    norm_constant: f64,
}

fn parse_eta(s: &str, cfg: &RunConfig) -> Result<f64> {
    match s.to_ascii_lowercase().as_str() {
        "0" | "zero" => Ok(0.0),
        "pi" | "π" => Ok(PI),
        other => match other.parse::<f64>() {
            Ok(x) => cfg.angle(x),
            Err(_) => usage(format!("eta must be 0 or pi, got '{s}'")),
        },
    }
}

fn edge(cli: &Cli, cfg: &RunConfig, eta: &str) -> Result<()> {
    let spec = cfg.interface(cfg.ring_size.unwrap_or(64))?;
    let eta = parse_eta(eta, cfg)?;
    let branch = EdgeBranch::from_eta(eta)?;
    let e = analytic_edge_state(&spec, eta)?;
    let r = eigen_residual(&spec.walk()?, &e)?;
    let report = EdgeReport {
        spec,
        eta: e.eta,
        residual: r.residual,
        quasienergy: r.quasienergy,
        expected_quasienergy: branch.quasienergy(spec.delta),
        decay_constants: [e.decay_constants.0, e.decay_constants.1],
        norm_constant: e.norm_constant,
    };
    match cfg.format(Format::Csv) {
        Format::Json => json(cli, cfg, &report),
        Format::Csv => {
            emit(cfg.out.as_deref(), cli, |w| output::write_edge_csv(&e, w))?;
            match cfg.out.as_deref() {
                Some(path) => side_json(cli, &sibling(path, "residual.json"), &report),
                None => Ok(()),
            }
        }
    }
}

fn side_json<T: Serialize>(cli: &Cli, path: &std::path::Path, value: &T) -> Result<()> {
    write_file(path, |w| output::write_json(value, w))?;
    write_meta(path, cli)
}

fn evolve(cli: &Cli, cfg: &RunConfig, case: &str) -> Result<()> {
    let case: InitialCase = case.parse()?;
    let steps = cfg.steps.unwrap_or(200);
    let spec = cfg.interface(cfg.ring_size.unwrap_or_else(|| default_ring_for_steps(steps)))?;
    let exp = interface_experiment(&spec, case, steps)?;
    match cfg.format(Format::Csv) {
        Format::Json => json(cli, cfg, &exp.record),
        Format::Csv => {
            emit(cfg.out.as_deref(), cli, |w| output::write_trajectory_csv(&exp.observables, w))?;
            match cfg.out.as_deref() {
                Some(path) => side_json(cli, &sibling(path, "experiment.json"), &exp.record),
                None => Ok(()),
            }
        }
    }
}

fn sweep(cli: &Cli, cfg: &RunConfig, lo: Option<f64>, hi: Option<f64>, count: usize) -> Result<()> {
    let lo = lo.map(|x| cfg.angle(x)).transpose()?.unwrap_or(-PI);
    let hi = hi.map(|x| cfg.angle(x)).transpose()?.unwrap_or(PI);
    if count < 2 || hi <= lo {
        return usage("sweep needs --count ≥ 2 and --theta-max > --theta-min");
    }
    let base = cfg.params()?;
    let thetas: Vec<f64> = (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect();
    let rows = thetas
        .par_iter()
        .map(|&t| classify(&base.with_theta(t), cfg.grid))
        .collect::<dtqw_core::Result<Vec<_>>>()?;
    match cfg.format(Format::Csv) {
        Format::Csv => emit(cfg.out.as_deref(), cli, |w| output::write_sweep_csv(&rows, w)),
        Format::Json => json(cli, cfg, &rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(dtqw_core::Error::OddRing { n: 3 }).exit_code(), 2);
        assert_eq!(CliError::Core(dtqw_core::Error::PoleMismatch { k: 0.0, distance: 1.0 }).exit_code(), 3);
        assert_eq!(CliError::Core(dtqw_core::Error::GridTooCoarse { grid: 8, step: 2.0 }).exit_code(), 3);
        assert_eq!(CliError::Core(dtqw_core::Error::Output("disk".into())).exit_code(), 1);
    }

    #[test]
    fn eta_parsing() {
        let cli = <Cli as clap::Parser>::parse_from(["dtqw", "edge", "--degrees"]);
        let Command::Edge { config, .. } = &cli.command else { unreachable!() };
        assert_eq!(parse_eta("pi", config).unwrap(), PI);
        assert!((parse_eta("180", config).unwrap() - PI).abs() < 1e-15);
        assert!(parse_eta("half", config).is_err());
    }
}
