//! Exact edge states at a sharp interface θ₁ < 0 ≤ θ₂ and the interface
//! dynamics experiments.
//!
//! For x < 0 the amplitudes use A₁ and for x ≥ 0 they use A₂, with
//! A_j = e^{iα}(1 − sin θ_j)/cos θ_j, a_x = A_j^x and
//! b_x = −e^{−i(α+β)} A_j^{x+1}. The state with η = 0 sits at quasienergy δ
//! and the one with η = π at δ + π.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{wrap_angle, Spinor, ONE};
use crate::coin::{phs_operator, CoinParams};
use crate::error::{Error, Result};
use crate::lattice::{
    build_walk, check_ring, diagonalize, evolve, site_label, Observables, SiteWindow, ThetaProfile, WalkOperator,
    WalkerState, INTERFACE_WINDOW,
};

/// Largest tolerated truncation |A₂|^N, |A₁|^{−N}.
pub const TRUNCATION_LIMIT: f64 = 1e-12;

/// Tolerance on plateau and final interface probability.
pub const PROBABILITY_THRESHOLD: f64 = 0.02;

/// Minimum period-2 amplitude of the site-0 density counted as oscillating.
pub const OSCILLATION_THRESHOLD: f64 = 0.05;

/// Fraction of the bulk gap half-width searched for in-gap states.
pub const GAP_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterfaceSpec {
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub ring_size: usize,
}

impl InterfaceSpec {
    pub fn new(delta: f64, alpha: f64, beta: f64, theta1: f64, theta2: f64, ring_size: usize) -> Result<Self> {
        if !(theta1 > -PI && theta1 < 0.0) {
            return Err(Error::InvalidArgument(format!("theta1 = {theta1} must lie in (−π, 0)")));
        }
        if !(theta2 > 0.0 && theta2 < PI) {
            return Err(Error::InvalidArgument(format!("theta2 = {theta2} must lie in (0, π)")));
        }
        check_ring(ring_size)?;
        Ok(InterfaceSpec { delta, alpha, beta, theta1, theta2, ring_size })
    }

    /// (δ, α, β) = (0, 0, π/2), θ = ∓π/4.
    pub fn reference(ring_size: usize) -> Result<Self> {
        InterfaceSpec::new(0.0, 0.0, PI / 2.0, -PI / 4.0, PI / 4.0, ring_size)
    }

    pub fn with_ring_size(&self, ring_size: usize) -> Result<Self> {
        InterfaceSpec::new(self.delta, self.alpha, self.beta, self.theta1, self.theta2, ring_size)
    }

    pub fn params_left(&self) -> CoinParams {
        CoinParams::new(self.delta, self.alpha, self.beta, self.theta1)
    }

    pub fn params_right(&self) -> CoinParams {
        CoinParams::new(self.delta, self.alpha, self.beta, self.theta2)
    }

    pub fn profile(&self) -> Result<ThetaProfile> {
        ThetaProfile::sharp_interface(self.theta1, self.theta2, self.ring_size)
    }

    pub fn walk(&self) -> Result<WalkOperator> {
        build_walk(&self.params_right(), &self.profile()?, self.ring_size)
    }

    /// 1/sin θ₂ − 1/sin θ₁
    pub fn norm_constant(&self) -> f64 {
        1.0 / self.theta2.sin() - 1.0 / self.theta1.sin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeBranch {
    Zero,
    Pi,
}

impl EdgeBranch {
    pub fn eta(self) -> f64 {
        match self {
            EdgeBranch::Zero => 0.0,
            EdgeBranch::Pi => PI,
        }
    }

    pub fn from_eta(eta: f64) -> Result<Self> {
        if wrap_angle(eta).abs() < 1e-12 {
            Ok(EdgeBranch::Zero)
        } else if (wrap_angle(eta) - PI).abs() < 1e-12 {
            Ok(EdgeBranch::Pi)
        } else {
            Err(Error::InvalidArgument(format!("eta = {eta} must be 0 or π")))
        }
    }

    /// Gap centre hosting this branch.
    pub fn quasienergy(self, delta: f64) -> f64 {
        wrap_angle(delta + self.eta())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeState {
    pub eta: f64,
    pub state: WalkerState,
    pub decay_constants: (Complex64, Complex64),
    pub norm_constant: f64,
    pub spec: InterfaceSpec,
}

/// A_j = e^{iα}(1 − sin θ_j)/cos θ_j
pub fn decay_constant(alpha: f64, theta: f64) -> Complex64 {
    Complex64::from_polar((1.0 - theta.sin()) / theta.cos(), alpha)
}

/// Unnormalized amplitudes (a_x, b_x) at label `x` before the e^{iηx} factor.
pub fn edge_amplitudes(spec: &InterfaceSpec, x: i64) -> Spinor {
    let a = if x < 0 { decay_constant(spec.alpha, spec.theta1) } else { decay_constant(spec.alpha, spec.theta2) };
    let pre = -Complex64::from_polar(1.0, -(spec.alpha + spec.beta));
    Spinor::new(a.powi(x as i32), pre * a.powi(x as i32 + 1))
}

pub fn analytic_edge_state(spec: &InterfaceSpec, eta: f64) -> Result<EdgeState> {
    let branch = EdgeBranch::from_eta(eta)?;
    let n = spec.ring_size;
    let a1 = decay_constant(spec.alpha, spec.theta1);
    let a2 = decay_constant(spec.alpha, spec.theta2);
    let tail_right = a2.norm().powi(n as i32);
    let tail_left = a1.norm().powi(-(n as i32));
    if tail_right >= TRUNCATION_LIMIT || tail_left >= TRUNCATION_LIMIT {
        return Err(Error::RingTooSmall {
            n,
            reason: format!("|A2|^N = {tail_right:.3e}, |A1|^-N = {tail_left:.3e}"),
        });
    }
    let norm_constant = spec.norm_constant();
    let scale = 1.0 / norm_constant.sqrt();
    let amps = (0..n)
        .map(|i| {
            let x = site_label(i, n);
            let phase = if branch == EdgeBranch::Pi && x.rem_euclid(2) == 1 { -scale } else { scale };
            edge_amplitudes(spec, x).scale(phase.into())
        })
        .collect();
    let state = WalkerState::from_amplitudes(amps).normalized()?;
    Ok(EdgeState { eta: branch.eta(), state, decay_constants: (a1, a2), norm_constant, spec: *spec })
}

/// Σ_x (|a_x|² + |b_x|²) over labels in [−m, m).
pub fn truncated_norm(spec: &InterfaceSpec, m: i64) -> f64 {
    (-m..m).map(|x| edge_amplitudes(spec, x).norm_sqr()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResidual {
    pub residual: f64,
    pub quasienergy: f64,
}

/// ‖U|ψ⟩ − e^{−iω}|ψ⟩‖ with ω from the Rayleigh quotient.
pub fn eigen_residual(u: &WalkOperator, e: &EdgeState) -> Result<EigenResidual> {
    let spec = &e.spec;
    if u.ring_size() != spec.ring_size || u.profile != spec.profile()? || u.is_time_shifted() {
        return Err(Error::SpecMismatch("walk operator does not match the interface".into()));
    }
    let p = &u.params;
    if (p.delta - wrap_angle(spec.delta)).abs() > 1e-12
        || (p.alpha - wrap_angle(spec.alpha)).abs() > 1e-12
        || (p.beta - wrap_angle(spec.beta)).abs() > 1e-12
    {
        return Err(Error::SpecMismatch("walk coin phases differ from the interface".into()));
    }
    let image = u.apply(&e.state)?;
    let lambda = e.state.inner(&image)?;
    let quasienergy = wrap_angle(-lambda.arg());
    let rotated = Complex64::from_polar(1.0, -quasienergy);
    let residual = image.axpy(-rotated, &e.state)?.norm();
    Ok(EigenResidual { residual, quasienergy })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapDecomposition {
    pub projections: Vec<Complex64>,
    pub remainder_norm: f64,
}

pub fn overlap_decomposition(s: &WalkerState, edges: &[EdgeState]) -> Result<OverlapDecomposition> {
    let projections = edges.iter().map(|e| e.state.inner(s)).collect::<Result<Vec<_>>>()?;
    let captured: f64 = projections.iter().map(|p| p.norm_sqr()).sum();
    let remainder_norm = (s.norm_sqr() - captured).max(0.0).sqrt();
    Ok(OverlapDecomposition { projections, remainder_norm })
}

/// |⟨Ωψ|ψ⟩| for the particle-hole operator of the interface.
pub fn phs_ray_overlap(e: &EdgeState) -> Result<f64> {
    let image = phs_operator(e.spec.alpha, e.spec.beta).apply(&e.state);
    Ok(image.inner(&e.state)?.norm())
}

/// Removes the components along `basis` (assumed orthonormal) and normalizes.
pub fn gram_schmidt(s: &WalkerState, basis: &[&WalkerState]) -> Result<WalkerState> {
    let mut out = s.clone();
    for _ in 0..2 {
        for b in basis {
            let c = b.inner(&out)?;
            out = out.axpy(-c, b)?;
        }
    }
    out.normalized()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialCase {
    OrthogonalToBoth,
    OverlapOne,
    OverlapBoth,
}

impl InitialCase {
    pub const ALL: [InitialCase; 3] = [InitialCase::OrthogonalToBoth, InitialCase::OverlapOne, InitialCase::OverlapBoth];
}

impl std::str::FromStr for InitialCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "orthogonaltoboth" | "orthogonal" => Ok(InitialCase::OrthogonalToBoth),
            "overlapone" | "one" => Ok(InitialCase::OverlapOne),
            "overlapboth" | "both" => Ok(InitialCase::OverlapBoth),
            _ => Err(Error::InvalidArgument(format!("unknown case '{s}'"))),
        }
    }
}

/// Smallest ring accepted for a `steps`-step experiment.
pub fn min_ring_for_steps(steps: usize) -> usize {
    2 * steps + 2 * INTERFACE_WINDOW as usize + 2
}

/// Default ring for a `steps`-step experiment.
pub fn default_ring_for_steps(steps: usize) -> usize {
    (2 * steps + 64).max(128)
}

/// Two-site spinor with a₀ = b₋₁ = 1, normalized.
pub fn interface_probe(n: usize) -> Result<WalkerState> {
    check_ring(n)?;
    let mut s = WalkerState::zeros(n);
    let i0 = crate::lattice::site_index(0, n);
    let im1 = crate::lattice::site_index(-1, n);
    s.amplitudes_mut()[i0].right = ONE;
    s.amplitudes_mut()[im1].left = ONE;
    s.normalized()
}

/// Initial state for a case, built from the two analytic edge states.
pub fn interface_initial_state(case: InitialCase, zero: &EdgeState, pi: &EdgeState) -> Result<WalkerState> {
    let probe = gram_schmidt(&interface_probe(zero.state.len())?, &[&zero.state, &pi.state])?;
    let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    match case {
        InitialCase::OrthogonalToBoth => Ok(probe),
        InitialCase::OverlapOne => zero.state.scale(half).axpy(half, &probe)?.normalized(),
        InitialCase::OverlapBoth => zero.state.scale(half).axpy(half, &pi.state)?.normalized(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub case: InitialCase,
    pub spec: InterfaceSpec,
    pub steps: usize,
    pub window_half_width: i64,
    /// ⟨Ψ_0|init⟩ and ⟨Ψ_π|init⟩.
    pub edge_projections: Vec<Complex64>,
    pub predicted: f64,
    pub plateau: f64,
    pub final_interface_prob: f64,
    pub oscillation_amplitude: f64,
    pub oscillating: bool,
    pub probability_threshold: f64,
    pub oscillation_threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub record: ExperimentRecord,
    pub observables: Vec<Observables>,
    pub final_state: WalkerState,
}

fn last_quarter<T>(xs: &[T]) -> &[T] {
    let start = xs.len() - (xs.len() / 4).max(1);
    &xs[start..]
}

pub fn interface_experiment(spec: &InterfaceSpec, case: InitialCase, steps: usize) -> Result<Experiment> {
    let n = spec.ring_size;
    let need = min_ring_for_steps(steps);
    if n < need {
        return Err(Error::RingTooSmall { n, reason: format!("{steps} steps need N ≥ {need}") });
    }
    let zero = analytic_edge_state(spec, 0.0)?;
    let pi = analytic_edge_state(spec, PI)?;
    let init = interface_initial_state(case, &zero, &pi)?;
    let projections = overlap_decomposition(&init, &[zero, pi])?.projections;
    let predicted: f64 = projections.iter().map(|p| p.norm_sqr()).sum();

    let u = spec.walk()?;
    let window = SiteWindow::interface();
    let origin = crate::lattice::site_index(0, n);
    let mut densities = Vec::with_capacity(steps + 1);
    let mut observables = Vec::with_capacity(steps + 1);
    let mut s = init;
    for t in 0..=steps {
        if t > 0 {
            s = u.apply(&s)?;
        }
        densities.push(s.amplitudes()[origin].norm_sqr());
        let (mean_x, sigma_x) = s.position_moments();
        observables.push(Observables { t, interface_prob: s.window_probability(window), mean_x, sigma_x });
    }

    let tail = last_quarter(&observables);
    let plateau = tail.iter().map(|o| o.interface_prob).sum::<f64>() / tail.len() as f64;
    let final_interface_prob = observables.last().map(|o| o.interface_prob).unwrap_or(0.0);
    let dens = last_quarter(&densities);
    let oscillation_amplitude = if dens.len() < 2 {
        0.0
    } else {
        dens.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (2.0 * (dens.len() - 1) as f64)
    };
    let oscillating = oscillation_amplitude > OSCILLATION_THRESHOLD;
    let passed = match case {
        InitialCase::OrthogonalToBoth => final_interface_prob < PROBABILITY_THRESHOLD,
        InitialCase::OverlapOne => (plateau - predicted).abs() < PROBABILITY_THRESHOLD && !oscillating,
        InitialCase::OverlapBoth => (plateau - predicted).abs() < PROBABILITY_THRESHOLD && oscillating,
    };
    let record = ExperimentRecord {
        case,
        spec: *spec,
        steps,
        window_half_width: INTERFACE_WINDOW,
        edge_projections: projections,
        predicted,
        plateau,
        final_interface_prob,
        oscillation_amplitude,
        oscillating,
        probability_threshold: PROBABILITY_THRESHOLD,
        oscillation_threshold: OSCILLATION_THRESHOLD,
        passed,
    };
    Ok(Experiment { record, observables, final_state: s })
}

/// Evolution of an arbitrary state under the interface walk.
pub fn evolve_interface(spec: &InterfaceSpec, s0: &WalkerState, steps: usize) -> Result<crate::lattice::Trajectory> {
    evolve(&spec.walk()?, s0, steps, steps.max(1))
}

/// Half-width of the bulk gaps around δ and δ + π for coin angle θ.
pub fn bulk_gap_half_width(theta: f64) -> f64 {
    theta.cos().abs().acos()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapStateCount {
    pub theta1: f64,
    pub theta2: f64,
    pub ring_size: usize,
    /// Eigenstates within the search window of δ.
    pub near_delta: usize,
    /// Eigenstates within the search window of δ + π.
    pub near_delta_plus_pi: usize,
    /// Summed gap-state weight in the half ring around x = 0.
    pub weight_origin: f64,
    /// Summed gap-state weight in the half ring around the wrap point.
    pub weight_wrap: f64,
}

impl GapStateCount {
    pub fn total(&self) -> usize {
        self.near_delta + self.near_delta_plus_pi
    }

    /// Gap states bound to each interface, rounded from window weights.
    pub fn per_interface(&self) -> (usize, usize) {
        (self.weight_origin.round() as usize, self.weight_wrap.round() as usize)
    }
}

/// In-gap eigenstates of the θ₁|θ₂ ring (any signs) and their localization.
pub fn count_gap_states(p: &CoinParams, theta1: f64, theta2: f64, n: usize) -> Result<GapStateCount> {
    let profile = ThetaProfile::sharp_interface(theta1, theta2, n)?;
    let u = build_walk(p, &profile, n)?;
    let spec = diagonalize(&u)?;
    let half_width = GAP_FRACTION * bulk_gap_half_width(theta1).min(bulk_gap_half_width(theta2));
    let near_delta = spec.near(p.delta, half_width);
    let near_pi = spec.near(wrap_angle(p.delta + PI), half_width);
    let quarter = n as i64 / 4;
    let origin = SiteWindow::new(-1, quarter);
    let wrap = SiteWindow::new(n as i64 / 2 - 1, quarter);
    let (mut weight_origin, mut weight_wrap) = (0.0, 0.0);
    for &i in near_delta.iter().chain(&near_pi) {
        weight_origin += spec.eigenvectors[i].window_probability(origin);
        weight_wrap += spec.eigenvectors[i].window_probability(wrap);
    }
    Ok(GapStateCount {
        theta1,
        theta2,
        ring_size: n,
        near_delta: near_delta.len(),
        near_delta_plus_pi: near_pi.len(),
        weight_origin,
        weight_wrap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn decay_constant_values() {
        let a2 = decay_constant(0.0, FRAC_PI_4);
        assert!((a2.norm() - (SQRT_2 - 1.0)).abs() < 1e-15);
        for &t in &[0.3, 1.2, -0.8, 2.7, -2.2] {
            let a = decay_constant(0.7, t);
            let expect = (1.0 - f64::sin(t)) / (1.0 + f64::sin(t));
            assert!((a.norm_sqr() - expect).abs() < 1e-12 * expect.max(1.0));
        }
    }

    #[test]
    fn norm_constant_reference() {
        let spec = InterfaceSpec::reference(64).unwrap();
        assert!((spec.norm_constant() - 2.0 * SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn spec_domain_checked() {
        assert!(InterfaceSpec::new(0.0, 0.0, 0.0, 0.3, 0.5, 64).is_err());
        assert!(InterfaceSpec::new(0.0, 0.0, 0.0, -0.3, -0.5, 64).is_err());
        assert!(matches!(InterfaceSpec::new(0.0, 0.0, 0.0, -0.3, 0.5, 63), Err(Error::OddRing { .. })));
    }

    #[test]
    fn real_amplitudes_at_zero_phases() {
        let spec = InterfaceSpec::new(0.0, 0.0, 0.0, -0.6, 0.9, 64).unwrap();
        for x in -5..5 {
            let s = edge_amplitudes(&spec, x);
            assert!(s.right.im.abs() < 1e-15 && s.left.im.abs() < 1e-15);
            assert!((s.left + edge_amplitudes(&spec, x + 1).right).norm() < 1e-15);
        }
    }

    #[test]
    fn ring_too_small() {
        let spec = InterfaceSpec::reference(16).unwrap();
        assert!(matches!(analytic_edge_state(&spec, 0.0), Err(Error::RingTooSmall { .. })));
        assert!(analytic_edge_state(&spec.with_ring_size(64).unwrap(), 1.0).is_err());
    }

    #[test]
    fn edge_states_are_eigenstates() {
        let spec = InterfaceSpec::reference(64).unwrap();
        let u = spec.walk().unwrap();
        for (eta, target) in [(0.0, 0.0), (PI, PI)] {
            let e = analytic_edge_state(&spec, eta).unwrap();
            let r = eigen_residual(&u, &e).unwrap();
            assert!(r.residual < 1e-8, "{r:?}");
            assert!(crate::algebra::angle_distance(r.quasienergy, target) < 1e-8);
        }
    }

    #[test]
    fn complex_phases_and_delta() {
        let spec = InterfaceSpec::new(0.4, 0.9, -1.3, -1.1, 0.7, 96).unwrap();
        let u = spec.walk().unwrap();
        for branch in [EdgeBranch::Zero, EdgeBranch::Pi] {
            let e = analytic_edge_state(&spec, branch.eta()).unwrap();
            let r = eigen_residual(&u, &e).unwrap();
            assert!(r.residual < 1e-8);
            assert!(crate::algebra::angle_distance(r.quasienergy, branch.quasienergy(spec.delta)) < 1e-8);
        }
    }

    #[test]
    fn mismatched_walk_rejected() {
        let spec = InterfaceSpec::reference(64).unwrap();
        let e = analytic_edge_state(&spec, 0.0).unwrap();
        let other = InterfaceSpec::new(0.0, 0.0, 0.0, -FRAC_PI_4, FRAC_PI_4, 64).unwrap().walk().unwrap();
        assert!(matches!(eigen_residual(&other, &e), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn orthogonal_and_phs_singlets() {
        let spec = InterfaceSpec::reference(64).unwrap();
        let z = analytic_edge_state(&spec, 0.0).unwrap();
        let p = analytic_edge_state(&spec, PI).unwrap();
        assert!(z.state.inner(&p.state).unwrap().norm() < 1e-10);
        assert!((phs_ray_overlap(&z).unwrap() - 1.0).abs() < 1e-8);
        assert!((phs_ray_overlap(&p).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn overlap_of_edge_itself() {
        let spec = InterfaceSpec::reference(64).unwrap();
        let z = analytic_edge_state(&spec, 0.0).unwrap();
        let p = analytic_edge_state(&spec, PI).unwrap();
        let d = overlap_decomposition(&z.state, &[z.clone(), p.clone()]).unwrap();
        assert!((d.projections[0].norm() - 1.0).abs() < 1e-12);
        assert!(d.remainder_norm < 1e-6);
        let probe = gram_schmidt(&interface_probe(64).unwrap(), &[&z.state, &p.state]).unwrap();
        let d = overlap_decomposition(&probe, &[z, p]).unwrap();
        assert!(d.projections.iter().all(|c| c.norm() < 1e-12));
    }

    #[test]
    fn experiment_ring_precondition() {
        let spec = InterfaceSpec::reference(64).unwrap();
        assert!(matches!(interface_experiment(&spec, InitialCase::OverlapOne, 200), Err(Error::RingTooSmall { .. })));
    }

    #[test]
    fn short_experiments() {
        let spec = InterfaceSpec::reference(min_ring_for_steps(40).max(128)).unwrap();
        let both = interface_experiment(&spec, InitialCase::OverlapBoth, 40).unwrap();
        assert!(both.record.oscillating);
        assert!((both.record.predicted - 1.0).abs() < 1e-10);
        let one = interface_experiment(&spec, InitialCase::OverlapOne, 40).unwrap();
        assert!((one.record.predicted - 0.5).abs() < 1e-10);
        assert!(!one.record.oscillating);
        assert_eq!(one.observables.len(), 41);
    }

    #[test]
    fn case_parsing() {
        assert_eq!("overlap-both".parse::<InitialCase>().unwrap(), InitialCase::OverlapBoth);
        assert_eq!("OrthogonalToBoth".parse::<InitialCase>().unwrap(), InitialCase::OrthogonalToBoth);
        assert!("none".parse::<InitialCase>().is_err());
    }

    #[test]
    fn gap_states_reference_interface() {
        let c = count_gap_states(&CoinParams::new(0.0, 0.0, PI / 2.0, 0.0), -FRAC_PI_4, FRAC_PI_4, 64).unwrap();
        assert_eq!((c.near_delta, c.near_delta_plus_pi), (2, 2));
        assert_eq!(c.per_interface(), (2, 2));
        let c = count_gap_states(&CoinParams::new(0.0, 0.0, PI / 2.0, 0.0), 0.5, FRAC_PI_4, 64).unwrap();
        assert_eq!(c.total(), 0);
    }
}
