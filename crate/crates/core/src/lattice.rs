//! Position-space walks on a ring of N sites labelled −N/2 … N/2−1.
//!
//! One step applies the site coins and then the conditional shift: the |→⟩
//! amplitude moves x → x+1 and the |←⟩ amplitude x → x−1, wrapping around
//! the ring. Time-shifted walks additionally apply a post-shift coin.
//! Vectors are flattened as index 2·i + c with i the site index and c = 0
//! for |→⟩, 1 for |←⟩.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{wrap_angle, Mat2, Spinor, ZERO};
use crate::coin::{coin_matrix_at, CoinParams};
use crate::error::{Error, Result};
use crate::linalg::{eig_unitary, CMatrix, CVector};

/// Largest ring for which dense matrices are materialized.
pub const DENSE_LIMIT: usize = 512;

/// Half-width of the interface window used for interface probabilities.
pub const INTERFACE_WINDOW: i64 = 5;

pub fn site_label(i: usize, n: usize) -> i64 {
    i as i64 - (n / 2) as i64
}

pub fn site_index(x: i64, n: usize) -> usize {
    (x + (n / 2) as i64).rem_euclid(n as i64) as usize
}

pub fn check_ring(n: usize) -> Result<()> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::OddRing { n });
    }
    Ok(())
}

/// Per-site coin angle θ_x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaProfile {
    thetas: Vec<f64>,
}

impl ThetaProfile {
    pub fn homogeneous(theta: f64, n: usize) -> Result<Self> {
        check_ring(n)?;
        Ok(ThetaProfile { thetas: vec![wrap_angle(theta); n] })
    }

    /// θ₁ for x < 0 and θ₂ for x ≥ 0. The ring has a second domain wall
    /// where N/2 − 1 meets −N/2.
    pub fn sharp_interface(theta1: f64, theta2: f64, n: usize) -> Result<Self> {
        check_ring(n)?;
        let (t1, t2) = (wrap_angle(theta1), wrap_angle(theta2));
        let thetas = (0..n).map(|i| if site_label(i, n) < 0 { t1 } else { t2 }).collect();
        Ok(ThetaProfile { thetas })
    }

    pub fn from_thetas(thetas: Vec<f64>) -> Result<Self> {
        check_ring(thetas.len())?;
        Ok(ThetaProfile { thetas: thetas.into_iter().map(wrap_angle).collect() })
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn at(&self, x: i64) -> f64 {
        self.thetas[site_index(x, self.len())]
    }

    pub fn homogeneous_theta(&self) -> Option<f64> {
        let first = *self.thetas.first()?;
        self.thetas.iter().all(|&t| t == first).then_some(first)
    }

    /// Number of sites where θ differs from the left neighbour (cyclically).
    pub fn domain_walls(&self) -> usize {
        let n = self.len();
        (0..n).filter(|&i| self.thetas[i] != self.thetas[(i + n - 1) % n]).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkerState {
    amps: Vec<Spinor>,
}

impl WalkerState {
    pub fn zeros(n: usize) -> Self {
        WalkerState { amps: vec![Spinor::default(); n] }
    }

    pub fn from_amplitudes(amps: Vec<Spinor>) -> Self {
        WalkerState { amps }
    }

    /// A single-site state at label `x`, normalized.
    pub fn localized(n: usize, x: i64, spinor: Spinor) -> Result<Self> {
        check_ring(n)?;
        let mut s = WalkerState::zeros(n);
        s.amps[site_index(x, n)] = spinor;
        s.normalized()
    }

    pub fn from_vector(v: &CVector) -> Self {
        let amps = (0..v.len() / 2).map(|i| Spinor::new(v[2 * i], v[2 * i + 1])).collect();
        WalkerState { amps }
    }

    pub fn to_vector(&self) -> CVector {
        CVector::from_iterator(2 * self.len(), self.amps.iter().flat_map(|a| [a.right, a.left]))
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Spinor] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Spinor] {
        &mut self.amps
    }

    pub fn at(&self, x: i64) -> Spinor {
        self.amps[site_index(x, self.len())]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Spinor::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument("cannot normalize a zero state".into()));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        WalkerState { amps: self.amps.iter().map(|a| a.scale(s)).collect() }
    }

    fn check_len(&self, other: &WalkerState) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &WalkerState) -> Result<Complex64> {
        self.check_len(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.inner(b)).sum())
    }

    /// self + c·other
    pub fn axpy(&self, c: Complex64, other: &WalkerState) -> Result<Self> {
        self.check_len(other)?;
        let amps = self.amps.iter().zip(&other.amps).map(|(a, b)| *a + b.scale(c)).collect();
        Ok(WalkerState { amps })
    }

    /// Probability per site index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(Spinor::norm_sqr).collect()
    }

    /// Probability within ring distance `half_width` of label `center`.
    pub fn window_probability(&self, window: SiteWindow) -> f64 {
        let n = self.len();
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| window.contains(site_label(*i, n), n))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Mean and standard deviation of the site label.
    pub fn position_moments(&self) -> (f64, f64) {
        let n = self.len();
        let total = self.norm_sqr();
        let (m1, m2) = self.amps.iter().enumerate().fold((0.0, 0.0), |(m1, m2), (i, a)| {
            let x = site_label(i, n) as f64;
            let p = a.norm_sqr();
            (m1 + p * x, m2 + p * x * x)
        });
        let mean = m1 / total;
        (mean, (m2 / total - mean * mean).max(0.0).sqrt())
    }

    /// Moves every amplitude by `shift` sites around the ring.
    pub fn translated(&self, shift: i64) -> Self {
        let n = self.len();
        let mut amps = vec![Spinor::default(); n];
        for (i, a) in self.amps.iter().enumerate() {
            amps[(i as i64 + shift).rem_euclid(n as i64) as usize] = *a;
        }
        WalkerState { amps }
    }

    /// Inverse participation ratio Σ_x p_x² of the normalized distribution.
    pub fn ipr(&self) -> f64 {
        let total = self.norm_sqr();
        self.amps.iter().map(|a| (a.norm_sqr() / total).powi(2)).sum()
    }
}

/// Sites within ring distance `half_width` of `center`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteWindow {
    pub center: i64,
    pub half_width: i64,
}

impl SiteWindow {
    pub fn new(center: i64, half_width: i64) -> Self {
        SiteWindow { center, half_width }
    }

    pub fn interface() -> Self {
        SiteWindow::new(0, INTERFACE_WINDOW)
    }

    pub fn contains(&self, x: i64, n: usize) -> bool {
        let d = (x - self.center).rem_euclid(n as i64);
        d.min(n as i64 - d) <= self.half_width
    }

    pub fn size(&self, n: usize) -> usize {
        ((2 * self.half_width + 1) as usize).min(n)
    }
}

/// U = Post · S · C on a ring. `post` is absent for the plain walk U = SC.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkOperator {
    pub params: CoinParams,
    pub profile: ThetaProfile,
    coins: Vec<Mat2>,
    post: Option<Vec<Mat2>>,
}

pub fn build_walk(p: &CoinParams, profile: &ThetaProfile, n: usize) -> Result<WalkOperator> {
    check_ring(n)?;
    if profile.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: profile.len() });
    }
    let coins = profile.thetas().iter().map(|&t| coin_matrix_at(p, t)).collect();
    Ok(WalkOperator { params: *p, profile: profile.clone(), coins, post: None })
}

impl WalkOperator {
    /// Walk Post·S·Pre with arbitrary per-site coins.
    pub(crate) fn with_coins(
        params: CoinParams,
        profile: ThetaProfile,
        pre: Vec<Mat2>,
        post: Option<Vec<Mat2>>,
    ) -> Self {
        WalkOperator { params, profile, coins: pre, post }
    }

    pub fn ring_size(&self) -> usize {
        self.coins.len()
    }

    pub fn is_time_shifted(&self) -> bool {
        self.post.is_some()
    }

    pub fn apply(&self, s: &WalkerState) -> Result<WalkerState> {
        let n = self.ring_size();
        if s.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: s.len() });
        }
        let mut out = vec![Spinor::default(); n];
        for (i, (c, a)) in self.coins.iter().zip(s.amplitudes()).enumerate() {
            let t = c.apply(a);
            out[(i + 1) % n].right = t.right;
            out[(i + n - 1) % n].left = t.left;
        }
        if let Some(post) = &self.post {
            for (a, c) in out.iter_mut().zip(post) {
                *a = c.apply(a);
            }
        }
        Ok(WalkerState::from_amplitudes(out))
    }

    /// The 2N × 2N unitary.
    pub fn to_dense(&self) -> Result<CMatrix> {
        let n = self.ring_size();
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge { n, limit: DENSE_LIMIT });
        }
        let mut u = CMatrix::zeros(2 * n, 2 * n);
        let mut basis = WalkerState::zeros(n);
        for col in 0..2 * n {
            let i = col / 2;
            let unit = Spinor::new(
                if col % 2 == 0 { 1.0.into() } else { ZERO },
                if col % 2 == 1 { 1.0.into() } else { ZERO },
            );
            basis.amplitudes_mut()[i] = unit;
            let image = self.apply(&basis)?;
            for (r, v) in image.to_vector().iter().enumerate() {
                u[(r, col)] = *v;
            }
            basis.amplitudes_mut()[i] = Spinor::default();
        }
        Ok(u)
    }
}

/// |Ψ(t+1)⟩ = U|Ψ(t)⟩
pub fn step(u: &WalkOperator, s: &WalkerState) -> Result<WalkerState> {
    u.apply(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub t: usize,
    pub interface_prob: f64,
    pub mean_x: f64,
    pub sigma_x: f64,
}

impl Observables {
    fn measure(t: usize, s: &WalkerState, window: SiteWindow) -> Self {
        let (mean_x, sigma_x) = s.position_moments();
        Observables { t, interface_prob: s.window_probability(window), mean_x, sigma_x }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: usize,
    pub state: WalkerState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub observables: Vec<Observables>,
}

impl Trajectory {
    pub fn final_state(&self) -> &WalkerState {
        &self.snapshots.last().expect("trajectory always holds the initial state").state
    }
}

/// Evolves `steps` steps, measuring the interface window every step and
/// keeping a snapshot every `record_every` steps plus the final state.
pub fn evolve(u: &WalkOperator, s0: &WalkerState, steps: usize, record_every: usize) -> Result<Trajectory> {
    evolve_windowed(u, s0, steps, record_every, SiteWindow::interface())
}

pub fn evolve_windowed(
    u: &WalkOperator,
    s0: &WalkerState,
    steps: usize,
    record_every: usize,
    window: SiteWindow,
) -> Result<Trajectory> {
    if record_every == 0 {
        return Err(Error::InvalidArgument("record_every must be positive".into()));
    }
    if s0.len() != u.ring_size() {
        return Err(Error::DimensionMismatch { expected: u.ring_size(), found: s0.len() });
    }
    let mut snapshots = vec![Snapshot { t: 0, state: s0.clone() }];
    let mut observables = vec![Observables::measure(0, s0, window)];
    let mut s = s0.clone();
    for t in 1..=steps {
        s = u.apply(&s)?;
        observables.push(Observables::measure(t, &s, window));
        if t % record_every == 0 || t == steps {
            snapshots.push(Snapshot { t, state: s.clone() });
        }
    }
    Ok(Trajectory { snapshots, observables })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    /// Quasienergies ω in (−π, π] with U v = e^{−iω} v, ascending.
    pub eigenphases: Vec<f64>,
    pub eigenvectors: Vec<WalkerState>,
    pub ipr: Vec<f64>,
}

impl SpectralData {
    pub fn len(&self) -> usize {
        self.eigenphases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenphases.is_empty()
    }

    /// Indices of eigenphases within `tol` of `target` on the circle.
    pub fn near(&self, target: f64, tol: f64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| crate::algebra::angle_distance(self.eigenphases[i], target) < tol)
            .collect()
    }
}

pub fn diagonalize(u: &WalkOperator) -> Result<SpectralData> {
    let dense = u.to_dense()?;
    let mut pairs: Vec<(f64, WalkerState)> = eig_unitary(&dense)
        .into_iter()
        .map(|(lambda, v)| (wrap_angle(-lambda.arg()), WalkerState::from_vector(&v)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ipr = pairs.iter().map(|(_, v)| v.ipr()).collect();
    let (eigenphases, eigenvectors) = pairs.into_iter().unzip();
    Ok(SpectralData { eigenphases, eigenvectors, ipr })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalizationEntry {
    pub index: usize,
    pub eigenphase: f64,
    pub window_weight: f64,
    pub ipr: f64,
}

/// Weight of every eigenvector inside `window`, heaviest first.
pub fn localization_report(spec: &SpectralData, window: SiteWindow) -> Vec<LocalizationEntry> {
    let mut rows: Vec<LocalizationEntry> = spec
        .eigenvectors
        .iter()
        .enumerate()
        .map(|(index, v)| LocalizationEntry {
            index,
            eigenphase: spec.eigenphases[index],
            window_weight: v.window_probability(window).clamp(0.0, 1.0),
            ipr: spec.ipr[index],
        })
        .collect();
    rows.sort_by(|a, b| b.window_weight.total_cmp(&a.window_weight).then(a.index.cmp(&b.index)));
    rows
}

/// Lattice momenta 2πm/N of a ring.
pub fn lattice_momenta(n: usize) -> Vec<f64> {
    (0..n).map(|m| wrap_angle(2.0 * PI * m as f64 / n as f64)).collect()
}
