//! Translation-invariant walks in quasimomentum space: the dispersion
//! cos ω_k = cos θ cos(k − α), the Bloch vector n_k, the Bloch Hamiltonian
//! H̄_k = δI + ω_k n_k·σ, band structures and their two gaps.
//!
//! Momentum convention: |k⟩ = Σ_x e^{ikx}|x⟩, so the conditional shift acts as
//! diag(e^{−ik}, e^{ik}) and one step is U_k = diag(e^{−ik}, e^{ik})·C̄ = e^{−iH̄_k}.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{pauli_decompose, wrap_angle, Mat2, Vec3, I};
use crate::coin::{coin_matrix, CoinParams};
use crate::error::{Error, Result};

/// sin ω_k below this marks a gap-closing point where n_k is undefined.
pub const DEGENERATE_EPS: f64 = 1e-9;

pub const DEFAULT_GRID: usize = 512;

pub const MIN_GRID: usize = 8;

/// (sin ω, cos ω) at u = k − α. sin ω is taken from the identity
/// sin²ω = sin²θ + cos²θ sin²u, which stays accurate near the gap closings.
fn omega_parts(p: &CoinParams, u: f64) -> (f64, f64) {
    let (st, ct) = p.theta.sin_cos();
    let (su, cu) = u.sin_cos();
    ((st * st + ct * ct * su * su).sqrt(), ct * cu)
}

fn bloch_from_offset(p: &CoinParams, k: f64, u: f64) -> Result<(f64, Vec3)> {
    let (sin_w, cos_w) = omega_parts(p, u);
    let omega = sin_w.atan2(cos_w);
    if sin_w < DEGENERATE_EPS {
        return Err(Error::DegeneratePoint { k, sin_omega: sin_w });
    }
    let (st, ct) = p.theta.sin_cos();
    // k − α′ = u − β
    let (sb, cb) = (u - p.beta).sin_cos();
    let n = Vec3::new(st * sb, -st * cb, ct * u.sin()).scale(1.0 / sin_w);
    Ok((omega, n))
}

/// ω_k ∈ [0, π] with cos ω_k = cos θ cos(k − α).
pub fn dispersion(p: &CoinParams, k: f64) -> f64 {
    let (s, c) = omega_parts(p, k - p.alpha);
    s.atan2(c)
}

/// Unit vector n_k; fails where the gap closes.
pub fn bloch_vector(p: &CoinParams, k: f64) -> Result<Vec3> {
    bloch_from_offset(p, k, k - p.alpha).map(|(_, n)| n)
}

/// H̄_k = δI + ω_k n_k·σ
pub fn bloch_hamiltonian(p: &CoinParams, k: f64) -> Result<Mat2> {
    let (omega, n) = bloch_from_offset(p, k, k - p.alpha)?;
    Ok(Mat2::scalar(p.delta.into()) + Mat2::sigma_dot(&n).scale(omega.into()))
}

/// One walk step restricted to momentum k: diag(e^{−ik}, e^{ik})·C̄.
pub fn step_matrix(p: &CoinParams, k: f64) -> Mat2 {
    shift_matrix(k) * coin_matrix(p)
}

/// The conditional shift at momentum k.
pub fn shift_matrix(k: f64) -> Mat2 {
    Mat2::diag(Complex64::from_polar(1.0, -k), Complex64::from_polar(1.0, k))
}

/// Reads the Bloch vector off a momentum-space step e^{−iδ}(cos ω − i sin ω n·σ).
/// Returns `None` where sin ω vanishes.
pub fn bloch_vector_from_step(m: &Mat2, delta: f64) -> Option<Vec3> {
    let (_, c) = pauli_decompose(m);
    let phase = I * Complex64::from_polar(1.0, delta);
    let v = Vec3(c.map(|ci| (phase * ci).re));
    let r = v.norm();
    (r >= DEGENERATE_EPS).then(|| v.scale(1.0 / r))
}

/// Special momenta k_j = α + jπ, wrapped to (−π, π].
pub fn special_points(alpha: f64) -> (f64, f64) {
    (wrap_angle(alpha), wrap_angle(alpha + PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub k: f64,
    pub omega: f64,
    /// `None` at gap-closing points.
    pub n: Option<Vec3>,
}

impl BlochPoint {
    pub fn is_degenerate(&self) -> bool {
        self.n.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandStructure {
    pub params: CoinParams,
    pub points: Vec<BlochPoint>,
    pub grid_size: usize,
}

impl BandStructure {
    /// Quasienergies (δ + ω_k, δ − ω_k) wrapped to the first Floquet zone.
    pub fn quasienergies(&self, i: usize) -> (f64, f64) {
        let w = self.points[i].omega;
        let d = self.params.delta;
        (wrap_angle(d + w), wrap_angle(d - w))
    }

    pub fn degenerate_count(&self) -> usize {
        self.points.iter().filter(|p| p.is_degenerate()).count()
    }
}

/// Uniform grid of `n` momenta anchored at k₀ = α, sorted ascending in
/// (−π, π]. Returns (k, k − α) pairs; the offsets are exact multiples of 2π/n
/// so the special points land on the grid whenever n is even.
pub fn k_grid(alpha: f64, n: usize) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let u = wrap_angle(TAU * j as f64 / n as f64);
            (wrap_angle(alpha + u), u)
        })
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts
}

pub fn band_structure(p: &CoinParams, grid_size: usize) -> Result<BandStructure> {
    if grid_size < MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "grid size {grid_size} is below the minimum of {MIN_GRID}"
        )));
    }
    let points = k_grid(p.alpha, grid_size)
        .into_iter()
        .map(|(k, u)| match bloch_from_offset(p, k, u) {
            Ok((omega, n)) => BlochPoint { k, omega, n: Some(n) },
            Err(_) => {
                let (s, c) = omega_parts(p, u);
                BlochPoint { k, omega: s.atan2(c), n: None }
            }
        })
        .collect();
    Ok(BandStructure { params: *p, points, grid_size })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub gap_at_delta: f64,
    pub gap_at_delta_plus_pi: f64,
    pub is_gapped: bool,
}

pub const GAP_TOLERANCE: f64 = 1e-9;

/// Gap widths around δ (2·min ω_k) and δ + π (2·(π − max ω_k)).
pub fn gap_report(b: &BandStructure) -> GapReport {
    let (lo, hi) = b
        .points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.omega), hi.max(p.omega))
        });
    let gap_at_delta = 2.0 * lo;
    let gap_at_delta_plus_pi = 2.0 * (PI - hi);
    GapReport {
        gap_at_delta,
        gap_at_delta_plus_pi,
        is_gapped: gap_at_delta > GAP_TOLERANCE && gap_at_delta_plus_pi > GAP_TOLERANCE,
    }
}
