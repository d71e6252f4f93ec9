//! Symmetry operators of the walk and numerical certificates for their
//! (anti)commutation relations: sublattice Λ, particle-hole Ω = W²K, parity
//! P̄ = i n_β·σ at the Bloch level, the θ-dependent chiral operator Γ̄(θ), and
//! the two time-shifted frames Ũ₁ = C_{1/2} S C_{1/2}, Ũ₂ = C⁽²⁾ S C⁽¹⁾.
//!
//! Ring residuals use the operator norm (largest singular value) for
//! N ≤ 32 and the max-entry norm beyond.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{angle_distance, sign, wrap_angle, Mat2, Vec3, I, ONE};
use crate::coin::{phs_operator, require_commensurate, CoinParams};
use crate::error::{Error, Result};
use crate::lattice::{build_walk, check_ring, diagonalize, site_label, ThetaProfile, WalkOperator};
use crate::linalg::{max_entry, op_norm, CMatrix};
use crate::momentum::{bloch_hamiltonian, bloch_vector_from_step, k_grid, shift_matrix};
use crate::topology::{frame_rotation, winding_about, FrameVariant};

/// Residual threshold for exact operator identities.
pub const OPERATOR_TOLERANCE: f64 = 1e-12;

/// Largest ring whose residuals use the operator norm.
pub const OPERATOR_NORM_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    Operator,
    MaxEntry,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub value: f64,
    pub norm: NormKind,
}

fn ring_residual(m: &CMatrix, n: usize) -> Residual {
    if n <= OPERATOR_NORM_LIMIT {
        Residual { value: op_norm(m), norm: NormKind::Operator }
    } else {
        Residual { value: max_entry(m), norm: NormKind::MaxEntry }
    }
}

/// ‖ΛUΛ⁻¹ + U‖ with Λ = Σ_x (−1)^x |x⟩⟨x| ⊗ I.
pub fn sublattice_residual(u: &WalkOperator) -> Result<Residual> {
    let n = u.ring_size();
    check_ring(n)?;
    let dense = u.to_dense()?;
    let parity = |row: usize| if site_label(row / 2, n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let m = CMatrix::from_fn(2 * n, 2 * n, |r, c| dense[(r, c)] * (parity(r) * parity(c)) + dense[(r, c)]);
    Ok(ring_residual(&m, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhsResidual {
    pub residual: Residual,
    /// Unit-modulus λ minimizing ‖ΩUΩ⁻¹ − λU‖.
    pub global_phase: Complex64,
}

/// ΩUΩ⁻¹ = W² U* W⁻² compared with U up to the best-fitting global phase.
pub fn phs_residual(u: &WalkOperator) -> Result<PhsResidual> {
    let n = u.ring_size();
    require_commensurate(u.params.alpha, n)?;
    let dense = u.to_dense()?;
    let d = phs_operator(u.params.alpha, u.params.beta).w2_diagonal(n);
    let conjugated = CMatrix::from_fn(2 * n, 2 * n, |r, c| d[r] * dense[(r, c)].conj() / d[c]);
    let overlap = (dense.adjoint() * &conjugated).trace();
    let lambda = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    let diff = conjugated - dense * lambda;
    Ok(PhsResidual { residual: ring_residual(&diff, n), global_phase: lambda })
}

/// P̄ = i n_β·σ
pub fn parity_operator(beta: f64) -> Mat2 {
    let (s, c) = beta.sin_cos();
    Mat2::sigma_dot(&Vec3::new(s, c, 0.0)).scale(I)
}

/// ‖P̄ H̄_k P̄⁻¹ − H̄_{2α−k}‖: mirror inversion through k = α.
pub fn parity_residual_bloch(p: &CoinParams, k: f64) -> Result<f64> {
    let h = bloch_hamiltonian(p, k)?;
    let mirrored = bloch_hamiltonian(p, 2.0 * p.alpha - k)?;
    Ok((parity_operator(p.beta).conjugate(&h) - mirrored).op_norm())
}

/// m_θ = (cos θ, 0, −sin θ)
pub fn chiral_vector(theta: f64) -> Vec3 {
    let (s, c) = theta.sin_cos();
    Vec3::new(c, 0.0, -s)
}

/// Γ̄(θ) = e^{−i(π/2) m_θ·σ}
pub fn chiral_operator(theta: f64) -> Mat2 {
    Mat2::exp_i_sigma(-FRAC_PI_2, &chiral_vector(theta))
}

fn traceless_hamiltonian(p: &CoinParams, k: f64) -> Result<Mat2> {
    Ok(bloch_hamiltonian(p, k)? - Mat2::scalar(p.delta.into()))
}

fn anticommutation_residual(gamma: &Mat2, h: &Mat2) -> f64 {
    (gamma.conjugate(h) + *h).op_norm()
}

/// ‖Γ̄(θ)(H̄_k − δI)Γ̄(θ)⁻¹ + (H̄_k − δI)‖, defined for β = 0.
pub fn chiral_residual(p: &CoinParams, k: f64) -> Result<f64> {
    if p.beta.abs() > 1e-12 {
        return Err(Error::BetaNonzero { beta: p.beta });
    }
    chiral_residual_unchecked(p, k)
}

/// The same residual without the β = 0 guard; large for β ≠ 0.
pub fn chiral_residual_unchecked(p: &CoinParams, k: f64) -> Result<f64> {
    Ok(anticommutation_residual(&chiral_operator(p.theta), &traceless_hamiltonian(p, k)?))
}

/// Residual of the θ-independent chiral operator Γ̄ = iγ·σ against the
/// frame-rotated traceless Bloch Hamiltonian V(θ)(H̄_k − δI)V(θ)⁻¹.
pub fn rotated_chiral_residual(p: &CoinParams, v: FrameVariant, k: f64) -> Result<f64> {
    let gamma_axis = v
        .gamma_axis()
        .ok_or_else(|| Error::InvalidArgument("identity frame has no θ-independent chiral axis".into()))?;
    let gamma = Mat2::sigma_dot(&gamma_axis).scale(I);
    let h = frame_rotation(v, p.theta)?.conjugate(&traceless_hamiltonian(p, k)?);
    Ok(anticommutation_residual(&gamma, &h))
}

/// Half coin C̄_{1/2} = e^{−iδ/2} e^{i(θ/2)σ_y}, so that C̄_{1/2}² = C̄.
fn half_coin(p: &CoinParams) -> Mat2 {
    Mat2::exp_i_sigma(p.theta / 2.0, &Vec3::Y).scale(Complex64::from_polar(1.0, -p.delta / 2.0))
}

/// C̄_s = e^{i(π/4)sgn(θ)σ_y}
fn split_coin(theta: f64) -> Result<Mat2> {
    let s = sign(theta).ok_or_else(|| Error::UnsupportedParams("sgn(θ) undefined at θ = 0".into()))?;
    Ok(Mat2::exp_i_sigma(s * FRAC_PI_4, &Vec3::Y))
}

/// (pre-shift, post-shift) coins of a time-shifted frame.
fn timeshift_coins(p: &CoinParams, variant: FrameVariant) -> Result<(Mat2, Mat2)> {
    if p.alpha.abs() > 1e-12 || p.beta.abs() > 1e-12 {
        return Err(Error::UnsupportedParams(
            "time-shifted frames are built for α = β = 0 (coin e^{−iδ}e^{iθσ_y})".into(),
        ));
    }
    let half = half_coin(p);
    match variant {
        FrameVariant::Identity => Ok((crate::coin::coin_matrix(p), Mat2::IDENTITY)),
        FrameVariant::V1 => Ok((half, half)),
        FrameVariant::V2 => {
            let cs = split_coin(p.theta)?;
            // C⁽¹⁾ = C_{1/2} C_s before the shift, C⁽²⁾ = C_s⁻¹ C_{1/2} after it
            Ok((half * cs, cs.inverse() * half))
        }
    }
}

/// Ũ₁ = C_{1/2} S C_{1/2} or Ũ₂ = C⁽²⁾ S C⁽¹⁾ on a ring of `n` sites. The
/// identity variant returns the plain walk.
pub fn timeshift_walk(p: &CoinParams, variant: FrameVariant, n: usize) -> Result<WalkOperator> {
    let profile = ThetaProfile::homogeneous(p.theta, n)?;
    if variant == FrameVariant::Identity {
        timeshift_coins(p, variant)?;
        return build_walk(p, &profile, n);
    }
    let (pre, post) = timeshift_coins(p, variant)?;
    Ok(WalkOperator::with_coins(*p, profile, vec![pre; n], Some(vec![post; n])))
}

/// ‖Ũ − V U V⁻¹‖ with V = I ⊗ V̄(θ) for the given frame.
pub fn timeshift_residual(p: &CoinParams, variant: FrameVariant, n: usize) -> Result<Residual> {
    let shifted = timeshift_walk(p, variant, n)?.to_dense()?;
    let plain = build_walk(p, &ThetaProfile::homogeneous(p.theta, n)?, n)?.to_dense()?;
    let v = frame_rotation(variant, p.theta)?;
    let block = CMatrix::from_fn(2 * n, 2 * n, |r, c| if r / 2 == c / 2 { v.0[r % 2][c % 2] } else { 0.0.into() });
    let vinv = block.adjoint();
    Ok(ring_residual(&(shifted - &block * plain * vinv), n))
}

/// Momentum-space step of a time-shifted frame: C̄_post · diag(e^{−ik}, e^{ik}) · C̄_pre.
pub fn timeshift_bloch_step(p: &CoinParams, variant: FrameVariant, k: f64) -> Result<Mat2> {
    let (pre, post) = timeshift_coins(p, variant)?;
    Ok(post * shift_matrix(k) * pre)
}

/// Winding of the Bloch vectors read off the time-shifted walk itself.
pub fn timeshift_winding(p: &CoinParams, variant: FrameVariant, axis: &Vec3, grid_size: usize) -> Result<i64> {
    p.require_gapped()?;
    let samples = k_grid(p.alpha, grid_size)
        .into_iter()
        .map(|(k, _)| {
            let m = timeshift_bloch_step(p, variant, k)?;
            bloch_vector_from_step(&m, p.delta)
                .map(|n| (k, n))
                .ok_or(Error::DegeneratePoint { k, sin_omega: 0.0 })
        })
        .collect::<Result<Vec<_>>>()?;
    winding_about(&samples, axis)
}

/// Largest displacement between two multisets of phases under a greedy
/// nearest match on the circle; infinite if the sizes differ.
pub fn phase_multiset_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, angle_distance(x, y)))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("sizes match");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// How far the spectrum is from being invariant under ω → ω + π.
pub fn sublattice_pairing_defect(phases: &[f64]) -> f64 {
    let shifted: Vec<f64> = phases.iter().map(|w| wrap_angle(w + PI)).collect();
    phase_multiset_distance(phases, &shifted)
}

/// How far the spectrum is from being symmetric about δ (ω → 2δ − ω).
pub fn particle_hole_pairing_defect(phases: &[f64], delta: f64) -> f64 {
    let reflected: Vec<f64> = phases.iter().map(|w| wrap_angle(2.0 * delta - w)).collect();
    phase_multiset_distance(phases, &reflected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryKind {
    #[serde(rename = "SUB")]
    Sub,
    #[serde(rename = "PHS")]
    Phs,
    #[serde(rename = "PS")]
    Ps,
    #[serde(rename = "CS")]
    Cs,
    TimeShiftV1,
    TimeShiftV2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportContext {
    pub params: CoinParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_phase: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub name: SymmetryKind,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub norm: NormKind,
    pub context: ReportContext,
}

impl SymmetryReport {
    fn new(name: SymmetryKind, residual: f64, norm: NormKind, context: ReportContext) -> Self {
        SymmetryReport {
            name,
            residual,
            tolerance: OPERATOR_TOLERANCE,
            passed: residual < OPERATOR_TOLERANCE,
            norm,
            context,
        }
    }
}

/// Runs every symmetry check applicable to `p` with θ profile `profile` on a
/// ring of `n` sites. Bloch-level checks use the homogeneous coin `p` at the
/// supplied momenta.
pub fn run_symmetry_checks(
    p: &CoinParams,
    profile: &ThetaProfile,
    n: usize,
    momenta: &[f64],
) -> Result<Vec<SymmetryReport>> {
    let ctx = |ring: Option<usize>, k: Option<f64>| ReportContext { params: *p, ring_size: ring, k, global_phase: None };
    let walk = build_walk(p, profile, n)?;
    let mut out = Vec::new();

    let sub = sublattice_residual(&walk)?;
    out.push(SymmetryReport::new(SymmetryKind::Sub, sub.value, sub.norm, ctx(Some(n), None)));

    if crate::coin::is_commensurate(p.alpha, n) {
        let phs = phs_residual(&walk)?;
        let mut c = ctx(Some(n), None);
        c.global_phase = Some([phs.global_phase.re, phs.global_phase.im]);
        out.push(SymmetryReport::new(SymmetryKind::Phs, phs.residual.value, phs.residual.norm, c));
    }

    if p.is_gapped() {
        for &k in momenta {
            if let Ok(r) = parity_residual_bloch(p, k) {
                out.push(SymmetryReport::new(SymmetryKind::Ps, r, NormKind::Operator, ctx(None, Some(k))));
            }
            if p.beta.abs() <= 1e-12 {
                if let Ok(r) = chiral_residual(p, k) {
                    out.push(SymmetryReport::new(SymmetryKind::Cs, r, NormKind::Operator, ctx(None, Some(k))));
                }
            }
        }
    }

    let homogeneous = profile.homogeneous_theta().is_some();
    if homogeneous && p.theta != 0.0 && p.alpha.abs() <= 1e-12 && p.beta.abs() <= 1e-12 {
        for (variant, kind) in [(FrameVariant::V1, SymmetryKind::TimeShiftV1), (FrameVariant::V2, SymmetryKind::TimeShiftV2)] {
            let r = timeshift_residual(p, variant, n)?;
            out.push(SymmetryReport::new(kind, r.value, r.norm, ctx(Some(n), None)));
        }
    }
    Ok(out)
}

/// Sorted eigenphases of a walk.
pub fn eigenphases(u: &WalkOperator) -> Result<Vec<f64>> {
    Ok(diagonalize(u)?.eigenphases)
}
