//! Topology of the Brillouin-zone maps f_{θ,±}(k) = ±n_k.
//!
//! The union M_T of all gapped images is the Bloch sphere minus the great
//! circle through the Z-axis and ±n_β, with the poles ±n_β added back. It
//! retracts onto a circle, so every map has a winding number, and that
//! winding is the same for every θ ∈ T. What separates θ > 0 from θ < 0 is
//! which pole the map passes through at each special momentum k₀ = α and
//! k₁ = α + π. Recording both pole hits together with the winding gives the
//! relative-homotopy invariant.
//!
//! Orientation: angles in the plane of a winding axis a are measured from e₁
//! toward e₂ where (e₁, e₂, a) is right-handed. For M_T the basis is
//! (n_β, e_w) with e_w = Z × n_β.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::algebra::{rotate_by, sign, wrap_angle, Mat2, Vec3};
use crate::coin::CoinParams;
use crate::error::{Error, Result};
use crate::momentum::{self, bloch_vector, gap_report, k_grid, special_points, DEFAULT_GRID};

/// Projections at or below this norm are treated as degenerate.
pub const PROJECTION_EPS: f64 = 1e-9;

/// Distance within which a Bloch vector is identified with a pole.
pub const POLE_TOLERANCE: f64 = 1e-9;

/// Largest per-sample angle step accepted while accumulating a winding.
const MAX_ANGLE_STEP: f64 = FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ManifoldFrame {
    pub n_beta: Vec3,
    pub e_w: Vec3,
    pub beta: f64,
}

/// n_β = (sin β, cos β, 0) and e_w = Z × n_β.
pub fn manifold_frame(beta: f64) -> ManifoldFrame {
    let (s, c) = beta.sin_cos();
    let n_beta = Vec3::new(s, c, 0.0);
    ManifoldFrame { n_beta, e_w: Vec3::Z.cross(&n_beta), beta }
}

impl ManifoldFrame {
    /// Whether `v` lies in M_T: off the excluded great circle (the plane
    /// orthogonal to e_w), or on one of the poles.
    pub fn contains(&self, v: &Vec3, tol: f64) -> bool {
        v.dot(&self.e_w).abs() > tol
            || v.distance(&self.n_beta) <= tol
            || v.distance(&-self.n_beta) <= tol
    }
}

/// Retraction of M_T onto the circle: the angle of v's XY projection in the
/// (n_β, e_w) basis. P_N ↦ 0 and P_S ↦ π.
pub fn retract(v: &Vec3, f: &ManifoldFrame) -> Result<f64> {
    let a = v.dot(&f.n_beta);
    let b = v.dot(&f.e_w);
    let projection = a.hypot(b);
    if projection <= PROJECTION_EPS {
        return Err(Error::OnExcludedCircle { x: v.x(), y: v.y(), z: v.z(), projection });
    }
    Ok(b.atan2(a))
}

/// Total winding of a closed sequence of angles, in turns.
pub fn accumulate_winding(angles: &[f64]) -> Result<i64> {
    let n = angles.len();
    let mut total = 0.0;
    for i in 0..n {
        let step = wrap_angle(angles[(i + 1) % n] - angles[i]);
        if step.abs() > MAX_ANGLE_STEP {
            return Err(Error::GridTooCoarse { grid: n, step: step.abs() });
        }
        total += step;
    }
    let turns = total / TAU;
    debug_assert!((turns - turns.round()).abs() < 1e-6);
    Ok(turns.round() as i64)
}

/// Band selector for f_{θ,±}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Band {
    Upper,
    Lower,
}

impl Band {
    pub fn sign(self) -> f64 {
        match self {
            Band::Upper => 1.0,
            Band::Lower => -1.0,
        }
    }
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < momentum::MIN_GRID {
        return Err(Error::InvalidArgument(format!("grid size {grid_size} is too small")));
    }
    Ok(())
}

/// Winding of f_{θ,band} around the circle M_T retracts to.
pub fn winding_mt(p: &CoinParams, band: Band, grid_size: usize) -> Result<i64> {
    p.require_gapped()?;
    check_grid(grid_size)?;
    let frame = manifold_frame(p.beta);
    let angles = k_grid(p.alpha, grid_size)
        .into_iter()
        .map(|(k, _)| {
            let n = bloch_vector(p, k)?.scale(band.sign());
            retract(&n, &frame)
        })
        .collect::<Result<Vec<_>>>()?;
    accumulate_winding(&angles)
}

/// Frame in which the Brillouin-zone image is viewed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrameVariant {
    Identity,
    /// V̄₁(θ) = e^{i(θ/2)σ_y}: images in the YZ-plane, chiral axis X.
    V1,
    /// V̄₂(θ) = e^{(i/2)(θ − sgn(θ)π/2)σ_y}: images in the XY-plane, chiral axis Z.
    V2,
}

impl FrameVariant {
    pub const ALL: [FrameVariant; 3] = [FrameVariant::Identity, FrameVariant::V1, FrameVariant::V2];

    /// γ of the θ-independent chiral operator Γ̄ = iγ·σ of the rotated family.
    pub fn gamma_axis(self) -> Option<Vec3> {
        match self {
            FrameVariant::Identity => None,
            FrameVariant::V1 => Some(Vec3::X),
            FrameVariant::V2 => Some(Vec3::Z),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            FrameVariant::Identity => "identity",
            FrameVariant::V1 => "v1",
            FrameVariant::V2 => "v2",
        }
    }
}

impl std::str::FromStr for FrameVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "identity" | "id" | "none" => Ok(FrameVariant::Identity),
            "v1" => Ok(FrameVariant::V1),
            "v2" => Ok(FrameVariant::V2),
            other => Err(Error::InvalidArgument(format!("unknown frame '{other}'"))),
        }
    }
}

pub fn frame_rotation(v: FrameVariant, theta: f64) -> Result<Mat2> {
    match v {
        FrameVariant::Identity => Ok(Mat2::IDENTITY),
        FrameVariant::V1 => Ok(Mat2::exp_i_sigma(theta / 2.0, &Vec3::Y)),
        FrameVariant::V2 => {
            let s = sign(theta).ok_or(Error::UndefinedSign)?;
            Ok(Mat2::exp_i_sigma((theta - s * FRAC_PI_2) / 2.0, &Vec3::Y))
        }
    }
}

/// Right-handed orthonormal pair (e₁, e₂) spanning the plane ⊥ axis.
fn plane_basis(axis: &Vec3) -> (Vec3, Vec3) {
    let a = axis.normalized();
    let helper = [Vec3::X, Vec3::Y, Vec3::Z]
        .into_iter()
        .min_by(|u, v| u.dot(&a).abs().total_cmp(&v.dot(&a).abs()))
        .unwrap_or(Vec3::X);
    let e1 = helper.cross(&a).normalized();
    let e2 = a.cross(&e1);
    (e1, e2)
}

/// Winding of a closed curve of (k, vector) samples around `axis`.
pub fn winding_about(samples: &[(f64, Vec3)], axis: &Vec3) -> Result<i64> {
    let (e1, e2) = plane_basis(axis);
    let angles = samples
        .iter()
        .map(|(k, v)| {
            let (a, b) = (v.dot(&e1), v.dot(&e2));
            let projection = a.hypot(b);
            if projection <= PROJECTION_EPS {
                Err(Error::CurveHitsAxis { k: *k, projection })
            } else {
                Ok(b.atan2(a))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    accumulate_winding(&angles)
}

/// The image f_{θ,+} over a uniform grid, viewed in the given frame.
pub fn bz_image(p: &CoinParams, v: FrameVariant, grid_size: usize) -> Result<Vec<(f64, Vec3)>> {
    p.require_gapped()?;
    check_grid(grid_size)?;
    let rot = frame_rotation(v, p.theta)?;
    k_grid(p.alpha, grid_size)
        .into_iter()
        .map(|(k, _)| Ok((k, rotate_by(&rot, &bloch_vector(p, k)?))))
        .collect()
}

/// Winding of the frame-rotated image V(θ) n_k·σ V(θ)⁻¹ around `axis`.
pub fn rotated_winding(p: &CoinParams, v: FrameVariant, axis: &Vec3, grid_size: usize) -> Result<i64> {
    winding_about(&bz_image(p, v, grid_size)?, axis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pole {
    /// P_N = +n_β
    #[serde(rename = "N")]
    North,
    /// P_S = −n_β
    #[serde(rename = "S")]
    South,
}

impl Pole {
    pub fn sign(self) -> i8 {
        match self {
            Pole::North => 1,
            Pole::South => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Pole::North => "N",
            Pole::South => "S",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PoleAssignment {
    #[serde(rename = "pole_k0")]
    pub at_k0: Pole,
    #[serde(rename = "pole_k1")]
    pub at_k1: Pole,
}

fn which_pole(n: &Vec3, frame: &ManifoldFrame, k: f64) -> Result<Pole> {
    let to_north = n.distance(&frame.n_beta);
    let to_south = n.distance(&-frame.n_beta);
    if to_north <= POLE_TOLERANCE {
        Ok(Pole::North)
    } else if to_south <= POLE_TOLERANCE {
        Ok(Pole::South)
    } else {
        Err(Error::PoleMismatch { k, distance: to_north.min(to_south) })
    }
}

/// Which pole the upper-band map f_{θ,+} hits at k₀ and at k₁.
pub fn pole_assignment(p: &CoinParams) -> Result<PoleAssignment> {
    p.require_gapped()?;
    let frame = manifold_frame(p.beta);
    let (k0, k1) = special_points(p.alpha);
    Ok(PoleAssignment {
        at_k0: which_pole(&bloch_vector(p, k0)?, &frame, k0)?,
        at_k1: which_pole(&bloch_vector(p, k1)?, &frame, k1)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseLabel {
    ThetaPositive,
    ThetaNegative,
}

impl PhaseLabel {
    /// f_{θ>0,+}(k₁) = P_N, f_{θ<0,+}(k₁) = P_S.
    pub fn from_poles(poles: &PoleAssignment) -> Self {
        match poles.at_k1 {
            Pole::North => PhaseLabel::ThetaPositive,
            Pole::South => PhaseLabel::ThetaNegative,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PhaseLabel::ThetaPositive => "ThetaPositive",
            PhaseLabel::ThetaNegative => "ThetaNegative",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelHomotopyInvariant {
    pub winding_mt: i64,
    #[serde(flatten)]
    pub poles: PoleAssignment,
    pub phase_label: PhaseLabel,
}

pub fn invariant(p: &CoinParams, grid_size: usize) -> Result<RelHomotopyInvariant> {
    let winding_mt = winding_mt(p, Band::Upper, grid_size)?;
    let poles = pole_assignment(p)?;
    Ok(RelHomotopyInvariant { winding_mt, poles, phase_label: PhaseLabel::from_poles(&poles) })
}

/// Whether f_{θ₁,+} and f_{θ₂,+} are homotopic relative to both k₀ and k₁:
/// equal M_T winding and equal pole hits at both special points.
pub fn rel_homotopic(p1: &CoinParams, p2: &CoinParams) -> Result<bool> {
    if !p1.same_family(p2) {
        return Err(Error::MixedFamilies);
    }
    let a = invariant(p1, DEFAULT_GRID)?;
    let b = invariant(p2, DEFAULT_GRID)?;
    Ok(a.winding_mt == b.winding_mt && a.poles == b.poles)
}

/// Edge states expected at an interface: one per gap when the two sides are
/// not relatively homotopic.
pub fn predicted_edge_states(p1: &CoinParams, p2: &CoinParams) -> Result<usize> {
    Ok(if rel_homotopic(p1, p2)? { 0 } else { 2 })
}

/// One row of a phase-diagram sweep. Invariant fields are `None` for gapless
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub theta: f64,
    pub beta: f64,
    pub gap_delta: f64,
    pub gap_delta_plus_pi: f64,
    pub winding: Option<i64>,
    pub pole_k0: Option<Pole>,
    pub pole_k1: Option<Pole>,
    pub phase_label: Option<PhaseLabel>,
}

pub fn classify(p: &CoinParams, grid_size: usize) -> Result<ClassificationRow> {
    let gaps = gap_report(&momentum::band_structure(p, grid_size)?);
    let inv = if p.is_gapped() && gaps.is_gapped { Some(invariant(p, grid_size)?) } else { None };
    Ok(ClassificationRow {
        theta: p.theta,
        beta: p.beta,
        gap_delta: gaps.gap_at_delta,
        gap_delta_plus_pi: gaps.gap_at_delta_plus_pi,
        winding: inv.map(|i| i.winding_mt),
        pole_k0: inv.map(|i| i.poles.at_k0),
        pole_k1: inv.map(|i| i.poles.at_k1),
        phase_label: inv.map(|i| i.phase_label),
    })
}

/// θ = ±qπ/8 for q = 1..7, the sample set of the image plots.
pub fn eighth_turn_thetas() -> Vec<f64> {
    (1..=7)
        .flat_map(|q| {
            let t = q as f64 * PI / 8.0;
            [t, -t]
        })
        .collect()
}
