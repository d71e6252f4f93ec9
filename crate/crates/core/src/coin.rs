//! The four-angle coin family, the gauge unitary W that strips α and β, and
//! the particle-hole antiunitary Ω = W²K built from it.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{wrap_angle, Mat2, ONE};
use crate::error::{Error, Result};
use crate::lattice::WalkerState;

/// Tolerance below which |sin θ| counts as a gap closing.
pub const GAPLESS_EPS: f64 = 1e-12;

/// Coin angles (δ, α, β, θ), each reduced to (−π, π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
}

impl CoinParams {
    pub fn new(delta: f64, alpha: f64, beta: f64, theta: f64) -> Self {
        CoinParams {
            delta: wrap_angle(delta),
            alpha: wrap_angle(alpha),
            beta: wrap_angle(beta),
            theta: wrap_angle(theta),
        }
    }

    /// The real coin e^{iθσ_y}, i.e. (δ, α, β) = (0, 0, 0).
    pub fn real(theta: f64) -> Self {
        CoinParams::new(0.0, 0.0, 0.0, theta)
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        CoinParams { theta: wrap_angle(theta), ..*self }
    }

    /// α′ = α + β
    pub fn alpha_prime(&self) -> f64 {
        self.alpha + self.beta
    }

    /// θ ∈ T, i.e. both quasienergy gaps are open.
    pub fn is_gapped(&self) -> bool {
        self.theta.sin().abs() > GAPLESS_EPS
    }

    pub fn require_gapped(&self) -> Result<()> {
        if self.is_gapped() {
            Ok(())
        } else {
            Err(Error::GaplessParameters { theta: self.theta })
        }
    }

    /// (δ, α, β): the family S_(δ,α,β) this coin belongs to.
    pub fn family(&self) -> [f64; 3] {
        [self.delta, self.alpha, self.beta]
    }

    pub fn same_family(&self, other: &CoinParams) -> bool {
        self.family()
            .iter()
            .zip(other.family())
            .all(|(a, b)| crate::algebra::angle_distance(*a, b) < 1e-12)
    }
}

/// C̄ = e^{−iδ}[[cosθ e^{iα}, sinθ e^{i(α+β)}], [−sinθ e^{−i(α+β)}, cosθ e^{−iα}]]
pub fn coin_matrix(p: &CoinParams) -> Mat2 {
    coin_matrix_at(p, p.theta)
}

/// Coin of the family of `p` evaluated at a site-specific θ.
pub fn coin_matrix_at(p: &CoinParams, theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    let ap = p.alpha_prime();
    let m = Mat2::new(
        Complex64::from_polar(c, p.alpha),
        Complex64::from_polar(s, ap),
        Complex64::from_polar(-s, -ap),
        Complex64::from_polar(c, -p.alpha),
    );
    m.scale(Complex64::from_polar(1.0, -p.delta))
}

/// True when e^{iαN} = 1, i.e. α = 2πm/N for an integer m.
pub fn is_commensurate(alpha: f64, n: usize) -> bool {
    let m = alpha * n as f64 / TAU;
    (m - m.round()).abs() < 1e-9
}

pub fn require_commensurate(alpha: f64, n: usize) -> Result<()> {
    if is_commensurate(alpha, n) {
        Ok(())
    } else {
        Err(Error::IncommensurateAlpha { alpha, n })
    }
}

/// Site factor e^{iαx} and coin factor diag(1, e^{−iβ}) of
/// W = (Σ_x e^{iαx}|x⟩⟨x|) ⊗ diag(1, e^{−iβ}), which maps the (α, β) = (0, 0)
/// walk onto the general one: W U⁽⁰⁾ W⁻¹ = U.
pub fn gauge_unitary_w(alpha: f64, beta: f64, x: i64) -> (Complex64, Mat2) {
    (
        Complex64::from_polar(1.0, alpha * x as f64),
        Mat2::diag(ONE, Complex64::from_polar(1.0, -beta)),
    )
}

/// The particle-hole antiunitary Ω = W²K: complex conjugation followed by the
/// site phase e^{2iαx} and the coin phase diag(1, e^{−2iβ}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleHole {
    pub alpha: f64,
    pub beta: f64,
}

pub fn phs_operator(alpha: f64, beta: f64) -> ParticleHole {
    ParticleHole { alpha, beta }
}

impl ParticleHole {
    pub fn site_phase(&self, x: i64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * self.alpha * x as f64)
    }

    pub fn coin_phase(&self) -> Mat2 {
        Mat2::diag(ONE, Complex64::from_polar(1.0, -2.0 * self.beta))
    }

    /// Diagonal of W² in the flattened (site, coin) basis of a ring of `n` sites.
    pub fn w2_diagonal(&self, n: usize) -> Vec<Complex64> {
        let coin = self.coin_phase();
        (0..n)
            .flat_map(|i| {
                let ph = self.site_phase(crate::lattice::site_label(i, n));
                [ph * coin.0[0][0], ph * coin.0[1][1]]
            })
            .collect()
    }

    pub fn apply(&self, s: &WalkerState) -> WalkerState {
        let n = s.len();
        let coin = self.coin_phase();
        let amps = s
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let ph = self.site_phase(crate::lattice::site_label(i, n));
                coin.apply(&a.conj()).scale(ph)
            })
            .collect();
        WalkerState::from_amplitudes(amps)
    }
}
