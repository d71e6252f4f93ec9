//! Two-level algebra: 2×2 complex matrices, real 3-vectors on the Bloch
//! sphere, coin spinors and the Pauli decomposition tying them together.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Reduces an angle to the half-open interval (−π, π].
pub fn wrap_angle(x: f64) -> f64 {
    let mut r = x.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    // rem_euclid maps −π to π already; guard the rounding edge
    if r <= -PI {
        r += TAU;
    }
    r
}

/// Distance between two angles on the circle, in [0, π].
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Sign of a non-zero angle; `None` for exactly zero.
pub fn sign(x: f64) -> Option<f64> {
    if x > 0.0 {
        Some(1.0)
    } else if x < 0.0 {
        Some(-1.0)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const X: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const Y: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const Z: Vec3 = Vec3([0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3(self.0.map(|c| c * s))
    }

    pub fn normalized(&self) -> Vec3 {
        self.scale(1.0 / self.norm())
    }

    pub fn distance(&self, o: &Vec3) -> f64 {
        (*self - *o).norm()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

/// Coin-space amplitudes in the basis {|→⟩, |←⟩}.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Spinor {
    pub right: Complex64,
    pub left: Complex64,
}

impl Spinor {
    pub const fn new(right: Complex64, left: Complex64) -> Self {
        Spinor { right, left }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.right.norm_sqr() + self.left.norm_sqr()
    }

    pub fn scale(&self, s: Complex64) -> Spinor {
        Spinor::new(self.right * s, self.left * s)
    }

    pub fn conj(&self) -> Spinor {
        Spinor::new(self.right.conj(), self.left.conj())
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.right.conj() * other.right + self.left.conj() * other.left
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, o: Spinor) -> Spinor {
        Spinor::new(self.right + o.right, self.left + o.left)
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, o: Spinor) -> Spinor {
        Spinor::new(self.right - o.right, self.left - o.left)
    }
}

/// Row-major 2×2 complex matrix acting on the coin space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const SIGMA_X: Mat2 = Mat2([[ZERO, ONE], [ONE, ZERO]]);
    pub const SIGMA_Y: Mat2 = Mat2([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]]);
    pub const SIGMA_Z: Mat2 = Mat2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2([[a, ZERO], [ZERO, d]])
    }

    pub fn scalar(s: Complex64) -> Self {
        Mat2::diag(s, s)
    }

    pub fn pauli() -> [Mat2; 3] {
        [Mat2::SIGMA_X, Mat2::SIGMA_Y, Mat2::SIGMA_Z]
    }

    /// c0·I + c·σ
    pub fn from_pauli(c0: Complex64, c: [Complex64; 3]) -> Self {
        Mat2([
            [c0 + c[2], c[0] - I * c[1]],
            [c[0] + I * c[1], c0 - c[2]],
        ])
    }

    /// v·σ for a real vector.
    pub fn sigma_dot(v: &Vec3) -> Self {
        let c = v.0.map(|x| Complex64::new(x, 0.0));
        Mat2::from_pauli(ZERO, c)
    }

    /// exp(i·angle·(u·σ)) for a unit vector u.
    pub fn exp_i_sigma(angle: f64, axis: &Vec3) -> Self {
        let (s, c) = angle.sin_cos();
        Mat2::scalar(Complex64::new(c, 0.0)) + Mat2::sigma_dot(axis).scale(Complex64::new(0.0, s))
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|e| e * s)))
    }

    pub fn adjoint(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn conj(&self) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|e| e.conj())))
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Inverse via the adjugate; callers only invert unitaries and rotations.
    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        let m = &self.0;
        Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        // eigenvalues of M†M: (t ± sqrt(t² − 4|det|²)) / 2 with t = ‖M‖_F²
        let t = self.norm().powi(2);
        let d = self.det().norm_sqr();
        let disc = (t * t - 4.0 * d).max(0.0).sqrt();
        ((t + disc) / 2.0).sqrt()
    }

    pub fn max_abs_diff(&self, o: &Mat2) -> f64 {
        (*self - *o).0.iter().flatten().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.adjoint()).max_abs_diff(&Mat2::IDENTITY) <= tol
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.is_unitary(tol) && (self.det() - ONE).norm() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let (c0, c) = pauli_decompose(self);
        let r = c.iter().map(|x| x.re * x.re).sum::<f64>().sqrt();
        [c0.re - r, c0.re + r]
    }

    pub fn apply(&self, s: &Spinor) -> Spinor {
        let m = &self.0;
        Spinor::new(
            m[0][0] * s.right + m[0][1] * s.left,
            m[1][0] * s.right + m[1][1] * s.left,
        )
    }

    /// self · m · self⁻¹
    pub fn conjugate(&self, m: &Mat2) -> Mat2 {
        *self * *m * self.inverse()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let mut r = self;
        for i in 0..2 {
            for j in 0..2 {
                r.0[i][j] += o.0[i][j];
            }
        }
        r
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-ONE)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        let mut r = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                r.0[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        r
    }
}

/// Splits m into c0·I + c·σ. The coefficients are complex in general; for a
/// Hermitian matrix they are real.
pub fn pauli_decompose(m: &Mat2) -> (Complex64, [Complex64; 3]) {
    let [[a, b], [c, d]] = m.0;
    let half = Complex64::new(0.5, 0.0);
    let c0 = (a + d) * half;
    let cx = (b + c) * half;
    let cy = I * (b - c) * half;
    let cz = (a - d) * half;
    (c0, [cx, cy, cz])
}

/// Rotation vector R·v induced by conjugation: V (v·σ) V⁻¹ = (R v)·σ.
pub fn rotate_by(v: &Mat2, vec: &Vec3) -> Vec3 {
    let (_, c) = pauli_decompose(&v.conjugate(&Mat2::sigma_dot(vec)));
    Vec3([c[0].re, c[1].re, c[2].re])
}
