//! Dense helpers for ring-sized operators: norms and a unitary eigensolver.
//!
//! The eigensolver diagonalizes two commuting Hermitian combinations of the
//! unitary's real and imaginary parts, alternating between them inside
//! clusters of (near-)equal eigenvalues until every cluster is a genuine
//! eigenspace of U.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Mixing weight between the two Hermitian parts; any irrational works.
const MIX: f64 = 0.618_033_988_749_894_9;

/// Eigenvalue spacing below which states are re-resolved in the other part.
const CLUSTER_GAP: f64 = 1e-7;

const MAX_DEPTH: usize = 6;

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_entry(m: &CMatrix) -> f64 {
    m.iter().map(|e| e.norm()).fold(0.0, f64::max)
}

/// ‖U†U − I‖ in max-entry norm.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_entry(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

fn hermitize(m: CMatrix) -> CMatrix {
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn refine(basis: CMatrix, ops: &[CMatrix; 2], which: usize, depth: usize, out: &mut Vec<CVector>) {
    let m = basis.ncols();
    if m == 1 || depth >= MAX_DEPTH {
        out.extend(basis.column_iter().map(|c| c.into_owned()));
        return;
    }
    let projected = hermitize(basis.adjoint() * &ops[which] * &basis);
    let eig = projected.symmetric_eigen();
    let rotated = &basis * &eig.eigenvectors;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut start = 0;
    for i in 1..=m {
        let split = i == m || eig.eigenvalues[order[i]] - eig.eigenvalues[order[i - 1]] > CLUSTER_GAP;
        if !split {
            continue;
        }
        let cols: Vec<CVector> = order[start..i].iter().map(|&c| rotated.column(c).into_owned()).collect();
        if cols.len() == 1 {
            out.extend(cols);
        } else {
            refine(CMatrix::from_columns(&cols), ops, 1 - which, depth + 1, out);
        }
        start = i;
    }
}

/// Eigenpairs of a unitary (more generally, normal) matrix. Eigenvectors are
/// orthonormal; eigenvalues are the Rayleigh quotients.
pub fn eig_unitary(u: &CMatrix) -> Vec<(Complex64, CVector)> {
    let n = u.nrows();
    let ud = u.adjoint();
    let re = (u + &ud) * Complex64::new(0.5, 0.0);
    let im = (u - &ud) * Complex64::new(0.0, -0.5);
    let a = &re + &im * Complex64::new(MIX, 0.0);
    let b = &im - &re * Complex64::new(MIX, 0.0);
    let ops = [hermitize(a), hermitize(b)];
    let mut vecs = Vec::with_capacity(n);
    refine(CMatrix::identity(n, n), &ops, 0, 0, &mut vecs);
    vecs.into_iter()
        .map(|v| {
            let lambda = v.dotc(&(u * &v));
            (lambda, v)
        })
        .collect()
}
