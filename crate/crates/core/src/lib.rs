//! Basic one-dimensional discrete-time quantum walks.
//!
//! A walk step is U = S·C(θ) with the four-parameter coin
//! C̄ = e^{−iδ}[[cos θ e^{iα}, sin θ e^{i(α+β)}], [−sin θ e^{−i(α+β)}, cos θ e^{−iα}]].
//! The crate computes the Bloch bands and Bloch-sphere maps, the
//! relative-homotopy classification of gapped walks, certificates for the
//! walk's symmetries, and the exact edge states at a sharp interface.

pub mod algebra;
pub mod coin;
pub mod edge;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod momentum;
pub mod output;
pub mod symmetry;
pub mod topology;

pub use algebra::{Mat2, Spinor, Vec3};
pub use coin::{coin_matrix, CoinParams};
pub use edge::{analytic_edge_state, eigen_residual, interface_experiment, EdgeState, InitialCase, InterfaceSpec};
pub use error::{Error, Result};
pub use lattice::{build_walk, diagonalize, evolve, SpectralData, ThetaProfile, WalkOperator, WalkerState};
pub use momentum::{band_structure, bloch_hamiltonian, bloch_vector, dispersion, BandStructure};
pub use symmetry::{SymmetryKind, SymmetryReport};
pub use topology::{
    invariant, pole_assignment, predicted_edge_states, rel_homotopic, rotated_winding, winding_mt, Band, FrameVariant,
    RelHomotopyInvariant,
};
