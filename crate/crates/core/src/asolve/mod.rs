//! Numerical solution of the tensor axioms (3), (4), (10), with the
//! symmetries (5)-(9) enforced structurally through an orbit reduction.

mod orbits;
mod solver;
mod system;

pub use orbits::{build_orbits, SymmetryOrbits};
pub use solver::{
    solve_tensor, validate_jacobian, SolveDiagnostics, SolveOutcome, SolvedTensor,
};

/// Loads a previously solved tensor from a category file; the axiom
/// verifier is the caller's responsibility.
pub use crate::jsonio::load_tensor;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(
        "symmetry relations assign conflicting phases at triple {triple}: {stored} vs {derived}; \
         the (ε, η) input is inconsistent"
    )]
    PhaseConflict {
        triple: usize,
        stored: String,
        derived: String,
    },
}

/// Solver configuration.  All runs with equal configuration produce equal
/// output.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub restarts: usize,
    pub max_iter: usize,
    pub convergence_tol: f64,
    pub seed: u64,
    /// Initial Levenberg parameter; ×10 on a rejected step, ×0.1 on an
    /// accepted one, floored at 1e-12.
    pub damping: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            restarts: 64,
            max_iter: 250,
            convergence_tol: 1e-9,
            seed: 42,
            damping: 1e-3,
        }
    }
}
