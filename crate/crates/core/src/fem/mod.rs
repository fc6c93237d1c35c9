//! Galerkin finite elements for two-point problems on arbitrary 1D meshes.
//!
//! Degrees of freedom are the mesh nodes plus `p - 1` Gauss-Lobatto points
//! per cell, numbered left to right, so the stiffness matrix has half
//! bandwidth `p`.

mod assembly;
mod banded;
mod element;
mod energy;
mod quadrature;

pub use assembly::{apply_dirichlet, assemble, galerkin_solve, DiscreteSolution, SolveOutcome};
pub use banded::{solve_banded, BandedMatrix, BandedSystem, PIVOT_TOL};
pub use element::{lobatto_nodes, ReferenceElement, MAX_DEGREE};
pub use energy::{energy_error, EnergyError};
pub use quadrature::{gauss_rule, QuadratureRule, MAX_GAUSS_POINTS};

/// Gauss points used for assembly at degree `p`.
pub fn assembly_quadrature(p: usize) -> usize {
    p + 2
}

/// Gauss points used for error integration at degree `p`.
pub fn error_quadrature(p: usize) -> usize {
    p + 4
}
