//! Layer-adapted meshes for singularly perturbed convection-diffusion problems.
//!
//! The crate generates Bakhvalov-S, eXp and eXp-S meshes (and any other
//! generalized S-type mesh given a generating function), checks the
//! generalized S-type conditions, and ships a small Galerkin finite element
//! kernel for the model problem `-eps u'' - u' + u = f` on `(0, 1)`.
//!
//! Everything here is a pure function of its inputs. The crate is `no_std`
//! and only needs `alloc`; file formats, the CLI and the convergence study
//! live in the `layermesh` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod family;
pub mod fem;
pub mod generating;
pub mod mesh;
mod params;
pub mod problem;
pub mod validate;

pub use error::{Error, Result};
pub use family::MeshFamily;
pub use generating::{BakhvalovS, ExpMapped, GeneratingFunction, Shishkin};
pub use mesh::{
    c_sigma_eps, generate_exp_mesh, generate_stype_mesh, phi_exp_original, transition_exp,
    transition_stype, LayerCellCount, Mesh,
};
pub use params::MeshParams;
pub use problem::{paper_problem, CoefficientProblem, ExactSolution, PaperProblem, TwoPointBvp};
pub use validate::{
    decay_at_transition, max_abs_psi_derivative, predicted_decay, validate_generalized,
    ValidationReport,
};
