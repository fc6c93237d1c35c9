use crate::{Error, Result};

/// Perturbation and mesh parameters shared by every generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshParams {
    /// Perturbation parameter.
    pub epsilon: f64,
    /// Mesh grading parameter, usually `p + 1`.
    pub sigma: f64,
    /// Lower bound of the convection coefficient.
    pub beta: f64,
    /// Number of cells, even and at least 8.
    pub n_cells: usize,
}

impl MeshParams {
    pub fn new(epsilon: f64, sigma: f64, beta: f64, n_cells: usize) -> Result<Self> {
        let params = MeshParams {
            epsilon,
            sigma,
            beta,
            n_cells,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.epsilon) {
            return Err(Error::InvalidParams("epsilon must be positive and finite"));
        }
        if !positive(self.sigma) {
            return Err(Error::InvalidParams("sigma must be positive and finite"));
        }
        if !positive(self.beta) {
            return Err(Error::InvalidParams("beta must be positive and finite"));
        }
        if !self.n_cells.is_multiple_of(2) {
            return Err(Error::InvalidParams("N must be even"));
        }
        if self.n_cells < 8 {
            return Err(Error::InvalidParams("N must be at least 8"));
        }
        Ok(())
    }

    /// The layer scale `sigma * eps / beta` that multiplies every generating function.
    pub fn layer_scale(&self) -> f64 {
        self.sigma * self.epsilon / self.beta
    }
}
