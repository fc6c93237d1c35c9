//! Mesh-generating functions on the parameter interval `[0, 1/2]`.
//!
//! A generating function `phi` maps the uniform parameter `t` onto graded
//! layer coordinates `x = (sigma eps / beta) phi(t)`. A generalized S-type
//! function is increasing with `phi(0) = 0` and `phi(1/2) = ln(alpha N)`.

use crate::{Error, Result};
use libm::{log, log1p};

/// A monotone mesh-generating function on `[0, 1/2]`.
///
/// `value` and `derivative` are not domain checked; callers stay inside
/// `[0, 1/2]`. The checked free functions [`phi_bs`] and [`phi_exp_mapped`]
/// report domain errors.
pub trait GeneratingFunction {
    fn value(&self, t: f64) -> f64;
    fn derivative(&self, t: f64) -> f64;
    /// The constant with `phi(1/2) = ln(alpha N)`.
    fn alpha(&self) -> f64;
    fn label(&self) -> &str;
    /// Number of cells `N` the function was built for.
    fn n_cells(&self) -> usize;
    /// Closed form of `max |psi'|` with `psi = exp(-phi)`, when known.
    fn max_abs_psi_derivative_exact(&self) -> Option<f64> {
        None
    }
}

fn check_half(t: f64) -> Result<()> {
    if (0.0..=0.5).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain { t, lo: 0.0, hi: 0.5 })
    }
}

/// `-ln(1 - 2 (1 - deficit) t)`.
///
/// At `t = 1/2` the value is `-ln(deficit)`; evaluating it through
/// `1 - (1 - deficit)` would lose `log2(1/deficit)` bits.
pub(crate) fn neg_log_affine(deficit: f64, t: f64) -> f64 {
    if t == 0.5 {
        -log(deficit)
    } else {
        -log1p(-2.0 * (1.0 - deficit) * t)
    }
}

/// Bakhvalov-S generating function `-ln(1 - 2(1 - 1/N) t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BakhvalovS {
    n: usize,
    deficit: f64,
}

impl BakhvalovS {
    pub fn new(n: usize) -> Self {
        BakhvalovS {
            n,
            deficit: 1.0 / n as f64,
        }
    }
}

impl GeneratingFunction for BakhvalovS {
    fn value(&self, t: f64) -> f64 {
        neg_log_affine(self.deficit, t)
    }

    fn derivative(&self, t: f64) -> f64 {
        2.0 * (1.0 - self.deficit) / ((1.0 - 2.0 * t) + 2.0 * t * self.deficit)
    }

    fn alpha(&self) -> f64 {
        1.0
    }

    fn label(&self) -> &str {
        "bakhvalov-s"
    }

    fn n_cells(&self) -> usize {
        self.n
    }

    fn max_abs_psi_derivative_exact(&self) -> Option<f64> {
        Some(2.0 - 2.0 / self.n as f64)
    }
}

/// The eXp generating function with `C = 1`, mapped onto `[0, 1/2]`:
/// `-ln(1 - 2(1 - 2/N) t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpMapped {
    n: usize,
    deficit: f64,
}

impl ExpMapped {
    pub fn new(n: usize) -> Self {
        ExpMapped {
            n,
            deficit: 2.0 / n as f64,
        }
    }
}

impl GeneratingFunction for ExpMapped {
    fn value(&self, t: f64) -> f64 {
        neg_log_affine(self.deficit, t)
    }

    fn derivative(&self, t: f64) -> f64 {
        2.0 * (1.0 - self.deficit) / ((1.0 - 2.0 * t) + 2.0 * t * self.deficit)
    }

    fn alpha(&self) -> f64 {
        0.5
    }

    fn label(&self) -> &str {
        "exp-s"
    }

    fn n_cells(&self) -> usize {
        self.n
    }

    fn max_abs_psi_derivative_exact(&self) -> Option<f64> {
        Some(2.0 - 4.0 / self.n as f64)
    }
}

/// Shishkin-type piecewise-uniform generator `2 t ln N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shishkin {
    n: usize,
    ln_n: f64,
}

impl Shishkin {
    pub fn new(n: usize) -> Self {
        Shishkin {
            n,
            ln_n: log(n as f64),
        }
    }
}

impl GeneratingFunction for Shishkin {
    fn value(&self, t: f64) -> f64 {
        2.0 * t * self.ln_n
    }

    fn derivative(&self, _t: f64) -> f64 {
        2.0 * self.ln_n
    }

    fn alpha(&self) -> f64 {
        1.0
    }

    fn label(&self) -> &str {
        "shishkin"
    }

    fn n_cells(&self) -> usize {
        self.n
    }

    fn max_abs_psi_derivative_exact(&self) -> Option<f64> {
        // psi = N^{-2t}, steepest at t = 0
        Some(2.0 * self.ln_n)
    }
}

/// Checked Bakhvalov-S generating function.
pub fn phi_bs(t: f64, n: usize) -> Result<f64> {
    check_half(t)?;
    Ok(BakhvalovS::new(n).value(t))
}

pub fn phi_bs_derivative(t: f64, n: usize) -> Result<f64> {
    check_half(t)?;
    Ok(BakhvalovS::new(n).derivative(t))
}

/// Checked mapped eXp generating function.
pub fn phi_exp_mapped(t: f64, n: usize) -> Result<f64> {
    check_half(t)?;
    Ok(ExpMapped::new(n).value(t))
}

pub fn phi_exp_mapped_derivative(t: f64, n: usize) -> Result<f64> {
    check_half(t)?;
    Ok(ExpMapped::new(n).derivative(t))
}
