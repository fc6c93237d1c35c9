//! Two-point boundary value problems `-eps u'' - b(x) u' + c(x) u = f` on `(0, 1)`.

use libm::{cos, exp, expm1, sin};

use crate::{Error, Result};
use core::f64::consts::FRAC_PI_2;

pub trait TwoPointBvp {
    fn epsilon(&self) -> f64;
    /// Convection coefficient `b`; the layer sits at `x = 0` when `b >= beta > 0`.
    fn convection(&self, x: f64) -> f64;
    /// Reaction coefficient `c >= 0`.
    fn reaction(&self, x: f64) -> f64;
    fn rhs(&self, x: f64) -> f64;
    /// Dirichlet values `(u(0), u(1))`.
    fn boundary(&self) -> (f64, f64) {
        (0.0, 0.0)
    }
}

pub trait ExactSolution {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
}

/// A problem assembled from coefficient closures.
#[derive(Clone)]
pub struct CoefficientProblem<B, C, F> {
    pub epsilon: f64,
    pub convection: B,
    pub reaction: C,
    pub rhs: F,
    pub boundary: (f64, f64),
}

impl<B, C, F> TwoPointBvp for CoefficientProblem<B, C, F>
where
    B: Fn(f64) -> f64,
    C: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    fn epsilon(&self) -> f64 {
        self.epsilon
    }
    fn convection(&self, x: f64) -> f64 {
        (self.convection)(x)
    }
    fn reaction(&self, x: f64) -> f64 {
        (self.reaction)(x)
    }
    fn rhs(&self, x: f64) -> f64 {
        (self.rhs)(x)
    }
    fn boundary(&self) -> (f64, f64) {
        self.boundary
    }
}

/// The benchmark `-eps u'' - u' + u = f`, `u(0) = u(1) = 0`, with exact solution
///
/// `u(x) = cos(pi x / 2) - (exp(-x/eps) - exp(-1/eps)) / (1 - exp(-1/eps))`.
///
/// Write `u = s - g` with smooth part `s` and layer part `g`. Since
/// `-eps g'' - g' = 0`, the manufactured load is `f = -eps s'' - s' + s - g`,
/// which avoids cancelling two `O(1/eps)` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperProblem {
    epsilon: f64,
    /// `exp(-1/eps)`, underflows to zero for small `eps`.
    tail: f64,
    /// `1 - exp(-1/eps)`.
    denom: f64,
}

impl PaperProblem {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParams("epsilon must be positive and finite"));
        }
        Ok(PaperProblem {
            epsilon,
            tail: exp(-1.0 / epsilon),
            denom: -expm1(-1.0 / epsilon),
        })
    }

    fn layer(&self, x: f64) -> f64 {
        exp(-x / self.epsilon)
    }

    /// Layer part `g`.
    fn g(&self, x: f64) -> f64 {
        (self.layer(x) - self.tail) / self.denom
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let e = self.epsilon;
        -FRAC_PI_2 * FRAC_PI_2 * cos(FRAC_PI_2 * x) - self.layer(x) / (e * e * self.denom)
    }
}

/// The benchmark problem and its exact solution; `PaperProblem` implements
/// both [`TwoPointBvp`] and [`ExactSolution`].
pub fn paper_problem(epsilon: f64) -> Result<PaperProblem> {
    PaperProblem::new(epsilon)
}

impl TwoPointBvp for PaperProblem {
    fn epsilon(&self) -> f64 {
        self.epsilon
    }
    fn convection(&self, _x: f64) -> f64 {
        1.0
    }
    fn reaction(&self, _x: f64) -> f64 {
        1.0
    }
    fn rhs(&self, x: f64) -> f64 {
        let k = FRAC_PI_2;
        let s = cos(k * x);
        let ds = -k * sin(k * x);
        let dds = -k * k * s;
        -self.epsilon * dds - ds + s - self.g(x)
    }
}

impl ExactSolution for PaperProblem {
    fn value(&self, x: f64) -> f64 {
        cos(FRAC_PI_2 * x) - self.g(x)
    }
    fn derivative(&self, x: f64) -> f64 {
        -FRAC_PI_2 * sin(FRAC_PI_2 * x) + self.layer(x) / (self.epsilon * self.denom)
    }
}
