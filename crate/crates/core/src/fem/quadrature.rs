use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{cos, fabs};

use crate::{Error, Result};

pub const MAX_GAUSS_POINTS: usize = 20;

/// Points and weights on the reference interval `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
pub(crate) fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre rule with `n` points, exact for polynomials of degree `2n - 1`.
pub fn gauss_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_GAUSS_POINTS {
        return Err(Error::UnsupportedQuadrature(n));
    }
    let mut points = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // roots in descending order from the standard initial guess
        let mut x = cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if fabs(dx) < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        points.push(-x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    if n % 2 == 1 {
        points[n / 2] = 0.0;
    }
    Ok(QuadratureRule { points, weights })
}
