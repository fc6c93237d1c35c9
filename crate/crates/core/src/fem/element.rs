use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{cos, fabs};

use super::quadrature::legendre;
use crate::{Error, Result};

pub const MAX_DEGREE: usize = 12;

/// Gauss-Lobatto points on `[-1, 1]`: the endpoints and the roots of `P_p'`.
pub fn lobatto_nodes(p: usize) -> Result<Vec<f64>> {
    if p == 0 || p > MAX_DEGREE {
        return Err(Error::InvalidDegree(p));
    }
    let pf = p as f64;
    let mut nodes = vec![-1.0; p + 1];
    nodes[p] = 1.0;
    for (j, node) in nodes.iter_mut().enumerate().take(p).skip(1) {
        let mut x = -cos(PI * j as f64 / pf);
        for _ in 0..100 {
            let (pv, dp) = legendre(p, x);
            // Legendre equation: (1 - x^2) P'' = 2x P' - p(p+1) P
            let ddp = (2.0 * x * dp - pf * (pf + 1.0) * pv) / (1.0 - x * x);
            let dx = dp / ddp;
            x -= dx;
            if fabs(dx) < 1e-16 {
                break;
            }
        }
        *node = x;
    }
    if p.is_multiple_of(2) {
        nodes[p / 2] = 0.0;
    }
    Ok(nodes)
}

/// Nodal Lagrange element of degree `p` on `[-1, 1]` with Gauss-Lobatto support points.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceElement {
    degree: usize,
    nodes: Vec<f64>,
    /// `1 / prod_{k != j} (xi_j - xi_k)`
    inv_denominators: Vec<f64>,
}

impl ReferenceElement {
    pub fn new(degree: usize) -> Result<Self> {
        let nodes = lobatto_nodes(degree)?;
        let inv_denominators = (0..=degree)
            .map(|j| {
                let d: f64 = (0..=degree)
                    .filter(|&k| k != j)
                    .map(|k| nodes[j] - nodes[k])
                    .product();
                1.0 / d
            })
            .collect();
        Ok(ReferenceElement {
            degree,
            nodes,
            inv_denominators,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis_nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Values and derivatives of all basis functions at `t`, written into the slices.
    pub fn eval_into(&self, t: f64, values: &mut [f64], derivs: &mut [f64]) {
        let n = self.degree + 1;
        for j in 0..n {
            let mut v = 1.0;
            let mut d = 0.0;
            for k in (0..n).filter(|&k| k != j) {
                // product rule, accumulated one factor at a time
                d = d * (t - self.nodes[k]) + v;
                v *= t - self.nodes[k];
            }
            values[j] = v * self.inv_denominators[j];
            derivs[j] = d * self.inv_denominators[j];
        }
    }

    pub fn shape_functions(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let mut v = vec![0.0; self.degree + 1];
        let mut d = vec![0.0; self.degree + 1];
        self.eval_into(t, &mut v, &mut d);
        (v, d)
    }
}
