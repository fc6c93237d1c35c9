use alloc::vec;
use alloc::vec::Vec;

use super::banded::{solve_banded, BandedMatrix, BandedSystem};
use super::element::ReferenceElement;
use super::quadrature::gauss_rule;
use super::assembly_quadrature;
use crate::problem::TwoPointBvp;
use crate::{Error, Result};

fn check_mesh(nodes: &[f64]) -> Result<()> {
    if nodes.len() < 2 {
        return Err(Error::EmptyMesh);
    }
    if !nodes.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::InvalidParams("mesh nodes must be strictly increasing"));
    }
    Ok(())
}

/// Global dof positions: mesh nodes plus mapped interior basis nodes, left to right.
fn dof_positions(nodes: &[f64], element: &ReferenceElement) -> Vec<f64> {
    let p = element.degree();
    let mut out = Vec::with_capacity((nodes.len() - 1) * p + 1);
    for w in nodes.windows(2) {
        let (a, h) = (w[0], w[1] - w[0]);
        out.push(a);
        out.extend(element.basis_nodes()[1..p].iter().map(|xi| a + 0.5 * (xi + 1.0) * h));
    }
    out.push(*nodes.last().unwrap());
    out
}

/// Assemble `a(u, v) = eps (u', v') - (b u', v) + (c u, v)` and `(f, v)` with
/// `quad_points` Gauss points per cell.
pub fn assemble<P: TwoPointBvp + ?Sized>(
    bvp: &P,
    nodes: &[f64],
    p: usize,
    quad_points: usize,
) -> Result<BandedSystem> {
    check_mesh(nodes)?;
    let element = ReferenceElement::new(p)?;
    let rule = gauss_rule(quad_points)?;
    let eps = bvp.epsilon();
    let n_dofs = (nodes.len() - 1) * p + 1;

    let mut matrix = BandedMatrix::zeros(n_dofs, p, p);
    let mut rhs = vec![0.0; n_dofs];
    let mut values = vec![0.0; p + 1];
    let mut derivs = vec![0.0; p + 1];
    let mut local = vec![0.0; (p + 1) * (p + 1)];
    let mut local_rhs = vec![0.0; p + 1];

    for (cell, w) in nodes.windows(2).enumerate() {
        let (a, h) = (w[0], w[1] - w[0]);
        let jac = 0.5 * h;
        local.iter_mut().for_each(|v| *v = 0.0);
        local_rhs.iter_mut().for_each(|v| *v = 0.0);

        for (xi, wq) in rule.iter() {
            element.eval_into(xi, &mut values, &mut derivs);
            let x = a + (xi + 1.0) * jac;
            let dx = wq * jac;
            let (b, c, f) = (bvp.convection(x), bvp.reaction(x), bvp.rhs(x));
            for i in 0..=p {
                let (vi, di) = (values[i], derivs[i] / jac);
                local_rhs[i] += dx * f * vi;
                for j in 0..=p {
                    let (vj, dj) = (values[j], derivs[j] / jac);
                    local[i * (p + 1) + j] += dx * (eps * dj * di - b * dj * vi + c * vj * vi);
                }
            }
        }

        let first = cell * p;
        for i in 0..=p {
            rhs[first + i] += local_rhs[i];
            for j in 0..=p {
                matrix.add(first + i, first + j, local[i * (p + 1) + j]);
            }
        }
    }
    Ok(BandedSystem { matrix, rhs })
}

/// Replace the first and last rows by identity rows carrying the boundary
/// values; their columns are eliminated into the right-hand side.
pub fn apply_dirichlet(system: &mut BandedSystem, values: (f64, f64)) {
    let n = system.dimension();
    if n == 0 {
        return;
    }
    let m = &mut system.matrix;
    let reach = m.lower().max(m.upper());
    for (dof, g) in [(0, values.0), (n - 1, values.1)] {
        for i in dof.saturating_sub(reach)..(dof + reach + 1).min(n) {
            if i != dof && m.in_band(i, dof) {
                system.rhs[i] -= m.get(i, dof) * g;
                m.set(i, dof, 0.0);
            }
        }
        for j in dof.saturating_sub(reach)..(dof + reach + 1).min(n) {
            if m.in_band(dof, j) {
                m.set(dof, j, 0.0);
            }
        }
        m.set(dof, dof, 1.0);
        system.rhs[dof] = g;
    }
}

/// A continuous piecewise polynomial given by its nodal coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution {
    pub nodes: Vec<f64>,
    pub element: ReferenceElement,
    /// Values at the global dofs, boundary dofs included.
    pub coefficients: Vec<f64>,
}

impl DiscreteSolution {
    pub fn new(nodes: Vec<f64>, p: usize, coefficients: Vec<f64>) -> Result<Self> {
        check_mesh(&nodes)?;
        let element = ReferenceElement::new(p)?;
        let expected = (nodes.len() - 1) * p + 1;
        if coefficients.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coefficients.len(),
            });
        }
        Ok(DiscreteSolution {
            nodes,
            element,
            coefficients,
        })
    }

    /// Nodal interpolant of `f`.
    pub fn interpolate(nodes: Vec<f64>, p: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_mesh(&nodes)?;
        let element = ReferenceElement::new(p)?;
        let coefficients = dof_positions(&nodes, &element).into_iter().map(f).collect();
        Ok(DiscreteSolution {
            nodes,
            element,
            coefficients,
        })
    }

    pub fn degree(&self) -> usize {
        self.element.degree()
    }

    pub fn n_cells(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn dof_positions(&self) -> Vec<f64> {
        dof_positions(&self.nodes, &self.element)
    }

    /// Coefficients of cell `cell`.
    pub fn cell_coefficients(&self, cell: usize) -> &[f64] {
        let p = self.degree();
        &self.coefficients[cell * p..=cell * p + p]
    }

    fn locate(&self, x: f64) -> usize {
        let k = self.nodes.partition_point(|&n| n <= x);
        k.clamp(1, self.nodes.len() - 1) - 1
    }

    /// `(u_h(x), u_h'(x))`; points outside `[x_0, x_N]` use the nearest cell's polynomial.
    pub fn evaluate(&self, x: f64) -> (f64, f64) {
        let cell = self.locate(x);
        let (a, b) = (self.nodes[cell], self.nodes[cell + 1]);
        let jac = 0.5 * (b - a);
        let xi = (x - a) / jac - 1.0;
        let (v, d) = self.element.shape_functions(xi);
        let c = self.cell_coefficients(cell);
        let u = v.iter().zip(c).map(|(v, c)| v * c).sum();
        let du: f64 = d.iter().zip(c).map(|(d, c)| d * c).sum();
        (u, du / jac)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.evaluate(x).0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.evaluate(x).1
    }

    /// `(x, u_h(x))` on `per_cell` equally spaced points in every cell plus the right end.
    pub fn sample(&self, per_cell: usize) -> Vec<(f64, f64)> {
        let per_cell = per_cell.max(1);
        let mut out = Vec::with_capacity(self.n_cells() * per_cell + 1);
        for (cell, w) in self.nodes.windows(2).enumerate() {
            let c = self.cell_coefficients(cell);
            for k in 0..per_cell {
                let xi = -1.0 + 2.0 * k as f64 / per_cell as f64;
                let (v, _) = self.element.shape_functions(xi);
                let x = w[0] + 0.5 * (xi + 1.0) * (w[1] - w[0]);
                out.push((x, v.iter().zip(c).map(|(v, c)| v * c).sum()));
            }
        }
        out.push((*self.nodes.last().unwrap(), *self.coefficients.last().unwrap()));
        out
    }
}

/// Result of [`galerkin_solve`], with the relative residual of the solved system.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: DiscreteSolution,
    pub residual: f64,
}

/// Assemble with `p + 2` Gauss points, impose the problem's Dirichlet data and solve.
pub fn galerkin_solve<P: TwoPointBvp + ?Sized>(
    bvp: &P,
    nodes: &[f64],
    p: usize,
) -> Result<SolveOutcome> {
    let mut system = assemble(bvp, nodes, p, assembly_quadrature(p))?;
    apply_dirichlet(&mut system, bvp.boundary());
    let coefficients = solve_banded(&system)?;
    let residual = system.relative_residual(&coefficients);
    let solution = DiscreteSolution::new(nodes.to_vec(), p, coefficients)?;
    Ok(SolveOutcome { solution, residual })
}
