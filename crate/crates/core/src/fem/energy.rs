use libm::sqrt;

use super::assembly::DiscreteSolution;
use super::quadrature::gauss_rule;
use crate::problem::ExactSolution;
use crate::Result;

/// Squared parts of the energy norm `eps ||e'||^2 + ||e||^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyError {
    /// `eps ||(u - u_h)'||_0^2`
    pub gradient_part: f64,
    /// `||u - u_h||_0^2`
    pub l2_part: f64,
}

impl EnergyError {
    pub fn total(&self) -> f64 {
        sqrt(self.gradient_part + self.l2_part)
    }
}

/// Energy-norm error of `u_h` against `exact`, integrated cellwise with
/// `quad_points` Gauss points.
pub fn energy_error<E: ExactSolution + ?Sized>(
    u_h: &DiscreteSolution,
    exact: &E,
    epsilon: f64,
    quad_points: usize,
) -> Result<EnergyError> {
    let rule = gauss_rule(quad_points)?;
    let p = u_h.degree();
    let mut values = alloc::vec![0.0; p + 1];
    let mut derivs = alloc::vec![0.0; p + 1];
    let (mut grad, mut l2) = (0.0, 0.0);

    for (cell, w) in u_h.nodes.windows(2).enumerate() {
        let jac = 0.5 * (w[1] - w[0]);
        let coeffs = u_h.cell_coefficients(cell);
        let (mut g_cell, mut l_cell) = (0.0, 0.0);
        for (xi, wq) in rule.iter() {
            u_h.element.eval_into(xi, &mut values, &mut derivs);
            let x = w[0] + (xi + 1.0) * jac;
            let uh: f64 = values.iter().zip(coeffs).map(|(v, c)| v * c).sum();
            let duh: f64 = derivs.iter().zip(coeffs).map(|(d, c)| d * c).sum::<f64>() / jac;
            let e = exact.value(x) - uh;
            let de = exact.derivative(x) - duh;
            g_cell += wq * de * de;
            l_cell += wq * e * e;
        }
        grad += jac * g_cell;
        l2 += jac * l_cell;
    }
    Ok(EnergyError {
        gradient_part: epsilon * grad,
        l2_part: l2,
    })
}
