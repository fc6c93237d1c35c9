//! Node generation for eXp and (generalized) S-type meshes.
//!
//! Both constructions put graded nodes `(sigma eps / beta) phi(t_i)` inside the
//! layer `[0, lambda]` and a uniform mesh on `[lambda, 1]`. The node at the
//! transition index is taken from the fine branch, so `x[layer_cells] == lambda`
//! bit for bit.

use alloc::string::String;
use alloc::vec::Vec;
use libm::{exp, log};

use crate::generating::{neg_log_affine, GeneratingFunction};
use crate::{Error, MeshParams, Result};

/// How many cells the S-type construction places inside the layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayerCellCount {
    /// `N/2` layer cells, parameter nodes `t_i = i/N`.
    Half,
    /// `N/2 - 1` layer cells spread over the whole parameter interval,
    /// `t_i = i/(N-2)`, with `N/2 + 1` coarse cells.
    HalfMinusOne,
}

impl LayerCellCount {
    pub fn layer_cells(self, n: usize) -> usize {
        match self {
            LayerCellCount::Half => n / 2,
            LayerCellCount::HalfMinusOne => n / 2 - 1,
        }
    }
}

/// A sorted node array on `[0, 1]` with its layer metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub nodes: Vec<f64>,
    /// Transition point between the layer and the coarse region.
    pub transition: f64,
    /// Number of cells inside `[0, transition]`.
    pub layer_cells: usize,
    pub family_label: String,
    pub params: MeshParams,
}

impl Mesh {
    pub fn n_cells(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn cell_widths(&self) -> Vec<f64> {
        self.nodes.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn min_width(&self) -> f64 {
        self.cell_widths().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_width(&self) -> f64 {
        self.cell_widths().into_iter().fold(0.0, f64::max)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.nodes.windows(2).all(|w| w[1] > w[0])
    }
}

/// `C = 1 - exp(-beta / (sigma eps))`.
///
/// For small `eps` this is exactly `1.0` in double precision; no special
/// casing is applied.
pub fn c_sigma_eps(params: &MeshParams) -> Result<f64> {
    params.validate()?;
    Ok(1.0 - exp(-params.beta / (params.sigma * params.epsilon)))
}

/// Upper end `1/2 - 1/N` of the original eXp parameter interval, written as
/// `(N/2 - 1)/N` so it coincides with the last fine-node parameter.
fn exp_parameter_end(n: usize) -> f64 {
    (n / 2 - 1) as f64 / n as f64
}

/// `-ln(1 - 2 C t)` with `1 - C = exp(-beta/(sigma eps))` passed as `tail`.
fn exp_original_unchecked(t: f64, tail: f64) -> f64 {
    neg_log_affine(tail, t)
}

fn exp_tail(params: &MeshParams) -> f64 {
    exp(-params.beta / (params.sigma * params.epsilon))
}

/// Original eXp generating function `-ln(1 - 2 C t)` on `[0, 1/2 - 1/N]`.
pub fn phi_exp_original(t: f64, params: &MeshParams) -> Result<f64> {
    params.validate()?;
    let hi = exp_parameter_end(params.n_cells);
    if !(0.0..=hi).contains(&t) {
        return Err(Error::Domain { t, lo: 0.0, hi });
    }
    Ok(exp_original_unchecked(t, exp_tail(params)))
}

fn check_transition(lambda: f64, params: &MeshParams, phi_end: f64) -> Result<f64> {
    if lambda > 0.5 || !lambda.is_finite() {
        return Err(Error::AssumptionViolated {
            lambda,
            epsilon: params.epsilon,
            epsilon_max: params.beta / (2.0 * params.sigma * phi_end),
        });
    }
    Ok(lambda)
}

/// Transition point of the eXp mesh, `(sigma eps / beta) phi_eXp(1/2 - 1/N)`.
pub fn transition_exp(params: &MeshParams) -> Result<f64> {
    let phi_end = phi_exp_original(exp_parameter_end(params.n_cells), params)?;
    let lambda = params.layer_scale() * phi_end;
    // the stated assumption uses ln(N/2), the C = 1 value of phi_end
    check_transition(lambda, params, log(params.n_cells as f64 / 2.0))
}

/// Transition point of a generalized S-type mesh, `(sigma eps / beta) phi(1/2)`.
pub fn transition_stype(params: &MeshParams, phi: &dyn GeneratingFunction) -> Result<f64> {
    params.validate()?;
    let phi_end = phi.value(0.5);
    check_transition(params.layer_scale() * phi_end, params, phi_end)
}

/// Uniform coarse nodes `1 - 2(1 - lambda)(N - i)/denominator` for `i` in `from..=N`.
fn push_coarse(nodes: &mut Vec<f64>, lambda: f64, n: usize, from: usize, denominator: usize) {
    let d = denominator as f64;
    nodes.extend((from..=n).map(|i| 1.0 - 2.0 * (1.0 - lambda) * (n - i) as f64 / d));
}

/// The exponentially graded eXp mesh: `N/2 - 1` graded layer cells and
/// `N/2 + 1` coarse cells of width `2(1 - lambda)/(N + 2)`.
pub fn generate_exp_mesh(params: &MeshParams) -> Result<Mesh> {
    let lambda = transition_exp(params)?;
    let n = params.n_cells;
    let tail = exp_tail(params);
    let scale = params.layer_scale();
    let layer_cells = n / 2 - 1;

    let mut nodes = Vec::with_capacity(n + 1);
    nodes.extend((0..=layer_cells).map(|i| scale * exp_original_unchecked(i as f64 / n as f64, tail)));
    debug_assert_eq!(nodes[layer_cells], lambda);
    push_coarse(&mut nodes, lambda, n, layer_cells + 1, n + 2);

    Ok(Mesh {
        nodes,
        transition: lambda,
        layer_cells,
        family_label: String::from("exp"),
        params: *params,
    })
}

/// A generalized S-type mesh built from `phi`.
///
/// With [`LayerCellCount::Half`] the layer nodes are `(sigma eps/beta) phi(i/N)`
/// for `i <= N/2` and the coarse cells have width `2(1 - lambda)/N`. With
/// [`LayerCellCount::HalfMinusOne`] the `N/2 - 1` layer cells use
/// `t_i = i/(N - 2)` and the coarse cells have width `2(1 - lambda)/(N + 2)`;
/// for the mapped eXp function this reproduces [`generate_exp_mesh`].
pub fn generate_stype_mesh(
    params: &MeshParams,
    phi: &dyn GeneratingFunction,
    layer: LayerCellCount,
) -> Result<Mesh> {
    let lambda = transition_stype(params, phi)?;
    let n = params.n_cells;
    let scale = params.layer_scale();
    let layer_cells = layer.layer_cells(n);
    let (parameter_cells, coarse_denominator) = match layer {
        LayerCellCount::Half => (n, n),
        LayerCellCount::HalfMinusOne => (n - 2, n + 2),
    };

    let mut nodes = Vec::with_capacity(n + 1);
    nodes.extend(
        (0..=layer_cells).map(|i| scale * phi.value(i as f64 / parameter_cells as f64)),
    );
    debug_assert_eq!(nodes[layer_cells], lambda);
    push_coarse(&mut nodes, lambda, n, layer_cells + 1, coarse_denominator);

    let mut family_label = String::from(phi.label());
    if layer == LayerCellCount::HalfMinusOne {
        family_label.push('*');
    }
    Ok(Mesh {
        nodes,
        transition: lambda,
        layer_cells,
        family_label,
        params: *params,
    })
}

/// Coarse-branch formula evaluated at an arbitrary index; used to check that
/// both branches agree at the overlap index.
pub fn coarse_node(lambda: f64, n: usize, i: usize, denominator: usize) -> f64 {
    1.0 - 2.0 * (1.0 - lambda) * (n - i) as f64 / denominator as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generating::{BakhvalovS, ExpMapped};

    fn p(eps: f64, sigma: f64, beta: f64, n: usize) -> MeshParams {
        MeshParams::new(eps, sigma, beta, n).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn c_sigma_eps_values() {
        let c = c_sigma_eps(&p(0.25, 2.0, 1.0, 8)).unwrap();
        assert!((c - 0.864_664_716_763_387_3).abs() < 1e-15);
        assert_eq!(c_sigma_eps(&p(1e-6, 2.0, 1.0, 64)).unwrap(), 1.0);
        assert_eq!(c_sigma_eps(&p(1e-300, 2.0, 1.0, 64)).unwrap(), 1.0);
    }

    #[test]
    fn phi_exp_original_values() {
        let small = p(1e-6, 2.0, 1.0, 64);
        assert_eq!(phi_exp_original(0.0, &small).unwrap(), 0.0);
        let end = 0.5 - 1.0 / 64.0;
        assert!((phi_exp_original(end, &small).unwrap() - 32f64.ln()).abs() < 1e-14);
        assert!(phi_exp_original(0.5, &small).is_err());
        assert!(phi_exp_original(-0.1, &small).is_err());

        // C = 0.8 needs beta/(sigma eps) = ln 5
        let c8 = p(1.0 / 5f64.ln(), 1.0, 1.0, 8);
        assert!((c_sigma_eps(&c8).unwrap() - 0.8).abs() < 1e-15);
        let v = phi_exp_original(0.25, &c8).unwrap();
        assert!((v - 0.510_825_623_765_990_7).abs() < 1e-14);
    }

    #[test]
    fn transition_values() {
        let params = p(1e-6, 2.0, 1.0, 64);
        assert!(rel(transition_exp(&params).unwrap(), 6.931_471_805_599_452_6e-6) < 1e-14);
        let bs = BakhvalovS::new(64);
        assert!(rel(transition_stype(&params, &bs).unwrap(), 8.317_766_166_719_342e-6) < 1e-14);
    }

    #[test]
    fn transition_violation_is_an_error() {
        let params = p(0.2, 2.0, 1.0, 64);
        assert!(matches!(
            transition_stype(&params, &BakhvalovS::new(64)),
            Err(Error::AssumptionViolated { .. })
        ));
        assert!(matches!(
            transition_exp(&params),
            Err(Error::AssumptionViolated { .. })
        ));
    }

    #[test]
    fn exp_transition_below_half_at_stated_bound() {
        // at eps = beta/(2 sigma ln(N/2)) the constant C is below one, so lambda < 1/2
        let n = 64;
        let eps = 1.0 / (2.0 * 2.0 * (n as f64 / 2.0).ln());
        let lambda = transition_exp(&p(eps, 2.0, 1.0, n)).unwrap();
        assert!(lambda < 0.5 && lambda > 0.49);
    }

    #[test]
    fn exp_mesh_first_node() {
        let mesh = generate_exp_mesh(&p(1e-6, 2.0, 1.0, 64)).unwrap();
        assert!(rel(mesh.nodes[1], 6.349_739_662_916_06e-8) < 1e-13);
        assert_eq!(mesh.layer_cells, 31);
        assert_eq!(mesh.nodes.len(), 65);
    }

    #[test]
    fn bs_mesh_first_node() {
        let mesh =
            generate_stype_mesh(&p(0.01, 1.0, 1.0, 8), &BakhvalovS::new(8), LayerCellCount::Half)
                .unwrap();
        assert!(rel(mesh.nodes[1], 0.002_468_600_779_315_257_8) < 1e-14);
        assert_eq!(mesh.nodes[4], mesh.transition);
        assert!(rel(mesh.transition, 0.01 * 8f64.ln()) < 1e-14);
        assert_eq!(*mesh.nodes.last().unwrap(), 1.0);
    }

    #[test]
    fn coarse_widths_are_uniform() {
        let params = p(1e-4, 3.0, 1.0, 32);
        for mesh in [
            generate_exp_mesh(&params).unwrap(),
            generate_stype_mesh(&params, &ExpMapped::new(32), LayerCellCount::Half).unwrap(),
            generate_stype_mesh(&params, &BakhvalovS::new(32), LayerCellCount::HalfMinusOne)
                .unwrap(),
        ] {
            let w = mesh.cell_widths();
            let first = w[mesh.layer_cells];
            for &wi in &w[mesh.layer_cells..] {
                assert!(rel(wi, first) < 1e-13, "{}", mesh.family_label);
            }
        }
    }

    #[test]
    fn star_labels() {
        let params = p(1e-4, 2.0, 1.0, 16);
        let m = generate_stype_mesh(&params, &BakhvalovS::new(16), LayerCellCount::HalfMinusOne)
            .unwrap();
        assert_eq!(m.family_label, "bakhvalov-s*");
        assert_eq!(m.layer_cells, 7);
    }
}
