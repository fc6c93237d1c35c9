//! Summary of the layer-adaptation quantities of one mesh.

use std::fmt;

use layermesh_core::{
    decay_at_transition, max_abs_psi_derivative, predicted_decay, validate_generalized, MeshFamily,
    MeshParams,
};
use serde::Serialize;

use crate::formats::format_sci;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshReport {
    pub family: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    pub sigma: f64,
    pub beta: f64,
    pub lambda: f64,
    pub layer_cells: usize,
    pub min_width: f64,
    pub max_width: f64,
    /// `exp(phi(1/2)) / N` of the characterising generating function.
    pub alpha: f64,
    pub max_abs_psi_derivative: f64,
    /// Layer function at the transition point.
    pub decay: f64,
    /// `(alpha N)^{-sigma}`.
    pub predicted_decay: f64,
    pub generalized_stype: bool,
    pub layer_widths_increasing: bool,
}

/// Build the mesh and report its transition point, cell widths, `alpha`,
/// `max |psi'|` and decay at the transition.
pub fn mesh_report(params: &MeshParams, family: MeshFamily) -> Result<MeshReport> {
    let mesh = family.build(params)?;
    let n = params.n_cells;
    let phi = family.generating_function(n);
    // bound constant 2 covers both shipped families (max phi'/N = 2 - 2/N for BS)
    let validation = validate_generalized(&*phi, n, 2.0);
    let widths = mesh.cell_widths();
    Ok(MeshReport {
        family: family.name().to_string(),
        n,
        epsilon: params.epsilon,
        sigma: params.sigma,
        beta: params.beta,
        lambda: mesh.transition,
        layer_cells: mesh.layer_cells,
        min_width: mesh.min_width(),
        max_width: mesh.max_width(),
        alpha: validation.measured_alpha,
        max_abs_psi_derivative: max_abs_psi_derivative(&*phi),
        decay: decay_at_transition(params, &*phi),
        predicted_decay: predicted_decay(phi.alpha(), n, params.sigma),
        generalized_stype: validation.is_valid(),
        layer_widths_increasing: widths[..mesh.layer_cells].windows(2).all(|w| w[1] > w[0]),
    })
}

impl fmt::Display for MeshReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family            {}", self.family)?;
        writeln!(f, "N                 {}", self.n)?;
        writeln!(f, "epsilon           {}", self.epsilon)?;
        writeln!(f, "sigma             {}", self.sigma)?;
        writeln!(f, "beta              {}", self.beta)?;
        writeln!(f, "lambda            {}", self.lambda)?;
        writeln!(f, "layer cells       {}", self.layer_cells)?;
        writeln!(f, "min cell width    {}", format_sci(self.min_width, 6))?;
        writeln!(f, "max cell width    {}", format_sci(self.max_width, 6))?;
        writeln!(f, "alpha             {}", self.alpha)?;
        writeln!(f, "max |psi'|        {}", self.max_abs_psi_derivative)?;
        writeln!(f, "decay at lambda   {}", format_sci(self.decay, 6))?;
        writeln!(f, "(alpha N)^-sigma  {}", format_sci(self.predicted_decay, 6))?;
        writeln!(f, "generalized S     {}", self.generalized_stype)?;
        write!(f, "layer widths grow {}", self.layer_widths_increasing)
    }
}
