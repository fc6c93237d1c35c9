//! Mesh and discrete-solution file formats.
//!
//! Floats are written with Rust's shortest round-trip formatting, so reading
//! a file back gives the same bits.

use std::fmt::Write as _;

use layermesh_core::fem::DiscreteSolution;
use layermesh_core::Mesh;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshRecord {
    pub family: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    pub sigma: f64,
    pub beta: f64,
    pub lambda: f64,
    pub layer_cells: usize,
    pub nodes: Vec<f64>,
}

impl From<&Mesh> for MeshRecord {
    fn from(mesh: &Mesh) -> Self {
        MeshRecord {
            family: mesh.family_label.clone(),
            n: mesh.params.n_cells,
            epsilon: mesh.params.epsilon,
            sigma: mesh.params.sigma,
            beta: mesh.params.beta,
            lambda: mesh.transition,
            layer_cells: mesh.layer_cells,
            nodes: mesh.nodes.clone(),
        }
    }
}

pub fn mesh_to_json(mesh: &Mesh) -> String {
    serde_json::to_string_pretty(&MeshRecord::from(mesh)).expect("mesh record serializes")
}

/// One node per line, no header.
pub fn mesh_to_text(mesh: &Mesh) -> String {
    let mut out = String::with_capacity(mesh.nodes.len() * 24);
    for x in &mesh.nodes {
        writeln!(out, "{x}").unwrap();
    }
    out
}

pub fn parse_mesh_text(text: &str) -> Result<Vec<f64>, std::num::ParseFloatError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().parse())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub mesh: MeshRecord,
    pub p: usize,
    pub dofs: Vec<f64>,
    pub coefficients: Vec<f64>,
}

pub fn solution_to_json(mesh: &Mesh, solution: &DiscreteSolution) -> String {
    let record = SolutionRecord {
        mesh: MeshRecord::from(mesh),
        p: solution.degree(),
        dofs: solution.dof_positions(),
        coefficients: solution.coefficients.clone(),
    };
    serde_json::to_string_pretty(&record).expect("solution record serializes")
}

/// Two columns `x u_h(x)`, `per_cell` samples per cell plus the right end point.
pub fn solution_to_text(solution: &DiscreteSolution, per_cell: usize) -> String {
    let mut out = String::new();
    for (x, u) in solution.sample(per_cell) {
        writeln!(out, "{x} {u}").unwrap();
    }
    out
}

/// Scientific notation with a two-digit signed exponent, e.g. `1.776e-02`.
pub fn format_sci(value: f64, digits: usize) -> String {
    let s = format!("{value:.digits$e}");
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let exp: i32 = exp.parse().unwrap_or(0);
            let sign = if exp < 0 { '-' } else { '+' };
            format!("{mantissa}e{sign}{:02}", exp.abs())
        }
        None => s,
    }
}
