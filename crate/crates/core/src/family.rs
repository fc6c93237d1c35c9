use alloc::boxed::Box;
use core::fmt;
use core::str::FromStr;

use crate::generating::{BakhvalovS, ExpMapped, GeneratingFunction};
use crate::mesh::{generate_exp_mesh, generate_stype_mesh, LayerCellCount, Mesh};
use crate::{Error, MeshParams, Result};

/// The five mesh variants compared in the convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeshFamily {
    /// Bakhvalov-S mesh, `N/2` layer cells.
    Bs,
    /// eXp-S mesh, `N/2` layer cells.
    ExpS,
    /// Original exponentially graded eXp mesh.
    Exp,
    /// Bakhvalov-S mesh, `N/2 - 1` layer cells.
    BsStar,
    /// eXp-S mesh, `N/2 - 1` layer cells.
    ExpSStar,
}

impl MeshFamily {
    pub const ALL: [MeshFamily; 5] = [
        MeshFamily::Bs,
        MeshFamily::ExpS,
        MeshFamily::Exp,
        MeshFamily::BsStar,
        MeshFamily::ExpSStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeshFamily::Bs => "bs",
            MeshFamily::ExpS => "exp-s",
            MeshFamily::Exp => "exp",
            MeshFamily::BsStar => "bs-star",
            MeshFamily::ExpSStar => "exp-s-star",
        }
    }

    /// Generating function characterising the family as a generalized
    /// S-type mesh. The original eXp mesh is characterised by the mapped
    /// eXp function.
    pub fn generating_function(self, n: usize) -> Box<dyn GeneratingFunction> {
        match self {
            MeshFamily::Bs | MeshFamily::BsStar => Box::new(BakhvalovS::new(n)),
            MeshFamily::ExpS | MeshFamily::Exp | MeshFamily::ExpSStar => {
                Box::new(ExpMapped::new(n))
            }
        }
    }

    pub fn build(self, params: &MeshParams) -> Result<Mesh> {
        let n = params.n_cells;
        let mut mesh = match self {
            MeshFamily::Exp => return generate_exp_mesh(params),
            MeshFamily::Bs | MeshFamily::ExpS => {
                generate_stype_mesh(params, &*self.generating_function(n), LayerCellCount::Half)?
            }
            MeshFamily::BsStar | MeshFamily::ExpSStar => generate_stype_mesh(
                params,
                &*self.generating_function(n),
                LayerCellCount::HalfMinusOne,
            )?,
        };
        mesh.family_label = self.name().into();
        Ok(mesh)
    }
}

impl fmt::Display for MeshFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeshFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeshFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or(Error::InvalidParams(
                "unknown mesh family (expected bs, exp-s, exp, bs-star or exp-s-star)",
            ))
    }
}
