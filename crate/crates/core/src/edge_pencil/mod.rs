//! Edge singularities: spectrum of the dihedron pencil and the exponent `mu`.

mod assemble;
mod chebyshev;
mod closed_form;
mod mu;
mod solve;

pub use assemble::{assemble_pencil, PencilMatrices};
pub use chebyshev::{diff_matrix, lobatto_nodes};
pub use closed_form::{dd_nn_residual, mu_real_root};
pub use mu::{
    edge_pencil, eigenvalue_real_part, mu_branch, mu_k, mu_of_edge_point, mu_of_pencil, numeric_eigenvalue, MuBranch,
    MuProvenance, MuValue, SpectralSettings,
};
pub use solve::{solve_spectrum, RESIDUAL_BOUND, REFINEMENT_TOL, Eigenvalue, Spectrum, Window};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::BoundaryCondition;

/// Default polynomial degree of the collocation.
pub const DEFAULT_COLLOCATION: usize = 24;
/// Smallest collocation degree accepted by the solver.
pub const MIN_COLLOCATION: usize = 8;

/// Wedge `|phi| < theta/2` with boundary conditions on the two sides.
///
/// `d_plus` acts on `phi = theta/2`, `d_minus` on `phi = -theta/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DihedronPencil {
    pub theta: f64,
    pub d_plus: BoundaryCondition,
    pub d_minus: BoundaryCondition,
    pub nu: f64,
}

impl DihedronPencil {
    pub fn new(theta: f64, d_plus: BoundaryCondition, d_minus: BoundaryCondition) -> Result<Self> {
        Self::with_viscosity(theta, d_plus, d_minus, 1.0)
    }

    pub fn with_viscosity(
        theta: f64,
        d_plus: BoundaryCondition,
        d_minus: BoundaryCondition,
        nu: f64,
    ) -> Result<Self> {
        if !(theta > 0.0 && theta < 2.0 * std::f64::consts::PI) {
            return Err(Error::InvalidArgument(format!(
                "opening angle {theta} outside (0, 2pi)"
            )));
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidArgument(format!("viscosity {nu} must be positive")));
        }
        Ok(DihedronPencil { theta, d_plus, d_minus, nu })
    }

    /// `d_plus + d_minus`.
    pub fn index_sum(&self) -> u8 {
        self.d_plus.index() + self.d_minus.index()
    }

    /// 1 for the pairs with index sum 0 or 6, 2 for sums 2 or 4, none for odd sums.
    pub fn parity_factor(&self) -> Option<u8> {
        match self.index_sum() {
            0 | 6 => Some(1),
            2 | 4 => Some(2),
            _ => None,
        }
    }

    /// Both sides Dirichlet or both sides Neumann: the spectrum is given by
    /// [`dd_nn_residual`].
    pub fn has_closed_form(&self) -> bool {
        use BoundaryCondition::*;
        matches!(
            (self.d_plus, self.d_minus),
            (Dirichlet, Dirichlet) | (Neumann, Neumann)
        )
    }
}
