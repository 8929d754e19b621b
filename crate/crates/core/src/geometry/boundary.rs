//! Boundary condition taxonomy for faces of the fluid domain.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Boundary condition on a face, indexed by the number `d` of prescribed
/// stress components.
///
/// | `d` | velocity part | stress part |
/// |-----|---------------|-------------|
/// | 0 | `u = h` | none |
/// | 1 | `u_tau = h` | `-p + 2 nu eps_nn(u) = phi` |
/// | 2 | `u_n = h` | `eps_ntau(u) = phi` (slip) |
/// | 3 | none | `-p n + 2 nu eps_n(u) = phi` |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryCondition {
    Dirichlet,
    TangentialVelocity,
    Slip,
    Neumann,
}

impl BoundaryCondition {
    pub const ALL: [BoundaryCondition; 4] = [
        BoundaryCondition::Dirichlet,
        BoundaryCondition::TangentialVelocity,
        BoundaryCondition::Slip,
        BoundaryCondition::Neumann,
    ];

    /// The index `d` in `{0, 1, 2, 3}`.
    pub fn index(self) -> u8 {
        match self {
            BoundaryCondition::Dirichlet => 0,
            BoundaryCondition::TangentialVelocity => 1,
            BoundaryCondition::Slip => 2,
            BoundaryCondition::Neumann => 3,
        }
    }

    pub fn from_index(d: u8) -> Result<Self, Error> {
        Self::ALL
            .get(d as usize)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("boundary index {d} is not in 0..=3")))
    }

    /// Tag used in domain files.
    pub fn tag(self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::TangentialVelocity => "tangential-velocity",
            BoundaryCondition::Slip => "slip",
            BoundaryCondition::Neumann => "neumann",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if let Ok(d) = t.parse::<u8>() {
            return Self::from_index(d);
        }
        Self::ALL
            .into_iter()
            .find(|bc| bc.tag() == t)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown boundary tag `{t}`")))
    }
}

/// Per-face boundary conditions, indexed like the faces of the polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryAssignment {
    faces: Vec<BoundaryCondition>,
}

impl BoundaryAssignment {
    pub fn new(faces: Vec<BoundaryCondition>) -> Self {
        Self { faces }
    }

    pub fn uniform(n_faces: usize, bc: BoundaryCondition) -> Self {
        Self { faces: vec![bc; n_faces] }
    }

    pub fn get(&self, face: usize) -> BoundaryCondition {
        self.faces[face]
    }

    pub fn set(&mut self, face: usize, bc: BoundaryCondition) {
        self.faces[face] = bc;
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn as_slice(&self) -> &[BoundaryCondition] {
        &self.faces
    }

    pub fn all(&self, bc: BoundaryCondition) -> bool {
        self.faces.iter().all(|&f| f == bc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tags_and_indices() {
        assert_eq!("slip".parse::<BoundaryCondition>().unwrap(), BoundaryCondition::Slip);
        assert_eq!("3".parse::<BoundaryCondition>().unwrap(), BoundaryCondition::Neumann);
        assert!("4".parse::<BoundaryCondition>().is_err());
        assert!("free".parse::<BoundaryCondition>().is_err());
        for bc in BoundaryCondition::ALL {
            assert_eq!(BoundaryCondition::from_index(bc.index()).unwrap(), bc);
        }
    }
}
