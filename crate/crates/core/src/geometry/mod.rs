//! Polyhedral domains: meshes, dihedral angles, vertex cones, boundary data.

mod boundary;
mod cone;
mod domain_file;
mod mesh;
pub mod solids;

pub use boundary::{BoundaryAssignment, BoundaryCondition};
pub use cone::{fibonacci_sphere, smallest_enclosing_cap, VertexCone};
pub use domain_file::{load_polyhedron, Domain, DomainFile, FaceEntry, VertexBoundEntry};
pub use mesh::{Edge, Point, Polyhedron, DEFAULT_TOLERANCE};
