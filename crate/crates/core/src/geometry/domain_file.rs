//! JSON domain files.
//!
//! ```json
//! {
//!   "name": "unit cube",
//!   "complement": false,
//!   "vertices": [[0, 0, 0], [1, 0, 0], ...],
//!   "faces": [{ "loop": [0, 2, 3, 1], "bc": "dirichlet" }, ...],
//!   "vertex_bounds": { "5": { "bound": 0.8, "note": "cone comparison" } },
//!   "assumptions": { "lipschitz_graph": true }
//! }
//! ```
//!
//! Face loops are counterclockwise seen from outside the solid. `bc` is one
//! of `dirichlet`, `tangential-velocity`, `slip`, `neumann` (or the digits
//! 0 to 3). `complement`, `name`, `vertex_bounds` and `assumptions` are
//! optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::boundary::{BoundaryAssignment, BoundaryCondition};
use super::mesh::{Point, Polyhedron, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::regularity::Assumptions;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    #[serde(rename = "loop")]
    pub vertex_loop: Vec<usize>,
    pub bc: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexBoundEntry {
    /// Lower bound for the real part of the first eigenvalue of the vertex
    /// pencil above `-1/2`.
    pub bound: f64,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub complement: bool,
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<FaceEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertex_bounds: BTreeMap<String, VertexBoundEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumptions: Option<Assumptions>,
}

/// A validated domain with its boundary data.
#[derive(Clone, Debug)]
pub struct Domain {
    pub polyhedron: Polyhedron,
    pub boundary: BoundaryAssignment,
    pub vertex_bounds: BTreeMap<usize, VertexBoundEntry>,
    pub assumptions: Assumptions,
}

impl Domain {
    pub fn new(polyhedron: Polyhedron, boundary: BoundaryAssignment) -> Result<Domain> {
        if boundary.len() != polyhedron.faces.len() {
            return Err(Error::Schema(format!(
                "{} boundary conditions for {} faces",
                boundary.len(),
                polyhedron.faces.len()
            )));
        }
        Ok(Domain {
            polyhedron,
            boundary,
            vertex_bounds: BTreeMap::new(),
            assumptions: Assumptions::default(),
        })
    }

    pub fn with_vertex_bound(mut self, vertex: usize, bound: f64, note: &str) -> Result<Domain> {
        check_bound(vertex, bound, self.polyhedron.vertices.len())?;
        self.vertex_bounds.insert(vertex, VertexBoundEntry { bound, note: note.to_string() });
        Ok(self)
    }

    pub fn with_assumptions(mut self, assumptions: Assumptions) -> Domain {
        self.assumptions = assumptions;
        self
    }

    pub fn to_file(&self) -> DomainFile {
        DomainFile {
            name: self.polyhedron.name.clone(),
            complement: self.polyhedron.complement,
            vertices: self.polyhedron.vertices.iter().map(|p| [p.x, p.y, p.z]).collect(),
            faces: self
                .polyhedron
                .faces
                .iter()
                .zip(self.boundary.as_slice())
                .map(|(lp, bc)| FaceEntry { vertex_loop: lp.clone(), bc: bc.tag().to_string() })
                .collect(),
            vertex_bounds: self.vertex_bounds.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            assumptions: Some(self.assumptions.clone()),
        }
    }
}

fn check_bound(vertex: usize, bound: f64, n_vertices: usize) -> Result<()> {
    if vertex >= n_vertices {
        return Err(Error::Schema(format!("vertex_bounds: vertex {vertex} does not exist")));
    }
    if !(bound > -0.5) || !bound.is_finite() {
        return Err(Error::Schema(format!(
            "vertex_bounds: bound {bound} at vertex {vertex} must exceed -1/2"
        )));
    }
    Ok(())
}

impl DomainFile {
    pub fn parse(source: &str) -> Result<DomainFile> {
        serde_json::from_str(source).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn into_domain(self, tolerance: f64) -> Result<Domain> {
        let mut bcs = Vec::with_capacity(self.faces.len());
        for (face, entry) in self.faces.iter().enumerate() {
            let bc: BoundaryCondition = entry.bc.parse().map_err(|_| Error::UnknownBoundaryTag {
                face,
                tag: entry.bc.clone(),
            })?;
            bcs.push(bc);
        }
        let vertices = self.vertices.iter().map(|v| Point::new(v[0], v[1], v[2])).collect();
        let faces = self.faces.into_iter().map(|f| f.vertex_loop).collect();
        let polyhedron = Polyhedron::with_tolerance(vertices, faces, self.complement, self.name, tolerance)?;
        let n = polyhedron.vertices.len();
        let mut vertex_bounds = BTreeMap::new();
        for (key, entry) in self.vertex_bounds {
            let vertex: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::Schema(format!("vertex_bounds: key {key:?} is not a vertex index")))?;
            check_bound(vertex, entry.bound, n)?;
            vertex_bounds.insert(vertex, entry);
        }
        Ok(Domain {
            polyhedron,
            boundary: BoundaryAssignment::new(bcs),
            vertex_bounds,
            assumptions: self.assumptions.unwrap_or_default(),
        })
    }
}

/// Parses and validates a domain file with the default tolerance.
pub fn load_polyhedron(source: &str) -> Result<Domain> {
    DomainFile::parse(source)?.into_domain(DEFAULT_TOLERANCE)
}
