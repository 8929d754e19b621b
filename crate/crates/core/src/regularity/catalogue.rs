//! Class-wide configurations: bounds on `mu_k` and vertex strips that hold
//! for every polyhedron of a family, as opposed to values computed from a mesh.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::config::{ConfigMode, Configuration, EdgeData, VertexData};
use super::{Assumptions, ProblemKind};
use crate::error::{Error, Result};
use crate::geometry::BoundaryCondition::{self, *};
use crate::scalar::{EpsNum, Num};
use crate::vertex_pencil::{eigenfree_strip, VertexContext};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub label: String,
    pub pair: (BoundaryCondition, BoundaryCondition),
    pub mu: EpsNum,
    pub lambda1: Option<EpsNum>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexClass {
    pub label: String,
    pub context: VertexContext,
    pub lipschitz: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassProfile {
    pub name: String,
    pub summary: String,
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    pub citations: Vec<String>,
}

fn above(n: i64, d: i64) -> EpsNum {
    EpsNum::plus_eps(Num::ratio(n, d))
}

fn edge(label: &str, pair: (BoundaryCondition, BoundaryCondition), mu: EpsNum) -> EdgeClass {
    EdgeClass { label: label.into(), pair, mu, lambda1: None }
}

fn vertex(label: &str, bcs: &[BoundaryCondition], angle: f64, convex: bool) -> VertexClass {
    VertexClass {
        label: label.into(),
        context: VertexContext {
            vertex: 0,
            face_bcs: bcs.to_vec(),
            edge_angles: vec![angle; bcs.len()],
            half_space: convex,
            convex_polyhedron: convex,
            lipschitz_graph: true,
        },
        lipschitz: false,
    }
}

const DIRICHLET_EDGES: &str = "Dirichlet edges: mu_k > 1/2 for every angle";
const MODERATE: &str = "Dirichlet edges with theta_k < 3 arccos(1/4): mu_k > 2/3";
const CONVEX: &str = "convex polyhedron, Dirichlet: mu_k > 1";
const CONVEX_ACUTE: &str = "convex polyhedron with theta_k < 3π/4: mu_k > 4/3";
const MIXED_EDGES: &str = "conditions (i)-(iii) with Dirichlet adjacency: mu_k > 1/2 on Dirichlet-Dirichlet edges, \
                           mu_k > 1/4 otherwise, mu_k > 1/3 if theta_k < 3π/2";

/// Every built-in class profile.
pub fn profiles() -> Vec<ClassProfile> {
    let dd = (Dirichlet, Dirichlet);
    let ds = (Dirichlet, Slip);
    let dirichlet_vertex = || vertex("Dirichlet vertex", &[Dirichlet; 3], 1.5 * PI, false);
    let convex_vertex = || vertex("convex Dirichlet vertex", &[Dirichlet; 3], PI / 2.0, true);
    let mixed_vertex = || vertex("vertex with (i)-(iii), Dirichlet at every edge", &[Dirichlet, Slip, Dirichlet], PI / 2.0, false);
    let slip_vertex = || vertex("convex vertex with one slip face", &[Dirichlet, Slip, Dirichlet], 0.4 * PI, true);
    let mut neumann_vertex = vertex("Neumann vertex, Lipschitz polyhedron", &[Neumann; 3], PI / 2.0, false);
    neumann_vertex.lipschitz = true;
    vec![
        ClassProfile {
            name: "dirichlet".into(),
            summary: "Dirichlet problem in an arbitrary polyhedron".into(),
            edges: vec![edge("Dirichlet edge", dd, above(1, 2))],
            vertices: vec![dirichlet_vertex()],
            citations: vec![DIRICHLET_EDGES.into()],
        },
        ClassProfile {
            name: "dirichlet-moderate".into(),
            summary: "Dirichlet problem, every edge angle below 3 arccos(1/4)".into(),
            edges: vec![edge("Dirichlet edge, theta < 3 arccos(1/4)", dd, above(2, 3))],
            vertices: vec![dirichlet_vertex()],
            citations: vec![MODERATE.into()],
        },
        ClassProfile {
            name: "dirichlet-convex".into(),
            summary: "Dirichlet problem in a convex polyhedron".into(),
            edges: vec![edge("convex Dirichlet edge", dd, above(1, 1))],
            vertices: vec![convex_vertex()],
            citations: vec![CONVEX.into()],
        },
        ClassProfile {
            name: "dirichlet-convex-acute".into(),
            summary: "Dirichlet problem in a convex polyhedron with every edge angle below 3π/4".into(),
            edges: vec![edge("Dirichlet edge, theta < 3π/4", dd, above(4, 3))],
            vertices: vec![convex_vertex()],
            citations: vec![CONVEX_ACUTE.into()],
        },
        ClassProfile {
            name: "neumann".into(),
            summary: "Neumann problem in a Lipschitz polyhedron".into(),
            edges: vec![edge("Neumann edge", (Neumann, Neumann), above(1, 2))],
            vertices: vec![neumann_vertex],
            citations: vec!["Neumann edges: the exponents coincide with the Dirichlet ones, mu_k > 1/2".into()],
        },
        ClassProfile {
            name: "mixed-dirichlet-neumann".into(),
            summary: "each face Dirichlet or Neumann (normal derivative)".into(),
            edges: vec![
                edge("Dirichlet-Dirichlet edge", dd, above(1, 2)),
                edge("Neumann-Neumann edge", (Neumann, Neumann), above(1, 2)),
                edge("Dirichlet-Neumann edge", (Dirichlet, Neumann), above(1, 4)),
            ],
            vertices: vec![vertex("vertex with Dirichlet and Neumann faces", &[Dirichlet, Neumann, Dirichlet], PI / 2.0, false)],
            citations: vec![
                "same conditions on both faces: mu_k > 1/2; Dirichlet on one face and Neumann on the other: mu_k > 1/4"
                    .into(),
            ],
        },
        ClassProfile {
            name: "mixed".into(),
            summary: "conditions (i)-(iii), Dirichlet on a face of every edge".into(),
            edges: vec![edge("Dirichlet-Dirichlet edge", dd, above(1, 2)), edge("edge with (ii) or (iii)", ds, above(1, 4))],
            vertices: vec![mixed_vertex()],
            citations: vec![MIXED_EDGES.into()],
        },
        ClassProfile {
            name: "mixed-moderate".into(),
            summary: "conditions (i)-(iii), Dirichlet adjacency, theta_k < 3π/2 on edges with (ii) or (iii)".into(),
            edges: vec![
                edge("Dirichlet-Dirichlet edge", dd, above(1, 2)),
                edge("edge with (ii) or (iii), theta < 3π/2", ds, above(1, 3)),
            ],
            vertices: vec![mixed_vertex()],
            citations: vec![MIXED_EDGES.into()],
        },
        ClassProfile {
            name: "mixed-small".into(),
            summary: "conditions (i)-(iii), Dirichlet adjacency, theta_k < 3 arccos(1/4) on Dirichlet edges, \
                      < (3/2) arccos(1/4) with (ii), < 3π/4 with (iii)"
                .into(),
            edges: vec![
                edge("Dirichlet-Dirichlet edge", dd, above(2, 3)),
                edge("edge with (ii) or (iii)", ds, above(2, 3)),
            ],
            vertices: vec![mixed_vertex()],
            citations: vec!["under these angle bounds mu_k > 2/3 on every edge".into()],
        },
        ClassProfile {
            name: "slip-convex".into(),
            summary: "convex polyhedron, Dirichlet except one slip face whose edges have theta_k < π/2".into(),
            edges: vec![edge("Dirichlet edge", dd, above(1, 1)), edge("slip-face edge", ds, above(1, 1))],
            vertices: vec![slip_vertex()],
            citations: vec!["one slip face on a convex polyhedron, slip-face angles below π/2: mu_k > 1".into()],
        },
        ClassProfile {
            name: "slip-convex-acute".into(),
            summary: "as slip-convex with theta_k < 3π/8 on the slip face and < 3π/4 elsewhere".into(),
            edges: vec![edge("Dirichlet edge", dd, above(4, 3)), edge("slip-face edge", ds, above(4, 3))],
            vertices: vec![slip_vertex()],
            citations: vec!["slip-face angles below 3π/8 and others below 3π/4: mu_k > 4/3".into()],
        },
        ClassProfile {
            name: "existence".into(),
            summary: "conditions (i)-(iii), Dirichlet adjacency, theta_k <= 3π/2 on edges with (ii) or (iii)".into(),
            edges: vec![
                EdgeClass { lambda1: Some(EpsNum::exact(Num::ratio(1, 3))), ..edge("Dirichlet-Dirichlet edge", dd, above(1, 2)) },
                EdgeClass { lambda1: Some(EpsNum::exact(Num::ratio(1, 3))), ..edge("edge with (ii) or (iii)", ds, above(1, 3)) },
            ],
            vertices: vec![mixed_vertex()],
            citations: vec!["Re λ1 >= 1/3 on every edge; -1 <= Re λ <= 0 free at every vertex".into()],
        },
    ]
}

pub fn profile(name: &str) -> Result<ClassProfile> {
    profiles()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown class profile '{name}'")))
}

impl Configuration {
    pub fn from_profile(profile: &ClassProfile, problem: ProblemKind, assumptions: Assumptions) -> Result<Configuration> {
        let edges = profile
            .edges
            .iter()
            .enumerate()
            .map(|(i, c)| EdgeData {
                id: i,
                label: c.label.clone(),
                theta: None,
                pair: c.pair,
                mu: Some(c.mu),
                lambda1: c.lambda1,
                source: "class bound".into(),
            })
            .collect();
        let vertices = profile
            .vertices
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let finding = eigenfree_strip(&c.context, c.lipschitz, None)?;
                Ok(VertexData { id: i, label: c.label.clone(), finding })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration {
            name: profile.name.clone(),
            mode: ConfigMode::Catalogue,
            bounded: true,
            problem,
            edges,
            vertices,
            assumptions,
            citations: profile.citations.clone(),
        })
    }
}
