//! The data a regularity check consumes: one record per edge with its
//! exponents and one per vertex with its strip finding.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Assumptions, ProblemKind};
use crate::edge_pencil::{edge_pencil, eigenvalue_real_part, mu_branch, MuBranch, MuValue, SpectralSettings};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::geometry::{BoundaryCondition, Domain, VertexCone};
use crate::scalar::{EpsNum, Num};
use crate::vertex_pencil::{eigenfree_strip, StripFinding, VertexContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigMode {
    /// Exponents computed from an actual mesh.
    Geometry,
    /// Class-wide bounds for a family of domains.
    Catalogue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeData {
    pub id: usize,
    pub label: String,
    pub theta: Option<f64>,
    pub pair: (BoundaryCondition, BoundaryCondition),
    /// `mu_k`, or a strict lower bound `b + ε`; `None` when it could not be computed.
    pub mu: Option<EpsNum>,
    /// `Re lambda_1`, or a lower bound for it.
    pub lambda1: Option<EpsNum>,
    pub source: String,
}

impl EdgeData {
    pub fn dirichlet_adjacent(&self) -> bool {
        self.pair.0 == BoundaryCondition::Dirichlet || self.pair.1 == BoundaryCondition::Dirichlet
    }

    pub fn pair_label(&self) -> String {
        format!("{},{}", self.pair.0.index(), self.pair.1.index())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexData {
    pub id: usize,
    pub label: String,
    pub finding: StripFinding,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub name: String,
    pub mode: ConfigMode,
    pub bounded: bool,
    pub problem: ProblemKind,
    pub edges: Vec<EdgeData>,
    pub vertices: Vec<VertexData>,
    pub assumptions: Assumptions,
    pub citations: Vec<String>,
}

fn describe(v: &MuValue) -> String {
    let how = match v.provenance {
        crate::edge_pencil::MuProvenance::ClosedForm => "closed form".to_string(),
        crate::edge_pencil::MuProvenance::Numeric => format!("numeric, n = {}", v.n.unwrap_or(0)),
    };
    let branch = match v.branch {
        MuBranch::Lambda1 => "Re λ1",
        MuBranch::Lambda2 => "Re λ2",
    };
    format!("{branch}, {how}")
}

struct EdgeExponents {
    mu: std::result::Result<MuValue, String>,
    lambda1: std::result::Result<MuValue, String>,
}

fn exponents(theta: f64, pair: (BoundaryCondition, BoundaryCondition), settings: &SpectralSettings) -> EdgeExponents {
    let pencil = match crate::edge_pencil::DihedronPencil::new(theta, pair.0, pair.1) {
        Ok(p) => p,
        Err(e) => return EdgeExponents { mu: Err(e.to_string()), lambda1: Err(e.to_string()) },
    };
    let branch = mu_branch(&pencil);
    let mu = eigenvalue_real_part(&pencil, branch, settings).map_err(|e| e.to_string());
    let lambda1 = if branch == MuBranch::Lambda1 {
        mu.clone()
    } else {
        eigenvalue_real_part(&pencil, MuBranch::Lambda1, settings).map_err(|e| e.to_string())
    };
    EdgeExponents { mu, lambda1 }
}

impl Configuration {
    /// Computes `mu_k` and `Re lambda_1` on every edge and the strip finding
    /// at every vertex. Edges sharing angle and conditions are solved once.
    pub fn from_domain(
        domain: &Domain,
        problem: ProblemKind,
        settings: &SpectralSettings,
        execution: Execution,
    ) -> Result<Configuration> {
        let poly = &domain.polyhedron;
        let mut keys: BTreeMap<(u64, u8, u8), usize> = BTreeMap::new();
        let mut unique: Vec<(f64, (BoundaryCondition, BoundaryCondition))> = Vec::new();
        let mut edge_key = Vec::new();
        for edge in poly.edges() {
            let p = edge_pencil(&domain.boundary, edge)?;
            let pair = (p.d_plus, p.d_minus);
            // angles equal to 12 digits share a solve
            let rounded = (edge.theta * 1e12).round() as u64;
            let key = (rounded, pair.0.index(), pair.1.index());
            let slot = *keys.entry(key).or_insert_with(|| {
                unique.push((edge.theta, pair));
                unique.len() - 1
            });
            edge_key.push((slot, pair));
        }
        let solved = exec::map(&unique, execution, |&(theta, pair)| exponents(theta, pair, settings));
        let edges = poly
            .edges()
            .iter()
            .zip(&edge_key)
            .map(|(edge, &(slot, pair))| {
                let ex = &solved[slot];
                let source = match (&ex.mu, &ex.lambda1) {
                    (Ok(m), _) => describe(m),
                    (Err(e), _) => format!("not computed: {e}"),
                };
                EdgeData {
                    id: edge.id,
                    label: format!("edge {}", edge.id),
                    theta: Some(edge.theta),
                    pair,
                    mu: ex.mu.as_ref().ok().map(|m| EpsNum::exact(Num::float(m.value))),
                    lambda1: ex.lambda1.as_ref().ok().map(|m| EpsNum::exact(Num::float(m.value))),
                    source,
                }
            })
            .collect();
        let vertex_ids: Vec<usize> = (0..poly.vertices.len()).collect();
        let findings = exec::map(&vertex_ids, execution, |&v| -> Result<StripFinding> {
            let cone = VertexCone::new(poly, v)?;
            let ctx = VertexContext::from_cone(&cone, &domain.boundary, poly);
            eigenfree_strip(&ctx, domain.assumptions.lipschitz_graph, domain.vertex_bounds.get(&v))
        });
        let vertices = findings
            .into_iter()
            .enumerate()
            .map(|(v, f)| Ok(VertexData { id: v, label: format!("vertex {v}"), finding: f? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration {
            name: poly.name.clone().unwrap_or_else(|| "domain".into()),
            mode: ConfigMode::Geometry,
            bounded: !poly.complement,
            problem,
            edges,
            vertices,
            assumptions: domain.assumptions.clone(),
            citations: vec![],
        })
    }

    /// Copy with every `mu_k` (and `Re lambda_1`) replaced by `f(mu)`.
    pub fn map_mu(&self, f: impl Fn(EpsNum) -> EpsNum) -> Configuration {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.mu = e.mu.map(&f);
            e.lambda1 = e.lambda1.map(&f);
        }
        out
    }

    pub fn with_problem(mut self, problem: ProblemKind) -> Configuration {
        self.problem = problem;
        self
    }

    pub fn with_assumptions(mut self, assumptions: Assumptions) -> Configuration {
        self.assumptions = assumptions;
        self
    }

    /// Smallest `mu_k` over the edges, if all are known.
    pub fn min_mu(&self) -> Option<EpsNum> {
        let mut it = self.edges.iter().map(|e| e.mu);
        let first = it.next()??;
        it.try_fold(first, |m, x| Some(m.min(x?)))
    }
}
