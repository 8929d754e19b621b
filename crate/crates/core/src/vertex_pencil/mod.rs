//! Eigenvalue-free strips of the vertex pencils from a catalogue of rules.
//!
//! The pencil of a vertex lives on the spherical cross-section of its cone
//! and is not discretised here. Each rule turns a boundary configuration and
//! a few geometric predicates into a strip `a <= Re lambda <= b` that is
//! guaranteed free of eigenvalues apart from listed exceptional ones.
//!
//! | rule                        | configuration                                         | strip            | exceptional |
//! |-----------------------------|-------------------------------------------------------|------------------|-------------|
//! | `dirichlet`                 | all faces Dirichlet                                   | `[-1/2, 0]`      |             |
//! | `dirichlet-half-space`      | all Dirichlet, cone inside a half-space               | `[-1/2, 1)`      | 1           |
//! | `neumann-lipschitz`         | all Neumann, Lipschitz graph asserted                 | `[-1, 0]`        | 0, 1        |
//! | `mixed-dirichlet-adjacent`  | `d <= 2`, a Dirichlet face at every incident edge     | `[-1, 0]`        |             |
//! | `convex-slip-face`          | convex, one slip face with edge angles below `pi/2`   | `[-1/2, 1]`      | 1 (simple)  |
//! | `user-bound`                | bound `b` supplied with the domain                    | `[-1/2, b)`      |             |
//!
//! When several rules apply the one admitting the widest target strips is
//! reported and the others are listed as alternatives. Overlapping strips
//! are joined, since their union is again free.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryAssignment, BoundaryCondition, Polyhedron, VertexBoundEntry, VertexCone};
use crate::scalar::{Bound, Interval, Num};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StripRule {
    Dirichlet,
    DirichletHalfSpace,
    NeumannLipschitz,
    MixedDirichletAdjacent,
    ConvexSlipFace,
    UserBound,
    Unknown,
}

impl StripRule {
    pub fn id(self) -> &'static str {
        match self {
            StripRule::Dirichlet => "dirichlet",
            StripRule::DirichletHalfSpace => "dirichlet-half-space",
            StripRule::NeumannLipschitz => "neumann-lipschitz",
            StripRule::MixedDirichletAdjacent => "mixed-dirichlet-adjacent",
            StripRule::ConvexSlipFace => "convex-slip-face",
            StripRule::UserBound => "user-bound",
            StripRule::Unknown => "unknown",
        }
    }

    /// Statement backing the rule, quoted into reports.
    pub fn citation(self) -> &'static str {
        match self {
            StripRule::Dirichlet => "Dirichlet vertex: the strip -1/2 <= Re λ <= 0 is free of eigenvalues",
            StripRule::DirichletHalfSpace => {
                "Dirichlet vertex whose cone lies in a half-space: -1/2 <= Re λ <= 1 contains only λ = 1, \
                 with eigenvector (0,0,0,c) and no generalized eigenvectors"
            }
            StripRule::NeumannLipschitz => {
                "Neumann vertex of a Lipschitz polyhedron: the strip -1 <= Re λ <= 0 contains only λ = 0 and λ = 1"
            }
            StripRule::MixedDirichletAdjacent => {
                "conditions (i)-(iii) with Dirichlet on a face of every edge: -1 <= Re λ <= 0 is free of eigenvalues"
            }
            StripRule::ConvexSlipFace => {
                "convex vertex, Dirichlet except one slip face with edge angles below pi/2: \
                 -1/2 <= Re λ <= 1 contains only the simple eigenvalue λ = 1"
            }
            StripRule::UserBound => {
                "eigenvalues in -1/2 <= Re λ <= 1 are real and monotone in the cone; bound taken from an \
                 enclosing circular cone"
            }
            StripRule::Unknown => "no rule in the catalogue covers this vertex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exceptional {
    pub value: Num,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripFinding {
    pub vertex: usize,
    /// Guaranteed free apart from `exceptional`; empty when no rule applies.
    pub free_strip: Interval,
    pub exceptional: Vec<Exceptional>,
    pub rule: StripRule,
    /// Other rules that also applied, with their strips.
    pub alternatives: Vec<(StripRule, Interval)>,
    pub assumptions: Vec<String>,
    pub caveats: Vec<String>,
}

/// User-supplied lower bounds for `Re` of the first eigenvalue above `-1/2`.
pub type VertexBoundTable = BTreeMap<usize, VertexBoundEntry>;

/// What the rules need to know about a vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexContext {
    pub vertex: usize,
    /// Conditions on the incident faces in cyclic order.
    pub face_bcs: Vec<BoundaryCondition>,
    /// Edge `i` lies between faces `i - 1` and `i`.
    pub edge_angles: Vec<f64>,
    pub half_space: bool,
    pub convex_polyhedron: bool,
    /// Geometric Lipschitz-graph test of the cone.
    pub lipschitz_graph: bool,
}

impl VertexContext {
    pub fn from_cone(cone: &VertexCone, boundary: &BoundaryAssignment, polyhedron: &Polyhedron) -> VertexContext {
        VertexContext {
            vertex: cone.vertex,
            face_bcs: cone.faces.iter().map(|&f| boundary.get(f)).collect(),
            edge_angles: cone.edge_angles.clone(),
            half_space: cone.contained_in_half_space,
            convex_polyhedron: polyhedron.is_convex(),
            lipschitz_graph: cone.lipschitz_graph,
        }
    }

    fn all(&self, bc: BoundaryCondition) -> bool {
        self.face_bcs.iter().all(|&b| b == bc)
    }

    fn dirichlet_at_every_edge(&self) -> bool {
        let m = self.face_bcs.len();
        (0..m).all(|i| {
            let before = self.face_bcs[(i + m - 1) % m];
            let after = self.face_bcs[i];
            before == BoundaryCondition::Dirichlet || after == BoundaryCondition::Dirichlet
        })
    }

    /// Index of the single slip face when all other faces are Dirichlet.
    fn single_slip_face(&self) -> Option<usize> {
        let slip: Vec<usize> = (0..self.face_bcs.len())
            .filter(|&i| self.face_bcs[i] == BoundaryCondition::Slip)
            .collect();
        let rest_dirichlet = self
            .face_bcs
            .iter()
            .all(|&b| b == BoundaryCondition::Dirichlet || b == BoundaryCondition::Slip);
        (slip.len() == 1 && rest_dirichlet).then(|| slip[0])
    }
}

fn half() -> Num {
    Num::ratio(-1, 2)
}

fn exceptional(value: i64, note: &str) -> Exceptional {
    Exceptional { value: Num::int(value), note: note.to_string() }
}

struct Candidate {
    rule: StripRule,
    strip: Interval,
    exceptional: Vec<Exceptional>,
    assumptions: Vec<String>,
    caveats: Vec<String>,
}

/// Applies every rule of the catalogue and reports the widest strip.
///
/// `lipschitz_asserted` is the user's Lipschitz-graph flag; asserting it at
/// an all-Neumann vertex whose cone fails the geometric test is refused.
pub fn eigenfree_strip(
    ctx: &VertexContext,
    lipschitz_asserted: bool,
    user_bound: Option<&VertexBoundEntry>,
) -> Result<StripFinding> {
    use BoundaryCondition::*;
    if ctx.face_bcs.len() < 3 || ctx.edge_angles.len() != ctx.face_bcs.len() {
        return Err(Error::InvalidArgument(format!(
            "vertex {} needs at least 3 incident faces with one angle per edge",
            ctx.vertex
        )));
    }
    let mut found: Vec<Candidate> = Vec::new();
    let mut notes = Vec::new();
    if ctx.all(Dirichlet) {
        found.push(Candidate {
            rule: StripRule::Dirichlet,
            strip: Interval::closed(half(), Num::ZERO),
            exceptional: vec![],
            assumptions: vec![],
            caveats: vec![],
        });
        if ctx.half_space {
            found.push(Candidate {
                rule: StripRule::DirichletHalfSpace,
                strip: Interval::new(Some(Bound::closed(half())), Some(Bound::open(Num::ONE))),
                exceptional: vec![exceptional(1, "eigenvector (0,0,0,c), no generalized eigenvectors")],
                assumptions: vec!["cone contained in a half-space".into()],
                caveats: vec![],
            });
        }
    }
    if ctx.all(Neumann) {
        if lipschitz_asserted && !ctx.lipschitz_graph {
            return Err(Error::Contradiction(format!(
                "Lipschitz graph asserted but the cone at vertex {} is not a graph over any plane",
                ctx.vertex
            )));
        }
        if lipschitz_asserted {
            found.push(Candidate {
                rule: StripRule::NeumannLipschitz,
                strip: Interval::closed(Num::int(-1), Num::ZERO),
                exceptional: vec![exceptional(0, "stated exceptional value"), exceptional(1, "stated exceptional value")],
                assumptions: vec!["Lipschitz graph".into()],
                caveats: vec![
                    "the statement lists λ = 1 as lying in -1 <= Re λ <= 0; the strip is used exactly as stated".into(),
                ],
            });
        } else {
            notes.push("all-Neumann vertex: the Lipschitz-graph flag is required".to_string());
        }
    }
    let max_index_two = ctx.face_bcs.iter().all(|b| b.index() <= 2);
    if max_index_two && ctx.dirichlet_at_every_edge() {
        found.push(Candidate {
            rule: StripRule::MixedDirichletAdjacent,
            strip: Interval::closed(Num::int(-1), Num::ZERO),
            exceptional: vec![],
            assumptions: vec!["Dirichlet condition on a face of every incident edge".into()],
            caveats: vec![],
        });
    }
    if let Some(slip) = ctx.single_slip_face() {
        let m = ctx.face_bcs.len();
        let sharp = ctx.edge_angles[slip] < PI / 2.0 && ctx.edge_angles[(slip + 1) % m] < PI / 2.0;
        if ctx.convex_polyhedron && sharp {
            found.push(Candidate {
                rule: StripRule::ConvexSlipFace,
                strip: Interval::closed(half(), Num::ONE),
                exceptional: vec![exceptional(1, "simple eigenvalue")],
                assumptions: vec!["convex polyhedron".into(), "slip-face edge angles below pi/2".into()],
                caveats: vec![],
            });
        }
    }
    if let Some(entry) = user_bound {
        if !(entry.bound > -0.5) {
            return Err(Error::InvalidArgument(format!(
                "vertex {}: bound {} must exceed -1/2",
                ctx.vertex, entry.bound
            )));
        }
        found.push(Candidate {
            rule: StripRule::UserBound,
            strip: Interval::new(Some(Bound::closed(half())), Some(Bound::open(Num::float(entry.bound)))),
            exceptional: vec![],
            assumptions: vec![format!("user bound {}: {}", entry.bound, entry.note)],
            caveats: vec![],
        });
    }

    let guaranteed = known_exceptional(&ctx.face_bcs);
    let Some(best) = (0..found.len()).max_by(|&a, &b| {
        let ka = reach(&found[a]);
        let kb = reach(&found[b]);
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal).then(b.cmp(&a))
    }) else {
        return Ok(StripFinding {
            vertex: ctx.vertex,
            free_strip: Interval::empty(),
            exceptional: guaranteed,
            rule: StripRule::Unknown,
            alternatives: vec![],
            assumptions: vec![],
            caveats: notes,
        });
    };
    let alternatives = found
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != best)
        .map(|(_, c)| (c.rule, c.strip))
        .collect();
    let chosen = found.swap_remove(best);
    let mut strip = chosen.strip;
    let mut exceptional = chosen.exceptional;
    let mut caveats = chosen.caveats;
    // overlapping free strips are free on their union
    let mut merged = vec![false; found.len()];
    loop {
        let next = (0..found.len()).find(|&i| !merged[i] && !strip.intersect(&found[i].strip).is_empty());
        let Some(i) = next else { break };
        merged[i] = true;
        strip = union(&strip, &found[i].strip);
        for e in &found[i].exceptional {
            if !exceptional.iter().any(|x| x.value == e.value) {
                exceptional.push(e.clone());
            }
        }
        caveats.push(format!("strip joined with rule {} ({})", found[i].rule.id(), found[i].strip));
    }
    let hull = Interval::closed(
        strip.lo.map_or(Num::float(f64::NEG_INFINITY), |b| b.value),
        strip.hi.map_or(Num::float(f64::INFINITY), |b| b.value),
    );
    for g in guaranteed {
        if hull.contains(g.value) && !exceptional.iter().any(|e| e.value == g.value) {
            exceptional.push(g);
        }
    }
    Ok(StripFinding {
        vertex: ctx.vertex,
        free_strip: strip,
        exceptional,
        rule: chosen.rule,
        alternatives,
        assumptions: chosen.assumptions,
        caveats: caveats.into_iter().chain(notes).collect(),
    })
}

/// Union of two overlapping intervals.
fn union(a: &Interval, b: &Interval) -> Interval {
    let lo = match (a.lo, b.lo) {
        (Some(x), Some(y)) if x.value == y.value => Some(Bound { value: x.value, closed: x.closed || y.closed }),
        (Some(x), Some(y)) => Some(if x.value < y.value { x } else { y }),
        _ => None,
    };
    let hi = match (a.hi, b.hi) {
        (Some(x), Some(y)) if x.value == y.value => Some(Bound { value: x.value, closed: x.closed || y.closed }),
        (Some(x), Some(y)) => Some(if x.value > y.value { x } else { y }),
        _ => None,
    };
    Interval::new(lo, hi)
}

/// Supremum of admissible upper edges, closed beats open.
fn reach(c: &Candidate) -> (f64, bool) {
    let finding = StripFinding {
        vertex: 0,
        free_strip: c.strip,
        exceptional: c.exceptional.clone(),
        rule: c.rule,
        alternatives: vec![],
        assumptions: vec![],
        caveats: vec![],
    };
    match admissible_upper_edges(&finding, false).hi {
        Some(b) => (b.value.to_f64(), b.closed),
        None => (f64::INFINITY, true),
    }
}

/// Eigenvalues the pencil is guaranteed to have for this configuration.
pub fn known_exceptional(face_bcs: &[BoundaryCondition]) -> Vec<Exceptional> {
    use BoundaryCondition::*;
    if face_bcs.iter().all(|b| matches!(b, Dirichlet | Slip)) {
        vec![exceptional(1, "eigenvector (0,1)"), exceptional(-2, "guaranteed eigenvalue")]
    } else if face_bcs.iter().all(|b| *b == Neumann) {
        vec![exceptional(0, "guaranteed eigenvalue"), exceptional(1, "guaranteed eigenvalue")]
    } else {
        vec![]
    }
}

/// The closed strip between `Re lambda = -1/2` and `Re lambda = upper`, or the
/// half-open one `-1/2 < Re lambda <= upper` when `lower_open`.
pub fn required_strip(upper: Num, lower_open: bool) -> Interval {
    let h = half();
    if lower_open {
        return Interval::new(Some(Bound::open(h)), Some(Bound::closed(upper)));
    }
    if upper >= h {
        Interval::closed(h, upper)
    } else {
        Interval::closed(upper, h)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripCheck {
    pub holds: bool,
    pub justification: String,
}

/// Whether `target` lies in the free strip and avoids every exceptional
/// eigenvalue, endpoints included.
pub fn strip_condition_holds(finding: &StripFinding, target: &Interval) -> StripCheck {
    if target.is_empty() {
        return StripCheck { holds: true, justification: format!("target {target} is empty") };
    }
    if finding.rule == StripRule::Unknown {
        return StripCheck { holds: false, justification: "no rule applies at this vertex".into() };
    }
    if !target.is_subset(&finding.free_strip) {
        return StripCheck {
            holds: false,
            justification: format!("{target} is not inside the free strip {}", finding.free_strip),
        };
    }
    if let Some(e) = finding.exceptional.iter().find(|e| target.contains(e.value)) {
        return StripCheck {
            holds: false,
            justification: format!("{target} contains the exceptional eigenvalue {}", e.value),
        };
    }
    StripCheck {
        holds: true,
        justification: format!("{target} ⊆ {} by rule {}", finding.free_strip, finding.rule.id()),
    }
}

/// Every `b` for which [`required_strip`]`(b, lower_open)` passes
/// [`strip_condition_holds`].
pub fn admissible_upper_edges(finding: &StripFinding, lower_open: bool) -> Interval {
    if finding.rule == StripRule::Unknown {
        return if lower_open { Interval::below(Bound::closed(half())) } else { Interval::empty() };
    }
    let h = half();
    let strip = finding.free_strip;
    let above = finding.exceptional.iter().filter(|e| if lower_open { e.value > h } else { e.value >= h });
    let below = finding.exceptional.iter().filter(|e| e.value < h);
    let mut set = strip;
    if let Some(e) = above.map(|e| e.value).min_by(|a, b| a.partial_cmp(b).unwrap()) {
        set = set.intersect(&Interval::below(Bound::open(e)));
    }
    if lower_open {
        // b <= -1/2 leaves an empty target; otherwise (-1/2, b] must fit
        let reaches_down = match strip.lo {
            None => true,
            Some(lo) => lo.value <= h,
        };
        let upper = set.hi;
        return if reaches_down && !set.is_empty() {
            Interval::new(None, upper)
        } else {
            Interval::below(Bound::closed(h))
        };
    }
    if let Some(e) = below.map(|e| e.value).max_by(|a, b| a.partial_cmp(b).unwrap()) {
        set = set.intersect(&Interval::above(Bound::open(e)));
    }
    if !set.contains(h) {
        return Interval::empty();
    }
    set
}
