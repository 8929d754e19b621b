//! Structured reports and their text rendering.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::ConfigMode;
use super::{Assumptions, ProblemKind, Status, Target, Verdict};
use crate::scalar::{EpsNum, Interval, Num};
use crate::vertex_pencil::StripRule;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionRecord {
    pub label: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub label: String,
    pub theta: Option<f64>,
    pub pair: String,
    pub mu: Option<EpsNum>,
    pub lambda1: Option<EpsNum>,
    pub source: String,
    pub required: String,
    pub status: Status,
    pub conditions: Vec<ConditionRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub label: String,
    pub rule: StripRule,
    pub free_strip: Interval,
    pub exceptional: Vec<Num>,
    pub required_strip: String,
    pub status: Status,
    pub justification: String,
    pub conditions: Vec<ConditionRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SInterval {
    pub target: Target,
    pub interval: Interval,
    /// Constraint fixing the lower end.
    pub lower_binding: Option<String>,
    /// Constraint fixing the upper end.
    pub upper_binding: Option<String>,
    /// Some conditions could not be evaluated and were left out.
    pub conditional: bool,
    pub pending: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SharpKind {
    Sharp,
    ByAnalogy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpFlag {
    pub condition: String,
    pub kind: SharpKind,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub domain: String,
    pub mode: ConfigMode,
    pub target: Target,
    pub problem: ProblemKind,
    pub s: Option<Num>,
    pub sigma: Option<Num>,
    pub beta: Vec<EpsNum>,
    pub delta: Vec<EpsNum>,
    pub verdict: Verdict,
    pub conditions: Vec<ConditionRecord>,
    pub edges: Vec<EdgeRecord>,
    pub vertices: Vec<VertexRecord>,
    pub s_interval: Option<SInterval>,
    pub sharp: Vec<SharpFlag>,
    pub assumptions: Assumptions,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl RegularityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(source: &str) -> crate::Result<RegularityReport> {
        serde_json::from_str(source).map_err(|e| crate::Error::Schema(e.to_string()))
    }
}

fn list(v: &[EpsNum]) -> String {
    let mut distinct: Vec<&EpsNum> = Vec::new();
    for x in v {
        if !distinct.contains(&x) {
            distinct.push(x);
        }
    }
    match distinct.as_slice() {
        [] => "-".into(),
        [one] => one.to_string(),
        _ => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
    }
}

fn failed(conds: &[ConditionRecord]) -> String {
    let bad: Vec<String> = conds
        .iter()
        .filter(|c| c.status != Status::Satisfied)
        .map(|c| format!("{} [{}]", c.label, c.status.mark()))
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("  <- {}", bad.join("; "))
    }
}

impl fmt::Display for SInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} s-interval {:.6}", self.target, self.interval)?;
        if self.conditional {
            write!(f, " (conditional)")?;
        }
        writeln!(f)?;
        if let Some(b) = &self.lower_binding {
            writeln!(f, "    lower end from {b}")?;
        }
        if let Some(b) = &self.upper_binding {
            writeln!(f, "    upper end from {b}")?;
        }
        for p in &self.pending {
            writeln!(f, "    not evaluated: {p}")?;
        }
        for n in &self.notes {
            writeln!(f, "    note: {n}")?;
        }
        Ok(())
    }
}

impl fmt::Display for RegularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.problem {
            ProblemKind::StokesLinear => "stokes-linear",
            ProblemKind::NavierStokes => "navier-stokes",
        };
        writeln!(f, "{} on {} ({kind}): {}", self.target, self.domain, self.verdict)?;
        match (self.s, self.sigma) {
            (Some(s), _) => write!(f, "  s = {s:.6}")?,
            (_, Some(sigma)) => write!(f, "  sigma = {sigma}")?,
            _ => {}
        }
        writeln!(f, ", beta = {}, delta = {}", list(&self.beta), list(&self.delta))?;
        if let Some(i) = &self.s_interval {
            write!(f, "  {i}")?;
        }
        for c in &self.conditions {
            writeln!(f, "  [{}] {}", c.status.mark(), c.label)?;
        }
        writeln!(f, "  edges: {}", self.edges.first().map_or("", |e| e.required.as_str()))?;
        for e in &self.edges {
            let theta = e.theta.map_or(String::new(), |t| format!(" theta={:.6}pi", t / std::f64::consts::PI));
            let mu = match (e.lambda1, e.mu) {
                (Some(l), _) => format!("Re λ1={l:.8}"),
                (_, Some(m)) => format!("mu={m:.8}"),
                _ => "mu=?".into(),
            };
            writeln!(f, "    [{}] {}{theta} bc={} {mu} ({}){}", e.status.mark(), e.label, e.pair, e.source, failed(&e.conditions))?;
        }
        writeln!(f, "  vertices:")?;
        for v in &self.vertices {
            writeln!(f, "    [{}] {}: {}{}", v.status.mark(), v.label, v.justification, failed(&v.conditions))?;
        }
        for s in &self.sharp {
            let kind = match s.kind {
                SharpKind::Sharp => "sharp",
                SharpKind::ByAnalogy => "sharp by analogy",
            };
            writeln!(f, "  {kind}: {} ({})", s.condition, s.citation)?;
        }
        let a = &self.assumptions;
        writeln!(
            f,
            "  assumptions: data_in_required_spaces={} compatibility_conditions_hold={} lv_trivial={} small_data={} lipschitz_graph={}",
            a.data_in_required_spaces, a.compatibility_conditions_hold, a.lv_trivial, a.small_data, a.lipschitz_graph
        )?;
        for c in &self.citations {
            writeln!(f, "  cites: {c}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
