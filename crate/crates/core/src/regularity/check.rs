//! Hypotheses of each target as affine conditions in `q = 1/s`.

use std::cmp::Ordering;

use super::config::Configuration;
use super::report::{ConditionRecord, EdgeRecord, RegularityReport, SInterval, SharpFlag, SharpKind, VertexRecord};
use super::{weights, ProblemKind, RegularityQuery, Status, Target, Verdict};
use crate::error::{Error, Result};
use crate::scalar::{Bound, EpsNum, Interval, Num};
use crate::spaces::{embeds, DomainTag, EmbeddingVerdict, SpaceDescriptor, SpaceKind};
use crate::vertex_pencil::{admissible_upper_edges, StripRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scope {
    Global,
    Edge(usize),
    Vertex(usize),
}

#[derive(Clone, Debug)]
enum Form {
    /// `constant + slope * q ∈ set`.
    Affine { constant: EpsNum, slope: Num, set: Interval },
    /// `constant != value`.
    NotEqual { constant: EpsNum, value: Num },
    /// An assumption flag.
    Flag(bool),
    /// Input needed for the condition is missing.
    Missing(String),
}

#[derive(Clone, Debug)]
struct Constraint {
    scope: Scope,
    label: String,
    form: Form,
}

impl Constraint {
    fn new(scope: Scope, label: impl Into<String>, form: Form) -> Self {
        Constraint { scope, label: label.into(), form }
    }

    fn status(&self, q: Num) -> Status {
        match &self.form {
            Form::Affine { constant, slope, set } => {
                if set.contains_eps(*constant + EpsNum::exact(*slope * q)) {
                    Status::Satisfied
                } else {
                    Status::NotSatisfied
                }
            }
            Form::NotEqual { constant, value } => {
                if constant.partial_cmp(&EpsNum::exact(*value)) == Some(Ordering::Equal) {
                    Status::NotSatisfied
                } else {
                    Status::Satisfied
                }
            }
            Form::Flag(true) => Status::Satisfied,
            Form::Flag(false) | Form::Missing(_) => Status::Undecidable,
        }
    }

    fn preimage(&self) -> Option<Interval> {
        match &self.form {
            Form::Affine { constant, slope, set } => Some(set.affine_preimage_eps(*constant, *slope)),
            _ => None,
        }
    }
}

fn e(v: Num) -> EpsNum {
    EpsNum::exact(v)
}

fn r(n: i64, d: i64) -> Num {
    Num::ratio(n, d)
}

fn positive() -> Interval {
    Interval::above(Bound::open(Num::ZERO))
}

fn negative() -> Interval {
    Interval::below(Bound::open(Num::ZERO))
}

fn below(v: Num) -> Interval {
    Interval::below(Bound::open(v))
}

fn at_most(v: Num) -> Interval {
    Interval::below(Bound::closed(v))
}

/// Statement of the theorem behind each target, quoted into reports.
fn statement(target: Target, problem: ProblemKind) -> String {
    let ns = problem == ProblemKind::NavierStokes;
    match target {
        Target::W1 => format!(
            "first-order regularity: {}max(1 - mu_k, 0) < delta_k + 2/s < 1 on every edge and the closed strip \
             between Re λ = -1/2 and Re λ = 1 - beta_j - 3/s free of eigenvalues at every vertex",
            if ns { "s > 6/5, " } else { "" }
        ),
        Target::W2 => format!(
            "second-order regularity: {}max(2 - mu_k, 0) < delta_k + 2/s < 2 on every edge, the closed strip between \
             Re λ = -1/2 and Re λ = 2 - beta_j - 3/s free at every vertex, data satisfying the compatibility conditions",
            if ns { "beta_j + 3/s < 5/2, " } else { "" }
        ),
        Target::C1 => "Hölder regularity of order one: beta_j - sigma < 3/2, -1/2 < Re λ <= 1 + sigma - beta_j free, \
                       1 - mu_k < delta_k - sigma < 1, delta_k >= 0, delta_k != sigma"
            .into(),
        Target::C2 => "Hölder regularity of order two: beta_j - sigma < 5/2, -1/2 < Re λ <= 2 + sigma - beta_j free, \
                       2 - mu_k < delta_k - sigma < 2, delta_k >= 0, delta_k not in {sigma, 1 + sigma}"
            .into(),
        Target::Exist => "existence for small data: s > 3/2, beta_j + 3/s <= 2, delta_k + 3/s <= 2, \
                          1 - Re λ1 < delta_k + 2/s < 1 + Re λ1 on every edge, the closed strip between Re λ = -1/2 \
                          and Re λ = 1 - beta_j - 3/s free; Dirichlet on a face of every edge"
            .into(),
    }
}

fn edge_formula(target: Target) -> &'static str {
    match target {
        Target::W1 => "max(1 - mu_k, 0) < delta_k + 2/s < 1",
        Target::W2 => "max(2 - mu_k, 0) < delta_k + 2/s < 2",
        Target::C1 => "1 - mu_k < delta_k - sigma < 1, delta_k >= 0, delta_k != sigma",
        Target::C2 => "2 - mu_k < delta_k - sigma < 2, delta_k >= 0, delta_k not in {sigma, 1 + sigma}",
        Target::Exist => "1 - Re λ1 < delta_k + 2/s < 1 + Re λ1, delta_k + 3/s <= 2",
    }
}

struct Built {
    constraints: Vec<Constraint>,
    /// Upper edge of the required strip per vertex: `constant + slope * q`.
    strip_tops: Vec<(EpsNum, Num)>,
    lower_open: bool,
}

fn build(config: &Configuration, target: Target, sigma: Option<Num>, beta: &[EpsNum], delta: &[EpsNum]) -> Result<Built> {
    let ns = config.problem == ProblemKind::NavierStokes;
    let a = &config.assumptions;
    let mut c = Vec::new();
    let sigma = e(sigma.unwrap_or(Num::ZERO));
    if !target.is_holder() {
        c.push(Constraint::new(
            Scope::Global,
            "s > 1",
            Form::Affine { constant: e(Num::ZERO), slope: Num::ONE, set: Interval::open(Num::ZERO, Num::ONE) },
        ));
    }
    let two = Num::int(2);
    let three = Num::int(3);
    // (order of the strip top, lower edge of the edge interval)
    let (order, edge_floor) = match target {
        Target::W1 | Target::C1 | Target::Exist => (Num::ONE, Num::ONE),
        Target::W2 | Target::C2 => (two, two),
    };
    match target {
        Target::W1 if ns => c.push(Constraint::new(
            Scope::Global,
            "s > 6/5",
            Form::Affine { constant: e(Num::ZERO), slope: Num::ONE, set: below(r(5, 6)) },
        )),
        Target::Exist => {
            if let Some(edge) = config.edges.iter().find(|e| !e.dirichlet_adjacent()) {
                return Err(Error::Precondition(format!(
                    "{} (conditions {}) has no Dirichlet face; existence needs Dirichlet on a face of every edge",
                    edge.label,
                    edge.pair_label()
                )));
            }
            c.push(Constraint::new(
                Scope::Global,
                "s > 3/2",
                Form::Affine { constant: e(Num::ZERO), slope: Num::ONE, set: below(r(2, 3)) },
            ));
        }
        _ => {}
    }
    let flags: &[(&str, bool)] = match target {
        Target::W1 | Target::C1 => &[("data_in_required_spaces", a.data_in_required_spaces)],
        Target::W2 | Target::C2 => &[
            ("data_in_required_spaces", a.data_in_required_spaces),
            ("compatibility_conditions_hold", a.compatibility_conditions_hold),
        ],
        Target::Exist => &[("data_in_required_spaces", a.data_in_required_spaces), ("small_data", a.small_data)],
    };
    for (name, set) in flags {
        c.push(Constraint::new(Scope::Global, format!("assumption {name}"), Form::Flag(*set)));
    }

    for (k, edge) in config.edges.iter().enumerate() {
        let d = delta[k];
        let scope = Scope::Edge(k);
        let affine = |label: String, constant: EpsNum, slope: Num, set: Interval| Constraint::new(scope, label, Form::Affine { constant, slope, set });
        if target.is_holder() {
            let x = d - sigma;
            c.push(affine("delta_k >= 0".into(), d, Num::ZERO, Interval::above(Bound::closed(Num::ZERO))));
            c.push(affine(format!("delta_k - sigma < {edge_floor}"), x - e(edge_floor), Num::ZERO, negative()));
            c.push(Constraint::new(scope, "delta_k != sigma", Form::NotEqual { constant: d, value: sigma.value }));
            if target == Target::C2 {
                c.push(Constraint::new(
                    scope,
                    "delta_k != 1 + sigma",
                    Form::NotEqual { constant: d, value: Num::ONE + sigma.value },
                ));
            }
            match edge.mu {
                Some(mu) => c.push(affine(format!("{edge_floor} - mu_k < delta_k - sigma"), x + mu - e(edge_floor), Num::ZERO, positive())),
                None => c.push(Constraint::new(scope, "mu_k", Form::Missing(edge.source.clone()))),
            }
            continue;
        }
        if target == Target::Exist {
            c.push(affine("delta_k + 3/s <= 2".into(), d, three, at_most(two)));
            match edge.lambda1 {
                Some(l1) => {
                    c.push(affine("1 - Re λ1 < delta_k + 2/s".into(), d + l1 - e(Num::ONE), two, positive()));
                    c.push(affine("delta_k + 2/s < 1 + Re λ1".into(), d - l1 - e(Num::ONE), two, negative()));
                }
                None => c.push(Constraint::new(scope, "Re λ1", Form::Missing(format!("{}: Re λ1 not available", edge.source)))),
            }
            continue;
        }
        match edge.mu {
            Some(mu) => c.push(affine(format!("{edge_floor} - mu_k < delta_k + 2/s"), d + mu - e(edge_floor), two, positive())),
            None => c.push(Constraint::new(scope, "mu_k", Form::Missing(edge.source.clone()))),
        }
        c.push(affine("0 < delta_k + 2/s".into(), d, two, positive()));
        c.push(affine(format!("delta_k + 2/s < {edge_floor}"), d, two, below(edge_floor)));
    }

    let lower_open = target.is_holder();
    let mut strip_tops = Vec::new();
    for (j, vertex) in config.vertices.iter().enumerate() {
        let b = beta[j];
        let scope = Scope::Vertex(j);
        match target {
            Target::W2 if ns => c.push(Constraint::new(
                scope,
                "beta_j + 3/s < 5/2",
                Form::Affine { constant: b, slope: three, set: below(r(5, 2)) },
            )),
            Target::C1 | Target::C2 => c.push(Constraint::new(
                scope,
                format!("beta_j - sigma < {}", if target == Target::C1 { "3/2" } else { "5/2" }),
                Form::Affine {
                    constant: b - sigma,
                    slope: Num::ZERO,
                    set: below(if target == Target::C1 { r(3, 2) } else { r(5, 2) }),
                },
            )),
            Target::Exist => c.push(Constraint::new(
                scope,
                "beta_j + 3/s <= 2",
                Form::Affine { constant: b, slope: three, set: at_most(two) },
            )),
            _ => {}
        }
        let (constant, slope) = if target.is_holder() { (e(order) + sigma - b, Num::ZERO) } else { (e(order) - b, -three) };
        strip_tops.push((constant, slope));
        let label = "required strip free";
        if vertex.finding.rule == StripRule::Unknown {
            let why = std::iter::once(StripRule::Unknown.citation().to_string())
                .chain(vertex.finding.caveats.iter().cloned())
                .collect::<Vec<_>>()
                .join("; ");
            c.push(Constraint::new(scope, label, Form::Missing(why)));
        } else {
            let set = admissible_upper_edges(&vertex.finding, lower_open);
            c.push(Constraint::new(scope, label, Form::Affine { constant, slope, set }));
        }
    }
    Ok(Built { constraints: c, strip_tops, lower_open })
}

fn strip_text(top: EpsNum, lower_open: bool) -> String {
    let h = r(-1, 2);
    if lower_open {
        format!("(-1/2, {top}]")
    } else if top >= e(h) {
        format!("[-1/2, {top}]")
    } else {
        format!("[{top}, -1/2]")
    }
}

fn record(c: &Constraint, q: Num) -> ConditionRecord {
    let status = c.status(q);
    let detail = match &c.form {
        Form::Missing(why) => Some(why.clone()),
        _ => None,
    };
    ConditionRecord { label: c.label.clone(), status, detail }
}

/// Evaluates the hypotheses of `query.target` at the given parameters.
pub fn check(config: &Configuration, query: &RegularityQuery) -> Result<RegularityReport> {
    query.validate()?;
    let beta = weights(&query.beta, config.vertices.len(), "beta")?;
    let delta = weights(&query.delta, config.edges.len(), "delta")?;
    let built = build(config, query.target, query.sigma, &beta, &delta)?;
    let q = query.s.map_or(Num::ZERO, |s| s.recip());

    let conditions: Vec<ConditionRecord> = built
        .constraints
        .iter()
        .filter(|c| c.scope == Scope::Global)
        .map(|c| record(c, q))
        .collect();
    let edges: Vec<EdgeRecord> = config
        .edges
        .iter()
        .enumerate()
        .map(|(k, edge)| {
            let conds: Vec<ConditionRecord> = built
                .constraints
                .iter()
                .filter(|c| c.scope == Scope::Edge(k))
                .map(|c| record(c, q))
                .collect();
            EdgeRecord {
                id: edge.id,
                label: edge.label.clone(),
                theta: edge.theta,
                pair: edge.pair_label(),
                mu: edge.mu,
                lambda1: if query.target == Target::Exist { edge.lambda1 } else { None },
                source: edge.source.clone(),
                required: edge_formula(query.target).into(),
                status: conds.iter().fold(Status::Satisfied, |s, c| s.and(c.status)),
                conditions: conds,
            }
        })
        .collect();
    let vertices: Vec<VertexRecord> = config
        .vertices
        .iter()
        .enumerate()
        .map(|(j, vertex)| {
            let conds: Vec<ConditionRecord> = built
                .constraints
                .iter()
                .filter(|c| c.scope == Scope::Vertex(j))
                .map(|c| record(c, q))
                .collect();
            let (constant, slope) = built.strip_tops[j];
            let top = constant + e(slope * q);
            let required_strip = strip_text(top, built.lower_open);
            let f = &vertex.finding;
            let strip_status = conds.iter().find(|c| c.label == "required strip free").map(|c| c.status);
            let exceptional: Vec<String> = f.exceptional.iter().map(|x| x.value.to_string()).collect();
            let justification = match strip_status {
                Some(Status::Satisfied) => format!(
                    "{required_strip} inside {} avoiding {{{}}} by rule {}",
                    f.free_strip,
                    exceptional.join(", "),
                    f.rule.id()
                ),
                Some(Status::NotSatisfied) => format!(
                    "{required_strip} leaves {} or meets an exceptional value {{{}}} (rule {})",
                    f.free_strip,
                    exceptional.join(", "),
                    f.rule.id()
                ),
                _ => format!("no eigenvalue-free strip known for {}", vertex.label),
            };
            VertexRecord {
                id: vertex.id,
                label: vertex.label.clone(),
                rule: f.rule,
                free_strip: f.free_strip,
                exceptional: f.exceptional.iter().map(|x| x.value).collect(),
                required_strip,
                status: conds.iter().fold(Status::Satisfied, |s, c| s.and(c.status)),
                justification,
                conditions: conds,
            }
        })
        .collect();

    let overall = conditions
        .iter()
        .map(|c| c.status)
        .chain(edges.iter().map(|x| x.status))
        .chain(vertices.iter().map(|x| x.status))
        .fold(Status::Satisfied, Status::and);
    let mut notes = Vec::new();
    for v in &vertices {
        if v.rule == StripRule::Unknown {
            notes.push(format!("{} blocks a decision: no rule of the catalogue applies", v.label));
        }
    }
    for x in &edges {
        if x.conditions.iter().any(|c| c.status == Status::Undecidable) {
            notes.push(format!("{}: exponent unavailable ({})", x.label, x.source));
        }
    }
    for c in &conditions {
        if c.status == Status::Undecidable {
            notes.push(format!("{} is not asserted", c.label));
        }
    }
    Ok(RegularityReport {
        domain: config.name.clone(),
        mode: config.mode,
        target: query.target,
        problem: config.problem,
        s: query.s,
        sigma: query.sigma,
        beta,
        delta,
        verdict: Verdict::from(overall),
        conditions,
        edges,
        vertices,
        s_interval: None,
        sharp: vec![],
        assumptions: config.assumptions.clone(),
        citations: citations(config, query.target),
        notes,
    })
}

fn citations(config: &Configuration, target: Target) -> Vec<String> {
    let mut out = vec![statement(target, config.problem)];
    out.extend(config.citations.iter().cloned());
    for v in &config.vertices {
        let c = format!("{}: {}", v.finding.rule.id(), v.finding.rule.citation());
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn expect(query: &RegularityQuery, target: Target) -> Result<()> {
    if query.target != target {
        return Err(Error::MalformedQuery(format!("expected a {target} query, got {}", query.target)));
    }
    Ok(())
}

pub fn check_w1(config: &Configuration, query: &RegularityQuery) -> Result<RegularityReport> {
    expect(query, Target::W1)?;
    check(config, query)
}

pub fn check_w2(config: &Configuration, query: &RegularityQuery) -> Result<RegularityReport> {
    expect(query, Target::W2)?;
    check(config, query)
}

pub fn check_c1(config: &Configuration, query: &RegularityQuery) -> Result<RegularityReport> {
    expect(query, Target::C1)?;
    check(config, query)
}

pub fn check_c2(config: &Configuration, query: &RegularityQuery) -> Result<RegularityReport> {
    expect(query, Target::C2)?;
    check(config, query)
}

pub fn check_existence_small_data(config: &Configuration, query: &RegularityQuery) -> Result<RegularityReport> {
    expect(query, Target::Exist)?;
    check(config, query)
}

/// [`check`] followed by [`sharpness_flags`].
pub fn evaluate(config: &Configuration, query: &RegularityQuery) -> Result<RegularityReport> {
    check(config, query).map(sharpness_flags)
}

fn scope_label(config: &Configuration, scope: Scope) -> String {
    match scope {
        Scope::Global => "global".into(),
        Scope::Edge(k) => config.edges[k].label.clone(),
        Scope::Vertex(j) => config.vertices[j].label.clone(),
    }
}

fn same_bound(a: Option<Bound>, b: Option<Bound>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x.closed == y.closed && x.value.partial_cmp(&y.value) == Some(Ordering::Equal),
        (None, None) => true,
        _ => false,
    }
}

/// Admissible `s` for the nonweighted query `beta = delta = 0`.
///
/// Conditions that cannot be evaluated are skipped and the interval is
/// marked conditional.
pub fn max_s(config: &Configuration, target: Target) -> Result<SInterval> {
    if target.is_holder() {
        return Err(Error::MalformedQuery(format!("no s-interval for the Hölder target {target}")));
    }
    let beta = vec![e(Num::ZERO); config.vertices.len()];
    let delta = vec![e(Num::ZERO); config.edges.len()];
    let built = build(config, target, None, &beta, &delta)?;
    let mut q = Interval::open(Num::ZERO, Num::ONE);
    let mut pending = Vec::new();
    let mut pieces = Vec::new();
    for c in &built.constraints {
        match (&c.form, c.preimage()) {
            (_, Some(p)) => {
                q = q.intersect(&p);
                pieces.push((c, p));
            }
            (Form::Missing(_), _) | (Form::Flag(false), _) => {
                pending.push(format!("{}: {}", scope_label(config, c.scope), c.label));
            }
            _ => {}
        }
    }
    let binding = |pick: fn(&Interval) -> Option<Bound>| -> Option<String> {
        if q.is_empty() {
            return None;
        }
        pieces
            .iter()
            .find(|(c, p)| c.label != "s > 1" && same_bound(pick(p), pick(&q)))
            .map(|(c, _)| format!("{}: {}", scope_label(config, c.scope), c.label))
    };
    // q's lower edge is the upper edge in s and vice versa
    let upper_binding = binding(|i| i.lo);
    let lower_binding = binding(|i| i.hi);
    let interval = if q.is_empty() { Interval::empty() } else { q.reciprocal() };
    let mut notes = Vec::new();
    if config.bounded && target != Target::Exist {
        notes.push(
            "on a bounded domain the conclusion persists for every smaller s > 1, by inclusion of the data and \
             solution spaces; this is a reporting convention, the hypotheses are certified only on the interval"
                .to_string(),
        );
    }
    if target == Target::W1 {
        notes.extend(identification_notes(config));
    }
    Ok(SInterval {
        target,
        interval,
        lower_binding,
        upper_binding,
        conditional: !pending.is_empty(),
        pending,
        notes,
    })
}

/// Which nonweighted identifications the spaces rules certify.
fn identification_notes(config: &Configuration) -> Vec<String> {
    let zeros = |n: usize| vec![e(Num::ZERO); n];
    let weighted = |kind, s| {
        SpaceDescriptor::sobolev(kind, 1, s, zeros(config.vertices.len()), zeros(config.edges.len()), DomainTag::Bounded)
    };
    let both = |a: &SpaceDescriptor, b: &SpaceDescriptor| {
        let holds = |x, y| embeds(x, y).map(|j| j.verdict == EmbeddingVerdict::Holds).unwrap_or(false);
        holds(a, b) && holds(b, a)
    };
    let mut out = Vec::new();
    let v = r(3, 2);
    if both(&SpaceDescriptor::nonweighted(1, v), &weighted(SpaceKind::V, v)) {
        out.push("for s < 2 the zero-weight space V^{1,s}_{0,0} is the nonweighted W^{1,s}".into());
    }
    let w = r(5, 2);
    if both(&SpaceDescriptor::nonweighted(1, w), &weighted(SpaceKind::W, w)) {
        out.push("for s < 3 the zero-weight space W^{1,s}_{0,0} is the nonweighted W^{1,s}".into());
    }
    out
}

/// Marks the inequalities whose boundaries cannot be weakened.
pub fn sharpness_flags(mut report: RegularityReport) -> RegularityReport {
    let sharp = "counterexamples show that these lower bounds cannot be weakened";
    let analogy = "the analogous inequalities of the first-order and Hölder results cannot be weakened either";
    let flag = |condition: &str, kind, citation: &str| SharpFlag { condition: condition.into(), kind, citation: citation.into() };
    report.sharp = match report.target {
        Target::W2 => vec![
            flag("delta_k + 2/s > 2 - mu_k", SharpKind::Sharp, sharp),
            flag("beta_j + 3/s > 2 - Re Λ_j", SharpKind::Sharp, sharp),
        ],
        Target::W1 => vec![
            flag("delta_k + 2/s > 1 - mu_k", SharpKind::ByAnalogy, analogy),
            flag("beta_j + 3/s > 1 - Re Λ_j", SharpKind::ByAnalogy, analogy),
        ],
        Target::C1 => vec![flag("delta_k - sigma > 1 - mu_k", SharpKind::ByAnalogy, analogy)],
        Target::C2 => vec![flag("delta_k - sigma > 2 - mu_k", SharpKind::ByAnalogy, analogy)],
        Target::Exist => vec![],
    };
    report
}

/// A point inside `interval`, for sampling.
pub(crate) fn representative(interval: &Interval) -> Option<Num> {
    if interval.is_empty() {
        return None;
    }
    let lo = interval.lo.map(|b| b.value);
    let hi = interval.hi.map(|b| b.value);
    Some(match (lo, hi) {
        (Some(a), Some(b)) if a == b => a,
        (Some(a), Some(b)) => (a + b) / Num::int(2),
        (Some(a), None) => a + Num::ONE,
        (None, Some(b)) => b - Num::ONE,
        (None, None) => Num::int(2),
    })
}

/// [`max_s`] with the nonweighted check evaluated at a point of the
/// interval (at `s = 2` when it is empty).
pub fn scan(config: &Configuration, target: Target) -> Result<RegularityReport> {
    let interval = max_s(config, target)?;
    let s = representative(&interval.interval).unwrap_or(Num::int(2));
    let mut report = evaluate(config, &RegularityQuery::sobolev(target, s))?;
    report.s_interval = Some(interval);
    Ok(report)
}
