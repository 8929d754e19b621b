//! Weighted Sobolev and Hölder spaces as symbolic descriptors, with a
//! certifier for continuous embeddings.
//!
//! A descriptor records kind, order `l` (and Hölder exponent `sigma`),
//! integrability `s`, vertex weights `beta` and edge weights `delta`. Weights
//! are [`EpsNum`] so that quantities such as `sigma + ε` stay symbolic.
//! [`embeds`] searches chains of at most three rule applications; a failed
//! search answers `unknown`, never "does not embed".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{EpsNum, Num};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    /// Homogeneous weights `V^{l,s}_{beta,delta}`.
    V,
    /// Nonhomogeneous weights `W^{l,s}_{beta,delta}`.
    W,
    /// Hölder space `N^{l,sigma}_{beta,delta}`.
    N,
    /// Hölder space `C^{l,sigma}_{beta,delta}`.
    C,
    /// `V^{-1,s}_{beta,delta}`, dual of `V^{1,s'}_{-beta,-delta}`.
    VDual,
    /// Nonweighted `W^{l,s}`.
    Sobolev,
    /// Nonweighted `C^{l,sigma}`.
    Holder,
}

impl SpaceKind {
    fn is_sobolev_type(self) -> bool {
        matches!(self, SpaceKind::V | SpaceKind::W | SpaceKind::VDual | SpaceKind::Sobolev)
    }

    fn is_weighted(self) -> bool {
        !matches!(self, SpaceKind::Sobolev | SpaceKind::Holder)
    }

    fn symbol(self) -> &'static str {
        match self {
            SpaceKind::V => "V",
            SpaceKind::W => "W",
            SpaceKind::N => "N",
            SpaceKind::C => "C",
            SpaceKind::VDual => "V",
            SpaceKind::Sobolev => "W",
            SpaceKind::Holder => "C",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainTag {
    /// Polyhedral cone: a single vertex weight, scaling relations are equalities.
    Cone,
    /// Bounded polyhedral domain.
    Bounded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub l: i32,
    /// Hölder exponent for `N`, `C` and nonweighted Hölder kinds.
    pub sigma: Option<Num>,
    /// Integrability for the Sobolev kinds.
    pub s: Option<Num>,
    pub beta: Vec<EpsNum>,
    pub delta: Vec<EpsNum>,
    pub domain: DomainTag,
}

fn eps(v: Num) -> EpsNum {
    EpsNum::exact(v)
}

impl SpaceDescriptor {
    pub fn sobolev(kind: SpaceKind, l: i32, s: Num, beta: Vec<EpsNum>, delta: Vec<EpsNum>, domain: DomainTag) -> Self {
        SpaceDescriptor { kind, l, sigma: None, s: Some(s), beta, delta, domain }
    }

    pub fn holder(kind: SpaceKind, l: i32, sigma: Num, beta: Vec<EpsNum>, delta: Vec<EpsNum>, domain: DomainTag) -> Self {
        SpaceDescriptor { kind, l, sigma: Some(sigma), s: None, beta, delta, domain }
    }

    /// Nonweighted `W^{l,s}` on a bounded domain.
    pub fn nonweighted(l: i32, s: Num) -> Self {
        SpaceDescriptor::sobolev(SpaceKind::Sobolev, l, s, vec![], vec![], DomainTag::Bounded)
    }

    /// Checks the invariants of the descriptor.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(format!("{self}: {m}")));
        if self.l < -1 {
            return bad("order below -1".into());
        }
        if self.kind.is_sobolev_type() {
            let Some(s) = self.s else { return bad("integrability missing".into()) };
            if !(s > Num::ONE) {
                return bad("integrability must exceed 1".into());
            }
            if self.sigma.is_some() {
                return bad("Sobolev kinds carry no Hölder exponent".into());
            }
            if (self.kind == SpaceKind::VDual) != (self.l == -1) {
                return bad("order -1 is reserved for the dual space".into());
            }
        } else {
            let Some(sigma) = self.sigma else { return bad("Hölder exponent missing".into()) };
            if !(sigma > Num::ZERO && sigma < Num::ONE) {
                return bad("Hölder exponent must lie in (0, 1)".into());
            }
            if self.s.is_some() {
                return bad("Hölder kinds carry no integrability".into());
            }
            if self.l < 0 && self.kind != SpaceKind::Holder {
                return bad("weighted Hölder order must be nonnegative".into());
            }
        }
        if !self.kind.is_weighted() && !(self.beta.is_empty() && self.delta.is_empty()) {
            return bad("nonweighted kinds carry no weights".into());
        }
        if self.domain == DomainTag::Cone && self.beta.len() > 1 {
            return bad("a cone has a single vertex weight".into());
        }
        if self.kind == SpaceKind::W {
            let floor = eps(Num::int(-2) / self.s.unwrap());
            if self.delta.iter().any(|d| !(*d > floor)) {
                return bad("W kinds require delta > -2/s".into());
            }
        }
        if self.kind == SpaceKind::C && self.delta.iter().any(|d| *d < eps(Num::ZERO)) {
            return bad("C kinds require nonnegative delta".into());
        }
        Ok(())
    }

    fn with_kind(&self, kind: SpaceKind) -> SpaceDescriptor {
        SpaceDescriptor { kind, ..self.clone() }
    }

    fn three_over_s(&self) -> Num {
        Num::int(3) / self.s.expect("Sobolev kind")
    }

    fn two_over_s(&self) -> Num {
        Num::int(2) / self.s.expect("Sobolev kind")
    }

    fn l_num(&self) -> Num {
        Num::int(self.l as i64)
    }

    fn sigma_num(&self) -> Num {
        self.sigma.expect("Hölder kind")
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[EpsNum]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}[l={}", self.kind.symbol(), self.l)?;
        if let Some(sigma) = self.sigma {
            write!(f, ",sigma={sigma}")?;
        }
        if let Some(s) = self.s {
            write!(f, ",s={s}")?;
        }
        if self.kind.is_weighted() {
            write!(f, ";beta=({});delta=({})", list(&self.beta), list(&self.delta))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingRule {
    Reflexive,
    /// `V^{l,s} ⊂ V^{l',t}` on a cone: `s <= t`, `l - 3/s >= l' - 3/t`,
    /// `beta - l + 3/s = beta' - l' + 3/t`, `delta - l + 3/s <= delta' - l' + 3/t`.
    SobolevScaling,
    /// Bounded-domain version with `<=` for `beta`.
    BoundedSobolevScaling,
    /// `V^{l,s} ⊂ V^{l,t}` and `W^{l,s} ⊂ W^{l,t}` on a bounded domain for
    /// `t < s`, `beta + 3/s < beta' + 3/t`, `delta + 2/s < delta' + 2/t`.
    IntegrabilityDecrease,
    /// `W^{l,s} ⊂ W^{l',s}` for `l >= l'` with the weight shifts.
    WeightedScaling,
    /// `W^{l,s}_{beta,delta} ⊂ W^{0,t}_{beta - l + 3/s - 3/t, 0}` on a cone.
    WeightedToLebesgue,
    /// `V^{0,s} ⊂ V^{-1,t}` on a bounded domain.
    DualEmbedding,
    /// `V^{l,s} ⊂ N^{l',sigma}` for `l - 3/s > l' + sigma`.
    SobolevToHolder,
    /// `N ⊂ N'` (and `C ⊂ C'` for nonnegative `delta`).
    HolderScaling,
    /// `N ⊂ C` with equal parameters; equality when `delta >= l + sigma`.
    HolderInclusion,
    /// `V = W` when every `delta > l - 2/s`.
    WeightCoincidence,
    /// `W^{1,s} = V^{1,s}_{0,0}` for `s < 2`, `W^{1,s} = W^{1,s}_{0,0}` for `s < 3`.
    NonweightedIdentity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleStep {
    pub rule: EmbeddingRule,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingVerdict {
    Holds,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingJudgment {
    pub verdict: EmbeddingVerdict,
    /// Nonempty exactly when the verdict is `holds`.
    pub chain: Vec<RuleStep>,
}

fn all_pairs(a: &[EpsNum], b: &[EpsNum], f: impl Fn(EpsNum, EpsNum) -> bool) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| f(*x, *y))
}

fn same(x: EpsNum, y: EpsNum) -> bool {
    x.partial_cmp(&y) == Some(std::cmp::Ordering::Equal)
}

fn shift(v: EpsNum, by: Num) -> EpsNum {
    v + eps(by)
}

/// The rule certifying `a ⊂ b` in one step, if any.
fn direct(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Option<EmbeddingRule> {
    use SpaceKind::*;
    if a == b {
        return Some(EmbeddingRule::Reflexive);
    }
    if a.domain != b.domain {
        return None;
    }
    let cone = a.domain == DomainTag::Cone;
    match (a.kind, b.kind) {
        (V, V) if a.s <= b.s => {
            let (sa, sb) = (a.three_over_s(), b.three_over_s());
            let order = a.l_num() - sa >= b.l_num() - sb;
            let da = a.l_num() - sa;
            let db = b.l_num() - sb;
            let beta_ok = if cone {
                all_pairs(&a.beta, &b.beta, |x, y| same(shift(x, -da), shift(y, -db)))
            } else {
                all_pairs(&a.beta, &b.beta, |x, y| shift(x, -da) <= shift(y, -db))
            };
            let delta_ok = all_pairs(&a.delta, &b.delta, |x, y| shift(x, -da) <= shift(y, -db));
            if order && beta_ok && delta_ok {
                return Some(if cone { EmbeddingRule::SobolevScaling } else { EmbeddingRule::BoundedSobolevScaling });
            }
            integrability_decrease(a, b)
        }
        (V, V) | (W, W) if !cone && a.l == b.l && a.s > b.s => integrability_decrease(a, b),
        (W, W) if a.s == b.s && a.l >= b.l => {
            let dl = a.l_num() - b.l_num();
            let beta_ok = if cone {
                all_pairs(&a.beta, &b.beta, |x, y| same(shift(x, -dl), y))
            } else {
                all_pairs(&a.beta, &b.beta, |x, y| shift(x, -dl) <= y)
            };
            let delta_ok = all_pairs(&a.delta, &b.delta, |x, y| shift(x, -dl) <= y);
            if beta_ok && delta_ok {
                return Some(EmbeddingRule::WeightedScaling);
            }
            if cone {
                return weighted_to_lebesgue(a, b);
            }
            None
        }
        (W, W) if cone => weighted_to_lebesgue(a, b),
        (V, W) | (W, V) => {
            let matching = a.l == b.l && a.s == b.s && a.beta == b.beta && a.delta == b.delta;
            let floor = eps(a.l_num() - a.two_over_s());
            (matching && a.delta.iter().all(|d| *d > floor)).then_some(EmbeddingRule::WeightCoincidence)
        }
        (V, VDual) if !cone && a.l == 0 && a.s <= b.s => {
            let (sa, sb) = (a.three_over_s(), b.three_over_s());
            let ok = sa <= Num::ONE + sb
                && all_pairs(&a.beta, &b.beta, |x, y| shift(x, sa) <= shift(y, Num::ONE + sb))
                && all_pairs(&a.delta, &b.delta, |x, y| shift(x, sa) <= shift(y, Num::ONE + sb));
            ok.then_some(EmbeddingRule::DualEmbedding)
        }
        (V, N) => {
            let sa = a.three_over_s();
            let lhs = a.l_num() - sa;
            let rhs = b.l_num() + b.sigma_num();
            let order = lhs > rhs;
            let beta_ok = if cone {
                all_pairs(&a.beta, &b.beta, |x, y| same(shift(x, -lhs), shift(y, -rhs)))
            } else {
                all_pairs(&a.beta, &b.beta, |x, y| shift(x, -lhs) <= shift(y, -rhs))
            };
            let delta_ok = all_pairs(&a.delta, &b.delta, |x, y| shift(x, -lhs) <= shift(y, -rhs));
            (order && beta_ok && delta_ok).then_some(EmbeddingRule::SobolevToHolder)
        }
        (N, N) | (C, C) => {
            let ra = a.l_num() + a.sigma_num();
            let rb = b.l_num() + b.sigma_num();
            let beta_ok = if cone {
                all_pairs(&a.beta, &b.beta, |x, y| same(shift(x, -ra), shift(y, -rb)))
            } else {
                all_pairs(&a.beta, &b.beta, |x, y| shift(x, -ra) <= shift(y, -rb))
            };
            let delta_ok = all_pairs(&a.delta, &b.delta, |x, y| shift(x, -ra) <= shift(y, -rb));
            (ra >= rb && beta_ok && delta_ok).then_some(EmbeddingRule::HolderScaling)
        }
        (N, C) | (C, N) => {
            let matching = a.l == b.l && a.sigma == b.sigma && a.beta == b.beta && a.delta == b.delta;
            let top = eps(a.l_num() + a.sigma_num());
            let coincide = a.delta.iter().all(|d| *d >= top);
            (matching && (a.kind == N || coincide)).then_some(EmbeddingRule::HolderInclusion)
        }
        (Sobolev, V) | (V, Sobolev) | (Sobolev, W) | (W, Sobolev) => {
            let (plain, weighted) = if a.kind == Sobolev { (a, b) } else { (b, a) };
            let zero = |v: &[EpsNum]| v.iter().all(|x| same(*x, eps(Num::ZERO)));
            let bound = if weighted.kind == V { Num::int(2) } else { Num::int(3) };
            let ok = plain.l == 1
                && weighted.l == 1
                && plain.s == weighted.s
                && plain.s.is_some_and(|s| s < bound)
                && zero(&weighted.beta)
                && zero(&weighted.delta);
            ok.then_some(EmbeddingRule::NonweightedIdentity)
        }
        _ => None,
    }
}

fn integrability_decrease(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Option<EmbeddingRule> {
    if a.domain != DomainTag::Bounded || a.l != b.l || !(a.s > b.s) {
        return None;
    }
    let (sa3, sb3) = (a.three_over_s(), b.three_over_s());
    let (sa2, sb2) = (a.two_over_s(), b.two_over_s());
    let ok = all_pairs(&a.beta, &b.beta, |x, y| shift(x, sa3) < shift(y, sb3))
        && all_pairs(&a.delta, &b.delta, |x, y| shift(x, sa2) < shift(y, sb2));
    ok.then_some(EmbeddingRule::IntegrabilityDecrease)
}

fn weighted_to_lebesgue(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Option<EmbeddingRule> {
    if b.l != 0 || !(a.s <= b.s) {
        return None;
    }
    let (sa, sb) = (a.three_over_s(), b.three_over_s());
    let top = a.delta.iter().fold(eps(Num::ZERO), |m, d| m.max(*d));
    let order = eps(a.l_num() - sa) >= shift(top, -sb);
    let beta_ok = all_pairs(&a.beta, &b.beta, |x, y| same(shift(x, -a.l_num() + sa - sb), y));
    let delta_ok = b.delta.len() == a.delta.len() && b.delta.iter().all(|d| same(*d, eps(Num::ZERO)));
    (order && beta_ok && delta_ok).then_some(EmbeddingRule::WeightedToLebesgue)
}

/// Descriptors tried as intermediate links.
fn pool(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Vec<SpaceDescriptor> {
    let mut out: Vec<SpaceDescriptor> = Vec::new();
    let mut push = |d: SpaceDescriptor| {
        if !out.contains(&d) {
            out.push(d);
        }
    };
    for x in [a, b] {
        push(x.clone());
        match x.kind {
            SpaceKind::V | SpaceKind::W => {
                push(x.with_kind(SpaceKind::V));
                push(x.with_kind(SpaceKind::W));
            }
            SpaceKind::N | SpaceKind::C => {
                push(x.with_kind(SpaceKind::N));
                push(x.with_kind(SpaceKind::C));
            }
            SpaceKind::Sobolev => {
                let other = if x == a { b } else { a };
                let zeros = |n: usize| vec![eps(Num::ZERO); n];
                for kind in [SpaceKind::V, SpaceKind::W] {
                    push(SpaceDescriptor {
                        kind,
                        beta: zeros(other.beta.len()),
                        delta: zeros(other.delta.len()),
                        ..x.clone()
                    });
                }
            }
            _ => {}
        }
    }
    out
}

/// Certifies `a ⊂ b` by a chain of at most three rules.
pub fn embeds(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Result<EmbeddingJudgment> {
    a.validate()?;
    b.validate()?;
    if a.domain != b.domain {
        return Err(Error::InvalidArgument(format!("{a} and {b} live on different domains")));
    }
    let nodes: Vec<SpaceDescriptor> = pool(a, b).into_iter().filter(|d| d.validate().is_ok()).collect();
    // breadth-first over the pool; paths of length <= 3
    let start = nodes.iter().position(|d| d == a).expect("a is in its own pool");
    let goal = nodes.iter().position(|d| d == b).expect("b is in its own pool");
    if start == goal {
        return Ok(judgment(vec![RuleStep { rule: EmbeddingRule::Reflexive, from: a.to_string(), to: b.to_string() }]));
    }
    let mut prev: Vec<Option<(usize, EmbeddingRule)>> = vec![None; nodes.len()];
    let mut seen = vec![false; nodes.len()];
    seen[start] = true;
    let mut frontier = vec![start];
    for _ in 0..3 {
        let mut next = Vec::new();
        for &i in &frontier {
            for j in 0..nodes.len() {
                if seen[j] {
                    continue;
                }
                if let Some(rule) = direct(&nodes[i], &nodes[j]) {
                    seen[j] = true;
                    prev[j] = Some((i, rule));
                    next.push(j);
                }
            }
        }
        if seen[goal] {
            let mut chain = Vec::new();
            let mut at = goal;
            while let Some((p, rule)) = prev[at] {
                chain.push(RuleStep { rule, from: nodes[p].to_string(), to: nodes[at].to_string() });
                at = p;
            }
            chain.reverse();
            return Ok(judgment(chain));
        }
        frontier = next;
    }
    Ok(EmbeddingJudgment { verdict: EmbeddingVerdict::Unknown, chain: vec![] })
}

fn judgment(chain: Vec<RuleStep>) -> EmbeddingJudgment {
    EmbeddingJudgment { verdict: EmbeddingVerdict::Holds, chain }
}

/// `V^{l,s} ⊂ N^{l',sigma}` alone, without chaining.
pub fn holder_embeds(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Result<EmbeddingJudgment> {
    a.validate()?;
    b.validate()?;
    if a.kind != SpaceKind::V || b.kind != SpaceKind::N {
        return Err(Error::InvalidArgument(format!("{a} -> {b} is not a V to N query")));
    }
    Ok(match direct(a, b) {
        Some(rule) => judgment(vec![RuleStep { rule, from: a.to_string(), to: b.to_string() }]),
        None => EmbeddingJudgment { verdict: EmbeddingVerdict::Unknown, chain: vec![] },
    })
}

/// Edge exponent `sigma_k` in the pointwise bound of a `W^{l,s}` function:
/// `0` below `l - 3/s`, `1/s + ε` up to `l - 2/s`, `delta - l + 3/s` above.
pub fn sigma_exponents(l: i32, s: Num, delta: &[Num]) -> Result<Vec<EpsNum>> {
    let l = Num::int(l as i64);
    let three = Num::int(3) / s;
    if !(l > three) {
        return Err(Error::InvalidArgument(format!("sigma exponents need l > 3/s (l = {l}, s = {s})")));
    }
    Ok(delta
        .iter()
        .map(|&d| {
            if d < l - three {
                EpsNum::exact(Num::ZERO)
            } else if d <= l - Num::int(2) / s {
                EpsNum::plus_eps(s.recip())
            } else {
                EpsNum::exact(d - l + three)
            }
        })
        .collect())
}
