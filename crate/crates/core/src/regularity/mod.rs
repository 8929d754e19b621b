//! Mechanical evaluation of the regularity and existence hypotheses.
//!
//! Every hypothesis is an affine condition in `q = 1/s` (or a fixed
//! condition for Hölder targets) of the form `c + m q ∈ I`, where `c` may
//! carry an infinitesimal. A query evaluates the conditions at one `s`;
//! [`max_s`] intersects their preimages to get the admissible `s`-interval.

mod assumptions;
mod catalogue;
mod check;
mod config;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use assumptions::{Assumptions, ProblemKind};
pub use catalogue::{profile, profiles, ClassProfile, EdgeClass, VertexClass};
pub use check::{
    check, check_c1, check_c2, check_existence_small_data, check_w1, check_w2, evaluate, max_s, scan, sharpness_flags,
};
pub use config::{ConfigMode, Configuration, EdgeData, VertexData};
pub use report::{ConditionRecord, EdgeRecord, RegularityReport, SInterval, SharpFlag, SharpKind, VertexRecord};

use crate::error::{Error, Result};
use crate::scalar::{EpsNum, Num};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// `u ∈ W^{1,s}_{beta,delta}`, `p ∈ W^{0,s}_{beta,delta}`.
    W1,
    /// `u ∈ W^{2,s}_{beta,delta}`, `p ∈ W^{1,s}_{beta,delta}`.
    W2,
    /// `u ∈ C^{1,sigma}_{beta,delta}`.
    C1,
    /// `u ∈ C^{2,sigma}_{beta,delta}`.
    C2,
    /// Existence in `W^{1,s}` for small data.
    Exist,
}

impl Target {
    pub const ALL: [Target; 5] = [Target::W1, Target::W2, Target::C1, Target::C2, Target::Exist];

    pub fn id(self) -> &'static str {
        match self {
            Target::W1 => "w1",
            Target::W2 => "w2",
            Target::C1 => "c1",
            Target::C2 => "c2",
            Target::Exist => "exist",
        }
    }

    pub fn is_holder(self) -> bool {
        matches!(self, Target::C1 | Target::C2)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        Target::ALL
            .into_iter()
            .find(|t| t.id() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown target '{s}' (expected w1, w2, c1, c2 or exist)")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityQuery {
    pub target: Target,
    pub s: Option<Num>,
    pub sigma: Option<Num>,
    /// Per vertex; empty means zero, a single entry is broadcast.
    pub beta: Vec<EpsNum>,
    /// Per edge; same conventions as `beta`.
    pub delta: Vec<EpsNum>,
}

impl RegularityQuery {
    pub fn sobolev(target: Target, s: Num) -> Self {
        RegularityQuery { target, s: Some(s), sigma: None, beta: vec![], delta: vec![] }
    }

    pub fn holder(target: Target, sigma: Num) -> Self {
        RegularityQuery { target, s: None, sigma: Some(sigma), beta: vec![], delta: vec![] }
    }

    pub fn with_beta(mut self, beta: Vec<EpsNum>) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_delta(mut self, delta: Vec<EpsNum>) -> Self {
        self.delta = delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::MalformedQuery(format!("target {}: {m}", self.target)));
        if self.target.is_holder() {
            let Some(sigma) = self.sigma else { return bad("sigma is required") };
            if !(sigma > Num::ZERO && sigma < Num::ONE) {
                return bad("sigma must lie in (0, 1)");
            }
            if self.s.is_some() {
                return bad("Hölder targets take sigma, not s");
            }
        } else {
            let Some(s) = self.s else { return bad("s is required") };
            if !(s > Num::ONE) || !s.to_f64().is_finite() {
                return bad("s must lie in (1, inf)");
            }
            if self.sigma.is_some() {
                return bad("Sobolev targets take s, not sigma");
            }
        }
        Ok(())
    }
}

/// Expands `beta` or `delta` to one entry per vertex or edge.
pub(crate) fn weights(v: &[EpsNum], n: usize, what: &str) -> Result<Vec<EpsNum>> {
    match v.len() {
        0 => Ok(vec![EpsNum::exact(Num::ZERO); n]),
        1 => Ok(vec![v[0]; n]),
        k if k == n => Ok(v.to_vec()),
        k => Err(Error::MalformedQuery(format!("{what} has {k} entries, the domain has {n}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Satisfied,
    NotSatisfied,
    /// Missing data: an unknown vertex rule, an uncomputed exponent, an unset flag.
    Undecidable,
}

impl Status {
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (NotSatisfied, _) | (_, NotSatisfied) => NotSatisfied,
            (Undecidable, _) | (_, Undecidable) => Undecidable,
            _ => Satisfied,
        }
    }

    pub(crate) fn mark(self) -> &'static str {
        match self {
            Status::Satisfied => "ok",
            Status::NotSatisfied => "FAIL",
            Status::Undecidable => "??",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

impl From<Status> for Verdict {
    fn from(s: Status) -> Verdict {
        match s {
            Status::Satisfied => Verdict::Holds,
            Status::NotSatisfied => Verdict::Fails,
            Status::Undecidable => Verdict::Unknown,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
        })
    }
}

#[cfg(test)]
mod tests;
