use serde::{Deserialize, Serialize};

/// Hypotheses on the data that the engine cannot test and takes on trust.
///
/// The data flags default to asserted; `lipschitz_graph` defaults to unset.
/// Every report echoes the flags it was given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Assumptions {
    pub data_in_required_spaces: bool,
    pub compatibility_conditions_hold: bool,
    pub lv_trivial: bool,
    pub small_data: bool,
    /// Every vertex cone with Neumann faces is a Lipschitz graph.
    pub lipschitz_graph: bool,
}

impl Default for Assumptions {
    fn default() -> Self {
        Assumptions {
            data_in_required_spaces: true,
            compatibility_conditions_hold: true,
            lv_trivial: true,
            small_data: true,
            lipschitz_graph: false,
        }
    }
}

impl Assumptions {
    pub fn none() -> Self {
        Assumptions {
            data_in_required_spaces: false,
            compatibility_conditions_hold: false,
            lv_trivial: false,
            small_data: false,
            lipschitz_graph: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    StokesLinear,
    #[default]
    NavierStokes,
}
