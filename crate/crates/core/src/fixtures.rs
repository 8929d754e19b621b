//! Reference values with tolerances, recomputed by `verify-paper`.
//!
//! Closed-form rows use tolerance `1e-8`, rows through the numeric pencil
//! `1e-6`, exponent thresholds that are rational are compared exactly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::edge_pencil::{mu_k, mu_of_pencil, mu_real_root, DihedronPencil, SpectralSettings};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geometry::{solids, BoundaryAssignment, BoundaryCondition, Domain};
use crate::regularity::{max_s, profile, Assumptions, Configuration, ProblemKind, Target};
use crate::scalar::{Interval, Num};

pub const CLOSED_FORM_TOL: f64 = 1e-8;
pub const NUMERIC_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ClosedForm,
    NumericPencil,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum End {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// Smallest positive real root of the Dirichlet/Neumann edge equation.
    MuRealRoot { theta: f64 },
    /// `mu` on an edge of the exterior of a Platonic solid, from its mesh.
    PlatonicMu { solid: String },
    /// `sin theta` of that exterior edge angle.
    PlatonicSin { solid: String },
    /// `mu` of a wedge through the collocation eigensolver.
    PencilMu { theta: f64, d_plus: u8, d_minus: u8 },
    /// Endpoint of a class interval from the catalogue.
    ClassEndpoint { profile: String, problem: ProblemKind, target: Target, end: End },
    /// Upper endpoint of the step-prism interval from its mesh.
    StepEndpoint { target: Target },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    /// `|value - expected| <= tolerance`.
    Approx(f64),
    /// Rational endpoint with its closedness.
    Endpoint { value: Num, closed: bool },
    /// `value > bound`.
    Above(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub description: String,
    pub quantity: Quantity,
    pub expected: Expected,
    pub tolerance: f64,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub description: String,
    pub value: String,
    pub expected: String,
    pub tolerance: f64,
    pub route: Route,
    pub pass: bool,
}

fn approx(id: &str, description: &str, quantity: Quantity, expected: f64, route: Route) -> Fixture {
    let tolerance = if route == Route::NumericPencil { NUMERIC_TOL } else { CLOSED_FORM_TOL };
    Fixture { id: id.into(), description: description.into(), quantity, expected: Expected::Approx(expected), tolerance, route }
}

fn endpoint(id: &str, description: &str, name: &str, problem: ProblemKind, target: Target, end: End, value: Num, closed: bool) -> Fixture {
    Fixture {
        id: id.into(),
        description: description.into(),
        quantity: Quantity::ClassEndpoint { profile: name.into(), problem, target, end },
        expected: Expected::Endpoint { value, closed },
        tolerance: 0.0,
        route: Route::Exact,
    }
}

/// The full reference table.
pub fn default_fixtures() -> Vec<Fixture> {
    use ProblemKind::*;
    let platonic = [
        ("tetrahedron", 0.52033360, -(2.0 / 3.0) * 2f64.sqrt()),
        ("cube", 0.54448373, -1.0),
        ("octahedron", 0.58489758, -(2.0 / 3.0) * 2f64.sqrt()),
        ("dodecahedron", 0.60487306, -(2.0 / 5.0) * 5f64.sqrt()),
        ("icosahedron", 0.68835272, -2.0 / 3.0),
    ];
    let mut out = vec![approx(
        "mu-three-halves-pi",
        "mu at theta = 3π/2, Dirichlet",
        Quantity::MuRealRoot { theta: 1.5 * PI },
        0.54448373,
        Route::ClosedForm,
    )];
    for (solid, mu, sin) in platonic {
        out.push(approx(
            &format!("mu-{solid}-exterior"),
            &format!("mu on the edges outside a regular {solid}"),
            Quantity::PlatonicMu { solid: solid.into() },
            mu,
            Route::ClosedForm,
        ));
        out.push(Fixture {
            tolerance: 1e-12,
            ..approx(
                &format!("sin-{solid}-exterior"),
                &format!("sin theta outside a regular {solid}"),
                Quantity::PlatonicSin { solid: solid.into() },
                sin,
                Route::ClosedForm,
            )
        });
    }
    out.push(Fixture {
        tolerance: 1e-10,
        ..approx(
            "mu-threshold-angle",
            "mu at theta = 3 arccos(1/4) is 2/3",
            Quantity::MuRealRoot { theta: 3.0 * 0.25f64.acos() },
            2.0 / 3.0,
            Route::ClosedForm,
        )
    });
    for (d, name) in [(0u8, "dirichlet"), (3u8, "neumann")] {
        out.push(approx(
            &format!("pencil-{name}-three-halves-pi"),
            &format!("numeric mu at theta = 3π/2, {name} on both faces"),
            Quantity::PencilMu { theta: 1.5 * PI, d_plus: d, d_minus: d },
            0.54448373,
            Route::NumericPencil,
        ));
    }
    out.push(approx(
        "pencil-dirichlet-slip-three-quarter-pi",
        "numeric mu, Dirichlet and slip, theta = 3π/4: 2/3",
        Quantity::PencilMu { theta: 0.75 * PI, d_plus: 0, d_minus: 2 },
        2.0 / 3.0,
        Route::NumericPencil,
    ));
    out.push(approx(
        "pencil-dirichlet-slip-three-halves-pi",
        "numeric mu, Dirichlet and slip, theta = 3π/2: 1/3",
        Quantity::PencilMu { theta: 1.5 * PI, d_plus: 0, d_minus: 2 },
        1.0 / 3.0,
        Route::NumericPencil,
    ));
    for (d, name, theta) in [(2u8, "slip", 1.4), (1u8, "tangential", 1.4), (3u8, "neumann", 1.9)] {
        out.push(Fixture {
            expected: Expected::Above(if d == 3 { 0.25 } else { 1.0 / 3.0 }),
            ..approx(
                &format!("pencil-dirichlet-{name}-bound"),
                &format!("numeric mu, Dirichlet and {name}, theta = {theta}π, above its class bound"),
                Quantity::PencilMu { theta: theta * PI, d_plus: 0, d_minus: d },
                0.0,
                Route::NumericPencil,
            )
        });
    }
    out.push(approx(
        "step-w1-upper",
        "step prism, first order: s < 2/(1 - 0.54448373) = 4.39062",
        Quantity::StepEndpoint { target: Target::W1 },
        2.0 / (1.0 - 0.54448373),
        Route::NumericPencil,
    ));
    out.push(approx(
        "step-w2-upper",
        "step prism, second order: s < 2/(2 - 0.54448373) = 1.3740",
        Quantity::StepEndpoint { target: Target::W2 },
        2.0 / (2.0 - 0.54448373),
        Route::NumericPencil,
    ));
    let r = Num::ratio;
    out.extend([
        endpoint("dirichlet-w1", "Dirichlet, first order: 2 < s <= 3", "dirichlet", NavierStokes, Target::W1, End::Upper, r(3, 1), true),
        endpoint("dirichlet-w2", "Dirichlet, second order: s <= 4/3", "dirichlet", NavierStokes, Target::W2, End::Upper, r(4, 3), true),
        endpoint("dirichlet-moderate-w2", "Dirichlet, theta_k < 3 arccos(1/4): s <= 3/2", "dirichlet-moderate", NavierStokes, Target::W2, End::Upper, r(3, 2), true),
        endpoint("convex-w1", "convex Dirichlet, first order: every s > 2", "dirichlet-convex", NavierStokes, Target::W1, End::Lower, r(2, 1), false),
        endpoint("convex-w2", "convex Dirichlet, second order: s <= 2", "dirichlet-convex", NavierStokes, Target::W2, End::Upper, r(2, 1), true),
        endpoint("convex-acute-w2", "convex, theta_k < 3π/4: s < 3", "dirichlet-convex-acute", NavierStokes, Target::W2, End::Upper, r(3, 1), false),
        endpoint("neumann-w2", "Neumann, second order: s <= 4/3", "neumann", NavierStokes, Target::W2, End::Upper, r(4, 3), true),
        endpoint("mixed-dn-w2", "Dirichlet/Neumann faces, second order: s <= 8/7", "mixed-dirichlet-neumann", StokesLinear, Target::W2, End::Upper, r(8, 7), true),
        endpoint("mixed-w1", "(i)-(iii), first order: s <= 8/3", "mixed", NavierStokes, Target::W1, End::Upper, r(8, 3), true),
        endpoint("mixed-moderate-w1", "(i)-(iii), theta_k < 3π/2: s <= 3", "mixed-moderate", NavierStokes, Target::W1, End::Upper, r(3, 1), true),
        endpoint("mixed-w2", "(i)-(iii), second order: s <= 8/7", "mixed", StokesLinear, Target::W2, End::Upper, r(8, 7), true),
        endpoint("mixed-small-w2", "(i)-(iii), small angles: s <= 3/2", "mixed-small", StokesLinear, Target::W2, End::Upper, r(3, 2), true),
        endpoint("slip-w2", "one slip face, second order: s <= 2", "slip-convex", NavierStokes, Target::W2, End::Upper, r(2, 1), true),
        endpoint("slip-acute-w2", "one slip face, small angles: s < 3", "slip-convex-acute", NavierStokes, Target::W2, End::Upper, r(3, 1), false),
        endpoint("existence-lower", "existence for small data: 3/2 < s", "existence", NavierStokes, Target::Exist, End::Lower, r(3, 2), false),
        endpoint("existence-upper", "existence for small data: s < 3", "existence", NavierStokes, Target::Exist, End::Upper, r(3, 1), false),
    ]);
    out
}

enum Value {
    Real(f64),
    Interval(Interval, End),
}

fn exterior_edge(solid: &str) -> Result<f64> {
    let poly = solids::by_name(solid, true).ok_or_else(|| Error::InvalidArgument(format!("unknown solid '{solid}'")))?;
    Ok(poly.edges()[0].theta)
}

fn compute(q: &Quantity, settings: &SpectralSettings) -> Result<Value> {
    Ok(match q {
        Quantity::MuRealRoot { theta } => Value::Real(mu_real_root(*theta)?),
        Quantity::PlatonicSin { solid } => Value::Real(exterior_edge(solid)?.sin()),
        Quantity::PlatonicMu { solid } => {
            let poly = solids::by_name(solid, true).ok_or_else(|| Error::InvalidArgument(format!("unknown solid '{solid}'")))?;
            let bc = BoundaryAssignment::uniform(poly.faces.len(), BoundaryCondition::Dirichlet);
            let mu = poly
                .edges()
                .iter()
                .map(|e| mu_k(&bc, e, settings).map(|m| m.value))
                .collect::<Result<Vec<_>>>()?;
            Value::Real(mu.into_iter().fold(f64::INFINITY, f64::min))
        }
        Quantity::PencilMu { theta, d_plus, d_minus } => {
            let pencil = DihedronPencil::new(*theta, BoundaryCondition::from_index(*d_plus)?, BoundaryCondition::from_index(*d_minus)?)?;
            let numeric = SpectralSettings { force_numeric: true, ..*settings };
            Value::Real(mu_of_pencil(&pencil, &numeric)?.value)
        }
        Quantity::ClassEndpoint { profile: name, problem, target, end } => {
            let config = Configuration::from_profile(&profile(name)?, *problem, Assumptions::default())?;
            Value::Interval(max_s(&config, *target)?.interval, *end)
        }
        Quantity::StepEndpoint { target } => {
            let poly = solids::step_prism(false);
            let bc = BoundaryAssignment::uniform(poly.faces.len(), BoundaryCondition::Dirichlet);
            let domain = Domain::new(poly, bc)?;
            let numeric = SpectralSettings { force_numeric: true, ..*settings };
            let config = Configuration::from_domain(&domain, ProblemKind::NavierStokes, &numeric, Execution::Sequential)?;
            let hi = max_s(&config, *target)?.interval.hi.map_or(f64::INFINITY, |b| b.value.to_f64());
            Value::Real(hi)
        }
    })
}

fn judge(f: &Fixture, value: Result<Value>) -> FixtureOutcome {
    let (value, pass) = match (value, &f.expected) {
        (Err(e), _) => (format!("error: {e}"), false),
        (Ok(Value::Real(v)), Expected::Approx(x)) => (format!("{v:.10}"), (v - x).abs() <= f.tolerance),
        (Ok(Value::Real(v)), Expected::Above(b)) => (format!("{v:.10}"), v > *b),
        (Ok(Value::Interval(i, end)), Expected::Endpoint { value, closed }) => {
            let b = if end == End::Lower { i.lo } else { i.hi };
            let pass = b.is_some_and(|b| b.value == *value && b.closed == *closed);
            (i.to_string(), pass)
        }
        (Ok(_), _) => ("mismatched fixture".into(), false),
    };
    let expected = match &f.expected {
        Expected::Approx(x) => format!("{x:.10}"),
        Expected::Above(b) => format!("> {b:.10}"),
        Expected::Endpoint { value, closed } => {
            let open = !closed;
            match &f.quantity {
                Quantity::ClassEndpoint { end: End::Lower, .. } => format!("{}{value}, ..", if open { "(" } else { "[" }),
                _ => format!(".., {value}{}", if open { ")" } else { "]" }),
            }
        }
    };
    FixtureOutcome {
        id: f.id.clone(),
        description: f.description.clone(),
        value,
        expected,
        tolerance: f.tolerance,
        route: f.route,
        pass,
    }
}

/// Recomputes every row; output order follows `fixtures`.
pub fn verify(fixtures: &[Fixture], settings: &SpectralSettings, execution: Execution) -> Vec<FixtureOutcome> {
    exec::map(fixtures, execution, |f| judge(f, compute(&f.quantity, settings)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_rows_pass() {
        let rows: Vec<Fixture> = default_fixtures().into_iter().filter(|f| f.route != Route::NumericPencil).collect();
        let out = verify(&rows, &SpectralSettings::default(), Execution::Sequential);
        for o in &out {
            assert!(o.pass, "{} value {} expected {}", o.id, o.value, o.expected);
        }
    }

    #[test]
    fn perturbed_rows_fail() {
        let mut rows: Vec<Fixture> = default_fixtures().into_iter().filter(|f| f.route != Route::NumericPencil).take(3).collect();
        if let Expected::Approx(x) = &mut rows[0].expected {
            *x += 1e-6;
        }
        let out = verify(&rows, &SpectralSettings::default(), Execution::Sequential);
        assert!(!out[0].pass);
        assert!(out[1..].iter().all(|o| o.pass));
    }
}
