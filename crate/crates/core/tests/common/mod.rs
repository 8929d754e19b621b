//! Oracles and property checks shared by the integration suites.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use polysing_core::edge_pencil::{mu_real_root, solve_spectrum, DihedronPencil, Spectrum, Window};
use polysing_core::geometry::BoundaryCondition;
use polysing_core::regularity::{evaluate, profile, Configuration, ProblemKind, RegularityQuery, Target, Verdict};
use polysing_core::scalar::{EpsNum, Num};
use polysing_core::spaces::{embeds, DomainTag, EmbeddingVerdict, SpaceDescriptor, SpaceKind};
use polysing_core::regularity::Assumptions;

pub const BCS: [BoundaryCondition; 4] = [
    BoundaryCondition::Dirichlet,
    BoundaryCondition::TangentialVelocity,
    BoundaryCondition::Slip,
    BoundaryCondition::Neumann,
];

/// Runs `check` on `cases` values of `strategy` from a fixed seed.
pub fn run<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> Result<(), String>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    for _ in 0..cases {
        let tree = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?;
        let value = tree.current();
        let shown = format!("{value:?}");
        check(value).map_err(|e| format!("{e} (input {shown})"))?;
    }
    Ok(())
}

pub fn spectrum(theta: f64, a: BoundaryCondition, b: BoundaryCondition, nu: f64, window: (f64, f64), n: usize) -> Spectrum {
    let p = DihedronPencil::with_viscosity(theta, a, b, nu).unwrap();
    solve_spectrum(&p, &Window::new(window.0, window.1).unwrap(), n).unwrap()
}

pub fn conjugate_symmetric(s: &Spectrum) -> Result<(), String> {
    for e in &s.eigenvalues {
        if e.im.abs() < 1e-9 {
            continue;
        }
        let partner = s
            .eigenvalues
            .iter()
            .any(|f| (f.re - e.re).abs() < 1e-8 && (f.im + e.im).abs() < 1e-8 && f.multiplicity == e.multiplicity);
        if !partner && e.im.abs() <= s.window.im_max - 1e-6 {
            return Err(format!("{} + {}i has no conjugate", e.re, e.im));
        }
    }
    Ok(())
}

/// Every certified value of `a` is within `tol` of one of `b`, and back.
pub fn same_values(a: &[Complex64], b: &[Complex64], tol: f64) -> Result<(), String> {
    for (x, ys, label) in [(a, b, "first"), (b, a, "second")] {
        for z in x {
            if !ys.iter().any(|w| (z - w).norm() < tol) {
                return Err(format!("{z} from the {label} set has no match"));
            }
        }
    }
    Ok(())
}

pub fn dedupe(values: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for v in values {
        if !out.iter().any(|w| (v - w).norm() < tol) {
            out.push(v);
        }
    }
    out
}

/// Roots of `sin(λθ) (λ² sin²θ − sin²(λθ))` with `lo < Re λ < hi`, `|Im λ| <= im`,
/// found independently of the collocation solver: `kπ/θ` exactly and the
/// factors `λ sin θ ∓ sin(λθ)` by Newton from a grid of starts.
pub fn closed_form_roots(theta: f64, lo: f64, hi: f64, im: f64) -> Vec<Complex64> {
    let mut out = Vec::new();
    let mut k = 1.0;
    while k * PI / theta < hi {
        if k * PI / theta > lo {
            out.push(Complex64::new(k * PI / theta, 0.0));
        }
        k += 1.0;
    }
    let st = theta.sin();
    for sign in [1.0, -1.0] {
        let f = |z: Complex64| z * st - sign * (z * theta).sin();
        let df = |z: Complex64| Complex64::new(st, 0.0) - sign * theta * (z * theta).cos();
        for i in 0..=60 {
            for j in 0..=40 {
                let mut z = Complex64::new(lo - 0.5 + (hi - lo + 1.0) * i as f64 / 60.0, (im + 1.0) * j as f64 / 40.0);
                for _ in 0..100 {
                    let step = f(z) / df(z);
                    z -= step;
                    if step.norm() < 1e-15 {
                        break;
                    }
                }
                if f(z).norm() < 1e-12 && z.re > lo && z.re < hi && z.im.abs() <= im && z.norm() > 1e-9 {
                    out.push(z);
                    out.push(z.conj());
                }
            }
        }
    }
    dedupe(out, 1e-9)
}

/// Numeric and closed-form spectra of the DD or NN wedge agree in `0 < Re λ < 2`.
pub fn oracle_equivalence(theta: f64, bc: BoundaryCondition, tol: f64) -> Result<(), String> {
    let im = 4.0;
    let s = spectrum(theta, bc, bc, 1.0, (0.0, 2.0), 24);
    if !s.is_resolved() {
        return Err(format!("unresolved values at theta = {theta}"));
    }
    // values on the window edge are compared only when both sides see them
    let margin = 1e-6;
    let keep = |z: &Complex64| z.re > margin && z.re < 2.0 - margin && z.im.abs() < im - margin;
    let numeric: Vec<Complex64> = dedupe(s.values(), 1e-9).into_iter().filter(keep).collect();
    let exact: Vec<Complex64> = closed_form_roots(theta, 0.0, 2.0, im).into_iter().filter(keep).collect();
    same_values(&numeric, &exact, tol).map_err(|e| format!("theta = {:.3}π: {e}", theta / PI))
}

pub fn strictly_decreasing_on_grid(points: usize) -> Result<(), String> {
    let mut prev = f64::INFINITY;
    for i in 1..=points {
        let theta = PI + PI * i as f64 / (points + 1) as f64;
        let mu = mu_real_root(theta).map_err(|e| e.to_string())?;
        if !(mu < prev) {
            return Err(format!("mu({theta}) = {mu} is not below {prev}"));
        }
        prev = mu;
    }
    Ok(())
}

fn r(n: i64, d: i64) -> Num {
    Num::ratio(n, d)
}

fn e(v: Num) -> EpsNum {
    EpsNum::exact(v)
}

/// One step of an embedding family whose consecutive steps compose into a
/// single step of the same family.
#[derive(Clone, Copy, Debug)]
pub enum Step {
    /// Lower order, higher integrability, weights shifted by the order change.
    Scaling { dl: i32, s_num: i64, slack: i64 },
    /// Into a Hölder space of lower total order.
    ToHolder { sigma_num: i64, slack: i64 },
}

#[derive(Clone, Debug)]
pub struct Triple {
    pub a: SpaceDescriptor,
    pub b: SpaceDescriptor,
    pub c: SpaceDescriptor,
}

fn weights(v: &[EpsNum], shift: Num) -> Vec<EpsNum> {
    v.iter().map(|x| *x + e(shift)).collect()
}

/// Applies `step` to `from`; `None` when the step does not fit.
fn apply(from: &SpaceDescriptor, step: Step) -> Option<SpaceDescriptor> {
    let s = from.s?;
    let order = Num::int(from.l as i64) - Num::int(3) / s;
    let slack = |k: i64| if from.domain == DomainTag::Cone { Num::ZERO } else { r(k, 8) };
    match step {
        Step::Scaling { dl, s_num, slack: k } => {
            let l = from.l - dl;
            // same order loses nothing only at the same exponent
            let s2 = if dl == 0 { s } else { s + r(s_num, 4) };
            let order2 = Num::int(l as i64) - Num::int(3) / s2;
            if l < 0 || !(order2 <= order) {
                return None;
            }
            let shift = order2 - order;
            Some(SpaceDescriptor::sobolev(
                SpaceKind::V,
                l,
                s2,
                weights(&from.beta, shift + slack(k)),
                weights(&from.delta, shift + r(k, 8)),
                from.domain,
            ))
        }
        Step::ToHolder { sigma_num, slack: k } => {
            let sigma = r(sigma_num, 8);
            let rhs = order - sigma - r(1, 16);
            let l = rhs.to_f64().floor() as i64;
            if l < 0 {
                return None;
            }
            let sigma = rhs - Num::int(l);
            if !(sigma > Num::ZERO && sigma < Num::ONE) {
                return None;
            }
            let shift = Num::int(l) + sigma - order;
            let d = SpaceDescriptor::holder(
                SpaceKind::N,
                l as i32,
                sigma,
                weights(&from.beta, shift + slack(k)),
                weights(&from.delta, shift + r(k, 8)),
                from.domain,
            );
            d.validate().ok().map(|_| d)
        }
    }
}

fn step_strategy() -> impl Strategy<Value = Step> {
    prop_oneof![
        (0i32..=1, 0i64..=8, 0i64..=4).prop_map(|(dl, s_num, slack)| Step::Scaling { dl, s_num, slack }),
        (1i64..=7, 0i64..=4).prop_map(|(sigma_num, slack)| Step::ToHolder { sigma_num, slack }),
    ]
}

pub fn triple_strategy() -> impl Strategy<Value = Option<Triple>> {
    (
        1i32..=3,
        5i64..=24,
        -8i64..=8,
        -4i64..=8,
        any::<bool>(),
        step_strategy(),
        step_strategy(),
    )
        .prop_map(|(l, s_num, beta, delta, cone, first, second)| {
            let domain = if cone { DomainTag::Cone } else { DomainTag::Bounded };
            let a = SpaceDescriptor::sobolev(SpaceKind::V, l, r(s_num, 4), vec![e(r(beta, 8))], vec![e(r(delta, 8))], domain);
            let b = apply(&a, first)?;
            let c = match (b.kind, second) {
                (SpaceKind::V, _) => apply(&b, second)?,
                _ => b.clone(),
            };
            (a.validate().is_ok() && b.validate().is_ok() && c.validate().is_ok()).then_some(Triple { a, b, c })
        })
}

/// `a ⊂ b` and `b ⊂ c` certify `a ⊂ c`; `None` inputs are skipped.
pub fn transitive(t: Option<Triple>) -> Result<(), String> {
    let Some(Triple { a, b, c }) = t else { return Ok(()) };
    let holds = |x: &SpaceDescriptor, y: &SpaceDescriptor| {
        embeds(x, y).map(|j| j.verdict == EmbeddingVerdict::Holds).map_err(|e| e.to_string())
    };
    if !holds(&a, &b)? {
        return Err(format!("generated link {a} -> {b} is not certified"));
    }
    if !holds(&b, &c)? {
        return Err(format!("generated link {b} -> {c} is not certified"));
    }
    if !holds(&a, &c)? {
        return Err(format!("{a} -> {b} -> {c} but {a} -> {c} is not certified"));
    }
    Ok(())
}

/// Checks [`transitive`] on the first `wanted` lemma-consistent triples
/// from a fixed seed.
pub fn transitivity_suite(wanted: usize) -> Result<usize, String> {
    let checked = std::cell::Cell::new(0usize);
    run(wanted as u32 * 8, triple_strategy(), |t| {
        if checked.get() < wanted && t.is_some() {
            transitive(t)?;
            checked.set(checked.get() + 1);
        }
        Ok(())
    })?;
    if checked.get() < wanted {
        return Err(format!("only {} of {wanted} triples generated", checked.get()));
    }
    Ok(checked.get())
}

fn rank(v: Verdict) -> u8 {
    match v {
        Verdict::Fails => 0,
        Verdict::Unknown => 1,
        Verdict::Holds => 2,
    }
}

pub const MONOTONE_PROFILES: [&str; 8] =
    ["dirichlet", "dirichlet-convex", "neumann", "mixed", "mixed-small", "slip-convex", "mixed-moderate", "dirichlet-moderate"];

#[derive(Clone, Debug)]
pub struct MuQuery {
    pub profile: &'static str,
    pub stokes: bool,
    pub second_order: bool,
    pub s_num: i64,
    pub delta_num: i64,
    pub raise_num: i64,
}

pub fn mu_query_strategy() -> impl Strategy<Value = MuQuery> {
    (0..MONOTONE_PROFILES.len(), any::<bool>(), any::<bool>(), 9i64..=64, -4i64..=12, 1i64..=16).prop_map(
        |(p, stokes, second_order, s_num, delta_num, raise_num)| MuQuery {
            profile: MONOTONE_PROFILES[p],
            stokes,
            second_order,
            s_num,
            delta_num,
            raise_num,
        },
    )
}

/// Raising every `mu_k` never turns a verdict from holds to fails or unknown,
/// nor from unknown to fails.
pub fn verdict_monotone_in_mu(q: MuQuery) -> Result<(), String> {
    let problem = if q.stokes { ProblemKind::StokesLinear } else { ProblemKind::NavierStokes };
    let p = profile(q.profile).map_err(|e| e.to_string())?;
    let config = Configuration::from_profile(&p, problem, Assumptions::default()).map_err(|e| e.to_string())?;
    let raised = config.map_mu(|m| m + EpsNum::exact(r(q.raise_num, 8)));
    let target = if q.second_order { Target::W2 } else { Target::W1 };
    let query = RegularityQuery::sobolev(target, r(q.s_num, 8)).with_delta(vec![e(r(q.delta_num, 8))]);
    let before = evaluate(&config, &query).map_err(|e| e.to_string())?.verdict;
    let after = evaluate(&raised, &query).map_err(|e| e.to_string())?.verdict;
    if rank(after) < rank(before) {
        return Err(format!("{before} became {after} after raising mu"));
    }
    Ok(())
}
