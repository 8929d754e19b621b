use super::*;
use crate::edge_pencil::SpectralSettings;
use crate::exec::Execution;
use crate::geometry::{solids, BoundaryAssignment, BoundaryCondition, Domain};
use crate::scalar::Interval;

fn class(name: &str, problem: ProblemKind) -> Configuration {
    Configuration::from_profile(&profile(name).unwrap(), problem, Assumptions::default()).unwrap()
}

fn interval(name: &str, problem: ProblemKind, target: Target) -> SInterval {
    max_s(&class(name, problem), target).unwrap()
}

fn dirichlet(poly: crate::geometry::Polyhedron) -> Configuration {
    let n = poly.faces.len();
    let domain = Domain::new(poly, BoundaryAssignment::uniform(n, BoundaryCondition::Dirichlet)).unwrap();
    Configuration::from_domain(&domain, ProblemKind::NavierStokes, &SpectralSettings::default(), Execution::Sequential)
        .unwrap()
}

#[test]
fn class_intervals() {
    use ProblemKind::*;
    let cases = [
        ("dirichlet", NavierStokes, Target::W1, "(2, 3]"),
        ("dirichlet", NavierStokes, Target::W2, "(6/5, 4/3]"),
        ("dirichlet-moderate", NavierStokes, Target::W2, "(6/5, 3/2]"),
        ("dirichlet-convex", NavierStokes, Target::W1, "(2, inf)"),
        ("dirichlet-convex", NavierStokes, Target::W2, "(6/5, 2]"),
        ("dirichlet-convex-acute", NavierStokes, Target::W2, "(6/5, 3)"),
        ("neumann", NavierStokes, Target::W1, "(2, 3)"),
        ("neumann", NavierStokes, Target::W2, "(6/5, 4/3]"),
        ("mixed", NavierStokes, Target::W1, "(2, 8/3]"),
        ("mixed", StokesLinear, Target::W2, "(1, 8/7]"),
        ("mixed-moderate", NavierStokes, Target::W1, "(2, 3]"),
        ("mixed-small", StokesLinear, Target::W2, "(1, 3/2]"),
        ("slip-convex", NavierStokes, Target::W2, "(6/5, 2]"),
        ("slip-convex-acute", NavierStokes, Target::W2, "(6/5, 3)"),
        ("existence", NavierStokes, Target::Exist, "(3/2, 3)"),
    ];
    for (name, problem, target, expected) in cases {
        let got = interval(name, problem, target);
        assert_eq!(got.interval.to_string(), expected, "{name} {target}");
        assert!(!got.conditional, "{name}");
    }
}

#[test]
fn mixed_dirichlet_neumann_is_conditional() {
    let got = interval("mixed-dirichlet-neumann", ProblemKind::StokesLinear, Target::W2);
    assert_eq!(got.interval.to_string(), "(1, 8/7]");
    assert!(got.conditional);
    assert!(got.upper_binding.unwrap().contains("Dirichlet-Neumann edge"));
    let report = check(&class("mixed-dirichlet-neumann", ProblemKind::StokesLinear), &RegularityQuery::sobolev(Target::W2, Num::ratio(8, 7))).unwrap();
    assert_eq!(report.verdict, Verdict::Unknown);
    assert!(report.notes.iter().any(|n| n.contains("blocks")));
}

#[test]
fn navier_stokes_floor_empties_the_mixed_second_order_interval() {
    let got = interval("mixed", ProblemKind::NavierStokes, Target::W2);
    assert!(got.interval.is_empty());
    assert!(got.notes.iter().any(|n| n.contains("smaller s")));
}

#[test]
fn binding_constraints_are_named() {
    let got = interval("dirichlet", ProblemKind::NavierStokes, Target::W1);
    assert!(got.lower_binding.unwrap().contains("delta_k + 2/s < 1"));
    assert!(got.upper_binding.unwrap().contains("required strip"));
    let acute = interval("dirichlet-convex-acute", ProblemKind::NavierStokes, Target::W2);
    assert!(acute.upper_binding.unwrap().contains("vertex"));
}

#[test]
fn closed_right_endpoint_holds() {
    let c = class("dirichlet", ProblemKind::NavierStokes);
    let at = |s: Num| check_w1(&c, &RegularityQuery::sobolev(Target::W1, s)).unwrap().verdict;
    assert_eq!(at(Num::int(3)), Verdict::Holds);
    assert_eq!(at(Num::ratio(301, 100)), Verdict::Fails);
    assert_eq!(at(Num::int(2)), Verdict::Fails);
    assert_eq!(at(Num::ratio(6, 5)), Verdict::Fails);
}

#[test]
fn step_prism_thresholds() {
    let c = dirichlet(solids::step_prism(false));
    let w1 = max_s(&c, Target::W1).unwrap();
    let w2 = max_s(&c, Target::W2).unwrap();
    let hi = |i: &Interval| i.hi.unwrap().value.to_f64();
    assert!((hi(&w1.interval) - 2.0 / (1.0 - 0.54448373)).abs() < 1e-6, "{}", w1.interval);
    assert!((hi(&w2.interval) - 2.0 / (2.0 - 0.54448373)).abs() < 1e-6, "{}", w2.interval);
    assert!(w1.upper_binding.unwrap().contains("edge"));
    let at = |t, s: f64| check(&c, &RegularityQuery::sobolev(t, Num::float(s))).unwrap().verdict;
    assert_eq!(at(Target::W1, 4.0), Verdict::Holds);
    assert_eq!(at(Target::W1, 4.5), Verdict::Fails);
    assert_eq!(at(Target::W2, 1.37), Verdict::Holds);
}

#[test]
fn cube_geometry() {
    let c = dirichlet(solids::cube(false));
    assert_eq!(c.edges.len(), 12);
    let w2 = max_s(&c, Target::W2).unwrap();
    assert_eq!(w2.interval.hi.unwrap().value, Num::int(3));
    for s in [3, 5, 50, 100] {
        let r = check(&c, &RegularityQuery::sobolev(Target::W1, Num::int(s))).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "s = {s}");
    }
}

#[test]
fn holder_targets() {
    let c = dirichlet(solids::cube(false));
    let beta = |sigma: Num| vec![crate::scalar::EpsNum::plus_eps(sigma)];
    let q = |sigma: Num| RegularityQuery::holder(Target::C1, sigma).with_beta(beta(sigma));
    assert_eq!(check_c1(&c, &q(Num::ratio(1, 2))).unwrap().verdict, Verdict::Holds);
    // the class bound mu_k > 1 leaves no room for sigma > 0
    let convex = class("dirichlet-convex", ProblemKind::NavierStokes);
    assert_eq!(check_c1(&convex, &q(Num::ratio(1, 10))).unwrap().verdict, Verdict::Fails);
    let on_sigma = q(Num::ratio(1, 2)).with_delta(vec![crate::scalar::EpsNum::exact(Num::ratio(1, 2))]);
    let r = check_c1(&c, &on_sigma).unwrap();
    assert_eq!(r.verdict, Verdict::Fails);
    assert!(r.edges[0].conditions.iter().any(|x| x.label == "delta_k != sigma" && x.status == Status::NotSatisfied));
    assert!(matches!(check(&c, &RegularityQuery::holder(Target::C1, Num::ONE)), Err(crate::Error::MalformedQuery(_))));
    assert!(matches!(check_w1(&c, &q(Num::ratio(1, 2))), Err(crate::Error::MalformedQuery(_))));
}

#[test]
fn existence_needs_dirichlet_adjacency() {
    let poly = solids::cube(false);
    let mut bc = BoundaryAssignment::uniform(poly.faces.len(), BoundaryCondition::Dirichlet);
    bc.set(0, BoundaryCondition::Slip);
    bc.set(1, BoundaryCondition::Slip);
    let shared = poly.edges().iter().any(|e| {
        let [a, b] = e.adjacent_faces;
        (a, b) == (0, 1) || (a, b) == (1, 0)
    });
    let domain = Domain::new(poly, bc).unwrap();
    let c = Configuration::from_domain(&domain, ProblemKind::NavierStokes, &SpectralSettings::default(), Execution::Sequential)
        .unwrap();
    let r = check_existence_small_data(&c, &RegularityQuery::sobolev(Target::Exist, Num::int(2)));
    if shared {
        assert!(matches!(r, Err(crate::Error::Precondition(m)) if m.contains("edge")));
    } else {
        assert!(r.is_ok());
    }
    let all = dirichlet(solids::cube(false));
    let at = |s: Num| check_existence_small_data(&all, &RegularityQuery::sobolev(Target::Exist, s)).unwrap().verdict;
    assert_eq!(at(Num::ratio(5, 2)), Verdict::Holds);
    assert_eq!(at(Num::ratio(7, 5)), Verdict::Fails);
}

#[test]
fn unset_flags_make_the_verdict_unknown() {
    let c = class("dirichlet", ProblemKind::NavierStokes).with_assumptions(Assumptions::none());
    let r = check(&c, &RegularityQuery::sobolev(Target::W1, Num::ratio(5, 2))).unwrap();
    assert_eq!(r.verdict, Verdict::Unknown);
    let r = check(&c, &RegularityQuery::sobolev(Target::W1, Num::int(4))).unwrap();
    assert_eq!(r.verdict, Verdict::Fails);
}

#[test]
fn sharpness_by_target() {
    let c = class("dirichlet", ProblemKind::NavierStokes);
    let flags = |t, s| evaluate(&c, &RegularityQuery::sobolev(t, s)).unwrap().sharp;
    assert!(flags(Target::W2, Num::ratio(5, 4)).iter().all(|f| f.kind == SharpKind::Sharp));
    assert!(flags(Target::W1, Num::ratio(5, 2)).iter().all(|f| f.kind == SharpKind::ByAnalogy));
    let e = class("existence", ProblemKind::NavierStokes);
    assert!(evaluate(&e, &RegularityQuery::sobolev(Target::Exist, Num::int(2))).unwrap().sharp.is_empty());
}

#[test]
fn reports_round_trip_through_json() {
    let c = dirichlet(solids::step_prism(false));
    let r = scan(&c, Target::W2).unwrap();
    let json = r.to_json();
    assert_eq!(RegularityReport::from_json(&json).unwrap(), r);
    assert_eq!(scan(&c, Target::W2).unwrap().to_json(), json);
    for key in ["\"verdict\"", "\"edges\"", "\"vertices\"", "\"s_interval\"", "\"sharp\"", "\"assumptions\"", "\"citations\""] {
        assert!(json.contains(key), "{key}");
    }
    assert!(r.to_string().contains("w2 on step-prism"));
}

#[test]
fn weight_vectors_must_match() {
    let c = class("mixed", ProblemKind::NavierStokes);
    let q = RegularityQuery::sobolev(Target::W1, Num::int(3)).with_delta(vec![crate::scalar::EpsNum::exact(Num::ZERO); 3]);
    assert!(matches!(check(&c, &q), Err(crate::Error::MalformedQuery(_))));
}
