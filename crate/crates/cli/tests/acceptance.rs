//! One line per acceptance criterion; exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::f64::consts::PI;
use std::process::Command;

use polysing_cli::{verify_paper, Shared, VerifyArgs, EXIT_FIXTURE, EXIT_OK};
use polysing_core::edge_pencil::{mu_real_root, SpectralSettings};
use polysing_core::exec::Execution;
use polysing_core::fixtures::{default_fixtures, Expected};
use polysing_core::geometry::{solids, BoundaryAssignment, BoundaryCondition, Domain};
use polysing_core::regularity::{
    evaluate, max_s, profile, scan, Assumptions, Configuration, ProblemKind, RegularityQuery, Target, Verdict,
};
use polysing_core::scalar::{Bound, Interval, Num};

type Check = Result<String, String>;

fn within(label: &str, value: f64, expected: f64, tol: f64) -> Check {
    let err = (value - expected).abs();
    if err <= tol {
        Ok(format!("{label} {value:.10} (|err| {err:.1e})"))
    } else {
        Err(format!("{label} {value:.10} vs {expected} (|err| {err:.1e} > {tol:.0e})"))
    }
}

fn all(parts: Vec<Check>) -> Check {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn criterion_1() -> Check {
    within("mu(3π/2) =", mu_real_root(1.5 * PI).map_err(|e| e.to_string())?, 0.54448373, 1e-8)
}

fn criterion_2() -> Check {
    let expected = [
        ("tetrahedron", 0.52033360, -(2.0 / 3.0) * 2f64.sqrt()),
        ("cube", 0.54448373, -1.0),
        ("octahedron", 0.58489758, -(2.0 / 3.0) * 2f64.sqrt()),
        ("dodecahedron", 0.60487306, -(2.0 / 5.0) * 5f64.sqrt()),
        ("icosahedron", 0.68835272, -2.0 / 3.0),
    ];
    let mut parts = Vec::new();
    for (name, mu, sin) in expected {
        let poly = solids::by_name(name, true).ok_or("missing solid")?;
        let theta = poly.edges().iter().map(|e| e.theta).fold(0.0, f64::max);
        let spread = poly.edges().iter().map(|e| (e.theta - theta).abs()).fold(0.0, f64::max);
        if spread > 1e-12 {
            return Err(format!("{name}: exterior edge angles differ by {spread:e}"));
        }
        let computed = mu_real_root(theta).map_err(|e| e.to_string())?;
        within(name, computed, mu, 1e-7)?;
        within(name, theta.sin(), sin, 1e-12)?;
        parts.push(format!("{name} {computed:.8}"));
    }
    Ok(parts.join(", "))
}

fn criterion_3() -> Check {
    within("mu(3 arccos(1/4)) =", mu_real_root(3.0 * 0.25f64.acos()).map_err(|e| e.to_string())?, 2.0 / 3.0, 1e-10)
}

fn criterion_4() -> Check {
    let poly = solids::step_prism(false);
    let n = poly.faces.len();
    let domain =
        Domain::new(poly, BoundaryAssignment::uniform(n, BoundaryCondition::Dirichlet)).map_err(|e| e.to_string())?;
    let settings = SpectralSettings { force_numeric: true, ..SpectralSettings::default() };
    let config = Configuration::from_domain(&domain, ProblemKind::NavierStokes, &settings, Execution::default())
        .map_err(|e| e.to_string())?;
    let upper = |t: Target| -> Result<f64, String> {
        let r = scan(&config, t).map_err(|e| e.to_string())?;
        let i = r.s_interval.ok_or("no interval")?.interval;
        i.hi.map(|b| b.value.to_f64()).ok_or_else(|| "unbounded".to_string())
    };
    let w1 = upper(Target::W1)?;
    let w2 = upper(Target::W2)?;
    let formula = 2.0 / (1.0 - 0.54448373);
    all(vec![
        within("W1 upper", w1, formula, 1e-4).map(|m| format!("{m}, formula 2/(1-0.54448373) = {formula:.6}; the decimal 4.3905 lies {:.1e} below the formula", formula - 4.3905)),
        within("W2 upper", w2, 1.3740, 1e-4),
    ])
}

fn criterion_5() -> Check {
    let mut count = 0;
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        for k in 0..9 {
            let theta = (0.3 + 0.2 * k as f64) * PI;
            common::oracle_equivalence(theta, bc, 1e-6)?;
            count += 1;
        }
    }
    Ok(format!("{count} wedges (0,0) and (3,3), θ = 0.3π..1.9π, spectra in 0 < Re λ < 2 agree to 1e-6"))
}

fn endpoint(name: &str, problem: ProblemKind, target: Target) -> Result<Interval, String> {
    let p = profile(name).map_err(|e| e.to_string())?;
    let config = Configuration::from_profile(&p, problem, Assumptions::default()).map_err(|e| e.to_string())?;
    Ok(max_s(&config, target).map_err(|e| e.to_string())?.interval)
}

fn criterion_6() -> Check {
    use ProblemKind::*;
    let r = Num::ratio;
    let hi = |i: &Interval| i.hi;
    let rows: Vec<(&str, ProblemKind, Target, Box<dyn Fn(&Interval) -> Option<Bound>>, Option<Bound>)> = vec![
        ("dirichlet", NavierStokes, Target::W1, Box::new(hi), Some(Bound::closed(r(3, 1)))),
        ("dirichlet-convex", NavierStokes, Target::W2, Box::new(hi), Some(Bound::closed(r(2, 1)))),
        ("dirichlet-convex-acute", NavierStokes, Target::W2, Box::new(hi), Some(Bound::open(r(3, 1)))),
        ("mixed", StokesLinear, Target::W2, Box::new(hi), Some(Bound::closed(r(8, 7)))),
        ("mixed", NavierStokes, Target::W1, Box::new(hi), Some(Bound::closed(r(8, 3)))),
        ("existence", NavierStokes, Target::Exist, Box::new(|i: &Interval| i.lo), Some(Bound::open(r(3, 2)))),
        ("existence", NavierStokes, Target::Exist, Box::new(hi), Some(Bound::open(r(3, 1)))),
    ];
    let mut seen = Vec::new();
    for (name, problem, target, pick, want) in rows {
        let i = endpoint(name, problem, target)?;
        if pick(&i) != want {
            return Err(format!("{name} {target}: interval {i}"));
        }
        seen.push(format!("{name} {target} {i}"));
    }
    let p = profile("dirichlet-convex").map_err(|e| e.to_string())?;
    let config = Configuration::from_profile(&p, NavierStokes, Assumptions::default()).map_err(|e| e.to_string())?;
    for s in [3, 5, 10, 20, 50, 100] {
        let v = evaluate(&config, &RegularityQuery::sobolev(Target::W1, Num::int(s))).map_err(|e| e.to_string())?.verdict;
        if v != Verdict::Holds {
            return Err(format!("dirichlet-convex w1 at s = {s}: {v}"));
        }
    }
    seen.push("dirichlet-convex w1 holds for s = 3..100".into());
    Ok(seen.join(", "))
}

fn criterion_7() -> Check {
    use common::*;
    let pairs = [(0usize, 0usize), (0, 3), (1, 2), (2, 2), (3, 3), (0, 1)];
    run(12, (0.15f64..1.95, 0usize..pairs.len()), |(t, k)| {
        conjugate_symmetric(&spectrum(t * PI, BCS[pairs[k].0], BCS[pairs[k].1], 1.0, (0.0, 2.0), 16))
    })
    .map_err(|e| format!("conjugate symmetry: {e}"))?;
    run(8, (0.2f64..1.9, 0usize..pairs.len(), 0.05f64..20.0), |(t, k, nu)| {
        let (a, b) = (BCS[pairs[k].0], BCS[pairs[k].1]);
        same_values(&spectrum(t * PI, a, b, 1.0, (0.0, 2.0), 16).values(), &spectrum(t * PI, a, b, nu, (0.0, 2.0), 16).values(), 1e-9)
    })
    .map_err(|e| format!("viscosity invariance: {e}"))?;
    let even = [(0usize, 0usize), (1, 1), (0, 2), (2, 2), (1, 3), (3, 3)];
    run(10, (0.2f64..1.9, 0usize..even.len()), |(t, k)| {
        let s = spectrum(t * PI, BCS[even[k].0], BCS[even[k].1], 1.0, (0.5, 1.5), 16);
        s.eigenvalues.iter().any(|e| (e.re - 1.0).abs() < 1e-8 && e.im.abs() < 1e-8).then_some(()).ok_or("1 missing".to_string())
    })
    .map_err(|e| format!("lambda = 1: {e}"))?;
    strictly_decreasing_on_grid(100).map_err(|e| format!("mu monotone: {e}"))?;
    let triples = transitivity_suite(200).map_err(|e| format!("transitivity: {e}"))?;
    run(50, mu_query_strategy(), verdict_monotone_in_mu).map_err(|e| format!("verdict monotonicity: {e}"))?;
    Ok(format!(
        "conjugate symmetry, viscosity invariance, λ = 1 for even sums, μ decreasing on 100 points, {triples} embedding triples, 50 monotonicity queries"
    ))
}

fn criterion_8() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_polysing")).arg("verify-paper").output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(EXIT_OK) || text.contains("FAIL") {
        return Err(format!("verify-paper exited with {:?}", out.status.code()));
    }
    let rows = default_fixtures().len();
    let mut perturbed = default_fixtures();
    let target = perturbed.iter_mut().find(|f| f.id == "mu-cube-exterior").ok_or("row missing")?;
    if let Expected::Approx(v) = &mut target.expected {
        *v += 1e-6;
    }
    let args = VerifyArgs { tol: None, shared: Shared { format: Default::default(), n: 24, sequential: false } };
    let run = verify_paper(&args, perturbed);
    let caught = run.code == EXIT_FIXTURE && run.stdout.lines().any(|l| l.starts_with("mu-cube-exterior") && l.ends_with("FAIL"));
    if !caught {
        return Err("perturbed row went unnoticed".into());
    }
    Ok(format!("{rows} rows pass with exit 0; a 1e-6 shift of one row exits {EXIT_FIXTURE}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("mu_real_root(3π/2)", criterion_1),
        ("Platonic exteriors", criterion_2),
        ("threshold angle", criterion_3),
        ("step prism s-bounds", criterion_4),
        ("numeric vs closed form", criterion_5),
        ("decision table", criterion_6),
        ("property suites", criterion_7),
        ("verify-paper", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{secs:.1}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
