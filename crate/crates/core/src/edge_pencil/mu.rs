//! The edge exponent `mu`: real part of a selected eigenvalue of the pencil.
//!
//! `lambda_1` is the eigenvalue with smallest positive real part, `lambda_2`
//! the one with smallest real part greater than 1. With `m = 1` for index
//! sums 0 and 6 and `m = 2` for sums 2 and 4, `mu = Re lambda_2` when the
//! index sum is even and `theta < pi / m`, otherwise `mu = Re lambda_1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{mu_real_root, solve_spectrum, DihedronPencil, Spectrum, Window, DEFAULT_COLLOCATION};
use super::solve::REFINEMENT_TOL;
use crate::error::{Error, Result};
use crate::geometry::{BoundaryAssignment, Edge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuBranch {
    Lambda1,
    Lambda2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuProvenance {
    ClosedForm,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuValue {
    pub value: f64,
    pub provenance: MuProvenance,
    pub branch: MuBranch,
    /// Imaginary part of the defining eigenvalue (its conjugate is also one).
    pub imaginary: f64,
    /// Collocation degree for numeric values.
    pub n: Option<usize>,
}

/// Discretisation and search limits for numeric exponents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSettings {
    pub n: usize,
    /// Widening stops once the window reaches this real part.
    pub max_re: f64,
    /// Use the eigensolver even when a closed form exists.
    pub force_numeric: bool,
}

impl Default for SpectralSettings {
    fn default() -> Self {
        SpectralSettings { n: DEFAULT_COLLOCATION, max_re: 64.0, force_numeric: false }
    }
}

/// Which eigenvalue defines `mu` for this pencil.
pub fn mu_branch(pencil: &DihedronPencil) -> MuBranch {
    match pencil.parity_factor() {
        Some(m) if pencil.theta < PI / m as f64 => MuBranch::Lambda2,
        _ => MuBranch::Lambda1,
    }
}

/// Reads `mu` off a computed spectrum.
///
/// Fails with [`Error::WindowTooSmall`] when the defining eigenvalue is not
/// inside the window, and with [`Error::NonConvergence`] when an uncertified
/// value, or a non-real eigenvalue on `Re = 1`, could precede it.
pub fn mu_of_edge_point(pencil: &DihedronPencil, spectrum: &Spectrum) -> Result<MuValue> {
    select(spectrum, mu_branch(pencil))
}

fn select(spectrum: &Spectrum, branch: MuBranch) -> Result<MuValue> {
    let lower = match branch {
        MuBranch::Lambda1 => 0.0,
        MuBranch::Lambda2 => 1.0,
    };
    if spectrum.window.re_lo > lower {
        return Err(Error::WindowTooSmall {
            re_hi: spectrum.window.re_hi,
            what: format!("{branch:?}: window starts at Re = {}", spectrum.window.re_lo),
        });
    }
    if branch == MuBranch::Lambda2 {
        if let Some(e) = spectrum
            .eigenvalues
            .iter()
            .find(|e| (e.re - 1.0).abs() <= REFINEMENT_TOL && e.im.abs() > REFINEMENT_TOL)
        {
            return Err(Error::NonConvergence(format!(
                "eigenvalue {}{:+}i on Re = 1 makes lambda_2 ambiguous",
                e.re, e.im
            )));
        }
    }
    let found = spectrum
        .eigenvalues
        .iter()
        .filter(|e| e.re > lower + REFINEMENT_TOL)
        .min_by(|a, b| a.re.total_cmp(&b.re).then(a.im.abs().total_cmp(&b.im.abs())));
    let Some(e) = found else {
        return Err(Error::WindowTooSmall {
            re_hi: spectrum.window.re_hi,
            what: format!("{branch:?}"),
        });
    };
    if let Some(u) = spectrum
        .unresolved
        .iter()
        .find(|u| u.re > lower + REFINEMENT_TOL && u.re < e.re + REFINEMENT_TOL)
    {
        return Err(Error::NonConvergence(format!(
            "uncertified value {}{:+}i precedes the candidate {}",
            u.re, u.im, e.re
        )));
    }
    Ok(MuValue {
        value: e.re,
        provenance: MuProvenance::Numeric,
        branch,
        imaginary: e.im,
        n: Some(spectrum.n),
    })
}

/// `Re lambda_1` or `Re lambda_2` by the eigensolver, widening the window
/// until the eigenvalue is enclosed and doubling the degree once if
/// certification fails.
pub fn numeric_eigenvalue(pencil: &DihedronPencil, branch: MuBranch, settings: &SpectralSettings) -> Result<MuValue> {
    match numeric_at(pencil, branch, settings, settings.n) {
        Err(Error::NonConvergence(_)) => numeric_at(pencil, branch, settings, 2 * settings.n),
        other => other,
    }
}

fn numeric_at(pencil: &DihedronPencil, branch: MuBranch, settings: &SpectralSettings, n: usize) -> Result<MuValue> {
    let mut re_hi = 2.0 + 2.0 * PI / pencil.theta;
    loop {
        let window = Window::with_imaginary_bound(0.0, re_hi, re_hi.max(4.0))?;
        let spectrum = solve_spectrum(pencil, &window, n)?;
        match select(&spectrum, branch) {
            Err(Error::WindowTooSmall { .. }) if re_hi < settings.max_re => re_hi *= 2.0,
            other => return other,
        }
    }
}

/// Closed form for the Dirichlet and Neumann pairs.
fn closed_form(pencil: &DihedronPencil, branch: MuBranch) -> Result<MuValue> {
    let theta = pencil.theta;
    let value = match branch {
        MuBranch::Lambda2 => PI / theta,
        MuBranch::Lambda1 if theta <= PI => 1.0,
        MuBranch::Lambda1 => mu_real_root(theta)?,
    };
    Ok(MuValue { value, provenance: MuProvenance::ClosedForm, branch, imaginary: 0.0, n: None })
}

/// `Re` of the requested eigenvalue, from the closed form where one exists.
pub fn eigenvalue_real_part(pencil: &DihedronPencil, branch: MuBranch, settings: &SpectralSettings) -> Result<MuValue> {
    if pencil.has_closed_form() && !settings.force_numeric {
        closed_form(pencil, branch)
    } else {
        numeric_eigenvalue(pencil, branch, settings)
    }
}

/// `mu` of a single wedge.
pub fn mu_of_pencil(pencil: &DihedronPencil, settings: &SpectralSettings) -> Result<MuValue> {
    eigenvalue_real_part(pencil, mu_branch(pencil), settings)
}

/// Pencil of a mesh edge: `d_plus` from the face traversing the edge forward.
pub fn edge_pencil(boundary: &BoundaryAssignment, edge: &Edge) -> Result<DihedronPencil> {
    let [k_plus, k_minus] = edge.adjacent_faces;
    DihedronPencil::new(edge.theta, boundary.get(k_plus), boundary.get(k_minus))
}

/// `mu_k` of an edge: the infimum of `mu` along it, which for a straight
/// edge is the value at its constant opening angle.
pub fn mu_k(boundary: &BoundaryAssignment, edge: &Edge, settings: &SpectralSettings) -> Result<MuValue> {
    mu_of_pencil(&edge_pencil(boundary, edge)?, settings)
}
