//! Eigenvalues of the collocated pencil via companion linearisation.
//!
//! `T(lambda) x = 0` with `T = K0 + lambda K1 + lambda^2 K2` is rewritten as
//! `A z = lambda B z` for `z = (x, lambda x)`,
//!
//! ```text
//! A = [  0    I  ]     B = [ I  0  ]
//!     [ -K0  -K1 ]         [ 0  K2 ]
//! ```
//!
//! `K2` is singular (divergence and boundary rows, pressure columns), so the
//! problem is solved in shift-invert form `(A - sigma B)^{-1} B z = eta z`
//! with `lambda = sigma + 1/eta`; the infinite eigenvalues land at `eta = 0`.

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DihedronPencil, PencilMatrices, MIN_COLLOCATION};
use crate::error::{Error, Result};

/// Residual threshold for a certified eigenvalue.
pub const RESIDUAL_BOUND: f64 = 1e-8;
/// Agreement required between the `n` and `2n` discretisations.
pub const REFINEMENT_TOL: f64 = 1e-6;
/// Exact eigenvalues that recur for many boundary pairs, often defective.
const ANCHORS: [f64; 2] = [0.0, 1.0];
const ANCHOR_RADIUS: f64 = 2e-2;
const ANCHOR_TOL: f64 = 1e-7;
/// Radius within which split copies of a defective eigenvalue are grouped.
const CLOUD_TOL: f64 = 1e-3;
/// Width of the low end of a wide window that gets its own shift.
const LOW_BAND: f64 = 3.0;

/// Search strip `re_lo < Re lambda <= re_hi`, `|Im lambda| <= im_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_lo: f64, re_hi: f64) -> Result<Self> {
        Self::with_imaginary_bound(re_lo, re_hi, 4.0)
    }

    pub fn with_imaginary_bound(re_lo: f64, re_hi: f64, im_max: f64) -> Result<Self> {
        if !(re_lo.is_finite() && re_hi.is_finite() && re_lo < re_hi) {
            return Err(Error::InvalidArgument(format!(
                "window ({re_lo}, {re_hi}) is not a bounded strip"
            )));
        }
        if !(im_max > 0.0 && im_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "imaginary bound {im_max} must be positive"
            )));
        }
        Ok(Window { re_lo, re_hi, im_max })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_lo && z.re <= self.re_hi && z.im.abs() <= self.im_max
    }

    fn widened(&self, pad: f64) -> Window {
        Window {
            re_lo: self.re_lo - pad,
            re_hi: self.re_hi + pad,
            im_max: self.im_max + pad,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
    /// Normalised smallest singular value of the fine pencil at this value.
    pub residual: f64,
}

impl Eigenvalue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Certified eigenvalues sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Values inside the window that failed the refinement or residual test.
    pub unresolved: Vec<Eigenvalue>,
    pub window: Window,
    /// Coarse collocation degree; the check runs at `2n`.
    pub n: usize,
    /// Largest residual among the certified eigenvalues.
    pub residual_bound: f64,
}

impl Spectrum {
    /// Certified eigenvalues with multiplicity expanded.
    pub fn values(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat(e.value()).take(e.multiplicity))
            .collect()
    }

    pub fn is_resolved(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Raw eigenvalues of the pencil at degree `n`, restricted to `window`.
///
/// The antiplane component `U_3` is decoupled from `(U_1, U_2, P)` in every
/// row, so the two diagonal blocks are linearised separately.
pub(crate) fn raw_eigenvalues(matrices: &PencilMatrices, window: &Window) -> Result<Vec<Complex64>> {
    let u3 = matrices.u3_columns();
    let (antiplane, in_plane): (Vec<usize>, Vec<usize>) =
        (0..matrices.size()).partition(|i| u3.contains(i));
    let mut out = block_eigenvalues(matrices, &in_plane, window)?;
    out.extend(block_eigenvalues(matrices, &antiplane, window)?);
    Ok(out)
}

fn block_eigenvalues(
    matrices: &PencilMatrices,
    idx: &[usize],
    window: &Window,
) -> Result<Vec<Complex64>> {
    // accuracy decays away from the shift; a wide window gets a second shift
    // dedicated to its low end, where the exponents live
    if window.re_hi - window.re_lo <= 2.0 * LOW_BAND {
        return shifted_eigenvalues(matrices, idx, window);
    }
    let split = window.re_lo + LOW_BAND;
    let low = Window { re_hi: split, ..*window };
    let high = Window { re_lo: split, ..*window };
    let mut out = shifted_eigenvalues(matrices, idx, &low)?;
    out.extend(shifted_eigenvalues(matrices, idx, &high)?);
    Ok(out)
}

fn shifted_eigenvalues(
    matrices: &PencilMatrices,
    idx: &[usize],
    window: &Window,
) -> Result<Vec<Complex64>> {
    let centre = 0.5 * (window.re_lo + window.re_hi);
    // shifts chosen away from the rationals where eigenvalues tend to sit
    let mut last = None;
    for offset in [0.073_125_9, -0.131_771_3, 0.217_393_1] {
        match shift_invert(matrices, idx, window, centre + offset) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one shift attempted"))
}

fn shift_invert(
    matrices: &PencilMatrices,
    idx: &[usize],
    window: &Window,
    sigma: f64,
) -> Result<Vec<Complex64>> {
    let m = idx.len();
    let mut shifted = Mat::<f64>::zeros(2 * m, 2 * m);
    let mut b = Mat::<f64>::zeros(2 * m, 2 * m);
    for i in 0..m {
        shifted[(i, i)] = -sigma;
        shifted[(i, m + i)] = 1.0;
        b[(i, i)] = 1.0;
    }
    for (i, &r) in idx.iter().enumerate() {
        for (j, &c) in idx.iter().enumerate() {
            shifted[(m + i, j)] = -matrices.k0[(r, c)];
            shifted[(m + i, m + j)] = -matrices.k1[(r, c)] - sigma * matrices.k2[(r, c)];
            b[(m + i, m + j)] = matrices.k2[(r, c)];
        }
    }
    let op = shifted.partial_piv_lu().solve(&b);
    if !op.is_all_finite() {
        return Err(Error::NonConvergence(format!("shift {sigma} hits an eigenvalue")));
    }
    let scale = op.norm_max().max(f64::MIN_POSITIVE);
    let etas = op
        .eigenvalues()
        .map_err(|_| Error::NonConvergence("Hessenberg QR did not converge".into()))?;
    Ok(etas
        .into_iter()
        .filter(|eta| eta.norm() > 1e-13 * scale)
        .map(|eta| Complex64::new(sigma, 0.0) + eta.inv())
        .filter(|z| window.contains(*z))
        .collect())
}

fn matches(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(1.0)
}

/// Eigenvalues of the dihedron pencil inside `window`.
///
/// Each candidate found at degree `2n` must be reproduced at degree `n`
/// within [`REFINEMENT_TOL`] and have normalised residual below
/// [`RESIDUAL_BOUND`]; candidates failing either test are listed in
/// [`Spectrum::unresolved`].
pub fn solve_spectrum(pencil: &DihedronPencil, window: &Window, n: usize) -> Result<Spectrum> {
    if n < MIN_COLLOCATION {
        return Err(Error::InvalidArgument(format!(
            "collocation degree {n} below {MIN_COLLOCATION}"
        )));
    }
    let coarse_m = PencilMatrices::assemble(pencil, n);
    let fine_m = PencilMatrices::assemble(pencil, 2 * n);
    // wide enough that split copies of an anchor on the window edge are all seen
    let search = window.widened(ANCHOR_RADIUS);
    let mut coarse = raw_eigenvalues(&coarse_m, &search)?;
    let mut fine = raw_eigenvalues(&fine_m, &search)?;

    let mut accepted = Vec::new();
    for anchor in ANCHORS {
        let a = Complex64::new(anchor, 0.0);
        if !search.contains(a) {
            continue;
        }
        let residual = fine_m.normalized_residual(a);
        if residual >= RESIDUAL_BOUND {
            continue;
        }
        let k = absorb(&mut fine, a);
        absorb(&mut coarse, a);
        if k > 0 {
            accepted.push(Eigenvalue { re: anchor, im: 0.0, multiplicity: k, residual });
        }
    }

    let mut used_coarse = vec![false; coarse.len()];
    let mut used_fine = vec![false; fine.len()];
    for (k, &z) in fine.iter().enumerate() {
        let hit = coarse
            .iter()
            .enumerate()
            .filter(|(i, c)| !used_coarse[*i] && matches(z, **c, REFINEMENT_TOL))
            .min_by(|a, b| (z - a.1).norm().total_cmp(&(z - b.1).norm()));
        if let Some((i, _)) = hit {
            let residual = fine_m.normalized_residual(z);
            if residual < RESIDUAL_BOUND {
                used_coarse[i] = true;
                used_fine[k] = true;
                accepted.push(Eigenvalue { re: z.re, im: z.im, multiplicity: 1, residual });
            }
        }
    }

    // Defective eigenvalues split into a small cloud whose arithmetic mean is
    // still accurate; accept a cloud when its mean is stable and certified.
    let left_fine: Vec<Complex64> =
        fine.iter().zip(&used_fine).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let left_coarse: Vec<Complex64> =
        coarse.iter().zip(&used_coarse).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let fine_clouds = single_link(&left_fine, CLOUD_TOL);
    let mut coarse_taken = vec![false; left_coarse.len()];
    let mut unresolved = Vec::new();
    for cloud in fine_clouds {
        let mean = cloud.iter().sum::<Complex64>() / cloud.len() as f64;
        let partners: Vec<usize> = (0..left_coarse.len())
            .filter(|&i| !coarse_taken[i] && matches(mean, left_coarse[i], CLOUD_TOL))
            .collect();
        let coarse_mean = partners.iter().map(|&i| left_coarse[i]).sum::<Complex64>()
            / partners.len().max(1) as f64;
        let mut centre = mean;
        if cloud.iter().all(|z| z.im.abs() <= CLOUD_TOL) {
            centre.im = 0.0;
        }
        let residual = fine_m.normalized_residual(centre);
        if cloud.len() > 1
            && partners.len() == cloud.len()
            && matches(mean, coarse_mean, REFINEMENT_TOL)
            && residual < RESIDUAL_BOUND
        {
            for i in partners {
                coarse_taken[i] = true;
            }
            accepted.push(Eigenvalue {
                re: centre.re,
                im: centre.im,
                multiplicity: cloud.len(),
                residual,
            });
        } else {
            for z in cloud.into_iter().filter(|z| window.contains(*z)) {
                unresolved.push(Eigenvalue {
                    re: z.re,
                    im: z.im,
                    multiplicity: 1,
                    residual: fine_m.normalized_residual(z),
                });
            }
        }
    }
    for (i, &c) in left_coarse.iter().enumerate() {
        if !coarse_taken[i] && window.contains(c) && !fine.iter().any(|z| matches(*z, c, REFINEMENT_TOL)) {
            unresolved.push(Eigenvalue {
                re: c.re,
                im: c.im,
                multiplicity: 1,
                residual: coarse_m.normalized_residual(c),
            });
        }
    }

    let eigenvalues = cluster(accepted)
        .into_iter()
        .filter(|e| window.contains(e.value()))
        .collect::<Vec<_>>();
    let residual_bound = eigenvalues.iter().map(|e| e.residual).fold(0.0, f64::max);
    sort(&mut unresolved);
    Ok(Spectrum { eigenvalues, unresolved, window: *window, n, residual_bound })
}

/// Removes from `values` the largest group of values nearest to `anchor`
/// whose mean reproduces the anchor, returning the group size.
///
/// A defective eigenvalue of algebraic multiplicity `k` is computed as `k`
/// values scattered by up to `eps^(1/k)`; their mean is accurate to
/// working precision.
fn absorb(values: &mut Vec<Complex64>, anchor: Complex64) -> usize {
    let mut near: Vec<(f64, usize)> = values
        .iter()
        .enumerate()
        .map(|(i, z)| ((z - anchor).norm(), i))
        .filter(|(d, _)| *d <= ANCHOR_RADIUS)
        .collect();
    near.sort_by(|a, b| a.0.total_cmp(&b.0));
    for k in (1..=near.len()).rev() {
        let mean = near[..k].iter().map(|(_, i)| values[*i]).sum::<Complex64>() / k as f64;
        let spread = near[k - 1].0;
        // the mean of a split cluster is far more accurate than its spread
        if (mean - anchor).norm() <= ANCHOR_TOL.max(1e-4 * spread) {
            let mut drop: Vec<usize> = near[..k].iter().map(|(_, i)| *i).collect();
            drop.sort_unstable_by(|a, b| b.cmp(a));
            for i in drop {
                values.remove(i);
            }
            return k;
        }
    }
    0
}

/// Groups of values connected by steps shorter than `tol` (relative).
fn single_link(values: &[Complex64], tol: f64) -> Vec<Vec<Complex64>> {
    let mut group: Vec<usize> = (0..values.len()).collect();
    for i in 0..values.len() {
        for j in 0..i {
            if matches(values[i], values[j], tol) {
                let (gi, gj) = (group[i], group[j]);
                for g in group.iter_mut() {
                    if *g == gi {
                        *g = gj;
                    }
                }
            }
        }
    }
    let mut ids: Vec<usize> = group.clone();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|id| (0..values.len()).filter(|&i| group[i] == id).map(|i| values[i]).collect())
        .collect()
}

fn sort(v: &mut [Eigenvalue]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Merge values closer than the refinement tolerance into one entry with
/// multiplicity.
fn cluster(mut values: Vec<Eigenvalue>) -> Vec<Eigenvalue> {
    sort(&mut values);
    let mut out: Vec<(Vec<Eigenvalue>, Complex64)> = Vec::new();
    for v in values {
        let z = v.value();
        match out.iter_mut().find(|(_, c)| matches(*c, z, REFINEMENT_TOL)) {
            Some((members, centre)) => {
                members.push(v);
                let k: usize = members.iter().map(|m| m.multiplicity).sum();
                *centre = members.iter().map(|m| m.value() * m.multiplicity as f64).sum::<Complex64>()
                    / k as f64;
            }
            None => out.push((vec![v], z)),
        }
    }
    let mut merged: Vec<Eigenvalue> = out
        .into_iter()
        .map(|(members, centre)| {
            let mut c = centre;
            // real pencil: a cluster straddling the axis is real
            if members.iter().all(|m| m.im.abs() <= REFINEMENT_TOL) {
                c.im = 0.0;
            }
            Eigenvalue {
                re: c.re,
                im: c.im,
                multiplicity: members.iter().map(|m| m.multiplicity).sum(),
                residual: members.iter().map(|m| m.residual).fold(0.0, f64::max),
            }
        })
        .collect();
    sort(&mut merged);
    merged
}
