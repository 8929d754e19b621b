//! Transcendental spectrum equation for the Dirichlet/Dirichlet and
//! Neumann/Neumann wedges.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `sin(lambda theta) (lambda^2 sin^2 theta - sin^2(lambda theta))`.
pub fn dd_nn_residual(lambda: Complex64, theta: f64) -> Complex64 {
    let s = (lambda * theta).sin();
    let st = theta.sin();
    s * (lambda * lambda * st * st - s * s)
}

/// Real part of the leading eigenvalue that governs the edge exponent for the
/// DD and NN wedges.
///
/// `pi/theta` for `theta < pi`, 1 at `theta = pi`, and otherwise the smallest
/// root in `(0, 1)` of `sin(mu theta) + mu sin(theta)`.
pub fn mu_real_root(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 2.0 * PI) {
        return Err(Error::InvalidArgument(format!(
            "opening angle {theta} outside (0, 2pi)"
        )));
    }
    if theta < PI {
        return Ok(PI / theta);
    }
    if theta == PI {
        return Ok(1.0);
    }
    let st = theta.sin();
    let f = |mu: f64| (mu * theta).sin() + mu * st;
    let step = 0.01f64.min(PI / (4.0 * theta));
    // f > 0 just above 0 since f'(0) = theta + sin(theta) > 0
    let mut a = 0.0;
    let mut fa = theta + st;
    let mut k = 1usize;
    loop {
        let b = (k as f64 * step).min(1.0);
        let fb = f(b);
        if fb == 0.0 && b < 1.0 {
            return Ok(b);
        }
        if fa * fb < 0.0 {
            return Ok(bisect(f, a, b, fa));
        }
        if b >= 1.0 {
            return Err(Error::Bracketing { theta });
        }
        a = b;
        fa = fb;
        k += 1;
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > 1e-12 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    // a few more halvings for a margin below the stated tolerance
    for _ in 0..8 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_vanishes_on_trivial_roots() {
        let r = dd_nn_residual(Complex64::new(2.0, 0.0), PI / 2.0);
        assert!(r.norm() < 1e-14);
        for theta in [0.3, 1.0, 2.5, 4.0, 6.0] {
            assert!(dd_nn_residual(Complex64::new(1.0, 0.0), theta).norm() < 1e-14);
        }
    }

    #[test]
    fn reentrant_corner_root() {
        let mu = mu_real_root(1.5 * PI).unwrap();
        assert!((mu - 0.54448373).abs() < 1e-8);
        assert!(dd_nn_residual(Complex64::new(mu, 0.0), 1.5 * PI).norm() < 1e-10);
    }

    #[test]
    fn convex_and_flat() {
        assert_eq!(mu_real_root(PI / 2.0).unwrap(), 2.0);
        assert_eq!(mu_real_root(PI).unwrap(), 1.0);
        assert!(mu_real_root(0.0).is_err());
        assert!(mu_real_root(2.0 * PI).is_err());
    }
}
