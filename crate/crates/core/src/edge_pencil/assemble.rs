//! Collocation discretisation of the dihedron pencil.
//!
//! With `u = r^lambda U(phi)` and `p = r^(lambda-1) P(phi)` on the wedge
//! `|phi| < theta/2`, the Stokes system becomes a boundary value problem in
//! `phi` whose coefficients are polynomial (degree two) in `lambda`:
//!
//! ```text
//! -nu (U_i'' + lambda^2 U_i) + [grad p]_i = 0,   i = 1, 2, 3
//! lambda (cos U_1 + sin U_2) - sin U_1' + cos U_2' = 0
//! ```
//!
//! with `[grad p]_1 = (lambda-1) cos P - sin P'`, `[grad p]_2 = (lambda-1) sin P + cos P'`
//! and `[grad p]_3 = 0`. The boundary operators act on the traces at
//! `phi = +-theta/2` through `e_r = (cos, sin, 0)`, `e_phi = (-sin, cos, 0)` and
//!
//! ```text
//! r^(1-lambda) 2 eps(u) e_phi = U' + lambda (U . e_phi) e_r + (U' . e_phi) e_phi
//! ```
//!
//! The unknown vector is `[U_1 | U_2 | U_3 | P]` sampled on the Lobatto nodes.
//! Momentum rows at the two end nodes are replaced by the boundary rows,
//! the divergence is collocated at every node, and each row is scaled to
//! unit max-norm.

use faer::Mat;
use num_complex::Complex64;

use super::chebyshev::{diff_matrix, lobatto_nodes};
use super::DihedronPencil;
use crate::geometry::BoundaryCondition;

/// Coefficients of `T(lambda) = K0 + lambda K1 + lambda^2 K2`.
#[derive(Clone, Debug)]
pub struct PencilMatrices {
    pub k0: Mat<f64>,
    pub k1: Mat<f64>,
    pub k2: Mat<f64>,
    /// Polynomial degree of the collocation (there are `n + 1` nodes).
    pub n: usize,
}

/// Index helpers for the block layout.
#[derive(Clone, Copy)]
struct Layout {
    nodes: usize,
}

impl Layout {
    fn u(self, comp: usize, node: usize) -> usize {
        comp * self.nodes + node
    }
    fn p(self, node: usize) -> usize {
        3 * self.nodes + node
    }
    fn size(self) -> usize {
        4 * self.nodes
    }
}

/// One row being built across the three coefficient matrices.
struct Row<'a> {
    m: &'a mut PencilMatrices,
    row: usize,
}

impl Row<'_> {
    fn add(&mut self, degree: usize, col: usize, value: f64) {
        let target = match degree {
            0 => &mut self.m.k0,
            1 => &mut self.m.k1,
            _ => &mut self.m.k2,
        };
        target[(self.row, col)] += value;
    }
}

impl PencilMatrices {
    pub fn assemble(pencil: &DihedronPencil, n: usize) -> Self {
        let layout = Layout { nodes: n + 1 };
        let size = layout.size();
        let half = 0.5 * pencil.theta;
        let scale = 1.0 / half;
        let d1 = diff_matrix(n) * faer::Scale(scale);
        let d2 = &d1 * &d1;
        let phi: Vec<f64> = lobatto_nodes(n).into_iter().map(|x| half * x).collect();
        let nu = pencil.nu;

        let mut m = PencilMatrices {
            k0: Mat::zeros(size, size),
            k1: Mat::zeros(size, size),
            k2: Mat::zeros(size, size),
            n,
        };

        // interior momentum rows
        for j in 1..n {
            let (s, c) = phi[j].sin_cos();
            for comp in 0..3 {
                let mut row = Row { row: layout.u(comp, j), m: &mut m };
                for k in 0..=n {
                    row.add(0, layout.u(comp, k), -nu * d2[(j, k)]);
                }
                row.add(2, layout.u(comp, j), -nu);
                match comp {
                    0 => {
                        row.add(1, layout.p(j), c);
                        row.add(0, layout.p(j), -c);
                        for k in 0..=n {
                            row.add(0, layout.p(k), -s * d1[(j, k)]);
                        }
                    }
                    1 => {
                        row.add(1, layout.p(j), s);
                        row.add(0, layout.p(j), -s);
                        for k in 0..=n {
                            row.add(0, layout.p(k), c * d1[(j, k)]);
                        }
                    }
                    _ => {}
                }
            }
        }

        // divergence at every node
        for j in 0..=n {
            let (s, c) = phi[j].sin_cos();
            let mut row = Row { row: layout.p(j), m: &mut m };
            row.add(1, layout.u(0, j), c);
            row.add(1, layout.u(1, j), s);
            for k in 0..=n {
                row.add(0, layout.u(0, k), -s * d1[(j, k)]);
                row.add(0, layout.u(1, k), c * d1[(j, k)]);
            }
        }

        // boundary rows: node 0 is phi = +theta/2, node n is phi = -theta/2
        for (node, bc) in [(0, pencil.d_plus), (n, pencil.d_minus)] {
            let (s, c) = phi[node].sin_cos();
            let e_r = [c, s];
            let e_phi = [-s, c];
            let rows = [layout.u(0, node), layout.u(1, node), layout.u(2, node)];
            let trace = |row: &mut Row, dir: [f64; 2], w: f64| {
                row.add(0, layout.u(0, node), w * dir[0]);
                row.add(0, layout.u(1, node), w * dir[1]);
            };
            let flux = |row: &mut Row, dir: [f64; 2], w: f64| {
                for k in 0..=n {
                    row.add(0, layout.u(0, k), w * dir[0] * d1[(node, k)]);
                    row.add(0, layout.u(1, k), w * dir[1] * d1[(node, k)]);
                }
            };
            // U'.e_r + lambda U.e_phi   (tangential stress in the e_r direction)
            let shear = |row: &mut Row| {
                flux(row, e_r, nu);
                row.add(1, layout.u(0, node), nu * e_phi[0]);
                row.add(1, layout.u(1, node), nu * e_phi[1]);
            };
            // -P + 2 nu U'.e_phi   (normal stress)
            let normal = |row: &mut Row| {
                row.add(0, layout.p(node), -1.0);
                flux(row, e_phi, 2.0 * nu);
            };
            let u3_trace = |row: &mut Row| row.add(0, layout.u(2, node), 1.0);
            let u3_flux = |row: &mut Row| {
                for k in 0..=n {
                    row.add(0, layout.u(2, k), nu * d1[(node, k)]);
                }
            };

            {
                let mut r = Row { row: rows[0], m: &mut m };
                match bc {
                    BoundaryCondition::Dirichlet => r.add(0, layout.u(0, node), 1.0),
                    BoundaryCondition::TangentialVelocity => trace(&mut r, e_r, 1.0),
                    BoundaryCondition::Slip => trace(&mut r, e_phi, 1.0),
                    BoundaryCondition::Neumann => shear(&mut r),
                }
            }
            {
                let mut r = Row { row: rows[1], m: &mut m };
                match bc {
                    BoundaryCondition::Dirichlet => r.add(0, layout.u(1, node), 1.0),
                    BoundaryCondition::TangentialVelocity | BoundaryCondition::Neumann => {
                        normal(&mut r)
                    }
                    BoundaryCondition::Slip => shear(&mut r),
                }
            }
            {
                let mut r = Row { row: rows[2], m: &mut m };
                match bc {
                    BoundaryCondition::Dirichlet | BoundaryCondition::TangentialVelocity => {
                        u3_trace(&mut r)
                    }
                    BoundaryCondition::Slip | BoundaryCondition::Neumann => u3_flux(&mut r),
                }
            }
        }

        m.equilibrate_rows();
        m
    }

    fn equilibrate_rows(&mut self) {
        let size = self.size();
        for i in 0..size {
            let mut big = 0.0f64;
            for mat in [&self.k0, &self.k1, &self.k2] {
                for j in 0..size {
                    big = big.max(mat[(i, j)].abs());
                }
            }
            if big > 0.0 {
                let inv = 1.0 / big;
                for mat in [&mut self.k0, &mut self.k1, &mut self.k2] {
                    for j in 0..size {
                        mat[(i, j)] *= inv;
                    }
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        self.k0.nrows()
    }

    /// Dense `T(lambda)`.
    pub fn evaluate(&self, lambda: Complex64) -> Mat<Complex64> {
        let l2 = lambda * lambda;
        Mat::from_fn(self.size(), self.size(), |i, j| {
            Complex64::new(self.k0[(i, j)], 0.0)
                + lambda * self.k1[(i, j)]
                + l2 * self.k2[(i, j)]
        })
    }

    /// Frobenius-norm scale `|K0| + |lambda| |K1| + |lambda|^2 |K2|` used to
    /// normalise residuals.
    pub fn norm_scale(&self, lambda: Complex64) -> f64 {
        let a = lambda.norm();
        self.k0.norm_l2() + a * self.k1.norm_l2() + a * a * self.k2.norm_l2()
    }

    /// Smallest singular value of `T(lambda)` divided by [`Self::norm_scale`].
    pub fn normalized_residual(&self, lambda: Complex64) -> f64 {
        let t = self.evaluate(lambda);
        match t.singular_values() {
            Ok(sv) => sv.iter().cloned().fold(f64::INFINITY, f64::min) / self.norm_scale(lambda),
            Err(_) => f64::INFINITY,
        }
    }

    /// Column indices of the `U_3` block.
    pub fn u3_columns(&self) -> std::ops::Range<usize> {
        let nodes = self.n + 1;
        2 * nodes..3 * nodes
    }
}

/// `T(lambda)` for the given pencil at collocation degree `n`.
pub fn assemble_pencil(pencil: &DihedronPencil, lambda: Complex64, n: usize) -> Mat<Complex64> {
    PencilMatrices::assemble(pencil, n).evaluate(lambda)
}
