//! Chebyshev–Gauss–Lobatto nodes and differentiation matrices.

use faer::Mat;

/// Nodes `x_j = cos(j pi / n)`, `j = 0..=n`, ordered from `+1` down to `-1`.
pub fn lobatto_nodes(n: usize) -> Vec<f64> {
    (0..=n)
        .map(|j| {
            // symmetric evaluation keeps the nodes exactly antisymmetric
            let t = std::f64::consts::PI * (n as f64 - 2.0 * j as f64) / (2.0 * n as f64);
            t.sin()
        })
        .collect()
}

/// First-derivative collocation matrix on the Lobatto nodes of `[-1, 1]`.
///
/// Diagonal entries use the negative-sum trick so that constants are
/// differentiated to exactly zero.
pub fn diff_matrix(n: usize) -> Mat<f64> {
    let x = lobatto_nodes(n);
    let weight = |j: usize| {
        let c = if j == 0 || j == n { 2.0 } else { 1.0 };
        if j % 2 == 0 {
            c
        } else {
            -c
        }
    };
    let mut d = Mat::zeros(n + 1, n + 1);
    for i in 0..=n {
        let mut row_sum = 0.0;
        for j in 0..=n {
            if i != j {
                let v = weight(i) / weight(j) / (x[i] - x[j]);
                d[(i, j)] = v;
                row_sum += v;
            }
        }
        d[(i, i)] = -row_sum;
    }
    d
}
