//! A small dense solver for `max t  s.t.  A0 + Σ z_l A_l − t I ⪰ 0`.
//!
//! Log-det barrier with damped Newton steps and a geometric schedule on the
//! barrier weight. Directions are sparse symmetric matrices, which keeps the
//! Hessian assembly at a few operations per pair of directions. Everything
//! here is floating point; callers must confirm results exactly.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

/// Entries `(row, col, value)`; off-diagonal entries appear in both orders.
pub type SparseSym = Vec<(usize, usize, f64)>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdpOptions {
    /// Stop once the barrier gap `size · μ` falls below this.
    pub gap: f64,
    pub max_newton: usize,
    /// Stop early once `t` exceeds this value (useful when only strict
    /// feasibility matters).
    pub target: f64,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions { gap: 1e-10, max_newton: 2000, target: f64::INFINITY }
    }
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub z: Vec<f64>,
    /// Smallest eigenvalue of `A0 + Σ z_l A_l`.
    pub t: f64,
    pub matrix: DMatrix<f64>,
    pub newton_steps: usize,
    /// False when the step budget ran out before the gap target.
    pub converged: bool,
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    SymmetricEigen::new(m.clone()).eigenvalues.min()
}

pub fn assemble(a0: &DMatrix<f64>, dirs: &[SparseSym], z: &[f64]) -> DMatrix<f64> {
    let mut m = a0.clone();
    for (d, &zl) in dirs.iter().zip(z) {
        if zl != 0.0 {
            for &(a, b, v) in d {
                m[(a, b)] += zl * v;
            }
        }
    }
    m
}

fn barrier_value(s: &DMatrix<f64>, t: f64, mu: f64) -> Option<f64> {
    let chol = Cholesky::new(s.clone())?;
    let logdet: f64 = chol.l_dirty().diagonal().iter().map(|x| 2.0 * x.ln()).sum();
    logdet.is_finite().then_some(t / mu + logdet)
}

fn shifted(a0: &DMatrix<f64>, dirs: &[SparseSym], z: &[f64], t: f64) -> DMatrix<f64> {
    let mut s = assemble(a0, dirs, z);
    for i in 0..s.nrows() {
        s[(i, i)] -= t;
    }
    s
}

/// Maximizes the smallest eigenvalue over the affine family.
///
/// The problem must be bounded (for instance through a fixed diagonal or a
/// fixed trace); otherwise `t` grows until the step budget is exhausted.
pub fn maximize_min_eigenvalue(a0: &DMatrix<f64>, dirs: &[SparseSym], opts: &SdpOptions) -> SdpSolution {
    let n = a0.nrows();
    let p = dirs.len();
    let mut z = vec![0.0; p];
    if n == 0 {
        return SdpSolution { z, t: f64::INFINITY, matrix: a0.clone(), newton_steps: 0, converged: true };
    }
    let scale = a0.diagonal().iter().map(|x| x.abs()).fold(1.0f64, f64::max);
    let mut t = min_eigenvalue(a0) - scale;
    let mut mu = scale;
    let mut steps = 0;
    let mut converged = false;
    'outer: loop {
        // centering for the current barrier weight
        for _ in 0..100 {
            if steps >= opts.max_newton {
                break 'outer;
            }
            steps += 1;
            let s = shifted(a0, dirs, &z, t);
            let Some(chol) = Cholesky::new(s.clone()) else { break 'outer };
            let w = chol.inverse();
            let w2 = &w * &w;
            let dim = p + 1;
            let mut grad = DVector::zeros(dim);
            let mut hess = DMatrix::zeros(dim, dim);
            for (l, d) in dirs.iter().enumerate() {
                grad[l] = d.iter().map(|&(a, b, v)| v * w[(b, a)]).sum();
                hess[(l, p)] = -d.iter().map(|&(a, b, v)| v * w2[(b, a)]).sum::<f64>();
                hess[(p, l)] = hess[(l, p)];
                for (q, e) in dirs.iter().enumerate().take(l + 1) {
                    let mut acc = 0.0;
                    for &(a, b, v) in d {
                        for &(c, dd, u) in e {
                            acc += v * u * w[(b, c)] * w[(dd, a)];
                        }
                    }
                    hess[(l, q)] = acc;
                    hess[(q, l)] = acc;
                }
            }
            grad[p] = 1.0 / mu - w.trace();
            hess[(p, p)] = w2.trace();
            // hess holds the negated Hessian, which is positive semidefinite
            let ridge = 1e-14 * (1.0 + hess.diagonal().amax());
            for i in 0..dim {
                hess[(i, i)] += ridge;
            }
            let Some(hchol) = Cholesky::new(hess) else { break 'outer };
            let dir = hchol.solve(&grad);
            let decrement = grad.dot(&dir);
            if decrement < 1e-10 {
                break;
            }
            let f0 = barrier_value(&s, t, mu).expect("current point is interior");
            let mut alpha = 1.0;
            let mut moved = false;
            for _ in 0..60 {
                let zn: Vec<f64> = z.iter().zip(dir.iter()).map(|(a, b)| a + alpha * b).collect();
                let tn = t + alpha * dir[p];
                let sn = shifted(a0, dirs, &zn, tn);
                if let Some(f) = barrier_value(&sn, tn, mu) {
                    if f >= f0 + 0.25 * alpha * decrement {
                        z = zn;
                        t = tn;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !moved {
                break;
            }
            if t > opts.target {
                converged = true;
                break 'outer;
            }
        }
        if (n as f64) * mu < opts.gap * scale {
            converged = true;
            break;
        }
        mu *= 0.2;
    }
    let matrix = assemble(a0, dirs, &z);
    let t = min_eigenvalue(&matrix);
    SdpSolution { z, t, matrix, newton_steps: steps, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_matrix() {
        let a0 = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
        let sol = maximize_min_eigenvalue(&a0, &[], &SdpOptions::default());
        assert!((sol.t - 0.5).abs() < 1e-12);
    }

    #[test]
    fn optimizes_off_diagonal() {
        // [[1, z], [z, 1]] + offset 3 on (0,1): best is z = -3, λ_min = 1
        let a0 = DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 3.0, 1.0]);
        let dir: SparseSym = vec![(0, 1, 1.0), (1, 0, 1.0)];
        let sol = maximize_min_eigenvalue(&a0, &[dir], &SdpOptions::default());
        assert!((sol.t - 1.0).abs() < 1e-6, "{}", sol.t);
        assert!((sol.z[0] + 3.0).abs() < 1e-3);
        assert!(sol.converged);
    }

    #[test]
    fn infeasible_family_stays_negative() {
        let a0 = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let sol = maximize_min_eigenvalue(&a0, &[], &SdpOptions::default());
        assert!(sol.t < -0.5);
    }
}
