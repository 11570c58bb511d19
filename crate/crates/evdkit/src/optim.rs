//! Box-constrained local minimization: projected BFGS with numerical
//! gradients and a backtracking Armijo line search.
//!
//! Dimensions here are tiny (2-5 parameters), so dense inverse-Hessian
//! updates are fine.

use crate::error::{Error, Result};

/// Per-coordinate box constraints; use infinities for unbounded sides.
#[derive(Debug, Clone)]
pub struct Bounds {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Bounds {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Bounds> {
        if lo.len() != hi.len() {
            return Err(Error::Domain("bounds length mismatch".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l < h)) {
            return Err(Error::Domain(format!("bounds must satisfy lo < hi: {lo:?} vs {hi:?}")));
        }
        Ok(Bounds { lo, hi })
    }

    pub fn unbounded(n: usize) -> Bounds {
        Bounds {
            lo: vec![f64::NEG_INFINITY; n],
            hi: vec![f64::INFINITY; n],
        }
    }

    fn project(&self, x: &mut [f64]) {
        for i in 0..x.len() {
            x[i] = x[i].clamp(self.lo[i], self.hi[i]);
        }
    }
}

/// Outcome of a minimization run.
#[derive(Debug, Clone)]
pub struct OptimResult {
    pub x: Vec<f64>,
    pub f: f64,
    /// True when the projected-gradient or step tolerance was met.
    pub converged: bool,
    pub n_evals: usize,
    pub iterations: usize,
    /// Coordinates sitting at a bound in the final iterate.
    pub bounds_active: Vec<bool>,
}

/// Tolerances and iteration budget.
#[derive(Debug, Clone, Copy)]
pub struct OptimOptions {
    pub tol_grad: f64,
    pub tol_step: f64,
    pub max_iters: usize,
}

impl Default for OptimOptions {
    fn default() -> Self {
        OptimOptions {
            tol_grad: 1e-8,
            tol_step: 1e-10,
            max_iters: 500,
        }
    }
}

// Objective wrapper: counts evaluations and maps non-finite values to +inf.
struct Counted<F> {
    f: F,
    n: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.n += 1;
        let v = (self.f)(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    }

    // central differences, clipped to the box (one-sided at a bound)
    fn grad(&mut self, x: &[f64], bounds: &Bounds) -> Vec<f64> {
        let mut g = vec![0.0; x.len()];
        let mut xp = x.to_vec();
        for i in 0..x.len() {
            let h = 6e-6 * (1.0 + x[i].abs());
            let a = (x[i] - h).max(bounds.lo[i]);
            let b = (x[i] + h).min(bounds.hi[i]);
            xp[i] = b;
            let fb = self.eval(&xp);
            xp[i] = a;
            let fa = self.eval(&xp);
            xp[i] = x[i];
            g[i] = if b > a { (fb - fa) / (b - a) } else { 0.0 };
        }
        g
    }
}

/// Minimize `f` from `x0` inside `bounds`. Non-finite objective values are
/// treated as +inf (rejected by the line search).
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    bounds: &Bounds,
    opts: OptimOptions,
) -> Result<OptimResult> {
    let n = x0.len();
    if bounds.lo.len() != n {
        return Err(Error::Domain("bounds do not match dimension".into()));
    }
    let mut obj = Counted { f, n: 0 };

    let mut x = x0.to_vec();
    bounds.project(&mut x);
    let mut fx = obj.eval(&x);
    if !fx.is_finite() {
        return Err(Error::Domain(
            "objective not finite at the starting point".into(),
        ));
    }
    let mut g = obj.grad(&x, bounds);

    // inverse Hessian approximation, row-major
    let mut h_inv = identity(n);
    let mut converged = false;
    let mut iterations = 0usize;

    for iter in 0..opts.max_iters {
        iterations = iter + 1;
        // freeze coordinates pinned at a bound with outward-pointing gradient
        let frozen: Vec<bool> = (0..n)
            .map(|i| {
                (x[i] <= bounds.lo[i] && g[i] > 0.0) || (x[i] >= bounds.hi[i] && g[i] < 0.0)
            })
            .collect();

        // projected-gradient convergence test
        let pg_norm = (0..n)
            .map(|i| if frozen[i] { 0.0 } else { g[i].abs() })
            .fold(0.0, f64::max);
        if pg_norm <= opts.tol_grad * (1.0 + fx.abs()) {
            converged = true;
            break;
        }

        // search direction d = -H g on the free coordinates
        let mut d = vec![0.0; n];
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            for j in 0..n {
                if !frozen[j] {
                    d[i] -= h_inv[i * n + j] * g[j];
                }
            }
        }
        let descent: f64 = d.iter().zip(&g).map(|(di, gi)| di * gi).sum();
        if descent >= 0.0 {
            // curvature model broke down; restart from steepest descent
            h_inv = identity(n);
            for i in 0..n {
                d[i] = if frozen[i] { 0.0 } else { -g[i] };
            }
        }

        // backtracking Armijo search along the projected path
        let gd: f64 = d.iter().zip(&g).map(|(di, gi)| di * gi).sum();
        let mut t = 1.0;
        let mut x_new = x.clone();
        let mut f_new = f64::INFINITY;
        let mut accepted = false;
        for _ in 0..60 {
            for i in 0..n {
                x_new[i] = x[i] + t * d[i];
            }
            bounds.project(&mut x_new);
            f_new = obj.eval(&x_new);
            let actual_step: f64 = x_new
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            if actual_step == 0.0 {
                break;
            }
            if f_new <= fx + 1e-4 * t * gd {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // no progress possible along this direction
            converged = pg_norm <= 1e-5 * (1.0 + fx.abs());
            break;
        }

        let step_norm = x_new
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let x_norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let g_new = obj.grad(&x_new, bounds);

        // BFGS update on the inverse Hessian
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let yv: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = s.iter().zip(&yv).map(|(a, b)| a * b).sum();
        let s_norm = s.iter().map(|v| v * v).sum::<f64>().sqrt();
        let y_norm = yv.iter().map(|v| v * v).sum::<f64>().sqrt();
        if sy > 1e-12 * s_norm * y_norm {
            bfgs_update(&mut h_inv, &s, &yv, sy, n);
        }

        x = x_new;
        fx = f_new;
        g = g_new;

        if step_norm <= opts.tol_step * (1.0 + x_norm) {
            converged = true;
            break;
        }
    }

    let bounds_active = (0..n)
        .map(|i| x[i] <= bounds.lo[i] || x[i] >= bounds.hi[i])
        .collect();
    Ok(OptimResult {
        x,
        f: fx,
        converged,
        n_evals: obj.n,
        iterations,
        bounds_active,
    })
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

// H <- (I - s y'/sy) H (I - y s'/sy) + s s'/sy
fn bfgs_update(h: &mut [f64], s: &[f64], y: &[f64], sy: f64, n: usize) {
    let hy: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| h[i * n + j] * y[j]).sum())
        .collect();
    let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] += (sy + yhy) * s[i] * s[j] / (sy * sy)
                - (hy[i] * s[j] + s[i] * hy[j]) / sy;
        }
    }
}

/// Central-difference Hessian of `f` at `x` (step max(1e-4, 1e-4|x_i|)).
pub fn numerical_hessian<F: FnMut(&[f64]) -> f64>(mut f: F, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.iter().map(|v| (1e-4f64).max(1e-4 * v.abs())).collect();
    let mut hess = vec![0.0; n * n];
    let mut xp = x.to_vec();
    let f0 = f(x);
    for i in 0..n {
        // diagonal
        xp[i] = x[i] + h[i];
        let fp = f(&xp);
        xp[i] = x[i] - h[i];
        let fm = f(&xp);
        xp[i] = x[i];
        hess[i * n + i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for j in (i + 1)..n {
            xp[i] = x[i] + h[i];
            xp[j] = x[j] + h[j];
            let fpp = f(&xp);
            xp[j] = x[j] - h[j];
            let fpm = f(&xp);
            xp[i] = x[i] - h[i];
            let fmm = f(&xp);
            xp[j] = x[j] + h[j];
            let fmp = f(&xp);
            xp[i] = x[i];
            xp[j] = x[j];
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            hess[i * n + j] = v;
            hess[j * n + i] = v;
        }
    }
    hess
}

/// Invert a symmetric positive-definite matrix via Cholesky; `None` when
/// the matrix is not positive definite.
pub fn spd_inverse(a: &[f64], n: usize) -> Option<Vec<f64>> {
    // Cholesky factorization a = L L'
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i * n + i] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    // invert by solving L L' X = I column by column
    let mut inv = vec![0.0; n * n];
    for col in 0..n {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut sum = if i == col { 1.0 } else { 0.0 };
            for k in 0..i {
                sum -= l[i * n + k] * y[k];
            }
            y[i] = sum / l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut sum = y[i];
            for k in (i + 1)..n {
                sum -= l[k * n + i] * inv[k * n + col];
            }
            inv[i * n + col] = sum / l[i * n + i];
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2) + 2.0 * (x[1] + 1.0).powi(2);
        let r = minimize(f, &[0.0, 0.0], &Bounds::unbounded(2), OptimOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.x[0] - 3.0).abs() < 1e-6 && (r.x[1] + 1.0).abs() < 1e-6);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r =
            minimize(f, &[-1.2, 1.0], &Bounds::unbounded(2), OptimOptions::default()).unwrap();
        assert!(r.converged, "iters {} f {}", r.iterations, r.f);
        assert!((r.x[0] - 1.0).abs() < 1e-4 && (r.x[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn active_bound_is_respected_and_reported() {
        // unconstrained minimum at x = 3, bound caps at 2
        let f = |x: &[f64]| (x[0] - 3.0).powi(2);
        let b = Bounds::new(vec![-1.0], vec![2.0]).unwrap();
        let r = minimize(f, &[0.0], &b, OptimOptions::default()).unwrap();
        assert!((r.x[0] - 2.0).abs() < 1e-8);
        assert!(r.bounds_active[0]);
    }

    #[test]
    fn infinite_regions_are_avoided() {
        // objective undefined left of 0.5; minimum at 1
        let f = |x: &[f64]| {
            if x[0] < 0.5 {
                f64::NAN
            } else {
                (x[0] - 1.0).powi(2)
            }
        };
        let b = Bounds::new(vec![0.6], vec![10.0]).unwrap();
        let r = minimize(f, &[5.0], &b, OptimOptions::default()).unwrap();
        assert!((r.x[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn hessian_and_inverse() {
        // f = x'Ax/2 with A = [[2,1],[1,3]]
        let f = |x: &[f64]| x[0] * x[0] + x[0] * x[1] + 1.5 * x[1] * x[1];
        let h = numerical_hessian(f, &[0.3, -0.2]);
        assert!((h[0] - 2.0).abs() < 1e-4);
        assert!((h[1] - 1.0).abs() < 1e-4);
        assert!((h[3] - 3.0).abs() < 1e-4);
        let inv = spd_inverse(&[2.0, 1.0, 1.0, 3.0], 2).unwrap();
        // A^{-1} = [[3,-1],[-1,2]]/5
        assert!((inv[0] - 0.6).abs() < 1e-12);
        assert!((inv[1] + 0.2).abs() < 1e-12);
        assert!((inv[3] - 0.4).abs() < 1e-12);
        assert!(spd_inverse(&[1.0, 2.0, 2.0, 1.0], 2).is_none());
    }
}
