//! Gauss–Jacobi rules on `[-1, 1]` and product rules on the unit disk.
//!
//! Nodes and weights come from the symmetric Jacobi matrix of the monic
//! recurrence (Golub–Welsch). The eigenproblem is solved by implicit-shift QL
//! iteration, tracking only the first component of each eigenvector.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_norm, JacobiParam};

const MAX_QL_SWEEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    param: JacobiParam,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.param.alpha()
    }

    pub fn beta(&self) -> f64 {
        self.param.beta()
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// `Σ w_i f(t_i)`, the integral of `f` against the rule's Jacobi weight.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(t);
            if !v.is_finite() {
                return Err(Error::NumericFailure(format!("integrand is {v} at node {t}")));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

/// `n`-point Gauss rule for the weight `(1-t)^α (1+t)^β`, exact through degree `2n-1`.
pub fn gauss_jacobi(alpha: f64, beta: f64, n: usize) -> Result<QuadratureRule> {
    let param = JacobiParam::new(alpha, beta)?;
    if n == 0 {
        return Err(Error::ParameterDomain("quadrature size must be at least 1".into()));
    }
    let (mut diag, mut off) = jacobi_matrix(alpha, beta, n);
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;

    let mass = jacobi_norm(param, 0)?;
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first)
        .map(|(x, v)| (x, mass * v * v))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights, param })
}

/// Diagonal and off-diagonal of the symmetric matrix of the monic Jacobi recurrence.
/// `off[i]` couples rows `i` and `i + 1`; the last slot is scratch for the QL sweep.
fn jacobi_matrix(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = Vec::with_capacity(n);
    let mut off = vec![0.0; n];
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        diag.push(if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        });
    }
    for (k, slot) in off.iter_mut().enumerate().take(n.saturating_sub(1)) {
        let m = (k + 1) as f64;
        let s = 2.0 * m + a + b;
        let sq = if k == 0 {
            // (m + α + β) cancels against (2m + α + β - 1) at m = 1
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
        } else {
            4.0 * m * (m + a) * (m + b) * (m + a + b) / (s * s * (s + 1.0) * (s - 1.0))
        };
        *slot = sq.sqrt();
    }
    (diag, off)
}

/// Eigenvalues of a symmetric tridiagonal matrix, in place in `d`, while `z`
/// accumulates the first row of the eigenvector matrix.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(Error::NumericFailure(format!(
                    "QL iteration did not converge for eigenvalue {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Product rule on the unit disk: Gauss–Legendre in `t = 2r² - 1` times the
/// equispaced trapezoidal rule in the angle.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskRule {
    radial: QuadratureRule,
    angular_count: usize,
    points: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

impl DiskRule {
    pub fn radial(&self) -> &QuadratureRule {
        &self.radial
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Guaranteed total-degree exactness, `min(2 n_r - 1, n_θ - 1)`.
    pub fn exactness(&self) -> usize {
        (2 * self.radial.size() - 1).min(self.angular_count - 1)
    }

    /// `∫_{B²} f dx`.
    pub fn integrate(&self, f: impl Fn([f64; 2]) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (x, &w) in self.points.iter().zip(&self.weights) {
            let v = f(*x);
            if !v.is_finite() {
                return Err(Error::NumericFailure(format!(
                    "integrand is {v} at ({}, {})",
                    x[0], x[1]
                )));
            }
            acc += w * v;
        }
        Ok(acc)
    }

    /// Weighted sum of precomputed integrand values, one per point.
    pub fn integrate_values(&self, values: &[f64]) -> Result<f64> {
        debug_assert_eq!(values.len(), self.points.len());
        let mut acc = 0.0;
        for (&v, &w) in values.iter().zip(&self.weights) {
            if !v.is_finite() {
                return Err(Error::NumericFailure(format!("integrand value {v}")));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

pub fn disk_rule(radial_n: usize, angular_n: usize) -> Result<DiskRule> {
    if angular_n == 0 {
        return Err(Error::ParameterDomain("angular node count must be at least 1".into()));
    }
    let radial = gauss_jacobi(0.0, 0.0, radial_n)?;
    let dtheta = 2.0 * PI / angular_n as f64;
    let mut points = Vec::with_capacity(radial_n * angular_n);
    let mut weights = Vec::with_capacity(radial_n * angular_n);
    for (&t, &w) in radial.nodes().iter().zip(radial.weights()) {
        // dx = r dr dθ and r dr = dt / 4
        let r = (0.5 * (1.0 + t)).sqrt();
        for m in 0..angular_n {
            let theta = dtheta * m as f64;
            points.push([r * theta.cos(), r * theta.sin()]);
            weights.push(0.25 * w * dtheta);
        }
    }
    Ok(DiskRule {
        radial,
        angular_count: angular_n,
        points,
        weights,
    })
}

/// Default solver rule for truncation degree `degree`, potential exponent
/// `kappa`, widened on both axes by `margin`.
pub fn default_disk_rule(degree: usize, kappa: u32, margin: usize) -> Result<DiskRule> {
    disk_rule(degree + kappa as usize + 12 + margin, 4 * degree + 16 + margin)
}
