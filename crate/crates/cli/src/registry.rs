//! Code-registered test problems.
//!
//! * `exp2d`: `u = e^{-x1-x2} (1 - x1² - x2²)`, with `f` produced by the
//!   operator for the run's `(κ, λ)`. At `κ = 0, λ = 8` this is
//!   `f = e^{-x1-x2} (-6x1² - 6x2² - 4x1 - 4x2 + 10)`.
//! * `zero`: `f = 0`, `u = 0`.
//! * `manufactured:seed=S[,deg=D]`: `u = Σ c (1 - ‖x‖²) R` with coefficients
//!   drawn uniformly from `[-1, 1]` for every index with `n ≤ D` (default 4).

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sobolev_ball::ballbasis::{enumerate_indices, BallIndex};
use sobolev_ball::solver::{manufactured_rhs, Problem, ScalarField, VectorField};

use crate::error::{CliError, CliResult};

pub const DEFAULT_MANUFACTURED_DEGREE: usize = 4;

pub struct ProblemEntry {
    pub id: String,
    pub description: String,
    pub problem: Problem,
    /// Prescribed coefficients, for manufactured problems.
    pub coefficients: Option<BTreeMap<BallIndex, f64>>,
}

pub fn lookup(id: &str, kappa: u32, lambda: f64) -> CliResult<ProblemEntry> {
    if let Some(rest) = id.strip_prefix("manufactured:") {
        let (seed, degree) = parse_manufactured(rest).ok_or_else(|| CliError::UnknownProblem(id.into()))?;
        let coeffs = seeded_coefficients(seed, degree);
        let problem = manufactured_rhs(&coeffs, kappa, lambda)?;
        return Ok(ProblemEntry {
            id: id.into(),
            description: format!("manufactured solution, seed {seed}, degree {degree}"),
            problem,
            coefficients: Some(coeffs),
        });
    }
    let (description, problem) = match id {
        "exp2d" => ("u = exp(-x1-x2) (1 - x1^2 - x2^2)", exp2d(kappa, lambda)?),
        "zero" => ("f = 0, u = 0", zero(kappa, lambda)?),
        _ => return Err(CliError::UnknownProblem(id.into())),
    };
    Ok(ProblemEntry {
        id: id.into(),
        description: description.into(),
        problem,
        coefficients: None,
    })
}

fn parse_manufactured(spec: &str) -> Option<(u64, usize)> {
    let mut seed = None;
    let mut degree = DEFAULT_MANUFACTURED_DEGREE;
    for part in spec.split(',') {
        let (k, v) = part.split_once('=')?;
        match k.trim() {
            "seed" => seed = Some(v.trim().parse().ok()?),
            "deg" => degree = v.trim().parse().ok()?,
            _ => return None,
        }
    }
    Some((seed?, degree))
}

/// Uniform `[-1, 1]` coefficients for every index with `n ≤ degree`, in index order.
pub fn seeded_coefficients(seed: u64, degree: usize) -> BTreeMap<BallIndex, f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    enumerate_indices(degree)
        .into_iter()
        .map(|idx| (idx, rng.gen_range(-1.0..=1.0)))
        .collect()
}

fn exp2d(kappa: u32, lambda: f64) -> CliResult<Problem> {
    let f: ScalarField = Arc::new(move |x: [f64; 2]| {
        let (a, b) = (x[0], x[1]);
        let e = (-a - b).exp();
        let w = 1.0 - a * a - b * b;
        let laplacian = e * (2.0 * w + 4.0 * a + 4.0 * b - 4.0);
        -laplacian + lambda * w.powi(kappa as i32) * e * w
    });
    let u: ScalarField = Arc::new(|x: [f64; 2]| (-x[0] - x[1]).exp() * (1.0 - x[0] * x[0] - x[1] * x[1]));
    let grad: VectorField = Arc::new(|x: [f64; 2]| {
        let e = (-x[0] - x[1]).exp();
        let w = 1.0 - x[0] * x[0] - x[1] * x[1];
        [-e * (w + 2.0 * x[0]), -e * (w + 2.0 * x[1])]
    });
    Ok(Problem::new(kappa, lambda, f)?.with_exact(u, grad))
}

fn zero(kappa: u32, lambda: f64) -> CliResult<Problem> {
    Ok(Problem::new(kappa, lambda, Arc::new(|_| 0.0))?.with_exact(Arc::new(|_| 0.0), Arc::new(|_| [0.0, 0.0])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp2d_matches_printed_rhs() {
        let p = lookup("exp2d", 0, 8.0).unwrap().problem;
        for x in [[0.0f64, 0.0], [0.3, -0.6], [-0.9, 0.2]] {
            let (a, b) = (x[0], x[1]);
            let want = (-a - b).exp() * (-6.0 * a * a - 6.0 * b * b - 4.0 * a - 4.0 * b + 10.0);
            assert!(((p.f)(x) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn exp2d_gradient_matches_differences() {
        let p = lookup("exp2d", 1, 3.0).unwrap().problem;
        let ex = p.exact.unwrap();
        let x = [0.2, -0.3];
        let h = 1e-6;
        let g = (ex.grad)(x);
        let gx = ((ex.u)([x[0] + h, x[1]]) - (ex.u)([x[0] - h, x[1]])) / (2.0 * h);
        let gy = ((ex.u)([x[0], x[1] + h]) - (ex.u)([x[0], x[1] - h])) / (2.0 * h);
        assert!((g[0] - gx).abs() < 1e-8 && (g[1] - gy).abs() < 1e-8);
    }

    #[test]
    fn manufactured_ids() {
        let e = lookup("manufactured:seed=7", 0, 8.0).unwrap();
        assert_eq!(e.coefficients.unwrap().len(), 15);
        let e = lookup("manufactured:seed=7,deg=2", 1, 2.0).unwrap();
        assert_eq!(e.coefficients.unwrap().len(), 6);
        assert_eq!(seeded_coefficients(7, 3), seeded_coefficients(7, 3));
        for bad in ["manufactured:", "manufactured:seed=x", "manufactured:seed=1,foo=2", "poisson"] {
            assert!(matches!(lookup(bad, 0, 8.0), Err(CliError::UnknownProblem(_))), "{bad}");
        }
    }
}
