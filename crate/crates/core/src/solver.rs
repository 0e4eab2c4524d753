//! The diagonalized Galerkin solver for
//! `-Δu + λ (1 - ‖x‖²)^κ u = f` on the unit disk with `u = 0` on the circle.
//!
//! The trial functions `(1 - ‖x‖²) R_{j,ν}^n` are orthogonal in the energy
//! inner product, so each coefficient is one load integral divided by a known
//! norm:
//!
//! ```text
//! û_{j,ν}^n = ∫ f (1 - ‖x‖²) R_{j,ν}^n dx / ‖(1 - ‖x‖²) R_{j,ν}^n‖²
//! ```
//!
//! The load integrals can also be recovered from the classical ball-polynomial
//! coefficients of `f` through the connection coefficients, see
//! [`ftilde_recursive`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ballbasis::{
    ball_norm_h, enumerate_indices, eval_ball_classical, r_polynomial, BallBases, BallIndex,
    WeightConstants, DIM,
};
use crate::error::{Error, Result};
use crate::poly2::Poly2;
use crate::quad::{default_disk_rule, disk_rule, DiskRule};

pub type ScalarField = Arc<dyn Fn([f64; 2]) -> f64 + Send + Sync>;
pub type VectorField = Arc<dyn Fn([f64; 2]) -> [f64; 2] + Send + Sync>;

#[derive(Clone)]
pub struct ExactSolution {
    pub u: ScalarField,
    pub grad: VectorField,
}

impl ExactSolution {
    /// Gradient by sixth-order central differences at `h = 1e-4`; for
    /// solutions without an analytic gradient.
    pub fn from_value(u: ScalarField) -> Self {
        const H: f64 = 1e-4;
        const STENCIL: [(f64, f64); 3] = [(1.0, 45.0), (2.0, -9.0), (3.0, 1.0)];
        let v = u.clone();
        let grad: VectorField = Arc::new(move |x| {
            let mut g = [0.0, 0.0];
            for (axis, slot) in g.iter_mut().enumerate() {
                let mut acc = 0.0;
                for &(k, w) in &STENCIL {
                    let (mut p, mut m) = (x, x);
                    p[axis] += k * H;
                    m[axis] -= k * H;
                    acc += w * (v(p) - v(m));
                }
                *slot = acc / (60.0 * H);
            }
            g
        });
        Self { u, grad }
    }
}

#[derive(Clone)]
pub struct Problem {
    pub kappa: u32,
    pub lambda: f64,
    pub f: ScalarField,
    pub exact: Option<ExactSolution>,
}

impl Problem {
    pub fn new(kappa: u32, lambda: f64, f: ScalarField) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::ParameterDomain(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self {
            kappa,
            lambda,
            f,
            exact: None,
        })
    }

    pub fn with_exact(mut self, u: ScalarField, grad: VectorField) -> Self {
        self.exact = Some(ExactSolution { u, grad });
        self
    }
}

impl std::fmt::Debug for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("kappa", &self.kappa)
            .field("lambda", &self.lambda)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionEntry {
    pub index: BallIndex,
    pub u_hat: f64,
    pub f_tilde: f64,
    pub norm_sq: f64,
}

/// A classical coefficient alongside the load integral at the same index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientPair {
    pub index: BallIndex,
    pub f_tilde: f64,
    pub f_hat_classical: f64,
}

/// Truncated Fourier–Sobolev series `u_N = Σ û (1 - ‖x‖²) R`.
#[derive(Debug, Clone)]
pub struct SobolevExpansion {
    degree: usize,
    kappa: u32,
    lambda: f64,
    entries: Vec<ExpansionEntry>,
    bases: Arc<BallBases>,
}

impl SobolevExpansion {
    /// Builds an expansion from prescribed coefficients; missing indices are zero.
    pub fn from_coefficients(
        bases: Arc<BallBases>,
        degree: usize,
        coeffs: &BTreeMap<BallIndex, f64>,
    ) -> Result<Self> {
        if degree > bases.max_n() {
            return Err(Error::Index(format!(
                "degree {degree} exceeds bases built for n <= {}",
                bases.max_n()
            )));
        }
        if let Some(idx) = coeffs.keys().find(|i| i.n > degree) {
            return Err(Error::Index(format!("coefficient at n = {} exceeds degree {degree}", idx.n)));
        }
        let entries = enumerate_indices(degree)
            .into_iter()
            .map(|index| {
                let norm_sq = bases.sobolev_norm(index)?;
                let u_hat = coeffs.get(&index).copied().unwrap_or(0.0);
                Ok(ExpansionEntry {
                    index,
                    u_hat,
                    f_tilde: u_hat * norm_sq,
                    norm_sq,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            degree,
            kappa: bases.kappa(),
            lambda: bases.lambda(),
            entries,
            bases,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn entries(&self) -> &[ExpansionEntry] {
        &self.entries
    }

    pub fn bases(&self) -> &Arc<BallBases> {
        &self.bases
    }

    pub fn coefficient(&self, idx: BallIndex) -> Option<f64> {
        self.entries.iter().find(|e| e.index == idx).map(|e| e.u_hat)
    }

    pub fn coefficients(&self) -> BTreeMap<BallIndex, f64> {
        self.entries.iter().map(|e| (e.index, e.u_hat)).collect()
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        eval_partial_sum(self, x)
    }

    pub fn grad(&self, x: [f64; 2]) -> [f64; 2] {
        let mut g = [0.0, 0.0];
        for e in &self.entries {
            let tv = self.bases.trial(e.index, x).expect("entries lie inside the bases");
            g[0] += e.u_hat * tv.grad[0];
            g[1] += e.u_hat * tv.grad[1];
        }
        g
    }

    /// `u_N / (1 - ‖x‖²)` in Cartesian monomials.
    pub fn interior_polynomial(&self) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for e in &self.entries {
            let basis = self.bases.for_index(e.index)?;
            out = out + r_polynomial(basis, e.index)?.scale(e.u_hat);
        }
        Ok(out)
    }
}

/// `∫_{B²} f (1 - ‖x‖²) R_{j,ν}^n dx`.
pub fn ftilde_direct(problem: &Problem, idx: BallIndex, bases: &BallBases, rule: &DiskRule) -> Result<f64> {
    rule.integrate(|x| (problem.f)(x) * bases.trial(idx, x).map_or(f64::NAN, |t| t.value))
}

fn load_integrals(
    f_values: &[f64],
    indices: &[BallIndex],
    bases: &BallBases,
    rule: &DiskRule,
) -> Result<Vec<f64>> {
    let mut out = vec![0.0; indices.len()];
    for ((x, &w), &fv) in rule.points().iter().zip(rule.weights()).zip(f_values) {
        if fv == 0.0 {
            continue;
        }
        for (acc, &idx) in out.iter_mut().zip(indices) {
            *acc += w * fv * bases.trial(idx, *x)?.value;
        }
    }
    Ok(out)
}

fn sample(f: &ScalarField, rule: &DiskRule) -> Result<Vec<f64>> {
    rule.points()
        .iter()
        .map(|&x| {
            let v = f(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NumericFailure(format!("right-hand side is {v} at ({}, {})", x[0], x[1])))
            }
        })
        .collect()
}

/// Solves with the default quadrature for degree `degree`.
pub fn solve(problem: &Problem, degree: usize) -> Result<SobolevExpansion> {
    solve_with_margin(problem, degree, 0)
}

pub fn solve_with_margin(problem: &Problem, degree: usize, quad_margin: usize) -> Result<SobolevExpansion> {
    let rule = default_disk_rule(degree, problem.kappa, quad_margin)?;
    let bases = Arc::new(BallBases::build(problem.kappa, problem.lambda, degree)?);
    solve_with(problem, degree, bases, &rule)
}

/// One load integral and one division per index; no linear system appears.
pub fn solve_with(
    problem: &Problem,
    degree: usize,
    bases: Arc<BallBases>,
    rule: &DiskRule,
) -> Result<SobolevExpansion> {
    if bases.kappa() != problem.kappa || bases.lambda() != problem.lambda {
        return Err(Error::Consistency(format!(
            "bases built for (kappa, lambda) = ({}, {}) but problem has ({}, {})",
            bases.kappa(),
            bases.lambda(),
            problem.kappa,
            problem.lambda
        )));
    }
    let indices = enumerate_indices(degree);
    let f_values = sample(&problem.f, rule)?;
    let loads = load_integrals(&f_values, &indices, &bases, rule)?;
    let mut coeffs = BTreeMap::new();
    for (&idx, &load) in indices.iter().zip(&loads) {
        coeffs.insert(idx, load / bases.sobolev_norm(idx)?);
    }
    let mut expansion = SobolevExpansion::from_coefficients(bases, degree, &coeffs)?;
    // keep the integrals as computed rather than re-multiplied
    for (e, &load) in expansion.entries.iter_mut().zip(&loads) {
        e.f_tilde = load;
    }
    Ok(expansion)
}

/// `⟨f, P_{j,ν}^{n,1}⟩₁ / H_{j,n}^1`, the coefficient of `f` in the classical
/// ball basis for the weight `1 - ‖x‖²`.
pub fn classical_fourier(f: &ScalarField, idx: BallIndex, rule: &DiskRule) -> Result<f64> {
    let b1 = WeightConstants::new(1.0, DIM)?.b_mu;
    let integral = rule.integrate(|x| {
        let w = 1.0 - x[0] * x[0] - x[1] * x[1];
        f(x) * eval_ball_classical(1.0, idx, x).unwrap_or(f64::NAN) * w
    })?;
    Ok(b1 * integral / ball_norm_h(1.0, idx.n, idx.j, DIM)?)
}

/// Classical coefficients for every index with `n ≤ degree`.
pub fn classical_coefficients(
    f: &ScalarField,
    degree: usize,
    rule: &DiskRule,
) -> Result<BTreeMap<BallIndex, f64>> {
    enumerate_indices(degree)
        .into_iter()
        .map(|idx| Ok((idx, classical_fourier(f, idx, rule)?)))
        .collect()
}

/// `∫ f P_{k,ν}^{n,1} (1 - ‖x‖²) dx` recovered from the normalized classical coefficient.
pub fn unnormalized_classical(f_hat: f64, idx: BallIndex) -> Result<f64> {
    let b1 = WeightConstants::new(1.0, DIM)?.b_mu;
    Ok(f_hat * ball_norm_h(1.0, idx.n, idx.j, DIM)? / b1)
}

/// Load integrals from classical coefficients by the triangular recursion
///
/// ```text
/// f̃_{k,ν}^n = ∫ f P_{k,ν}^{n,1} (1 - ‖x‖²) dx - Σ_{j=k-κ-1}^{k-1} a_{k,j}^{(β)} f̃_{j,ν}^{n-2(k-j)},
/// ```
///
/// walked upward along each chain of fixed harmonic `(n - 2k, ν)`.
pub fn ftilde_recursive(
    classical: &BTreeMap<BallIndex, f64>,
    bases: &BallBases,
) -> Result<BTreeMap<BallIndex, f64>> {
    let mut out: BTreeMap<BallIndex, f64> = BTreeMap::new();
    // (n, j, ν) order visits every chain predecessor first
    for (&idx, &f_hat) in classical {
        let basis = bases.for_index(idx)?;
        let m = idx.harmonic_degree();
        let row = basis.a_row(idx.j);
        let mut value = unnormalized_classical(f_hat, idx)?;
        for j in row.start..idx.j {
            let pred = BallIndex {
                n: m + 2 * j,
                j,
                nu: idx.nu,
            };
            let prev = out.get(&pred).ok_or_else(|| {
                Error::Index(format!(
                    "missing chain predecessor ({}, {}, {}) for ({}, {}, {})",
                    pred.n, pred.j, pred.nu, idx.n, idx.j, idx.nu
                ))
            })?;
            value -= row.get(j) * prev;
        }
        out.insert(idx, value);
    }
    Ok(out)
}

/// Load integrals and classical coefficients side by side.
pub fn coefficient_pairs(problem: &Problem, degree: usize, rule: &DiskRule) -> Result<Vec<CoefficientPair>> {
    let bases = BallBases::build(problem.kappa, problem.lambda, degree)?;
    let classical = classical_coefficients(&problem.f, degree, rule)?;
    let tilde = ftilde_recursive(&classical, &bases)?;
    Ok(classical
        .iter()
        .map(|(&index, &f_hat_classical)| CoefficientPair {
            index,
            f_tilde: tilde[&index],
            f_hat_classical,
        })
        .collect())
}

/// `u_N(x)`.
pub fn eval_partial_sum(e: &SobolevExpansion, x: [f64; 2]) -> f64 {
    e.entries
        .iter()
        .map(|en| en.u_hat * e.bases.trial(en.index, x).expect("entries lie inside the bases").value)
        .sum()
}

/// Rule used for error norms at degree `degree`: finer than the solve rule.
pub fn default_error_rule(degree: usize, kappa: u32) -> Result<DiskRule> {
    disk_rule(degree + kappa as usize + 24, 4 * degree + 48)
}

/// `‖u - u_N‖²` in the energy norm `λ ∫ (1 - ‖x‖²)^κ v² + ∫ |∇v|²`.
pub fn sobolev_error(e: &SobolevExpansion, exact: &ExactSolution, rule: &DiskRule) -> Result<f64> {
    let kappa = e.kappa as i32;
    rule.integrate(|x| {
        let diff = (exact.u)(x) - e.eval(x);
        let gu = (exact.grad)(x);
        let gn = e.grad(x);
        let (dx, dy) = (gu[0] - gn[0], gu[1] - gn[1]);
        let w = (1.0 - x[0] * x[0] - x[1] * x[1]).powi(kappa);
        e.lambda * w * diff * diff + dx * dx + dy * dy
    })
}

/// Right-hand side whose exact solution is `Σ c (1 - ‖x‖²) R`, with the
/// Laplacian taken analytically. The returned problem carries that solution.
pub fn manufactured_rhs(coeffs: &BTreeMap<BallIndex, f64>, kappa: u32, lambda: f64) -> Result<Problem> {
    let degree = coeffs.keys().map(|i| i.n).max().unwrap_or(0);
    let bases = Arc::new(BallBases::build(kappa, lambda, degree)?);
    for &idx in coeffs.keys() {
        bases.for_index(idx)?;
    }
    let terms: Arc<Vec<(BallIndex, f64)>> = Arc::new(coeffs.iter().map(|(&i, &c)| (i, c)).collect());

    let (b, t) = (bases.clone(), terms.clone());
    let f: ScalarField = Arc::new(move |x| {
        let w = (1.0 - x[0] * x[0] - x[1] * x[1]).powi(kappa as i32);
        t.iter()
            .map(|&(idx, c)| {
                let tv = b.trial(idx, x).expect("validated index");
                c * (-tv.laplacian + lambda * w * tv.value)
            })
            .sum()
    });
    let (b, t) = (bases.clone(), terms.clone());
    let u: ScalarField = Arc::new(move |x| {
        t.iter()
            .map(|&(idx, c)| c * b.trial(idx, x).expect("validated index").value)
            .sum()
    });
    let (b, t) = (bases, terms);
    let grad: VectorField = Arc::new(move |x| {
        let mut g = [0.0, 0.0];
        for &(idx, c) in t.iter() {
            let tv = b.trial(idx, x).expect("validated index");
            g[0] += c * tv.grad[0];
            g[1] += c * tv.grad[1];
        }
        g
    });
    Ok(Problem::new(kappa, lambda, f)?.with_exact(u, grad))
}
