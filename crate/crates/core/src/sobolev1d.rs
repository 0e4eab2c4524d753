//! Univariate Sobolev orthogonal polynomials `q_k^{(β)}`.
//!
//! The inner product is
//!
//! ```text
//! (p, q)_β = λ / 2^{κ+3} ∫ p q (1-t)^{κ+2} (1+t)^β dt
//!          + ∫ [(1-t) p]' [(1-t) q]' (1+t)^{β+1} dt
//! ```
//!
//! and `q_k` carries the leading coefficient of `P_k^{(1,β)}`. Each Jacobi
//! polynomial connects to at most `κ + 2` Sobolev polynomials,
//!
//! ```text
//! P_k^{(1,β)} = q_k + Σ_{j=k-κ-1}^{k-1} a_{k,j} q_j,
//! ```
//!
//! and [`build_basis`] produces the `a_{k,j}` and norms `ĥ_k` with a banded
//! recursion that never integrates anything. Every polynomial is stored by its
//! coefficients in the `{P_j^{(1,β)}}` basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{
    derivative_factor, jacobi_norm, leading_coeff, monomial_coeffs, recurrence_coeffs, JacobiParam,
};
use crate::quad::gauss_jacobi;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevParams {
    beta: f64,
    kappa: u32,
    lambda: f64,
}

impl SobolevParams {
    pub fn new(beta: f64, kappa: u32, lambda: f64) -> Result<Self> {
        if !(beta > -1.0) || !beta.is_finite() {
            return Err(Error::ParameterDomain(format!("beta must exceed -1, got {beta}")));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::ParameterDomain(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self { beta, kappa, lambda })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The family `P^{(1,β)}` every expansion in this module refers to.
    pub fn family(&self) -> JacobiParam {
        JacobiParam::new(1.0, self.beta).expect("beta validated on construction")
    }

    /// `λ / 2^{κ+3}`.
    pub fn mass_scale(&self) -> f64 {
        self.lambda / 2f64.powi(self.kappa as i32 + 3)
    }
}

/// A polynomial written as `Σ c_j P_j^{(α,β)}` for one fixed Jacobi family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiExpansion {
    family: JacobiParam,
    coefficients: Vec<f64>,
}

impl JacobiExpansion {
    pub fn new(family: JacobiParam, coefficients: Vec<f64>) -> Self {
        Self { family, coefficients }
    }

    /// Expansion against `{P_j^{(1,β)}}`.
    pub fn sobolev_family(beta: f64, coefficients: Vec<f64>) -> Result<Self> {
        Ok(Self::new(JacobiParam::new(1.0, beta)?, coefficients))
    }

    /// The single basis polynomial `P_k` of `family`.
    pub fn unit(family: JacobiParam, k: usize) -> Self {
        let mut coefficients = vec![0.0; k + 1];
        coefficients[k] = 1.0;
        Self::new(family, coefficients)
    }

    pub fn family(&self) -> JacobiParam {
        self.family
    }

    pub fn beta(&self) -> f64 {
        self.family.beta()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|&c| c != 0.0)
    }

    /// Clenshaw summation over the family's three-term recurrence.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.coefficients.len();
        if n == 0 {
            return 0.0;
        }
        let (a, b) = (self.family.alpha(), self.family.beta());
        // p_{k+1} = (A_k t + B_k) p_k - C_k p_{k-1}
        let step = |k: usize| -> (f64, f64) {
            if k == 0 {
                (0.5 * ((a + b + 2.0) * t + a - b), 0.0)
            } else {
                let ((lead, shift), back) = recurrence_coeffs(a, b, k);
                (lead * t + shift, back)
            }
        };
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        let mut back_next = 0.0;
        for k in (0..n).rev() {
            let (fwd, back) = step(k);
            let bk = self.coefficients[k] + fwd * b1 - back_next * b2;
            b2 = b1;
            b1 = bk;
            back_next = back;
        }
        b1
    }

    /// Derivative, expanded against `P^{(α+1,β+1)}`.
    pub fn derivative(&self) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, &c)| c * derivative_factor(self.family, m, 1))
            .collect::<Vec<_>>();
        Self::new(self.family.shifted(1), coefficients)
    }

    pub fn eval_deriv(&self, t: f64) -> f64 {
        self.derivative().eval(t)
    }

    /// Ascending monomial coefficients in `t`.
    pub fn to_monomial(&self) -> Vec<f64> {
        let n = self.coefficients.len();
        if n == 0 {
            return Vec::new();
        }
        let basis = monomial_coeffs(self.family, n - 1);
        let mut out = vec![0.0; n];
        for (c, p) in self.coefficients.iter().zip(&basis) {
            for (o, v) in out.iter_mut().zip(p) {
                *o += c * v;
            }
        }
        out
    }

    /// `self += scale * other`, both in the same family.
    fn axpy(&mut self, scale: f64, other: &Self) {
        if self.coefficients.len() < other.coefficients.len() {
            self.coefficients.resize(other.coefficients.len(), 0.0);
        }
        for (s, o) in self.coefficients.iter_mut().zip(&other.coefficients) {
            *s += scale * o;
        }
    }
}

/// Lower-triangular row stored from column `start` through its diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    pub start: usize,
    pub values: Vec<f64>,
}

impl BandRow {
    pub fn get(&self, j: usize) -> f64 {
        if j < self.start {
            return 0.0;
        }
        self.values.get(j - self.start).copied().unwrap_or(0.0)
    }

    pub fn end(&self) -> usize {
        self.start + self.values.len()
    }
}

/// `(a_k, b_k, c_k)` with `(1-t) P_k^{(1,β)} = a_k P_{k+1} + b_k P_k + c_k P_{k-1}`.
pub fn abc_coeffs(beta: f64, k: usize) -> (f64, f64, f64) {
    let kf = k as f64;
    let a = -2.0 * (kf + 1.0) * (kf + beta + 2.0) / ((2.0 * kf + beta + 2.0) * (2.0 * kf + beta + 3.0));
    let b = 4.0 * (kf + 1.0) * (kf + beta + 1.0) / ((2.0 * kf + beta + 1.0) * (2.0 * kf + beta + 3.0));
    // P_{-1} = 0, so c_0 carries no information; pin it for the band structure
    let c = if k == 0 {
        0.0
    } else {
        -2.0 * (kf + 1.0) * (kf + beta) / ((2.0 * kf + beta + 1.0) * (2.0 * kf + beta + 2.0))
    };
    (a, b, c)
}

/// Coefficients `γ_{k,j}` of `(1-t)^power P_k^{(1,β)} = Σ_j γ_{k,j} P_j^{(1,β)}`,
/// stored for `j` in `[max(k - power, 0), k + power]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaTable {
    pub k: usize,
    /// Number of `(1-t)` factors applied to `P_k`.
    pub power: usize,
    pub start: usize,
    pub values: Vec<f64>,
}

impl GammaTable {
    pub fn get(&self, j: i64) -> f64 {
        if j < self.start as i64 {
            return 0.0;
        }
        self.values.get((j - self.start as i64) as usize).copied().unwrap_or(0.0)
    }

    pub fn end(&self) -> usize {
        self.start + self.values.len() - 1
    }
}

/// Applies `power` successive multiplications by `(1-t)` to `P_k^{(1,β)}`.
pub fn gamma_table(beta: f64, k: usize, power: usize) -> GammaTable {
    let start = k.saturating_sub(power);
    let end = k + power;
    let mut cur = vec![0.0; end - start + 1];
    cur[k - start] = 1.0;
    let abc: Vec<_> = (start..=end).map(|j| abc_coeffs(beta, j)).collect();
    for h in 0..power {
        let lo = k.saturating_sub(h).max(start);
        let hi = k + h;
        let mut next = vec![0.0; cur.len()];
        for i in lo..=hi {
            let g = cur[i - start];
            if g == 0.0 {
                continue;
            }
            let (a, b, c) = abc[i - start];
            next[i + 1 - start] += a * g;
            next[i - start] += b * g;
            // c_0 = 0, so the P_{-1} contribution never exists
            if i > 0 && i > start {
                next[i - 1 - start] += c * g;
            }
        }
        cur = next;
    }
    GammaTable {
        k,
        power,
        start,
        values: cur,
    }
}

/// The table needed by the connection recursion: `(1-t)^{κ+1} P_k^{(1,β)}`.
pub fn gamma_coeffs(beta: f64, kappa: u32, k: usize) -> GammaTable {
    gamma_table(beta, k, kappa as usize + 1)
}

/// Evaluates `(p, q)_β` with Gauss–Jacobi rules sized to the integrand degree.
pub fn sobolev_inner(params: &SobolevParams, p: &JacobiExpansion, q: &JacobiExpansion) -> Result<f64> {
    let family = params.family();
    for e in [p, q] {
        if e.family() != family {
            return Err(Error::ParameterDomain(format!(
                "expansion family ({}, {}) does not match (1, {})",
                e.family().alpha(),
                e.family().beta(),
                params.beta()
            )));
        }
    }
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Ok(0.0);
    };
    let points = (dp + dq) / 2 + 1;
    let beta = params.beta();

    let mass_rule = gauss_jacobi(params.kappa() as f64 + 2.0, beta, points)?;
    let mass = mass_rule.integrate(|t| p.eval(t) * q.eval(t))?;

    let (dpp, dqq) = (p.derivative(), q.derivative());
    let stiff_rule = gauss_jacobi(0.0, beta + 1.0, points)?;
    let stiff = stiff_rule.integrate(|t| {
        let dp_t = -p.eval(t) + (1.0 - t) * dpp.eval(t);
        let dq_t = -q.eval(t) + (1.0 - t) * dqq.eval(t);
        dp_t * dq_t
    })?;
    Ok(params.mass_scale() * mass + stiff)
}

/// Connection coefficients, norms and expansions of `q_0, ..., q_K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SobolevBasis {
    params: SobolevParams,
    #[serde(rename = "K")]
    max_degree: usize,
    /// Row `k` holds `a_{k,j}`; `a_{k,k} = 1`.
    a: Vec<BandRow>,
    hhat: Vec<f64>,
    q_in_p: Vec<JacobiExpansion>,
    /// Row `i` holds `c_{i,j} = λ/2^{κ+3} ∫ q_i P_j w_{1,β}`.
    c_rows: Vec<BandRow>,
}

impl SobolevBasis {
    pub fn params(&self) -> &SobolevParams {
        &self.params
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn beta(&self) -> f64 {
        self.params.beta()
    }

    pub fn a(&self, k: usize, j: usize) -> f64 {
        if j > k {
            return 0.0;
        }
        self.a.get(k).map_or(0.0, |row| row.get(j))
    }

    pub fn a_row(&self, k: usize) -> &BandRow {
        &self.a[k]
    }

    pub fn hhat(&self, k: usize) -> f64 {
        self.hhat[k]
    }

    pub fn hhats(&self) -> &[f64] {
        &self.hhat
    }

    pub fn c(&self, i: usize, j: usize) -> f64 {
        if j > i {
            return 0.0;
        }
        self.c_rows.get(i).map_or(0.0, |row| row.get(j))
    }

    pub fn c_row(&self, i: usize) -> &BandRow {
        &self.c_rows[i]
    }

    pub fn q(&self, k: usize) -> Result<&JacobiExpansion> {
        self.q_in_p.get(k).ok_or_else(|| {
            Error::Index(format!("degree {k} exceeds basis maximum {}", self.max_degree))
        })
    }

    pub fn eval_q(&self, k: usize, t: f64) -> Result<f64> {
        Ok(self.q(k)?.eval(t))
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Recursive construction of `q_0, ..., q_K`.
///
/// Step `k` uses the γ table of `(1-t)^{κ+1} P_k`, the retained rows of `c` and
/// the norms of earlier steps:
///
/// * `a_{k,i} = Σ_{j ≤ i} γ_{k,j} c_{i,j} / ĥ_i` for `i` in the band below `k`,
/// * `c_{k,j} = -Σ_h a_{k,h} c_{h,j}` below the diagonal and `c_{k,k} = λ/2^{κ+3} h_k^{(1,β)}`,
/// * `ĥ_k = Σ_j γ_{k,j} c_{k,j} + (k+1)² h_k^{(0,β+1)}`.
///
/// Near the start every band is clipped at index 0.
pub fn build_basis(params: SobolevParams, max_degree: usize) -> Result<SobolevBasis> {
    let beta = params.beta();
    let band = params.kappa() as usize + 1;
    let family = params.family();
    let stiff_family = JacobiParam::new(0.0, beta + 1.0)?;
    let scale = params.mass_scale();

    let mut a_rows: Vec<BandRow> = Vec::with_capacity(max_degree + 1);
    let mut c_rows: Vec<BandRow> = Vec::with_capacity(max_degree + 1);
    let mut hhat: Vec<f64> = Vec::with_capacity(max_degree + 1);
    let mut q_in_p: Vec<JacobiExpansion> = Vec::with_capacity(max_degree + 1);

    for k in 0..=max_degree {
        let lo = k.saturating_sub(band);
        let gamma = gamma_coeffs(beta, params.kappa(), k);

        let mut a_vals = Vec::with_capacity(k - lo + 1);
        for i in lo..k {
            let numer: f64 = (lo..=i).map(|j| gamma.get(j as i64) * c_rows[i].get(j)).sum();
            a_vals.push(numer / hhat[i]);
        }
        a_vals.push(1.0);
        let a_row = BandRow { start: lo, values: a_vals };

        let mut c_vals = Vec::with_capacity(k - lo + 1);
        for j in lo..k {
            let v: f64 = (lo.max(j)..k).map(|h| a_row.get(h) * c_rows[h].get(j)).sum();
            c_vals.push(-v);
        }
        c_vals.push(scale * jacobi_norm(family, k)?);
        let c_row = BandRow { start: lo, values: c_vals };

        let mass: f64 = (lo..=k).map(|j| gamma.get(j as i64) * c_row.get(j)).sum();
        let kp1 = (k + 1) as f64;
        let h = mass + kp1 * kp1 * jacobi_norm(stiff_family, k)?;
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Consistency(format!(
                "Sobolev norm of q_{k} computed as {h} for beta = {beta}"
            )));
        }

        let mut q = JacobiExpansion::unit(family, k);
        for (j, prev) in q_in_p.iter().enumerate().take(k).skip(lo) {
            q.axpy(-a_row.get(j), prev);
        }

        a_rows.push(a_row);
        c_rows.push(c_row);
        hhat.push(h);
        q_in_p.push(q);
    }

    Ok(SobolevBasis {
        params,
        max_degree,
        a: a_rows,
        hhat,
        q_in_p,
        c_rows,
    })
}

/// Modified Gram–Schmidt over `{P_k^{(1,β)}}` with [`sobolev_inner`].
///
/// Dense and quadrature based; serves as the reference for [`build_basis`].
pub fn gram_schmidt_oracle(params: SobolevParams, max_degree: usize) -> Result<SobolevBasis> {
    let family = params.family();
    let scale = params.mass_scale();
    let mut q_in_p: Vec<JacobiExpansion> = Vec::with_capacity(max_degree + 1);
    let mut hhat: Vec<f64> = Vec::with_capacity(max_degree + 1);
    let mut a_rows = Vec::with_capacity(max_degree + 1);

    for k in 0..=max_degree {
        let mut v = JacobiExpansion::unit(family, k);
        let mut row = Vec::with_capacity(k + 1);
        for j in 0..k {
            let r = sobolev_inner(&params, &v, &q_in_p[j])? / hhat[j];
            v.axpy(-r, &q_in_p[j]);
            row.push(r);
        }
        row.push(1.0);
        let h = sobolev_inner(&params, &v, &v)?;
        if !(h > 0.0) {
            return Err(Error::NumericFailure(format!(
                "Gram-Schmidt lost positivity at degree {k}: norm {h}"
            )));
        }
        a_rows.push(BandRow { start: 0, values: row });
        hhat.push(h);
        q_in_p.push(v);
    }

    let mut c_rows = Vec::with_capacity(max_degree + 1);
    for (i, q) in q_in_p.iter().enumerate() {
        let values = (0..=i)
            .map(|j| Ok(scale * q.coefficients()[j] * jacobi_norm(family, j)?))
            .collect::<Result<Vec<_>>>()?;
        c_rows.push(BandRow { start: 0, values });
    }

    Ok(SobolevBasis {
        params,
        max_degree,
        a: a_rows,
        hhat,
        q_in_p,
        c_rows,
    })
}

fn require_kappa_zero(params: &SobolevParams) -> Result<()> {
    if params.kappa() != 0 {
        return Err(Error::Unsupported(format!(
            "closed-form connection coefficients need kappa = 0, got {}",
            params.kappa()
        )));
    }
    Ok(())
}

/// `d_k = a_{k,k-1}` for `κ = 0` from `ĥ_{k-1}`; `d_0 = 0`.
pub fn d_closed(params: &SobolevParams, k: usize, hhat_prev: f64) -> Result<f64> {
    require_kappa_zero(params)?;
    if k == 0 {
        return Ok(0.0);
    }
    if !(hhat_prev > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "previous Sobolev norm must be positive, got {hhat_prev}"
        )));
    }
    let (kf, beta) = (k as f64, params.beta());
    let factor =
        -params.lambda() * kf * (kf + beta + 1.0) / (4.0 * (2.0 * kf + beta) * (2.0 * kf + beta + 1.0));
    Ok(factor * jacobi_norm(params.family(), k)? / hhat_prev)
}

/// `(P_k, P_{k-1})_β` for `κ = 0`, `k ≥ 1`.
pub fn inner_adjacent_closed(beta: f64, lambda: f64, k: usize) -> f64 {
    let kf = k as f64;
    let s = 2.0 * kf + beta;
    -lambda / 8.0 * kf * (kf + 1.0) * 2f64.powf(beta + 3.0) / (s * (s + 1.0) * (s + 2.0))
}

/// `(P_k, P_k)_β` for `κ = 0`, `k ≥ 0`.
pub fn inner_diagonal_closed(beta: f64, lambda: f64, k: usize) -> f64 {
    let m = (k + 1) as f64;
    let s = 2.0 * m + beta;
    let scale = 2f64.powf(beta + 3.0);
    lambda / 8.0 * 2.0 * m * m * scale / ((s - 1.0) * s * (s + 1.0)) + m * m * scale / (2.0 * s)
}

/// `d_0, ..., d_K` for `κ = 0` from the nonlinear recurrence, seeded with
/// `d_1 = (P_1, P_0)_β / (P_0, P_0)_β`.
pub fn d_recurrence(beta: f64, lambda: f64, max_degree: usize) -> Result<Vec<f64>> {
    SobolevParams::new(beta, 0, lambda)?;
    let mut d = vec![0.0; max_degree + 1];
    for k in 1..=max_degree {
        let denom = inner_diagonal_closed(beta, lambda, k - 1)
            - if k >= 2 { d[k - 1] * inner_adjacent_closed(beta, lambda, k - 1) } else { 0.0 };
        if denom == 0.0 || !denom.is_finite() {
            return Err(Error::NumericFailure(format!("zero denominator in d recurrence at k = {k}")));
        }
        d[k] = inner_adjacent_closed(beta, lambda, k) / denom;
    }
    Ok(d)
}

/// `r_0(s), ..., r_{K+1}(s)` with `d_k = r_k(4/λ) / r_{k+1}(4/λ)` for `k ≥ 1`.
///
/// With `t_k = k / (2k + β)` the recurrence reads
///
/// ```text
/// t_{k+1}/(2k+β+1) r_{k+1} = -(1/(2k+β-1) + 1/(2k+β+1) + (2k+β) s) t_k r_k
///                            - t_{k-1}/(2k+β-1) r_{k-1}.
/// ```
///
/// The minus sign on the last term is what the orthogonality conditions give:
/// dividing by `r_k` must reproduce `d_k = (P_k, P_{k-1}) / ((P_{k-1}, P_{k-1}) - d_{k-1} (P_{k-1}, P_{k-2}))`.
///
/// At `k = 0` both right-hand terms vanish (`t_0 = 0`), which would force
/// `r_1 = 0`; since `t_0` also removes `r_0` from the `k = 1` step, the ratios
/// depend on `r_1` only through a common scale and it is seeded as `r_1 = 1`.
pub fn r_polys(beta: f64, s: f64, max_degree: usize) -> Vec<f64> {
    let t = |k: usize| -> f64 {
        if k == 0 {
            0.0
        } else {
            k as f64 / (2.0 * k as f64 + beta)
        }
    };
    let mut r = Vec::with_capacity(max_degree + 2);
    r.push(1.0);
    r.push(1.0);
    for k in 1..=max_degree {
        let kf = k as f64;
        let s2 = 2.0 * kf + beta;
        let centre = -(1.0 / (s2 - 1.0) + 1.0 / (s2 + 1.0) + s2 * s) * t(k) * r[k];
        let back = t(k - 1) / (s2 - 1.0) * r[k - 1];
        r.push((centre - back) * (s2 + 1.0) / t(k + 1));
    }
    r.truncate(max_degree + 2);
    r
}

/// Leading monomial coefficient shared by `q_k^{(β)}` and `P_k^{(1,β)}`.
pub fn q_leading_coeff(beta: f64, k: usize) -> Result<f64> {
    Ok(leading_coeff(JacobiParam::new(1.0, beta)?, k))
}
