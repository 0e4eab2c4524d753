//! Classical Jacobi polynomials `P_n^{(α,β)}` normalized by `P_n(1) = (α+1)_n / n!`.
//!
//! Values come from the forward three-term recurrence; norms, leading
//! coefficients and the contiguous-relation coefficients are closed forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(α, β)` of a Jacobi family, with weight `(1-t)^α (1+t)^β` on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParam {
    alpha: f64,
    beta: f64,
}

impl JacobiParam {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "Jacobi parameters must satisfy alpha > -1 and beta > -1, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(1-t)^α (1+t)^β`.
    pub fn weight(&self, t: f64) -> f64 {
        (1.0 - t).powf(self.alpha) * (1.0 + t).powf(self.beta)
    }

    /// Family with both parameters shifted by `k`, the family of the `k`-th derivative.
    pub fn shifted(&self, k: usize) -> Self {
        Self {
            alpha: self.alpha + k as f64,
            beta: self.beta + k as f64,
        }
    }
}

/// A rising factorial `(base)_length` together with its arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochhammerValue {
    pub base: f64,
    pub length: usize,
    pub value: f64,
}

impl PochhammerValue {
    pub fn new(base: f64, length: usize) -> Self {
        Self {
            base,
            length,
            value: pochhammer(base, length),
        }
    }
}

/// `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Generalized binomial `C(x, n)` for real `x` and integer `n`.
pub fn binomial(x: f64, n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * (x - n as f64 + i as f64) / i as f64)
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `P_n^{(α,β)}(t)` by forward recurrence.
pub fn eval_jacobi(p: JacobiParam, n: usize, t: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let next = recurrence_step(p, k, t, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// All values `P_0(t), ..., P_n(t)` from a single sweep.
pub fn eval_jacobi_all(p: JacobiParam, n: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    for k in 0..n {
        let prev = if k == 0 { 0.0 } else { out[k - 1] };
        let next = recurrence_step(p, k, t, out[k], prev);
        out.push(next);
    }
    out
}

/// `P_{k+1}` from `P_k` and `P_{k-1}`. The degree-one polynomial uses its
/// explicit linear form so that `α + β = -1` never reaches a zero denominator.
#[inline]
fn recurrence_step(p: JacobiParam, k: usize, t: f64, cur: f64, prev: f64) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    if k == 0 {
        return 0.5 * ((a + b + 2.0) * t + a - b);
    }
    let (alpha_k, beta_k) = recurrence_coeffs(a, b, k);
    alpha_k.0 * t * cur + alpha_k.1 * cur - beta_k * prev
}

/// For `k >= 1`, returns `((A_k, B_k), C_k)` with `P_{k+1} = (A_k t + B_k) P_k - C_k P_{k-1}`.
#[inline]
pub(crate) fn recurrence_coeffs(a: f64, b: f64, k: usize) -> ((f64, f64), f64) {
    let n = k as f64;
    let s = 2.0 * n + a + b;
    let denom = 2.0 * (n + 1.0) * (n + a + b + 1.0) * s;
    let lead = (s + 1.0) * (s + 2.0) * s / denom;
    let shift = (s + 1.0) * (a * a - b * b) / denom;
    let back = 2.0 * (n + a) * (n + b) * (s + 2.0) / denom;
    ((lead, shift), back)
}

/// `d/dt P_n^{(α,β)}(t) = (n+α+β+1)/2 · P_{n-1}^{(α+1,β+1)}(t)`.
pub fn eval_jacobi_deriv(p: JacobiParam, n: usize, t: f64) -> f64 {
    eval_jacobi_deriv_k(p, n, 1, t)
}

/// `k`-th derivative of `P_n^{(α,β)}` at `t`.
pub fn eval_jacobi_deriv_k(p: JacobiParam, n: usize, k: usize, t: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    derivative_factor(p, n, k) * eval_jacobi(p.shifted(k), n - k, t)
}

/// `Γ(n+α+β+1+k) / (2^k Γ(n+α+β+1))`, the scale relating `P_n^{(k)}` to `P_{n-k}^{(α+k,β+k)}`.
pub(crate) fn derivative_factor(p: JacobiParam, n: usize, k: usize) -> f64 {
    pochhammer(n as f64 + p.alpha + p.beta + 1.0, k) / 2f64.powi(k as i32)
}

/// `h_n^{(α,β)} = ∫ P_n² w_{α,β}`.
pub fn jacobi_norm(p: JacobiParam, n: usize) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    let scale = 2f64.powf(a + b + 1.0);
    let value = if n == 0 {
        scale * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0)
    } else {
        let nf = n as f64;
        let log_ratio =
            ln_gamma(nf + a + 1.0) + ln_gamma(nf + b + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(nf + a + b + 1.0);
        scale / (2.0 * nf + a + b + 1.0) * log_ratio.exp()
    };
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::NumericRange(format!(
            "norm h_{n} for (alpha, beta) = ({a}, {b}) evaluated to {value}"
        )));
    }
    Ok(value)
}

/// Leading monomial coefficient `k_n^{(α,β)} = 2^{-n} C(2n+α+β, n)`.
pub fn leading_coeff(p: JacobiParam, n: usize) -> f64 {
    let nf = n as f64;
    (1..=n).fold(1.0, |acc, i| acc * (nf + p.alpha + p.beta + i as f64) / (2.0 * i as f64))
}

/// Coefficients `(a_n, b_n)` of the contiguous relations
/// `P_n^{(α,β)} = a_n P_n^{(α+1,β)} - b_n P_{n-1}^{(α+1,β)}` and
/// `P_n^{(α,β)} = a_n P_n^{(α,β+1)} + b_n^{(β,α)} P_{n-1}^{(α,β+1)}`.
pub fn contiguous_coeffs(p: JacobiParam, n: usize) -> Result<(f64, f64)> {
    let nf = n as f64;
    let denom = 2.0 * nf + p.alpha + p.beta + 1.0;
    if denom == 0.0 {
        return Err(Error::ParameterDomain(format!(
            "contiguous coefficients undefined at n = {n} with alpha + beta = -1"
        )));
    }
    Ok(((nf + p.alpha + p.beta + 1.0) / denom, (nf + p.beta) / denom))
}

/// Monomial coefficients (ascending powers of `t`) of `P_0, ..., P_n`.
pub fn monomial_coeffs(p: JacobiParam, n: usize) -> Vec<Vec<f64>> {
    let (a, b) = (p.alpha, p.beta);
    let mut out: Vec<Vec<f64>> = vec![vec![1.0]];
    if n == 0 {
        return out;
    }
    out.push(vec![0.5 * (a - b), 0.5 * (a + b + 2.0)]);
    for k in 1..n {
        let ((lead, shift), back) = recurrence_coeffs(a, b, k);
        let mut next = vec![0.0; k + 2];
        for (i, &c) in out[k].iter().enumerate() {
            next[i + 1] += lead * c;
            next[i] += shift * c;
        }
        for (i, &c) in out[k - 1].iter().enumerate() {
            next[i] -= back * c;
        }
        out.push(next);
    }
    out
}
