//! Classical and Sobolev orthogonal polynomials on the unit disk.
//!
//! A basis function is addressed by `(n, j, ν)`: total degree `n`, radial
//! degree `j` and a solid harmonic of degree `m = n - 2j` (`ν = 1` cosine,
//! `ν = 2` sine). The Sobolev trial functions are
//! `(1 - ‖x‖²) q_j^{(m)}(2‖x‖² - 1) Y_ν^m(x)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{binomial, eval_jacobi, gamma, pochhammer, JacobiParam};
use crate::poly2::Poly2;
use crate::sobolev1d::{build_basis, JacobiExpansion, SobolevBasis, SobolevParams};

/// Spatial dimension of every public evaluation path.
pub const DIM: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BallIndex {
    pub n: usize,
    pub j: usize,
    pub nu: u8,
}

impl BallIndex {
    pub fn new(n: usize, j: usize, nu: u8) -> Result<Self> {
        if 2 * j > n {
            return Err(Error::Index(format!("radial index {j} exceeds n/2 for n = {n}")));
        }
        match (nu, n - 2 * j) {
            (1, _) => {}
            (2, m) if m > 0 => {}
            _ => {
                return Err(Error::Index(format!(
                    "harmonic index {nu} invalid for degree {}",
                    n - 2 * j
                )))
            }
        }
        Ok(Self { n, j, nu })
    }

    pub fn harmonic_degree(&self) -> usize {
        self.n - 2 * self.j
    }

    /// `β = n - 2j + (d-2)/2`.
    pub fn beta(&self) -> f64 {
        self.harmonic_degree() as f64 + (DIM as f64 - 2.0) / 2.0
    }

    pub fn harmonic(&self) -> Harmonic2D {
        let kind = if self.nu == 1 { HarmonicKind::Cos } else { HarmonicKind::Sin };
        Harmonic2D::new(self.harmonic_degree(), kind).expect("index validated on construction")
    }
}

/// All `(n, j, ν)` with `n ≤ max_n`, ordered by `n`, then `j`, then `ν`.
pub fn enumerate_indices(max_n: usize) -> Vec<BallIndex> {
    let mut out = Vec::with_capacity((max_n + 1) * (max_n + 2) / 2);
    for n in 0..=max_n {
        for j in 0..=n / 2 {
            out.push(BallIndex { n, j, nu: 1 });
            if n - 2 * j > 0 {
                out.push(BallIndex { n, j, nu: 2 });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HarmonicKind {
    Cos,
    Sin,
}

/// `Re (x1 + i x2)^m` or `Im (x1 + i x2)^m`, scaled to unit norm under
/// `(1/ω₂) ∫_{S¹} Y² dσ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic2D {
    pub m: usize,
    pub kind: HarmonicKind,
    pub normalization: f64,
}

impl Harmonic2D {
    pub fn new(m: usize, kind: HarmonicKind) -> Result<Self> {
        if m == 0 && kind == HarmonicKind::Sin {
            return Err(Error::Index("sine harmonic of degree 0 vanishes".into()));
        }
        let normalization = if m == 0 { 1.0 } else { 2f64.sqrt() };
        Ok(Self { m, kind, normalization })
    }

    /// `(Re z^m, Im z^m)` for `z = x1 + i x2`.
    fn power(x: [f64; 2], m: usize) -> (f64, f64) {
        let (mut re, mut im) = (1.0, 0.0);
        for _ in 0..m {
            (re, im) = (re * x[0] - im * x[1], re * x[1] + im * x[0]);
        }
        (re, im)
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        let (re, im) = Self::power(x, self.m);
        self.normalization
            * match self.kind {
                HarmonicKind::Cos => re,
                HarmonicKind::Sin => im,
            }
    }

    pub fn grad(&self, x: [f64; 2]) -> [f64; 2] {
        if self.m == 0 {
            return [0.0, 0.0];
        }
        let (re, im) = Self::power(x, self.m - 1);
        let s = self.normalization * self.m as f64;
        match self.kind {
            HarmonicKind::Cos => [s * re, -s * im],
            HarmonicKind::Sin => [s * im, s * re],
        }
    }

    pub fn to_poly(&self) -> Poly2 {
        let mut p = Poly2::zero();
        let m = self.m;
        for k in 0..=m {
            let keep = match self.kind {
                HarmonicKind::Cos => k % 2 == 0,
                HarmonicKind::Sin => k % 2 == 1,
            };
            if !keep {
                continue;
            }
            // i^k contributes (-1)^{k/2} to the real part, (-1)^{(k-1)/2} to the imaginary part
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            p.add_term(
                self.normalization * sign * binomial(m as f64, k),
                (m - k) as u32,
                k as u32,
            );
        }
        p
    }
}

pub fn eval_harmonic(h: &Harmonic2D, x: [f64; 2]) -> f64 {
    h.eval(x)
}

/// `ω_d = 2 π^{d/2} / Γ(d/2)`.
pub fn surface_area(d: usize) -> f64 {
    let half = d as f64 / 2.0;
    2.0 * PI.powf(half) / gamma(half)
}

/// Normalization of the ball weight `W_μ = (1 - ‖x‖²)^μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightConstants {
    pub mu: f64,
    pub b_mu: f64,
    pub omega_d: f64,
}

impl WeightConstants {
    pub fn new(mu: f64, d: usize) -> Result<Self> {
        if !(mu > -1.0) {
            return Err(Error::ParameterDomain(format!("mu must exceed -1, got {mu}")));
        }
        let half = d as f64 / 2.0;
        Ok(Self {
            mu,
            b_mu: gamma(mu + half + 1.0) / (PI.powf(half) * gamma(mu + 1.0)),
            omega_d: surface_area(d),
        })
    }
}

/// `H_{j,n}^μ = ⟨P_{j,ν}^{n,μ}, P_{j,ν}^{n,μ}⟩_μ` for orthonormal harmonics.
pub fn ball_norm_h(mu: f64, n: usize, j: usize, d: usize) -> Result<f64> {
    if !(mu > -1.0) {
        return Err(Error::ParameterDomain(format!("mu must exceed -1, got {mu}")));
    }
    if 2 * j > n {
        return Err(Error::Index(format!("radial index {j} exceeds n/2 for n = {n}")));
    }
    let half = d as f64 / 2.0;
    let nf = n as f64;
    let jf = j as f64;
    let num = pochhammer(mu + 1.0, j) * pochhammer(half, n - j) * (nf - jf + mu + half);
    let den = pochhammer(1.0, j) * pochhammer(mu + half + 1.0, n - j) * (nf + mu + half);
    Ok(num / den)
}

/// `P_{j,ν}^{n,μ}(x) = P_j^{(μ, β)}(2‖x‖² - 1) Y_ν^{n-2j}(x)`.
pub fn eval_ball_classical(mu: f64, idx: BallIndex, x: [f64; 2]) -> Result<f64> {
    let fam = JacobiParam::new(mu, idx.beta())?;
    let s = x[0] * x[0] + x[1] * x[1];
    Ok(eval_jacobi(fam, idx.j, 2.0 * s - 1.0) * idx.harmonic().eval(x))
}

fn check_basis(basis: &SobolevBasis, idx: BallIndex) -> Result<()> {
    if basis.beta() != idx.beta() {
        return Err(Error::Consistency(format!(
            "basis built for beta = {} but index ({}, {}, {}) needs beta = {}",
            basis.beta(),
            idx.n,
            idx.j,
            idx.nu,
            idx.beta()
        )));
    }
    if idx.j > basis.max_degree() {
        return Err(Error::Index(format!(
            "radial degree {} exceeds basis maximum {}",
            idx.j,
            basis.max_degree()
        )));
    }
    Ok(())
}

/// `R_{j,ν}^n(x) = q_j^{(β)}(2‖x‖² - 1) Y_ν^{n-2j}(x)`.
pub fn eval_r(basis: &SobolevBasis, idx: BallIndex, x: [f64; 2]) -> Result<f64> {
    check_basis(basis, idx)?;
    let s = x[0] * x[0] + x[1] * x[1];
    Ok(basis.eval_q(idx.j, 2.0 * s - 1.0)? * idx.harmonic().eval(x))
}

/// `‖(1 - ‖x‖²) R_{j,ν}^n‖²` in the ball Sobolev norm, `ω_d 2^{-(β+1)} ĥ_j^{(β)}`.
pub fn sobolev_ball_norm(idx: BallIndex, basis: &SobolevBasis) -> Result<f64> {
    check_basis(basis, idx)?;
    let beta = idx.beta();
    Ok(surface_area(DIM) * 2f64.powf(-(beta + 1.0)) * basis.hhat(idx.j))
}

/// Cartesian form of `R_{j,ν}^n`.
pub fn r_polynomial(basis: &SobolevBasis, idx: BallIndex) -> Result<Poly2> {
    check_basis(basis, idx)?;
    let radial = radial_polynomial(basis.q(idx.j)?);
    Ok(&radial * &idx.harmonic().to_poly())
}

/// `q(2s - 1)` as a polynomial in `x` with `s = ‖x‖²`.
fn radial_polynomial(q: &JacobiExpansion) -> Poly2 {
    let in_t = q.to_monomial();
    // Horner in t = 2s - 1, carried out on univariate coefficient vectors in s
    let mut in_s: Vec<f64> = Vec::new();
    for &c in in_t.iter().rev() {
        let mut next = vec![0.0; in_s.len() + 1];
        for (i, &v) in in_s.iter().enumerate() {
            next[i + 1] += 2.0 * v;
            next[i] -= v;
        }
        next[0] += c;
        in_s = next;
    }
    Poly2::compose_univariate(&in_s, &Poly2::radius_squared())
}

/// Value, gradient and Laplacian of one trial function `(1 - ‖x‖²) R(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialValue {
    pub value: f64,
    pub grad: [f64; 2],
    pub laplacian: f64,
}

/// `q`, `q'` and `q''` of one radial factor, ready for repeated evaluation.
#[derive(Debug, Clone)]
struct RadialProfile {
    q: JacobiExpansion,
    dq: JacobiExpansion,
    d2q: JacobiExpansion,
}

impl RadialProfile {
    fn new(q: &JacobiExpansion) -> Self {
        let dq = q.derivative();
        let d2q = dq.derivative();
        Self { q: q.clone(), dq, d2q }
    }

    /// `F(s) = (1-s) q(2s-1)` and its first two derivatives in `s`.
    fn profile(&self, s: f64) -> (f64, f64, f64) {
        let t = 2.0 * s - 1.0;
        let (q, dq, d2q) = (self.q.eval(t), self.dq.eval(t), self.d2q.eval(t));
        let f = (1.0 - s) * q;
        let f1 = -q + 2.0 * (1.0 - s) * dq;
        let f2 = -4.0 * dq + 4.0 * (1.0 - s) * d2q;
        (f, f1, f2)
    }
}

/// One Sobolev basis per harmonic degree `m = 0..=max_n`, each holding the
/// radial degrees `0..=(max_n - m)/2`, for a fixed `(κ, λ)`.
#[derive(Debug, Clone)]
pub struct BallBases {
    kappa: u32,
    lambda: f64,
    max_n: usize,
    bases: Vec<SobolevBasis>,
    profiles: Vec<Vec<RadialProfile>>,
}

impl BallBases {
    pub fn build(kappa: u32, lambda: f64, max_n: usize) -> Result<Self> {
        let mut bases = Vec::with_capacity(max_n + 1);
        let mut profiles = Vec::with_capacity(max_n + 1);
        for m in 0..=max_n {
            let beta = m as f64 + (DIM as f64 - 2.0) / 2.0;
            let basis = build_basis(SobolevParams::new(beta, kappa, lambda)?, (max_n - m) / 2)?;
            profiles.push(
                (0..=basis.max_degree())
                    .map(|j| basis.q(j).map(RadialProfile::new))
                    .collect::<Result<Vec<_>>>()?,
            );
            bases.push(basis);
        }
        Ok(Self {
            kappa,
            lambda,
            max_n,
            bases,
            profiles,
        })
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// The basis for harmonic degree `m`.
    pub fn by_harmonic_degree(&self, m: usize) -> Result<&SobolevBasis> {
        self.bases
            .get(m)
            .ok_or_else(|| Error::Index(format!("harmonic degree {m} exceeds {}", self.max_n)))
    }

    pub fn for_index(&self, idx: BallIndex) -> Result<&SobolevBasis> {
        if idx.n > self.max_n {
            return Err(Error::Index(format!(
                "degree {} exceeds bases built for n <= {}",
                idx.n, self.max_n
            )));
        }
        self.by_harmonic_degree(idx.harmonic_degree())
    }

    pub fn eval_r(&self, idx: BallIndex, x: [f64; 2]) -> Result<f64> {
        eval_r(self.for_index(idx)?, idx, x)
    }

    pub fn sobolev_norm(&self, idx: BallIndex) -> Result<f64> {
        sobolev_ball_norm(idx, self.for_index(idx)?)
    }

    /// `(1 - ‖x‖²) R(x)` with its gradient and Laplacian, all analytic.
    pub fn trial(&self, idx: BallIndex, x: [f64; 2]) -> Result<TrialValue> {
        self.for_index(idx)?;
        let profile = &self.profiles[idx.harmonic_degree()][idx.j];
        let harmonic = idx.harmonic();
        let s = x[0] * x[0] + x[1] * x[1];
        let (f, f1, f2) = profile.profile(s);
        let y = harmonic.eval(x);
        let gy = harmonic.grad(x);
        let m = idx.harmonic_degree() as f64;
        Ok(TrialValue {
            value: f * y,
            grad: [2.0 * f1 * y * x[0] + f * gy[0], 2.0 * f1 * y * x[1] + f * gy[1]],
            laplacian: (4.0 * s * f2 + 2.0 * (2.0 * m + DIM as f64) * f1) * y,
        })
    }
}
