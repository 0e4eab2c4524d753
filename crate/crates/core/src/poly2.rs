//! Dense-by-exponent bivariate polynomials, used for Cartesian export.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), f64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: f64, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn add_term(&mut self, c: f64, i: u32, j: u32) {
        *self.terms.entry((i, j)).or_insert(0.0) += c;
    }

    /// Coefficient of `x1^i x2^j`.
    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .filter(|(_, &c)| c != 0.0)
            .map(|(&(i, j), _)| i + j)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, &c)| (k, c * s)).collect(),
        }
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * x[0].powi(i as i32) * x[1].powi(j as i32))
            .sum()
    }

    /// `x1² + x2²`.
    pub fn radius_squared() -> Self {
        Self::monomial(1.0, 2, 0) + Self::monomial(1.0, 0, 2)
    }

    /// `Σ c_k s^k` with `s` replaced by the polynomial `s`.
    pub fn compose_univariate(coeffs: &[f64], s: &Poly2) -> Self {
        let mut out = Self::zero();
        for &c in coeffs.iter().rev() {
            out = &out * s + Self::constant(c);
        }
        out
    }

    /// Coefficients in graded-lex order up to total degree `max_degree`:
    /// `1, x1, x2, x1², x1 x2, x2², ...`.
    pub fn graded_lex(&self, max_degree: u32) -> Vec<f64> {
        graded_lex_exponents(max_degree)
            .into_iter()
            .map(|(i, j)| self.coeff(i, j))
            .collect()
    }
}

pub fn graded_lex_exponents(max_degree: u32) -> Vec<(u32, u32)> {
    (0..=max_degree)
        .flat_map(|d| (0..=d).rev().map(move |i| (i, d - i)))
        .collect()
}

/// Column label such as `x1^2*x2`.
pub fn monomial_label(i: u32, j: u32) -> String {
    let part = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    match (part("x1", i), part("x2", j)) {
        (None, None) => "1".into(),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (Some(a), Some(b)) => format!("{a}*{b}"),
    }
}

impl Add for Poly2 {
    type Output = Poly2;

    fn add(mut self, rhs: Poly2) -> Poly2 {
        for ((i, j), c) in rhs.terms {
            self.add_term(c, i, j);
        }
        self
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &rhs.terms {
                out.add_term(c1 * c2, i1 + i2, j1 + j2);
            }
        }
        out
    }
}
