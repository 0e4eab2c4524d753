//! The `solve`, `convergence` and `basis` commands.

use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;
use sobolev_ball::ballbasis::{enumerate_indices, r_polynomial, BallBases, BallIndex};
use sobolev_ball::poly2::{graded_lex_exponents, monomial_label};
use sobolev_ball::quad::default_disk_rule;
use sobolev_ball::solver::{default_error_rule, solve_with, solve_with_margin, sobolev_error, SobolevExpansion};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, num, write_csv, write_json};
use crate::registry::lookup;

/// Points per axis of the evaluation grid on `[-1, 1]²`.
pub const GRID_SIZE: usize = 33;

#[derive(Debug, Serialize)]
struct CoefficientRow {
    n: usize,
    j: usize,
    nu: u8,
    u_hat: f64,
    f_tilde: f64,
    norm_sq: f64,
}

#[derive(Debug, Serialize)]
struct CoefficientFile<'a> {
    problem: &'a str,
    lambda: f64,
    kappa: u32,
    degree: usize,
    coefficients: Vec<CoefficientRow>,
}

#[derive(Debug, Serialize)]
struct Quadrature {
    radial_nodes: usize,
    angular_nodes: usize,
}

#[derive(Debug, Serialize)]
struct GridInfo {
    file: &'static str,
    resolution: usize,
    points: usize,
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    problem: &'a str,
    description: &'a str,
    lambda: f64,
    kappa: u32,
    degree: usize,
    quad_margin: usize,
    quadrature: Quadrature,
    coefficient_count: usize,
    coefficients_file: String,
    grid: GridInfo,
    u_at_origin: f64,
    sobolev_error: Option<f64>,
    max_coefficient_deviation: Option<f64>,
}

pub struct SolveReport {
    pub expansion: SobolevExpansion,
    pub files: Vec<PathBuf>,
}

pub fn cmd_solve(cfg: &RunConfig) -> CliResult<SolveReport> {
    let entry = lookup(&cfg.problem_id, cfg.kappa, cfg.lambda)?;
    let rule = default_disk_rule(cfg.degree, cfg.kappa, cfg.quad_margin)?;
    let bases = Arc::new(BallBases::build(cfg.kappa, cfg.lambda, cfg.degree)?);
    let expansion = solve_with(&entry.problem, cfg.degree, bases, &rule)?;
    ensure_dir(&cfg.output_dir)?;
    let mut files = Vec::new();

    let rows: Vec<CoefficientRow> = expansion
        .entries()
        .iter()
        .map(|e| CoefficientRow {
            n: e.index.n,
            j: e.index.j,
            nu: e.index.nu,
            u_hat: e.u_hat,
            f_tilde: e.f_tilde,
            norm_sq: e.norm_sq,
        })
        .collect();
    let coefficients_file = format!("coefficients.{}", cfg.format.extension());
    files.push(match cfg.format {
        Format::Csv => write_csv(
            &cfg.output_dir,
            &coefficients_file,
            &["n", "j", "nu", "u_hat", "f_tilde", "norm_sq"].map(String::from),
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.j.to_string(),
                        r.nu.to_string(),
                        num(r.u_hat),
                        num(r.f_tilde),
                        num(r.norm_sq),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Json => write_json(
            &cfg.output_dir,
            &coefficients_file,
            &CoefficientFile {
                problem: &cfg.problem_id,
                lambda: cfg.lambda,
                kappa: cfg.kappa,
                degree: cfg.degree,
                coefficients: rows,
            },
        )?,
    });

    let grid = grid_rows(&expansion);
    let grid_points = grid.len();
    files.push(write_csv(
        &cfg.output_dir,
        "grid.csv",
        &["x1", "x2", "u_N"].map(String::from),
        &grid,
    )?);

    let sobolev_error = match &entry.problem.exact {
        Some(exact) => Some(sobolev_error(&expansion, exact, &default_error_rule(cfg.degree, cfg.kappa)?)?),
        None => None,
    };
    let max_coefficient_deviation = entry.coefficients.as_ref().map(|want| {
        expansion
            .entries()
            .iter()
            .map(|e| (e.u_hat - want.get(&e.index).copied().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max)
    });
    let summary = Summary {
        problem: &cfg.problem_id,
        description: &entry.description,
        lambda: cfg.lambda,
        kappa: cfg.kappa,
        degree: cfg.degree,
        quad_margin: cfg.quad_margin,
        quadrature: Quadrature {
            radial_nodes: rule.radial().size(),
            angular_nodes: rule.angular_count(),
        },
        coefficient_count: expansion.entries().len(),
        coefficients_file,
        grid: GridInfo {
            file: "grid.csv",
            resolution: GRID_SIZE,
            points: grid_points,
        },
        u_at_origin: expansion.eval([0.0, 0.0]),
        sobolev_error,
        max_coefficient_deviation,
    };
    files.push(write_json(&cfg.output_dir, "summary.json", &summary)?);
    Ok(SolveReport { expansion, files })
}

/// `u_N` on the 33×33 grid over `[-1, 1]²`, keeping points inside the closed disk.
fn grid_rows(e: &SobolevExpansion) -> Vec<Vec<String>> {
    let step = 2.0 / (GRID_SIZE - 1) as f64;
    let mut rows = Vec::new();
    for i in 0..GRID_SIZE {
        let x1 = -1.0 + step * i as f64;
        for j in 0..GRID_SIZE {
            let x2 = -1.0 + step * j as f64;
            if x1 * x1 + x2 * x2 <= 1.0 {
                rows.push(vec![num(x1), num(x2), num(e.eval([x1, x2]))]);
            }
        }
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorRow {
    #[serde(rename = "N")]
    pub degree: usize,
    pub eps: f64,
    pub log10_eps: f64,
}

#[derive(Debug, Serialize)]
struct ErrorFile<'a> {
    problem: &'a str,
    lambda: f64,
    kappa: u32,
    rows: &'a [ErrorRow],
}

pub struct ConvergenceReport {
    pub rows: Vec<ErrorRow>,
    pub files: Vec<PathBuf>,
}

/// `ε_N` for `N = 0..=degree`, all measured with the rule sized for the largest `N`.
pub fn cmd_convergence(cfg: &RunConfig) -> CliResult<ConvergenceReport> {
    let entry = lookup(&cfg.problem_id, cfg.kappa, cfg.lambda)?;
    let exact = entry
        .problem
        .exact
        .clone()
        .ok_or_else(|| CliError::NoExactSolution(cfg.problem_id.clone()))?;
    let rule = default_error_rule(cfg.degree, cfg.kappa)?;
    let rows = (0..=cfg.degree)
        .map(|n| {
            let e = solve_with_margin(&entry.problem, n, cfg.quad_margin)?;
            let eps = sobolev_error(&e, &exact, &rule)?;
            Ok(ErrorRow {
                degree: n,
                eps,
                log10_eps: eps.log10(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    ensure_dir(&cfg.output_dir)?;
    let name = format!("errors.{}", cfg.format.extension());
    let file = match cfg.format {
        Format::Csv => write_csv(
            &cfg.output_dir,
            &name,
            &["N", "eps", "log10_eps"].map(String::from),
            &rows
                .iter()
                .map(|r| vec![r.degree.to_string(), num(r.eps), num(r.log10_eps)])
                .collect::<Vec<_>>(),
        )?,
        Format::Json => write_json(
            &cfg.output_dir,
            &name,
            &ErrorFile {
                problem: &cfg.problem_id,
                lambda: cfg.lambda,
                kappa: cfg.kappa,
                rows: &rows,
            },
        )?,
    };
    Ok(ConvergenceReport {
        rows,
        files: vec![file],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisRow {
    pub n: usize,
    pub j: usize,
    pub nu: u8,
    pub polar: String,
    /// Graded-lex monomial coefficients of `R`, divided by the first
    /// largest-magnitude coefficient.
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct BasisFile<'a> {
    lambda: f64,
    kappa: u32,
    degree: usize,
    monomials: Vec<String>,
    rows: &'a [BasisRow],
}

pub struct BasisReport {
    pub monomials: Vec<String>,
    pub rows: Vec<BasisRow>,
    pub files: Vec<PathBuf>,
}

/// `q_j^(β)(2r^2-1) r^m cos(m theta)` and similar.
pub fn polar_descriptor(idx: BallIndex) -> String {
    let m = idx.harmonic_degree();
    let radial = format!("q_{}^({})(2r^2-1)", idx.j, m);
    let trig = if idx.nu == 1 { "cos" } else { "sin" };
    match m {
        0 => radial,
        1 => format!("{radial} r {trig}(theta)"),
        _ => format!("{radial} r^{m} {trig}({m} theta)"),
    }
}

pub fn basis_rows(kappa: u32, lambda: f64, degree: usize) -> CliResult<(Vec<String>, Vec<BasisRow>)> {
    let bases = BallBases::build(kappa, lambda, degree)?;
    let exps = graded_lex_exponents(degree as u32);
    let monomials = exps.iter().map(|&(i, j)| monomial_label(i, j)).collect();
    let mut rows = Vec::new();
    for idx in enumerate_indices(degree) {
        let poly = r_polynomial(bases.for_index(idx)?, idx)?;
        let mut coefficients = poly.graded_lex(degree as u32);
        let pivot = coefficients
            .iter()
            .copied()
            .fold(0.0f64, |best, c| if c.abs() > best.abs() { c } else { best });
        if pivot == 0.0 {
            return Err(CliError::Numeric(sobolev_ball::Error::NumericFailure(format!(
                "basis polynomial at ({}, {}, {}) vanished",
                idx.n, idx.j, idx.nu
            ))));
        }
        for c in coefficients.iter_mut() {
            // adding 0.0 turns -0.0 into 0.0
            *c = *c / pivot + 0.0;
        }
        rows.push(BasisRow {
            n: idx.n,
            j: idx.j,
            nu: idx.nu,
            polar: polar_descriptor(idx),
            coefficients,
        });
    }
    Ok((monomials, rows))
}

pub fn cmd_basis(cfg: &RunConfig) -> CliResult<BasisReport> {
    let (monomials, rows) = basis_rows(cfg.kappa, cfg.lambda, cfg.degree)?;
    ensure_dir(&cfg.output_dir)?;
    let name = format!("basis.{}", cfg.format.extension());
    let file = match cfg.format {
        Format::Csv => {
            let mut header: Vec<String> = ["n", "j", "nu", "polar"].map(String::from).to_vec();
            header.extend(monomials.iter().cloned());
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![r.n.to_string(), r.j.to_string(), r.nu.to_string(), r.polar.clone()];
                    v.extend(r.coefficients.iter().map(|&c| num(c)));
                    v
                })
                .collect();
            write_csv(&cfg.output_dir, &name, &header, &body)?
        }
        Format::Json => write_json(
            &cfg.output_dir,
            &name,
            &BasisFile {
                lambda: cfg.lambda,
                kappa: cfg.kappa,
                degree: cfg.degree,
                monomials: monomials.clone(),
                rows: &rows,
            },
        )?,
    };
    Ok(BasisReport {
        monomials,
        rows,
        files: vec![file],
    })
}
