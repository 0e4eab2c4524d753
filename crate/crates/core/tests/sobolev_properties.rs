use proptest::prelude::*;
use sobolev_ball::jacobi::{eval_jacobi, jacobi_norm, JacobiParam};
use sobolev_ball::quad::gauss_jacobi;
use sobolev_ball::sobolev1d::{
    build_basis, d_closed, d_recurrence, gamma_coeffs, gram_schmidt_oracle, inner_adjacent_closed,
    inner_diagonal_closed, q_leading_coeff, r_polys, sobolev_inner, JacobiExpansion, SobolevBasis,
    SobolevParams,
};

const BETAS: [f64; 4] = [0.0, 0.5, 1.0, 3.0];
const KAPPAS: [u32; 3] = [0, 1, 2];
const LAMBDAS: [f64; 2] = [1.0, 8.0];
const K: usize = 20;

fn samples() -> Vec<f64> {
    (0..21).map(|i| -1.0 + 0.1 * i as f64).collect()
}

fn for_each_basis(mut check: impl FnMut(&SobolevParams, &SobolevBasis)) {
    for &beta in &BETAS {
        for &kappa in &KAPPAS {
            for &lambda in &LAMBDAS {
                let params = SobolevParams::new(beta, kappa, lambda).unwrap();
                let basis = build_basis(params, K).unwrap();
                check(&params, &basis);
            }
        }
    }
}

fn label(p: &SobolevParams) -> String {
    format!("beta={} kappa={} lambda={}", p.beta(), p.kappa(), p.lambda())
}

#[test]
fn mutual_orthogonality_and_norms() {
    for_each_basis(|p, basis| {
        for k in 0..=K {
            let qk = basis.q(k).unwrap();
            let hk = sobolev_inner(p, qk, qk).unwrap();
            assert!((hk - basis.hhat(k)).abs() <= 1e-10 * hk, "{} k={k}", label(p));
            for j in 0..k {
                let v = sobolev_inner(p, basis.q(j).unwrap(), qk).unwrap();
                let bound = 1e-10 * (basis.hhat(j) * basis.hhat(k)).sqrt();
                assert!(v.abs() <= bound, "{} j={j} k={k}: {v}", label(p));
            }
        }
    });
}

#[test]
fn connection_residual() {
    for_each_basis(|p, basis| {
        let fam = p.family();
        let band = p.kappa() as usize + 1;
        for k in 0..=K {
            let row = basis.a_row(k);
            assert_eq!(row.start, k.saturating_sub(band));
            let pk: Vec<f64> = samples().iter().map(|&t| eval_jacobi(fam, k, t)).collect();
            let max = pk.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (&t, &pv) in samples().iter().zip(&pk) {
                let sum: f64 = (row.start..=k).map(|j| row.get(j) * basis.eval_q(j, t).unwrap()).sum();
                assert!((pv - sum).abs() <= 1e-11 * max, "{} k={k} t={t}", label(p));
            }
        }
    });
}

#[test]
fn leading_coefficient_is_jacobi() {
    for_each_basis(|p, basis| {
        for k in 0..=K {
            let mono = basis.q(k).unwrap().to_monomial();
            let want = q_leading_coeff(p.beta(), k).unwrap();
            assert_eq!(basis.q(k).unwrap().degree(), Some(k));
            assert!((mono[k] - want).abs() <= 1e-12 * want.abs(), "{} k={k}", label(p));
        }
    });
}

#[test]
fn gamma_reconstruction() {
    let fam = |b| JacobiParam::new(1.0, b).unwrap();
    for &beta in &BETAS {
        for &kappa in &KAPPAS {
            for k in 0..=K {
                let g = gamma_coeffs(beta, kappa, k);
                assert_eq!(g.power, kappa as usize + 1);
                for &t in &samples() {
                    let lhs = (1.0 - t).powi(kappa as i32 + 1) * eval_jacobi(fam(beta), k, t);
                    let mut rhs = 0.0;
                    let mut scale = 0.0;
                    for j in g.start..=g.end() {
                        let term = g.get(j as i64) * eval_jacobi(fam(beta), j, t);
                        rhs += term;
                        scale += term.abs();
                    }
                    assert!((lhs - rhs).abs() <= 1e-11 * scale.max(1.0), "beta={beta} kappa={kappa} k={k} t={t}");
                }
            }
        }
    }
}

#[test]
fn c_rows_match_quadrature() {
    for_each_basis(|p, basis| {
        let fam = p.family();
        let rule = gauss_jacobi(1.0, p.beta(), K + 2).unwrap();
        for i in 0..=K {
            let row = basis.c_row(i);
            for j in row.start..=i {
                let direct = p.mass_scale()
                    * rule
                        .integrate(|t| basis.eval_q(i, t).unwrap() * eval_jacobi(fam, j, t))
                        .unwrap();
                let scale = p.mass_scale() * jacobi_norm(fam, j).unwrap();
                assert!((row.get(j) - direct).abs() <= 1e-10 * scale, "{} i={i} j={j}", label(p));
                // the same number from the q_i coefficients in the P basis
                let coef = basis.q(i).unwrap().coefficients()[j];
                assert!((row.get(j) - coef * scale).abs() <= 1e-10 * scale);
            }
        }
    });
}

#[test]
fn agrees_with_gram_schmidt() {
    for &beta in &BETAS {
        for &kappa in &KAPPAS {
            for &lambda in &LAMBDAS {
                let params = SobolevParams::new(beta, kappa, lambda).unwrap();
                let fast = build_basis(params, 12).unwrap();
                let slow = gram_schmidt_oracle(params, 12).unwrap();
                for k in 0..=12 {
                    assert!((fast.hhat(k) - slow.hhat(k)).abs() <= 1e-10 * slow.hhat(k));
                    for j in 0..=k {
                        assert!((fast.a(k, j) - slow.a(k, j)).abs() <= 1e-10, "{} k={k} j={j}", label(&params));
                    }
                    let (a, b) = (fast.q(k).unwrap().coefficients(), slow.q(k).unwrap().coefficients());
                    for (x, y) in a.iter().zip(b) {
                        assert!((x - y).abs() <= 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn kappa_zero_two_term_construction() {
    for &beta in &BETAS {
        for &lambda in &LAMBDAS {
            let params = SobolevParams::new(beta, 0, lambda).unwrap();
            let basis = build_basis(params, K).unwrap();
            let d = d_recurrence(beta, lambda, K).unwrap();
            let mut prev = JacobiExpansion::unit(params.family(), 0);
            for k in 0..=K {
                let q = if k == 0 {
                    prev.clone()
                } else {
                    let mut c = vec![0.0; k + 1];
                    c[k] = 1.0;
                    for (slot, &v) in c.iter_mut().zip(prev.coefficients()) {
                        *slot -= d[k] * v;
                    }
                    JacobiExpansion::new(params.family(), c)
                };
                for (x, y) in q.coefficients().iter().zip(basis.q(k).unwrap().coefficients()) {
                    assert!((x - y).abs() <= 1e-11 * y.abs().max(1.0), "beta={beta} lambda={lambda} k={k}");
                }
                prev = q;
            }
        }
    }
}

#[test]
fn d_triple_agreement() {
    for &beta in &BETAS {
        for &lambda in &[1.0, 4.0, 8.0, 50.0] {
            let params = SobolevParams::new(beta, 0, lambda).unwrap();
            let basis = build_basis(params, K).unwrap();
            let rec = d_recurrence(beta, lambda, K).unwrap();
            let r = r_polys(beta, 4.0 / lambda, K);
            let t = |k: usize| k as f64 / (2.0 * k as f64 + beta);
            let mut simplified = [0.0; K + 1];
            for k in 1..=K {
                let kf = k as f64;
                let s = 2.0 * kf + beta;
                let back = if k >= 2 { simplified[k - 1] * t(k - 1) / (s - 1.0) } else { 0.0 };
                simplified[k] =
                    (t(k + 1) / (s + 1.0)) / (-(1.0 / (s - 1.0) + 1.0 / (s + 1.0) + 4.0 * s / lambda) * t(k) - back);

                let from_basis = basis.a(k, k - 1);
                let from_ratio = r[k] / r[k + 1];
                let closed = d_closed(&params, k, basis.hhat(k - 1)).unwrap();
                for (name, v) in [
                    ("recurrence", rec[k]),
                    ("ratio", from_ratio),
                    ("closed", closed),
                    ("simplified", simplified[k]),
                ] {
                    assert!(
                        (v - from_basis).abs() <= 1e-10 * from_basis.abs(),
                        "{name}: beta={beta} lambda={lambda} k={k}: {v} vs {from_basis}"
                    );
                }
            }
        }
    }
    let d = d_recurrence(0.0, 8.0, 1).unwrap();
    assert!((d[1] + 1.0 / 7.0).abs() <= 1e-12);
}

#[test]
fn plus_sign_on_back_term_breaks_d_recurrence() {
    let (beta, lambda) = (0.0, 8.0);
    let basis = build_basis(SobolevParams::new(beta, 0, lambda).unwrap(), 4).unwrap();
    let t = |k: usize| k as f64 / (2.0 * k as f64 + beta);
    let mut plus = [0.0; 5];
    for k in 1..=4 {
        let s = 2.0 * k as f64 + beta;
        let back = if k >= 2 { plus[k - 1] * t(k - 1) / (s - 1.0) } else { 0.0 };
        plus[k] = (t(k + 1) / (s + 1.0)) / (-(1.0 / (s - 1.0) + 1.0 / (s + 1.0) + 4.0 * s / lambda) * t(k) + back);
    }
    // k = 1 has no back term, so both signs agree there
    assert!((plus[1] - basis.a(1, 0)).abs() <= 1e-12);
    for k in 2..=4 {
        let want = basis.a(k, k - 1);
        assert!((plus[k] - want).abs() > 1e-3 * want.abs(), "k={k}: {} vs {want}", plus[k]);
    }
}

#[test]
fn literal_zero_step_of_r_recurrence_is_degenerate() {
    // r_{-1} = 0, r_0 = 1 taken literally: the k = 0 step has t_0 = 0 on the
    // right, so r_1 = 0 and every ratio r_k / r_{k+1} breaks down.
    let beta = 0.5;
    let t0 = 0.0 / beta;
    let rhs = -(1.0 / (beta - 1.0) + 1.0 / (beta + 1.0) + beta * 0.5) * t0 * 1.0;
    let t1 = 1.0 / (2.0 + beta);
    let r1 = rhs * (beta + 1.0) / t1;
    assert_eq!(r1, 0.0);
    // the seeded sequence keeps r_1 free and stays nonzero
    let r = r_polys(beta, 0.5, 6);
    assert!(r[1..].iter().all(|v| *v != 0.0 && v.is_finite()));
}

#[test]
fn closed_form_inner_products_match_quadrature() {
    for &beta in &BETAS {
        for &lambda in &LAMBDAS {
            let params = SobolevParams::new(beta, 0, lambda).unwrap();
            let fam = params.family();
            for k in 0..10 {
                let pk = JacobiExpansion::unit(fam, k);
                let diag = sobolev_inner(&params, &pk, &pk).unwrap();
                let want = inner_diagonal_closed(beta, lambda, k);
                assert!((diag - want).abs() <= 1e-12 * want);
                if k >= 1 {
                    let prev = JacobiExpansion::unit(fam, k - 1);
                    let adj = sobolev_inner(&params, &pk, &prev).unwrap();
                    let want = inner_adjacent_closed(beta, lambda, k);
                    let scale = (diag * inner_diagonal_closed(beta, lambda, k - 1)).sqrt();
                    assert!((adj - want).abs() <= 1e-12 * scale, "beta={beta} lambda={lambda} k={k}: {adj} vs {want}");
                }
                for j in 0..k.saturating_sub(1) {
                    let far = JacobiExpansion::unit(fam, j);
                    assert!(sobolev_inner(&params, &pk, &far).unwrap().abs() <= 1e-12 * diag);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orthogonality_for_random_parameters(beta in -0.5f64..6.0, kappa in 0u32..4, lambda in 0.05f64..100.0) {
        let params = SobolevParams::new(beta, kappa, lambda).unwrap();
        let basis = build_basis(params, 10).unwrap();
        for k in 0..=10 {
            prop_assert!(basis.hhat(k) > 0.0);
            for j in 0..k {
                let v = sobolev_inner(&params, basis.q(j).unwrap(), basis.q(k).unwrap()).unwrap();
                prop_assert!(v.abs() <= 1e-10 * (basis.hhat(j) * basis.hhat(k)).sqrt());
            }
            // entries outside the band are exactly zero
            for j in 0..k.saturating_sub(kappa as usize + 1) {
                prop_assert_eq!(basis.a(k, j), 0.0);
            }
        }
    }

    #[test]
    fn json_round_trip_is_lossless(beta in 0.0f64..4.0, kappa in 0u32..3, lambda in 0.1f64..20.0) {
        let basis = build_basis(SobolevParams::new(beta, kappa, lambda).unwrap(), 6).unwrap();
        let back = SobolevBasis::from_json(&basis.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, basis);
    }
}
