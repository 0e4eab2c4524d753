use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sobolev_ball::jacobi::{jacobi_norm, JacobiParam};
use sobolev_ball::quad::{default_disk_rule, disk_rule, gauss_jacobi};

const PARAMS: [f64; 5] = [-0.5, 0.0, 0.5, 1.0, 2.0];

/// `∫ t^k (1-t)^α (1+t)^β dt` by the moment recurrence
/// `(k+α+β+2) μ_{k+1} = (β-α) μ_k + k μ_{k-1}`, seeded from `h_0`.
fn moments(a: f64, b: f64, count: usize) -> Vec<f64> {
    let mut mu = vec![0.0; count];
    mu[0] = jacobi_norm(JacobiParam::new(a, b).unwrap(), 0).unwrap();
    if count > 1 {
        mu[1] = (b - a) / (a + b + 2.0) * mu[0];
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        mu[k + 1] = ((b - a) * mu[k] + kf * mu[k - 1]) / (kf + a + b + 2.0);
    }
    mu
}

#[test]
fn moment_recurrence_spot_values() {
    let mu = moments(0.0, 0.0, 5);
    assert!((mu[2] - 2.0 / 3.0).abs() < 1e-15);
    assert!((mu[4] - 0.4).abs() < 1e-15);
    assert!(mu[3].abs() < 1e-15);
}

#[test]
fn exact_for_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for &a in &PARAMS {
        for &b in &PARAMS {
            for n in [1usize, 2, 5, 10, 16] {
                let deg = 2 * n - 1;
                let mu = moments(a, b, deg + 1);
                let rule = gauss_jacobi(a, b, n).unwrap();
                for _ in 0..5 {
                    let c: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let exact: f64 = c.iter().zip(&mu).map(|(x, m)| x * m).sum();
                    let scale: f64 = c.iter().zip(&mu).map(|(x, m)| (x * m).abs()).sum();
                    let got = rule
                        .integrate(|t| c.iter().rev().fold(0.0, |acc, &ci| acc * t + ci))
                        .unwrap();
                    assert!((got - exact).abs() <= 1e-11 * scale, "({a},{b}) n={n}: {got} vs {exact}");
                }
            }
        }
    }
}

#[test]
fn nodes_inside_and_weights_positive() {
    for &a in &PARAMS {
        for &b in &PARAMS {
            for n in 1..=64 {
                let rule = gauss_jacobi(a, b, n).unwrap();
                assert_eq!(rule.size(), n);
                assert!(rule.nodes().iter().all(|&t| t > -1.0 && t < 1.0), "({a},{b}) n={n}");
                assert!(rule.weights().iter().all(|&w| w > 0.0), "({a},{b}) n={n}");
                assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
                let mass: f64 = rule.weights().iter().sum();
                let want = jacobi_norm(JacobiParam::new(a, b).unwrap(), 0).unwrap();
                assert!((mass - want).abs() <= 1e-12 * want);
            }
        }
    }
}

#[test]
fn disk_rule_exactness_on_monomials() {
    // ∫_B x1^{2p} x2^{2q} dx = Γ(p+1/2)Γ(q+1/2) / ((p+q+1) Γ(p+q+1))
    let rule = disk_rule(8, 20).unwrap();
    assert_eq!(rule.exactness(), 15);
    let g = sobolev_ball::jacobi::gamma;
    for p in 0..4 {
        for q in 0..4 - p {
            let want = g(p as f64 + 0.5) * g(q as f64 + 0.5) / ((p + q + 1) as f64 * g((p + q + 1) as f64));
            let got = rule
                .integrate(|x| x[0].powi(2 * p) * x[1].powi(2 * q))
                .unwrap();
            assert!((got - want).abs() <= 1e-13, "p={p} q={q}");
            let odd = rule.integrate(|x| x[0].powi(2 * p + 1) * x[1].powi(2 * q)).unwrap();
            assert!(odd.abs() <= 1e-13);
        }
    }
}

#[test]
fn default_rule_grows_with_margin() {
    let a = default_disk_rule(5, 1, 0).unwrap();
    let b = default_disk_rule(5, 1, 3).unwrap();
    assert!(b.len() > a.len());
    assert!(b.exactness() >= a.exactness());
}

proptest! {
    #[test]
    fn rotation_consistency(k in 0usize..24, c1 in -2.0f64..2.0, c2 in -2.0f64..2.0) {
        let rule = disk_rule(10, 24).unwrap();
        let f = |x: [f64; 2]| (c1 * x[0] + c2 * x[1]).exp() * (1.0 + x[0] * x[0] * x[1]);
        let angle = 2.0 * std::f64::consts::PI * k as f64 / 24.0;
        let (c, s) = (angle.cos(), angle.sin());
        let a = rule.integrate(f).unwrap();
        let b = rule.integrate(|x| f([c * x[0] - s * x[1], s * x[0] + c * x[1]])).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
}
