mod common;

use common::{eval, slice_moment_oracle};
use gup_core::classical::{Boundary, Free, Harmonic};
use gup_core::kernels::free_kernel_at;
use gup_core::lattice::*;
use gup_core::GupParams;
use num_complex::Complex64 as C64;

#[test]
fn slice_matches_moment_oracle() {
    let (m, h) = (1.3, 0.7);
    for t in [C64::from(0.9), C64::new(0.0, -0.4), C64::new(0.5, -0.2)] {
        let (oa, ob, oa2) = slice_moment_oracle(m, h, t);
        for dq in [-0.8, 0.0, 0.35, 1.1] {
            let ua = slice_terms(dq, t, &GupParams::new(1.0, 0.0, m, h).unwrap());
            let ub = slice_terms(dq, t, &GupParams::new(0.0, 1.0, m, h).unwrap());
            let got_a = ua.b_alpha + ua.e_alpha;
            let got_b = ub.b_beta + ub.e_beta;
            let got_a2 = ua.b_alpha2 + ua.e_alpha2 + ua.b_alpha * ua.e_alpha + 0.5 * ua.e_alpha * ua.e_alpha;
            for (got, want) in [(got_a, eval(&oa, dq)), (got_b, eval(&ob, dq)), (got_a2, eval(&oa2, dq))] {
                assert!((got - want).norm() < 1e-10 * want.norm().max(1.0), "t={t} dq={dq}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn euclidean_action_double_entry() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let path: Vec<f64> = (0..33).map(|_| rng.random_range(-1.0..1.0)).collect();
    let p = GupParams::natural(0.013, 0.002);
    let ho = Harmonic::new(1.0, 1.3);
    let tau = 0.03;
    let mut want = C64::from(0.0);
    for j in 0..path.len() - 1 {
        let v = (path[j + 1] - path[j]) / tau;
        // −L(iv) for the real-time Lagrangian with v → iv, plus V.
        let iv = C64::new(0.0, v);
        let lag = 0.5 * iv * iv * (1.0 + 2.0 * 0.013 * iv + (8.0 * 0.013 * 0.013 - 2.0 * 0.002) * iv * iv);
        want += tau * (-lag + 0.5 * 1.3 * 1.3 * path[j] * path[j]);
    }
    let got = euclidean_action(&path, tau, &p, &ho);
    assert!((got - want).norm() < 1e-12 * want.norm(), "{got} {want}");
}

#[test]
fn semigroup_three_slices() {
    let p = GupParams::natural(0.0, 0.0);
    let b = Boundary::free(-0.2, 0.5, 0.8).unwrap();
    let one = sliced_kernel_quadrature(&b, &SliceConfig::euclidean(0.8, 1, &p, 0.7).unwrap(), &p, &Free).unwrap();
    let three = sliced_kernel_quadrature(&b, &SliceConfig::euclidean(0.8, 3, &p, 0.7).unwrap(), &p, &Free).unwrap();
    assert!((one.amplitude - three.amplitude).norm() < 1e-8 * one.amplitude.norm());
}

fn beta_slope_sliced(b: &Boundary, n: usize, tau_total: f64, pot: &dyn gup_core::classical::Potential) -> f64 {
    // One-sided Richardson difference: negative β makes the quartic
    // exponent grow across the window.
    let db = 1e-6;
    let r = |beta: f64| {
        let p = GupParams::natural(0.0, beta);
        let cfg = SliceConfig::euclidean(tau_total, n, &p, b.qf - b.q0).unwrap();
        let k = sliced_kernel_quadrature(b, &cfg, &p, pot).unwrap();
        let r = &k.meta["ratio_to_undeformed"];
        r[0].as_f64().unwrap()
    };
    2.0 * (r(db) - 1.0) / db - (r(2.0 * db) - 1.0) / (2.0 * db)
}

#[test]
fn sliced_free_beta_slope_matches_continued_kernel() {
    let tau = 0.3;
    let b = Boundary::free(0.0, 0.25, tau).unwrap();
    let slope = beta_slope_sliced(&b, 3, tau, &Free);
    let db = 1e-6;
    let t = C64::new(0.0, -tau);
    let k = |beta: f64| free_kernel_at(0.0, 0.25, t, &GupParams::natural(0.0, beta)).unwrap().amplitude;
    let want = ((k(db) - k(-db)) / (2.0 * db * k(0.0))).re;
    assert!((slope - want).abs() < 0.05 * want.abs(), "{slope} vs {want}");
}

#[test]
fn slicing_convergence_exponent() {
    let ho = Harmonic::new(1.0, 1.0);
    let tau_total = 1.0;
    let b = Boundary::new(0.3, 0.5, tau_total, 1.0).unwrap();
    let ns = [2usize, 4, 8, 16];
    let slopes: Vec<f64> = ns.iter().map(|&n| beta_slope_sliced(&b, n, tau_total, &ho)).collect();
    eprintln!("slopes {slopes:?}");
    let diffs: Vec<f64> = slopes.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let taus: Vec<f64> = ns[..3].iter().map(|&n| tau_total / n as f64).collect();
    let k = common::loglog_slope(&taus, &diffs);
    eprintln!("diffs {diffs:?} exponent {k}");
    assert!((k - 2.0).abs() < 0.3, "exponent {k}");
}

#[test]
fn mc_beta_slope_unbiased_across_seeds() {
    let tau = 1.0;
    let b = Boundary::free(0.0, 0.3, tau).unwrap();
    let p = GupParams::natural(0.0, 1e-3);
    let cfg = SliceConfig::euclidean(tau, 16, &p, 0.3).unwrap();
    let want = free_beta_prediction(0.3, tau, &p);
    for seed in 1..=5 {
        let e = euclidean_mc_kernel(&b, &cfg, &p, &Free, 40_000, seed).unwrap();
        assert!(e.std_error > 0.0);
        assert!((e.mean.re - want).abs() < 3.0 * e.std_error, "seed {seed}: {} ± {} vs {want}", e.mean.re, e.std_error);
    }
}
