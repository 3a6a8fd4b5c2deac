//! Closed-form series versus the dense matrix oracle, plus the dynamical
//! invariants that follow from the spectrum.

use std::f64::consts::PI;

use dunkl_kerr::coherent_state::{build_state, CoherentState, TruncationPolicy};
use dunkl_kerr::dynamics::{
    k0_expectation, kminus_expectation, lowering_expectation, quadrature_expectation,
    quadrature_variance, survival_probability,
};
use dunkl_kerr::matrix_oracle::MatrixOracle;
use dunkl_kerr::ModelParams;
use proptest::prelude::*;

fn state(mu: f64, alpha: f64) -> CoherentState {
    let p = ModelParams::new(mu, 20.0, 1.0, alpha).unwrap();
    build_state(&p, &TruncationPolicy::default()).unwrap()
}

fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| 2.0 * PI * i as f64 / (n - 1) as f64)
}

#[test]
fn series_match_oracle_on_grid() {
    for mu in [0.0, 0.25, 0.5, 1.0] {
        for alpha in [1.0, 2.0] {
            let s = state(mu, alpha);
            let o = MatrixOracle::new(&s).unwrap();
            for t in grid(64) {
                let dq = (quadrature_expectation(&s, t) - o.quadrature(t).unwrap()).abs();
                let df = (survival_probability(&s, t) - o.fidelity(t).unwrap()).abs();
                let dv = (quadrature_variance(&s, t) - o.variance(t).unwrap()).abs();
                assert!(
                    dq <= 1e-8 && df <= 1e-8 && dv <= 1e-8,
                    "mu={mu} a={alpha} t={t}: {dq:e} {df:e} {dv:e}"
                );
            }
        }
    }
}

#[test]
fn quadrature_at_start_is_first_moment() {
    let s = state(0.0, 2.0);
    let o = MatrixOracle::new(&s).unwrap();
    let x = quadrature_expectation(&s, 0.0);
    assert!((x - o.quadrature(0.0).unwrap()).abs() < 1e-10);
    assert!((x - 2f64.sqrt() * lowering_expectation(&s, 0.0).re).abs() < 1e-15);
}

#[test]
fn full_revival_resynchronizes_quadrature() {
    let s = state(0.5, 2.0);
    let o = MatrixOracle::new(&s).unwrap();
    let x0 = quadrature_expectation(&s, 0.0);
    assert!((quadrature_expectation(&s, 2.0 * PI) - x0).abs() < 1e-6);
    assert!((o.quadrature(2.0 * PI).unwrap() - x0).abs() < 1e-6);
}

#[test]
fn kminus_matches_oracle() {
    for mu in [0.0, 0.5, 1.0] {
        let s = state(mu, 2.0);
        let o = MatrixOracle::new(&s).unwrap();
        for t in [0.0, 0.3, 1.7, 4.0] {
            let d = (kminus_expectation(&s, t) - o.kminus(t).unwrap()).norm();
            assert!(d < 1e-10, "mu={mu} t={t} {d:e}");
        }
    }
}

#[test]
fn kzero_matches_oracle() {
    for mu in [0.0, 0.5, 1.0] {
        let s = state(mu, 2.0);
        let o = MatrixOracle::new(&s).unwrap();
        assert!((k0_expectation(&s) - o.kzero().unwrap()).abs() < 1e-10);
    }
}

#[test]
fn full_superposition_weights_reduce_to_photon_distribution() {
    // ⟨a(0)⟩ = α Σ_{n<N} p_n for the untouched superposition
    for mu in [0.0, 0.5, 1.0] {
        let s = state(mu, 2.0);
        let p = s.probabilities();
        let expected: f64 = 2.0 * p[..s.n_cut()].iter().sum::<f64>();
        assert!((lowering_expectation(&s, 0.0).re - expected).abs() < 1e-12);
    }
}

#[test]
fn fidelity_has_period_two_pi_for_default_parameters() {
    for mu in [0.0, 0.5, 1.0] {
        let s = state(mu, 2.0);
        for t in grid(100) {
            let d = (survival_probability(&s, t + 2.0 * PI) - survival_probability(&s, t)).abs();
            assert!(d <= 1e-9, "mu={mu} t={t} {d:e}");
        }
    }
}

#[test]
fn undeformed_limit_is_continuous() {
    let s0 = state(0.0, 2.0);
    let s1 = state(1e-12, 2.0);
    for t in grid(256) {
        assert!((quadrature_expectation(&s0, t) - quadrature_expectation(&s1, t)).abs() <= 1e-6);
        assert!((quadrature_variance(&s0, t) - quadrature_variance(&s1, t)).abs() <= 1e-6);
    }
}

#[test]
fn variance_is_positive() {
    for mu in [0.0, 0.25, 0.5, 1.0, 2.0] {
        for alpha in [0.5, 1.0, 2.0, 3.0] {
            let s = state(mu, alpha);
            for t in grid(512) {
                assert!(quadrature_variance(&s, t) > 0.0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fidelity_bounded(mu in 0.0f64..2.0, alpha in 0.0f64..4.0, t in -50.0f64..50.0) {
        let s = state(mu, alpha);
        let f = survival_probability(&s, t);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
        prop_assert!((survival_probability(&s, 0.0) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn oracle_agrees_at_random_points(
        mu in 0.0f64..2.0,
        alpha in 0.1f64..3.0,
        omega in 0.5f64..30.0,
        lambda in 0.0f64..2.0,
        t in 0.0f64..10.0,
    ) {
        let p = ModelParams::new(mu, omega, lambda, alpha).unwrap();
        let s = build_state(&p, &TruncationPolicy::default()).unwrap();
        let o = MatrixOracle::new(&s).unwrap();
        prop_assert!((quadrature_expectation(&s, t) - o.quadrature(t).unwrap()).abs() <= 1e-8);
        prop_assert!((survival_probability(&s, t) - o.fidelity(t).unwrap()).abs() <= 1e-8);
        prop_assert!((quadrature_variance(&s, t) - o.variance(t).unwrap()).abs() <= 1e-8);
    }
}
