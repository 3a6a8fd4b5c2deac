//! Exact energy levels of `H = ω a†a + (λ/2) a†² a²` in the Dunkl number basis.
//!
//! Reflection symmetry splits the spectrum into two sectors. With `n = 2m`:
//!
//! ```text
//! E_2m   = 2λm² + m(2ω + 2λμ - λ)
//! E_2m+1 = 2λm² + m(2ω + 2λμ + λ) + ω(1 + 2μ)
//! ```
//!
//! The ground state sits at `E_0 = 0`; no zero-point shift is applied.

use serde::Serialize;

use crate::dunkl_algebra::{ModelParams, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub n: usize,
    pub parity: Parity,
    pub energy: f64,
}

pub fn energy(n: usize, params: &ModelParams) -> f64 {
    let ModelParams {
        mu, omega, lambda, ..
    } = *params;
    let m = (n / 2) as f64;
    match Parity::of(n) {
        Parity::Even => 2.0 * lambda * m * m + m * (2.0 * omega + 2.0 * lambda * mu - lambda),
        Parity::Odd => {
            2.0 * lambda * m * m
                + m * (2.0 * omega + 2.0 * lambda * mu + lambda)
                + omega * (1.0 + 2.0 * mu)
        }
    }
}

pub fn level(n: usize, params: &ModelParams) -> EnergyLevel {
    EnergyLevel {
        n,
        parity: Parity::of(n),
        energy: energy(n, params),
    }
}

/// Levels `0..=n_max`.
pub fn levels(n_max: usize, params: &ModelParams) -> Vec<EnergyLevel> {
    (0..=n_max).map(|n| level(n, params)).collect()
}

/// `E_{2m+2} - E_{2m} = 2ω + λ(4m + 2μ + 1)`.
pub fn gap_even(m: usize, params: &ModelParams) -> f64 {
    2.0 * params.omega + params.lambda * (4.0 * m as f64 + 2.0 * params.mu + 1.0)
}

/// `E_{2m+3} - E_{2m+1} = 2ω + λ(4m + 2μ + 3)`.
pub fn gap_odd(m: usize, params: &ModelParams) -> f64 {
    2.0 * params.omega + params.lambda * (4.0 * m as f64 + 2.0 * params.mu + 3.0)
}

/// Next-nearest-neighbour gap `E_{n+2} - E_n`, dispatched by parity.
pub fn same_parity_gap(n: usize, params: &ModelParams) -> f64 {
    match Parity::of(n) {
        Parity::Even => gap_even(n / 2, params),
        Parity::Odd => gap_odd(n / 2, params),
    }
}

/// `E_{n+1} - E_n`, the frequencies carried by the field quadrature.
pub fn neighbor_gap(n: usize, params: &ModelParams) -> f64 {
    energy(n + 1, params) - energy(n, params)
}

/// Undeformed Kerr levels `ωn + (λ/2)n(n-1)`.
pub fn undeformed_energy(n: usize, omega: f64, lambda: f64) -> f64 {
    let n = n as f64;
    omega * n + 0.5 * lambda * n * (n - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl_algebra::{casimir_eigenvalue, k0_eigenvalue};

    fn fig(mu: f64) -> ModelParams {
        ModelParams::new(mu, 20.0, 1.0, 2.0).unwrap()
    }

    // Second route through the generator form
    // H = 2λK₀² + 2(ω-λ)K₀ - 2λC - ω(μR + ½).
    fn energy_via_generators(n: usize, p: &ModelParams) -> f64 {
        let e0 = k0_eigenvalue(n, p.mu);
        let parity = Parity::of(n);
        let c = casimir_eigenvalue(parity, p.mu);
        2.0 * p.lambda * e0 * e0 + 2.0 * (p.omega - p.lambda) * e0
            - 2.0 * p.lambda * c
            - p.omega * (p.mu * parity.sign() + 0.5)
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(0, &fig(0.5)), 0.0);
        assert_eq!(energy(1, &fig(0.5)), 40.0);
        assert_eq!(energy(2, &fig(0.5)), 42.0);
        assert_eq!(energy(3, &fig(0.5)), 84.0);
        assert_eq!(energy(3, &fig(0.0)), 63.0);
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gap_even(0, &fig(0.5)), 42.0);
        assert_eq!(gap_odd(0, &fig(0.5)), 44.0);
        let harmonic = ModelParams::new(0.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(gap_even(0, &harmonic), 2.0);
        assert_eq!(neighbor_gap(0, &fig(0.0)), 20.0);
        assert_eq!(neighbor_gap(0, &fig(0.5)), 40.0);
        assert_eq!(neighbor_gap(1, &fig(0.5)), 2.0);
    }

    #[test]
    fn gaps_are_finite_differences() {
        for mu in [0.0, 0.25, 0.5, 1.0, 3.0] {
            let p = fig(mu);
            for m in 0..100 {
                let de = energy(2 * m + 2, &p) - energy(2 * m, &p);
                let d_odd = energy(2 * m + 3, &p) - energy(2 * m + 1, &p);
                assert_eq!(gap_even(m, &p), de, "mu={mu} m={m}");
                assert_eq!(gap_odd(m, &p), d_odd, "mu={mu} m={m}");
                assert_eq!(same_parity_gap(2 * m, &p), de);
                assert_eq!(same_parity_gap(2 * m + 1, &p), d_odd);
            }
        }
    }

    #[test]
    fn generator_form_agrees() {
        for mu in [0.0, 0.25, 0.5, 1.0, 2.7] {
            for (omega, lambda) in [(20.0, 1.0), (1.0, 0.0), (3.3, 0.7)] {
                let p = ModelParams::new(mu, omega, lambda, 1.0).unwrap();
                for n in 0..=60 {
                    let a = energy(n, &p);
                    let b = energy_via_generators(n, &p);
                    assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "n={n} {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn undeformed_limit() {
        for (omega, lambda) in [(20.0, 1.0), (0.3, 5.0), (7.0, 0.0)] {
            let p = ModelParams::new(0.0, omega, lambda, 1.0).unwrap();
            for n in 0..=200 {
                let e = energy(n, &p);
                assert!((e - undeformed_energy(n, omega, lambda)).abs() <= 1e-10 * (1.0 + e.abs()));
            }
        }
    }

    #[test]
    fn sectors_strictly_increase() {
        for mu in [0.0, 0.5, 1.0] {
            let p = fig(mu);
            for n in 0..200 {
                assert!(energy(n + 2, &p) > energy(n, &p));
            }
        }
    }
}
