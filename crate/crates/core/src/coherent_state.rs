//! Truncated superposition of the even and odd sectors of a Dunkl coherent
//! state,
//!
//! ```text
//! |ψ(0)⟩ = 𝒩 Σ_n α^n / √([n]_μ!) |n⟩,
//! ```
//!
//! with real `α ≥ 0`. Coefficients live in log space until the last step so
//! that `[n]_μ!` never overflows.

use crate::dunkl_algebra::{dunkl_integer, ModelParams, Parity};
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;
use serde::{Deserialize, Serialize};

/// Number of indices past a candidate cutoff that must all be negligible.
const LOOKAHEAD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Relative weight below which a term counts as tail.
    pub tail_tol: f64,
    /// Largest admissible cutoff index.
    pub n_max_hard: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tail_tol: 1e-16,
            n_max_hard: 512,
        }
    }
}

impl TruncationPolicy {
    pub fn new(tail_tol: f64, n_max_hard: usize) -> Result<Self> {
        let policy = Self {
            tail_tol,
            n_max_hard,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(Error::InvalidParameter {
                name: "tail_tol",
                value: self.tail_tol,
                reason: "must satisfy 0 < tail_tol < 1",
            });
        }
        if self.n_max_hard < LOOKAHEAD {
            return Err(Error::InvalidParameter {
                name: "n_max_hard",
                value: self.n_max_hard as f64,
                reason: "must be at least 8",
            });
        }
        Ok(())
    }
}

/// Coefficients `c_n = α^n/√([n]_μ!)` for `n = 0..=n_cut` together with the
/// normalization `𝒩 = (Σ c_n²)^{-1/2}`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    params: ModelParams,
    n_cut: usize,
    log_coeffs: Vec<f64>,
    log_norm_const: f64,
    amplitudes: Vec<f64>,
    probabilities: Vec<f64>,
}

/// `ln(α^n/√([n]_μ!))` for `n = 0, 1, …`, generated by the running product.
fn log_coeff_iter(alpha: f64, mu: f64) -> impl Iterator<Item = f64> {
    let ln_alpha = alpha.ln();
    let mut n = 0usize;
    let mut acc = 0.0f64;
    std::iter::from_fn(move || {
        if n > 0 {
            acc += ln_alpha - 0.5 * dunkl_integer(n, mu).ln();
        }
        n += 1;
        Some(acc)
    })
}

pub fn build_state(params: &ModelParams, policy: &TruncationPolicy) -> Result<CoherentState> {
    params.validate()?;
    policy.validate()?;

    let log_tol = policy.tail_tol.ln();
    // log weights are twice the log coefficients
    let mut log_coeffs: Vec<f64> = Vec::new();
    let mut source = log_coeff_iter(params.alpha, params.mu);
    let mut ensure = |len: usize, v: &mut Vec<f64>| {
        while v.len() < len {
            v.push(source.next().expect("infinite iterator"));
        }
    };

    let mut n_cut = None;
    let mut max_log_weight = f64::NEG_INFINITY;
    ensure(2, &mut log_coeffs);
    for &lc in &log_coeffs[..2] {
        max_log_weight = max_log_weight.max(2.0 * lc);
    }
    for n in 2..=policy.n_max_hard {
        ensure(n + 1 + LOOKAHEAD, &mut log_coeffs);
        max_log_weight = max_log_weight.max(2.0 * log_coeffs[n]);
        let threshold = max_log_weight + log_tol;
        if log_coeffs[n + 1..=n + LOOKAHEAD]
            .iter()
            .all(|&lc| 2.0 * lc < threshold)
        {
            n_cut = Some(n);
            break;
        }
    }
    let n_cut = n_cut.ok_or(Error::Truncation {
        alpha: params.alpha,
        tail_tol: policy.tail_tol,
        n_max_hard: policy.n_max_hard,
    })?;
    log_coeffs.truncate(n_cut + 1);

    Ok(CoherentState::from_log_coeffs(*params, log_coeffs))
}

impl CoherentState {
    fn from_log_coeffs(params: ModelParams, log_coeffs: Vec<f64>) -> Self {
        let max_log_weight = log_coeffs
            .iter()
            .map(|&lc| 2.0 * lc)
            .fold(f64::NEG_INFINITY, f64::max);
        let scaled: CompensatedSum = log_coeffs
            .iter()
            .map(|&lc| (2.0 * lc - max_log_weight).exp())
            .collect();
        let log_norm_const = -0.5 * (max_log_weight + scaled.total().ln());
        let amplitudes: Vec<f64> = log_coeffs
            .iter()
            .map(|&lc| (lc + log_norm_const).exp())
            .collect();
        let probabilities = log_coeffs
            .iter()
            .map(|&lc| (2.0 * (lc + log_norm_const)).exp())
            .collect();
        Self {
            params,
            n_cut: log_coeffs.len() - 1,
            log_coeffs,
            log_norm_const,
            amplitudes,
            probabilities,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Highest retained number state.
    pub fn n_cut(&self) -> usize {
        self.n_cut
    }

    /// Unnormalized coefficients `α^n/√([n]_μ!)`.
    pub fn coeffs(&self) -> Vec<f64> {
        self.log_coeffs.iter().map(|lc| lc.exp()).collect()
    }

    pub fn log_coeffs(&self) -> &[f64] {
        &self.log_coeffs
    }

    pub fn norm_const(&self) -> f64 {
        self.log_norm_const.exp()
    }

    pub fn log_norm_const(&self) -> f64 {
        self.log_norm_const
    }

    /// Normalized amplitudes `𝒩 c_n`.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Stationary photon distribution `(𝒩 c_n)²`.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Keeps one parity sector and renormalizes. Fails if that sector is
    /// empty (the odd sector of the vacuum).
    pub fn project_parity(&self, parity: Parity) -> Result<Self> {
        let log_coeffs: Vec<f64> = self
            .log_coeffs
            .iter()
            .enumerate()
            .map(|(n, &lc)| {
                if Parity::of(n) == parity {
                    lc
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        if log_coeffs.iter().all(|lc| *lc == f64::NEG_INFINITY) {
            return Err(Error::Config(format!(
                "{parity:?} sector of the state is empty"
            )));
        }
        Ok(Self::from_log_coeffs(self.params, log_coeffs))
    }
}

/// `(𝒩 c_n)²`, zero past the cutoff.
pub fn probability(state: &CoherentState, n: usize) -> f64 {
    state.probabilities.get(n).copied().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl_algebra::ladder_down_amp;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    fn state(mu: f64, alpha: f64) -> CoherentState {
        let p = ModelParams::new(mu, 20.0, 1.0, alpha).unwrap();
        build_state(&p, &TruncationPolicy::default()).unwrap()
    }

    fn ln_factorial(n: usize) -> f64 {
        (1..=n).map(|k| (k as f64).ln()).sum()
    }

    #[test]
    fn vacuum() {
        let s = state(0.7, 0.0);
        assert_eq!(s.coeffs()[0], 1.0);
        assert!(s.coeffs()[1..].iter().all(|&c| c == 0.0));
        assert_eq!(s.norm_const(), 1.0);
        assert_eq!(probability(&s, 0), 1.0);
        assert_eq!(probability(&s, 1), 0.0);
        assert_eq!(s.n_cut(), 2);
    }

    #[test]
    fn undeformed_normalization_is_gaussian() {
        let s = state(0.0, 2.0);
        let n2 = s.norm_const().powi(2);
        assert!((n2 - (-4f64).exp()).abs() < 1e-12 * n2);
        let p4 = (-4f64).exp() * 256.0 / 24.0;
        assert!((probability(&s, 4) - p4).abs() < 1e-13);
        assert!((p4 - 0.19537).abs() < 1e-5);
    }

    #[test]
    fn deformed_normalization_matches_exact_rational_sum() {
        // At μ = 1/2 every [n]_μ is an integer ([n] = n even, n + 1 odd), so
        // Σ 4^n/[n]! can be summed exactly to 200 terms.
        let mut sum = BigRational::zero();
        let mut factorial = BigInt::one();
        let mut power = BigInt::one();
        for n in 0..200u32 {
            if n > 0 {
                let dn = if n % 2 == 0 { n } else { n + 1 };
                factorial *= BigInt::from(dn);
                power *= BigInt::from(4);
            }
            sum += BigRational::new(power.clone(), factorial.clone());
        }
        let expected = 1.0 / sum.to_f64().unwrap();

        let s = state(0.5, 2.0);
        let got = s.norm_const().powi(2);
        assert!(
            (got - expected).abs() < 1e-13 * expected,
            "{got} vs {expected}"
        );

        let p1 = expected * 4.0 / 2.0;
        assert!((probability(&s, 1) - p1).abs() < 1e-13);
    }

    #[test]
    fn truncated_mass_within_tolerance() {
        for mu in [0.0, 0.25, 0.5, 1.0, 4.0] {
            for alpha in [0.0, 0.1, 1.0, 2.0, 5.0, 10.0] {
                let s = state(mu, alpha);
                let total: f64 = s.probabilities().iter().sum();
                assert!(
                    (1.0 - 1e-12..=1.0 + 1e-14).contains(&total),
                    "mu={mu} a={alpha} {total}"
                );
            }
        }
    }

    #[test]
    fn amplitudes_are_eigenvector_of_lowering() {
        for mu in [0.0, 0.25, 0.5, 1.0] {
            for alpha in [0.5, 1.0, 2.0, 3.0] {
                let s = state(mu, alpha);
                let psi = s.amplitudes();
                let dev = (0..s.n_cut())
                    .map(|n| (ladder_down_amp(n + 1, mu) * psi[n + 1] - alpha * psi[n]).abs())
                    .fold(0.0, f64::max);
                assert!(dev <= 1e-10, "mu={mu} alpha={alpha} dev={dev}");
            }
        }
    }

    #[test]
    fn undeformed_distribution_is_poisson() {
        for alpha in [0.5f64, 1.0, 2.0, 3.0] {
            let s = state(0.0, alpha);
            for n in 0..=40 {
                let poisson =
                    (-alpha * alpha + 2.0 * n as f64 * alpha.ln() - ln_factorial(n)).exp();
                assert!((probability(&s, n) - poisson).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn monotone_tail() {
        for mu in [0.0, 0.5, 1.0, 2.5] {
            for alpha in [1.0f64, 2.0, 4.0] {
                let s = state(mu, alpha);
                let start = (alpha * alpha + 2.0 * mu).ceil() as usize + 10;
                for n in start..s.n_cut() {
                    assert!(
                        probability(&s, n + 1) < probability(&s, n),
                        "mu={mu} a={alpha} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn truncation_failure_for_huge_alpha() {
        let p = ModelParams::new(0.0, 20.0, 1.0, 30.0).unwrap();
        let err = build_state(&p, &TruncationPolicy::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::Truncation {
                n_max_hard: 512,
                ..
            }
        ));
        // a larger budget resolves it
        let policy = TruncationPolicy::new(1e-16, 2048).unwrap();
        let s = build_state(&p, &policy).unwrap();
        let total: f64 = s.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::new(0.0, 512).is_err());
        assert!(TruncationPolicy::new(1.0, 512).is_err());
        assert!(TruncationPolicy::new(1e-10, 7).is_err());
        assert!(TruncationPolicy::new(1e-10, 8).is_ok());
    }

    #[test]
    fn parity_projection() {
        let s = state(0.5, 2.0);
        let even = s.project_parity(Parity::Even).unwrap();
        let total: f64 = even.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
        assert!(even
            .probabilities()
            .iter()
            .skip(1)
            .step_by(2)
            .all(|&p| p == 0.0));
        assert!(state(0.5, 0.0).project_parity(Parity::Odd).is_err());
    }
}
