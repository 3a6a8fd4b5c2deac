//! Scalar kernel of the Dunkl-deformed oscillator algebra.
//!
//! Everything here acts on the orthonormal Dunkl number basis `|n⟩`, where
//! the reflection operator `R` is diagonal with eigenvalue `(-1)^n`, the
//! ladder operators shift `n` by one, and the su(1,1) generators
//! `K₊ = ½a†²`, `K₋ = ½a²`, `K₀ = ¼(a†a + aa†)` shift it by two or leave it fixed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of the deformed Kerr oscillator plus the real
/// amplitude of the initial coherent state. Units have `ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Dunkl deformation parameter.
    pub mu: f64,
    /// Free field frequency.
    pub omega: f64,
    /// Kerr (anharmonicity) coupling.
    pub lambda: f64,
    /// Coherent amplitude, real and non-negative.
    pub alpha: f64,
}

impl Default for ModelParams {
    /// ω = 20, λ = 1, α = 2, undeformed.
    fn default() -> Self {
        Self {
            mu: 0.0,
            omega: 20.0,
            lambda: 1.0,
            alpha: 2.0,
        }
    }
}

impl ModelParams {
    pub fn new(mu: f64, omega: f64, lambda: f64, alpha: f64) -> Result<Self> {
        let params = Self {
            mu,
            omega,
            lambda,
            alpha,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        fn check(name: &'static str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    reason,
                })
            }
        }
        check("mu", self.mu, self.mu >= 0.0, "must satisfy mu >= 0")?;
        check(
            "omega",
            self.omega,
            self.omega > 0.0,
            "must satisfy omega > 0",
        )?;
        check(
            "lambda",
            self.lambda,
            self.lambda >= 0.0,
            "must satisfy lambda >= 0",
        )?;
        check(
            "alpha",
            self.alpha,
            self.alpha >= 0.0,
            "must be real and >= 0",
        )?;
        Ok(())
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }
}

/// Eigenvalue of the reflection operator on a number state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Lowest weight `k` of the discrete-series su(1,1) irrep carried by one
/// parity sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BargmannIndex {
    pub k: f64,
}

/// `[n]_μ = n + μ(1 - (-1)^n)`.
#[inline]
pub fn dunkl_integer(n: usize, mu: f64) -> f64 {
    match Parity::of(n) {
        Parity::Even => n as f64,
        Parity::Odd => n as f64 + 2.0 * mu,
    }
}

/// Natural log of `[n]_μ! = [n]_μ [n-1]_μ ⋯ [1]_μ`, accumulated as a sum of
/// logs so large `n` never overflows.
pub fn dunkl_factorial_ln(n: usize, mu: f64) -> Result<f64> {
    let mut acc = 0.0;
    for k in 1..=n {
        let factor = dunkl_integer(k, mu);
        if factor <= 0.0 || factor.is_nan() {
            return Err(Error::Domain { n: k, factor });
        }
        acc += factor.ln();
    }
    Ok(acc)
}

/// Amplitude of `a_μ|n⟩ = √[n]_μ |n-1⟩`; zero on the vacuum.
#[inline]
pub fn ladder_down_amp(n: usize, mu: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        dunkl_integer(n, mu).sqrt()
    }
}

/// Amplitude of `a_μ†|n⟩ = √[n+1]_μ |n+1⟩`.
#[inline]
pub fn ladder_up_amp(n: usize, mu: f64) -> f64 {
    dunkl_integer(n + 1, mu).sqrt()
}

/// `K₀|n⟩ = ½([n]_μ + ½ + μ(-1)^n)|n⟩`.
#[inline]
pub fn k0_eigenvalue(n: usize, mu: f64) -> f64 {
    0.5 * (dunkl_integer(n, mu) + 0.5 + mu * Parity::of(n).sign())
}

/// `K₊|n⟩ = ½√([n+1]_μ[n+2]_μ) |n+2⟩`.
#[inline]
pub fn kplus_amp(n: usize, mu: f64) -> f64 {
    0.5 * (dunkl_integer(n + 1, mu) * dunkl_integer(n + 2, mu)).sqrt()
}

/// `K₋|n⟩ = ½√([n]_μ[n-1]_μ) |n-2⟩`; zero for `n < 2`.
#[inline]
pub fn kminus_amp(n: usize, mu: f64) -> f64 {
    if n < 2 {
        0.0
    } else {
        0.5 * (dunkl_integer(n, mu) * dunkl_integer(n - 1, mu)).sqrt()
    }
}

/// Eigenvalue of the Casimir `C = K₀² - K₀ - K₊K₋` on a parity sector:
/// `μ²/4 - (μ/4)·R - 3/16`.
pub fn casimir_eigenvalue(parity: Parity, mu: f64) -> f64 {
    mu * mu / 4.0 - mu / 4.0 * parity.sign() - 3.0 / 16.0
}

pub fn bargmann_index(parity: Parity, mu: f64) -> BargmannIndex {
    let k = match parity {
        Parity::Even => 0.25 + mu / 2.0,
        Parity::Odd => 0.75 + mu / 2.0,
    };
    BargmannIndex { k }
}
