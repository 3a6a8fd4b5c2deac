//! Brute-force reference path: dense matrices on the truncated Fock space
//! `span{|0⟩, …, |dim-1⟩}`.
//!
//! Nothing here uses the closed-form spectrum or the series formulas. The
//! Hamiltonian is assembled from explicit products of ladder matrices, the
//! state is evolved by its own diagonal, and observables are plain
//! `⟨ψ|O|ψ⟩` contractions. Agreement with [`crate::dynamics`] is therefore a
//! meaningful check on both.
//!
//! Truncation breaks the ladder relations in the top rows, so algebra checks
//! only inspect an interior block.

use indexmap::IndexMap;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent_state::CoherentState;
use crate::dunkl_algebra::{dunkl_integer, ModelParams};
use crate::error::{Error, Result};

pub type StateVector = DVector<Complex64>;

/// Guard levels kept above the coherent-state cutoff. `a†` and `K₊` raise
/// by at most two, so eight is ample.
pub const GUARD_LEVELS: usize = 8;

/// Largest off-diagonal Frobenius mass tolerated in a "diagonal" Hamiltonian.
pub const DIAGONAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix(DMatrix<Complex64>);

impl OperatorMatrix {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "operator matrices are square");
        Self(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 + &other.0 * &self.0)
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.0.diagonal().iter().copied().collect()
    }

    /// Frobenius norm of everything off the main diagonal.
    pub fn off_diagonal_mass(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                if i != j {
                    acc += self.0[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Largest `|entry|` with both indices below `upto`.
    pub fn block_max_abs(&self, upto: usize) -> f64 {
        let upto = upto.min(self.dim());
        let mut max = 0.0f64;
        for j in 0..upto {
            for i in 0..upto {
                max = max.max(self.0[(i, j)].norm());
            }
        }
        max
    }
}

impl std::ops::Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix(&self.0 * &rhs.0)
    }
}

fn require_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        Err(Error::DimensionMismatch {
            expected: min,
            found: dim,
        })
    } else {
        Ok(())
    }
}

/// `A[n-1, n] = √[n]_μ`.
pub fn build_annihilation(dim: usize, mu: f64) -> Result<OperatorMatrix> {
    require_dim(dim, 2)?;
    let mut m = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        m[(n - 1, n)] = Complex64::from(dunkl_integer(n, mu).sqrt());
    }
    Ok(OperatorMatrix(m))
}

pub fn build_creation(dim: usize, mu: f64) -> Result<OperatorMatrix> {
    Ok(build_annihilation(dim, mu)?.adjoint())
}

/// `R = diag((-1)^n)`.
pub fn build_reflection(dim: usize) -> Result<OperatorMatrix> {
    require_dim(dim, 1)?;
    let diag = DVector::from_fn(dim, |n, _| {
        Complex64::from(if n % 2 == 0 { 1.0 } else { -1.0 })
    });
    Ok(OperatorMatrix(DMatrix::from_diagonal(&diag)))
}

/// `N = a†a`.
pub fn build_number(dim: usize, mu: f64) -> Result<OperatorMatrix> {
    let a = build_annihilation(dim, mu)?;
    Ok(&a.adjoint() * &a)
}

/// `H = ω a†a + (λ/2) a†a†aa`, by explicit matrix products.
pub fn build_hamiltonian(dim: usize, params: &ModelParams) -> Result<OperatorMatrix> {
    let a = build_annihilation(dim, params.mu)?;
    let ad = a.adjoint();
    let number = &ad * &a;
    let kerr = &(&(&ad * &ad) * &a) * &a;
    Ok(&number.scale(params.omega) + &kerr.scale(0.5 * params.lambda))
}

/// `K₊ = ½ a†²`.
pub fn build_kplus(dim: usize, mu: f64) -> Result<OperatorMatrix> {
    let ad = build_creation(dim, mu)?;
    Ok((&ad * &ad).scale(0.5))
}

/// `K₋ = ½ a²`.
pub fn build_kminus(dim: usize, mu: f64) -> Result<OperatorMatrix> {
    let a = build_annihilation(dim, mu)?;
    Ok((&a * &a).scale(0.5))
}

/// `K₀ = ¼(a†a + aa†)`. The last diagonal entry is a truncation artifact.
pub fn build_kzero(dim: usize, mu: f64) -> Result<OperatorMatrix> {
    let a = build_annihilation(dim, mu)?;
    let ad = a.adjoint();
    Ok((&(&ad * &a) + &(&a * &ad)).scale(0.25))
}

/// `X = (a + a†)/√2`.
pub fn build_quadrature(dim: usize, mu: f64) -> Result<OperatorMatrix> {
    let a = build_annihilation(dim, mu)?;
    Ok((&a + &a.adjoint()).scale(std::f64::consts::FRAC_1_SQRT_2))
}

/// Multiplies component `n` by `e^{-i H[n,n] t}`. Refuses Hamiltonians with
/// off-diagonal mass above [`DIAGONAL_TOL`].
pub fn evolve(state: &StateVector, hamiltonian: &OperatorMatrix, t: f64) -> Result<StateVector> {
    if state.len() != hamiltonian.dim() {
        return Err(Error::DimensionMismatch {
            expected: hamiltonian.dim(),
            found: state.len(),
        });
    }
    let mass = hamiltonian.off_diagonal_mass();
    if mass > DIAGONAL_TOL {
        return Err(Error::NonDiagonal {
            mass,
            tol: DIAGONAL_TOL,
        });
    }
    Ok(StateVector::from_fn(state.len(), |n, _| {
        let e = hamiltonian.get(n, n).re;
        state[n] * Complex64::from_polar(1.0, -e * t)
    }))
}

/// `⟨bra|op|ket⟩` with `bra` conjugated.
pub fn expectation(bra: &StateVector, op: &OperatorMatrix, ket: &StateVector) -> Result<Complex64> {
    for v in [bra, ket] {
        if v.len() != op.dim() {
            return Err(Error::DimensionMismatch {
                expected: op.dim(),
                found: v.len(),
            });
        }
    }
    Ok(bra.dotc(&(op.entries() * ket)))
}

/// Embeds the normalized coherent amplitudes into a `dim`-level space.
pub fn state_vector(state: &CoherentState, dim: usize) -> Result<StateVector> {
    let amps = state.amplitudes();
    if dim < amps.len() {
        return Err(Error::DimensionMismatch {
            expected: amps.len(),
            found: dim,
        });
    }
    Ok(StateVector::from_fn(dim, |n, _| {
        Complex64::from(amps.get(n).copied().unwrap_or(0.0))
    }))
}

/// Oracle dimension for a state: its cutoff plus [`GUARD_LEVELS`].
pub fn default_dim(state: &CoherentState) -> usize {
    state.n_cut() + 1 + GUARD_LEVELS
}

/// Precomputed matrices for evaluating the dynamics observables of one
/// initial state by direct linear algebra.
#[derive(Debug, Clone)]
pub struct MatrixOracle {
    psi0: StateVector,
    hamiltonian: OperatorMatrix,
    quadrature: OperatorMatrix,
    quadrature_sq: OperatorMatrix,
    kminus: OperatorMatrix,
    kzero: OperatorMatrix,
}

impl MatrixOracle {
    pub fn new(state: &CoherentState) -> Result<Self> {
        Self::with_dim(state, default_dim(state))
    }

    pub fn with_dim(state: &CoherentState, dim: usize) -> Result<Self> {
        let params = state.params();
        let quadrature = build_quadrature(dim, params.mu)?;
        Ok(Self {
            psi0: state_vector(state, dim)?,
            hamiltonian: build_hamiltonian(dim, params)?,
            quadrature_sq: &quadrature * &quadrature,
            quadrature,
            kminus: build_kminus(dim, params.mu)?,
            kzero: build_kzero(dim, params.mu)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.psi0.len()
    }

    pub fn hamiltonian(&self) -> &OperatorMatrix {
        &self.hamiltonian
    }

    pub fn initial(&self) -> &StateVector {
        &self.psi0
    }

    pub fn evolved(&self, t: f64) -> Result<StateVector> {
        evolve(&self.psi0, &self.hamiltonian, t)
    }

    pub fn quadrature(&self, t: f64) -> Result<f64> {
        let psi = self.evolved(t)?;
        Ok(expectation(&psi, &self.quadrature, &psi)?.re)
    }

    pub fn fidelity(&self, t: f64) -> Result<f64> {
        let psi = self.evolved(t)?;
        Ok(self.psi0.dotc(&psi).norm_sqr())
    }

    pub fn variance(&self, t: f64) -> Result<f64> {
        let psi = self.evolved(t)?;
        let x = expectation(&psi, &self.quadrature, &psi)?.re;
        let x2 = expectation(&psi, &self.quadrature_sq, &psi)?.re;
        Ok(x2 - x * x)
    }

    pub fn kminus(&self, t: f64) -> Result<Complex64> {
        let psi = self.evolved(t)?;
        expectation(&psi, &self.kminus, &psi)
    }

    pub fn kzero(&self) -> Result<f64> {
        Ok(expectation(&self.psi0, &self.kzero, &self.psi0)?.re)
    }
}

/// Interior-block deviations of the defining relations, keyed by relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub dim: usize,
    pub mu: f64,
    pub deviations: IndexMap<String, f64>,
}

impl AlgebraReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.values().copied().fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.deviations.values().all(|&d| d <= tol)
    }
}

pub const RELATIONS: [&str; 6] = [
    "a_adag_commutator",
    "reflection_anticommutator",
    "k0_kpm_commutator",
    "kminus_kplus_commutator",
    "hamiltonian_number_commutator",
    "hamiltonian_reflection_commutator",
];

/// Checks the relations at the default frequencies ω = 20, λ = 1.
pub fn check_algebra(dim: usize, mu: f64) -> Result<AlgebraReport> {
    check_algebra_with(dim, &ModelParams::default().with_mu(mu))
}

/// Max-abs deviation over the interior block of
///
/// * `[a, a†] - (1 + 2μR)` and `{R, a}` on indices `0..=dim-3`,
/// * `[K₀, K±] ∓ K±`, `[K₋, K₊] - 2K₀`, `[H, N]`, `[H, R]` on `0..=dim-5`.
pub fn check_algebra_with(dim: usize, params: &ModelParams) -> Result<AlgebraReport> {
    require_dim(dim, 8)?;
    let mu = params.mu;
    let first_order = dim - 2;
    let quadratic = dim - 4;

    let a = build_annihilation(dim, mu)?;
    let ad = a.adjoint();
    let r = build_reflection(dim)?;
    let id = OperatorMatrix::identity(dim);
    let kp = build_kplus(dim, mu)?;
    let km = build_kminus(dim, mu)?;
    let k0 = build_kzero(dim, mu)?;
    let h = build_hamiltonian(dim, params)?;
    let n = build_number(dim, mu)?;

    let heisenberg = &a.commutator(&ad) - &(&id + &r.scale(2.0 * mu));
    let reflection = r.anticommutator(&a);
    let raise = &k0.commutator(&kp) - &kp;
    let lower = &k0.commutator(&km) + &km;
    let closure = &km.commutator(&kp) - &k0.scale(2.0);

    let values = [
        heisenberg.block_max_abs(first_order),
        reflection.block_max_abs(first_order),
        raise
            .block_max_abs(quadratic)
            .max(lower.block_max_abs(quadratic)),
        closure.block_max_abs(quadratic),
        h.commutator(&n).block_max_abs(quadratic),
        h.commutator(&r).block_max_abs(quadratic),
    ];
    Ok(AlgebraReport {
        dim,
        mu,
        deviations: RELATIONS
            .iter()
            .zip(values)
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    })
}
