//! Two-qubit pure states and the duality measures.
//!
//! Amplitudes are ordered over `|0e⟩, |0f⟩, |1e⟩, |1f⟩`: the first qubit is
//! the photon (`|0⟩`, `|1⟩` paths), the second is whatever it is correlated with.
//! The two coefficients that drive everything downstream are
//!
//! ```text
//! π₁ = ᾱ₂α₀ + ᾱ₃α₁        (coherence,   V = 2|π₁|)
//! π₂ = α₁α₂ − α₀α₃        (entanglement, C = 2|π₂|)
//! ```

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hypercomplex::ComplexScalar;
use crate::{Error, Result};

/// Norm band within which an input is accepted without the rescale flag.
pub const NORM_ACCEPT_TOL: f64 = 1e-9;

/// Overlap above which `χ₁` and `χ₂` are treated as parallel.
pub const PARALLEL_TOL: f64 = 1e-12;

/// Unit-norm tolerance for the correlated vectors `χ₁`, `χ₂` and the branch weights.
pub const CHI_NORM_TOL: f64 = 1e-12;

/// Default number of phase samples in [`fringe_extrema`].
pub const DEFAULT_FRINGE_GRID: usize = 360;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix, row-major.
pub type Mat2 = [[ComplexScalar; 2]; 2];

/// What [`TwoQubitState::new`] does with an input whose norm is not 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Reject inputs whose norm differs from 1 by more than [`NORM_ACCEPT_TOL`].
    #[default]
    Strict,
    /// Rescale any nonzero input to unit norm.
    Rescale,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitState {
    alpha: [ComplexScalar; 4],
}

impl TwoQubitState {
    /// Validates and stores four amplitudes.
    ///
    /// Inputs inside the acceptance band are renormalized exactly so that the
    /// stored state has unit norm to rounding.
    pub fn new(alpha: [ComplexScalar; 4], normalization: Normalization) -> Result<Self> {
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = alpha.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        if normalization == Normalization::Strict && (norm - 1.0).abs() > NORM_ACCEPT_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self::from_unnormalized(alpha, norm))
    }

    /// Convenience constructor from real amplitudes.
    pub fn from_reals(alpha: [f64; 4], normalization: Normalization) -> Result<Self> {
        Self::new(alpha.map(|a| Complex64::new(a, 0.0)), normalization)
    }

    fn from_unnormalized(alpha: [ComplexScalar; 4], norm: f64) -> Self {
        if norm == 1.0 {
            Self { alpha }
        } else {
            Self { alpha: alpha.map(|a| a / norm) }
        }
    }

    /// Rescales any nonzero finite vector; used by the samplers.
    pub(crate) fn normalized(alpha: [ComplexScalar; 4]) -> Self {
        let norm = alpha.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        Self::from_unnormalized(alpha, norm)
    }

    /// `|a⟩ ⊗ |b⟩` for two single-qubit vectors (each rescaled to unit norm).
    pub fn product(a: [ComplexScalar; 2], b: [ComplexScalar; 2]) -> Result<Self> {
        Self::new(
            [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]],
            Normalization::Rescale,
        )
    }

    /// The computational basis state `|i⟩` with `i` in `0..4`.
    pub fn basis(index: usize) -> Self {
        let mut alpha = [ZERO; 4];
        alpha[index] = ONE;
        Self { alpha }
    }

    /// `(|0e⟩ + |1f⟩)/√2`.
    pub fn bell() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { alpha: [h, ZERO, ZERO, h] }
    }

    pub fn amplitudes(&self) -> [ComplexScalar; 4] {
        self.alpha
    }

    /// Amplitude matrix `M[i][j]` = coefficient of `|i⟩|j⟩`.
    pub fn amplitude_matrix(&self) -> Mat2 {
        let a = self.alpha;
        [[a[0], a[1]], [a[2], a[3]]]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability of the photon in `|0⟩`.
    pub fn p0(&self) -> f64 {
        self.alpha[0].norm_sqr() + self.alpha[1].norm_sqr()
    }

    /// Probability of the photon in `|1⟩`.
    pub fn p1(&self) -> f64 {
        self.alpha[2].norm_sqr() + self.alpha[3].norm_sqr()
    }

    /// `π₁ = ᾱ₂α₀ + ᾱ₃α₁`.
    pub fn coherence(&self) -> ComplexScalar {
        let a = self.alpha;
        a[2].conj() * a[0] + a[3].conj() * a[1]
    }

    /// `π₂ = α₁α₂ − α₀α₃`.
    pub fn entanglement_amplitude(&self) -> ComplexScalar {
        let a = self.alpha;
        a[1] * a[2] - a[0] * a[3]
    }

    /// Multiplies every amplitude by `e^{iδ}`.
    pub fn with_global_phase(&self, delta: f64) -> Self {
        let w = Complex64::from_polar(1.0, delta);
        Self { alpha: self.alpha.map(|a| a * w) }
    }

    /// Multiplies the `|1⟩` branch of the photon by `e^{iδ}`.
    pub fn with_branch_phase(&self, delta: f64) -> Self {
        let w = Complex64::from_polar(1.0, delta);
        let a = self.alpha;
        Self { alpha: [a[0], a[1], a[2] * w, a[3] * w] }
    }

    /// Applies `U_A ⊗ U_B`, i.e. `M ↦ U_A M U_Bᵀ` on the amplitude matrix.
    pub fn apply_local(&self, ua: &Mat2, ub: &Mat2) -> Self {
        let m = self.amplitude_matrix();
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, o) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    for l in 0..2 {
                        *o += ua[i][k] * ub[j][l] * m[k][l];
                    }
                }
            }
        }
        Self { alpha: [out[0][0], out[0][1], out[1][0], out[1][1]] }
    }

    /// Exchanges the roles of the two qubits.
    pub fn swap_subsystems(&self) -> Self {
        let a = self.alpha;
        Self { alpha: [a[0], a[2], a[1], a[3]] }
    }
}

/// Reduced density matrix of one qubit. Hermitian by construction: only the
/// upper off-diagonal entry is stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix2 {
    pub rho00: f64,
    pub rho11: f64,
    pub rho01: ComplexScalar,
}

impl DensityMatrix2 {
    pub fn new(rho00: f64, rho11: f64, rho01: ComplexScalar) -> Self {
        Self { rho00, rho11, rho01 }
    }

    pub fn rho10(&self) -> ComplexScalar {
        self.rho01.conj()
    }

    pub fn entries(&self) -> Mat2 {
        [
            [Complex64::new(self.rho00, 0.0), self.rho01],
            [self.rho10(), Complex64::new(self.rho11, 0.0)],
        ]
    }

    pub fn trace(&self) -> f64 {
        self.rho00 + self.rho11
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let mean = 0.5 * (self.rho00 + self.rho11);
        let half_gap = (0.5 * (self.rho00 - self.rho11)).hypot(self.rho01.norm());
        [mean + half_gap, mean - half_gap]
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        purity(self)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        (self.rho00 - other.rho00).abs() <= eps
            && (self.rho11 - other.rho11).abs() <= eps
            && (self.rho01 - other.rho01).norm() <= eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityTriad {
    #[serde(rename = "V")]
    pub visibility: f64,
    #[serde(rename = "D")]
    pub distinguishability: f64,
    #[serde(rename = "C")]
    pub concurrence: f64,
}

impl DualityTriad {
    pub fn sum_of_squares(&self) -> f64 {
        self.visibility.powi(2) + self.distinguishability.powi(2) + self.concurrence.powi(2)
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.visibility - other.visibility)
            .abs()
            .max((self.distinguishability - other.distinguishability).abs())
            .max((self.concurrence - other.concurrence).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    /// `theta ∈ [0, π]`, `phi ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::BlochAngles { theta, phi });
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `μ|0⟩|χ₁⟩ + ν|1⟩|χ₂⟩` with `χ₁`, `χ₂` unit vectors of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedState {
    mu: ComplexScalar,
    nu: ComplexScalar,
    chi1: Vec<ComplexScalar>,
    chi2: Vec<ComplexScalar>,
}

impl CorrelatedState {
    pub fn new(
        mu: ComplexScalar,
        nu: ComplexScalar,
        chi1: Vec<ComplexScalar>,
        chi2: Vec<ComplexScalar>,
    ) -> Result<Self> {
        check_dims(&chi1, &chi2)?;
        for (which, chi) in [("chi1", &chi1), ("chi2", &chi2)] {
            let norm = vec_norm(chi);
            if norm == 0.0 {
                return Err(Error::ZeroVector { which });
            }
            if (norm - 1.0).abs() > CHI_NORM_TOL {
                return Err(Error::VectorNotNormalized { which, norm });
            }
        }
        let total = mu.norm_sqr() + nu.norm_sqr();
        if (total - 1.0).abs() > CHI_NORM_TOL {
            return Err(Error::BranchWeights { total });
        }
        Ok(Self { mu, nu, chi1, chi2 })
    }

    /// Rescales `χ₁`, `χ₂` to unit norm and `(μ, ν)` to unit weight.
    pub fn normalized(
        mu: ComplexScalar,
        nu: ComplexScalar,
        chi1: Vec<ComplexScalar>,
        chi2: Vec<ComplexScalar>,
    ) -> Result<Self> {
        check_dims(&chi1, &chi2)?;
        let n1 = vec_norm(&chi1);
        let n2 = vec_norm(&chi2);
        if n1 == 0.0 || !n1.is_finite() {
            return Err(Error::ZeroVector { which: "chi1" });
        }
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::ZeroVector { which: "chi2" });
        }
        let w = (mu.norm_sqr() + nu.norm_sqr()).sqrt();
        if w == 0.0 || !w.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            mu: mu / w,
            nu: nu / w,
            chi1: chi1.iter().map(|c| c / n1).collect(),
            chi2: chi2.iter().map(|c| c / n2).collect(),
        })
    }

    pub fn mu(&self) -> ComplexScalar {
        self.mu
    }

    pub fn nu(&self) -> ComplexScalar {
        self.nu
    }

    pub fn chi1(&self) -> &[ComplexScalar] {
        &self.chi1
    }

    pub fn chi2(&self) -> &[ComplexScalar] {
        &self.chi2
    }

    pub fn dim(&self) -> usize {
        self.chi1.len()
    }

    /// Photon density matrix computed directly in the `d`-dimensional space:
    /// `ρ₀₀ = |μ|²`, `ρ₁₁ = |ν|²`, `ρ₀₁ = μν̄⟨χ₂|χ₁⟩`.
    pub fn reduced_density_photon(&self) -> DensityMatrix2 {
        DensityMatrix2::new(
            self.mu.norm_sqr() * vec_norm(&self.chi1).powi(2),
            self.nu.norm_sqr() * vec_norm(&self.chi2).powi(2),
            self.mu * self.nu.conj() * inner(&self.chi2, &self.chi1),
        )
    }
}

fn check_dims(chi1: &[ComplexScalar], chi2: &[ComplexScalar]) -> Result<()> {
    if chi1.is_empty() || chi1.len() != chi2.len() {
        return Err(Error::DimensionMismatch { left: chi1.len(), right: chi2.len() });
    }
    if chi1.iter().chain(chi2).any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// `⟨a|b⟩`.
fn inner(a: &[ComplexScalar], b: &[ComplexScalar]) -> ComplexScalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn vec_norm(v: &[ComplexScalar]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Result of [`embed_correlated`]: the two-qubit state together with the
/// orthonormal pair it was expressed in.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedState {
    pub state: TwoQubitState,
    pub e: Vec<ComplexScalar>,
    /// `None` when the correlated space is one-dimensional.
    pub f: Option<Vec<ComplexScalar>>,
    /// Decomposition coefficients `(a, b, c, d)` of `χ₁ = a e + b f`, `χ₂ = c e + d f`.
    pub coefficients: [ComplexScalar; 4],
}

pub fn make_state(amplitudes: [ComplexScalar; 4], normalize: bool) -> Result<TwoQubitState> {
    let mode = if normalize { Normalization::Rescale } else { Normalization::Strict };
    TwoQubitState::new(amplitudes, mode)
}

/// Reduces `μ|0⟩|χ₁⟩ + ν|1⟩|χ₂⟩` to the four-amplitude form.
///
/// `e = χ₁` and `f` is the Gram–Schmidt residual of `χ₂`. When the two are
/// parallel, `f` is the lowest-index canonical vector whose residual against
/// `e` has norm² > 1/4; its amplitude vanishes, so the choice is unobservable.
pub fn embed_correlated(c: &CorrelatedState) -> EmbeddedState {
    let e = c.chi1.clone();
    let overlap = inner(&e, &c.chi2);
    let f = if overlap.norm() > 1.0 - PARALLEL_TOL {
        canonical_complement(&e)
    } else {
        orthonormalize(&e, &c.chi2)
    };
    let (a, b, cc, d) = match &f {
        Some(f) => (inner(&e, &c.chi1), inner(f, &c.chi1), inner(&e, &c.chi2), inner(f, &c.chi2)),
        None => (inner(&e, &c.chi1), ZERO, inner(&e, &c.chi2), ZERO),
    };
    let state = TwoQubitState::normalized([c.mu * a, c.mu * b, c.nu * cc, c.nu * d]);
    EmbeddedState { state, e, f, coefficients: [a, b, cc, d] }
}

// Two passes of Gram–Schmidt keep f orthogonal to e at rounding level.
fn orthonormalize(e: &[ComplexScalar], v: &[ComplexScalar]) -> Option<Vec<ComplexScalar>> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        let p = inner(e, &r);
        for (ri, ei) in r.iter_mut().zip(e) {
            *ri -= p * ei;
        }
    }
    let n = vec_norm(&r);
    (n > 0.0).then(|| r.into_iter().map(|x| x / n).collect())
}

fn canonical_complement(e: &[ComplexScalar]) -> Option<Vec<ComplexScalar>> {
    let d = e.len();
    (0..d)
        .find(|&k| 1.0 - e[k].norm_sqr() > 0.25)
        .and_then(|k| {
            let mut b = vec![ZERO; d];
            b[k] = ONE;
            orthonormalize(e, &b)
        })
}

/// Photon density matrix: `ρ₀₀ = |α₀|²+|α₁|²`, `ρ₁₁ = |α₂|²+|α₃|²`, `ρ₀₁ = π₁`.
pub fn reduced_density_photon(s: &TwoQubitState) -> DensityMatrix2 {
    DensityMatrix2::new(s.p0(), s.p1(), s.coherence())
}

/// Partial trace over the photon: `ρ_ee = |α₀|²+|α₂|²`, `ρ_ff = |α₁|²+|α₃|²`,
/// `ρ_ef = ᾱ₁α₀ + ᾱ₃α₂`.
pub fn reduced_density_second(s: &TwoQubitState) -> DensityMatrix2 {
    let a = s.amplitudes();
    DensityMatrix2::new(
        a[0].norm_sqr() + a[2].norm_sqr(),
        a[1].norm_sqr() + a[3].norm_sqr(),
        a[1].conj() * a[0] + a[3].conj() * a[2],
    )
}

/// `V = 2|π₁|`.
pub fn visibility(s: &TwoQubitState) -> f64 {
    2.0 * s.coherence().norm()
}

/// `D = |p₀ − p₁|`.
pub fn distinguishability(s: &TwoQubitState) -> f64 {
    (s.p0() - s.p1()).abs()
}

/// `C = 2|π₂|`.
pub fn concurrence(s: &TwoQubitState) -> f64 {
    2.0 * s.entanglement_amplitude().norm()
}

pub fn triad(s: &TwoQubitState) -> DualityTriad {
    DualityTriad {
        visibility: visibility(s),
        distinguishability: distinguishability(s),
        concurrence: concurrence(s),
    }
}

/// Triad with the second qubit playing the photon. `C` is symmetric under
/// exchange and is reused.
pub fn second_subsystem_triad(s: &TwoQubitState) -> DualityTriad {
    let rho = reduced_density_second(s);
    DualityTriad {
        visibility: 2.0 * rho.rho01.norm(),
        distinguishability: (rho.rho00 - rho.rho11).abs(),
        concurrence: concurrence(s),
    }
}

/// Detection probability `⟨ψ(δ)|½(1 + σ_x⊗I)|ψ(δ)⟩` with phase `δ` on the `|1⟩` branch.
pub fn fringe_probability(s: &TwoQubitState, delta: f64) -> f64 {
    let a = s.with_branch_phase(delta).amplitudes();
    // σ_x⊗I swaps the |0·⟩ and |1·⟩ blocks.
    let flipped = [a[2], a[3], a[0], a[1]];
    let sx: f64 = a.iter().zip(flipped).map(|(x, y)| (x.conj() * y).re).sum();
    0.5 * (s.norm_sqr() + sx)
}

/// Extremes of the fringe pattern over a uniform phase grid of `grid` points
/// (at least 4) plus the analytic extremum `δ = arg π₁` and its antipode.
pub fn fringe_extrema(s: &TwoQubitState, grid: usize) -> (f64, f64) {
    let grid = grid.max(4);
    let peak = s.coherence().arg();
    (0..grid)
        .map(|k| TAU * k as f64 / grid as f64)
        .chain([peak, peak + PI])
        .map(|delta| fringe_probability(s, delta))
        .fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), p| (hi.max(p), lo.min(p)))
}

/// `(p_max − p_min)/(p_max + p_min)` from [`fringe_extrema`].
pub fn fringe_visibility(s: &TwoQubitState, grid: usize) -> f64 {
    let (hi, lo) = fringe_extrema(s, grid);
    (hi - lo) / (hi + lo)
}

/// `Tr(ρ²) = ρ₀₀² + ρ₁₁² + 2|ρ₀₁|²`.
pub fn purity(rho: &DensityMatrix2) -> f64 {
    rho.rho00.powi(2) + rho.rho11.powi(2) + 2.0 * rho.rho01.norm_sqr()
}

/// `(cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩) ⊗ |e⟩`.
pub fn bloch_state(b: BlochAngles) -> TwoQubitState {
    let (s, c) = (0.5 * b.theta).sin_cos();
    TwoQubitState::normalized([
        Complex64::new(c, 0.0),
        ZERO,
        Complex64::from_polar(s, b.phi),
        ZERO,
    ])
}
