//! Deterministic seeded ensembles of two-qubit states.
//!
//! Sample `i` of a run with seed `s` is drawn from ChaCha20 keyed by `s` on
//! stream `i`, so it depends on `(s, i)` alone and parallel generation is
//! record-for-record identical to serial generation.
//!
//! Uniform variates take the top 53 bits of `next_u64`; normal variates use
//! Marsaglia's polar rejection method. Both are fixed here so datasets
//! reproduce across platforms.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::state::{Mat2, TwoQubitState};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ensemble {
    /// Unitarily invariant measure on two-qubit pure states.
    Haar,
    /// Products of two independent Haar-random qubits.
    Separable,
    /// Fixed concurrence `C`, local unitaries Haar-random on both sides.
    FixedConcurrence(f64),
    /// Product states `cos(θ/2)|0⟩ + e^{iφ}sin(θ/2)|1⟩` on a uniform θ grid
    /// over `[0, π]`, with φ drawn uniformly.
    Bloch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    pub ensemble: Ensemble,
}

impl SampleSpec {
    pub fn new(count: usize, seed: u64, ensemble: Ensemble) -> Result<Self> {
        let spec = Self { count, seed, ensemble };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::SampleSpec("count must be at least 1".into()));
        }
        if let Ensemble::FixedConcurrence(c) = self.ensemble {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::ConcurrenceOutOfRange(c));
            }
        }
        Ok(())
    }
}

/// Per-index random stream.
#[derive(Debug, Clone)]
pub struct SampleStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl SampleStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng, spare: None }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by the polar method; the second variate of each accepted
    /// pair is kept for the next call.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let k = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * k);
                return u * k;
            }
        }
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im)
    }

    /// Haar-random unit vector in `ℂⁿ`.
    pub fn unit_vector<const N: usize>(&mut self) -> [Complex64; N] {
        loop {
            let v: [Complex64; N] = std::array::from_fn(|_| self.complex_normal());
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n > 0.0 {
                return v.map(|z| z / n);
            }
        }
    }

    /// Haar-random element of SU(2): `[[a, −b̄], [b, ā]]` with `(a, b)` uniform on `S³`.
    pub fn su2(&mut self) -> Mat2 {
        let [a, b] = self.unit_vector::<2>();
        [[a, -b.conj()], [b, a.conj()]]
    }
}

fn haar_state(rng: &mut SampleStream) -> TwoQubitState {
    TwoQubitState::normalized(rng.unit_vector::<4>())
}

fn separable_state(rng: &mut SampleStream) -> TwoQubitState {
    let a = rng.unit_vector::<2>();
    let b = rng.unit_vector::<2>();
    TwoQubitState::normalized([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
}

/// Schmidt coefficients `(λ₁, λ₂)` with `λ₁² + λ₂² = 1` and `2λ₁λ₂ = c`.
pub fn schmidt_coefficients(c: f64) -> (f64, f64) {
    let lambda1 = (0.5 * (1.0 + ((1.0 - c) * (1.0 + c)).sqrt())).sqrt();
    (lambda1, 0.5 * c / lambda1)
}

fn fixed_concurrence_state(c: f64, rng: &mut SampleStream) -> TwoQubitState {
    let (l1, l2) = schmidt_coefficients(c);
    let zero = Complex64::new(0.0, 0.0);
    let core = TwoQubitState::normalized([Complex64::new(l1, 0.0), zero, zero, Complex64::new(l2, 0.0)]);
    let ua = rng.su2();
    let ub = rng.su2();
    core.apply_local(&ua, &ub)
}

fn bloch_grid_state(index: usize, count: usize, rng: &mut SampleStream) -> TwoQubitState {
    let theta = if count > 1 { PI * index as f64 / (count - 1) as f64 } else { 0.0 };
    let phi = 2.0 * PI * rng.uniform();
    let (s, c) = (0.5 * theta).sin_cos();
    let zero = Complex64::new(0.0, 0.0);
    TwoQubitState::normalized([Complex64::new(c, 0.0), zero, Complex64::from_polar(s, phi), zero])
}

/// Sample `index` of `spec`; depends only on `(spec.seed, index)` and the ensemble.
pub fn sample_at(spec: &SampleSpec, index: usize) -> TwoQubitState {
    let mut rng = SampleStream::new(spec.seed, index as u64);
    match spec.ensemble {
        Ensemble::Haar => haar_state(&mut rng),
        Ensemble::Separable => separable_state(&mut rng),
        Ensemble::FixedConcurrence(c) => fixed_concurrence_state(c, &mut rng),
        Ensemble::Bloch => bloch_grid_state(index, spec.count, &mut rng),
    }
}

/// All samples of `spec`, generated in parallel and assembled in index order.
pub fn generate(spec: &SampleSpec) -> Result<Vec<TwoQubitState>> {
    spec.validate()?;
    Ok((0..spec.count).into_par_iter().map(|i| sample_at(spec, i)).collect())
}

/// Single-threaded equivalent of [`generate`].
pub fn generate_serial(spec: &SampleSpec) -> Result<Vec<TwoQubitState>> {
    spec.validate()?;
    Ok((0..spec.count).map(|i| sample_at(spec, i)).collect())
}

pub fn sample_haar(spec: &SampleSpec) -> Result<Vec<TwoQubitState>> {
    expect_ensemble(spec, matches!(spec.ensemble, Ensemble::Haar))?;
    generate(spec)
}

pub fn sample_separable(spec: &SampleSpec) -> Result<Vec<TwoQubitState>> {
    expect_ensemble(spec, matches!(spec.ensemble, Ensemble::Separable))?;
    generate(spec)
}

pub fn sample_fixed_concurrence(spec: &SampleSpec) -> Result<Vec<TwoQubitState>> {
    expect_ensemble(spec, matches!(spec.ensemble, Ensemble::FixedConcurrence(_)))?;
    generate(spec)
}

fn expect_ensemble(spec: &SampleSpec, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::SampleSpec(format!("unexpected ensemble {:?}", spec.ensemble)))
    }
}
