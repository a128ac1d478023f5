//! Brute-force reference computations used by the verification suite.
//!
//! Everything here works on explicit 4×4 operator matrices and index-level
//! partial traces, and shares no code path with the closed forms in
//! [`crate::state`] or [`crate::projection`].

use num_complex::Complex64;

use crate::hypercomplex::ComplexScalar;
use crate::state::{Mat2, TwoQubitState};

type Mat4 = [[ComplexScalar; 4]; 4];

const Z: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const R: Complex64 = Complex64::new(1.0, 0.0);

pub const PAULI_X: Mat2 = [[Z, R], [R, Z]];
/// `σ_y = −i|0⟩⟨1| + i|1⟩⟨0|`.
pub const PAULI_Y: Mat2 = [[Z, Complex64::new(0.0, -1.0)], [I, Z]];
pub const PAULI_Z: Mat2 = [[R, Z], [Z, Complex64::new(-1.0, 0.0)]];
pub const IDENTITY: Mat2 = [[R, Z], [Z, R]];

pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [[Z; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn apply(op: &Mat4, v: &[ComplexScalar; 4]) -> [ComplexScalar; 4] {
    let mut out = [Z; 4];
    for (row, o) in op.iter().zip(out.iter_mut()) {
        *o = row.iter().zip(v).map(|(m, x)| m * x).sum();
    }
    out
}

/// `⟨ψ|op|ψ⟩`.
pub fn expectation(op: &Mat4, v: &[ComplexScalar; 4]) -> ComplexScalar {
    let w = apply(op, v);
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

/// `⟨ψ|J(σ_y⊗σ_y)|ψ⟩` with `J` complex conjugation in the product basis, i.e.
/// `⟨ψ*|σ_y⊗σ_y|ψ⟩`.
pub fn antilinear_amplitude(v: &[ComplexScalar; 4]) -> ComplexScalar {
    let w = apply(&kron(&PAULI_Y, &PAULI_Y), v);
    // bra of ψ* carries no conjugation on the components of ψ
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Wootters' pure-state concurrence `|⟨ψ*|σ_y⊗σ_y|ψ⟩|`.
pub fn wootters_concurrence(s: &TwoQubitState) -> f64 {
    antilinear_amplitude(&s.amplitudes()).norm()
}

/// `⟨σ⊗I⟩` for `σ ∈ {σ_z, σ_x, σ_y}` on the photon.
pub fn photon_pauli_expectations(s: &TwoQubitState) -> [f64; 3] {
    let v = s.amplitudes();
    [PAULI_Z, PAULI_X, PAULI_Y].map(|p| expectation(&kron(&p, &IDENTITY), &v).re)
}

/// Photon density matrix by tracing out the second qubit index by index.
pub fn partial_trace_second(v: &[ComplexScalar; 4]) -> Mat2 {
    let mut rho = [[Z; 2]; 2];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, r) in row.iter_mut().enumerate() {
            for k in 0..2 {
                *r += v[2 * i + k] * v[2 * j + k].conj();
            }
        }
    }
    rho
}

/// Second-qubit density matrix by tracing out the photon index by index.
pub fn partial_trace_first(v: &[ComplexScalar; 4]) -> Mat2 {
    let mut rho = [[Z; 2]; 2];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, r) in row.iter_mut().enumerate() {
            for k in 0..2 {
                *r += v[2 * k + i] * v[2 * k + j].conj();
            }
        }
    }
    rho
}
