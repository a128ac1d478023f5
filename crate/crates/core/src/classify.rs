//! Geometric strata of the `B³` ball and the Schmidt form.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hypercomplex::{ComplexScalar, ExtendedQuaternion};
use crate::projection::{coords_from_state, quaternify, stereo_project};
use crate::state::{triad, Mat2, TwoQubitState};
use crate::{Error, Result};

/// Slack allowed on the concurrence argument of [`shell_radius`].
pub const SHELL_SLACK: f64 = 1e-12;

/// Singular-vector components smaller than this are skipped when fixing phases.
const PHASE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stratum {
    Separable,
    MaximallyEntangled,
    WaveOnly,
    ParticleOnly,
    WaveLess,
    ParticleLess,
    OnX0Axis,
    OnGreatDisc,
}

impl Stratum {
    pub const ALL: [Stratum; 8] = [
        Stratum::Separable,
        Stratum::MaximallyEntangled,
        Stratum::WaveOnly,
        Stratum::ParticleOnly,
        Stratum::WaveLess,
        Stratum::ParticleLess,
        Stratum::OnX0Axis,
        Stratum::OnGreatDisc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stratum::Separable => "Separable",
            Stratum::MaximallyEntangled => "MaximallyEntangled",
            Stratum::WaveOnly => "WaveOnly",
            Stratum::ParticleOnly => "ParticleOnly",
            Stratum::WaveLess => "WaveLess",
            Stratum::ParticleLess => "ParticleLess",
            Stratum::OnX0Axis => "OnX0Axis",
            Stratum::OnGreatDisc => "OnGreatDisc",
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of strata a state belongs to. Strata overlap, so this is a set rather
/// than a single category. Iteration follows declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Strata(BTreeSet<Stratum>);

impl Strata {
    pub fn contains(&self, s: Stratum) -> bool {
        self.0.contains(&s)
    }

    pub fn iter(&self) -> impl Iterator<Item = Stratum> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn set(&mut self, s: Stratum, on: bool) {
        if on {
            self.0.insert(s);
        }
    }
}

impl FromIterator<Stratum> for Strata {
    fn from_iter<I: IntoIterator<Item = Stratum>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Semicolon-joined names, e.g. `WaveLess;OnX0Axis`.
impl fmt::Display for Strata {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            f.write_str(s.name())?;
        }
        Ok(())
    }
}

/// Strata from the triad and the `S⁴` point.
pub fn classify(s: &TwoQubitState, tol: f64) -> Strata {
    let t = triad(s);
    let x0 = coords_from_state(s).x0;
    let mut out = Strata::default();
    out.set(Stratum::Separable, t.concurrence <= tol);
    out.set(Stratum::MaximallyEntangled, t.concurrence >= 1.0 - tol);
    out.set(Stratum::WaveOnly, t.visibility >= 1.0 - tol);
    out.set(Stratum::ParticleOnly, t.distinguishability >= 1.0 - tol);
    out.set(Stratum::WaveLess, t.visibility <= tol);
    out.set(Stratum::ParticleLess, t.distinguishability <= tol);
    out.set(Stratum::OnX0Axis, t.visibility <= tol);
    out.set(Stratum::OnGreatDisc, x0.abs() <= tol);
    out
}

/// Strata read off the projected point `Q = q₁q₂⁻¹` alone:
///
/// * separable: `Q` in the complex plane `{ê₀, ê₁}`;
/// * no coherence: `Q` in the `{ê₂, ê₃}` plane (or `Q = ∞`);
/// * no which-path information: `|Q| = 1`;
/// * only which-path information: `Q ∈ {0, ∞}`;
/// * only wave / only entanglement: the unit circle of `{ê₀, ê₁}` / `{ê₂, ê₃}`.
pub fn geometric_strata(s: &TwoQubitState, tol: f64) -> Strata {
    let mut out = Strata::default();
    match stereo_project(&quaternify(s)) {
        ExtendedQuaternion::Infinity => {
            for label in [Stratum::Separable, Stratum::ParticleOnly, Stratum::WaveLess, Stratum::OnX0Axis] {
                out.set(label, true);
            }
        }
        ExtendedQuaternion::Finite(q) => {
            let n = q.norm();
            let (z1, z2) = (q.z1.norm(), q.z2.norm());
            out.set(Stratum::Separable, z2 <= tol);
            out.set(Stratum::MaximallyEntangled, z1 <= tol && (z2 - 1.0).abs() <= tol);
            out.set(Stratum::WaveOnly, z2 <= tol && (z1 - 1.0).abs() <= tol);
            out.set(Stratum::ParticleOnly, n <= tol || n >= 1.0 / tol);
            out.set(Stratum::WaveLess, z1 <= tol);
            out.set(Stratum::ParticleLess, (n - 1.0).abs() <= tol);
            out.set(Stratum::OnX0Axis, z1 <= tol);
            out.set(Stratum::OnGreatDisc, (n - 1.0).abs() <= tol);
        }
    }
    out
}

/// `λ₁|u₁⟩|ẽ⟩ + λ₂|u₂⟩|f̃⟩` with `λ₁ ≥ λ₂ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtForm {
    pub lambda1: f64,
    pub lambda2: f64,
    /// Photon-side vectors `|u₁⟩, |u₂⟩`.
    pub basis1: [[ComplexScalar; 2]; 2],
    /// Second-subsystem vectors `|ẽ⟩, |f̃⟩` (conjugated right singular vectors of
    /// the amplitude matrix).
    pub basis2: [[ComplexScalar; 2]; 2],
}

impl SchmidtForm {
    /// Amplitudes `Σₖ λₖ |uₖ⟩⊗|basis2ₖ⟩`.
    pub fn reconstruct(&self) -> [ComplexScalar; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (lambda, (u, v)) in [self.lambda1, self.lambda2]
            .into_iter()
            .zip(self.basis1.iter().zip(&self.basis2))
        {
            for i in 0..2 {
                for j in 0..2 {
                    out[2 * i + j] += u[i] * v[j] * lambda;
                }
            }
        }
        out
    }
}

fn complement(v: [ComplexScalar; 2]) -> [ComplexScalar; 2] {
    [-v[1].conj(), v[0].conj()]
}

fn normalize2(v: [ComplexScalar; 2]) -> [ComplexScalar; 2] {
    let n = v[0].norm().hypot(v[1].norm());
    [v[0] / n, v[1] / n]
}

/// Top eigenvector of the Hermitian matrix `[[a, b], [b̄, d]]`.
fn top_eigenvector(a: f64, d: f64, b: ComplexScalar, half_gap: f64) -> [ComplexScalar; 2] {
    if half_gap == 0.0 {
        return [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    }
    let shift = 0.5 * (a - d).abs() + half_gap;
    if a >= d {
        normalize2([Complex64::new(shift, 0.0), b.conj()])
    } else {
        normalize2([b, Complex64::new(shift, 0.0)])
    }
}

/// Singular-value decomposition of the amplitude matrix `M[i][j]`.
///
/// `λ₁²` is the top eigenvalue of `MM† = ρ_ph`; `λ₂ = |det M|/λ₁`, so
/// `2λ₁λ₂ = 2|π₂| = C` holds to rounding even for weakly entangled states.
/// With a degenerate spectrum the photon vector `(1, 0)` is taken first. Each
/// `basis2` vector is phased so its leading non-negligible component is real
/// and positive, with the matching photon vector carrying the opposite phase.
pub fn schmidt_decompose(s: &TwoQubitState) -> SchmidtForm {
    let m: Mat2 = s.amplitude_matrix();
    let (a, d, b) = (s.p0(), s.p1(), s.coherence());
    let half_gap = (0.5 * (a - d)).hypot(b.norm());
    let lambda1 = (0.5 * (a + d) + half_gap).sqrt();
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let lambda2 = if lambda1 > 0.0 { det.norm() / lambda1 } else { 0.0 };

    let u1 = top_eigenvector(a, d, b, half_gap);
    // v₁ ∝ M†u₁
    let v1 = normalize2([
        m[0][0].conj() * u1[0] + m[1][0].conj() * u1[1],
        m[0][1].conj() * u1[0] + m[1][1].conj() * u1[1],
    ]);
    let v2 = complement(v1);
    let mut u2 = complement(u1);
    // M v₂ is parallel to the complement of u₁; align u₂ with it.
    let mv2 = [
        m[0][0] * v2[0] + m[0][1] * v2[1],
        m[1][0] * v2[0] + m[1][1] * v2[1],
    ];
    let overlap = u2[0].conj() * mv2[0] + u2[1].conj() * mv2[1];
    if overlap.norm() > 0.0 {
        let w = overlap / overlap.norm();
        u2 = [u2[0] * w, u2[1] * w];
    }

    let mut basis1 = [u1, u2];
    let mut basis2 = [[v1[0].conj(), v1[1].conj()], [v2[0].conj(), v2[1].conj()]];
    for (u, v) in basis1.iter_mut().zip(basis2.iter_mut()) {
        if let Some(lead) = v.iter().copied().find(|c| c.norm() > PHASE_FLOOR) {
            let w = lead / lead.norm();
            *v = [v[0] * w.conj(), v[1] * w.conj()];
            *u = [u[0] * w, u[1] * w];
        }
    }
    SchmidtForm { lambda1, lambda2, basis1, basis2 }
}

/// `√(1 − C²)`, the radius of the shell of states with concurrence `C`.
pub fn shell_radius(c: f64) -> Result<f64> {
    if !(-SHELL_SLACK..=1.0 + SHELL_SLACK).contains(&c) {
        return Err(Error::ConcurrenceOutOfRange(c));
    }
    let c = c.clamp(0.0, 1.0);
    Ok(((1.0 - c) * (1.0 + c)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{concurrence, purity, reduced_density_photon, visibility, Normalization};
    use crate::DEFAULT_CLASSIFY_TOL as TOL;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn st(a: [f64; 4]) -> TwoQubitState {
        TwoQubitState::from_reals(a, Normalization::Strict).unwrap()
    }

    fn set(labels: &[Stratum]) -> Strata {
        labels.iter().copied().collect()
    }

    fn any_state() -> impl Strategy<Value = TwoQubitState> {
        prop::array::uniform8(-1.0f64..1.0)
            .prop_filter("nonzero", |x| x.iter().map(|v| v * v).sum::<f64>() > 1e-3)
            .prop_map(|x| {
                let a = [0, 2, 4, 6].map(|k| Complex64::new(x[k], x[k + 1]));
                TwoQubitState::new(a, Normalization::Rescale).unwrap()
            })
    }

    fn assert_orthonormal(b: &[[ComplexScalar; 2]; 2]) {
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let ip = x[0].conj() * y[0] + x[1].conj() * y[1];
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-12, "{b:?}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        use Stratum::*;
        assert_eq!(
            classify(&TwoQubitState::bell(), TOL),
            set(&[MaximallyEntangled, WaveLess, ParticleLess, OnX0Axis, OnGreatDisc])
        );
        assert_eq!(classify(&st([H, 0.0, H, 0.0]), TOL), set(&[Separable, WaveOnly, ParticleLess, OnGreatDisc]));
        assert_eq!(classify(&st([0.6, 0.0, 0.0, 0.8]), TOL), set(&[WaveLess, OnX0Axis]));
        assert_eq!(
            classify(&TwoQubitState::basis(0), TOL),
            set(&[Separable, ParticleOnly, WaveLess, OnX0Axis])
        );
    }

    #[test]
    fn label_implications_hold() {
        use Stratum::*;
        let states = [
            TwoQubitState::bell(),
            st([H, 0.0, H, 0.0]),
            st([0.0, H, 0.0, -H]),
            TwoQubitState::basis(2),
            st([0.5, 0.5, 0.5, -0.5]),
        ];
        for s in &states {
            let l = classify(s, TOL);
            if l.contains(WaveOnly) {
                assert!(l.contains(Separable) && l.contains(ParticleLess));
            }
            if l.contains(ParticleOnly) {
                assert!(l.contains(Separable) && l.contains(WaveLess));
            }
            if l.contains(MaximallyEntangled) {
                assert!(l.contains(WaveLess) && l.contains(ParticleLess));
            }
        }
    }

    #[test]
    fn strata_display() {
        assert_eq!(classify(&st([0.6, 0.0, 0.0, 0.8]), TOL).to_string(), "WaveLess;OnX0Axis");
        assert_eq!(Strata::default().to_string(), "");
    }

    #[test]
    fn geometric_and_triad_strata_agree_on_planted_states() {
        let planted = [
            TwoQubitState::bell(),
            st([0.5, 0.5, 0.5, -0.5]),
            st([H, 0.0, H, 0.0]),
            st([0.6, 0.0, 0.0, 0.8]),
            st([0.6, 0.8, 0.0, 0.0]),
            st([0.0, 0.0, 0.6, 0.8]),
            st([0.5f64.sqrt(), 0.2f64.sqrt(), 0.2f64.sqrt(), 0.1f64.sqrt()]),
            TwoQubitState::product([Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)], [Complex64::new(0.3, 0.1), Complex64::new(0.2, -0.7)]).unwrap(),
        ];
        for s in &planted {
            assert_eq!(classify(s, TOL), geometric_strata(s, TOL), "{s:?}");
        }
    }

    #[test]
    fn schmidt_examples() {
        let f = schmidt_decompose(&TwoQubitState::bell());
        assert!((f.lambda1 - H).abs() < 1e-15 && (f.lambda2 - H).abs() < 1e-15);
        // degenerate spectrum: first canonical direction on the photon side
        assert_eq!(f.basis1[0], [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let f = schmidt_decompose(&TwoQubitState::basis(1));
        assert_eq!((f.lambda1, f.lambda2), (1.0, 0.0));
        let f = schmidt_decompose(&st([0.6, 0.0, 0.0, 0.8]));
        assert!((f.lambda1 - 0.8).abs() < 1e-15 && (f.lambda2 - 0.6).abs() < 1e-15);
        assert!((2.0 * f.lambda1 * f.lambda2 - 0.96).abs() < 1e-15);
    }

    #[test]
    fn schmidt_phases_are_deterministic() {
        let s = st([0.5, 0.5, 0.5, -0.5]);
        let f = schmidt_decompose(&s);
        for v in &f.basis2 {
            let lead = v.iter().find(|c| c.norm() > 1e-12).unwrap();
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
        assert_eq!(f, schmidt_decompose(&s));
    }

    #[test]
    fn shell_radius_examples() {
        assert_eq!(shell_radius(0.0).unwrap(), 1.0);
        assert_eq!(shell_radius(1.0).unwrap(), 0.0);
        assert!((shell_radius(0.96).unwrap() - 0.28).abs() < 1e-15);
        assert_eq!(shell_radius(1.0 + 1e-13).unwrap(), 0.0);
        assert!(matches!(shell_radius(1.1), Err(Error::ConcurrenceOutOfRange(_))));
        assert!(shell_radius(-0.01).is_err());
        assert!(shell_radius(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn schmidt_reconstructs_and_bridges_concurrence(s in any_state()) {
            let f = schmidt_decompose(&s);
            prop_assert!(f.lambda1 >= f.lambda2 && f.lambda2 >= 0.0);
            prop_assert!((f.lambda1.powi(2) + f.lambda2.powi(2) - 1.0).abs() <= 1e-12);
            prop_assert!((concurrence(&s) - 2.0 * f.lambda1 * f.lambda2).abs() <= 1e-12);
            assert_orthonormal(&f.basis1);
            assert_orthonormal(&f.basis2);
            let back = f.reconstruct();
            for (x, y) in back.iter().zip(s.amplitudes()) {
                prop_assert!((x - y).norm() <= 1e-10);
            }
        }

        #[test]
        fn entanglement_purity_bridge(s in any_state()) {
            let p = purity(&reduced_density_photon(&s));
            prop_assert!((concurrence(&s).powi(2) - 2.0 * (1.0 - p)).abs() <= 1e-10);
        }

        #[test]
        fn zero_coherence_schmidt_values_are_branch_norms(a in prop::array::uniform4(-1.0f64..1.0), t in 0.05f64..1.5) {
            // |0⟩(a₀,a₁) and |1⟩ orthogonal complement: π₁ = 0 by construction
            let u = [Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3])];
            prop_assume!(u[0].norm_sqr() + u[1].norm_sqr() > 1e-2);
            let w = complement(u);
            let (c, sn) = (t.cos(), t.sin());
            let s = TwoQubitState::new([u[0] * c, u[1] * c, w[0] * sn, w[1] * sn], Normalization::Rescale).unwrap();
            prop_assume!(visibility(&s) <= 1e-12);
            let f = schmidt_decompose(&s);
            let (n1, n2) = (s.p0().sqrt(), s.p1().sqrt());
            let (hi, lo) = (n1.max(n2), n1.min(n2));
            prop_assert!((f.lambda1 - hi).abs() <= 1e-12);
            prop_assert!((f.lambda2 - lo).abs() <= 1e-12);
        }

        #[test]
        fn geometric_strata_agree_off_boundaries(s in any_state()) {
            // random states sit well inside every stratum's complement
            prop_assert_eq!(classify(&s, TOL), geometric_strata(&s, TOL));
        }
    }
}
