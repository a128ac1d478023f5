//! Quaternification, stereographic projection onto `ℚ̃` and the inverse
//! projection onto `S⁴`.
//!
//! Two routes reach the same point of `S⁴`:
//!
//! * the projection route `inverse_stereo ∘ stereo_project ∘ quaternify`, and
//! * the expectation-value route [`coords_from_state`], which reads the
//!   coordinates off `p₀ − p₁`, `2π₁` and `2π₂` and has no singularity.
//!
//! The second is canonical; the first is the geometric cross-check.

use serde::{Deserialize, Serialize};

use crate::hypercomplex::{ExtendedQuaternion, Quaternion};
use crate::state::{DualityTriad, TwoQubitState};

/// `|q₂|` below which the projection returns the point at infinity.
pub const INFINITY_THRESHOLD: f64 = 1e-14;

/// `|ψ⟩_q = q₁|0⟩_q + q₂|1⟩_q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuaternionSpinor {
    pub q1: Quaternion,
    pub q2: Quaternion,
}

impl QuaternionSpinor {
    pub fn norm_sqr(&self) -> f64 {
        self.q1.norm_sqr() + self.q2.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct S4Point {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl S4Point {
    pub fn to_array(self) -> [f64; 5] {
        [self.x0, self.x1, self.x2, self.x3, self.x4]
    }

    pub fn from_array(x: [f64; 5]) -> Self {
        Self { x0: x[0], x1: x[1], x2: x[2], x3: x[3], x4: x[4] }
    }

    pub fn norm_sqr(self) -> f64 {
        self.to_array().iter().map(|x| x * x).sum()
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Restriction of an `S⁴` point to `(x₀, x₁, x₂)` inside the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub radius: f64,
}

impl From<S4Point> for BallPoint {
    fn from(p: S4Point) -> Self {
        Self {
            x0: p.x0,
            x1: p.x1,
            x2: p.x2,
            radius: (p.x0 * p.x0 + p.x1 * p.x1 + p.x2 * p.x2).sqrt(),
        }
    }
}

/// `q₁ = α₀ + α₁ê₂`, `q₂ = α₂ + α₃ê₂`.
pub fn quaternify(s: &TwoQubitState) -> QuaternionSpinor {
    let a = s.amplitudes();
    QuaternionSpinor {
        q1: Quaternion::new(a[0], a[1]),
        q2: Quaternion::new(a[2], a[3]),
    }
}

/// `Q = q₁q₂⁻¹`, or `∞` when `|q₂| < 1e-14`.
///
/// For a finite result the complex-pair parts are `(π₁, π₂)/|q₂|²`.
pub fn stereo_project(sp: &QuaternionSpinor) -> ExtendedQuaternion {
    if sp.q2.norm() < INFINITY_THRESHOLD {
        return ExtendedQuaternion::Infinity;
    }
    match sp.q2.inverse() {
        Ok(inv) => ExtendedQuaternion::Finite(sp.q1 * inv),
        Err(_) => ExtendedQuaternion::Infinity,
    }
}

/// Conformal map `ℚ̃ → S⁴`: `∞` goes to the north pole, and a finite `Q` with
/// real components `(Q₀,Q₁,Q₂,Q₃)` goes to
/// `((|Q|²−1)/(|Q|²+1), 2Q₀/(|Q|²+1), …, 2Q₃/(|Q|²+1))`.
pub fn inverse_stereo(q: ExtendedQuaternion) -> S4Point {
    match q {
        ExtendedQuaternion::Infinity => S4Point::from_array([1.0, 0.0, 0.0, 0.0, 0.0]),
        ExtendedQuaternion::Finite(q) => {
            let n2 = q.norm_sqr();
            let denom = n2 + 1.0;
            let [a, b, c, d] = q.to_reals().map(|x| 2.0 * x / denom);
            S4Point::from_array([(n2 - 1.0) / denom, a, b, c, d])
        }
    }
}

/// Projection route `inverse_stereo ∘ stereo_project ∘ quaternify`.
pub fn projected_coords(s: &TwoQubitState) -> S4Point {
    inverse_stereo(stereo_project(&quaternify(s)))
}

/// Expectation-value route:
/// `x₀ = |q₁|²−|q₂|²`, `x₁ + x₂ê₁ = 2π₁`, `x₃ + x₄ê₁ = 2π₂`.
pub fn coords_from_state(s: &TwoQubitState) -> S4Point {
    let pi1 = s.coherence() * 2.0;
    let pi2 = s.entanglement_amplitude() * 2.0;
    S4Point::from_array([s.p0() - s.p1(), pi1.re, pi1.im, pi2.re, pi2.im])
}

/// `D = |x₀|`, `V = √(x₁²+x₂²)`, `C = √(x₃²+x₄²)`.
pub fn triad_from_coords(p: &S4Point) -> DualityTriad {
    DualityTriad {
        visibility: p.x1.hypot(p.x2),
        distinguishability: p.x0.abs(),
        concurrence: p.x3.hypot(p.x4),
    }
}

pub fn ball_point(s: &TwoQubitState) -> BallPoint {
    coords_from_state(s).into()
}
