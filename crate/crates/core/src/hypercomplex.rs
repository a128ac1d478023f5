//! Complex and quaternion arithmetic.
//!
//! A quaternion is stored as a complex pair `q = z₁ + z₂ê₂` with `ê₁` playing
//! the role of the complex unit. Since `ê₂ z = z̄ ê₂` for complex `z`,
//!
//! ```text
//! (a₁ + a₂ê₂)(b₁ + b₂ê₂) = (a₁b₁ − a₂b̄₂) + (a₁b₂ + a₂b̄₁)ê₂
//! ```
//!
//! The real 4-tuple view `x₀ + x₁ê₁ + x₂ê₂ + x₃ê₃` is derived from the pair
//! through `z₁ = x₀ + x₁ê₁`, `z₂ = x₂ + x₃ê₁`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Complex amplitude type used throughout the crate.
pub type ComplexScalar = Complex64;

/// Default tolerance for [`Quaternion::approx_eq`].
pub const DEFAULT_EQ_EPS: f64 = 1e-12;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub z1: ComplexScalar,
    pub z2: ComplexScalar,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(C0, C0);
    pub const ONE: Self = Self::new(C1, C0);
    pub const E1: Self = Self::new(CI, C0);
    pub const E2: Self = Self::new(C0, C1);
    pub const E3: Self = Self::new(C0, CI);

    pub const fn new(z1: ComplexScalar, z2: ComplexScalar) -> Self {
        Self { z1, z2 }
    }

    /// Builds `x₀ + x₁ê₁ + x₂ê₂ + x₃ê₃`.
    pub const fn from_reals(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self::new(Complex64::new(x0, x1), Complex64::new(x2, x3))
    }

    pub const fn from_real(x: f64) -> Self {
        Self::from_reals(x, 0.0, 0.0, 0.0)
    }

    /// Embeds a complex number as `z + 0ê₂`.
    pub const fn from_complex(z: ComplexScalar) -> Self {
        Self::new(z, C0)
    }

    /// Real components `(x₀, x₁, x₂, x₃)` in the `(ê₀, ê₁, ê₂, ê₃)` basis.
    pub fn to_reals(self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    /// Negates the `ê₁, ê₂, ê₃` components: `conj(z₁ + z₂ê₂) = z̄₁ − z₂ê₂`.
    pub fn conj(self) -> Self {
        Self::new(self.z1.conj(), -self.z2)
    }

    pub fn norm_sqr(self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `conj(q) / |q|²`. The zero quaternion is a domain error; mapping it to
    /// the point at infinity is left to the projection layer.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.z1 * k, self.z2 * k)
    }

    pub fn is_finite(self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }

    /// Componentwise comparison with an absolute tolerance.
    pub fn approx_eq(self, other: Self, eps: f64) -> bool {
        self.to_reals()
            .iter()
            .zip(other.to_reals())
            .all(|(a, b)| (a - b).abs() <= eps)
    }

    /// Bitwise equality of all four components (distinguishes `0.0` from `-0.0`).
    pub fn bit_eq(self, other: Self) -> bool {
        self.to_reals()
            .iter()
            .zip(other.to_reals())
            .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Mul for Quaternion {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a1, a2) = (self.z1, self.z2);
        let (b1, b2) = (rhs.z1, rhs.z2);
        Self::new(a1 * b1 - a2 * b2.conj(), a1 * b2 + a2 * b1.conj())
    }
}

impl Add for Quaternion {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl Sub for Quaternion {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Neg for Quaternion {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.z1, -self.z2)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2, x3] = self.to_reals();
        write!(f, "{x0} {x1:+}e1 {x2:+}e2 {x3:+}e3")
    }
}

/// A point of `ℚ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedQuaternion {
    Finite(Quaternion),
    Infinity,
}

impl ExtendedQuaternion {
    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn finite(self) -> Option<Quaternion> {
        match self {
            Self::Finite(q) => Some(q),
            Self::Infinity => None,
        }
    }

    /// `|Q|`, with `∞` for the point at infinity.
    pub fn norm(self) -> f64 {
        match self {
            Self::Finite(q) => q.norm(),
            Self::Infinity => f64::INFINITY,
        }
    }

    /// Tolerance equality; `Infinity` only matches itself.
    pub fn approx_eq(self, other: Self, eps: f64) -> bool {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.approx_eq(b, eps),
            (Self::Infinity, Self::Infinity) => true,
            _ => false,
        }
    }
}

impl From<Quaternion> for ExtendedQuaternion {
    fn from(q: Quaternion) -> Self {
        Self::Finite(q)
    }
}

impl fmt::Display for ExtendedQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(q) => q.fmt(f),
            Self::Infinity => f.write_str("inf"),
        }
    }
}
