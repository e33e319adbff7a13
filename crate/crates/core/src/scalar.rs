//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All of the combinatorics (Gaussian binomials, twisted multinomials, MPS
//! sweeps, word-wise expansion) only needs ring operations, so it is written
//! once against [`Scalar`]. Floating-point complex numbers are the working
//! type for general roots of unity; the integer and rational impls give an
//! exact path whenever every phase is real (the qubit case, `q = ±1`).

use std::f64::consts::TAU;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

/// A commutative ring element usable as an amplitude, weight or deformation
/// parameter.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Absolute value (complex modulus) as `f64`, used for tolerance checks.
    fn modulus(&self) -> f64;

    /// `exp(2πi·exponent/order)` if it is representable in this type.
    ///
    /// Real types only represent `±1`.
    fn root_of_unity(order: usize, exponent: usize) -> Option<Self>;

    /// True when arithmetic in this type is exact (comparisons use `==`).
    fn is_exact() -> bool;
}

/// A [`Scalar`] that also supports division.
pub trait FieldScalar: Scalar + Div<Output = Self> {}

impl<T: Scalar + Div<Output = T>> FieldScalar for T {}

fn real_root_of_unity(order: usize, exponent: usize) -> Option<i64> {
    if order == 0 {
        return None;
    }
    let e = exponent % order;
    if e == 0 {
        Some(1)
    } else if 2 * e == order {
        Some(-1)
    } else {
        None
    }
}

macro_rules! impl_float {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn modulus(&self) -> f64 {
                self.abs() as f64
            }
            fn root_of_unity(order: usize, exponent: usize) -> Option<Self> {
                real_root_of_unity(order, exponent).map(|v| v as $t)
            }
            fn is_exact() -> bool {
                false
            }
        }

        impl Scalar for Complex<$t> {
            fn from_i64(v: i64) -> Self {
                Complex::new(v as $t, 0.0)
            }
            fn modulus(&self) -> f64 {
                (self.re as f64).hypot(self.im as f64)
            }
            fn root_of_unity(order: usize, exponent: usize) -> Option<Self> {
                if order == 0 {
                    return None;
                }
                // exact values at the real and imaginary axes
                let e = exponent % order;
                if let Some(v) = real_root_of_unity(order, e) {
                    return Some(Complex::new(v as $t, 0.0));
                }
                if 4 * e == order {
                    return Some(Complex::new(0.0, 1.0));
                }
                if 4 * e == 3 * order {
                    return Some(Complex::new(0.0, -1.0));
                }
                let theta = TAU * e as f64 / order as f64;
                Some(Complex::new(theta.cos() as $t, theta.sin() as $t))
            }
            fn is_exact() -> bool {
                false
            }
        }
    };
}

impl_float!(f32);
impl_float!(f64);

macro_rules! impl_int {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn modulus(&self) -> f64 {
                (*self as f64).abs()
            }
            fn root_of_unity(order: usize, exponent: usize) -> Option<Self> {
                real_root_of_unity(order, exponent).map(|v| v as $t)
            }
            fn is_exact() -> bool {
                true
            }
        }
    };
}

impl_int!(i64);
impl_int!(i128);

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn modulus(&self) -> f64 {
        self.to_f64().map_or(f64::INFINITY, f64::abs)
    }
    fn root_of_unity(order: usize, exponent: usize) -> Option<Self> {
        real_root_of_unity(order, exponent).map(BigInt::from)
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Rational64 {
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }
    fn modulus(&self) -> f64 {
        self.to_f64().map_or(f64::INFINITY, f64::abs)
    }
    fn root_of_unity(order: usize, exponent: usize) -> Option<Self> {
        real_root_of_unity(order, exponent).map(Rational64::from_integer)
    }
    fn is_exact() -> bool {
        true
    }
}

/// `|a − b| ≤ tol`, exact equality for exact types.
pub fn abs_close<T: Scalar>(a: &T, b: &T, tol: f64) -> bool {
    if T::is_exact() {
        a == b
    } else {
        (a.clone() - b.clone()).modulus() <= tol
    }
}

/// Error of `a` against `b` measured relative to `max(1, |a|, |b|)`.
///
/// The unit floor keeps the measure meaningful for amplitudes that vanish.
pub fn rel_error<T: Scalar>(a: &T, b: &T) -> f64 {
    let scale = a.modulus().max(b.modulus()).max(1.0);
    (a.clone() - b.clone()).modulus() / scale
}

/// `base^exp` by repeated squaring.
pub fn powu<T: Scalar>(base: &T, exp: usize) -> T {
    num_traits::pow(base.clone(), exp)
}
