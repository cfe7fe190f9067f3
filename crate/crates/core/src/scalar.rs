//! Scalar abstraction for the two arithmetic backends.
//!
//! Structural identities run over `Rat` (decisions exact); stress suites run
//! over `f64`. Code generic over [`Scalar`] must make rank/pivot decisions
//! through `is_negligible`, never through `== zero`, so the float backend
//! tolerates roundoff while the rational backend stays exact.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rat;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Exact or closest-float image of a rational.
    fn from_rat(r: &Rat) -> Self;
    /// Treated as zero for rank and pivot decisions.
    fn is_negligible(&self) -> bool;
    /// Pivot weight and deviation reporting.
    fn abs_f64(&self) -> f64;
    /// Sign of the (real part of the) value: -1, 0, or 1.
    fn sign(&self) -> i8;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn abs_f64(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn sign(&self) -> i8 {
        if *self == 0.0 {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
}

/// Complex scalars over either arithmetic backend, with access to real and
/// imaginary parts in the matching real backend.
pub trait ComplexScalar: Scalar {
    type Real: Scalar;
    fn i() -> Self;
    fn conj_c(&self) -> Self;
    fn re_part(&self) -> Self::Real;
    fn im_part(&self) -> Self::Real;
    fn from_re(r: Self::Real) -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
}

impl Scalar for Complex<Rat> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(<Rat as Scalar>::from_i64(n), Zero::zero())
    }
    fn from_rat(r: &Rat) -> Self {
        Complex::new(r.clone(), Zero::zero())
    }
    fn is_negligible(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs_f64(&self) -> f64 {
        let re = <Rat as Scalar>::abs_f64(&self.re);
        let im = <Rat as Scalar>::abs_f64(&self.im);
        re.hypot(im)
    }
    fn sign(&self) -> i8 {
        <Rat as Scalar>::sign(&self.re)
    }
}

impl ComplexScalar for Complex<Rat> {
    type Real = Rat;
    fn i() -> Self {
        Complex::new(Zero::zero(), num_traits::One::one())
    }
    fn conj_c(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn re_part(&self) -> Rat {
        self.re.clone()
    }
    fn im_part(&self) -> Rat {
        self.im.clone()
    }
    fn from_re(r: Rat) -> Self {
        Complex::new(r, Zero::zero())
    }
    fn from_parts(re: Rat, im: Rat) -> Self {
        Complex::new(re, im)
    }
}

impl Scalar for Complex<f64> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn is_negligible(&self) -> bool {
        self.norm() < 1e-9
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn sign(&self) -> i8 {
        <f64 as Scalar>::sign(&self.re)
    }
}

impl ComplexScalar for Complex<f64> {
    type Real = f64;
    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }
    fn conj_c(&self) -> Self {
        self.conj()
    }
    fn re_part(&self) -> f64 {
        self.re
    }
    fn im_part(&self) -> f64 {
        self.im
    }
    fn from_re(r: f64) -> Self {
        Complex::new(r, 0.0)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex::new(re, im)
    }
}
