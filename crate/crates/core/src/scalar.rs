//! Coefficient fields.
//!
//! Everything in the crate is generic over [`Scalar`]. Two fields are
//! provided: double-precision complex numbers ([`C64`]) for numerics and
//! exact Gaussian rationals ([`GaussRat`]) for identity checks that should
//! hold with no tolerance at all.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;

/// Exact complex scalar with arbitrary-precision rational parts.
pub type GaussRat = Complex<BigRational>;

/// A complex field closed under conjugation.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn conj(&self) -> Self;
    /// `num / den` as a real element of the field.
    fn ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Lossy conversion, used for reporting and tolerance checks.
    fn to_c64(&self) -> C64;
    /// Multiplicative inverse. `None` for zero.
    fn try_inv(&self) -> Option<Self>;
    /// `sqrt(num/den)` if it lies in the field. Exact fields return `None`
    /// for irrational roots.
    fn sqrt_ratio(num: i64, den: i64) -> Option<Self>;
    /// Real element from a finite float. Exact fields convert the binary
    /// value exactly.
    fn from_f64(x: f64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::ratio(v, 1)
    }

    /// `|z|²` as a float.
    fn norm_sqr_f64(&self) -> f64 {
        self.to_c64().norm_sqr()
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn ratio(num: i64, den: i64) -> Self {
        Complex::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn try_inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex::inv(self))
        }
    }
    fn sqrt_ratio(num: i64, den: i64) -> Option<Self> {
        let v = num as f64 / den as f64;
        (v >= 0.0).then(|| Complex::new(v.sqrt(), 0.0))
    }
    fn from_f64(x: f64) -> Self {
        Complex::new(x, 0.0)
    }
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn to_c64(&self) -> C64 {
        Complex::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn try_inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        Some(Complex::new(self.re.clone() / n.clone(), -self.im.clone() / n))
    }
    fn sqrt_ratio(num: i64, den: i64) -> Option<Self> {
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        if r.is_negative() {
            return None;
        }
        let n = r.numer().sqrt();
        let d = r.denom().sqrt();
        (&n * &n == *r.numer() && &d * &d == *r.denom())
            .then(|| Complex::new(BigRational::new(n, d), BigRational::zero()))
    }
    fn from_f64(x: f64) -> Self {
        let r = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        Complex::new(r, BigRational::zero())
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if d.is_finite() && n.is_finite() => n / d,
        // huge numerators/denominators: scale down before dividing
        _ => {
            let bits = r.numer().bits().max(r.denom().bits()) as i64 - 60;
            let shift = bits.max(0) as usize;
            let n = (r.numer().abs() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            if r.is_negative() {
                -n / d
            } else {
                n / d
            }
        }
    }
}

/// Builds a Gaussian rational `(re_num/den) + i (im_num/den)`.
pub fn gauss(re_num: i64, im_num: i64, den: i64) -> GaussRat {
    Complex::new(
        BigRational::new(BigInt::from(re_num), BigInt::from(den)),
        BigRational::new(BigInt::from(im_num), BigInt::from(den)),
    )
}

/// Builds a Gaussian-rational scalar from a real rational.
pub fn rational(num: i64, den: i64) -> GaussRat {
    <GaussRat as Scalar>::ratio(num, den)
}

/// Real scalar from a float. Only meaningful for [`C64`].
pub fn real(x: f64) -> C64 {
    Complex::new(x, 0.0)
}
