//! Scalar abstraction shared by the 2D and 3D geometry kernels.
//!
//! Every predicate in this crate reduces to the sign of a polynomial in the
//! coordinates. The kernels are written against [`Scalar`], so the same code
//! runs over [`QScalar`](crate::exact::QScalar), [`BigRational`] and `f64`.
//! Only the exact fields implement [`ExactScalar`]; the scene-level modules
//! (contact classification, one-sidedness, the corner-to-side transform)
//! require it because they compare points for equality.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sign of a scalar value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Field operations plus a sign oracle.
///
/// For exact fields `sign` is exact. For `f64` it is the naive comparison
/// with zero and carries no robustness guarantee.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn sign(&self) -> Sign;

    /// `None` when `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// Fixed-point decimal text with `places` fractional digits.
    fn render_decimal(&self, places: usize) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn is_positive_strict(&self) -> bool {
        self.sign() == Sign::Positive
    }

    fn is_negative_strict(&self) -> bool {
        self.sign() == Sign::Negative
    }

    fn abs_value(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Sign of `Σ ±aᵢ·bᵢ`, where `true` negates a term. Fields can override
    /// this with a cheaper exact evaluation.
    fn sum_of_products_sign(terms: &[(&Self, &Self, bool)]) -> Sign {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(a, b, neg)| {
                let t = a.clone() * b.clone();
                if neg {
                    acc - t
                } else {
                    acc + t
                }
            })
            .sign()
    }

    /// Division whose divisor is known to be nonzero by a preceding sign test.
    fn div_nonzero(&self, rhs: &Self) -> Self {
        self.checked_div(rhs)
            .expect("divisor certified nonzero by an exact sign test")
    }
}

/// Marker for fields where `==` is exact value equality and ordering is total.
pub trait ExactScalar: Scalar + Eq + Hash + Ord {}

impl Scalar for BigRational {
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn render_decimal(&self, places: usize) -> String {
        crate::exact::QScalar::rational(self.clone()).to_decimal(places)
    }

    // Cross-multiplies over the product of the (positive) denominators,
    // skipping the gcd reductions of `Ratio` arithmetic.
    fn sum_of_products_sign(terms: &[(&Self, &Self, bool)]) -> Sign {
        let dens: Vec<BigInt> = terms
            .iter()
            .map(|(a, b, _)| a.denom() * b.denom())
            .collect();
        let common: BigInt = dens.iter().product();
        let total: BigInt = terms
            .iter()
            .zip(&dens)
            .map(|(&(a, b, neg), d)| {
                let t = a.numer() * b.numer() * (&common / d);
                if neg {
                    -t
                } else {
                    t
                }
            })
            .sum();
        BigRational::from_integer(total).sign()
    }
}

impl ExactScalar for BigRational {}

impl Scalar for f64 {
    fn sign(&self) -> Sign {
        if *self > 0.0 {
            Sign::Positive
        } else if *self < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render_decimal(&self, places: usize) -> String {
        format!("{self:.places$}")
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Huge numerators/denominators: shift both down to a common scale first.
    let nbits = r.numer().bits() as i64;
    let dbits = r.denom().bits() as i64;
    let shift_n = (nbits - 60).max(0) as usize;
    let shift_d = (dbits - 60).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}
