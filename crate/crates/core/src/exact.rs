//! Exact arithmetic in the real quadratic field ℚ(√3).
//!
//! All coordinates of the K₃,₈ construction, the 2π/3 rotation and every
//! determinant derived from them live in this field, so no predicate in the
//! crate ever needs an approximation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::scalar::{rational_to_f64, ExactScalar, Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

/// `rat + rt3·√3` with both coefficients rational.
///
/// `BigRational` keeps itself in lowest terms with a positive denominator,
/// and √3 is irrational, so the derived structural equality is value
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QScalar {
    pub rat: BigRational,
    pub rt3: BigRational,
}

impl QScalar {
    pub fn new(rat: BigRational, rt3: BigRational) -> Self {
        QScalar { rat, rt3 }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn rational(r: BigRational) -> Self {
        QScalar::new(r, BigRational::zero())
    }

    /// `num/den` as a field element; panics on `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        QScalar::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn sqrt3() -> Self {
        QScalar::new(BigRational::zero(), BigRational::one())
    }

    /// `a + b·√3` from integer ratios, handy in tests and fixtures.
    pub fn from_parts(a: (i64, i64), b: (i64, i64)) -> Self {
        QScalar::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
        )
    }

    pub fn is_rational(&self) -> bool {
        self.rt3.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QScalar::new(self.rat.clone(), -self.rt3.clone())
    }

    /// Field norm `rat² − 3·rt3²`; zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(3.into()) * &self.rt3 * &self.rt3
    }

    /// Exact sign, by case split on the coefficient signs.
    pub fn signum(&self) -> Sign {
        let sa = rat_sign(&self.rat);
        let sb = rat_sign(&self.rt3);
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (a, b) if a == b => a,
            // Opposite signs: the term with the larger square wins.
            (a, _) => match rat_sign(&self.norm()) {
                Sign::Positive => a,
                Sign::Negative => a.flip(),
                Sign::Zero => unreachable!("√3 is irrational"),
            },
        }
    }

    pub fn try_div(&self, rhs: &QScalar) -> Result<QScalar, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = rhs.norm();
        let num = self * &rhs.conjugate();
        Ok(QScalar::new(num.rat / &n, num.rt3 / n))
    }

    pub fn recip(&self) -> Result<QScalar, ArithError> {
        QScalar::one().try_div(self)
    }

    /// `floor(self)` as an integer.
    pub fn floor(&self) -> BigInt {
        let mut k = self.floor_estimate();
        loop {
            let kq = QScalar::rational(BigRational::from_integer(k.clone()));
            if (self - &kq).signum() == Sign::Negative {
                k -= 1;
                continue;
            }
            let k1 = QScalar::rational(BigRational::from_integer(&k + 1));
            if (self - &k1).signum() != Sign::Negative {
                k += 1;
                continue;
            }
            return k;
        }
    }

    fn floor_estimate(&self) -> BigInt {
        // rt3·√3 = ±sqrt(3·p²/q²); approximate with an integer square root at
        // a scale that makes the estimate off by at most a few units.
        let rat_floor = self.rat.floor().to_integer();
        if self.rt3.is_zero() {
            return rat_floor;
        }
        let p = self.rt3.numer();
        let q = self.rt3.denom();
        let root: BigInt = Roots::sqrt(&(BigInt::from(3) * p * p)); // floor(|p|·√3)
        let approx = if p.is_negative() {
            -Integer::div_floor(&(root + 1u32), q)
        } else {
            Integer::div_floor(&root, q)
        };
        rat_floor + approx
    }

    /// Decimal rendering with `places` fractional digits, rounded half to even.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = QScalar::rational(BigRational::from_integer(BigInt::from(10).pow(places)));
        let scaled = self * &scale;
        let mut k = scaled.floor();
        let half = QScalar::ratio(1, 2);
        let frac = &scaled - &QScalar::rational(BigRational::from_integer(k.clone()));
        match (&frac - &half).signum() {
            Sign::Positive => k += 1,
            Sign::Zero if k.is_odd() => k += 1,
            _ => {}
        }
        format_fixed(&k, places)
    }
}

fn format_fixed(k: &BigInt, places: usize) -> String {
    let neg = k.is_negative();
    let digits = k.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn rat_sign(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Parses `"p/q"`, an integer `"n"`, or a finite decimal `"-0.0125"` into an
/// exact rational. Decimals are read over powers of ten, never via floats.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let bad = || ArithError::BadRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let all = format!(
            "{}{}",
            if int_digits.is_empty() {
                "0"
            } else {
                int_digits
            },
            frac
        );
        let mut num = BigInt::from_str(&all).map_err(|_| bad())?;
        if neg {
            num = -num;
        }
        let den = BigInt::from(10).pow(frac.len());
        return Ok(BigRational::new(num, den));
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Canonical text of a rational: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.rt3.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.rat)),
            (true, false) => write!(f, "{}·√3", format_rational(&self.rt3)),
            (false, false) => {
                if self.rt3.is_negative() {
                    write!(
                        f,
                        "{} - {}·√3",
                        format_rational(&self.rat),
                        format_rational(&-self.rt3.clone())
                    )
                } else {
                    write!(
                        f,
                        "{} + {}·√3",
                        format_rational(&self.rat),
                        format_rational(&self.rt3)
                    )
                }
            }
        }
    }
}

impl PartialOrd for QScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl From<BigRational> for QScalar {
    fn from(r: BigRational) -> Self {
        QScalar::rational(r)
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rt3.is_zero()
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::from_int(1)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        QScalar::new(&self.rat + &rhs.rat, &self.rt3 + &rhs.rt3)
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        QScalar::new(&self.rat - &rhs.rat, &self.rt3 - &rhs.rt3)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let three = BigRational::from_integer(3.into());
        QScalar::new(
            &self.rat * &rhs.rat + three * &self.rt3 * &rhs.rt3,
            &self.rat * &rhs.rt3 + &self.rt3 * &rhs.rat,
        )
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::new(-self.rat.clone(), -self.rt3.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

/// Panics on a zero divisor; use [`QScalar::try_div`] for the checked form.
impl Div<QScalar> for QScalar {
    type Output = QScalar;
    fn div(self, rhs: QScalar) -> QScalar {
        self.try_div(&rhs).expect("division by zero in ℚ(√3)")
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        self.rat += &rhs.rat;
        self.rt3 += &rhs.rt3;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        self.rat -= &rhs.rat;
        self.rt3 -= &rhs.rt3;
    }
}

impl Scalar for QScalar {
    fn sign(&self) -> Sign {
        self.signum()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        self.try_div(rhs).ok()
    }

    fn from_rational(r: &BigRational) -> Self {
        QScalar::rational(r.clone())
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rat) + rational_to_f64(&self.rt3) * 3f64.sqrt()
    }

    fn render_decimal(&self, places: usize) -> String {
        self.to_decimal(places)
    }
}

impl ExactScalar for QScalar {}
