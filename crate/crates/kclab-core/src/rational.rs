//! Exact nonnegative rational lengths.

use core::fmt;
use core::ops::{Add, AddAssign, Mul};
use core::str::FromStr;

use alloc::string::String;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// A nonnegative rational number kept in lowest terms.
///
/// Used for every edge length, distance, radius and tolerance in the crate.
/// Equality and ordering are exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RationalLength(Ratio<BigUint>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl RationalLength {
    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    pub fn from_integer(value: u64) -> Self {
        Self(Ratio::from_integer(BigUint::from(value)))
    }

    /// `numerator / denominator`, reduced. Returns `None` for a zero denominator.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Option<Self> {
        if denominator.is_zero() {
            None
        } else {
            Some(Self(Ratio::new(numerator, denominator)))
        }
    }

    /// Convenience constructor for small literals; panics on a zero denominator.
    pub fn ratio(numerator: u64, denominator: u64) -> Self {
        Self::new(BigUint::from(numerator), BigUint::from(denominator))
            .expect("zero denominator")
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if other > self {
            None
        } else {
            Some(Self(&self.0 - &other.0))
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigUint {
        self.0.numer() / self.0.denom()
    }

    /// `self * scale` rounded down, i.e. the largest integer numerator over
    /// `scale` that does not exceed `self`.
    pub fn floor_scaled(&self, scale: &BigUint) -> BigUint {
        (self.0.numer() * scale) / self.0.denom()
    }

    /// Exact value of `numerator / scale`.
    pub fn from_scaled(numerator: &BigUint, scale: &BigUint) -> Self {
        Self(Ratio::new(numerator.clone(), scale.clone()))
    }

    /// Numerator of `self` over the given scale, if `scale` is a multiple of the
    /// reduced denominator.
    pub fn scaled_by(&self, scale: &BigUint) -> Option<BigUint> {
        let (quotient, rest) = scale.div_rem(self.0.denom());
        rest.is_zero().then(|| self.0.numer() * quotient)
    }

    pub fn half(&self) -> Self {
        Self(&self.0 / Ratio::from_integer(BigUint::from(2u32)))
    }

    /// Lossy conversion, only for human-facing summaries.
    pub fn approx_f64(&self) -> f64 {
        fn to_f64(value: &BigUint) -> f64 {
            value
                .iter_u64_digits()
                .rev()
                .fold(0.0, |acc, digit| acc * 18_446_744_073_709_551_616.0 + digit as f64)
        }
        to_f64(self.0.numer()) / to_f64(self.0.denom())
    }
}

impl fmt::Display for RationalLength {
    /// Always `num/den`, also for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for RationalLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalLength {
    type Err = ParseRationalError;

    /// Accepts `p/q`, a plain integer `p`, or a decimal `p.ddd`; decimals are
    /// converted exactly (`0.1` is `1/10`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let invalid = || ParseRationalError::Invalid(s.into());
        let digits = |part: &str| -> Result<BigUint, ParseRationalError> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            BigUint::parse_bytes(part.as_bytes(), 10).ok_or_else(invalid)
        };
        if let Some((num, den)) = s.split_once('/') {
            let num = digits(num)?;
            let den = digits(den)?;
            return Self::new(num, den).ok_or_else(|| ParseRationalError::ZeroDenominator(s.into()));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            let whole = if whole.is_empty() { BigUint::zero() } else { digits(whole)? };
            let frac_value = digits(frac)?;
            let scale = num_traits::pow(BigUint::from(10u32), frac.len());
            let num = whole * &scale + frac_value;
            return Ok(Self(Ratio::new(num, scale)));
        }
        Ok(Self(Ratio::from_integer(digits(s)?)))
    }
}

impl Add for RationalLength {
    type Output = RationalLength;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a RationalLength> for &'a RationalLength {
    type Output = RationalLength;
    fn add(self, rhs: &'a RationalLength) -> RationalLength {
        RationalLength(&self.0 + &rhs.0)
    }
}

impl AddAssign<&RationalLength> for RationalLength {
    fn add_assign(&mut self, rhs: &RationalLength) {
        self.0 += &rhs.0;
    }
}

impl Mul for RationalLength {
    type Output = RationalLength;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a RationalLength> for &'a RationalLength {
    type Output = RationalLength;
    fn mul(self, rhs: &'a RationalLength) -> RationalLength {
        RationalLength(&self.0 * &rhs.0)
    }
}

impl From<u64> for RationalLength {
    fn from(value: u64) -> Self {
        Self::from_integer(value)
    }
}

/// Least common multiple of the denominators, `1` for an empty input.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a RationalLength>) -> BigUint {
    values
        .into_iter()
        .fold(BigUint::one(), |acc, value| acc.lcm(value.denom()))
}
