use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;

/// Arbitrary precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer not above the value; panics outside `i64`.
    pub fn floor(&self) -> i64 {
        use num_traits::ToPrimitive;
        self.0.floor().to_integer().to_i64().expect("floor overflows i64")
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// Exact `e`-th root, when it exists in the rationals.
    pub fn exact_root(&self, e: u32) -> Option<Rational> {
        if e == 0 {
            return None;
        }
        if self.is_negative() && e.is_multiple_of(2) {
            return None;
        }
        let n = self.numer().abs().nth_root(e);
        let d = self.denom().nth_root(e);
        let mut cand = Rational::from_big(n, d);
        if self.is_negative() {
            cand = cand.neg();
        }
        if cand.pow(e) == *self {
            Some(cand)
        } else {
            None
        }
    }

    /// Least common multiple of the denominators of `values`.
    pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
        values
            .into_iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::from_big(n, d))
        } else {
            let n: BigInt = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
            Ok(Rational::from_bigint(n))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!other.0.is_zero(), "division by zero");
        Rational(&self.0 / &other.0)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn parameter(_index: usize) -> Option<Self> {
        None
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn write(&self, f: &mut dyn fmt::Write, _params: &[String]) -> fmt::Result {
        write!(f, "{self}")
    }
    fn is_atomic(&self) -> bool {
        true
    }
}
