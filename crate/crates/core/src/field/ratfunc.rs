use std::fmt;

use super::{Field, MPoly, Rational};

/// Rational function over the rationals in the parameters `a1, a2, ...`.
///
/// Always stored reduced: numerator and denominator are coprime and the
/// denominator has leading coefficient one. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = MPoly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = d.leading_coeff().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let s = lc.inv();
            n = n.scale(&s);
            d = d.scale(&s);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: MPoly::one() }
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc { num: MPoly::zero(), den: MPoly::one() }
    }
    fn one() -> Self {
        RatFunc { num: MPoly::one(), den: MPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && other.den.is_constant() {
            // both polynomials; product already reduced
            return RatFunc { num: self.num.mul(&other.num), den: MPoly::one() };
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc { num: MPoly::constant(q.clone()), den: MPoly::one() }
    }
    fn parameter(index: usize) -> Option<Self> {
        Some(RatFunc { num: MPoly::var(index), den: MPoly::one() })
    }
    fn to_rational(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }
    fn write(&self, f: &mut dyn fmt::Write, params: &[String]) -> fmt::Result {
        let den_one = self.den.constant_value().is_some_and(|c| c.is_one());
        let num_atomic = self.num.terms().len() <= 1;
        if den_one {
            return self.num.write(f, params);
        }
        if num_atomic {
            self.num.write(f, params)?;
        } else {
            write!(f, "(")?;
            self.num.write(f, params)?;
            write!(f, ")")?;
        }
        write!(f, "/(")?;
        self.den.write(f, params)?;
        write!(f, ")")
    }
    fn is_atomic(&self) -> bool {
        self.num.terms().len() <= 1 && self.den.constant_value().is_some_and(|c| c.is_one())
    }
}
