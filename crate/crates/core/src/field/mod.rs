//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals and rational functions over the
//! rationals in a finite list of named parameters. Parameter names live
//! outside the values; printing takes them as an argument.

mod mpoly;
mod rational;
mod ratfunc;

use std::fmt;
use std::hash::Hash;

pub use mpoly::MPoly;
pub use ratfunc::RatFunc;
pub use rational::Rational;

/// An exact field of characteristic zero.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// The `index`-th parameter, if the field has parameters.
    fn parameter(index: usize) -> Option<Self>;
    /// The value as a rational number, when it is one.
    fn to_rational(&self) -> Option<Rational>;
    /// Writes the value using the given parameter names.
    fn write(&self, f: &mut dyn fmt::Write, params: &[String]) -> fmt::Result;
    /// Whether the printed form is a single atom (no top-level sum).
    fn is_atomic(&self) -> bool;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn to_text(&self, params: &[String]) -> String {
        let mut s = String::new();
        self.write(&mut s, params).expect("writing to a String cannot fail");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms<F: Field>(a: F, b: F, c: F) {
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.sub(&a), F::zero());
        if !b.is_zero() {
            assert_eq!(a.div(&b).mul(&b), a);
        }
    }

    #[test]
    fn rational_axioms() {
        axioms(
            Rational::new(3, 4),
            Rational::new(-5, 7),
            Rational::from_i64(2),
        );
    }

    #[test]
    fn ratfunc_axioms() {
        let a = RatFunc::parameter(0).unwrap();
        let one = RatFunc::one();
        let b = a.sub(&one).inv();
        let c = a.mul(&a).add(&RatFunc::from_i64(3));
        axioms(a, b, c);
    }
}
