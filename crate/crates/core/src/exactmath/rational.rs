use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, FieldSpec, ScalarRepr};
use crate::error::{Error, Result};

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn element(&self, _index: u64) -> BigRational {
        panic!("the rationals cannot be enumerated")
    }

    fn encode(&self, a: &BigRational) -> ScalarRepr {
        if a.is_integer() {
            if let Some(n) = a.numer().to_i64() {
                return ScalarRepr::Int(n);
            }
        }
        ScalarRepr::Text(a.to_string())
    }

    fn decode(&self, r: &ScalarRepr) -> Result<BigRational> {
        match r {
            ScalarRepr::Int(n) => Ok(self.from_int(*n)),
            ScalarRepr::Text(s) => parse_rational(s),
            ScalarRepr::Coeffs(cs) if cs.len() == 1 => Ok(self.from_int(cs[0])),
            other => Err(Error::InvalidInput(format!(
                "cannot read {other:?} as a rational"
            ))),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // BigRational::new reduces and normalizes the sign of the denominator
    let r = BigRational::new(num, den);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}
