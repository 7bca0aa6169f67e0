use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable descriptor of a base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Prime {
        p: u64,
    },
    /// `modulus` lists the coefficients of a degree-`k` polynomial, constant term first.
    PrimePower {
        p: u64,
        k: u32,
        modulus: Vec<u64>,
    },
    Rational,
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "GF({p})"),
            FieldSpec::PrimePower { p, k, .. } => write!(f, "GF({p}^{k})"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl FieldSpec {
    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rational)
    }
}

/// Wire form of a single scalar: an integer residue, a coefficient list for
/// extension fields, or a `"a/b"` string for rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Coeffs(Vec<i64>),
    Text(String),
}

/// An exact field with runtime parameters.
///
/// The field value is the arithmetic context; elements are plain values of
/// [`Field::Elem`] and every operation goes through the field. All algebra in
/// this crate is generic over this trait.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Ord + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, n: i64) -> Self::Elem;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// The `index`-th element in a fixed enumeration of a finite field.
    /// Index 0 is zero and index 1 is one.
    fn element(&self, index: u64) -> Self::Elem;

    fn encode(&self, a: &Self::Elem) -> ScalarRepr;
    fn decode(&self, r: &ScalarRepr) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements of a finite field, in enumeration order.
    fn elements(&self) -> Result<Vec<Self::Elem>> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        Ok((0..q).map(|i| self.element(i)).collect())
    }
}

/// Whether `s` is a square in the finite field `field`.
///
/// Odd prime fields use Euler's criterion; everything else is decided by
/// sweeping all squares.
pub fn is_square<F: Field>(field: &F, s: &F::Elem) -> Result<bool> {
    let q = field.order().ok_or(Error::InfiniteField)?;
    if field.is_zero(s) {
        return Ok(true);
    }
    let p = field.characteristic();
    if q == p && p % 2 == 1 {
        return Ok(field.is_one(&field.pow(s, (p - 1) / 2)));
    }
    Ok((0..q).any(|i| {
        let t = field.element(i);
        field.mul(&t, &t) == *s
    }))
}
