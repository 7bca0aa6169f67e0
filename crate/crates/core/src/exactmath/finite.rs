use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldSpec, ScalarRepr};
use crate::error::{Error, Result};

/// Largest extension field for which arithmetic tables are built.
pub const MAX_TABLE_ORDER: u64 = 256;

/// Element of a finite field.
///
/// For prime fields this is the residue in `[0, p)`. For `GF(p^k)` it is the
/// base-`p` packing of the coefficient vector, constant term in the lowest digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u32);

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// `GF(p)` or `GF(p^k)` with `p^k <= 256`.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(
                f,
                "GF({}^{}; {:?})",
                self.inner.p, self.inner.k, self.inner.modulus
            )
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn digits(mut index: u64, p: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = index % p;
            index /= p;
            d
        })
        .collect()
}

fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over `GF(p)`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(monic: &[u64], p: u64) -> bool {
    let deg = monic.len() - 1;
    for d in 1..=deg / 2 {
        for lower in 0..p.pow(d as u32) {
            let mut divisor = digits(lower, p, d as u32);
            divisor.push(1);
            if poly_rem(monic, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Self {
            inner: Arc::new(Inner {
                p,
                k: 1,
                q: p,
                modulus: Vec::new(),
                tables: None,
            }),
        })
    }

    /// `GF(p^k)` presented as `GF(p)[t]/(modulus)`, coefficients constant term first.
    pub fn extension(p: u64, k: u32, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if k == 0 {
            return Err(Error::InvalidInput(
                "extension degree must be at least 1".into(),
            ));
        }
        if k == 1 && modulus.is_empty() {
            return Self::prime(p);
        }
        if modulus.len() != k as usize + 1 {
            return Err(Error::InvalidInput(format!(
                "modulus must have {} coefficients, got {}",
                k + 1,
                modulus.len()
            )));
        }
        let reduced: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let lead = reduced[k as usize];
        if lead == 0 {
            return Err(Error::InvalidInput(
                "modulus has vanishing leading coefficient".into(),
            ));
        }
        let lead_inv = pow_mod(lead, p - 2, p);
        let monic: Vec<u64> = reduced.iter().map(|c| c * lead_inv % p).collect();
        if !is_irreducible(&monic, p) {
            return Err(Error::ReducibleModulusPolynomial(modulus.to_vec()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_TABLE_ORDER)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(k)))?;
        let tables = build_tables(p, k, q, &monic);
        Ok(Self {
            inner: Arc::new(Inner {
                p,
                k,
                q,
                modulus: monic,
                tables: Some(tables),
            }),
        })
    }

    /// `GF(p^k)` with the first irreducible monic modulus in enumeration order.
    pub fn galois(p: u64, k: u32) -> Result<Self> {
        if k <= 1 {
            return Self::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        let q = p.saturating_pow(k);
        if q > MAX_TABLE_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        for lower in 0..q {
            let mut monic = digits(lower, p, k);
            monic.push(1);
            if is_irreducible(&monic, p) {
                return Self::extension(p, k, &monic);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        match spec {
            FieldSpec::Prime { p } => Self::prime(*p),
            FieldSpec::PrimePower { p, k, modulus } => {
                if *k > 1 && modulus.is_empty() {
                    return Err(Error::InvalidInput(
                        "prime-power field needs a modulus".into(),
                    ));
                }
                Self::extension(*p, *k, modulus)
            }
            FieldSpec::Rational => Err(Error::InfiniteField),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Coefficients of an element, constant term first.
    pub fn coefficients(&self, a: &Fq) -> Vec<u64> {
        digits(a.0 as u64, self.inner.p, self.inner.k)
    }

    /// The class of `t` in `GF(p)[t]/(modulus)`; for prime fields this is 1.
    pub fn generator(&self) -> Fq {
        if self.inner.k == 1 {
            Fq(1)
        } else {
            Fq(self.inner.p as u32)
        }
    }
}

fn build_tables(p: u64, k: u32, q: u64, monic: &[u64]) -> Tables {
    let n = q as usize;
    let polys: Vec<Vec<u64>> = (0..q).map(|i| digits(i, p, k)).collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let s: Vec<u64> = polys[a]
                .iter()
                .zip(&polys[b])
                .map(|(x, y)| (x + y) % p)
                .collect();
            add[a * n + b] = pack(&s, p) as u16;
            let prod = poly_rem(&poly_mul(&polys[a], &polys[b], p), monic, p);
            let mut padded = prod;
            padded.resize(k as usize, 0);
            mul[a * n + b] = pack(&padded, p) as u16;
        }
    }
    let neg = (0..n)
        .map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u16)
        .collect();
    let inv = (0..n)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u16
            }
        })
        .collect();
    Tables { add, mul, neg, inv }
}

impl Field for FiniteField {
    type Elem = Fq;

    fn spec(&self) -> FieldSpec {
        if self.inner.k == 1 {
            FieldSpec::Prime { p: self.inner.p }
        } else {
            FieldSpec::PrimePower {
                p: self.inner.p,
                k: self.inner.k,
                modulus: self.inner.modulus.clone(),
            }
        }
    }

    #[inline]
    fn zero(&self) -> Fq {
        Fq(0)
    }

    #[inline]
    fn one(&self) -> Fq {
        Fq(1)
    }

    #[inline]
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        match &self.inner.tables {
            None => Fq(((a.0 as u64 + b.0 as u64) % self.inner.p) as u32),
            Some(t) => Fq(t.add[a.0 as usize * self.inner.q as usize + b.0 as usize] as u32),
        }
    }

    #[inline]
    fn neg(&self, a: &Fq) -> Fq {
        match &self.inner.tables {
            None => {
                if a.0 == 0 {
                    Fq(0)
                } else {
                    Fq((self.inner.p - a.0 as u64) as u32)
                }
            }
            Some(t) => Fq(t.neg[a.0 as usize] as u32),
        }
    }

    #[inline]
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        match &self.inner.tables {
            None => Fq(((a.0 as u64 + self.inner.p - b.0 as u64) % self.inner.p) as u32),
            Some(_) => self.add(a, &self.neg(b)),
        }
    }

    #[inline]
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        match &self.inner.tables {
            None => Fq(((a.0 as u64 * b.0 as u64) % self.inner.p) as u32),
            Some(t) => Fq(t.mul[a.0 as usize * self.inner.q as usize + b.0 as usize] as u32),
        }
    }

    fn inv(&self, a: &Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inner.tables {
            None => Fq(pow_mod(a.0 as u64, self.inner.p - 2, self.inner.p) as u32),
            Some(t) => Fq(t.inv[a.0 as usize] as u32),
        })
    }

    #[inline]
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }

    fn from_int(&self, n: i64) -> Fq {
        let p = self.inner.p as i128;
        Fq((n as i128).rem_euclid(p) as u32)
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn element(&self, index: u64) -> Fq {
        debug_assert!(index < self.inner.q);
        Fq(index as u32)
    }

    fn encode(&self, a: &Fq) -> ScalarRepr {
        if self.inner.k == 1 {
            ScalarRepr::Int(a.0 as i64)
        } else {
            ScalarRepr::Coeffs(self.coefficients(a).into_iter().map(|c| c as i64).collect())
        }
    }

    fn decode(&self, r: &ScalarRepr) -> Result<Fq> {
        let p = self.inner.p as i64;
        match r {
            ScalarRepr::Int(n) => Ok(self.from_int(*n)),
            ScalarRepr::Coeffs(cs) if self.inner.k > 1 => {
                if cs.len() != self.inner.k as usize {
                    return Err(Error::InvalidInput(format!(
                        "GF({}^{}) scalar needs {} coefficients, got {}",
                        self.inner.p,
                        self.inner.k,
                        self.inner.k,
                        cs.len()
                    )));
                }
                let coeffs: Vec<u64> = cs.iter().map(|c| c.rem_euclid(p) as u64).collect();
                Ok(Fq(pack(&coeffs, self.inner.p) as u32))
            }
            ScalarRepr::Coeffs(cs) if cs.len() == 1 => Ok(self.from_int(cs[0])),
            other => Err(Error::InvalidInput(format!(
                "cannot read {other:?} as an element of {self:?}"
            ))),
        }
    }
}
