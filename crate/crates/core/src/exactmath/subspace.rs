use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::{Field, ScalarRepr};
use super::matrix::{rref_rows, Matrix};
use crate::error::{Error, Result};

/// A subspace of `F^n` held in canonical reduced row-echelon form.
///
/// Two subspaces are equal exactly when their RREF bases agree, so `==`,
/// `Ord` and `Hash` work on the basis rows directly.
#[derive(Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, ", self.ambient)?;
        f.debug_list().entries(&self.basis).finish()?;
        write!(f, ")")
    }
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Hash for Subspace<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl<F: Field> PartialOrd for Subspace<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ambient dimension, then dimension, then basis rows.
impl<F: Field> Ord for Subspace<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.basis.len(), &self.basis).cmp(&(
            other.ambient,
            other.basis.len(),
            &other.basis,
        ))
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Self {
            field: field.clone(),
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: &F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut rows: Vec<Vec<F::Elem>> = vectors
            .into_iter()
            .inspect(|v| {
                assert_eq!(
                    v.len(),
                    ambient,
                    "vector length differs from ambient dimension"
                )
            })
            .collect();
        let pivots = rref_rows(field, &mut rows, ambient);
        Self {
            field: field.clone(),
            ambient,
            basis: rows,
            pivots,
        }
    }

    /// Wraps rows already known to be in RREF with the given pivots.
    pub(crate) fn from_rref(
        field: &F,
        ambient: usize,
        basis: Vec<Vec<F::Elem>>,
        pivots: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(basis.len(), pivots.len());
        Self {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: &F, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            field,
            ambient,
            indices.into_iter().map(|i| unit(field, ambient, i)),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Columns that carry no pivot; the standard vectors at these indices
    /// complete the basis to one of the ambient space.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Residue of `v` after eliminating the pivot columns; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&out[pc]) {
                continue;
            }
            let coef = out[pc].clone();
            for (x, y) in out.iter_mut().zip(row).skip(pc) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&coef, y));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coefficients of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    pub fn from_coords(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.basis.len());
        combine(&self.field, self.ambient, coords, &self.basis)
    }

    /// Adds `v` to the span, keeping the basis canonical. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[pc]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.basis.iter_mut() {
            if f.is_zero(&row[pc]) {
                continue;
            }
            let coef = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&r).skip(pc) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&coef, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.basis.insert(pos, r);
        true
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for v in &other.basis {
            out.insert(v);
        }
        Ok(out)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        // (x, y) with x*A + y*B = 0 gives x*A in both spans
        let stacked: Vec<Vec<F::Elem>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let m = Matrix::from_rows(&self.field, self.ambient, stacked);
        let r = self.dim();
        let vectors = m
            .kernel()
            .basis()
            .iter()
            .map(|k| combine(&self.field, self.ambient, &k[..r], &self.basis))
            .collect::<Vec<_>>();
        Ok(Self::span(&self.field, self.ambient, vectors))
    }

    /// Inclusion `self ⊆ other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() <= other.dim() && self.basis.iter().all(|v| other.contains(v)))
    }

    /// Number of elements, when the field is finite.
    pub fn cardinality(&self) -> Option<u128> {
        let q = self.field.order()? as u128;
        q.checked_pow(self.dim() as u32)
    }

    /// Every element of the subspace, enumerated by coefficient vectors.
    pub fn elements(&self, max: u64) -> Result<impl Iterator<Item = Vec<F::Elem>> + '_> {
        let sweep = super::enumerate::enumerate_vectors(&self.field, self.dim(), max)?;
        Ok(sweep.map(move |c| self.from_coords(&c)))
    }

    pub fn to_repr(&self) -> Vec<Vec<ScalarRepr>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(|x| self.field.encode(x)).collect())
            .collect()
    }

    pub fn from_repr(field: &F, ambient: usize, rows: &[Vec<ScalarRepr>]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != ambient {
                return Err(Error::AmbientMismatch(row.len(), ambient));
            }
            vectors.push(
                row.iter()
                    .map(|r| field.decode(r))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Self::span(field, ambient, vectors))
    }
}

pub(crate) fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub(crate) fn combine<F: Field>(
    field: &F,
    n: usize,
    coeffs: &[F::Elem],
    rows: &[Vec<F::Elem>],
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); n];
    for (c, row) in coeffs.iter().zip(rows) {
        if field.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !field.is_zero(x) {
                *o = field.add(o, &field.mul(c, x));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{FiniteField, Fq};
    use proptest::prelude::*;

    fn gf(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn vecs(f: &FiniteField, rows: &[&[i64]]) -> Vec<Vec<Fq>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect()
    }

    #[test]
    fn lines_in_gf2_cubed() {
        let f = gf(2);
        let a = Subspace::span(&f, 3, vecs(&f, &[&[1, 0, 0]]));
        let b = Subspace::span(&f, 3, vecs(&f, &[&[0, 1, 0]]));
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&Subspace::zero(&f, 3)).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let f = gf(3);
        let a = Subspace::full(&f, 2);
        let b = Subspace::full(&f, 3);
        assert_eq!(a.sum(&b).unwrap_err(), Error::AmbientMismatch(2, 3));
        assert!(a.intersect(&b).is_err());
        assert!(a.leq(&b).is_err());
    }

    #[test]
    fn canonical_form_is_unique() {
        let f = gf(5);
        let a = Subspace::span(&f, 3, vecs(&f, &[&[1, 2, 3], &[0, 1, 4]]));
        let b = Subspace::span(&f, 3, vecs(&f, &[&[1, 3, 2], &[2, 0, 0]]));
        let c = Subspace::span(&f, 3, vecs(&f, &[&[1, 3, 2], &[1, 2, 3]]));
        assert_eq!(
            a.contains(&b.basis()[0]),
            b.leq(&a).unwrap() || !a.contains(&b.basis()[0])
        );
        assert_eq!(
            a,
            c.clone()
                .sum(&c)
                .unwrap()
                .intersect(&c)
                .unwrap()
                .sum(&Subspace::zero(&f, 3))
                .unwrap()
                .intersect(&a)
                .unwrap()
                .sum(&a)
                .unwrap()
        );
        let mut d = Subspace::zero(&f, 3);
        for v in a.basis().iter().rev() {
            d.insert(v);
        }
        assert_eq!(d, a);
    }

    #[test]
    fn coords_round_trip() {
        let f = gf(7);
        let a = Subspace::span(&f, 4, vecs(&f, &[&[1, 2, 0, 3], &[0, 0, 1, 5]]));
        let v = combine(
            &f,
            4,
            &[f.from_int(3), f.from_int(6)],
            &vecs(&f, &[&[1, 2, 0, 3], &[0, 0, 1, 5]]),
        );
        let c = a.coords(&v).unwrap();
        assert_eq!(a.from_coords(&c), v);
        assert!(a.coords(&vecs(&f, &[&[0, 1, 0, 0]])[0]).is_none());
    }

    fn arb_vectors(p: u64, n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(0..p as i64, n), 0..=max)
    }

    proptest! {
        #[test]
        fn dimension_formula(a in arb_vectors(3, 5, 4), b in arb_vectors(3, 5, 4)) {
            let f = gf(3);
            let to = |rows: Vec<Vec<i64>>| rows.into_iter().map(|r| r.into_iter().map(|x| f.from_int(x)).collect()).collect::<Vec<Vec<Fq>>>();
            let sa = Subspace::span(&f, 5, to(a));
            let sb = Subspace::span(&f, 5, to(b));
            let s = sa.sum(&sb).unwrap();
            let i = sa.intersect(&sb).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), sa.dim() + sb.dim());
            prop_assert!(i.leq(&sa).unwrap() && i.leq(&sb).unwrap());
            prop_assert!(sa.leq(&s).unwrap() && sb.leq(&s).unwrap());
        }

        #[test]
        fn rref_is_idempotent(a in arb_vectors(5, 4, 5)) {
            let f = gf(5);
            let rows: Vec<Vec<Fq>> = a.into_iter().map(|r| r.into_iter().map(|x| f.from_int(x)).collect()).collect();
            let m = Matrix::from_rows(&f, 4, rows.clone());
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once.clone());
            prop_assert_eq!(m.kernel().dim() + m.rank(), rows.len());
        }
    }
}
