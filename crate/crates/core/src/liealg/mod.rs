//! Lie algebras given by structure constants.

mod iso;
mod json;
mod quotient;

pub use iso::{iso_bruteforce, MAX_ISO_DIM};
pub use json::{AlgebraFile, AnyAlgebra, BracketRepr};
pub use quotient::{direct_sum, restrict, Quotient};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{unit, Field, Matrix, Vector};

/// A finite-dimensional Lie algebra over `F` with a fixed basis `b_0..b_{n-1}`.
///
/// The bracket table stores every ordered pair sparsely, so `[b_j, b_i]` is the
/// negation of `[b_i, b_j]` by construction. Equality compares field, dimension
/// and structure constants; basis labels are presentation only.
#[derive(Clone)]
pub struct LieAlgebra<F: Field> {
    field: F,
    dim: usize,
    table: Vec<Vec<(usize, F::Elem)>>,
    labels: Vec<String>,
}

impl<F: Field> fmt::Debug for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({:?}, dim {}", self.field, self.dim)?;
        for (i, j, v) in self.nonzero_brackets() {
            write!(f, ", [{},{}]={:?}", self.labels[i], self.labels[j], v)?;
        }
        write!(f, ")")
    }
}

impl<F: Field> PartialEq for LieAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }
}

impl<F: Field> Eq for LieAlgebra<F> {}

fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl<F: Field> LieAlgebra<F> {
    /// Builds and validates an algebra. Pairs not listed bracket to zero.
    /// `(i, j)` with `i > j` is accepted and stored as the negation of `(j, i)`.
    pub fn new<I>(field: &F, dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector<F>)>,
    {
        let mut seen: HashMap<(usize, usize), Vector<F>> = HashMap::new();
        let mut entries = Vec::new();
        for (i, j, v) in brackets {
            check_entry(dim, i, j, &v)?;
            if i == j {
                if v.iter().any(|x| !field.is_zero(x)) {
                    return Err(Error::AntisymmetryViolation { i, j });
                }
                continue;
            }
            let (key, val) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.iter().map(|x| field.neg(x)).collect())
            };
            if let Some(prev) = seen.get(&key) {
                if *prev != val {
                    return Err(Error::AntisymmetryViolation { i: key.0, j: key.1 });
                }
                continue;
            }
            seen.insert(key, val.clone());
            entries.push((key.0, key.1, val));
        }
        let algebra = Self::new_unchecked(field, dim, entries)?;
        algebra.validate()?;
        Ok(algebra)
    }

    /// Builds the table without checking the Lie axioms. Used to load fixtures
    /// that are themselves under test; call [`LieAlgebra::validate`] before
    /// trusting the result. Later entries overwrite earlier ones, and a
    /// diagonal entry `(i, i)` is kept as given.
    pub fn new_unchecked<I>(field: &F, dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector<F>)>,
    {
        let mut dense: Vec<Vector<F>> = vec![vec![field.zero(); dim]; dim * dim];
        for (i, j, v) in brackets {
            check_entry(dim, i, j, &v)?;
            if i != j {
                dense[j * dim + i] = v.iter().map(|x| field.neg(x)).collect();
            }
            dense[i * dim + j] = v;
        }
        let table = dense
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !field.is_zero(x))
                    .collect()
            })
            .collect();
        Ok(Self {
            field: field.clone(),
            dim,
            table,
            labels: default_labels(dim),
        })
    }

    /// Integer shorthand for tests and constructors.
    pub fn from_int_brackets(
        field: &F,
        dim: usize,
        brackets: &[(usize, usize, &[i64])],
    ) -> Result<Self> {
        Self::new(
            field,
            dim,
            brackets
                .iter()
                .map(|(i, j, v)| (*i, *j, v.iter().map(|&x| field.from_int(x)).collect())),
        )
    }

    pub fn abelian(field: &F, dim: usize) -> Self {
        Self::new_unchecked(field, dim, std::iter::empty()).expect("empty table is well formed")
    }

    pub fn with_labels<S: Into<String>>(
        mut self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "{} labels for an algebra of dimension {}",
                labels.len(),
                self.dim
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Checks antisymmetry of the table and the Jacobi identity on all basis triples.
    pub fn validate(&self) -> Result<()> {
        let f = &self.field;
        for i in 0..self.dim {
            if !self.table[i * self.dim + i].is_empty() {
                return Err(Error::AntisymmetryViolation { i, j: i });
            }
            for j in i + 1..self.dim {
                let a = self.basis_bracket(i, j);
                let b = self.basis_bracket(j, i);
                let ok = a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((k, x), (l, y))| k == l && f.is_zero(&f.add(x, y)));
                if !ok {
                    return Err(Error::AntisymmetryViolation { i, j });
                }
            }
        }
        if let Some((i, j, k)) = self.jacobi_failure() {
            return Err(Error::JacobiViolation { i, j, k });
        }
        Ok(())
    }

    fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jac = self.jacobiator(&self.unit(i), &self.unit(j), &self.unit(k));
                    if jac.iter().any(|x| !self.field.is_zero(x)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobiator(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vector<F> {
        let a = self.bracket(&self.bracket(x, y), z);
        let b = self.bracket(&self.bracket(y, z), x);
        let c = self.bracket(&self.bracket(z, x), y);
        a.iter()
            .zip(&b)
            .zip(&c)
            .map(|((a, b), c)| self.field.add(&self.field.add(a, b), c))
            .collect()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self, i: usize) -> Vector<F> {
        unit(&self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector<F> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis(&self) -> Vec<Vector<F>> {
        (0..self.dim).map(|i| self.unit(i)).collect()
    }

    /// Sparse `[b_i, b_j]` as `(coordinate, coefficient)` pairs.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    /// Dense coordinate vector of `[b_i, b_j]`.
    pub fn structure_constants(&self, i: usize, j: usize) -> Vector<F> {
        let mut v = self.zero_vector();
        for (k, c) in self.basis_bracket(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// `(i, j, [b_i, b_j])` for `i < j` with a nonzero bracket.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, Vector<F>)> + '_ {
        (0..self.dim).flat_map(move |i| {
            (i + 1..self.dim)
                .filter(move |&j| !self.basis_bracket(i, j).is_empty())
                .map(move |j| (i, j, self.structure_constants(i, j)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|e| e.is_empty())
    }

    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let entries = &self.table[i * self.dim + j];
                if entries.is_empty() {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in entries {
                    out[*k] = f.add(&out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    pub fn checked_bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vector<F>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::AlgebraMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        Ok(self.bracket(x, y))
    }

    /// Matrix of `ad x` acting on row vectors: row `i` is `[b_i, x]`, so
    /// `y * ad(x) = [y, x]`.
    pub fn ad(&self, x: &[F::Elem]) -> Matrix<F> {
        let rows = (0..self.dim)
            .map(|i| self.bracket(&self.unit(i), x))
            .collect();
        Matrix::from_rows(&self.field, self.dim, rows)
    }

    pub fn is_zero_vector(&self, v: &[F::Elem]) -> bool {
        v.iter().all(|x| self.field.is_zero(x))
    }
}

fn check_entry<E>(dim: usize, i: usize, j: usize, v: &[E]) -> Result<()> {
    if i >= dim || j >= dim {
        return Err(Error::InvalidInput(format!(
            "bracket index ({i}, {j}) outside dimension {dim}"
        )));
    }
    if v.len() != dim {
        return Err(Error::AlgebraMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{FiniteField, Rationals};
    use proptest::prelude::*;

    fn gf(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn heisenberg(f: &FiniteField) -> LieAlgebra<FiniteField> {
        LieAlgebra::from_int_brackets(f, 3, &[(0, 1, &[0, 0, 1])]).unwrap()
    }

    fn sl2(f: &FiniteField) -> LieAlgebra<FiniteField> {
        LieAlgebra::from_int_brackets(
            f,
            3,
            &[(0, 1, &[1, 0, 0]), (0, 2, &[0, 1, 0]), (1, 2, &[0, 0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn construction_examples() {
        let f = gf(5);
        let line = LieAlgebra::from_int_brackets(&f, 1, &[]).unwrap();
        assert!(line.is_abelian());
        let h = heisenberg(&f);
        assert_eq!(h.bracket(&h.unit(0), &h.unit(1)), h.unit(2));
        let bad = LieAlgebra::from_int_brackets(
            &f,
            3,
            &[(0, 1, &[0, 0, 1]), (1, 2, &[1, 0, 0]), (0, 2, &[1, 0, 0])],
        );
        assert!(matches!(
            bad,
            Err(Error::JacobiViolation { i: 0, j: 1, k: 2 })
        ));
    }

    #[test]
    fn antisymmetry_errors() {
        let f = gf(2);
        let diag = LieAlgebra::from_int_brackets(&f, 2, &[(0, 0, &[0, 1])]);
        assert_eq!(
            diag.unwrap_err(),
            Error::AntisymmetryViolation { i: 0, j: 0 }
        );
        let f3 = gf(3);
        let clash = LieAlgebra::from_int_brackets(&f3, 2, &[(0, 1, &[0, 1]), (1, 0, &[0, 1])]);
        assert_eq!(
            clash.unwrap_err(),
            Error::AntisymmetryViolation { i: 0, j: 1 }
        );
        let consistent = LieAlgebra::from_int_brackets(&f3, 2, &[(0, 1, &[0, 1]), (1, 0, &[0, 2])]);
        assert!(consistent.is_ok());
        let raw = LieAlgebra::new_unchecked(&f, 2, [(1, 1, vec![f.one(), f.zero()])]).unwrap();
        assert_eq!(
            raw.validate().unwrap_err(),
            Error::AntisymmetryViolation { i: 1, j: 1 }
        );
    }

    #[test]
    fn mismatched_element_is_rejected() {
        let f = gf(3);
        let h = heisenberg(&f);
        assert_eq!(
            h.checked_bracket(&[f.one()], &h.unit(0)).unwrap_err(),
            Error::AlgebraMismatch {
                expected: 3,
                got: 1
            }
        );
    }

    #[test]
    fn ad_examples() {
        let f = gf(5);
        let ab = LieAlgebra::<FiniteField>::abelian(&f, 3);
        assert!(ab.ad(&ab.unit(1)).is_zero());
        // affine: [x, y] = y, so y * ad(x) = [y, x] = -y
        let aff = LieAlgebra::from_int_brackets(&f, 2, &[(0, 1, &[0, 1])]).unwrap();
        let m = aff.ad(&aff.unit(0));
        assert_eq!(m.apply(&aff.unit(0)), aff.zero_vector());
        assert_eq!(m.apply(&aff.unit(1)), vec![f.zero(), f.from_int(-1)]);
        // sl2: u_{-1} * ad(u_0) = [u_{-1}, u_0] = u_{-1}, u_1 * ad(u_0) = -u_1
        let s = sl2(&f);
        let m = s.ad(&s.unit(1));
        assert_eq!(m.apply(&s.unit(0)), s.unit(0));
        assert_eq!(
            m.apply(&s.unit(2)),
            vec![f.zero(), f.zero(), f.from_int(-1)]
        );
        assert_eq!(s.bracket(&s.unit(0), &s.unit(1)), s.unit(0));
        assert!(s.is_zero_vector(&s.bracket(&s.unit(2), &s.unit(2))));
    }

    #[test]
    fn rational_algebra() {
        let q = Rationals;
        let s = LieAlgebra::from_int_brackets(
            &q,
            3,
            &[(0, 1, &[1, 0, 0]), (0, 2, &[0, 1, 0]), (1, 2, &[0, 0, 1])],
        )
        .unwrap();
        let x: Vec<_> = [1, 2, 3].iter().map(|&a| q.from_int(a)).collect();
        assert_eq!(s.bracket(&x, &x), s.zero_vector());
    }

    proptest! {
        #[test]
        fn ad_is_a_homomorphism(a in prop::collection::vec(0i64..5, 3), b in prop::collection::vec(0i64..5, 3)) {
            let f = gf(5);
            let s = sl2(&f);
            let x: Vec<_> = a.iter().map(|&v| f.from_int(v)).collect();
            let y: Vec<_> = b.iter().map(|&v| f.from_int(v)).collect();
            // right action: ad([x,y]) = ad(x)ad(y) - ad(y)ad(x)
            let lhs = s.ad(&s.bracket(&x, &y));
            let rhs = s.ad(&x).mul(&s.ad(&y)).sub(&s.ad(&y).mul(&s.ad(&x)));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(s.is_zero_vector(&s.jacobiator(&x, &y, &s.bracket(&x, &y))));
        }
    }
}
