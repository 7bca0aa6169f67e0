use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::Field;
use super::subspace::Subspace;

/// Dense matrix over an exact field, stored row-major.
///
/// Vectors are rows and matrices act on the right: `v -> v * M`.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r)))
            .finish()
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;
    fn index(&self, (r, c): (usize, usize)) -> &F::Elem {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F::Elem {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduces `rows` (each of length `cols`) to reduced row-echelon form in place,
/// dropping zero rows. Returns the pivot column of each surviving row.
pub(crate) fn rref_rows<F: Field>(
    field: &F,
    rows: &mut Vec<Vec<F::Elem>>,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        if !field.is_one(&inv) {
            for x in rows[r].iter_mut() {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !f.is_zero(b) {
                        let idx = r * other.cols + c;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Self {
            data,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Self {
            data,
            ..self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = &self[(r, c)];
                if !f.is_zero(b) {
                    *o = f.add(o, &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn rref(&self) -> Rref<F> {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&self.field, &mut rows, self.cols);
        let rank = pivots.len();
        rows.resize(self.rows, vec![self.field.zero(); self.cols]);
        Rref {
            matrix: Self::from_rows(&self.field, self.cols, rows),
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// `{v : v * M = 0}`, a subspace of `F^rows`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let mut t = self.transpose().to_rows();
        let pivots = rref_rows(f, &mut t, self.rows);
        let free = (0..self.rows).filter(|c| !pivots.contains(c));
        let vectors = free.map(|fc| {
            let mut v = vec![f.zero(); self.rows];
            v[fc] = f.one();
            for (row, &pc) in t.iter().zip(&pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        });
        Subspace::span(f, self.rows, vectors)
    }

    /// `{v * M}`, the row space, a subspace of `F^cols`.
    pub fn image(&self) -> Subspace<F> {
        Subspace::span(&self.field, self.cols, self.to_rows())
    }
}
