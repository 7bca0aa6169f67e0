use crate::error::{Error, Result};
use crate::exactmath::{check_budget, enumerate_vectors, Field, Subspace, Vector};
use crate::structure::{center, derived_series, lower_central_series};

use super::LieAlgebra;

/// Largest dimension the brute-force isomorphism search accepts.
pub const MAX_ISO_DIM: usize = 3;

fn invariants<F: Field>(l: &LieAlgebra<F>) -> (Vec<usize>, Vec<usize>, usize) {
    let dims = |s: crate::structure::SeriesResult<F>| {
        s.terms.iter().map(Subspace::dim).collect::<Vec<_>>()
    };
    (
        dims(derived_series(l)),
        dims(lower_central_series(l)),
        center(l).dim(),
    )
}

/// Decides `l1 ≅ l2` by exhaustive search over linear bijections.
///
/// Basis images are assigned one at a time; each bracket relation is tested as
/// soon as every basis vector it mentions has an image. `max_nodes` bounds the
/// number of partial assignments tried.
pub fn iso_bruteforce<F: Field>(
    l1: &LieAlgebra<F>,
    l2: &LieAlgebra<F>,
    max_nodes: u64,
) -> Result<bool> {
    if l1.field() != l2.field() {
        return Err(Error::FieldMismatch);
    }
    let field = l1.field();
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let n = l1.dim();
    if n != l2.dim() {
        return Ok(false);
    }
    if n > MAX_ISO_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_ISO_DIM,
        });
    }
    if invariants(l1) != invariants(l2) {
        return Ok(false);
    }
    let candidates: Vec<Vector<F>> = enumerate_vectors(field, n, max_nodes)?
        .filter(|v| !l2.is_zero_vector(v))
        .collect();
    // relations checked once image `level` is assigned
    let mut by_level: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let level = l1
                .basis_bracket(i, j)
                .iter()
                .map(|(k, _)| *k)
                .chain([i, j])
                .max()
                .unwrap();
            by_level[level].push((i, j));
        }
    }
    let mut search = Search {
        l1,
        l2,
        candidates: &candidates,
        by_level: &by_level,
        images: Vec::with_capacity(n),
        nodes: 0,
        max_nodes,
    };
    search.extend(&Subspace::zero(field, n))
}

struct Search<'a, F: Field> {
    l1: &'a LieAlgebra<F>,
    l2: &'a LieAlgebra<F>,
    candidates: &'a [Vector<F>],
    by_level: &'a [Vec<(usize, usize)>],
    images: Vec<Vector<F>>,
    nodes: u64,
    max_nodes: u64,
}

impl<F: Field> Search<'_, F> {
    fn extend(&mut self, span: &Subspace<F>) -> Result<bool> {
        let level = self.images.len();
        if level == self.l1.dim() {
            return Ok(true);
        }
        for v in self.candidates {
            self.nodes += 1;
            check_budget("isomorphism search", self.nodes as u128, self.max_nodes)?;
            if span.contains(v) {
                continue;
            }
            self.images.push(v.clone());
            if self.relations_hold(level) {
                let mut next = span.clone();
                next.insert(v);
                if self.extend(&next)? {
                    return Ok(true);
                }
            }
            self.images.pop();
        }
        Ok(false)
    }

    fn relations_hold(&self, level: usize) -> bool {
        let f = self.l1.field();
        self.by_level[level].iter().all(|&(i, j)| {
            let lhs = self.l2.bracket(&self.images[i], &self.images[j]);
            let mut rhs = self.l2.zero_vector();
            for (k, c) in self.l1.basis_bracket(i, j) {
                for (r, x) in rhs.iter_mut().zip(&self.images[*k]) {
                    *r = f.add(r, &f.mul(c, x));
                }
            }
            lhs == rhs
        })
    }
}
