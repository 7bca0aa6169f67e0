//! Exhaustive enumeration of subspaces, subalgebras, ideals and maximal
//! subalgebras over finite fields.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactmath::{
    check_budget, enumerate_vectors, projective_points, Field, Matrix, Subspace, DEFAULT_BUDGET,
};
use crate::liealg::LieAlgebra;
use crate::structure::{is_ideal, is_subalgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeBudget {
    pub max_subspaces: u64,
    pub max_elements: u64,
}

impl Default for LatticeBudget {
    fn default() -> Self {
        Self::uniform(DEFAULT_BUDGET)
    }
}

impl LatticeBudget {
    pub fn uniform(limit: u64) -> Self {
        Self {
            max_subspaces: limit,
            max_elements: limit,
        }
    }
}

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every subspace of `F^n` whose dimension is in `dims` (all dimensions when
/// `None`), each exactly once, grouped by pivot profile.
pub fn enumerate_subspaces<F: Field>(
    field: &F,
    n: usize,
    dims: Option<&[usize]>,
    budget: &LatticeBudget,
) -> Result<impl Iterator<Item = Subspace<F>>> {
    let q = field.order().ok_or(Error::InfiniteField)?;
    let wanted: Vec<usize> = match dims {
        Some(d) => d
            .iter()
            .copied()
            .filter(|&d| d <= n)
            .sorted()
            .dedup()
            .collect(),
        None => (0..=n).collect(),
    };
    let total: u128 = wanted.iter().map(|&k| gaussian_binomial(n, k, q)).sum();
    check_budget("subspace enumeration", total, budget.max_subspaces)?;
    let field = field.clone();
    let profiles = wanted.into_iter().flat_map(move |k| (0..n).combinations(k));
    Ok(profiles.flat_map(move |pivots| {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                (p + 1..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let field = field.clone();
        enumerate_vectors(&field, free.len(), u64::MAX)
            .expect("finite field")
            .map(move |vals| {
                let mut rows = vec![vec![field.zero(); n]; pivots.len()];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = field.one();
                }
                for (&(r, c), v) in free.iter().zip(vals) {
                    rows[r][c] = v;
                }
                Subspace::from_rref(&field, n, rows, pivots.clone())
            })
    }))
}

pub fn subalgebras<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<Subspace<F>>> {
    Ok(enumerate_subspaces(l.field(), l.dim(), None, budget)?
        .filter(|u| is_subalgebra(l, u))
        .sorted()
        .collect())
}

pub fn ideals<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<Vec<Subspace<F>>> {
    Ok(enumerate_subspaces(l.field(), l.dim(), None, budget)?
        .filter(|u| is_ideal(l, u))
        .sorted()
        .collect())
}

/// Proper subalgebras not strictly contained in another proper subalgebra.
///
/// Candidates are visited by decreasing dimension; a candidate is maximal iff it
/// lies in none of the maximal subalgebras already found, since every proper
/// subalgebra sits inside some maximal one.
pub fn maximal_subalgebras<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<Subspace<F>>> {
    let n = l.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut found: Vec<Subspace<F>> = Vec::new();
    for d in (0..n).rev() {
        let layer: Vec<_> = enumerate_subspaces(l.field(), n, Some(&[d]), budget)?
            .filter(|u| is_subalgebra(l, u))
            .collect();
        let fresh: Vec<_> = layer
            .into_iter()
            .filter(|u| !found.iter().any(|m| u.leq(m).unwrap()))
            .collect();
        found.extend(fresh);
    }
    found.sort();
    Ok(found)
}

/// Bracket-closed hyperplanes, found by sweeping normal vectors.
pub fn codim_one_subalgebras<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<Subspace<F>>> {
    let n = l.dim();
    let mut out: Vec<_> = projective_points(l.field(), n, budget.max_subspaces)?
        .into_iter()
        .map(|a| Matrix::from_rows(l.field(), 1, a.into_iter().map(|x| vec![x]).collect()).kernel())
        .filter(|h| is_subalgebra(l, h))
        .collect();
    out.sort();
    Ok(out)
}
