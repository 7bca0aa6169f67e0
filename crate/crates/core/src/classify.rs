//! Structural predicates with checkable certificates.

use itertools::Itertools;

use crate::engel::{family_report, HMode};
use crate::error::{Error, Result};
use crate::exactmath::{projective_points, Field, Subspace};
use crate::lattice::{ideals, LatticeBudget};
use crate::liealg::{iso_bruteforce, restrict, LieAlgebra, Quotient};
use crate::structure::{center, derived_series, is_ideal, lower_central_series, minimal_ideals};
use crate::zoo::make_sl2;

pub fn is_nilpotent<F: Field>(l: &LieAlgebra<F>) -> bool {
    lower_central_series(l).last().is_zero()
}

pub fn is_solvable<F: Field>(l: &LieAlgebra<F>) -> bool {
    derived_series(l).last().is_zero()
}

/// Lines `Fx` with `[b_i, x] ∈ Fx` for every basis vector `b_i`.
pub fn one_dim_ideals<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<Subspace<F>>> {
    Ok(projective_points(l.field(), l.dim(), budget.max_subspaces)?
        .into_iter()
        .map(|x| Subspace::span(l.field(), l.dim(), [x]))
        .filter(|line| is_ideal(l, line))
        .collect())
}

/// A chain of ideals `0 = I_0 ⊂ I_1 ⊂ … ⊂ I_n = L` with `dim I_k = k`, if one
/// exists.
///
/// The chain is grown one line at a time from a 1-dimensional ideal of the
/// current quotient. Quotients of supersolvable algebras are supersolvable, so
/// a dead end at any choice means there is no chain at all and no choice has to
/// be revisited.
pub fn is_supersolvable<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Option<Vec<Subspace<F>>>> {
    let mut chain = vec![Subspace::zero(l.field(), l.dim())];
    while !chain.last().unwrap().is_full() {
        let q = Quotient::new(l, chain.last().unwrap())?;
        let Some(line) = one_dim_ideals(q.algebra(), budget)?.into_iter().next() else {
            return Ok(None);
        };
        chain.push(q.preimage(&line));
    }
    verify_chain(l, &chain)?;
    Ok(Some(chain))
}

/// Checks that `chain` is a full flag of ideals of `l`.
pub fn verify_chain<F: Field>(l: &LieAlgebra<F>, chain: &[Subspace<F>]) -> Result<()> {
    let ok = chain.len() == l.dim() + 1
        && chain
            .iter()
            .enumerate()
            .all(|(k, i)| i.dim() == k && is_ideal(l, i))
        && chain.windows(2).all(|w| w[0].leq(&w[1]).unwrap());
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation(
            "ideal chain fails verification".into(),
        ))
    }
}

/// Is `l` isomorphic to the split three-dimensional simple algebra?
pub fn is_split_sl2<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<bool> {
    if l.dim() != 3 || !derived_series(l).terms[1].is_full() || !center(l).is_zero() {
        return Ok(false);
    }
    iso_bruteforce(l, &make_sl2(l.field()), budget.max_elements)
}

/// An ideal `C` with `L = U + C` and `U ∩ C ⊆ U_L`, if any; the smallest in
/// canonical order is returned.
pub fn is_c_ideal<F: Field>(
    l: &LieAlgebra<F>,
    u: &Subspace<F>,
    budget: &LatticeBudget,
) -> Result<Option<Subspace<F>>> {
    let u_core = crate::structure::core(l, u);
    for c in ideals(l, budget)? {
        if u.sum(&c)?.is_full() && u.intersect(&c)?.leq(&u_core)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `L/γ(L) = S_1 ⊕ … ⊕ S_n ⊕ R` with split-sl2 ideals `S_i` and a
/// supersolvable ideal `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<F: Field> {
    pub gamma: Subspace<F>,
    /// `L/γ(L)`.
    pub base: LieAlgebra<F>,
    /// Subspaces of `base`.
    pub summands_s: Vec<Subspace<F>>,
    pub r: Subspace<F>,
}

impl<F: Field> Decomposition<F> {
    pub fn verify(&self, budget: &LatticeBudget) -> Result<()> {
        let q = &self.base;
        let mut total = self.r.clone();
        let mut dims = self.r.dim();
        for s in &self.summands_s {
            if !is_ideal(q, s) || !is_split_sl2(&restrict(q, s)?, budget)? {
                return Err(Error::InvariantViolation(
                    "summand is not a split sl2 ideal".into(),
                ));
            }
            total = total.sum(s)?;
            dims += s.dim();
        }
        if !is_ideal(q, &self.r) || is_supersolvable(&restrict(q, &self.r)?, budget)?.is_none() {
            return Err(Error::InvariantViolation(
                "R is not a supersolvable ideal".into(),
            ));
        }
        if !total.is_full() || dims != q.dim() {
            return Err(Error::InvariantViolation(
                "summands do not form a direct sum".into(),
            ));
        }
        Ok(())
    }
}

/// Searches the ideals of `L/γ(L)` for a decomposition. Candidate `S_i` are the
/// minimal ideals isomorphic to sl2; every subset is tried, smallest first,
/// against every ideal complement `R`.
pub fn check_main_decomposition<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Option<Decomposition<F>>> {
    let gamma = family_report(l, HMode::MaximalOnly, budget)?.gamma;
    let quotient = Quotient::new(l, &gamma)?;
    let q = quotient.algebra();
    let mut simple = Vec::new();
    for m in minimal_ideals(q, budget)? {
        if is_split_sl2(&restrict(q, &m)?, budget)? {
            simple.push(m);
        }
    }
    let all_ideals = ideals(q, budget)?;
    for k in 0..=simple.len() {
        for subset in simple.iter().combinations(k) {
            let s_sum = subset
                .iter()
                .try_fold(Subspace::zero(q.field(), q.dim()), |acc, s| acc.sum(s))?;
            if s_sum.dim() != subset.iter().map(|s| s.dim()).sum::<usize>() {
                continue;
            }
            for r in &all_ideals {
                if r.dim() + s_sum.dim() != q.dim() || !r.intersect(&s_sum)?.is_zero() {
                    continue;
                }
                if is_supersolvable(&restrict(q, r)?, budget)?.is_some() {
                    let d = Decomposition {
                        gamma: gamma.clone(),
                        base: q.clone(),
                        summands_s: subset.into_iter().cloned().collect(),
                        r: r.clone(),
                    };
                    d.verify(budget)?;
                    return Ok(Some(d));
                }
            }
        }
    }
    Ok(None)
}
