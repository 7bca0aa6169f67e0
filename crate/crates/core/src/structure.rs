//! Subalgebra-level constructions: closures, idealizers, cores, series, centres,
//! socle and Frattini subalgebra.

use crate::error::Result;
use crate::exactmath::{Field, Matrix, Subspace, Vector};
use crate::lattice::{ideals, maximal_subalgebras, LatticeBudget};
use crate::liealg::{LieAlgebra, Quotient};

/// A chain of subspaces produced by a recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesResult<F: Field> {
    pub terms: Vec<Subspace<F>>,
    /// True when the last two terms agree.
    pub stabilized: bool,
}

impl<F: Field> SeriesResult<F> {
    pub fn last(&self) -> &Subspace<F> {
        self.terms.last().expect("series has at least one term")
    }
}

pub fn is_subalgebra<F: Field>(l: &LieAlgebra<F>, u: &Subspace<F>) -> bool {
    let b = u.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| u.contains(&l.bracket(&b[i], &b[j]))))
}

pub fn is_ideal<F: Field>(l: &LieAlgebra<F>, u: &Subspace<F>) -> bool {
    u.basis()
        .iter()
        .all(|v| (0..l.dim()).all(|i| u.contains(&l.bracket(&l.unit(i), v))))
}

/// Span of `[a, b]` over basis vectors `a` of `a_sp` and `b` of `b_sp`.
pub fn product_space<F: Field>(
    l: &LieAlgebra<F>,
    a_sp: &Subspace<F>,
    b_sp: &Subspace<F>,
) -> Subspace<F> {
    let mut out = Subspace::zero(l.field(), l.dim());
    for a in a_sp.basis() {
        for b in b_sp.basis() {
            out.insert(&l.bracket(a, b));
        }
    }
    out
}

/// Smallest subalgebra containing `s`.
pub fn subalgebra_closure<F: Field>(l: &LieAlgebra<F>, s: &[Vector<F>]) -> Subspace<F> {
    let mut u = Subspace::span(l.field(), l.dim(), s.iter().cloned());
    loop {
        let step = product_space(l, &u, &u);
        if !grow(&mut u, &step) {
            return u;
        }
    }
}

/// Smallest ideal containing `s`.
pub fn ideal_closure<F: Field>(l: &LieAlgebra<F>, s: &[Vector<F>]) -> Subspace<F> {
    let full = Subspace::full(l.field(), l.dim());
    let mut u = Subspace::span(l.field(), l.dim(), s.iter().cloned());
    loop {
        let step = product_space(l, &full, &u);
        if !grow(&mut u, &step) {
            return u;
        }
    }
}

fn grow<F: Field>(u: &mut Subspace<F>, extra: &Subspace<F>) -> bool {
    let mut changed = false;
    for v in extra.basis() {
        changed |= u.insert(v);
    }
    changed
}

/// `{x ∈ L : [x, c] ∈ target for every c in cols}`, as the kernel of the stacked
/// maps `x ↦ [x, c] mod target`.
pub(crate) fn bracket_preimage<F: Field>(
    l: &LieAlgebra<F>,
    cols: &[Vector<F>],
    target: &Subspace<F>,
) -> Subspace<F> {
    let n = l.dim();
    if cols.is_empty() {
        return Subspace::full(l.field(), n);
    }
    let rows = (0..n)
        .map(|i| {
            let e = l.unit(i);
            cols.iter()
                .flat_map(|c| target.reduce(&l.bracket(&e, c)))
                .collect()
        })
        .collect();
    Matrix::from_rows(l.field(), n * cols.len(), rows).kernel()
}

/// `I_L(U) = {x : [x, U] ⊆ U}`.
pub fn idealizer<F: Field>(l: &LieAlgebra<F>, u: &Subspace<F>) -> Subspace<F> {
    bracket_preimage(l, u.basis(), u)
}

pub fn centralizer<F: Field>(l: &LieAlgebra<F>, u: &Subspace<F>) -> Subspace<F> {
    bracket_preimage(l, u.basis(), &Subspace::zero(l.field(), l.dim()))
}

/// Largest ideal of `L` inside `u`, as the limit of `U_{k+1} = {x ∈ U_k : [L, x] ⊆ U_k}`.
pub fn core<F: Field>(l: &LieAlgebra<F>, u: &Subspace<F>) -> Subspace<F> {
    let all = l.basis();
    let mut cur = u.clone();
    loop {
        let next = cur
            .intersect(&bracket_preimage(l, &all, &cur))
            .expect("same ambient");
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn descending<F: Field>(
    l: &LieAlgebra<F>,
    step: impl Fn(&Subspace<F>) -> Subspace<F>,
) -> SeriesResult<F> {
    let mut terms = vec![Subspace::full(l.field(), l.dim())];
    for _ in 0..=l.dim() {
        let next = step(terms.last().unwrap());
        let done = &next == terms.last().unwrap();
        terms.push(next);
        if done {
            return SeriesResult {
                terms,
                stabilized: true,
            };
        }
    }
    SeriesResult {
        terms,
        stabilized: false,
    }
}

/// `L^(0) = L`, `L^(i+1) = [L^(i), L^(i)]`.
pub fn derived_series<F: Field>(l: &LieAlgebra<F>) -> SeriesResult<F> {
    descending(l, |t| product_space(l, t, t))
}

/// `L^1 = L`, `L^(i+1) = [L, L^i]`.
pub fn lower_central_series<F: Field>(l: &LieAlgebra<F>) -> SeriesResult<F> {
    let full = Subspace::full(l.field(), l.dim());
    descending(l, |t| product_space(l, &full, t))
}

pub fn center<F: Field>(l: &LieAlgebra<F>) -> Subspace<F> {
    centralizer(l, &Subspace::full(l.field(), l.dim()))
}

/// `Z_0 = 0` and `Z_i/Z_{i-1} = Z(L/Z_{i-1})`, computed by pulling back the
/// centre of each quotient.
pub fn upper_central_series<F: Field>(l: &LieAlgebra<F>) -> SeriesResult<F> {
    let mut terms = vec![Subspace::zero(l.field(), l.dim())];
    for _ in 0..=l.dim() {
        let z = terms.last().unwrap();
        let q = Quotient::new(l, z).expect("terms of the upper central series are ideals");
        let next = q.preimage(&center(q.algebra()));
        let done = &next == z;
        terms.push(next);
        if done {
            return SeriesResult {
                terms,
                stabilized: true,
            };
        }
    }
    SeriesResult {
        terms,
        stabilized: false,
    }
}

pub fn hypercentre<F: Field>(l: &LieAlgebra<F>) -> Subspace<F> {
    upper_central_series(l).last().clone()
}

/// Nonzero ideals containing no smaller nonzero ideal.
pub fn minimal_ideals<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<Subspace<F>>> {
    let all: Vec<_> = ideals(l, budget)?
        .into_iter()
        .filter(|i| !i.is_zero())
        .collect();
    Ok(all
        .iter()
        .filter(|i| !all.iter().any(|j| j.dim() < i.dim() && j.leq(i).unwrap()))
        .cloned()
        .collect())
}

/// Sum of the minimal abelian ideals.
pub fn abelian_socle<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<Subspace<F>> {
    let mut out = Subspace::zero(l.field(), l.dim());
    for m in minimal_ideals(l, budget)? {
        if product_space(l, &m, &m).is_zero() {
            out = out.sum(&m)?;
        }
    }
    Ok(out)
}

/// Intersection of the maximal subalgebras (`L` itself when there are none).
pub fn frattini<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<Subspace<F>> {
    let mut out = Subspace::full(l.field(), l.dim());
    for m in maximal_subalgebras(l, budget)? {
        out = out.intersect(&m)?;
    }
    Ok(out)
}

/// The Frattini ideal: the core of the Frattini subalgebra.
pub fn phi<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<Subspace<F>> {
    Ok(core(l, &frattini(l, budget)?))
}

pub fn is_phi_free<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<bool> {
    Ok(phi(l, budget)?.is_zero())
}
