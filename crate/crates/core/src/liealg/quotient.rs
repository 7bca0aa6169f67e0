use crate::error::{Error, Result};
use crate::exactmath::{Field, Subspace, Vector};
use crate::structure::{is_ideal, is_subalgebra};

use super::LieAlgebra;

/// `L / B` together with the maps between `L` and the quotient.
///
/// The quotient basis is the image of the standard vectors at the non-pivot
/// columns of `B`'s canonical basis.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    algebra: LieAlgebra<F>,
    ideal: Subspace<F>,
    complement: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn new(l: &LieAlgebra<F>, ideal: &Subspace<F>) -> Result<Self> {
        if ideal.ambient_dim() != l.dim() {
            return Err(Error::AmbientMismatch(ideal.ambient_dim(), l.dim()));
        }
        if !is_ideal(l, ideal) {
            return Err(Error::NotAnIdeal);
        }
        let complement = ideal.non_pivots();
        let project = |v: &[F::Elem]| -> Vector<F> {
            let r = ideal.reduce(v);
            complement.iter().map(|&c| r[c].clone()).collect()
        };
        let m = complement.len();
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let v = project(&l.structure_constants(complement[a], complement[b]));
                if v.iter().any(|x| !l.field().is_zero(x)) {
                    entries.push((a, b, v));
                }
            }
        }
        let labels: Vec<String> = complement.iter().map(|&c| l.labels()[c].clone()).collect();
        let algebra = LieAlgebra::new_unchecked(l.field(), m, entries)?.with_labels(labels)?;
        Ok(Self {
            algebra,
            ideal: ideal.clone(),
            complement,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }

    pub fn ideal(&self) -> &Subspace<F> {
        &self.ideal
    }

    /// Coordinates of `v + B` in the quotient basis.
    pub fn project(&self, v: &[F::Elem]) -> Vector<F> {
        let r = self.ideal.reduce(v);
        self.complement.iter().map(|&c| r[c].clone()).collect()
    }

    /// The canonical representative of a coset, supported on the complement.
    pub fn lift(&self, c: &[F::Elem]) -> Vector<F> {
        let f = self.algebra.field();
        let mut v = vec![f.zero(); self.ideal.ambient_dim()];
        for (&idx, x) in self.complement.iter().zip(c) {
            v[idx] = x.clone();
        }
        v
    }

    /// `(S + B) / B` for a subspace `S` of `L`.
    pub fn image(&self, s: &Subspace<F>) -> Subspace<F> {
        Subspace::span(
            self.algebra.field(),
            self.algebra.dim(),
            s.basis().iter().map(|v| self.project(v)),
        )
    }

    /// Full preimage of a subspace of the quotient; always contains `B`.
    pub fn preimage(&self, t: &Subspace<F>) -> Subspace<F> {
        let mut out = self.ideal.clone();
        for v in t.basis() {
            out.insert(&self.lift(v));
        }
        out
    }
}

/// `L1 ⊕ L2` with `[L1, L2] = 0`; the basis of `L1` comes first.
pub fn direct_sum<F: Field>(l1: &LieAlgebra<F>, l2: &LieAlgebra<F>) -> Result<LieAlgebra<F>> {
    if l1.field() != l2.field() {
        return Err(Error::FieldMismatch);
    }
    let f = l1.field();
    let (n1, n2) = (l1.dim(), l2.dim());
    let pad = |v: Vector<F>, offset: usize| -> Vector<F> {
        let mut out = vec![f.zero(); n1 + n2];
        for (k, x) in v.into_iter().enumerate() {
            out[offset + k] = x;
        }
        out
    };
    let entries = l1
        .nonzero_brackets()
        .map(|(i, j, v)| (i, j, pad(v, 0)))
        .chain(
            l2.nonzero_brackets()
                .map(|(i, j, v)| (i + n1, j + n1, pad(v, n1))),
        )
        .collect::<Vec<_>>();
    let mut labels: Vec<String> = l1.labels().to_vec();
    for lab in l2.labels() {
        let mut name = lab.clone();
        while labels.contains(&name) {
            name.push('\'');
        }
        labels.push(name);
    }
    LieAlgebra::new_unchecked(f, n1 + n2, entries)?.with_labels(labels)
}

/// The subalgebra `U` as an algebra in its own right, using the canonical basis of `U`.
pub fn restrict<F: Field>(l: &LieAlgebra<F>, u: &Subspace<F>) -> Result<LieAlgebra<F>> {
    if u.ambient_dim() != l.dim() {
        return Err(Error::AmbientMismatch(u.ambient_dim(), l.dim()));
    }
    if !is_subalgebra(l, u) {
        return Err(Error::NotASubalgebra);
    }
    let b = u.basis();
    let mut entries = Vec::new();
    for a in 0..b.len() {
        for c in a + 1..b.len() {
            let v = u
                .coords(&l.bracket(&b[a], &b[c]))
                .expect("closed under bracket");
            if v.iter().any(|x| !l.field().is_zero(x)) {
                entries.push((a, c, v));
            }
        }
    }
    LieAlgebra::new_unchecked(l.field(), b.len(), entries)
}
