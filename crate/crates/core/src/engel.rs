//! Engel subalgebras, Fitting decompositions, Cartan subalgebras and the
//! maximal-subalgebra families built from them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::is_nilpotent;
use crate::error::{Error, Result};
use crate::exactmath::{enumerate_vectors, Field, ScalarRepr, Subspace, Vector};
use crate::lattice::{maximal_subalgebras, subalgebras, LatticeBudget};
use crate::liealg::{restrict, LieAlgebra};
use crate::structure::{core, idealizer};

/// `E_L(x)`: the kernel of `(ad x)^dim L`.
pub fn engel_subalgebra<F: Field>(l: &LieAlgebra<F>, x: &[F::Elem]) -> Subspace<F> {
    l.ad(x).pow(l.dim() as u32).kernel()
}

/// `L = E_L(x) ⊕ L_1(x)` with `L_1(x)` the image of `(ad x)^dim L`.
pub fn fitting_decomposition<F: Field>(
    l: &LieAlgebra<F>,
    x: &[F::Elem],
) -> (Subspace<F>, Subspace<F>) {
    let m = l.ad(x).pow(l.dim() as u32);
    (m.kernel(), m.image())
}

pub fn is_ad_nilpotent<F: Field>(l: &LieAlgebra<F>, x: &[F::Elem]) -> bool {
    l.ad(x).pow(l.dim() as u32).is_zero()
}

/// Every distinct `E_L(x)`, each paired with the least `x` producing it.
pub fn engel_subalgebras<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<(Subspace<F>, Vector<F>)>> {
    let sweep = enumerate_vectors(l.field(), l.dim(), budget.max_elements)?;
    let found: BTreeMap<Subspace<F>, Vector<F>> = sweep
        .par_bridge()
        .map(|x| (engel_subalgebra(l, &x), x))
        .fold(BTreeMap::new, |mut acc, (e, x)| {
            merge_min(&mut acc, e, x);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (e, x) in b {
                merge_min(&mut a, e, x);
            }
            a
        });
    Ok(found.into_iter().collect())
}

fn merge_min<K: Ord, V: Ord>(map: &mut BTreeMap<K, V>, k: K, v: V) {
    match map.get_mut(&k) {
        Some(old) if *old <= v => {}
        Some(old) => *old = v,
        None => {
            map.insert(k, v);
        }
    }
}

fn minimal<F: Field>(set: Vec<Subspace<F>>) -> Vec<Subspace<F>> {
    let keep: Vec<bool> = set
        .iter()
        .map(|a| !set.iter().any(|b| b.dim() < a.dim() && b.leq(a).unwrap()))
        .collect();
    set.into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect()
}

fn is_cartan<F: Field>(l: &LieAlgebra<F>, c: &Subspace<F>) -> bool {
    idealizer(l, c) == *c && is_nilpotent(&restrict(l, c).expect("subalgebra"))
}

/// Nilpotent self-idealizing subalgebras found by filtering the full lattice.
pub fn cartan_subalgebras_by_lattice<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<Subspace<F>>> {
    Ok(subalgebras(l, budget)?
        .into_iter()
        .filter(|c| is_cartan(l, c))
        .collect())
}

/// Cartan subalgebras: the minimal Engel subalgebras when `q ≥ dim L`, and the
/// lattice filter otherwise. Every result is checked to be nilpotent and
/// self-idealizing.
pub fn cartan_subalgebras<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Vec<Subspace<F>>> {
    let q = l.field().order().ok_or(Error::InfiniteField)?;
    if q < l.dim() as u64 {
        return cartan_subalgebras_by_lattice(l, budget);
    }
    let engels = engel_subalgebras(l, budget)?
        .into_iter()
        .map(|(e, _)| e)
        .collect();
    let out = minimal(engels);
    if let Some(bad) = out.iter().find(|c| !is_cartan(l, c)) {
        return Err(Error::InvariantViolation(format!(
            "minimal Engel subalgebra of dimension {} is not a Cartan subalgebra",
            bad.dim()
        )));
    }
    Ok(out)
}

/// Why a subspace belongs to a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence<F: Field> {
    /// Some `x` with `E_L(x) ⊆ M`.
    pub witness_x: Option<Vector<F>>,
    /// A Cartan subalgebra inside `M`, recorded when `q ≥ dim L`.
    pub cartan: Option<Subspace<F>>,
    pub codim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member<F: Field> {
    pub subspace: Subspace<F>,
    pub evidence: Evidence<F>,
}

impl<F: Field> Member<F> {
    fn plain(m: &Subspace<F>) -> Self {
        Self {
            subspace: m.clone(),
            evidence: Evidence {
                witness_x: None,
                cartan: None,
                codim: m.codim(),
            },
        }
    }
}

/// Which subalgebras of codimension at least two make up the family `ℋ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HMode {
    #[default]
    MaximalOnly,
    AllSubalgebras,
}

fn g_from<F: Field>(
    l: &LieAlgebra<F>,
    maximals: &[Subspace<F>],
    engels: &[(Subspace<F>, Vector<F>)],
    cartans: Option<&[Subspace<F>]>,
) -> Result<Vec<Member<F>>> {
    let mut out = Vec::new();
    for m in maximals {
        let witness = engels
            .iter()
            .find(|(e, _)| e.leq(m).unwrap())
            .map(|(_, x)| x.clone());
        let cartan = cartans.and_then(|cs| cs.iter().find(|c| c.leq(m).unwrap()).cloned());
        if cartans.is_some() && witness.is_some() != cartan.is_some() {
            return Err(Error::CrossCheckMismatch(format!(
                "maximal subalgebra of codimension {} in {:?}: Engel witness {}, Cartan {}",
                m.codim(),
                l.field(),
                witness.is_some(),
                cartan.is_some()
            )));
        }
        if witness.is_some() {
            out.push(Member {
                subspace: m.clone(),
                evidence: Evidence {
                    witness_x: witness,
                    cartan,
                    codim: m.codim(),
                },
            });
        }
    }
    Ok(out)
}

fn cross_check_cartans<F: Field>(
    l: &LieAlgebra<F>,
    budget: &LatticeBudget,
) -> Result<Option<Vec<Subspace<F>>>> {
    let q = l.field().order().ok_or(Error::InfiniteField)?;
    if q >= l.dim() as u64 {
        Ok(Some(cartan_subalgebras_by_lattice(l, budget)?))
    } else {
        Ok(None)
    }
}

/// `𝒢`: maximal subalgebras containing some `E_L(x)`. When `q ≥ dim L` the
/// Cartan-containment criterion is evaluated as well and must agree.
pub fn family_g<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<Vec<Member<F>>> {
    let maximals = maximal_subalgebras(l, budget)?;
    let engels = engel_subalgebras(l, budget)?;
    let cartans = cross_check_cartans(l, budget)?;
    g_from(l, &maximals, &engels, cartans.as_deref())
}

/// `𝒯`: self-idealizing maximal subalgebras.
pub fn family_t<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<Vec<Member<F>>> {
    Ok(t_from(l, &maximal_subalgebras(l, budget)?))
}

fn t_from<F: Field>(l: &LieAlgebra<F>, maximals: &[Subspace<F>]) -> Vec<Member<F>> {
    maximals
        .iter()
        .filter(|m| idealizer(l, m) == **m)
        .map(Member::plain)
        .collect()
}

/// `ℋ`: subalgebras of codimension at least two, maximal ones only by default.
pub fn family_h<F: Field>(
    l: &LieAlgebra<F>,
    mode: HMode,
    budget: &LatticeBudget,
) -> Result<Vec<Member<F>>> {
    let pool = match mode {
        HMode::MaximalOnly => maximal_subalgebras(l, budget)?,
        HMode::AllSubalgebras => subalgebras(l, budget)?,
    };
    Ok(h_from(&pool))
}

fn h_from<F: Field>(pool: &[Subspace<F>]) -> Vec<Member<F>> {
    pool.iter()
        .filter(|m| m.codim() >= 2)
        .map(Member::plain)
        .collect()
}

/// `𝒟 = 𝒢 ∩ ℋ`, keeping the `𝒢` evidence.
pub fn family_d<F: Field>(g: &[Member<F>], h: &[Member<F>]) -> Vec<Member<F>> {
    g.iter()
        .filter(|m| h.iter().any(|k| k.subspace == m.subspace))
        .cloned()
        .collect()
}

/// Intersection of a family, or `L` itself when the family is empty.
fn meet<F: Field>(l: &LieAlgebra<F>, members: &[Member<F>]) -> Subspace<F> {
    members
        .iter()
        .fold(Subspace::full(l.field(), l.dim()), |acc, m| {
            acc.intersect(&m.subspace).unwrap()
        })
}

/// The four families, their intersections and the cores of those.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport<F: Field> {
    pub h_mode: HMode,
    pub g_members: Vec<Member<F>>,
    pub t_members: Vec<Member<F>>,
    pub h_members: Vec<Member<F>>,
    pub d_members: Vec<Member<F>>,
    pub g: Subspace<F>,
    pub t: Subspace<F>,
    pub h: Subspace<F>,
    pub d: Subspace<F>,
    pub gamma: Subspace<F>,
    pub tau: Subspace<F>,
    pub eta: Subspace<F>,
    pub delta: Subspace<F>,
}

impl<F: Field> FamilyReport<F> {
    pub fn g_empty(&self) -> bool {
        self.g_members.is_empty()
    }
    pub fn t_empty(&self) -> bool {
        self.t_members.is_empty()
    }
    pub fn h_empty(&self) -> bool {
        self.h_members.is_empty()
    }
    pub fn d_empty(&self) -> bool {
        self.d_members.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let members = |ms: &[Member<F>]| -> Value {
            ms.iter()
                .map(|m| {
                    let f = m.subspace.field();
                    json!({
                        "basis": m.subspace.to_repr(),
                        "codim": m.evidence.codim,
                        "witness_x": m.evidence.witness_x.as_ref().map(|x| x.iter().map(|a| f.encode(a)).collect::<Vec<ScalarRepr>>()),
                        "cartan": m.evidence.cartan.as_ref().map(Subspace::to_repr),
                    })
                })
                .collect()
        };
        json!({
            "h_mode": self.h_mode,
            "families": {
                "G": members(&self.g_members),
                "T": members(&self.t_members),
                "H": members(&self.h_members),
                "D": members(&self.d_members),
            },
            "empty_family_is_L": {
                "G": self.g_empty(), "T": self.t_empty(), "H": self.h_empty(), "D": self.d_empty(),
            },
            "intersections": {
                "G": self.g.to_repr(), "T": self.t.to_repr(), "H": self.h.to_repr(), "D": self.d.to_repr(),
            },
            "cores": {
                "gamma": self.gamma.to_repr(), "tau": self.tau.to_repr(),
                "eta": self.eta.to_repr(), "delta": self.delta.to_repr(),
            },
        })
    }
}

/// Computes every family from one lattice enumeration. Fails if `γ(L)` is not
/// nil on `L`, which would indicate a bug.
pub fn family_report<F: Field>(
    l: &LieAlgebra<F>,
    mode: HMode,
    budget: &LatticeBudget,
) -> Result<FamilyReport<F>> {
    let maximals = maximal_subalgebras(l, budget)?;
    let engels = engel_subalgebras(l, budget)?;
    let cartans = cross_check_cartans(l, budget)?;
    let g_members = g_from(l, &maximals, &engels, cartans.as_deref())?;
    let t_members = t_from(l, &maximals);
    let h_members = match mode {
        HMode::MaximalOnly => h_from(&maximals),
        HMode::AllSubalgebras => h_from(&subalgebras(l, budget)?),
    };
    let d_members = family_d(&g_members, &h_members);
    let (g, t, h, d) = (
        meet(l, &g_members),
        meet(l, &t_members),
        meet(l, &h_members),
        meet(l, &d_members),
    );
    let report = FamilyReport {
        h_mode: mode,
        gamma: core(l, &g),
        tau: core(l, &t),
        eta: core(l, &h),
        delta: core(l, &d),
        g_members,
        t_members,
        h_members,
        d_members,
        g,
        t,
        h,
        d,
    };
    for x in report.gamma.elements(budget.max_elements)? {
        if !is_ad_nilpotent(l, &x) {
            return Err(Error::InvariantViolation(
                "gamma(L) contains an element with non-nilpotent ad".into(),
            ));
        }
    }
    Ok(report)
}
