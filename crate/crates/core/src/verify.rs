//! One checker per structural result that can be decided by exhaustive search
//! over a finite field, and a driver that runs them over a corpus.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::classify::{
    check_main_decomposition, is_c_ideal, is_nilpotent, is_solvable, is_split_sl2,
    is_supersolvable, verify_chain,
};
use crate::engel::{
    cartan_subalgebras_by_lattice, engel_subalgebra, engel_subalgebras, family_report,
    is_ad_nilpotent, FamilyReport, HMode,
};
use crate::error::{Error, Result};
use crate::exactmath::{enumerate_vectors, is_square, Field, ScalarRepr, Subspace};
use crate::lattice::{codim_one_subalgebras, ideals, maximal_subalgebras, LatticeBudget};
use crate::liealg::{restrict, LieAlgebra, Quotient};
use crate::structure::{derived_series, hypercentre, is_ideal};
use crate::zoo::{h_subspace, CorpusItem};

pub type Rows = Vec<Vec<ScalarRepr>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// A failure that can be re-derived from the algebra and the data stored here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
    },
    Antisymmetry {
        i: usize,
        j: usize,
    },
    /// `sub ⊄ sup`, both in an ambient space of dimension `ambient`.
    NotSubset {
        claim: String,
        ambient: usize,
        sub: Rows,
        sup: Rows,
    },
    NotEqual {
        claim: String,
        ambient: usize,
        left: Rows,
        right: Rows,
    },
    /// `x ∈ within` but `ad x` is not nilpotent.
    NotNil {
        x: Vec<ScalarRepr>,
        within: Rows,
    },
    /// `ad x` is nilpotent but `(ad x)^dim L ≠ 0`.
    AdExponent {
        x: Vec<ScalarRepr>,
    },
    /// The two sides of an equivalence disagree.
    Mismatch {
        claim: String,
        lhs: bool,
        rhs: bool,
        subject: Option<Rows>,
    },
    Error {
        message: String,
    },
}

impl Counterexample {
    /// Re-derives the failure. Data-only claims are re-checked directly; the
    /// others re-run the checker and compare.
    pub fn recheck<F: Field>(
        &self,
        theorem: &str,
        item: &CorpusItem<F>,
        budget: &LatticeBudget,
    ) -> Result<bool> {
        let l = &item.algebra;
        let f = l.field();
        let n = l.dim();
        let vector = |x: &[ScalarRepr]| x.iter().map(|r| f.decode(r)).collect::<Result<Vec<_>>>();
        match self {
            Self::Jacobi { i, j, k } => {
                Ok(!l.is_zero_vector(&l.jacobiator(&l.unit(*i), &l.unit(*j), &l.unit(*k))))
            }
            Self::Antisymmetry { i, j } => {
                let a = l.structure_constants(*i, *j);
                let b = l.structure_constants(*j, *i);
                Ok(a.iter().zip(&b).any(|(x, y)| !f.is_zero(&f.add(x, y))))
            }
            Self::NotSubset {
                ambient, sub, sup, ..
            } => {
                let sub = Subspace::from_repr(f, *ambient, sub)?;
                Ok(!sub.leq(&Subspace::from_repr(f, *ambient, sup)?)?)
            }
            Self::NotEqual {
                ambient,
                left,
                right,
                ..
            } => {
                Ok(Subspace::from_repr(f, *ambient, left)?
                    != Subspace::from_repr(f, *ambient, right)?)
            }
            Self::NotNil { x, within } => {
                let x = vector(x)?;
                Ok(Subspace::from_repr(f, n, within)?.contains(&x) && !is_ad_nilpotent(l, &x))
            }
            Self::AdExponent { x } => {
                let ad = l.ad(&vector(x)?);
                Ok(ad.pow((n * n + 1) as u32).is_zero() && !ad.pow(n as u32).is_zero())
            }
            Self::Mismatch { .. } | Self::Error { .. } => {
                let again = run_checker(theorem, item, budget)?;
                Ok(again.counterexample.as_ref() == Some(self))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub theorem: String,
    pub algebra: String,
    pub verdict: Verdict,
    pub hypotheses: Vec<String>,
    pub payload: Value,
    #[serde(skip)]
    pub counterexample: Option<Counterexample>,
}

/// Identifier and statement of every checker.
pub struct CheckerInfo {
    pub id: &'static str,
    pub statement: &'static str,
}

pub const CHECKERS: &[CheckerInfo] = &[
    CheckerInfo { id: "lie-axioms", statement: "structure constants are antisymmetric and satisfy the Jacobi identity" },
    CheckerInfo { id: "cartan-containment", statement: "if q >= dim L: M contains some E_L(x) iff M contains a Cartan subalgebra, for every maximal M" },
    CheckerInfo { id: "nilpotency-criteria", statement: "gamma(L) is nil and nilpotent; L nilpotent iff L = gamma(L) iff G is empty iff every M in G is an ideal iff L/B is nilpotent for some ideal B inside gamma(L)" },
    CheckerInfo { id: "engel-quotients", statement: "for ideals B: Engel subalgebras, G-membership and gamma(L) pass to L/B; with q >= dim L also G descends and gamma(L)/B = gamma(L/B) for B inside gamma(L)" },
    CheckerInfo { id: "solvable-self-idealizing", statement: "for solvable L: G equals the set of self-idealizing maximal subalgebras and gamma(L) = tau(L)" },
    CheckerInfo { id: "supersolvable-codim-one", statement: "for solvable L: supersolvable iff every M in G has codimension one; L/B supersolvable with B inside gamma(L) forces L supersolvable" },
    CheckerInfo { id: "ad-nilpotent-exponent", statement: "every ad-nilpotent x satisfies (ad x)^dim L = 0" },
    CheckerInfo { id: "lm-codim-one", statement: "for L_m(Gamma): every M in G has codimension one iff L is split sl2; codimension-one subalgebra counts; L_1 isomorphism type" },
    CheckerInfo { id: "codim-one-decomposition", statement: "if q >= dim L: every M in G has codimension one iff L/gamma(L) splits as split-sl2 ideals plus a supersolvable ideal" },
    CheckerInfo { id: "supersolvable-delta", statement: "if q >= dim L: L supersolvable iff delta(L) = L and L/gamma(L) has no ideal isomorphic to split sl2" },
    CheckerInfo { id: "eta-delta-chain", statement: "hypercentre <= eta(L) <= delta(L); eta and delta pass to quotients; for solvable L delta(L) and eta(L) are supersolvable" },
    CheckerInfo { id: "c-ideal-solvable", statement: "every M in D is a c-ideal iff L is solvable" },
];

#[derive(Default)]
struct Run {
    hypotheses: Vec<String>,
    clauses: Map<String, Value>,
    extra: Map<String, Value>,
    failure: Option<Counterexample>,
    skipped: Option<String>,
}

impl Run {
    fn gate(&mut self, name: impl Into<String>, holds: bool) -> bool {
        let name = name.into();
        self.hypotheses
            .push(format!("{name}: {}", if holds { "holds" } else { "fails" }));
        holds
    }

    fn skip(mut self, reason: impl Into<String>) -> Result<Self> {
        self.skipped = Some(reason.into());
        Ok(self)
    }

    fn entry(&mut self, name: &str) -> &mut Map<String, Value> {
        self.clauses
            .entry(name)
            .or_insert_with(|| json!({"status": "pass", "cases": 0}))
            .as_object_mut()
            .unwrap()
    }

    fn bump(&mut self, name: &str, key: &str) {
        let e = self.entry(name);
        let v = e.get(key).and_then(Value::as_u64).unwrap_or(0);
        e.insert(key.into(), json!(v + 1));
    }

    fn check(&mut self, name: &str, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.bump(name, "cases");
        if !ok {
            self.entry(name).insert("status".into(), json!("fail"));
            if self.failure.is_none() {
                self.failure = Some(cx());
            }
        }
    }

    /// Records `lhs ⇔ rhs` as two implications, counting vacuous directions.
    fn iff(&mut self, name: &str, lhs: bool, rhs: bool, subject: impl FnOnce() -> Option<Rows>) {
        if !lhs {
            self.bump(name, "forward_vacuous");
        }
        if !rhs {
            self.bump(name, "backward_vacuous");
        }
        self.entry(name)
            .insert("last".into(), json!({"lhs": lhs, "rhs": rhs}));
        self.check(name, lhs == rhs, || Counterexample::Mismatch {
            claim: name.to_string(),
            lhs,
            rhs,
            subject: subject(),
        });
    }

    fn skip_clause(&mut self, name: &str, reason: &str) {
        self.clauses
            .insert(name.into(), json!({"status": "skipped", "reason": reason}));
    }

    fn note(&mut self, key: &str, v: Value) {
        self.extra.insert(key.into(), v);
    }

    fn finish(self, theorem: &str, algebra: String) -> VerdictReport {
        let mut payload = self.extra;
        payload.insert("clauses".into(), Value::Object(self.clauses));
        let verdict = if let Some(reason) = &self.skipped {
            payload.insert("reason".into(), json!(reason));
            Verdict::Skipped
        } else if let Some(cx) = &self.failure {
            payload.insert("counterexample".into(), serde_json::to_value(cx).unwrap());
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        VerdictReport {
            theorem: theorem.into(),
            algebra,
            verdict,
            hypotheses: self.hypotheses,
            payload: Value::Object(payload),
            counterexample: if verdict == Verdict::Fail {
                self.failure
            } else {
                None
            },
        }
    }
}

fn rows<F: Field>(s: &Subspace<F>) -> Rows {
    s.to_repr()
}

fn encode<F: Field>(f: &F, x: &[F::Elem]) -> Vec<ScalarRepr> {
    x.iter().map(|a| f.encode(a)).collect()
}

fn not_subset<F: Field>(claim: String, sub: &Subspace<F>, sup: &Subspace<F>) -> Counterexample {
    Counterexample::NotSubset {
        claim,
        ambient: sub.ambient_dim(),
        sub: rows(sub),
        sup: rows(sup),
    }
}

fn not_equal<F: Field>(claim: String, a: &Subspace<F>, b: &Subspace<F>) -> Counterexample {
    Counterexample::NotEqual {
        claim,
        ambient: a.ambient_dim(),
        left: rows(a),
        right: rows(b),
    }
}

fn large_field<F: Field>(run: &mut Run, l: &LieAlgebra<F>) -> Result<bool> {
    let q = l.field().order().ok_or(Error::InfiniteField)?;
    Ok(run.gate(
        format!("q >= dim L ({q} >= {})", l.dim()),
        q >= l.dim() as u64,
    ))
}

fn report<F: Field>(l: &LieAlgebra<F>, budget: &LatticeBudget) -> Result<FamilyReport<F>> {
    family_report(l, HMode::MaximalOnly, budget)
}

fn g_set<F: Field>(r: &FamilyReport<F>) -> Vec<Subspace<F>> {
    r.g_members.iter().map(|m| m.subspace.clone()).collect()
}

fn all_codim_one<F: Field>(r: &FamilyReport<F>) -> (bool, Option<Rows>) {
    let bad = r.g_members.iter().find(|m| m.evidence.codim != 1);
    (bad.is_none(), bad.map(|m| rows(&m.subspace)))
}

fn lie_axioms<F: Field>(item: &CorpusItem<F>, _: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    match item.algebra.validate() {
        Ok(()) => run.check("antisymmetry-and-jacobi", true, || unreachable!()),
        Err(Error::JacobiViolation { i, j, k }) => {
            run.check("antisymmetry-and-jacobi", false, || {
                Counterexample::Jacobi { i, j, k }
            })
        }
        Err(Error::AntisymmetryViolation { i, j }) => {
            run.check("antisymmetry-and-jacobi", false, || {
                Counterexample::Antisymmetry { i, j }
            })
        }
        Err(e) => return Err(e),
    }
    Ok(run)
}

fn cartan_containment<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    if !large_field(&mut run, l)? {
        return run.skip("the field has fewer than dim L elements");
    }
    let engels = engel_subalgebras(l, budget)?;
    let cartans = cartan_subalgebras_by_lattice(l, budget)?;
    run.note("cartan_count", json!(cartans.len()));
    for m in maximal_subalgebras(l, budget)? {
        let lhs = engels.iter().any(|(e, _)| e.leq(&m).unwrap());
        let rhs = cartans.iter().any(|c| c.leq(&m).unwrap());
        run.iff("engel-containment-iff-cartan-containment", lhs, rhs, || {
            Some(rows(&m))
        });
    }
    Ok(run)
}

fn nilpotency_criteria<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    let nil = is_nilpotent(l);
    let r = report(l, budget)?;
    for x in r.gamma.elements(budget.max_elements)? {
        let ok = is_ad_nilpotent(l, &x);
        run.check("gamma-is-nil", ok, || Counterexample::NotNil {
            x: encode(l.field(), &x),
            within: rows(&r.gamma),
        });
    }
    let gamma_alg = restrict(l, &r.gamma)?;
    run.check("gamma-is-nilpotent", is_nilpotent(&gamma_alg), || {
        Counterexample::Mismatch {
            claim: "gamma(L) is nilpotent".into(),
            lhs: true,
            rhs: false,
            subject: Some(rows(&r.gamma)),
        }
    });
    run.iff("nilpotent-iff-gamma-is-L", nil, r.gamma.is_full(), || {
        Some(rows(&r.gamma))
    });
    run.iff("nilpotent-iff-G-empty", nil, r.g_empty(), || None);
    let non_ideal = r.g_members.iter().find(|m| !is_ideal(l, &m.subspace));
    run.iff(
        "nilpotent-iff-G-members-are-ideals",
        nil,
        non_ideal.is_none(),
        || non_ideal.map(|m| rows(&m.subspace)),
    );
    let mut some_quotient = false;
    for b in ideals(l, budget)? {
        if !b.leq(&r.gamma)? {
            continue;
        }
        let qnil = is_nilpotent(Quotient::new(l, &b)?.algebra());
        some_quotient |= qnil;
        run.check("nilpotent-quotient-by-ideal-in-gamma", !qnil || nil, || {
            Counterexample::Mismatch {
                claim: "L/B nilpotent with B inside gamma(L) implies L nilpotent".into(),
                lhs: qnil,
                rhs: nil,
                subject: Some(rows(&b)),
            }
        });
    }
    run.iff(
        "nilpotent-iff-some-quotient-by-ideal-in-gamma-nilpotent",
        nil,
        some_quotient,
        || None,
    );
    Ok(run)
}

fn engel_quotients<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    let big = large_field(&mut run, l)?;
    let r = report(l, budget)?;
    let g = g_set(&r);
    let xs: Vec<_> = enumerate_vectors(l.field(), l.dim(), budget.max_elements)?.collect();
    let engels: Vec<_> = xs.iter().map(|x| engel_subalgebra(l, x)).collect();
    for b in ideals(l, budget)? {
        let qt = Quotient::new(l, &b)?;
        let ql = qt.algebra();
        for (x, e) in xs.iter().zip(&engels) {
            let img = qt.image(e);
            let eq = engel_subalgebra(ql, &qt.project(x));
            run.check("engel-image", img.leq(&eq)?, || {
                not_subset(
                    format!(
                        "(E_L(x)+B)/B <= E_(L/B)(x+B), x = {:?}",
                        encode(l.field(), x)
                    ),
                    &img,
                    &eq,
                )
            });
        }
        let rq = report(ql, budget)?;
        for m in &rq.g_members {
            let pre = qt.preimage(&m.subspace);
            run.check("g-lift", g.contains(&pre), || Counterexample::Mismatch {
                claim: "preimage of a G-member of L/B lies in G".into(),
                lhs: true,
                rhs: false,
                subject: Some(rows(&pre)),
            });
        }
        let gi = qt.image(&r.gamma);
        run.check("gamma-image", gi.leq(&rq.gamma)?, || {
            not_subset("(gamma(L)+B)/B <= gamma(L/B)".into(), &gi, &rq.gamma)
        });
        if big {
            let gq = g_set(&rq);
            for m in g.iter().filter(|m| b.leq(m).unwrap()) {
                let im = qt.image(m);
                run.check("g-descent", gq.contains(&im), || Counterexample::Mismatch {
                    claim: "M in G with B <= M gives M/B in G(L/B)".into(),
                    lhs: true,
                    rhs: false,
                    subject: Some(rows(m)),
                });
            }
            if b.leq(&r.gamma)? {
                run.check("gamma-quotient-equality", gi == rq.gamma, || {
                    not_equal("gamma(L)/B = gamma(L/B)".into(), &gi, &rq.gamma)
                });
            }
        }
    }
    if !big {
        run.skip_clause("g-descent", "q < dim L");
        run.skip_clause("gamma-quotient-equality", "q < dim L");
    }
    Ok(run)
}

fn solvable_self_idealizing<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    if !run.gate("L solvable", is_solvable(l)) {
        return run.skip("L is not solvable");
    }
    let r = report(l, budget)?;
    let g = g_set(&r);
    let t: Vec<_> = r.t_members.iter().map(|m| m.subspace.clone()).collect();
    let odd = g
        .iter()
        .find(|m| !t.contains(m))
        .or_else(|| t.iter().find(|m| !g.contains(m)));
    run.check("G-equals-T", odd.is_none(), || Counterexample::Mismatch {
        claim: "M in G iff I_L(M) = M".into(),
        lhs: g.contains(odd.unwrap()),
        rhs: t.contains(odd.unwrap()),
        subject: odd.map(rows),
    });
    run.check("gamma-equals-tau", r.gamma == r.tau, || {
        not_equal("gamma(L) = tau(L)".into(), &r.gamma, &r.tau)
    });
    Ok(run)
}

fn supersolvable_codim_one<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    if !run.gate("L solvable", is_solvable(l)) {
        return run.skip("L is not solvable");
    }
    let chain = is_supersolvable(l, budget)?;
    if let Some(c) = &chain {
        run.check("chain-verifies", verify_chain(l, c).is_ok(), || {
            Counterexample::Error {
                message: "returned ideal chain fails verification".into(),
            }
        });
    }
    let ss = chain.is_some();
    let r = report(l, budget)?;
    let (codim_one, bad) = all_codim_one(&r);
    run.iff("supersolvable-iff-G-codim-one", ss, codim_one, || bad);
    for b in ideals(l, budget)? {
        if !b.leq(&r.gamma)? {
            continue;
        }
        let qss = is_supersolvable(Quotient::new(l, &b)?.algebra(), budget)?.is_some();
        run.check(
            "supersolvable-quotient-by-ideal-in-gamma",
            !qss || ss,
            || Counterexample::Mismatch {
                claim: "L/B supersolvable with B inside gamma(L) implies L supersolvable".into(),
                lhs: qss,
                rhs: ss,
                subject: Some(rows(&b)),
            },
        );
    }
    Ok(run)
}

fn ad_nilpotent_exponent<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    let n = l.dim();
    let mut count = 0u64;
    for x in enumerate_vectors(l.field(), n, budget.max_elements)? {
        let ad = l.ad(&x);
        if !ad.pow((n * n + 1) as u32).is_zero() {
            continue;
        }
        count += 1;
        run.check("ad-nilpotent-exponent", ad.pow(n as u32).is_zero(), || {
            Counterexample::AdExponent {
                x: encode(l.field(), &x),
            }
        });
    }
    run.note("ad_nilpotent_elements", json!(count));
    Ok(run)
}

fn lm_codim_one<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let Some(info) = &item.lm else {
        return run.skip("not a member of the L_m family");
    };
    let l = &item.algebra;
    let f = l.field();
    let m = info.m;
    run.note("m", json!(m));
    run.note("gamma", json!(encode(f, &info.gamma)));
    let r = report(l, budget)?;
    let (codim_one, bad) = all_codim_one(&r);
    let split = is_split_sl2(l, budget)?;
    run.iff("G-codim-one-iff-split-sl2", codim_one, split, || bad);
    let codim1 = codim_one_subalgebras(l, budget)?;
    run.note("codim_one_count", json!(codim1.len()));
    let h0 = h_subspace(l, 0)?;
    if m > 1 && m % 2 == 1 {
        let want = vec![h0.clone()];
        let got = codim1.clone();
        run.check("unique-codim-one-subalgebra", got == want, || {
            Counterexample::Mismatch {
                claim: format!(
                    "H_(m,0) is the only codimension-one subalgebra ({} found)",
                    got.len()
                ),
                lhs: true,
                rhs: false,
                subject: got.first().map(rows),
            }
        });
        let ids = ideals(l, budget)?;
        run.check("simple", ids.len() == 2, || Counterexample::Mismatch {
            claim: "L is simple".into(),
            lhs: true,
            rhs: false,
            subject: ids.iter().find(|i| !i.is_zero() && !i.is_full()).map(rows),
        });
    } else if m > 1 {
        let mut want = vec![derived_series(l).terms[1].clone(), h0];
        want.sort();
        want.dedup();
        run.check(
            "two-codim-one-subalgebras",
            want.len() == 2 && codim1 == want,
            || Counterexample::Mismatch {
                claim: format!(
                    "exactly L^(1) and H_(m,0) have codimension one ({} found)",
                    codim1.len()
                ),
                lhs: true,
                rhs: false,
                subject: codim1.iter().find(|c| !want.contains(c)).map(rows),
            },
        );
    } else if f.characteristic() != 2 {
        run.check("l1-is-split-sl2", split, || Counterexample::Mismatch {
            claim: "L_1(Gamma) is split sl2 away from characteristic two".into(),
            lhs: true,
            rhs: false,
            subject: None,
        });
    } else {
        let square = is_square(f, &info.gamma[0])?;
        run.iff("l1-split-iff-gamma0-square", split, square, || None);
    }
    Ok(run)
}

fn codim_one_decomposition<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    if !large_field(&mut run, l)? {
        return run.skip("the field has fewer than dim L elements");
    }
    let r = report(l, budget)?;
    let (codim_one, bad) = all_codim_one(&r);
    let dec = check_main_decomposition(l, budget)?;
    if let Some(d) = &dec {
        run.note(
            "decomposition",
            json!({"summands": d.summands_s.iter().map(rows).collect::<Vec<_>>(), "r": rows(&d.r), "gamma": rows(&d.gamma)}),
        );
    }
    run.iff(
        "G-codim-one-iff-decomposition",
        codim_one,
        dec.is_some(),
        || bad,
    );
    Ok(run)
}

fn supersolvable_delta<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    if !large_field(&mut run, l)? {
        return run.skip("the field has fewer than dim L elements");
    }
    let ss = is_supersolvable(l, budget)?.is_some();
    let r = report(l, budget)?;
    let qt = Quotient::new(l, &r.gamma)?;
    let q = qt.algebra();
    let mut sl2_ideal = None;
    for i in ideals(q, budget)?.into_iter().filter(|i| i.dim() == 3) {
        if is_split_sl2(&restrict(q, &i)?, budget)? {
            sl2_ideal = Some(qt.preimage(&i));
            break;
        }
    }
    let rhs = r.delta.is_full() && sl2_ideal.is_none();
    run.iff(
        "supersolvable-iff-delta-full-without-sl2-ideal",
        ss,
        rhs,
        || {
            sl2_ideal
                .as_ref()
                .map(rows)
                .or_else(|| Some(rows(&r.delta)))
        },
    );
    Ok(run)
}

fn eta_delta_chain<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    let big = large_field(&mut run, l)?;
    let r = report(l, budget)?;
    let z = hypercentre(l);
    run.check("hypercentre-in-eta", z.leq(&r.eta)?, || {
        not_subset("Z_inf <= eta(L)".into(), &z, &r.eta)
    });
    run.check("eta-in-delta", r.eta.leq(&r.delta)?, || {
        not_subset("eta(L) <= delta(L)".into(), &r.eta, &r.delta)
    });
    for b in ideals(l, budget)? {
        let qt = Quotient::new(l, &b)?;
        let rq = report(qt.algebra(), budget)?;
        let (ei, di) = (qt.image(&r.eta), qt.image(&r.delta));
        run.check("eta-image", ei.leq(&rq.eta)?, || {
            not_subset("(eta(L)+B)/B <= eta(L/B)".into(), &ei, &rq.eta)
        });
        run.check("delta-image", di.leq(&rq.delta)?, || {
            not_subset("(delta(L)+B)/B <= delta(L/B)".into(), &di, &rq.delta)
        });
        if b.leq(&r.eta)? {
            run.check("eta-quotient-equality", ei == rq.eta, || {
                not_equal("eta(L)/B = eta(L/B)".into(), &ei, &rq.eta)
            });
        }
        if big && b.leq(&r.delta)? {
            run.check("delta-quotient-equality", di == rq.delta, || {
                not_equal("delta(L)/B = delta(L/B)".into(), &di, &rq.delta)
            });
        }
    }
    if !big {
        run.skip_clause("delta-quotient-equality", "q < dim L");
    }
    if run.gate(
        "L solvable (for supersolvability of delta and eta)",
        is_solvable(l),
    ) {
        for (name, s) in [
            ("delta-supersolvable", &r.delta),
            ("eta-supersolvable", &r.eta),
        ] {
            let ok = is_supersolvable(&restrict(l, s)?, budget)?.is_some();
            run.check(name, ok, || Counterexample::Mismatch {
                claim: format!("{name} for solvable L"),
                lhs: true,
                rhs: false,
                subject: Some(rows(s)),
            });
        }
    } else {
        run.skip_clause("delta-supersolvable", "L is not solvable");
        run.skip_clause("eta-supersolvable", "L is not solvable");
    }
    Ok(run)
}

fn c_ideal_solvable<F: Field>(item: &CorpusItem<F>, budget: &LatticeBudget) -> Result<Run> {
    let mut run = Run::default();
    let l = &item.algebra;
    let solvable = is_solvable(l);
    let r = report(l, budget)?;
    let ideal_count = ideals(l, budget)?.len();
    let mut missing = Vec::new();
    for m in &r.d_members {
        match is_c_ideal(l, &m.subspace, budget)? {
            Some(c) => {
                let core = crate::structure::core(l, &m.subspace);
                let ok = is_ideal(l, &c)
                    && m.subspace.sum(&c)?.is_full()
                    && m.subspace.intersect(&c)?.leq(&core)?;
                run.check("c-ideal-witness-verifies", ok, || Counterexample::Error {
                    message: "c-ideal witness fails its defining clauses".into(),
                });
            }
            None => missing.push(m.subspace.clone()),
        }
    }
    run.note("d_members", json!(r.d_members.len()));
    run.note("ideals_swept", json!(ideal_count));
    run.note(
        "without_c_ideal_witness",
        json!(missing.iter().map(rows).collect::<Vec<_>>()),
    );
    run.iff(
        "D-members-c-ideals-iff-solvable",
        missing.is_empty(),
        solvable,
        || missing.first().map(rows),
    );
    Ok(run)
}

fn is_lie<F: Field>(l: &LieAlgebra<F>) -> bool {
    l.validate().is_ok()
}

/// Runs the checker `id` on `item`. Budget and field-size errors become
/// skipped verdicts; other errors become failures.
pub fn run_checker<F: Field>(
    id: &str,
    item: &CorpusItem<F>,
    budget: &LatticeBudget,
) -> Result<VerdictReport> {
    let name = format!("{}/{}", item.name, item.algebra.field().spec());
    let outcome = if id != "lie-axioms" && !is_lie(&item.algebra) {
        Run::default().skip("structure constants fail the Lie axioms")
    } else {
        match id {
            "lie-axioms" => lie_axioms(item, budget),
            "cartan-containment" => cartan_containment(item, budget),
            "nilpotency-criteria" => nilpotency_criteria(item, budget),
            "engel-quotients" => engel_quotients(item, budget),
            "solvable-self-idealizing" => solvable_self_idealizing(item, budget),
            "supersolvable-codim-one" => supersolvable_codim_one(item, budget),
            "ad-nilpotent-exponent" => ad_nilpotent_exponent(item, budget),
            "lm-codim-one" => lm_codim_one(item, budget),
            "codim-one-decomposition" => codim_one_decomposition(item, budget),
            "supersolvable-delta" => supersolvable_delta(item, budget),
            "eta-delta-chain" => eta_delta_chain(item, budget),
            "c-ideal-solvable" => c_ideal_solvable(item, budget),
            other => return Err(Error::InvalidInput(format!("unknown checker {other}"))),
        }
    };
    let run = match outcome {
        Ok(run) => run,
        Err(e @ (Error::BudgetExceeded { .. } | Error::InfiniteField)) => {
            Run::default().skip(e.to_string())?
        }
        Err(e) => {
            let mut run = Run::default();
            run.check("internal", false, || Counterexample::Error {
                message: e.to_string(),
            });
            run
        }
    };
    Ok(run.finish(id, name))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<VerdictReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn extend(&mut self, other: SuiteReport) {
        self.summary.pass += other.summary.pass;
        self.summary.fail += other.summary.fail;
        self.summary.skipped += other.summary.skipped;
        self.reports.extend(other.reports);
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }
}

/// Every checker on every item, in parallel; reports are ordered by item then
/// by checker table order.
pub fn run_suite<F: Field>(items: &[CorpusItem<F>], budget: &LatticeBudget) -> Result<SuiteReport> {
    let pairs: Vec<(usize, usize)> = (0..items.len())
        .flat_map(|i| (0..CHECKERS.len()).map(move |c| (i, c)))
        .collect();
    let reports = pairs
        .par_iter()
        .map(|&(i, c)| run_checker(CHECKERS[c].id, &items[i], budget))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = Summary::default();
    for r in &reports {
        match r.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::Skipped => summary.skipped += 1,
        }
    }
    Ok(SuiteReport { reports, summary })
}
