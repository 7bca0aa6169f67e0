//! Named algebras: the `L_m(Γ)` family, small solvable examples, direct sums,
//! and the test corpus assembled from them.

use crate::classify::{is_nilpotent, is_solvable, is_supersolvable};
use crate::error::{Error, Result};
use crate::exactmath::{Field, Subspace, Vector};
use crate::lattice::LatticeBudget;
use crate::liealg::{direct_sum, LieAlgebra};

/// `L_1(γ_0)` on `u_{-1}, u_0, u_1`: `[u_{-1}, u_0] = u_{-1} + γ_0 u_1`,
/// `[u_{-1}, u_1] = u_0`, `[u_0, u_1] = u_1`.
pub fn make_l1<F: Field>(field: &F, gamma0: &F::Elem) -> LieAlgebra<F> {
    let (z, o) = (field.zero(), field.one());
    LieAlgebra::new(
        field,
        3,
        [
            (0, 1, vec![o.clone(), z.clone(), gamma0.clone()]),
            (0, 2, vec![z.clone(), o.clone(), z.clone()]),
            (1, 2, vec![z.clone(), z, o]),
        ],
    )
    .and_then(|l| l.with_labels(["u-1", "u0", "u1"]))
    .expect("L_1 satisfies the Jacobi identity")
}

/// The split three-dimensional simple algebra `L_1(0)`.
pub fn make_sl2<F: Field>(field: &F) -> LieAlgebra<F> {
    make_l1(field, &field.zero())
}

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn int_to_field<F: Field>(field: &F, v: i128) -> F::Elem {
    let p = field.characteristic() as i128;
    let v = if p > 0 { v.rem_euclid(p) } else { v };
    field.from_int(v as i64)
}

/// `λ_ij = C(i+j+1, j) − C(i+j+1, i)` mapped into the field.
pub fn default_lambda<F: Field>(field: &F, m: usize) -> Vec<Vec<F::Elem>> {
    (0..=m as u64)
        .map(|i| {
            (0..=m as u64)
                .map(|j| int_to_field(field, binomial(i + j + 1, j) - binomial(i + j + 1, i)))
                .collect()
        })
        .collect()
}

/// `m = 1`, or `m = p^r − 2` for odd `p`, or `m ∈ {2^r − 2, 2^r − 3}` with
/// `r ≥ 2` for `p = 2`. Only `m = 1` in characteristic zero.
pub fn admissible_m(m: usize, p: u64) -> bool {
    if m == 1 {
        return true;
    }
    let is_power = |n: u64| {
        let mut x = p;
        while x < n {
            x *= p;
        }
        x == n
    };
    let m = m as u64;
    match p {
        0 => false,
        2 => (m + 2 >= 4 && is_power(m + 2)) || (m + 3 >= 4 && is_power(m + 3)),
        _ => is_power(m + 2),
    }
}

/// Parameters of `L_m(Γ)`: `γ_0 … γ_m` and the product coefficients `λ_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmGammaSpec<F: Field> {
    pub field: F,
    pub m: usize,
    pub gamma: Vec<F::Elem>,
    pub lambda: Vec<Vec<F::Elem>>,
}

impl<F: Field> LmGammaSpec<F> {
    /// `Γ` given by its leading entries; missing entries are zero.
    pub fn new(field: &F, m: usize, gamma: &[F::Elem]) -> Self {
        let mut g = gamma.to_vec();
        g.resize(m + 1, field.zero());
        Self {
            field: field.clone(),
            m,
            gamma: g,
            lambda: default_lambda(field, m),
        }
    }

    pub fn zero(field: &F, m: usize) -> Self {
        Self::new(field, m, &[])
    }

    pub fn with_lambda(mut self, lambda: Vec<Vec<F::Elem>>) -> Self {
        self.lambda = lambda;
        self
    }

    /// Admissibility of `m` and the constraints on `Γ`.
    pub fn validate(&self) -> Result<()> {
        let f = &self.field;
        let m = self.m;
        if !admissible_m(m, f.characteristic()) {
            return Err(Error::InadmissibleM {
                m,
                p: f.characteristic(),
            });
        }
        if self.gamma.len() != m + 1
            || self.lambda.len() != m + 1
            || self.lambda.iter().any(|r| r.len() != m + 1)
        {
            return Err(Error::InvalidInput(format!(
                "expected gamma_0..gamma_{m} and a {0}x{0} lambda table",
                m + 1
            )));
        }
        let g = &self.gamma;
        for i in 1..=m {
            if !f.is_zero(&f.mul(&f.from_int((m + 1 - i) as i64), &g[i])) {
                return Err(Error::GammaConstraintViolation(format!(
                    "(m+1-{i}) gamma_{i} != 0"
                )));
            }
        }
        if !f.is_zero(&g[m]) {
            return Err(Error::GammaConstraintViolation(format!("gamma_{m} != 0")));
        }
        for k in 1..m {
            for i in 1..=k {
                if !f.is_zero(&f.mul(&self.lambda[i][k + 1 - i], &g[k + 1])) {
                    return Err(Error::GammaConstraintViolation(format!(
                        "lambda_{i},{} gamma_{} != 0",
                        k + 1 - i,
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `L_m(Γ)` on `v_{-1}, …, v_m` (stored at indices `0..=m+1`):
/// `[v_{-1}, v_i] = v_{i-1} + γ_i v_m` and `[v_i, v_j] = λ_ij v_{i+j}`.
pub fn make_lm<F: Field>(spec: &LmGammaSpec<F>) -> Result<LieAlgebra<F>> {
    spec.validate()?;
    let f = &spec.field;
    let m = spec.m;
    let n = m + 2;
    let mut brackets = Vec::new();
    for i in 0..=m {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        v[n - 1] = f.add(&v[n - 1], &spec.gamma[i]);
        brackets.push((0, i + 1, v));
    }
    for i in 0..=m {
        for j in i + 1..=m {
            let mut v = vec![f.zero(); n];
            if i + j <= m {
                v[i + j + 1] = spec.lambda[i][j].clone();
            }
            brackets.push((i + 1, j + 1, v));
        }
    }
    LieAlgebra::new(f, n, brackets)?.with_labels((0..n).map(|k| format!("v{}", k as i64 - 1)))
}

/// `H_{m,i} = span{v_i, …, v_m}` for `-1 ≤ i ≤ m`.
pub fn h_subspace<F: Field>(lm: &LieAlgebra<F>, i: i64) -> Result<Subspace<F>> {
    let m = lm.dim() as i64 - 2;
    if i < -1 || i > m {
        return Err(Error::IndexOutOfRange {
            index: i,
            lo: -1,
            hi: m,
        });
    }
    Ok(Subspace::coordinate(
        lm.field(),
        lm.dim(),
        (i + 1) as usize..lm.dim(),
    ))
}

fn build<F: Field>(
    field: &F,
    dim: usize,
    brackets: &[(usize, usize, &[i64])],
    labels: &[&str],
) -> LieAlgebra<F> {
    LieAlgebra::from_int_brackets(field, dim, brackets)
        .and_then(|l| l.with_labels(labels.iter().copied()))
        .expect("fixed example is a Lie algebra")
}

pub fn abelian<F: Field>(field: &F, dim: usize) -> LieAlgebra<F> {
    LieAlgebra::abelian(field, dim)
}

/// `[x, y] = z`.
pub fn heisenberg<F: Field>(field: &F) -> LieAlgebra<F> {
    build(field, 3, &[(0, 1, &[0, 0, 1])], &["x", "y", "z"])
}

/// `[x, y] = y`.
pub fn affine<F: Field>(field: &F) -> LieAlgebra<F> {
    build(field, 2, &[(0, 1, &[0, 1])], &["x", "y"])
}

/// `[x, y] = y`, `[x, z] = z`.
pub fn scalar_extension<F: Field>(field: &F) -> LieAlgebra<F> {
    build(
        field,
        3,
        &[(0, 1, &[0, 1, 0]), (0, 2, &[0, 0, 1])],
        &["x", "y", "z"],
    )
}

/// `[x, y] = y`, `[x, z] = y + z`.
pub fn jordan_extension<F: Field>(field: &F) -> LieAlgebra<F> {
    build(
        field,
        3,
        &[(0, 1, &[0, 1, 0]), (0, 2, &[0, 1, 1])],
        &["x", "y", "z"],
    )
}

/// Upper triangular 2×2 matrices on `e11, e12, e22`.
pub fn upper_triangular<F: Field>(field: &F) -> LieAlgebra<F> {
    build(
        field,
        3,
        &[(0, 1, &[0, 1, 0]), (1, 2, &[0, 1, 0])],
        &["e11", "e12", "e22"],
    )
}

/// `[e1, e2] = e3`, `[e1, e3] = e4`.
pub fn filiform4<F: Field>(field: &F) -> LieAlgebra<F> {
    build(
        field,
        4,
        &[(0, 1, &[0, 0, 1, 0]), (0, 2, &[0, 0, 0, 1])],
        &["e1", "e2", "e3", "e4"],
    )
}

/// `F x ⋉ F^2` where `ad x` acts on `span{y, z}` by the companion matrix of an
/// irreducible quadratic: solvable, yet without one-dimensional ideals.
pub fn rotation<F: Field>(field: &F) -> LieAlgebra<F> {
    let elems = field.elements().expect("finite field");
    let (b, c) = elems
        .iter()
        .flat_map(|b| elems.iter().map(move |c| (b, c)))
        .find(|(b, c)| {
            elems.iter().all(|t| {
                !field.is_zero(&field.add(&field.add(&field.mul(t, t), &field.mul(b, t)), c))
            })
        })
        .expect("every finite field has an irreducible quadratic");
    let (z, o) = (field.zero(), field.one());
    // t^2 + b t + c: y -> z, z -> -c y - b z
    LieAlgebra::new(
        field,
        3,
        [
            (0, 1, vec![z.clone(), z.clone(), o]),
            (0, 2, vec![z, field.neg(c), field.neg(b)]),
        ],
    )
    .and_then(|l| l.with_labels(["x", "y", "z"]))
    .expect("semidirect products with an abelian ideal are Lie algebras")
}

/// The diagonal `{s + s̄}` of `S ⊕ S`, where the second copy follows the first.
pub fn diagonal<F: Field>(l: &LieAlgebra<F>) -> Subspace<F> {
    let k = l.dim() / 2;
    Subspace::span(
        l.field(),
        l.dim(),
        (0..k).map(|i| {
            let mut v = l.unit(i);
            v[i + k] = l.field().one();
            v
        }),
    )
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub nilpotent: Option<bool>,
    pub solvable: Option<bool>,
    pub supersolvable: Option<bool>,
}

fn expect(nilpotent: bool, solvable: bool, supersolvable: bool) -> Expected {
    Expected {
        nilpotent: Some(nilpotent),
        solvable: Some(solvable),
        supersolvable: Some(supersolvable),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmInfo<F: Field> {
    pub m: usize,
    pub gamma: Vec<F::Elem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusItem<F: Field> {
    pub name: String,
    pub algebra: LieAlgebra<F>,
    pub expected: Expected,
    pub lm: Option<LmInfo<F>>,
    /// Named subspaces of interest, such as the diagonal of `S ⊕ S`.
    pub exposed: Vec<(String, Subspace<F>)>,
}

impl<F: Field> CorpusItem<F> {
    fn new(name: impl Into<String>, algebra: LieAlgebra<F>, expected: Expected) -> Self {
        Self {
            name: name.into(),
            algebra,
            expected,
            lm: None,
            exposed: Vec::new(),
        }
    }

    /// Compares the expected flags against the computed ones.
    pub fn check_expected(&self) -> Result<()> {
        let l = &self.algebra;
        let e = &self.expected;
        let ss = is_supersolvable(l, &LatticeBudget::default())?.is_some();
        for (what, want, got) in [
            ("nilpotent", e.nilpotent, is_nilpotent(l)),
            ("solvable", e.solvable, is_solvable(l)),
            ("supersolvable", e.supersolvable, ss),
        ] {
            if want.is_some_and(|w| w != got) {
                return Err(Error::InvariantViolation(format!(
                    "{}: expected {what} = {}",
                    self.name, !got
                )));
            }
        }
        Ok(())
    }
}

/// Fixtures deliberately absent from every corpus, with the reason.
pub const SKIPPED_FIXTURES: &[(&str, &str)] = &[(
    "l1-nonsquare-char2",
    "L_1(gamma_0) with gamma_0 a non-square needs an imperfect field of characteristic 2; every finite field of characteristic 2 is perfect",
)];

/// Admissible `m ≥ 2` with `dim L_m = m + 2 ≤ 6` in characteristic `p`.
fn small_admissible(p: u64) -> Vec<usize> {
    (2..=4).filter(|&m| admissible_m(m, p)).collect()
}

/// The standard fixtures over a finite field. Expected flags are checked as
/// the corpus is built.
pub fn corpus<F: Field>(field: &F) -> Result<Vec<CorpusItem<F>>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let f = field;
    let sl2 = make_sl2(f);
    let mut items = vec![
        CorpusItem::new("abelian-1", abelian(f, 1), expect(true, true, true)),
        CorpusItem::new("abelian-2", abelian(f, 2), expect(true, true, true)),
        CorpusItem::new("abelian-3", abelian(f, 3), expect(true, true, true)),
        CorpusItem::new("heisenberg", heisenberg(f), expect(true, true, true)),
        CorpusItem::new("affine", affine(f), expect(false, true, true)),
        CorpusItem::new(
            "scalar-extension",
            scalar_extension(f),
            expect(false, true, true),
        ),
        CorpusItem::new(
            "jordan-extension",
            jordan_extension(f),
            expect(false, true, true),
        ),
        CorpusItem::new(
            "upper-triangular",
            upper_triangular(f),
            expect(false, true, true),
        ),
        CorpusItem::new("rotation", rotation(f), expect(false, true, false)),
        CorpusItem::new("filiform-4", filiform4(f), expect(true, true, true)),
        CorpusItem::new("sl2", sl2.clone(), expect(false, false, false)),
    ];
    let mut l1_gammas = vec![("l1-gamma0-1".to_string(), f.one())];
    if f.order().is_some_and(|q| q > f.characteristic()) {
        l1_gammas.push((
            "l1-gamma0-generator".to_string(),
            f.element(f.characteristic()),
        ));
    }
    for (name, g0) in l1_gammas {
        let mut item = CorpusItem::new(name, make_l1(f, &g0), expect(false, false, false));
        item.lm = Some(LmInfo {
            m: 1,
            gamma: vec![g0, f.zero()],
        });
        items.push(item);
    }
    // L_1(0) itself is also the m = 1 member of the family
    items[10].lm = Some(LmInfo {
        m: 1,
        gamma: vec![f.zero(), f.zero()],
    });
    for m in small_admissible(f.characteristic()) {
        let mut gammas = vec![LmGammaSpec::zero(f, m)];
        let g1 = LmGammaSpec::new(f, m, &[f.one(), f.one()]);
        let g0 = LmGammaSpec::new(f, m, &[f.one()]);
        if g1.validate().is_ok() {
            gammas.push(g1);
        } else if g0.validate().is_ok() {
            gammas.push(g0);
        }
        for spec in gammas {
            let name = if spec.gamma.iter().all(|g| f.is_zero(g)) {
                format!("lm-{m}-gamma-zero")
            } else {
                let nz: Vec<String> = spec
                    .gamma
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| !f.is_zero(g))
                    .map(|(i, _)| i.to_string())
                    .collect();
                format!("lm-{m}-gamma-{}", nz.join(""))
            };
            let mut item = CorpusItem::new(name, make_lm(&spec)?, expect(false, false, false));
            item.lm = Some(LmInfo {
                m,
                gamma: spec.gamma,
            });
            items.push(item);
        }
    }
    items.push(CorpusItem::new(
        "sl2+affine",
        direct_sum(&sl2, &affine(f))?,
        expect(false, false, false),
    ));
    items.push(CorpusItem::new(
        "sl2+abelian-1",
        direct_sum(&sl2, &abelian(f, 1))?,
        expect(false, false, false),
    ));
    items.push(CorpusItem::new(
        "affine+affine",
        direct_sum(&affine(f), &affine(f))?,
        expect(false, true, true),
    ));
    let ss = direct_sum(&sl2, &sl2)?;
    let mut item = CorpusItem::new("sl2+sl2", ss.clone(), expect(false, false, false));
    item.exposed.push(("diagonal".into(), diagonal(&ss)));
    items.push(item);
    for item in &items {
        item.algebra.validate()?;
        item.check_expected()?;
    }
    Ok(items)
}

/// `(x_i)` read as a vector over `field`.
pub fn vector<F: Field>(field: &F, coords: &[i64]) -> Vector<F> {
    coords.iter().map(|&c| field.from_int(c)).collect()
}
