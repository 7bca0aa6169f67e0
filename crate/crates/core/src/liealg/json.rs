use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldSpec, FiniteField, Rationals, ScalarRepr};

use super::LieAlgebra;

/// One nonzero structure constant block `[b_i, b_j] = value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketRepr {
    pub i: usize,
    pub j: usize,
    pub value: Vec<ScalarRepr>,
}

/// On-disk form of an algebra. Pairs that are omitted bracket to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketRepr>,
}

impl<F: Field> LieAlgebra<F> {
    /// Canonical export: pairs with `i < j` in lexicographic order.
    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            field: self.field().spec(),
            dim: self.dim(),
            labels: self.labels().to_vec(),
            brackets: self
                .nonzero_brackets()
                .map(|(i, j, v)| BracketRepr {
                    i,
                    j,
                    value: v.iter().map(|x| self.field().encode(x)).collect(),
                })
                .collect(),
        }
    }

    /// Reads the brackets of `file` over `field`. With `validate` set the Lie
    /// axioms are enforced; otherwise the raw table is kept for inspection.
    pub fn from_file(field: &F, file: &AlgebraFile, validate: bool) -> Result<Self> {
        let mut entries = Vec::with_capacity(file.brackets.len());
        for b in &file.brackets {
            let v = b
                .value
                .iter()
                .map(|r| field.decode(r))
                .collect::<Result<Vec<_>>>()?;
            entries.push((b.i, b.j, v));
        }
        let l = if validate {
            Self::new(field, file.dim, entries)?
        } else {
            Self::new_unchecked(field, file.dim, entries)?
        };
        if file.labels.is_empty() {
            Ok(l)
        } else {
            l.with_labels(file.labels.iter().cloned())
        }
    }
}

/// An algebra whose field is only known at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Finite(LieAlgebra<FiniteField>),
    Rational(LieAlgebra<Rationals>),
}

impl AnyAlgebra {
    pub fn from_file(file: &AlgebraFile, validate: bool) -> Result<Self> {
        match &file.field {
            FieldSpec::Rational => Ok(Self::Rational(LieAlgebra::from_file(
                &Rationals, file, validate,
            )?)),
            spec => {
                let field = FiniteField::from_spec(spec)?;
                Ok(Self::Finite(LieAlgebra::from_file(&field, file, validate)?))
            }
        }
    }

    pub fn from_json(text: &str, validate: bool) -> Result<Self> {
        let file: AlgebraFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_file(&file, validate)
    }

    pub fn to_file(&self) -> AlgebraFile {
        match self {
            Self::Finite(l) => l.to_file(),
            Self::Rational(l) => l.to_file(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Finite(l) => l.dim(),
            Self::Rational(l) => l.dim(),
        }
    }
}
