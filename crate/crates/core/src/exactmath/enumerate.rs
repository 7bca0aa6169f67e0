use super::field::Field;
use crate::error::{Error, Result};

/// Default cap on enumerated vectors or subspaces.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

pub(crate) fn check_budget(what: &'static str, needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded {
            what,
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}

/// All vectors of `F^n`, each exactly once, in odometer order over the field enumeration.
pub struct VectorSweep<F: Field> {
    elements: Vec<F::Elem>,
    digits: Vec<usize>,
    remaining: u128,
}

impl<F: Field> Iterator for VectorSweep<F> {
    type Item = Vec<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self
            .digits
            .iter()
            .map(|&d| self.elements[d].clone())
            .collect();
        let q = self.elements.len();
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

pub fn enumerate_vectors<F: Field>(field: &F, n: usize, max: u64) -> Result<VectorSweep<F>> {
    let q = field.order().ok_or(Error::InfiniteField)? as u128;
    let count = q.checked_pow(n as u32).unwrap_or(u128::MAX);
    check_budget("vector sweep", count, max)?;
    Ok(VectorSweep {
        elements: field.elements()?,
        digits: vec![0; n],
        remaining: count,
    })
}

/// One representative per line of `F^n`: the nonzero vectors whose first
/// nonzero coordinate is 1.
pub fn projective_points<F: Field>(field: &F, n: usize, max: u64) -> Result<Vec<Vec<F::Elem>>> {
    let q = field.order().ok_or(Error::InfiniteField)? as u128;
    let count = (0..n as u32)
        .map(|e| q.saturating_pow(e))
        .fold(0u128, |a, b| a.saturating_add(b));
    check_budget("line sweep", count, max)?;
    let mut out = Vec::with_capacity(count as usize);
    for lead in 0..n {
        for tail in enumerate_vectors(field, n - lead - 1, max)? {
            let mut v = vec![field.zero(); lead];
            v.push(field.one());
            v.extend(tail);
            out.push(v);
        }
    }
    Ok(out)
}
