//! Enumeration of dimension vectors inside a box `[0, d]`.

use crate::error::{Error, Result};
use crate::quiver::DimVector;

pub const DEFAULT_MAX_BOX: u64 = 1_000_000;

/// Sizing limits for the exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of cells `prod (d_i + 1)` a box may have.
    pub max_box: u64,
    /// Largest sup-norm tried when searching for a separating covector.
    pub max_eta_norm: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_box: DEFAULT_MAX_BOX,
            max_eta_norm: 64,
        }
    }
}

impl Limits {
    pub fn with_max_box(max_box: u64) -> Self {
        Limits {
            max_box,
            ..Limits::default()
        }
    }

    /// Fails if the box `[0, d]` has more cells than allowed.
    pub fn check_box(&self, d: &DimVector) -> Result<()> {
        let cells = box_cells(d);
        if cells > self.max_box as u128 {
            return Err(Error::BoxGuardExceeded {
                cells,
                limit: self.max_box,
            });
        }
        Ok(())
    }
}

pub fn box_cells(d: &DimVector) -> u128 {
    d.coords()
        .iter()
        .fold(1u128, |acc, &x| acc.saturating_mul(x as u128 + 1))
}

/// Iterates every `e` with `0 <= e <= bound` componentwise, in
/// lexicographic order starting at zero.
pub struct BoxIter {
    bound: Vec<i64>,
    current: Option<Vec<i64>>,
}

impl BoxIter {
    pub fn new(bound: &DimVector) -> Self {
        BoxIter {
            bound: bound.coords().to_vec(),
            current: Some(vec![0; bound.len()]),
        }
    }
}

impl Iterator for BoxIter {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if next[i] < self.bound[i] {
                next[i] += 1;
                advanced = true;
                break;
            }
            next[i] = 0;
        }
        if advanced {
            self.current = Some(next);
        }
        Some(DimVector::from_raw(out))
    }
}

/// All `0 != e < d` (componentwise, `e != d`), guarded.
pub fn proper_subvectors(
    d: &DimVector,
    limits: &Limits,
) -> Result<impl Iterator<Item = DimVector>> {
    limits.check_box(d)?;
    let d = d.clone();
    Ok(BoxIter::new(&d).filter(move |e| !e.is_zero() && *e != d))
}
