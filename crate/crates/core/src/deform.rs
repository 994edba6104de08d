//! Generic deformations of a stability with respect to a dimension vector.
//!
//! `Theta'` deforms `Theta` (with `Theta(d) = 0`) when, for every
//! `0 != e < d`:
//!
//! 1. `Theta(e) < 0` implies `Theta'(e) < 0`,
//! 2. `Theta'(e) <= 0` implies `Theta(e) <= 0`,
//! 3. `d` is `Theta'`-coprime.
//!
//! The construction searches for a covector `eta` with `eta(d) = 0` that
//! separates every proper `e` on the hyperplane `Theta(e) = 0`, then returns
//! `C Theta + eta` for a large enough integer `C`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{proper_subvectors, Limits};
use crate::quiver::{DimVector, Stability};

/// Upper bound on covectors examined by the separating search.
const MAX_ETA_CANDIDATES: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// `Theta(e) < 0` but `Theta'(e) >= 0`.
    NegativeNotPreserved { e: DimVector },
    /// `Theta'(e) <= 0` but `Theta(e) > 0`.
    NonpositiveNotReflected { e: DimVector },
    /// `Theta'(e) = Theta'(d)`.
    NotCoprime { e: DimVector },
    /// `Theta'(d) != 0`.
    DeformedNonzeroOnD { value: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeNotPreserved { e } => {
                write!(f, "condition 1 fails at e={e}")
            }
            Violation::NonpositiveNotReflected { e } => {
                write!(f, "condition 2 fails at e={e}")
            }
            Violation::NotCoprime { e } => write!(f, "condition 3 fails at e={e}"),
            Violation::DeformedNonzeroOnD { value } => {
                write!(f, "deformed stability takes value {value} on d")
            }
        }
    }
}

/// Outcome of [`is_generic_deformation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationCheck {
    pub violations: Vec<Violation>,
}

impl DeformationCheck {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn check_lengths(theta: &Stability, d: &DimVector) -> Result<()> {
    if theta.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: theta.len(),
            found: d.len(),
        });
    }
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    Ok(())
}

/// Exhaustively checks the three deformation conditions over `[0, d]`.
pub fn is_generic_deformation(
    theta: &Stability,
    theta_prime: &Stability,
    d: &DimVector,
    limits: &Limits,
) -> Result<DeformationCheck> {
    check_lengths(theta, d)?;
    check_lengths(theta_prime, d)?;
    let value = theta.eval(d);
    if value != 0 {
        return Err(Error::NonzeroOnDimension(value));
    }
    let mut violations = Vec::new();
    let deformed_d = theta_prime.eval(d);
    if deformed_d != 0 {
        violations.push(Violation::DeformedNonzeroOnD { value: deformed_d });
    }
    for e in proper_subvectors(d, limits)? {
        let t = theta.eval(&e);
        let tp = theta_prime.eval(&e);
        if t < 0 && tp >= 0 {
            violations.push(Violation::NegativeNotPreserved { e: e.clone() });
        }
        if tp <= 0 && t > 0 {
            violations.push(Violation::NonpositiveNotReflected { e: e.clone() });
        }
        if tp == deformed_d {
            violations.push(Violation::NotCoprime { e });
        }
    }
    Ok(DeformationCheck { violations })
}

/// Constructs a generic deformation of `theta` with respect to the
/// indivisible vector `d`. The output is verified before it is returned.
pub fn generic_deformation(theta: &Stability, d: &DimVector, limits: &Limits) -> Result<Stability> {
    check_lengths(theta, d)?;
    if !d.is_indivisible()? {
        return Err(Error::Divisible(d.clone()));
    }
    let value = theta.eval(d);
    if value != 0 {
        return Err(Error::NonzeroOnDimension(value));
    }
    let subs: Vec<DimVector> = proper_subvectors(d, limits)?.collect();
    let critical: Vec<&DimVector> = subs.iter().filter(|e| theta.eval(e) == 0).collect();
    let eta = separating_covector(d, &critical, limits.max_eta_norm)?;

    let bound = subs
        .iter()
        .filter_map(|e| match theta.eval(e) {
            t if t < 0 => Some(eta.eval(e)),
            t if t > 0 => Some(-eta.eval(e)),
            _ => None,
        })
        .max()
        .unwrap_or(0)
        .max(0);
    let c = bound + 1;
    let deformed = theta.scaled_add(c, &eta);

    let check = is_generic_deformation(theta, &deformed, d, limits)?;
    if !check.passes() {
        return Err(Error::Consistency(format!(
            "constructed stability {deformed} is not a generic deformation: {}",
            check.summary()
        )));
    }
    Ok(deformed)
}

/// Smallest sup-norm integer covector with `eta(d) = 0` that is nonzero on
/// every vector in `critical`; ties go to the lexicographically largest.
/// Coordinates outside the support of `d` stay zero.
fn separating_covector(d: &DimVector, critical: &[&DimVector], max_norm: i64) -> Result<Stability> {
    let n = d.len();
    let support: Vec<usize> = (0..n).filter(|&i| d.coords()[i] > 0).collect();
    let (&pivot, free) = support.split_last().expect("d is nonzero");
    let dp = d.coords()[pivot];
    let mut examined: u64 = 0;

    for norm in 0..=max_norm {
        // odometer over the free coordinates, each running from +norm down to -norm
        let mut digits = vec![norm; free.len()];
        loop {
            examined += 1;
            if examined > MAX_ETA_CANDIDATES {
                return Err(Error::EtaSearchExhausted(norm));
            }
            let partial: i64 = free
                .iter()
                .zip(&digits)
                .map(|(&i, &x)| x * d.coords()[i])
                .sum();
            if partial % dp == 0 {
                let last = -partial / dp;
                let sup = digits
                    .iter()
                    .map(|x| x.abs())
                    .max()
                    .unwrap_or(0)
                    .max(last.abs());
                if sup == norm {
                    let mut w = vec![0i64; n];
                    for (&i, &x) in free.iter().zip(&digits) {
                        w[i] = x;
                    }
                    w[pivot] = last;
                    let eta = Stability::new(w);
                    if critical.iter().all(|e| eta.eval(e) != 0) {
                        return Ok(eta);
                    }
                }
            }
            // advance
            let mut k = digits.len();
            let mut carried = true;
            while k > 0 {
                k -= 1;
                if digits[k] > -norm {
                    digits[k] -= 1;
                    carried = false;
                    break;
                }
                digits[k] = norm;
            }
            if carried {
                break;
            }
        }
    }
    Err(Error::EtaSearchExhausted(max_norm))
}
