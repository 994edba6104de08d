//! Luna decomposition types, local quivers, dimension bounds for fibres and
//! strata, and smallness certificates.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::deform::is_generic_deformation;
use crate::error::{Error, Result};
use crate::lattice::{BoxIter, Limits};
use crate::quiver::{DimVector, Quiver, Stability};

/// Exact half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// `n / 2`.
    pub fn halves(n: i64) -> Self {
        HalfInt(n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LunaPart {
    pub part: DimVector,
    pub multiplicity: i64,
}

/// Multiset of same-slope parts with multiplicities, in descending
/// lexicographic part order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LunaType {
    parts: Vec<LunaPart>,
}

impl LunaType {
    /// Folds equal parts and sorts canonically.
    pub fn new(parts: impl IntoIterator<Item = (DimVector, i64)>) -> Result<Self> {
        let mut folded: Vec<LunaPart> = Vec::new();
        for (part, m) in parts {
            if m <= 0 {
                return Err(Error::InvalidParams("multiplicities must be positive".into()));
            }
            if part.is_zero() {
                return Err(Error::ZeroDimensionVector);
            }
            if let Some(first) = folded.first() {
                if first.part.len() != part.len() {
                    return Err(Error::DimensionMismatch {
                        expected: first.part.len(),
                        found: part.len(),
                    });
                }
            }
            match folded.iter_mut().find(|p| p.part == part) {
                Some(p) => p.multiplicity += m,
                None => folded.push(LunaPart { part, multiplicity: m }),
            }
        }
        if folded.is_empty() {
            return Err(Error::InvalidParams("a decomposition type needs a part".into()));
        }
        folded.sort_by(|a, b| b.part.cmp(&a.part));
        Ok(LunaType { parts: folded })
    }

    pub fn trivial(d: &DimVector) -> Self {
        LunaType {
            parts: vec![LunaPart {
                part: d.clone(),
                multiplicity: 1,
            }],
        }
    }

    pub fn parts(&self) -> &[LunaPart] {
        &self.parts
    }

    pub fn dimension(&self) -> DimVector {
        let n = self.parts[0].part.len();
        self.parts
            .iter()
            .fold(DimVector::zero(n), |acc, p| acc.add(&p.part.scale(p.multiplicity)))
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].multiplicity == 1
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.parts.iter().map(|p| p.multiplicity).sum()
    }
}

impl fmt::Display for LunaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if p.multiplicity != 1 {
                write!(f, "{}*", p.multiplicity)?;
            }
            write!(f, "{}", p.part)?;
        }
        Ok(())
    }
}

fn check_type(q: &Quiver, xi: &LunaType) -> Result<()> {
    let n = xi.parts[0].part.len();
    if n != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            found: n,
        });
    }
    Ok(())
}

fn euler(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    q.euler_unchecked(a.coords(), b.coords())
}

/// All types whose parts lie in the kernel of the normalized stability.
pub fn luna_types(q: &Quiver, d: &DimVector, theta: &Stability, limits: &Limits) -> Result<Vec<LunaType>> {
    for len in [d.len(), theta.len()] {
        if len != q.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: q.vertex_count(),
                found: len,
            });
        }
    }
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    limits.check_box(d)?;
    let normalized = theta.normalize(d)?;
    let mut candidates: Vec<DimVector> = BoxIter::new(d)
        .filter(|e| !e.is_zero() && normalized.eval(e) == 0)
        .collect();
    candidates.sort_by(|a, b| b.cmp(a));

    fn recurse(
        candidates: &[DimVector],
        start: usize,
        remaining: &DimVector,
        current: &mut Vec<LunaPart>,
        out: &mut Vec<LunaType>,
    ) {
        if remaining.is_zero() {
            out.push(LunaType {
                parts: current.clone(),
            });
            return;
        }
        for (i, c) in candidates.iter().enumerate().skip(start) {
            let mut rest = remaining.clone();
            let mut m = 0;
            while let Some(r) = rest.checked_sub(c) {
                m += 1;
                current.push(LunaPart {
                    part: c.clone(),
                    multiplicity: m,
                });
                recurse(candidates, i + 1, &r, current, out);
                current.pop();
                rest = r;
            }
        }
    }

    let mut out = Vec::new();
    recurse(&candidates, 0, d, &mut Vec::new(), &mut out);
    Ok(out)
}

fn local_arrows(q: &Quiver, xi: &LunaType) -> Result<Vec<Vec<u32>>> {
    let s = xi.parts.len();
    let mut arrows = vec![vec![0u32; s]; s];
    for k in 0..s {
        for l in 0..s {
            let count = i64::from(k == l) - euler(q, &xi.parts[k].part, &xi.parts[l].part);
            if count < 0 {
                return Err(Error::NegativeArrowCount { from: k, to: l, count });
            }
            arrows[k][l] = u32::try_from(count)
                .map_err(|_| Error::InvalidQuiver(format!("arrow count {count} too large")))?;
        }
    }
    Ok(arrows)
}

/// Local quiver `Q_xi` with `delta_kl - <d^k, d^l>` arrows, its dimension
/// vector `(m_k)` and the stability `Theta_xi(i_k) = Theta'(d^k)`.
pub fn local_quiver(q: &Quiver, xi: &LunaType, theta_prime: &Stability) -> Result<(Quiver, DimVector, Stability)> {
    check_type(q, xi)?;
    if theta_prime.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            found: theta_prime.len(),
        });
    }
    let arrows = local_arrows(q, xi)?;
    let names = xi.parts.iter().map(|p| p.part.to_string()).collect();
    let local = Quiver::new(names, arrows)?;
    let dim = DimVector::new(xi.parts.iter().map(|p| p.multiplicity).collect())?;
    let stab = Stability::new(xi.parts.iter().map(|p| theta_prime.eval(&p.part)).collect());
    Ok((local, dim, stab))
}

/// Upper bound `-<d,d>/2 + sum_i <i,i> d_i / 2 - dim d` for
/// `dim N_d(Q) - dim G_d` on a symmetric quiver.
pub fn nullcone_dim_bound(q: &Quiver, d: &DimVector) -> Result<HalfInt> {
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if d.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            found: d.len(),
        });
    }
    let n = q.vertex_count();
    let diag: i64 = (0..n)
        .map(|i| (1 - q.arrow_count(i, i) as i64) * d.coords()[i])
        .sum();
    Ok(HalfInt::halves(-euler(q, d, d) + diag - 2 * d.total()))
}

/// Fibre dimension bound over a point of type `xi`, checked against the
/// nullcone bound on the local quiver.
pub fn fiber_dim_bound(q: &Quiver, xi: &LunaType) -> Result<HalfInt> {
    check_type(q, xi)?;
    let arrows = local_arrows(q, xi)?;
    let local = Quiver::new(xi.parts.iter().map(|p| p.part.to_string()).collect(), arrows)?;
    if !local.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let d = xi.dimension();
    let twice = -euler(q, &d, &d)
        + xi.parts
            .iter()
            .map(|p| euler(q, &p.part, &p.part) * p.multiplicity)
            .sum::<i64>()
        - 2 * xi.total_multiplicity()
        + 2;
    let direct = HalfInt::halves(twice);
    let d_xi = DimVector::new(xi.parts.iter().map(|p| p.multiplicity).collect())?;
    let via_local = nullcone_dim_bound(&local, &d_xi)? + HalfInt::from_int(1);
    if direct != via_local {
        return Err(Error::Consistency(format!(
            "fibre bound {direct} disagrees with local-quiver bound {via_local} for {xi}"
        )));
    }
    Ok(direct)
}

/// `1 - <d,d> - sum_k (1 - <d^k,d^k>)` over the distinct parts.
pub fn codim_lower_bound(q: &Quiver, d: &DimVector, xi: &LunaType) -> Result<i64> {
    check_type(q, xi)?;
    if xi.dimension() != *d {
        return Err(Error::InvalidParams(format!("type {xi} does not sum to {d}")));
    }
    Ok(1 - euler(q, d, d) - xi.parts.iter().map(|p| 1 - euler(q, &p.part, &p.part)).sum::<i64>())
}

/// `-sum_k (1 - <d^k,d^k>)(m_k - 1)/2 - (sum_k m_k - 1)/2`, which equals
/// the fibre bound minus half the codimension bound.
pub fn smallness_margin(q: &Quiver, d: &DimVector, xi: &LunaType) -> Result<HalfInt> {
    let fiber = fiber_dim_bound(q, xi)?;
    let codim = codim_lower_bound(q, d, xi)?;
    let twice = -xi
        .parts
        .iter()
        .map(|p| (1 - euler(q, &p.part, &p.part)) * (p.multiplicity - 1))
        .sum::<i64>()
        - (xi.total_multiplicity() - 1);
    let margin = HalfInt::halves(twice);
    if margin != fiber - HalfInt::halves(codim) {
        return Err(Error::Consistency(format!(
            "margin {margin} differs from fibre bound {fiber} minus half of {codim} for {xi}"
        )));
    }
    Ok(margin)
}

/// Local data attached to an unfiltered type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub arrows: Vec<Vec<u32>>,
    pub dimension: DimVector,
    pub stability: Stability,
    pub coprime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRecord {
    #[serde(rename = "type")]
    pub luna_type: LunaType,
    pub trivial: bool,
    pub filtered: Option<String>,
    pub local: Option<LocalData>,
    pub fiber_bound: Option<HalfInt>,
    pub codim_bound: Option<i64>,
    pub margin: Option<HalfInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified { reasons: Vec<String> },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => f.write_str("Certified"),
            Verdict::NotCertified { reasons } => write!(f, "NotCertified({})", reasons.join("; ")),
            Verdict::NotApplicable { reason } => write!(f, "NotApplicable({reason})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    pub stable_nonempty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallnessReport {
    pub dimension: DimVector,
    pub stability: Stability,
    pub deformed_stability: Stability,
    pub strata: Vec<StratumRecord>,
    pub verdict: Verdict,
    pub assumptions: Assumptions,
}

/// Checks the hypotheses of the smallness theorem and, when they hold,
/// bounds every candidate stratum. Hypothesis failures become
/// `NotApplicable` verdicts; only malformed input and the box guard are
/// errors.
pub fn certify_smallness(
    q: &Quiver,
    d: &DimVector,
    theta: &Stability,
    theta_prime: &Stability,
    assume_stable_nonempty: bool,
    limits: &Limits,
) -> Result<SmallnessReport> {
    for len in [d.len(), theta.len(), theta_prime.len()] {
        if len != q.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: q.vertex_count(),
                found: len,
            });
        }
    }
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    let normalized = theta.normalize(d)?;
    let deformed = theta_prime.normalize(d)?;
    let mut report = SmallnessReport {
        dimension: d.clone(),
        stability: normalized.clone(),
        deformed_stability: deformed.clone(),
        strata: Vec::new(),
        verdict: Verdict::Certified,
        assumptions: Assumptions {
            stable_nonempty: assume_stable_nonempty,
        },
    };

    let check = is_generic_deformation(&normalized, &deformed, d, limits)?;
    if !check.passes() {
        report.verdict = Verdict::NotApplicable {
            reason: format!("deformed stability is not a generic deformation: {}", check.summary()),
        };
        return Ok(report);
    }
    if !q.symmetric_on_kernel(&normalized)? {
        report.verdict = Verdict::NotApplicable {
            reason: "kernel asymmetry: Euler form is not symmetric on Ker(Theta)".into(),
        };
        return Ok(report);
    }

    let mut reasons = Vec::new();
    for xi in luna_types(q, d, &normalized, limits)? {
        let mut rec = StratumRecord {
            trivial: xi.is_trivial(),
            luna_type: xi.clone(),
            filtered: None,
            local: None,
            fiber_bound: None,
            codim_bound: None,
            margin: None,
        };
        if let Some(p) = xi.parts.iter().find(|p| euler(q, &p.part, &p.part) > 1) {
            rec.filtered = Some(format!(
                "part {} has <e,e> = {} > 1, so no stable representation",
                p.part,
                euler(q, &p.part, &p.part)
            ));
            report.strata.push(rec);
            continue;
        }
        let (local, dim, stab) = match local_quiver(q, &xi, &deformed) {
            Ok(x) => x,
            Err(Error::NegativeArrowCount { from, to, count }) => {
                rec.filtered = Some(format!(
                    "negative arrow count {count} from local vertex {from} to {to}"
                ));
                report.strata.push(rec);
                continue;
            }
            Err(e) => return Err(e),
        };
        let coprime = stab.is_coprime(&dim, limits)?;
        if !coprime {
            reasons.push(format!("local dimension vector of {xi} is not coprime"));
        }
        rec.local = Some(LocalData {
            arrows: local.arrows().to_vec(),
            dimension: dim,
            stability: stab,
            coprime,
        });
        let margin = smallness_margin(q, d, &xi)?;
        rec.fiber_bound = Some(fiber_dim_bound(q, &xi)?);
        rec.codim_bound = Some(codim_lower_bound(q, d, &xi)?);
        rec.margin = Some(margin);
        if margin > HalfInt::ZERO {
            reasons.push(format!("type {xi} has positive margin {margin}"));
        } else if margin.is_zero() && !xi.is_trivial() {
            reasons.push(format!("nontrivial type {xi} has zero margin"));
        } else if !margin.is_zero() && xi.is_trivial() {
            reasons.push(format!("trivial type has nonzero margin {margin}"));
        }
        report.strata.push(rec);
    }

    let trivial_filtered = report
        .strata
        .iter()
        .any(|r| r.trivial && r.filtered.is_some());
    report.verdict = if trivial_filtered {
        Verdict::NotApplicable {
            reason: "trivial type is filtered: no stable representation of dimension d".into(),
        }
    } else if reasons.is_empty() {
        Verdict::Certified
    } else {
        Verdict::NotCertified { reasons }
    };
    Ok(report)
}
