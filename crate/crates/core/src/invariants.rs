//! Harder–Narasimhan sums, Betti polynomials, DT invariants and
//! intersection Poincaré polynomials.
//!
//! For a stability `Theta` and dimension vector `d`,
//!
//! ```text
//! p_d(q) = sum_{d*} (-1)^(s-1) q^(-sum_{k<=l} <d^l, d^k>)
//!              prod_k prod_i prod_{j=1}^{d^k_i} (1 - q^-j)^-1
//! ```
//!
//! over ordered decompositions `d = d^1 + ... + d^s` whose proper partial
//! sums have slope strictly above `mu(d)`. Everything downstream is built
//! from these rational functions.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use num_rational::BigRational;

use crate::deform::is_generic_deformation;
use crate::error::{Error, Result};
use crate::halfq::{HalfLaurent, Poly, RatFunc, SlopeSeries};
use crate::lattice::{BoxIter, Limits};
use crate::quiver::{DimVector, Quiver, Stability};

/// Ordered tuple of nonzero dimension vectors summing to `d`, admissible
/// for the partial-sum slope condition of `stability`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrderedDecomposition {
    pub parts: Vec<DimVector>,
    #[serde(skip)]
    pub stability: Stability,
}

impl OrderedDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `sum_{k <= l} <d^l, d^k>`.
    pub fn euler_sum(&self, q: &Quiver) -> i64 {
        let mut s = 0;
        for (k, dk) in self.parts.iter().enumerate() {
            for dl in &self.parts[k..] {
                s += q.euler_unchecked(dl.coords(), dk.coords());
            }
        }
        s
    }
}

fn check_input(q: &Quiver, d: &DimVector, theta: &Stability) -> Result<()> {
    let n = q.vertex_count();
    for len in [d.len(), theta.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    Ok(())
}

/// All decompositions of `d` whose proper partial sums `P` satisfy
/// `mu(P) > mu(d)`, in depth-first lexicographic order. The trivial
/// decomposition `(d)` is always present.
pub fn hn_decompositions(
    d: &DimVector,
    theta: &Stability,
    limits: &Limits,
) -> Result<Vec<OrderedDecomposition>> {
    if theta.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: theta.len(),
            found: d.len(),
        });
    }
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    limits.check_box(d)?;
    let normalized = theta.normalize(d)?;
    let cells: Vec<DimVector> = BoxIter::new(d).filter(|e| !e.is_zero()).collect();
    let theta_d = theta.eval(d) as i128;
    let total_d = d.total() as i128;

    // mu(P) > mu(d) compared by cross-multiplication, and the equivalent
    // normalized form Theta~(P) > 0; both must agree.
    let admissible = |p: &DimVector| -> Result<bool> {
        let by_slope = theta.eval(p) as i128 * total_d > theta_d * p.total() as i128;
        let by_normalized = normalized.eval(p) > 0;
        if by_slope != by_normalized {
            return Err(Error::Consistency(format!(
                "slope and normalized partial-sum conditions disagree at {p}"
            )));
        }
        Ok(by_slope)
    };

    let mut out = Vec::new();
    let mut stack: Vec<DimVector> = Vec::new();
    fn recurse(
        d: &DimVector,
        partial: &DimVector,
        cells: &[DimVector],
        stack: &mut Vec<DimVector>,
        out: &mut Vec<Vec<DimVector>>,
        admissible: &dyn Fn(&DimVector) -> Result<bool>,
    ) -> Result<()> {
        let remaining = d.checked_sub(partial).expect("partial sum stays below d");
        for e in cells.iter().filter(|e| DimVector::le(e, &remaining)) {
            let next = partial.add(e);
            stack.push(e.clone());
            if next == *d {
                out.push(stack.clone());
            } else if admissible(&next)? {
                recurse(d, &next, cells, stack, out, admissible)?;
            }
            stack.pop();
        }
        Ok(())
    }
    let mut raw = Vec::new();
    recurse(
        d,
        &DimVector::zero(d.len()),
        &cells,
        &mut stack,
        &mut raw,
        &admissible,
    )?;
    out.extend(raw.into_iter().map(|parts| OrderedDecomposition {
        parts,
        stability: theta.clone(),
    }));
    Ok(out)
}

/// `prod_{j=1}^n (v^(2j) - 1)`.
fn q_factorial_den(n: i64) -> Poly {
    (1..=n).fold(Poly::one(), |acc, j| {
        let mut c = vec![0i64; 2 * j as usize + 1];
        c[0] = -1;
        c[2 * j as usize] = 1;
        acc.mul(&Poly::from_ints(&c))
    })
}

/// The rational function `p_d(q)` for `(q, d, theta)`.
pub fn p_poly(q: &Quiver, d: &DimVector, theta: &Stability, limits: &Limits) -> Result<RatFunc> {
    check_input(q, d, theta)?;
    let decomps = hn_decompositions(d, theta, limits)?;

    // Every term's denominator divides D = prod_i prod_{j<=d_i} (v^2j - 1);
    // the quotient is a product of q-multinomial coefficients.
    let mut vertex_den: Vec<Poly> = Vec::with_capacity(d.len());
    for &di in d.coords() {
        vertex_den.push(q_factorial_den(di));
    }
    let common = vertex_den.iter().fold(Poly::one(), |a, b| a.mul(b));
    let mut multinomials: HashMap<(usize, Vec<i64>), Poly> = HashMap::new();

    let mut numerator = HalfLaurent::zero();
    for dec in &decomps {
        let sign: i64 = if dec.len() % 2 == 1 { 1 } else { -1 };
        let mut v_exp = -2 * dec.euler_sum(q);
        let mut factor = Poly::one();
        for i in 0..d.len() {
            let mut sizes: Vec<i64> = dec
                .parts
                .iter()
                .map(|p| p.coords()[i])
                .filter(|&x| x > 0)
                .collect();
            v_exp += sizes.iter().map(|&x| x * (x + 1)).sum::<i64>();
            sizes.sort_unstable();
            let m = multinomials
                .entry((i, sizes))
                .or_insert_with_key(|(i, sizes)| {
                    let den = sizes
                        .iter()
                        .fold(Poly::one(), |a, &x| a.mul(&q_factorial_den(x)));
                    vertex_den[*i].exact_div(&den)
                });
            factor = factor.mul(m);
        }
        let term = HalfLaurent::from_poly_shifted(&factor, v_exp)
            .scale(&BigRational::from_integer(sign.into()));
        numerator = numerator.add(&term);
    }
    let (num, shift) = numerator.to_poly_shifted();
    Ok(RatFunc::from_polys(num, common, shift))
}

/// `(q - 1) p_d(q)` without any coprimality requirement. A polynomial
/// exactly in the coprime case.
pub fn betti_candidate(
    q: &Quiver,
    d: &DimVector,
    theta: &Stability,
    limits: &Limits,
) -> Result<RatFunc> {
    let p = p_poly(q, d, theta, limits)?;
    Ok(p.mul(&RatFunc::q_power(1).sub(&RatFunc::one())))
}

/// Compactly supported Betti polynomial `(q - 1) p_d(q)` of the moduli
/// space when `d` is coprime for (the normalization of) `theta`.
/// Nonemptiness of the moduli space is not checked.
pub fn betti_coprime(
    q: &Quiver,
    d: &DimVector,
    theta: &Stability,
    limits: &Limits,
) -> Result<HalfLaurent> {
    check_input(q, d, theta)?;
    let normalized = theta.normalize(d)?;
    if let Some(witness) = normalized.coprime_witness(d, limits)? {
        return Err(Error::NotCoprime(witness));
    }
    let r = betti_candidate(q, d, theta, limits)?;
    as_q_polynomial(&r, "coprime Betti polynomial")
}

fn as_q_polynomial(r: &RatFunc, what: &str) -> Result<HalfLaurent> {
    match r.to_laurent() {
        Some(p) if p.is_integral_q_polynomial() => Ok(p),
        _ => Err(Error::Consistency(format!(
            "{what} is not an integral polynomial in q: {r}"
        ))),
    }
}

/// `(-v)^k`.
fn neg_v_power(k: i64) -> RatFunc {
    let p = RatFunc::v_power(k);
    if k.rem_euclid(2) == 1 {
        p.neg()
    } else {
        p
    }
}

/// q-DT invariants `DT_e` for every slope-zero `0 != e <= d`, defined by
///
/// ```text
/// 1 + sum_e (-v)^<e,e> p_e t^e = Exp( sum_e DT_e t^e / (v^-1 - v) )
/// ```
///
/// after normalizing `theta` so that it vanishes on `d`.
pub fn dt_invariants(
    q: &Quiver,
    theta: &Stability,
    d: &DimVector,
    limits: &Limits,
) -> Result<BTreeMap<DimVector, RatFunc>> {
    check_input(q, d, theta)?;
    limits.check_box(d)?;
    let normalized = theta.normalize(d)?;
    let exponents: Vec<DimVector> = BoxIter::new(d)
        .filter(|e| !e.is_zero() && normalized.eval(e) == 0)
        .collect();

    let mut series = SlopeSeries::one(d.clone());
    for e in &exponents {
        let p = p_poly(q, e, &normalized, limits)?;
        let ee = q.euler_unchecked(e.coords(), e.coords());
        series.set(e.clone(), neg_v_power(ee).mul(&p));
    }
    let log = series.pleth_log()?;
    let factor = RatFunc::v_power(-1).sub(&RatFunc::v_power(1));
    Ok(exponents
        .into_iter()
        .map(|e| {
            let dt = factor.mul(&log.coeff(&e));
            (e, dt)
        })
        .collect())
}

/// Compactly supported intersection Poincaré polynomial through the DT
/// route, `(-v)^(1 - <d,d>) DT_d`. Requires the Euler form to be symmetric
/// on the kernel of the normalized stability; nonemptiness is assumed.
pub fn ic_poincare_dt(
    q: &Quiver,
    d: &DimVector,
    theta: &Stability,
    limits: &Limits,
) -> Result<HalfLaurent> {
    check_input(q, d, theta)?;
    let normalized = theta.normalize(d)?;
    if !q.symmetric_on_kernel(&normalized)? {
        return Err(Error::KernelAsymmetric);
    }
    let dts = dt_invariants(q, &normalized, d, limits)?;
    let dt = dts.get(d).cloned().unwrap_or_default();
    let r = neg_v_power(1 - q.euler_unchecked(d.coords(), d.coords())).mul(&dt);
    as_q_polynomial(&r, "intersection Poincare polynomial (DT route)")
}

/// Compactly supported intersection Poincaré polynomial through the small
/// resolution given by `theta_prime`: the coprime Betti polynomial for the
/// deformed stability.
pub fn ic_poincare_resolution(
    q: &Quiver,
    d: &DimVector,
    theta: &Stability,
    theta_prime: &Stability,
    limits: &Limits,
) -> Result<HalfLaurent> {
    check_input(q, d, theta)?;
    check_input(q, d, theta_prime)?;
    let normalized = theta.normalize(d)?;
    let deformed = theta_prime.normalize(d)?;
    let check = is_generic_deformation(&normalized, &deformed, d, limits)?;
    if !check.passes() {
        return Err(Error::NotGenericDeformation(check.summary()));
    }
    if !q.symmetric_on_kernel(&normalized)? {
        return Err(Error::KernelAsymmetric);
    }
    betti_coprime(q, d, &deformed, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(x: &[i64]) -> DimVector {
        DimVector::new(x.to_vec()).unwrap()
    }

    fn st(x: &[i64]) -> Stability {
        Stability::new(x.to_vec())
    }

    fn kronecker(m: u32, n: u32) -> Quiver {
        Quiver::from_matrix(vec![vec![0, m], vec![n, 0]]).unwrap()
    }

    fn parts(decs: &[OrderedDecomposition]) -> Vec<Vec<Vec<i64>>> {
        let mut v: Vec<Vec<Vec<i64>>> = decs
            .iter()
            .map(|d| d.parts.iter().map(|p| p.coords().to_vec()).collect())
            .collect();
        v.sort();
        v
    }

    fn q_rat(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::from_laurent(&HalfLaurent::from_q_coeffs(num))
            .div(&RatFunc::from_laurent(&HalfLaurent::from_q_coeffs(den)))
            .unwrap()
    }

    #[test]
    fn hn_examples() {
        let lim = Limits::default();
        let a = hn_decompositions(&dv(&[1, 1]), &st(&[1, -1]), &lim).unwrap();
        assert_eq!(
            parts(&a),
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1]]]
        );
        let b = hn_decompositions(&dv(&[2]), &st(&[0]), &lim).unwrap();
        assert_eq!(parts(&b), vec![vec![vec![2]]]);
        let c = hn_decompositions(&dv(&[1, 1]), &st(&[-1, 1]), &lim).unwrap();
        assert_eq!(
            parts(&c),
            vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 1]]]
        );
    }

    #[test]
    fn hn_with_unnormalized_stability() {
        // Theta(d) != 0: slopes are compared against mu(d) = 1/2
        let lim = Limits::default();
        let a = hn_decompositions(&dv(&[1, 1]), &st(&[1, 0]), &lim).unwrap();
        assert_eq!(
            parts(&a),
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 1]]]
        );
    }

    #[test]
    fn p_examples() {
        let lim = Limits::default();
        assert_eq!(
            p_poly(&kronecker(1, 0), &dv(&[1, 1]), &st(&[1, -1]), &lim).unwrap(),
            q_rat(&[1], &[-1, 1])
        );
        let point = Quiver::from_matrix(vec![vec![0]]).unwrap();
        assert_eq!(
            p_poly(&point, &dv(&[1]), &st(&[0]), &lim).unwrap(),
            q_rat(&[1], &[-1, 1])
        );
        assert_eq!(
            p_poly(&kronecker(2, 0), &dv(&[1, 1]), &st(&[1, -1]), &lim).unwrap(),
            q_rat(&[1, 1], &[-1, 1])
        );
    }

    #[test]
    fn p_matches_direct_term_sum() {
        // independent evaluation term by term with RatFunc arithmetic
        let lim = Limits::default();
        let q = Quiver::from_matrix(vec![vec![1, 2], vec![0, 0]]).unwrap();
        let d = dv(&[2, 1]);
        let theta = st(&[1, -2]);
        let mut direct = RatFunc::zero();
        for dec in hn_decompositions(&d, &theta, &lim).unwrap() {
            let sign = if dec.len() % 2 == 1 { 1 } else { -1 };
            let mut t =
                RatFunc::q_power(-dec.euler_sum(&q)).scale(&BigRational::from_integer(sign.into()));
            for p in &dec.parts {
                for &x in p.coords() {
                    for j in 1..=x {
                        let f = RatFunc::one().sub(&RatFunc::q_power(-j));
                        t = t.div(&f).unwrap();
                    }
                }
            }
            direct = direct.add(&t);
        }
        assert_eq!(p_poly(&q, &d, &theta, &lim).unwrap(), direct);
    }

    #[test]
    fn betti_examples() {
        let lim = Limits::default();
        assert_eq!(
            betti_coprime(&kronecker(1, 0), &dv(&[1, 1]), &st(&[1, -1]), &lim).unwrap(),
            HalfLaurent::one()
        );
        assert_eq!(
            betti_coprime(&kronecker(2, 2), &dv(&[1, 1]), &st(&[1, -1]), &lim).unwrap(),
            HalfLaurent::from_q_coeffs(&[0, 0, 1, 1])
        );
        assert!(matches!(
            betti_coprime(&kronecker(2, 2), &dv(&[1, 1]), &st(&[0, 0]), &lim),
            Err(Error::NotCoprime(_))
        ));
    }

    #[test]
    fn dt_examples() {
        let lim = Limits::default();
        let point = Quiver::from_matrix(vec![vec![0]]).unwrap();
        let dts = dt_invariants(&point, &st(&[0]), &dv(&[1]), &lim).unwrap();
        assert_eq!(dts[&dv(&[1])], RatFunc::one());

        let looped = Quiver::from_matrix(vec![vec![1]]).unwrap();
        let dts = dt_invariants(&looped, &st(&[0]), &dv(&[1]), &lim).unwrap();
        assert_eq!(dts[&dv(&[1])], RatFunc::v_power(1).neg());

        let dts = dt_invariants(&kronecker(2, 2), &st(&[0, 0]), &dv(&[1, 1]), &lim).unwrap();
        let expect = RatFunc::v_power(1).add(&RatFunc::v_power(3)).neg();
        assert_eq!(dts[&dv(&[1, 1])], expect);
    }

    #[test]
    fn dt_of_a_point_vanishes_in_higher_degree() {
        let lim = Limits::default();
        let point = Quiver::from_matrix(vec![vec![0]]).unwrap();
        let dts = dt_invariants(&point, &st(&[0]), &dv(&[4]), &lim).unwrap();
        assert_eq!(dts[&dv(&[1])], RatFunc::one());
        for n in 2..=4 {
            assert!(dts[&dv(&[n])].is_zero(), "DT_{n}");
        }
    }

    #[test]
    fn ic_examples() {
        let lim = Limits::default();
        let point = Quiver::from_matrix(vec![vec![0]]).unwrap();
        assert_eq!(
            ic_poincare_dt(&point, &dv(&[1]), &st(&[0]), &lim).unwrap(),
            HalfLaurent::one()
        );
        let looped = Quiver::from_matrix(vec![vec![1]]).unwrap();
        assert_eq!(
            ic_poincare_dt(&looped, &dv(&[1]), &st(&[0]), &lim).unwrap(),
            HalfLaurent::q_power(1)
        );
        let q = kronecker(2, 2);
        let expect = HalfLaurent::from_q_coeffs(&[0, 0, 1, 1]);
        assert_eq!(
            ic_poincare_dt(&q, &dv(&[1, 1]), &st(&[0, 0]), &lim).unwrap(),
            expect
        );
        assert_eq!(
            ic_poincare_resolution(&q, &dv(&[1, 1]), &st(&[0, 0]), &st(&[1, -1]), &lim).unwrap(),
            expect
        );
        assert_eq!(
            ic_poincare_resolution(&point, &dv(&[1]), &st(&[0]), &st(&[0]), &lim).unwrap(),
            HalfLaurent::one()
        );
    }

    #[test]
    fn ic_rejects_asymmetric_kernel() {
        let lim = Limits::default();
        assert_eq!(
            ic_poincare_dt(&kronecker(3, 1), &dv(&[1, 1]), &st(&[0, 0]), &lim),
            Err(Error::KernelAsymmetric)
        );
        assert_eq!(
            ic_poincare_resolution(
                &kronecker(3, 1),
                &dv(&[1, 1]),
                &st(&[0, 0]),
                &st(&[1, -1]),
                &lim
            ),
            Err(Error::KernelAsymmetric)
        );
    }

    #[test]
    fn non_coprime_candidate_has_denominator() {
        let lim = Limits::default();
        let r = betti_candidate(&kronecker(2, 2), &dv(&[1, 1]), &st(&[0, 0]), &lim).unwrap();
        assert!(!r.is_laurent());
    }
}
