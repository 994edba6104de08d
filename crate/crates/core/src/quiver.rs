//! Quivers, dimension vectors, stabilities, and the Euler form.
//!
//! A quiver is stored as a square matrix of arrow multiplicities; entry
//! `(i, j)` counts arrows `i -> j`, loops sit on the diagonal. Every other
//! object in the crate sees the quiver only through the Euler form
//! `<d, e> = sum_i d_i e_i - sum_{i,j} a_ij d_i e_j` and its antisymmetrization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{proper_subvectors, Limits};

/// Nonnegative integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.iter().any(|&x| x < 0) {
            return Err(Error::NegativeDimension);
        }
        Ok(DimVector(coords))
    }

    /// Caller guarantees nonnegativity.
    pub(crate) fn from_raw(coords: Vec<i64>) -> Self {
        debug_assert!(coords.iter().all(|&x| x >= 0));
        DimVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn ones(n: usize) -> Self {
        DimVector(vec![1; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Sum of the coordinates.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if it stays nonnegative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, k: i64) -> DimVector {
        assert!(k >= 0);
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    /// True iff the coordinates have gcd 1.
    pub fn is_indivisible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        Ok(self.gcd() == 1)
    }

    fn ensure_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<i64>> for DimVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DimVector::new(v)
    }
}

impl From<DimVector> for Vec<i64> {
    fn from(d: DimVector) -> Vec<i64> {
        d.0
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Integer linear form on dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Stability(Vec<i64>);

impl Stability {
    pub fn new(weights: Vec<i64>) -> Self {
        Stability(weights)
    }

    pub fn zero(n: usize) -> Self {
        Stability(vec![0; n])
    }

    /// The functional `dim`, all weights one.
    pub fn dim(n: usize) -> Self {
        Stability(vec![1; n])
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `Theta(d)`. Panics on length mismatch; use [`Stability::apply`] for
    /// unchecked input.
    pub fn eval(&self, d: &DimVector) -> i64 {
        assert_eq!(self.0.len(), d.len(), "stability/dimension length mismatch");
        self.0.iter().zip(d.coords()).map(|(t, x)| t * x).sum()
    }

    pub fn apply(&self, d: &DimVector) -> Result<i64> {
        d.ensure_len(self.0.len())?;
        Ok(self.eval(d))
    }

    /// `x * self + y * dim`.
    pub fn affine(&self, x: i64, y: i64) -> Stability {
        Stability(self.0.iter().map(|t| x * t + y).collect())
    }

    pub fn scaled_add(&self, c: i64, other: &Stability) -> Stability {
        Stability(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| c * a + b)
                .collect(),
        )
    }

    /// `Theta(d) / total(d)`.
    pub fn slope(&self, d: &DimVector) -> Result<Rational64> {
        d.ensure_len(self.0.len())?;
        if d.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        Ok(Rational64::new(self.eval(d), d.total()))
    }

    /// True iff `Theta(e) != Theta(d)` for every `0 != e < d`.
    pub fn is_coprime(&self, d: &DimVector, limits: &Limits) -> Result<bool> {
        Ok(self.coprime_witness(d, limits)?.is_none())
    }

    /// First `0 != e < d` (lexicographic) with `Theta(e) = Theta(d)`.
    pub fn coprime_witness(&self, d: &DimVector, limits: &Limits) -> Result<Option<DimVector>> {
        d.ensure_len(self.0.len())?;
        if d.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        let target = self.eval(d);
        Ok(proper_subvectors(d, limits)?.find(|e| self.eval(e) == target))
    }

    /// Replaces `Theta` by `total(d) Theta - Theta(d) dim`, which vanishes on
    /// `d` and defines the same semistability order. Returns `Theta` itself
    /// when it already vanishes on `d`.
    pub fn normalize(&self, d: &DimVector) -> Result<Stability> {
        d.ensure_len(self.0.len())?;
        if d.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        let value = self.eval(d);
        if value == 0 {
            return Ok(self.clone());
        }
        Ok(self.affine(d.total(), -value))
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Finite quiver: named vertices and a square matrix of arrow counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Vec<u32>>) -> Result<Self> {
        let n = vertices.len();
        if arrows.len() != n || arrows.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidQuiver(format!(
                "arrow matrix must be {n}x{n}"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex '{v}'")));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Vertices named `0, 1, ...`.
    pub fn from_matrix(arrows: Vec<Vec<u32>>) -> Result<Self> {
        let names = (0..arrows.len()).map(|i| i.to_string()).collect();
        Quiver::new(names, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Vec<u32>] {
        &self.arrows
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|i| (0..n).all(|j| self.arrows[i][j] == self.arrows[j][i]))
    }

    fn check(&self, d: &DimVector) -> Result<()> {
        d.ensure_len(self.vertex_count())
    }

    /// Euler form `<d, e>`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check(d)?;
        self.check(e)?;
        Ok(self.euler_unchecked(d.coords(), e.coords()))
    }

    pub(crate) fn euler_unchecked(&self, d: &[i64], e: &[i64]) -> i64 {
        let mut s: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        for (i, row) in self.arrows.iter().enumerate() {
            if d[i] == 0 {
                continue;
            }
            for (j, &a) in row.iter().enumerate() {
                s -= a as i64 * d[i] * e[j];
            }
        }
        s
    }

    /// `{d, e} = <d, e> - <e, d>`.
    pub fn antisym_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check(d)?;
        self.check(e)?;
        Ok(self.antisym_unchecked(d.coords(), e.coords()))
    }

    pub(crate) fn antisym_unchecked(&self, d: &[i64], e: &[i64]) -> i64 {
        self.euler_unchecked(d, e) - self.euler_unchecked(e, d)
    }

    /// Matrix of `<i, j>` on unit vectors.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (i == j) as i64 - self.arrows[i][j] as i64)
                    .collect()
            })
            .collect()
    }

    /// Matrix of `{i, j} = a_ji - a_ij` on unit vectors.
    pub fn skew_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.arrows[j][i] as i64 - self.arrows[i][j] as i64)
                    .collect()
            })
            .collect()
    }

    /// Rank over the rationals of the antisymmetrized Euler form.
    pub fn skew_rank(&self) -> usize {
        integer_rank(&self.skew_matrix())
    }

    /// Whether `{_, _}` vanishes on `Ker(Theta)`.
    pub fn symmetric_on_kernel(&self, theta: &Stability) -> Result<bool> {
        if theta.len() != self.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count(),
                found: theta.len(),
            });
        }
        let basis = kernel_basis(theta);
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                if self.antisym_unchecked(x, y) != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Linear form `eta` with `{d, e} = eta(d) Theta(e) - Theta(d) eta(e)`.
    pub fn eta_factorization(&self, theta: &Stability) -> Result<EtaFactorization> {
        if !self.symmetric_on_kernel(theta)? {
            return Err(Error::KernelAsymmetric);
        }
        let n = self.vertex_count();
        let skew = self.skew_matrix();
        let eta = match theta.weights().iter().position(|&t| t != 0) {
            // symmetric on the whole lattice, so the form is zero
            None => vec![BigRational::zero(); n],
            Some(p) => {
                // Basis v_i = Theta_p e_i - Theta_i e_p of Ker(Theta) plus
                // v_n = e_p / Theta_p; eta(v_i) = {v_i, v_n} collapses to
                // eta_i = {e_i, e_p} / Theta_p and eta_p = 0.
                let tp = BigInt::from(theta.weights()[p]);
                (0..n)
                    .map(|i| BigRational::new(BigInt::from(skew[i][p]), tp.clone()))
                    .collect()
            }
        };
        let fact = EtaFactorization { eta };
        if !fact.verify(self, theta) {
            return Err(Error::Consistency(
                "eta factorization does not reproduce the antisymmetrized form".into(),
            ));
        }
        Ok(fact)
    }

    /// Expected dimension `1 - <d, d>` of the stable moduli space.
    pub fn moduli_dim(&self, d: &DimVector) -> Result<i64> {
        Ok(1 - self.euler_form(d, d)?)
    }
}

/// Rational linear form reproducing the antisymmetrized Euler form against
/// a fixed stability. Normalized so that `eta` vanishes at the first vertex
/// where `Theta` is nonzero (removing the freedom `eta + c Theta`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaFactorization {
    eta: Vec<BigRational>,
}

impl EtaFactorization {
    pub fn weights(&self) -> &[BigRational] {
        &self.eta
    }

    /// Checks the identity exactly on all pairs of unit vectors.
    pub fn verify(&self, q: &Quiver, theta: &Stability) -> bool {
        let skew = q.skew_matrix();
        let n = q.vertex_count();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let rhs = &self.eta[i] * BigInt::from(theta.weights()[j])
                    - &self.eta[j] * BigInt::from(theta.weights()[i]);
                rhs == BigRational::from_integer(BigInt::from(skew[i][j]))
            })
        })
    }

    /// Primitive integer representative of the direction of `eta`, first
    /// nonzero weight positive. Only the direction survives: the scaled form
    /// no longer satisfies the identity unless the scale is 1.
    pub fn primitive_integer(&self) -> Stability {
        let lcm = self.eta.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .eta
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return Stability::zero(self.eta.len());
        }
        let sign = if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        Stability(
            ints.iter()
                .map(|x| {
                    let v: BigInt = x / &g * &sign;
                    i64::try_from(v).expect("eta weight overflows i64")
                })
                .collect(),
        )
    }
}

/// Integer basis of `{x : Theta(x) = 0}` in `Q^n`.
pub(crate) fn kernel_basis(theta: &Stability) -> Vec<Vec<i64>> {
    let w = theta.weights();
    let n = w.len();
    match w.iter().position(|&t| t != 0) {
        None => (0..n).map(|i| DimVector::unit(n, i).0).collect(),
        Some(p) => (0..n)
            .filter(|&i| i != p)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = w[p];
                v[p] = -w[i];
                v
            })
            .collect(),
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub(crate) fn integer_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(x: &[i64]) -> DimVector {
        DimVector::new(x.to_vec()).unwrap()
    }

    fn kronecker(m: u32, n: u32) -> Quiver {
        Quiver::from_matrix(vec![vec![0, m], vec![n, 0]]).unwrap()
    }

    fn complete_with_loops(l: usize) -> Quiver {
        Quiver::from_matrix(vec![vec![1; l]; l]).unwrap()
    }

    #[test]
    fn euler_form_examples() {
        let empty = Quiver::from_matrix(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(empty.euler_form(&dv(&[1, 1]), &dv(&[1, 1])).unwrap(), 2);
        assert_eq!(
            kronecker(2, 0)
                .euler_form(&dv(&[1, 1]), &dv(&[1, 1]))
                .unwrap(),
            0
        );
        let q = complete_with_loops(3);
        assert_eq!(q.euler_form(&dv(&[1, 1, 1]), &dv(&[1, 1, 1])).unwrap(), -6);
    }

    #[test]
    fn euler_form_rejects_wrong_length() {
        let q = kronecker(1, 0);
        assert!(matches!(
            q.euler_form(&dv(&[1]), &dv(&[1, 1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn antisym_examples() {
        for (m, n) in [(3, 1), (1, 4), (2, 2)] {
            let q = kronecker(m, n);
            assert_eq!(
                q.antisym_form(&dv(&[1, 0]), &dv(&[0, 1])).unwrap(),
                n as i64 - m as i64
            );
        }
        let sym = kronecker(2, 2);
        assert_eq!(sym.antisym_form(&dv(&[2, 1]), &dv(&[0, 3])).unwrap(), 0);
    }

    #[test]
    fn skew_rank_examples() {
        assert_eq!(kronecker(2, 2).skew_rank(), 0);
        assert_eq!(kronecker(3, 1).skew_rank(), 2);
        // complete bipartite 2 -> 2
        let bip = Quiver::from_matrix(vec![
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(bip.skew_rank(), 2);
    }

    #[test]
    fn slope_examples() {
        let t = Stability::new(vec![1, -1]);
        assert_eq!(t.slope(&dv(&[1, 1])).unwrap(), Rational64::from_integer(0));
        assert_eq!(t.slope(&dv(&[2, 1])).unwrap(), Rational64::new(1, 3));
        assert_eq!(
            Stability::zero(2).slope(&dv(&[3, 5])).unwrap(),
            Rational64::from_integer(0)
        );
        assert_eq!(t.slope(&dv(&[0, 0])), Err(Error::ZeroDimensionVector));
    }

    #[test]
    fn indivisible_examples() {
        assert!(dv(&[1, 1]).is_indivisible().unwrap());
        assert!(!dv(&[2, 2]).is_indivisible().unwrap());
        assert!(dv(&[2, 3]).is_indivisible().unwrap());
        assert!(dv(&[0, 0]).is_indivisible().is_err());
    }

    #[test]
    fn coprime_examples() {
        let lim = Limits::default();
        let t = Stability::new(vec![1, -1]);
        assert!(t.is_coprime(&dv(&[1, 1]), &lim).unwrap());
        assert!(!Stability::zero(2).is_coprime(&dv(&[1, 1]), &lim).unwrap());
        assert_eq!(
            t.coprime_witness(&dv(&[2, 2]), &lim).unwrap(),
            Some(dv(&[1, 1]))
        );
        let tight = Limits::with_max_box(3);
        assert!(matches!(
            t.is_coprime(&dv(&[1, 1]), &tight),
            Err(Error::BoxGuardExceeded { .. })
        ));
    }

    #[test]
    fn kernel_symmetry_examples() {
        assert!(kronecker(2, 2)
            .symmetric_on_kernel(&Stability::new(vec![3, 1]))
            .unwrap());
        assert!(!kronecker(1, 0)
            .symmetric_on_kernel(&Stability::zero(2))
            .unwrap());
        assert!(kronecker(4, 1)
            .symmetric_on_kernel(&Stability::new(vec![1, -1]))
            .unwrap());
        // three vertices, antisymmetric part of rank 2 but Theta misaligned
        let q = Quiver::from_matrix(vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(!q
            .symmetric_on_kernel(&Stability::new(vec![0, 0, 1]))
            .unwrap());
        assert!(q
            .symmetric_on_kernel(&Stability::new(vec![1, 0, 0]))
            .unwrap());
    }

    #[test]
    fn eta_for_kronecker() {
        let (m, n) = (5i64, 2i64);
        let q = kronecker(m as u32, n as u32);
        let theta = Stability::new(vec![1, -1]);
        let f = q.eta_factorization(&theta).unwrap();
        // (m - n, 0) modulo multiples of Theta
        let shifted: Vec<BigRational> = f
            .weights()
            .iter()
            .zip(theta.weights())
            .map(|(e, &t)| e + BigRational::from_integer(BigInt::from((m - n) * t)))
            .collect();
        assert_eq!(
            shifted,
            vec![
                BigRational::from_integer(BigInt::from(m - n)),
                BigRational::zero()
            ]
        );
        assert!(f.verify(&q, &theta));
    }

    #[test]
    fn eta_symmetric_is_zero() {
        let q = kronecker(3, 3);
        let f = q.eta_factorization(&Stability::new(vec![1, -1])).unwrap();
        assert!(f.weights().iter().all(|x| x.is_zero()));
        assert_eq!(f.primitive_integer(), Stability::zero(2));
    }

    #[test]
    fn eta_requires_kernel_symmetry() {
        let q = kronecker(1, 0);
        assert_eq!(
            q.eta_factorization(&Stability::zero(2)),
            Err(Error::KernelAsymmetric)
        );
    }

    #[test]
    fn eta_rational_weights_are_primitive_scaled() {
        // Theta_p = 2 forces halves
        let q = kronecker(3, 0);
        let theta = Stability::new(vec![2, -2]);
        let f = q.eta_factorization(&theta).unwrap();
        assert!(f.verify(&q, &theta));
        assert_eq!(
            f.weights()[1],
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        assert_eq!(f.primitive_integer(), Stability::new(vec![0, 1]));
    }

    #[test]
    fn normalize_examples() {
        let d = dv(&[1, 1]);
        assert_eq!(
            Stability::new(vec![1, -1]).normalize(&d).unwrap(),
            Stability::new(vec![1, -1])
        );
        assert_eq!(
            Stability::new(vec![1, 0]).normalize(&d).unwrap(),
            Stability::new(vec![1, -1])
        );
        assert_eq!(
            Stability::new(vec![1, 1]).normalize(&d).unwrap(),
            Stability::new(vec![0, 0])
        );
    }

    #[test]
    fn moduli_dim_examples() {
        assert_eq!(kronecker(2, 0).moduli_dim(&dv(&[1, 1])).unwrap(), 1);
        assert_eq!(
            complete_with_loops(3).moduli_dim(&dv(&[1, 1, 1])).unwrap(),
            7
        );
        let point = Quiver::from_matrix(vec![vec![0]]).unwrap();
        assert_eq!(point.moduli_dim(&dv(&[1])).unwrap(), 0);
    }

    #[test]
    fn quiver_validation() {
        assert!(Quiver::from_matrix(vec![vec![0, 1]]).is_err());
        assert!(Quiver::new(vec!["a".into(), "a".into()], vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(DimVector::new(vec![1, -1]).is_err());
    }
}
