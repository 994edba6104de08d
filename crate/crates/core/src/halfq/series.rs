//! Truncated series `sum_e c_e t^e` over the dimension-vector box `[0, bound]`,
//! with the plethystic exponential and logarithm.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::quiver::DimVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeSeries {
    bound: DimVector,
    terms: BTreeMap<DimVector, RatFunc>,
}

impl SlopeSeries {
    pub fn zero(bound: DimVector) -> Self {
        SlopeSeries {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bound: DimVector) -> Self {
        let n = bound.len();
        let mut s = SlopeSeries::zero(bound);
        s.terms.insert(DimVector::zero(n), RatFunc::one());
        s
    }

    /// `c t^e`; zero if `e` lies outside the box.
    pub fn monomial(bound: DimVector, e: DimVector, c: RatFunc) -> Self {
        let mut s = SlopeSeries::zero(bound);
        s.set(e, c);
        s
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DimVector, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &DimVector) -> RatFunc {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&DimVector::zero(self.bound.len()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sets a coefficient; exponents outside the box are dropped.
    pub fn set(&mut self, e: DimVector, c: RatFunc) {
        if !e.le(&self.bound) {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    fn accumulate(&mut self, e: DimVector, c: RatFunc) {
        if c.is_zero() || !e.le(&self.bound) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let sum = slot.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn same_box(&self, other: &SlopeSeries) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoxMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &SlopeSeries) -> Result<SlopeSeries> {
        self.same_box(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &SlopeSeries) -> SlopeSeries {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SlopeSeries) -> Result<SlopeSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SlopeSeries {
        self.map_coeffs(|c| c.neg())
    }

    /// Product truncated to the box.
    pub fn mul(&self, other: &SlopeSeries) -> Result<SlopeSeries> {
        self.same_box(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &SlopeSeries) -> SlopeSeries {
        let mut out = SlopeSeries::zero(self.bound.clone());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.add(b);
                if e.le(&self.bound) {
                    out.accumulate(e, ca.mul(cb));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> SlopeSeries {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn scale_rational(&self, c: &BigRational) -> SlopeSeries {
        self.map_coeffs(|x| x.scale(c))
    }

    fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> SlopeSeries {
        let mut out = SlopeSeries::zero(self.bound.clone());
        for (e, c) in &self.terms {
            out.set(e.clone(), f(c));
        }
        out
    }

    /// Adams operation: `v -> v^n` in coefficients, `e -> n e` in exponents.
    pub fn adams(&self, n: u32) -> SlopeSeries {
        assert!(n >= 1, "Adams operations are indexed from 1");
        let mut out = SlopeSeries::zero(self.bound.clone());
        for (e, c) in &self.terms {
            out.set(e.scale(n as i64), c.adams(n));
        }
        out
    }

    /// Largest `k` for which a product of `k` non-constant terms can stay
    /// inside the box.
    fn nilpotency_bound(&self) -> u32 {
        self.bound.total().max(0) as u32
    }

    /// Ordinary exponential of a series without constant term.
    pub fn exp(&self) -> Result<SlopeSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let mut out = SlopeSeries::one(self.bound.clone());
        let mut power = SlopeSeries::one(self.bound.clone());
        for k in 1..=self.nilpotency_bound() {
            power = power.mul_unchecked(self);
            if power.is_zero() {
                break;
            }
            power = power.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(k)));
            out = out.add_unchecked(&power);
        }
        Ok(out)
    }

    /// Ordinary logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<SlopeSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let g = self.sub(&SlopeSeries::one(self.bound.clone()))?;
        let mut out = SlopeSeries::zero(self.bound.clone());
        let mut power = SlopeSeries::one(self.bound.clone());
        for k in 1..=self.nilpotency_bound() {
            power = power.mul_unchecked(&g);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = BigRational::new(BigInt::from(sign), BigInt::from(k));
            out = out.add_unchecked(&power.scale_rational(&c));
        }
        Ok(out)
    }

    /// Plethystic exponential `exp(sum_n adams(n, s) / n)`.
    pub fn pleth_exp(&self) -> Result<SlopeSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let mut arg = SlopeSeries::zero(self.bound.clone());
        for n in 1..=self.nilpotency_bound() {
            let a = self.adams(n);
            if a.is_zero() {
                continue;
            }
            arg = arg.add_unchecked(
                &a.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(n))),
            );
        }
        arg.exp()
    }

    /// Plethystic logarithm `sum_n mu(n)/n adams(n, log s)`.
    pub fn pleth_log(&self) -> Result<SlopeSeries> {
        let l = self.log()?;
        let mut out = SlopeSeries::zero(self.bound.clone());
        for n in 1..=self.nilpotency_bound() {
            let mu = mobius(n as u64);
            if mu == 0 {
                continue;
            }
            let a = l.adams(n);
            if a.is_zero() {
                continue;
            }
            out = out.add_unchecked(
                &a.scale_rational(&BigRational::new(BigInt::from(mu), BigInt::from(n))),
            );
        }
        Ok(out)
    }
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
