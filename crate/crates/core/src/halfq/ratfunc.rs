use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::HalfLaurent;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Reduced rational function in `v = q^(1/2)`.
///
/// The value is `v^shift * numerator / denominator`. In canonical form
/// neither polynomial vanishes at `v = 0`, they are coprime, and the
/// denominator is monic; zero is `0 / 1` with shift 0. Structural equality
/// is therefore equality in the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    shift: i64,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
            shift: 0,
        }
    }

    pub fn one() -> Self {
        RatFunc::from_laurent(&HalfLaurent::one())
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_laurent(&HalfLaurent::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFunc::from_laurent(&HalfLaurent::monomial(c, 0))
    }

    pub fn v_power(k: i64) -> Self {
        RatFunc::from_laurent(&HalfLaurent::v_power(k))
    }

    pub fn q_power(k: i64) -> Self {
        RatFunc::v_power(2 * k)
    }

    pub fn from_laurent(p: &HalfLaurent) -> Self {
        let (num, shift) = p.to_poly_shifted();
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num,
            den: Poly::one(),
            shift,
        }
    }

    /// `numerator / denominator`, reduced.
    pub fn new(numerator: &HalfLaurent, denominator: &HalfLaurent) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (n, sn) = numerator.to_poly_shifted();
        let (d, sd) = denominator.to_poly_shifted();
        Ok(RatFunc::normalized(n, d, sn - sd))
    }

    pub(crate) fn from_polys(num: Poly, den: Poly, shift: i64) -> Self {
        assert!(!den.is_zero());
        RatFunc::normalized(num, den, shift)
    }

    fn normalized(mut num: Poly, mut den: Poly, mut shift: i64) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let ln = num.low_order();
        let ld = den.low_order();
        num = num.shift_down(ln);
        den = den.shift_down(ld);
        shift += ln as i64 - ld as i64;
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.exact_div(&g);
            den = den.exact_div(&g);
        }
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den, shift }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// Trivial denominator.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<HalfLaurent> {
        self.is_laurent()
            .then(|| HalfLaurent::from_poly_shifted(&self.num, self.shift))
    }

    pub fn numerator(&self) -> HalfLaurent {
        HalfLaurent::from_poly_shifted(&self.num, self.shift)
    }

    pub fn denominator(&self) -> HalfLaurent {
        HalfLaurent::from_poly_shifted(&self.den, 0)
    }

    /// Numerator and denominator involve only integer powers of `q`.
    pub fn is_in_q(&self) -> bool {
        self.numerator().is_in_q() && self.denominator().is_in_q()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
            shift: self.shift,
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let b = other.num.shift_up((other.shift - s) as usize);
        if self.den == other.den {
            return RatFunc::normalized(a.add(&b), self.den.clone(), s);
        }
        let num = a.mul(&other.den).add(&b.mul(&self.den));
        RatFunc::normalized(num, self.den.mul(&other.den), s)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.is_laurent() && other.is_laurent() {
            // no gcd work needed beyond the (already reduced) zero-order strip
            return RatFunc::normalized(
                self.num.mul(&other.num),
                Poly::one(),
                self.shift + other.shift,
            );
        }
        // cross-cancel before multiplying to keep degrees low
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = other.den.exact_div(&g1);
        let n2 = other.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        RatFunc::normalized(n1.mul(&n2), d1.mul(&d2), self.shift + other.shift)
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
            shift: self.shift,
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift_v(&self, k: i64) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.clone(),
            den: self.den.clone(),
            shift: self.shift + k,
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalized(
            self.den.clone(),
            self.num.clone(),
            -self.shift,
        ))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = RatFunc::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Substitutes `v -> v^n`. Coprimality and monicity survive the
    /// substitution, so the result is canonical without further reduction.
    pub fn adams(&self, n: u32) -> RatFunc {
        assert!(n >= 1);
        if n == 1 || self.is_zero() {
            return self.clone();
        }
        RatFunc {
            num: self.num.inflate(n as usize),
            den: self.den.inflate(n as usize),
            shift: self.shift * n as i64,
        }
    }

    pub fn pretty_q(&self) -> String {
        if self.is_laurent() {
            return self.numerator().pretty_q();
        }
        format!(
            "({}) / ({})",
            self.numerator().pretty_q(),
            self.denominator().pretty_q()
        )
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty_q())
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<HalfLaurent> for RatFunc {
    fn from(p: HalfLaurent) -> Self {
        RatFunc::from_laurent(&p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

/// Panics on division by zero; use [`RatFunc::div`] for a fallible version.
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::div(self, rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncWire {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncWire {
            num: self.numerator(),
            den: self.denominator(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RatFuncWire::deserialize(d)?;
        RatFunc::new(&w.num, &w.den).map_err(D::Error::custom)
    }
}
