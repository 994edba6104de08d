use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;

/// Laurent polynomial in `v = q^(1/2)` with rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so structural equality
/// is equality of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    coeffs: BTreeMap<i64, BigRational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    pub fn one() -> Self {
        HalfLaurent::monomial(BigRational::one(), 0)
    }

    /// `c * v^k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        HalfLaurent { coeffs }
    }

    pub fn v_power(k: i64) -> Self {
        HalfLaurent::monomial(BigRational::one(), k)
    }

    /// `q^k = v^(2k)`.
    pub fn q_power(k: i64) -> Self {
        HalfLaurent::v_power(2 * k)
    }

    pub fn from_int(c: i64) -> Self {
        HalfLaurent::monomial(BigRational::from_integer(BigInt::from(c)), 0)
    }

    /// From `(v_power, coefficient)` pairs; repeated powers accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut out = HalfLaurent::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Polynomial in `q` from ascending integer coefficients.
    pub fn from_q_coeffs(xs: &[i64]) -> Self {
        HalfLaurent::from_terms(
            xs.iter()
                .enumerate()
                .map(|(i, &c)| (2 * i as i64, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_power(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> HalfLaurent {
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &HalfLaurent) -> HalfLaurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> HalfLaurent {
        if c.is_zero() {
            return HalfLaurent::zero();
        }
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(&k, x)| (k, x * c)).collect(),
        }
    }

    pub fn shift(&self, k: i64) -> HalfLaurent {
        HalfLaurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&p, c)| (p + k, c.clone()))
                .collect(),
        }
    }

    /// `v -> v^n`.
    pub fn adams(&self, n: u32) -> HalfLaurent {
        HalfLaurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&p, c)| (p * n as i64, c.clone()))
                .collect(),
        }
    }

    /// Only even powers of `v`, i.e. a Laurent polynomial in `q`.
    pub fn is_in_q(&self) -> bool {
        self.coeffs.keys().all(|k| k % 2 == 0)
    }

    /// Polynomial in `q` (even, nonnegative `v`-powers) with integer coefficients.
    pub fn is_integral_q_polynomial(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&k, c)| k >= 0 && k % 2 == 0 && c.is_integer())
    }

    /// Degree in `q` of a polynomial in `q`.
    pub fn q_degree(&self) -> Option<i64> {
        self.max_power().map(|k| k / 2)
    }

    /// Integer coefficients of `q^0, q^1, ...`, if this is an integral polynomial in `q`.
    pub fn q_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral_q_polynomial() {
            return None;
        }
        let deg = self.q_degree().unwrap_or(-1);
        Some((0..=deg).map(|i| self.coeff(2 * i).to_integer()).collect())
    }

    pub(crate) fn to_poly_shifted(&self) -> (Poly, i64) {
        let Some(lo) = self.min_power() else {
            return (Poly::zero(), 0);
        };
        let hi = self.max_power().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo) as usize + 1];
        for (&k, c) in &self.coeffs {
            v[(k - lo) as usize] = c.clone();
        }
        (Poly::new(v), lo)
    }

    pub(crate) fn from_poly_shifted(p: &Poly, shift: i64) -> HalfLaurent {
        HalfLaurent::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    /// `{ "power": "p/q" }` with canonical rational strings.
    pub fn to_power_map(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(k, c)| (k.to_string(), c.to_string()))
            .collect()
    }

    pub fn from_power_map(map: &BTreeMap<String, String>) -> Result<Self, String> {
        let mut out = HalfLaurent::zero();
        for (k, c) in map {
            let k: i64 = k.parse().map_err(|_| format!("bad power '{k}'"))?;
            let c = parse_rational(c)?;
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// Human form in `q`, e.g. `q^2 + q^3` or `-q^(1/2)`.
    pub fn pretty_q(&self) -> String {
        self.render(|k| {
            if k % 2 == 0 {
                match k / 2 {
                    0 => String::new(),
                    1 => "q".into(),
                    e => format!("q^{e}"),
                }
            } else {
                format!("q^({k}/2)")
            }
        })
    }

    /// Human form in `v`.
    pub fn pretty_v(&self) -> String {
        self.render(|k| match k {
            0 => String::new(),
            1 => "v".into(),
            e => format!("v^{e}"),
        })
    }

    fn render(&self, var: impl Fn(i64) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let v = var(k);
            match (abs.is_one(), v.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&v),
                (false, true) => s.push_str(&abs.to_string()),
                (false, false) => {
                    if abs.is_integer() {
                        s.push_str(&format!("{abs}{v}"));
                    } else {
                        s.push_str(&format!("({abs}){v}"));
                    }
                }
            }
        }
        s
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("bad rational '{s}'");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            s.trim().parse().map_err(|_| bad())?,
        )),
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty_q())
    }
}

impl Serialize for HalfLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_power_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(d)?;
        HalfLaurent::from_power_map(&map).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_drops_terms() {
        let a = HalfLaurent::from_q_coeffs(&[1, 1]);
        let b = HalfLaurent::q_power(1);
        assert_eq!(a.sub(&b), HalfLaurent::one());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn pretty_forms() {
        assert_eq!(
            HalfLaurent::from_q_coeffs(&[0, 0, 1, 1]).pretty_q(),
            "q^2 + q^3"
        );
        let x = HalfLaurent::v_power(1).add(&HalfLaurent::v_power(3)).neg();
        assert_eq!(x.pretty_q(), "-q^(1/2) - q^(3/2)");
        assert_eq!(x.pretty_v(), "-v - v^3");
        let h = HalfLaurent::monomial(BigRational::new(1.into(), 2.into()), -2);
        assert_eq!(h.pretty_q(), "(1/2)q^-1");
        assert_eq!(HalfLaurent::zero().pretty_q(), "0");
    }

    #[test]
    fn power_map_roundtrip() {
        let h = HalfLaurent::from_terms([
            (-3, BigRational::new((-2).into(), 6.into())),
            (4, BigRational::from_integer(5.into())),
        ]);
        let m = h.to_power_map();
        assert_eq!(m.get("-3").unwrap(), "-1/3");
        assert_eq!(HalfLaurent::from_power_map(&m).unwrap(), h);
        let json = serde_json::to_string(&h).unwrap();
        let back: HalfLaurent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn q_polynomial_checks() {
        assert!(HalfLaurent::from_q_coeffs(&[1, 2]).is_integral_q_polynomial());
        assert!(!HalfLaurent::v_power(1).is_integral_q_polynomial());
        assert!(!HalfLaurent::q_power(-1).is_integral_q_polynomial());
        assert_eq!(
            HalfLaurent::from_q_coeffs(&[0, 0, 1, 1]).q_degree(),
            Some(3)
        );
    }
}
