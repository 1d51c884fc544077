//! Exact arithmetic in the 8th cyclotomic field ℚ(ζ), ζ⁴ = −1.
//!
//! The field contains both `i = ζ²` and `√2 = ζ − ζ³`, which is everything
//! the Clifford generator images σ_k/√2 need.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

/// `a0 + a1·ζ + a2·ζ² + a3·ζ³` with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycScalar {
    coeffs: [Rational; 4],
}

impl CycScalar {
    pub fn new(coeffs: [Rational; 4]) -> Self {
        CycScalar { coeffs }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycScalar::new([r, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    /// Integer coordinates, convenient for constants and tests.
    pub fn from_ints(c: [i64; 4]) -> Self {
        CycScalar::new(c.map(<Rational as Field>::from_i64))
    }

    /// The primitive 8th root of unity ζ.
    pub fn zeta() -> Self {
        CycScalar::from_ints([0, 1, 0, 0])
    }

    /// `i = ζ²`.
    pub fn i() -> Self {
        CycScalar::from_ints([0, 0, 1, 0])
    }

    /// `√2 = ζ − ζ³`.
    pub fn sqrt2() -> Self {
        CycScalar::from_ints([0, 1, 0, -1])
    }

    /// `1/√2 = (ζ − ζ³)/2`.
    pub fn inv_sqrt2() -> Self {
        let half = crate::scalar::rational(1, 2);
        CycScalar::new([Rational::zero(), half.clone(), Rational::zero(), -half])
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    /// Complex conjugation ζ ↦ ζ⁻¹ = −ζ³.
    pub fn conjugate(&self) -> Self {
        let [a0, a1, a2, a3] = &self.coeffs;
        CycScalar::new([a0.clone(), -a3.clone(), -a2.clone(), -a1.clone()])
    }

    // Galois automorphisms ζ ↦ ζ³ and ζ ↦ ζ⁵ (ζ ↦ ζ⁷ is `conjugate`).
    fn sigma3(&self) -> Self {
        let [a0, a1, a2, a3] = &self.coeffs;
        CycScalar::new([a0.clone(), a3.clone(), -a2.clone(), a1.clone()])
    }

    fn sigma5(&self) -> Self {
        let [a0, a1, a2, a3] = &self.coeffs;
        CycScalar::new([a0.clone(), -a1.clone(), a2.clone(), -a3.clone()])
    }

    /// `Some(r)` when the scalar lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Checked division.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_ref(&inv))
    }

    /// The JSON coordinate strings `["a0","a1","a2","a3"]`.
    pub fn to_strings(&self) -> [String; 4] {
        self.coeffs.clone().map(|r| format_rational(&r))
    }

    pub fn from_strs(parts: &[&str]) -> Result<Self> {
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "scalar needs 4 rational coordinates, got {}",
                parts.len()
            )));
        }
        let mut coeffs: [Rational; 4] = Default::default();
        for (slot, s) in coeffs.iter_mut().zip(parts) {
            *slot = parse_rational(s)?;
        }
        Ok(CycScalar::new(coeffs))
    }
}

/// Canonical text form of a rational: `"p/q"` or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a canonical rational; non-reduced or non-positive denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let Some(den) = den else {
        return Ok(Rational::from_integer(num));
    };
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if !den.is_positive() || den.is_one() {
        return Err(Error::Parse(format!("non-canonical rational {s:?}")));
    }
    let r = Rational::new(num.clone(), den.clone());
    if r.numer() != &num || r.denom() != &den {
        return Err(Error::Parse(format!("non-canonical rational {s:?}")));
    }
    Ok(r)
}

impl Zero for CycScalar {
    fn zero() -> Self {
        CycScalar::new(Default::default())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycScalar {
    fn one() -> Self {
        CycScalar::from_rational(Rational::one())
    }
}

impl<'a> AddAssign<&'a CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &'a CycScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> SubAssign<&'a CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &'a CycScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<'a> MulAssign<&'a CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &'a CycScalar) {
        *self = self.mul_ref(rhs);
    }
}

impl<'a> Add<&'a CycScalar> for CycScalar {
    type Output = CycScalar;
    fn add(mut self, rhs: &'a CycScalar) -> CycScalar {
        self += rhs;
        self
    }
}

impl<'a> Sub<&'a CycScalar> for CycScalar {
    type Output = CycScalar;
    fn sub(mut self, rhs: &'a CycScalar) -> CycScalar {
        self -= rhs;
        self
    }
}

impl<'a> Mul<&'a CycScalar> for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &'a CycScalar) -> CycScalar {
        self.mul_ref(rhs)
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        self + &rhs
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        self - &rhs
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        self.mul_ref(&rhs)
    }
}

/// Panics on a zero divisor; use [`CycScalar::checked_div`] for an error value.
impl Div for CycScalar {
    type Output = CycScalar;
    fn div(self, rhs: CycScalar) -> CycScalar {
        self.checked_div(&rhs).expect("division by zero in ℚ(ζ₈)")
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::new(self.coeffs.map(|c| -c))
    }
}

impl Field for CycScalar {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycScalar::from_rational(r.recip()));
        }
        // a · σ3(a) · σ5(a) · σ7(a) is the (rational) field norm.
        let others = self.sigma3().mul_ref(&self.sigma5()).mul_ref(&self.conjugate());
        let norm = self.mul_ref(&others);
        let norm = norm
            .as_rational()
            .expect("field norm of ℚ(ζ₈) element is rational")
            .recip();
        Some(CycScalar::new(others.coeffs.map(|c| c * &norm)))
    }

    fn from_i64(n: i64) -> Self {
        CycScalar::from_rational(<Rational as Field>::from_i64(n))
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out: [Rational; 4] = Default::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let k = i + j;
                if k < 4 {
                    out[k] += p;
                } else {
                    out[k - 4] -= p;
                }
            }
        }
        CycScalar::new(out)
    }
}

impl From<Rational> for CycScalar {
    fn from(r: Rational) -> Self {
        CycScalar::from_rational(r)
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        <CycScalar as Field>::from_i64(n)
    }
}

/// Renders as `a + b·i + c·√2 + d·i√2`, the real/imaginary split of the value.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = &self.coeffs;
        let half = crate::scalar::rational(1, 2);
        let parts = [
            (a0.clone(), ""),
            (a2.clone(), "i"),
            ((a1 - a3) * &half, "√2"),
            ((a1 + a3) * &half, "i√2"),
        ];
        let mut first = true;
        for (c, unit) in parts.iter().filter(|(c, _)| !c.is_zero()) {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (*unit, mag.is_one()) {
                ("", _) => write!(f, "{}", format_rational(&mag))?,
                (u, true) => write!(f, "{u}")?,
                (u, false) => write!(f, "{}{u}", format_rational(&mag))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts: Vec<String> = Vec::deserialize(deserializer)?;
        let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
        CycScalar::from_strs(&refs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(CycScalar::i().mul_ref(&CycScalar::i()), CycScalar::from(-1));
    }

    #[test]
    fn sqrt2_squared_is_two() {
        assert_eq!(
            CycScalar::sqrt2().mul_ref(&CycScalar::sqrt2()),
            CycScalar::from(2)
        );
        assert_eq!(
            CycScalar::sqrt2().mul_ref(&CycScalar::inv_sqrt2()),
            CycScalar::one()
        );
    }

    #[test]
    fn inverse_of_zeta() {
        let inv = CycScalar::zeta().inverse().unwrap();
        assert_eq!(inv, CycScalar::from_ints([0, 0, 0, -1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = CycScalar::one().checked_div(&CycScalar::zero()).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero));
        assert!(CycScalar::zero().inverse().is_none());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(CycScalar::i().conjugate(), -CycScalar::i());
        assert_eq!(CycScalar::sqrt2().conjugate(), CycScalar::sqrt2());
        let one_plus_zeta = CycScalar::from_ints([1, 1, 0, 0]);
        assert_eq!(one_plus_zeta.conjugate(), CycScalar::from_ints([1, 0, 0, -1]));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(parse_rational("-3/4").unwrap(), rational(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("2/4").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("3/1").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rational(6, -4)), "-3/2");
    }

    #[test]
    fn json_form() {
        let s = CycScalar::inv_sqrt2();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"["0","1/2","0","-1/2"]"#);
        let back: CycScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<CycScalar>(r#"["1","2","3"]"#).is_err());
    }

    #[test]
    fn display_splits_real_and_imaginary() {
        assert_eq!(CycScalar::inv_sqrt2().to_string(), "1/2√2");
        assert_eq!(CycScalar::i().to_string(), "i");
        assert_eq!(CycScalar::from(-1).to_string(), "-1");
        assert_eq!(CycScalar::zero().to_string(), "0");
        let z = CycScalar::from_ints([1, 0, -2, 0]);
        assert_eq!(z.to_string(), "1 - 2i");
    }
}
