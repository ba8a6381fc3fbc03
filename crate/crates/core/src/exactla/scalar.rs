//! Exact field elements over ℚ or a prime field 𝔽_p with p odd.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Ground field of a computation. Characteristic 2 cannot be constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// The prime field 𝔽_p. Rejects p = 2, composites, and p ≥ 2³¹.
    pub fn prime(p: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedField("F2 (characteristic 2)".into()));
        }
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::UnsupportedField(format!("F{p}")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `Q` or `F<p>`, e.g. `F5`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix('F')
            .map(|rest| rest.trim_start_matches('<').trim_end_matches('>'))
            .ok_or_else(|| Error::UnsupportedField(t.to_string()))?;
        let p: u32 = digits.parse().map_err(|_| Error::UnsupportedField(t.to_string()))?;
        Field::prime(p)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, value: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(value.into())),
            Field::Prime(p) => Scalar::Modular { value: value.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    /// Builds `num/den`; fails when `den` vanishes in this field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::InvalidScalar(format!("{num}/{den}")));
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let modp = |x: &BigInt| -> u32 { x.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits") };
                let n = Scalar::Modular { value: modp(num), modulus: p };
                let d = Scalar::Modular { value: modp(den), modulus: p };
                let inv = d.inv().ok_or_else(|| Error::InvalidScalar(format!("{num}/{den} in F{p}")))?;
                Ok(&n * &inv)
            }
        }
    }

    /// Parses `k`, `-k` or `p/q` (q > 0) into this field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (t, None),
        };
        let parse_int = |s: &str| -> Result<BigInt> {
            let s = s.trim();
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        let n = parse_int(num)?;
        let d = match den {
            Some(d) => {
                let d = parse_int(d)?;
                if !d.is_positive() {
                    return Err(bad());
                }
                d
            }
            None => BigInt::one(),
        };
        self.from_ratio(&n, &d).map_err(|_| bad())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p as u64 {
        if (p as u64).is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// An exact field element. Rationals are always kept in lowest terms with a
/// positive denominator; residues lie in `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    /// `-1` if the value is "negative" for display purposes (rationals only).
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: ((*a as u64 + *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: ((*a as u64 * *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirds_sum_to_one() {
        let q = Field::Rational;
        let third = q.parse_scalar("1/3").unwrap();
        let s = &(&third + &third) + &third;
        assert!(s.is_one());
    }

    #[test]
    fn lowest_terms_and_sign() {
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("4/6").unwrap().to_string(), "2/3");
        assert_eq!(q.parse_scalar("-4/2").unwrap().to_string(), "-2");
        assert!(q.parse_scalar("1/-2").is_err());
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("x").is_err());
        assert!(q.parse_scalar("").is_err());
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(Field::prime(2).is_err());
        assert!(Field::parse("F2").is_err());
        assert!(Field::prime(9).is_err());
        assert_eq!(Field::parse("F5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(5).unwrap();
        let two = f.from_i64(2);
        assert_eq!((&two * &two.inv().unwrap()), f.one());
        assert_eq!(f.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(f.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(f.parse_scalar("1/5").is_err());
        assert_eq!(-f.from_i64(0), f.zero());
    }
}
