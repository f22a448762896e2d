use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Base coefficient ring: the integers, the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseRing {
    Integers,
    Rationals,
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseRing {
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(BaseRing::Prime(p))
        } else {
            Err(Error::Invalid(format!("{p} is not prime")))
        }
    }

    /// Accepts `z`, `q` and `f<p>` / `p<p>` (case-insensitive).
    pub fn parse(s: &str) -> Result<Self> {
        let l = s.trim().to_ascii_lowercase();
        match l.as_str() {
            "z" | "int" | "integers" => Ok(BaseRing::Integers),
            "q" | "rat" | "rationals" => Ok(BaseRing::Rationals),
            _ => {
                let digits = l
                    .strip_prefix('f')
                    .or_else(|| l.strip_prefix("gf"))
                    .or_else(|| l.strip_prefix('p'))
                    .ok_or_else(|| Error::Parse(format!("unknown coefficient field '{s}'")))?;
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown coefficient field '{s}'")))?;
                BaseRing::prime(p).map_err(|_| Error::Parse(format!("unknown coefficient field '{s}': {p} is not prime")))
            }
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            BaseRing::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, BaseRing::Integers)
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            BaseRing::Integers => Scalar::Int(BigInt::from(n)),
            BaseRing::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            BaseRing::Prime(p) => Scalar::Mod { v: n.rem_euclid(p as i64) as u32, p },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            BaseRing::Integers => Scalar::Int(n.clone()),
            BaseRing::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            BaseRing::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod { v: r.to_u32().unwrap(), p }
            }
        }
    }

    pub fn symbol(self) -> String {
        match self {
            BaseRing::Integers => "Z".into(),
            BaseRing::Rationals => "Q".into(),
            BaseRing::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

/// An element of a base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { v: u32, p: u32 },
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {} vs {}", a.base(), b.base())
}

fn inv_mod(v: u32, p: u32) -> u32 {
    // p is prime, so v^(p-2) is the inverse
    let mut base = v as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

impl Scalar {
    pub fn base(&self) -> BaseRing {
        match self {
            Scalar::Int(_) => BaseRing::Integers,
            Scalar::Rat(_) => BaseRing::Rationals,
            Scalar::Mod { p, .. } => BaseRing::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_one(),
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Int(n) => n.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            Scalar::Int(n) => Scalar::Int(n.clone()),
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { v, p } => Scalar::Mod { v: inv_mod(*v, *p), p: *p },
        })
    }

    /// Exact quotient, if it exists in the base ring.
    pub fn div_exact(&self, other: &Scalar) -> Option<Scalar> {
        if other.is_zero() {
            return None;
        }
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Scalar::Int(q))
            }
            _ => Some(self * &other.inv()?),
        }
    }

    /// Euclidean division; for integers the remainder lies in `[0, |b|)`.
    pub fn div_rem(&self, other: &Scalar) -> Result<(Scalar, Scalar)> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let r = a.mod_floor(&b.abs());
                let q = (a - &r) / b;
                Ok((Scalar::Int(q), Scalar::Int(r)))
            }
            _ => Ok((self.div_exact(other).unwrap(), self.base().zero())),
        }
    }

    /// Euclidean norm: absolute value over the integers, 0/1 over fields.
    pub fn norm(&self) -> BigUint {
        match self {
            Scalar::Int(n) => n.abs().to_biguint().unwrap(),
            _ => {
                if self.is_zero() {
                    BigUint::zero()
                } else {
                    BigUint::one()
                }
            }
        }
    }

    /// A unit `u` with `u * self` in normal form (positive, or one).
    pub fn normalizing_unit(&self) -> Scalar {
        match self {
            Scalar::Int(n) if n.is_negative() => Scalar::Int(BigInt::from(-1)),
            _ if self.is_zero() => self.base().one(),
            Scalar::Int(_) => self.base().one(),
            _ => self.inv().unwrap(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.base().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(n) => Some(n.clone()),
            Scalar::Rat(q) => q.is_integer().then(|| q.to_integer()),
            Scalar::Mod { v, .. } => Some(BigInt::from(*v)),
        }
    }

    /// Image under the canonical map into another base ring, when defined.
    pub fn convert(&self, target: BaseRing) -> Result<Scalar> {
        match (self, target) {
            (Scalar::Rat(_), BaseRing::Rationals) => Ok(self.clone()),
            (Scalar::Rat(q), BaseRing::Prime(p)) => {
                let den = target.from_bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let _ = p;
                Ok(&target.from_bigint(q.numer()) * &den.inv().unwrap())
            }
            (Scalar::Rat(q), BaseRing::Integers) => {
                if q.is_integer() {
                    Ok(Scalar::Int(q.to_integer()))
                } else {
                    Err(Error::Invalid(format!("{q} is not an integer")))
                }
            }
            (Scalar::Mod { p, .. }, t) if t != BaseRing::Prime(*p) => Err(Error::Invalid(format!(
                "no ring map F{p} -> {t}"
            ))),
            _ => Ok(target.from_bigint(&self.to_bigint().unwrap())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) if a.is_integer() && b.is_integer() => {
                Scalar::Rat(BigRational::from_integer(a.numer() + b.numer()))
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) if a.is_integer() && b.is_integer() => {
                Scalar::Rat(BigRational::from_integer(a.numer() * b.numer()))
            }
            (Scalar::Rat(a), Scalar::Rat(b)) if a.is_one() => Scalar::Rat(b.clone()),
            (Scalar::Rat(a), Scalar::Rat(b)) if b.is_one() => Scalar::Rat(a.clone()),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: (p - v) % p, p: *p },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
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
    fn parse_fields() {
        assert_eq!(BaseRing::parse("F2").unwrap(), BaseRing::Prime(2));
        assert_eq!(BaseRing::parse("q").unwrap(), BaseRing::Rationals);
        assert_eq!(BaseRing::parse("Z").unwrap(), BaseRing::Integers);
        assert!(BaseRing::parse("f4").is_err());
        assert!(BaseRing::parse("x").is_err());
    }

    #[test]
    fn integer_division() {
        let z = BaseRing::Integers;
        let (q, r) = z.from_i64(-7).div_rem(&z.from_i64(3)).unwrap();
        assert_eq!((q, r), (z.from_i64(-3), z.from_i64(2)));
        let (q, r) = z.from_i64(7).div_rem(&z.from_i64(-3)).unwrap();
        assert_eq!((q, r), (z.from_i64(-2), z.from_i64(1)));
        assert!(z.from_i64(7).div_exact(&z.from_i64(2)).is_none());
    }

    #[test]
    fn prime_field_inverse() {
        let f = BaseRing::Prime(7);
        for n in 1..7 {
            let x = f.from_i64(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn rational_to_prime() {
        let q = Scalar::Rat(BigRational::new(1.into(), 2.into()));
        assert_eq!(q.convert(BaseRing::Prime(3)).unwrap(), BaseRing::Prime(3).from_i64(2));
        assert!(q.convert(BaseRing::Prime(2)).is_err());
        assert_eq!(q.convert(BaseRing::Rationals).unwrap(), q);
    }
}
