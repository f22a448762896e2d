use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::scalar::{BaseRing, Scalar};
use crate::{Error, Result};

/// Exponent vector with trailing zeros trimmed, ordered lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 2]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(i: usize) -> Self {
        Self::from_exponents(&{
            let mut v = vec![0; i + 1];
            v[i] = 1;
            v
        })
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        let mut v: SmallVec<[u32; 2]> = e.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn num_vars_used(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        let n = self.0.len().max(other.0.len());
        // both factors are trimmed, so the sum is too
        Monomial((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.0.len()).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let v: Vec<u32> = (0..other.0.len()).map(|i| other.exp(i) - self.exp(i)).collect();
        Monomial::from_exponents(&v)
    }

    pub fn degree(&self, degrees: &[i32]) -> i32 {
        self.0.iter().enumerate().map(|(i, e)| *e as i32 * degrees[i]).sum()
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Monomial::one())
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_i64(base: BaseRing, n: i64) -> Self {
        Self::constant(base.from_i64(n))
    }

    pub fn one(base: BaseRing) -> Self {
        Self::from_i64(base, 1)
    }

    pub fn var(base: BaseRing, i: usize) -> Self {
        Self::monomial(base.one(), Monomial::var(i))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = &*e + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Base ring of the coefficients, `None` for the zero polynomial.
    pub fn base(&self) -> Option<BaseRing> {
        self.terms.values().next().map(|c| c.base())
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.get(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The single term, if the polynomial is a nonzero monomial.
    pub fn as_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32, base: BaseRing) -> Poly {
        let mut acc = Poly::one(base);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn max_var_count(&self) -> usize {
        self.terms.keys().map(|m| m.num_vars_used()).max().unwrap_or(0)
    }

    /// Ring homomorphism given by `x_i -> images[i]`, with coefficients
    /// mapped into `target`.
    pub fn substitute(&self, images: &[Poly], target: BaseRing) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.convert(target)?);
            for (i, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let img = images.get(i).ok_or_else(|| {
                    Error::Invalid(format!("substitution misses variable {i}"))
                })?;
                t = &t * &img.pow(*e, target);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn convert(&self, target: BaseRing) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.convert(target)?);
        }
        Ok(out)
    }

    /// Exact division, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        if divisor.terms.len() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                terms.insert(lm.quotient_of(m), c.div_exact(lc)?);
            }
            return Some(Poly { terms });
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.div_exact(lc)?;
            for (k, a) in &divisor.terms {
                rem.add_term(k.mul(&qm), -&(a * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut mon = String::new();
            for (i, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let n = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                if *e == 1 {
                    mon.push_str(&n);
                } else {
                    mon.push_str(&format!("{n}^{e}"));
                }
            }
            let cs = c.to_string();
            let neg = cs.starts_with('-');
            let abs = cs.trim_start_matches('-');
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mon.is_empty() {
                s.push_str(abs);
            } else if abs == "1" {
                s.push_str(&mon);
            } else {
                s.push_str(&format!("{abs}{mon}"));
            }
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.leading().unwrap();
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.leading().unwrap();
            return rhs.mul_term(m, c);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// A polynomial variable with its (positive, even) quantum degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: i32,
}

/// Outcome of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(i32),
    Mixed,
}

/// Polynomial ring over a base ring in finitely many graded variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundRing {
    pub base: BaseRing,
    pub vars: Vec<Variable>,
}

impl GroundRing {
    pub fn new(base: BaseRing, vars: &[(&str, i32)]) -> Result<Self> {
        for (n, d) in vars {
            if *d <= 0 || d % 2 != 0 {
                return Err(Error::Invalid(format!(
                    "variable {n} must have positive even degree, got {d}"
                )));
            }
        }
        Ok(GroundRing {
            base,
            vars: vars.iter().map(|(n, d)| Variable { name: n.to_string(), degree: *d }).collect(),
        })
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.base)
    }

    pub fn int(&self, n: i64) -> Poly {
        Poly::from_i64(self.base, n)
    }

    pub fn var(&self, name: &str) -> Poly {
        let i = self
            .vars
            .iter()
            .position(|v| v.name == name)
            .unwrap_or_else(|| panic!("no variable {name} in {self}"));
        Poly::var(self.base, i)
    }

    /// Rejects polynomials using foreign variables or coefficients.
    pub fn check(&self, p: &Poly) -> Result<()> {
        if p.max_var_count() > self.vars.len() {
            return Err(Error::TheoryMismatch(format!("polynomial uses variables outside {self}")));
        }
        if let Some(b) = p.base() {
            if b != self.base {
                return Err(Error::TheoryMismatch(format!("coefficients in {b}, ring is {self}")));
            }
        }
        Ok(())
    }

    pub fn homogeneity(&self, p: &Poly) -> Homogeneity {
        let degs = self.degrees();
        let mut out = Homogeneity::Zero;
        for (m, _) in p.terms() {
            let d = m.degree(&degs);
            out = match out {
                Homogeneity::Zero => Homogeneity::Degree(d),
                Homogeneity::Degree(e) if e == d => out,
                _ => return Homogeneity::Mixed,
            };
        }
        out
    }

    pub fn is_euclidean(&self) -> bool {
        match self.base {
            BaseRing::Integers => self.vars.is_empty(),
            _ => self.vars.len() <= 1,
        }
    }

    fn require_euclidean(&self) -> Result<()> {
        if self.is_euclidean() {
            Ok(())
        } else {
            Err(Error::NonEuclidean(self.to_string()))
        }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.check(a)?;
        self.check(b)?;
        Ok(a + b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.check(a)?;
        self.check(b)?;
        Ok(a * b)
    }

    /// Univariate degree, or `None` for zero. Requires a Euclidean ring.
    fn udeg(p: &Poly) -> Option<u32> {
        p.leading().map(|(m, _)| m.exp(0))
    }

    /// Euclidean norm: |n| over the integers, degree + 1 over `F[x]`.
    pub fn norm(&self, p: &Poly) -> Result<num_bigint::BigUint> {
        self.require_euclidean()?;
        if self.vars.is_empty() {
            return Ok(p.constant_term().map(|c| c.norm()).unwrap_or_default());
        }
        Ok(Self::udeg(p).map(|d| (d as u64 + 1).into()).unwrap_or_default())
    }

    /// Division with remainder in a Euclidean ring.
    pub fn divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        self.require_euclidean()?;
        self.check(a)?;
        self.check(b)?;
        let (bm, bc) = b.leading().ok_or(Error::DivisionByZero)?;
        if self.vars.is_empty() {
            let ac = a.constant_term().cloned().unwrap_or_else(|| self.base.zero());
            let (q, r) = ac.div_rem(bc)?;
            return Ok((Poly::constant(q), Poly::constant(r)));
        }
        let inv = bc.inv().ok_or(Error::DivisionByZero)?;
        let bd = bm.exp(0);
        let mut rem = a.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let d = m.exp(0);
            if d < bd {
                break;
            }
            let qm = Monomial::from_exponents(&[d - bd]);
            let qc = c * &inv;
            rem = &rem - &b.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok((quot, rem))
    }

    /// Exact division in any of our rings; `NotDivisible` on failure.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.check(a)?;
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        a.div_exact(b).ok_or_else(|| {
            Error::NotDivisible(format!(
                "{} by {} in {self}",
                a.display_with(&self.names()),
                b.display_with(&self.names())
            ))
        })
    }

    /// A unit `u` making `u * p` normal (positive or monic).
    pub fn normalizing_unit(&self, p: &Poly) -> Poly {
        match p.leading() {
            None => self.one(),
            Some((_, c)) => Poly::constant(c.normalizing_unit()),
        }
    }

    pub fn is_unit(&self, p: &Poly) -> bool {
        p.is_constant() && p.constant_term().map(|c| c.is_unit()).unwrap_or(false)
    }

    /// Greatest common divisor, normalized. Requires a Euclidean ring.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = self.divmod(&x, &y)?;
            x = y;
            y = r;
        }
        Ok(&x * &self.normalizing_unit(&x))
    }

    pub fn display(&self, p: &Poly) -> String {
        p.display_with(&self.names())
    }
}

impl fmt::Display for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}[{}]", self.base, self.names().join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qh() -> GroundRing {
        GroundRing::new(BaseRing::Rationals, &[("h", 2)]).unwrap()
    }

    #[test]
    fn monomial_order_is_lex() {
        let a = Monomial::from_exponents(&[1, 0]);
        let b = Monomial::from_exponents(&[0, 5]);
        assert!(a > b);
        assert!(Monomial::one() < b);
        assert_eq!(Monomial::from_exponents(&[2, 0, 0]).exponents(), &[2]);
    }

    #[test]
    fn univariate_divmod() {
        let r = qh();
        let h = r.var("h");
        let a = &(&h * &h) + &r.int(3);
        let b = &h + &r.int(1);
        let (q, rem) = r.divmod(&a, &b).unwrap();
        assert_eq!(&(&q * &b) + &rem, a);
        assert_eq!(rem, r.int(4));
    }

    #[test]
    fn multivariate_exact_division() {
        let r = GroundRing::new(BaseRing::Integers, &[("a1", 2), ("a2", 2)]).unwrap();
        let (a, b) = (r.var("a1"), r.var("a2"));
        let d = &b - &a;
        let p = &(&(&a * &a) * &b) - &(&a * &(&b * &b));
        let q = r.div_exact(&p, &d).unwrap();
        assert_eq!(&q * &d, p);
        assert!(r.div_exact(&(&a + &r.int(1)), &d).is_err());
    }

    #[test]
    fn euclidean_scope() {
        let r = GroundRing::new(BaseRing::Integers, &[("h", 2)]).unwrap();
        assert!(matches!(r.divmod(&r.one(), &r.one()), Err(Error::NonEuclidean(_))));
        assert!(GroundRing::new(BaseRing::Integers, &[("h", 3)]).is_err());
    }

    #[test]
    fn display() {
        let r = qh();
        let h = r.var("h");
        let p = &(&h * &h).scale(&BaseRing::Rationals.from_i64(-2)) + &r.int(1);
        assert_eq!(r.display(&p), "-2h^2 + 1");
    }

    #[test]
    fn gcd_monic() {
        let r = qh();
        let h = r.var("h");
        let a = (&h * &h).scale(&BaseRing::Rationals.from_i64(3));
        let b = (&h * &(&h + &r.int(1))).scale(&BaseRing::Rationals.from_i64(5));
        assert_eq!(r.gcd(&a, &b).unwrap(), h);
    }
}
