use std::collections::BTreeMap;
use std::fmt;

use super::theory::{Theory, TheoryKey};
use crate::coeff::Poly;
use crate::{Error, Result};

/// Labels of a basis tensor: bit `i` set means factor `i` is `X`, else `1`.
pub type Labels = u64;

pub const MAX_FACTORS: usize = 63;

pub(crate) fn remove_bit(l: Labels, i: usize) -> Labels {
    let low = l & ((1u64 << i) - 1);
    let high = (l >> (i + 1)) << i;
    low | high
}

pub(crate) fn insert_bit(l: Labels, i: usize, b: bool) -> Labels {
    let low = l & ((1u64 << i) - 1);
    let high = (l >> i) << (i + 1);
    low | high | ((b as u64) << i)
}

pub(crate) fn bit(l: Labels, i: usize) -> bool {
    (l >> i) & 1 == 1
}

/// Element of `A^{⊗len}` over a fixed theory; `len = 1` is an algebra element
/// and `len = 0` a ground ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorVector {
    pub key: TheoryKey,
    pub len: usize,
    terms: BTreeMap<Labels, Poly>,
}

pub type AlgebraElement = TensorVector;

impl TensorVector {
    pub fn zero(th: &Theory, len: usize) -> Self {
        assert!(len <= MAX_FACTORS, "too many tensor factors");
        TensorVector { key: th.key(), len, terms: BTreeMap::new() }
    }

    pub fn basis(th: &Theory, len: usize, labels: Labels) -> Self {
        let mut v = Self::zero(th, len);
        v.add_term(labels, th.ring.one());
        v
    }

    /// Builds from per-factor labels written as a string of `1` and `X`.
    pub fn from_word(th: &Theory, word: &str) -> Result<Self> {
        let mut l = 0;
        for (i, ch) in word.chars().enumerate() {
            match ch {
                '1' => {}
                'X' | 'x' => l |= 1 << i,
                _ => return Err(Error::Parse(format!("bad tensor word '{word}'"))),
            }
        }
        Ok(Self::basis(th, word.chars().count(), l))
    }

    /// `c1 * 1 + cx * X`
    pub fn element(th: &Theory, c1: Poly, cx: Poly) -> Result<Self> {
        th.ring.check(&c1)?;
        th.ring.check(&cx)?;
        let mut v = Self::zero(th, 1);
        v.add_term(0, c1);
        v.add_term(1, cx);
        Ok(v)
    }

    pub fn scalar(th: &Theory, r: Poly) -> Result<Self> {
        th.ring.check(&r)?;
        let mut v = Self::zero(th, 0);
        v.add_term(0, r);
        Ok(v)
    }

    pub fn one(th: &Theory) -> Self {
        Self::basis(th, 1, 0)
    }

    pub fn x(th: &Theory) -> Self {
        Self::basis(th, 1, 1)
    }

    /// `Y = X - h`
    pub fn y(th: &Theory) -> Self {
        Self::element(th, -&th.h, th.ring.one()).unwrap()
    }

    /// `U = 2X - h`
    pub fn u(th: &Theory) -> Self {
        Self::element(th, -&th.h, th.ring.int(2)).unwrap()
    }

    pub fn add_term(&mut self, l: Labels, c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(l).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Labels, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, l: Labels) -> Poly {
        self.terms.get(&l).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients `(c1, cx)` of an algebra element.
    pub fn components(&self) -> (Poly, Poly) {
        assert_eq!(self.len, 1);
        (self.coeff(0), self.coeff(1))
    }

    /// The ground ring value of a zero-factor tensor.
    pub fn as_scalar(&self) -> Poly {
        assert_eq!(self.len, 0);
        self.coeff(0)
    }

    fn same_shape(&self, o: &TensorVector) -> Result<()> {
        if self.key != o.key {
            return Err(Error::TheoryMismatch(format!("{} vs {}", self.key, o.key)));
        }
        if self.len != o.len {
            return Err(Error::Invalid(format!("tensor lengths {} vs {}", self.len, o.len)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &TensorVector) -> Result<TensorVector> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(*l, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &TensorVector) -> Result<TensorVector> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> TensorVector {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, r: &Poly) -> TensorVector {
        self.map_coeffs(|c| c * r)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> TensorVector {
        let mut out = TensorVector { key: self.key, len: self.len, terms: BTreeMap::new() };
        for (l, c) in &self.terms {
            out.add_term(*l, f(c));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<TensorVector> {
        let mut out = TensorVector { key: self.key, len: self.len, terms: BTreeMap::new() };
        for (l, c) in &self.terms {
            out.add_term(*l, f(c)?);
        }
        Ok(out)
    }

    /// `self ⊗ other`
    pub fn tensor(&self, o: &TensorVector) -> Result<TensorVector> {
        if self.key != o.key {
            return Err(Error::TheoryMismatch(format!("{} vs {}", self.key, o.key)));
        }
        let len = self.len + o.len;
        if len > MAX_FACTORS {
            return Err(Error::Invalid("too many tensor factors".into()));
        }
        let mut out = TensorVector { key: self.key, len, terms: BTreeMap::new() };
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                out.add_term(a | (b << self.len), c * d);
            }
        }
        Ok(out)
    }

    pub(crate) fn with_len(&self, len: usize) -> TensorVector {
        TensorVector { key: self.key, len, terms: BTreeMap::new() }
    }

    pub fn render(&self, th: &Theory) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (l, c) in self.terms.iter().rev() {
            let word: Vec<&str> = (0..self.len).map(|i| if bit(*l, i) { "X" } else { "1" }).collect();
            let w = if word.is_empty() { "1".to_string() } else { word.join("⊗") };
            let cs = th.display(c);
            if cs == "1" {
                parts.push(w);
            } else if c.num_terms() > 1 {
                parts.push(format!("({cs}){w}"));
            } else {
                parts.push(format!("{cs}·{w}"));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

/// Multiplication `A ⊗ A -> A` on algebra elements.
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement, th: &Theory) -> Result<AlgebraElement> {
    th.check_key(a.key)?;
    th.check_key(b.key)?;
    if a.len != 1 || b.len != 1 {
        return Err(Error::Invalid("multiply expects algebra elements".into()));
    }
    merge(&a.tensor(b)?, 0, 1, th)
}

/// Comultiplication `A -> A ⊗ A`.
pub fn comultiply(a: &AlgebraElement, th: &Theory) -> Result<TensorVector> {
    th.check_key(a.key)?;
    if a.len != 1 {
        return Err(Error::Invalid("comultiply expects an algebra element".into()));
    }
    split(a, 0, th)
}

pub fn counit(a: &AlgebraElement, th: &Theory) -> Result<Poly> {
    th.check_key(a.key)?;
    if a.len != 1 {
        return Err(Error::Invalid("counit expects an algebra element".into()));
    }
    Ok(counit_at(a, 0, th)?.as_scalar())
}

pub fn unit(th: &Theory) -> AlgebraElement {
    TensorVector::one(th)
}

/// Multiplies factors `i < j`; the product sits at position `i`.
pub fn merge(v: &TensorVector, i: usize, j: usize, th: &Theory) -> Result<TensorVector> {
    th.check_key(v.key)?;
    if !(i < j && j < v.len) {
        return Err(Error::Invalid(format!("cannot merge factors {i},{j} of {}", v.len)));
    }
    let mut out = v.with_len(v.len - 1);
    for (l, c) in v.terms() {
        let rest = remove_bit(*l, j);
        for (b, k) in th.mul_basis(bit(*l, i), bit(*l, j)) {
            let nl = (rest & !(1 << i)) | ((b as u64) << i);
            out.add_term(nl, c * &k);
        }
    }
    Ok(out)
}

/// Comultiplies factor `i` into positions `i, i + 1`.
pub fn split(v: &TensorVector, i: usize, th: &Theory) -> Result<TensorVector> {
    th.check_key(v.key)?;
    if i >= v.len || v.len + 1 > MAX_FACTORS {
        return Err(Error::Invalid(format!("cannot split factor {i} of {}", v.len)));
    }
    let mut out = v.with_len(v.len + 1);
    for (l, c) in v.terms() {
        for ((a, b), k) in th.comul_basis(bit(*l, i)) {
            let base = (*l & !(1 << i)) | ((a as u64) << i);
            out.add_term(insert_bit(base, i + 1, b), c * &k);
        }
    }
    Ok(out)
}

/// Applies the counit to factor `i`.
pub fn counit_at(v: &TensorVector, i: usize, th: &Theory) -> Result<TensorVector> {
    th.check_key(v.key)?;
    if i >= v.len {
        return Err(Error::Invalid(format!("no factor {i} in tensor of length {}", v.len)));
    }
    let mut out = v.with_len(v.len - 1);
    for (l, c) in v.terms() {
        out.add_term(remove_bit(*l, i), c * &th.counit_basis(bit(*l, i)));
    }
    Ok(out)
}

/// Inserts the unit `1` as a new factor at position `i`.
pub fn unit_at(v: &TensorVector, i: usize, th: &Theory) -> Result<TensorVector> {
    th.check_key(v.key)?;
    if i > v.len || v.len + 1 > MAX_FACTORS {
        return Err(Error::Invalid(format!("cannot insert at {i}")));
    }
    let mut out = v.with_len(v.len + 1);
    for (l, c) in v.terms() {
        out.add_term(insert_bit(*l, i, false), c.clone());
    }
    Ok(out)
}

/// Multiplies factor `i` by the algebra element `a`.
pub fn mul_factor(v: &TensorVector, i: usize, a: &AlgebraElement, th: &Theory) -> Result<TensorVector> {
    th.check_key(v.key)?;
    th.check_key(a.key)?;
    if i >= v.len || a.len != 1 {
        return Err(Error::Invalid(format!("no factor {i} in tensor of length {}", v.len)));
    }
    let mut out = v.with_len(v.len);
    for (l, c) in v.terms() {
        for (al, ac) in a.terms() {
            for (b, k) in th.mul_basis(bit(*l, i), *al == 1) {
                let nl = (*l & !(1 << i)) | ((b as u64) << i);
                out.add_term(nl, &(c * ac) * &k);
            }
        }
    }
    Ok(out)
}

/// Bilinear pairing `β(x, y) = ε(xy)`.
pub fn pairing(x: &AlgebraElement, y: &AlgebraElement, th: &Theory) -> Result<Poly> {
    counit(&multiply(x, y, th)?, th)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::BaseRing;
    use crate::frobenius::TheoryKind;

    fn u2() -> Theory {
        Theory::new(TheoryKind::U2, BaseRing::Integers).unwrap()
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(remove_bit(0b1011, 1), 0b101);
        assert_eq!(insert_bit(0b101, 1, true), 0b1011);
        assert_eq!(insert_bit(0b11, 0, false), 0b110);
    }

    #[test]
    fn relation_and_named_elements() {
        let th = u2();
        let x = TensorVector::x(&th);
        let y = TensorVector::y(&th);
        // X Y = X^2 - hX = t
        let xy = multiply(&x, &y, &th).unwrap();
        assert_eq!(xy.components(), (th.t.clone(), th.ring.zero()));
        // U^2 = h^2 + 4t
        let u = TensorVector::u(&th);
        let uu = multiply(&u, &u, &th).unwrap();
        let want = &(&th.h * &th.h) + &th.t.scale(&BaseRing::Integers.from_i64(4));
        assert_eq!(uu.components(), (want, th.ring.zero()));
    }

    #[test]
    fn dual_bases() {
        let th = u2();
        let (one, x, y) = (TensorVector::one(&th), TensorVector::x(&th), TensorVector::y(&th));
        // {1, X} and {Y, 1} are dual under the counit pairing
        assert_eq!(pairing(&one, &y, &th).unwrap(), th.ring.one());
        assert_eq!(pairing(&one, &one, &th).unwrap(), th.ring.zero());
        assert_eq!(pairing(&x, &y, &th).unwrap(), th.ring.zero());
        assert_eq!(pairing(&x, &one, &th).unwrap(), th.ring.one());
    }

    #[test]
    fn counit_is_counital() {
        let th = u2();
        for a in [TensorVector::one(&th), TensorVector::x(&th)] {
            let d = comultiply(&a, &th).unwrap();
            assert_eq!(counit_at(&d, 0, &th).unwrap(), a);
            assert_eq!(counit_at(&d, 1, &th).unwrap(), a);
        }
    }

    #[test]
    fn mixing_theories_is_rejected() {
        let a = TensorVector::x(&u2());
        let b = TensorVector::x(&Theory::new(TheoryKind::U1, BaseRing::Integers).unwrap());
        assert!(matches!(a.try_add(&b), Err(Error::TheoryMismatch(_))));
        assert!(matches!(multiply(&a, &b, &u2()), Err(Error::TheoryMismatch(_))));
    }
}
