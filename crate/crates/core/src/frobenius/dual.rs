use std::collections::BTreeMap;

use super::involution::Involution;
use super::tensor::{bit, counit_at, merge, split, Labels, TensorVector};
use super::theory::{Theory, TheoryKey};
use crate::coeff::Poly;
use crate::{Error, Result};

/// A ground-ring-linear functional on `A^{⊗len}`, stored by its values on
/// the basis tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTensor {
    pub key: TheoryKey,
    pub len: usize,
    values: BTreeMap<Labels, Poly>,
}

/// Functional on `A`, with coordinates in the standard dual basis
/// `{𝔇(1), 𝔇(X)}`.
pub type DualElement = DualTensor;

impl DualTensor {
    pub fn zero(th: &Theory, len: usize) -> Self {
        DualTensor { key: th.key(), len, values: BTreeMap::new() }
    }

    pub fn from_values(th: &Theory, len: usize, vals: impl IntoIterator<Item = (Labels, Poly)>) -> Self {
        let mut f = Self::zero(th, len);
        for (l, v) in vals {
            f.set(l, v);
        }
        f
    }

    fn set(&mut self, l: Labels, v: Poly) {
        if v.is_zero() {
            self.values.remove(&l);
        } else {
            self.values.insert(l, v);
        }
    }

    pub fn value(&self, l: Labels) -> Poly {
        self.values.get(&l).cloned().unwrap_or_default()
    }

    /// Coordinates `(a, b)` of `a 𝔇(1) + b 𝔇(X)`.
    pub fn standard_coords(&self, th: &Theory) -> (Poly, Poly) {
        assert_eq!(self.len, 1);
        let (v1, vx) = (self.value(0), self.value(1));
        (&vx - &(&th.h * &v1), v1)
    }

    pub fn from_standard_coords(th: &Theory, a: Poly, b: Poly) -> Self {
        // 𝔇(1) takes values (0, 1), 𝔇(X) takes (1, h) on (1, X)
        let v1 = b.clone();
        let vx = &a + &(&b * &th.h);
        Self::from_values(th, 1, [(0, v1), (1, vx)])
    }

    pub fn evaluate(&self, x: &TensorVector, th: &Theory) -> Result<Poly> {
        th.check_key(self.key)?;
        th.check_key(x.key)?;
        if x.len != self.len {
            return Err(Error::Invalid("functional and tensor lengths differ".into()));
        }
        let mut acc = Poly::zero();
        for (l, c) in x.terms() {
            acc = &acc + &(c * &self.value(*l));
        }
        Ok(acc)
    }

    pub fn tensor(&self, o: &DualTensor) -> DualTensor {
        let mut out = DualTensor { key: self.key, len: self.len + o.len, values: BTreeMap::new() };
        for (a, f) in &self.values {
            for (b, g) in &o.values {
                out.set(a | (b << self.len), f * g);
            }
        }
        out
    }

    fn from_fn(th: &Theory, len: usize, f: impl Fn(&TensorVector) -> Result<Poly>) -> Result<DualTensor> {
        let mut out = DualTensor::zero(th, len);
        for l in 0..(1u64 << len) {
            out.set(l, f(&TensorVector::basis(th, len, l))?);
        }
        Ok(out)
    }
}

/// `𝔇(x) = β(x, -)`, extended factor-wise to tensors.
pub fn dualize(x: &TensorVector, th: &Theory) -> Result<DualTensor> {
    th.check_key(x.key)?;
    let mut out = DualTensor::zero(th, x.len);
    for target in 0..(1u64 << x.len) {
        let mut acc = Poly::zero();
        for (l, c) in x.terms() {
            let mut v = c.clone();
            for i in 0..x.len {
                // β(a, b) = ε(ab) on basis elements
                let prod = th.mul_basis(bit(*l, i), bit(target, i));
                let e = prod.iter().filter(|(b, _)| *b).map(|(_, k)| k.clone()).next().unwrap_or_default();
                v = &v * &e;
                if v.is_zero() {
                    break;
                }
            }
            acc = &acc + &v;
        }
        out.set(target, acc);
    }
    Ok(out)
}

/// `f -> φ ∘ f ∘ ψ` where `(φ, ψ)` are the scalar and algebra parts of the
/// involution; with σ̂ this is the dual involution σ̂_𝔇.
pub fn dual_involution(f: &DualTensor, inv: &Involution) -> Result<DualTensor> {
    let th = &inv.theory;
    th.check_key(f.key)?;
    DualTensor::from_fn(th, f.len, |e| Ok(inv.apply_scalar(&f.evaluate(&inv.apply(e)?, th)?)))
}

/// `Δ*: A* ⊗ A* -> A*`, `(F)(x) = F(Δx)`.
pub fn delta_star(f: &DualTensor, th: &Theory) -> Result<DualTensor> {
    expect_len(f, 2)?;
    DualTensor::from_fn(th, 1, |e| f.evaluate(&split(e, 0, th)?, th))
}

/// `ε*: R -> A*`, `r -> r ε`.
pub fn epsilon_star(r: &Poly, th: &Theory) -> DualTensor {
    DualTensor::from_values(th, 1, [(1, r.clone())])
}

/// `m*: A* -> A* ⊗ A*`, `f -> f ∘ m`.
pub fn m_star(f: &DualTensor, th: &Theory) -> Result<DualTensor> {
    expect_len(f, 1)?;
    DualTensor::from_fn(th, 2, |e| f.evaluate(&merge(e, 0, 1, th)?, th))
}

/// `ι*: A* -> R`, `f -> f(1)`.
pub fn iota_star(f: &DualTensor, th: &Theory) -> Result<Poly> {
    expect_len(f, 1)?;
    f.evaluate(&TensorVector::one(th), th)
}

fn expect_len(f: &DualTensor, n: usize) -> Result<()> {
    if f.len == n {
        Ok(())
    } else {
        Err(Error::Invalid(format!("expected a functional on {n} factors, got {}", f.len)))
    }
}

/// The counit as a functional, for checks.
pub fn counit_functional(th: &Theory) -> Result<DualTensor> {
    DualTensor::from_fn(th, 1, |e| Ok(counit_at(e, 0, th)?.as_scalar()))
}
