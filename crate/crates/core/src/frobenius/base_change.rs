use super::tensor::{bit, TensorVector};
use super::theory::{Theory, TheoryKind};
use crate::coeff::Poly;
use crate::{Error, Result};

/// Registered homomorphisms `(name, source, target)` between theories.
pub const ARROWS: &[(&str, TheoryKind, TheoryKind)] = &[
    ("t=0", TheoryKind::U2, TheoryKind::U1),
    ("t=0", TheoryKind::SU2, TheoryKind::Plain),
    ("h=0", TheoryKind::U2, TheoryKind::SU2),
    ("h=0", TheoryKind::U1, TheoryKind::Plain),
    ("h=t=0", TheoryKind::U2, TheoryKind::Plain),
    ("h=a1+a2,t=-a1a2", TheoryKind::U2, TheoryKind::U1xU1),
    ("a1=0,a2=h", TheoryKind::U1xU1, TheoryKind::U1),
    ("a1=-sqrt_t,a2=sqrt_t", TheoryKind::U1xU1, TheoryKind::SU2Sqrt),
    ("section", TheoryKind::U1, TheoryKind::U1xU1),
    ("h=2sqrt_t", TheoryKind::U1, TheoryKind::SU2Sqrt),
    ("t=sqrt_t^2", TheoryKind::SU2, TheoryKind::SU2Sqrt),
    ("sqrt_t=0", TheoryKind::SU2Sqrt, TheoryKind::Plain),
];

/// A ring map on the ground rings together with the image `x0 + x1 X` of `X`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub name: String,
    pub from: Theory,
    pub to: Theory,
    var_images: Vec<Poly>,
    x_image: (Poly, Poly),
}

impl BaseChange {
    pub fn new(name: &str, from: &Theory, to: &Theory) -> Result<Self> {
        if !ARROWS.iter().any(|(n, s, t)| *n == name && *s == from.kind && *t == to.kind) {
            return Err(Error::Invalid(format!("no registered arrow '{name}' from {} to {}", from.kind, to.kind)));
        }
        if from.base() != to.base() {
            return Err(Error::TheoryMismatch(format!("base rings {} and {} differ", from.base(), to.base())));
        }
        let r = &to.ring;
        let x = (r.zero(), r.one());
        let (var_images, x_image) = match (from.kind, to.kind) {
            (TheoryKind::U2, TheoryKind::U1) => (vec![r.var("h"), r.zero()], x),
            (TheoryKind::SU2, TheoryKind::Plain) => (vec![r.zero()], x),
            (TheoryKind::U2, TheoryKind::SU2) => (vec![r.zero(), r.var("t")], x),
            (TheoryKind::U1, TheoryKind::Plain) => (vec![r.zero()], x),
            (TheoryKind::U2, TheoryKind::Plain) => (vec![r.zero(), r.zero()], x),
            (TheoryKind::U2, TheoryKind::U1xU1) => (vec![to.h.clone(), to.t.clone()], x),
            (TheoryKind::U1xU1, TheoryKind::U1) => (vec![r.zero(), r.var("h")], x),
            (TheoryKind::U1xU1, TheoryKind::SU2Sqrt) => {
                let s = r.var("sqrt_t");
                (vec![-&s, s], x)
            }
            (TheoryKind::U1, TheoryKind::U1xU1) => {
                let (a1, a2) = (r.var("a1"), r.var("a2"));
                (vec![&a2 - &a1], (-&a1, r.one()))
            }
            (TheoryKind::U1, TheoryKind::SU2Sqrt) => {
                let s = r.var("sqrt_t");
                (vec![s.scale(&to.base().from_i64(2))], (s, r.one()))
            }
            (TheoryKind::SU2, TheoryKind::SU2Sqrt) => (vec![to.t.clone()], x),
            (TheoryKind::SU2Sqrt, TheoryKind::Plain) => (vec![r.zero()], x),
            _ => unreachable!("arrow table and images out of sync"),
        };
        Ok(BaseChange { name: name.into(), from: from.clone(), to: to.clone(), var_images, x_image })
    }

    pub fn apply_scalar(&self, p: &Poly) -> Result<Poly> {
        p.substitute(&self.var_images, self.to.base())
    }

    pub fn apply(&self, v: &TensorVector) -> Result<TensorVector> {
        self.from.check_key(v.key)?;
        let mut out = TensorVector::zero(&self.to, v.len);
        let (x0, x1) = &self.x_image;
        for (l, c) in v.terms() {
            let mut acc: Vec<(u64, Poly)> = vec![(0, self.apply_scalar(c)?)];
            for i in 0..v.len {
                if !bit(*l, i) {
                    continue;
                }
                let mut next = Vec::with_capacity(2 * acc.len());
                for (m, a) in &acc {
                    next.push((*m, a * x0));
                    next.push((*m | (1 << i), a * x1));
                }
                acc = next;
            }
            for (m, a) in acc {
                out.add_term(m, a);
            }
        }
        Ok(out)
    }
}

/// Image of `x` under the registered arrow `name` from `from` to `to`.
pub fn base_change(x: &TensorVector, from: &Theory, to: &Theory, name: &str) -> Result<TensorVector> {
    BaseChange::new(name, from, to)?.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::BaseRing;
    use crate::frobenius::tensor::multiply;

    fn th(k: TheoryKind) -> Theory {
        Theory::new(k, BaseRing::Integers).unwrap()
    }

    #[test]
    fn worked_images() {
        let (u2, u1) = (th(TheoryKind::U2), th(TheoryKind::U1));
        let xx = multiply(&TensorVector::x(&u2), &TensorVector::x(&u2), &u2).unwrap();
        let img = base_change(&xx, &u2, &u1, "t=0").unwrap();
        assert_eq!(img, TensorVector::x(&u1).scale(&u1.h));
        let ua = th(TheoryKind::U1xU1);
        let s = base_change(&TensorVector::x(&u1), &u1, &ua, "section").unwrap();
        assert_eq!(s, TensorVector::element(&ua, -&ua.ring.var("a1"), ua.ring.one()).unwrap());
        let sq = th(TheoryKind::SU2Sqrt);
        let h = TensorVector::scalar(&u1, u1.h.clone()).unwrap();
        let img = base_change(&h, &u1, &sq, "h=2sqrt_t").unwrap();
        assert_eq!(img.as_scalar(), sq.ring.var("sqrt_t").scale(&BaseRing::Integers.from_i64(2)));
    }

    #[test]
    fn unregistered_arrow() {
        assert!(BaseChange::new("t=0", &th(TheoryKind::U1), &th(TheoryKind::U2)).is_err());
        assert!(BaseChange::new("bogus", &th(TheoryKind::U2), &th(TheoryKind::U1)).is_err());
    }
}
