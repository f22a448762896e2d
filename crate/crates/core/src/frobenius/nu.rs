use super::involution::{Involution, InvolutionKind};
use super::tensor::{bit, TensorVector};
use super::theory::{Theory, TheoryKind};
use crate::coeff::Poly;
use crate::{Error, Result};

/// The involution whose difference quotient defines the theory's ν operator,
/// and the element divided by.
pub fn nu_data(th: &Theory) -> Result<(InvolutionKind, Poly)> {
    let r = &th.ring;
    match th.kind {
        TheoryKind::U2 | TheoryKind::U1 => Ok((InvolutionKind::SigmaHat, th.h.clone())),
        TheoryKind::U1xU1 => Ok((InvolutionKind::SigmaAlpha, &r.var("a2") - &r.var("a1"))),
        TheoryKind::SU2Sqrt => {
            if th.base().characteristic() == 2 {
                return Err(Error::Unsupported("the SU2_sqrt ν operator needs characteristic ≠ 2".into()));
            }
            Ok((InvolutionKind::SigmaSqrtT, r.var("sqrt_t").scale(&th.base().from_i64(2))))
        }
        TheoryKind::SU2 | TheoryKind::Plain => {
            Err(Error::Unsupported(format!("no ν operator on the {} theory", th.kind)))
        }
    }
}

/// `(id - σ)(v) / divisor`, with exact division; for U2/U1 this is `ν̂`, for
/// U1xU1 it is `ν_α`, and for SU2_sqrt the quotient by `2 sqrt_t`.
pub fn nu_hat(v: &TensorVector, th: &Theory) -> Result<TensorVector> {
    let (kind, div) = nu_data(th)?;
    let inv = Involution::new(kind, th)?;
    nu_with(v, &inv, &div, th)
}

fn nu_with(v: &TensorVector, inv: &Involution, div: &Poly, th: &Theory) -> Result<TensorVector> {
    let diff = v.try_sub(&inv.apply(v)?)?;
    diff.try_map_coeffs(|c| th.ring.div_exact(c, div))
}

/// Scalar version of [`nu_hat`] on the ground ring.
pub fn nu_hat_scalar(r: &Poly, th: &Theory) -> Result<Poly> {
    Ok(nu_hat(&TensorVector::scalar(th, r.clone())?, th)?.as_scalar())
}

fn require_char2(th: &Theory) -> Result<()> {
    if th.base().characteristic() == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported("ν_k is only defined in characteristic 2".into()))
    }
}

/// Sum over `k`-subsets of `X` factors, each replaced by `1`.
pub fn nu_k(v: &TensorVector, k: usize, th: &Theory) -> Result<TensorVector> {
    th.check_key(v.key)?;
    require_char2(th)?;
    let mut out = v.with_len(v.len);
    for (l, c) in v.terms() {
        let xs: Vec<usize> = (0..v.len).filter(|i| bit(*l, *i)).collect();
        if k > xs.len() {
            continue;
        }
        for_each_subset(&xs, k, &mut |sub| {
            let mask: u64 = sub.iter().map(|i| 1u64 << i).sum();
            out.add_term(l & !mask, c.clone());
        });
    }
    Ok(out)
}

fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), f)
}

/// `Σ_k h^{k-1} ν_k`, in characteristic 2 over the U1 theory.
pub fn nu_bar(v: &TensorVector, th: &Theory) -> Result<TensorVector> {
    require_char2(th)?;
    if th.kind != TheoryKind::U1 {
        return Err(Error::Unsupported("ν̄ is defined on the U1 theory".into()));
    }
    let mut out = v.with_len(v.len);
    let mut hp = th.ring.one();
    for k in 1..=v.len {
        out = out.try_add(&nu_k(v, k, th)?.scale(&hp))?;
        hp = &hp * &th.h;
    }
    Ok(out)
}
