use std::fmt;

use serde::{Deserialize, Serialize};

use super::tensor::{bit, TensorVector};
use super::theory::{Theory, TheoryKind};
use crate::coeff::Poly;
use crate::{Error, Result};

/// The involutions acting on a theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvolutionKind {
    /// Linear, `X -> h - X`.
    Sigma,
    /// Semilinear: `r -> (-1)^{deg r / 2} r` on scalars, `X -> X - h`.
    SigmaHat,
    /// Swaps `a1` and `a2`, fixes `X`.
    SigmaAlpha,
    /// `sqrt_t -> -sqrt_t`, fixes `X`.
    SigmaSqrtT,
}

impl InvolutionKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sigma" => Ok(InvolutionKind::Sigma),
            "sigma_hat" | "hat" | "sigmahat" => Ok(InvolutionKind::SigmaHat),
            "sigma_alpha" | "alpha" => Ok(InvolutionKind::SigmaAlpha),
            "sigma_sqrt_t" | "sqrt" => Ok(InvolutionKind::SigmaSqrtT),
            _ => Err(Error::Parse(format!("unknown involution '{s}'"))),
        }
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvolutionKind::Sigma => "sigma",
            InvolutionKind::SigmaHat => "sigma_hat",
            InvolutionKind::SigmaAlpha => "sigma_alpha",
            InvolutionKind::SigmaSqrtT => "sigma_sqrt_t",
        };
        f.write_str(s)
    }
}

/// A ring automorphism of the ground ring (given on variables) together
/// with the image `x0 + x1 X` of `X`, extended factor-wise to tensors.
#[derive(Clone, Debug)]
pub struct Involution {
    pub kind: InvolutionKind,
    pub theory: Theory,
    var_images: Vec<Poly>,
    x_image: (Poly, Poly),
}

impl Involution {
    pub fn new(kind: InvolutionKind, th: &Theory) -> Result<Self> {
        let r = &th.ring;
        let identity: Vec<Poly> = (0..r.vars.len()).map(|i| Poly::var(r.base, i)).collect();
        let (var_images, x_image) = match kind {
            InvolutionKind::Sigma => (identity, (th.h.clone(), r.int(-1))),
            InvolutionKind::SigmaHat => {
                let imgs = r
                    .vars
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let p = Poly::var(r.base, i);
                        if (v.degree / 2) % 2 == 1 {
                            -&p
                        } else {
                            p
                        }
                    })
                    .collect();
                (imgs, (-&th.h, r.one()))
            }
            InvolutionKind::SigmaAlpha => {
                if th.kind != TheoryKind::U1xU1 {
                    return Err(Error::Unsupported(format!("{kind} needs the U1xU1 theory")));
                }
                (vec![r.var("a2"), r.var("a1")], (r.zero(), r.one()))
            }
            InvolutionKind::SigmaSqrtT => {
                if th.kind != TheoryKind::SU2Sqrt {
                    return Err(Error::Unsupported(format!("{kind} needs the SU2_sqrt theory")));
                }
                (vec![-&r.var("sqrt_t")], (r.zero(), r.one()))
            }
        };
        Ok(Involution { kind, theory: th.clone(), var_images, x_image })
    }

    /// The ground ring automorphism.
    pub fn apply_scalar(&self, p: &Poly) -> Poly {
        p.substitute(&self.var_images, self.theory.base()).expect("involution images cover all variables")
    }

    pub fn is_linear(&self) -> bool {
        self.var_images.iter().enumerate().all(|(i, p)| *p == Poly::var(self.theory.base(), i))
    }

    pub fn apply(&self, v: &TensorVector) -> Result<TensorVector> {
        self.theory.check_key(v.key)?;
        let mut out = v.with_len(v.len);
        let (x0, x1) = &self.x_image;
        for (l, c) in v.terms() {
            let mut acc: Vec<(u64, Poly)> = vec![(0, self.apply_scalar(c))];
            for i in 0..v.len {
                if !bit(*l, i) {
                    continue;
                }
                let mut next = Vec::with_capacity(acc.len() * 2);
                for (m, a) in &acc {
                    if !x0.is_zero() {
                        next.push((*m, a * x0));
                    }
                    if !x1.is_zero() {
                        next.push((*m | (1 << i), a * x1));
                    }
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

/// Applies the named involution.
pub fn involution(v: &TensorVector, kind: InvolutionKind, th: &Theory) -> Result<TensorVector> {
    Involution::new(kind, th)?.apply(v)
}
