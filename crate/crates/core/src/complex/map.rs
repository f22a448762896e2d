use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::chain::ChainVector;
use super::cube::{CubeComplex, Generator};
use crate::coeff::{Poly, SparseMatrix};
use crate::frobenius::{bit, insert_bit, mul_factor, nu_data, nu_hat, remove_bit, Involution, InvolutionKind, TensorVector, TheoryKind};
use crate::lee::LeeLabeling;
use crate::{Error, Result};

/// How the stored matrices act on a chain.
#[derive(Clone, Debug)]
pub enum MapRule {
    /// `x -> M x`.
    Linear,
    /// `x -> M φ(x)`, with `φ` applied to the coefficients.
    Twisted(Involution),
    /// `x -> (x - M φ(x)) / divisor`, the difference quotient of a twisted map.
    Quotient { involution: Involution, divisor: Poly },
}

/// A map between cube complexes, stored by its matrices on generators.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub name: String,
    pub hom_shift: i32,
    pub q_shift: i32,
    blocks: BTreeMap<i32, SparseMatrix>,
    rule: MapRule,
}

/// The endomorphisms available on an unreduced complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoKind {
    SigmaHat,
    NuHat,
    XBar,
    YBar,
    X1Bar,
    X2Bar,
    U,
    WigdersonK,
}

impl EndoKind {
    pub const ALL: [EndoKind; 8] = [
        EndoKind::SigmaHat,
        EndoKind::NuHat,
        EndoKind::XBar,
        EndoKind::YBar,
        EndoKind::X1Bar,
        EndoKind::X2Bar,
        EndoKind::U,
        EndoKind::WigdersonK,
    ];
}

impl fmt::Display for EndoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EndoKind::SigmaHat => "sigma_hat",
            EndoKind::NuHat => "nu_hat",
            EndoKind::XBar => "xbar",
            EndoKind::YBar => "ybar",
            EndoKind::X1Bar => "x1bar",
            EndoKind::X2Bar => "x2bar",
            EndoKind::U => "u",
            EndoKind::WigdersonK => "wigderson_K",
        };
        f.write_str(s)
    }
}

impl ChainMap {
    /// Builds the map from its action on the vertex tensor of each generator
    /// of `src`; images are read in `tgt` at the same vertex.
    pub fn from_local(
        name: &str,
        src: &CubeComplex,
        tgt: &CubeComplex,
        q_shift: i32,
        rule: MapRule,
        f: impl Fn(&Generator, &TensorVector) -> Result<TensorVector> + Sync,
    ) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for i in src.hom_degrees() {
            let gens = src.generators(i);
            let cols: Vec<Vec<(usize, Poly)>> = gens
                .par_iter()
                .map(|g| {
                    let img = f(g, &src.generator_tensor(g))?;
                    let v = tgt.chain_from_tensor(g.vertex, &img)?;
                    Ok(v.terms().map(|(k, p)| (*k, p.clone())).collect())
                })
                .collect::<Result<_>>()?;
            let mut m = SparseMatrix::zero(tgt.rank(i), gens.len());
            m.columns = cols;
            blocks.insert(i, m);
        }
        Ok(ChainMap { name: name.into(), hom_shift: 0, q_shift, blocks, rule })
    }

    pub fn from_blocks(name: &str, hom_shift: i32, q_shift: i32, blocks: BTreeMap<i32, SparseMatrix>, rule: MapRule) -> Self {
        ChainMap { name: name.into(), hom_shift, q_shift, blocks, rule }
    }

    pub fn block(&self, i: i32) -> Option<&SparseMatrix> {
        self.blocks.get(&i)
    }

    pub fn rule(&self) -> &MapRule {
        &self.rule
    }

    fn apply_matrix(&self, x: &ChainVector) -> ChainVector {
        let mut out = ChainVector::zero(x.degree + self.hom_shift);
        if let Some(m) = self.blocks.get(&x.degree) {
            for (k, c) in x.terms() {
                for (i, a) in &m.columns[*k] {
                    out.add_term(*i, a * c);
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &ChainVector) -> Result<ChainVector> {
        match &self.rule {
            MapRule::Linear => Ok(self.apply_matrix(x)),
            MapRule::Twisted(inv) => Ok(self.apply_matrix(&x.map_coeffs(|c| inv.apply_scalar(c)))),
            MapRule::Quotient { involution, divisor } => {
                let tw = self.apply_matrix(&x.map_coeffs(|c| involution.apply_scalar(c)));
                let ring = &involution.theory.ring;
                x.sub(&tw).try_map_coeffs(|c| ring.div_exact(c, divisor))
            }
        }
    }

    /// Checks `d f = f d` on generators (and on their multiples by the ring
    /// variables when the map is not linear).
    pub fn verify_chain_map(&self, src: &CubeComplex, tgt: &CubeComplex) -> Result<()> {
        let ring = &src.theory().ring;
        let mut scalars = vec![ring.one()];
        if !matches!(self.rule, MapRule::Linear) {
            scalars.extend((0..ring.vars.len()).map(|k| Poly::var(ring.base, k)));
        }
        for i in src.hom_degrees() {
            for k in 0..src.rank(i) {
                for s in &scalars {
                    let x = ChainVector::basis(i, k, s.clone());
                    let a = tgt.d(&self.apply(&x)?);
                    let b = self.apply(&src.d(&x))?;
                    if a != b {
                        return Err(Error::Verification(format!(
                            "{} does not commute with d at generator {k} of degree {i}",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn require_unreduced(c: &CubeComplex) -> Result<()> {
    if c.is_reduced() {
        Err(Error::Invalid("endomorphisms act on the unreduced complex".into()))
    } else {
        Ok(())
    }
}

/// Multiplication of the basepoint factor by `a`.
fn basepoint_multiplication(c: &CubeComplex, name: &str, a: TensorVector) -> Result<ChainMap> {
    if c.diagram().is_empty() {
        return Err(Error::Invalid("the empty diagram has no basepoint".into()));
    }
    let th = c.theory().clone();
    ChainMap::from_local(name, c, c, 2, MapRule::Linear, |g, t| {
        mul_factor(t, c.basepoint_circle(g.vertex)?, &a, &th)
    })
}

fn roots_of(c: &CubeComplex) -> Result<(Poly, Poly)> {
    c.theory().roots().ok_or_else(|| Error::Unsupported(format!("the {} theory has no roots", c.theory().kind)))
}

/// The twisting involution and divisor of the theory's ν operator.
pub(crate) fn nu_rule(c: &CubeComplex) -> Result<(InvolutionKind, Poly)> {
    nu_data(c.theory())
}

/// Builds and verifies one of the standard endomorphisms.
pub fn chain_endo(c: &CubeComplex, kind: EndoKind) -> Result<ChainMap> {
    require_unreduced(c)?;
    let th = c.theory().clone();
    let name = kind.to_string();
    let map = match kind {
        EndoKind::SigmaHat => {
            let inv = Involution::new(InvolutionKind::SigmaHat, &th)?;
            ChainMap::from_local(&name, c, c, 0, MapRule::Twisted(inv.clone()), |_, t| inv.apply(t))?
        }
        EndoKind::NuHat => {
            let (k, divisor) = nu_rule(c)?;
            let inv = Involution::new(k, &th)?;
            let mut m = ChainMap::from_local(&name, c, c, 0, MapRule::Linear, |_, t| inv.apply(t))?;
            m.rule = MapRule::Quotient { involution: inv, divisor };
            m.q_shift = -2;
            m
        }
        EndoKind::XBar => basepoint_multiplication(c, &name, TensorVector::x(&th))?,
        EndoKind::YBar => basepoint_multiplication(c, &name, TensorVector::y(&th))?,
        EndoKind::X1Bar | EndoKind::X2Bar => {
            let (r1, r2) = roots_of(c)?;
            let r = if kind == EndoKind::X1Bar { r1 } else { r2 };
            let a = TensorVector::element(&th, -&r, th.ring.one())?;
            basepoint_multiplication(c, &name, a)?
        }
        EndoKind::U => {
            roots_of(c)?;
            let bp = c.diagram().basepoint_or_default()?;
            let on_y = LeeLabeling::new(c.diagram())?.label_of_arc(bp).expect("basepoint on a Seifert circle");
            let u = TensorVector::u(&th);
            basepoint_multiplication(c, &name, if on_y { u.neg() } else { u })?
        }
        EndoKind::WigdersonK => return wigderson_k(c),
    };
    map.verify_chain_map(c, c)?;
    Ok(map)
}

/// `K(1 ⊗ y) = X ⊗ ν̂(y)` and `K = 0` on `X ⊗ y`, over `F_2[h]`; verifies
/// `f = d_X K + K d_1` for the off-diagonal part `f` of `d`.
fn wigderson_k(c: &CubeComplex) -> Result<ChainMap> {
    let th = c.theory().clone();
    if th.kind != TheoryKind::U1 || th.base().characteristic() != 2 {
        return Err(Error::Unsupported("the Wigderson homotopy is defined for U1 in characteristic 2".into()));
    }
    if c.diagram().is_empty() {
        return Err(Error::Invalid("the empty diagram has no basepoint".into()));
    }
    let k = ChainMap::from_local("wigderson_K", c, c, 0, MapRule::Linear, |g, t| {
        let p = c.basepoint_circle(g.vertex)?;
        let mut out = TensorVector::zero(&th, t.len);
        for (l, a) in t.terms() {
            if bit(*l, p) {
                continue;
            }
            let y = TensorVector::basis(&th, t.len - 1, remove_bit(*l, p));
            for (m, b) in nu_hat(&y, &th)?.terms() {
                out.add_term(insert_bit(*m, p, true), a * b);
            }
        }
        Ok(out)
    })?;
    let split = |x: &ChainVector| -> Result<(ChainVector, ChainVector)> {
        let gens = c.generators(x.degree);
        let (mut one, mut xs) = (ChainVector::zero(x.degree), ChainVector::zero(x.degree));
        for (i, a) in x.terms() {
            let g = &gens[*i];
            if bit(g.labels, c.basepoint_circle(g.vertex)?) {
                xs.add_term(*i, a.clone());
            } else {
                one.add_term(*i, a.clone());
            }
        }
        Ok((one, xs))
    };
    for i in c.hom_degrees() {
        for (j, g) in c.generators(i).iter().enumerate() {
            if bit(g.labels, c.basepoint_circle(g.vertex)?) {
                continue;
            }
            let e = ChainVector::basis(i, j, th.ring.one());
            let (d1, f) = split(&c.d(&e))?;
            let rhs = c.d(&k.apply(&e)?).add(&k.apply(&d1)?);
            if f != rhs {
                return Err(Error::Verification(format!("homotopy equation fails at generator {j} of degree {i}")));
            }
        }
    }
    Ok(k)
}
