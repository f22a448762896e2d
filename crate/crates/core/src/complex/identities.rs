use serde::Serialize;

use super::chain::ChainVector;
use super::cube::CubeComplex;
use super::map::{chain_endo, ChainMap, EndoKind};
use crate::coeff::Poly;
use crate::frobenius::TheoryKind;
use crate::{Error, Result};

/// One matrix identity checked on every generator of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixCheck {
    pub name: String,
    pub columns: usize,
    pub failure: Option<String>,
}

impl MatrixCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Builds an endomorphism; a failed chain-map check becomes a failed
/// identity, anything the theory does not support is skipped.
fn endo(c: &CubeComplex, kind: EndoKind, out: &mut Vec<MatrixCheck>) -> Result<Option<ChainMap>> {
    let name = match kind {
        EndoKind::WigdersonK => "f = d_X K + K d_1".to_string(),
        _ => format!("{kind} is a chain map"),
    };
    match chain_endo(c, kind) {
        Ok(m) => {
            out.push(MatrixCheck { name, columns: c.total_rank(), failure: None });
            Ok(Some(m))
        }
        Err(Error::Verification(msg)) => {
            out.push(MatrixCheck { name, columns: c.total_rank(), failure: Some(msg) });
            Ok(None)
        }
        Err(Error::Unsupported(_)) | Err(Error::Invalid(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Compares `lhs(x)` with `rhs(x)` for `x` running over generators times
/// `1` and each ring variable.
fn compare(
    c: &CubeComplex,
    name: &str,
    lhs: impl Fn(&ChainVector) -> Result<ChainVector>,
    rhs: impl Fn(&ChainVector) -> Result<ChainVector>,
) -> Result<MatrixCheck> {
    let ring = &c.theory().ring;
    let mut scalars = vec![ring.one()];
    scalars.extend((0..ring.vars.len()).map(|k| Poly::var(ring.base, k)));
    let mut columns = 0;
    for i in c.hom_degrees() {
        for k in 0..c.rank(i) {
            for s in &scalars {
                let x = ChainVector::basis(i, k, s.clone());
                if lhs(&x)? != rhs(&x)? {
                    let failure = Some(format!("fails at generator {k} of degree {i} times {}", ring.display(s)));
                    return Ok(MatrixCheck { name: name.into(), columns, failure });
                }
                columns += 1;
            }
        }
    }
    Ok(MatrixCheck { name: name.into(), columns, failure: None })
}

/// Every identity that applies to the complex's theory:
/// `d² = 0`; the standard endomorphisms are chain maps; `ν̂² = 0`,
/// `σ̂ν̂ = ν̂ = -ν̂σ̂`; `ν̂X̄ - Ȳν̂ = id = X̄ν̂ - ν̂Ȳ`; `u² = h²` (or `4t` over
/// `F[sqrt_t]`); and the Wigderson homotopy in characteristic 2.
pub fn matrix_identities(c: &CubeComplex) -> Result<Vec<MatrixCheck>> {
    let mut out = Vec::new();
    out.push(compare(c, "d² = 0", |x| Ok(c.d(&c.d(x))), |x| Ok(ChainVector::zero(x.degree + 2)))?);
    if c.is_reduced() || c.diagram().is_empty() {
        return Ok(out);
    }
    let th = c.theory();
    let sigma = endo(c, EndoKind::SigmaHat, &mut out)?;
    let nu = endo(c, EndoKind::NuHat, &mut out)?;
    if let Some(nu) = &nu {
        out.push(compare(c, "ν̂² = 0", |x| nu.apply(&nu.apply(x)?), |x| Ok(ChainVector::zero(x.degree)))?);
        if let (Some(s), TheoryKind::U2 | TheoryKind::U1) = (&sigma, th.kind) {
            out.push(compare(c, "σ̂ν̂ = ν̂", |x| s.apply(&nu.apply(x)?), |x| nu.apply(x))?);
            out.push(compare(c, "ν̂σ̂ = -ν̂", |x| nu.apply(&s.apply(x)?), |x| Ok(nu.apply(x)?.neg()))?);
        }
    }
    let xbar = endo(c, EndoKind::XBar, &mut out)?;
    let ybar = endo(c, EndoKind::YBar, &mut out)?;
    if let (Some(nu), Some(xb), Some(yb), TheoryKind::U2 | TheoryKind::U1) = (&nu, &xbar, &ybar, th.kind) {
        out.push(compare(c, "ν̂X̄ - Ȳν̂ = id", |x| Ok(nu.apply(&xb.apply(x)?)?.sub(&yb.apply(&nu.apply(x)?)?)), |x| Ok(x.clone()))?);
        out.push(compare(c, "X̄ν̂ - ν̂Ȳ = id", |x| Ok(xb.apply(&nu.apply(x)?)?.sub(&nu.apply(&yb.apply(x)?)?)), |x| Ok(x.clone()))?);
    }
    if let Some(u) = endo(c, EndoKind::U, &mut out)? {
        let square = match th.kind {
            TheoryKind::U1 => Some(("u² = h²", &th.h * &th.h)),
            TheoryKind::SU2Sqrt => Some(("u² = 4t", th.ring.var("sqrt_t").pow(2, th.base()).scale(&th.base().from_i64(4)))),
            _ => None,
        };
        if let Some((name, r)) = square {
            out.push(compare(c, name, |x| u.apply(&u.apply(x)?), |x| Ok(x.scale(&r)))?);
        }
    }
    endo(c, EndoKind::WigdersonK, &mut out)?;
    Ok(out)
}
