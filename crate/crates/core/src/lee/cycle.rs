use super::LeeLabeling;
use crate::coeff::Poly;
use crate::complex::{ChainVector, CubeComplex};
use crate::error::verify;
use crate::frobenius::{nu_data, Involution, TensorVector, TheoryKind};
use crate::{Error, Result};

/// The Lee cycle of the given orientation (`reversed = false`) or of the
/// reversed one, in `c`. For a reduced complex the cycle must lie in it.
pub fn lee_cycle(c: &CubeComplex, reversed: bool) -> Result<ChainVector> {
    let th = c.theory();
    if matches!(th.kind, TheoryKind::U2 | TheoryKind::SU2 | TheoryKind::Plain) {
        return Err(Error::Unsupported(format!(
            "Lee cycles need two distinct roots of X^2 - hX - t in the ground ring, which the {} theory lacks",
            th.kind
        )));
    }
    let d = c.diagram();
    if d.is_empty() {
        return Err(Error::Invalid("the empty diagram has no Lee cycle".into()));
    }
    let (r1, r2) = th.roots().expect("split theory");
    let lab = LeeLabeling::new(d)?;
    let lab = if reversed { lab.reversed() } else { lab };
    let v = lab.vertex;
    let res = c.resolution(v);
    let mut t = TensorVector::scalar(th, th.ring.one())?;
    for arcs in &res.circles {
        let second = lab.label_of_arc(arcs[0]).ok_or_else(|| {
            Error::Verification(format!("arc {} is on no Seifert circle", arcs[0]))
        })?;
        let root: &Poly = if second { &r2 } else { &r1 };
        t = t.tensor(&TensorVector::element(th, -root, th.ring.one())?)?;
    }
    let z = c.chain_from_tensor(v, &t)?;
    verify(c.is_cycle(&z), || {
        format!("the Lee labelling of {} is not a cycle; inspect the Seifert circles", d.to_pd())
    })?;
    Ok(z)
}

/// The pair `(α, β)` of Lee cycles in an unreduced complex, after checking
/// that the theory's involution carries `α` to `β`.
pub fn lee_pair(c: &CubeComplex) -> Result<(ChainVector, ChainVector)> {
    if c.is_reduced() {
        return Err(Error::Invalid("the Lee pair lives in the unreduced complex".into()));
    }
    let a = lee_cycle(c, false)?;
    let b = lee_cycle(c, true)?;
    let inv = Involution::new(nu_data(c.theory())?.0, c.theory())?;
    let mut image = ChainVector::zero(a.degree);
    for (v, t) in c.chain_to_tensors(&a) {
        image = image.add(&c.chain_from_tensor(v, &inv.apply(&t)?)?);
    }
    verify(image == b, || "the involution does not carry α to β".into())?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::BaseRing;
    use crate::complex::Reduction;
    use crate::diagram::{parse_pd, LinkDiagram};
    use crate::frobenius::Theory;

    #[test]
    fn cycles_and_involution() {
        let ds = [
            LinkDiagram::unknot(),
            parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap(),
            parse_pd("[[2,4,1,3],[4,2,3,1]]").unwrap(),
            parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap(),
        ];
        for d in &ds {
            for k in [TheoryKind::U1, TheoryKind::U1xU1, TheoryKind::SU2Sqrt] {
                let th = Theory::new(k, BaseRing::Rationals).unwrap();
                let c = CubeComplex::build(d, &th, Reduction::Unreduced).unwrap();
                let (a, _) = lee_pair(&c).unwrap();
                assert_eq!(a.degree, 0);
                // gr_q(α) = -w + r
                let r = LeeLabeling::new(d).unwrap().num_circles() as i32;
                assert_eq!(c.q_degree(&a), Some(r - d.writhe()));
                let red = CubeComplex::build(d, &th, Reduction::Lee).unwrap();
                assert!(lee_cycle(&red, false).is_ok());
                let opp = lee_cycle(&CubeComplex::build(d, &th, Reduction::Opposite).unwrap(), false);
                assert!(opp.is_err(), "{k} {} {:?}", d.to_pd(), opp);
            }
        }
    }

    #[test]
    fn unknot_cycle_is_a_root_factor() {
        let th = Theory::new(TheoryKind::U1, BaseRing::Integers).unwrap();
        let c = CubeComplex::build(&LinkDiagram::unknot(), &th, Reduction::Unreduced).unwrap();
        let a = lee_cycle(&c, false).unwrap();
        let x = c.chain_from_tensor(0, &TensorVector::x(&th)).unwrap();
        let y = c.chain_from_tensor(0, &TensorVector::y(&th)).unwrap();
        assert!(a == x || a == y);
    }

    #[test]
    fn refused_theories() {
        for k in [TheoryKind::U2, TheoryKind::SU2, TheoryKind::Plain] {
            let th = Theory::new(k, BaseRing::Integers).unwrap();
            let c = CubeComplex::build(&LinkDiagram::unknot(), &th, Reduction::Unreduced).unwrap();
            assert!(matches!(lee_cycle(&c, false), Err(Error::Unsupported(_))));
        }
    }
}
