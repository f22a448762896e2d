use serde::Serialize;

use super::{class_chain, divide_all, free_vector, is_basis, lee_cycle, lee_pair, require_field, require_knot, LeeLabeling};
use crate::coeff::{BaseRing, Homogeneity, Poly};
use crate::complex::{chain_endo, CubeComplex, EndoKind, Reduction};
use crate::diagram::LinkDiagram;
use crate::error::verify;
use crate::frobenius::{Theory, TheoryKind};
use crate::homology::{homology, Homology};
use crate::{Error, Result};

/// Both computations of the s-invariant of a knot over a field, with the
/// canonical generators of the free parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SInvariantReport {
    pub field: String,
    pub d_h: u32,
    pub writhe: i32,
    pub seifert_circles: usize,
    /// From `2 d_h + w - r + 1`.
    pub s: i32,
    /// Minus the average of the two free quantum gradings, unreduced.
    pub s_unreduced: i32,
    /// Minus the free quantum grading, reduced.
    pub s_reduced: i32,
    pub free_gradings: Vec<i32>,
    pub reduced_grading: i32,
    /// Free coordinates in unreduced homology of ζ = ([α] ± [β]) / h^{d+1}.
    pub zeta: Vec<String>,
    /// Free coordinates in unreduced homology of ζ̃ = [α] / h^d.
    pub zeta_tilde: Vec<String>,
    /// Free coordinates of ζ' = ([α] ∓ [β]) / h^d, when the characteristic is not 2.
    pub zeta_prime: Option<Vec<String>>,
}

fn u1(base: BaseRing) -> Result<Theory> {
    require_field(base)?;
    Theory::new(TheoryKind::U1, base)
}

fn valuation(h: &Homology, c: &CubeComplex, z: &crate::complex::ChainVector) -> Result<u32> {
    let coords = h.class_coordinates(c, z)?;
    h.divisibility(&coords).ok_or_else(|| Error::Verification("the Lee class is torsion".into()))
}

/// Largest `d` with `[α] = h^d [z]` modulo torsion in reduced homology.
pub fn h_divisibility(d: &LinkDiagram, base: BaseRing) -> Result<u32> {
    let th = u1(base)?;
    let red = CubeComplex::build(d, &th, Reduction::Lee)?;
    require_knot(&red)?;
    let h = homology(&red)?;
    valuation(&h, &red, &lee_cycle(&red, false)?)
}

fn degree_of(h: &Homology, v: &[Poly]) -> Option<i32> {
    let frees = h.module.summands.iter().filter(|s| s.is_free());
    let mut q = None;
    for (s, p) in frees.zip(v) {
        if let Homogeneity::Degree(dg) = h.module.ring.homogeneity(p) {
            q = Some(s.q + dg);
        }
    }
    q
}

pub fn s_invariant(d: &LinkDiagram, base: BaseRing) -> Result<SInvariantReport> {
    let th = u1(base)?;
    let full = CubeComplex::build(d, &th, Reduction::Unreduced)?;
    require_knot(&full)?;
    let red = CubeComplex::build(d, &th, Reduction::Lee)?;
    let (hu, hr) = (homology(&full)?, homology(&red)?);
    let ring = &th.ring;

    // reduced route
    let alpha_r = lee_cycle(&red, false)?;
    let dh = valuation(&hr, &red, &alpha_r)?;
    let rfree: Vec<_> = hr.module.summands.iter().filter(|s| s.is_free()).collect();
    let reduced_grading = match rfree.as_slice() {
        [s] if s.i == 0 => s.q,
        _ => return Err(Error::Verification(format!("reduced homology has free part {:?}", hr.module.free_part()))),
    };

    // unreduced route
    let free = hu.module.free_part();
    let free_gradings: Vec<i32> = free.iter().map(|(_, q)| *q).collect();
    let s_unreduced = match free.as_slice() {
        [(0, a), (0, b)] if (a - b).abs() == 2 => -(a + b) / 2,
        _ => return Err(Error::Verification(format!("unreduced homology has free part {free:?}"))),
    };

    let r = LeeLabeling::new(d)?.num_circles();
    let s = 2 * dh as i32 + d.writhe() - r as i32 + 1;
    verify(s == s_unreduced && s == -reduced_grading, || {
        format!("s from the formula ({s}), unreduced gradings ({s_unreduced}) and reduced grading ({}) disagree", -reduced_grading)
    })?;

    // canonical generators
    let (alpha, beta) = lee_pair(&full)?;
    verify(red.embed(&alpha_r, &full)? == alpha, || "reduced and unreduced Lee cycles differ".into())?;
    let va = free_vector(&hu, &hu.class_coordinates(&full, &alpha)?);
    let vb = free_vector(&hu, &hu.class_coordinates(&full, &beta)?);
    let hpow = |e: u32| th.h.pow(e, base);
    let sign = |e: u32| if e % 2 == 0 { ring.one() } else { -&ring.one() };
    let combine = |e: u32| -> Vec<Poly> { va.iter().zip(&vb).map(|(a, b)| a + &(&sign(e) * b)).collect() };
    let zeta = divide_all(ring, &combine(dh + 1), &hpow(dh + 1))?;
    let zeta_tilde = divide_all(ring, &va, &hpow(dh))?;
    verify(is_basis(ring, &[zeta.clone(), zeta_tilde.clone()]), || "ζ and ζ̃ do not generate the free part".into())?;
    verify(degree_of(&hu, &zeta) == Some(-s - 1) && degree_of(&hu, &zeta_tilde) == Some(-s + 1), || {
        "ζ and ζ̃ are not in gradings -s - 1 and -s + 1".into()
    })?;
    // ζ̃ agrees with the reduced generator pushed into unreduced homology
    let zr = free_vector(&hr, &hr.class_coordinates(&red, &alpha_r)?);
    let zr = divide_all(ring, &zr, &hpow(dh))?;
    let pushed = red.embed(&class_chain(&hr, 0, &zr), &full)?;
    verify(free_vector(&hu, &hu.class_coordinates(&full, &pushed)?) == zeta_tilde, || {
        "ζ̃ from reduced homology differs from [α] / h^d".into()
    })?;
    // σ̂ fixes ζ modulo torsion
    let sigma = chain_endo(&full, EndoKind::SigmaHat)?;
    let zc = class_chain(&hu, 0, &zeta);
    verify(free_vector(&hu, &hu.class_coordinates(&full, &sigma.apply(&zc)?)?) == zeta, || "σ̂ does not fix ζ".into())?;
    let zeta_prime = if base.characteristic() != 2 {
        let zp = divide_all(ring, &combine(dh), &hpow(dh))?;
        let u = chain_endo(&full, EndoKind::U)?;
        verify(free_vector(&hu, &hu.class_coordinates(&full, &u.apply(&zc)?)?) == zp, || "u ζ differs from ζ'".into())?;
        Some(zp)
    } else {
        None
    };
    let show = |v: &[Poly]| v.iter().map(|p| th.display(p)).collect::<Vec<_>>();
    Ok(SInvariantReport {
        field: base.symbol(),
        d_h: dh,
        writhe: d.writhe(),
        seifert_circles: r,
        s,
        s_unreduced,
        s_reduced: -reduced_grading,
        free_gradings,
        reduced_grading,
        zeta: show(&zeta),
        zeta_tilde: show(&zeta_tilde),
        zeta_prime: zeta_prime.as_deref().map(show),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";

    #[test]
    fn trefoil_and_mirror() {
        let t = parse_pd(TREFOIL).unwrap();
        for b in [BaseRing::Prime(2), BaseRing::Prime(3), BaseRing::Rationals] {
            let r = s_invariant(&t, b).unwrap();
            assert_eq!((r.s, r.d_h), (-2, 1), "{b}");
            let m = s_invariant(&t.mirror(), b).unwrap();
            assert_eq!((m.s, m.d_h), (2, 0), "{b}");
        }
    }

    #[test]
    fn unknot_and_figure_eight() {
        let u = s_invariant(&LinkDiagram::unknot(), BaseRing::Rationals).unwrap();
        assert_eq!((u.s, u.d_h, u.free_gradings.clone()), (0, 0, vec![-1, 1]));
        let f8 = parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap();
        assert_eq!(s_invariant(&f8, BaseRing::Rationals).unwrap().s, 0);
    }

    #[test]
    fn links_and_rings_refused() {
        let hopf = parse_pd("[[2,4,1,3],[4,2,3,1]]").unwrap();
        assert!(s_invariant(&hopf, BaseRing::Rationals).is_err());
        assert!(h_divisibility(&LinkDiagram::unknot(), BaseRing::Integers).is_err());
    }
}
