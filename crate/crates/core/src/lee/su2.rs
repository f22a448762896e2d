use serde::Serialize;

use super::{divide_all, free_vector, h_divisibility, is_basis, lee_pair};
use crate::coeff::{BaseRing, Monomial, Poly};
use crate::complex::{ChainVector, CubeComplex, Reduction};
use crate::diagram::LinkDiagram;
use crate::error::verify;
use crate::frobenius::{Theory, TheoryKind};
use crate::homology::homology;
use crate::{Error, Result};

/// Outcome of moving the Lee cycles from `F[sqrt_t]` down to `F[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Su2Report {
    pub field: String,
    /// Quantum degrees of `γ⁺ = α + β` and `γ⁻ = (α - β) / (2 sqrt_t)`.
    pub gamma_plus_q: i32,
    pub gamma_minus_q: i32,
    /// For knots: the h-divisibility and the gradings of `ζ_t`, `ζ'_t`.
    pub d_h: Option<u32>,
    pub zeta_t_q: Option<i32>,
    pub zeta_prime_t_q: Option<i32>,
}

/// `sqrt_t^{2k} -> t^k`; fails on odd powers.
fn descend(p: &Poly) -> Result<Poly> {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let e = m.exp(0);
        if e % 2 == 1 {
            return Err(Error::Verification("coefficient involves an odd power of sqrt_t".into()));
        }
        out.add_term(Monomial::from_exponents(&[e / 2]), c.clone());
    }
    Ok(out)
}

fn q_of(c: &CubeComplex, x: &ChainVector, name: &str) -> Result<i32> {
    c.q_degree(x).ok_or_else(|| Error::Verification(format!("{name} is not homogeneous")))
}

/// Builds `γ±` over `F[sqrt_t]`, checks they descend to cycles of the
/// `F[t]` complex in opposite quantum classes modulo 4, and for knots checks
/// that `ζ_t` and `ζ'_t` are well defined and generate homology modulo
/// torsion.
pub fn su2_transfer(d: &LinkDiagram, base: BaseRing) -> Result<Su2Report> {
    if base.characteristic() == 2 || !base.is_field() {
        return Err(Error::Unsupported("the SU(2) transfer needs a field of characteristic ≠ 2".into()));
    }
    let sq = Theory::new(TheoryKind::SU2Sqrt, base)?;
    let th = Theory::new(TheoryKind::SU2, base)?;
    let cs = CubeComplex::build(d, &sq, Reduction::Unreduced)?;
    let ct = CubeComplex::build(d, &th, Reduction::Unreduced)?;
    let (alpha, beta) = lee_pair(&cs)?;
    let two_s = sq.ring.var("sqrt_t").scale(&base.from_i64(2));
    let plus = alpha.add(&beta);
    let minus = alpha.sub(&beta).try_map_coeffs(|c| sq.ring.div_exact(c, &two_s))?;
    let plus = plus.try_map_coeffs(descend)?;
    let minus = minus.try_map_coeffs(descend)?;
    verify(ct.is_cycle(&plus) && ct.is_cycle(&minus), || "γ± are not cycles over F[t]".into())?;
    let (qp, qm) = (q_of(&ct, &plus, "γ⁺")?, q_of(&ct, &minus, "γ⁻")?);
    verify(qp.rem_euclid(4) % 2 == 1 && qm.rem_euclid(4) % 2 == 1 && (qp - qm).rem_euclid(4) == 2, || {
        format!("γ⁺ (q = {qp}) and γ⁻ (q = {qm}) are not in opposite odd classes modulo 4")
    })?;
    let mut report = Su2Report {
        field: base.symbol(),
        gamma_plus_q: qp,
        gamma_minus_q: qm,
        d_h: None,
        zeta_t_q: None,
        zeta_prime_t_q: None,
    };
    if d.num_components() != 1 {
        return Ok(report);
    }
    let dh = h_divisibility(d, base)?;
    let h = homology(&ct)?;
    let vp = free_vector(&h, &h.class_coordinates(&ct, &plus)?);
    let vm = free_vector(&h, &h.class_coordinates(&ct, &minus)?);
    let four_t = |e: u32| th.t.scale(&base.from_i64(4)).pow(e, base);
    // ζ_t and ζ'_t per the parity of d
    let ((z, qz), (zp, qzp)) = if dh % 2 == 0 {
        ((divide_all(&th.ring, &vm, &four_t(dh / 2))?, qm - 4 * (dh / 2) as i32), (divide_all(&th.ring, &vp, &four_t(dh / 2))?, qp - 4 * (dh / 2) as i32))
    } else {
        let (a, b) = ((dh + 1) / 2, (dh - 1) / 2);
        ((divide_all(&th.ring, &vp, &four_t(a))?, qp - 4 * a as i32), (divide_all(&th.ring, &vm, &four_t(b))?, qm - 4 * b as i32))
    };
    verify(is_basis(&th.ring, &[z, zp]), || "ζ_t and ζ'_t do not generate homology modulo torsion".into())?;
    verify(qzp == qz + 2, || format!("ζ_t (q = {qz}) and ζ'_t (q = {qzp}) are not two apart"))?;
    report.d_h = Some(dh);
    report.zeta_t_q = Some(qz);
    report.zeta_prime_t_q = Some(qzp);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::frobenius::TensorVector;
    use crate::lee::s_invariant;

    #[test]
    fn unknot_gammas() {
        let base = BaseRing::Rationals;
        let r = su2_transfer(&LinkDiagram::unknot(), base).unwrap();
        // γ⁺ = 2X in degree 1, γ⁻ = 1 in degree -1
        assert_eq!((r.gamma_plus_q, r.gamma_minus_q), (1, -1));
        let th = Theory::new(TheoryKind::SU2, base).unwrap();
        let c = CubeComplex::build(&LinkDiagram::unknot(), &th, Reduction::Unreduced).unwrap();
        assert_eq!(c.q_degree(&c.chain_from_tensor(0, &TensorVector::x(&th)).unwrap()), Some(1));
        assert_eq!(r.zeta_t_q, Some(-1));
    }

    #[test]
    fn trefoil() {
        let t = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap();
        for b in [BaseRing::Rationals, BaseRing::Prime(3)] {
            let r = su2_transfer(&t, b).unwrap();
            let s = s_invariant(&t, b).unwrap().s;
            assert_eq!(r.zeta_t_q, Some(-s - 1));
        }
        assert!(su2_transfer(&t, BaseRing::Prime(2)).is_err());
    }
}
