//! Lee cycles and the invariants read off from them: h-divisibility, the
//! s-invariant, the ν-basis of links and the SU(2) transfer.

mod basis;
mod cycle;
mod invariants;
mod labeling;
mod su2;

pub use basis::{link_basis_via_nu, LinkBasis, LinkBasisEntry};
pub use cycle::{lee_cycle, lee_pair};
pub use invariants::{h_divisibility, s_invariant, SInvariantReport};
pub use labeling::LeeLabeling;
pub use su2::{su2_transfer, Su2Report};

use crate::coeff::{BaseRing, GroundRing, Poly};
use crate::complex::{ChainVector, CubeComplex};
use crate::homology::{ClassCoordinates, Homology};
use crate::{Error, Result};

fn require_field(base: BaseRing) -> Result<()> {
    if base.is_field() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("the Lee invariants are computed over a field, not {base}")))
    }
}

fn require_knot(c: &CubeComplex) -> Result<()> {
    match c.diagram().num_components() {
        1 => Ok(()),
        n => Err(Error::Unsupported(format!("a knot diagram is required, got {n} components"))),
    }
}

/// Free coordinates of a class as a dense vector over the free summands,
/// in the order of `h.module.summands`.
fn free_vector(h: &Homology, coords: &ClassCoordinates) -> Vec<Poly> {
    h.module
        .summands
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_free())
        .map(|(k, _)| coords.free_coeff(k))
        .collect()
}

/// A cycle whose class has the given free coordinates.
fn class_chain(h: &Homology, degree: i32, free: &[Poly]) -> ChainVector {
    let mut out = ChainVector::zero(degree);
    let frees = h.module.summands.iter().enumerate().filter(|(_, s)| s.is_free());
    for ((k, _), a) in frees.zip(free) {
        if !a.is_zero() && h.representatives[k].degree == degree {
            out = out.add(&h.representatives[k].scale(a));
        }
    }
    out
}

/// Determinant by cofactor expansion; the matrices here are tiny.
fn det(ring: &GroundRing, m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = &m[0][j] * &det(ring, &minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Whether the columns form a basis of the free module: the determinant is
/// a unit.
fn is_basis(ring: &GroundRing, columns: &[Vec<Poly>]) -> bool {
    let n = columns.len();
    if columns.iter().any(|c| c.len() != n) {
        return false;
    }
    let rows: Vec<Vec<Poly>> = (0..n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let d = det(ring, &rows);
    !d.is_zero() && ring.is_unit(&d)
}

fn divide_all(ring: &GroundRing, v: &[Poly], by: &Poly) -> Result<Vec<Poly>> {
    v.iter().map(|p| ring.div_exact(p, by)).collect()
}
