use super::{free_vector, is_basis, require_field};
use crate::coeff::BaseRing;
use crate::complex::{chain_endo, ChainVector, CubeComplex, EndoKind, Reduction};
use crate::diagram::LinkDiagram;
use crate::error::verify;
use crate::frobenius::{Theory, TheoryKind};
use crate::homology::homology;
use crate::{Error, Result};

/// One reduced generator `z` (in `X̲ C`) and its partner `ν̂(z)`, both as
/// chains of the unreduced complex.
#[derive(Clone, Debug)]
pub struct LinkBasisEntry {
    pub i: i32,
    /// Quantum degree of `z` in the unreduced complex.
    pub q: i32,
    pub z: ChainVector,
    pub nu_z: ChainVector,
}

pub struct LinkBasis {
    pub complex: CubeComplex,
    pub entries: Vec<LinkBasisEntry>,
}

/// The cycles `z_k, ν̂(z_k)` built from a basis of reduced homology modulo
/// torsion, verified to freely generate unreduced homology modulo torsion.
pub fn link_basis_via_nu(d: &LinkDiagram, base: BaseRing) -> Result<LinkBasis> {
    require_field(base)?;
    let th = Theory::new(TheoryKind::U1, base)?;
    let full = CubeComplex::build(d, &th, Reduction::Unreduced)?;
    let red = CubeComplex::build(d, &th, Reduction::Root(0))?;
    let hr = homology(&red)?;
    let frees: Vec<_> = hr.module.summands.iter().enumerate().filter(|(_, s)| s.is_free()).collect();
    for w in frees.windows(2) {
        if w[0].1.i == w[1].1.i {
            return Err(Error::Invalid(format!(
                "reduced homology has rank > 1 in homological degree {}",
                w[0].1.i
            )));
        }
    }
    let nu = chain_endo(&full, EndoKind::NuHat)?;
    let mut entries = Vec::new();
    for (k, s) in &frees {
        let z = red.embed(&hr.representatives[*k], &full)?;
        let nu_z = nu.apply(&z)?;
        entries.push(LinkBasisEntry { i: s.i, q: s.q + 1, z, nu_z });
    }
    let hu = homology(&full)?;
    let mut columns = Vec::new();
    for e in &entries {
        for x in [&e.z, &e.nu_z] {
            columns.push(free_vector(&hu, &hu.class_coordinates(&full, x)?));
        }
    }
    verify(is_basis(&th.ring, &columns), || "the cycles z, ν̂(z) do not freely generate homology modulo torsion".into())?;
    Ok(LinkBasis { complex: full, entries })
}
