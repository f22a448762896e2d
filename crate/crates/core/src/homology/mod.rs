//! Bigraded homology of cube complexes, class coordinates, and the
//! acyclicity check for the ν operator.

mod acyclic;
mod module;
mod persistence;
mod snf_path;

use std::collections::BTreeMap;

pub use acyclic::{nu_acyclicity, AcyclicityReport};
pub use module::{GradedModule, Summand};

use crate::coeff::{BaseRing, Poly};
use crate::complex::{ChainVector, CubeComplex};
use crate::{Error, Result};
use persistence::{BasisCycle, CycleKind, Grading};

enum Path {
    Persistence { grading: Grading, bases: BTreeMap<i32, BTreeMap<usize, BasisCycle>>, summand_of: BTreeMap<(i32, usize), usize> },
    Snf { blocks: Vec<snf_path::Block>, raw: Vec<Summand> },
}

/// Homology of a complex together with a representative cycle per summand.
pub struct Homology {
    pub module: GradedModule,
    /// Representative cycles, aligned with `module.summands`.
    pub representatives: Vec<ChainVector>,
    /// Position in `module.summands` of each summand as first computed.
    position: Vec<usize>,
    path: Path,
}

/// Coordinates of a homology class: `(summand index, coefficient)` pairs
/// with nonzero coefficient. Torsion coefficients are reduced modulo the
/// order; free coefficients are well defined modulo torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoordinates {
    pub degree: i32,
    pub free: Vec<(usize, Poly)>,
    pub torsion: Vec<(usize, Poly)>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    pub fn free_coeff(&self, s: usize) -> Poly {
        self.free.iter().find(|(k, _)| *k == s).map(|(_, p)| p.clone()).unwrap_or_default()
    }
}

fn scope_error(c: &CubeComplex) -> Error {
    let ring = &c.theory().ring;
    let base = match ring.base {
        BaseRing::Integers => "ℤ".to_string(),
        BaseRing::Rationals => "ℚ".to_string(),
        b => b.symbol(),
    };
    let name = format!("{base}[{}]", ring.names().join(","));
    if ring.vars.len() >= 2 {
        Error::Unsupported(format!("homology unavailable over {name}; use chain-level commands"))
    } else {
        Error::Unsupported(format!("homology unavailable over {name}: it is not a principal ideal domain"))
    }
}

fn assemble(c: &CubeComplex, raw: Vec<Summand>, reps: Vec<ChainVector>, path: Path) -> Homology {
    let ring = c.theory().ring.clone();
    let mut idx: Vec<usize> = (0..raw.len()).collect();
    idx.sort_by(|a, b| module::cmp_summands(&ring, &raw[*a], &raw[*b]).then(a.cmp(b)));
    let mut position = vec![0; raw.len()];
    for (p, k) in idx.iter().enumerate() {
        position[*k] = p;
    }
    let summands = idx.iter().map(|k| raw[*k].clone()).collect();
    let representatives = idx.iter().map(|k| reps[*k].clone()).collect();
    Homology { module: GradedModule { ring, summands }, representatives, position, path }
}

/// Homology over `F`, `F[v]` (graded column reduction) or `Z` with no
/// variables (block Smith normal forms).
pub fn homology(c: &CubeComplex) -> Result<Homology> {
    let ring = &c.theory().ring;
    if ring.base.is_field() && ring.vars.len() <= 1 {
        let g = persistence::grading_of(c)?;
        let red = persistence::reduce_all(c, g)?;
        let bases = persistence::cycle_bases(c, &red, g)?;
        let mut raw = Vec::new();
        let mut reps = Vec::new();
        let mut summand_of = BTreeMap::new();
        for (i, basis) in &bases {
            for (j, b) in basis {
                let order = match b.kind {
                    CycleKind::Free => Poly::zero(),
                    CycleKind::Torsion(m) => g.monomial(&ring.base.one(), m),
                    CycleKind::Boundary => continue,
                };
                summand_of.insert((*i, *j), raw.len());
                raw.push(Summand { i: *i, q: b.q, order });
                reps.push(persistence::to_chain(*i, b.q, &b.column, g)?);
            }
        }
        Ok(assemble(c, raw, reps, Path::Persistence { grading: g, bases, summand_of }))
    } else if ring.is_euclidean() {
        homology_via_snf(c)
    } else {
        Err(scope_error(c))
    }
}

/// Homology from Smith normal forms of the differentials; over fields it
/// serves as an independent check of [`homology`].
pub fn homology_via_snf(c: &CubeComplex) -> Result<Homology> {
    if !c.theory().ring.is_euclidean() {
        return Err(scope_error(c));
    }
    let (raw, reps, blocks) = snf_path::compute(c)?;
    Ok(assemble(c, raw.clone(), reps, Path::Snf { blocks, raw }))
}

impl Homology {
    /// Coordinates of the class of the cycle `z`.
    pub fn class_coordinates(&self, c: &CubeComplex, z: &ChainVector) -> Result<ClassCoordinates> {
        if !c.is_cycle(z) {
            return Err(Error::Invalid("chain is not a cycle".into()));
        }
        let raw: Vec<(usize, Poly)> = match &self.path {
            Path::Persistence { grading, bases, summand_of } => {
                let Some(basis) = bases.get(&z.degree) else {
                    return Ok(ClassCoordinates { degree: z.degree, free: vec![], torsion: vec![] });
                };
                let coeffs = persistence::peel(c, basis, z, *grading)?;
                let mut out = Vec::new();
                for (j, a) in coeffs {
                    let Some(s) = summand_of.get(&(z.degree, j)) else { continue };
                    let a = match basis[&j].kind {
                        CycleKind::Torsion(m) => persistence::truncate(&a, m),
                        _ => a,
                    };
                    if !a.is_zero() {
                        out.push((*s, a));
                    }
                }
                out
            }
            Path::Snf { blocks, raw } => snf_path::coordinates(c, blocks, raw, z)?,
        };
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (s, a) in raw {
            let p = self.position[s];
            if self.module.summands[p].is_free() {
                free.push((p, a));
            } else {
                torsion.push((p, a));
            }
        }
        free.sort_by_key(|x| x.0);
        torsion.sort_by_key(|x| x.0);
        Ok(ClassCoordinates { degree: z.degree, free, torsion })
    }

    /// Largest `d` such that the class is `v^d` times a class, modulo
    /// torsion, over `F[v]`; `None` for a class that is torsion.
    pub fn divisibility(&self, coords: &ClassCoordinates) -> Option<u32> {
        coords.free.iter().filter_map(|(_, p)| persistence::valuation(p)).min()
    }
}

#[cfg(test)]
mod tests;
