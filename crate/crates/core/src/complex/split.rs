use serde::Serialize;

use super::chain::ChainVector;
use super::cube::{CubeComplex, Reduction};
use super::map::{chain_endo, ChainMap, EndoKind};
use crate::coeff::Poly;
use crate::error::verify;
use crate::frobenius::TheoryKind;
use crate::{Error, Result};

/// The splitting `C ≅ C_1 ⊕ C_2` of an unreduced complex into the two
/// reduced subcomplexes `C_k = (X - r_k) C`, linear over the subring fixed by
/// the theory's involution.
///
/// `to_sum(c) = (c + ν X̄₂ c, X̄₂ c)` and `from_sum(a, b) = a - ν b`.
pub struct Splitting<'a> {
    pub full: &'a CubeComplex,
    pub first: CubeComplex,
    pub second: CubeComplex,
    /// A basis of the ground ring over the fixed subring.
    pub scalars: Vec<Poly>,
    nu: ChainMap,
    x2: ChainMap,
}

/// What [`Splitting::verify`] checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub subring: String,
    pub unreduced_rank: usize,
    pub reduced_rank: usize,
    /// Columns of `to_sum ∘ from_sum` and `from_sum ∘ to_sum` compared with
    /// the identity.
    pub columns_checked: usize,
}

/// Builds the splitting; U1 and U1xU1 theories over any base ring.
pub fn split_reduced(c: &CubeComplex) -> Result<Splitting<'_>> {
    let th = c.theory();
    let scalars = match th.kind {
        TheoryKind::U1 => vec![th.ring.one(), th.ring.var("h")],
        TheoryKind::U1xU1 => vec![th.ring.one(), th.ring.var("a1")],
        k => return Err(Error::Unsupported(format!("the splitting is stated for U1 and U1xU1, not {k}"))),
    };
    if c.is_reduced() {
        return Err(Error::Invalid("split the unreduced complex".into()));
    }
    let first = CubeComplex::build(c.diagram(), th, Reduction::Root(0))?;
    let second = CubeComplex::build(c.diagram(), th, Reduction::Root(1))?;
    let nu = chain_endo(c, EndoKind::NuHat)?;
    let x2 = chain_endo(c, if th.kind == TheoryKind::U1 { EndoKind::YBar } else { EndoKind::X2Bar })?;
    Ok(Splitting { full: c, first, second, scalars, nu, x2 })
}

impl Splitting<'_> {
    pub fn to_sum(&self, x: &ChainVector) -> Result<(ChainVector, ChainVector)> {
        let b = self.x2.apply(x)?;
        let a = x.add(&self.nu.apply(&b)?);
        Ok((self.first.restrict(&a, self.full)?, self.second.restrict(&b, self.full)?))
    }

    pub fn from_sum(&self, a: &ChainVector, b: &ChainVector) -> Result<ChainVector> {
        let a = self.first.embed(a, self.full)?;
        let b = self.second.embed(b, self.full)?;
        Ok(a.sub(&self.nu.apply(&b)?))
    }

    /// Checks both composites against the identity on a basis over the fixed
    /// subring, and that both maps commute with the differentials.
    pub fn verify(&self) -> Result<SplitReport> {
        let (c, c1, c2) = (self.full, &self.first, &self.second);
        let mut columns = 0;
        for i in c.hom_degrees() {
            for s in &self.scalars {
                for k in 0..c.rank(i) {
                    let x = ChainVector::basis(i, k, s.clone());
                    let (a, b) = self.to_sum(&x)?;
                    verify(self.from_sum(&a, &b)? == x, || format!("from_sum ∘ to_sum ≠ id at generator {k} of degree {i}"))?;
                    let (da, db) = self.to_sum(&c.d(&x))?;
                    verify(da == c1.d(&a) && db == c2.d(&b), || format!("to_sum is not a chain map at degree {i}"))?;
                    columns += 1;
                }
                let zero = ChainVector::zero(i);
                for k in 0..c1.rank(i) {
                    let a = ChainVector::basis(i, k, s.clone());
                    verify(self.to_sum(&self.from_sum(&a, &zero)?)? == (a.clone(), zero.clone()), || {
                        format!("to_sum ∘ from_sum ≠ id on the first summand, degree {i}")
                    })?;
                    verify(self.from_sum(&c1.d(&a), &ChainVector::zero(i + 1))? == c.d(&self.from_sum(&a, &zero)?), || {
                        format!("from_sum is not a chain map at degree {i}")
                    })?;
                    columns += 1;
                }
                for k in 0..c2.rank(i) {
                    let b = ChainVector::basis(i, k, s.clone());
                    verify(self.to_sum(&self.from_sum(&zero, &b)?)? == (zero.clone(), b.clone()), || {
                        format!("to_sum ∘ from_sum ≠ id on the second summand, degree {i}")
                    })?;
                    verify(self.from_sum(&ChainVector::zero(i + 1), &c2.d(&b))? == c.d(&self.from_sum(&zero, &b)?), || {
                        format!("from_sum is not a chain map at degree {i}")
                    })?;
                    columns += 1;
                }
            }
        }
        let th = c.theory();
        let subring = match th.kind {
            TheoryKind::U1 if th.base().characteristic() == 2 => format!("{}[h]", th.base()),
            TheoryKind::U1 => format!("{}[h^2]", th.base()),
            _ => format!("{}[a1 + a2, a1 a2]", th.base()),
        };
        Ok(SplitReport { subring, unreduced_rank: c.total_rank(), reduced_rank: c1.total_rank(), columns_checked: columns })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::BaseRing;
    use crate::diagram::{parse_pd, LinkDiagram};
    use crate::frobenius::Theory;

    #[test]
    fn small_diagrams_split() {
        let ds = [
            LinkDiagram::unknot(),
            parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap(),
            parse_pd("[[2,4,1,3],[4,2,3,1]]").unwrap(),
        ];
        for d in &ds {
            for (k, b) in [
                (TheoryKind::U1, BaseRing::Integers),
                (TheoryKind::U1, BaseRing::Prime(2)),
                (TheoryKind::U1, BaseRing::Rationals),
                (TheoryKind::U1xU1, BaseRing::Integers),
            ] {
                let c = CubeComplex::build(d, &Theory::new(k, b).unwrap(), Reduction::Unreduced).unwrap();
                let r = split_reduced(&c).unwrap().verify().unwrap();
                assert_eq!(2 * r.reduced_rank, r.unreduced_rank);
            }
        }
    }

    #[test]
    fn other_theories_refused() {
        let c = CubeComplex::build(
            &LinkDiagram::unknot(),
            &Theory::new(TheoryKind::U2, BaseRing::Integers).unwrap(),
            Reduction::Unreduced,
        )
        .unwrap();
        assert!(matches!(split_reduced(&c), Err(Error::Unsupported(_))));
    }
}
