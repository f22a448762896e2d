use std::collections::BTreeMap;

use serde::Serialize;

use super::chain::ChainVector;
use super::cube::{CubeComplex, Reduction};
use crate::coeff::{Homogeneity, SparseMatrix};
use crate::diagram::LinkDiagram;
use crate::error::verify;
use crate::frobenius::{bit, dual_involution, dualize, DualTensor, Involution, InvolutionKind, TensorVector, Theory};
use crate::{Error, Result};

/// The isomorphism from the complex of the mirror `D*` to the dual of the
/// complex of `D`.
///
/// Degree `i` of the dual complex is `Hom(C^{-i}(D), R)`; a dual chain is a
/// [`ChainVector`] of degree `i` whose indices are generators of
/// `C^{-i}(D)`, read as the dual basis. The vertex `w` of `D*` is matched
/// with the complementary vertex `v` of `D`, which has the same circles, and
/// the tensor there is sent to `(-1)^{Σ_{v_j = 1} j} 𝔇(x)`.
pub struct MirrorDuality {
    pub mirror: CubeComplex,
    pub original: CubeComplex,
    blocks: BTreeMap<i32, SparseMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorReport {
    pub generators: usize,
    /// Whether the intertwining of σ̂ with σ̂_𝔇 was checked (it needs σ̂).
    pub sigma_checked: bool,
}

fn vertex_sign(v: u64) -> bool {
    (0..64).filter(|j| bit(v, *j)).map(|j| j as u32).sum::<u32>() % 2 == 1
}

fn complement(w: u64, n: usize) -> u64 {
    !w & ((1u64 << n) - 1)
}

pub fn mirror_dual_iso(d: &LinkDiagram, th: &Theory) -> Result<MirrorDuality> {
    let original = CubeComplex::build(d, th, Reduction::Unreduced)?;
    let mirror = CubeComplex::build(&d.mirror(), th, Reduction::Unreduced)?;
    let n = d.num_crossings();
    for w in 0..1u64 << n {
        let sorted = |c: &CubeComplex, v: u64| -> Vec<Vec<u32>> {
            c.resolution(v)
                .circles
                .iter()
                .map(|a| {
                    let mut a = a.clone();
                    a.sort();
                    a
                })
                .collect()
        };
        verify(sorted(&mirror, w) == sorted(&original, complement(w, n)), || {
            format!("mirror vertex {w:#b} and its complement have different circles")
        })?;
    }
    let mut blocks = BTreeMap::new();
    for i in mirror.hom_degrees() {
        let gens = mirror.generators(i);
        let mut m = SparseMatrix::zero(original.rank(-i), gens.len());
        for (k, g) in gens.iter().enumerate() {
            let v = complement(g.vertex, n);
            let f = dualize(&mirror.generator_tensor(g), th)?;
            let sign = vertex_sign(v);
            for l in 0..1u64 << f.len {
                let p = f.value(l);
                if p.is_zero() {
                    continue;
                }
                let row = original.index_of(v, l).ok_or_else(|| Error::Verification("missing dual generator".into()))?;
                m.columns[k].push((row, if sign { -&p } else { p }));
            }
            m.columns[k].sort_by_key(|e| e.0);
        }
        blocks.insert(i, m);
    }
    Ok(MirrorDuality { mirror, original, blocks })
}

impl MirrorDuality {
    pub fn apply(&self, y: &ChainVector) -> ChainVector {
        let mut out = ChainVector::zero(y.degree);
        if let Some(m) = self.blocks.get(&y.degree) {
            for (k, c) in y.terms() {
                for (r, a) in &m.columns[*k] {
                    out.add_term(*r, a * c);
                }
            }
        }
        out
    }

    /// Inverse isomorphism, from `X* -> 1`, `1* -> Y` on each factor.
    pub fn inverse(&self, f: &ChainVector) -> Result<ChainVector> {
        let th = self.original.theory();
        let n = self.original.diagram().num_crossings();
        let gens = self.original.generators(-f.degree);
        let mut out = ChainVector::zero(f.degree);
        for (k, c) in f.terms() {
            let g = &gens[*k];
            let r = self.original.resolution(g.vertex).circles.len();
            let mut t = TensorVector::scalar(th, c.clone())?;
            for j in 0..r {
                let factor = if bit(g.labels, j) { TensorVector::one(th) } else { TensorVector::y(th) };
                t = t.tensor(&factor)?;
            }
            if vertex_sign(g.vertex) {
                t = t.neg();
            }
            out = out.add(&self.mirror.chain_from_tensor(complement(g.vertex, n), &t)?);
        }
        Ok(out)
    }

    /// The differential of the dual complex, `f -> f ∘ d`.
    pub fn dual_differential(&self, f: &ChainVector) -> ChainVector {
        let mut out = ChainVector::zero(f.degree + 1);
        let Some(m) = self.original.differential_ref(-f.degree - 1) else {
            return out;
        };
        for (col, entries) in m.columns.iter().enumerate() {
            let mut acc = crate::coeff::Poly::zero();
            for (row, a) in entries {
                acc = &acc + &(a * &f.coeff(*row));
            }
            out.add_term(col, acc);
        }
        out
    }

    /// σ̂_𝔇 applied vertex by vertex.
    fn dual_sigma(&self, f: &ChainVector, inv: &Involution) -> Result<ChainVector> {
        let th = self.original.theory();
        let gens = self.original.generators(-f.degree);
        let mut by_vertex: BTreeMap<u64, Vec<(u64, crate::coeff::Poly)>> = BTreeMap::new();
        for (k, c) in f.terms() {
            by_vertex.entry(gens[*k].vertex).or_default().push((gens[*k].labels, c.clone()));
        }
        let mut out = ChainVector::zero(f.degree);
        for (v, vals) in by_vertex {
            let len = self.original.resolution(v).circles.len();
            let g = dual_involution(&DualTensor::from_values(th, len, vals), inv)?;
            for l in 0..1u64 << len {
                out.add_term(self.original.index_of(v, l).expect("generator"), g.value(l));
            }
        }
        Ok(out)
    }

    /// Checks the chain-map equation, both composites with the inverse, the
    /// quantum gradings, and the intertwining of the involutions.
    pub fn verify(&self) -> Result<MirrorReport> {
        let (c, o) = (&self.mirror, &self.original);
        let th = c.theory();
        let sigma = Involution::new(InvolutionKind::SigmaHat, th).ok();
        let mut count = 0;
        for i in c.hom_degrees() {
            for (k, g) in c.generators(i).iter().enumerate() {
                let e = ChainVector::basis(i, k, th.ring.one());
                let f = self.apply(&e);
                verify(self.apply(&c.d(&e)) == self.dual_differential(&f), || {
                    format!("duality is not a chain map at generator {k} of degree {i}")
                })?;
                verify(self.inverse(&f)? == e, || format!("inverse ∘ 𝔇 ≠ id at generator {k} of degree {i}"))?;
                let gens = o.generators(-i);
                for (r, p) in f.terms() {
                    let ok = matches!(th.ring.homogeneity(p), Homogeneity::Degree(dg) if dg - gens[*r].q == g.q);
                    verify(ok, || format!("duality does not preserve the grading at generator {k} of degree {i}"))?;
                }
                if let Some(inv) = &sigma {
                    for s in [th.ring.one(), th.h.clone()] {
                        let x = ChainVector::basis(i, k, s);
                        let mut sx = ChainVector::zero(i);
                        for (v, t) in c.chain_to_tensors(&x) {
                            sx = sx.add(&c.chain_from_tensor(v, &inv.apply(&t)?)?);
                        }
                        verify(self.apply(&sx) == self.dual_sigma(&self.apply(&x), inv)?, || {
                            format!("duality does not intertwine the involutions at generator {k} of degree {i}")
                        })?;
                    }
                }
                count += 1;
            }
            for k in 0..o.rank(-i) {
                let f = ChainVector::basis(i, k, th.ring.one());
                verify(self.apply(&self.inverse(&f)?) == f, || format!("𝔇 ∘ inverse ≠ id at degree {i}"))?;
            }
        }
        Ok(MirrorReport { generators: count, sigma_checked: sigma.is_some() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::BaseRing;
    use crate::diagram::parse_pd;
    use crate::frobenius::TheoryKind;
    use crate::homology::homology;

    #[test]
    fn small_diagrams() {
        for pd in ["PD[Loop[1]]", "[[2,4,1,3],[4,2,3,1]]", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"] {
            let d = parse_pd(pd).unwrap();
            for k in [TheoryKind::U2, TheoryKind::U1, TheoryKind::Plain] {
                let th = Theory::new(k, BaseRing::Integers).unwrap();
                let r = mirror_dual_iso(&d, &th).unwrap().verify().unwrap();
                assert!(r.sigma_checked && r.generators > 0);
            }
        }
    }

    #[test]
    fn unknot_basis() {
        let th = Theory::new(TheoryKind::U2, BaseRing::Integers).unwrap();
        let m = mirror_dual_iso(&LinkDiagram::unknot(), &th).unwrap();
        // 1 -> X*, X -> 1* + h X*
        let one = m.apply(&ChainVector::basis(0, 0, th.ring.one()));
        assert_eq!(one, ChainVector::basis(0, 1, th.ring.one()));
        let x = m.apply(&ChainVector::basis(0, 1, th.ring.one()));
        assert_eq!(x, ChainVector::basis(0, 0, th.ring.one()).add(&ChainVector::basis(0, 1, th.h.clone())));
    }

    #[test]
    fn free_parts_negate() {
        let d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap();
        let th = Theory::new(TheoryKind::U1, BaseRing::Rationals).unwrap();
        let free = |d: &LinkDiagram| -> Vec<(i32, i32)> {
            let c = CubeComplex::build(d, &th, Reduction::Unreduced).unwrap();
            let mut v: Vec<(i32, i32)> = homology(&c).unwrap().module.free_part();
            v.sort();
            v
        };
        let mut neg: Vec<(i32, i32)> = free(&d).iter().map(|(i, q)| (-i, -q)).collect();
        neg.sort();
        assert_eq!(free(&d.mirror()), neg);
    }
}
