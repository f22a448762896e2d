//! Homology from Smith normal forms of consecutive differentials.
//!
//! Over `Z` the complex splits into quantum-degree blocks of integer
//! matrices. Over `F[v]` the whole degree is one block and the graded
//! normal form keeps every basis change homogeneous.

use std::collections::BTreeMap;

use crate::coeff::{smith_normal_form, smith_normal_form_graded, GroundRing, Homogeneity, Matrix, Poly, Snf, SparseMatrix};
use crate::complex::{ChainVector, CubeComplex};
use crate::{Error, Result};

use super::module::Summand;

/// Normal form data of one block of one homological degree.
pub(crate) struct Block {
    pub i: i32,
    /// Generators of `C^i` in the block.
    pub gens: Vec<usize>,
    pub rank: usize,
    pub q_inv: Matrix,
    pub p_k: Matrix,
    /// Summand of each row of the presentation, `None` for unit orders.
    pub summands: Vec<Option<usize>>,
}

fn submatrix(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> SparseMatrix {
    let rpos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(a, b)| (*b, a)).collect();
    let mut out = SparseMatrix::zero(rows.len(), cols.len());
    for (cj, j) in cols.iter().enumerate() {
        for (i, v) in &m.columns[*j] {
            if let Some(ri) = rpos.get(i) {
                out.columns[cj].push((*ri, v.clone()));
            }
        }
    }
    out
}

fn snf(ring: &GroundRing, m: &SparseMatrix, degs: Option<(&[i32], &[i32])>) -> Result<Snf> {
    match degs {
        Some((r, c)) => smith_normal_form_graded(ring, m, r, c),
        None => smith_normal_form(ring, m),
    }
}

fn vector_degree(ring: &GroundRing, entries: &[(i32, &Poly)]) -> Option<i32> {
    entries.iter().find_map(|(q, p)| match ring.homogeneity(p) {
        Homogeneity::Degree(d) => Some(q + d),
        _ => None,
    })
}

/// Summands, representatives and block data for every degree.
pub(crate) fn compute(c: &CubeComplex) -> Result<(Vec<Summand>, Vec<ChainVector>, Vec<Block>)> {
    let ring = &c.theory().ring;
    if !ring.is_euclidean() {
        return Err(Error::NonEuclidean(ring.to_string()));
    }
    let graded = !ring.vars.is_empty();
    let mut summands = Vec::new();
    let mut reps = Vec::new();
    let mut blocks = Vec::new();
    for i in c.hom_degrees() {
        let gens = c.generators(i);
        let qs: Vec<Option<i32>> = if graded {
            vec![None]
        } else {
            let mut v: Vec<i32> = gens.iter().map(|g| g.q).collect();
            v.sort();
            v.dedup();
            v.into_iter().map(Some).collect()
        };
        let (d_out, d_in) = (c.differential(i), c.differential(i - 1));
        let (next, prev) = (c.generators(i + 1), c.generators(i - 1));
        for q in qs {
            let pick = |list: &[crate::complex::Generator]| -> Vec<usize> {
                (0..list.len()).filter(|k| q.map_or(true, |q| list[*k].q == q)).collect()
            };
            let (here, up, down) = (pick(gens), pick(next), pick(prev));
            let deg = |list: &[crate::complex::Generator], idx: &[usize]| -> Vec<i32> {
                idx.iter().map(|k| list[*k].q).collect()
            };
            let (dh, du, dd) = (deg(gens, &here), deg(next, &up), deg(prev, &down));
            let m = submatrix(&d_out, &up, &here);
            let s1 = snf(ring, &m, graded.then_some((du.as_slice(), dh.as_slice())))?;
            let rank = s1.rank();
            let n = here.len();
            // kernel basis: columns rank.. of Q
            let kernel_deg: Vec<i32> = (rank..n)
                .map(|j| {
                    let entries: Vec<(i32, &Poly)> = (0..n).map(|r| (dh[r], s1.q.get(r, j))).collect();
                    vector_degree(ring, &entries).unwrap_or(0)
                })
                .collect();
            let nmat = submatrix(&d_in, &here, &down).to_dense();
            let moved = s1.q_inv.mul(&nmat);
            let mut k = SparseMatrix::zero(n - rank, down.len());
            for r in rank..n {
                for j in 0..down.len() {
                    let v = moved.get(r, j);
                    if !v.is_zero() {
                        k.columns[j].push((r - rank, v.clone()));
                    }
                }
            }
            for r in 0..rank {
                if (0..down.len()).any(|j| !moved.get(r, j).is_zero()) {
                    return Err(Error::Verification(format!("image of d^{} is not inside the cycles", i - 1)));
                }
            }
            let s2 = snf(ring, &k, graded.then_some((kernel_deg.as_slice(), dd.as_slice())))?;
            let mut rows = Vec::with_capacity(n - rank);
            for j in 0..n - rank {
                let order = if j < s2.rank() { s2.factors[j].clone() } else { Poly::zero() };
                if !order.is_zero() && ring.is_unit(&order) {
                    rows.push(None);
                    continue;
                }
                // representative: Q[:, rank..] * P_K^{-1}[:, j]
                let mut rep = ChainVector::zero(i);
                let mut entries = Vec::new();
                for (a, g) in here.iter().enumerate() {
                    let mut acc = Poly::zero();
                    for b in 0..n - rank {
                        let x = s2.p_inv.get(b, j);
                        if !x.is_zero() {
                            acc = &acc + &(s1.q.get(a, rank + b) * x);
                        }
                    }
                    entries.push((dh[a], acc.clone()));
                    rep.add_term(*g, acc);
                }
                let qd = q.or_else(|| {
                    vector_degree(ring, &entries.iter().map(|(a, b)| (*a, b)).collect::<Vec<_>>())
                });
                let qd = qd.ok_or_else(|| Error::Verification("inhomogeneous homology generator".into()))?;
                rows.push(Some(summands.len()));
                summands.push(Summand { i, q: qd, order });
                reps.push(rep);
            }
            blocks.push(Block { i, gens: here, rank, q_inv: s1.q_inv, p_k: s2.p, summands: rows });
        }
    }
    Ok((summands, reps, blocks))
}

/// Coordinates of a cycle, by summand index (before sorting).
pub(crate) fn coordinates(c: &CubeComplex, blocks: &[Block], summands: &[Summand], z: &ChainVector) -> Result<Vec<(usize, Poly)>> {
    let ring = &c.theory().ring;
    let mut out = Vec::new();
    for b in blocks.iter().filter(|b| b.i == z.degree) {
        let n = b.gens.len();
        let y: Vec<Poly> = (0..n)
            .map(|r| {
                let mut acc = Poly::zero();
                for (a, g) in b.gens.iter().enumerate() {
                    let x = z.coeff(*g);
                    if !x.is_zero() {
                        acc = &acc + &(b.q_inv.get(r, a) * &x);
                    }
                }
                acc
            })
            .collect();
        if y[..b.rank].iter().any(|p| !p.is_zero()) {
            return Err(Error::Invalid("chain is not a cycle".into()));
        }
        for (j, s) in b.summands.iter().enumerate() {
            let Some(s) = s else { continue };
            let mut acc = Poly::zero();
            for r in 0..n - b.rank {
                acc = &acc + &(b.p_k.get(j, r) * &y[b.rank + r]);
            }
            let order = &summands[*s].order;
            if !order.is_zero() {
                acc = ring.divmod(&acc, order)?.1;
            }
            if !acc.is_zero() {
                out.push((*s, acc));
            }
        }
    }
    Ok(out)
}
