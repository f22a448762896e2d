use std::collections::BTreeMap;

use serde::Serialize;

use super::{homology, Homology};
use crate::coeff::{Monomial, Poly, Scalar};
use crate::complex::{chain_endo, ChainVector, CubeComplex, EndoKind};
use crate::{Error, Result};

/// Outcome of the exactness check of `ν̂` on homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    /// Homological degree and whether `ν̂` is exact there in every checked
    /// quantum degree.
    pub degrees: Vec<(i32, bool)>,
    pub nu_squared_zero: bool,
    /// Quantum window checked; beyond it the module is periodic under `v^2`.
    pub window: (i32, i32),
}

impl AcyclicityReport {
    pub fn is_acyclic(&self) -> bool {
        self.nu_squared_zero && self.degrees.iter().all(|(_, ok)| *ok)
    }
}

/// `F`-basis element `v^a z_s` of the homology in one bidegree.
type Cell = (usize, u32);

fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map(|x| x.len()).unwrap_or(0);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|i| !rows[*i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("field");
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                for k in c..cols {
                    let t = &f * &rows[r][k];
                    rows[i][k] = &rows[i][k] - &t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Checks that the induced `ν̂` makes homology an acyclic complex, in every
/// homological degree, over a field with at most one ring variable.
pub fn nu_acyclicity(c: &CubeComplex) -> Result<AcyclicityReport> {
    if c.diagram().is_empty() {
        return Err(Error::Invalid("acyclicity needs a nonempty diagram".into()));
    }
    let ring = c.theory().ring.clone();
    let step = match ring.vars.as_slice() {
        [v] if ring.base.is_field() => v.degree,
        _ => return Err(Error::Unsupported(format!("ν̂-acyclicity is checked over F[v], not {ring}"))),
    };
    let nu = chain_endo(c, EndoKind::NuHat)?;
    let h: Homology = homology(c)?;
    let summands = &h.module.summands;
    let qmin = summands.iter().map(|s| s.q).min().unwrap_or(0) - step;
    let qmax = summands.iter().map(|s| s.q).max().unwrap_or(0) + 3 * step;
    let base = ring.base;
    // F-basis of homology in bidegree (i, j)
    let cells = |i: i32, j: i32| -> Vec<Cell> {
        summands
            .iter()
            .enumerate()
            .filter(|(_, s)| s.i == i && j >= s.q && (j - s.q) % step == 0)
            .filter_map(|(k, s)| {
                let a = ((j - s.q) / step) as u32;
                let bound = match s.order.leading() {
                    None => u32::MAX,
                    Some((m, _)) => m.exp(0),
                };
                (a < bound).then_some((k, a))
            })
            .collect()
    };
    let power = |a: u32| Poly::monomial(base.one(), Monomial::from_exponents(&[a]));
    // matrix of ν̂ from (i, j) to (i, j - step), rows indexed by the target cells
    let nu_matrix = |i: i32, j: i32| -> Result<(Vec<Cell>, Vec<Cell>, Vec<Vec<Scalar>>)> {
        let (src, dst) = (cells(i, j), cells(i, j - step));
        let mut m = vec![vec![base.zero(); src.len()]; dst.len()];
        for (col, (s, a)) in src.iter().enumerate() {
            let z: ChainVector = h.representatives[*s].scale(&power(*a));
            let coords = h.class_coordinates(c, &nu.apply(&z)?)?;
            for (t, p) in coords.free.iter().chain(&coords.torsion) {
                for (mon, x) in p.terms() {
                    if let Some(row) = dst.iter().position(|d| *d == (*t, mon.exp(0))) {
                        m[row][col] = x.clone();
                    }
                }
            }
        }
        Ok((src, dst, m))
    };
    let mut degrees = Vec::new();
    let mut squared = true;
    let is: Vec<i32> = {
        let mut v: Vec<i32> = summands.iter().map(|s| s.i).collect();
        v.sort();
        v.dedup();
        v
    };
    for i in is {
        let mut ok = true;
        let mut mats: BTreeMap<i32, (usize, usize, Vec<Vec<Scalar>>)> = BTreeMap::new();
        let mut j = qmin;
        while j <= qmax + step {
            let (src, dst, m) = nu_matrix(i, j)?;
            mats.insert(j, (src.len(), dst.len(), m));
            j += step;
        }
        let rank_at = |j: i32| mats.get(&j).map(|(_, _, m)| rank(m.clone())).unwrap_or(0);
        let mut j = qmin;
        while j <= qmax {
            let dim = mats[&j].0;
            if dim - rank_at(j) != rank_at(j + step) {
                ok = false;
            }
            // ν̂ ∘ ν̂ from j + step to j - step
            if let (Some((_, _, a)), Some((_, _, b))) = (mats.get(&j), mats.get(&(j + step))) {
                for r in 0..a.len() {
                    for col in 0..b.first().map(|x| x.len()).unwrap_or(0) {
                        let mut acc = base.zero();
                        for k in 0..b.len() {
                            acc = &acc + &(&a[r][k] * &b[k][col]);
                        }
                        if !acc.is_zero() {
                            squared = false;
                        }
                    }
                }
            }
            j += step;
        }
        degrees.push((i, ok));
    }
    Ok(AcyclicityReport { degrees, nu_squared_zero: squared, window: (qmin, qmax) })
}
