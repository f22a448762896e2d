//! Homology over `F` or `F[v]` by graded column reduction.
//!
//! A homogeneous differential over `F[v]` is determined by its scalar
//! coefficients once the generator degrees are known, so columns carry
//! scalars only and powers of `v` are read off from degree differences.
//! Generators are filtered by `(q, index)`; a pivot pairing a row of degree
//! `q_j` with a column of degree `q_k` gives the summand `F[v]/(v^m)` with
//! `m = (q_k - q_j) / deg v`, and unpaired cycles give free summands.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::coeff::{Monomial, Poly, Scalar};
use crate::complex::{ChainVector, CubeComplex};
use crate::{Error, Result};

type Key = (i32, usize);
type Column = BTreeMap<Key, Scalar>;

/// Column reduction of one differential `C^i -> C^{i+1}`.
pub(crate) struct Reduced {
    /// Pivot row -> reduced column, for columns that did not vanish.
    pub by_row: HashMap<usize, (usize, Column)>,
    /// Columns that reduced to zero, with the cycle found.
    pub cycles: HashMap<usize, Column>,
}

/// The grading data of the ground ring `F` or `F[v]`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Grading {
    /// Degree of `v`, `None` over a field.
    pub var_degree: Option<i32>,
}

impl Grading {
    /// Exponent of `v` in an entry from degree `hi` to degree `lo`.
    pub fn power(&self, hi: i32, lo: i32) -> Result<u32> {
        let gap = hi - lo;
        match self.var_degree {
            None if gap == 0 => Ok(0),
            Some(d) if gap >= 0 && gap % d == 0 => Ok((gap / d) as u32),
            _ => Err(Error::Verification(format!("no homogeneous entry of degree {gap}"))),
        }
    }

    pub fn monomial(&self, c: &Scalar, e: u32) -> Poly {
        if e == 0 {
            Poly::constant(c.clone())
        } else {
            Poly::monomial(c.clone(), Monomial::from_exponents(&[e]))
        }
    }
}

fn scalar_of(p: &Poly) -> Result<Scalar> {
    match p.as_term() {
        Some((_, c)) => Ok(c.clone()),
        None => Err(Error::Verification("differential entry is not a monomial".into())),
    }
}

fn axpy(col: &mut Column, c: &Scalar, other: &Column) {
    for (k, v) in other {
        let e = col.entry(*k).or_insert_with(|| v.base().zero());
        *e = &*e - &(c * v);
        if e.is_zero() {
            col.remove(k);
        }
    }
}

/// Reduces `d^i` of the complex.
pub(crate) fn reduce(c: &CubeComplex, i: i32, g: Grading) -> Result<Reduced> {
    let src = c.generators(i);
    let dst = c.generators(i + 1);
    let m = c.differential(i);
    let mut order: Vec<usize> = (0..src.len()).collect();
    order.sort_by_key(|k| (src[*k].q, *k));
    let mut by_row: HashMap<usize, (usize, Column)> = HashMap::new();
    let mut cycles = HashMap::new();
    let mut vs: HashMap<usize, Column> = HashMap::new();
    let one = c.theory().ring.base.one();
    for k in order {
        let mut col = Column::new();
        for (j, p) in &m.columns[k] {
            g.power(src[k].q, dst[*j].q)?;
            col.insert((dst[*j].q, *j), scalar_of(p)?);
        }
        let mut v = Column::from([((src[k].q, k), one.clone())]);
        while let Some((&(_, low), a)) = col.last_key_value() {
            let Some((k2, other)) = by_row.get(&low) else { break };
            let f = a * &other[&(dst[low].q, low)].inv().expect("field coefficients");
            axpy(&mut col, &f, other);
            axpy(&mut v, &f, &vs[k2]);
        }
        match col.last_key_value() {
            Some((&(_, low), _)) => {
                by_row.insert(low, (k, col));
                vs.insert(k, v);
            }
            None => {
                cycles.insert(k, v);
            }
        }
    }
    Ok(Reduced { by_row, cycles })
}

/// Reductions of all differentials, in parallel.
pub(crate) fn reduce_all(c: &CubeComplex, g: Grading) -> Result<BTreeMap<i32, Reduced>> {
    let degs = c.hom_degrees();
    let out: Vec<(i32, Reduced)> =
        degs.par_iter().map(|i| Ok((*i, reduce(c, *i, g)?))).collect::<Result<Vec<_>>>()?;
    Ok(out.into_iter().collect())
}

/// A basis cycle of `C^i` with leading generator `lead` (coefficient one).
#[derive(Clone, Debug)]
pub(crate) struct BasisCycle {
    pub q: i32,
    pub column: Column,
    /// `Some(m)` for a summand `F[v]/(v^m)` (m > 0), `None` for free; zero
    /// length pairs are boundaries and have no summand.
    pub kind: CycleKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum CycleKind {
    Free,
    Torsion(u32),
    Boundary,
}

/// Cycle basis of every degree, triangular in the filtration order.
pub(crate) fn cycle_bases(
    c: &CubeComplex,
    red: &BTreeMap<i32, Reduced>,
    g: Grading,
) -> Result<BTreeMap<i32, BTreeMap<usize, BasisCycle>>> {
    let mut out = BTreeMap::new();
    for i in c.hom_degrees() {
        let gens = c.generators(i);
        let mut basis: BTreeMap<usize, BasisCycle> = BTreeMap::new();
        if let Some(prev) = red.get(&(i - 1)) {
            let above = c.generators(i - 1);
            for (j, (k, col)) in &prev.by_row {
                let lead = &col[&(gens[*j].q, *j)];
                let inv = lead.inv().expect("field coefficients");
                let column: Column = col.iter().map(|(key, v)| (*key, v * &inv)).collect();
                let m = g.power(above[*k].q, gens[*j].q)?;
                let kind = if m == 0 { CycleKind::Boundary } else { CycleKind::Torsion(m) };
                basis.insert(*j, BasisCycle { q: gens[*j].q, column, kind });
            }
        }
        for (k, v) in &red[&i].cycles {
            if basis.contains_key(k) {
                continue;
            }
            basis.insert(*k, BasisCycle { q: gens[*k].q, column: v.clone(), kind: CycleKind::Free });
        }
        out.insert(i, basis);
    }
    Ok(out)
}

/// The chain `sum s_m v^{(q - q_m)/deg v} e_m` of a scalar column of degree `q`.
pub(crate) fn to_chain(degree: i32, q: i32, col: &Column, g: Grading) -> Result<ChainVector> {
    let mut out = ChainVector::zero(degree);
    for ((qm, m), s) in col {
        out.add_term(*m, g.monomial(s, g.power(q, *qm)?));
    }
    Ok(out)
}

/// Coefficients of a cycle in the triangular basis.
pub(crate) fn peel(
    c: &CubeComplex,
    basis: &BTreeMap<usize, BasisCycle>,
    z: &ChainVector,
    g: Grading,
) -> Result<BTreeMap<usize, Poly>> {
    let gens = c.generators(z.degree);
    let mut rest: BTreeMap<Key, Poly> = z.terms().map(|(k, p)| ((gens[*k].q, *k), p.clone())).collect();
    let mut out = BTreeMap::new();
    while let Some((&(_, j), a)) = rest.last_key_value() {
        let a = a.clone();
        let b = basis.get(&j).ok_or_else(|| Error::Invalid("chain is not a cycle".into()))?;
        for ((qm, m), s) in &b.column {
            let t = &a * &g.monomial(s, g.power(b.q, *qm)?);
            let e = rest.entry((*qm, *m)).or_default();
            *e = &*e - &t;
            if e.is_zero() {
                rest.remove(&(*qm, *m));
            }
        }
        out.insert(j, a);
    }
    Ok(out)
}

/// Reduces a coefficient modulo `v^m`.
pub(crate) fn truncate(p: &Poly, m: u32) -> Poly {
    Poly::from_terms(p.terms().filter(|(mon, _)| mon.exp(0) < m).map(|(mon, c)| (mon.clone(), c.clone())))
}

/// Lowest power of `v` in a nonzero coefficient.
pub(crate) fn valuation(p: &Poly) -> Option<u32> {
    p.terms().map(|(m, _)| m.exp(0)).min()
}

pub(crate) fn grading_of(c: &CubeComplex) -> Result<Grading> {
    let ring = &c.theory().ring;
    if !ring.base.is_field() {
        return Err(Error::NonEuclidean(ring.to_string()));
    }
    match ring.vars.len() {
        0 => Ok(Grading { var_degree: None }),
        1 => Ok(Grading { var_degree: Some(ring.vars[0].degree) }),
        _ => Err(Error::NonEuclidean(ring.to_string())),
    }
}
