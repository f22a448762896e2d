use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::chain::ChainVector;
use crate::coeff::{Homogeneity, Poly, SparseMatrix};
use crate::diagram::{resolve, LinkDiagram, Resolution};
use crate::frobenius::{bit, Labels, TensorVector, Theory};
use crate::lee::LeeLabeling;
use crate::{Error, Result};

/// Which complex to build from a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Unreduced,
    /// The subcomplex at the basepoint that contains the Lee cycle.
    Lee,
    /// The other one.
    Opposite,
    /// The subcomplex spanned by `X - r` on the basepoint circle, `r` the
    /// given root (0 or 1).
    Root(usize),
}

/// Basepoint arc and root of a reduced complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedAt {
    pub arc: u32,
    pub root: usize,
}

/// A basis element: a labelling of the circles at a cube vertex. In a
/// reduced complex the basepoint bit is always set and stands for `X - r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub vertex: u64,
    pub labels: Labels,
    pub q: i32,
}

/// The cube-of-resolutions complex of a diagram over a theory.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    theory: Theory,
    diagram: LinkDiagram,
    reduced: Option<ReducedAt>,
    root: Option<Poly>,
    resolutions: Vec<Resolution>,
    degrees: BTreeMap<i32, Vec<Generator>>,
    index: HashMap<(u64, Labels), usize>,
    differentials: BTreeMap<i32, SparseMatrix>,
}

/// Circle bookkeeping along the edge flipping one crossing.
struct Edge {
    /// Circles at the source meeting the crossing (equal for a split).
    src: (usize, usize),
    /// Circles at the target meeting the crossing (equal for a merge).
    dst: (usize, usize),
    /// Target circle of every source circle.
    transport: Vec<usize>,
}

impl Edge {
    fn new(x: &[u32; 4], from: &Resolution, to: &Resolution) -> Self {
        let transport = from.circles.iter().map(|arcs| to.circle_of[&arcs[0]]).collect();
        Edge {
            src: (from.circle_of[&x[0]], from.circle_of[&x[2]]),
            dst: (to.circle_of[&x[0]], to.circle_of[&x[1]]),
            transport,
        }
    }

    fn is_merge(&self) -> bool {
        self.src.0 != self.src.1
    }

    fn apply(&self, th: &Theory, v: &TensorVector, len: usize) -> TensorVector {
        let mut out = TensorVector::zero(th, len);
        for (l, c) in v.terms() {
            let mut rest: Labels = 0;
            for (k, t) in self.transport.iter().enumerate() {
                if k != self.src.0 && k != self.src.1 && bit(*l, k) {
                    rest |= 1 << t;
                }
            }
            if self.is_merge() {
                for (b, k) in th.mul_basis(bit(*l, self.src.0), bit(*l, self.src.1)) {
                    out.add_term(rest | ((b as u64) << self.dst.0), c * &k);
                }
            } else {
                for ((a, b), k) in th.comul_basis(bit(*l, self.src.0)) {
                    out.add_term(rest | ((a as u64) << self.dst.0) | ((b as u64) << self.dst.1), c * &k);
                }
            }
        }
        out
    }
}

fn sign_before(v: u64, j: usize) -> bool {
    (v & ((1u64 << j) - 1)).count_ones() % 2 == 1
}

impl CubeComplex {
    /// Builds the complex, checking `d^2 = 0`.
    pub fn build(d: &LinkDiagram, th: &Theory, reduction: Reduction) -> Result<Self> {
        let n = d.num_crossings();
        if n > 20 {
            return Err(Error::Unsupported(format!("{n} crossings is beyond the cube size handled here")));
        }
        let (reduced, root) = match reduction {
            Reduction::Unreduced => (None, None),
            _ => {
                let arc = d.basepoint_or_default().map_err(|_| Error::Invalid("reduced complex needs a basepoint".into()))?;
                let roots = th.roots().ok_or_else(|| {
                    Error::Unsupported(format!("the {} theory has no reduced complex: X^2 - hX - t does not split", th.kind))
                })?;
                let idx = match reduction {
                    Reduction::Root(i) if i < 2 => i,
                    Reduction::Root(i) => return Err(Error::Invalid(format!("root index {i} must be 0 or 1"))),
                    _ => {
                        let lab = LeeLabeling::new(d)?;
                        let on_y = lab.label_of_arc(arc).expect("basepoint lies on a Seifert circle") as usize;
                        if reduction == Reduction::Lee {
                            on_y
                        } else {
                            1 - on_y
                        }
                    }
                };
                let r = if idx == 0 { roots.0 } else { roots.1 };
                (Some(ReducedAt { arc, root: idx }), Some(r))
            }
        };
        let resolutions: Vec<Resolution> =
            (0..1u64 << n).into_par_iter().map(|v| resolve(d, v)).collect::<Result<Vec<_>>>()?;
        let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
        let mut degrees: BTreeMap<i32, Vec<Generator>> = (0..=n as i32).map(|k| (k - nm, Vec::new())).collect();
        let mut index = HashMap::new();
        for (v, res) in resolutions.iter().enumerate() {
            let v = v as u64;
            let r = res.circles.len();
            let i = v.count_ones() as i32 - nm;
            let fixed = reduced.map(|ra| res.circle_of[&ra.arc]);
            let free: Vec<usize> = (0..r).filter(|c| Some(*c) != fixed).collect();
            let list = degrees.get_mut(&i).unwrap();
            for k in 0..1u64 << free.len() {
                // circle 0 is the most significant letter of the label word
                let mut labels: Labels = fixed.map(|c| 1u64 << c).unwrap_or(0);
                for (pos, c) in free.iter().enumerate() {
                    if bit(k, free.len() - 1 - pos) {
                        labels |= 1 << c;
                    }
                }
                let q = 2 * labels.count_ones() as i32 - r as i32 - v.count_ones() as i32 - np + 2 * nm
                    - reduced.is_some() as i32;
                index.insert((v, labels), list.len());
                list.push(Generator { vertex: v, labels, q });
            }
        }
        let mut c = CubeComplex {
            theory: th.clone(),
            diagram: d.clone(),
            reduced,
            root,
            resolutions,
            degrees,
            index,
            differentials: BTreeMap::new(),
        };
        let degs: Vec<i32> = c.degrees.keys().copied().collect();
        let diffs = degs.par_iter().map(|i| Ok((*i, c.build_differential(*i)?))).collect::<Result<Vec<_>>>()?;
        c.differentials = diffs.into_iter().collect();
        c.check_d_squared()?;
        Ok(c)
    }

    fn build_differential(&self, i: i32) -> Result<SparseMatrix> {
        let src = &self.degrees[&i];
        let rows = self.degrees.get(&(i + 1)).map(|g| g.len()).unwrap_or(0);
        let n = self.diagram.num_crossings();
        let th = &self.theory;
        let cols: Vec<Vec<(usize, Poly)>> = src
            .par_iter()
            .map(|g| -> Result<Vec<(usize, Poly)>> {
                let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
                let t = self.generator_tensor(g);
                for j in 0..n {
                    if bit(g.vertex, j) {
                        continue;
                    }
                    let w = g.vertex | (1 << j);
                    let edge = Edge::new(
                        &self.diagram.crossings()[j],
                        &self.resolutions[g.vertex as usize],
                        &self.resolutions[w as usize],
                    );
                    let img = edge.apply(th, &t, self.resolutions[w as usize].circles.len());
                    let img = self.chain_from_tensor(w, &img)?;
                    let neg = sign_before(g.vertex, j);
                    for (k, c) in img.terms() {
                        let e = out.entry(*k).or_default();
                        *e = if neg { &*e - c } else { &*e + c };
                    }
                }
                Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            })
            .collect::<Result<_>>()?;
        let mut m = SparseMatrix::zero(rows, src.len());
        m.columns = cols;
        Ok(m)
    }

    fn check_d_squared(&self) -> Result<()> {
        for (i, d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(i + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::Verification(format!("d^2 != 0 from degree {i}")));
                }
            }
        }
        Ok(())
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn reduced(&self) -> Option<ReducedAt> {
        self.reduced
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced.is_some()
    }

    /// The root `r` of a reduced complex spanned by `X - r` at the basepoint.
    pub fn root(&self) -> Option<&Poly> {
        self.root.as_ref()
    }

    /// Homological degrees in increasing order.
    pub fn hom_degrees(&self) -> Vec<i32> {
        self.degrees.keys().copied().collect()
    }

    pub fn generators(&self, i: i32) -> &[Generator] {
        self.degrees.get(&i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn rank(&self, i: i32) -> usize {
        self.generators(i).len()
    }

    pub fn total_rank(&self) -> usize {
        self.degrees.values().map(|g| g.len()).sum()
    }

    /// Differential `C^i -> C^{i+1}`.
    pub fn differential(&self, i: i32) -> SparseMatrix {
        self.differentials
            .get(&i)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.rank(i + 1), self.rank(i)))
    }

    pub(crate) fn differential_ref(&self, i: i32) -> Option<&SparseMatrix> {
        self.differentials.get(&i)
    }

    pub fn resolution(&self, v: u64) -> &Resolution {
        &self.resolutions[v as usize]
    }

    pub fn hom_degree_of(&self, v: u64) -> i32 {
        v.count_ones() as i32 - self.diagram.n_minus() as i32
    }

    /// Index of a generator in its homological degree.
    pub fn index_of(&self, vertex: u64, labels: Labels) -> Option<usize> {
        self.index.get(&(vertex, labels)).copied()
    }

    /// Circle through the basepoint at a vertex.
    pub fn basepoint_circle(&self, v: u64) -> Result<usize> {
        let arc = match self.reduced {
            Some(r) => r.arc,
            None => self.diagram.basepoint_or_default()?,
        };
        Ok(self.resolution(v).circle_of[&arc])
    }

    /// The generator written in the full tensor basis of its vertex.
    pub fn generator_tensor(&self, g: &Generator) -> TensorVector {
        let len = self.resolution(g.vertex).circles.len();
        let mut t = TensorVector::basis(&self.theory, len, g.labels);
        if let (Some(_), Some(r)) = (self.reduced, &self.root) {
            let c = self.basepoint_circle(g.vertex).unwrap();
            t.add_term(g.labels & !(1 << c), -r);
        }
        t
    }

    /// Coordinates of a vertex tensor; for a reduced complex the tensor
    /// must lie in the subcomplex.
    pub fn chain_from_tensor(&self, v: u64, t: &TensorVector) -> Result<ChainVector> {
        let i = self.hom_degree_of(v);
        let mut out = ChainVector::zero(i);
        match (&self.reduced, &self.root) {
            (Some(_), Some(r)) => {
                let c = self.basepoint_circle(v)?;
                for (l, a) in t.terms() {
                    let (upper, lower) = (*l | (1 << c), *l & !(1 << c));
                    if t.coeff(lower) != -&(r * &t.coeff(upper)) {
                        return Err(Error::Verification(format!(
                            "tensor at vertex {v:#b} is not in the reduced subcomplex"
                        )));
                    }
                    if bit(*l, c) {
                        out.add_term(self.index[&(v, *l)], a.clone());
                    }
                }
            }
            _ => {
                for (l, a) in t.terms() {
                    out.add_term(self.index[&(v, *l)], a.clone());
                }
            }
        }
        Ok(out)
    }

    /// Splits a chain into per-vertex tensors.
    pub fn chain_to_tensors(&self, x: &ChainVector) -> BTreeMap<u64, TensorVector> {
        let gens = self.generators(x.degree);
        let mut out: BTreeMap<u64, TensorVector> = BTreeMap::new();
        for (k, c) in x.terms() {
            let g = &gens[*k];
            let t = self.generator_tensor(g).scale(c);
            let e = out
                .entry(g.vertex)
                .or_insert_with(|| TensorVector::zero(&self.theory, self.resolution(g.vertex).circles.len()));
            *e = e.try_add(&t).expect("same theory");
        }
        out
    }

    /// Applies the differential.
    pub fn d(&self, x: &ChainVector) -> ChainVector {
        let mut out = ChainVector::zero(x.degree + 1);
        if let Some(m) = self.differentials.get(&x.degree) {
            for (k, c) in x.terms() {
                for (i, a) in &m.columns[*k] {
                    out.add_term(*i, a * c);
                }
            }
        }
        out
    }

    pub fn is_cycle(&self, x: &ChainVector) -> bool {
        self.d(x).is_zero()
    }

    /// Quantum degree of a homogeneous chain, `None` for zero or mixed chains.
    pub fn q_degree(&self, x: &ChainVector) -> Option<i32> {
        let gens = self.generators(x.degree);
        let mut q = None;
        for (k, c) in x.terms() {
            let d = match self.theory.ring.homogeneity(c) {
                Homogeneity::Degree(d) => d,
                _ => return None,
            };
            let here = gens[*k].q + d;
            if q.is_some_and(|p| p != here) {
                return None;
            }
            q = Some(here);
        }
        q
    }

    /// Chain in the full complex `full` of a chain of this reduced complex.
    pub fn embed(&self, x: &ChainVector, full: &CubeComplex) -> Result<ChainVector> {
        if full.is_reduced() || full.theory.key() != self.theory.key() || full.diagram != self.diagram {
            return Err(Error::Invalid("target must be the unreduced complex of the same diagram".into()));
        }
        let mut out = ChainVector::zero(x.degree);
        for (v, t) in self.chain_to_tensors(x) {
            out = out.add(&full.chain_from_tensor(v, &t)?);
        }
        Ok(out)
    }

    /// Inverse of [`embed`](Self::embed): coordinates in this reduced
    /// complex of a chain of `full` lying in the subcomplex.
    pub fn restrict(&self, x: &ChainVector, full: &CubeComplex) -> Result<ChainVector> {
        let mut out = ChainVector::zero(x.degree);
        for (v, t) in full.chain_to_tensors(x) {
            out = out.add(&self.chain_from_tensor(v, &t)?);
        }
        Ok(out)
    }

    /// Label word of a generator, circles in order, `1`/`X` letters; the
    /// basepoint letter of a reduced complex is underlined as `_X`.
    pub fn generator_name(&self, g: &Generator) -> String {
        let r = self.resolution(g.vertex).circles.len();
        let bp = self.reduced.map(|_| self.basepoint_circle(g.vertex).unwrap());
        (0..r)
            .map(|c| match (Some(c) == bp, bit(g.labels, c)) {
                (true, _) => "_X",
                (false, true) => "X",
                (false, false) => "1",
            })
            .collect::<Vec<_>>()
            .join("")
    }

    /// A chain as `(coefficient) v<vertex>:<labels>` terms joined by `+`.
    pub fn render_chain(&self, x: &ChainVector) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let gens = self.generators(x.degree);
        x.terms()
            .map(|(k, c)| {
                let g = &gens[*k];
                format!("({}) v{}:{}", self.theory.display(c), g.vertex, self.generator_name(g))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Debug dump: generators with bigradings and differential triples.
    pub fn to_json(&self) -> serde_json::Value {
        let th = &self.theory;
        let degrees: Vec<serde_json::Value> = self
            .degrees
            .iter()
            .map(|(i, gens)| {
                let g: Vec<serde_json::Value> = gens
                    .iter()
                    .map(|g| {
                        serde_json::json!({
                            "vertex": g.vertex,
                            "labels": self.generator_name(g),
                            "q": g.q,
                        })
                    })
                    .collect();
                let d: Vec<serde_json::Value> = self
                    .differential(*i)
                    .triples()
                    .map(|(r, c, v)| serde_json::json!([r, c, th.display(v)]))
                    .collect();
                serde_json::json!({ "i": i, "generators": g, "differential": d })
            })
            .collect();
        serde_json::json!({
            "theory": th.to_string(),
            "diagram": self.diagram.to_pd(),
            "reduced": self.reduced,
            "degrees": degrees,
        })
    }
}
