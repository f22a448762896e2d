use std::collections::BTreeMap;

use super::link::LinkDiagram;
use crate::{Error, Result};

/// A complete resolution of the diagram at a cube vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub vertex: u64,
    /// Circles as sorted arc lists, ordered by their smallest arc.
    pub circles: Vec<Vec<u32>>,
    /// Circle index of every arc.
    pub circle_of: BTreeMap<u32, usize>,
    pub basepoint_circle: Option<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Arc pairs joined at a crossing by the 0- or 1-smoothing.
pub fn smoothing_pairs(x: &[u32; 4], one: bool) -> [(u32, u32); 2] {
    if one {
        [(x[0], x[3]), (x[1], x[2])]
    } else {
        [(x[0], x[1]), (x[2], x[3])]
    }
}

/// Resolves every crossing (bit `i` of `v` selects the 1-smoothing of crossing `i`).
pub fn resolve(d: &LinkDiagram, v: u64) -> Result<Resolution> {
    let n = d.num_crossings();
    if n < 64 && v >> n != 0 {
        return Err(Error::Invalid(format!("vertex {v:#b} has more than {n} coordinates")));
    }
    let labels = d.arc_labels();
    let idx: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let mut uf = UnionFind((0..labels.len()).collect());
    for (i, x) in d.crossings().iter().enumerate() {
        for (a, b) in smoothing_pairs(x, (v >> i) & 1 == 1) {
            uf.union(idx[&a], idx[&b]);
        }
    }
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(*l);
    }
    // roots are minimal indices, so this order is by smallest arc
    let circles: Vec<Vec<u32>> = groups.into_values().collect();
    let mut circle_of = BTreeMap::new();
    for (c, arcs) in circles.iter().enumerate() {
        for a in arcs {
            circle_of.insert(*a, c);
        }
    }
    let basepoint_circle = d.basepoint().map(|b| circle_of[&b]);
    Ok(Resolution { vertex: v, circles, circle_of, basepoint_circle })
}
