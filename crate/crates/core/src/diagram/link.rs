use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{Error, Result};

/// Position of an arc end: crossing index and slot `0..4` in the PD tuple.
pub type Occ = (usize, u8);

/// Oriented planar link diagram given by PD tuples.
///
/// Each tuple lists arc labels counterclockwise starting at the incoming
/// under-strand. Crossingless components are stored as loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    loops: Vec<Loop>,
    /// Orientation of each crossing arc: it leaves `start` and enters `end`.
    arcs: BTreeMap<u32, (Occ, Occ)>,
    signs: Vec<i8>,
    components: Vec<Vec<u32>>,
    basepoint: Option<u32>,
}

/// A crossingless circle with its planar winding sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Loop {
    pub label: u32,
    pub ccw: bool,
}

fn occurrences(crossings: &[[u32; 4]]) -> Result<BTreeMap<u32, Vec<Occ>>> {
    let mut occ: BTreeMap<u32, Vec<Occ>> = BTreeMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (s, l) in x.iter().enumerate() {
            occ.entry(*l).or_default().push((c, s as u8));
        }
    }
    for (l, o) in &occ {
        if o.len() != 2 {
            return Err(Error::Parse(format!("arc label {l} occurs {} times, expected 2", o.len())));
        }
    }
    Ok(occ)
}

fn other(occ: &[Occ], o: Occ) -> Occ {
    if occ[0] == o {
        occ[1]
    } else {
        occ[0]
    }
}

impl LinkDiagram {
    /// Builds a diagram, inferring orientations from the under-strands.
    pub fn new(crossings: Vec<[u32; 4]>, loops: Vec<u32>) -> Result<Self> {
        let occ = occurrences(&crossings)?;
        let mut dirs = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for &start_label in occ.keys() {
            if seen.contains(&start_label) {
                continue;
            }
            // walk the component, entering `start_label` at its first occurrence
            let o = &occ[&start_label];
            let mut walk = Vec::new();
            let (mut label, mut end) = (start_label, o[1]);
            loop {
                let start = other(&occ[&label], end);
                walk.push((label, start, end));
                seen.insert(label);
                let (c, s) = end;
                let next_start = (c, (s + 2) % 4);
                let next = crossings[c][next_start.1 as usize];
                end = other(&occ[&next], next_start);
                label = next;
                if label == start_label {
                    break;
                }
                if walk.len() > 2 * crossings.len() + 1 {
                    return Err(Error::Parse("arc labels do not close up into components".into()));
                }
            }
            let (mut fwd, mut bwd) = (0, 0);
            for (_, start, end) in &walk {
                for (o, is_end) in [(start, false), (end, true)] {
                    match o.1 {
                        0 => *if is_end { &mut fwd } else { &mut bwd } += 1,
                        2 => *if is_end { &mut bwd } else { &mut fwd } += 1,
                        _ => {}
                    }
                }
            }
            let reverse = if fwd > 0 && bwd > 0 {
                return Err(Error::Parse(format!(
                    "inconsistent orientation on the component through arc {start_label}"
                )));
            } else if fwd > 0 {
                false
            } else if bwd > 0 {
                true
            } else {
                // no under-crossings: orient so that labels increase where possible
                let (_, _, end) = walk[0];
                let next = crossings[end.0][((end.1 + 2) % 4) as usize];
                next != start_label + 1 && walk.iter().any(|(l, _, _)| *l == start_label + 1)
            };
            for (l, s, e) in walk {
                dirs.insert(l, if reverse { (e, s) } else { (s, e) });
            }
        }
        let loops = loops.into_iter().map(|label| Loop { label, ccw: true }).collect();
        Self::with_orientation(crossings, loops, dirs)
    }

    /// Builds a diagram from explicitly oriented arcs.
    pub fn with_orientation(
        crossings: Vec<[u32; 4]>,
        loops: Vec<Loop>,
        arcs: BTreeMap<u32, (Occ, Occ)>,
    ) -> Result<Self> {
        let occ = occurrences(&crossings)?;
        for l in &loops {
            if occ.contains_key(&l.label) {
                return Err(Error::Parse(format!("loop label {} also used by a crossing", l.label)));
            }
        }
        let mut labels: BTreeSet<u32> = loops.iter().map(|l| l.label).collect();
        if labels.len() != loops.len() {
            return Err(Error::Parse("repeated loop label".into()));
        }
        labels.extend(occ.keys());
        let mut role = vec![[None::<bool>; 4]; crossings.len()];
        for (l, o) in &occ {
            let (s, e) = arcs.get(l).ok_or_else(|| Error::Invalid(format!("arc {l} has no orientation")))?;
            let mut pair = [*s, *e];
            pair.sort();
            if pair.as_slice() != o.as_slice() {
                return Err(Error::Invalid(format!("orientation of arc {l} does not match its ends")));
            }
            role[s.0][s.1 as usize] = Some(false);
            role[e.0][e.1 as usize] = Some(true);
        }
        let mut signs = Vec::with_capacity(crossings.len());
        for (c, r) in role.iter().enumerate() {
            let r = r.map(|x| x.unwrap());
            if !(r[0] && !r[2]) || r[1] == r[3] {
                return Err(Error::Parse(format!("inconsistent orientation at crossing {}", c + 1)));
            }
            // the over strand entering at slot 3 makes a positive crossing
            signs.push(if r[3] { 1 } else { -1 });
        }
        let mut components = Vec::new();
        let mut seen = BTreeSet::new();
        for &l in occ.keys() {
            if seen.contains(&l) {
                continue;
            }
            let mut comp = vec![];
            let mut cur = l;
            loop {
                comp.push(cur);
                seen.insert(cur);
                let (c, s) = arcs[&cur].1;
                cur = crossings[c][((s + 2) % 4) as usize];
                if cur == l {
                    break;
                }
            }
            components.push(comp);
        }
        for lp in &loops {
            components.push(vec![lp.label]);
        }
        components.sort_by_key(|c| *c.iter().min().unwrap());
        Ok(LinkDiagram { crossings, loops, arcs, signs, components, basepoint: None })
    }

    pub fn unknot() -> Self {
        LinkDiagram::new(vec![], vec![1]).unwrap()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.loops.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|s| **s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|s| **s < 0).count()
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|s| *s as i32).sum()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Arcs of each component in traversal order.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_of(&self, arc: u32) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&arc))
    }

    pub fn arc_labels(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.arcs.keys().copied().chain(self.loops.iter().map(|l| l.label)).collect();
        v.sort();
        v
    }

    /// Ends `(start, end)` of an oriented crossing arc.
    pub fn arc_ends(&self, arc: u32) -> Option<(Occ, Occ)> {
        self.arcs.get(&arc).copied()
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    /// The basepoint, defaulting to the smallest arc label.
    pub fn basepoint_or_default(&self) -> Result<u32> {
        match self.basepoint {
            Some(b) => Ok(b),
            None => self.arc_labels().first().copied().ok_or_else(|| Error::Invalid("empty diagram".into())),
        }
    }

    pub fn with_basepoint(mut self, arc: u32) -> Result<Self> {
        if !self.arc_labels().contains(&arc) {
            return Err(Error::Invalid(format!("basepoint {arc} is not an arc of the diagram")));
        }
        self.basepoint = Some(arc);
        Ok(self)
    }

    /// Vertex of the oriented (Seifert) resolution: 0 at positive crossings.
    pub fn oriented_vertex(&self) -> u64 {
        self.signs.iter().enumerate().filter(|(_, s)| **s < 0).map(|(i, _)| 1u64 << i).sum()
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let mut crossings = Vec::with_capacity(self.crossings.len());
        let mut shift = Vec::with_capacity(self.crossings.len());
        for (x, s) in self.crossings.iter().zip(&self.signs) {
            let [a, b, c, d] = *x;
            if *s > 0 {
                crossings.push([d, a, b, c]);
                shift.push(1u8);
            } else {
                crossings.push([b, c, d, a]);
                shift.push(3u8);
            }
        }
        let mv = |(c, s): Occ| (c, (s + shift[c]) % 4);
        let arcs = self.arcs.iter().map(|(l, (s, e))| (*l, (mv(*s), mv(*e)))).collect();
        let mut out = LinkDiagram::with_orientation(crossings, self.loops.clone(), arcs).expect("mirror is valid");
        out.basepoint = self.basepoint;
        out
    }

    /// Orientation reversal of every component.
    pub fn reverse(&self) -> LinkDiagram {
        let crossings = self.crossings.iter().map(|[a, b, c, d]| [*c, *d, *a, *b]).collect();
        let mv = |(c, s): Occ| (c, (s + 2) % 4);
        let arcs = self.arcs.iter().map(|(l, (s, e))| (*l, (mv(*e), mv(*s)))).collect();
        let loops = self.loops.iter().map(|l| Loop { label: l.label, ccw: !l.ccw }).collect();
        let mut out = LinkDiagram::with_orientation(crossings, loops, arcs).expect("reverse is valid");
        out.basepoint = self.basepoint;
        out
    }

    /// Renames arcs through `f`, which must be injective.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<LinkDiagram> {
        let crossings = self.crossings.iter().map(|x| x.map(&f)).collect();
        let loops = self.loops.iter().map(|l| Loop { label: f(l.label), ccw: l.ccw }).collect();
        let arcs: BTreeMap<u32, (Occ, Occ)> = self.arcs.iter().map(|(l, e)| (f(*l), *e)).collect();
        if arcs.len() != self.arcs.len() {
            return Err(Error::Invalid("relabelling is not injective".into()));
        }
        let mut out = LinkDiagram::with_orientation(crossings, loops, arcs)?;
        out.basepoint = self.basepoint.map(f);
        Ok(out)
    }

    pub fn to_pd(&self) -> String {
        let mut parts: Vec<String> =
            self.crossings.iter().map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]")).collect();
        parts.extend(self.loops.iter().map(|l| format!("Loop[{}]", l.label)));
        format!("PD[{}]", parts.join(","))
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], vec![]).unwrap()
    }

    #[test]
    fn trefoil_signs() {
        // the over strand at X[1,4,2,5] runs 4 -> 5, i.e. from slot b to slot d
        let d = trefoil();
        assert_eq!(d.signs(), &[-1, -1, -1]);
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.components()[0], vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn hopf_signs() {
        let d = LinkDiagram::new(vec![[2, 4, 1, 3], [4, 2, 3, 1]], vec![]).unwrap();
        assert_eq!(d.writhe(), 2);
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.reverse().writhe(), 2);
        assert_eq!(d.mirror().writhe(), -2);
    }

    #[test]
    fn mirror_and_reverse_are_involutions() {
        let d = trefoil();
        assert_eq!(d.mirror().writhe(), 3);
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.reverse().reverse(), d);
    }

    #[test]
    fn label_errors() {
        assert!(LinkDiagram::new(vec![[1, 2, 3, 4]], vec![]).is_err());
        assert!(LinkDiagram::new(vec![[1, 2, 3, 4], [4, 3, 2, 2]], vec![]).is_err());
    }

    #[test]
    fn inconsistent_under_strands() {
        // both crossings claim arc 1 as incoming under-strand
        let r = LinkDiagram::new(vec![[1, 3, 2, 4], [1, 4, 2, 3]], vec![]);
        assert!(r.is_err());
    }
}
