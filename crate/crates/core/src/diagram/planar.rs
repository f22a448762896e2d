use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::link::{LinkDiagram, Occ};
use super::resolution::resolve;
use crate::{Error, Result};

/// Seifert circle with its position in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertCircle {
    pub arcs: Vec<u32>,
    /// Number of other circles enclosing this one.
    pub depth: u32,
    /// Counterclockwise in the chosen planar embedding.
    pub ccw: bool,
    /// Connected piece of the diagram the circle belongs to.
    pub piece: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub circles: Vec<SeifertCircle>,
    pub writhe: i32,
}

impl SeifertData {
    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }
}

/// Faces of one connected piece, traced with the face on the left of each dart.
struct Faces {
    /// Face on the left of each arc traversed along / against its orientation.
    left: BTreeMap<(u32, bool), usize>,
    count: usize,
}

fn trace_faces(d: &LinkDiagram, arcs: &BTreeSet<u32>) -> Faces {
    let cr = d.crossings();
    // dart (label, forward) arrives at the end (forward) or start (backward)
    let arrive = |l: u32, fwd: bool| -> Occ {
        let (s, e) = d.arc_ends(l).unwrap();
        if fwd {
            e
        } else {
            s
        }
    };
    let mut left = BTreeMap::new();
    let mut count = 0;
    for &l0 in arcs {
        for f0 in [true, false] {
            if left.contains_key(&(l0, f0)) {
                continue;
            }
            let (mut l, mut f) = (l0, f0);
            while !left.contains_key(&(l, f)) {
                left.insert((l, f), count);
                let (c, s) = arrive(l, f);
                let out = (c, (s + 3) % 4);
                let nl = cr[c][out.1 as usize];
                let (ns, _) = d.arc_ends(nl).unwrap();
                l = nl;
                f = ns == out;
            }
            count += 1;
        }
    }
    Faces { left, count }
}

/// Of the two faces beside `arc`, the one with more sides; ties go to the
/// left of the arc run from the lower to the higher crossing index. The
/// choice depends only on the planar embedding, not on orientations.
fn outer_face(d: &LinkDiagram, faces: &Faces, arc: u32) -> usize {
    let (l, r) = (faces.left[&(arc, true)], faces.left[&(arc, false)]);
    let size = |f: usize| faces.left.values().filter(|g| **g == f).count();
    let (s, e) = d.arc_ends(arc).unwrap();
    match size(l).cmp(&size(r)) {
        std::cmp::Ordering::Greater => l,
        std::cmp::Ordering::Less => r,
        std::cmp::Ordering::Equal if s.0 > e.0 => r,
        _ => l,
    }
}

/// Connected pieces of the diagram as sets of crossing arcs.
fn pieces(d: &LinkDiagram) -> Vec<BTreeSet<u32>> {
    let mut out: Vec<BTreeSet<u32>> = Vec::new();
    let mut assigned = BTreeSet::new();
    for comp in d.components() {
        let first = comp[0];
        if d.arc_ends(first).is_none() || assigned.contains(&first) {
            continue;
        }
        // flood over crossings
        let mut set = BTreeSet::new();
        let mut queue = VecDeque::from([first]);
        while let Some(a) = queue.pop_front() {
            if !set.insert(a) {
                continue;
            }
            let (s, e) = d.arc_ends(a).unwrap();
            for (c, _) in [s, e] {
                for l in d.crossings()[c] {
                    if !set.contains(&l) {
                        queue.push_back(l);
                    }
                }
            }
        }
        assigned.extend(set.iter().copied());
        out.push(set);
    }
    out
}

/// Seifert circles with nesting depth and winding sense, from the planar
/// embedding given by the PD rotation system.
///
/// Each connected piece is embedded with its outer face adjacent to its
/// smallest arc; pieces and loops sit side by side.
pub fn seifert_data(d: &LinkDiagram) -> Result<SeifertData> {
    if d.is_empty() {
        return Err(Error::Invalid("empty diagram".into()));
    }
    let res = resolve(d, d.oriented_vertex())?;
    let nc = res.circles.len();
    let mut depth = vec![0u32; nc];
    let mut ccw = vec![true; nc];
    let mut piece_of = vec![usize::MAX; nc];
    let pcs = pieces(d);
    for (p, arcs) in pcs.iter().enumerate() {
        let faces = trace_faces(d, arcs);
        let ncr: BTreeSet<usize> = arcs.iter().map(|a| d.arc_ends(*a).unwrap().0 .0).collect();
        if faces.count != ncr.len() + 2 {
            return Err(Error::Invalid(format!(
                "diagram is not planar: {} faces for {} crossings",
                faces.count,
                ncr.len()
            )));
        }
        let circles: BTreeSet<usize> = arcs.iter().map(|a| res.circle_of[a]).collect();
        for c in &circles {
            piece_of[*c] = p;
        }
        let cidx: BTreeMap<usize, usize> = circles.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        // inside[f][i]: face f lies inside the i-th circle of this piece
        let mut inside: Vec<Option<Vec<bool>>> = vec![None; faces.count];
        let outer = outer_face(d, &faces, *arcs.iter().next().unwrap());
        inside[outer] = Some(vec![false; circles.len()]);
        let mut queue = VecDeque::from([outer]);
        while let Some(f) = queue.pop_front() {
            let here = inside[f].clone().unwrap();
            for &a in arcs {
                let (lf, rf) = (faces.left[&(a, true)], faces.left[&(a, false)]);
                let g = if lf == f {
                    rf
                } else if rf == f {
                    lf
                } else {
                    continue;
                };
                let mut there = here.clone();
                let k = cidx[&res.circle_of[&a]];
                there[k] = !there[k];
                match &inside[g] {
                    None => {
                        inside[g] = Some(there);
                        queue.push_back(g);
                    }
                    Some(prev) if *prev != there => {
                        return Err(Error::Invalid("inconsistent circle nesting".into()));
                    }
                    _ => {}
                }
            }
        }
        for &c in &circles {
            let k = cidx[&c];
            let mut seen: Option<(u32, bool)> = None;
            for a in res.circles[c].iter().filter(|a| arcs.contains(a)) {
                let lf = inside[faces.left[&(*a, true)]].as_ref().unwrap();
                let rf = inside[faces.left[&(*a, false)]].as_ref().unwrap();
                let dep = (0..circles.len()).filter(|j| *j != k && lf[*j]).count() as u32;
                let orient = lf[k] && !rf[k];
                if lf[k] == rf[k] || seen.map(|s| s != (dep, orient)).unwrap_or(false) {
                    return Err(Error::Invalid("inconsistent Seifert circle geometry".into()));
                }
                seen = Some((dep, orient));
            }
            let (dep, orient) = seen.unwrap();
            depth[c] = dep;
            ccw[c] = orient;
        }
    }
    for lp in d.loops() {
        let c = res.circle_of[&lp.label];
        ccw[c] = lp.ccw;
        piece_of[c] = pcs.len() + c;
    }
    let circles = res
        .circles
        .iter()
        .enumerate()
        .map(|(i, arcs)| SeifertCircle { arcs: arcs.clone(), depth: depth[i], ccw: ccw[i], piece: piece_of[i] })
        .collect();
    Ok(SeifertData { circles, writhe: d.writhe() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot() {
        let s = seifert_data(&LinkDiagram::unknot()).unwrap();
        assert_eq!(s.num_circles(), 1);
        assert_eq!(s.circles[0].depth, 0);
        assert_eq!(s.writhe, 0);
    }

    #[test]
    fn trefoil_circle_parities_differ() {
        // adjacent Seifert circles of a closed 2-braid get different colours
        let d = LinkDiagram::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], vec![]).unwrap();
        let s = seifert_data(&d).unwrap();
        assert_eq!(s.num_circles(), 2);
        let parity = |c: &SeifertCircle| (c.depth + !c.ccw as u32) % 2;
        assert_ne!(parity(&s.circles[0]), parity(&s.circles[1]));
        let r = seifert_data(&d.reverse()).unwrap();
        assert!(r.circles.iter().zip(&s.circles).all(|(a, b)| a.ccw != b.ccw && a.depth == b.depth));
    }

    #[test]
    fn hopf() {
        let d = LinkDiagram::new(vec![[2, 4, 1, 3], [4, 2, 3, 1]], vec![]).unwrap();
        let s = seifert_data(&d).unwrap();
        assert_eq!(s.num_circles(), 2);
        assert_eq!(s.writhe, 2);
    }
}
