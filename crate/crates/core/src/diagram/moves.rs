//! Diagram constructions used to produce many diagrams of the same link:
//! label rotations, Reidemeister I kinks and braid closures.

use std::collections::BTreeMap;

use super::link::{LinkDiagram, Occ};
use crate::{Error, Result};

/// Rotates the sorted list of arc labels by `k` positions. This changes
/// which arc is smallest, and with it the chosen outer face.
pub fn rotate_labels(d: &LinkDiagram, k: usize) -> Result<LinkDiagram> {
    let labels = d.arc_labels();
    if labels.is_empty() {
        return Ok(d.clone());
    }
    let n = labels.len();
    let map: BTreeMap<u32, u32> = labels.iter().enumerate().map(|(i, l)| (*l, labels[(i + k) % n])).collect();
    d.relabel(|l| map[&l])
}

/// Inserts a Reidemeister I kink on crossing arc `arc`.
///
/// `positive` selects the sign of the new crossing and `under_first`
/// whether the strand first passes under it; together they cover the four
/// planar kink shapes.
pub fn add_kink(d: &LinkDiagram, arc: u32, positive: bool, under_first: bool) -> Result<LinkDiagram> {
    let (start, end) = d
        .arc_ends(arc)
        .ok_or_else(|| Error::Invalid(format!("arc {arc} is not a crossing arc")))?;
    let max = d.arc_labels().into_iter().max().unwrap_or(0);
    let (loop_arc, out_arc) = (max + 1, max + 2);
    let mut crossings: Vec<[u32; 4]> = d.crossings().to_vec();
    crossings[end.0][end.1 as usize] = out_arc;
    let k = crossings.len();
    // slot layout of the kink crossing for the incoming arc A, loop B, outgoing C
    let (tuple, a_in, b_out, b_in, c_out) = match (under_first, positive) {
        (true, false) => ([arc, loop_arc, loop_arc, out_arc], 0, 2, 1, 3),
        (true, true) => ([arc, out_arc, loop_arc, loop_arc], 0, 2, 3, 1),
        (false, false) => ([loop_arc, arc, out_arc, loop_arc], 1, 3, 0, 2),
        (false, true) => ([loop_arc, loop_arc, out_arc, arc], 3, 1, 0, 2),
    };
    crossings.push(tuple);
    let mut arcs: BTreeMap<u32, (Occ, Occ)> = BTreeMap::new();
    for l in d.arc_labels() {
        if let Some(e) = d.arc_ends(l) {
            arcs.insert(l, e);
        }
    }
    arcs.insert(arc, (start, (k, a_in)));
    arcs.insert(loop_arc, ((k, b_out), (k, b_in)));
    arcs.insert(out_arc, ((k, c_out), end));
    let mut out = LinkDiagram::with_orientation(crossings, d.loops().to_vec(), arcs)?;
    if let Some(b) = d.basepoint() {
        out = out.with_basepoint(b)?;
    }
    Ok(out)
}

/// Closure of a braid on `strands` strands. Generator `i` (1-based) crosses
/// strands `i` and `i + 1` positively, `-i` negatively.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram> {
    if strands == 0 {
        return Err(Error::Invalid("a braid needs at least one strand".into()));
    }
    let mut pos: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings: Vec<[u32; 4]> = Vec::new();
    let mut ends: BTreeMap<u32, (Option<Occ>, Option<Occ>)> = BTreeMap::new();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(Error::Invalid(format!("generator {g} out of range for {strands} strands")));
        }
        let (a, b) = (pos[i - 1], pos[i]);
        let (e, f) = (next, next + 1);
        next += 2;
        let c = crossings.len();
        // a enters bottom-left and leaves top-right as e; b enters bottom-right and leaves top-left as f
        let (tuple, sa, sb, se, sf) = if g > 0 { ([b, e, f, a], 3, 0, 1, 2) } else { ([a, b, e, f], 0, 1, 2, 3) };
        crossings.push(tuple);
        ends.entry(a).or_default().1 = Some((c, sa));
        ends.entry(b).or_default().1 = Some((c, sb));
        ends.entry(e).or_default().0 = Some((c, se));
        ends.entry(f).or_default().0 = Some((c, sf));
        pos[i - 1] = f;
        pos[i] = e;
    }
    // close up: the top arc at each position continues as the bottom arc there
    let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
    let mut loops = Vec::new();
    for (p, top) in pos.iter().enumerate() {
        let bottom = p as u32 + 1;
        if *top == bottom {
            loops.push(bottom);
        } else {
            rename.insert(*top, bottom);
        }
    }
    let ren = |l: u32| *rename.get(&l).unwrap_or(&l);
    let crossings: Vec<[u32; 4]> = crossings.iter().map(|x| x.map(ren)).collect();
    let mut arcs: BTreeMap<u32, (Occ, Occ)> = BTreeMap::new();
    for (l, (s, e)) in &ends {
        let entry = arcs.entry(ren(*l)).or_insert(((usize::MAX, 0), (usize::MAX, 0)));
        if let Some(s) = s {
            entry.0 = *s;
        }
        if let Some(e) = e {
            entry.1 = *e;
        }
    }
    // compact labels to 1..
    let mut all: Vec<u32> = arcs.keys().copied().chain(loops.iter().copied()).collect();
    all.sort();
    let compact: BTreeMap<u32, u32> = all.iter().enumerate().map(|(i, l)| (*l, i as u32 + 1)).collect();
    let crossings = crossings.iter().map(|x| x.map(|l| compact[&l])).collect();
    let arcs = arcs.into_iter().map(|(l, e)| (compact[&l], e)).collect();
    let loops = loops.into_iter().map(|l| super::link::Loop { label: compact[&l], ccw: true }).collect();
    LinkDiagram::with_orientation(crossings, loops, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, seifert_data};

    #[test]
    fn kinks_change_writhe() {
        let d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap();
        for (pos, under) in [(true, true), (true, false), (false, true), (false, false)] {
            let k = add_kink(&d, 2, pos, under).unwrap();
            assert_eq!(k.num_crossings(), 4);
            assert_eq!(k.writhe(), d.writhe() + if pos { 1 } else { -1 });
            assert_eq!(k.num_components(), 1);
            seifert_data(&k).unwrap();
        }
    }

    #[test]
    fn braid_trefoil_is_positive() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.writhe(), 3);
        assert_eq!(d.num_components(), 1);
        assert_eq!(seifert_data(&d).unwrap().num_circles(), 2);
        let hopf = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(hopf.num_components(), 2);
        let split = braid_closure(3, &[1]).unwrap();
        assert_eq!(split.loops().len(), 1);
    }

    #[test]
    fn rotation_keeps_signs() {
        let d = parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap();
        for k in 0..8 {
            let r = rotate_labels(&d, k).unwrap();
            assert_eq!(r.signs(), d.signs());
        }
    }
}
