//! Test corpus: every prime knot with at most seven crossings, the unknot and
//! the Hopf link, each through several different diagrams.

use super::link::LinkDiagram;
use super::moves::{add_kink, braid_closure};
use super::pd::parse_pd;
use crate::Result;

/// A braid word per knot, with the strand count, the determinant and the
/// absolute value of the signature.
pub const KNOT_TABLE: &[(&str, usize, &[i32], u32, u32)] = &[
    ("3_1", 2, &[1, 1, 1], 3, 2),
    ("4_1", 3, &[1, -2, 1, -2], 5, 0),
    ("5_1", 2, &[1, 1, 1, 1, 1], 5, 4),
    ("5_2", 3, &[1, 1, 1, 2, -1, 2], 7, 2),
    ("6_1", 4, &[1, 1, 2, -1, -3, 2, -3], 9, 0),
    ("6_2", 3, &[1, 1, 1, -2, 1, -2], 11, 2),
    ("6_3", 3, &[1, 1, -2, 1, -2, -2], 13, 0),
    ("7_1", 2, &[1, 1, 1, 1, 1, 1, 1], 7, 6),
    ("7_2", 4, &[1, 1, 1, 2, -1, 2, 3, -2, 3], 11, 2),
    ("7_3", 3, &[1, 1, 1, 1, 1, 2, -1, 2], 13, 4),
    ("7_4", 4, &[1, 1, 2, -1, 2, 2, 3, -2, 3], 15, 2),
    ("7_5", 3, &[1, 1, 1, 1, 2, -1, 2, 2], 17, 4),
    ("7_6", 4, &[1, 1, -2, 1, 3, -2, 3], 19, 2),
    ("7_7", 4, &[1, -2, 1, -2, 3, -2, 3], 21, 0),
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// `<knot>/<construction>`.
    pub name: String,
    pub knot: String,
    pub diagram: LinkDiagram,
}

fn entry(knot: &str, how: &str, diagram: LinkDiagram) -> CorpusEntry {
    CorpusEntry { name: format!("{knot}/{how}"), knot: knot.into(), diagram }
}

/// The braid closure, a negative Markov stabilization of it and the closure
/// with a positive kink, for every knot of [`KNOT_TABLE`]; plus three unknot
/// diagrams and two Hopf link diagrams.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = vec![
        entry("0_1", "circle", LinkDiagram::unknot()),
        entry("0_1", "twist", braid_closure(2, &[1])?),
        entry("0_1", "two-twists", braid_closure(3, &[1, -2])?),
    ];
    for (name, strands, word, _, _) in KNOT_TABLE {
        let d = braid_closure(*strands, word)?;
        let mut stab = word.to_vec();
        stab.push(-(*strands as i32));
        out.push(entry(name, "braid", d.clone()));
        out.push(entry(name, "stabilized", braid_closure(strands + 1, &stab)?));
        out.push(entry(name, "kinked", add_kink(&d, 1, true, false)?));
    }
    out.push(entry("2_2_1", "pd", parse_pd("PD[X[2,4,1,3],X[4,2,3,1]]")?));
    out.push(entry("2_2_1", "braid", braid_closure(2, &[1, 1])?));
    Ok(out)
}

/// The corpus as a batch file, one `name code` line per diagram.
pub fn corpus_batch() -> Result<String> {
    let mut s = String::from("# prime knots up to seven crossings, unknot and Hopf link diagrams\n");
    for e in corpus()? {
        s.push_str(&format!("{} {}\n", e.name, e.diagram.to_pd()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_batch, seifert_data};

    #[test]
    fn shapes() {
        let c = corpus().unwrap();
        assert_eq!(c.len(), 3 + 3 * KNOT_TABLE.len() + 2);
        for e in &c {
            let want = if e.knot == "2_2_1" { 2 } else { 1 };
            assert_eq!(e.diagram.num_components(), want, "{}", e.name);
            if !e.diagram.is_empty() {
                seifert_data(&e.diagram).unwrap();
            }
        }
        for (name, _, word, _, _) in KNOT_TABLE {
            let n: usize = name[..1].parse().unwrap();
            assert!(word.len() >= n, "{name}");
        }
    }

    #[test]
    fn batch_round_trip() {
        let parsed = parse_batch(&corpus_batch().unwrap()).unwrap();
        let c = corpus().unwrap();
        assert_eq!(parsed.len(), c.len());
        for (p, e) in parsed.iter().zip(&c) {
            assert_eq!(p.name, e.name);
            assert_eq!(p.diagram.crossings(), e.diagram.crossings());
            assert_eq!(p.diagram.signs(), e.diagram.signs());
        }
    }
}
