use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::coeff::{GroundRing, Poly};

/// One cyclic summand `q^j R/(order)` in homological degree `i`; the order
/// is zero for a free summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub i: i32,
    pub q: i32,
    pub order: Poly,
}

impl Summand {
    pub fn is_free(&self) -> bool {
        self.order.is_zero()
    }
}

/// Finitely generated bigraded module as a sorted list of cyclic summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub ring: GroundRing,
    pub summands: Vec<Summand>,
}

#[derive(Serialize)]
struct SummandRecord {
    i: i32,
    q: i32,
    order: String,
}

impl GradedModule {
    /// Sorts by `(i, q)`, free summands first, then by the order's norm.
    pub fn new(ring: GroundRing, mut summands: Vec<Summand>) -> Self {
        summands.sort_by(|a, b| cmp_summands(&ring, a, b));
        GradedModule { ring, summands }
    }

    pub fn free_rank(&self) -> usize {
        self.summands.iter().filter(|s| s.is_free()).count()
    }

    pub fn free_part(&self) -> Vec<(i32, i32)> {
        self.summands.iter().filter(|s| s.is_free()).map(|s| (s.i, s.q)).collect()
    }

    pub fn torsion_part(&self) -> Vec<(i32, i32, Poly)> {
        self.summands.iter().filter(|s| !s.is_free()).map(|s| (s.i, s.q, s.order.clone())).collect()
    }

    /// `(i, q, order)` triples, with the order rendered in the ring.
    pub fn records(&self) -> Vec<(i32, i32, String)> {
        self.summands.iter().map(|s| (s.i, s.q, self.order_name(s))).collect()
    }

    fn order_name(&self, s: &Summand) -> String {
        if s.is_free() {
            "0".into()
        } else {
            self.ring.display(&s.order)
        }
    }

    /// Text table in the usual layout: one row per quantum degree (highest
    /// first), one column per homological degree.
    pub fn table(&self) -> String {
        if self.summands.is_empty() {
            return "0\n".into();
        }
        let mut cells: BTreeMap<(i32, i32), Vec<String>> = BTreeMap::new();
        let sym = self.ring_name();
        for s in &self.summands {
            let c = if s.is_free() { sym.clone() } else { format!("{sym}/({})", self.ring.display(&s.order)) };
            cells.entry((s.q, s.i)).or_default().push(c);
        }
        let is: Vec<i32> = {
            let lo = self.summands.iter().map(|s| s.i).min().unwrap();
            let hi = self.summands.iter().map(|s| s.i).max().unwrap();
            (lo..=hi).collect()
        };
        let qs: Vec<i32> = {
            let mut v: Vec<i32> = self.summands.iter().map(|s| s.q).collect();
            v.sort();
            v.dedup();
            v.reverse();
            v
        };
        let text = |q: i32, i: i32| {
            cells.get(&(q, i)).map(|v| collapse(v)).unwrap_or_default()
        };
        let mut width = 4;
        for q in &qs {
            for i in &is {
                width = width.max(text(*q, *i).chars().count());
            }
        }
        let mut out = String::new();
        let _ = write!(out, "{:>5} |", "q\\i");
        for i in &is {
            let _ = write!(out, " {:^width$}", i);
        }
        out.push('\n');
        let _ = writeln!(out, "{}", "-".repeat(7 + is.len() * (width + 1)));
        for q in &qs {
            let _ = write!(out, "{:>5} |", q);
            for i in &is {
                let _ = write!(out, " {:^width$}", text(*q, *i));
            }
            out.push('\n');
        }
        out
    }

    fn ring_name(&self) -> String {
        let names = self.ring.names();
        if names.is_empty() {
            self.ring.base.symbol()
        } else {
            format!("{}[{}]", self.ring.base.symbol(), names.join(","))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let recs: Vec<SummandRecord> =
            self.summands.iter().map(|s| SummandRecord { i: s.i, q: s.q, order: self.order_name(s) }).collect();
        serde_json::json!({ "ring": self.ring.to_string(), "summands": recs })
    }
}

pub(crate) fn cmp_summands(ring: &GroundRing, a: &Summand, b: &Summand) -> std::cmp::Ordering {
    let key = |s: &Summand| (s.i, s.q, !s.is_free(), ring.norm(&s.order).unwrap_or_default());
    key(a).cmp(&key(b)).then_with(|| ring.display(&a.order).cmp(&ring.display(&b.order)))
}

/// Joins equal entries as `R^2` and distinct ones with `+`.
fn collapse(v: &[String]) -> String {
    let mut counts: Vec<(String, usize)> = Vec::new();
    for s in v {
        match counts.iter_mut().find(|(t, _)| t == s) {
            Some(e) => e.1 += 1,
            None => counts.push((s.clone(), 1)),
        }
    }
    counts
        .into_iter()
        .map(|(s, n)| if n == 1 { s } else { format!("({s})^{n}") })
        .collect::<Vec<_>>()
        .join("+")
}
