use crate::diagram::{seifert_data, LinkDiagram, SeifertData};
use crate::Result;

/// Colouring of the Seifert circles by the two roots of `X^2 - hX - t`.
///
/// `labels[c]` is `false` when circle `c` carries the first root factor
/// (`X`, `X_1`, `X + sqrt_t`) and `true` for the second (`Y`, `X_2`,
/// `X - sqrt_t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeLabeling {
    pub vertex: u64,
    pub seifert: SeifertData,
    pub labels: Vec<bool>,
    /// Built for the reversed orientation, which swaps every label.
    pub reversed: bool,
}

impl LeeLabeling {
    /// A circle gets the second label when its depth plus its clockwise
    /// indicator is odd.
    pub fn new(d: &LinkDiagram) -> Result<Self> {
        let seifert = seifert_data(d)?;
        let labels = seifert.circles.iter().map(|c| (c.depth + (!c.ccw) as u32) % 2 == 1).collect();
        Ok(LeeLabeling { vertex: d.oriented_vertex(), seifert, labels, reversed: false })
    }

    pub fn reversed(&self) -> Self {
        LeeLabeling {
            vertex: self.vertex,
            seifert: self.seifert.clone(),
            labels: self.labels.iter().map(|l| !l).collect(),
            reversed: !self.reversed,
        }
    }

    /// Label of the Seifert circle through `arc`.
    pub fn label_of_arc(&self, arc: u32) -> Option<bool> {
        self.seifert.circles.iter().position(|c| c.arcs.contains(&arc)).map(|i| self.labels[i])
    }

    pub fn num_circles(&self) -> usize {
        self.labels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_swaps() {
        let d = LinkDiagram::new(vec![[2, 4, 1, 3], [4, 2, 3, 1]], vec![]).unwrap();
        let a = LeeLabeling::new(&d).unwrap();
        assert_ne!(a.labels[0], a.labels[1]);
        let b = LeeLabeling::new(&d.reverse()).unwrap();
        assert_eq!(b.labels, a.reversed().labels);
    }
}
