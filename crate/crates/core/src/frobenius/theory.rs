use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{BaseRing, GroundRing, Poly};
use crate::{Error, Result};

/// The Frobenius theories `A = R[X]/(X^2 - hX - t)` handled here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoryKind {
    /// Universal theory over `Z[h, t]`.
    U2,
    /// `t = 0`, over `Z[h]`.
    U1,
    /// Split theory over `Z[a1, a2]` with `h = a1 + a2`, `t = -a1 a2`.
    U1xU1,
    /// `h = 0`, over `Z[t]`.
    SU2,
    /// `h = 0` with `t` a square, over `Z[sqrt_t]`.
    SU2Sqrt,
    /// Ordinary Khovanov theory, `h = t = 0`.
    Plain,
}

impl TheoryKind {
    pub const ALL: [TheoryKind; 6] = [
        TheoryKind::U2,
        TheoryKind::U1,
        TheoryKind::U1xU1,
        TheoryKind::SU2,
        TheoryKind::SU2Sqrt,
        TheoryKind::Plain,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(['(', ')', '-', ' '], "").as_str() {
            "u2" => Ok(TheoryKind::U2),
            "u1" => Ok(TheoryKind::U1),
            "u1xu1" | "u1u1" => Ok(TheoryKind::U1xU1),
            "su2" => Ok(TheoryKind::SU2),
            "su2sqrt" | "su2_sqrt" | "su2sqrtt" | "su2_sqrt_t" => Ok(TheoryKind::SU2Sqrt),
            "plain" | "kh" | "khovanov" | "nonequivariant" => Ok(TheoryKind::Plain),
            _ => Err(Error::Parse(format!("unknown theory '{s}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoryKind::U2 => "U2",
            TheoryKind::U1 => "U1",
            TheoryKind::U1xU1 => "U1xU1",
            TheoryKind::SU2 => "SU2",
            TheoryKind::SU2Sqrt => "SU2_sqrt",
            TheoryKind::Plain => "plain",
        }
    }
}

impl fmt::Display for TheoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Identity of a theory over a base ring; values from different keys never mix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TheoryKey {
    pub kind: TheoryKind,
    pub base: BaseRing,
}

impl fmt::Display for TheoryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.kind, self.base)
    }
}

/// A concrete Frobenius theory: ground ring plus the values of `h` and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub kind: TheoryKind,
    pub ring: GroundRing,
    pub h: Poly,
    pub t: Poly,
}

impl Theory {
    pub fn new(kind: TheoryKind, base: BaseRing) -> Result<Self> {
        let vars: &[(&str, i32)] = match kind {
            TheoryKind::U2 => &[("h", 2), ("t", 4)],
            TheoryKind::U1 => &[("h", 2)],
            TheoryKind::U1xU1 => &[("a1", 2), ("a2", 2)],
            TheoryKind::SU2 => &[("t", 4)],
            TheoryKind::SU2Sqrt => &[("sqrt_t", 2)],
            TheoryKind::Plain => &[],
        };
        let ring = GroundRing::new(base, vars)?;
        let (h, t) = match kind {
            TheoryKind::U2 => (ring.var("h"), ring.var("t")),
            TheoryKind::U1 => (ring.var("h"), ring.zero()),
            TheoryKind::U1xU1 => {
                let (a, b) = (ring.var("a1"), ring.var("a2"));
                (&a + &b, -&(&a * &b))
            }
            TheoryKind::SU2 => (ring.zero(), ring.var("t")),
            TheoryKind::SU2Sqrt => {
                let s = ring.var("sqrt_t");
                (ring.zero(), &s * &s)
            }
            TheoryKind::Plain => (ring.zero(), ring.zero()),
        };
        Ok(Theory { kind, ring, h, t })
    }

    pub fn key(&self) -> TheoryKey {
        TheoryKey { kind: self.kind, base: self.ring.base }
    }

    pub fn base(&self) -> BaseRing {
        self.ring.base
    }

    pub fn check_key(&self, key: TheoryKey) -> Result<()> {
        if key == self.key() {
            Ok(())
        } else {
            Err(Error::TheoryMismatch(format!("value lives in {key}, expected {}", self.key())))
        }
    }

    /// Basis products: `1*1 = 1`, `1*X = X`, `X*X = hX + t`. `true` stands for `X`.
    pub fn mul_basis(&self, a: bool, b: bool) -> Vec<(bool, Poly)> {
        match (a, b) {
            (false, false) => vec![(false, self.ring.one())],
            (true, false) | (false, true) => vec![(true, self.ring.one())],
            (true, true) => vec![(true, self.h.clone()), (false, self.t.clone())],
        }
    }

    /// `Δ(1) = 1⊗X + X⊗1 - h 1⊗1`, `Δ(X) = X⊗X + t 1⊗1`.
    pub fn comul_basis(&self, a: bool) -> Vec<((bool, bool), Poly)> {
        if a {
            vec![((true, true), self.ring.one()), ((false, false), self.t.clone())]
        } else {
            vec![
                ((false, true), self.ring.one()),
                ((true, false), self.ring.one()),
                ((false, false), -&self.h),
            ]
        }
    }

    /// `ε(1) = 0`, `ε(X) = 1`.
    pub fn counit_basis(&self, a: bool) -> Poly {
        if a {
            self.ring.one()
        } else {
            self.ring.zero()
        }
    }

    /// The two roots `(r1, r2)` of `X^2 - hX - t` when they lie in the ground
    /// ring; the reduced complexes are spanned by `(X - r1)` and `(X - r2)`.
    pub fn roots(&self) -> Option<(Poly, Poly)> {
        let r = &self.ring;
        match self.kind {
            TheoryKind::U1 => Some((r.zero(), r.var("h"))),
            TheoryKind::U1xU1 => Some((r.var("a1"), r.var("a2"))),
            TheoryKind::SU2Sqrt => {
                let s = r.var("sqrt_t");
                Some((-&s, s))
            }
            TheoryKind::Plain => Some((r.zero(), r.zero())),
            TheoryKind::U2 | TheoryKind::SU2 => None,
        }
    }

    /// Degree of the single ring variable, if the ring is `F[v]`.
    pub fn single_variable_degree(&self) -> Option<i32> {
        match self.ring.vars.as_slice() {
            [v] => Some(v.degree),
            _ => None,
        }
    }

    pub fn display(&self, p: &Poly) -> String {
        self.ring.display(p)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.kind, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_holds_for_roots() {
        for kind in TheoryKind::ALL {
            let th = Theory::new(kind, BaseRing::Integers).unwrap();
            if let Some((a, b)) = th.roots() {
                assert_eq!(&a + &b, th.h, "{kind}");
                assert_eq!(-&(&a * &b), th.t, "{kind}");
            }
        }
    }

    #[test]
    fn parse_names() {
        for kind in TheoryKind::ALL {
            assert_eq!(TheoryKind::parse(kind.name()).unwrap(), kind);
        }
        assert!(TheoryKind::parse("u3").is_err());
    }
}
