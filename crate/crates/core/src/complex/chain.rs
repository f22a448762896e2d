use std::collections::BTreeMap;

use crate::coeff::Poly;
use crate::Result;

/// Homogeneous-in-homological-degree chain: coefficients on the generators
/// of one degree of a [`CubeComplex`](super::CubeComplex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub degree: i32,
    terms: BTreeMap<usize, Poly>,
}

impl ChainVector {
    pub fn zero(degree: i32) -> Self {
        ChainVector { degree, terms: BTreeMap::new() }
    }

    pub fn basis(degree: i32, k: usize, one: Poly) -> Self {
        let mut v = Self::zero(degree);
        v.add_term(k, one);
        v
    }

    pub fn from_terms(degree: i32, terms: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        let mut v = Self::zero(degree);
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: usize, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                let s = &*e + &c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: usize) -> Poly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_degree(&self, o: &ChainVector) {
        assert_eq!(self.degree, o.degree, "chains of different homological degree");
    }

    pub fn add(&self, o: &ChainVector) -> ChainVector {
        self.same_degree(o);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ChainVector) -> ChainVector {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ChainVector {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, r: &Poly) -> ChainVector {
        self.map_coeffs(|c| c * r)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> ChainVector {
        ChainVector::from_terms(self.degree, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<ChainVector> {
        let mut out = ChainVector::zero(self.degree);
        for (k, c) in &self.terms {
            out.add_term(*k, f(c)?);
        }
        Ok(out)
    }
}
