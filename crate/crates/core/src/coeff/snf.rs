use num_bigint::BigUint;

use super::matrix::{Matrix, SparseMatrix};
use super::poly::{GroundRing, Homogeneity, Poly};
use crate::{Error, Result};

/// Smith normal form `S = P * M * Q` with both inverses.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: Matrix,
    pub p: Matrix,
    pub p_inv: Matrix,
    pub q: Matrix,
    pub q_inv: Matrix,
    /// Normalized nonzero diagonal entries, each dividing the next.
    pub factors: Vec<Poly>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Work<'a> {
    ring: &'a GroundRing,
    m: Matrix,
    p: Matrix,
    p_inv: Matrix,
    q: Matrix,
    q_inv: Matrix,
    degrees: Option<(Vec<i32>, Vec<i32>)>,
}

impl Work<'_> {
    fn check_factor(&self, c: &Poly, want: i32) -> Result<()> {
        match self.ring.homogeneity(c) {
            Homogeneity::Zero => Ok(()),
            Homogeneity::Degree(d) if d == want => Ok(()),
            _ => Err(Error::Verification(format!(
                "inhomogeneous elimination step by {}",
                self.ring.display(c)
            ))),
        }
    }

    // row[dst] += c * row[src]
    fn row_op(&mut self, dst: usize, src: usize, c: &Poly) -> Result<()> {
        if let Some((rd, _)) = &self.degrees {
            self.check_factor(c, rd[src] - rd[dst])?;
        }
        self.m.add_row(dst, src, c);
        self.p.add_row(dst, src, c);
        self.p_inv.add_col(src, dst, &-c);
        Ok(())
    }

    fn col_op(&mut self, dst: usize, src: usize, c: &Poly) -> Result<()> {
        if let Some((_, cd)) = &self.degrees {
            self.check_factor(c, cd[dst] - cd[src])?;
        }
        self.m.add_col(dst, src, c);
        self.q.add_col(dst, src, c);
        self.q_inv.add_row(src, dst, &-c);
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.p.swap_rows(a, b);
        self.p_inv.swap_cols(a, b);
        if let Some((rd, _)) = &mut self.degrees {
            rd.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.q_inv.swap_rows(a, b);
        if let Some((_, cd)) = &mut self.degrees {
            cd.swap(a, b);
        }
    }

    fn scale_row(&mut self, i: usize, u: &Poly, u_inv: &Poly) {
        self.m.scale_row(i, u);
        self.p.scale_row(i, u);
        self.p_inv.scale_col(i, u_inv);
    }

    fn norm(&self, i: usize, j: usize) -> Result<BigUint> {
        self.ring.norm(self.m.get(i, j))
    }

    fn best_in(&self, cells: impl Iterator<Item = (usize, usize)>) -> Result<Option<(usize, usize)>> {
        let mut best: Option<(BigUint, usize, usize)> = None;
        for (i, j) in cells {
            if self.m.get(i, j).is_zero() {
                continue;
            }
            let n = self.norm(i, j)?;
            if best.as_ref().map(|(bn, bi, bj)| (&n, i, j) < (bn, *bi, *bj)).unwrap_or(true) {
                best = Some((n, i, j));
            }
        }
        Ok(best.map(|(_, i, j)| (i, j)))
    }

    fn bring_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn run(&mut self) -> Result<Vec<Poly>> {
        let (rows, cols) = (self.m.rows, self.m.cols);
        let mut factors = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let cells = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
            let Some(pos) = self.best_in(cells)? else { break };
            self.bring_to(t, pos);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if self.m.get(i, t).is_zero() {
                        continue;
                    }
                    let (q, r) = self.ring.divmod(self.m.get(i, t), self.m.get(t, t))?;
                    self.row_op(i, t, &-&q)?;
                    clean &= r.is_zero();
                }
                for j in t + 1..cols {
                    if self.m.get(t, j).is_zero() {
                        continue;
                    }
                    let (q, r) = self.ring.divmod(self.m.get(t, j), self.m.get(t, t))?;
                    self.col_op(j, t, &-&q)?;
                    clean &= r.is_zero();
                }
                if clean {
                    let mut bad = None;
                    'scan: for i in t + 1..rows {
                        for j in t + 1..cols {
                            let (_, r) = self.ring.divmod(self.m.get(i, j), self.m.get(t, t))?;
                            if !r.is_zero() {
                                bad = Some(i);
                                break 'scan;
                            }
                        }
                    }
                    match bad {
                        None => break,
                        Some(i) => self.row_op(t, i, &self.ring.one())?,
                    }
                }
                let cells = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                if let Some(pos) = self.best_in(cells)? {
                    self.bring_to(t, pos);
                }
            }
            let u = self.ring.normalizing_unit(self.m.get(t, t));
            let u_inv = Poly::constant(u.constant_term().unwrap().inv().unwrap());
            self.scale_row(t, &u, &u_inv);
            factors.push(self.m.get(t, t).clone());
            t += 1;
        }
        Ok(factors)
    }
}

fn snf_impl(ring: &GroundRing, m: &SparseMatrix, degrees: Option<(Vec<i32>, Vec<i32>)>) -> Result<Snf> {
    if !ring.is_euclidean() {
        return Err(Error::NonEuclidean(ring.to_string()));
    }
    for (_, _, v) in m.triples() {
        ring.check(v)?;
    }
    let mut w = Work {
        ring,
        m: m.to_dense(),
        p: Matrix::identity(m.rows, ring),
        p_inv: Matrix::identity(m.rows, ring),
        q: Matrix::identity(m.cols, ring),
        q_inv: Matrix::identity(m.cols, ring),
        degrees,
    };
    let factors = w.run()?;
    Ok(Snf { s: w.m, p: w.p, p_inv: w.p_inv, q: w.q, q_inv: w.q_inv, factors })
}

/// Smith normal form over a Euclidean ring (`Z`, a field, or `F[x]`).
///
/// Pivots are chosen by minimal Euclidean norm, ties broken by the lowest
/// (row, column) position; diagonal entries are normalized.
pub fn smith_normal_form(ring: &GroundRing, m: &SparseMatrix) -> Result<Snf> {
    snf_impl(ring, m, None)
}

/// Smith normal form of a homogeneous matrix between graded free modules.
///
/// Entry `(i, j)` must be homogeneous of degree `col_deg[j] - row_deg[i]`;
/// every elimination step is checked to preserve this.
pub fn smith_normal_form_graded(
    ring: &GroundRing,
    m: &SparseMatrix,
    row_deg: &[i32],
    col_deg: &[i32],
) -> Result<Snf> {
    if row_deg.len() != m.rows || col_deg.len() != m.cols {
        return Err(Error::Invalid("degree vectors do not match matrix shape".into()));
    }
    for (i, j, v) in m.triples() {
        match ring.homogeneity(v) {
            Homogeneity::Degree(d) if d == col_deg[j] - row_deg[i] => {}
            _ => {
                return Err(Error::Invalid(format!("entry ({i},{j}) is not homogeneous of the right degree")))
            }
        }
    }
    snf_impl(ring, m, Some((row_deg.to_vec(), col_deg.to_vec())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::BaseRing;

    fn check(ring: &GroundRing, m: &SparseMatrix, snf: &Snf) {
        let d = m.to_dense();
        assert_eq!(snf.p.mul(&d).mul(&snf.q), snf.s);
        assert_eq!(snf.p.mul(&snf.p_inv), Matrix::identity(m.rows, ring));
        assert_eq!(snf.q_inv.mul(&snf.q), Matrix::identity(m.cols, ring));
        for i in 0..snf.s.rows {
            for j in 0..snf.s.cols {
                if i != j || i >= snf.rank() {
                    assert!(snf.s.get(i, j).is_zero());
                }
            }
        }
        for w in snf.factors.windows(2) {
            assert!(ring.divmod(&w[1], &w[0]).unwrap().1.is_zero());
        }
    }

    #[test]
    fn integer_example() {
        let z = GroundRing::new(BaseRing::Integers, &[]).unwrap();
        let vals = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]];
        let m = SparseMatrix::from_triples(
            3,
            3,
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (i, j, z.int(vals[i][j]))),
        )
        .unwrap();
        let snf = smith_normal_form(&z, &m).unwrap();
        check(&z, &m, &snf);
        assert_eq!(snf.factors, vec![z.int(2), z.int(6), z.int(12)]);
    }

    #[test]
    fn graded_polynomial_example() {
        let r = GroundRing::new(BaseRing::Prime(2), &[("h", 2)]).unwrap();
        let h = r.var("h");
        // rows in degrees 0, 2; cols in degrees 2, 4
        let m = SparseMatrix::from_triples(
            2,
            2,
            vec![(0, 0, h.clone()), (0, 1, &h * &h), (1, 0, r.one()), (1, 1, h.clone())],
        )
        .unwrap();
        let snf = smith_normal_form_graded(&r, &m, &[0, 2], &[2, 4]).unwrap();
        check(&r, &m, &snf);
        assert_eq!(snf.factors, vec![r.one()]);
    }

    #[test]
    fn rejects_non_euclidean() {
        let r = GroundRing::new(BaseRing::Integers, &[("h", 2)]).unwrap();
        let m = SparseMatrix::zero(1, 1);
        assert!(matches!(smith_normal_form(&r, &m), Err(Error::NonEuclidean(_))));
    }
}
