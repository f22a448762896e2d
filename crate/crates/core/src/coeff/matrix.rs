use super::poly::{GroundRing, Poly};
use crate::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize, ring: &GroundRing) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    pub fn add_row(&mut self, dst: usize, src: usize, c: &Poly) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j) + &(c * s);
                self.set(dst, j, v);
            }
        }
    }

    /// col[dst] += c * col[src]
    pub fn add_col(&mut self, dst: usize, src: usize, c: &Poly) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst) + &(s * c);
                self.set(i, dst, v);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Poly) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Poly) {
        for i in 0..self.rows {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    s.columns[j].push((i, self.get(i, j).clone()));
                }
            }
        }
        s
    }
}

/// Sparse matrix stored by columns; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, Poly)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Poly)>,
    ) -> Result<Self> {
        let mut m = Self::zero(rows, cols);
        for (i, j, v) in triples {
            if i >= rows || j >= cols {
                return Err(Error::Invalid(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            m.add_entry(i, j, v);
        }
        Ok(m)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: Poly) {
        if v.is_zero() {
            return;
        }
        let col = &mut self.columns[j];
        match col.binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => {
                let s = &col[k].1 + &v;
                if s.is_zero() {
                    col.remove(k);
                } else {
                    col[k].1 = s;
                }
            }
            Err(k) => col.insert(k, (i, v)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        let col = &self.columns[j];
        match col.binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => col[k].1.clone(),
            Err(_) => Poly::zero(),
        }
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (i.to_owned(), j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = vec![Poly::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.columns[j] {
                out[*i] = &out[*i] + &(a * x);
            }
        }
        out
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            let mut acc = std::collections::BTreeMap::<usize, Poly>::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    let e = acc.entry(*i).or_default();
                    *e = &*e + &(a * b);
                }
            }
            out.columns[j] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.cols, self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                out.columns[*i].push((j, v.clone()));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zero(self.rows, self.cols);
        for (i, j, v) in self.triples() {
            m.set(i, j, v.clone());
        }
        m
    }

    pub fn map_entries(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<SparseMatrix> {
        let mut out = SparseMatrix::zero(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                let w = f(v)?;
                if !w.is_zero() {
                    out.columns[j].push((*i, w));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::BaseRing;

    #[test]
    fn sparse_product_matches_dense() {
        let z = GroundRing::new(BaseRing::Integers, &[]).unwrap();
        let a = SparseMatrix::from_triples(
            2,
            3,
            vec![(0, 0, z.int(1)), (1, 2, z.int(2)), (0, 2, z.int(-1)), (0, 2, z.int(1))],
        )
        .unwrap();
        let b = SparseMatrix::from_triples(3, 2, vec![(0, 1, z.int(3)), (2, 0, z.int(5))]).unwrap();
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.mul(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
        assert_eq!(a.transpose().transpose(), a);
    }
}
