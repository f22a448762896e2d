//! Determinant-divisor oracle for Smith normal forms, written against plain
//! integers and dense rational polynomials so it shares no code with the
//! library: `d_k` is the gcd of all `k x k` minors and the `k`-th invariant
//! factor is `d_k / d_{k-1}`.

#![allow(dead_code)]

use eqkh::coeff::{BaseRing, Monomial, Poly, Scalar};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first row.
fn laplace<T: Clone>(m: &[Vec<T>], zero: &T, add: &impl Fn(&T, &T) -> T, mul: &impl Fn(&T, &T) -> T, neg: &impl Fn(&T) -> T) -> T {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = zero.clone();
    for j in 0..n {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = mul(&m[0][j], &laplace(&minor, zero, add, mul, neg));
        acc = if j % 2 == 0 { add(&acc, &term) } else { add(&acc, &neg(&term)) };
    }
    acc
}

fn minors<T: Clone>(m: &[Vec<T>], k: usize) -> Vec<Vec<Vec<T>>> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    for rows in combinations(r, k) {
        for cols in combinations(c, k) {
            out.push(rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect());
        }
    }
    out
}

/// Nonzero invariant factors of an integer matrix, positive.
pub fn int_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let big: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let n = m.len().min(m[0].len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=n {
        let dk = minors(&big, k)
            .iter()
            .map(|s| laplace(s, &0, &|a, b| a + b, &|a, b| a * b, &|a| -a))
            .fold(0i128, |g, x| g.gcd(&x));
        if dk == 0 {
            break;
        }
        out.push(dk / prev);
        prev = dk;
    }
    out
}

/// Dense polynomial in `h` over ℚ, lowest degree first, no trailing zeros.
pub type Dense = Vec<BigRational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn padd(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn pneg(a: &Dense) -> Dense {
    a.iter().map(|c| -c).collect()
}

fn pmul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn pdivrem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lb;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

pub fn monic(p: Dense) -> Dense {
    match p.last().cloned() {
        None => p,
        Some(l) => p.iter().map(|c| c / &l).collect(),
    }
}

fn pgcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Nonzero invariant factors of a matrix over ℚ[h], monic.
pub fn poly_factors(m: &[Vec<Dense>]) -> Vec<Dense> {
    let n = m.len().min(m[0].len());
    let mut out = Vec::new();
    let mut prev: Dense = vec![BigRational::one()];
    for k in 1..=n {
        let dk = minors(m, k)
            .iter()
            .map(|s| laplace(s, &Vec::new(), &padd, &pmul, &pneg))
            .fold(Vec::new(), |g, x| pgcd(&g, &x));
        if dk.is_empty() {
            break;
        }
        let (q, r) = pdivrem(&dk, &prev);
        assert!(r.is_empty(), "d_{} is not divisible by d_{}", k, k - 1);
        out.push(monic(q));
        prev = dk;
    }
    out
}

/// Library polynomial in one variable over ℚ as a dense coefficient list.
pub fn to_dense(p: &Poly) -> Dense {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exp(0) as usize;
        if out.len() <= e {
            out.resize(e + 1, BigRational::zero());
        }
        out[e] = match c {
            Scalar::Rat(q) => q.clone(),
            other => panic!("expected a rational coefficient, got {other}"),
        };
    }
    trim(out)
}

pub fn from_dense(p: &Dense) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in p.iter().enumerate() {
        out.add_term(Monomial::from_exponents(&[e as u32]), Scalar::Rat(c.clone()));
    }
    out
}

pub fn int_poly(n: i64) -> Poly {
    if n == 0 {
        Poly::zero()
    } else {
        Poly::constant(BaseRing::Integers.from_i64(n))
    }
}

pub fn int_value(p: &Poly) -> i128 {
    match p.constant_term() {
        Some(Scalar::Int(n)) if p.is_constant() => i128::try_from(n.abs()).unwrap(),
        _ => panic!("expected an integer constant"),
    }
}

fn int_product<R: Rng>(rng: &mut R, r: usize, c: usize) -> Vec<Vec<i64>> {
    // a product through an inner dimension of at most r and c lowers the rank
    // and creates nontrivial common factors
    let k = rng.gen_range(1..=r.max(c));
    let a: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let b: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| rng.gen_range(-3..=3) * rng.gen_range(1..=2)).collect()).collect();
    (0..r).map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// A random integer matrix of size at most 6x6: either sparse with small
/// entries or a product forcing structure.
pub fn random_int_matrix<R: Rng>(rng: &mut R) -> Vec<Vec<i64>> {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    if rng.gen_bool(0.5) {
        (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-6..=6) }).collect()).collect()
    } else {
        int_product(rng, r, c)
    }
}

fn random_dense<R: Rng>(rng: &mut R, max_deg: usize) -> Dense {
    let deg = rng.gen_range(0..=max_deg);
    trim((0..=deg).map(|_| BigRational::from_integer(rng.gen_range(-2..=2).into())).collect())
}

/// A random matrix over ℚ[h] of size at most 6x6 with entries of degree at
/// most two, or a product of two such matrices.
pub fn random_poly_matrix<R: Rng>(rng: &mut R) -> Vec<Vec<Dense>> {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let sparse = |rng: &mut R, r: usize, c: usize, deg: usize| -> Vec<Vec<Dense>> {
        (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { Vec::new() } else { random_dense(rng, deg) }).collect()).collect()
    };
    if rng.gen_bool(0.5) {
        sparse(rng, r, c, 2)
    } else {
        let k = rng.gen_range(1..=r.max(c));
        let a = sparse(rng, r, k, 1);
        let b = sparse(rng, k, c, 1);
        (0..r)
            .map(|i| (0..c).map(|j| (0..k).fold(Vec::new(), |acc, t| padd(&acc, &pmul(&a[i][t], &b[t][j])))).collect())
            .collect()
    }
}

/// Compares the library's invariant factors with the oracle's over ℤ;
/// `Err` carries a description of the mismatch.
pub fn check_int(m: &[Vec<i64>]) -> Result<(), String> {
    use eqkh::coeff::{smith_normal_form, GroundRing, SparseMatrix};
    let ring = GroundRing::new(BaseRing::Integers, &[]).unwrap();
    let triples = m.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &x)| (i, j, int_poly(x))));
    let sm = SparseMatrix::from_triples(m.len(), m[0].len(), triples).unwrap();
    let got: Vec<i128> = smith_normal_form(&ring, &sm).map_err(|e| e.to_string())?.factors.iter().map(int_value).collect();
    let want = int_factors(m);
    if got == want {
        Ok(())
    } else {
        Err(format!("{m:?}: library {got:?}, oracle {want:?}"))
    }
}

/// Same over ℚ[h], comparing monic factors.
pub fn check_poly(m: &[Vec<Dense>]) -> Result<(), String> {
    use eqkh::coeff::{smith_normal_form, GroundRing, SparseMatrix};
    let ring = GroundRing::new(BaseRing::Rationals, &[("h", 2)]).unwrap();
    let triples = m.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| (i, j, from_dense(x))));
    let sm = SparseMatrix::from_triples(m.len(), m[0].len(), triples).unwrap();
    let got: Vec<Dense> = smith_normal_form(&ring, &sm).map_err(|e| e.to_string())?.factors.iter().map(|p| monic(to_dense(p))).collect();
    let want = poly_factors(m);
    if got == want {
        Ok(())
    } else {
        let show = |v: &[Dense]| v.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(", ");
        Err(format!("library [{}], oracle [{}]", show(&got), show(&want)))
    }
}
