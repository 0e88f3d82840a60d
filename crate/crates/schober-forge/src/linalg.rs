//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Q>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| q(x))).collect();
        Matrix { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column (free entry = 1).
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// A particular solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Row span of a family of vectors, kept in reduced echelon form together with
/// the change of basis back to the original family.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<Q>>,
    family_len: usize,
}

impl Span {
    pub fn new(dim: usize, family: &[Vec<Q>]) -> Self {
        let k = family.len();
        let mut m = Matrix::zeros(k, dim + k);
        for (i, v) in family.iter().enumerate() {
            assert_eq!(v.len(), dim);
            for (j, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
            m.set(i, dim + i, Q::one());
        }
        let (r, pivots) = m.rref();
        let mut rows = Vec::new();
        let mut transform = Vec::new();
        let mut kept = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            if p >= dim {
                break;
            }
            rows.push(r.row(i)[..dim].to_vec());
            transform.push(r.row(i)[dim..].to_vec());
            kept.push(p);
        }
        Span { dim, rows, pivots: kept, transform, family_len: k }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Echelon basis of the span.
    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coefficients expressing `v` in the original family, when `v` lies in the span.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let mut rest = v.to_vec();
        let mut c = vec![Q::zero(); self.family_len];
        for ((row, t), &p) in self.rows.iter().zip(&self.transform).zip(&self.pivots) {
            if rest[p].is_zero() {
                continue;
            }
            let f = rest[p].clone();
            for (o, r) in rest.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
            for (ci, ti) in c.iter_mut().zip(t) {
                if !ti.is_zero() {
                    *ci += &f * ti;
                }
            }
        }
        rest.iter().all(|x| x.is_zero()).then_some(c)
    }
}

/// Echelon basis grown one vector at a time; each row vanishes at the pivots
/// of the rows before it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (o, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Adds `v` unless it is already in the span; reports whether it was added.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Scale so that the first nonzero entry is positive.
pub fn normalize_sign(v: &mut [Q]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Gaussian elimination over GF(2) on bit rows; returns a solution of `rows · x = rhs`.
pub fn solve_gf2(n_vars: usize, equations: &[(Vec<usize>, bool)]) -> Option<Vec<bool>> {
    let mut rows: Vec<(Vec<bool>, bool)> = equations
        .iter()
        .map(|(vars, rhs)| {
            let mut r = vec![false; n_vars];
            for &v in vars {
                r[v] ^= true;
            }
            (r, *rhs)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n_vars {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].0[c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.0[c] {
                for j in 0..n_vars {
                    row.0[j] ^= pivot.0[j];
                }
                row.1 ^= pivot.1;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r.1) {
        return None;
    }
    let mut x = vec![false; n_vars];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let m = Matrix::from_i64(&[vec![1, 2, 3]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: Q = v.iter().zip([1, 2, 3]).map(|(x, c)| x * q(c)).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn span_coordinates() {
        let fam = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let s = Span::new(3, &fam);
        let c = s.coords(&[q(2), q(5), q(3)]).unwrap();
        assert_eq!(c, vec![q(2), q(3)]);
        assert!(s.coords(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn solve_and_gf2() {
        let m = Matrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(m.solve(&[q(4), q(3)]).unwrap(), vec![q(2), q(1)]);
        assert_eq!(solve_gf2(2, &[(vec![0, 1], true), (vec![0], true)]), Some(vec![true, false]));
        assert_eq!(solve_gf2(1, &[(vec![0], true), (vec![0], false)]), None);
    }
}
