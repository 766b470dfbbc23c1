use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MPoly, Rat};
use crate::error::{Error, Result};

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `nrows`).
    pub fn from_columns(nrows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = RatMatrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| super::int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn add(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &RatMatrix) -> RatMatrix {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).fold(Rat::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Determinant, by fraction-free elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let (mut a, scale) = integerize(self);
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Rat::new(sign * &a[n - 1][n - 1], scale)
    }

    pub fn rank(&self) -> usize {
        bareiss_echelon(self).1.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RatMatrix::from_rows(rref.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Rat>>, Vec<usize>) {
        let (ech, pivots) = bareiss_echelon(self);
        let mut rows: Vec<Vec<Rat>> = ech
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let lead = Rat::from_integer(row[p].clone());
                row.into_iter().map(|x| Rat::from_integer(x) / &lead).collect()
            })
            .collect();
        for r in (0..rows.len()).rev() {
            let p = pivots[r];
            for up in 0..r {
                let f = rows[up][p].clone();
                if f.is_zero() {
                    continue;
                }
                let (top, bottom) = rows.split_at_mut(r);
                for (x, y) in top[up].iter_mut().zip(&bottom[0]) {
                    *x -= &f * y;
                }
            }
        }
        (rows, pivots)
    }
}

/// Scales each row by the lcm of its denominators; returns integer rows and
/// the product of the scale factors (for determinants).
fn integerize(m: &RatMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = (0..m.rows)
        .map(|i| {
            let l = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            total *= &l;
            m.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (rows, total)
}

/// Fraction-free (Bareiss) elimination to row echelon form over the integers.
fn bareiss_echelon(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let (mut a, _) = integerize(m);
    let (nr, nc) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        for i in r + 1..nr {
            if a[i][c].is_zero() {
                for j in c + 1..nc {
                    a[i][j] = (&a[r][c] * &a[i][j]) / &prev;
                }
                continue;
            }
            for j in c + 1..nc {
                a[i][j] = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    for row in &mut a {
        let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            row.iter_mut().for_each(|x| *x = &*x / &g);
        }
    }
    (a, pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    m.nullspace()
}

/// Coefficients `c` with `sum c_i s_i = v`, or `None` when `v` is not in the span.
/// When `s` is dependent, free coefficients are set to zero.
pub fn member(v: &[Rat], s: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let n = v.len();
    if s.iter().any(|x| x.len() != n) {
        return None;
    }
    let mut cols = s.to_vec();
    cols.push(v.to_vec());
    let aug = RatMatrix::from_columns(n, &cols);
    let (rref, pivots) = aug.rref();
    if pivots.contains(&s.len()) {
        return None;
    }
    let mut coeffs = vec![Rat::zero(); s.len()];
    for (r, &p) in pivots.iter().enumerate() {
        coeffs[p] = rref[r][s.len()].clone();
    }
    Some(coeffs)
}

/// Matrix of polynomial entries; rank questions require every parameter to be
/// specialized first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: Vec<Vec<MPoly>>,
}

impl PolyMatrix {
    pub fn specialize(&self, values: &[(usize, Rat)]) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|p| p.specialize(values)).collect()).collect(),
        }
    }

    pub fn to_numeric(&self) -> Result<RatMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| match p.as_constant() {
                        Some(c) if c.is_real() => Ok(c.re),
                        _ => Err(Error::Parametric),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix::from_rows(rows))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.to_numeric()?.rank())
    }

    pub fn nullspace(&self) -> Result<Vec<Vec<Rat>>> {
        Ok(self.to_numeric()?.nullspace())
    }
}

/// Incrementally grown span with reduced rows, for greedy basis selection.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if !f.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let lead = r[p].clone();
        let r: Vec<Rat> = r.iter().map(|x| x / &lead).collect();
        for (_, row) in &mut self.rows {
            let f = row[p].clone();
            if !f.is_zero() {
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, GaussRat};
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        assert_eq!(RatMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RatMatrix::identity(3).nullspace().is_empty());
        assert_eq!(RatMatrix::zeros(1, 3).nullspace().len(), 3);
        let ns = RatMatrix::from_i64(&[&[1, 1]]).nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(&ns[0][0] + &ns[0][1], Rat::zero());
        assert!(!ns[0][0].is_zero());
    }

    #[test]
    fn member_examples() {
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        assert_eq!(member(&[int(1), int(1)], &[e1.clone(), e2.clone()]), Some(vec![int(1), int(1)]));
        assert_eq!(member(&[int(1), int(0)], &[e2.clone()]), None);
        assert_eq!(member(&[int(0), int(0)], &[e1, e2]), Some(vec![int(0), int(0)]));
        assert_eq!(member(&[int(0), int(0)], &[]), Some(vec![]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn determinant() {
        let m = RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), int(18));
        let m = RatMatrix::from_rows(vec![vec![crate::exactmath::rat(1, 2), int(1)], vec![int(1), int(0)]]);
        assert_eq!(m.det(), int(-1));
    }

    #[test]
    fn parametric_rank_needs_specialization() {
        let a = MPoly::var(1, 0);
        let one = MPoly::one(1);
        let m = PolyMatrix { rows: vec![vec![a.clone(), one.clone()], vec![one.clone(), a]] };
        assert!(matches!(m.rank(), Err(Error::Parametric)));
        assert_eq!(m.specialize(&[(0, int(1))]).rank().unwrap(), 1);
        assert_eq!(m.specialize(&[(0, int(2))]).rank().unwrap(), 2);
        let c = PolyMatrix { rows: vec![vec![MPoly::constant(1, GaussRat::i())]] };
        assert!(c.rank().is_err());
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                RatMatrix::from_rows(v.chunks(c).map(|ch| ch.iter().map(|&x| int(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for v in &ns {
                prop_assert!(m.apply(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(RatMatrix::from_columns(m.cols(), &ns).rank(), ns.len());
        }

        #[test]
        fn det_matches_rank(m in small_matrix()) {
            if m.rows() == m.cols() {
                prop_assert_eq!(m.det().is_zero(), m.rank() < m.rows());
            }
        }
    }
}
