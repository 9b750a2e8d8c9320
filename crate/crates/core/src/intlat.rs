//! Integer lattice algebra: Smith and Hermite normal forms, invariant
//! sublattices and torsion-free co-invariant quotients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("generator {0} is not unimodular")]
    NonUnimodular(usize),
    #[error("generator {index} has shape {rows}x{cols}, expected {rank}x{rank}")]
    Shape {
        index: usize,
        rows: usize,
        cols: usize,
        rank: usize,
    },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from i64 rows. All rows must have `cols` entries.
    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        Self::from_rows(columns, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Converts to i64 rows, or `None` on overflow.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(blocks: &[IntMatrix], rows: usize) -> IntMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[IntMatrix], cols: usize) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        IntMatrix { rows, cols, data }
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = idx.into_iter().map(|i| self.row(i)).collect();
        Self::from_rows(&rows, self.cols)
    }

    pub fn select_cols(&self, idx: impl IntoIterator<Item = usize>) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = idx.into_iter().map(|j| self.column(j)).collect();
        Self::from_columns(&cols, self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let q: Vec<Vec<BigRational>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let inv = linalg::inverse(&q)?;
        let rows: Option<Vec<Vec<BigInt>>> = inv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
            .collect();
        Some(Self::from_rows(&rows?, self.rows))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `u * m * v == d` with `u`, `v` unimodular and `d` in Smith form.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero invariant factors, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = d.get(i, j);
                if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < d.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !d.get(i, t).is_zero() {
                    let q = -d.get(i, t).div_floor(d.get(t, t));
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !d.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !d.get(t, j).is_zero() {
                    let q = -d.get(t, j).div_floor(d.get(t, t));
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !d.get(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest leftover in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    let x = d.get(i, t);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = d.get(t, j);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let p = d.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

/// Torsion-free co-invariant quotient `Z^source_rank -> Z^target_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub source_rank: usize,
    pub target_rank: usize,
    /// target_rank x source_rank
    pub projection: IntMatrix,
    /// source_rank x target_rank, with projection * section = identity
    pub section: IntMatrix,
    pub torsion_invariants: Vec<BigInt>,
}

impl LatticeQuotient {
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.projection.mul_vec(x)
    }

    pub fn project_i64(&self, x: &[i64]) -> Vec<i64> {
        let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
        self.project(&v)
            .into_iter()
            .map(|a| a.to_i64().expect("projected coordinate overflows i64"))
            .collect()
    }
}

fn check_generators(rank: usize, generators: &[IntMatrix]) -> Result<(), LatticeError> {
    for (index, g) in generators.iter().enumerate() {
        if g.rows != rank || g.cols != rank {
            return Err(LatticeError::Shape { index, rows: g.rows, cols: g.cols, rank });
        }
        if !g.is_unimodular() {
            return Err(LatticeError::NonUnimodular(index));
        }
    }
    Ok(())
}

/// Quotient of `Z^rank` by the span of `x - g x`, then by torsion.
pub fn coinvariant_quotient(rank: usize, generators: &[IntMatrix]) -> Result<LatticeQuotient, LatticeError> {
    check_generators(rank, generators)?;
    let id = IntMatrix::identity(rank);
    let blocks: Vec<IntMatrix> = generators.iter().map(|g| id.sub(g)).collect();
    let rel = IntMatrix::hstack(&blocks, rank);
    let snf = smith_normal_form(&rel);
    let factors = snf.invariant_factors();
    let s = factors.len();
    let uinv = snf.u.inverse().expect("Smith transform is unimodular");
    Ok(LatticeQuotient {
        source_rank: rank,
        target_rank: rank - s,
        projection: snf.u.select_rows(s..rank),
        section: uinv.select_cols(s..rank),
        torsion_invariants: factors.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

/// Saturated basis of `{v : g v = v for every generator}`.
pub fn invariant_sublattice(rank: usize, generators: &[IntMatrix]) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    check_generators(rank, generators)?;
    if generators.is_empty() {
        return Ok(IntMatrix::identity(rank).to_rows());
    }
    let id = IntMatrix::identity(rank);
    let blocks: Vec<IntMatrix> = generators.iter().map(|g| g.sub(&id)).collect();
    let k = IntMatrix::vstack(&blocks, rank);
    Ok(kernel_basis(&k))
}

/// Saturated basis of the integer kernel of `m`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let s = snf.rank();
    (s..m.cols).map(|j| snf.v.column(j)).collect()
}

/// Some integer `x` with `a x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let factors = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, val) in ub.iter().enumerate() {
        if i < factors.len() {
            if !val.is_multiple_of(&factors[i]) {
                return None;
            }
            y[i] = val / &factors[i];
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Row-style Hermite normal form of the lattice spanned by `gens`.
/// Nonzero rows only; pivots positive; entries above a pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = gens.to_vec();
    let mut r = 0;
    for col in 0..dim {
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][col].is_zero() && best.is_none_or(|b| a[i][col].abs() < a[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if !a[i][col].is_zero() {
                    let q = a[i][col].div_floor(&a[r][col]);
                    for j in 0..dim {
                        let v = &q * &a[r][j];
                        a[i][j] -= v;
                    }
                    if !a[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = a[i][col].div_floor(&a[r][col]);
                if !q.is_zero() {
                    for j in 0..dim {
                        let v = &q * &a[r][j];
                        a[i][j] -= v;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Membership test against a Hermite normal form.
pub fn hnf_contains(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in hnf {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        if !w[p].is_multiple_of(&row[p]) {
            return false;
        }
        let q = &w[p] / &row[p];
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    w.iter().all(|x| x.is_zero())
}

pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>], dim: usize) -> bool {
    hermite_normal_form(a, dim) == hermite_normal_form(b, dim)
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn small_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Serializable view used by the JSON layer.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuotientView {
    pub source_rank: usize,
    pub target_rank: usize,
    pub projection: Vec<Vec<String>>,
    pub torsion_invariants: Vec<String>,
}

impl From<&LatticeQuotient> for QuotientView {
    fn from(q: &LatticeQuotient) -> Self {
        QuotientView {
            source_rank: q.source_rank,
            target_rank: q.target_rank,
            projection: q
                .projection
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            torsion_invariants: q.torsion_invariants.iter().map(|x| x.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let c = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), c)
    }

    #[test]
    fn snf_two_by_two() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.d, m(&[&[2, 0], &[0, 4]]));
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn snf_identity_and_zero() {
        let i = IntMatrix::identity(3);
        let s = smith_normal_form(&i);
        assert_eq!(s.d, i);
        assert_eq!(s.u, i);
        assert_eq!(s.v, i);
        let z = IntMatrix::zeros(2, 2);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn coinvariants_of_swap() {
        let q = coinvariant_quotient(2, &[m(&[&[0, 1], &[1, 0]])]).unwrap();
        assert_eq!(q.target_rank, 1);
        let p = q.projection.row(0);
        assert!(p == big_vec(&[1, 1]) || p == big_vec(&[-1, -1]));
        assert!(q.torsion_invariants.is_empty());
        assert_eq!(q.projection.mul(&q.section), IntMatrix::identity(1));
    }

    #[test]
    fn coinvariants_of_trivial_and_negation() {
        let q = coinvariant_quotient(2, &[IntMatrix::identity(2)]).unwrap();
        assert_eq!(q.target_rank, 2);
        assert!(q.projection.is_unimodular());
        let q = coinvariant_quotient(1, &[m(&[&[-1]])]).unwrap();
        assert_eq!(q.target_rank, 0);
        assert_eq!(q.torsion_invariants, vec![BigInt::from(2)]);
    }

    #[test]
    fn non_unimodular_rejected() {
        assert_eq!(coinvariant_quotient(1, &[m(&[&[2]])]), Err(LatticeError::NonUnimodular(0)));
        assert_eq!(invariant_sublattice(1, &[m(&[&[3]])]), Err(LatticeError::NonUnimodular(0)));
    }

    #[test]
    fn invariants() {
        let b = invariant_sublattice(2, &[m(&[&[0, 1], &[1, 0]])]).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0] == big_vec(&[1, 1]) || b[0] == big_vec(&[-1, -1]));
        assert_eq!(invariant_sublattice(3, &[IntMatrix::identity(3)]).unwrap().len(), 3);
        assert!(invariant_sublattice(1, &[m(&[&[-1]])]).unwrap().is_empty());
    }

    #[test]
    fn hnf_and_membership() {
        let gens = vec![big_vec(&[2, 2]), big_vec(&[1, 1])];
        let h = hermite_normal_form(&gens, 2);
        assert_eq!(h, vec![big_vec(&[1, 1])]);
        assert!(hnf_contains(&h, &big_vec(&[3, 3])));
        assert!(!hnf_contains(&h, &big_vec(&[1, 0])));
        assert!(same_lattice(&[big_vec(&[2, 0]), big_vec(&[0, 1])], &[big_vec(&[2, 1]), big_vec(&[0, 1])], 2));
    }

    #[test]
    fn integer_solve() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&a, &big_vec(&[4, 9])), Some(big_vec(&[2, 3])));
        assert_eq!(solve_integer(&a, &big_vec(&[1, 0])), None);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant(), BigInt::one());
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), IntMatrix::identity(2));
        assert!(m(&[&[2, 0], &[0, 1]]).inverse().is_none());
    }
}
