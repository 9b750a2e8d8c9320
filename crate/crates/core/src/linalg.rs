//! Dense linear algebra over an exact field.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, other: &Self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(a: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = F::one().div(&a[r][c]);
        for x in a[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = a[r][j].mul(&f);
                    a[i][j] = a[i][j].sub(&v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>], cols: usize) -> usize {
    let mut a = rows.to_vec();
    rref(&mut a, cols).len()
}

/// Basis of `{x : a x = 0}`, one vector per free column with a 1 there.
pub fn nullspace<F: Field>(rows: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = F::zero().sub(&a[r][free]);
        }
        out.push(v);
    }
    out
}

/// Some solution of `a x = b`, if consistent.
pub fn solve<F: Field>(rows: &[Vec<F>], b: &[F], cols: usize) -> Option<Vec<F>> {
    let mut aug: Vec<Vec<F>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// Basis (as rows) of the intersection of two row spaces.
pub fn intersect<F: Field>(a: &[Vec<F>], b: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x in span(a) and span(b): solve sum c_i a_i - sum d_j b_j = 0
    let n = a.len() + b.len();
    let rows: Vec<Vec<F>> = (0..dim)
        .map(|k| {
            a.iter()
                .map(|v| v[k].clone())
                .chain(b.iter().map(|v| F::zero().sub(&v[k])))
                .collect()
        })
        .collect();
    let ker = nullspace(&rows, n);
    let mut vecs: Vec<Vec<F>> = ker
        .iter()
        .map(|c| {
            (0..dim)
                .map(|k| (0..a.len()).fold(F::zero(), |acc, i| acc.add(&c[i].mul(&a[i][k]))))
                .collect()
        })
        .collect();
    let piv = rref(&mut vecs, dim);
    vecs.truncate(piv.len());
    vecs
}

/// True when the two row spaces coincide.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], dim: usize) -> bool {
    let ra = rank(a, dim);
    let rb = rank(b, dim);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    ra == rb && rank(&both, dim) == ra
}

pub fn rational_matrix(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}
