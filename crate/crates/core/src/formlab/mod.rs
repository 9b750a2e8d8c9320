//! Bilinear forms attached to outer involutions of linear groups in
//! characteristic 2: kernels of `q_b(x) = b(x, x)`, orthogonal complements,
//! smoothability and the structure of the fixed group.

pub mod gf2;
pub mod parser;
pub mod ratfn;
pub mod tower;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::{self, Field};
pub use parser::{identifiers, parse, ParseError};
pub use ratfn::RatFn;
pub use tower::{TowerError, TowerField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric, so it does not define an involution")]
    NotInvolution,
    #[error("nondegenerate part has odd dimension {0}")]
    OddDimensionParity(usize),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Matrix = Vec<Vec<RatFn>>;

/// Gram matrix `M` of `b(x, y) = x^T M y` over a tower field.
#[derive(Clone, Debug, PartialEq)]
pub struct FormData {
    pub field: TowerField,
    pub gram: Matrix,
    /// The matrix `c` of the involution `g -> c g^{-T} c^{-1}`, when known.
    pub provenance: Option<Matrix>,
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

fn check_square(m: &Matrix) -> Result<usize, FormError> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(FormError::NotSquare);
    }
    Ok(n)
}

impl FormData {
    pub fn new(field: TowerField, gram: Matrix) -> Result<Self, FormError> {
        check_square(&gram)?;
        if transpose(&gram) != gram {
            return Err(FormError::NotInvolution);
        }
        if linalg::inverse(&gram).is_none() {
            return Err(FormError::Singular);
        }
        Ok(FormData { field, gram, provenance: None })
    }

    /// Parses entries like `"(t+1)/t"`; variables become base transcendentals.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self, FormError> {
        let mut names: Vec<String> = Vec::new();
        for r in rows {
            for s in r {
                for n in identifiers(s)? {
                    if !names.contains(&n) {
                        names.push(n);
                    }
                }
            }
        }
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let field = TowerField::base(&refs);
        let gram = rows.iter().map(|r| r.iter().map(|s| parse(s, &field)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
        FormData::new(field, gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// `n` with `dim = n + 1`.
    pub fn n(&self) -> usize {
        self.dim() - 1
    }

    pub fn gram_over(&self, over: &TowerField) -> Result<Matrix, FormError> {
        Ok(self.field.embed_matrix(&self.gram, over)?)
    }

    pub fn scaled(&self, lambda: &RatFn) -> FormData {
        let gram = self.gram.iter().map(|r| r.iter().map(|x| x.mul(lambda)).collect()).collect();
        FormData { field: self.field.clone(), gram, provenance: None }
    }

    /// `b(x, y)` for vectors over `over`.
    pub fn bilinear(&self, x: &[RatFn], y: &[RatFn], over: &TowerField) -> Result<RatFn, FormError> {
        let m = self.gram_over(over)?;
        let mut acc = RatFn::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc = acc.add(&x[i].mul(&m[i][j]).mul(&y[j]));
            }
        }
        Ok(acc)
    }

    /// `q_b(x) = b(x, x) = sum M_ii x_i^2`.
    pub fn qb(&self, x: &[RatFn], over: &TowerField) -> Result<RatFn, FormError> {
        self.bilinear(x, x, over)
    }

    pub fn format_matrix(&self) -> Vec<Vec<String>> {
        self.gram.iter().map(|r| r.iter().map(|x| self.field.format(x)).collect()).collect()
    }
}

pub fn diagonal_form(field: TowerField, entries: Vec<RatFn>) -> Result<FormData, FormError> {
    let n = entries.len();
    let gram = (0..n).map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { RatFn::zero() }).collect()).collect();
    FormData::new(field, gram)
}

/// Form with `M[i][n-i] = entries[i]` (entries must be palindromic).
pub fn antidiagonal_form(field: TowerField, entries: Vec<RatFn>) -> Result<FormData, FormError> {
    let n = entries.len();
    let gram = (0..n)
        .map(|i| (0..n).map(|j| if i + j + 1 == n { entries[i].clone() } else { RatFn::zero() }).collect())
        .collect();
    FormData::new(field, gram)
}

/// `M = c^{-1}` for the involution `g -> c g^{-T} c^{-1}`; fixed points satisfy `g^T M g = M`.
pub fn gram_from_involution(field: TowerField, c: Matrix) -> Result<FormData, FormError> {
    check_square(&c)?;
    // symmetric and antisymmetric agree in characteristic 2
    if transpose(&c) != c {
        return Err(FormError::NotInvolution);
    }
    let m = linalg::inverse(&c).ok_or(FormError::Singular)?;
    let mut f = FormData::new(field, m)?;
    f.provenance = Some(c);
    Ok(f)
}

/// Rows `(s_{e,i})_i` with `M_ii = sum_e u^e s_{e,i}^2`; `q_b` vanishes exactly on their common kernel.
fn qb_rows(m: &Matrix, nvars: usize) -> Vec<Vec<RatFn>> {
    let n = m.len();
    let mut rows: BTreeMap<Vec<u32>, Vec<RatFn>> = BTreeMap::new();
    for i in 0..n {
        let x = &m[i][i];
        if x.is_zero() {
            continue;
        }
        let pq = x.num().mul(x.den());
        let mut parts: BTreeMap<Vec<u32>, Vec<Vec<u32>>> = BTreeMap::new();
        for mono in pq.monomials() {
            let eps: Vec<u32> = (0..nvars).map(|v| mono.get(v).copied().unwrap_or(0) % 2).collect();
            let half: Vec<u32> = (0..nvars).map(|v| mono.get(v).copied().unwrap_or(0) / 2).collect();
            parts.entry(eps).or_default().push(half);
        }
        for (eps, monos) in parts {
            let h = gf2::Poly::from_monomials(monos);
            let s = RatFn::new(h, x.den().clone());
            rows.entry(eps).or_insert_with(|| vec![RatFn::zero(); n])[i] = s;
        }
    }
    rows.into_values().collect()
}

/// Basis of `ker(q_b)` over `over`.
pub fn qb_kernel(f: &FormData, over: &TowerField) -> Result<Vec<Vec<RatFn>>, FormError> {
    let m = f.gram_over(over)?;
    let rows = qb_rows(&m, over.names.len());
    if rows.is_empty() {
        return Ok(identity(f.dim()));
    }
    Ok(linalg::nullspace(&rows, f.dim()))
}

fn identity(n: usize) -> Vec<Vec<RatFn>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { RatFn::one() } else { RatFn::zero() }).collect()).collect()
}

/// `{x : b(x, v) = 0 for every v in basis}`.
pub fn orthogonal_complement(f: &FormData, basis: &[Vec<RatFn>], over: &TowerField) -> Result<Vec<Vec<RatFn>>, FormError> {
    if basis.is_empty() {
        return Ok(identity(f.dim()));
    }
    let m = f.gram_over(over)?;
    let rows: Vec<Vec<RatFn>> = basis
        .iter()
        .map(|v| (0..f.dim()).map(|i| (0..f.dim()).fold(RatFn::zero(), |acc, j| acc.add(&m[i][j].mul(&v[j])))).collect())
        .collect();
    Ok(linalg::nullspace(&rows, f.dim()))
}

/// `ker(q_b) ⊗ E = ker(q_{b_E})`, compared by dimension.
pub fn smoothability_check(f: &FormData, k: &TowerField, e: &TowerField) -> Result<bool, FormError> {
    if !k.is_subfield_of(e) {
        return Err(TowerError::NotSubfield(format!("{:?}", k.names)).into());
    }
    Ok(qb_kernel(f, k)?.len() == qb_kernel(f, e)?.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedGroupReport {
    pub n: usize,
    pub kernel_dim: usize,
    pub kernel_perp_dim: usize,
    /// `dim(ker ∩ ker^⊥)`
    pub d: usize,
    /// `dim(ker / (ker ∩ ker^⊥))`
    pub r: usize,
    pub symplectic_rank: usize,
    pub hom_dim: usize,
    pub skew_dim: usize,
    pub smooth_dim: usize,
    pub exceptional: bool,
}

pub fn fixed_group_report(f: &FormData, over: &TowerField) -> Result<FixedGroupReport, FormError> {
    let k = qb_kernel(f, over)?;
    let kp = orthogonal_complement(f, &k, over)?;
    let d = linalg::intersect(&k, &kp, f.dim()).len();
    let r = k.len() - d;
    if r % 2 == 1 {
        return Err(FormError::OddDimensionParity(r));
    }
    let hom_dim = r * d;
    let skew_dim = d * (d + 1) / 2;
    Ok(FixedGroupReport {
        n: f.n(),
        kernel_dim: k.len(),
        kernel_perp_dim: kp.len(),
        d,
        r,
        symplectic_rank: r / 2,
        hom_dim,
        skew_dim,
        smooth_dim: r * (r + 1) / 2 + hom_dim + skew_dim,
        exceptional: f.n().is_multiple_of(2),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieReport {
    pub dimension: usize,
    pub smooth_dim: usize,
    pub smooth: bool,
}

/// Dimension of `{X : X^T M = M X, tr X = 0}` against the smooth dimension.
pub fn lie_fixed_dimension(f: &FormData, over: &TowerField) -> Result<LieReport, FormError> {
    let m = f.gram_over(over)?;
    let n = f.dim();
    let var = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::with_capacity(n * n + 1);
    for i in 0..n {
        for j in 0..n {
            // (X^T M)_{ij} + (M X)_{ij} = sum_k X_ki M_kj + M_ik X_kj
            let mut row = vec![RatFn::zero(); n * n];
            for k in 0..n {
                row[var(k, i)] = row[var(k, i)].add(&m[k][j]);
                row[var(k, j)] = row[var(k, j)].add(&m[i][k]);
            }
            rows.push(row);
        }
    }
    let mut tr = vec![RatFn::zero(); n * n];
    for i in 0..n {
        tr[var(i, i)] = RatFn::one();
    }
    rows.push(tr);
    let dimension = n * n - linalg::rank(&rows, n * n);
    let smooth_dim = fixed_group_report(f, over)?.smooth_dim;
    Ok(LieReport { dimension, smooth_dim, smooth: dimension == smooth_dim })
}

/// Row spaces agree (bases equal up to change of basis).
pub fn same_subspace(a: &[Vec<RatFn>], b: &[Vec<RatFn>], dim: usize) -> bool {
    linalg::same_span(a, b, dim)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Char2Report {
    pub gram: Vec<Vec<String>>,
    pub base: TowerField,
    pub extension: TowerField,
    pub kernel_base: Vec<Vec<String>>,
    pub kernel_extension: Vec<Vec<String>>,
    pub kernel_perp_base: Vec<Vec<String>>,
    pub smoothable: bool,
    pub fixed_group: Result<FixedGroupReport, String>,
    pub lie: Result<LieReport, String>,
}

pub fn char2_report(f: &FormData, extension: &TowerField) -> Result<Char2Report, FormError> {
    let k = &f.field;
    let fmt = |field: &TowerField, vs: &[Vec<RatFn>]| -> Vec<Vec<String>> {
        vs.iter().map(|v| v.iter().map(|x| field.format(x)).collect()).collect()
    };
    let kb = qb_kernel(f, k)?;
    let ke = qb_kernel(f, extension)?;
    let kp = orthogonal_complement(f, &kb, k)?;
    Ok(Char2Report {
        gram: f.format_matrix(),
        base: k.clone(),
        extension: extension.clone(),
        kernel_base: fmt(k, &kb),
        kernel_extension: fmt(extension, &ke),
        kernel_perp_base: fmt(k, &kp),
        smoothable: smoothability_check(f, k, extension)?,
        fixed_group: fixed_group_report(f, k).map_err(|e| e.to_string()),
        lie: lie_fixed_dimension(f, k).map_err(|e| e.to_string()),
    })
}
