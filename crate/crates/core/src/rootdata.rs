//! Root data with the coordinate dot-product pairing: positive and simple
//! systems, Weyl groups, classification, integral closure and chamber
//! selection.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::intlat::{big_vec, hermite_normal_form, hnf_contains};
use crate::linalg;

pub type Vector = Vec<i64>;

pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;
pub const WEYL_BOUND_ENV: &str = "ROOTFOLD_WEYL_BOUND";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootDataError {
    #[error("vector is not regular: it vanishes on root {0:?}")]
    NotRegular(Vector),
    #[error("group order exceeds the bound {0}")]
    GroupTooLarge(usize),
    #[error("unknown or unmatched type: {0}")]
    UnknownType(String),
    #[error("component is not reduced")]
    NonReduced,
    #[error("bad input: {0}")]
    BadInput(String),
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn scale(a: &[i64], k: i64) -> Vector {
    a.iter().map(|x| x * k).collect()
}

fn axpy(y: &[i64], k: i64, x: &[i64]) -> Vector {
    y.iter().zip(x).map(|(a, b)| a + k * b).collect()
}

/// A root datum `(X, roots, X^vee, coroots)` with `X = X^vee = Z^rank`
/// paired by the dot product; `coroots[i]` is dual to `roots[i]`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    index: HashMap<Vector, usize>,
    preferred_simple: Option<Vec<usize>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.roots == other.roots && self.coroots == other.coroots
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootDatumJson {
    pub rank: usize,
    pub roots: Vec<Vector>,
    pub coroots: Vec<Vector>,
}

impl RootDatum {
    pub fn new(rank: usize, roots: Vec<Vector>, coroots: Vec<Vector>) -> Result<Self, RootDataError> {
        if roots.len() != coroots.len() {
            return Err(RootDataError::BadInput(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        if let Some(v) = roots.iter().chain(&coroots).find(|v| v.len() != rank) {
            return Err(RootDataError::BadInput(format!("vector {v:?} does not have length {rank}")));
        }
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            index.entry(r.clone()).or_insert(i);
        }
        Ok(RootDatum { rank, roots, coroots, index, preferred_simple: None })
    }

    /// Records a simple system used by [`default_positive_system`].
    pub fn with_preferred_simple(mut self, simple: Vec<usize>) -> Self {
        self.preferred_simple = Some(simple);
        self
    }

    pub fn preferred_simple(&self) -> Option<&[usize]> {
        self.preferred_simple.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &Vector {
        &self.coroots[i]
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// `<roots[i], coroots[j]>`
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        dot(&self.roots[i], &self.coroots[j])
    }

    pub fn negative(&self, i: usize) -> Option<usize> {
        self.index_of(&scale(&self.roots[i], -1))
    }

    /// Index of `s_i(roots[j])`.
    pub fn reflect(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.cartan(j, i);
        self.index_of(&axpy(&self.roots[j], -k, &self.roots[i]))
    }

    pub fn reflect_vector(&self, i: usize, x: &[i64]) -> Vector {
        let k = dot(x, &self.coroots[i]);
        axpy(x, -k, &self.roots[i])
    }

    pub fn reflect_covector(&self, i: usize, y: &[i64]) -> Vector {
        let k = dot(&self.roots[i], y);
        axpy(y, -k, &self.coroots[i])
    }

    /// Index of `2 roots[i]`, if it is a root.
    pub fn double(&self, i: usize) -> Option<usize> {
        self.index_of(&scale(&self.roots[i], 2))
    }

    /// Index of `roots[i] / 2`, if it is a root.
    pub fn half(&self, i: usize) -> Option<usize> {
        let r = &self.roots[i];
        if r.iter().all(|x| x % 2 == 0) {
            self.index_of(&r.iter().map(|x| x / 2).collect::<Vector>())
        } else {
            None
        }
    }

    pub fn is_multipliable(&self, i: usize) -> bool {
        self.double(i).is_some()
    }

    pub fn is_divisible(&self, i: usize) -> bool {
        self.half(i).is_some()
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.len()).all(|i| !self.is_multipliable(i))
    }

    /// Restriction to a subset of roots, keeping coordinates.
    pub fn sub_datum(&self, subset: &[usize]) -> RootDatum {
        let roots = subset.iter().map(|&i| self.roots[i].clone()).collect();
        let coroots = subset.iter().map(|&i| self.coroots[i].clone()).collect();
        RootDatum::new(self.rank, roots, coroots).expect("sub-datum of a well-shaped datum")
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson { rank: self.rank, roots: self.roots.clone(), coroots: self.coroots.clone() }
    }

    pub fn from_json(j: &RootDatumJson) -> Result<Self, RootDataError> {
        RootDatum::new(j.rank, j.roots.clone(), j.coroots.clone())
    }

    /// Reads `{"rank", "roots", "coroots"}` or `{"type": "E6", "form": "adjoint"}`.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, RootDataError> {
        if let Some(t) = v.get("type").and_then(|t| t.as_str()) {
            let form = match v.get("form").and_then(|f| f.as_str()) {
                None | Some("adjoint") => LatticeForm::Adjoint,
                Some("simply-connected") | Some("sc") => LatticeForm::SimplyConnected,
                Some(other) => return Err(RootDataError::BadInput(format!("unknown form {other}"))),
            };
            return named_datum(t, form);
        }
        let j: RootDatumJson =
            serde_json::from_value(v.clone()).map_err(|e| RootDataError::BadInput(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

pub fn validate(d: &RootDatum) -> ValidationReport {
    let mut v = Vec::new();
    let mut seen = HashSet::new();
    for (i, r) in d.roots.iter().enumerate() {
        if r.iter().all(|&x| x == 0) {
            v.push(format!("root {i} is zero"));
        }
        if !seen.insert(r.clone()) {
            v.push(format!("root {r:?} is duplicated"));
        }
    }
    let mut seen = HashSet::new();
    for c in &d.coroots {
        if !seen.insert(c.clone()) {
            v.push(format!("coroot {c:?} is duplicated"));
        }
    }
    for i in 0..d.len() {
        let p = d.cartan(i, i);
        if p != 2 {
            v.push(format!("<a,a^vee> != 2 for root {:?} (got {p})", d.roots[i]));
        }
        match d.negative(i) {
            None => v.push(format!("negative of root {:?} is missing", d.roots[i])),
            Some(n) => {
                if d.coroots[n] != scale(&d.coroots[i], -1) {
                    v.push(format!("coroot of -{:?} is not the negative coroot", d.roots[i]));
                }
            }
        }
    }
    if v.is_empty() {
        'outer: for i in 0..d.len() {
            for j in 0..d.len() {
                let img = d.reflect_vector(i, &d.roots[j]);
                match d.index_of(&img) {
                    None => {
                        v.push(format!("s_{:?} maps root {:?} outside the roots", d.roots[i], d.roots[j]));
                        break 'outer;
                    }
                    Some(k) => {
                        let co = d.reflect_covector(i, &d.coroots[j]);
                        if co != d.coroots[k] {
                            v.push(format!(
                                "reflection s_{:?} is incompatible with coroot of {:?}",
                                d.roots[i], d.roots[j]
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    ValidationReport { ok: v.is_empty(), violations: v }
}

// ---------------------------------------------------------------------------
// Named types

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeForm {
    Adjoint,
    SimplyConnected,
}

/// Bourbaki Cartan matrix, `A[i][j] = <alpha_i, alpha_j^vee>`.
pub fn cartan_matrix(family: Family, n: usize) -> Result<Vec<Vec<i64>>, RootDataError> {
    let bad = || RootDataError::UnknownType(format!("{family}{n}"));
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match family {
        Family::A => {
            if n < 1 {
                return Err(bad());
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut a, i, i + 1);
            }
        }
        Family::B | Family::C | Family::BC => {
            if n < 1 || (family == Family::C && n < 2) {
                return Err(bad());
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut a, i, i + 1);
            }
            if n >= 2 {
                if family == Family::C {
                    a[n - 1][n - 2] = -2;
                } else {
                    a[n - 2][n - 1] = -2;
                }
            }
        }
        Family::D => {
            if n < 3 {
                return Err(bad());
            }
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, n - 3, n - 1);
        }
        Family::E => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Family::F => {
            if n != 4 {
                return Err(bad());
            }
            link(&mut a, 0, 1);
            link(&mut a, 2, 3);
            a[1][2] = -2;
            a[2][1] = -1;
        }
        Family::G => {
            if n != 2 {
                return Err(bad());
            }
            a[0][1] = -1;
            a[1][0] = -3;
        }
    }
    Ok(a)
}

/// Root and coroot closure of simple roots/coroots under simple reflections,
/// ordered: positives by height (simple roots first, in order), then the
/// negatives in the same order.
fn generate_from_simple(
    rank: usize,
    simple_roots: &[Vector],
    simple_coroots: &[Vector],
) -> (Vec<Vector>, Vec<Vector>) {
    let n = simple_roots.len();
    let mut seen: HashMap<Vector, Vector> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        seen.insert(simple_roots[i].clone(), simple_coroots[i].clone());
        queue.push_back(simple_roots[i].clone());
    }
    while let Some(r) = queue.pop_front() {
        let c = seen[&r].clone();
        for j in 0..n {
            let k = dot(&r, &simple_coroots[j]);
            if k == 0 {
                continue;
            }
            let nr = axpy(&r, -k, &simple_roots[j]);
            if !seen.contains_key(&nr) {
                let l = dot(&simple_roots[j], &c);
                let nc = axpy(&c, -l, &simple_coroots[j]);
                seen.insert(nr.clone(), nc);
                queue.push_back(nr);
            }
        }
    }
    // coefficients in the simple basis for ordering
    let cart: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| dot(&simple_roots[i], &simple_coroots[j])).collect()).collect();
    let inv = linalg::inverse(&linalg::rational_matrix(&cart)).expect("Cartan matrix is invertible");
    let coeffs = |r: &Vector| -> Vec<i64> {
        let p: Vec<i64> = simple_coroots.iter().map(|c| dot(r, c)).collect();
        (0..n)
            .map(|i| {
                let s: BigRational = (0..n)
                    .map(|j| BigRational::from_integer(p[j].into()) * &inv[j][i])
                    .fold(BigRational::zero(), |a, b| a + b);
                assert!(s.is_integer());
                s.to_integer().to_i64().unwrap()
            })
            .collect()
    };
    let mut pos: Vec<(i64, Vec<i64>, Vector)> = seen
        .keys()
        .filter_map(|r| {
            let c = coeffs(r);
            let h: i64 = c.iter().sum();
            (h > 0).then(|| (h, c, r.clone()))
        })
        .collect();
    pos.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut roots: Vec<Vector> = pos.iter().map(|p| p.2.clone()).collect();
    roots.extend(pos.iter().map(|p| scale(&p.2, -1)));
    let coroots = roots.iter().map(|r| seen[r].clone()).collect();
    let _ = rank;
    (roots, coroots)
}

/// Irreducible named datum of the given family and rank.
pub fn irreducible_datum(family: Family, n: usize, form: LatticeForm) -> Result<RootDatum, RootDataError> {
    let base = if family == Family::BC { Family::B } else { family };
    let a = cartan_matrix(base, n)?;
    let (sr, sc): (Vec<Vector>, Vec<Vector>) = match form {
        LatticeForm::Adjoint => (
            (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect(),
            (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect(),
        ),
        LatticeForm::SimplyConnected => (
            a.clone(),
            (0..n).map(|j| (0..n).map(|i| (i == j) as i64).collect()).collect(),
        ),
    };
    let (mut roots, mut coroots) = generate_from_simple(n, &sr, &sc);
    if family == Family::BC {
        let half = roots.len() / 2;
        let mut pos_r: Vec<Vector> = roots[..half].to_vec();
        let mut pos_c: Vec<Vector> = coroots[..half].to_vec();
        for i in 0..half {
            if coroots[i].iter().all(|x| x % 2 == 0) {
                pos_r.push(scale(&roots[i], 2));
                pos_c.push(coroots[i].iter().map(|x| x / 2).collect());
            }
        }
        if pos_r.len() == half {
            return Err(RootDataError::UnknownType(format!(
                "BC{n} has no integral divisible coroots in this form"
            )));
        }
        roots = pos_r.clone();
        coroots = pos_c.clone();
        roots.extend(pos_r.iter().map(|r| scale(r, -1)));
        coroots.extend(pos_c.iter().map(|r| scale(r, -1)));
    }
    Ok(RootDatum::new(n, roots, coroots)?.with_preferred_simple((0..n).collect()))
}

/// Direct product of data, block-diagonal in coordinates.
pub fn product(parts: &[RootDatum]) -> RootDatum {
    let rank: usize = parts.iter().map(|p| p.rank).sum();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut simple = Vec::new();
    let mut off = 0;
    // positives of all parts first so that simple roots stay in front
    let mut pos_r = Vec::new();
    let mut pos_c = Vec::new();
    let mut neg_r = Vec::new();
    let mut neg_c = Vec::new();
    let mut simple_local = Vec::new();
    for p in parts {
        let embed = |v: &Vector| {
            let mut w = vec![0; rank];
            w[off..off + p.rank].copy_from_slice(v);
            w
        };
        let pos = default_positive_system(p);
        let ps = simple_system(p, &pos);
        for i in 0..p.len() {
            let target = if pos.contains(i) { (&mut pos_r, &mut pos_c) } else { (&mut neg_r, &mut neg_c) };
            if ps.contains(&i) {
                simple_local.push(embed(&p.roots[i]));
            }
            target.0.push(embed(&p.roots[i]));
            target.1.push(embed(&p.coroots[i]));
        }
        off += p.rank;
    }
    // order: simple roots first, then remaining positives, then negatives
    let mut order: Vec<usize> = Vec::new();
    for s in &simple_local {
        order.push(pos_r.iter().position(|r| r == s).unwrap());
    }
    for i in 0..pos_r.len() {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    for &i in &order {
        roots.push(pos_r[i].clone());
        coroots.push(pos_c[i].clone());
    }
    for &i in &order {
        let neg = scale(&pos_r[i], -1);
        let k = neg_r.iter().position(|r| *r == neg).unwrap();
        roots.push(neg_r[k].clone());
        coroots.push(neg_c[k].clone());
    }
    simple.extend(0..simple_local.len());
    RootDatum::new(rank, roots, coroots).unwrap().with_preferred_simple(simple)
}

/// Parses names like `E6`, `BC2`, `A2xA2`, `3A1`.
pub fn named_datum(name: &str, form: LatticeForm) -> Result<RootDatum, RootDataError> {
    let label: TypeLabel = name.parse()?;
    let mut parts = Vec::new();
    for c in &label.components {
        parts.push(irreducible_datum(c.family, c.rank, form)?);
    }
    if parts.len() == 1 {
        return Ok(parts.pop().unwrap());
    }
    Ok(product(&parts))
}

pub fn named(name: &str) -> RootDatum {
    named_datum(name, LatticeForm::Adjoint).unwrap_or_else(|e| panic!("named datum {name}: {e}"))
}

// ---------------------------------------------------------------------------
// Positive and simple systems

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveSystem {
    pub flags: Vec<bool>,
}

impl PositiveSystem {
    pub fn from_members(len: usize, members: &[usize]) -> Self {
        let mut flags = vec![false; len];
        for &m in members {
            flags[m] = true;
        }
        PositiveSystem { flags }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.flags[i]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.flags.len()).filter(|&i| self.flags[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn positive_system_from_regular(d: &RootDatum, v: &[i64]) -> Result<PositiveSystem, RootDataError> {
    let mut flags = Vec::with_capacity(d.len());
    for r in &d.roots {
        let p = dot(r, v);
        if p == 0 {
            return Err(RootDataError::NotRegular(r.clone()));
        }
        flags.push(p > 0);
    }
    Ok(PositiveSystem { flags })
}

pub fn positive_system_from_rational(d: &RootDatum, v: &[BigRational]) -> Result<PositiveSystem, RootDataError> {
    let mut flags = Vec::with_capacity(d.len());
    for r in &d.roots {
        let p: BigRational = r
            .iter()
            .zip(v)
            .map(|(a, b)| BigRational::from_integer((*a).into()) * b)
            .fold(BigRational::zero(), |a, b| a + b);
        if p.is_zero() {
            return Err(RootDataError::NotRegular(r.clone()));
        }
        flags.push(p.is_positive());
    }
    Ok(PositiveSystem { flags })
}

/// A lexicographic regular vector: `v_i = M^i` for a base `M` exceeding every coordinate.
pub fn generic_regular_vector(d: &RootDatum) -> Vector {
    let m = 2 * d.roots.iter().flatten().map(|x| x.abs()).max().unwrap_or(0) + 1;
    let mut v = Vec::with_capacity(d.rank);
    let mut p: i64 = 1;
    for _ in 0..d.rank {
        v.push(p);
        p = p.saturating_mul(m);
    }
    v
}

/// Positive system spanned by the recorded simple system, else lexicographic.
pub fn default_positive_system(d: &RootDatum) -> PositiveSystem {
    if let Some(simple) = &d.preferred_simple {
        if let Some(w) = dominant_witness(d, simple) {
            if let Ok(p) = positive_system_from_rational(d, &w) {
                return p;
            }
        }
    }
    positive_system_from_regular(d, &generic_regular_vector(d)).expect("lexicographic vector is regular")
}

/// A cocharacter (rational) pairing to 1 with every given simple root.
pub fn dominant_witness(d: &RootDatum, simple: &[usize]) -> Option<Vec<BigRational>> {
    let rows = linalg::rational_matrix(&simple.iter().map(|&i| d.roots[i].clone()).collect::<Vec<_>>());
    let b = vec![BigRational::from_integer(1.into()); simple.len()];
    linalg::solve(&rows, &b, d.rank)
}

/// Regular witness for a positive system: positive on every member.
pub fn regular_witness(d: &RootDatum, p: &PositiveSystem) -> Option<Vec<BigRational>> {
    let s = simple_system(d, p);
    let w = dominant_witness(d, &s)?;
    let q = positive_system_from_rational(d, &w).ok()?;
    (q == *p).then_some(w)
}

/// Indecomposable members of a set of roots (`a != b + c` inside the set).
pub fn indecomposable(d: &RootDatum, members: &[usize]) -> Vec<usize> {
    let set: HashSet<usize> = members.iter().copied().collect();
    let mut out = Vec::new();
    for &a in members {
        let decomposable = members.iter().any(|&b| {
            let diff: Vector = d.roots[a].iter().zip(&d.roots[b]).map(|(x, y)| x - y).collect();
            d.index_of(&diff).is_some_and(|c| set.contains(&c))
        });
        if !decomposable {
            out.push(a);
        }
    }
    out.sort_unstable();
    out
}

/// Simple roots of a positive system, in root-index order.
pub fn simple_system(d: &RootDatum, p: &PositiveSystem) -> Vec<usize> {
    indecomposable(d, &p.members())
}

/// Coefficients of every root in the basis `simple` (which must span the roots).
pub fn simple_coordinates(d: &RootDatum, simple: &[usize]) -> Vec<Option<Vec<i64>>> {
    let n = simple.len();
    let cart: Vec<Vec<i64>> = simple.iter().map(|&i| simple.iter().map(|&j| d.cartan(i, j)).collect()).collect();
    let Some(inv) = linalg::inverse(&linalg::rational_matrix(&cart)) else {
        return vec![None; d.len()];
    };
    d.roots
        .iter()
        .map(|r| {
            let p: Vec<BigRational> =
                simple.iter().map(|&j| BigRational::from_integer(dot(r, &d.coroots[j]).into())).collect();
            let c: Vec<BigRational> = (0..n)
                .map(|i| (0..n).map(|j| &p[j] * &inv[j][i]).fold(BigRational::zero(), |a, b| a + b))
                .collect();
            // must reproduce the root exactly (roots outside the span get None)
            let mut back = vec![BigRational::zero(); d.rank];
            for (k, &s) in simple.iter().enumerate() {
                for (x, &y) in back.iter_mut().zip(&d.roots[s]) {
                    *x += &c[k] * BigRational::from_integer(y.into());
                }
            }
            let ok = back.iter().zip(r).all(|(a, &b)| *a == BigRational::from_integer(b.into()));
            if ok && c.iter().all(|x| x.is_integer()) {
                Some(c.iter().map(|x| x.to_integer().to_i64().unwrap()).collect())
            } else {
                None
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Weyl groups

pub fn weyl_bound() -> usize {
    std::env::var(WEYL_BOUND_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_WEYL_BOUND)
}

/// Weyl group as permutations of the root list, generated by simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    simple: Vec<usize>,
    perms: Vec<Vec<u16>>,
    lengths: Vec<u32>,
    parent: Vec<(u32, u8)>,
    index: HashMap<Vec<u16>, u32>,
    reflections: Vec<Vec<Vec<i64>>>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn perm(&self, w: usize) -> &[u16] {
        &self.perms[w]
    }

    pub fn length(&self, w: usize) -> u32 {
        self.lengths[w]
    }

    /// Element index of the simple reflection `s_k` (k indexes `simple`).
    pub fn generator(&self, k: usize) -> usize {
        let key: Vec<u16> = self.reflection_perm(k);
        self.index[&key] as usize
    }

    fn reflection_perm(&self, k: usize) -> Vec<u16> {
        // recover from BFS: elements of length one
        (0..self.perms.len())
            .find(|&w| self.lengths[w] == 1 && self.parent[w].1 as usize == k)
            .map(|w| self.perms[w].clone())
            .unwrap()
    }

    pub fn find(&self, perm: &[u16]) -> Option<usize> {
        self.index.get(perm).map(|&x| x as usize)
    }

    /// `a * b` (apply `b` first).
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let pa = &self.perms[a];
        let key: Vec<u16> = self.perms[b].iter().map(|&x| pa[x as usize]).collect();
        self.index[&key] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        let pa = &self.perms[a];
        let mut key = vec![0u16; pa.len()];
        for (i, &x) in pa.iter().enumerate() {
            key[x as usize] = i as u16;
        }
        self.index[&key] as usize
    }

    pub fn apply(&self, w: usize, root: usize) -> usize {
        self.perms[w][root] as usize
    }

    /// Lattice matrix of `w` (acting on column vectors of characters).
    pub fn matrix(&self, w: usize) -> Vec<Vec<i64>> {
        let mut m: Vec<Vec<i64>> = (0..self.rank).map(|i| (0..self.rank).map(|j| (i == j) as i64).collect()).collect();
        let mut word = Vec::new();
        let mut cur = w;
        while self.lengths[cur] > 0 {
            let (p, g) = self.parent[cur];
            word.push(g as usize);
            cur = p as usize;
        }
        // w = s_{word[0]} s_{word[1]} ... ; build right to left
        for &g in word.iter().rev() {
            m = mat_mul_i64(&self.reflections[g], &m);
        }
        m
    }

    /// Reduced word in simple-reflection positions (leftmost first).
    pub fn word(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w;
        while self.lengths[cur] > 0 {
            let (p, g) = self.parent[cur];
            word.push(g as usize);
            cur = p as usize;
        }
        word
    }

    pub fn multiplication_table(&self, bound: usize) -> Result<Vec<Vec<u32>>, RootDataError> {
        if self.order() > bound {
            return Err(RootDataError::GroupTooLarge(bound));
        }
        Ok((0..self.order()).map(|a| (0..self.order()).map(|b| self.compose(a, b) as u32).collect()).collect())
    }

    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&w| self.lengths[w]).unwrap_or(0)
    }
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

pub fn mat_vec_i64(a: &[Vec<i64>], v: &[i64]) -> Vector {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn weyl_group(d: &RootDatum) -> Result<WeylGroup, RootDataError> {
    let p = default_positive_system(d);
    let s = simple_system(d, &p);
    weyl_group_with(d, &s, weyl_bound())
}

pub fn weyl_group_with(d: &RootDatum, simple: &[usize], bound: usize) -> Result<WeylGroup, RootDataError> {
    let n = d.len();
    let gens: Vec<Vec<u16>> = simple
        .iter()
        .map(|&i| {
            (0..n)
                .map(|j| d.reflect(i, j).map(|k| k as u16).ok_or_else(|| RootDataError::BadInput("roots not reflection-closed".into())))
                .collect::<Result<Vec<u16>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let reflections: Vec<Vec<Vec<i64>>> = simple
        .iter()
        .map(|&i| {
            (0..d.rank)
                .map(|r| (0..d.rank).map(|c| (r == c) as i64 - d.roots[i][r] * d.coroots[i][c]).collect())
                .collect()
        })
        .collect();
    let id: Vec<u16> = (0..n as u16).collect();
    let mut perms = vec![id.clone()];
    let mut lengths = vec![0u32];
    let mut parent = vec![(0u32, 0u8)];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut head = 0;
    while head < perms.len() {
        for (g, s) in gens.iter().enumerate() {
            let key: Vec<u16> = perms[head].iter().map(|&x| s[x as usize]).collect();
            if !index.contains_key(&key) {
                if perms.len() >= bound {
                    return Err(RootDataError::GroupTooLarge(bound));
                }
                index.insert(key.clone(), perms.len() as u32);
                perms.push(key);
                lengths.push(lengths[head] + 1);
                parent.push((head as u32, g as u8));
            }
        }
        head += 1;
    }
    Ok(WeylGroup { rank: d.rank, simple: simple.to_vec(), perms, lengths, parent, index, reflections })
}

/// All positive systems, as the Weyl orbit of the default one.
pub fn all_positive_systems(d: &RootDatum) -> Result<Vec<PositiveSystem>, RootDataError> {
    let seed = default_positive_system(d);
    let w = weyl_group_with(d, &simple_system(d, &seed), weyl_bound())?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in 0..w.order() {
        let mut flags = vec![false; d.len()];
        for i in seed.members() {
            flags[w.apply(e, i)] = true;
        }
        let p = PositiveSystem { flags };
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentType {
    pub family: Family,
    pub rank: usize,
}

impl ComponentType {
    /// Isomorphism class representative.
    pub fn normalized(self) -> ComponentType {
        let f = match (self.family, self.rank) {
            (Family::B | Family::C, 1) => Family::A,
            (Family::B, 2) => Family::C,
            (Family::D, 3) => Family::A,
            (f, _) => f,
        };
        ComponentType { family: f, rank: self.rank }
    }

    /// Number of roots.
    pub fn root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::BC => 2 * n * n + 2 * n,
            Family::D => 2 * n * (n - 1),
            Family::E => [72, 126, 240][n - 6],
            Family::F => 48,
            Family::G => 12,
        }
    }

    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C | Family::BC => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => [51_840u128, 2_903_040, 696_729_600][self.rank - 6],
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Multiset of irreducible types. Equality is up to isomorphism.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct TypeLabel {
    pub components: Vec<ComponentType>,
}

impl TypeLabel {
    pub fn normalized(&self) -> Vec<ComponentType> {
        let mut v: Vec<ComponentType> = self.components.iter().map(|c| c.normalized()).collect();
        v.sort();
        v
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(|c| c.weyl_order()).product()
    }

    /// Exact family-and-rank equality, distinguishing B2 from C2.
    pub fn same_labels(&self, other: &TypeLabel) -> bool {
        let mut a = self.components.clone();
        let mut b = other.components.clone();
        a.sort();
        b.sort();
        a == b
    }
}

impl PartialEq for TypeLabel {
    fn eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("T");
        }
        let mut v = self.components.clone();
        v.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.family.cmp(&b.family)));
        let mut parts = Vec::new();
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if j - i > 1 {
                parts.push(format!("{}{}", j - i, v[i]));
            } else {
                parts.push(v[i].to_string());
            }
            i = j;
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for TypeLabel {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootDataError::UnknownType(s.to_string());
        let s = s.trim();
        if s == "T" || s.is_empty() {
            return Ok(TypeLabel { components: vec![] });
        }
        let mut components = Vec::new();
        for part in s.split(['+', 'x', '×']) {
            let part = part.trim();
            let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mult: usize = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            let rest = &part[digits.len()..];
            let (fam, num) = if let Some(r) = rest.strip_prefix("BC") {
                (Family::BC, r)
            } else {
                let mut ch = rest.chars();
                let f = match ch.next().ok_or_else(bad)? {
                    'A' => Family::A,
                    'B' => Family::B,
                    'C' => Family::C,
                    'D' => Family::D,
                    'E' => Family::E,
                    'F' => Family::F,
                    'G' => Family::G,
                    _ => return Err(bad()),
                };
                (f, &rest[1..])
            };
            let rank: usize = num.parse().map_err(|_| bad())?;
            cartan_matrix(if fam == Family::BC { Family::B } else { fam }, rank)?;
            for _ in 0..mult {
                components.push(ComponentType { family: fam, rank });
            }
        }
        Ok(TypeLabel { components })
    }
}

/// One irreducible component: its roots, type and Bourbaki-ordered simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub roots: Vec<usize>,
    pub kind: ComponentType,
    pub simple: Vec<usize>,
}

/// Connected classes of the non-orthogonality graph.
pub fn component_partition(d: &RootDatum) -> Vec<Vec<usize>> {
    let n = d.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut k = 0;
        while k < members.len() {
            let a = members[k];
            for b in 0..n {
                if comp[b] == usize::MAX && d.cartan(a, b) != 0 {
                    comp[b] = id;
                    members.push(b);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Permutation `sigma` with `c[sigma[i]][sigma[j]] == s[i][j]`, first in index order.
pub fn match_cartan(c: &[Vec<i64>], s: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = c.len();
    if s.len() != n {
        return None;
    }
    fn go(c: &[Vec<i64>], s: &[Vec<i64>], sigma: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = sigma.len();
        if i == c.len() {
            return true;
        }
        for cand in 0..c.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|k| c[cand][sigma[k]] == s[i][k] && c[sigma[k]][cand] == s[k][i]);
            if ok {
                sigma.push(cand);
                used[cand] = true;
                if go(c, s, sigma, used) {
                    return true;
                }
                sigma.pop();
                used[cand] = false;
            }
        }
        false
    }
    let mut sigma = Vec::new();
    let mut used = vec![false; n];
    go(c, s, &mut sigma, &mut used).then_some(sigma)
}

fn candidates(n: usize, count: usize) -> Vec<ComponentType> {
    let mut v = Vec::new();
    let fams: &[Family] = if n == 2 {
        &[Family::A, Family::C, Family::B, Family::G]
    } else {
        &[Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G]
    };
    for &f in fams {
        if cartan_matrix(f, n).is_ok() && !(f == Family::D && n < 4) {
            let t = ComponentType { family: f, rank: n };
            if t.root_count() == count {
                v.push(t);
            }
        }
    }
    v
}

/// Classifies one irreducible component given a positive system of the datum.
pub fn classify_component(d: &RootDatum, roots: &[usize], pos: &PositiveSystem) -> Result<Component, RootDataError> {
    let members: Vec<usize> = roots.iter().copied().filter(|&i| pos.contains(i)).collect();
    let simple = indecomposable(d, &members);
    let n = simple.len();
    let cart: Vec<Vec<i64>> = simple.iter().map(|&i| simple.iter().map(|&j| d.cartan(i, j)).collect()).collect();
    let non_reduced = roots.iter().any(|&i| d.is_multipliable(i));
    let cands = if non_reduced {
        vec![ComponentType { family: Family::BC, rank: n }]
    } else {
        candidates(n, roots.len())
    };
    for t in cands {
        if t.root_count() != roots.len() {
            continue;
        }
        let base = if t.family == Family::BC { Family::B } else { t.family };
        let std = cartan_matrix(base, n)?;
        if let Some(sigma) = match_cartan(&cart, &std) {
            return Ok(Component {
                roots: roots.to_vec(),
                kind: t,
                simple: sigma.iter().map(|&k| simple[k]).collect(),
            });
        }
    }
    Err(RootDataError::UnknownType(format!("component with {} roots and Cartan matrix {cart:?}", roots.len())))
}

pub fn irreducible_components(d: &RootDatum) -> Result<Vec<Component>, RootDataError> {
    let pos = default_positive_system(d);
    component_partition(d).iter().map(|c| classify_component(d, c, &pos)).collect()
}

pub fn type_label(d: &RootDatum) -> Result<TypeLabel, RootDataError> {
    Ok(TypeLabel { components: irreducible_components(d)?.into_iter().map(|c| c.kind).collect() })
}

/// Type of a reflection-closed subset of roots.
pub fn classify_subset(d: &RootDatum, subset: &[usize]) -> Result<TypeLabel, RootDataError> {
    type_label(&d.sub_datum(subset))
}

/// Like [`classify_subset`], but rank-2 two-length components sitting inside a
/// non-reduced ambient are labelled B2 when they contain multipliable ambient
/// roots and C2 when they contain divisible ones.
pub fn classify_within(d: &RootDatum, subset: &[usize]) -> Result<TypeLabel, RootDataError> {
    let sub = d.sub_datum(subset);
    let comps = irreducible_components(&sub)?;
    let mut out = Vec::new();
    for c in comps {
        let mut kind = c.kind;
        if matches!(kind.family, Family::B | Family::C) && kind.rank >= 2 {
            let amb: Vec<usize> = c.roots.iter().map(|&i| subset[i]).collect();
            if amb.iter().any(|&i| d.is_multipliable(i)) {
                kind.family = Family::B;
            } else if amb.iter().any(|&i| d.is_divisible(i)) {
                kind.family = Family::C;
            }
        }
        out.push(kind);
    }
    Ok(TypeLabel { components: out })
}

/// Highest root of the component containing `component`, and its coefficients
/// over `simple` (zero off the component).
pub fn highest_root(d: &RootDatum, simple: &[usize], component: &[usize]) -> Result<(usize, Vec<i64>), RootDataError> {
    if component.iter().any(|&i| d.is_multipliable(i)) {
        return Err(RootDataError::NonReduced);
    }
    let coords = simple_coordinates(d, simple);
    let mut best: Option<(usize, i64)> = None;
    for &i in component {
        let Some(c) = &coords[i] else { continue };
        if c.iter().all(|&x| x >= 0) {
            let h: i64 = c.iter().sum();
            if best.is_none_or(|(_, bh)| h > bh) {
                best = Some((i, h));
            }
        }
    }
    let (top, _) = best.ok_or_else(|| RootDataError::BadInput("no positive root in component".into()))?;
    let tc = coords[top].clone().unwrap();
    for &i in component {
        if let Some(c) = &coords[i] {
            if c.iter().all(|&x| x >= 0) && c.iter().zip(&tc).any(|(a, b)| a > b) {
                return Err(RootDataError::BadInput("highest root is not dominant".into()));
            }
        }
    }
    Ok((top, tc))
}

/// `Z-span(S) ∩ roots`, sorted.
pub fn integral_closure(d: &RootDatum, subset: &[usize]) -> Vec<usize> {
    let gens: Vec<Vec<BigInt>> = subset.iter().map(|&i| big_vec(&d.roots[i])).collect();
    let hnf = hermite_normal_form(&gens, d.rank);
    (0..d.len()).filter(|&i| hnf_contains(&hnf, &big_vec(&d.roots[i]))).collect()
}

pub fn proportional(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

pub fn strongly_orthogonal(d: &RootDatum, a: usize, b: usize) -> bool {
    let (ra, rb) = (&d.roots[a], &d.roots[b]);
    if proportional(ra, rb) {
        return false;
    }
    let sum: Vector = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
    let diff: Vector = ra.iter().zip(rb).map(|(x, y)| x - y).collect();
    d.index_of(&sum).is_none() && d.index_of(&diff).is_none()
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn pair_q(r: &[i64], v: &[BigRational]) -> BigRational {
    r.iter().zip(v).map(|(a, b)| rat(*a) * b).fold(BigRational::zero(), |a, b| a + b)
}

/// Positive system of `d` containing `sub_pos` in which `a` (or `a/2` when
/// `a` is divisible) is simple. `sub` must be closed under negation with
/// `sub_pos` one of its positive systems and `a` simple there.
pub fn keep_it_simple(
    d: &RootDatum,
    sub: &[usize],
    sub_pos: &[usize],
    a: usize,
) -> Result<PositiveSystem, RootDataError> {
    let sub_set: HashSet<usize> = sub.iter().copied().collect();
    let pos_set: HashSet<usize> = sub_pos.iter().copied().collect();
    for &i in sub {
        let n = d.negative(i).ok_or_else(|| RootDataError::BadInput("root without negative".into()))?;
        if !sub_set.contains(&n) {
            return Err(RootDataError::BadInput("subsystem is not closed under negation".into()));
        }
        if pos_set.contains(&i) == pos_set.contains(&n) {
            return Err(RootDataError::BadInput("positive set must contain exactly one of each ±b".into()));
        }
    }
    if !pos_set.is_subset(&sub_set) {
        return Err(RootDataError::BadInput("positive set is not inside the subsystem".into()));
    }
    let simple1 = indecomposable(d, sub_pos);
    if !simple1.contains(&a) {
        return Err(RootDataError::BadInput("chosen root is not simple in the subsystem".into()));
    }
    // the subsystem's positives must come from a chamber: witness check
    let rows: Vec<Vec<BigRational>> = simple1.iter().map(|&i| d.roots[i].iter().map(|&x| rat(x)).collect()).collect();
    let ones = vec![rat(1); simple1.len()];
    let w = linalg::solve(&rows, &ones, d.rank).ok_or_else(|| RootDataError::BadInput("simple roots are dependent".into()))?;
    if sub_pos.iter().any(|&i| !pair_q(&d.roots[i], &w).is_positive()) {
        return Err(RootDataError::BadInput("positive set is not a positive system".into()));
    }

    let ra = &d.roots[a];
    let ca: Vec<BigRational> = d.coroots[a].iter().map(|&x| rat(x)).collect();
    // x0: zero on a, one on the other simple roots of the subsystem
    let mut rows = vec![ra.iter().map(|&x| rat(x)).collect::<Vec<_>>()];
    let mut rhs = vec![rat(0)];
    for &s in &simple1 {
        if s != a {
            rows.push(d.roots[s].iter().map(|&x| rat(x)).collect());
            rhs.push(rat(1));
        }
    }
    let xp = linalg::solve(&rows, &rhs, d.rank).ok_or_else(|| RootDataError::BadInput("inconsistent wall".into()))?;
    let others: Vec<usize> = (0..d.len()).filter(|&i| !proportional(&d.roots[i], ra)).collect();
    let mut x0 = None;
    'search: for attempt in 0..64i64 {
        // perturbation inside the wall of a
        let y: Vec<BigRational> = (0..d.rank).map(|i| rat((attempt + 2).pow(i as u32 % 8) + i as i64 * attempt)).collect();
        let t = pair_q(ra, &y) / rat(2);
        let yp: Vec<BigRational> = y.iter().zip(&ca).map(|(yi, ci)| yi - &t * ci).collect();
        let bound = simple1
            .iter()
            .filter(|&&s| s != a)
            .map(|&s| pair_q(&d.roots[s], &yp).abs())
            .fold(rat(1), |m, v| if v > m { v } else { m });
        for k in 1..40 {
            let delta = BigRational::new(1.into(), BigInt::from(2).pow(k as u32)) / &bound;
            let cand: Vec<BigRational> = xp.iter().zip(&yp).map(|(p, q)| p + &delta * q).collect();
            if others.iter().all(|&i| !pair_q(&d.roots[i], &cand).is_zero())
                && simple1.iter().filter(|&&s| s != a).all(|&s| pair_q(&d.roots[s], &cand).is_positive())
            {
                x0 = Some(cand);
                break 'search;
            }
        }
    }
    let x0 = x0.ok_or_else(|| RootDataError::BadInput("no generic point on the wall".into()))?;
    let min_other = others
        .iter()
        .map(|&i| pair_q(&d.roots[i], &x0).abs())
        .min()
        .unwrap_or_else(|| rat(1));
    let max_co = others
        .iter()
        .map(|&i| rat(dot(&d.roots[i], &d.coroots[a]).abs()))
        .max()
        .unwrap_or_else(|| rat(0));
    let eps = min_other / (rat(2) * max_co + rat(1));
    let v: Vec<BigRational> = x0.iter().zip(&ca).map(|(x, c)| x + &eps * c).collect();
    let p = positive_system_from_rational(d, &v)?;
    let simple = simple_system(d, &p);
    let target = d.half(a).unwrap_or(a);
    if !simple.contains(&target) || sub_pos.iter().any(|&i| !p.contains(i)) {
        return Err(RootDataError::BadInput("chamber selection failed".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootDatum {
        RootDatum::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0], vec![0, -1], vec![-1, -1]],
            vec![vec![2, -1], vec![-1, 2], vec![1, 1], vec![-2, 1], vec![1, -2], vec![-1, -1]],
        )
        .unwrap()
    }

    #[test]
    fn validate_a2() {
        assert!(validate(&a2()).ok);
        let mut bad = a2().to_json();
        bad.coroots[0] = vec![1, -1];
        let r = validate(&RootDatum::from_json(&bad).unwrap());
        assert!(!r.ok);
        assert!(r.violations.iter().any(|v| v.contains("!= 2")));
        assert!(validate(&RootDatum::new(2, vec![], vec![]).unwrap()).ok);
    }

    #[test]
    fn positive_systems() {
        let d = a2();
        let p = positive_system_from_regular(&d, &[2, 1]).unwrap();
        assert_eq!(p.members(), vec![0, 1, 2]);
        assert_eq!(simple_system(&d, &p), vec![0, 1]);
        assert_eq!(
            positive_system_from_regular(&d, &[1, -1]),
            Err(RootDataError::NotRegular(vec![1, 1]))
        );
        let bc1 = named("BC1");
        let p = default_positive_system(&bc1);
        assert_eq!(p.len(), 2);
        let s = simple_system(&bc1, &p);
        assert_eq!(s.len(), 1);
        assert_eq!(bc1.root(s[0]), &vec![1]);
    }

    #[test]
    fn named_types_validate_and_count() {
        for name in ["A1", "A2", "A4", "B3", "C3", "D4", "D5", "E6", "F4", "G2", "BC2", "BC3", "A2xA2", "E7"] {
            let d = named(name);
            assert!(validate(&d).ok, "{name}: {:?}", validate(&d).violations);
            let t: TypeLabel = name.parse().unwrap();
            let expected: usize = t.components.iter().map(|c| c.root_count()).sum();
            assert_eq!(d.len(), expected, "{name}");
            assert_eq!(type_label(&d).unwrap(), t, "{name}");
        }
        let sc = named_datum("E6", LatticeForm::SimplyConnected).unwrap();
        assert!(validate(&sc).ok);
        assert_eq!(sc.len(), 72);
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group(&a2()).unwrap().order(), 6);
        assert_eq!(weyl_group(&named("D4")).unwrap().order(), 192);
        assert_eq!(weyl_group(&named("BC2")).unwrap().order(), 8);
        assert_eq!(weyl_group(&RootDatum::new(1, vec![], vec![]).unwrap()).unwrap().order(), 1);
        assert_eq!(
            weyl_group_with(&named("A4"), &[0, 1, 2, 3], 10).unwrap_err(),
            RootDataError::GroupTooLarge(10)
        );
    }

    #[test]
    fn weyl_matrix_matches_permutation() {
        let d = named("B3");
        let w = weyl_group(&d).unwrap();
        for e in (0..w.order()).step_by(7) {
            let m = w.matrix(e);
            for i in 0..d.len() {
                assert_eq!(&mat_vec_i64(&m, d.root(i)), d.root(w.apply(e, i)));
            }
        }
    }

    #[test]
    fn components_and_labels() {
        let comps = irreducible_components(&named("A1xA1")).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(type_label(&named("BC1")).unwrap().to_string(), "BC1");
        let l: TypeLabel = "A5+A1".parse().unwrap();
        assert_eq!(l.to_string(), "A5+A1");
        let l: TypeLabel = "3A2".parse().unwrap();
        assert_eq!(l.components.len(), 3);
        assert_eq!("B2".parse::<TypeLabel>().unwrap(), "C2".parse::<TypeLabel>().unwrap());
        assert_eq!("D3".parse::<TypeLabel>().unwrap(), "A3".parse::<TypeLabel>().unwrap());
    }

    #[test]
    fn bourbaki_order_is_preserved() {
        for name in ["B4", "C4", "F4", "G2", "E6", "D5"] {
            let d = named(name);
            let c = &irreducible_components(&d).unwrap()[0];
            assert_eq!(c.simple, (0..d.rank()).collect::<Vec<_>>(), "{name}");
        }
    }

    #[test]
    fn highest_roots() {
        let d = named("E6");
        let (_, c) = highest_root(&d, &[0, 1, 2, 3, 4, 5], &(0..72).collect::<Vec<_>>()).unwrap();
        assert_eq!(c, vec![1, 2, 2, 3, 2, 1]);
        let d = named("A4");
        let (_, c) = highest_root(&d, &[0, 1, 2, 3], &(0..d.len()).collect::<Vec<_>>()).unwrap();
        assert_eq!(c, vec![1, 1, 1, 1]);
        let bc = named("BC1");
        assert_eq!(highest_root(&bc, &[0], &[0, 1, 2, 3]).unwrap_err(), RootDataError::NonReduced);
    }

    #[test]
    fn closure_and_orthogonality() {
        let d = a2();
        assert_eq!(integral_closure(&d, &[2]), vec![2, 5]);
        assert_eq!(integral_closure(&d, &[0, 1]).len(), 6);
        assert!(!strongly_orthogonal(&d, 0, 1));
        assert!(!strongly_orthogonal(&d, 0, 0));
        let aa = named("A1xA1");
        assert!(strongly_orthogonal(&aa, 0, 1));
    }

    #[test]
    fn keep_it_simple_examples() {
        let d = a2();
        let p = keep_it_simple(&d, &[2, 5], &[2], 2).unwrap();
        assert_eq!(p.members(), vec![1, 2, 3]);
        let full = positive_system_from_regular(&d, &[2, 1]).unwrap();
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(keep_it_simple(&d, &all, &full.members(), 0).unwrap(), full);
        let bc = named("BC1");
        let two = bc.index_of(&[2]).unwrap();
        let mtwo = bc.index_of(&[-2]).unwrap();
        let p = keep_it_simple(&bc, &[two, mtwo], &[two], two).unwrap();
        assert!(p.contains(bc.index_of(&[1]).unwrap()) && p.contains(two));
    }
}
