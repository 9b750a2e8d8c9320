//! Automorphisms of root data and finite groups of them.

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::intlat::{IntMatrix, LatticeError};
use crate::linalg;
use crate::rootdata::{
    component_partition, default_positive_system, dominant_witness, highest_root, irreducible_components,
    mat_mul_i64, mat_vec_i64, positive_system_from_rational, simple_system, weyl_bound, weyl_group_with,
    PositiveSystem, RootDataError, RootDatum, Vector,
};

pub const ACTION_GROUP_BOUND: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("group order exceeds the bound {0}")]
    GroupTooLarge(usize),
    #[error("structure is not stable under the group")]
    NotStable,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("datum is not reduced")]
    NonReduced,
    #[error("datum is not irreducible")]
    NotIrreducible,
    #[error("diagram automorphism does not lift to an integral matrix")]
    NotIntegral,
    #[error("unknown action {0}")]
    UnknownAction(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let c = m.first().map_or(0, |r| r.len());
    (0..c).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorJson {
    pub matrix: Vec<Vec<i64>>,
}

/// `{"generators": [{"matrix": ...}], "geometric": [generator indices]}`;
/// a missing `geometric` list makes the whole group geometric.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionJson {
    pub generators: Vec<GeneratorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometric: Option<Vec<usize>>,
}

impl ActionJson {
    pub fn from_group(g: &ActionGroup) -> Self {
        let generators = g.generators.iter().map(|&k| GeneratorJson { matrix: g.elements[k].matrix.clone() }).collect();
        let geometric = g.geometric.as_ref().map(|geo| {
            (0..g.generators.len()).filter(|&i| geo.contains(&g.generators[i])).collect()
        });
        ActionJson { generators, geometric }
    }

    pub fn to_group(&self, d: &RootDatum) -> Result<ActionGroup, ActionError> {
        let gens: Vec<DatumAutomorphism> =
            self.generators.iter().map(|g| DatumAutomorphism::new(d, g.matrix.clone())).collect::<Result<_, _>>()?;
        let g = close_group(d, &gens)?;
        let geo: Vec<usize> = match &self.geometric {
            None => (0..g.order()).collect(),
            Some(ix) => ix
                .iter()
                .map(|&i| {
                    g.generators
                        .get(i)
                        .copied()
                        .ok_or_else(|| ActionError::NotAutomorphism(format!("no generator {i}")))
                })
                .collect::<Result<_, _>>()?,
        };
        g.with_geometric(&geo)
    }
}

/// Reads an [`ActionJson`] or `{"named": "swap"}`.
pub fn action_from_json_value(d: &RootDatum, v: &serde_json::Value) -> Result<ActionGroup, ActionError> {
    if let Some(name) = v.get("named").and_then(|n| n.as_str()) {
        let g = named_action(d, name)?;
        let all: Vec<usize> = (0..g.order()).collect();
        return g.with_geometric(&all);
    }
    let j: ActionJson =
        serde_json::from_value(v.clone()).map_err(|e| ActionError::NotAutomorphism(format!("bad action JSON: {e}")))?;
    j.to_group(d)
}

/// Lattice automorphism `g` of the characters preserving the roots, with its
/// root permutation and the contragredient `(g^T)^{-1}` on cocharacters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DatumAutomorphism {
    pub matrix: Vec<Vec<i64>>,
    pub perm: Vec<usize>,
    pub dual: Vec<Vec<i64>>,
}

impl DatumAutomorphism {
    pub fn new(d: &RootDatum, matrix: Vec<Vec<i64>>) -> Result<Self, ActionError> {
        let n = d.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(ActionError::NotAutomorphism(format!("matrix must be {n}x{n}")));
        }
        let im = IntMatrix::from_i64(&matrix, n);
        let inv = im
            .inverse()
            .ok_or_else(|| ActionError::NotAutomorphism("matrix is not unimodular".into()))?;
        let dual = transpose(&inv.to_i64().expect("inverse of small matrix fits i64"));
        let mut perm = Vec::with_capacity(d.len());
        for i in 0..d.len() {
            let img = mat_vec_i64(&matrix, d.root(i));
            let j = d
                .index_of(&img)
                .ok_or_else(|| ActionError::NotAutomorphism(format!("root {:?} maps to non-root {img:?}", d.root(i))))?;
            let co = mat_vec_i64(&dual, d.coroot(i));
            if &co != d.coroot(j) {
                return Err(ActionError::NotAutomorphism(format!(
                    "coroot of {:?} is not carried to the coroot of its image",
                    d.root(i)
                )));
            }
            perm.push(j);
        }
        Ok(DatumAutomorphism { matrix, perm, dual })
    }

    pub fn identity(d: &RootDatum) -> Self {
        DatumAutomorphism {
            matrix: identity_matrix(d.rank()),
            perm: (0..d.len()).collect(),
            dual: identity_matrix(d.rank()),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &DatumAutomorphism) -> DatumAutomorphism {
        DatumAutomorphism {
            matrix: mat_mul_i64(&self.matrix, &other.matrix),
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
            dual: mat_mul_i64(&self.dual, &other.dual),
        }
    }

    pub fn apply(&self, x: &[i64]) -> Vector {
        mat_vec_i64(&self.matrix, x)
    }

    pub fn apply_dual(&self, y: &[i64]) -> Vector {
        mat_vec_i64(&self.dual, y)
    }

    pub fn int_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64(&self.matrix, self.matrix.len())
    }

    pub fn int_dual(&self) -> IntMatrix {
        IntMatrix::from_i64(&self.dual, self.dual.len())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_matrix(self.matrix.len())
    }
}

/// Finite group of datum automorphisms with its multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionGroup {
    pub elements: Vec<DatumAutomorphism>,
    /// `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub generators: Vec<usize>,
    pub geometric: Option<Vec<usize>>,
}

pub fn close_group(d: &RootDatum, generators: &[DatumAutomorphism]) -> Result<ActionGroup, ActionError> {
    close_group_bounded(d, generators, ACTION_GROUP_BOUND)
}

pub fn close_group_bounded(
    d: &RootDatum,
    generators: &[DatumAutomorphism],
    bound: usize,
) -> Result<ActionGroup, ActionError> {
    for g in generators {
        let checked = DatumAutomorphism::new(d, g.matrix.clone())?;
        if checked != *g {
            return Err(ActionError::NotAutomorphism("inconsistent permutation or dual".into()));
        }
    }
    let mut elements = vec![DatumAutomorphism::identity(d)];
    let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
    index.insert(elements[0].matrix.clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let e = g.compose(&elements[head]);
            if !index.contains_key(&e.matrix) {
                if elements.len() >= bound {
                    return Err(ActionError::GroupTooLarge(bound));
                }
                index.insert(e.matrix.clone(), elements.len());
                elements.push(e);
            }
        }
        head += 1;
    }
    let table = (0..elements.len())
        .map(|a| (0..elements.len()).map(|b| index[&mat_mul_i64(&elements[a].matrix, &elements[b].matrix)]).collect())
        .collect();
    let gens = generators.iter().map(|g| index[&g.matrix]).collect();
    Ok(ActionGroup { elements, table, identity: 0, generators: gens, geometric: None })
}

impl ActionGroup {
    pub fn trivial(d: &RootDatum) -> Self {
        close_group(d, &[]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("group element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.table[a][x];
            k += 1;
        }
        k
    }

    pub fn subgroup_closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = vec![self.identity];
        let mut seen: HashSet<usize> = set.iter().copied().collect();
        let mut head = 0;
        while head < set.len() {
            for &g in elems {
                let x = self.table[g][set[head]];
                if seen.insert(x) {
                    set.push(x);
                }
            }
            head += 1;
        }
        set.sort_unstable();
        set
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let set: HashSet<usize> = sub.iter().copied().collect();
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            sub.iter().all(|&h| set.contains(&self.table[self.table[g][h]][gi]))
        })
    }

    /// Designates the subgroup generated by `elems` as the geometric part.
    pub fn with_geometric(mut self, elems: &[usize]) -> Result<Self, ActionError> {
        let sub = self.subgroup_closure(elems);
        if !self.is_normal(&sub) {
            return Err(ActionError::NotNormal);
        }
        self.geometric = Some(sub);
        Ok(self)
    }

    /// The subgroup on the given element indices as a group in its own right.
    pub fn restrict(&self, d: &RootDatum, elems: &[usize]) -> Result<ActionGroup, ActionError> {
        let gens: Vec<DatumAutomorphism> = elems.iter().map(|&e| self.elements[e].clone()).collect();
        close_group(d, &gens)
    }

    pub fn is_stable(&self, p: &PositiveSystem) -> bool {
        self.generators_or_all().iter().all(|&g| {
            let perm = &self.elements[g].perm;
            (0..perm.len()).all(|i| !p.contains(i) || p.contains(perm[i]))
        })
    }

    fn generators_or_all(&self) -> Vec<usize> {
        if self.generators.is_empty() {
            (0..self.order()).collect()
        } else {
            self.generators.clone()
        }
    }

    pub fn character_matrices(&self) -> Vec<IntMatrix> {
        self.generators_or_all().iter().map(|&g| self.elements[g].int_matrix()).collect()
    }

    pub fn cocharacter_matrices(&self) -> Vec<IntMatrix> {
        self.generators_or_all().iter().map(|&g| self.elements[g].int_dual()).collect()
    }

    /// Index of the element with the given matrix.
    pub fn find(&self, matrix: &[Vec<i64>]) -> Option<usize> {
        self.elements.iter().position(|e| e.matrix == matrix)
    }
}

fn average_fixed(d: &RootDatum, g: &ActionGroup, v: &[BigRational]) -> Vec<BigRational> {
    let mut u = vec![BigRational::zero(); d.rank()];
    for e in &g.elements {
        for (i, row) in e.dual.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                u[i] += BigRational::from_integer(x.into()) * &v[j];
            }
        }
    }
    u
}

/// Some positive system preserved by the whole group, if one exists.
pub fn stable_positive_system(d: &RootDatum, g: &ActionGroup) -> Result<Option<PositiveSystem>, ActionError> {
    let seed = default_positive_system(d);
    if g.is_stable(&seed) {
        return Ok(Some(seed));
    }
    let simple = simple_system(d, &seed);
    if let Some(w) = dominant_witness(d, &simple) {
        let u = average_fixed(d, g, &w);
        if let Ok(p) = positive_system_from_rational(d, &u) {
            if g.is_stable(&p) {
                return Ok(Some(p));
            }
        }
    }
    let w = weyl_group_with(d, &simple, weyl_bound())?;
    let members = seed.members();
    for e in 0..w.order() {
        let mut flags = vec![false; d.len()];
        for &i in &members {
            flags[w.apply(e, i)] = true;
        }
        let p = PositiveSystem { flags };
        if g.is_stable(&p) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitMode {
    Roots,
    SimpleRoots(Vec<usize>),
    Components,
}

fn orbit_partition(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < orbit.len() {
            for p in perms {
                let x = p[orbit[k]];
                if !seen[x] {
                    seen[x] = true;
                    orbit.push(x);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Orbit partition on roots, on a stable simple system (as root indices), or
/// on irreducible components (as indices into [`component_partition`]).
pub fn orbits(d: &RootDatum, g: &ActionGroup, mode: &OrbitMode) -> Result<Vec<Vec<usize>>, ActionError> {
    let perms: Vec<Vec<usize>> = g.elements.iter().map(|e| e.perm.clone()).collect();
    match mode {
        OrbitMode::Roots => Ok(orbit_partition(d.len(), &perms)),
        OrbitMode::SimpleRoots(simple) => {
            let set: HashSet<usize> = simple.iter().copied().collect();
            if perms.iter().any(|p| simple.iter().any(|&s| !set.contains(&p[s]))) {
                return Err(ActionError::NotStable);
            }
            Ok(orbit_partition(d.len(), &perms)
                .into_iter()
                .filter(|o| set.contains(&o[0]))
                .collect())
        }
        OrbitMode::Components => {
            let comps = component_partition(d);
            let mut of = vec![0; d.len()];
            for (c, roots) in comps.iter().enumerate() {
                for &r in roots {
                    of[r] = c;
                }
            }
            let cperms: Vec<Vec<usize>> =
                perms.iter().map(|p| comps.iter().map(|roots| of[p[roots[0]]]).collect()).collect();
            Ok(orbit_partition(comps.len(), &cperms))
        }
    }
}

/// Lattice automorphism permuting `simple` by `sigma` and fixing the
/// annihilator of the coroots pointwise.
pub fn lift_diagram_permutation(
    d: &RootDatum,
    simple: &[usize],
    sigma: &[usize],
) -> Result<DatumAutomorphism, ActionError> {
    let n = d.rank();
    let co_rows: Vec<Vector> = simple.iter().map(|&i| d.coroot(i).clone()).collect();
    let kernel = linalg::nullspace(&linalg::rational_matrix(&co_rows), n);
    let q = |v: &Vector| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
    // columns: simple roots then kernel basis
    let mut src: Vec<Vec<BigRational>> = simple.iter().map(|&i| q(d.root(i))).collect();
    let mut dst: Vec<Vec<BigRational>> = sigma.iter().map(|&k| q(d.root(simple[k]))).collect();
    src.extend(kernel.iter().cloned());
    dst.extend(kernel.iter().cloned());
    if src.len() != n {
        return Err(ActionError::NotAutomorphism("roots and kernel do not span".into()));
    }
    // g * S = D  with S, D having the above as columns: g = D S^{-1}
    let s_mat: Vec<Vec<BigRational>> = (0..n).map(|r| src.iter().map(|c| c[r].clone()).collect()).collect();
    let d_mat: Vec<Vec<BigRational>> = (0..n).map(|r| dst.iter().map(|c| c[r].clone()).collect()).collect();
    let s_inv = linalg::inverse(&s_mat).ok_or(ActionError::NotIntegral)?;
    let g = linalg::mat_mul(&d_mat, &s_inv);
    let mut m = Vec::with_capacity(n);
    for row in g {
        let mut r = Vec::with_capacity(n);
        for x in row {
            if !x.is_integer() {
                return Err(ActionError::NotIntegral);
            }
            r.push(x.to_integer().to_i64().ok_or(ActionError::NotIntegral)?);
        }
        m.push(r);
    }
    DatumAutomorphism::new(d, m)
}

/// All permutations of the simple roots preserving the Cartan matrix.
pub fn cartan_symmetries(d: &RootDatum, simple: &[usize]) -> Vec<Vec<usize>> {
    let n = simple.len();
    let c: Vec<Vec<i64>> = simple.iter().map(|&i| simple.iter().map(|&j| d.cartan(i, j)).collect()).collect();
    let mut out = Vec::new();
    let mut sigma = Vec::new();
    let mut used = vec![false; n];
    fn go(c: &[Vec<i64>], sigma: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let i = sigma.len();
        if i == c.len() {
            out.push(sigma.clone());
            return;
        }
        for cand in 0..c.len() {
            if used[cand] || c[cand][cand] != c[i][i] {
                continue;
            }
            if (0..i).all(|k| c[cand][sigma[k]] == c[i][k] && c[sigma[k]][cand] == c[k][i]) {
                sigma.push(cand);
                used[cand] = true;
                go(c, sigma, used, out);
                sigma.pop();
                used[cand] = false;
            }
        }
    }
    go(&c, &mut sigma, &mut used, &mut out);
    out
}

pub fn diagram_automorphisms(d: &RootDatum, simple: &[usize]) -> Result<ActionGroup, ActionError> {
    if !d.is_reduced() {
        return Err(ActionError::NonReduced);
    }
    let lifts: Vec<DatumAutomorphism> = cartan_symmetries(d, simple)
        .iter()
        .map(|s| lift_diagram_permutation(d, simple, s))
        .collect::<Result<_, _>>()?;
    let nontrivial: Vec<DatumAutomorphism> = lifts.into_iter().filter(|l| !l.is_identity()).collect();
    close_group(d, &nontrivial)
}

/// Action given by name on a datum with Bourbaki-ordered `simple`:
/// `trivial`, `swap` (the order-two diagram symmetry of A_n, D_n, E6),
/// `triality` (D4), `s3`/`full` (all diagram symmetries), `minus-one`,
/// `block-swap` (exchange the first two components), `block-cycle`.
pub fn named_action(d: &RootDatum, name: &str) -> Result<ActionGroup, ActionError> {
    let comps = irreducible_components(d)?;
    let simple: Vec<usize> = comps.iter().flat_map(|c| c.simple.iter().copied()).collect();
    let n = simple.len();
    let gens: Vec<Vec<usize>> = match name {
        "trivial" => vec![],
        "minus-one" => {
            let m: Vec<Vec<i64>> = (0..d.rank()).map(|i| (0..d.rank()).map(|j| -((i == j) as i64)).collect()).collect();
            let g = DatumAutomorphism::new(d, m)?;
            return close_group(d, &[g]);
        }
        "s3" | "full" => {
            return diagram_automorphisms(d, &simple);
        }
        "swap" | "flip" | "triality" => {
            if comps.len() != 1 {
                return Err(ActionError::NotIrreducible);
            }
            let k = &comps[0].kind;
            use crate::rootdata::Family;
            let sigma: Vec<usize> = match (k.family, k.rank, name) {
                (Family::A, r, "swap" | "flip") if r >= 2 => (0..r).rev().collect(),
                (Family::D, r, "swap" | "flip") if r >= 4 => {
                    let mut s: Vec<usize> = (0..r).collect();
                    s.swap(r - 2, r - 1);
                    s
                }
                (Family::E, 6, "swap" | "flip") => vec![5, 1, 4, 3, 2, 0],
                (Family::D, 4, "triality") => vec![2, 1, 3, 0],
                _ => return Err(ActionError::UnknownAction(format!("{name} on {k}"))),
            };
            vec![sigma]
        }
        "block-swap" | "block-cycle" => {
            if comps.len() < 2 || comps.iter().any(|c| c.kind != comps[0].kind) {
                return Err(ActionError::UnknownAction(format!("{name} needs isomorphic components")));
            }
            let r = comps[0].kind.rank;
            let m = if name == "block-swap" { 2 } else { comps.len() };
            let mut sigma: Vec<usize> = (0..n).collect();
            for b in 0..m {
                let to = (b + 1) % m;
                for i in 0..r {
                    sigma[b * r + i] = to * r + i;
                }
            }
            vec![sigma]
        }
        _ => return Err(ActionError::UnknownAction(name.to_string())),
    };
    let lifts: Vec<DatumAutomorphism> =
        gens.iter().map(|s| lift_diagram_permutation(d, &simple, s)).collect::<Result<_, _>>()?;
    close_group(d, &lifts)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NodeCoefficient {
    /// One-based Bourbaki label.
    pub node: usize,
    pub coefficient: i64,
    pub prime: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InspectionReport {
    pub type_label: String,
    pub p: u64,
    pub diagram_group_order: usize,
    pub admits_order_p: bool,
    pub p_squared_divides_order: bool,
    pub coefficients: Vec<NodeCoefficient>,
    /// Some order-p diagram symmetry normalises a nontrivial subgroup of order prime to p.
    pub coprime_normalized_subgroup: bool,
    /// For every such pair the semidirect product maps onto the whole group.
    pub semidirect_is_whole_group: bool,
}

pub fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn all_subgroups(g: &ActionGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let s = g.subgroup_closure(&[a, b]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

pub fn inspection_report(d: &RootDatum, p: u64) -> Result<InspectionReport, ActionError> {
    let comps = irreducible_components(d)?;
    if comps.len() != 1 {
        return Err(ActionError::NotIrreducible);
    }
    if !d.is_reduced() {
        return Err(ActionError::NonReduced);
    }
    let comp = &comps[0];
    let g = diagram_automorphisms(d, &comp.simple)?;
    let order = g.order();
    let pu = p as usize;
    let of_order_p: Vec<usize> = if p > 1 { (0..order).filter(|&e| g.element_order(e) == pu).collect() } else { vec![] };
    let (_, coeffs) = highest_root(d, &comp.simple, &comp.roots)?;
    let coefficients = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| NodeCoefficient { node: i + 1, coefficient: c, prime: is_prime(c) })
        .collect();
    let mut coprime = false;
    let mut onto = true;
    if !of_order_p.is_empty() {
        for sub in all_subgroups(&g) {
            if sub.len() == 1 || sub.len() % pu == 0 {
                continue;
            }
            for &gamma in &of_order_p {
                let gi = g.inverse(gamma);
                let set: HashSet<usize> = sub.iter().copied().collect();
                if sub.iter().all(|&h| set.contains(&g.mul(g.mul(gamma, h), gi))) {
                    coprime = true;
                    let cyc = g.subgroup_closure(&[gamma]);
                    let meet = cyc.iter().filter(|x| set.contains(x)).count();
                    if !(meet == 1 && cyc.len() * sub.len() == order) {
                        onto = false;
                    }
                }
            }
        }
    }
    Ok(InspectionReport {
        type_label: comp.kind.to_string(),
        p,
        diagram_group_order: order,
        admits_order_p: !of_order_p.is_empty(),
        p_squared_divides_order: p > 1 && order % (pu * pu) == 0,
        coefficients,
        coprime_normalized_subgroup: coprime,
        semidirect_is_whole_group: coprime && onto,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{named, positive_system_from_regular};

    #[test]
    fn closing_small_groups() {
        let a2 = named("A2");
        let swap = DatumAutomorphism::new(&a2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(close_group(&a2, &[swap]).unwrap().order(), 2);
        assert_eq!(ActionGroup::trivial(&a2).order(), 1);
        let d4 = named("D4");
        let t = named_action(&d4, "triality").unwrap();
        assert_eq!(t.order(), 3);
        assert!(matches!(
            DatumAutomorphism::new(&a2, vec![vec![2, 0], vec![0, 1]]),
            Err(ActionError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn stable_systems() {
        let a1 = named("A1");
        let m = named_action(&a1, "minus-one").unwrap();
        assert_eq!(stable_positive_system(&a1, &m).unwrap(), None);
        let a2 = named("A2");
        let s = named_action(&a2, "swap").unwrap();
        let p = stable_positive_system(&a2, &s).unwrap().unwrap();
        assert_eq!(p, positive_system_from_regular(&a2, &[1, 1]).unwrap());
        let d4 = named("D4");
        let t = named_action(&d4, "triality").unwrap();
        assert_eq!(stable_positive_system(&d4, &t).unwrap(), Some(default_positive_system(&d4)));
    }

    #[test]
    fn orbit_modes() {
        let d4 = named("D4");
        let t = named_action(&d4, "triality").unwrap();
        let o = orbits(&d4, &t, &OrbitMode::SimpleRoots(vec![0, 1, 2, 3])).unwrap();
        assert_eq!(o, vec![vec![0, 2, 3], vec![1]]);
        let a2 = named("A2");
        let s = named_action(&a2, "swap").unwrap();
        assert_eq!(orbits(&a2, &s, &OrbitMode::SimpleRoots(vec![0, 1])).unwrap(), vec![vec![0, 1]]);
        let triv = ActionGroup::trivial(&a2);
        assert_eq!(orbits(&a2, &triv, &OrbitMode::Roots).unwrap().len(), 6);
        let aa = named("A2xA2");
        let b = named_action(&aa, "block-swap").unwrap();
        assert_eq!(orbits(&aa, &b, &OrbitMode::Components).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn diagram_groups() {
        assert_eq!(diagram_automorphisms(&named("A3"), &[0, 1, 2]).unwrap().order(), 2);
        assert_eq!(diagram_automorphisms(&named("D4"), &[0, 1, 2, 3]).unwrap().order(), 6);
        assert_eq!(diagram_automorphisms(&named("B2"), &[0, 1]).unwrap().order(), 1);
        assert_eq!(diagram_automorphisms(&named("BC2"), &[0, 1]).unwrap_err(), ActionError::NonReduced);
    }

    #[test]
    fn inspection_examples() {
        let r = inspection_report(&named("A3"), 2).unwrap();
        assert!(r.admits_order_p && !r.p_squared_divides_order);
        assert!(r.coefficients.iter().all(|c| c.coefficient == 1));
        let r = inspection_report(&named("D4"), 3).unwrap();
        assert!(r.admits_order_p);
        assert_eq!(r.diagram_group_order, 6);
        assert!(!r.p_squared_divides_order);
        let r = inspection_report(&named("E6"), 2).unwrap();
        assert!(r.admits_order_p);
        assert_eq!(r.coefficients[3], NodeCoefficient { node: 4, coefficient: 3, prime: true });
        let r = inspection_report(&named("D4"), 2).unwrap();
        assert!(r.coprime_normalized_subgroup && r.semidirect_is_whole_group);
    }
}
