//! Quotient ("folded") root data, split/inert classification, two-stage
//! quotients and the characteristic-dependent restricted root systems.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::action::{close_group, ActionError, ActionGroup, DatumAutomorphism, OrbitMode};
use crate::intlat::{
    big_vec, coinvariant_quotient, hermite_normal_form, invariant_sublattice, small_vec, solve_integer,
    IntMatrix, LatticeError, LatticeQuotient,
};
use crate::rootdata::{
    classify_within, component_partition, simple_system, type_label, validate, weyl_group, PositiveSystem,
    RootDataError, RootDatum, Vector, WeylGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoldError {
    #[error("positive system is not stable under the group")]
    NotStable,
    #[error("geometric subgroup is not normal")]
    NotNormal,
    #[error("internal consistency failure: {0}")]
    InternalAxiomFailure(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

fn axiom(msg: impl Into<String>) -> FoldError {
    FoldError::InternalAxiomFailure(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootClass {
    NonMultipliable,
    MultipliableSplit,
    MultipliableInert,
}

/// Characteristic exponent: 1 or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicRule {
    pub p: u64,
}

impl CharacteristicRule {
    pub fn new(p: u64) -> Result<Self, FoldError> {
        if p == 1 || crate::action::is_prime(p as i64) {
            Ok(CharacteristicRule { p })
        } else {
            Err(axiom(format!("characteristic exponent {p} is neither 1 nor prime")))
        }
    }
}

#[derive(Clone, Debug)]
pub struct FoldingResult {
    pub source: RootDatum,
    pub group: ActionGroup,
    pub source_positive: PositiveSystem,
    pub quotient: RootDatum,
    /// Image of the source positive system.
    pub positive: PositiveSystem,
    pub restriction: LatticeQuotient,
    /// Source root index -> quotient root index.
    pub root_image: Vec<usize>,
    pub fibers: Vec<Vec<usize>>,
    /// Quotient coroots in source cocharacter coordinates.
    pub coroot_source: Vec<Vector>,
    pub classification: Vec<RootClass>,
    /// Per quotient root; empty unless multipliable. Each pair has one or two source roots.
    pub exceptional_pairs: Vec<Vec<Vec<usize>>>,
}

impl FoldingResult {
    pub fn simple(&self) -> Vec<usize> {
        simple_system(&self.quotient, &self.positive)
    }
}

pub fn quotient_datum(d: &RootDatum, g: &ActionGroup, pos: &PositiveSystem) -> Result<FoldingResult, FoldError> {
    if !g.elements.iter().all(|e| (0..d.len()).all(|i| !pos.contains(i) || pos.contains(e.perm[i]))) {
        return Err(FoldError::NotStable);
    }
    let restriction = coinvariant_quotient(d.rank(), &g.character_matrices())?;
    let r = restriction.target_rank;

    let mut q_index: HashMap<Vector, usize> = HashMap::new();
    let mut q_roots: Vec<Vector> = Vec::new();
    let mut root_image = Vec::with_capacity(d.len());
    for i in 0..d.len() {
        let img = restriction.project_i64(d.root(i));
        if img.iter().all(|&x| x == 0) {
            return Err(axiom(format!("root {:?} restricts to zero", d.root(i))));
        }
        let k = *q_index.entry(img.clone()).or_insert_with(|| {
            q_roots.push(img);
            q_roots.len() - 1
        });
        root_image.push(k);
    }
    let mut fibers = vec![Vec::new(); q_roots.len()];
    for (i, &k) in root_image.iter().enumerate() {
        fibers[k].push(i);
    }
    for f in &fibers {
        let orbit: HashSet<usize> = g.elements.iter().map(|e| e.perm[f[0]]).collect();
        if orbit != f.iter().copied().collect() {
            return Err(axiom(format!("fiber {f:?} is not a single orbit")));
        }
    }

    let comp_of = {
        let parts = component_partition(d);
        let mut of = vec![0; d.len()];
        for (c, roots) in parts.iter().enumerate() {
            for &x in roots {
                of[x] = c;
            }
        }
        of
    };
    let mut classification = Vec::with_capacity(q_roots.len());
    let mut exceptional_pairs = Vec::with_capacity(q_roots.len());
    for (k, a) in q_roots.iter().enumerate() {
        let twice: Vector = a.iter().map(|x| 2 * x).collect();
        let Some(&k2) = q_index.get(&twice) else {
            classification.push(RootClass::NonMultipliable);
            exceptional_pairs.push(Vec::new());
            continue;
        };
        let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
        for &x in &fibers[k] {
            by_comp.entry(comp_of[x]).or_default().push(x);
        }
        let mut pairs: Vec<Vec<usize>> = by_comp.into_values().collect();
        pairs.sort();
        let sizes: HashSet<usize> = pairs.iter().map(|p| p.len()).collect();
        let class = match sizes.iter().copied().collect::<Vec<_>>().as_slice() {
            [1] => RootClass::MultipliableInert,
            [2] => {
                for p in &pairs {
                    let sum: Vector = d.root(p[0]).iter().zip(d.root(p[1])).map(|(x, y)| x + y).collect();
                    let s = d.index_of(&sum).ok_or_else(|| axiom("split pair does not sum to a root"))?;
                    if root_image[s] != k2 {
                        return Err(axiom("split pair sum does not restrict to the double"));
                    }
                }
                RootClass::MultipliableSplit
            }
            _ => return Err(axiom(format!("extensions per component have sizes {sizes:?}"))),
        };
        classification.push(class);
        exceptional_pairs.push(pairs);
    }

    let pt = restriction.projection.transpose();
    let mut coroot_source = Vec::with_capacity(q_roots.len());
    let mut q_coroots = Vec::with_capacity(q_roots.len());
    for (k, fiber) in fibers.iter().enumerate() {
        let mut v = vec![0i64; d.rank()];
        for &x in fiber {
            for (a, b) in v.iter_mut().zip(d.coroot(x)) {
                *a += b;
            }
        }
        if classification[k] == RootClass::MultipliableSplit {
            v.iter_mut().for_each(|x| *x *= 2);
        }
        let y = solve_integer(&pt, &big_vec(&v))
            .and_then(|y| small_vec(&y))
            .ok_or_else(|| axiom(format!("coroot {v:?} is not in the invariant cocharacters")))?;
        coroot_source.push(v);
        q_coroots.push(y);
    }
    let quotient = RootDatum::new(r, q_roots, q_coroots)?;
    let report = validate(&quotient);
    if !report.ok {
        return Err(axiom(format!("quotient is not a root datum: {:?}", report.violations)));
    }
    let mut flags = vec![false; quotient.len()];
    for i in pos.members() {
        flags[root_image[i]] = true;
    }
    let positive = PositiveSystem { flags };
    for i in 0..quotient.len() {
        let n = quotient.negative(i).unwrap();
        if positive.contains(i) == positive.contains(n) {
            return Err(axiom("image of the positive system is not a positive system"));
        }
    }
    let simple = simple_system(&quotient, &positive);
    let quotient = quotient.with_preferred_simple(simple);
    Ok(FoldingResult {
        source: d.clone(),
        group: g.clone(),
        source_positive: pos.clone(),
        quotient,
        positive,
        restriction,
        root_image,
        fibers,
        coroot_source,
        classification,
        exceptional_pairs,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DynkinDiagram {
    /// Quotient root indices of the nodes.
    pub nodes: Vec<usize>,
    /// `cartan[i][j] = <node_i, node_j^vee>`
    pub cartan: Vec<Vec<i64>>,
    pub multipliable: Vec<bool>,
    pub type_label: String,
}

/// Restricts a stable simple system and builds the folded diagram.
pub fn folded_simple_and_dynkin(f: &FoldingResult, simple: &[usize]) -> Result<(Vec<usize>, DynkinDiagram), FoldError> {
    let set: HashSet<usize> = simple.iter().copied().collect();
    if f.group.elements.iter().any(|e| simple.iter().any(|&s| !set.contains(&e.perm[s]))) {
        return Err(FoldError::NotStable);
    }
    let mut nodes = Vec::new();
    for &s in simple {
        let k = f.root_image[s];
        if !nodes.contains(&k) {
            nodes.push(k);
        }
    }
    let mut expected = simple_system(&f.quotient, &f.positive);
    let mut got = nodes.clone();
    expected.sort_unstable();
    got.sort_unstable();
    if expected != got {
        return Err(axiom("restricted simple roots are not simple in the quotient"));
    }
    let q = &f.quotient;
    let cartan: Vec<Vec<i64>> = nodes.iter().map(|&i| nodes.iter().map(|&j| q.cartan(i, j)).collect()).collect();
    for (a, &na) in nodes.iter().enumerate() {
        for (b, &nb) in nodes.iter().enumerate() {
            if a == b {
                continue;
            }
            let ext_adjacent = simple.iter().filter(|&&x| f.root_image[x] == na).any(|&x| {
                simple.iter().filter(|&&y| f.root_image[y] == nb).any(|&y| f.source.cartan(x, y) != 0)
            });
            if ext_adjacent != (cartan[a][b] != 0) {
                return Err(axiom("folded adjacency differs from adjacency of extensions"));
            }
        }
    }
    let multipliable = nodes.iter().map(|&i| q.is_multipliable(i)).collect();
    let label = type_label(q)?.to_string();
    Ok((nodes.clone(), DynkinDiagram { nodes, cartan, multipliable, type_label: label }))
}

/// The two sublattices of source cocharacters compared by the coroot identity:
/// the span of quotient coroots and the invariants in the source coroot lattice.
pub fn coroot_lattices(f: &FoldingResult) -> Result<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>), FoldError> {
    let n = f.source.rank();
    let quotient_span: Vec<Vec<BigInt>> = f.coroot_source.iter().map(|v| big_vec(v)).collect();
    let lhs = hermite_normal_form(&quotient_span, n);
    let coroots: Vec<Vec<BigInt>> = f.source.coroots().iter().map(|v| big_vec(v)).collect();
    let basis = hermite_normal_form(&coroots, n);
    let k = basis.len();
    if k == 0 {
        return Ok((lhs, Vec::new()));
    }
    let bt = IntMatrix::from_columns(&basis, n);
    let mut gens = Vec::new();
    for h in f.group.cocharacter_matrices() {
        let mut cols = Vec::with_capacity(k);
        for b in &basis {
            let img = h.mul_vec(b);
            cols.push(solve_integer(&bt, &img).ok_or_else(|| axiom("coroot lattice is not stable"))?);
        }
        gens.push(IntMatrix::from_columns(&cols, k));
    }
    let inv = invariant_sublattice(k, &gens)?;
    let back: Vec<Vec<BigInt>> = inv.iter().map(|c| bt.mul_vec(c)).collect();
    Ok((lhs, hermite_normal_form(&back, n)))
}

pub fn coroot_lattice_check(f: &FoldingResult) -> bool {
    matches!(coroot_lattices(f), Ok((a, b)) if a == b)
}

#[derive(Clone, Debug)]
pub struct TwoStageResult {
    pub stage1: FoldingResult,
    pub induced_action: ActionGroup,
    /// Element of the full group -> element of the induced action.
    pub induced_of: Vec<usize>,
    pub stage2: FoldingResult,
    pub total: FoldingResult,
    /// Unimodular `Q` with `Q * P_total = P_2 * P_1`.
    pub iso: IntMatrix,
    /// Total quotient root -> stage-2 quotient root.
    pub total_to_stage2: Vec<usize>,
    /// Stage-1 quotient root -> total quotient root.
    pub stage1_to_total: Vec<usize>,
}

pub fn two_stage(d: &RootDatum, sigma: &ActionGroup, pos: &PositiveSystem) -> Result<TwoStageResult, FoldError> {
    let geo: Vec<usize> = sigma.geometric.clone().unwrap_or_else(|| (0..sigma.order()).collect());
    if !sigma.is_normal(&geo) {
        return Err(FoldError::NotNormal);
    }
    let g0 = sigma.restrict(d, &geo)?;
    let stage1 = quotient_datum(d, &g0, pos)?;
    let p1 = &stage1.restriction;
    let mut induced_mats: Vec<DatumAutomorphism> = Vec::with_capacity(sigma.order());
    for e in &sigma.elements {
        let m = p1.projection.mul(&e.int_matrix()).mul(&p1.section);
        let m = m.to_i64().ok_or_else(|| axiom("induced matrix overflows"))?;
        induced_mats.push(DatumAutomorphism::new(&stage1.quotient, m)?);
    }
    let gens: Vec<DatumAutomorphism> = sigma.generators.iter().map(|&g| induced_mats[g].clone()).collect();
    let induced_action = close_group(&stage1.quotient, &gens)?;
    let induced_of: Vec<usize> = induced_mats
        .iter()
        .map(|m| induced_action.find(&m.matrix).ok_or_else(|| axiom("induced element missing")))
        .collect::<Result<_, _>>()?;
    for a in 0..sigma.order() {
        for b in 0..sigma.order() {
            if induced_of[sigma.mul(a, b)] != induced_action.mul(induced_of[a], induced_of[b]) {
                return Err(axiom("induced action is not a homomorphism"));
            }
        }
    }
    let stage2 = quotient_datum(&stage1.quotient, &induced_action, &stage1.positive)?;
    let total = quotient_datum(d, sigma, pos)?;

    let p21 = stage2.restriction.projection.mul(&p1.projection);
    let iso = p21.mul(&total.restriction.section);
    if iso.mul(&total.restriction.projection) != p21 || !iso.is_unimodular() {
        return Err(axiom("stage-wise and total quotients are not isomorphic"));
    }
    let mut total_to_stage2 = vec![usize::MAX; total.quotient.len()];
    let mut stage1_to_total = vec![usize::MAX; stage1.quotient.len()];
    for i in 0..d.len() {
        let t = total.root_image[i];
        let s1 = stage1.root_image[i];
        let s2 = stage2.root_image[s1];
        for (slot, val) in [(&mut total_to_stage2[t], s2), (&mut stage1_to_total[s1], t)] {
            if *slot != usize::MAX && *slot != val {
                return Err(axiom("root correspondence between stages is not well defined"));
            }
            *slot = val;
        }
    }
    let distinct: HashSet<usize> = total_to_stage2.iter().copied().collect();
    if distinct.len() != total.quotient.len() || stage2.quotient.len() != total.quotient.len() {
        return Err(axiom("root correspondence between stages is not bijective"));
    }
    let qi = iso.to_i64().unwrap();
    for (t, &s) in total_to_stage2.iter().enumerate() {
        let img = crate::rootdata::mat_vec_i64(&qi, total.quotient.root(t));
        if &img != stage2.quotient.root(s) {
            return Err(axiom("iso does not carry roots to roots"));
        }
        let back = crate::rootdata::mat_vec_i64(&transpose(&qi), stage2.quotient.coroot(s));
        if &back != total.quotient.coroot(t) {
            return Err(axiom("iso does not carry coroots to coroots"));
        }
    }
    Ok(TwoStageResult { stage1, induced_action, induced_of, stage2, total, iso, total_to_stage2, stage1_to_total })
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let c = m.first().map_or(0, |r| r.len());
    (0..c).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Restricted roots of the fixed-point group, as total quotient root indices.
///
/// Built on the stage-1 quotient: its non-divisible roots, plus `2a` for each
/// multipliable `a` that is inert for the geometric part or when `p = 2`;
/// then carried to the total quotient.
pub fn fixed_root_system(t: &TwoStageResult, p: CharacteristicRule) -> Vec<usize> {
    let s1 = &t.stage1;
    let q = &s1.quotient;
    let mut keep = HashSet::new();
    for j in 0..q.len() {
        if !q.is_divisible(j) {
            keep.insert(j);
        }
        if let Some(j2) = q.double(j) {
            if s1.classification[j] == RootClass::MultipliableInert || p.p == 2 {
                keep.insert(j2);
            }
        }
    }
    let mut out: Vec<usize> = keep.into_iter().map(|j| t.stage1_to_total[j]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Restricted roots of the smooth fixed-point group. Equal to the fixed
/// system unless `p = 2`; then a root multipliable within the fixed system
/// survives only if the second-stage action splits it.
pub fn smooth_root_system(t: &TwoStageResult, p: CharacteristicRule) -> Vec<usize> {
    let fixed = fixed_root_system(t, p);
    if p.p != 2 {
        return fixed;
    }
    let set: HashSet<usize> = fixed.iter().copied().collect();
    let q = &t.total.quotient;
    fixed
        .into_iter()
        .filter(|&b| {
            let mult_in_fixed = q.double(b).is_some_and(|b2| set.contains(&b2));
            !mult_in_fixed || t.stage2.classification[t.total_to_stage2[b]] == RootClass::MultipliableSplit
        })
        .collect()
}

/// Some smooth-system root is divisible in the fixed system.
pub fn is_exceptional(t: &TwoStageResult, p: CharacteristicRule) -> bool {
    let fixed: HashSet<usize> = fixed_root_system(t, p).into_iter().collect();
    let q = &t.total.quotient;
    smooth_root_system(t, p).into_iter().any(|b| q.half(b).is_some_and(|h| fixed.contains(&h)))
}

/// Order of `{w : w γ = γ w for all γ}` inside the Weyl group.
pub fn weyl_centralizer_order(g: &ActionGroup, w: &WeylGroup) -> usize {
    let gens: Vec<&Vec<usize>> = g.generators.iter().map(|&i| &g.elements[i].perm).collect();
    (0..w.order())
        .filter(|&e| {
            let p = w.perm(e);
            gens.iter().all(|gp| (0..p.len()).all(|i| gp[p[i] as usize] == p[gp[i]] as usize))
        })
        .count()
}

/// Weyl group order of a reflection-closed subset of the quotient roots.
pub fn subsystem_weyl_order(d: &RootDatum, subset: &[usize]) -> Result<usize, FoldError> {
    Ok(weyl_group(&d.sub_datum(subset))?.order())
}

/// Folds with the whole group in the geometric stage.
pub fn fold_geometric(d: &RootDatum, g: &ActionGroup) -> Result<TwoStageResult, FoldError> {
    let pos = crate::action::stable_positive_system(d, g)?.ok_or(FoldError::NotStable)?;
    let mut g = g.clone();
    g.geometric = Some((0..g.order()).collect());
    two_stage(d, &g, &pos)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientRootView {
    pub root: Vector,
    pub coroot: Vector,
    pub coroot_in_source: Vector,
    pub fiber: Vec<Vector>,
    pub class: RootClass,
    pub exceptional_pairs: Vec<Vec<Vector>>,
    pub positive: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoldingView {
    pub quotient: crate::rootdata::RootDatumJson,
    pub quotient_type: String,
    pub restriction: crate::intlat::QuotientView,
    pub roots: Vec<QuotientRootView>,
    pub coroot_lattice_identity: bool,
}

impl From<&FoldingResult> for FoldingView {
    fn from(f: &FoldingResult) -> Self {
        let roots = (0..f.quotient.len())
            .map(|k| QuotientRootView {
                root: f.quotient.root(k).clone(),
                coroot: f.quotient.coroot(k).clone(),
                coroot_in_source: f.coroot_source[k].clone(),
                fiber: f.fibers[k].iter().map(|&x| f.source.root(x).clone()).collect(),
                class: f.classification[k],
                exceptional_pairs: f.exceptional_pairs[k]
                    .iter()
                    .map(|p| p.iter().map(|&x| f.source.root(x).clone()).collect())
                    .collect(),
                positive: f.positive.contains(k),
            })
            .collect();
        FoldingView {
            quotient: f.quotient.to_json(),
            quotient_type: type_label(&f.quotient).map(|t| t.to_string()).unwrap_or_else(|e| e.to_string()),
            restriction: (&f.restriction).into(),
            roots,
            coroot_lattice_identity: coroot_lattice_check(f),
        }
    }
}

/// Relative labels for a subset of total-quotient roots.
pub fn subset_label(t: &TwoStageResult, subset: &[usize]) -> String {
    classify_within(&t.total.quotient, subset).map(|l| l.to_string()).unwrap_or_else(|e| e.to_string())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictedSystems {
    pub p: u64,
    pub fixed: Vec<Vector>,
    pub fixed_type: String,
    pub smooth: Vec<Vector>,
    pub smooth_type: String,
    pub exceptional: bool,
}

pub fn restricted_systems(t: &TwoStageResult, p: CharacteristicRule) -> RestrictedSystems {
    let q = &t.total.quotient;
    let fixed = fixed_root_system(t, p);
    let smooth = smooth_root_system(t, p);
    RestrictedSystems {
        p: p.p,
        fixed: fixed.iter().map(|&i| q.root(i).clone()).collect(),
        fixed_type: subset_label(t, &fixed),
        smooth: smooth.iter().map(|&i| q.root(i).clone()).collect(),
        smooth_type: subset_label(t, &smooth),
        exceptional: is_exceptional(t, p),
    }
}

/// Orbits of a group on a stable simple system, by restriction.
pub fn simple_orbits(f: &FoldingResult, simple: &[usize]) -> Result<Vec<Vec<usize>>, FoldError> {
    Ok(crate::action::orbits(&f.source, &f.group, &OrbitMode::SimpleRoots(simple.to_vec()))?)
}

pub fn abs_det(m: &IntMatrix) -> BigInt {
    m.determinant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::named_action;
    use crate::rootdata::{default_positive_system, named, TypeLabel};

    fn fold(name: &str, act: &str) -> FoldingResult {
        let d = named(name);
        let g = named_action(&d, act).unwrap();
        let p = crate::action::stable_positive_system(&d, &g).unwrap().unwrap();
        quotient_datum(&d, &g, &p).unwrap()
    }

    #[test]
    fn a2_swap_is_bc1() {
        let f = fold("A2", "swap");
        assert_eq!(type_label(&f.quotient).unwrap(), "BC1".parse::<TypeLabel>().unwrap());
        let a = f.root_image[0];
        assert_eq!(f.classification[a], RootClass::MultipliableSplit);
        let mut u = f.coroot_source[a].clone();
        if u[0] < 0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
        // 2(alpha1^vee + alpha2^vee) in adjoint coordinates
        let expected: Vector = f.source.coroot(0).iter().zip(f.source.coroot(1)).map(|(x, y)| 2 * (x + y)).collect();
        assert_eq!(f.coroot_source[a], expected);
        assert_eq!(f.exceptional_pairs[a], vec![vec![0, 1]]);
        assert!(coroot_lattice_check(&f));
    }

    #[test]
    fn trivial_action_is_identity() {
        let d = named("BC2");
        let g = ActionGroup::trivial(&d);
        let f = quotient_datum(&d, &g, &default_positive_system(&d)).unwrap();
        assert_eq!(f.quotient.len(), d.len());
        assert!(f.fibers.iter().all(|x| x.len() == 1));
        for k in 0..f.quotient.len() {
            if f.quotient.is_multipliable(k) {
                assert_eq!(f.classification[k], RootClass::MultipliableInert);
            }
        }
        assert!(coroot_lattice_check(&f));
    }

    #[test]
    fn a3_swap_is_c2() {
        let f = fold("A3", "swap");
        assert_eq!(type_label(&f.quotient).unwrap(), "C2".parse::<TypeLabel>().unwrap());
        assert!(f.classification.iter().all(|&c| c == RootClass::NonMultipliable));
    }

    #[test]
    fn folded_diagrams() {
        let f = fold("D4", "triality");
        let (_, dd) = folded_simple_and_dynkin(&f, &[0, 1, 2, 3]).unwrap();
        assert_eq!(dd.type_label, "G2");
        assert_eq!(dd.nodes.len(), 2);
        let f = fold("E6", "flip");
        let (_, dd) = folded_simple_and_dynkin(&f, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(dd.type_label, "F4");
        let f = fold("A2", "swap");
        let (_, dd) = folded_simple_and_dynkin(&f, &[0, 1]).unwrap();
        assert_eq!(dd.multipliable, vec![true]);
    }

    #[test]
    fn restricted_systems_benchmarks() {
        let d = named("A4");
        let g = named_action(&d, "swap").unwrap();
        let t = fold_geometric(&d, &g).unwrap();
        let c2 = CharacteristicRule::new(2).unwrap();
        let c3 = CharacteristicRule::new(3).unwrap();
        let q = &t.total.quotient;
        assert_eq!(classify_within(q, &fixed_root_system(&t, c2)).unwrap().to_string(), "BC2");
        assert_eq!(classify_within(q, &fixed_root_system(&t, c3)).unwrap().to_string(), "B2");
        assert_eq!(classify_within(q, &smooth_root_system(&t, c2)).unwrap().to_string(), "C2");
        assert_eq!(classify_within(q, &smooth_root_system(&t, c3)).unwrap().to_string(), "B2");
        assert!(is_exceptional(&t, c2));
        assert!(!is_exceptional(&t, c3));

        // the same swap placed entirely in the second stage
        let a2 = named("A2");
        let mut g = named_action(&a2, "swap").unwrap();
        g = g.with_geometric(&[]).unwrap();
        let t = two_stage(&a2, &g, &default_positive_system(&a2)).unwrap();
        let q = &t.total.quotient;
        assert_eq!(classify_within(q, &fixed_root_system(&t, c3)).unwrap().to_string(), "BC1");
        assert_eq!(classify_within(q, &smooth_root_system(&t, c2)).unwrap().to_string(), "BC1");
    }

    #[test]
    fn trivial_action_not_exceptional() {
        let d = named("A3");
        let g = ActionGroup::trivial(&d);
        let t = fold_geometric(&d, &g).unwrap();
        for p in [1, 2, 3] {
            assert!(!is_exceptional(&t, CharacteristicRule::new(p).unwrap()));
        }
    }
}
