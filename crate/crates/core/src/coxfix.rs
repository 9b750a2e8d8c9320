//! Finite Coxeter complexes of root data, group actions on them, fixed
//! subcomplexes and comparison with the complex of the folded datum.
//!
//! This is a single-apartment model: simplices are parabolic cosets
//! `w W_J` with `J` a proper subset of the simple roots.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::action::ActionGroup;
use crate::folding::{
    smooth_root_system, subsystem_weyl_order, weyl_centralizer_order, CharacteristicRule, FoldError, TwoStageResult,
};
use crate::rootdata::{simple_coordinates, weyl_group_with, weyl_bound, RootDataError, RootDatum, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxError {
    #[error("simple system is not stable under the action")]
    NotStable,
    #[error("too many simple roots ({0})")]
    RankTooLarge(usize),
    #[error("group element does not normalize the Weyl group")]
    NotAutomorphism,
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

/// `(J, w)` with `w` the minimal representative of `w W_J`; `J` is a bitmask
/// over positions in the simple system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    pub mask: u32,
    pub rep: usize,
}

#[derive(Clone, Debug)]
pub struct CoxeterComplex {
    pub datum: RootDatum,
    pub simple: Vec<usize>,
    pub weyl: WeylGroup,
    pub positive: Vec<bool>,
    pub simplices: Vec<Simplex>,
    pub index: HashMap<Simplex, usize>,
}

impl CoxeterComplex {
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn chambers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.simplices.len()).filter(|&s| self.simplices[s].mask == 0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.rank() as u32;
        (0..self.simplices.len()).filter(move |&s| self.simplices[s].mask.count_ones() + 1 == n)
    }

    pub fn dimension(&self, s: usize) -> usize {
        self.rank() - self.simplices[s].mask.count_ones() as usize - 1
    }

    /// Minimal representative of `w W_J`.
    pub fn reduce(&self, mask: u32, mut w: usize) -> usize {
        loop {
            let p = self.weyl.perm(w);
            let Some(k) = (0..self.rank()).find(|&k| mask >> k & 1 == 1 && !self.positive[p[self.simple[k]] as usize])
            else {
                return w;
            };
            w = self.weyl.compose(w, self.weyl.generator(k));
        }
    }

    /// `a` is a face of `b`.
    pub fn is_face(&self, a: usize, b: usize) -> bool {
        let (sa, sb) = (self.simplices[a], self.simplices[b]);
        sa.mask & sb.mask == sb.mask && self.reduce(sa.mask, sb.rep) == sa.rep
    }

    /// All faces of `b` other than `b`.
    pub fn faces(&self, b: usize) -> Vec<usize> {
        let sb = self.simplices[b];
        let full = (1u32 << self.rank()) - 1;
        let free = full & !sb.mask;
        let mut out = Vec::new();
        let mut sub = free;
        while sub > 0 {
            let mask = sb.mask | sub;
            if mask != full {
                out.push(self.index[&Simplex { mask, rep: self.reduce(mask, sb.rep) }]);
            }
            sub = (sub - 1) & free;
        }
        out
    }
}

pub fn build_complex(d: &RootDatum, simple: &[usize]) -> Result<CoxeterComplex, CoxError> {
    if simple.len() > 16 {
        return Err(CoxError::RankTooLarge(simple.len()));
    }
    let weyl = weyl_group_with(d, simple, weyl_bound())?;
    let coords = simple_coordinates(d, simple);
    let positive: Vec<bool> = coords.iter().map(|c| c.as_ref().is_some_and(|c| c.iter().all(|&x| x >= 0))).collect();
    let n = simple.len();
    let full = (1u32 << n) - 1;
    let mut simplices = Vec::new();
    for mask in 0..full {
        for w in 0..weyl.order() {
            let p = weyl.perm(w);
            if (0..n).all(|k| mask >> k & 1 == 0 || positive[p[simple[k]] as usize]) {
                simplices.push(Simplex { mask, rep: w });
            }
        }
    }
    let index = simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    Ok(CoxeterComplex { datum: d.clone(), simple: simple.to_vec(), weyl, positive, simplices, index })
}

/// Permutation of simplices induced by each group element.
#[derive(Clone, Debug)]
pub struct ComplexAction {
    pub group: ActionGroup,
    pub perms: Vec<Vec<usize>>,
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

pub fn complex_action(c: &CoxeterComplex, g: &ActionGroup) -> Result<ComplexAction, CoxError> {
    let n = c.rank();
    let mut perms = Vec::with_capacity(g.order());
    for e in &g.elements {
        let pg = &e.perm;
        // u in W with u(P) = gamma(P); delta = u^{-1} gamma fixes the chamber
        let u = (0..c.weyl.order())
            .find(|&w| {
                let pw = c.weyl.perm(w);
                let mut inv = vec![0usize; pw.len()];
                for (i, &x) in pw.iter().enumerate() {
                    inv[x as usize] = i;
                }
                c.simple.iter().all(|&s| c.positive[inv[pg[s]]])
            })
            .ok_or(CoxError::NotAutomorphism)?;
        let pu = c.weyl.perm(u);
        let pu_inv = invert(&pu.iter().map(|&x| x as usize).collect::<Vec<_>>());
        let delta: Vec<usize> = (0..c.datum.len()).map(|i| pu_inv[pg[i]]).collect();
        let dsimple: Vec<usize> = c
            .simple
            .iter()
            .map(|&s| c.simple.iter().position(|&t| t == delta[s]).ok_or(CoxError::NotAutomorphism))
            .collect::<Result<_, _>>()?;
        let delta_inv = invert(&delta);
        let mut perm = Vec::with_capacity(c.simplices.len());
        for s in &c.simplices {
            let mask = (0..n).filter(|&k| s.mask >> k & 1 == 1).fold(0u32, |m, k| m | 1 << dsimple[k]);
            let pw = c.weyl.perm(s.rep);
            let img: Vec<u16> = (0..c.datum.len()).map(|i| pg[pw[delta_inv[i]] as usize] as u16).collect();
            let w = c.weyl.find(&img).ok_or(CoxError::NotAutomorphism)?;
            perm.push(c.index[&Simplex { mask, rep: c.reduce(mask, w) }]);
        }
        perms.push(perm);
    }
    let act = ComplexAction { group: g.clone(), perms };
    if !preserves_faces(c, &act) {
        return Err(CoxError::NotAutomorphism);
    }
    Ok(act)
}

fn preserves_faces(c: &CoxeterComplex, a: &ComplexAction) -> bool {
    a.group.generators.iter().all(|&g| {
        let p = &a.perms[g];
        (0..c.simplices.len()).all(|b| c.faces(b).into_iter().all(|f| c.is_face(p[f], p[b])))
    })
}

pub fn fixed_subcomplex(c: &CoxeterComplex, a: &ComplexAction) -> Vec<usize> {
    let gens: Vec<usize> = if a.group.generators.is_empty() { (0..a.group.order()).collect() } else { a.group.generators.clone() };
    (0..c.simplices.len()).filter(|&s| gens.iter().all(|&g| a.perms[g][s] == s)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub centralizer_order: usize,
    pub smooth_weyl_order: usize,
    pub orders_agree: bool,
    pub fixed_simplices: usize,
    pub fixed_chambers: usize,
    pub folded_simplices: usize,
    /// `(fixed simplex, folded simplex)` pairs.
    pub bijection: Vec<(Simplex, Simplex)>,
    pub is_bijection: bool,
    pub face_preserving: bool,
    pub ok: bool,
}

/// Compares the fixed subcomplex with the complex of the smooth restricted system.
pub fn compare_with_folded(
    c: &CoxeterComplex,
    a: &ComplexAction,
    t: &TwoStageResult,
    p: CharacteristicRule,
) -> Result<ComparisonVerdict, CoxError> {
    let g = &a.group;
    let simple_set: HashSet<usize> = c.simple.iter().copied().collect();
    if g.elements.iter().any(|e| c.simple.iter().any(|&s| !simple_set.contains(&e.perm[s]))) {
        return Err(CoxError::NotStable);
    }
    let total = &t.total;
    let q = &total.quotient;
    let smooth = smooth_root_system(t, p);
    let centralizer_order = weyl_centralizer_order(g, &c.weyl);
    let smooth_weyl_order = subsystem_weyl_order(q, &smooth)?;

    // folded complex on the smooth system, simple roots from orbits of Delta
    let sdat = q.sub_datum(&smooth);
    let in_smooth: HashMap<usize, usize> = smooth.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut orbit_node: Vec<usize> = Vec::new();
    let mut node_of_simple = vec![0usize; c.rank()];
    for (k, &s) in c.simple.iter().enumerate() {
        let a0 = total.root_image[s];
        let target = if in_smooth.contains_key(&a0) { Some(a0) } else { q.double(a0).filter(|x| in_smooth.contains_key(x)) };
        let target = target.ok_or_else(|| FoldError::InternalAxiomFailure("simple orbit has no smooth image".into()))?;
        let node = match orbit_node.iter().position(|&x| x == target) {
            Some(i) => i,
            None => {
                orbit_node.push(target);
                orbit_node.len() - 1
            }
        };
        node_of_simple[k] = node;
    }
    let folded_simple: Vec<usize> = orbit_node.iter().map(|x| in_smooth[x]).collect();
    let fc = build_complex(&sdat, &folded_simple)?;

    let fixed = fixed_subcomplex(c, a);
    let mut bijection = Vec::with_capacity(fixed.len());
    let mut image_of: HashMap<usize, usize> = HashMap::new();
    for &s in &fixed {
        let sx = c.simplices[s];
        let mask = (0..c.rank()).filter(|&k| sx.mask >> k & 1 == 1).fold(0u32, |m, k| m | 1 << node_of_simple[k]);
        let pw = c.weyl.perm(sx.rep);
        let mut img = vec![0u16; smooth.len()];
        for (k, &qi) in smooth.iter().enumerate() {
            let src = total.fibers[qi][0];
            let to = total.root_image[pw[src] as usize];
            let Some(&j) = in_smooth.get(&to) else {
                return Err(FoldError::InternalAxiomFailure("fixed Weyl element moves the smooth system".into()).into());
            };
            img[k] = j as u16;
        }
        let Some(w) = fc.weyl.find(&img) else {
            return Ok(verdict(centralizer_order, smooth_weyl_order, &fixed, c, &fc, Vec::new(), false, false));
        };
        let fs = Simplex { mask, rep: fc.reduce(mask, w) };
        let Some(&fi) = fc.index.get(&fs) else {
            return Ok(verdict(centralizer_order, smooth_weyl_order, &fixed, c, &fc, Vec::new(), false, false));
        };
        image_of.insert(s, fi);
        bijection.push((sx, fs));
    }
    let is_bijection = image_of.values().collect::<HashSet<_>>().len() == fixed.len() && fixed.len() == fc.simplices.len();
    let face_preserving = fixed
        .iter()
        .all(|&x| fixed.iter().all(|&y| c.is_face(x, y) == fc.is_face(image_of[&x], image_of[&y])));
    Ok(verdict(centralizer_order, smooth_weyl_order, &fixed, c, &fc, bijection, is_bijection, face_preserving))
}

#[allow(clippy::too_many_arguments)]
fn verdict(
    centralizer_order: usize,
    smooth_weyl_order: usize,
    fixed: &[usize],
    c: &CoxeterComplex,
    fc: &CoxeterComplex,
    bijection: Vec<(Simplex, Simplex)>,
    is_bijection: bool,
    face_preserving: bool,
) -> ComparisonVerdict {
    let orders_agree = centralizer_order == smooth_weyl_order;
    ComparisonVerdict {
        centralizer_order,
        smooth_weyl_order,
        orders_agree,
        fixed_simplices: fixed.len(),
        fixed_chambers: fixed.iter().filter(|&&s| c.simplices[s].mask == 0).count(),
        folded_simplices: fc.simplices.len(),
        bijection,
        is_bijection,
        face_preserving,
        ok: orders_agree && is_bijection && face_preserving,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::named_action;
    use crate::folding::fold_geometric;
    use crate::rootdata::named;

    #[test]
    fn small_complexes() {
        let c = build_complex(&named("A2"), &[0, 1]).unwrap();
        assert_eq!(c.chambers().count(), 6);
        assert_eq!(c.vertices().count(), 6);
        let c = build_complex(&named("A1"), &[0]).unwrap();
        assert_eq!(c.chambers().count(), 2);
        let c = build_complex(&named("A1xA1"), &[0, 1]).unwrap();
        assert_eq!(c.chambers().count(), 4);
        assert_eq!(c.vertices().count(), 4);
        // each edge of the hexagon has two vertices
        let c = build_complex(&named("A2"), &[0, 1]).unwrap();
        assert!(c.chambers().all(|ch| c.faces(ch).len() == 2));
    }

    #[test]
    fn fixed_points() {
        let d = named("A2");
        let c = build_complex(&d, &[0, 1]).unwrap();
        let g = named_action(&d, "swap").unwrap();
        let a = complex_action(&c, &g).unwrap();
        assert_eq!(fixed_subcomplex(&c, &a).len(), 2);
        let t = ActionGroup::trivial(&d);
        let a0 = complex_action(&c, &t).unwrap();
        assert_eq!(fixed_subcomplex(&c, &a0).len(), c.simplices.len());

        let d = named("A1xA1");
        let c = build_complex(&d, &[0, 1]).unwrap();
        let g = named_action(&d, "block-swap").unwrap();
        let a = complex_action(&c, &g).unwrap();
        assert_eq!(fixed_subcomplex(&c, &a).len(), 2);

        let d = named("A1");
        let c = build_complex(&d, &[0]).unwrap();
        let g = named_action(&d, "minus-one").unwrap();
        let a = complex_action(&c, &g).unwrap();
        assert_eq!(fixed_subcomplex(&c, &a).iter().filter(|&&s| c.simplices[s].mask == 0).count(), 0);
    }

    #[test]
    fn comparison() {
        for (name, act, p) in [("A2", "swap", 3), ("D4", "triality", 1), ("A3", "trivial", 1), ("E6", "flip", 2)] {
            let d = named(name);
            let g = named_action(&d, act).unwrap();
            let t = fold_geometric(&d, &g).unwrap();
            let simple = t.total.source_positive.members();
            let simple = crate::rootdata::indecomposable(&d, &simple);
            if d.len() > 40 {
                // E6: only the order comparison, the complex is large
                let w = weyl_group_with(&d, &simple, weyl_bound()).unwrap();
                let smooth = smooth_root_system(&t, CharacteristicRule::new(p).unwrap());
                assert_eq!(weyl_centralizer_order(&g, &w), subsystem_weyl_order(&t.total.quotient, &smooth).unwrap());
                continue;
            }
            let c = build_complex(&d, &simple).unwrap();
            let a = complex_action(&c, &g).unwrap();
            let v = compare_with_folded(&c, &a, &t, CharacteristicRule::new(p).unwrap()).unwrap();
            assert!(v.ok, "{name}/{act}: {v:?}");
        }
    }
}
