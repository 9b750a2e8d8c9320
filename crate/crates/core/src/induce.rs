//! Induced root data along a subgroup inclusion.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::action::{close_group, stable_positive_system, ActionError, ActionGroup, DatumAutomorphism};
use crate::folding::{quotient_datum, FoldError};
use crate::intlat::IntMatrix;
use crate::rootdata::{mat_vec_i64, PositiveSystem, RootDataError, RootDatum, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InduceError {
    #[error("index set is not a subgroup")]
    NotSubgroup,
    #[error("malformed group table: {0}")]
    BadGroup(String),
    #[error("subgroup action is not a homomorphism")]
    NotHomomorphism,
    #[error("no stable positive system")]
    NotQuasisemisimple,
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

/// Finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractGroup {
    pub table: Vec<Vec<usize>>,
}

impl AbstractGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, InduceError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(InduceError::BadGroup("table must be square with entries in range".into()));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(InduceError::BadGroup("element 0 is not the identity".into()));
        }
        for row in &table {
            if row.iter().copied().collect::<HashSet<_>>().len() != n {
                return Err(InduceError::BadGroup("rows are not permutations".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(InduceError::BadGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(AbstractGroup { table })
    }

    pub fn cyclic(m: usize) -> Self {
        AbstractGroup { table: (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect() }
    }

    /// Direct product; `(a, b)` has index `a * |h| + b`.
    pub fn product(g: &AbstractGroup, h: &AbstractGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        AbstractGroup { table }
    }

    pub fn from_action(g: &ActionGroup) -> Self {
        // reindex so that the identity comes first
        let mut order: Vec<usize> = vec![g.identity];
        order.extend((0..g.order()).filter(|&x| x != g.identity));
        let mut pos = vec![0; g.order()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let table = order.iter().map(|&a| order.iter().map(|&b| pos[g.mul(a, b)]).collect()).collect();
        AbstractGroup { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn is_subgroup(&self, sub: &[usize]) -> bool {
        let set: HashSet<usize> = sub.iter().copied().collect();
        set.contains(&0)
            && sub.iter().all(|&x| x < self.order())
            && sub.iter().all(|&a| sub.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Left cosets `r Γ1` with minimal-index representatives, in order of representative.
    pub fn left_cosets(&self, sub: &[usize]) -> Vec<(usize, Vec<usize>)> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for r in 0..self.order() {
            if seen[r] {
                continue;
            }
            let mut coset: Vec<usize> = sub.iter().map(|&h| self.mul(r, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            out.push((r, coset));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct InducedDatum {
    pub result: RootDatum,
    /// Image of the group in the automorphisms of `result`.
    pub action: ActionGroup,
    /// Matrix of each group element on the induced lattice.
    pub element_matrices: Vec<Vec<Vector>>,
    pub coset_representatives: Vec<usize>,
    /// Coordinates of the induced lattice, one block per coset.
    pub coset_blocks: Vec<Vec<usize>>,
    /// Block 0 embedding of the source characters.
    pub embedding: IntMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InducedView {
    pub result: crate::rootdata::RootDatumJson,
    pub coset_representatives: Vec<usize>,
    pub coset_blocks: Vec<Vec<usize>>,
    pub element_matrices: Vec<Vec<Vector>>,
    pub action_order: usize,
}

impl From<&InducedDatum> for InducedView {
    fn from(x: &InducedDatum) -> Self {
        InducedView {
            result: x.result.to_json(),
            coset_representatives: x.coset_representatives.clone(),
            coset_blocks: x.coset_blocks.clone(),
            element_matrices: x.element_matrices.clone(),
            action_order: x.action.order(),
        }
    }
}

fn check_action(
    group: &AbstractGroup,
    sub: &[usize],
    action1: &[DatumAutomorphism],
) -> Result<(), InduceError> {
    if !group.is_subgroup(sub) || action1.len() != sub.len() {
        return Err(InduceError::NotSubgroup);
    }
    let at = |x: usize| sub.iter().position(|&s| s == x).unwrap();
    for (i, &a) in sub.iter().enumerate() {
        for (j, &b) in sub.iter().enumerate() {
            if action1[i].compose(&action1[j]).matrix != action1[at(group.mul(a, b))].matrix {
                return Err(InduceError::NotHomomorphism);
            }
        }
    }
    Ok(())
}

/// `action1[k]` is the automorphism of `d1` attached to `sub[k]`.
pub fn induce_datum(
    d1: &RootDatum,
    group: &AbstractGroup,
    sub: &[usize],
    action1: &[DatumAutomorphism],
) -> Result<InducedDatum, InduceError> {
    check_action(group, sub, action1)?;
    let cosets = group.left_cosets(sub);
    let m = cosets.len();
    let r1 = d1.rank();
    let rank = m * r1;
    let coset_of = |x: usize| cosets.iter().position(|(_, c)| c.contains(&x)).unwrap();
    let place = |block: usize, v: &[i64]| -> Vector {
        let mut out = vec![0; rank];
        out[block * r1..(block + 1) * r1].copy_from_slice(v);
        out
    };
    let mut roots = Vec::with_capacity(m * d1.len());
    let mut coroots = Vec::with_capacity(m * d1.len());
    // positive roots of every block first, to keep simple roots early
    for pass in [true, false] {
        for b in 0..m {
            for i in 0..d1.len() {
                let positive = (0..d1.len()).position(|j| d1.negative(j) == Some(i)).is_none_or(|n| i < n);
                if positive == pass {
                    roots.push(place(b, d1.root(i)));
                    coroots.push(place(b, d1.coroot(i)));
                }
            }
        }
    }
    let result = RootDatum::new(rank, roots, coroots)?;

    let at = |x: usize| sub.iter().position(|&s| s == x).unwrap();
    let mut element_matrices = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut mat = vec![vec![0i64; rank]; rank];
        for (i, (ri, _)) in cosets.iter().enumerate() {
            let gr = group.mul(g, *ri);
            let j = coset_of(gr);
            let h = group.mul(group.inverse(cosets[j].0), gr);
            let mh = &action1[at(h)].matrix;
            for a in 0..r1 {
                for b in 0..r1 {
                    mat[j * r1 + a][i * r1 + b] = mh[a][b];
                }
            }
        }
        element_matrices.push(mat);
    }
    let autos: Vec<DatumAutomorphism> =
        element_matrices.iter().map(|m| DatumAutomorphism::new(&result, m.clone())).collect::<Result<_, _>>()?;
    let action = close_group(&result, &autos)?;
    let mut emb = IntMatrix::zeros(rank, r1);
    for a in 0..r1 {
        emb.set(a, a, 1.into());
    }
    Ok(InducedDatum {
        result,
        action,
        element_matrices,
        coset_representatives: cosets.iter().map(|(r, _)| *r).collect(),
        coset_blocks: (0..m).map(|b| (b * r1..(b + 1) * r1).collect()).collect(),
        embedding: emb,
    })
}

/// Quotient of the induced datum by the whole group agrees with the quotient
/// of `d1` by the subgroup, via evaluation at the identity block.
pub fn induction_quotient_compat(
    d1: &RootDatum,
    group: &AbstractGroup,
    sub: &[usize],
    action1: &[DatumAutomorphism],
) -> Result<bool, InduceError> {
    let ind = induce_datum(d1, group, sub, action1)?;
    let g1 = close_group(d1, action1)?;
    let pos1 = stable_positive_system(d1, &g1)?.ok_or(InduceError::NotQuasisemisimple)?;
    let blocks = ind.coset_blocks.len();
    let mut flags = vec![false; ind.result.len()];
    for i in pos1.members() {
        for b in 0..blocks {
            let mut v = vec![0; ind.result.rank()];
            v[b * d1.rank()..(b + 1) * d1.rank()].copy_from_slice(d1.root(i));
            flags[ind.result.index_of(&v).unwrap()] = true;
        }
    }
    let pos_ind = PositiveSystem { flags };
    let q1 = quotient_datum(d1, &g1, &pos1)?;
    let qi = quotient_datum(&ind.result, &ind.action, &pos_ind)?;

    let lhs = qi.restriction.projection.mul(&ind.embedding);
    let iso = lhs.mul(&q1.restriction.section);
    if iso.rows() != iso.cols() || !iso.is_unimodular() || iso.mul(&q1.restriction.projection) != lhs {
        return Ok(false);
    }
    let m = iso.to_i64().unwrap();
    let mt: Vec<Vector> = (0..m.first().map_or(0, |r| r.len())).map(|j| m.iter().map(|r| r[j]).collect()).collect();
    let mut hit = HashSet::new();
    for k in 0..q1.quotient.len() {
        let img = mat_vec_i64(&m, q1.quotient.root(k));
        let Some(t) = qi.quotient.index_of(&img) else { return Ok(false) };
        if &mat_vec_i64(&mt, qi.quotient.coroot(t)) != q1.quotient.coroot(k) {
            return Ok(false);
        }
        hit.insert(t);
    }
    Ok(hit.len() == qi.quotient.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::named_action;
    use crate::rootdata::{named, type_label, validate, TypeLabel};

    #[test]
    fn a1_to_two_copies() {
        let a1 = named("A1");
        let g = AbstractGroup::cyclic(2);
        let id = DatumAutomorphism::identity(&a1);
        let ind = induce_datum(&a1, &g, &[0], std::slice::from_ref(&id)).unwrap();
        assert!(validate(&ind.result).ok);
        assert_eq!(type_label(&ind.result).unwrap(), "2A1".parse::<TypeLabel>().unwrap());
        assert_eq!(ind.element_matrices[1], vec![vec![0, 1], vec![1, 0]]);
        assert!(induction_quotient_compat(&a1, &g, &[0], &[id]).unwrap());
    }

    #[test]
    fn induction_along_equality() {
        let a2 = named("A2");
        let swap = named_action(&a2, "swap").unwrap();
        let s = swap.elements[swap.generators[0]].clone();
        let g = AbstractGroup::cyclic(2);
        let ind = induce_datum(&a2, &g, &[0, 1], &[DatumAutomorphism::identity(&a2), s.clone()]).unwrap();
        assert_eq!(ind.result, a2);
        assert_eq!(ind.element_matrices[1], s.matrix);
        assert!(induction_quotient_compat(&a2, &g, &[0, 1], &[DatumAutomorphism::identity(&a2), s]).unwrap());
    }

    #[test]
    fn three_copies() {
        let a2 = named("A2");
        let g = AbstractGroup::cyclic(3);
        let ind = induce_datum(&a2, &g, &[0], &[DatumAutomorphism::identity(&a2)]).unwrap();
        assert!(validate(&ind.result).ok);
        assert_eq!(type_label(&ind.result).unwrap(), "3A2".parse::<TypeLabel>().unwrap());
        assert_eq!(ind.action.order(), 3);
    }

    #[test]
    fn swap_inside_klein_four() {
        let a2 = named("A2");
        let swap = named_action(&a2, "swap").unwrap();
        let s = swap.elements[swap.generators[0]].clone();
        let g = AbstractGroup::product(&AbstractGroup::cyclic(2), &AbstractGroup::cyclic(2));
        // subgroup {(0,0), (1,0)} acts by the swap; the second factor swaps blocks
        let sub = [0, 2];
        let action1 = [DatumAutomorphism::identity(&a2), s];
        assert!(induction_quotient_compat(&a2, &g, &sub, &action1).unwrap());
        let ids = vec![DatumAutomorphism::identity(&a2); 3];
        assert_eq!(induce_datum(&a2, &g, &[0, 1, 2], &ids).err(), Some(InduceError::NotSubgroup));
    }
}
