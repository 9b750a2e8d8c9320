//! Borel–de Siebenthal bases and subsystems.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::intlat::{big_vec, hermite_normal_form, hnf_contains, smith_normal_form, IntMatrix};
use crate::linalg;
use crate::rootdata::{
    classify_subset, component_partition, dot, highest_root, named, simple_coordinates, weyl_group_with,
    RootDataError, RootDatum, Vector, WeylGroup,
};

pub const DEFAULT_SUBSYSTEM_BOUND: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BdsError {
    #[error("component of the chosen root is not reduced")]
    NonReduced,
    #[error("root {0} is not in the simple system")]
    NotSimple(usize),
    #[error("lattice is not spanned by the simple roots")]
    NotAdjoint,
    #[error("{0} roots exceed the enumeration bound {1}")]
    TooLarge(usize, usize),
    #[error("internal consistency failure: {0}")]
    InternalAxiomFailure(String),
    #[error(transparent)]
    RootData(RootDataError),
}

impl From<RootDataError> for BdsError {
    fn from(e: RootDataError) -> Self {
        match e {
            RootDataError::NonReduced => BdsError::NonReduced,
            e => BdsError::RootData(e),
        }
    }
}

/// Rational cocharacter `numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalVector {
    pub numerator: Vector,
    pub denominator: i64,
}

impl RationalVector {
    pub fn from_rationals(v: &[BigRational]) -> Self {
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let numerator = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer().to_i64().unwrap()).collect();
        RationalVector { numerator, denominator: den.to_i64().unwrap() }
    }

    /// Pairing with a character, as a fraction `(num, den)` in lowest terms.
    pub fn pair(&self, x: &[i64]) -> BigRational {
        BigRational::new(dot(&self.numerator, x).into(), self.denominator.into())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BdSData {
    pub base_simple_system: Vec<usize>,
    pub chosen_root: usize,
    pub highest_root: usize,
    pub highest_root_coefficients: Vec<i64>,
    pub coefficient: i64,
    pub bds_basis: Vec<usize>,
    pub subsystem: Vec<usize>,
    pub subsystem_type: String,
    pub fundamental_coweight: RationalVector,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BdSView {
    pub base_simple_system: Vec<Vector>,
    pub chosen_node: usize,
    pub chosen_root: Vector,
    pub highest_root: Vector,
    pub highest_root_coefficients: Vec<i64>,
    pub coefficient: i64,
    pub bds_basis: Vec<Vector>,
    pub subsystem: Vec<Vector>,
    pub subsystem_type: String,
    pub fundamental_coweight: RationalVector,
}

impl BdSData {
    pub fn view(&self, d: &RootDatum) -> BdSView {
        let r = |i: usize| d.root(i).clone();
        BdSView {
            base_simple_system: self.base_simple_system.iter().map(|&i| r(i)).collect(),
            chosen_node: self.base_simple_system.iter().position(|&i| i == self.chosen_root).unwrap() + 1,
            chosen_root: r(self.chosen_root),
            highest_root: r(self.highest_root),
            highest_root_coefficients: self.highest_root_coefficients.clone(),
            coefficient: self.coefficient,
            bds_basis: self.bds_basis.iter().map(|&i| r(i)).collect(),
            subsystem: self.subsystem.iter().map(|&i| r(i)).collect(),
            subsystem_type: self.subsystem_type.clone(),
            fundamental_coweight: self.fundamental_coweight.clone(),
        }
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Cocharacter in the span of the simple coroots pairing to `delta_{beta, alpha}`.
pub fn fundamental_coweight(d: &RootDatum, simple: &[usize], alpha: usize) -> Option<RationalVector> {
    let k = simple.len();
    // unknowns: coefficients c_j on simple coroots; <beta_i, sum c_j beta_j^vee> = delta
    let rows: Vec<Vec<BigRational>> =
        simple.iter().map(|&i| simple.iter().map(|&j| rat(d.cartan(i, j))).collect()).collect();
    let rhs: Vec<BigRational> = simple.iter().map(|&i| rat((i == alpha) as i64)).collect();
    let c = linalg::solve(&rows, &rhs, k)?;
    let v: Vec<BigRational> = (0..d.rank())
        .map(|x| simple.iter().zip(&c).fold(BigRational::zero(), |acc, (&j, cj)| acc + cj * rat(d.coroot(j)[x])))
        .collect();
    Some(RationalVector::from_rationals(&v))
}

/// Coordinates of `root` over the linearly independent roots `basis`.
fn coordinates(d: &RootDatum, basis: &[usize], root: usize) -> Option<Vec<BigRational>> {
    let rows: Vec<Vec<BigRational>> =
        (0..d.rank()).map(|x| basis.iter().map(|&b| rat(d.root(b)[x])).collect()).collect();
    let rhs: Vec<BigRational> = d.root(root).iter().map(|&x| rat(x)).collect();
    linalg::solve(&rows, &rhs, basis.len())
}

pub fn bds(d: &RootDatum, simple: &[usize], alpha: usize) -> Result<BdSData, BdsError> {
    let pos = simple.iter().position(|&s| s == alpha).ok_or(BdsError::NotSimple(alpha))?;
    let comp = component_partition(d).into_iter().find(|c| c.contains(&alpha)).unwrap();
    let (top, coeffs) = highest_root(d, simple, &comp)?;
    let n = coeffs[pos];
    let neg_top = d.negative(top).unwrap();
    let mut basis: Vec<usize> = simple.iter().copied().filter(|&s| s != alpha).collect();
    basis.push(neg_top);

    let cow = fundamental_coweight(d, simple, alpha)
        .ok_or_else(|| BdsError::InternalAxiomFailure("simple roots are dependent".into()))?;
    if cow.pair(d.root(top)) != rat(n) {
        return Err(BdsError::InternalAxiomFailure("coefficient differs from coweight pairing".into()));
    }
    let by_closure = crate::rootdata::integral_closure(d, &basis);
    let by_pairing: Vec<usize> = (0..d.len())
        .filter(|&b| {
            let p = cow.pair(d.root(b));
            p.is_integer() && p.to_integer().is_multiple_of(&BigInt::from(n))
        })
        .collect();
    if by_closure != by_pairing {
        return Err(BdsError::InternalAxiomFailure(format!(
            "closure gives {} roots, pairing criterion gives {}",
            by_closure.len(),
            by_pairing.len()
        )));
    }
    for &b in &by_closure {
        let p = cow.pair(d.root(b));
        if !(p.is_zero() || p.abs() == rat(n)) {
            return Err(BdsError::InternalAxiomFailure("subsystem root pairs outside {0, ±n}".into()));
        }
        let c = coordinates(d, &basis, b)
            .ok_or_else(|| BdsError::InternalAxiomFailure("subsystem root outside the basis span".into()))?;
        let coherent = c.iter().all(|x| x.is_integer())
            && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()));
        if !coherent {
            return Err(BdsError::InternalAxiomFailure("basis is not simple for the subsystem".into()));
        }
    }
    let subsystem_type = classify_subset(d, &by_closure)?.to_string();
    Ok(BdSData {
        base_simple_system: simple.to_vec(),
        chosen_root: alpha,
        highest_root: top,
        highest_root_coefficients: coeffs,
        coefficient: n,
        bds_basis: basis,
        subsystem: by_closure,
        subsystem_type,
        fundamental_coweight: cow,
    })
}

/// Nontrivial invariant factors of `Z Delta / Z Delta_alpha`; requires `X = Z Delta`.
pub fn bds_center_invariant(d: &RootDatum, simple: &[usize], alpha: usize) -> Result<Vec<BigInt>, BdsError> {
    let cols: Vec<Vec<BigInt>> = simple.iter().map(|&s| big_vec(d.root(s))).collect();
    if simple.len() != d.rank() || !IntMatrix::from_columns(&cols, d.rank()).is_unimodular() {
        return Err(BdsError::NotAdjoint);
    }
    let data = bds(d, simple, alpha)?;
    let cols: Vec<Vec<BigInt>> = data.bds_basis.iter().map(|&s| big_vec(d.root(s))).collect();
    let snf = smith_normal_form(&IntMatrix::from_columns(&cols, d.rank()));
    Ok(snf.invariant_factors().into_iter().filter(|x| !x.is_one()).collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoweightPairing {
    pub label: String,
    pub cocharacter: Vector,
    pub pairing_with_alpha4: i64,
    /// Nodes of the A2 component (0 stands for the lowest root).
    pub component: Vec<usize>,
    /// Coefficients of the cocharacter over the component's coroots.
    pub component_coefficients: Vec<i64>,
    /// Pairings of the component's roots with the cocharacter.
    pub component_pairings: Vec<i64>,
    pub generates_center: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct E6PairingReport {
    pub pairings: Vec<CoweightPairing>,
    pub alpha2_with_first: i64,
    pub ok: bool,
}

/// The three cocharacters attached to the 3A2 subsystem of E6.
pub fn e6_coweight_pairings() -> E6PairingReport {
    let d = named("E6");
    let simple: Vec<usize> = (0..6).collect();
    let comp = component_partition(&d).remove(0);
    let (top, _) = highest_root(&d, &simple, &comp).expect("E6 is reduced");
    let lowest = d.negative(top).unwrap();
    let node = |k: usize| if k == 0 { lowest } else { k - 1 };
    let comb = |terms: &[(i64, usize)]| -> Vector {
        let mut v = vec![0; d.rank()];
        for &(c, k) in terms {
            let co = if k == 0 { d.coroot(top) } else { d.coroot(k - 1) };
            for (a, b) in v.iter_mut().zip(co) {
                *a += c * b;
            }
        }
        v
    };
    // alpha_0^vee enters with the sign of the highest root; the component uses -alpha_0
    let specs: [(&str, Vec<(i64, usize)>, Vec<usize>, Vec<i64>); 3] = [
        ("-2a1v-a3v", vec![(-2, 1), (-1, 3)], vec![1, 3], vec![-2, -1]),
        ("-2a6v-a5v", vec![(-2, 6), (-1, 5)], vec![6, 5], vec![-2, -1]),
        ("2a0v-a2v", vec![(2, 0), (-1, 2)], vec![0, 2], vec![-2, -1]),
    ];
    let alpha4 = d.root(3).clone();
    let mut pairings = Vec::new();
    for (label, terms, nodes, coeffs) in specs {
        let c = comb(&terms);
        let roots: Vec<usize> = nodes.iter().map(|&k| node(k)).collect();
        let component_pairings: Vec<i64> = roots.iter().map(|&r| dot(d.root(r), &c)).collect();
        // coefficients over the component coroots (the lowest root's coroot is -alpha_0^vee)
        let back: Vector = {
            let mut v = vec![0; d.rank()];
            for (&r, &k) in roots.iter().zip(&coeffs) {
                for (a, b) in v.iter_mut().zip(d.coroot(r)) {
                    *a += k * b;
                }
            }
            v
        };
        let generates = back == c
            && component_pairings.iter().all(|x| x % 3 == 0)
            && coeffs.iter().any(|x| x.rem_euclid(3) != 0);
        pairings.push(CoweightPairing {
            label: label.into(),
            pairing_with_alpha4: dot(&alpha4, &c),
            cocharacter: c,
            component: nodes,
            component_coefficients: coeffs,
            component_pairings,
            generates_center: generates,
        });
    }
    let alpha2_with_first = dot(d.root(1), &pairings[0].cocharacter);
    let ok = pairings.iter().all(|p| p.pairing_with_alpha4 == 1 && p.generates_center) && alpha2_with_first == 0;
    E6PairingReport { pairings, alpha2_with_first, ok }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedSubsystem {
    pub roots: Vec<usize>,
    pub type_label: String,
    pub full_rank: bool,
    /// `(node, coefficient)` of a BdS subsystem in the same Weyl orbit.
    pub bds_match: Option<(usize, i64)>,
}

fn span_rank(d: &RootDatum, set: &[usize]) -> usize {
    let rows: Vec<Vec<BigInt>> = set.iter().map(|&i| big_vec(d.root(i))).collect();
    hermite_normal_form(&rows, d.rank()).len()
}

fn closure_with(d: &RootDatum, set: &[usize], extra: usize) -> Vec<usize> {
    let mut gens: Vec<Vec<BigInt>> = set.iter().map(|&i| big_vec(d.root(i))).collect();
    gens.push(big_vec(d.root(extra)));
    let hnf = hermite_normal_form(&gens, d.rank());
    (0..d.len()).filter(|&i| hnf_contains(&hnf, &big_vec(d.root(i)))).collect()
}

fn canonical(w: &WeylGroup, set: &[usize]) -> Vec<usize> {
    (0..w.order())
        .map(|e| {
            let mut v: Vec<usize> = set.iter().map(|&i| w.apply(e, i)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Maximal proper integrally closed subsystems, one per Weyl orbit, in
/// lexicographic order of canonical forms.
pub fn maximal_closed_subsystems(
    d: &RootDatum,
    simple: &[usize],
    full_rank_only: bool,
    bound: usize,
) -> Result<Vec<ClosedSubsystem>, BdsError> {
    if d.len() > bound {
        return Err(BdsError::TooLarge(d.len(), bound));
    }
    let all: Vec<usize> = (0..d.len()).collect();
    let full = span_rank(d, &all);
    let positives: Vec<usize> = {
        let coords = simple_coordinates(d, simple);
        (0..d.len()).filter(|&i| coords[i].as_ref().is_some_and(|c| c.iter().all(|&x| x >= 0))).collect()
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: Vec<Vec<usize>> = vec![Vec::new()];
    seen.insert(Vec::new());
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        let set: HashSet<usize> = cur.iter().copied().collect();
        for &b in &positives {
            if set.contains(&b) {
                continue;
            }
            let next = closure_with(d, &cur, b);
            if next.len() < d.len() && seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let closed: Vec<Vec<usize>> = queue.into_iter().filter(|s| !s.is_empty()).collect();
    let as_sets: Vec<HashSet<usize>> = closed.iter().map(|s| s.iter().copied().collect()).collect();
    let maximal: Vec<&Vec<usize>> = closed
        .iter()
        .enumerate()
        .filter(|(i, s)| !as_sets.iter().enumerate().any(|(j, t)| j != *i && t.len() > s.len() && s.iter().all(|x| t.contains(x))))
        .map(|(_, s)| s)
        .collect();

    let w = weyl_group_with(d, simple, crate::rootdata::weyl_bound())?;
    let mut bds_forms: HashMap<Vec<usize>, (usize, i64)> = HashMap::new();
    for (k, &s) in simple.iter().enumerate() {
        let comp = component_partition(d).into_iter().find(|c| c.contains(&s)).unwrap();
        if comp.iter().any(|&i| d.is_multipliable(i)) {
            continue;
        }
        let data = bds(d, simple, s)?;
        if crate::action::is_prime(data.coefficient) {
            bds_forms.entry(canonical(&w, &data.subsystem)).or_insert((k + 1, data.coefficient));
        }
    }
    let mut out: Vec<(Vec<usize>, ClosedSubsystem)> = Vec::new();
    let mut orbit_seen = HashSet::new();
    for s in maximal {
        let full_rank = span_rank(d, s) == full;
        if full_rank_only && !full_rank {
            continue;
        }
        let c = canonical(&w, s);
        if !orbit_seen.insert(c.clone()) {
            continue;
        }
        let bds_match = if full_rank { bds_forms.get(&c).copied() } else { None };
        out.push((
            c.clone(),
            ClosedSubsystem { roots: c, type_label: classify_subset(d, s)?.to_string(), full_rank, bds_match },
        ));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, x)| x).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLabel;

    fn simple(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn e6_and_d4_examples() {
        let e6 = named("E6");
        let b = bds(&e6, &simple(6), 3).unwrap();
        assert_eq!(b.coefficient, 3);
        assert_eq!(b.subsystem.len(), 18);
        assert_eq!(b.subsystem_type.parse::<TypeLabel>().unwrap(), "3A2".parse().unwrap());
        let b = bds(&e6, &simple(6), 1).unwrap();
        assert_eq!(b.coefficient, 2);
        assert_eq!(b.subsystem_type.parse::<TypeLabel>().unwrap(), "A5+A1".parse().unwrap());
        let d4 = named("D4");
        let b = bds(&d4, &simple(4), 1).unwrap();
        assert_eq!(b.coefficient, 2);
        assert_eq!(b.subsystem_type, "4A1");
        assert_eq!(bds_center_invariant(&e6, &simple(6), 3).unwrap(), vec![BigInt::from(3)]);
        assert_eq!(bds_center_invariant(&d4, &simple(4), 1).unwrap(), vec![BigInt::from(2)]);
        assert!(bds_center_invariant(&named("A3"), &simple(3), 0).unwrap().is_empty());
    }

    #[test]
    fn pairings() {
        let r = e6_coweight_pairings();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn maximal_subsystems() {
        let a2 = named("A2");
        assert!(maximal_closed_subsystems(&a2, &simple(2), true, 48).unwrap().is_empty());
        let g2 = named("G2");
        let m = maximal_closed_subsystems(&g2, &simple(2), true, 48).unwrap();
        let labels: HashSet<String> = m.iter().map(|s| s.type_label.clone()).collect();
        assert!(labels.contains("A2") && labels.contains("2A1"), "{labels:?}");
        assert!(m.iter().all(|s| s.bds_match.is_some()));
        let d4 = named("D4");
        let m = maximal_closed_subsystems(&d4, &simple(4), true, 48).unwrap();
        assert!(m.iter().any(|s| s.type_label == "4A1" && s.bds_match == Some((2, 2))));
    }

    #[test]
    fn non_adjoint_rejected() {
        let sc = crate::rootdata::named_datum("A2", crate::rootdata::LatticeForm::SimplyConnected).unwrap();
        assert_eq!(bds_center_invariant(&sc, &simple(2), 0), Err(BdsError::NotAdjoint));
    }
}
