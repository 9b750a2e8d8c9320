#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use proptest::test_runner::{Config, RngSeed};

use rootfold::action::{named_action, stable_positive_system, ActionGroup, DatumAutomorphism};
use rootfold::catalog::{catalog, CatalogEntry};
use rootfold::coxfix::{build_complex, compare_with_folded, complex_action, fixed_subcomplex};
use rootfold::folding::{
    folded_simple_and_dynkin, simple_orbits, smooth_root_system, subsystem_weyl_order, two_stage, CharacteristicRule,
    TwoStageResult,
};
use rootfold::induce::{induction_quotient_compat, AbstractGroup};
use rootfold::linalg;
use rootfold::rootdata::{
    all_positive_systems, indecomposable, keep_it_simple, named, simple_system, type_label, PositiveSystem, RootDatum,
};

/// Fixed-seed configuration; `ROOTFOLD_SEED` overrides the seed.
pub fn config(cases: u32) -> Config {
    let seed = std::env::var("ROOTFOLD_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed_f01d);
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn entries() -> Vec<CatalogEntry> {
    catalog()
}

/// Catalog entries whose Coxeter complex is small enough to enumerate.
pub fn small_entries() -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| !matches!(e.datum.as_str(), "E6" | "A5" | "A6" | "D5")).collect()
}

fn orbit(g: &ActionGroup, x: usize) -> BTreeSet<usize> {
    g.elements.iter().map(|e| e.perm[x]).collect()
}

pub fn fiber_is_orbit(e: &CatalogEntry) -> Check {
    let (_, _, t) = e.fold().map_err(|x| x.to_string())?;
    for f in [&t.total, &t.stage1, &t.stage2] {
        for fiber in &f.fibers {
            let set: BTreeSet<usize> = fiber.iter().copied().collect();
            ensure!(orbit(&f.group, fiber[0]) == set, "{}: fiber {:?} is not an orbit", e.name, fiber);
        }
    }
    Ok(())
}

pub fn restriction_bijections(e: &CatalogEntry) -> Check {
    let (d, g, t) = e.fold().map_err(|x| x.to_string())?;
    let f = &t.total;
    let pos = stable_positive_system(&d, &g).map_err(|x| x.to_string())?.ok_or("unstable")?;
    for i in 0..d.len() {
        ensure!(pos.contains(i) == f.positive.contains(f.root_image[i]), "{}: positivity of root {i}", e.name);
    }
    let covered: HashSet<usize> = pos.members().iter().map(|&i| f.root_image[i]).collect();
    ensure!(covered == f.positive.members().into_iter().collect(), "{}: positives not covered", e.name);
    let simple = simple_system(&d, &pos);
    let (_, dia) = folded_simple_and_dynkin(f, &simple).map_err(|x| x.to_string())?;
    let orbits = simple_orbits(f, &simple).map_err(|x| x.to_string())?;
    ensure!(dia.nodes.len() == orbits.len(), "{}: {} nodes for {} orbits", e.name, dia.nodes.len(), orbits.len());
    let q_simple: BTreeSet<usize> = simple_system(&f.quotient, &f.positive).into_iter().collect();
    let nodes: BTreeSet<usize> = dia.nodes.iter().copied().collect();
    ensure!(nodes == q_simple, "{}: folded nodes are not the quotient simple roots", e.name);
    for o in &orbits {
        let img: BTreeSet<usize> = o.iter().map(|&i| f.root_image[i]).collect();
        ensure!(img.len() == 1, "{}: simple orbit {:?} has several images", e.name, o);
    }
    Ok(())
}

fn span_rank(d: &RootDatum, roots: &[usize]) -> usize {
    let rows: Vec<Vec<i64>> = roots.iter().map(|&i| d.root(i).clone()).collect();
    linalg::rank(&linalg::rational_matrix(&rows), d.rank())
}

pub const SMALL: [&str; 10] = ["A1", "BC1", "A2", "B2", "G2", "BC2", "A1xA1", "A3", "B3", "C3"];

/// `keep_it_simple` against the list of all positive systems. The subsystem is
/// the set of roots in the span of roots `b` and `c`, positive as in the
/// `ps`-th positive system, and `pick` chooses one of its simple roots.
pub fn keep_it_simple_case(name: &str, b: usize, c: usize, ps: usize, pick: usize) -> Check {
    let d = named(name);
    let (b, c) = (b % d.len(), c % d.len());
    let r = span_rank(&d, &[b, c]);
    let sub: Vec<usize> = (0..d.len()).filter(|&x| span_rank(&d, &[b, c, x]) == r).collect();
    let systems = all_positive_systems(&d).map_err(|x| x.to_string())?;
    let ambient = &systems[ps % systems.len()];
    let sub_pos: Vec<usize> = sub.iter().copied().filter(|&x| ambient.contains(x)).collect();
    let simple = indecomposable(&d, &sub_pos);
    let a = simple[pick % simple.len()];
    let target = if d.is_divisible(a) { d.half(a).unwrap() } else { a };
    let ok = |p: &PositiveSystem| sub_pos.iter().all(|&x| p.contains(x)) && simple_system(&d, p).contains(&target);
    let exists = systems.iter().any(ok);
    ensure!(exists, "{name}: no positive system keeps root {a} simple");
    match keep_it_simple(&d, &sub, &sub_pos, a) {
        Ok(p) => {
            ensure!(ok(&p), "{name}: result does not keep root {a} simple");
            ensure!(systems.contains(&p), "{name}: result is not a positive system");
            Ok(())
        }
        Err(e) => Err(format!("{name}: keep_it_simple failed although a witness exists: {e}")),
    }
}

fn swap(d: &RootDatum) -> DatumAutomorphism {
    let g = named_action(d, "swap").unwrap();
    g.elements[g.generators[0]].clone()
}

pub const INDUCTION_GROUPS: usize = 5;
pub const INDUCTION_SUBGROUPS: usize = 4;

/// `(group, subgroup, action of the subgroup)`: cyclic groups of order 1 to 4
/// and the Klein four-group, acting on `d` through the diagram swap or trivially.
pub fn induction_case(
    group_kind: usize,
    sub_kind: usize,
    twist: bool,
    d: &RootDatum,
) -> (AbstractGroup, Vec<usize>, Vec<DatumAutomorphism>) {
    let id = DatumAutomorphism::identity(d);
    let s = if twist && d.rank() == 2 { swap(d) } else { id.clone() };
    let pick = |k: usize| if k % 2 == 1 { s.clone() } else { id.clone() };
    if group_kind < 4 {
        let m = group_kind + 1;
        let g = AbstractGroup::cyclic(m);
        let sub: Vec<usize> = match (m, sub_kind % 3) {
            (4, 1) => vec![0, 2],
            (_, 0) => vec![0],
            _ => (0..m).collect(),
        };
        let act: Vec<DatumAutomorphism> = match sub.len() {
            2 if m == 4 => vec![id.clone(), s.clone()],
            l if l % 2 == 0 => sub.iter().map(|&k| pick(k)).collect(),
            l => vec![id.clone(); l],
        };
        return (g, sub, act);
    }
    let c2 = AbstractGroup::cyclic(2);
    let g = AbstractGroup::product(&c2, &c2);
    match sub_kind % 4 {
        0 => (g, vec![0], vec![id]),
        k @ 1..=2 => (g, vec![0, k], vec![id, s]),
        _ => (g, vec![0, 1, 2, 3], (0..4).map(pick).collect()),
    }
}

pub fn induction_compat(group_kind: usize, sub_kind: usize, twist: bool, rank2: bool) -> Check {
    let d = named(if rank2 { "A2" } else { "A1" });
    let (g, sub, act) = induction_case(group_kind, sub_kind, twist, &d);
    match induction_quotient_compat(&d, &g, &sub, &act) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("induction case ({group_kind}, {sub_kind}, {twist}, {rank2}) is incompatible")),
        Err(e) => Err(e.to_string()),
    }
}

pub fn two_stage_consistent(t: &TwoStageResult) -> Check {
    let n = t.total.quotient.len();
    ensure!(t.stage2.quotient.len() == n, "stage 2 has {} roots, total {n}", t.stage2.quotient.len());
    let image: BTreeSet<usize> = t.total_to_stage2.iter().copied().collect();
    ensure!(image.len() == n, "total -> stage 2 is not a bijection");
    let hit: BTreeSet<usize> = t.stage1_to_total.iter().copied().collect();
    ensure!(hit.len() == n, "stage 1 -> total is not onto");
    let (a, b) = (type_label(&t.stage2.quotient), type_label(&t.total.quotient));
    ensure!(a.is_ok() && a == b, "stage 2 type {:?} differs from total {:?}", a, b);
    for (i, &j) in t.total_to_stage2.iter().enumerate() {
        ensure!(t.total.quotient.is_multipliable(i) == t.stage2.quotient.is_multipliable(j), "multipliability of root {i}");
    }
    Ok(())
}

/// Folds with the generators in `galois_mask` moved to the second stage and
/// compares with the one-stage quotient.
pub fn two_stage_transitive(e: &CatalogEntry, galois_mask: u32) -> Check {
    let d = e.root_datum();
    let g = named_action(&d, &e.action).map_err(|x| x.to_string())?;
    let geo: Vec<usize> =
        (0..g.generators.len()).filter(|i| galois_mask >> i & 1 == 0).map(|i| g.generators[i]).collect();
    let Ok(g) = g.with_geometric(&geo) else { return Ok(()) };
    let pos = stable_positive_system(&d, &g).map_err(|x| x.to_string())?.ok_or("unstable")?;
    let t = two_stage(&d, &g, &pos).map_err(|x| x.to_string())?;
    two_stage_consistent(&t).map_err(|m| format!("{}: {m}", e.name))?;
    let all: Vec<usize> = (0..g.order()).collect();
    let one = two_stage(&d, &g.clone().with_geometric(&all).unwrap(), &pos).map_err(|x| x.to_string())?;
    ensure!(
        type_label(&one.total.quotient).ok() == type_label(&t.total.quotient).ok(),
        "{}: one-stage and two-stage quotients differ",
        e.name
    );
    Ok(())
}

pub fn chambers_match(e: &CatalogEntry, p: u64) -> Check {
    let (d, g, t) = e.fold().map_err(|x| x.to_string())?;
    let pos = stable_positive_system(&d, &g).map_err(|x| x.to_string())?.ok_or("unstable")?;
    let c = build_complex(&d, &simple_system(&d, &pos)).map_err(|x| x.to_string())?;
    let a = complex_action(&c, &g).map_err(|x| x.to_string())?;
    let chambers = fixed_subcomplex(&c, &a).iter().filter(|&&s| c.simplices[s].mask == 0).count();
    let rule = CharacteristicRule::new(p).map_err(|x| x.to_string())?;
    let w = subsystem_weyl_order(&t.total.quotient, &smooth_root_system(&t, rule)).map_err(|x| x.to_string())?;
    ensure!(chambers == w, "{} at p = {p}: {chambers} fixed chambers, |W| = {w}", e.name);
    let v = compare_with_folded(&c, &a, &t, rule).map_err(|x| x.to_string())?;
    ensure!(v.ok, "{} at p = {p}: {:?}", e.name, v);
    Ok(())
}
