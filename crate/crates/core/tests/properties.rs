mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use rootfold::bds::{bds, bds_center_invariant};
use rootfold::catalog::two_stage_a2xa2;
use rootfold::checks::irreducible_reduced_types;
use rootfold::linalg;
use rootfold::rootdata::{irreducible_datum, simple_coordinates, Family, LatticeForm};

fn holds(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn fiber_is_orbit_prop(k in 0..entries().len()) {
        holds(fiber_is_orbit(&entries()[k]))?;
    }

    #[test]
    fn restriction_matches_positive_and_simple_systems(k in 0..entries().len()) {
        holds(restriction_bijections(&entries()[k]))?;
    }

    #[test]
    fn induction_commutes_with_quotients(
        group_kind in 0..INDUCTION_GROUPS, sub_kind in 0..INDUCTION_SUBGROUPS, twist: bool, rank2: bool,
    ) {
        holds(induction_compat(group_kind, sub_kind, twist, rank2))?;
    }

    #[test]
    fn two_stage_is_transitive(k in 0..entries().len(), galois_mask in 0u32..4) {
        holds(two_stage_transitive(&entries()[k], galois_mask))?;
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn keep_it_simple_agrees_with_enumeration(
        name in 0..SMALL.len(), b in 0usize..64, c in 0usize..64, ps in 0usize..64, pick in 0usize..8,
    ) {
        holds(keep_it_simple_case(SMALL[name], b, c, ps, pick))?;
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn fixed_chambers_count_folded_weyl_group(
        k in 0..small_entries().len(), p in prop::sample::select(vec![1u64, 2, 3]),
    ) {
        holds(chambers_match(&small_entries()[k], p))?;
    }
}

#[test]
fn two_stage_klein_example() {
    let (_, _, t) = two_stage_a2xa2().unwrap();
    two_stage_consistent(&t).unwrap();
}

fn bds_cases() -> Vec<(Family, usize, usize)> {
    irreducible_reduced_types(6).into_iter().flat_map(|(f, n)| (0..n).map(move |k| (f, n, k))).collect()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn bds_subsystem_is_divisibility_class(case in 0..bds_cases().len()) {
        let (fam, n, k) = bds_cases()[case];
        let d = irreducible_datum(fam, n, LatticeForm::Adjoint).unwrap();
        let simple = d.preferred_simple().unwrap().to_vec();
        let b = bds(&d, &simple, simple[k]).unwrap();
        let coeff = b.coefficient;
        let coords = simple_coordinates(&d, &simple);
        let expect: BTreeSet<usize> = (0..d.len()).filter(|&i| coords[i].as_ref().unwrap()[k] % coeff == 0).collect();
        prop_assert_eq!(b.subsystem.iter().copied().collect::<BTreeSet<_>>(), expect);
        let rows: Vec<Vec<i64>> = b.subsystem.iter().map(|&i| d.root(i).clone()).collect();
        prop_assert_eq!(linalg::rank(&linalg::rational_matrix(&rows), n), n);
        let inv = bds_center_invariant(&d, &simple, simple[k]).unwrap();
        let want: Vec<num_bigint::BigInt> = if coeff > 1 { vec![coeff.into()] } else { vec![] };
        prop_assert_eq!(inv, want);
    }
}
