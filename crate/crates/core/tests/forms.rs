#![allow(clippy::needless_range_loop)]

mod common;

use proptest::prelude::*;

use rootfold::formlab::gf2::Poly;
use rootfold::formlab::{
    fixed_group_report, lie_fixed_dimension, qb_kernel, same_subspace, FormData, RatFn, TowerField,
};
use rootfold::linalg::{self, Field};

fn poly_in_t(bits: u8) -> Poly {
    Poly::from_monomials((0..4).filter(|k| bits >> k & 1 == 1).map(|k| vec![k as u32]))
}

fn ratfn(num: u8, den: u8) -> RatFn {
    let d = poly_in_t(den | 1);
    RatFn::new(poly_in_t(num), d)
}

/// Symmetric matrix over `F2(t)` from packed coefficient bytes.
fn symmetric(n: usize, entries: &[(u8, u8)]) -> Vec<Vec<RatFn>> {
    let mut m = vec![vec![RatFn::zero(); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let (a, b) = entries[k % entries.len()];
            k += 1;
            m[i][j] = ratfn(a, b);
            m[j][i] = m[i][j].clone();
        }
    }
    m
}

fn form_strategy() -> impl Strategy<Value = FormData> {
    (2usize..=4, prop::collection::vec((0u8..16, 0u8..16), 10)).prop_filter_map("singular", |(n, e)| {
        FormData::new(TowerField::base(&["t"]), symmetric(n, &e)).ok()
    })
}

fn vector_strategy(n: usize) -> impl Strategy<Value = Vec<RatFn>> {
    prop::collection::vec((0u8..16, 0u8..16), n).prop_map(|v| v.into_iter().map(|(a, b)| ratfn(a, b)).collect())
}

fn scale(v: &[RatFn], l: &RatFn) -> Vec<RatFn> {
    v.iter().map(|x| x.mul(l)).collect()
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn qb_is_frobenius_semilinear(
        (f, x, y) in form_strategy().prop_flat_map(|f| { let n = f.dim(); (Just(f), vector_strategy(n), vector_strategy(n)) }),
        l in (0u8..16, 0u8..16),
    ) {
        let k = f.field.clone();
        let lam = ratfn(l.0, l.1);
        let sum: Vec<RatFn> = x.iter().zip(&y).map(|(a, b)| a.add(b)).collect();
        prop_assert_eq!(f.qb(&sum, &k).unwrap(), f.qb(&x, &k).unwrap().add(&f.qb(&y, &k).unwrap()));
        prop_assert_eq!(f.qb(&scale(&x, &lam), &k).unwrap(), lam.square().mul(&f.qb(&x, &k).unwrap()));
    }

    #[test]
    fn kernel_vectors_are_isotropic_and_maximal(f in form_strategy()) {
        let k = f.field.clone();
        let e = k.extend_sqrt("t").unwrap();
        for over in [&k, &e] {
            let ker = qb_kernel(&f, over).unwrap();
            for v in &ker {
                prop_assert!(f.qb(v, over).unwrap().is_zero());
            }
            // the field has degree 2 over its subfield of squares
            prop_assert!(ker.len() + 2 >= f.dim());
        }
    }

    #[test]
    fn kernel_is_invariant_under_scaling(f in form_strategy(), l in (1u8..16, 0u8..16)) {
        let lam = ratfn(l.0, l.1);
        let k = f.field.clone();
        let a = qb_kernel(&f, &k).unwrap();
        let b = qb_kernel(&f.scaled(&lam), &k).unwrap();
        prop_assert!(same_subspace(&a, &b, f.dim()));
    }

    #[test]
    fn kernel_grows_under_extension(f in form_strategy()) {
        let k = f.field.clone();
        let e = k.extend_sqrt("t").unwrap();
        let small = qb_kernel(&f, &k).unwrap();
        let big = qb_kernel(&f, &e).unwrap();
        let embedded: Vec<Vec<RatFn>> = small.iter().map(|v| v.iter().map(|x| k.embed(x, &e).unwrap()).collect()).collect();
        let joined: Vec<Vec<RatFn>> = big.iter().chain(&embedded).cloned().collect();
        prop_assert_eq!(linalg::rank(&joined, f.dim()), big.len());
    }

    #[test]
    fn lie_algebra_is_at_least_smooth_dimension(f in form_strategy()) {
        let l = lie_fixed_dimension(&f, &f.field).unwrap();
        prop_assert!(l.dimension >= l.smooth_dim);
        prop_assert_eq!(l.smooth, l.dimension == l.smooth_dim);
        if let Ok(r) = fixed_group_report(&f, &f.field) {
            prop_assert_eq!(r.smooth_dim, l.smooth_dim);
        }
    }
}

fn qb_f2(m: &[Vec<u8>], x: u32) -> u8 {
    (0..m.len()).filter(|&i| x >> i & 1 == 1).map(|i| m[i][i]).sum::<u8>() % 2
}

proptest! {
    #![proptest_config(common::config(64))]

    /// Over `F2` the kernel is counted by brute force.
    #[test]
    fn prime_field_kernel_matches_enumeration(n in 1usize..=5, bits in any::<u32>()) {
        let mut m = vec![vec![0u8; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[i][j] = (bits >> (k % 32) & 1) as u8;
                m[j][i] = m[i][j];
                k += 1;
            }
        }
        let gram: Vec<Vec<RatFn>> =
            m.iter().map(|r| r.iter().map(|&x| if x == 1 { RatFn::one() } else { RatFn::zero() }).collect()).collect();
        let Ok(f) = FormData::new(TowerField::prime(), gram) else { return Ok(()) };
        let zeros = (0u32..1 << n).filter(|&x| qb_f2(&m, x) == 0).count();
        let dim = qb_kernel(&f, &TowerField::prime()).unwrap().len();
        prop_assert_eq!(zeros, 1usize << dim);
    }
}
