//! Cross-module structural checks: resolutions stay exact under both
//! strategies, dimensions are strategy-independent on p-groups, and the
//! degree-one data matches abelianization.

use std::sync::Arc;

use cohoforge_core::catalog;
use cohoforge_core::group::FiniteGroup;
use cohoforge_core::ops;
use cohoforge_core::resolution::{Resolution, Strategy};

fn p_part_trivial(g: &FiniteGroup, p: u32) -> bool {
    let mut m = g.order();
    while m.is_multiple_of(p as usize) {
        m /= p as usize;
    }
    m == 1
}

fn small_catalog() -> Vec<Arc<FiniteGroup>> {
    catalog::census_catalog().into_iter().filter(|g| g.order() <= 16).collect()
}

#[test]
fn exactness_holds_for_both_strategies_on_the_small_catalog() {
    for g in small_catalog() {
        for p in [2u32, 3] {
            if g.order() % p as usize != 0 {
                continue;
            }
            let greedy = Resolution::build(&g, p, 3, Strategy::Greedy).unwrap();
            assert!(greedy.verify_exactness().pass, "greedy {} p={}", g.label(), p);
            if p_part_trivial(&g, p) {
                let minimal = Resolution::build(&g, p, 3, Strategy::Minimal).unwrap();
                assert!(minimal.verify_exactness().pass, "minimal {} p={}", g.label(), p);
                assert_eq!(
                    minimal.cohomology_dims(2).unwrap(),
                    greedy.cohomology_dims(2).unwrap(),
                    "strategy dims disagree for {}",
                    g.label()
                );
            }
        }
    }
}

#[test]
fn h1_dimension_matches_the_mod_p_abelianization() {
    // dim H^1 = dim Hom(G, F_p) for every catalog group
    for g in small_catalog() {
        for p in [2u32, 3] {
            if g.order() % p as usize != 0 {
                continue;
            }
            let strategy =
                if p_part_trivial(&g, p) { Strategy::Minimal } else { Strategy::Greedy };
            let res = Resolution::build(&g, p, 2, strategy).unwrap();
            let h1 = res.cocycle_basis(1).unwrap();
            let homs = ops::hom_to_fp_basis(&g, p as u8);
            assert_eq!(h1.len(), homs.len(), "{} at p={}", g.label(), p);
        }
    }
}

#[test]
fn h0_is_one_dimensional_everywhere() {
    for g in small_catalog() {
        for p in [2u32, 3] {
            if g.order() % p as usize != 0 {
                continue;
            }
            let strategy =
                if p_part_trivial(&g, p) { Strategy::Minimal } else { Strategy::Greedy };
            let res = Resolution::build(&g, p, 1, strategy).unwrap();
            let dims = res.cohomology_dims(0).unwrap();
            assert_eq!(dims, vec![1], "{}", g.label());
        }
    }
}

#[test]
fn minimal_differentials_live_in_the_augmentation_ideal() {
    for g in [catalog::quaternion8(), catalog::cyclic(8), catalog::elementary_abelian2(3)] {
        let res = Resolution::build(&g, 2, 4, Strategy::Minimal).unwrap();
        for j in 1..=res.length() {
            assert!(
                res.differential(j).augmented().is_zero(),
                "{} differential {} has a unit entry",
                g.label(),
                j
            );
        }
    }
}
