//! Greedy-strategy resolutions of non-p-groups against the classical
//! presented cohomology rings, dimension by dimension. These exercise the
//! code path where ranks exceed cohomology dimensions and coboundaries must
//! be quotiented out.

use cohoforge_core::catalog;
use cohoforge_core::resolution::{Resolution, Strategy};
use cohoforge_core::ring::{presentation, Parity};

fn greedy_dims(group: &std::sync::Arc<cohoforge_core::FiniteGroup>, p: u32, max: usize) -> Vec<usize> {
    Resolution::build(group, p, max + 1, Strategy::Greedy)
        .unwrap()
        .cohomology_dims(max)
        .unwrap()
}

#[test]
fn s4_mod_2_matches_its_presented_ring() {
    // F_2[a, b, c]/(a c) with degrees 1, 2, 3
    let ring = presentation(
        2,
        &[1, 2, 3],
        &[&[(1, &[1, 0, 1])]],
        Parity::StrictlyCommutative,
    );
    let expect = ring.dims(5).unwrap();
    assert_eq!(expect, vec![1, 1, 2, 3, 3, 4]);
    assert_eq!(greedy_dims(&catalog::sym(4), 2, 5), expect);
}

#[test]
fn a4_mod_2_matches_its_presented_ring() {
    // F_2[u, v, w]/(u^3 + v^2 + v w + w^2) with degrees 2, 3, 3
    let ring = presentation(
        2,
        &[2, 3, 3],
        &[&[(1, &[3, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 1, 1]), (1, &[0, 0, 2])]],
        Parity::StrictlyCommutative,
    );
    let expect = ring.dims(5).unwrap();
    assert_eq!(expect, vec![1, 0, 1, 2, 1, 2]);
    assert_eq!(greedy_dims(&catalog::alt4(), 2, 5), expect);
}

#[test]
fn s4_mod_3_matches_its_presented_ring() {
    // Λ(d) ⊗ F_3[e] with degrees 3 and 4
    let ring = presentation(3, &[3, 4], &[], Parity::GradedCommutative);
    let expect = ring.dims(5).unwrap();
    assert_eq!(expect, vec![1, 0, 0, 1, 1, 0]);
    assert_eq!(greedy_dims(&catalog::sym(4), 3, 5), expect);
}

#[test]
fn a4_mod_3_matches_the_cyclic_quotient() {
    // the order-3 quotient carries everything: Λ(x) ⊗ F_3[y]
    let ring = presentation(3, &[1, 2], &[], Parity::GradedCommutative);
    let expect = ring.dims(5).unwrap();
    assert_eq!(expect, vec![1; 6]);
    assert_eq!(greedy_dims(&catalog::alt4(), 3, 5), expect);
}

#[test]
fn s3_mod_3_has_the_period_four_pattern() {
    // Λ(d) ⊗ F_3[e] with degrees 3 and 4 again
    let ring = presentation(3, &[3, 4], &[], Parity::GradedCommutative);
    assert_eq!(greedy_dims(&catalog::sym(3), 3, 7), ring.dims(7).unwrap());
}
