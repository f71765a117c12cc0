//! Brute-force isomorphism testing with invariant pruning. Only meant for
//! the test scale (orders up to 64).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::group::FiniteGroup;

fn order_statistics(g: &FiniteGroup) -> BTreeMap<usize, usize> {
    let mut stats = BTreeMap::new();
    for x in 0..g.order() {
        *stats.entry(g.element_order(x)).or_insert(0) += 1;
    }
    stats
}

fn minimal_generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut have = vec![0usize];
    // prefer high-order elements so the search tree stays narrow
    let mut candidates: Vec<usize> = (1..g.order()).collect();
    candidates.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    for x in candidates {
        if have.len() == g.order() {
            break;
        }
        if have.binary_search(&x).is_ok() {
            continue;
        }
        gens.push(x);
        have = g.closure(&gens);
    }
    gens
}

/// Decide whether a and b are isomorphic by generator-image search.
pub fn isomorphic(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if a.is_abelian() != b.is_abelian() {
        return false;
    }
    if order_statistics(a) != order_statistics(b) {
        return false;
    }
    if a.center().order() != b.center().order() {
        return false;
    }
    let gens = minimal_generating_sequence(a);
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &mut images)
}

fn search(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        let pairs: Vec<(usize, usize)> =
            gens.iter().copied().zip(images.iter().copied()).collect();
        return match crate::group::GroupHom::from_generator_images(a, b, &pairs) {
            Ok(hom) => hom.is_injective() && hom.is_surjective(),
            Err(_) => false,
        };
    }
    let next = gens[images.len()];
    let target_order = a.element_order(next);
    for y in 0..b.order() {
        if b.element_order(y) != target_order {
            continue;
        }
        images.push(y);
        if search(a, b, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use crate::catalog;

    #[test]
    fn distinguishes_the_order_eight_groups() {
        let groups = [
            catalog::cyclic(8),
            catalog::dihedral(8),
            catalog::quaternion8(),
            catalog::elementary_abelian2(3),
        ];
        for (i, a) in groups.iter().enumerate() {
            for (j, b) in groups.iter().enumerate() {
                assert_eq!(super::isomorphic(a, b), i == j);
            }
        }
    }

    #[test]
    fn identifies_relabeled_copies() {
        let d8 = catalog::dihedral(8);
        let a2 = catalog::a2_family(2, 1).unwrap();
        assert!(super::isomorphic(&d8, &a2));
    }
}
