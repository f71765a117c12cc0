//! Cohomology operations over a built resolution: chain-map lifts, cup
//! products, inflation and restriction along group homomorphisms, and the
//! ladder of subalgebras generated in degree one.

use std::sync::Arc;

use thiserror::Error;

use crate::fp::{FpMatrix, Subspace};
use crate::group::{FiniteGroup, GroupHom};
use crate::parser::{Builtin, GroupSpec, SemidirectForm};
use crate::resolution::{CohClass, FreeModuleMap, Resolution, ResolutionError};

#[derive(Debug, Error)]
pub enum OpError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("classes live on different resolutions or degrees out of range")]
    Mismatch,
    #[error("inflation requires a surjective homomorphism")]
    NotSurjective,
    #[error("restriction requires an injective homomorphism")]
    NotInjective,
    #[error("resolution does not belong to this group")]
    GroupMismatch,
    #[error("ladder does not cover degree {0}")]
    DegreeNotCovered(usize),
    #[error("internal solver failure: {0}")]
    Internal(String),
}

/// A chain-map lift u_0..u_k of a degree-m cocycle: u_j maps P_{m+j} to P_j
/// with ε∘u_0 the cocycle and d_j∘u_j = u_{j-1}∘d_{m+j}.
pub struct ChainMapLift {
    pub class: CohClass,
    pub maps: Vec<FreeModuleMap>,
}

/// Solve the lift degree by degree as GF(p) linear systems in the generator
/// images.
pub fn lift_cocycle(
    res: &Resolution,
    class: &CohClass,
    stages: usize,
) -> Result<ChainMapLift, OpError> {
    let m = class.degree;
    if res.length() < m + stages {
        return Err(OpError::Resolution(ResolutionError::TooShort {
            have: res.length(),
            need: m + stages,
        }));
    }
    if !res.is_cocycle(class)? {
        return Err(OpError::Resolution(ResolutionError::NotACocycle(m)));
    }
    let group = res.group();
    let n = group.order();
    let p = res.p();
    // u_0 sends each generator of P_m to (value)·identity in P_0
    let u0_images: Vec<Vec<u8>> = class
        .vector
        .iter()
        .map(|&v| {
            let mut img = vec![0u8; n];
            img[0] = v;
            img
        })
        .collect();
    let mut maps = vec![FreeModuleMap::new(Arc::clone(group), p, 1, u0_images)];
    for j in 1..=stages {
        let d_top = res.differential(m + j);
        let prev = &maps[j - 1];
        let mut images = Vec::with_capacity(res.rank(m + j));
        for i in 0..res.rank(m + j) {
            let rhs = prev.apply(&d_top.images()[i]);
            let x = res.solver(j).solve(&rhs).ok_or_else(|| {
                OpError::Internal(format!("lift stage {} is inconsistent", j))
            })?;
            images.push(x);
        }
        maps.push(FreeModuleMap::new(Arc::clone(group), p, res.rank(j), images));
    }
    Ok(ChainMapLift { class: class.clone(), maps })
}

/// Check the two lift invariants (used by tests and negative controls).
pub fn verify_lift(res: &Resolution, lift: &ChainMapLift) -> bool {
    let m = lift.class.degree;
    let aug: Vec<u8> = lift.maps[0]
        .images()
        .iter()
        .map(|img| {
            let s: u32 = img.iter().map(|&x| x as u32).sum();
            (s % res.p() as u32) as u8
        })
        .collect();
    if aug != lift.class.vector {
        return false;
    }
    for j in 1..lift.maps.len() {
        let d_top = res.differential(m + j);
        let d_low = res.differential(j);
        for i in 0..res.rank(m + j) {
            let lhs = d_low.apply(&lift.maps[j].images()[i]);
            let rhs = lift.maps[j - 1].apply(&d_top.images()[i]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Cup product via composition with a chain-map lift; bilinear and graded
/// commutative on cohomology.
pub fn cup(res: &Resolution, a: &CohClass, b: &CohClass) -> Result<CohClass, OpError> {
    let lift = lift_cocycle(res, a, b.degree)?;
    cup_with_lift(res, &lift, b)
}

/// Cup against a precomputed lift of the left factor.
pub fn cup_with_lift(
    res: &Resolution,
    lift: &ChainMapLift,
    b: &CohClass,
) -> Result<CohClass, OpError> {
    if b.degree >= lift.maps.len() {
        return Err(OpError::Mismatch);
    }
    let u = &lift.maps[b.degree];
    if b.vector.len() != u.target_rank() {
        return Err(OpError::Mismatch);
    }
    let vector = u.pull_functional(&b.vector);
    let raw = CohClass { degree: lift.class.degree + b.degree, vector, reduced: false };
    Ok(res.canonical_reduce(&raw)?)
}

/// Something a comparison chain map can land in: a complex of free modules
/// with solvable differentials. Implemented by resolutions and by the
/// normalized bar complex.
pub trait LiftTarget {
    fn target_group(&self) -> &Arc<FiniteGroup>;
    fn target_p(&self) -> u8;
    fn target_rank(&self, degree: usize) -> usize;
    fn target_length(&self) -> usize;
    fn solve_differential(&self, degree: usize, rhs: &[u8]) -> Option<Vec<u8>>;
}

impl LiftTarget for Resolution {
    fn target_group(&self) -> &Arc<FiniteGroup> {
        self.group()
    }

    fn target_p(&self) -> u8 {
        self.p()
    }

    fn target_rank(&self, degree: usize) -> usize {
        self.rank(degree)
    }

    fn target_length(&self) -> usize {
        self.length()
    }

    fn solve_differential(&self, degree: usize, rhs: &[u8]) -> Option<Vec<u8>> {
        self.solver(degree).solve(rhs)
    }
}

/// A chain map from a resolution over the source group into a complex over
/// the target group, equivariant along a fixed group homomorphism. Pulling
/// functionals back along it computes inflation and restriction.
pub struct Transport {
    /// maps[j]: P_j(source) -> T_j(target); images live in target modules.
    pub maps: Vec<FreeModuleMap>,
    el_map: Vec<u32>,
}

impl Transport {
    pub fn pull(&self, source_res: &Resolution, class: &CohClass) -> Result<CohClass, OpError> {
        if class.degree >= self.maps.len() {
            return Err(OpError::Mismatch);
        }
        let tau = &self.maps[class.degree];
        if class.vector.len() != tau.target_rank() {
            return Err(OpError::Mismatch);
        }
        let vector = tau.pull_functional(&class.vector);
        let raw = CohClass { degree: class.degree, vector, reduced: false };
        Ok(source_res.canonical_reduce(&raw)?)
    }

    pub fn el_map(&self) -> &[u32] {
        &self.el_map
    }
}

/// Build a comparison chain map lifting the identity of F_p, degree by
/// degree through `depth`.
pub fn build_transport<T: LiftTarget>(
    source: &Resolution,
    target: &T,
    el_map: &[u32],
    depth: usize,
) -> Result<Transport, OpError> {
    if source.length() < depth {
        return Err(OpError::Resolution(ResolutionError::TooShort {
            have: source.length(),
            need: depth,
        }));
    }
    if target.target_length() < depth {
        return Err(OpError::Resolution(ResolutionError::TooShort {
            have: target.target_length(),
            need: depth,
        }));
    }
    let source_order = source.group().order();
    assert_eq!(el_map.len(), source_order, "element map must cover the source group");
    let tg = target.target_group();
    let p = target.target_p();
    // degree 0: the single source generator goes to the identity-supported
    // generator of T_0
    let mut img0 = vec![0u8; target.target_rank(0) * tg.order()];
    img0[0] = 1;
    let mut maps = vec![FreeModuleMap::new(Arc::clone(tg), p, target.target_rank(0), vec![img0])];
    for j in 1..=depth {
        let d_src = source.differential(j);
        let prev = &maps[j - 1];
        let mut images = Vec::with_capacity(source.rank(j));
        for i in 0..source.rank(j) {
            let rhs = prev.apply_along(&d_src.images()[i], el_map, source_order);
            let x = target
                .solve_differential(j, &rhs)
                .ok_or_else(|| OpError::Internal(format!("transport stage {} inconsistent", j)))?;
            images.push(x);
        }
        maps.push(FreeModuleMap::new(Arc::clone(tg), p, target.target_rank(j), images));
    }
    Ok(Transport { maps, el_map: el_map.to_vec() })
}

/// Inflation along a surjection phi: G ↠ Q of a class on Q, computed by a
/// comparison chain map from the G-resolution into the Q-resolution viewed
/// through phi.
pub fn inflation(
    phi: &GroupHom,
    class: &CohClass,
    res_source: &Resolution,
    res_target: &Resolution,
) -> Result<CohClass, OpError> {
    if !phi.is_surjective() {
        return Err(OpError::NotSurjective);
    }
    check_group(phi.source(), res_source)?;
    check_group(phi.target(), res_target)?;
    let transport = build_transport(res_source, res_target, phi.image_map(), class.degree)?;
    // the cocycle condition on the pulled class relies on exactness of the
    // target at the class degree
    res_target.cohomology_dims(class.degree).map_err(OpError::Resolution)?;
    transport.pull(res_source, class)
}

/// Restriction along an inclusion of a subgroup, same machinery with the
/// roles of the resolutions swapped.
pub fn restriction(
    inclusion: &GroupHom,
    class: &CohClass,
    res_sub: &Resolution,
    res_big: &Resolution,
) -> Result<CohClass, OpError> {
    if !inclusion.is_injective() {
        return Err(OpError::NotInjective);
    }
    check_group(inclusion.source(), res_sub)?;
    check_group(inclusion.target(), res_big)?;
    let transport = build_transport(res_sub, res_big, inclusion.image_map(), class.degree)?;
    res_big.cohomology_dims(class.degree).map_err(OpError::Resolution)?;
    transport.pull(res_sub, class)
}

fn check_group(g: &Arc<FiniteGroup>, res: &Resolution) -> Result<(), OpError> {
    if Arc::ptr_eq(g, res.group()) {
        return Ok(());
    }
    if g.order() == res.group().order() && g.mul_table() == res.group().mul_table() {
        return Ok(());
    }
    Err(OpError::GroupMismatch)
}

/// Per-degree bases of the subalgebra generated by degree one, as subspaces
/// of canonical cocycle coordinates.
pub struct DecLadder {
    max_degree: usize,
    /// spaces[d-1] = Dec^d for 1 <= d <= max_degree
    spaces: Vec<Subspace>,
}

impl DecLadder {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn space(&self, degree: usize) -> Option<&Subspace> {
        if degree == 0 || degree > self.max_degree {
            return None;
        }
        Some(&self.spaces[degree - 1])
    }

    /// dim Dec^d for d = 0..=max_degree (degree zero is the scalars).
    pub fn dims(&self) -> Vec<usize> {
        let mut out = vec![1];
        out.extend(self.spaces.iter().map(|s| s.dim()));
        out
    }
}

/// Build Dec^1..Dec^N inductively: Dec^n = H^1 ∪ Dec^{n-1}, with one cached
/// lift per degree-one basis class.
pub fn dec_ladder(res: &Resolution, max_degree: usize) -> Result<DecLadder, OpError> {
    if res.length() < max_degree + 1 {
        return Err(OpError::Resolution(ResolutionError::TooShort {
            have: res.length(),
            need: max_degree + 1,
        }));
    }
    let h1 = res.cocycle_basis(1)?;
    let lifts: Vec<ChainMapLift> = h1
        .iter()
        .map(|c| lift_cocycle(res, c, max_degree.saturating_sub(1)))
        .collect::<Result<_, _>>()?;
    let mut spaces = Vec::with_capacity(max_degree);
    spaces.push(Subspace::from_spanning(
        res.p(),
        res.rank(1),
        &h1.iter().map(|c| c.vector.clone()).collect::<Vec<_>>(),
    ));
    for degree in 2..=max_degree {
        let prev = &spaces[degree - 2];
        let mut products = Vec::new();
        for lift in &lifts {
            for row in prev.basis_rows() {
                let b = CohClass { degree: degree - 1, vector: row, reduced: true };
                products.push(cup_with_lift(res, lift, &b)?.vector);
            }
        }
        spaces.push(Subspace::from_spanning(res.p(), res.rank(degree), &products));
    }
    Ok(DecLadder { max_degree, spaces })
}

/// Membership of the canonical-reduced class in Dec^deg.
pub fn is_fully_decomposable(
    res: &Resolution,
    class: &CohClass,
    ladder: &DecLadder,
) -> Result<bool, OpError> {
    if class.degree == 0 {
        return Ok(true);
    }
    let space = ladder
        .space(class.degree)
        .ok_or(OpError::DegreeNotCovered(class.degree))?;
    let reduced = res.canonical_reduce(class)?;
    Ok(space.member(&reduced.vector))
}

/// Convolution of two dimension sequences, truncated at max_degree.
pub fn kunneth_dims(a: &[usize], b: &[usize], max_degree: usize) -> Vec<usize> {
    (0..=max_degree)
        .map(|n| {
            (0..=n)
                .map(|i| a.get(i).copied().unwrap_or(0) * b.get(n - i).copied().unwrap_or(0))
                .sum()
        })
        .collect()
}

/// Basis of Hom(G, F_p) as value tables on the whole group: the kernel of
/// the Cayley-graph consistency constraints θ(gs) = θ(g) + θ(s).
pub fn hom_to_fp_basis(group: &FiniteGroup, p: u8) -> Vec<Vec<u8>> {
    let n = group.order();
    let gens = group.generators();
    if gens.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::with_capacity(n * gens.len());
    for g in 0..n {
        for &s in gens {
            let mut row = vec![0i64; n];
            row[group.mul(g, s as usize)] += 1;
            row[g] -= 1;
            row[s as usize] -= 1;
            rows.push(row);
        }
    }
    let flat: Vec<i64> = rows.concat();
    let m = FpMatrix::from_entries(p, rows.len(), n, &flat);
    m.kernel_basis().basis_rows()
}

/// The explicit bijection between canonical degree-one classes and
/// homomorphisms G -> F_p. Returns (hom value table, canonical class) pairs
/// aligned with cocycle_basis(1).
pub fn h1_as_homs(res: &Resolution) -> Result<Vec<(Vec<u8>, CohClass)>, OpError> {
    let basis = res.cocycle_basis(1)?;
    let homs = hom_to_fp_basis(res.group(), res.p());
    let classes: Vec<CohClass> =
        homs.iter().map(|theta| hom_to_class(res, theta)).collect::<Result<_, _>>()?;
    // write each canonical class as a combination of the θ-classes
    let mut out = Vec::with_capacity(basis.len());
    let n = res.group().order();
    for class in &basis {
        let cols: Vec<Vec<u8>> = classes.iter().map(|c| c.vector.clone()).collect();
        let m = FpMatrix::from_rows(res.p(), res.rank(1), &cols).transpose();
        let coeffs = m.solve(&class.vector).ok_or_else(|| {
            OpError::Internal("degree-one class is not a combination of characters".into())
        })?;
        let mut theta = vec![0u8; n];
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (t, h) in theta.iter_mut().zip(homs[j].iter()) {
                    *t = ((*t as u16 + c as u16 * *h as u16) % res.p() as u16) as u8;
                }
            }
        }
        out.push((theta, class.clone()));
    }
    Ok(out)
}

/// The degree-one class of a character θ: pair θ with the images of d_1.
pub fn hom_to_class(res: &Resolution, theta: &[u8]) -> Result<CohClass, OpError> {
    let n = res.group().order();
    assert_eq!(theta.len(), n);
    let d1 = res.differential(1);
    let p = res.p() as u32;
    let vector: Vec<u8> = d1
        .images()
        .iter()
        .map(|img| {
            let mut acc = 0u32;
            for g in 0..n {
                acc += img[g] as u32 * theta[g] as u32;
            }
            (acc % p) as u8
        })
        .collect();
    Ok(res.canonical_reduce(&CohClass { degree: 1, vector, reduced: false })?)
}

/// The class dual to one listed generator: the character sending that
/// generator to 1 and the others to 0, when such a character exists.
pub fn dual_of_generator(res: &Resolution, gen_index: usize) -> Option<CohClass> {
    let group = res.group();
    let gens = group.generators();
    if gen_index >= gens.len() {
        return None;
    }
    let homs = hom_to_fp_basis(group, res.p());
    if homs.is_empty() {
        return None;
    }
    // solve for a combination with prescribed values on the generators
    let rows: Vec<Vec<u8>> = homs
        .iter()
        .map(|theta| gens.iter().map(|&g| theta[g as usize]).collect())
        .collect();
    let m = FpMatrix::from_rows(res.p(), gens.len(), &rows).transpose();
    let mut target = vec![0u8; gens.len()];
    target[gen_index] = 1;
    let coeffs = m.solve(&target)?;
    let n = group.order();
    let mut theta = vec![0u8; n];
    for (j, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            for (t, h) in theta.iter_mut().zip(homs[j].iter()) {
                *t = ((*t as u16 + c as u16 * *h as u16) % res.p() as u16) as u8;
            }
        }
    }
    hom_to_class(res, &theta).ok()
}

pub fn dual_of_named_generator(res: &Resolution, name: &str) -> Option<CohClass> {
    let idx = res.group().gen_names().iter().position(|n| n == name)?;
    dual_of_generator(res, idx)
}

/// Basis-independent summary of a cohomology ring: dimensions, decomposable
/// dimensions, and the canonical degree-one identity checks.
#[derive(Debug, Clone)]
pub struct RingFingerprint {
    pub dims: Vec<usize>,
    pub dec_dims: Vec<usize>,
    pub identities: Vec<(String, bool)>,
}

pub fn fingerprint(
    res: &Resolution,
    spec: Option<&GroupSpec>,
    max_degree: usize,
) -> Result<RingFingerprint, OpError> {
    let dims = res.cohomology_dims(max_degree)?;
    let ladder = dec_ladder(res, max_degree)?;
    let dec_dims = ladder.dims();
    let identities = match spec {
        Some(s) => canonical_identities(res, s)?,
        None => Vec::new(),
    };
    Ok(RingFingerprint { dims, dec_dims, identities })
}

/// Named degree-one identity checks for the recognized group families.
pub fn canonical_identities(
    res: &Resolution,
    spec: &GroupSpec,
) -> Result<Vec<(String, bool)>, OpError> {
    let p = res.p();
    let mut out = Vec::new();
    match spec {
        GroupSpec::Cyclic(n) if *n > 1 && n % p as u32 == 0 => {
            if let Some(omega) = dual_of_generator(res, 0) {
                let square = cup(res, &omega, &omega)?;
                if p == 2 && *n == 2 {
                    out.push(("omega^2 != 0 (polynomial generator)".to_string(), !square.is_zero()));
                } else {
                    out.push(("omega^2 = 0".to_string(), square.is_zero()));
                }
            }
        }
        GroupSpec::Builtin(Builtin::Q8) => {
            let z = dual_of_named_generator(res, "g").ok_or(OpError::Mismatch)?;
            let y = dual_of_named_generator(res, "h").ok_or(OpError::Mismatch)?;
            let zz = cup(res, &z, &z)?;
            let zy = cup(res, &z, &y)?;
            let yy = cup(res, &y, &y)?;
            let vanishes = zz
                .vector
                .iter()
                .zip(&zy.vector)
                .zip(&yy.vector)
                .all(|((&a, &b), &c)| (a as u16 + b as u16 + c as u16).is_multiple_of(p as u16));
            out.push(("z^2 + z*y + y^2 = 0".to_string(), vanishes));
        }
        GroupSpec::Semidirect { base_rank: 1, base_order, form: SemidirectForm::A2, .. }
            if p == 2 && *base_order >= 4 =>
        {
            let omega = dual_of_named_generator(res, "y").ok_or(OpError::Mismatch)?;
            let omega_x = dual_of_named_generator(res, "x").ok_or(OpError::Mismatch)?;
            let lhs = cup(res, &omega, &omega)?;
            let rhs = cup(res, &omega_x, &omega)?;
            out.push(("omega^2 = omega_x*omega".to_string(), lhs.vector == rhs.vector));
        }
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::resolution::Strategy;

    fn res_of(g: &Arc<FiniteGroup>, p: u32, len: usize) -> Resolution {
        let strategy = {
            let mut m = g.order();
            while m.is_multiple_of(p as usize) {
                m /= p as usize;
            }
            if m == 1 { Strategy::Minimal } else { Strategy::Greedy }
        };
        Resolution::build(g, p, len, strategy).unwrap()
    }

    #[test]
    fn zero_class_lifts_to_zero_maps() {
        let c2 = catalog::cyclic(2);
        let res = res_of(&c2, 2, 4);
        let zero = CohClass { degree: 1, vector: vec![0], reduced: true };
        let lift = lift_cocycle(&res, &zero, 2).unwrap();
        assert!(verify_lift(&res, &lift));
        assert!(lift.maps[1].images().iter().all(|v| v.iter().all(|&x| x == 0)));
    }

    #[test]
    fn degree_one_lift_on_c2() {
        let c2 = catalog::cyclic(2);
        let res = res_of(&c2, 2, 3);
        let omega = res.cocycle_basis(1).unwrap().remove(0);
        let lift = lift_cocycle(&res, &omega, 1).unwrap();
        assert!(verify_lift(&res, &lift));
    }

    #[test]
    fn q8_degree_one_lifts_satisfy_invariants() {
        let q8 = catalog::quaternion8();
        let res = res_of(&q8, 2, 5);
        for class in res.cocycle_basis(1).unwrap() {
            let lift = lift_cocycle(&res, &class, 3).unwrap();
            assert!(verify_lift(&res, &lift));
        }
    }

    #[test]
    fn cup_on_c2_is_polynomial() {
        let c2 = catalog::cyclic(2);
        let res = res_of(&c2, 2, 3);
        let omega = res.cocycle_basis(1).unwrap().remove(0);
        let sq = cup(&res, &omega, &omega).unwrap();
        assert!(!sq.is_zero());
    }

    #[test]
    fn cup_on_c4_squares_to_zero() {
        let c4 = catalog::cyclic(4);
        let res = res_of(&c4, 2, 3);
        let omega = res.cocycle_basis(1).unwrap().remove(0);
        let sq = cup(&res, &omega, &omega).unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn odd_degree_squares_vanish_mod_3() {
        let c3 = catalog::cyclic(3);
        let res = res_of(&c3, 3, 3);
        let omega = res.cocycle_basis(1).unwrap().remove(0);
        let sq = cup(&res, &omega, &omega).unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn a2_degree_one_identity() {
        let a2 = catalog::a2_family(2, 1).unwrap();
        let res = res_of(&a2, 2, 3);
        let omega = dual_of_named_generator(&res, "y").unwrap();
        let omega_x = dual_of_named_generator(&res, "x").unwrap();
        let lhs = cup(&res, &omega, &omega).unwrap();
        let rhs = cup(&res, &omega_x, &omega).unwrap();
        assert!(!lhs.is_zero());
        assert_eq!(lhs.vector, rhs.vector);
    }

    #[test]
    fn h1_as_homs_dimensions() {
        let v4 = catalog::elementary_abelian2(2);
        let res = res_of(&v4, 2, 2);
        assert_eq!(h1_as_homs(&res).unwrap().len(), 2);

        let a2 = catalog::a2_family(2, 1).unwrap();
        let res = res_of(&a2, 2, 2);
        let pairs = h1_as_homs(&res).unwrap();
        assert_eq!(pairs.len(), 2);
        // the duals of x and y span H^1
        let dx = dual_of_named_generator(&res, "x").unwrap();
        let dy = dual_of_named_generator(&res, "y").unwrap();
        let span = Subspace::from_spanning(2, res.rank(1), &[dx.vector, dy.vector]);
        assert_eq!(span.dim(), 2);

        let c9 = catalog::cyclic(9);
        let res = res_of(&c9, 3, 2);
        assert_eq!(h1_as_homs(&res).unwrap().len(), 1);
    }

    #[test]
    fn h1_homs_are_multiplicative() {
        let q8 = catalog::quaternion8();
        let res = res_of(&q8, 2, 2);
        for (theta, _) in h1_as_homs(&res).unwrap() {
            for a in 0..q8.order() {
                for b in 0..q8.order() {
                    let lhs = theta[q8.mul(a, b)] as u16;
                    let rhs = (theta[a] as u16 + theta[b] as u16) % 2;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn inflation_along_identity_is_identity() {
        let q8 = catalog::quaternion8();
        let res = res_of(&q8, 2, 4);
        let id = GroupHom::identity(&q8);
        for class in res.cocycle_basis(2).unwrap() {
            let inf = inflation(&id, &class, &res, &res).unwrap();
            assert_eq!(inf.vector, class.vector);
        }
    }

    #[test]
    fn cyclic_tower_extension_class_dies() {
        let c4 = catalog::cyclic(4);
        let c2 = catalog::cyclic(2);
        let res4 = res_of(&c4, 2, 3);
        let res2 = res_of(&c2, 2, 3);
        let phi = GroupHom::from_generator_images(&c4, &c2, &[(1, 1)]).unwrap();
        // H^2(C2) is spanned by omega^2; its inflation to C4 vanishes
        let h2 = res2.cocycle_basis(2).unwrap();
        assert_eq!(h2.len(), 1);
        let inf = inflation(&phi, &h2[0], &res4, &res2).unwrap();
        assert!(inf.is_zero());
        // H^1 inflation is injective
        let h1 = res2.cocycle_basis(1).unwrap();
        let inf1 = inflation(&phi, &h1[0], &res4, &res2).unwrap();
        assert!(!inf1.is_zero());
    }

    #[test]
    fn restriction_to_trivial_subgroup_kills_positive_degrees() {
        let q8 = catalog::quaternion8();
        let res = res_of(&q8, 2, 3);
        let trivial = catalog::cyclic(1);
        let res1 = res_of(&trivial, 2, 3);
        let incl = GroupHom::new_unchecked(Arc::clone(&trivial), Arc::clone(&q8), vec![0]);
        for class in res.cocycle_basis(2).unwrap() {
            let r = restriction(&incl, &class, &res1, &res).unwrap();
            assert!(r.is_zero());
        }
    }

    #[test]
    fn restriction_of_character_to_missing_subgroup_vanishes() {
        // res_{<g>} of the dual of h on Q8 is zero
        let q8 = catalog::quaternion8();
        let res = res_of(&q8, 2, 2);
        let g = q8.generator_by_name("g").unwrap();
        let cyc = q8.subgroup(&[g]);
        let (sub, incl) = cyc.as_group("C4<g>").unwrap();
        let res_sub = res_of(&sub, 2, 2);
        let dual_h = dual_of_named_generator(&res, "h").unwrap();
        let r = restriction(&incl, &dual_h, &res_sub, &res).unwrap();
        assert!(r.is_zero());
        let dual_g = dual_of_named_generator(&res, "g").unwrap();
        let r2 = restriction(&incl, &dual_g, &res_sub, &res).unwrap();
        assert!(!r2.is_zero());
    }

    #[test]
    fn dec_ladder_examples() {
        // V4: everything decomposes
        let v4 = catalog::elementary_abelian2(2);
        let res = res_of(&v4, 2, 5);
        let ladder = dec_ladder(&res, 4).unwrap();
        assert_eq!(ladder.dims(), res.cohomology_dims(4).unwrap());

        // Q8: (1,2,2,1,0)
        let q8 = catalog::quaternion8();
        let res = res_of(&q8, 2, 5);
        let ladder = dec_ladder(&res, 4).unwrap();
        assert_eq!(ladder.dims(), vec![1, 2, 2, 1, 0]);
        let h4 = res.cocycle_basis(4).unwrap();
        assert_eq!(h4.len(), 1);
        assert!(!is_fully_decomposable(&res, &h4[0], &ladder).unwrap());

        // C4 at p = 2: Dec^2 = 0 while dim H^2 = 1
        let c4 = catalog::cyclic(4);
        let res = res_of(&c4, 2, 3);
        let ladder = dec_ladder(&res, 2).unwrap();
        assert_eq!(ladder.dims(), vec![1, 1, 0]);
        assert_eq!(res.cohomology_dims(2).unwrap()[2], 1);
    }

    #[test]
    fn kunneth_dims_examples() {
        let q8_dims = [1usize, 2, 2, 1, 1];
        let ones = [1usize, 1, 1, 1, 1];
        assert_eq!(kunneth_dims(&q8_dims, &ones, 4), vec![1, 3, 5, 6, 7]);
        assert_eq!(kunneth_dims(&ones, &[1, 0, 0, 0, 0], 4), vec![1, 1, 1, 1, 1]);
        let c2_dims = [1usize, 1, 1, 1, 1];
        assert_eq!(kunneth_dims(&c2_dims, &c2_dims, 4), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn cup_is_bilinear_and_associative_on_small_two_groups() {
        for g in [
            catalog::quaternion8(),
            catalog::dihedral(8),
            catalog::elementary_abelian2(2),
            catalog::c4_semidirect_c4(),
        ] {
            let res = res_of(&g, 2, 5);
            let h1 = res.cocycle_basis(1).unwrap();
            let h2 = res.cocycle_basis(2).unwrap();
            // associativity on triples of total degree <= 4
            for a in &h1 {
                for b in &h1 {
                    for c in h1.iter().chain(&h2) {
                        let left = cup(&res, &cup(&res, a, b).unwrap(), c).unwrap();
                        let right = cup(&res, a, &cup(&res, b, c).unwrap()).unwrap();
                        assert_eq!(left.vector, right.vector, "{}", g.label());
                    }
                }
            }
            // bilinearity: (a+b) ∪ c = a∪c + b∪c
            if h1.len() >= 2 && !h2.is_empty() {
                let sum = |x: &CohClass, y: &CohClass| {
                    let vector: Vec<u8> =
                        x.vector.iter().zip(&y.vector).map(|(&u, &v)| (u + v) % 2).collect();
                    CohClass { degree: x.degree, vector, reduced: true }
                };
                let ab = sum(&h1[0], &h1[1]);
                let lhs = cup(&res, &ab, &h2[0]).unwrap();
                let rhs = sum(
                    &cup(&res, &h1[0], &h2[0]).unwrap(),
                    &cup(&res, &h1[1], &h2[0]).unwrap(),
                );
                assert_eq!(lhs.vector, rhs.vector, "{}", g.label());
            }
        }
    }

    #[test]
    fn graded_commutativity_mod_3() {
        let b = catalog::b_family(3, 1, 1, 1).unwrap();
        let res = res_of(&b, 3, 5);
        let p = 3u16;
        for m in 1..=2usize {
            for n in 1..=2usize {
                if m + n > 4 {
                    continue;
                }
                for a in res.cocycle_basis(m).unwrap() {
                    for bb in res.cocycle_basis(n).unwrap() {
                        let ab = cup(&res, &a, &bb).unwrap();
                        let ba = cup(&res, &bb, &a).unwrap();
                        let sign_flip = (m * n) % 2 == 1;
                        let expect: Vec<u8> = if sign_flip {
                            ba.vector.iter().map(|&x| ((p - x as u16) % p) as u8).collect()
                        } else {
                            ba.vector.clone()
                        };
                        assert_eq!(ab.vector, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn fingerprint_identities() {
        let q8 = catalog::quaternion8();
        let res = res_of(&q8, 2, 5);
        let spec = crate::parser::parse_group_spec("Q8").unwrap();
        let fp = fingerprint(&res, Some(&spec), 4).unwrap();
        assert_eq!(fp.dims, vec![1, 2, 2, 1, 1]);
        assert_eq!(fp.dec_dims, vec![1, 2, 2, 1, 0]);
        assert!(fp.identities.iter().all(|(_, ok)| *ok));
    }
}

#[cfg(test)]
mod restriction_ring_tests {
    use super::*;
    use crate::catalog;
    use crate::resolution::Strategy;

    #[test]
    fn restriction_is_a_ring_homomorphism_on_q8() {
        let q8 = catalog::quaternion8();
        let res = Resolution::build(&q8, 2, 5, Strategy::Minimal).unwrap();
        let g = q8.generator_by_name("g").unwrap();
        let (sub, incl) = q8.subgroup(&[g]).as_group("C4<g>").unwrap();
        let res_sub = Resolution::build(&sub, 2, 5, Strategy::Minimal).unwrap();
        for m in 1..=2usize {
            for n in 1..=2usize {
                for a in res.cocycle_basis(m).unwrap() {
                    for b in res.cocycle_basis(n).unwrap() {
                        let lhs =
                            restriction(&incl, &cup(&res, &a, &b).unwrap(), &res_sub, &res)
                                .unwrap();
                        let ra = restriction(&incl, &a, &res_sub, &res).unwrap();
                        let rb = restriction(&incl, &b, &res_sub, &res).unwrap();
                        let rhs = cup(&res_sub, &ra, &rb).unwrap();
                        assert_eq!(lhs.vector, rhs.vector, "degrees ({}, {})", m, n);
                    }
                }
            }
        }
    }

    #[test]
    fn q8_degree_four_class_restricts_to_the_fourth_power_on_the_centre() {
        let q8 = catalog::quaternion8();
        let res = Resolution::build(&q8, 2, 5, Strategy::Minimal).unwrap();
        let g = q8.generator_by_name("g").unwrap();
        let centre = q8.subgroup(&[q8.mul(g, g)]);
        let (c2, incl) = centre.as_group("Z(Q8)").unwrap();
        let res_c2 = Resolution::build(&c2, 2, 5, Strategy::Minimal).unwrap();
        let v = res.cocycle_basis(4).unwrap().remove(0);
        let restricted = restriction(&incl, &v, &res_c2, &res).unwrap();
        // omega^4 on the order-two centre
        let omega = res_c2.cocycle_basis(1).unwrap().remove(0);
        let mut power = omega.clone();
        for _ in 0..3 {
            power = cup(&res_c2, &omega, &power).unwrap();
        }
        assert!(!restricted.is_zero());
        assert_eq!(restricted.vector, power.vector);
    }
}
