//! The normalized bar resolution and the Alexander–Whitney cup product on
//! its cochains. This is a test oracle: dimensions grow like (|G|-1)^n, so it
//! only runs on very small groups, but it computes the cup product by the
//! direct cochain formula, independent of chain-map lifting.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::fp::{SolveKit, Subspace};
use crate::group::FiniteGroup;
use crate::ops::{build_transport, LiftTarget, OpError, Transport};
use crate::resolution::{CohClass, FreeModuleMap, Resolution};

#[derive(Debug, Error)]
pub enum BarError {
    #[error("bar complex too large: {0} free generators in top degree")]
    TooLarge(usize),
    #[error("degree {0} not covered by this bar complex")]
    DegreeNotCovered(usize),
}

const MAX_TOP_RANK: usize = 4096;
const MAX_EXPANDED_ENTRIES: u128 = 1 << 27;

/// Normalized bar complex of a group, built through a fixed degree.
/// Free generators of B_n are the nondegenerate tuples [g_1|...|g_n].
pub struct BarComplex {
    group: Arc<FiniteGroup>,
    p: u8,
    max_degree: usize,
    ranks: Vec<usize>,
    /// d_1 .. d_{max_degree+1}; the top one only feeds the cochain
    /// differential and is never solved against.
    diffs: Vec<FreeModuleMap>,
    solvers: Vec<OnceLock<SolveKit>>,
}

fn tuple_index(tuple: &[usize], nm1: usize) -> usize {
    let mut idx = 0usize;
    for &g in tuple.iter().rev() {
        debug_assert!(g >= 1);
        idx = idx * nm1 + (g - 1);
    }
    idx
}

fn index_tuple(mut idx: usize, len: usize, nm1: usize) -> Vec<usize> {
    let mut tuple = Vec::with_capacity(len);
    for _ in 0..len {
        tuple.push(idx % nm1 + 1);
        idx /= nm1;
    }
    tuple
}

impl BarComplex {
    pub fn build(group: &Arc<FiniteGroup>, p: u8, max_degree: usize) -> Result<Self, BarError> {
        let n = group.order();
        let nm1 = n - 1;
        let mut ranks = Vec::with_capacity(max_degree + 2);
        for j in 0..=max_degree + 1 {
            ranks.push(nm1.pow(j as u32));
        }
        if ranks[max_degree + 1] > MAX_TOP_RANK * nm1.max(1) || ranks[max_degree] > MAX_TOP_RANK {
            return Err(BarError::TooLarge(ranks[max_degree + 1]));
        }
        for j in 1..=max_degree {
            let entries = (ranks[j] as u128 * n as u128) * (ranks[j - 1] as u128 * n as u128);
            if entries > MAX_EXPANDED_ENTRIES {
                return Err(BarError::TooLarge(ranks[j]));
            }
        }
        let mut diffs = Vec::with_capacity(max_degree + 1);
        for j in 1..=max_degree + 1 {
            diffs.push(Self::differential_map(group, p, j, &ranks));
        }
        let solvers = (0..max_degree).map(|_| OnceLock::new()).collect();
        Ok(BarComplex { group: Arc::clone(group), p, max_degree, ranks, diffs, solvers })
    }

    /// d[g1|..|gn] = g1·[g2|..|gn] + Σ (-1)^i [..|g_i g_{i+1}|..]
    ///             + (-1)^n [g1|..|g_{n-1}], degenerate terms dropped.
    fn differential_map(
        group: &Arc<FiniteGroup>,
        p: u8,
        degree: usize,
        ranks: &[usize],
    ) -> FreeModuleMap {
        let n = group.order();
        let nm1 = n - 1;
        let target_rank = ranks[degree - 1];
        let pi = p as i64;
        let mut images = Vec::with_capacity(ranks[degree]);
        for idx in 0..ranks[degree] {
            let tuple = index_tuple(idx, degree, nm1);
            let mut img = vec![0i64; target_rank * n];
            // leading face: g1 · [g2|..|gn]
            let head = tuple_index(&tuple[1..], nm1);
            img[head * n + tuple[0]] += 1;
            // middle faces
            for i in 0..degree - 1 {
                let prod = group.mul(tuple[i], tuple[i + 1]);
                if prod != 0 {
                    let mut merged = Vec::with_capacity(degree - 1);
                    merged.extend_from_slice(&tuple[..i]);
                    merged.push(prod);
                    merged.extend_from_slice(&tuple[i + 2..]);
                    let sign = if (i + 1) % 2 == 1 { -1 } else { 1 };
                    img[tuple_index(&merged, nm1) * n] += sign;
                }
            }
            // trailing face: drop the last letter
            let tail = tuple_index(&tuple[..degree - 1], nm1);
            let sign = if degree % 2 == 1 { -1 } else { 1 };
            img[tail * n] += sign;
            let bytes: Vec<u8> = img.iter().map(|&v| v.rem_euclid(pi) as u8).collect();
            images.push(bytes);
        }
        FreeModuleMap::new(Arc::clone(group), p, target_rank, images)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.ranks[degree]
    }

    fn cochain_matrix(&self, k: usize) -> crate::fp::FpMatrix {
        self.diffs[k - 1].augmented()
    }

    /// Canonical basis of H^n computed straight from bar cochains.
    pub fn cocycle_basis(&self, degree: usize) -> Result<Vec<Vec<u8>>, BarError> {
        if degree > self.max_degree {
            return Err(BarError::DegreeNotCovered(degree));
        }
        let cocycles = self.cochain_matrix(degree + 1).kernel_basis();
        let coboundaries = if degree == 0 {
            Subspace::zero(self.p, self.ranks[0])
        } else {
            self.cochain_matrix(degree).image_basis()
        };
        let mut chosen = coboundaries.clone();
        let mut basis = Vec::new();
        for z in cocycles.basis_rows() {
            let reduced = chosen.reduce(&z);
            if reduced.iter().any(|&x| x != 0) {
                chosen.insert(&reduced);
                basis.push(coboundaries.reduce(&z));
            }
        }
        Ok(basis)
    }

    pub fn reduce_mod_coboundaries(&self, degree: usize, v: &[u8]) -> Vec<u8> {
        if degree == 0 {
            return v.to_vec();
        }
        self.cochain_matrix(degree).image_basis().reduce(v)
    }

    pub fn is_cocycle(&self, degree: usize, v: &[u8]) -> bool {
        self.cochain_matrix(degree + 1).mul_vec(v).iter().all(|&x| x == 0)
    }

    /// Alexander–Whitney cup on normalized cochains:
    /// (f ∪ g)(t_1..t_{m+n}) = f(t_1..t_m) · g(t_{m+1}..t_{m+n}).
    pub fn aw_cup(&self, m: usize, f: &[u8], n: usize, g: &[u8]) -> Vec<u8> {
        let nm1 = self.group.order() - 1;
        assert_eq!(f.len(), self.ranks[m]);
        assert_eq!(g.len(), self.ranks[n]);
        let total = m + n;
        let p = self.p as u16;
        let mut out = vec![0u8; self.ranks[total]];
        for (idx, slot) in out.iter_mut().enumerate() {
            let tuple = index_tuple(idx, total, nm1);
            let fi = tuple_index(&tuple[..m], nm1);
            let gi = tuple_index(&tuple[m..], nm1);
            *slot = ((f[fi] as u16 * g[gi] as u16) % p) as u8;
        }
        out
    }
}

impl LiftTarget for BarComplex {
    fn target_group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn target_p(&self) -> u8 {
        self.p
    }

    fn target_rank(&self, degree: usize) -> usize {
        self.ranks[degree]
    }

    fn target_length(&self) -> usize {
        self.max_degree
    }

    fn solve_differential(&self, degree: usize, rhs: &[u8]) -> Option<Vec<u8>> {
        let kit = self.solvers[degree - 1]
            .get_or_init(|| SolveKit::new(&self.diffs[degree - 1].expanded()));
        kit.solve(rhs)
    }
}

/// The independent cup oracle: translate both classes into bar cochains,
/// multiply by the Alexander–Whitney formula, and transport the product back
/// through a comparison chain map.
pub struct BarOracle<'a> {
    res: &'a Resolution,
    bar: BarComplex,
    transport: Transport,
}

impl<'a> BarOracle<'a> {
    pub fn new(res: &'a Resolution, max_degree: usize) -> Result<Self, OpError> {
        let bar = BarComplex::build(res.group(), res.p(), max_degree)
            .map_err(|e| OpError::Internal(e.to_string()))?;
        let identity: Vec<u32> = (0..res.group().order() as u32).collect();
        let transport = build_transport(res, &bar, &identity, max_degree)?;
        Ok(BarOracle { res, bar, transport })
    }

    pub fn bar(&self) -> &BarComplex {
        &self.bar
    }

    /// Transport a bar cochain class into canonical resolution coordinates.
    pub fn to_resolution_class(&self, degree: usize, bar_vec: &[u8]) -> Result<CohClass, OpError> {
        let class = CohClass { degree, vector: bar_vec.to_vec(), reduced: false };
        self.transport.pull(self.res, &class)
    }

    /// A bar cocycle representing the given canonical resolution class.
    pub fn bar_representative(&self, class: &CohClass) -> Result<Vec<u8>, OpError> {
        let degree = class.degree;
        let bar_basis =
            self.bar.cocycle_basis(degree).map_err(|e| OpError::Internal(e.to_string()))?;
        let res_basis = self.res.cocycle_basis(degree)?;
        // matrix of the transported bar basis in resolution canonical coords
        let mut cols = Vec::with_capacity(bar_basis.len());
        for b in &bar_basis {
            let t = self.to_resolution_class(degree, b)?;
            let coords = self
                .res
                .coordinates_in_basis(&t, &res_basis)
                .ok_or_else(|| OpError::Internal("bar transport left the basis span".into()))?;
            cols.push(coords);
        }
        let target = self
            .res
            .coordinates_in_basis(&self.res.canonical_reduce(class)?, &res_basis)
            .ok_or(OpError::Mismatch)?;
        let m = crate::fp::FpMatrix::from_rows(self.res.p(), res_basis.len(), &cols).transpose();
        let coeffs = m
            .solve(&target)
            .ok_or_else(|| OpError::Internal("comparison map is not surjective on H^n".into()))?;
        let mut rep = vec![0u8; self.bar.rank(degree)];
        let p = self.res.p() as u16;
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (r, b) in rep.iter_mut().zip(bar_basis[j].iter()) {
                    *r = ((*r as u16 + c as u16 * *b as u16) % p) as u8;
                }
            }
        }
        Ok(rep)
    }

    /// Cup product of two canonical classes computed on the bar complex.
    pub fn cup(&self, a: &CohClass, b: &CohClass) -> Result<CohClass, OpError> {
        let fa = self.bar_representative(a)?;
        let fb = self.bar_representative(b)?;
        let prod = self.bar.aw_cup(a.degree, &fa, b.degree, &fb);
        self.to_resolution_class(a.degree + b.degree, &prod)
    }
}

/// Oracle cup in bar coordinates for an unattached pair of cochains
/// (unit-class fast path included for the degree-zero case).
pub fn cup_bar_oracle(
    bar: &BarComplex,
    a_degree: usize,
    a: &[u8],
    b_degree: usize,
    b: &[u8],
) -> Vec<u8> {
    bar.aw_cup(a_degree, a, b_degree, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ops::cup;
    use crate::resolution::Strategy;

    fn minimal(g: &Arc<FiniteGroup>, p: u32, len: usize) -> Resolution {
        Resolution::build(g, p, len, Strategy::Minimal).unwrap()
    }

    #[test]
    fn bar_dims_match_resolution_dims() {
        for (g, p) in [(catalog::cyclic(2), 2u32), (catalog::cyclic(4), 2), (catalog::cyclic(3), 3)] {
            let bar = BarComplex::build(&g, p as u8, 3).unwrap();
            let res = minimal(&g, p, 4);
            let dims = res.cohomology_dims(3).unwrap();
            for (n, &dim) in dims.iter().enumerate() {
                assert_eq!(bar.cocycle_basis(n).unwrap().len(), dim, "{} degree {}", g.label(), n);
            }
        }
    }

    #[test]
    fn unit_class_is_neutral_for_aw_cup() {
        let c2 = catalog::cyclic(2);
        let bar = BarComplex::build(&c2, 2, 3).unwrap();
        let unit = vec![1u8]; // degree-zero cochain with value 1
        let f = vec![1u8]; // the nontrivial 1-cochain on the single nonidentity element
        assert_eq!(bar.aw_cup(0, &unit, 1, &f), f);
        assert_eq!(bar.aw_cup(1, &f, 0, &unit), f);
    }

    #[test]
    fn c2_cup_square_is_nonzero_in_bar_coordinates() {
        let c2 = catalog::cyclic(2);
        let bar = BarComplex::build(&c2, 2, 3).unwrap();
        let f = vec![1u8];
        let sq = bar.aw_cup(1, &f, 1, &f);
        assert!(bar.is_cocycle(2, &sq));
        let reduced = bar.reduce_mod_coboundaries(2, &sq);
        assert!(reduced.iter().any(|&x| x != 0));
    }

    #[test]
    fn oracle_agrees_with_chain_map_cup_on_v4() {
        let v4 = catalog::elementary_abelian2(2);
        let res = minimal(&v4, 2, 4);
        let oracle = BarOracle::new(&res, 3).unwrap();
        let h1 = res.cocycle_basis(1).unwrap();
        let mut products = Vec::new();
        for a in &h1 {
            for b in &h1 {
                let main = cup(&res, a, b).unwrap();
                let via_bar = oracle.cup(a, b).unwrap();
                assert_eq!(main.vector, via_bar.vector);
                products.push(main.vector);
            }
        }
        // pairwise degree-one cups span all of H^2 for V4
        let span = Subspace::from_spanning(2, res.rank(2), &products);
        assert_eq!(span.dim(), 3);
    }

    #[test]
    fn oracle_agrees_on_q8_total_degree_three() {
        let q8 = catalog::quaternion8();
        let res = minimal(&q8, 2, 4);
        let oracle = BarOracle::new(&res, 3).unwrap();
        for m in 1..=2usize {
            let n = 3 - m;
            for a in res.cocycle_basis(m).unwrap() {
                for b in res.cocycle_basis(n.max(1)).unwrap() {
                    if a.degree + b.degree > 3 {
                        continue;
                    }
                    let main = cup(&res, &a, &b).unwrap();
                    let via_bar = oracle.cup(&a, &b).unwrap();
                    assert_eq!(main.vector, via_bar.vector);
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_on_c3_mod_3() {
        let c3 = catalog::cyclic(3);
        let res = minimal(&c3, 3, 4);
        let oracle = BarOracle::new(&res, 3).unwrap();
        for m in 1..=2usize {
            for n in 1..=2usize {
                if m + n > 3 {
                    continue;
                }
                for a in res.cocycle_basis(m).unwrap() {
                    for b in res.cocycle_basis(n).unwrap() {
                        let main = cup(&res, &a, &b).unwrap();
                        let via_bar = oracle.cup(&a, &b).unwrap();
                        assert_eq!(main.vector, via_bar.vector, "deg ({}, {})", m, n);
                    }
                }
            }
        }
    }
}
