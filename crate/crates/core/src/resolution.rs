//! Free resolutions of the trivial module over the mod-p group algebra.
//!
//! A free module of rank r over F_p[G] is coordinatized by vectors of length
//! r·|G| (index (i, g) = i·|G| + g), with the left translation action
//! permuting the group coordinate of each block. A resolution stores only the
//! generator images of each differential; full matrices are expanded inside
//! kernel and solve computations.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::fp::{FpMatrix, SolveKit, Subspace};
use crate::group::FiniteGroup;

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("minimal strategy requires a p-group; |G| = {order} is not a power of {p}")]
    MinimalRequiresPGroup { p: u32, order: usize },
    #[error("memory budget exceeded: differential of {entries} entries at degree {degree}")]
    BudgetExceeded { degree: usize, entries: u128 },
    #[error("resolution of length {have} is too short; need at least {need}")]
    TooShort { have: usize, need: usize },
    #[error("vector of length {got} is not a degree-{degree} cochain (expected {want})")]
    BadCochain { degree: usize, got: usize, want: usize },
    #[error("not a cocycle in degree {0}")]
    NotACocycle(usize),
}

/// Kernel-generator selection strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Generators chosen modulo augmentation-ideal multiples; ranks equal
    /// cohomology dimensions. Valid exactly for p-groups.
    Minimal,
    /// Generators chosen by greedy submodule-closure reduction; valid for
    /// any group.
    Greedy,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Minimal => "minimal",
            Strategy::Greedy => "greedy",
        }
    }
}

/// Left translation by g on a rank-r module vector.
pub fn act(group: &FiniteGroup, g: usize, v: &[u8], rank: usize) -> Vec<u8> {
    let n = group.order();
    debug_assert_eq!(v.len(), rank * n);
    let mut out = vec![0u8; rank * n];
    for i in 0..rank {
        let base = i * n;
        for b in 0..n {
            let c = v[base + b];
            if c != 0 {
                out[base + group.mul(g, b)] = c;
            }
        }
    }
    out
}

/// An equivariant map between free modules, stored by generator images.
/// `group` is the group of the target module; for resolution differentials
/// source and target modules live over the same group.
#[derive(Clone)]
pub struct FreeModuleMap {
    group: Arc<FiniteGroup>,
    p: u8,
    source_rank: usize,
    target_rank: usize,
    images: Vec<Vec<u8>>,
}

impl FreeModuleMap {
    pub fn new(
        group: Arc<FiniteGroup>,
        p: u8,
        target_rank: usize,
        images: Vec<Vec<u8>>,
    ) -> Self {
        let n = group.order();
        for im in &images {
            assert_eq!(im.len(), target_rank * n, "image has wrong length");
        }
        FreeModuleMap { group, p, source_rank: images.len(), target_rank, images }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Vec<u8>] {
        &self.images
    }

    /// Apply to a vector over the same group.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        let n = self.group.order();
        debug_assert_eq!(v.len(), self.source_rank * n);
        let mut out = vec![0u8; self.target_rank * n];
        let p = self.p as u16;
        for i in 0..self.source_rank {
            for a in 0..n {
                let c = v[i * n + a];
                if c != 0 {
                    let moved = act(&self.group, a, &self.images[i], self.target_rank);
                    for (o, m) in out.iter_mut().zip(moved.iter()) {
                        *o = ((*o as u16 + c as u16 * *m as u16) % p) as u8;
                    }
                }
            }
        }
        out
    }

    /// Apply to a vector over a *different* source group, translating group
    /// coordinates through el_map (a homomorphism source -> self.group).
    pub fn apply_along(&self, v: &[u8], el_map: &[u32], source_order: usize) -> Vec<u8> {
        let n = self.group.order();
        debug_assert_eq!(v.len(), self.source_rank * source_order);
        let mut out = vec![0u8; self.target_rank * n];
        let p = self.p as u16;
        for i in 0..self.source_rank {
            for a in 0..source_order {
                let c = v[i * source_order + a];
                if c != 0 {
                    let moved =
                        act(&self.group, el_map[a] as usize, &self.images[i], self.target_rank);
                    for (o, m) in out.iter_mut().zip(moved.iter()) {
                        *o = ((*o as u16 + c as u16 * *m as u16) % p) as u8;
                    }
                }
            }
        }
        out
    }

    /// Full matrix over F_p, of shape (target_rank·|G|) × (source_rank·|G|).
    pub fn expanded(&self) -> FpMatrix {
        let n = self.group.order();
        let rows = self.target_rank * n;
        let cols = self.source_rank * n;
        let mut m = FpMatrix::zero(self.p, rows, cols);
        for i in 0..self.source_rank {
            for a in 0..n {
                let col = i * n + a;
                let image = act(&self.group, a, &self.images[i], self.target_rank);
                for (r, &val) in image.iter().enumerate() {
                    if val != 0 {
                        m.set(r, col, val);
                    }
                }
            }
        }
        m
    }

    /// Entrywise augmentation: A[i][j] = ε of the (i, j) group-algebra entry.
    /// This is the matrix of the induced map on equivariant functionals.
    pub fn augmented(&self) -> FpMatrix {
        let n = self.group.order();
        let mut m = FpMatrix::zero(self.p, self.source_rank, self.target_rank);
        for i in 0..self.source_rank {
            for j in 0..self.target_rank {
                let mut sum = 0u32;
                for g in 0..n {
                    sum += self.images[i][j * n + g] as u32;
                }
                m.set(i, j, (sum % self.p as u32) as u8);
            }
        }
        m
    }

    /// Pull an equivariant functional (values on target generators) back to
    /// a functional on source generators.
    pub fn pull_functional(&self, f: &[u8]) -> Vec<u8> {
        self.augmented().mul_vec(f)
    }
}

/// A degree-n cohomology class in canonical cocycle coordinates: a functional
/// on the free generators of P_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    pub degree: usize,
    pub vector: Vec<u8>,
    pub reduced: bool,
}

impl CohClass {
    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|&x| x == 0)
    }
}

/// Ranks and differentials of a free resolution of the trivial module.
pub struct Resolution {
    group: Arc<FiniteGroup>,
    p: u8,
    strategy: Strategy,
    ranks: Vec<usize>,
    diffs: Vec<FreeModuleMap>,
    solvers: Vec<OnceLock<SolveKit>>,
}

const ENTRY_BUDGET: u128 = 1 << 27;

impl Resolution {
    /// Build a length-N resolution. Minimal strategy is rejected outside
    /// p-groups; greedy works for every group.
    pub fn build(
        group: &Arc<FiniteGroup>,
        p: u32,
        length: usize,
        strategy: Strategy,
    ) -> Result<Resolution, ResolutionError> {
        if !crate::fp::is_prime(p) {
            return Err(ResolutionError::NotPrime(p));
        }
        assert!(length >= 1, "resolution length must be at least 1");
        if strategy == Strategy::Minimal {
            let mut m = group.order();
            while m.is_multiple_of(p as usize) {
                m /= p as usize;
            }
            if m != 1 {
                return Err(ResolutionError::MinimalRequiresPGroup { p, order: group.order() });
            }
        }
        let p8 = p as u8;
        let n = group.order();
        let mut res = Resolution {
            group: Arc::clone(group),
            p: p8,
            strategy,
            ranks: vec![1],
            diffs: Vec::new(),
            solvers: Vec::new(),
        };
        // kernel of the augmentation: row of ones
        let eps = FpMatrix::from_rows(p8, n, &[vec![1u8; n]]);
        let mut kernel = SolveKit::new(&eps).kernel();
        for degree in 1..=length {
            let gens = res.select_generators(&kernel);
            let prev_rank = res.ranks[degree - 1];
            let map = FreeModuleMap::new(Arc::clone(group), p8, prev_rank, gens);
            let entries = (map.source_rank() as u128 * n as u128)
                * (map.target_rank() as u128 * n as u128);
            if entries > ENTRY_BUDGET {
                return Err(ResolutionError::BudgetExceeded { degree, entries });
            }
            let kit = SolveKit::new(&map.expanded());
            kernel = kit.kernel();
            res.ranks.push(map.source_rank());
            res.diffs.push(map);
            let lock = OnceLock::new();
            lock.set(kit).ok().expect("fresh lock");
            res.solvers.push(lock);
        }
        Ok(res)
    }

    /// Reassemble a resolution from stored differentials (cache path).
    pub(crate) fn from_parts(
        group: Arc<FiniteGroup>,
        p: u8,
        strategy: Strategy,
        ranks: Vec<usize>,
        diffs: Vec<FreeModuleMap>,
    ) -> Resolution {
        let solvers = (0..diffs.len()).map(|_| OnceLock::new()).collect();
        Resolution { group, p, strategy, ranks, diffs, solvers }
    }

    fn select_generators(&self, kernel: &Subspace) -> Vec<Vec<u8>> {
        let basis = kernel.basis_rows();
        let rank = kernel.ambient() / self.group.order();
        match self.strategy {
            Strategy::Minimal => {
                // span of (s - 1)·k over group generators s and kernel basis k
                let mut radical_rows = Vec::new();
                for k in &basis {
                    for &s in self.group.generators() {
                        let moved = act(&self.group, s as usize, k, rank);
                        let diff: Vec<u8> = moved
                            .iter()
                            .zip(k.iter())
                            .map(|(&m, &v)| ((m as u16 + (self.p - v % self.p) as u16) % self.p as u16) as u8)
                            .collect();
                        radical_rows.push(diff);
                    }
                }
                let mut span =
                    Subspace::from_spanning(self.p, kernel.ambient(), &radical_rows);
                let mut gens = Vec::new();
                for k in &basis {
                    let reduced = span.reduce(k);
                    if reduced.iter().any(|&x| x != 0) {
                        span.insert(&reduced);
                        gens.push(reduced);
                    }
                }
                gens
            }
            Strategy::Greedy => {
                let mut span = Subspace::zero(self.p, kernel.ambient());
                let mut gens: Vec<Vec<u8>> = Vec::new();
                for k in &basis {
                    if span.member(k) {
                        continue;
                    }
                    gens.push(k.clone());
                    let mut rows = span.basis_rows();
                    for g in 0..self.group.order() {
                        rows.push(act(&self.group, g, k, rank));
                    }
                    span = Subspace::from_spanning(self.p, kernel.ambient(), &rows);
                }
                gens
            }
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Number of differentials d_1..d_N.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.ranks[degree]
    }

    /// d_j for 1 <= j <= length.
    pub fn differential(&self, j: usize) -> &FreeModuleMap {
        &self.diffs[j - 1]
    }

    /// Cached elimination of the expanded d_j, for solving d_j x = rhs.
    pub fn solver(&self, j: usize) -> &SolveKit {
        self.solvers[j - 1].get_or_init(|| SolveKit::new(&self.diffs[j - 1].expanded()))
    }

    fn require_length(&self, need: usize) -> Result<(), ResolutionError> {
        if self.length() < need {
            return Err(ResolutionError::TooShort { have: self.length(), need });
        }
        Ok(())
    }

    /// The cochain differential C^{k-1} -> C^k on functionals, i.e. the
    /// entrywise augmentation of d_k.
    pub fn cochain_matrix(&self, k: usize) -> FpMatrix {
        self.differential(k).augmented()
    }

    /// dim H^k for 0 <= k <= max_degree.
    pub fn cohomology_dims(&self, max_degree: usize) -> Result<Vec<usize>, ResolutionError> {
        self.require_length(max_degree + 1)?;
        let mut dims = Vec::with_capacity(max_degree + 1);
        let mut prev_image_rank = 0usize;
        for k in 0..=max_degree {
            let delta = self.cochain_matrix(k + 1);
            let cocycles = self.ranks[k] - delta.rank();
            dims.push(cocycles - prev_image_rank);
            prev_image_rank = delta.rank();
        }
        Ok(dims)
    }

    /// Coboundary subspace inside C^k.
    pub fn coboundaries(&self, k: usize) -> Result<Subspace, ResolutionError> {
        if k == 0 {
            return Ok(Subspace::zero(self.p, self.ranks[0]));
        }
        self.require_length(k)?;
        Ok(self.cochain_matrix(k).image_basis())
    }

    /// Cocycle subspace inside C^k.
    pub fn cocycles(&self, k: usize) -> Result<Subspace, ResolutionError> {
        self.require_length(k + 1)?;
        Ok(self.cochain_matrix(k + 1).kernel_basis())
    }

    pub fn is_cocycle(&self, class: &CohClass) -> Result<bool, ResolutionError> {
        let k = class.degree;
        self.require_length(k + 1)?;
        if class.vector.len() != self.ranks[k] {
            return Err(ResolutionError::BadCochain {
                degree: k,
                got: class.vector.len(),
                want: self.ranks[k],
            });
        }
        Ok(self
            .cochain_matrix(k + 1)
            .mul_vec(&class.vector)
            .iter()
            .all(|&x| x == 0))
    }

    /// Reduce a cocycle to its canonical coset representative modulo
    /// coboundaries.
    pub fn canonical_reduce(&self, class: &CohClass) -> Result<CohClass, ResolutionError> {
        if !self.is_cocycle(class)? {
            return Err(ResolutionError::NotACocycle(class.degree));
        }
        let b = self.coboundaries(class.degree)?;
        Ok(CohClass { degree: class.degree, vector: b.reduce(&class.vector), reduced: true })
    }

    /// Canonical ordered basis of H^k: rref-ordered kernel vectors reduced
    /// against the fixed coboundary basis.
    pub fn cocycle_basis(&self, k: usize) -> Result<Vec<CohClass>, ResolutionError> {
        let cocycles = self.cocycles(k)?;
        let coboundaries = self.coboundaries(k)?;
        let mut chosen = coboundaries.clone();
        let mut basis = Vec::new();
        for z in cocycles.basis_rows() {
            let reduced = chosen.reduce(&z);
            if reduced.iter().any(|&x| x != 0) {
                chosen.insert(&reduced);
                // canonical representative is the reduction against
                // coboundaries alone
                let vector = coboundaries.reduce(&z);
                basis.push(CohClass { degree: k, vector, reduced: true });
            }
        }
        Ok(basis)
    }

    /// Express a reduced class in coordinates of the canonical basis.
    pub fn coordinates_in_basis(
        &self,
        class: &CohClass,
        basis: &[CohClass],
    ) -> Option<Vec<u8>> {
        if basis.is_empty() {
            return if class.vector.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
        }
        let cols: Vec<Vec<u8>> = basis.iter().map(|b| b.vector.clone()).collect();
        let m = FpMatrix::from_rows(self.p, class.vector.len(), &cols).transpose();
        m.solve(&class.vector)
    }

    /// Recheck every structural invariant, reporting per-degree bookkeeping.
    pub fn verify_exactness(&self) -> ExactnessReport {
        let n = self.group.order();
        let mut degrees = Vec::new();
        // ε ∘ d_1 = 0
        let aug_d1_zero = self.diffs.first().is_none_or(|d1| d1.augmented().is_zero());
        let mut kernel_dims = Vec::with_capacity(self.length() + 1);
        kernel_dims.push(n - 1); // kernel of the augmentation
        for j in 1..=self.length() {
            kernel_dims.push(self.solver(j).kernel().dim());
        }
        let is_p_group = {
            let mut m = self.group.order();
            while m.is_multiple_of(self.p as usize) {
                m /= self.p as usize;
            }
            m == 1
        };
        for j in 1..=self.length() {
            let d = self.differential(j);
            // d_{j-1} ∘ d_j = 0 (with ε playing d_0)
            let dd_zero = if j == 1 {
                d.augmented().is_zero()
            } else {
                let prev = self.differential(j - 1);
                d.images().iter().all(|im| prev.apply(im).iter().all(|&x| x == 0))
            };
            let image_dim = self.ranks[j] * n - kernel_dims[j];
            // exact at degree j-1: im d_j = ker d_{j-1}
            let exact = image_dim == kernel_dims[j - 1];
            let minimal_entries = if self.strategy == Strategy::Minimal && is_p_group {
                d.augmented().is_zero()
            } else {
                true
            };
            degrees.push(DegreeReport {
                degree: j,
                dd_zero,
                exact,
                kernel_dim: kernel_dims[j],
                image_dim,
                minimal_entries,
            });
        }
        let pass = aug_d1_zero
            && self.ranks[0] == 1
            && degrees.iter().all(|d| d.dd_zero && d.exact && d.minimal_entries);
        ExactnessReport { ranks: self.ranks.clone(), aug_d1_zero, degrees, pass }
    }
}

#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub degree: usize,
    pub dd_zero: bool,
    pub exact: bool,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub minimal_entries: bool,
}

#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub ranks: Vec<usize>,
    pub aug_d1_zero: bool,
    pub degrees: Vec<DegreeReport>,
    pub pass: bool,
}
