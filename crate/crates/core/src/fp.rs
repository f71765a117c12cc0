//! Dense exact linear algebra over the prime field GF(p).
//!
//! Rows are bit-packed into machine words when p = 2 and stored as byte
//! arrays otherwise. Every reduction uses the same pivot rule (leftmost
//! column, topmost row), so all derived bases are reproducible bit for bit.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u8, p: u8) -> u8 {
    // p is prime and a != 0, so a^(p-2) works.
    let mut acc = 1u32;
    let mut base = a as u32 % p as u32;
    let mut e = p as u32 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u32;
        }
        base = base * base % p as u32;
        e >>= 1;
    }
    acc as u8
}

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    /// p = 2: each row is `words_per_row` u64 words.
    Bits { words_per_row: usize, words: Vec<u64> },
    /// odd p: row-major residues.
    Bytes(Vec<u8>),
}

/// Dense matrix over GF(p) with entries reduced to [0, p).
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Storage,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows.min(24) {
            let row: Vec<u8> = (0..self.cols.min(64)).map(|c| self.get(r, c)).collect();
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zero(p: u8, rows: usize, cols: usize) -> Self {
        assert!(is_prime(p as u32), "modulus must be prime");
        let data = if p == 2 {
            let wpr = cols.div_ceil(64);
            Storage::Bits { words_per_row: wpr, words: vec![0; wpr * rows] }
        } else {
            Storage::Bytes(vec![0; rows * cols])
        };
        FpMatrix { p, rows, cols, data }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_entries(p: u8, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Self::zero(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = entries[r * cols + c].rem_euclid(p as i64) as u8;
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn from_rows(p: u8, cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut m = Self::zero(p, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.data {
            Storage::Bits { words_per_row, words } => {
                ((words[r * words_per_row + c / 64] >> (c % 64)) & 1) as u8
            }
            Storage::Bytes(b) => b[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(r < self.rows && c < self.cols && v < self.p);
        match &mut self.data {
            Storage::Bits { words_per_row, words } => {
                let w = &mut words[r * *words_per_row + c / 64];
                if v == 0 {
                    *w &= !(1u64 << (c % 64));
                } else {
                    *w |= 1u64 << (c % 64);
                }
            }
            Storage::Bytes(b) => b[r * self.cols + c] = v,
        }
    }

    pub fn row(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn set_row(&mut self, r: usize, vals: &[u8]) {
        assert_eq!(vals.len(), self.cols);
        for (c, &v) in vals.iter().enumerate() {
            self.set(r, c, v % self.p);
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Bits { words, .. } => words.iter().all(|&w| w == 0),
            Storage::Bytes(b) => b.iter().all(|&v| v == 0),
        }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        match &self.data {
            Storage::Bits { words_per_row, words } => {
                words[r * words_per_row..(r + 1) * words_per_row].iter().all(|&w| w == 0)
            }
            Storage::Bytes(b) => b[r * self.cols..(r + 1) * self.cols].iter().all(|&v| v == 0),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.data {
            Storage::Bits { words_per_row, words } => {
                let wpr = *words_per_row;
                for k in 0..wpr {
                    words.swap(a * wpr + k, b * wpr + k);
                }
            }
            Storage::Bytes(bytes) => {
                let n = self.cols;
                for k in 0..n {
                    bytes.swap(a * n + k, b * n + k);
                }
            }
        }
    }

    /// row[dst] -= factor * row[src]  (mod p); for p = 2 this is an XOR.
    fn row_submul(&mut self, dst: usize, src: usize, factor: u8) {
        debug_assert_ne!(dst, src);
        if factor == 0 {
            return;
        }
        match &mut self.data {
            Storage::Bits { words_per_row, words } => {
                let wpr = *words_per_row;
                let (lo, hi) = if dst < src { (dst, src) } else { (src, dst) };
                let (head, tail) = words.split_at_mut(hi * wpr);
                let lo_slice = &head[lo * wpr..lo * wpr + wpr];
                let hi_slice = &mut tail[..wpr];
                if dst > src {
                    for k in 0..wpr {
                        hi_slice[k] ^= lo_slice[k];
                    }
                } else {
                    // dst < src: need mutable lo, immutable hi
                    let (head2, tail2) = words.split_at_mut(src * wpr);
                    let d = &mut head2[dst * wpr..dst * wpr + wpr];
                    let s = &tail2[..wpr];
                    for k in 0..wpr {
                        d[k] ^= s[k];
                    }
                }
            }
            Storage::Bytes(bytes) => {
                let p = self.p as u16;
                let n = self.cols;
                let f = factor as u16;
                // subtract f*src from dst, elementwise
                let (d_start, s_start) = (dst * n, src * n);
                for k in 0..n {
                    let s = bytes[s_start + k] as u16;
                    if s == 0 {
                        continue;
                    }
                    let d = bytes[d_start + k] as u16;
                    bytes[d_start + k] = ((d + (p - f % p) * s % p) % p) as u8;
                }
            }
        }
    }

    fn row_scale(&mut self, r: usize, factor: u8) {
        if factor == 1 {
            return;
        }
        match &mut self.data {
            Storage::Bits { .. } => unreachable!("GF(2) scaling is trivial"),
            Storage::Bytes(bytes) => {
                let p = self.p as u16;
                let n = self.cols;
                for k in 0..n {
                    bytes[r * n + k] = ((bytes[r * n + k] as u16 * factor as u16) % p) as u8;
                }
            }
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    t.set(c, r, v);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.p, other.p);
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        // Row-oriented: out[i] += a[i][k] * other[k]
        match (&mut out.data, &other.data) {
            (
                Storage::Bits { words_per_row: wo, words: ow },
                Storage::Bits { words_per_row: wb, words: bw },
            ) => {
                debug_assert_eq!(wo, wb);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        if self.get(i, k) != 0 {
                            for w in 0..*wo {
                                ow[i * *wo + w] ^= bw[k * *wb + w];
                            }
                        }
                    }
                }
            }
            (Storage::Bytes(ob), Storage::Bytes(bb)) => {
                let p = self.p as u32;
                let n = other.cols;
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k) as u32;
                        if a == 0 {
                            continue;
                        }
                        for c in 0..n {
                            let v = bb[k * n + c] as u32;
                            if v != 0 {
                                let cur = ob[i * n + c] as u32;
                                ob[i * n + c] = ((cur + a * v) % p) as u8;
                            }
                        }
                    }
                }
            }
            _ => unreachable!("mixed moduli"),
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = vec![0u8; self.rows];
        match &self.data {
            Storage::Bits { words_per_row, words } => {
                let wpr = *words_per_row;
                let mut packed = vec![0u64; wpr];
                for (c, &x) in v.iter().enumerate() {
                    if x & 1 == 1 {
                        packed[c / 64] |= 1u64 << (c % 64);
                    }
                }
                for (r, o) in out.iter_mut().enumerate() {
                    let mut acc = 0u32;
                    for k in 0..wpr {
                        acc ^= (words[r * wpr + k] & packed[k]).count_ones();
                    }
                    *o = (acc & 1) as u8;
                }
            }
            Storage::Bytes(bytes) => {
                let p = self.p as u64;
                for (r, o) in out.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for (c, &x) in v.iter().enumerate() {
                        acc += bytes[r * self.cols + c] as u64 * x as u64;
                    }
                    *o = (acc % p) as u8;
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; mirrors every row operation onto
    /// `companion` when given. Returns the pivot columns in increasing order.
    fn rref_in_place(&mut self, mut companion: Option<&mut FpMatrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            // leftmost column, topmost row
            let mut pivot_row = None;
            for r in rank..self.rows {
                if self.get(r, col) != 0 {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            self.swap_rows(rank, pr);
            if let Some(comp) = companion.as_deref_mut() {
                comp.swap_rows(rank, pr);
            }
            let pv = self.get(rank, col);
            if pv != 1 {
                let inv = inv_mod(pv, self.p);
                self.row_scale(rank, inv);
                if let Some(comp) = companion.as_deref_mut() {
                    comp.row_scale(rank, inv);
                }
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let f = self.get(r, col);
                if f != 0 {
                    self.row_submul(r, rank, f);
                    if let Some(comp) = companion.as_deref_mut() {
                        comp.row_submul(r, rank, f);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        pivots
    }

    /// Reduced row echelon form with deterministic pivoting.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(None);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space {x : self * x = 0} as a canonical subspace of GF(p)^cols.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Column space of the matrix, as a subspace of GF(p)^rows.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_spanning(self.p, self.rows, &self.transpose().all_rows())
    }

    fn all_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Any solution of self * x = rhs, or None. Free variables are set to 0.
    pub fn solve(&self, rhs: &[u8]) -> Option<Vec<u8>> {
        SolveKit::new(self).solve(rhs)
    }
}

fn kernel_from_rref(r: &FpMatrix, pivots: &[usize]) -> Subspace {
    let p = r.p();
    let cols = r.cols();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u8; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            let coeff = r.get(row, free);
            if coeff != 0 {
                // x[pc] = -coeff
                v[pc] = (p - coeff) % p;
            }
        }
        basis.push(v);
    }
    Subspace::from_spanning(p, cols, &basis)
}

/// A subspace of GF(p)^n held as a reduced-row-echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    p: u8,
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of GF({})^{})", self.dim(), self.p, self.ambient)
    }
}

impl Subspace {
    pub fn zero(p: u8, ambient: usize) -> Self {
        Subspace { p, ambient, basis: FpMatrix::zero(p, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(p: u8, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: FpMatrix::identity(p, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonicalize an arbitrary spanning set.
    pub fn from_spanning(p: u8, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        let stacked = FpMatrix::from_rows(p, ambient, vectors);
        let (r, pivots) = stacked.rref();
        let mut basis = FpMatrix::zero(p, pivots.len(), ambient);
        for row in 0..pivots.len() {
            for c in 0..ambient {
                let v = r.get(row, c);
                if v != 0 {
                    basis.set(row, c, v);
                }
            }
        }
        Subspace { p, ambient, basis, pivots }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis_rows(&self) -> Vec<Vec<u8>> {
        self.basis.all_rows()
    }

    /// Canonical representative of v modulo this subspace: eliminate every
    /// pivot coordinate of the basis.
    #[allow(clippy::needless_range_loop)]
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.ambient, "reduce: ambient mismatch");
        let p = self.p as u16;
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let coeff = out[pc] as u16;
            if coeff == 0 {
                continue;
            }
            for c in 0..self.ambient {
                let b = self.basis.get(row, c) as u16;
                if b != 0 {
                    out[c] = ((out[c] as u16 + (p - coeff) * b % p) % p) as u8;
                }
            }
        }
        out
    }

    pub fn member(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "sum: ambient mismatch");
        assert_eq!(self.p, other.p);
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::from_spanning(self.p, self.ambient, &rows)
    }

    /// Returns true when every basis vector of `other` lies in self.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|v| self.member(v))
    }

    /// Extend self by one vector in place; returns false if v was already a member.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        if self.member(v) {
            return false;
        }
        let mut rows = self.basis_rows();
        rows.push(v.to_vec());
        *self = Subspace::from_spanning(self.p, self.ambient, &rows);
        true
    }
}

/// A cached elimination of a matrix, reusable across many right-hand sides.
/// Holds `rref = transform * a`, so solving reduces to one matrix-vector
/// product and a consistency scan.
pub struct SolveKit {
    rref: FpMatrix,
    transform: FpMatrix,
    pivots: Vec<usize>,
}

impl SolveKit {
    pub fn new(a: &FpMatrix) -> Self {
        let mut r = a.clone();
        let mut t = FpMatrix::identity(a.p(), a.rows());
        let pivots = r.rref_in_place(Some(&mut t));
        SolveKit { rref: r, transform: t, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Any x with a*x = rhs (free variables zero), or None if inconsistent.
    pub fn solve(&self, rhs: &[u8]) -> Option<Vec<u8>> {
        let t = self.transform.mul_vec(rhs);
        // rows past the rank must have vanishing transformed rhs
        if t[self.rank()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0u8; self.rref.cols()];
        for (row, &pc) in self.pivots.iter().enumerate() {
            x[pc] = t[row];
        }
        Some(x)
    }

    /// Kernel of the eliminated matrix (canonical basis).
    pub fn kernel(&self) -> Subspace {
        kernel_from_rref(&self.rref, &self.pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_is_fixed() {
        let m = FpMatrix::identity(2, 4);
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = FpMatrix::zero(3, 3, 5);
        let (r, pivots) = m.rref();
        assert!(r.is_zero());
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_gf2_rank_one() {
        // over GF(2), [[1,1],[1,1]] reduces to [[1,1]] with pivot column 0
        let m = FpMatrix::from_entries(2, 2, 2, &[1, 1, 1, 1]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0]);
        assert_eq!(r.row(0), vec![1, 1]);
        assert!(r.row_is_zero(1));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let m = FpMatrix::identity(5, 3);
        assert_eq!(m.kernel_basis().dim(), 0);
    }

    #[test]
    fn kernel_gf3_single_row() {
        // kernel of [1 2] over GF(3) is spanned by (1,1): 1 + 2*1 = 0 mod 3
        let m = FpMatrix::from_entries(3, 1, 2, &[1, 2]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_rows()[0], vec![1, 1]);
    }

    #[test]
    fn solve_zero_rhs_accepts_zero() {
        let m = FpMatrix::from_entries(2, 2, 3, &[1, 0, 1, 0, 1, 1]);
        let x = m.solve(&[0, 0]).unwrap();
        assert_eq!(x, vec![0, 0, 0]);
    }

    #[test]
    fn solve_finds_witness_and_detects_inconsistency() {
        let m = FpMatrix::from_entries(3, 2, 2, &[1, 1, 2, 2]);
        let x = m.solve(&[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);
        assert!(m.solve(&[1, 0]).is_none());
    }

    #[test]
    fn subspace_reduce_is_canonical() {
        let s = Subspace::from_spanning(2, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(s.dim(), 2);
        assert!(s.member(&[1, 0, 1]));
        let r = s.reduce(&[1, 0, 0]);
        assert_eq!(s.reduce(&r), r);
        assert!(!s.member(&[1, 0, 0]));
    }

    #[test]
    fn subspace_sum() {
        let a = Subspace::from_spanning(2, 3, &[vec![1, 0, 0]]);
        let b = Subspace::from_spanning(2, 3, &[vec![0, 1, 0]]);
        assert_eq!(a.sum(&b).dim(), 2);
    }

    #[test]
    fn mul_matches_mul_vec() {
        let a = FpMatrix::from_entries(3, 2, 3, &[1, 2, 0, 2, 1, 1]);
        let b = FpMatrix::from_entries(3, 3, 2, &[1, 0, 2, 1, 0, 2]);
        let c = a.mul(&b);
        for col in 0..2 {
            let v: Vec<u8> = (0..3).map(|r| b.get(r, col)).collect();
            let av = a.mul_vec(&v);
            for (row, &expect) in av.iter().enumerate() {
                assert_eq!(c.get(row, col), expect);
            }
        }
    }
}
