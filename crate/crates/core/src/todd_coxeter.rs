//! HLT-style Todd–Coxeter coset enumeration over the trivial subgroup,
//! producing the full multiplication table of a finitely presented group.

use std::collections::VecDeque;

use thiserror::Error;

use crate::group::FiniteGroup;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("coset bound {0} exceeded; the group may be infinite or the bound too small")]
    BoundExceeded(usize),
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("relator mentions generator index {0} but only {1} generators are declared")]
    BadRelator(usize, usize),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

/// A relator as a word in generator letters; (index, exponent).
pub type Word = Vec<(usize, i64)>;

const UNDEF: usize = usize::MAX;

struct Tables {
    ncols: usize,
    /// row per coset, column per generator letter (2i = gen, 2i+1 = inverse)
    table: Vec<Vec<usize>>,
    /// union-find over cosets
    parent: Vec<usize>,
    queue: VecDeque<usize>,
    live: usize,
    bound: usize,
    /// set whenever a definition, deduction, or merge happens
    dirty: bool,
}

impl Tables {
    fn new(ngens: usize, bound: usize) -> Self {
        Tables {
            ncols: 2 * ngens,
            table: vec![vec![UNDEF; 2 * ngens]],
            parent: vec![0],
            queue: VecDeque::new(),
            live: 1,
            bound,
            dirty: false,
        }
    }

    fn rep(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            let up = self.parent[self.parent[a]];
            self.parent[a] = up;
            a = up;
        }
        a
    }

    fn define(&mut self, alpha: usize, col: usize) -> Result<usize, EnumerationError> {
        if self.table.len() >= self.bound {
            return Err(EnumerationError::BoundExceeded(self.bound));
        }
        let beta = self.table.len();
        self.table.push(vec![UNDEF; self.ncols]);
        self.parent.push(beta);
        self.live += 1;
        self.table[alpha][col] = beta;
        self.table[beta][inv_col(col)] = alpha;
        self.dirty = true;
        Ok(beta)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        self.live -= 1;
        self.dirty = true;
        self.queue.push_back(drop);
    }

    /// Process queued coincidences, splicing the dead coset's row into the
    /// representative's row and cascading any new collisions.
    fn process_coincidences(&mut self) {
        while let Some(dead) = self.queue.pop_front() {
            for col in 0..self.ncols {
                let delta = self.table[dead][col];
                if delta == UNDEF {
                    continue;
                }
                self.table[dead][col] = UNDEF;
                // remove the backward edge if it still points at the dead coset
                if self.table[delta][inv_col(col)] == dead {
                    self.table[delta][inv_col(col)] = UNDEF;
                }
                let mu = self.rep(dead);
                let nu = self.rep(delta);
                if self.table[mu][col] != UNDEF {
                    self.merge(self.table[mu][col], nu);
                } else if self.table[nu][inv_col(col)] != UNDEF {
                    self.merge(self.table[nu][inv_col(col)], mu);
                } else {
                    self.table[mu][col] = nu;
                    self.table[nu][inv_col(col)] = mu;
                }
            }
        }
    }

    fn is_live(&mut self, a: usize) -> bool {
        self.rep(a) == a
    }

    /// Trace a relator from alpha, defining cosets to fill gaps (HLT).
    fn scan_and_fill(&mut self, alpha: usize, word: &[usize]) -> Result<(), EnumerationError> {
        let mut f = alpha;
        let mut i = 0usize;
        let mut b = alpha;
        let mut j = word.len();
        loop {
            while i < j && self.table[f][word[i]] != UNDEF {
                f = self.table[f][word[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.merge(f, b);
                    self.process_coincidences();
                }
                return Ok(());
            }
            while j > i && self.table[b][inv_col(word[j - 1])] != UNDEF {
                b = self.table[b][inv_col(word[j - 1])];
                j -= 1;
            }
            if j == i {
                // forward and backward met across a filled gap
                self.merge(f, b);
                self.process_coincidences();
                return Ok(());
            }
            if j == i + 1 {
                // single gap: a deduction closes the relator
                self.table[f][word[i]] = b;
                self.table[b][inv_col(word[i])] = f;
                self.dirty = true;
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

fn inv_col(col: usize) -> usize {
    col ^ 1
}

fn flatten(word: &Word, ngens: usize) -> Result<Vec<usize>, EnumerationError> {
    let mut out = Vec::new();
    for &(g, e) in word {
        if g >= ngens {
            return Err(EnumerationError::BadRelator(g, ngens));
        }
        let col = if e >= 0 { 2 * g } else { 2 * g + 1 };
        for _ in 0..e.unsigned_abs() {
            out.push(col);
        }
    }
    Ok(out)
}

/// Enumerate the presented group ⟨gens | relators⟩ and return its
/// multiplication table, provided enumeration closes within `coset_bound`.
#[allow(clippy::needless_range_loop)]
pub fn enumerate_presentation(
    gen_names: &[String],
    relators: &[Word],
    coset_bound: usize,
) -> Result<FiniteGroup, EnumerationError> {
    let ngens = gen_names.len();
    if ngens == 0 {
        return Err(EnumerationError::NoGenerators);
    }
    let words: Vec<Vec<usize>> =
        relators.iter().map(|w| flatten(w, ngens)).collect::<Result<_, _>>()?;

    let mut t = Tables::new(ngens, coset_bound);
    // Repeat passes until quiescent: coincidence processing may reopen
    // entries in rows an earlier pass already visited.
    loop {
        t.dirty = false;
        let mut alpha = 0usize;
        while alpha < t.table.len() {
            if !t.is_live(alpha) {
                alpha += 1;
                continue;
            }
            for word in &words {
                t.scan_and_fill(alpha, word)?;
                if !t.is_live(alpha) {
                    break;
                }
            }
            if t.is_live(alpha) {
                for col in 0..t.ncols {
                    if t.table[alpha][col] == UNDEF {
                        t.define(alpha, col)?;
                    }
                }
            }
            alpha += 1;
        }
        if !t.dirty {
            break;
        }
    }

    // compact live cosets; indices double as data here, so keep plain loops
    let total = t.table.len();
    let mut index = vec![UNDEF; total];
    let mut live_list = Vec::new();
    for a in 0..total {
        if t.rep(a) == a {
            index[a] = live_list.len();
            live_list.push(a);
        }
    }
    let n = live_list.len();
    // generator action, rows = live cosets, cols = generator letters
    let mut action = vec![vec![0usize; t.ncols]; n];
    for (i, &a) in live_list.iter().enumerate() {
        for col in 0..t.ncols {
            let target = t.table[a][col];
            debug_assert_ne!(target, UNDEF, "closed table has no holes");
            action[i][col] = index[t.rep(target)];
        }
    }

    // word for each coset by BFS from the identity coset
    let mut word_of: Vec<Option<Vec<usize>>> = vec![None; n];
    word_of[0] = Some(vec![]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for col in 0..t.ncols {
            let d = action[c][col];
            if word_of[d].is_none() {
                let mut w = word_of[c].clone().unwrap();
                w.push(col);
                word_of[d] = Some(w);
                queue.push_back(d);
            }
        }
    }

    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut x = a;
            for &col in word_of[b].as_ref().expect("table is connected") {
                x = action[x][col];
            }
            mul[a * n + b] = x as u32;
        }
    }
    let generators: Vec<u32> = (0..ngens).map(|g| action[0][2 * g] as u32).collect();
    let label = format!("pres<{}>", gen_names.join(","));
    Ok(FiniteGroup::from_table(label, n, mul, generators, gen_names.to_vec())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cyclic_presentation() {
        let g = enumerate_presentation(&names(&["g"]), &[vec![(0, 4)]], 128).unwrap();
        assert_eq!(g.order(), 4);
        assert!(crate::iso::isomorphic(
            &std::sync::Arc::new(g),
            &crate::catalog::cyclic(4)
        ));
    }

    #[test]
    fn symmetric_group_on_two_mirrors() {
        // <a, b | a^2, b^2, (ab)^3> is S3
        let g = enumerate_presentation(
            &names(&["a", "b"]),
            &[vec![(0, 2)], vec![(1, 2)], vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)]],
            128,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_presentation() {
        // <g, h | g^4, g^2 h^-2, g h g^-1 h>  (ghg^-1 = h^-1)
        let g = enumerate_presentation(
            &names(&["g", "h"]),
            &[vec![(0, 4)], vec![(0, 2), (1, -2)], vec![(0, 1), (1, 1), (0, -1), (1, 1)]],
            256,
        )
        .unwrap();
        assert_eq!(g.order(), 8);
        assert!(crate::iso::isomorphic(
            &std::sync::Arc::new(g),
            &crate::catalog::quaternion8()
        ));
    }

    #[test]
    fn central_extension_of_order_32() {
        // <g, h | g^8, g^4 h^-4, g h g^-1 h^-3>
        let g = enumerate_presentation(
            &names(&["g", "h"]),
            &[vec![(0, 8)], vec![(0, 4), (1, -4)], vec![(0, 1), (1, 1), (0, -1), (1, -3)]],
            4096,
        )
        .unwrap();
        assert_eq!(g.order(), 32);
    }

    #[test]
    fn order_64_semidirect_product() {
        // <g, h | g^8, h^8, g h g^-1 h^-3>
        let g = enumerate_presentation(
            &names(&["g", "h"]),
            &[vec![(0, 8)], vec![(1, 8)], vec![(0, 1), (1, 1), (0, -1), (1, -3)]],
            8192,
        )
        .unwrap();
        assert_eq!(g.order(), 64);
    }

    #[test]
    fn divergence_hits_the_bound() {
        // free group on one generator: never closes
        let err = enumerate_presentation(&names(&["g"]), &[], 64);
        assert!(matches!(err, Err(EnumerationError::BoundExceeded(64))));
    }
}
