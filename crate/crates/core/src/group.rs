//! Finite groups as full multiplication tables, homomorphisms between them,
//! and the structural searches (Sylow subgroups, O_{p'}, normal complements)
//! behind the degree-one-generation classifier.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("element id {0} out of range for group of order {1}")]
    BadElement(usize, usize),
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("identity axiom fails at element {0}")]
    BadIdentity(usize),
    #[error("inverse axiom fails at element {0}")]
    BadInverse(usize),
    #[error("listed generators do not generate the group")]
    GeneratorsIncomplete,
    #[error("generator images do not extend to a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("{0} does not divide the group order {1}")]
    PrimeDoesNotDivide(u32, usize),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("subgroup is not closed under multiplication")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
}

/// A finite group held as a complete multiplication table.
/// Element ids are 0..order with 0 the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
    gen_names: Vec<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    /// Build from a raw table, verifying all type invariants.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        mul: Vec<u32>,
        generators: Vec<u32>,
        gen_names: Vec<String>,
    ) -> Result<Self, GroupError> {
        assert_eq!(mul.len(), order * order, "table must be order x order");
        assert_eq!(generators.len(), gen_names.len());
        let mut inv = vec![u32::MAX; order];
        for g in 0..order {
            for h in 0..order {
                if mul[g * order + h] == 0 {
                    inv[g] = h as u32;
                }
            }
        }
        let group =
            FiniteGroup { label: label.into(), order, mul, inv, generators, gen_names };
        group.validate()?;
        Ok(group)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        for &v in &self.mul {
            if v as usize >= n {
                return Err(GroupError::BadElement(v as usize, n));
            }
        }
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(GroupError::BadIdentity(g));
            }
            let ig = self.inv[g] as usize;
            if ig >= n || self.mul(g, ig) != 0 || self.mul(ig, g) != 0 {
                return Err(GroupError::BadInverse(g));
            }
        }
        // Exhaustive associativity up to order 64, deterministic sample above.
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let samples = 200_000usize;
            let n3 = n * n * n;
            let stride = (n3 / samples).max(1) | 1;
            let mut t = 0usize;
            for _ in 0..samples.min(n3) {
                let a = t % n;
                let b = (t / n) % n;
                let c = (t / (n * n)) % n;
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
                t = (t + stride) % n3;
            }
        }
        let closure = self.closure(&self.generators.iter().map(|&g| g as usize).collect::<Vec<_>>());
        if closure.len() != n {
            return Err(GroupError::GeneratorsIncomplete);
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn generator_by_name(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|n| n == name).map(|i| self.generators[i] as usize)
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let mut base = if e < 0 { self.inv(g) } else { g };
        let mut e = e.unsigned_abs();
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in a + 1..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Subgroup generated by a seed set (always contains the identity).
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut list = vec![0usize];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(g) = queue.pop_front() {
            for &s in seed {
                for h in [self.mul(g, s), self.mul(g, self.inv(s))] {
                    if !seen[h] {
                        seen[h] = true;
                        list.push(h);
                        queue.push_back(h);
                    }
                }
            }
        }
        list.sort_unstable();
        list
    }

    pub fn subgroup(self: &Arc<Self>, seed: &[usize]) -> SubgroupHandle {
        SubgroupHandle { parent: Arc::clone(self), elements: self.closure(seed) }
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> SubgroupHandle {
        SubgroupHandle { parent: Arc::clone(self), elements: vec![0] }
    }

    pub fn full_subgroup(self: &Arc<Self>) -> SubgroupHandle {
        SubgroupHandle { parent: Arc::clone(self), elements: (0..self.order).collect() }
    }

    pub fn center(self: &Arc<Self>) -> SubgroupHandle {
        let elements = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        SubgroupHandle { parent: Arc::clone(self), elements }
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class = BTreeSet::new();
            for h in 0..self.order {
                class.insert(self.mul(self.mul(h, g), self.inv(h)));
            }
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// O_{p'}(G): closure of all elements of order coprime to p. The smallest
    /// normal subgroup with a p-group quotient.
    pub fn o_p_prime(self: &Arc<Self>, p: u32) -> Result<SubgroupHandle, GroupError> {
        if !crate::fp::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let seeds: Vec<usize> = (0..self.order)
            .filter(|&g| !(self.element_order(g) as u32).is_multiple_of(p))
            .collect();
        Ok(self.subgroup(&seeds))
    }

    /// A Sylow p-subgroup: grow a p-subgroup by adjoining normalizing
    /// p-elements until the full p-part of the order is reached.
    pub fn sylow(self: &Arc<Self>, p: u32) -> Result<SubgroupHandle, GroupError> {
        if !crate::fp::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let mut p_part = 1usize;
        let mut rest = self.order;
        while rest.is_multiple_of(p as usize) {
            rest /= p as usize;
            p_part *= p as usize;
        }
        let p_elements: Vec<usize> = (0..self.order)
            .filter(|&g| {
                let o = self.element_order(g);
                o > 1 && is_p_power(o, p)
            })
            .collect();
        let mut current: Vec<usize> = vec![0];
        while current.len() < p_part {
            let mut grown = false;
            for &g in &p_elements {
                if current.binary_search(&g).is_ok() {
                    continue;
                }
                // g must normalize the current subgroup
                let normalizes = current
                    .iter()
                    .all(|&s| current.binary_search(&self.mul(self.mul(g, s), self.inv(g))).is_ok());
                if !normalizes {
                    continue;
                }
                let mut seed = current.clone();
                seed.push(g);
                let next = self.closure(&seed);
                if next.len() <= p_part && is_p_power(next.len(), p) {
                    current = next;
                    grown = true;
                    break;
                }
            }
            if !grown {
                unreachable!("Sylow growth stalled; normalizer step must exist");
            }
        }
        Ok(SubgroupHandle { parent: Arc::clone(self), elements: current })
    }

    /// All normal subgroups, found as multiplicatively closed unions of
    /// conjugacy classes reachable from the trivial subgroup.
    pub fn normal_subgroups(self: &Arc<Self>) -> Vec<SubgroupHandle> {
        let classes = self.conjugacy_classes();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut queue: VecDeque<Vec<usize>> = VecDeque::from([vec![0usize]]);
        while let Some(current) = queue.pop_front() {
            for class in &classes {
                if current.binary_search(&class[0]).is_ok() {
                    continue;
                }
                let mut seed = current.clone();
                seed.extend_from_slice(class);
                let next = self.closure(&seed);
                if found.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        found
            .into_iter()
            .map(|elements| SubgroupHandle { parent: Arc::clone(self), elements })
            .collect()
    }

    /// Some normal N with N ∩ S = 1 and |N||S| = |G|, if one exists.
    pub fn has_normal_complement(self: &Arc<Self>, s: &SubgroupHandle) -> Option<SubgroupHandle> {
        let target = self.order / s.order();
        self.normal_subgroups().into_iter().find(|n| {
            n.order() == target && intersection_size(&n.elements, &s.elements) == 1
        })
    }

    /// Decide whether H^*(G, F_p) is generated in degree one: true iff p = 2
    /// and the Sylow 2-subgroup is nontrivial elementary 2-abelian with a
    /// normal complement.
    pub fn degree_one_classifier(self: &Arc<Self>, p: u32) -> Result<ClassifierVerdict, GroupError> {
        if !crate::fp::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if !self.order.is_multiple_of(p as usize) {
            // cohomology concentrated in degree zero; not a yes/no question
            return Err(GroupError::PrimeDoesNotDivide(p, self.order));
        }
        if p != 2 {
            return Ok(ClassifierVerdict { generated_in_degree_one: false, witness: None });
        }
        let sylow = self.sylow(2)?;
        let elementary =
            sylow.order() > 1 && sylow.elements().iter().all(|&g| self.mul(g, g) == 0);
        if !elementary {
            return Ok(ClassifierVerdict { generated_in_degree_one: false, witness: None });
        }
        match self.has_normal_complement(&sylow) {
            Some(n) => Ok(ClassifierVerdict { generated_in_degree_one: true, witness: Some(n) }),
            None => Ok(ClassifierVerdict { generated_in_degree_one: false, witness: None }),
        }
    }
}

fn is_p_power(mut n: usize, p: u32) -> bool {
    while n.is_multiple_of(p as usize) {
        n /= p as usize;
    }
    n == 1
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let set: BTreeSet<usize> = a.iter().copied().collect();
    b.iter().filter(|x| set.contains(x)).count()
}

#[derive(Debug, Clone)]
pub struct ClassifierVerdict {
    pub generated_in_degree_one: bool,
    pub witness: Option<SubgroupHandle>,
}

/// A subgroup of a fixed parent group, stored as a sorted id set.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.elements.len(), self.parent.label())
    }
}

impl SubgroupHandle {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn verify_closed(&self) -> Result<(), GroupError> {
        if !self.contains(0) {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &self.elements {
            if !self.contains(self.parent.inv(a)) {
                return Err(GroupError::NotASubgroup);
            }
            for &b in &self.elements {
                if !self.contains(self.parent.mul(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|h| {
            self.elements.iter().all(|&s| self.contains(g.mul(g.mul(h, s), g.inv(h))))
        })
    }

    /// Realize the subgroup as a standalone group plus the inclusion map.
    pub fn as_group(&self, label: impl Into<String>) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
        self.verify_closed()?;
        let n = self.elements.len();
        let index_of = |g: usize| self.elements.binary_search(&g).expect("closed subgroup");
        let mut mul = vec![0u32; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                mul[i * n + j] = index_of(self.parent.mul(a, b)) as u32;
            }
        }
        // generators: greedy closure growth over subgroup elements
        let mut gens: Vec<u32> = Vec::new();
        {
            let mut have = vec![0usize];
            for idx in 0..n {
                if have.len() == n {
                    break;
                }
                if have.binary_search(&idx).is_ok() {
                    continue;
                }
                gens.push(idx as u32);
                let tmp = FiniteGroup {
                    label: String::new(),
                    order: n,
                    mul: mul.clone(),
                    inv: vec![0; n],
                    generators: vec![],
                    gen_names: vec![],
                };
                have = tmp.closure(&gens.iter().map(|&g| g as usize).collect::<Vec<_>>());
            }
        }
        let names: Vec<String> = (0..gens.len()).map(|i| format!("s{}", i)).collect();
        let sub = Arc::new(FiniteGroup::from_table(label, n, mul, gens, names)?);
        let image: Vec<u32> = self.elements.iter().map(|&g| g as u32).collect();
        let hom = GroupHom::new_unchecked(Arc::clone(&sub), Arc::clone(&self.parent), image);
        hom.verify()?;
        Ok((sub, hom))
    }
}

/// A total multiplicative map between finite groups.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<u32>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupHom({} -> {})", self.source.label(), self.target.label())
    }
}

impl GroupHom {
    pub fn new_unchecked(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<u32>,
    ) -> Self {
        GroupHom { source, target, image }
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupHom {
            source: Arc::clone(g),
            target: Arc::clone(g),
            image: (0..g.order() as u32).collect(),
        }
    }

    /// The unique multiplicative extension of images given on a generating
    /// set, or an error when no extension exists.
    pub fn from_generator_images(
        source: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        images: &[(usize, usize)],
    ) -> Result<Self, GroupError> {
        let n = source.order();
        let mut image = vec![u32::MAX; n];
        image[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for &(s, i) in images {
                let pairs = [(source.mul(g, s), target.mul(image[g] as usize, i)), (
                    source.mul(g, source.inv(s)),
                    target.mul(image[g] as usize, target.inv(i)),
                )];
                for (h, ih) in pairs {
                    if image[h] == u32::MAX {
                        image[h] = ih as u32;
                        queue.push_back(h);
                    } else if image[h] != ih as u32 {
                        return Err(GroupError::NotAHomomorphism(format!(
                            "conflicting image for element {}",
                            h
                        )));
                    }
                }
            }
        }
        if image.contains(&u32::MAX) {
            return Err(GroupError::NotAHomomorphism(
                "given elements do not generate the source".into(),
            ));
        }
        let hom = GroupHom { source: Arc::clone(source), target: Arc::clone(target), image };
        hom.verify()?;
        Ok(hom)
    }

    pub fn verify(&self) -> Result<(), GroupError> {
        if self.image[0] != 0 {
            return Err(GroupError::NotAHomomorphism("identity not fixed".into()));
        }
        let n = self.source.order();
        for a in 0..n {
            for b in 0..n {
                let lhs = self.image[self.source.mul(a, b)];
                let rhs = self.target.mul(self.image[a] as usize, self.image[b] as usize) as u32;
                if lhs != rhs {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "image({}·{}) != image({})·image({})",
                        a, b, a, b
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g] as usize
    }

    pub fn image_map(&self) -> &[u32] {
        &self.image
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &i in &self.image {
            seen[i as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn kernel(&self) -> SubgroupHandle {
        let elements: Vec<usize> =
            (0..self.source.order()).filter(|&g| self.image[g] == 0).collect();
        SubgroupHandle { parent: Arc::clone(&self.source), elements }
    }

    /// Composition other ∘ self.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.target.order(), other.source.order());
        let image = self.image.iter().map(|&g| other.image[g as usize]).collect();
        GroupHom { source: Arc::clone(&self.source), target: Arc::clone(&other.target), image }
    }
}

/// Direct product with the two injections and two projections.
#[allow(clippy::type_complexity)]
pub fn direct_product(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
) -> Result<(Arc<FiniteGroup>, [GroupHom; 2], [GroupHom; 2]), GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let idx = |x: usize, y: usize| x * nb + y;
    let mut mul = vec![0u32; n * n];
    for x1 in 0..na {
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    mul[idx(x1, y1) * n + idx(x2, y2)] =
                        idx(a.mul(x1, x2), b.mul(y1, y2)) as u32;
                }
            }
        }
    }
    let mut generators = Vec::new();
    let mut gen_names = Vec::new();
    for (k, &g) in a.generators().iter().enumerate() {
        generators.push(idx(g as usize, 0) as u32);
        gen_names.push(a.gen_names()[k].clone());
    }
    for (k, &g) in b.generators().iter().enumerate() {
        generators.push(idx(0, g as usize) as u32);
        let mut name = b.gen_names()[k].clone();
        // disambiguate collisions with names already taken
        while gen_names.contains(&name) {
            name.push('\'');
        }
        gen_names.push(name);
    }
    let label = format!("{} x {}", a.label(), b.label());
    let product = Arc::new(FiniteGroup::from_table(label, n, mul, generators, gen_names)?);
    let inj_a = GroupHom::new_unchecked(
        Arc::clone(a),
        Arc::clone(&product),
        (0..na).map(|x| idx(x, 0) as u32).collect(),
    );
    let inj_b = GroupHom::new_unchecked(
        Arc::clone(b),
        Arc::clone(&product),
        (0..nb).map(|y| idx(0, y) as u32).collect(),
    );
    let proj_a = GroupHom::new_unchecked(
        Arc::clone(&product),
        Arc::clone(a),
        (0..n).map(|g| (g / nb) as u32).collect(),
    );
    let proj_b = GroupHom::new_unchecked(
        Arc::clone(&product),
        Arc::clone(b),
        (0..n).map(|g| (g % nb) as u32).collect(),
    );
    for h in [&inj_a, &inj_b, &proj_a, &proj_b] {
        h.verify()?;
    }
    Ok((product, [inj_a, inj_b], [proj_a, proj_b]))
}

/// Quotient by a normal subgroup, with the projection map.
pub fn quotient(
    g: &Arc<FiniteGroup>,
    n: &SubgroupHandle,
) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
    n.verify_closed()?;
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let order = g.order();
    // canonical coset representative: smallest element id in the coset
    let mut coset_rep = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset_rep[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = n.elements().iter().map(|&h| g.mul(x, h)).collect();
        let rep = *members.iter().min().unwrap();
        if rep == x {
            reps.push(rep);
        }
        for m in members {
            coset_rep[m] = rep;
        }
    }
    reps.sort_unstable();
    let q = reps.len();
    let coset_index = |x: usize| reps.binary_search(&coset_rep[x]).expect("coset indexed");
    let mut mul = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * q + j] = coset_index(g.mul(a, b)) as u32;
        }
    }
    let generators: Vec<u32> =
        g.generators().iter().map(|&x| coset_index(x as usize) as u32).collect();
    let gen_names = g.gen_names().to_vec();
    // dedup generator list while keeping names aligned
    let mut seen = BTreeSet::new();
    let mut gens2 = Vec::new();
    let mut names2 = Vec::new();
    for (k, &x) in generators.iter().enumerate() {
        if seen.insert(x) {
            gens2.push(x);
            names2.push(gen_names[k].clone());
        }
    }
    let label = format!("{}/N{}", g.label(), n.order());
    let quot = Arc::new(FiniteGroup::from_table(label, q, mul, gens2, names2)?);
    let proj = GroupHom::new_unchecked(
        Arc::clone(g),
        Arc::clone(&quot),
        (0..order).map(|x| coset_index(x) as u32).collect(),
    );
    proj.verify()?;
    Ok((quot, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn element_orders_in_q8() {
        let q8 = catalog::quaternion8();
        assert_eq!(q8.element_order(0), 1);
        let g = q8.generator_by_name("g").unwrap();
        assert_eq!(q8.element_order(g), 4);
        assert_eq!(q8.element_order(q8.mul(g, g)), 2);
    }

    #[test]
    fn o_p_prime_examples() {
        let s3 = catalog::sym(3);
        let o = s3.o_p_prime(2).unwrap();
        assert_eq!(o.order(), 3);
        assert!(o.is_normal());
        let q8 = catalog::quaternion8();
        assert_eq!(q8.o_p_prime(2).unwrap().order(), 1);
        // p coprime to the order: the whole group
        let c5 = catalog::cyclic(5);
        assert_eq!(c5.o_p_prime(2).unwrap().order(), 5);
    }

    #[test]
    fn sylow_examples() {
        let c6 = catalog::cyclic(6);
        assert_eq!(c6.sylow(2).unwrap().order(), 2);
        let s4 = catalog::sym(4);
        let syl = s4.sylow(2).unwrap();
        assert_eq!(syl.order(), 8);
        let (as_group, _) = syl.as_group("Syl2(S4)").unwrap();
        assert!(crate::iso::isomorphic(&as_group, &catalog::dihedral(8)));
        let q8 = catalog::quaternion8();
        assert_eq!(q8.sylow(2).unwrap().order(), 8);
    }

    #[test]
    fn normal_subgroup_counts() {
        let s3 = catalog::sym(3);
        assert_eq!(s3.normal_subgroups().len(), 3);
        let q8 = catalog::quaternion8();
        assert_eq!(q8.normal_subgroups().len(), 6);
        // abelian: every subgroup is normal; C4 has 3 subgroups
        let c4 = catalog::cyclic(4);
        assert_eq!(c4.normal_subgroups().len(), 3);
    }

    #[test]
    fn normal_complements() {
        let s3 = catalog::sym(3);
        let syl = s3.sylow(2).unwrap();
        let comp = s3.has_normal_complement(&syl).unwrap();
        assert_eq!(comp.order(), 3);
        let a4 = catalog::alt4();
        let v4 = a4.sylow(2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(a4.has_normal_complement(&v4).is_none());
        let q8 = catalog::quaternion8();
        let trivial = q8.trivial_subgroup();
        assert_eq!(q8.has_normal_complement(&trivial).unwrap().order(), 8);
    }

    #[test]
    fn classifier_verdicts() {
        let s3 = catalog::sym(3);
        let v = s3.degree_one_classifier(2).unwrap();
        assert!(v.generated_in_degree_one);
        assert_eq!(v.witness.unwrap().order(), 3);

        for g in [catalog::quaternion8(), catalog::cyclic(4), catalog::dihedral(8), catalog::alt4(), catalog::sym(4)] {
            assert!(!g.degree_one_classifier(2).unwrap().generated_in_degree_one, "{}", g.label());
        }
        let c3 = catalog::cyclic(3);
        assert!(!c3.degree_one_classifier(3).unwrap().generated_in_degree_one);
        // p not dividing the order is a distinct status
        assert!(matches!(
            c3.degree_one_classifier(2),
            Err(GroupError::PrimeDoesNotDivide(2, 3))
        ));
        let v4 = catalog::elementary_abelian2(2);
        let v = v4.degree_one_classifier(2).unwrap();
        assert!(v.generated_in_degree_one);
        assert_eq!(v.witness.unwrap().order(), 1);
        // dihedral groups of order 2n, n odd
        for n in [3usize, 5, 7] {
            let d = catalog::dihedral(2 * n);
            assert!(d.degree_one_classifier(2).unwrap().generated_in_degree_one);
        }
    }

    #[test]
    fn direct_product_examples() {
        let c2 = catalog::cyclic(2);
        let c1 = catalog::cyclic(1);
        let (p, _, _) = direct_product(&c2, &c1).unwrap();
        assert!(crate::iso::isomorphic(&p, &c2));

        let q8 = catalog::quaternion8();
        let (q8c2, _, projs) = direct_product(&q8, &c2).unwrap();
        assert_eq!(q8c2.order(), 16);
        assert!(projs[0].is_surjective());

        let (v4, _, _) = direct_product(&c2, &c2).unwrap();
        let involutions = (1..4).filter(|&g| v4.mul(g, g) == 0).count();
        assert_eq!(involutions, 3);
    }

    #[test]
    fn hom_extension_and_kernels() {
        let q8 = catalog::quaternion8();
        let id = GroupHom::identity(&q8);
        id.verify().unwrap();

        let c4 = catalog::cyclic(4);
        let c2 = catalog::cyclic(2);
        let hom = GroupHom::from_generator_images(&c4, &c2, &[(1, 1)]).unwrap();
        assert!(hom.is_surjective());
        assert_eq!(hom.kernel().order(), 2);
        // quotient consistency |source| = |kernel| * |target|
        assert_eq!(c4.order(), hom.kernel().order() * c2.order());

        // images violating the relations are rejected: C4 -> C2 sending the
        // generator to an element of order 2 is fine, but C2 -> C4 cannot
        // send the involution to an order-4 element
        assert!(GroupHom::from_generator_images(&c2, &c4, &[(1, 1)]).is_err());
    }

    #[test]
    fn quotient_projection() {
        let q8 = catalog::quaternion8();
        let center = q8.center();
        assert_eq!(center.order(), 2);
        let (q, proj) = quotient(&q8, &center).unwrap();
        assert_eq!(q.order(), 4);
        assert!(proj.is_surjective());
        assert!(crate::iso::isomorphic(&q, &catalog::elementary_abelian2(2)));
    }

    #[test]
    fn o_p_prime_is_normal_with_p_group_quotient() {
        for g in catalog::census_catalog() {
            for p in [2u32, 3, 5] {
                let o = g.o_p_prime(p).unwrap();
                assert!(o.is_normal(), "{} p={}", g.label(), p);
                let (q, _) = quotient(&g, &o).unwrap();
                let mut m = q.order();
                while m % p as usize == 0 {
                    m /= p as usize;
                }
                assert_eq!(m, 1, "quotient of {} by O_{}' is not a {}-group", g.label(), p, p);
            }
        }
    }
}

#[cfg(test)]
mod product_name_tests {
    use super::direct_product;
    use crate::catalog;

    #[test]
    fn nested_products_get_unique_generator_names() {
        let q8 = catalog::quaternion8();
        let c2 = catalog::cyclic(2);
        let (p1, _, _) = direct_product(&q8, &c2).unwrap();
        let (p2, _, _) = direct_product(&p1, &c2).unwrap();
        let names = p2.gen_names();
        let unique: std::collections::BTreeSet<&String> = names.iter().collect();
        assert_eq!(unique.len(), names.len(), "{:?}", names);
        assert!(names.contains(&"g'".to_string()));
        assert!(names.contains(&"g''".to_string()));
    }
}
