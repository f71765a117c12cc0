//! Degreewise dimensions of finitely presented graded-commutative rings,
//! computed by monomial enumeration and the rank of the span of relation
//! multiples in each degree. No Gröbner machinery: the ideal is intersected
//! with one degree at a time.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fp::FpMatrix;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("relation {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("relation {relation} mentions generator {index} but only {count} are declared")]
    BadGenerator { relation: usize, index: usize, count: usize },
}

/// Commutativity convention for the monomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// p = 2: every generator is polynomial.
    StrictlyCommutative,
    /// odd p: odd-degree generators square to zero and anticommute.
    GradedCommutative,
}

/// A term is a coefficient together with an exponent vector.
pub type Term = (i64, Vec<u32>);

#[derive(Debug, Clone)]
pub struct RingPresentation {
    pub p: u8,
    pub generator_degrees: Vec<usize>,
    pub relations: Vec<Vec<Term>>,
    pub parity: Parity,
}

impl RingPresentation {
    fn exponent_cap(&self, gen: usize) -> Option<u32> {
        match self.parity {
            Parity::StrictlyCommutative => None,
            Parity::GradedCommutative => {
                if self.generator_degrees[gen] % 2 == 1 {
                    Some(1)
                } else {
                    None
                }
            }
        }
    }

    fn term_degree(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.generator_degrees)
            .map(|(&e, &d)| e as usize * d)
            .sum()
    }

    /// All monomials of the given total degree respecting the parity caps,
    /// in a fixed lexicographic order.
    fn monomials(&self, degree: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.generator_degrees.len()];
        self.enumerate(0, degree, &mut current, &mut out);
        out
    }

    fn enumerate(&self, gen: usize, remaining: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if gen == self.generator_degrees.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let d = self.generator_degrees[gen];
        let mut max_e = remaining.checked_div(d).unwrap_or(0) as u32;
        if let Some(cap) = self.exponent_cap(gen) {
            max_e = max_e.min(cap);
        }
        for e in 0..=max_e {
            current[gen] = e;
            self.enumerate(gen + 1, remaining - e as usize * d, current, out);
        }
        current[gen] = 0;
    }

    /// Multiply a monomial by a term, with the Koszul sign for odd-degree
    /// generators. Returns None when an odd generator would square.
    fn multiply(&self, mono: &[u32], term_exps: &[u32]) -> Option<(i64, Vec<u32>)> {
        let mut sign = 1i64;
        let mut out = mono.to_vec();
        if self.parity == Parity::GradedCommutative {
            // moving each odd generator of the term past the odd generators
            // of the monomial with larger index costs a sign each
            for (i, &e) in term_exps.iter().enumerate() {
                if e == 0 || self.generator_degrees[i].is_multiple_of(2) {
                    continue;
                }
                if mono[i] + e > 1 {
                    return None;
                }
                let crossings: u32 = mono
                    .iter()
                    .enumerate()
                    .skip(i + 1)
                    .filter(|(j, _)| self.generator_degrees[*j] % 2 == 1)
                    .map(|(_, &m)| m)
                    .sum();
                if crossings % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        for (o, &e) in out.iter_mut().zip(term_exps) {
            *o += e;
        }
        Some((sign, out))
    }

    /// dim of the degree-n component of the quotient, for n = 0..=max_degree.
    pub fn dims(&self, max_degree: usize) -> Result<Vec<usize>, RingError> {
        // validate homogeneity
        for (i, rel) in self.relations.iter().enumerate() {
            let mut degree = None;
            for (_, exps) in rel {
                if exps.len() != self.generator_degrees.len() {
                    return Err(RingError::BadGenerator {
                        relation: i,
                        index: exps.len(),
                        count: self.generator_degrees.len(),
                    });
                }
                let d = self.term_degree(exps);
                match degree {
                    None => degree = Some(d),
                    Some(d0) if d0 != d => return Err(RingError::NotHomogeneous(i)),
                    _ => {}
                }
            }
        }
        let relation_degrees: Vec<usize> = self
            .relations
            .iter()
            .map(|rel| rel.first().map_or(0, |(_, e)| self.term_degree(e)))
            .collect();
        let mut dims = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let monos = self.monomials(n);
            let index: BTreeMap<Vec<u32>, usize> =
                monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut span_rows: Vec<Vec<i64>> = Vec::new();
            for (r, rel) in self.relations.iter().enumerate() {
                let rd = relation_degrees[r];
                if rd > n {
                    continue;
                }
                for cof in self.monomials(n - rd) {
                    let mut row = vec![0i64; monos.len()];
                    let mut nonzero = false;
                    for (coeff, exps) in rel {
                        if let Some((sign, prod)) = self.multiply(&cof, exps) {
                            if let Some(&col) = index.get(&prod) {
                                row[col] += coeff * sign;
                                nonzero = true;
                            }
                            // products violating a parity cap are zero and
                            // products outside the cap'd basis vanish too
                        }
                    }
                    if nonzero {
                        span_rows.push(row);
                    }
                }
            }
            let rank = if span_rows.is_empty() || monos.is_empty() {
                0
            } else {
                let flat: Vec<i64> = span_rows.concat();
                FpMatrix::from_entries(self.p, span_rows.len(), monos.len(), &flat).rank()
            };
            dims.push(monos.len() - rank);
        }
        Ok(dims)
    }

    /// dim of Dec^n: the image in the quotient of the span of monomials built
    /// purely from degree-one generators. Used as the brute-force oracle for
    /// the decomposable ladder.
    pub fn dec_dims(&self, max_degree: usize) -> Result<Vec<usize>, RingError> {
        // reuse the relation span and intersect with degree-one monomials
        self.dims(max_degree)?; // homogeneity validation
        let relation_degrees: Vec<usize> = self
            .relations
            .iter()
            .map(|rel| rel.first().map_or(0, |(_, e)| self.term_degree(e)))
            .collect();
        let mut out = vec![1usize];
        for n in 1..=max_degree {
            let monos = self.monomials(n);
            let index: BTreeMap<Vec<u32>, usize> =
                monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for (r, rel) in self.relations.iter().enumerate() {
                let rd = relation_degrees[r];
                if rd > n {
                    continue;
                }
                for cof in self.monomials(n - rd) {
                    let mut row = vec![0i64; monos.len()];
                    for (coeff, exps) in rel {
                        if let Some((sign, prod)) = self.multiply(&cof, exps) {
                            if let Some(&col) = index.get(&prod) {
                                row[col] += coeff * sign;
                            }
                        }
                    }
                    rows.push(row);
                }
            }
            let rel_rank = if rows.is_empty() {
                0
            } else {
                let flat: Vec<i64> = rows.concat();
                FpMatrix::from_entries(self.p, rows.len(), monos.len(), &flat).rank()
            };
            // add the degree-one-only monomials and measure the rank growth
            let mut all_rows = rows;
            for (m, col) in monos.iter().zip(0..) {
                let pure = m
                    .iter()
                    .enumerate()
                    .all(|(g, &e)| e == 0 || self.generator_degrees[g] == 1);
                if pure {
                    let mut row = vec![0i64; monos.len()];
                    row[col] = 1;
                    all_rows.push(row);
                }
            }
            let total_rank = if all_rows.is_empty() {
                0
            } else {
                let flat: Vec<i64> = all_rows.concat();
                FpMatrix::from_entries(self.p, all_rows.len(), monos.len(), &flat).rank()
            };
            out.push(total_rank - rel_rank);
        }
        Ok(out)
    }
}

/// Convenience constructor from readable pieces.
pub fn presentation(
    p: u8,
    generator_degrees: &[usize],
    relations: &[&[(i64, &[u32])]],
    parity: Parity,
) -> RingPresentation {
    RingPresentation {
        p,
        generator_degrees: generator_degrees.to_vec(),
        relations: relations
            .iter()
            .map(|rel| rel.iter().map(|&(c, e)| (c, e.to_vec())).collect())
            .collect(),
        parity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// F_2[z,y,v]/(y^2+yz+z^2, y^2z+yz^2) with |z|=|y|=1, |v|=4.
    fn quaternion_ring() -> RingPresentation {
        presentation(
            2,
            &[1, 1, 4],
            &[
                &[(1, &[0, 2, 0]), (1, &[1, 1, 0]), (1, &[2, 0, 0])],
                &[(1, &[1, 2, 0]), (1, &[2, 1, 0])],
            ],
            Parity::StrictlyCommutative,
        )
    }

    #[test]
    fn quaternion_ring_dims_are_periodic() {
        let dims = quaternion_ring().dims(8).unwrap();
        assert_eq!(dims, vec![1, 2, 2, 1, 1, 2, 2, 1, 1]);
    }

    #[test]
    fn quaternion_ring_dec_dims() {
        let dec = quaternion_ring().dec_dims(4).unwrap();
        assert_eq!(dec, vec![1, 2, 2, 1, 0]);
    }

    #[test]
    fn metacyclic_mod_2_ring_dims_grow_linearly() {
        // F_2[w, c, wx]/(w^2 + wx*w): |w|=|wx|=1, |c|=2
        let ring = presentation(
            2,
            &[1, 2, 1],
            &[&[(1, &[2, 0, 0]), (1, &[1, 0, 1])]],
            Parity::StrictlyCommutative,
        );
        assert_eq!(ring.dims(6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn odd_metacyclic_ring_dims() {
        // Λ(wx, w) ⊗ F_3[cx, c]: dims n+1
        let ring = presentation(3, &[1, 1, 2, 2], &[], Parity::GradedCommutative);
        assert_eq!(ring.dims(6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn order_16_ring_dims() {
        // F_2[z,y,x,w]/(z^2, y^2+yz): |z|=|y|=1, |x|=|w|=2
        let ring = presentation(
            2,
            &[1, 1, 2, 2],
            &[&[(1, &[2, 0, 0, 0])], &[(1, &[0, 2, 0, 0]), (1, &[1, 1, 0, 0])]],
            Parity::StrictlyCommutative,
        );
        assert_eq!(ring.dims(6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn rank_two_semidirect_family_ring() {
        // F_2[w1,w2,c1,c2,wx]/(w1^2+wx*w1, w2^2+wx*w2): dims C(n+2,2)
        let ring = presentation(
            2,
            &[1, 1, 2, 2, 1],
            &[
                &[(1, &[2, 0, 0, 0, 0]), (1, &[1, 0, 0, 0, 1])],
                &[(1, &[0, 2, 0, 0, 0]), (1, &[0, 1, 0, 0, 1])],
            ],
            Parity::StrictlyCommutative,
        );
        assert_eq!(ring.dims(4).unwrap(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn non_homogeneous_relation_is_rejected() {
        let ring = presentation(
            2,
            &[1, 2],
            &[&[(1, &[1, 0]), (1, &[0, 1])]],
            Parity::StrictlyCommutative,
        );
        assert!(matches!(ring.dims(2), Err(RingError::NotHomogeneous(0))));
    }

    #[test]
    fn exterior_squares_vanish_at_odd_p() {
        // Λ(x) over F_3: dims 1,1,0,...
        let ring = presentation(3, &[1], &[], Parity::GradedCommutative);
        assert_eq!(ring.dims(3).unwrap(), vec![1, 1, 0, 0]);
    }
}
