//! Hard-coded constructors for the small groups the scenario suite runs
//! over: all groups of order at most 15, the fourteen groups of order 16,
//! and the larger players (S4, the order-32 central extension).

use std::sync::Arc;

use crate::group::{direct_product, FiniteGroup, GroupError};
use crate::todd_coxeter::{enumerate_presentation, Word};

pub fn trivial() -> Arc<FiniteGroup> {
    cyclic(1)
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    assert!(n >= 1);
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let (gens, names) = if n == 1 {
        (vec![], vec![])
    } else {
        (vec![1u32], vec!["g".to_string()])
    };
    Arc::new(FiniteGroup::from_table(format!("C{}", n), n, mul, gens, names).expect("cyclic"))
}

/// Dihedral group of order n (n even): rotations r, reflection s.
pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
    assert!(n >= 2 && n.is_multiple_of(2), "dihedral order must be even");
    let m = n / 2;
    // element (i, f) = r^i s^f encoded as f*m + i
    let idx = |i: usize, f: usize| f * m + i;
    let mut mul = vec![0u32; n * n];
    for i in 0..m {
        for f in 0..2 {
            for j in 0..m {
                for g in 0..2 {
                    // r^i s^f r^j s^g = r^(i + (-1)^f j) s^(f+g)
                    let jj = if f == 1 { (m - j) % m } else { j };
                    mul[idx(i, f) * n + idx(j, g)] = idx((i + jj) % m, (f + g) % 2) as u32;
                }
            }
        }
    }
    let (gens, names): (Vec<u32>, Vec<String>) = if m == 1 {
        (vec![idx(0, 1) as u32], vec!["s".into()])
    } else {
        (vec![idx(1, 0) as u32, idx(0, 1) as u32], vec!["r".into(), "s".into()])
    };
    Arc::new(FiniteGroup::from_table(format!("D{}", n), n, mul, gens, names).expect("dihedral"))
}

/// The quaternion group {±1, ±i, ±j, ±k} with generators g = i, h = j.
pub fn quaternion8() -> Arc<FiniteGroup> {
    // ids: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k
    let neg = |x: usize| x ^ 1;
    let base_mul = |a: usize, b: usize| -> usize {
        // multiplication on {1,i,j,k} with sign, inputs are even ids
        match (a, b) {
            (0, y) => y,
            (x, 0) => x,
            (2, 2) => 1,          // i*i = -1
            (4, 4) => 1,          // j*j = -1
            (6, 6) => 1,          // k*k = -1
            (2, 4) => 6,          // i*j = k
            (4, 2) => 7,          // j*i = -k
            (4, 6) => 2,          // j*k = i
            (6, 4) => 3,          // k*j = -i
            (6, 2) => 4,          // k*i = j
            (2, 6) => 5,          // i*k = -j
            _ => unreachable!(),
        }
    };
    let mut mul = vec![0u32; 64];
    for a in 0..8 {
        for b in 0..8 {
            let sign = (a % 2) ^ (b % 2);
            let r = base_mul(a & !1, b & !1);
            let r = if sign == 1 { neg(r) } else { r };
            mul[a * 8 + b] = r as u32;
        }
    }
    Arc::new(
        FiniteGroup::from_table("Q8", 8, mul, vec![2, 4], vec!["g".into(), "h".into()])
            .expect("quaternion"),
    )
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    // all permutations of 0..n in lexicographic order; identity first
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

fn perm_group(label: &str, elements: Vec<Vec<usize>>, gens: Vec<Vec<usize>>, names: Vec<&str>) -> Arc<FiniteGroup> {
    let n = elements.len();
    let index_of = |p: &Vec<usize>| elements.iter().position(|q| q == p).expect("closed");
    let mut mul = vec![0u32; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            // (a·b)(x) = a(b(x))
            let prod: Vec<usize> = (0..a.len()).map(|x| a[b[x]]).collect();
            mul[i * n + j] = index_of(&prod) as u32;
        }
    }
    let gen_ids: Vec<u32> = gens.iter().map(|g| index_of(g) as u32).collect();
    Arc::new(
        FiniteGroup::from_table(
            label,
            n,
            mul,
            gen_ids,
            names.into_iter().map(String::from).collect(),
        )
        .expect("permutation group"),
    )
}

/// Symmetric group on n letters, n <= 4.
pub fn sym(n: usize) -> Arc<FiniteGroup> {
    assert!((2..=4).contains(&n));
    let elements = perms(n);
    let transposition: Vec<usize> = {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(0, 1);
        p
    };
    let cycle: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    perm_group(&format!("S{}", n), elements, vec![transposition, cycle], vec!["s", "c"])
}

/// Alternating group on 4 letters.
pub fn alt4() -> Arc<FiniteGroup> {
    let elements: Vec<Vec<usize>> = perms(4)
        .into_iter()
        .filter(|p| {
            let mut inversions = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            inversions % 2 == 0
        })
        .collect();
    let three_cycle = vec![1, 2, 0, 3]; // (0 1 2)
    let double_transposition = vec![1, 0, 3, 2]; // (0 1)(2 3)
    perm_group("A4", elements, vec![three_cycle, double_transposition], vec!["t", "v"])
}

/// (C_{p^n})^d ⋊ C_{p^m} where the acting generator x conjugates each base
/// generator y_i to y_i^t. Requires t^(p^m) ≡ 1 mod p^n.
#[allow(clippy::too_many_arguments)]
pub fn semidirect_cyclic_power(
    label: &str,
    p: u32,
    n: u32,
    d: u32,
    m: u32,
    twist: i64,
    base_names: &[&str],
    acting_name: &str,
) -> Result<Arc<FiniteGroup>, GroupError> {
    let base = (p as u64).pow(n) as usize;
    let act = (p as u64).pow(m) as usize;
    let t = twist.rem_euclid(base as i64) as usize;
    // the action must have order dividing p^m
    let mut tk = 1usize;
    for _ in 0..act {
        tk = tk * t % base;
    }
    if tk != 1 {
        return Err(GroupError::NotAHomomorphism(format!(
            "twist {} is not a unit of multiplicative order dividing {} mod {}",
            twist, act, base
        )));
    }
    let d = d as usize;
    let order = base.pow(d as u32) * act;
    // element = (a_0..a_{d-1}, s) encoded with s in the lowest position so the
    // identity is id 0
    let encode = |a: &[usize], s: usize| -> usize {
        let mut idx = 0usize;
        for &ai in a.iter().rev() {
            idx = idx * base + ai;
        }
        idx * act + s
    };
    let decode = |idx: usize| -> (Vec<usize>, usize) {
        let s = idx % act;
        let mut rest = idx / act;
        let mut a = vec![0usize; d];
        for ai in a.iter_mut() {
            *ai = rest % base;
            rest /= base;
        }
        (a, s)
    };
    // powers of t
    let mut tpow = vec![1usize; act];
    for s in 1..act {
        tpow[s] = tpow[s - 1] * t % base;
    }
    let mut mul = vec![0u32; order * order];
    for x in 0..order {
        let (ax, sx) = decode(x);
        for y in 0..order {
            let (ay, sy) = decode(y);
            // (a, s)(b, u) = (a + t^s b, s + u)
            let mut az = vec![0usize; d];
            for i in 0..d {
                az[i] = (ax[i] + tpow[sx] * ay[i]) % base;
            }
            mul[x * order + y] = encode(&az, (sx + sy) % act) as u32;
        }
    }
    let mut generators = Vec::new();
    let mut names = Vec::new();
    for i in 0..d {
        let mut a = vec![0usize; d];
        a[i] = 1;
        generators.push(encode(&a, 0) as u32);
        names.push(base_names[i].to_string());
    }
    generators.push(encode(&vec![0; d], 1) as u32);
    names.push(acting_name.to_string());
    Ok(Arc::new(FiniteGroup::from_table(label, order, mul, generators, names)?))
}

/// Base-generator names for the metacyclic families: y for rank one,
/// ya, yb, ... beyond.
pub fn family_base_names(d: u32) -> Vec<String> {
    if d == 1 {
        vec!["y".to_string()]
    } else {
        (0..d).map(|i| format!("y{}", (b'a' + i as u8) as char)).collect()
    }
}

/// A_2(n;d) = (C_{2^n})^d ⋊ C_2 with the inverting action.
pub fn a2_family(n: u32, d: u32) -> Result<Arc<FiniteGroup>, GroupError> {
    let names = family_base_names(d);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    semidirect_cyclic_power(
        &format!("A2({};{})", n, d),
        2,
        n,
        d,
        1,
        -1,
        &refs,
        "x",
    )
}

/// B_p(n;d,k) = (C_{p^n})^d ⋊ C_{p^n} with x y x^-1 = y^(p^k + 1).
pub fn b_family(p: u32, n: u32, d: u32, k: u32) -> Result<Arc<FiniteGroup>, GroupError> {
    let names = family_base_names(d);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let twist = (p as i64).pow(k) + 1;
    semidirect_cyclic_power(
        &format!("B({};{};{};{})", p, n, d, k),
        p,
        n,
        d,
        n,
        twist,
        &refs,
        "x",
    )
}

fn presented(label: &str, gens: &[&str], relators: Vec<Word>, expect_order: usize) -> Arc<FiniteGroup> {
    let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    let mut g = enumerate_presentation(&names, &relators, 8192).expect("catalog presentation");
    assert_eq!(g.order(), expect_order, "catalog presentation {} has wrong order", label);
    g.set_label(label);
    Arc::new(g)
}

/// The order-32 central extension H = <g,h | g^8, g^4 = h^4, ghg^-1 = h^3>.
pub fn h32() -> Arc<FiniteGroup> {
    presented(
        "H32",
        &["g", "h"],
        vec![vec![(0, 8)], vec![(0, 4), (1, -4)], vec![(0, 1), (1, 1), (0, -1), (1, -3)]],
        32,
    )
}

/// Z/4 ⋊ Z/4 = <g,h | g^4, h^4, ghg^-1 = h^-1>, the group called H2 in the
/// order-16 computations.
pub fn c4_semidirect_c4() -> Arc<FiniteGroup> {
    presented(
        "C4:C4",
        &["g", "h"],
        vec![vec![(0, 4)], vec![(1, 4)], vec![(0, 1), (1, 1), (0, -1), (1, -3)]],
        16,
    )
}

/// Z/8 ⋊ Z/8 = <g,h | g^8, h^8, ghg^-1 = h^3>, order 64.
pub fn c8_semidirect_c8() -> Arc<FiniteGroup> {
    presented(
        "C8:C8",
        &["g", "h"],
        vec![vec![(0, 8)], vec![(1, 8)], vec![(0, 1), (1, 1), (0, -1), (1, -3)]],
        64,
    )
}

/// Generalized quaternion group of order 16.
pub fn q16() -> Arc<FiniteGroup> {
    presented(
        "Q16",
        &["a", "b"],
        vec![vec![(0, 8)], vec![(1, 2), (0, -4)], vec![(1, 1), (0, 1), (1, -1), (0, 1)]],
        16,
    )
}

/// Dicyclic group of order 12.
pub fn dic3() -> Arc<FiniteGroup> {
    presented(
        "Dic3",
        &["a", "b"],
        vec![vec![(0, 6)], vec![(1, 2), (0, -3)], vec![(1, 1), (0, 1), (1, -1), (0, 1)]],
        12,
    )
}

/// (C4 x C2) ⋊ C2 where the involution sends x to xy and fixes y.
pub fn c4xc2_semidirect_c2() -> Arc<FiniteGroup> {
    presented(
        "(C4xC2):C2",
        &["x", "y", "z"],
        vec![
            vec![(0, 4)],
            vec![(1, 2)],
            vec![(2, 2)],
            vec![(0, 1), (1, 1), (0, -1), (1, -1)],
            vec![(2, 1), (0, 1), (2, -1), (1, -1), (0, -1)],
            vec![(2, 1), (1, 1), (2, -1), (1, -1)],
        ],
        16,
    )
}

/// Central product D8 ∘ C4 (the order-16 Pauli group).
pub fn pauli16() -> Arc<FiniteGroup> {
    presented(
        "D8oC4",
        &["a", "b", "c"],
        vec![
            vec![(0, 2)],
            vec![(1, 2)],
            vec![(2, 4)],
            vec![(0, 1), (2, 1), (0, -1), (2, -1)],
            vec![(1, 1), (2, 1), (1, -1), (2, -1)],
            vec![(0, 1), (1, 1), (0, 1), (1, 1), (2, 2)],
        ],
        16,
    )
}

pub fn elementary_abelian2(rank: u32) -> Arc<FiniteGroup> {
    let mut g = cyclic(2);
    for _ in 1..rank {
        let (next, _, _) = direct_product(&g, &cyclic(2)).expect("product");
        g = next;
    }
    let mut owned = (*g).clone();
    owned.set_label(match rank {
        1 => "C2".to_string(),
        2 => "V4".to_string(),
        r => format!("C2^{}", r),
    });
    Arc::new(owned)
}

fn product(label: &str, factors: &[Arc<FiniteGroup>]) -> Arc<FiniteGroup> {
    let mut g = Arc::clone(&factors[0]);
    for f in &factors[1..] {
        let (next, _, _) = direct_product(&g, f).expect("product");
        g = next;
    }
    let mut owned = (*g).clone();
    owned.set_label(label);
    Arc::new(owned)
}

/// Every group of order at most 16 (one per isomorphism class), plus S4 and
/// the order-32 group H — the census universe.
pub fn census_catalog() -> Vec<Arc<FiniteGroup>> {
    let c2 = cyclic(2);
    let c4 = cyclic(4);
    vec![
        cyclic(1),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        elementary_abelian2(2),
        cyclic(5),
        cyclic(6),
        sym(3),
        cyclic(7),
        cyclic(8),
        product("C4xC2", &[c4.clone(), c2.clone()]),
        elementary_abelian2(3),
        dihedral(8),
        quaternion8(),
        cyclic(9),
        product("C3xC3", &[cyclic(3), cyclic(3)]),
        cyclic(10),
        dihedral(10),
        cyclic(11),
        cyclic(12),
        product("C6xC2", &[cyclic(6), c2.clone()]),
        dihedral(12),
        alt4(),
        dic3(),
        cyclic(13),
        cyclic(14),
        dihedral(14),
        cyclic(15),
        // the fourteen groups of order 16
        cyclic(16),
        product("C8xC2", &[cyclic(8), c2.clone()]),
        product("C4xC4", &[c4.clone(), c4.clone()]),
        product("C4xC2xC2", &[c4.clone(), c2.clone(), c2.clone()]),
        elementary_abelian2(4),
        dihedral(16),
        semidirect_cyclic_power("SD16", 2, 3, 1, 1, 3, &["y"], "x").expect("SD16"),
        semidirect_cyclic_power("M16", 2, 3, 1, 1, 5, &["y"], "x").expect("M16"),
        q16(),
        product("D8xC2", &[dihedral(8), c2.clone()]),
        product("Q8xC2", &[quaternion8(), c2.clone()]),
        c4_semidirect_c4(),
        c4xc2_semidirect_c2(),
        pauli16(),
        // larger members used by the census
        sym(4),
        h32(),
    ]
}


#[cfg(test)]
mod presentation_cross_checks {
    use super::*;
    use crate::iso::isomorphic;

    fn presented_group(gens: &[&str], relators: Vec<Word>) -> Arc<FiniteGroup> {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        Arc::new(enumerate_presentation(&names, &relators, 8192).unwrap())
    }

    #[test]
    fn semidirect_constructors_match_their_presentations() {
        // D16 = <y,x | y^8, x^2, x y x^-1 y>
        let d16_pres = presented_group(
            &["y", "x"],
            vec![vec![(0, 8)], vec![(1, 2)], vec![(1, 1), (0, 1), (1, -1), (0, 1)]],
        );
        assert!(isomorphic(&dihedral(16), &d16_pres));

        // SD16 = <y,x | y^8, x^2, x y x^-1 y^-3>
        let sd16_pres = presented_group(
            &["y", "x"],
            vec![vec![(0, 8)], vec![(1, 2)], vec![(1, 1), (0, 1), (1, -1), (0, -3)]],
        );
        let sd16 = semidirect_cyclic_power("SD16", 2, 3, 1, 1, 3, &["y"], "x").unwrap();
        assert!(isomorphic(&sd16, &sd16_pres));

        // M16 = <y,x | y^8, x^2, x y x^-1 y^-5>
        let m16_pres = presented_group(
            &["y", "x"],
            vec![vec![(0, 8)], vec![(1, 2)], vec![(1, 1), (0, 1), (1, -1), (0, -5)]],
        );
        let m16 = semidirect_cyclic_power("M16", 2, 3, 1, 1, 5, &["y"], "x").unwrap();
        assert!(isomorphic(&m16, &m16_pres));
    }

    #[test]
    fn rank_two_family_matches_its_presentation() {
        // A2(2;2) = <a,b,x | a^4, b^4, [a,b], x^2, xax^-1 a, xbx^-1 b>
        let pres = presented_group(
            &["a", "b", "x"],
            vec![
                vec![(0, 4)],
                vec![(1, 4)],
                vec![(0, 1), (1, 1), (0, -1), (1, -1)],
                vec![(2, 2)],
                vec![(2, 1), (0, 1), (2, -1), (0, 1)],
                vec![(2, 1), (1, 1), (2, -1), (1, 1)],
            ],
        );
        assert_eq!(pres.order(), 32);
        assert!(isomorphic(&a2_family(2, 2).unwrap(), &pres));
    }
}
