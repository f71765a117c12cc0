//! Parser for the group-spec grammar:
//!
//! ```text
//! spec := atom | spec "x" spec
//! atom := "C" INT | "Q8" | "D" INT | "A2(" INT ";" INT ")"
//!       | "B(" INT ";" INT ";" INT ";" INT ")"          # B(p;n;d;k)
//!       | "pres{" ident ("," ident)* "|" word ("," word)* "}"
//! word := (ident "^"? SINT)+ with "*" separators permitted
//! ```
//!
//! "D n" is the dihedral group of order n (n even).

use std::sync::Arc;

use thiserror::Error;

use crate::catalog;
use crate::group::{direct_product, FiniteGroup, GroupError};
use crate::todd_coxeter::{enumerate_presentation, EnumerationError, Word};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown builtin name at byte {position}: {name}")]
    UnknownBuiltin { position: usize, name: String },
}

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("order cap exceeded: {order} > {cap}")]
    OrderCapExceeded { order: u128, cap: usize },
    #[error("coset enumeration exceeded the bound of {0} cosets")]
    CosetBoundExceeded(usize),
    #[error("invalid group parameters: {0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Surface form of a semidirect atom, kept so printing round-trips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemidirectForm {
    /// A2(n;d)
    A2,
    /// B(p;n;d;k)
    B { p: u32, k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    /// Q8 or D n
    Builtin(Builtin),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// (C_{base_order})^d ⋊ C_{acting_order}, conjugation raises base
    /// generators to the `twist` power.
    Semidirect { base_rank: u32, base_order: u64, acting_order: u64, twist: i64, form: SemidirectForm },
    Presentation { gens: Vec<String>, relators: Vec<Word> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Q8,
    Dihedral(u32),
    /// Symmetric group on n letters, n <= 4.
    Sym(u32),
    /// Alternating group on n letters, n <= 4.
    Alt(u32),
}

impl GroupSpec {
    /// Canonical printer; parsing its output reproduces the AST.
    pub fn print(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("C{}", n),
            GroupSpec::Builtin(Builtin::Q8) => "Q8".to_string(),
            GroupSpec::Builtin(Builtin::Dihedral(n)) => format!("D{}", n),
            GroupSpec::Builtin(Builtin::Sym(n)) => format!("S{}", n),
            GroupSpec::Builtin(Builtin::Alt(n)) => format!("A{}", n),
            GroupSpec::Product(l, r) => format!("{} x {}", l.print(), r.print()),
            GroupSpec::Semidirect { base_rank, base_order, acting_order: _, twist: _, form } => {
                match form {
                    SemidirectForm::A2 => {
                        let n = base_order.trailing_zeros();
                        format!("A2({};{})", n, base_rank)
                    }
                    SemidirectForm::B { p, k } => {
                        let mut n = 0u32;
                        let mut m = *base_order;
                        while m > 1 {
                            m /= *p as u64;
                            n += 1;
                        }
                        format!("B({};{};{};{})", p, n, base_rank, k)
                    }
                }
            }
            GroupSpec::Presentation { gens, relators } => {
                let words: Vec<String> =
                    relators.iter().map(|w| print_word_named(w, gens)).collect();
                format!("pres{{{}|{}}}", gens.join(","), words.join(","))
            }
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Builtin(Builtin::Q8) => 8,
            GroupSpec::Builtin(Builtin::Dihedral(n)) => *n as u128,
            GroupSpec::Builtin(Builtin::Sym(n)) => (1..=*n as u128).product(),
            GroupSpec::Builtin(Builtin::Alt(n)) => (1..=*n as u128).product::<u128>().max(2) / 2,
            GroupSpec::Product(l, r) => l.order() * r.order(),
            GroupSpec::Semidirect { base_rank, base_order, acting_order, .. } => {
                (*base_order as u128).pow(*base_rank) * *acting_order as u128
            }
            // not known before enumeration
            GroupSpec::Presentation { .. } => 0,
        }
    }
}

/// Print a word against a generator-name table.
pub fn print_word_named(w: &Word, names: &[String]) -> String {
    w.iter()
        .map(|&(g, e)| {
            if e == 1 {
                names[g].clone()
            } else {
                format!("{}^{}", names[g], e)
            }
        })
        .collect::<Vec<String>>()
        .join("*")
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, message: String) -> ParseError {
        ParseError::Syntax { position: self.pos, message }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer".into()));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range".into()))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        let v = self.int()? as i64;
        Ok(if neg { -v } else { v })
    }

    /// Letters only; exponents are written with digits or ^.
    fn ident(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == b'\'') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an identifier".into()));
        }
        Ok(self.src[start..self.pos].to_string())
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty group spec".into()));
    }
    let spec = parse_product(&mut cur)?;
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(cur.err("trailing input after group spec".into()));
    }
    Ok(spec)
}

fn parse_product(cur: &mut Cursor) -> Result<GroupSpec, ParseError> {
    let mut acc = parse_atom(cur)?;
    loop {
        cur.skip_ws();
        // a product separator is an 'x' not followed by identifier characters
        if cur.peek() == Some(b'x') {
            let save = cur.pos;
            cur.pos += 1;
            cur.skip_ws();
            match parse_atom(cur) {
                Ok(rhs) => {
                    acc = GroupSpec::Product(Box::new(acc), Box::new(rhs));
                }
                Err(_) => {
                    cur.pos = save;
                    break;
                }
            }
        } else {
            break;
        }
    }
    Ok(acc)
}

fn parse_atom(cur: &mut Cursor) -> Result<GroupSpec, ParseError> {
    cur.skip_ws();
    let start = cur.pos;
    if cur.src[cur.pos..].starts_with("pres{") {
        cur.pos += 5;
        return parse_presentation(cur);
    }
    if cur.src[cur.pos..].starts_with("A2(") {
        cur.pos += 3;
        let n = cur.int()? as u32;
        cur.expect(b';')?;
        let d = cur.int()? as u32;
        cur.expect(b')')?;
        if n == 0 || d == 0 {
            return Err(ParseError::Syntax {
                position: start,
                message: "A2(n;d) needs n >= 1 and d >= 1".into(),
            });
        }
        return Ok(GroupSpec::Semidirect {
            base_rank: d,
            base_order: 1u64 << n,
            acting_order: 2,
            twist: -1,
            form: SemidirectForm::A2,
        });
    }
    if cur.src[cur.pos..].starts_with("B(") {
        cur.pos += 2;
        let p = cur.int()? as u32;
        cur.expect(b';')?;
        let n = cur.int()? as u32;
        cur.expect(b';')?;
        let d = cur.int()? as u32;
        cur.expect(b';')?;
        let k = cur.int()? as u32;
        cur.expect(b')')?;
        if !crate::fp::is_prime(p) || n == 0 || d == 0 || k == 0 {
            return Err(ParseError::Syntax {
                position: start,
                message: "B(p;n;d;k) needs p prime and n, d, k >= 1".into(),
            });
        }
        let base: u64 = (p as u64).pow(n);
        return Ok(GroupSpec::Semidirect {
            base_rank: d,
            base_order: base,
            acting_order: base,
            twist: (p as i64).pow(k) + 1,
            form: SemidirectForm::B { p, k },
        });
    }
    match cur.peek() {
        Some(b'C') => {
            cur.pos += 1;
            let n = cur.int()?;
            Ok(GroupSpec::Cyclic(n as u32))
        }
        Some(b'Q') => {
            cur.pos += 1;
            let n = cur.int()?;
            if n == 8 {
                Ok(GroupSpec::Builtin(Builtin::Q8))
            } else {
                Err(ParseError::UnknownBuiltin { position: start, name: format!("Q{}", n) })
            }
        }
        Some(b'D') => {
            cur.pos += 1;
            let n = cur.int()?;
            Ok(GroupSpec::Builtin(Builtin::Dihedral(n as u32)))
        }
        Some(b'S') => {
            cur.pos += 1;
            let n = cur.int()?;
            Ok(GroupSpec::Builtin(Builtin::Sym(n as u32)))
        }
        Some(b'A') => {
            cur.pos += 1;
            let n = cur.int()?;
            Ok(GroupSpec::Builtin(Builtin::Alt(n as u32)))
        }
        _ => {
            let rest: String = cur.src[cur.pos..].chars().take(12).collect();
            Err(cur.err(format!("expected a group atom, found {:?}", rest)))
        }
    }
}

fn parse_presentation(cur: &mut Cursor) -> Result<GroupSpec, ParseError> {
    let mut gens = Vec::new();
    loop {
        cur.skip_ws();
        gens.push(cur.ident()?);
        cur.skip_ws();
        if cur.eat(b',') {
            continue;
        }
        cur.expect(b'|')?;
        break;
    }
    let mut relators = Vec::new();
    loop {
        cur.skip_ws();
        relators.push(parse_word(cur, &gens)?);
        cur.skip_ws();
        if cur.eat(b',') {
            continue;
        }
        cur.expect(b'}')?;
        break;
    }
    Ok(GroupSpec::Presentation { gens, relators })
}

fn parse_word(cur: &mut Cursor, gens: &[String]) -> Result<Word, ParseError> {
    let mut word: Word = Vec::new();
    loop {
        cur.skip_ws();
        let start = cur.pos;
        let name = cur.ident()?;
        let Some(g) = gens.iter().position(|n| *n == name) else {
            return Err(ParseError::Syntax {
                position: start,
                message: format!("unknown generator {:?}", name),
            });
        };
        cur.skip_ws();
        let e = if cur.eat(b'^') {
            cur.skip_ws();
            cur.signed_int()?
        } else if cur.peek().is_some_and(|c| c.is_ascii_digit() || c == b'-') {
            cur.signed_int()?
        } else {
            1
        };
        word.push((g, e));
        cur.skip_ws();
        if cur.eat(b'*') {
            continue;
        }
        // a further letter continues the word without a separator
        if cur.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            continue;
        }
        break;
    }
    Ok(word)
}

/// Parse a standalone word over the given generator names (used by the
/// generator-map override syntax).
pub fn parse_word_str(text: &str, gens: &[String]) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(text);
    let w = parse_word(&mut cur, gens)?;
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(cur.err("trailing input after word".into()));
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy)]
pub struct RealizeConfig {
    pub order_cap: usize,
    pub coset_bound: usize,
}

impl Default for RealizeConfig {
    fn default() -> Self {
        RealizeConfig { order_cap: 1024, coset_bound: 8192 }
    }
}

/// Build the multiplication table for a parsed spec.
pub fn realize(spec: &GroupSpec, config: &RealizeConfig) -> Result<Arc<FiniteGroup>, RealizeError> {
    let predicted = spec.order();
    if predicted > config.order_cap as u128 {
        return Err(RealizeError::OrderCapExceeded { order: predicted, cap: config.order_cap });
    }
    match spec {
        GroupSpec::Cyclic(n) => {
            if *n == 0 {
                return Err(RealizeError::Invalid("C0 is not a group".into()));
            }
            Ok(catalog::cyclic(*n as usize))
        }
        GroupSpec::Builtin(Builtin::Q8) => Ok(catalog::quaternion8()),
        GroupSpec::Builtin(Builtin::Dihedral(n)) => {
            if *n < 2 || n % 2 != 0 {
                return Err(RealizeError::Invalid(format!(
                    "dihedral order must be even and at least 2, got {}",
                    n
                )));
            }
            Ok(catalog::dihedral(*n as usize))
        }
        GroupSpec::Builtin(Builtin::Sym(n)) => match n {
            1 => Ok(catalog::trivial()),
            2..=4 => Ok(catalog::sym(*n as usize)),
            _ => Err(RealizeError::Invalid(format!("S{} is not supported (n <= 4)", n))),
        },
        GroupSpec::Builtin(Builtin::Alt(n)) => match n {
            1 | 2 => Ok(catalog::trivial()),
            3 => Ok(catalog::cyclic(3)),
            4 => Ok(catalog::alt4()),
            _ => Err(RealizeError::Invalid(format!("A{} is not supported (n <= 4)", n))),
        },
        GroupSpec::Product(l, r) => {
            let a = realize(l, config)?;
            let b = realize(r, config)?;
            let (p, _, _) = direct_product(&a, &b)?;
            Ok(p)
        }
        GroupSpec::Semidirect { base_rank, base_order, acting_order, twist, form } => {
            let (p, n) = prime_power(*base_order)
                .ok_or_else(|| RealizeError::Invalid("base order must be a prime power".into()))?;
            let (p2, m) = prime_power(*acting_order)
                .ok_or_else(|| RealizeError::Invalid("acting order must be a prime power".into()))?;
            if p != p2 {
                return Err(RealizeError::Invalid("base and acting primes differ".into()));
            }
            let names = catalog::family_base_names(*base_rank);
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let label = spec.print();
            catalog::semidirect_cyclic_power(&label, p, n, *base_rank, m, *twist, &refs, "x")
                .map_err(|e| match e {
                    GroupError::NotAHomomorphism(msg) => RealizeError::Invalid(msg),
                    other => RealizeError::Group(other),
                })
                .inspect(|_g| {
                    let _ = form;
                })
        }
        GroupSpec::Presentation { gens, relators } => {
            match enumerate_presentation(gens, relators, config.coset_bound) {
                Ok(g) => {
                    if g.order() > config.order_cap {
                        return Err(RealizeError::OrderCapExceeded {
                            order: g.order() as u128,
                            cap: config.order_cap,
                        });
                    }
                    Ok(Arc::new(g))
                }
                Err(EnumerationError::BoundExceeded(b)) => {
                    Err(RealizeError::CosetBoundExceeded(b))
                }
                Err(EnumerationError::Group(e)) => Err(RealizeError::Group(e)),
                Err(e) => Err(RealizeError::Invalid(e.to_string())),
            }
        }
    }
}

fn prime_power(n: u64) -> Option<(u32, u32)> {
    for p in 2..=n {
        if crate::fp::is_prime(p as u32) && n.is_multiple_of(p) {
            let mut m = n;
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p as u32, e)) } else { None };
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_base_cases() {
        assert_eq!(parse_group_spec("C4").unwrap(), GroupSpec::Cyclic(4));
        assert_eq!(parse_group_spec("Q8").unwrap(), GroupSpec::Builtin(Builtin::Q8));
        assert_eq!(parse_group_spec("D8").unwrap(), GroupSpec::Builtin(Builtin::Dihedral(8)));
    }

    #[test]
    fn parses_a2_to_semidirect_node() {
        let spec = parse_group_spec("A2(2;1)").unwrap();
        assert_eq!(
            spec,
            GroupSpec::Semidirect {
                base_rank: 1,
                base_order: 4,
                acting_order: 2,
                twist: -1,
                form: SemidirectForm::A2,
            }
        );
    }

    #[test]
    fn parses_presentation() {
        let spec = parse_group_spec("pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}").unwrap();
        match &spec {
            GroupSpec::Presentation { gens, relators } => {
                assert_eq!(gens, &["g".to_string(), "h".to_string()]);
                assert_eq!(relators.len(), 3);
                assert_eq!(relators[0], vec![(0, 8)]);
                assert_eq!(relators[2], vec![(0, 1), (1, 1), (0, -1), (1, -3)]);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn juxtaposed_exponents_are_allowed() {
        let spec = parse_group_spec("pres{g|g4}").unwrap();
        match spec {
            GroupSpec::Presentation { relators, .. } => assert_eq!(relators[0], vec![(0, 4)]),
            _ => panic!(),
        }
    }

    #[test]
    fn print_round_trips() {
        for text in [
            "C4",
            "Q8",
            "D14",
            "A2(3;2)",
            "B(3;2;1;1)",
            "C2 x C4",
            "Q8 x C2 x C2",
            "pres{g,h|g^8,g^4*h^-4,g*h*g^-1*h^-3}",
        ] {
            let ast = parse_group_spec(text).unwrap();
            let printed = ast.print();
            let reparsed = parse_group_spec(&printed).unwrap();
            assert_eq!(ast, reparsed, "{} -> {}", text, printed);
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_group_spec("Q9") {
            Err(ParseError::UnknownBuiltin { name, .. }) => assert_eq!(name, "Q9"),
            other => panic!("unexpected {:?}", other),
        }
        match parse_group_spec("C4 x") {
            Err(ParseError::Syntax { position, .. }) => assert!(position >= 3),
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_group_spec("").is_err());
    }

    #[test]
    fn realize_examples() {
        let cfg = RealizeConfig::default();
        assert_eq!(realize(&parse_group_spec("C1").unwrap(), &cfg).unwrap().order(), 1);
        let q8 = realize(&parse_group_spec("Q8").unwrap(), &cfg).unwrap();
        let g = q8.generator_by_name("g").unwrap();
        let h = q8.generator_by_name("h").unwrap();
        assert_eq!(q8.pow(g, 4), 0);
        assert_eq!(q8.mul(g, g), q8.mul(h, h));
        assert_eq!(q8.mul(q8.mul(g, h), q8.inv(g)), q8.pow(h, 3));

        let h32 = realize(
            &parse_group_spec("pres{g,h | g^8, g^4*h^-4, g*h*g^-1*h^-3}").unwrap(),
            &cfg,
        )
        .unwrap();
        assert_eq!(h32.order(), 32);

        let sg16 = realize(
            &parse_group_spec("pres{g,h | g^4, h^4, g*h*g^-1*h^-3}").unwrap(),
            &cfg,
        )
        .unwrap();
        assert_eq!(sg16.order(), 16);
    }

    #[test]
    fn realize_respects_the_order_cap() {
        let cfg = RealizeConfig { order_cap: 100, coset_bound: 8192 };
        let err = realize(&parse_group_spec("C101").unwrap(), &cfg);
        assert!(matches!(err, Err(RealizeError::OrderCapExceeded { .. })));
    }

    #[test]
    fn bad_twist_is_rejected() {
        // twist 2 is not a unit mod 4
        let spec = GroupSpec::Semidirect {
            base_rank: 1,
            base_order: 4,
            acting_order: 2,
            twist: 2,
            form: SemidirectForm::A2,
        };
        assert!(matches!(
            realize(&spec, &RealizeConfig::default()),
            Err(RealizeError::Invalid(_))
        ));
    }

    #[test]
    fn a2_iso_to_presented_form() {
        let cfg = RealizeConfig::default();
        let a2 = realize(&parse_group_spec("A2(2;1)").unwrap(), &cfg).unwrap();
        let presented =
            realize(&parse_group_spec("pres{x,y | y^4, x^2, x*y*x^-1*y}").unwrap(), &cfg).unwrap();
        assert!(crate::iso::isomorphic(&a2, &presented));
    }
}
