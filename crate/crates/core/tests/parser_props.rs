//! Property test: every AST the grammar can produce survives a round trip
//! through the canonical printer.

use cohoforge_core::parser::{parse_group_spec, Builtin, GroupSpec, SemidirectForm};
use proptest::prelude::*;

fn word_strategy() -> impl Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((0usize..2, prop_oneof![Just(-3i64), Just(-1), Just(1), Just(2), Just(4)]), 1..4)
}

fn leaf_strategy() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u32..64).prop_map(GroupSpec::Cyclic),
        Just(GroupSpec::Builtin(Builtin::Q8)),
        (1u32..12).prop_map(|m| GroupSpec::Builtin(Builtin::Dihedral(2 * m))),
        (2u32..5).prop_map(|n| GroupSpec::Builtin(Builtin::Sym(n))),
        (3u32..5).prop_map(|n| GroupSpec::Builtin(Builtin::Alt(n))),
        (1u32..4, 1u32..3).prop_map(|(n, d)| GroupSpec::Semidirect {
            base_rank: d,
            base_order: 1u64 << n,
            acting_order: 2,
            twist: -1,
            form: SemidirectForm::A2,
        }),
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1u32..3, 1u32..3, 1u32..3).prop_map(
            |(p, n, d, k)| GroupSpec::Semidirect {
                base_rank: d,
                base_order: (p as u64).pow(n),
                acting_order: (p as u64).pow(n),
                twist: (p as i64).pow(k) + 1,
                form: SemidirectForm::B { p, k },
            }
        ),
        proptest::collection::vec(word_strategy(), 1..4).prop_map(|relators| {
            GroupSpec::Presentation {
                gens: vec!["g".to_string(), "h".to_string()],
                relators,
            }
        }),
    ]
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    // products associate to the left in the parser, so generate them that way
    proptest::collection::vec(leaf_strategy(), 1..4).prop_map(|leaves| {
        let mut it = leaves.into_iter();
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, next| GroupSpec::Product(Box::new(acc), Box::new(next)))
    })
}

proptest! {
    #[test]
    fn printer_round_trips(spec in spec_strategy()) {
        let printed = spec.print();
        let reparsed = parse_group_spec(&printed)
            .unwrap_or_else(|e| panic!("failed to reparse {:?}: {}", printed, e));
        prop_assert_eq!(spec, reparsed);
    }
}
