use proptest::prelude::*;
use ultraforest::io::{
    parse_matrix_csv, parse_matrix_json, parse_tree_json, parse_unrooted_json, write_matrix_csv, write_matrix_json,
    write_tree_json, write_unrooted_json,
};
use ultraforest::{
    build_representing_tree, random_space, random_unrooted, space_from_unrooted, unrooted_from_representing,
};

proptest! {
    #[test]
    fn matrix_formats_round_trip(n in 1usize..25, seed in any::<u64>()) {
        let s = random_space(n, seed);
        prop_assert_eq!(parse_matrix_csv(&write_matrix_csv(&s)).unwrap(), s.clone());
        prop_assert_eq!(parse_matrix_json(&write_matrix_json(&s)).unwrap(), s);
    }

    #[test]
    fn tree_json_round_trips(n in 1usize..25, seed in any::<u64>()) {
        let t = build_representing_tree(&random_space(n, seed));
        prop_assert_eq!(parse_tree_json(&write_tree_json(&t)).unwrap().to_nested(), t.to_nested());
    }

    #[test]
    fn unrooted_json_round_trips(n in 1usize..25, seed in any::<u64>()) {
        let u = random_unrooted(n, seed);
        prop_assert_eq!(parse_unrooted_json(&write_unrooted_json(&u)).unwrap(), u);
    }

    #[test]
    fn unrooted_chain_reproduces_generated_space(n in 2usize..25, seed in any::<u64>()) {
        let space = space_from_unrooted(&random_unrooted(n, seed)).unwrap();
        let tree = build_representing_tree(&space);
        let back = unrooted_from_representing(&tree).unwrap();
        let again = space_from_unrooted(&back).unwrap().reorder(space.points()).unwrap();
        prop_assert_eq!(again, space);
    }
}
