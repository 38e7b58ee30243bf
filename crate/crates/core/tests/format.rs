mod common;

use hspec::{parse_hypergraph, serialize_hypergraph, Error};
use proptest::prelude::*;

use common::arb_hypergraph;

#[test]
fn comments_and_blank_lines_are_ignored() {
    let g =
        parse_hypergraph("# triangle plus a triple\n\nn 4\ne 0 1\n  # inline\ne 2 1 3\n").unwrap();
    assert_eq!(g.n(), 4);
    assert_eq!(g.num_edges(), 2);
    assert_eq!(serialize_hypergraph(&g), "n 4\ne 0 1\ne 1 2 3\n");
}

#[test]
fn malformed_inputs_are_rejected_with_a_line() {
    for (text, line) in [
        ("e 0 1\nn 3\n", 1),
        ("n 3\nn 3\n", 2),
        ("n 3\ne 0 x\n", 2),
        ("n 3\nq 0 1\n", 2),
    ] {
        match parse_hypergraph(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(
        parse_hypergraph("n 3\ne 0 3\n"),
        Err(Error::VertexOutOfRange { .. })
    ));
    assert!(matches!(
        parse_hypergraph("n 3\ne 0 1\ne 1 0\n"),
        Err(Error::DuplicateEdge { .. })
    ));
    assert!(matches!(parse_hypergraph("n 0\n"), Err(Error::NoVertices)));
}

proptest! {
    #[test]
    fn serialization_round_trips(g in arb_hypergraph(9, &[2, 3, 4, 5])) {
        let text = serialize_hypergraph(&g);
        let back = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_hypergraph(&back), text);
    }

    #[test]
    fn parsing_is_order_insensitive(g in arb_hypergraph(8, &[2, 3]), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let text = serialize_hypergraph(&g);
        let mut lines: Vec<&str> = text.lines().skip(1).collect();
        lines.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = format!("n {}\n{}\n", g.n(), lines.join("\n"));
        prop_assert_eq!(parse_hypergraph(&shuffled).unwrap(), g);
    }
}
