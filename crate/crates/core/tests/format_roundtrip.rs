use chooselab_core::format::{emit_instance, emit_report, parse_instance, parse_report};
use chooselab_core::census::{sample_converse, Profile};
use chooselab_core::constructions::unique4_graph;
use chooselab_core::{ColorSet, Graph, ListAssignment};
use proptest::prelude::*;

proptest! {
    #[test]
    fn instance_round_trip(
        sizes in prop::collection::vec(1usize..=4, 1..=4),
        masks in prop::collection::vec(1u64..(1 << 12), 16),
        del in prop::collection::vec(any::<bool>(), 64),
    ) {
        let g = Graph::multipartite(&sizes).unwrap();
        let edges: Vec<_> = g.edges().collect();
        let g = g.delete_edges(edges.iter().zip(&del).filter(|(_, &d)| d).map(|(&e, _)| e)).unwrap();
        let l = ListAssignment::from_lists(masks[..g.n()].iter().map(|&m| ColorSet(m)).collect());
        let text = emit_instance(&g, &l);
        let (g2, l2) = parse_instance(&text).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(&l2, &l);
        prop_assert_eq!(emit_instance(&g2, &l2), text);
    }
}

#[test]
fn sampled_report_round_trip() {
    let r = sample_converse(&unique4_graph(4).unwrap(), 4, Profile::Unique4Converse, 2000, 5).unwrap();
    let text = emit_report(&r);
    assert!(text.contains("seed: 5\n"));
    assert_eq!(parse_report(&text).unwrap(), r);
}
