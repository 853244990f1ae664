//! End-to-end runs through the public API: text formats in, constructions, oracles.

use nilred::graphs::{
    encode_simple, graph_iso, multigraph_iso, read_graph, read_multigraph, write_graph, write_multigraph,
};
use nilred::group2graph::{build_gamma, read_cayley, write_cayley, CayleyGroup};
use nilred::halgebra::{build_h_algebra, check_map_witness, recover_standard_form, scramble_basis};
use nilred::hgroup::{f2_map, HGroup};
use nilred::modarith::Prime;

#[test]
fn graph_text_to_group_and_back_to_graph() {
    let p = Prime::new(3).unwrap();
    let g = read_graph("3\n2 1\n\n3 2\n").unwrap();
    assert_eq!(write_graph(&g), "3\n1 2\n2 3\n");

    let h = HGroup::from_graph(&g, p);
    let renewed = h.reconstruct_algebra();
    assert!(check_map_witness(&f2_map(&h), h.base().table(), &renewed));

    // the renewed algebra, scrambled, still recovers a graph isomorphic to the input
    let scrambled = scramble_basis(&renewed, 11).unwrap();
    let (recovered, map) = recover_standard_form(&scrambled, 3).unwrap().unwrap();
    assert!(graph_iso(&g, &recovered).is_some());
    assert!(check_map_witness(&map, build_h_algebra(&recovered, p).table(), &scrambled));
}

#[test]
fn cayley_text_to_multigraph_text() {
    let z4 = read_cayley(&write_cayley(&CayleyGroup::cyclic(4))).unwrap();
    let gamma = build_gamma(&z4).unwrap();
    let reread = read_multigraph(&write_multigraph(&gamma)).unwrap();
    assert_eq!(reread, gamma);

    let relabeled = z4.relabel(&[0, 3, 2, 1]).unwrap();
    let other = build_gamma(&relabeled).unwrap();
    let b = multigraph_iso(&gamma, &other).unwrap();
    assert!(gamma.is_isomorphism(&other, &b));
    assert!(graph_iso(&encode_simple(&gamma).unwrap(), &encode_simple(&other).unwrap()).is_some());
}
