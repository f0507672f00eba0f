mod common;

use std::collections::BTreeSet;

use chiral_polytope::classify::{construct, Construction, ObjectName};
use chiral_polytope::graph::ColoredGraph;
use chiral_polytope::polytope::{
    canonical_cycle, check_polytopality, colourful_polytope, f_vector, flag_graph, petrie_polygons,
    schlafli_type, two_face_cycles, PolytopeError, ViolationKind,
};

fn edges_of(g: &ColoredGraph) -> Vec<(usize, usize, usize)> {
    g.edges().iter().map(|e| (e.u, e.v, e.color)).collect()
}

fn oracle_f_vector(c: &Construction) -> Vec<usize> {
    let g = c.embedding.graph();
    common::colourful_f_vector(g.n_vertices(), g.n_colors(), &edges_of(g))
}

#[test]
fn f_vectors_match_component_counts() {
    for (name, expected) in [
        (ObjectName::P, vec![8, 16, 12, 4]),
        (ObjectName::Q, vec![8, 16, 12, 4]),
        (ObjectName::Qhat, vec![16, 32, 12, 4]),
        (ObjectName::Hypercube, vec![16, 32, 24, 8]),
    ] {
        let c = construct(name).unwrap();
        assert_eq!(f_vector(&c.polytope), expected, "{name}");
        assert_eq!(oracle_f_vector(&c), expected, "{name}");
    }
}

#[test]
fn facets_of_p_are_cubes() {
    let p = construct(ObjectName::P).unwrap().polytope;
    let bottom = p.minimum().unwrap();
    for f in p.faces_of_rank(3).collect::<Vec<_>>() {
        let cube = p.section(bottom, f).unwrap();
        assert_eq!(f_vector(&cube), vec![8, 12, 6]);
        assert_eq!(schlafli_type(&cube), Some(vec![4, 3]));
        assert!(cube
            .faces_of_rank(2)
            .all(|s| cube.face(s).vertices.len() == 4));
    }
}

#[test]
fn colourful_polytopes_are_polytopal() {
    for name in ObjectName::ALL {
        let c = construct(name).unwrap();
        assert!(check_polytopality(&c.polytope).is_empty(), "{name}");
    }
}

#[test]
fn deleting_a_two_face_breaks_a_diamond() {
    let p = construct(ObjectName::P).unwrap().polytope;
    let square = p.faces_of_rank(2).next().unwrap();
    let broken = p.with_face_removed(square);
    let found = check_polytopality(&broken);
    assert!(found.iter().any(|v| v.kind == ViolationKind::Diamond));
    assert!(flag_graph(&broken).is_err());
}

#[test]
fn invalid_graph_is_rejected_with_diagnostics() {
    let path = ColoredGraph::new(3, 1, [(0, 1, 0), (1, 2, 0)]);
    match colourful_polytope(&path) {
        Err(PolytopeError::InvalidGraph(v)) => assert!(!v.is_empty()),
        other => panic!("expected InvalidGraph, got {other:?}"),
    }
}

#[test]
fn flag_counts() {
    // a flag of a colourful polytope is a base vertex and an order of the colours
    for (name, expected) in [
        (ObjectName::P, 8 * 24),
        (ObjectName::Q, 8 * 24),
        (ObjectName::Qhat, 16 * 24),
        (ObjectName::Hypercube, 16 * 24),
    ] {
        let c = construct(name).unwrap();
        assert_eq!(flag_graph(&c.polytope).unwrap().len(), expected, "{name}");
    }
    let qhat = construct(ObjectName::Qhat).unwrap().polytope;
    let facet = qhat.faces_of_rank(3).next().unwrap();
    let section = qhat.section(qhat.minimum().unwrap(), facet).unwrap();
    assert_eq!(flag_graph(&section).unwrap().len(), 16 * 6);
}

#[test]
fn flag_adjacency_is_an_involution() {
    for name in ObjectName::ALL {
        let fg = flag_graph(&construct(name).unwrap().polytope).unwrap();
        for f in 0..fg.len() {
            for i in 0..4 {
                let g = fg.adjacent[f][i];
                assert_ne!(g, f);
                assert_eq!(fg.adjacent[g][i], f);
                let differ = (0..4)
                    .filter(|&r| fg.flags[f].face(r) != fg.flags[g].face(r))
                    .collect::<Vec<_>>();
                assert_eq!(differ, vec![i]);
            }
        }
    }
}

#[test]
fn schlafli_types() {
    let qhat = construct(ObjectName::Qhat).unwrap().polytope;
    assert_eq!(
        schlafli_type(&construct(ObjectName::P).unwrap().polytope),
        Some(vec![4, 3, 3])
    );
    assert_eq!(schlafli_type(&qhat), Some(vec![8, 3, 3]));
    let facet = qhat.faces_of_rank(3).next().unwrap();
    let section = qhat.section(qhat.minimum().unwrap(), facet).unwrap();
    assert_eq!(schlafli_type(&section), Some(vec![8, 3]));
    assert_eq!(f_vector(&section), vec![16, 24, 6]);
}

#[test]
fn petrie_polygons_of_p_are_the_faces_of_both_chiral_forms() {
    let p = construct(ObjectName::P).unwrap().polytope;
    let q = construct(ObjectName::Q).unwrap().polytope;
    let mirror = construct(ObjectName::QMirror).unwrap().polytope;
    let petrie = petrie_polygons(&p).unwrap();
    let faces_q = two_face_cycles(&q);
    let faces_mirror = two_face_cycles(&mirror);
    assert!(faces_q.is_subset(&petrie));
    assert!(faces_mirror.is_subset(&petrie));
    assert!(faces_q.is_disjoint(&faces_mirror));
    let union: BTreeSet<_> = faces_q.union(&faces_mirror).cloned().collect();
    assert_eq!(petrie, union);
    // and the 2-faces of P are Petrie polygons of Q
    assert!(two_face_cycles(&p).is_subset(&petrie_polygons(&q).unwrap()));
}

#[test]
fn petrie_polygons_use_all_four_directions() {
    // oracle: 4-cycles of K4,4 whose edges run in four distinct directions
    let hemi = construct(ObjectName::P).unwrap();
    let g = hemi.embedding.graph();
    let dir = |a: usize, b: usize| g.edges()[g.edge_index(a, b).unwrap()].color;
    let mut oracle = BTreeSet::new();
    for v0 in 0..4 {
        for v1 in 0..4 {
            for u0 in 4..8 {
                for u1 in 4..8 {
                    if v0 == v1 || u0 == u1 {
                        continue;
                    }
                    let cycle = [v0, u0, v1, u1];
                    let dirs: BTreeSet<_> =
                        (0..4).map(|i| dir(cycle[i], cycle[(i + 1) % 4])).collect();
                    if dirs.len() == 4 {
                        oracle.insert(canonical_cycle(&cycle));
                    }
                }
            }
        }
    }
    assert_eq!(petrie_polygons(&hemi.polytope).unwrap(), oracle);
}

#[test]
fn hypercube_petrie_polygons_are_octagons() {
    let cube = construct(ObjectName::Hypercube).unwrap().polytope;
    let petrie = petrie_polygons(&cube).unwrap();
    // 384 flags, each octagon traversed from 8 flags in 2 directions
    assert_eq!(petrie.len(), 384 / 16);
    assert!(petrie.iter().all(|c| c.len() == 8));
}

#[test]
fn petrie_polygons_need_rank_four() {
    let p = construct(ObjectName::P).unwrap().polytope;
    let facet = p.faces_of_rank(3).next().unwrap();
    let cube = p.section(p.minimum().unwrap(), facet).unwrap();
    assert!(matches!(
        petrie_polygons(&cube),
        Err(PolytopeError::RankMismatch {
            expected: 4,
            got: 3
        })
    ));
}

#[test]
fn json_export_shape() {
    let p = construct(ObjectName::P).unwrap().polytope;
    let value: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
    assert_eq!(value["f_vector"], serde_json::json!([8, 16, 12, 4]));
    assert_eq!(value["flag_count"], 192);
    assert_eq!(value["faces"].as_array().unwrap().len(), 6);
}
