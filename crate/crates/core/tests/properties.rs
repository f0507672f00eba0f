mod common;

use proptest::prelude::*;
use proptest::sample::subsequence;

use chiral_polytope::classify::chiral_pair;
use chiral_polytope::geometry::{cycle_holonomy, hemicube_embedding, IsometryMatrix};
use chiral_polytope::graph::{colored_isomorphism, validate, ColoredGraph};
use chiral_polytope::group::color_respecting_automorphisms;
use chiral_polytope::polytope::canonical_cycle;

/// A cycle of K4,4 alternating between the parts, with `2k` vertices.
fn k44_cycle() -> impl Strategy<Value = Vec<usize>> {
    (2usize..=4).prop_flat_map(|k| {
        (
            subsequence((0..4).collect::<Vec<_>>(), k).prop_shuffle(),
            subsequence((4..8).collect::<Vec<_>>(), k).prop_shuffle(),
        )
            .prop_map(|(vs, us)| vs.into_iter().zip(us).flat_map(|(v, u)| [v, u]).collect())
    })
}

fn rotated(cycle: &[usize], r: usize, reverse: bool) -> Vec<usize> {
    let n = cycle.len();
    let mut out: Vec<usize> = (0..n).map(|i| cycle[(i + r) % n]).collect();
    if reverse {
        out.reverse();
    }
    out
}

proptest! {
    #[test]
    fn holonomy_is_invariant_under_rotation_and_reversal(
        cycle in k44_cycle(),
        r in 0usize..8,
        reverse: bool,
    ) {
        let hemi = hemicube_embedding();
        let h = cycle_holonomy(&hemi, &cycle).unwrap();
        let moved = rotated(&cycle, r % cycle.len(), reverse);
        prop_assert_eq!(cycle_holonomy(&hemi, &moved).unwrap(), h);
        let walked = common::lifted_length(hemi.coords(), &cycle);
        prop_assert_eq!(walked, if h == 1 { cycle.len() } else { 2 * cycle.len() });
    }

    #[test]
    fn canonical_cycle_is_invariant(cycle in k44_cycle(), r in 0usize..8, reverse: bool) {
        let moved = rotated(&cycle, r % cycle.len(), reverse);
        prop_assert_eq!(canonical_cycle(&moved), canonical_cycle(&cycle));
    }

    #[test]
    fn relabelled_chiral_graph_stays_isomorphic(
        vertex_map in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        color_map in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let hemi = hemicube_embedding();
        let q = ColoredGraph::from_coloring(&hemi.underlying(), &chiral_pair().unwrap()[0]).unwrap();
        let relabelled = ColoredGraph::new(
            8,
            4,
            q.edges().iter().map(|e| (vertex_map[e.u], vertex_map[e.v], color_map[e.color])),
        );
        prop_assert!(validate(&relabelled).is_empty());
        let iso = colored_isomorphism(&q, &relabelled).unwrap();
        prop_assert!(iso.is_valid(&q, &relabelled));
        prop_assert!(iso.inverse().is_valid(&relabelled, &q));
        prop_assert_eq!(color_respecting_automorphisms(&relabelled).group.order(), 192);
    }

    #[test]
    fn isometry_products_act_by_composition(a in 0usize..384, b in 0usize..384) {
        let all = IsometryMatrix::all();
        let (a, b) = (all[a], all[b]);
        let ab = a.mul(&b);
        prop_assert_eq!(ab.determinant(), a.determinant() * b.determinant());
        for x in [[1, 1, 1, 1], [1, -1, 1, -1], [-1, -1, -1, 1]] {
            prop_assert_eq!(ab.apply(&x), a.apply(&b.apply(&x)));
        }
    }
}
