mod common;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_rational::Ratio;

use chiral_polytope::classify::{
    chiral_pair, construct, enantiomorph_check, Enantiomorphy, ObjectName,
};
use chiral_polytope::geometry::linalg::{determinant, rank};
use chiral_polytope::geometry::off::{read_off, write_off};
use chiral_polytope::geometry::{
    affine_rank, bicolored_components, colorings_with_property, cycle_holonomy,
    derive_chiral_colorings, geometric_symmetry_group, graph_symmetry_group, hemicube_embedding,
    hypercube_embedding, lift_cycle, lift_double_cover, orientation, rotation_profile,
    ChiralProperty, GeometryError, IsometryMatrix,
};
use chiral_polytope::graph::Coloring;
use chiral_polytope::RotationProfile;

#[test]
fn hemicube_counts() {
    let hemi = hemicube_embedding();
    let g = hemi.underlying();
    assert_eq!((g.n_vertices(), g.edges().len()), (8, 16));
    assert!((0..8).all(|v| g.degree(v) == 4));
    // complete bipartite between the parity classes
    for &(u, v) in g.edges() {
        assert!(u < 4 && v >= 4);
    }
    assert!(hemi.is_consistent());
    assert!(hemi.coords().iter().all(|x| x[0] == 1));
}

#[test]
fn hypercube_counts() {
    let cube = hypercube_embedding();
    assert_eq!((cube.coords().len(), cube.graph().edges().len()), (16, 32));
    assert!(cube.is_consistent());
    let distinct: BTreeSet<_> = cube.coords().iter().collect();
    assert_eq!(distinct.len(), 16);
}

#[test]
fn chiral_colourings_match_latin_square_oracle() {
    let hemi = hemicube_embedding();
    let found = derive_chiral_colorings(&hemi).unwrap();
    assert_eq!(found.len(), 2);
    // oracle: Latin squares (colour of v_i u_j) transversal to the directions
    let g = hemi.graph();
    let dir = |i: usize, j: usize| g.edges()[g.edge_index(i, 4 + j).unwrap()].color;
    let transversal = common::latin_squares()
        .into_iter()
        .filter(|sq| {
            (0..4).all(|c| {
                let dirs: BTreeSet<usize> = (0..4)
                    .flat_map(|i| (0..4).map(move |j| (i, j)))
                    .filter(|&(i, j)| sq[i][j] == c)
                    .map(|(i, j)| dir(i, j))
                    .collect();
                dirs.len() == 4
            })
        })
        .count();
    let raw = colorings_with_property(&hemi, ChiralProperty::Transversal, false).unwrap();
    assert_eq!(raw.len(), transversal);
    assert_eq!(raw.len(), 2 * 24);
}

#[test]
fn both_properties_select_the_same_colourings() {
    let hemi = hemicube_embedding();
    for up_to in [false, true] {
        assert_eq!(
            colorings_with_property(&hemi, ChiralProperty::Transversal, up_to).unwrap(),
            colorings_with_property(&hemi, ChiralProperty::FourColoredFaces, up_to).unwrap()
        );
    }
}

#[test]
fn chiral_bicoloured_cycles_are_squares() {
    for c in chiral_pair().unwrap() {
        let g = hemicube_embedding().recolored(&c).unwrap();
        let faces = bicolored_components(g.graph());
        assert_eq!(faces.len(), 12);
        assert!(faces.iter().all(|f| f.edges.len() == 4));
    }
}

#[test]
fn symmetry_group_orders() {
    let hemi = hemicube_embedding();
    assert_eq!(
        geometric_symmetry_group(&hemi, &hemi.direction_coloring())
            .unwrap()
            .order(),
        192
    );
    let q = geometric_symmetry_group(&hemi, &chiral_pair().unwrap()[0]).unwrap();
    assert_eq!(q.order(), 96);
    assert!(q.matrices.iter().all(|m| orientation(m) == 1));
    assert_eq!(graph_symmetry_group(&hemi).order(), 192);
    assert_eq!(graph_symmetry_group(&hypercube_embedding()).order(), 384);
    let qhat = construct(ObjectName::Qhat).unwrap();
    assert_eq!(
        geometric_symmetry_group(&qhat.embedding, &qhat.coloring())
            .unwrap()
            .order(),
        192
    );
}

#[test]
fn symmetry_matrices_induce_their_permutations() {
    let qhat = construct(ObjectName::Qhat).unwrap();
    let sym = qhat.symmetry_group();
    for (sigma, m) in sym.iter() {
        for (v, x) in qhat.embedding.coords().iter().enumerate() {
            assert_eq!(qhat.embedding.coords()[sigma.apply(v)], m.apply(x));
        }
    }
}

#[test]
fn orientation_examples() {
    assert_eq!(orientation(&IsometryMatrix::identity()), 1);
    assert_eq!(orientation(&IsometryMatrix::diagonal([-1; 4])), 1);
    assert_eq!(orientation(&IsometryMatrix::diagonal([-1, 1, 1, 1])), -1);
}

#[test]
fn rotation_profiles() {
    assert!(rotation_profile(&IsometryMatrix::identity())
        .unwrap()
        .is_identity(1e-12));
    // quarter turn of the central cube about the x3 axis
    let quarter = IsometryMatrix::new([0, 2, 1, 3], [1, 1, -1, 1]);
    let p: RotationProfile = rotation_profile(&quarter).unwrap();
    assert!(p.is_simple(1e-12));
    assert!(p.approx_eq([FRAC_PI_2, 0.0], 1e-12));
    assert_eq!(
        rotation_profile(&IsometryMatrix::diagonal([1, 1, 1, -1])),
        Err(GeometryError::NotARotation)
    );
}

#[test]
fn qhat_face_stabiliser_is_a_double_rotation() {
    let qhat = construct(ObjectName::Qhat).unwrap();
    let poly = &qhat.polytope;
    let sym = qhat.symmetry_group();
    let facet = poly.faces_of_rank(3).next().unwrap();
    let square = poly.faces_of_rank(2).find(|&f| poly.leq(f, facet)).unwrap();
    let stab =
        chiral_polytope::group::chain_stabilizer(poly, &sym.group, &[square, facet]).unwrap();
    for g in stab.elements().iter().filter(|g| g.order() == 8) {
        let m = sym.matrix_of(g).unwrap();
        assert_eq!(m.order(), 8);
        let profile = rotation_profile(m).unwrap();
        assert!(profile.approx_eq([FRAC_PI_4, 3.0 * FRAC_PI_4], 1e-9));
        // eigenvalue check on the matrix itself: M^4 = -I
        let mut p = IsometryMatrix::identity();
        for _ in 0..4 {
            p = p.mul(m);
        }
        assert_eq!(p, IsometryMatrix::diagonal([-1; 4]));
    }
}

#[test]
fn lifting_doubles_counts() {
    let hemi = hemicube_embedding();
    let regular = lift_double_cover(&hemi, &hemi.direction_coloring()).unwrap();
    assert_eq!(regular, hypercube_embedding());
    assert_eq!(regular.graph().coloring(), regular.direction_coloring());
    for c in chiral_pair().unwrap() {
        let lifted = lift_double_cover(&hemi, &c).unwrap();
        assert_eq!(
            (lifted.coords().len(), lifted.graph().edges().len()),
            (16, 32)
        );
        assert!(bicolored_components(lifted.graph())
            .iter()
            .all(|f| f.edges.len() == 8));
    }
    assert_eq!(
        lift_double_cover(&hypercube_embedding(), &Coloring::new(vec![0; 32], 4)),
        Err(GeometryError::NotProjective)
    );
}

#[test]
fn holonomy_against_walk_oracle() {
    let hemi = hemicube_embedding();
    for (name, expected) in [
        (ObjectName::P, 1),
        (ObjectName::Q, -1),
        (ObjectName::QMirror, -1),
    ] {
        let c = construct(name).unwrap();
        for f in c.polytope.faces_of_rank(2).collect::<Vec<_>>() {
            let cycle = c.polytope.face_cycle(f);
            assert_eq!(cycle_holonomy(&hemi, &cycle).unwrap(), expected, "{name}");
            let walked = common::lifted_length(hemi.coords(), &cycle);
            assert_eq!(walked, if expected == 1 { 4 } else { 8 });
            let lifts = lift_cycle(&hemi, &cycle).unwrap();
            let lengths: Vec<usize> = lifts.iter().map(Vec::len).collect();
            assert_eq!(lengths, if expected == 1 { vec![4, 4] } else { vec![8] });
        }
    }
}

#[test]
fn degenerate_walks_are_rejected() {
    let hemi = hemicube_embedding();
    assert!(matches!(
        cycle_holonomy(&hemi, &[0, 4]),
        Err(GeometryError::NotACycle(_))
    ));
    assert!(matches!(
        cycle_holonomy(&hemi, &[0, 1, 4]),
        Err(GeometryError::NotACycle(_))
    ));
}

#[test]
fn affine_ranks_agree_with_rational_elimination() {
    let qhat = construct(ObjectName::Qhat).unwrap();
    let cube = construct(ObjectName::Hypercube).unwrap();
    for (c, expected) in [(&qhat, 4), (&cube, 2)] {
        for f in c.polytope.faces_of_rank(2).collect::<Vec<_>>() {
            let pts: Vec<_> = c
                .polytope
                .face(f)
                .vertices
                .iter()
                .map(|&v| c.embedding.coords()[v])
                .collect();
            assert_eq!(affine_rank(&pts), expected);
            assert_eq!(common::rational_affine_rank(&pts), expected);
        }
    }
    assert_eq!(affine_rank(&[[1, 1, 1, 1]]), 0);
}

#[test]
fn linear_algebra_over_rationals() {
    let half = Ratio::new(1i64, 2);
    let m = [
        [half, Ratio::from_integer(1), Ratio::from_integer(0)],
        [
            Ratio::from_integer(2),
            Ratio::from_integer(-1),
            Ratio::new(3, 4),
        ],
        [
            Ratio::from_integer(0),
            Ratio::from_integer(5),
            Ratio::from_integer(1),
        ],
    ];
    // cofactor expansion along the first row
    let expected = half * (Ratio::from_integer(-1) - Ratio::new(15, 4)) - (Ratio::from_integer(2));
    assert_eq!(determinant(&m), expected);
    assert_eq!(rank(&m), 3);
    let singular = [
        [half, half],
        [Ratio::from_integer(1), Ratio::from_integer(1)],
    ];
    assert_eq!(rank(&singular), 1);
    for mat in IsometryMatrix::all().iter().step_by(5) {
        let rows = mat
            .to_rows()
            .map(|r| r.map(|x| Ratio::from_integer(i64::from(x))));
        assert_eq!(
            determinant(&rows),
            Ratio::from_integer(i64::from(mat.determinant()))
        );
    }
}

#[test]
fn enantiomorph_verdicts() {
    let hemi = hemicube_embedding();
    let [a, b] = chiral_pair().unwrap();
    assert_eq!(
        enantiomorph_check(&a, &b, &hemi),
        Enantiomorphy::Enantiomorphic
    );
    assert_eq!(
        enantiomorph_check(&b, &a, &hemi),
        Enantiomorphy::Enantiomorphic
    );
    assert_eq!(enantiomorph_check(&a, &a, &hemi), Enantiomorphy::SameForm);
    assert_eq!(
        enantiomorph_check(&hemi.direction_coloring(), &a, &hemi),
        Enantiomorphy::Neither
    );
}

#[test]
fn off_round_trip() {
    for name in ObjectName::ALL {
        let c = construct(name).unwrap();
        let text = c.to_off().unwrap();
        let mesh = read_off(&text).unwrap();
        if name.is_projective() {
            assert_eq!(mesh.antipodal, Some(8));
            assert_eq!(mesh.vertices.len(), 16);
            for i in 0..8 {
                assert_eq!(mesh.vertices[i + 8], mesh.vertices[i].map(|t| -t));
            }
        } else {
            assert_eq!(mesh.antipodal, None);
            let again = write_off(&c.polytope, c.embedding.coords(), None);
            assert_eq!(again, text);
        }
        assert!(mesh.vertices.iter().flatten().all(|x| x.abs() == 1));
    }
    assert!(read_off("OFF\n").is_err());
}
