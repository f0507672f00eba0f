//! Coordinates for the hypercube and hemi-hypercube skeletons, their
//! signed-permutation symmetries, the chiral colourings of the projective
//! `K_{4,4}` and the lift to the double cover.
//!
//! Vertex labelling of the hemi-hypercube: each antipodal class is
//! represented by its vector with first coordinate `+1`. Vertices `0..4`
//! (`v0..v3`) have an even number of `-1` entries, vertices `4..8` (`u0..u3`)
//! an odd number; inside each part representatives are ordered
//! lexicographically with `+1` before `-1`. In the double cover, vertex `k`
//! is the representative of hemi-hypercube vertex `k` and vertex `k + 8` is
//! its negative.

pub mod isometry;
pub mod linalg;
pub mod off;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::{self, Color, ColoredGraph, Coloring, Graph, GraphError, Vertex};
use crate::group::{PermutationGroup, VertexPermutation};

pub use isometry::{orientation, rotation_profile, IsometryMatrix};
pub use linalg::RotationProfile;

/// A point of `{-1, +1}^4`.
pub type Point = [i8; 4];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("isometry has determinant -1 and is not a rotation")]
    NotARotation,
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("expected a projective embedding")]
    NotProjective,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A coloured graph with vertices in `{-1, +1}^4`, or in its antipodal
/// quotient when `projective`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: ColoredGraph,
    coords: Vec<Point>,
    directions: Vec<usize>,
    projective: bool,
    index: HashMap<Point, Vertex>,
}

/// Projective representative: first coordinate `+1`.
pub fn canonical_point(x: &Point) -> Point {
    if x[0] < 0 {
        x.map(|t| -t)
    } else {
        *x
    }
}

fn negative_count(x: &Point) -> usize {
    x.iter().filter(|&&t| t < 0).count()
}

/// Coordinates in which `x` and `y` differ.
fn differing(x: &Point, y: &Point) -> Vec<usize> {
    (0..4).filter(|&i| x[i] != y[i]).collect()
}

/// The unique direction `i` and sign `s` with `x` and `s*y` differing exactly
/// in coordinate `i`, if the two points are adjacent.
fn projective_step(x: &Point, y: &Point) -> Option<(usize, i8)> {
    let neg = y.map(|t| -t);
    match (differing(x, y).as_slice(), differing(x, &neg).as_slice()) {
        ([i], _) => Some((*i, 1)),
        (_, [i]) => Some((*i, -1)),
        _ => None,
    }
}

impl EmbeddedGraph {
    fn build(coords: Vec<Point>, edges: Vec<(Vertex, Vertex, usize)>, projective: bool) -> Self {
        let graph = ColoredGraph::new(coords.len(), 4, edges);
        let directions = graph.edges().iter().map(|e| e.color).collect();
        let index = coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        EmbeddedGraph {
            graph,
            coords,
            directions,
            projective,
            index,
        }
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn underlying(&self) -> Graph {
        self.graph.underlying()
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    /// Coordinate direction of each edge, indexed like the graph's edges.
    pub fn directions(&self) -> &[usize] {
        &self.directions
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// The colouring of edges by coordinate direction.
    pub fn direction_coloring(&self) -> Coloring {
        Coloring::new(self.directions.clone(), 4)
    }

    /// The same embedded graph carrying a different colouring.
    pub fn recolored(&self, coloring: &Coloring) -> Result<EmbeddedGraph, GeometryError> {
        let graph = ColoredGraph::from_coloring(&self.underlying(), coloring)?;
        Ok(EmbeddedGraph {
            graph,
            ..self.clone()
        })
    }

    /// Vertex at a point (canonicalised first when projective).
    pub fn vertex_at(&self, x: &Point) -> Option<Vertex> {
        let key = if self.projective {
            canonical_point(x)
        } else {
            *x
        };
        self.index.get(&key).copied()
    }

    /// Checks that every edge joins points differing in exactly one
    /// coordinate (for some choice of representatives when projective) and
    /// that the recorded direction is that coordinate.
    pub fn is_consistent(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .zip(&self.directions)
            .all(|(e, &d)| {
                let (x, y) = (&self.coords[e.u], &self.coords[e.v]);
                if self.projective {
                    projective_step(x, y).map(|(i, _)| i) == Some(d)
                } else {
                    differing(x, y) == [d]
                }
            })
    }

    /// The vertex permutation induced by an isometry, if it maps the vertex
    /// set onto itself.
    pub fn vertex_permutation(&self, m: &IsometryMatrix) -> Option<VertexPermutation> {
        let images: Option<Vec<Vertex>> = self
            .coords
            .iter()
            .map(|x| self.vertex_at(&m.apply(x)))
            .collect();
        images.map(VertexPermutation::new)
    }

    fn candidate_isometries(&self) -> Vec<IsometryMatrix> {
        if self.projective {
            IsometryMatrix::all_projective()
        } else {
            IsometryMatrix::all()
        }
    }
}

/// The hemi-hypercube skeleton `K_{4,4}` in projective 3-space, coloured by
/// direction.
pub fn hemicube_embedding() -> EmbeddedGraph {
    let mut reps: Vec<Point> = (0..8u8)
        .map(|m| [1, sign_bit(m, 2), sign_bit(m, 1), sign_bit(m, 0)])
        .collect();
    reps.sort_by_key(|x| negative_count(x) % 2);
    let index: HashMap<Point, Vertex> = reps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, x) in reps.iter().enumerate() {
        for d in 0..4 {
            let mut y = *x;
            y[d] = -y[d];
            let j = index[&canonical_point(&y)];
            edges.insert((i.min(j), i.max(j), d));
        }
    }
    EmbeddedGraph::build(reps, edges.into_iter().collect(), true)
}

fn sign_bit(m: u8, bit: u8) -> i8 {
    if m >> bit & 1 == 1 {
        -1
    } else {
        1
    }
}

/// The 4-cube skeleton, coloured by direction, labelled as the double cover
/// of [`hemicube_embedding`].
pub fn hypercube_embedding() -> EmbeddedGraph {
    let hemi = hemicube_embedding();
    lift_double_cover(&hemi, &hemi.direction_coloring()).expect("direction colouring lifts")
}

/// Connected components of two-colour subgraphs, i.e. the 2-faces of the
/// colourful polytope, as edge index lists.
pub fn bicolored_components(g: &ColoredGraph) -> Vec<graph::Component> {
    let n = g.n_colors();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let set: BTreeSet<Color> = [a, b].into();
            out.extend(graph::components_by_colorset(g, &set).expect("colours in range"));
        }
    }
    out
}

/// Each colour class uses every coordinate direction exactly once.
pub fn is_transversal(e: &EmbeddedGraph, c: &Coloring) -> bool {
    (0..c.n_colors).all(|color| {
        let mut dirs: Vec<usize> = (0..c.assignment.len())
            .filter(|&i| c.assignment[i] == color)
            .map(|i| e.directions[i])
            .collect();
        dirs.sort_unstable();
        dirs == [0, 1, 2, 3]
    })
}

/// Every 2-face of the direction colouring sees all four colours.
pub fn has_four_colored_faces(e: &EmbeddedGraph, c: &Coloring) -> bool {
    let regular = ColoredGraph::from_coloring(&e.underlying(), &e.direction_coloring())
        .expect("same edge set");
    bicolored_components(&regular).iter().all(|face| {
        let colors: BTreeSet<Color> = face.edges.iter().map(|&i| c.assignment[i]).collect();
        colors.len() == 4
    })
}

/// Which characterising property selects the chiral colourings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiralProperty {
    /// (a): every colour class is transversal to the direction colouring.
    Transversal,
    /// (b): every 2-face of the regular colouring carries all four colours.
    FourColoredFaces,
}

impl ChiralProperty {
    pub fn holds(&self, e: &EmbeddedGraph, c: &Coloring) -> bool {
        match self {
            ChiralProperty::Transversal => is_transversal(e, c),
            ChiralProperty::FourColoredFaces => has_four_colored_faces(e, c),
        }
    }
}

/// Proper matching 4-colourings of the embedded graph with the given property,
/// other than the direction colouring itself.
pub fn colorings_with_property(
    e: &EmbeddedGraph,
    property: ChiralProperty,
    up_to_color_permutation: bool,
) -> Result<Vec<Coloring>, GeometryError> {
    let regular = e.direction_coloring();
    Ok(graph::enumerate_matching_colorings(
        &e.underlying(),
        4,
        |c| property.holds(e, c) && !c.equivalent_to(&regular),
        up_to_color_permutation,
    )?)
}

/// The chiral colourings of the projective `K_{4,4}`, one per colour
/// permutation class, in normal form and lexicographic order.
pub fn derive_chiral_colorings(e: &EmbeddedGraph) -> Result<Vec<Coloring>, GeometryError> {
    if !e.projective {
        return Err(GeometryError::NotProjective);
    }
    colorings_with_property(e, ChiralProperty::Transversal, true)
}

/// A permutation group whose elements carry the isometry inducing them.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub group: PermutationGroup,
    /// `matrices[k]` induces `group.elements()[k]`.
    pub matrices: Vec<IsometryMatrix>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn matrix_of(&self, g: &VertexPermutation) -> Option<&IsometryMatrix> {
        self.group.position(g).map(|k| &self.matrices[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexPermutation, &IsometryMatrix)> {
        self.group.elements().iter().zip(&self.matrices)
    }

    fn from_pairs(degree: usize, mut pairs: Vec<(VertexPermutation, IsometryMatrix)>) -> Self {
        pairs.sort();
        let (perms, matrices): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        SymmetryGroup {
            group: PermutationGroup::from_elements(degree, perms),
            matrices,
        }
    }
}

/// The colour permutation induced by `sigma`, if it maps each colour class of
/// `g` onto a colour class.
pub fn induced_color_map(g: &ColoredGraph, sigma: &VertexPermutation) -> Option<Vec<Color>> {
    let mut fwd = vec![None; g.n_colors()];
    let mut back = vec![None; g.n_colors()];
    for e in g.edges() {
        let image = g.edge_index(sigma.apply(e.u), sigma.apply(e.v))?;
        let d = g.edges()[image].color;
        match (fwd[e.color], back[d]) {
            (None, None) => {
                fwd[e.color] = Some(d);
                back[d] = Some(e.color);
            }
            (Some(x), Some(y)) if x == d && y == e.color => {}
            _ => return None,
        }
    }
    fwd.into_iter().collect()
}

/// Isometries (signed permutations, modulo `±I` when projective) preserving
/// the embedded graph and permuting the colour classes of `c`.
pub fn geometric_symmetry_group(
    e: &EmbeddedGraph,
    c: &Coloring,
) -> Result<SymmetryGroup, GeometryError> {
    let colored = ColoredGraph::from_coloring(&e.underlying(), c)?;
    let pairs = e
        .candidate_isometries()
        .into_iter()
        .filter_map(|m| {
            let sigma = e.vertex_permutation(&m)?;
            induced_color_map(&colored, &sigma).map(|_| (sigma, m))
        })
        .collect();
    Ok(SymmetryGroup::from_pairs(e.coords.len(), pairs))
}

/// Isometries preserving the embedded graph, ignoring colours.
pub fn graph_symmetry_group(e: &EmbeddedGraph) -> SymmetryGroup {
    let uncolored = e.underlying();
    let pairs = e
        .candidate_isometries()
        .into_iter()
        .filter_map(|m| {
            let sigma = e.vertex_permutation(&m)?;
            let preserves = uncolored.edges().iter().all(|&(u, v)| {
                uncolored
                    .edge_index(sigma.apply(u), sigma.apply(v))
                    .is_some()
            });
            preserves.then_some((sigma, m))
        })
        .collect();
    SymmetryGroup::from_pairs(e.coords.len(), pairs)
}

/// The colouring `c` transported along `sigma`: edge `sigma(e)` gets the
/// colour of `e`.
pub fn transport_coloring(g: &Graph, c: &Coloring, sigma: &VertexPermutation) -> Option<Coloring> {
    let mut assignment = vec![0; c.assignment.len()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        assignment[g.edge_index(sigma.apply(u), sigma.apply(v))?] = c.assignment[i];
    }
    Some(Coloring::new(assignment, c.n_colors))
}

/// Lifts a coloured projective embedding to its double cover on `S^3`.
/// Each projective edge lifts to the two Euclidean edges joining antipodal
/// representative pairs; lifted edges inherit the colour.
pub fn lift_double_cover(e: &EmbeddedGraph, c: &Coloring) -> Result<EmbeddedGraph, GeometryError> {
    if !e.projective {
        return Err(GeometryError::NotProjective);
    }
    let colored = ColoredGraph::from_coloring(&e.underlying(), c)?;
    let n = e.coords.len();
    let mut coords = e.coords.clone();
    coords.extend(e.coords.iter().map(|x| x.map(|t| -t)));
    let mut direction_edges = Vec::new();
    let mut colored_edges = Vec::new();
    for edge in colored.edges() {
        let (d, s) = projective_step(&e.coords[edge.u], &e.coords[edge.v])
            .expect("embedded edges join adjacent points");
        let (a, b) = if s > 0 {
            (edge.v, edge.v + n)
        } else {
            (edge.v + n, edge.v)
        };
        for (x, y) in [(edge.u, a), (edge.u + n, b)] {
            direction_edges.push((x, y, d));
            colored_edges.push((x, y, edge.color));
        }
    }
    let mut lifted = EmbeddedGraph::build(coords, direction_edges, false);
    lifted.graph = ColoredGraph::new(2 * n, c.n_colors, colored_edges);
    Ok(lifted)
}

fn check_cycle(e: &EmbeddedGraph, cycle: &[Vertex]) -> Result<Vec<i8>, GeometryError> {
    if cycle.len() < 3 {
        return Err(GeometryError::NotACycle(format!(
            "{} vertices is too short",
            cycle.len()
        )));
    }
    let distinct: BTreeSet<_> = cycle.iter().collect();
    if distinct.len() != cycle.len() {
        return Err(GeometryError::NotACycle("repeated vertex".into()));
    }
    let g = e.underlying();
    (0..cycle.len())
        .map(|i| {
            let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if u >= e.coords.len() || v >= e.coords.len() || g.edge_index(u, v).is_none() {
                return Err(GeometryError::NotACycle(format!(
                    "{u} and {v} are not adjacent"
                )));
            }
            Ok(projective_step(&e.coords[u], &e.coords[v]).map_or(1, |(_, s)| s))
        })
        .collect()
}

/// `Z_2` holonomy of a closed walk in the projective embedding: the product of
/// the signs relating consecutive representatives. `-1` means the walk lifts
/// to a single closed walk of twice the length.
pub fn cycle_holonomy(e: &EmbeddedGraph, cycle: &[Vertex]) -> Result<i8, GeometryError> {
    if !e.projective {
        return Err(GeometryError::NotProjective);
    }
    Ok(check_cycle(e, cycle)?.into_iter().product())
}

/// The lifts of a projective cycle to the double cover (vertex ids as in
/// [`lift_double_cover`]): two cycles of equal length for holonomy `+1`, one
/// of double length for `-1`.
pub fn lift_cycle(e: &EmbeddedGraph, cycle: &[Vertex]) -> Result<Vec<Vec<Vertex>>, GeometryError> {
    if !e.projective {
        return Err(GeometryError::NotProjective);
    }
    let signs = check_cycle(e, cycle)?;
    let n = e.coords.len();
    let mut out = Vec::new();
    let mut covered = BTreeSet::new();
    for start in [cycle[0], cycle[0] + n] {
        if covered.contains(&start) {
            continue;
        }
        let mut lifted = Vec::new();
        let mut cur = start;
        let mut i = 0;
        loop {
            lifted.push(cur);
            covered.insert(cur);
            let sheet_flip = signs[i % cycle.len()] < 0;
            let on_upper = cur < n;
            let next = cycle[(i + 1) % cycle.len()];
            cur = if on_upper != sheet_flip {
                next
            } else {
                next + n
            };
            i += 1;
            if cur == start {
                break;
            }
        }
        out.push(lifted);
    }
    Ok(out)
}

/// Dimension of the affine hull of a set of points, computed exactly.
pub fn affine_rank(points: &[Point]) -> usize {
    let rows: Vec<[i64; 4]> = points.iter().map(|p| p.map(i64::from)).collect();
    linalg::affine_rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hemicube_counts_and_labels() {
        let e = hemicube_embedding();
        assert_eq!(e.coords().len(), 8);
        assert_eq!(e.graph().edges().len(), 16);
        assert!(e.underlying().check_regular(4).is_ok());
        assert!(e.is_consistent());
        assert!(graph::validate(e.graph()).is_empty());
        assert_eq!(e.coords()[0], [1, 1, 1, 1]);
        assert_eq!(e.coords()[4], [1, 1, 1, -1]);
        for (i, x) in e.coords().iter().enumerate() {
            assert_eq!(x[0], 1);
            assert_eq!(negative_count(x) % 2, usize::from(i >= 4));
        }
        // complete bipartite between the parity classes
        for &(u, v) in e.underlying().edges() {
            assert!(u < 4 && v >= 4);
        }
    }

    #[test]
    fn hypercube_counts() {
        let h = hypercube_embedding();
        assert_eq!(h.coords().len(), 16);
        assert_eq!(h.graph().edges().len(), 32);
        assert!(h.is_consistent());
        assert_eq!(h.graph().coloring(), h.direction_coloring());
        for d in 0..4 {
            assert_eq!(h.directions().iter().filter(|&&x| x == d).count(), 8);
        }
        assert!(graph::validate(h.graph()).is_empty());
    }

    #[test]
    fn two_chiral_colourings() {
        let e = hemicube_embedding();
        let chiral = derive_chiral_colorings(&e).unwrap();
        assert_eq!(chiral.len(), 2);
        let by_b = colorings_with_property(&e, ChiralProperty::FourColoredFaces, true).unwrap();
        assert_eq!(chiral, by_b);
        assert!(!is_transversal(&e, &e.direction_coloring()));
    }

    #[test]
    fn holonomy_rejects_back_and_forth() {
        let e = hemicube_embedding();
        assert!(matches!(
            cycle_holonomy(&e, &[0, 4]),
            Err(GeometryError::NotACycle(_))
        ));
        assert!(matches!(
            cycle_holonomy(&e, &[0, 1, 4]),
            Err(GeometryError::NotACycle(_))
        ));
    }

    #[test]
    fn regular_faces_have_trivial_holonomy() {
        let e = hemicube_embedding();
        let p = crate::polytope::colourful_polytope(e.graph()).unwrap();
        for f in p.faces_of_rank(2).collect::<Vec<_>>() {
            let cyc = p.face_cycle(f);
            assert_eq!(cycle_holonomy(&e, &cyc), Ok(1));
            let lifts = lift_cycle(&e, &cyc).unwrap();
            assert_eq!(lifts.len(), 2);
            assert!(lifts.iter().all(|l| l.len() == 4));
        }
    }

    #[test]
    fn graph_symmetries_of_the_hemicube() {
        let e = hemicube_embedding();
        assert_eq!(graph_symmetry_group(&e).order(), 192);
        assert_eq!(graph_symmetry_group(&hypercube_embedding()).order(), 384);
    }

    #[test]
    fn affine_ranks() {
        assert_eq!(affine_rank(&[[1, 1, 1, 1]]), 0);
        assert_eq!(
            affine_rank(&[[1, 1, 1, 1], [1, -1, 1, 1], [-1, -1, 1, 1], [-1, 1, 1, 1]]),
            2
        );
    }
}
