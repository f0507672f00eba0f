//! Permutation groups acting on graph vertices, and their induced actions on
//! the faces and flags of a colourful polytope.
//!
//! Every group in this crate has at most a few hundred elements, so groups are
//! always fully materialised.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{self, Color, ColoredGraph, Vertex};
use crate::polytope::{flag_graph, FaceId, FaceKey, Flag, FlagGraph, Polytope, PolytopeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("permutation is not an automorphism: face {face} has no image")]
    NotAutomorphism { face: FaceId },
    #[error("faces {0} and {1} of the chain are not incident")]
    NotAChain(FaceId, FaceId),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// A permutation of `0..n`, stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexPermutation {
    images: Vec<Vertex>,
}

impl VertexPermutation {
    /// Panics if `images` is not a bijection of `0..images.len()`.
    pub fn new(images: Vec<Vertex>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(
                x < images.len() && !seen[x],
                "not a permutation: {images:?}"
            );
            seen[x] = true;
        }
        VertexPermutation { images }
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[Vertex]]) -> Self {
        let mut images: Vec<Vertex> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        VertexPermutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vertex] {
        &self.images
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.images[v]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut images = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            images[b] = a;
        }
        VertexPermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A finite permutation group with all of its elements listed in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<VertexPermutation>,
    elements: Vec<VertexPermutation>,
}

/// Closure of `generators` under composition, by breadth-first multiplication.
pub fn closure(degree: usize, generators: &[VertexPermutation]) -> PermutationGroup {
    let id = VertexPermutation::identity(degree);
    let mut seen: HashSet<VertexPermutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<_> = seen.into_iter().collect();
    elements.sort();
    PermutationGroup {
        degree,
        generators: generators.to_vec(),
        elements,
    }
}

impl PermutationGroup {
    /// Wraps a list of elements already known to be closed, picking a small
    /// generating set greedily.
    pub fn from_elements(degree: usize, mut elements: Vec<VertexPermutation>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators: Vec<VertexPermutation> = Vec::new();
        let mut span: HashSet<VertexPermutation> =
            HashSet::from([VertexPermutation::identity(degree)]);
        // try elements of large order first so the generating set stays small
        let mut by_order: Vec<&VertexPermutation> = elements.iter().collect();
        by_order.sort_by_key(|g| std::cmp::Reverse(g.order()));
        for g in by_order {
            if span.len() == elements.len() {
                break;
            }
            if !span.contains(g) {
                generators.push(g.clone());
                span = closure(degree, &generators).elements.into_iter().collect();
            }
        }
        debug_assert_eq!(span.len(), elements.len(), "elements are not closed");
        PermutationGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[VertexPermutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[VertexPermutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &VertexPermutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn position(&self, g: &VertexPermutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    /// Checks closure under composition and inverses.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inverse())
                && self.elements.iter().all(|b| self.contains(&a.compose(b)))
        })
    }

    /// The subgroup of elements satisfying `keep`; `keep` must select a subgroup.
    pub fn subgroup<F: Fn(&VertexPermutation) -> bool>(&self, keep: F) -> PermutationGroup {
        PermutationGroup::from_elements(
            self.degree,
            self.elements.iter().filter(|g| keep(g)).cloned().collect(),
        )
    }

    /// Pointwise stabiliser of a vertex set.
    pub fn pointwise_stabilizer(&self, points: &[Vertex]) -> PermutationGroup {
        self.subgroup(|g| points.iter().all(|&p| g.apply(p) == p))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|g| g.order() == self.order())
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<&VertexPermutation> {
        self.elements.iter().find(|g| g.order() == self.order())
    }

    pub fn orbit(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.elements.iter().map(|g| g.apply(v)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn to_export(&self) -> GroupExport {
        GroupExport {
            degree: self.degree,
            order: self.order(),
            generators: self.generators.iter().map(|g| g.images.clone()).collect(),
        }
    }
}

/// JSON shape of a group: generator image arrays and the element count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupExport {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<Vec<Vertex>>,
}

/// Colour-respecting automorphisms, each with the colour permutation it induces.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub group: PermutationGroup,
    /// `color_maps[k]` belongs to `group.elements()[k]`.
    pub color_maps: Vec<Vec<Color>>,
}

/// All automorphisms of `g` that map every colour class onto a colour class.
pub fn color_respecting_automorphisms(g: &ColoredGraph) -> AutomorphismGroup {
    let isos = graph::colored_isomorphisms(g, g, false);
    let (perms, color_maps): (Vec<_>, Vec<_>) = isos
        .into_iter()
        .map(|iso| (VertexPermutation::new(iso.vertex_map), iso.color_map))
        .unzip();
    // colored_isomorphisms returns sorted vertex maps, matching group order
    AutomorphismGroup {
        group: PermutationGroup::from_elements(g.n_vertices(), perms),
        color_maps,
    }
}

/// The permutation of face ids induced by a vertex permutation.
pub fn induced_face_action(
    p: &Polytope,
    sigma: &VertexPermutation,
) -> Result<Vec<FaceId>, GroupError> {
    let graph = p.graph();
    let edge_image = |e: usize| -> Option<usize> {
        let edge = graph.edges()[e];
        graph.edge_index(sigma.apply(edge.u), sigma.apply(edge.v))
    };
    p.faces()
        .iter()
        .enumerate()
        .map(|(id, face)| {
            let edges: Option<Vec<usize>> = face.edges.iter().map(|&e| edge_image(e)).collect();
            let vertices = face.vertices.iter().map(|&v| sigma.apply(v)).collect();
            edges
                .and_then(|edges| p.find(&FaceKey::new(face.rank, vertices, edges)))
                .ok_or(GroupError::NotAutomorphism { face: id })
        })
        .collect()
}

/// Orbits of a group on the flags of a polytope.
#[derive(Clone, Debug)]
pub struct FlagOrbits {
    pub flags: FlagGraph,
    /// Orbit id of each flag; ids are ordered by least member.
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

impl FlagOrbits {
    /// Every pair of adjacent flags lies in different orbits.
    pub fn adjacency_split(&self) -> bool {
        self.flags
            .adjacent
            .iter()
            .enumerate()
            .all(|(f, row)| row.iter().all(|&g| self.orbit_of[f] != self.orbit_of[g]))
    }
}

pub fn flag_orbits(p: &Polytope, g: &PermutationGroup) -> Result<FlagOrbits, GroupError> {
    let flags = flag_graph(p)?;
    let actions: Vec<Vec<FaceId>> = g
        .elements()
        .iter()
        .map(|s| induced_face_action(p, s))
        .collect::<Result<_, _>>()?;
    let mut orbit_of = vec![usize::MAX; flags.len()];
    let mut orbits = Vec::new();
    for start in 0..flags.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = BTreeSet::new();
        for action in &actions {
            let image = Flag(flags.flags[start].0.iter().map(|&f| action[f]).collect());
            let k = flags
                .index_of(&image)
                .expect("automorphisms map flags to flags");
            orbit_of[k] = id;
            members.insert(k);
        }
        orbits.push(members.into_iter().collect());
    }
    Ok(FlagOrbits {
        flags,
        orbit_of,
        orbits,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Regular,
    Chiral,
    Other,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Regular => "regular",
            Verdict::Chiral => "chiral",
            Verdict::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryClassification {
    pub verdict: Verdict,
    pub flag_orbit_count: usize,
    pub adjacency_split: bool,
    pub orbit_sizes: Vec<usize>,
}

/// Regular iff one flag orbit; chiral iff two orbits with every pair of
/// adjacent flags split between them.
pub fn classify_symmetry(
    p: &Polytope,
    g: &PermutationGroup,
) -> Result<SymmetryClassification, GroupError> {
    let orbits = flag_orbits(p, g)?;
    let count = orbits.orbits.len();
    let split = orbits.adjacency_split();
    let verdict = match count {
        1 => Verdict::Regular,
        2 if split => Verdict::Chiral,
        _ => Verdict::Other,
    };
    Ok(SymmetryClassification {
        verdict,
        flag_orbit_count: count,
        adjacency_split: split,
        orbit_sizes: orbits.orbits.iter().map(Vec::len).collect(),
    })
}

/// The subgroup fixing every face of `chain` setwise.
pub fn chain_stabilizer(
    p: &Polytope,
    g: &PermutationGroup,
    chain: &[FaceId],
) -> Result<PermutationGroup, GroupError> {
    for (i, &a) in chain.iter().enumerate() {
        for &b in &chain[i + 1..] {
            if !p.incident(a, b) {
                return Err(GroupError::NotAChain(a, b));
            }
        }
    }
    let mut kept = Vec::new();
    for s in g.elements() {
        let action = induced_face_action(p, s)?;
        if chain.iter().all(|&f| action[f] == f) {
            kept.push(s.clone());
        }
    }
    Ok(PermutationGroup::from_elements(g.degree(), kept))
}
