//! Colourful polytopes: the face lattice built from the colour-induced
//! components of a properly edge-coloured regular graph, and the flag
//! machinery on top of it.
//!
//! Faces are stored in one vector sorted by rank, with the improper faces
//! (rank `-1` and rank `n`) materialised so that the diamond condition can be
//! checked uniformly.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{self, Color, ColoredGraph, Vertex, Violation};

pub type FaceId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("invalid coloured graph: {}", join(.0))]
    InvalidGraph(Vec<Violation>),
    #[error("coloured graph is disconnected")]
    Disconnected,
    #[error("not a polytope: {0}")]
    NotPolytopal(String),
    #[error("expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("faces {0} and {1} are not incident")]
    NotIncident(FaceId, FaceId),
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub rank: isize,
    pub colors: Vec<Color>,
    pub vertices: Vec<Vertex>,
    /// Edge indices into the underlying coloured graph.
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct FaceKey {
    rank: isize,
    vertices: Vec<Vertex>,
    edges: Vec<usize>,
}

impl Face {
    pub(crate) fn key(&self) -> FaceKey {
        FaceKey {
            rank: self.rank,
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
        }
    }
}

impl FaceKey {
    pub(crate) fn new(rank: isize, mut vertices: Vec<Vertex>, mut edges: Vec<usize>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        FaceKey {
            rank,
            vertices,
            edges,
        }
    }
}

/// A ranked poset of faces with its cover relation.
#[derive(Clone, Debug)]
pub struct Polytope {
    rank: usize,
    graph: ColoredGraph,
    faces: Vec<Face>,
    lower: Vec<Vec<FaceId>>,
    upper: Vec<Vec<FaceId>>,
    below: Vec<Vec<bool>>,
    lookup: HashMap<FaceKey, FaceId>,
}

/// Builds the colourful polytope of `g`: its rank-`i` faces are the connected
/// components of the subgraphs spanned by `i` of the colours.
pub fn colourful_polytope(g: &ColoredGraph) -> Result<Polytope, PolytopeError> {
    let violations = graph::validate(g);
    if !violations.is_empty() {
        return Err(PolytopeError::InvalidGraph(violations));
    }
    let n = g.n_colors();
    let all_colors: BTreeSet<Color> = (0..n).collect();
    if graph::components_by_colorset(g, &all_colors)
        .map_err(|_| PolytopeError::Disconnected)?
        .len()
        != 1
    {
        return Err(PolytopeError::Disconnected);
    }

    let mut faces = vec![Face {
        rank: -1,
        colors: vec![],
        vertices: vec![],
        edges: vec![],
    }];
    faces.extend((0..g.n_vertices()).map(|v| Face {
        rank: 0,
        colors: vec![],
        vertices: vec![v],
        edges: vec![],
    }));
    for rank in 1..n {
        for colors in subsets(n, rank) {
            let set: BTreeSet<Color> = colors.iter().copied().collect();
            let comps = graph::components_by_colorset(g, &set).expect("colours in range");
            faces.extend(comps.into_iter().map(|c| Face {
                rank: rank as isize,
                colors: colors.clone(),
                vertices: c.vertices,
                edges: c.edges,
            }));
        }
    }
    faces.push(Face {
        rank: n as isize,
        colors: all_colors.into_iter().collect(),
        vertices: (0..g.n_vertices()).collect(),
        edges: (0..g.edges().len()).collect(),
    });

    let mut lower = vec![Vec::new(); faces.len()];
    for (j, upper_face) in faces.iter().enumerate() {
        for (i, f) in faces.iter().enumerate() {
            if f.rank + 1 == upper_face.rank && contained(f, upper_face) {
                lower[j].push(i);
            }
        }
    }
    Ok(Polytope::from_parts(n, g.clone(), faces, lower))
}

fn contained(f: &Face, g: &Face) -> bool {
    is_subset(&f.colors, &g.colors)
        && is_subset(&f.vertices, &g.vertices)
        && is_subset(&f.edges, &g.edges)
}

fn is_subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Polytope {
    fn from_parts(
        rank: usize,
        graph: ColoredGraph,
        faces: Vec<Face>,
        lower: Vec<Vec<FaceId>>,
    ) -> Self {
        let mut upper = vec![Vec::new(); faces.len()];
        for (j, ls) in lower.iter().enumerate() {
            for &i in ls {
                upper[i].push(j);
            }
        }
        // faces are sorted by rank, so lower covers are always computed first
        let mut below = vec![vec![false; faces.len()]; faces.len()];
        for j in 0..faces.len() {
            below[j][j] = true;
            for &i in &lower[j] {
                let (head, tail) = below.split_at_mut(j);
                for (t, &b) in tail[0].iter_mut().zip(&head[i]) {
                    *t |= b;
                }
            }
        }
        let lookup = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.key(), i))
            .collect();
        Polytope {
            rank,
            graph,
            faces,
            lower,
            upper,
            below,
            lookup,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn faces_of_rank(&self, rank: isize) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&i| self.faces[i].rank == rank)
    }

    /// Faces covered by `id`.
    pub fn lower_covers(&self, id: FaceId) -> &[FaceId] {
        &self.lower[id]
    }

    /// Faces covering `id`.
    pub fn upper_covers(&self, id: FaceId) -> &[FaceId] {
        &self.upper[id]
    }

    /// `a <= b` in the face order.
    pub fn leq(&self, a: FaceId, b: FaceId) -> bool {
        self.below[b][a]
    }

    pub fn incident(&self, a: FaceId, b: FaceId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub(crate) fn find(&self, key: &FaceKey) -> Option<FaceId> {
        self.lookup.get(key).copied()
    }

    pub fn minimum(&self) -> Option<FaceId> {
        let mut it = self.faces_of_rank(-1);
        it.next().filter(|_| it.next().is_none())
    }

    pub fn maximum(&self) -> Option<FaceId> {
        let mut it = self.faces_of_rank(self.rank as isize);
        it.next().filter(|_| it.next().is_none())
    }

    /// Faces strictly between `lo` and `hi`.
    pub fn between(&self, lo: FaceId, hi: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len())
            .filter(move |&h| h != lo && h != hi && self.leq(lo, h) && self.leq(h, hi))
    }

    /// The section `hi / lo` as a polytope of rank `rank(hi) - rank(lo) - 1`.
    /// Faces keep their vertex, edge and colour data.
    pub fn section(&self, lo: FaceId, hi: FaceId) -> Result<Polytope, PolytopeError> {
        if !self.leq(lo, hi) {
            return Err(PolytopeError::NotIncident(lo, hi));
        }
        let shift = self.faces[lo].rank + 1;
        let kept: Vec<FaceId> = (0..self.faces.len())
            .filter(|&h| self.leq(lo, h) && self.leq(h, hi))
            .collect();
        Ok(self.restrict(&kept, shift, (self.faces[hi].rank - shift) as usize))
    }

    /// A copy with one face deleted, which in general is no longer a polytope.
    pub fn with_face_removed(&self, id: FaceId) -> Polytope {
        let kept: Vec<FaceId> = (0..self.faces.len()).filter(|&h| h != id).collect();
        self.restrict(&kept, 0, self.rank)
    }

    fn restrict(&self, kept: &[FaceId], shift: isize, rank: usize) -> Polytope {
        let mut new_id = vec![None; self.faces.len()];
        for (n, &old) in kept.iter().enumerate() {
            new_id[old] = Some(n);
        }
        let faces = kept
            .iter()
            .map(|&old| Face {
                rank: self.faces[old].rank - shift,
                ..self.faces[old].clone()
            })
            .collect();
        let lower = kept
            .iter()
            .map(|&old| self.lower[old].iter().filter_map(|&i| new_id[i]).collect())
            .collect();
        Polytope::from_parts(rank, self.graph.clone(), faces, lower)
    }

    /// Maximal chains of proper faces (ranks `0..n`), in lexicographic order.
    pub fn flags(&self) -> Vec<Flag> {
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(self.rank);
        for v in self.faces_of_rank(0) {
            chain.push(v);
            self.extend_chain(&mut chain, &mut out);
            chain.pop();
        }
        out
    }

    fn extend_chain(&self, chain: &mut Vec<FaceId>, out: &mut Vec<Flag>) {
        if chain.len() == self.rank {
            out.push(Flag(chain.clone()));
            return;
        }
        let mut next = self.upper[*chain.last().unwrap()].clone();
        next.sort_unstable();
        for f in next {
            if self.faces[f].rank < self.rank as isize {
                chain.push(f);
                self.extend_chain(chain, out);
                chain.pop();
            }
        }
    }

    /// Chains strictly between `lo` and `hi` (one face per intermediate rank).
    fn chains_between(&self, lo: FaceId, hi: FaceId) -> Vec<Vec<FaceId>> {
        fn go(
            p: &Polytope,
            cur: FaceId,
            hi: FaceId,
            chain: &mut Vec<FaceId>,
            out: &mut Vec<Vec<FaceId>>,
        ) {
            for &f in &p.upper[cur] {
                if f == hi {
                    out.push(chain.clone());
                } else if p.leq(f, hi) {
                    chain.push(f);
                    go(p, f, hi, chain, out);
                    chain.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, lo, hi, &mut Vec::new(), &mut out);
        out
    }

    /// The vertex cycle traced by a 2-face, starting at its least vertex and
    /// continuing towards the smaller neighbour.
    pub fn face_cycle(&self, id: FaceId) -> Vec<Vertex> {
        let face = &self.faces[id];
        let edges: Vec<(Vertex, Vertex)> = face
            .edges
            .iter()
            .map(|&e| {
                let e = self.graph.edges()[e];
                (e.u, e.v)
            })
            .collect();
        walk_cycle(&edges)
    }

    pub fn to_export(&self) -> PolytopeExport {
        let flags = flag_graph(self).ok();
        PolytopeExport {
            rank: self.rank,
            f_vector: f_vector(self),
            flag_count: flags.as_ref().map(|f| f.flags.len()),
            schlafli_type: schlafli_type(self),
            faces: (-1..=self.rank as isize)
                .map(|r| {
                    self.faces_of_rank(r)
                        .map(|i| FaceExport {
                            id: i,
                            colors: self.faces[i].colors.clone(),
                            vertices: self.faces[i].vertices.clone(),
                        })
                        .collect()
                })
                .collect(),
            incidences: (0..self.faces.len())
                .flat_map(|j| self.lower[j].iter().map(move |&i| [i, j]))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("polytope serialises")
    }
}

/// Orders the vertices of a cycle given as an edge list.
pub(crate) fn walk_cycle(edges: &[(Vertex, Vertex)]) -> Vec<Vertex> {
    let Some(start) = edges.iter().map(|&(u, v)| u.min(v)).min() else {
        return Vec::new();
    };
    let neighbours = |x: Vertex| -> Vec<Vertex> {
        let mut ns: Vec<_> = edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == x {
                    Some(v)
                } else if v == x {
                    Some(u)
                } else {
                    None
                }
            })
            .collect();
        ns.sort_unstable();
        ns
    };
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = neighbours(start)[0];
    while cur != start && cycle.len() <= edges.len() {
        cycle.push(cur);
        let next = neighbours(cur)
            .into_iter()
            .find(|&y| y != prev)
            .unwrap_or(start);
        prev = cur;
        cur = next;
    }
    cycle
}

/// The lexicographically least rotation or reflection of a cyclic sequence.
pub fn canonical_cycle(seq: &[Vertex]) -> Vec<Vertex> {
    let n = seq.len();
    let mut reversed = seq.to_vec();
    reversed.reverse();
    let mut best: Option<Vec<Vertex>> = None;
    for base in [seq, &reversed[..]] {
        for r in 0..n {
            let cand: Vec<Vertex> = (0..n).map(|i| base[(r + i) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Bounds,
    NotGraded,
    Diamond,
    FlagDisconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalityViolation {
    pub kind: ViolationKind,
    pub faces: Vec<FaceId>,
    pub message: String,
}

impl fmt::Display for PolytopalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

/// Checks the abstract polytope axioms: unique least and greatest face,
/// gradedness, the diamond condition and strong flag connectivity.
pub fn check_polytopality(p: &Polytope) -> Vec<PolytopalityViolation> {
    let mut out = Vec::new();
    let (Some(min), Some(max)) = (p.minimum(), p.maximum()) else {
        out.push(PolytopalityViolation {
            kind: ViolationKind::Bounds,
            faces: vec![],
            message: "no unique least and greatest face".into(),
        });
        return out;
    };
    for (i, f) in p.faces.iter().enumerate() {
        let graded = p.lower[i].iter().all(|&l| p.faces[l].rank + 1 == f.rank)
            && (i == min || !p.lower[i].is_empty())
            && (i == max || !p.upper[i].is_empty());
        if !graded {
            out.push(PolytopalityViolation {
                kind: ViolationKind::NotGraded,
                faces: vec![i],
                message: format!("face {i} (rank {}) breaks the grading", f.rank),
            });
        }
    }
    for lo in 0..p.faces.len() {
        for hi in 0..p.faces.len() {
            if !p.leq(lo, hi) {
                continue;
            }
            match p.faces[hi].rank - p.faces[lo].rank {
                2 => {
                    let mid: Vec<_> = p.between(lo, hi).collect();
                    if mid.len() != 2 {
                        out.push(PolytopalityViolation {
                            kind: ViolationKind::Diamond,
                            faces: vec![lo, hi],
                            message: format!(
                                "{} faces between {lo} and {hi}, expected 2",
                                mid.len()
                            ),
                        });
                    }
                }
                d if d >= 3 && !chains_connected(&p.chains_between(lo, hi)) => {
                    out.push(PolytopalityViolation {
                        kind: ViolationKind::FlagDisconnected,
                        faces: vec![lo, hi],
                        message: format!("section {hi}/{lo} is not flag-connected"),
                    });
                }
                _ => {}
            }
        }
    }
    out
}

/// Connectivity of a set of chains under "differ in exactly one position".
fn chains_connected(chains: &[Vec<FaceId>]) -> bool {
    if chains.len() <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..chains.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut buckets: HashMap<(usize, Vec<FaceId>), usize> = HashMap::new();
    for (k, chain) in chains.iter().enumerate() {
        for pos in 0..chain.len() {
            let mut key = chain.clone();
            key.remove(pos);
            if let Some(&other) = buckets.get(&(pos, key.clone())) {
                let (a, b) = (root(&mut parent, k), root(&mut parent, other));
                parent[a] = b;
            } else {
                buckets.insert((pos, key), k);
            }
        }
    }
    let r = root(&mut parent, 0);
    (1..chains.len()).all(|k| root(&mut parent, k) == r)
}

/// A maximal chain of proper faces, one per rank `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag(pub Vec<FaceId>);

impl Flag {
    pub fn face(&self, rank: usize) -> FaceId {
        self.0[rank]
    }
}

/// All flags of a polytope with their `i`-adjacencies.
#[derive(Clone, Debug)]
pub struct FlagGraph {
    pub flags: Vec<Flag>,
    /// `adjacent[f][i]` is the flag differing from `f` exactly in rank `i`.
    pub adjacent: Vec<Vec<usize>>,
    index: HashMap<Flag, usize>,
}

impl FlagGraph {
    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn index_of(&self, flag: &Flag) -> Option<usize> {
        self.index.get(flag).copied()
    }

    /// Applies adjacencies `ranks[0]`, `ranks[1]`, ... in order.
    pub fn walk(&self, start: usize, ranks: &[usize]) -> usize {
        ranks.iter().fold(start, |f, &i| self.adjacent[f][i])
    }
}

pub fn flag_graph(p: &Polytope) -> Result<FlagGraph, PolytopeError> {
    let (Some(min), Some(max)) = (p.minimum(), p.maximum()) else {
        return Err(PolytopeError::NotPolytopal(
            "no unique least and greatest face".into(),
        ));
    };
    let flags = p.flags();
    let index: HashMap<Flag, usize> = flags
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    let n = p.rank;
    let mut adjacent = Vec::with_capacity(flags.len());
    for flag in &flags {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let lo = if i == 0 { min } else { flag.0[i - 1] };
            let hi = if i + 1 == n { max } else { flag.0[i + 1] };
            let others: Vec<FaceId> = p.upper[lo]
                .iter()
                .copied()
                .filter(|&h| p.lower[hi].contains(&h))
                .collect();
            if others.len() != 2 {
                return Err(PolytopeError::NotPolytopal(format!(
                    "{} faces between {lo} and {hi}, expected 2",
                    others.len()
                )));
            }
            let mut next = flag.0.clone();
            next[i] = if others[0] == flag.0[i] {
                others[1]
            } else {
                others[0]
            };
            let j = index.get(&Flag(next)).copied().ok_or_else(|| {
                PolytopeError::NotPolytopal("adjacent chain is not a flag".into())
            })?;
            row.push(j);
        }
        adjacent.push(row);
    }
    Ok(FlagGraph {
        flags,
        adjacent,
        index,
    })
}

/// The common Schläfli type `[p_1, .., p_{n-1}]`, or `None` if the polytope is
/// not equivelar (or has rank below 2).
///
/// `p_i` is the number of rank-`(i-1)` faces in the section `F_{i+1} / F_{i-2}`
/// of each flag.
pub fn schlafli_type(p: &Polytope) -> Option<Vec<usize>> {
    let (min, max) = (p.minimum()?, p.maximum()?);
    let n = p.rank;
    if n < 2 {
        return None;
    }
    let mut common: Option<Vec<usize>> = None;
    for flag in p.flags() {
        let face_at = |r: isize| -> FaceId {
            if r < 0 {
                min
            } else if r >= n as isize {
                max
            } else {
                flag.0[r as usize]
            }
        };
        let entry: Vec<usize> = (1..n as isize)
            .map(|i| {
                p.between(face_at(i - 2), face_at(i + 1))
                    .filter(|&h| p.faces[h].rank == i - 1)
                    .count()
            })
            .collect();
        match &common {
            None => common = Some(entry),
            Some(c) if *c == entry => {}
            Some(_) => return None,
        }
    }
    common
}

/// Petrie polygons of a rank-4 polytope as canonical vertex cycles.
///
/// Each polygon is the vertex sequence of an orbit of the flag walk that
/// applies the adjacencies 0, 1, 2, 3 in turn.
pub fn petrie_polygons(p: &Polytope) -> Result<BTreeSet<Vec<Vertex>>, PolytopeError> {
    if p.rank != 4 {
        return Err(PolytopeError::RankMismatch {
            expected: 4,
            got: p.rank,
        });
    }
    let fg = flag_graph(p)?;
    let mut seen = vec![false; fg.len()];
    let mut out = BTreeSet::new();
    for start in 0..fg.len() {
        if seen[start] {
            continue;
        }
        let mut seq = Vec::new();
        let mut f = start;
        while !seen[f] {
            seen[f] = true;
            seq.push(p.faces[fg.flags[f].0[0]].vertices[0]);
            f = fg.walk(f, &[0, 1, 2, 3]);
        }
        out.insert(canonical_cycle(&seq[..minimal_period(&seq)]));
    }
    Ok(out)
}

fn minimal_period(seq: &[Vertex]) -> usize {
    let n = seq.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| seq[i] == seq[i % d]))
        .unwrap_or(n)
}

/// The 2-faces of `p` as canonical vertex cycles.
pub fn two_face_cycles(p: &Polytope) -> BTreeSet<Vec<Vertex>> {
    p.faces_of_rank(2)
        .map(|f| canonical_cycle(&p.face_cycle(f)))
        .collect()
}

/// Face counts for ranks `0..n`.
pub fn f_vector(p: &Polytope) -> Vec<usize> {
    (0..p.rank as isize)
        .map(|r| p.faces_of_rank(r).count())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceExport {
    pub id: FaceId,
    pub colors: Vec<Color>,
    pub vertices: Vec<Vertex>,
}

/// JSON shape of a polytope: faces by rank (from `-1` to `n`) and cover pairs
/// `[lower, upper]`.
#[derive(Clone, Debug, Serialize)]
pub struct PolytopeExport {
    pub rank: usize,
    pub f_vector: Vec<usize>,
    pub flag_count: Option<usize>,
    pub schlafli_type: Option<Vec<usize>>,
    pub faces: Vec<Vec<FaceExport>>,
    pub incidences: Vec<[FaceId; 2]>,
}
