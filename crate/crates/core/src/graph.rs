//! Edge-coloured graphs: validation, colour-induced subgraphs, enumeration of
//! matching colourings and colour-respecting isomorphisms.
//!
//! Edges are always kept in canonical order, sorted by `(min endpoint, max
//! endpoint)`, so that edge indices are stable across constructions and the
//! JSON interchange format is byte-stable.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Color = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown colour {color} (graph has {n_colors} colours)")]
    UnknownColor { color: Color, n_colors: usize },
    #[error("graph is not {expected}-regular (vertex {vertex} has degree {degree})")]
    NotRegular {
        expected: usize,
        vertex: Vertex,
        degree: usize,
    },
    #[error("colouring has {got} entries but the graph has {expected} edges")]
    ColoringLength { expected: usize, got: usize },
}

/// An uncoloured simple graph with canonically ordered edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        Graph { n_vertices, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Every vertex has degree `k`.
    pub fn check_regular(&self, k: usize) -> Result<(), GraphError> {
        let mut degree = vec![0usize; self.n_vertices];
        for &(u, v) in &self.edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        match degree.iter().position(|&d| d != k) {
            None => Ok(()),
            Some(vertex) => Err(GraphError::NotRegular {
                expected: k,
                vertex,
                degree: degree[vertex],
            }),
        }
    }
}

/// A colour per edge of some fixed [`Graph`], indexed like `Graph::edges`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring {
    pub assignment: Vec<Color>,
    pub n_colors: usize,
}

impl Coloring {
    pub fn new(assignment: Vec<Color>, n_colors: usize) -> Self {
        Coloring {
            assignment,
            n_colors,
        }
    }

    /// Relabels colours in order of first appearance. Two colourings are equal
    /// up to colour permutation iff their normal forms coincide.
    pub fn normalized(&self) -> Coloring {
        let mut relabel = vec![None; self.n_colors.max(self.max_color().map_or(0, |c| c + 1))];
        let mut next = 0;
        let assignment = self
            .assignment
            .iter()
            .map(|&c| {
                *relabel[c].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Coloring::new(assignment, self.n_colors)
    }

    pub fn equivalent_to(&self, other: &Coloring) -> bool {
        self.normalized() == other.normalized()
    }

    /// Applies a colour map `old -> map[old]`.
    pub fn permute_colors(&self, map: &[Color]) -> Coloring {
        Coloring::new(
            self.assignment.iter().map(|&c| map[c]).collect(),
            self.n_colors,
        )
    }

    fn max_color(&self) -> Option<Color> {
        self.assignment.iter().copied().max()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

/// A graph together with an edge colouring.
///
/// Serialised as `{"n_vertices": .., "n_colors": .., "edges": [[u, v, color], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColoredGraph", into = "RawColoredGraph")]
pub struct ColoredGraph {
    n_vertices: usize,
    n_colors: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawColoredGraph {
    n_vertices: usize,
    n_colors: usize,
    edges: Vec<[usize; 3]>,
}

impl TryFrom<RawColoredGraph> for ColoredGraph {
    type Error = String;

    fn try_from(raw: RawColoredGraph) -> Result<Self, String> {
        if let Some(e) = raw.edges.iter().find(|e| e[0].max(e[1]) >= raw.n_vertices) {
            return Err(format!("edge {e:?} references a vertex out of range"));
        }
        Ok(ColoredGraph::new(
            raw.n_vertices,
            raw.n_colors,
            raw.edges.into_iter().map(|[u, v, c]| (u, v, c)),
        ))
    }
}

impl From<ColoredGraph> for RawColoredGraph {
    fn from(g: ColoredGraph) -> Self {
        RawColoredGraph {
            n_vertices: g.n_vertices,
            n_colors: g.n_colors,
            edges: g.edges.iter().map(|e| [e.u, e.v, e.color]).collect(),
        }
    }
}

impl ColoredGraph {
    /// Builds a coloured graph without validating it; see [`validate`].
    pub fn new(
        n_vertices: usize,
        n_colors: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, Color)>,
    ) -> Self {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v, color)| Edge {
                u: u.min(v),
                v: u.max(v),
                color,
            })
            .collect();
        edges.sort_unstable();
        ColoredGraph {
            n_vertices,
            n_colors,
            edges,
        }
    }

    pub fn from_coloring(graph: &Graph, coloring: &Coloring) -> Result<Self, GraphError> {
        if graph.edges.len() != coloring.assignment.len() {
            return Err(GraphError::ColoringLength {
                expected: graph.edges.len(),
                got: coloring.assignment.len(),
            });
        }
        Ok(ColoredGraph {
            n_vertices: graph.n_vertices,
            n_colors: coloring.n_colors,
            edges: graph
                .edges
                .iter()
                .zip(&coloring.assignment)
                .map(|(&(u, v), &color)| Edge { u, v, color })
                .collect(),
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn underlying(&self) -> Graph {
        Graph {
            n_vertices: self.n_vertices,
            edges: self.edges.iter().map(|e| (e.u, e.v)).collect(),
        }
    }

    pub fn coloring(&self) -> Coloring {
        Coloring::new(self.edges.iter().map(|e| e.color).collect(), self.n_colors)
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        let i = self.edges.partition_point(|e| (e.u, e.v) < (a, b));
        (i < self.edges.len() && (self.edges[i].u, self.edges[i].v) == (a, b)).then_some(i)
    }

    /// Dense colour-adjacency matrix: `m[u][v] = Some(color)` when `uv` is an edge.
    pub(crate) fn color_matrix(&self) -> Vec<Vec<Option<Color>>> {
        let mut m = vec![vec![None; self.n_vertices]; self.n_vertices];
        for e in &self.edges {
            m[e.u][e.v] = Some(e.color);
            m[e.v][e.u] = Some(e.color);
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloured graph serialises")
    }
}

/// Which structural rule a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Simple,
    Proper,
    MatchingRegular,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Simple => "simple",
            Rule::Proper => "proper",
            Rule::MatchingRegular => "matching-regular",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    /// Offending edges, as indices into `ColoredGraph::edges`.
    pub edges: Vec<usize>,
    pub vertex: Option<Vertex>,
    pub color: Option<Color>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.message)
    }
}

/// Checks simplicity, properness and that every colour class is a perfect
/// matching. Returns an empty list iff the graph is valid.
///
/// A colour class is reported as non-matching only for vertices it misses;
/// a vertex it covers twice is already a properness violation.
pub fn validate(g: &ColoredGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.v >= g.n_vertices {
            out.push(Violation {
                rule: Rule::Simple,
                edges: vec![i],
                vertex: Some(e.v),
                color: None,
                message: format!("edge {i} uses vertex {} out of range", e.v),
            });
        }
        if e.u == e.v {
            out.push(Violation {
                rule: Rule::Simple,
                edges: vec![i],
                vertex: Some(e.u),
                color: None,
                message: format!("edge {i} is a loop at vertex {}", e.u),
            });
        }
        if i > 0 && (g.edges[i - 1].u, g.edges[i - 1].v) == (e.u, e.v) {
            out.push(Violation {
                rule: Rule::Simple,
                edges: vec![i - 1, i],
                vertex: None,
                color: None,
                message: format!("edges {} and {i} join {} and {}", i - 1, e.u, e.v),
            });
        }
        if e.color >= g.n_colors {
            out.push(Violation {
                rule: Rule::Proper,
                edges: vec![i],
                vertex: None,
                color: Some(e.color),
                message: format!("edge {i} has colour {} out of range", e.color),
            });
        }
    }
    if out
        .iter()
        .any(|v| v.vertex.is_some_and(|x| x >= g.n_vertices))
    {
        return out;
    }

    // incident[v][c] = edges of colour c at v
    let mut incident = vec![vec![Vec::new(); g.n_colors]; g.n_vertices];
    for (i, e) in g.edges.iter().enumerate() {
        if e.color < g.n_colors {
            incident[e.u][e.color].push(i);
            if e.v != e.u {
                incident[e.v][e.color].push(i);
            }
        }
    }
    for (v, by_color) in incident.iter().enumerate() {
        for (c, edges) in by_color.iter().enumerate() {
            if edges.len() > 1 {
                out.push(Violation {
                    rule: Rule::Proper,
                    edges: edges.clone(),
                    vertex: Some(v),
                    color: Some(c),
                    message: format!("vertex {v} meets {} edges of colour {c}", edges.len()),
                });
            }
        }
    }
    for c in 0..g.n_colors {
        let missed: Vec<Vertex> = incident
            .iter()
            .enumerate()
            .filter(|(_, by_color)| by_color[c].is_empty())
            .map(|(v, _)| v)
            .collect();
        if !missed.is_empty() {
            out.push(Violation {
                rule: Rule::MatchingRegular,
                edges: (0..g.edges.len())
                    .filter(|&i| g.edges[i].color == c)
                    .collect(),
                vertex: missed.first().copied(),
                color: Some(c),
                message: format!("colour {c} is not a perfect matching (misses {missed:?})"),
            });
        }
    }
    out
}

/// A connected component of a colour-induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    /// Sorted vertex ids.
    pub vertices: Vec<Vertex>,
    /// Sorted edge indices.
    pub edges: Vec<usize>,
}

/// Connected components of the spanning subgraph whose edges have a colour in
/// `colors`, ordered by least vertex.
pub fn components_by_colorset(
    g: &ColoredGraph,
    colors: &BTreeSet<Color>,
) -> Result<Vec<Component>, GraphError> {
    if let Some(&color) = colors.iter().find(|&&c| c >= g.n_colors) {
        return Err(GraphError::UnknownColor {
            color,
            n_colors: g.n_colors,
        });
    }
    let mut adj = vec![Vec::new(); g.n_vertices];
    for (i, e) in g.edges.iter().enumerate() {
        if colors.contains(&e.color) {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
    }
    let mut seen = vec![false; g.n_vertices];
    let mut out = Vec::new();
    for start in 0..g.n_vertices {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut vertices = vec![start];
        let mut edges = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, i) in &adj[x] {
                edges.insert(i);
                if !seen[y] {
                    seen[y] = true;
                    vertices.push(y);
                    queue.push_back(y);
                }
            }
        }
        vertices.sort_unstable();
        out.push(Component {
            vertices,
            edges: edges.into_iter().collect(),
        });
    }
    Ok(out)
}

/// Every proper `k`-edge-colouring of the `k`-regular graph `g` that passes
/// `predicate`, in lexicographic order of the assignment vector.
///
/// With `up_to_color_permutation`, only colourings in first-appearance normal
/// form are produced (one per colour-permutation class).
pub fn enumerate_matching_colorings<F>(
    g: &Graph,
    k: usize,
    predicate: F,
    up_to_color_permutation: bool,
) -> Result<Vec<Coloring>, GraphError>
where
    F: Fn(&Coloring) -> bool,
{
    g.check_regular(k)?;
    // used[v] is a bitmask of colours already present at v
    let mut used = vec![0u64; g.n_vertices];
    let mut assignment = Vec::with_capacity(g.edges.len());
    let mut out = Vec::new();
    backtrack_colorings(
        g,
        k,
        up_to_color_permutation,
        &mut used,
        &mut assignment,
        0,
        &predicate,
        &mut out,
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn backtrack_colorings<F: Fn(&Coloring) -> bool>(
    g: &Graph,
    k: usize,
    canonical: bool,
    used: &mut [u64],
    assignment: &mut Vec<Color>,
    n_used_colors: usize,
    predicate: &F,
    out: &mut Vec<Coloring>,
) {
    let i = assignment.len();
    if i == g.edges.len() {
        let c = Coloring::new(assignment.clone(), k);
        if predicate(&c) {
            out.push(c);
        }
        return;
    }
    let (u, v) = g.edges[i];
    let limit = if canonical {
        (n_used_colors + 1).min(k)
    } else {
        k
    };
    for color in 0..limit {
        let bit = 1u64 << color;
        if used[u] & bit != 0 || used[v] & bit != 0 {
            continue;
        }
        used[u] |= bit;
        used[v] |= bit;
        assignment.push(color);
        backtrack_colorings(
            g,
            k,
            canonical,
            used,
            assignment,
            n_used_colors.max(color + 1),
            predicate,
            out,
        );
        assignment.pop();
        used[u] &= !bit;
        used[v] &= !bit;
    }
}

/// A pair of bijections carrying one coloured graph onto another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredIsomorphism {
    pub vertex_map: Vec<Vertex>,
    pub color_map: Vec<Color>,
}

impl ColoredIsomorphism {
    pub fn inverse(&self) -> ColoredIsomorphism {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (a, &b) in self.vertex_map.iter().enumerate() {
            vertex_map[b] = a;
        }
        let mut color_map = vec![0; self.color_map.len()];
        for (a, &b) in self.color_map.iter().enumerate() {
            color_map[b] = a;
        }
        ColoredIsomorphism {
            vertex_map,
            color_map,
        }
    }

    /// Checks that the maps really carry every edge of `g1` onto an edge of
    /// `g2` with consistently mapped colour.
    pub fn is_valid(&self, g1: &ColoredGraph, g2: &ColoredGraph) -> bool {
        let m2 = g2.color_matrix();
        g1.edges.len() == g2.edges.len()
            && g1.edges.iter().all(|e| {
                m2[self.vertex_map[e.u]][self.vertex_map[e.v]] == Some(self.color_map[e.color])
            })
    }
}

/// Some colour-respecting isomorphism `g1 -> g2`, if one exists.
pub fn colored_isomorphism(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<ColoredIsomorphism> {
    colored_isomorphisms(g1, g2, true).into_iter().next()
}

/// All (or, with `first_only`, at most one) colour-respecting isomorphisms,
/// sorted by vertex map.
pub(crate) fn colored_isomorphisms(
    g1: &ColoredGraph,
    g2: &ColoredGraph,
    first_only: bool,
) -> Vec<ColoredIsomorphism> {
    if g1.n_vertices != g2.n_vertices
        || g1.n_colors != g2.n_colors
        || g1.edges.len() != g2.edges.len()
    {
        return Vec::new();
    }
    let class_sizes = |g: &ColoredGraph| {
        let mut sizes = vec![0usize; g.n_colors];
        for e in &g.edges {
            if e.color >= g.n_colors {
                return None;
            }
            sizes[e.color] += 1;
        }
        sizes.sort_unstable();
        Some(sizes)
    };
    match (class_sizes(g1), class_sizes(g2)) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Vec::new(),
    }

    let mut search = IsoSearch {
        m1: g1.color_matrix(),
        m2: g2.color_matrix(),
        deg1: degrees(g1),
        deg2: degrees(g2),
        order: bfs_order(g1),
        image: vec![None; g1.n_vertices],
        taken: vec![false; g1.n_vertices],
        color_fwd: vec![None; g1.n_colors],
        color_back: vec![None; g1.n_colors],
        first_only,
        found: Vec::new(),
    };
    search.extend(0);
    let mut found = search.found;
    found.sort();
    found
}

fn degrees(g: &ColoredGraph) -> Vec<usize> {
    let mut d = vec![0; g.n_vertices];
    for e in &g.edges {
        d[e.u] += 1;
        d[e.v] += 1;
    }
    d
}

/// Vertices in breadth-first order so that each vertex after the first of its
/// component has an already-placed neighbour.
fn bfs_order(g: &ColoredGraph) -> Vec<Vertex> {
    let m = g.color_matrix();
    let mut seen = vec![false; g.n_vertices];
    let mut order = Vec::with_capacity(g.n_vertices);
    for start in 0..g.n_vertices {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for y in 0..g.n_vertices {
                if m[x][y].is_some() && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

struct IsoSearch {
    m1: Vec<Vec<Option<Color>>>,
    m2: Vec<Vec<Option<Color>>>,
    deg1: Vec<usize>,
    deg2: Vec<usize>,
    order: Vec<Vertex>,
    image: Vec<Option<Vertex>>,
    taken: Vec<bool>,
    color_fwd: Vec<Option<Color>>,
    color_back: Vec<Option<Color>>,
    first_only: bool,
    found: Vec<ColoredIsomorphism>,
}

impl IsoSearch {
    fn done(&self) -> bool {
        self.first_only && !self.found.is_empty()
    }

    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            let color_map = (0..self.color_fwd.len())
                .map(|c| self.color_fwd[c])
                .collect::<Option<Vec<_>>>()
                .unwrap_or_else(|| self.complete_color_map());
            self.found.push(ColoredIsomorphism {
                vertex_map: self.image.iter().map(|x| x.unwrap()).collect(),
                color_map,
            });
            return;
        }
        let v = self.order[depth];
        for w in 0..self.m2.len() {
            if self.taken[w] || self.deg1[v] != self.deg2[w] {
                continue;
            }
            let Some(added) = self.try_assign(depth, v, w) else {
                continue;
            };
            self.image[v] = Some(w);
            self.taken[w] = true;
            self.extend(depth + 1);
            self.image[v] = None;
            self.taken[w] = false;
            for c in added {
                let d = self.color_fwd[c].take().unwrap();
                self.color_back[d] = None;
            }
            if self.done() {
                return;
            }
        }
    }

    /// Checks `v -> w` against all placed vertices; on success returns the
    /// colours whose images were newly fixed.
    fn try_assign(&mut self, depth: usize, v: Vertex, w: Vertex) -> Option<Vec<Color>> {
        let mut added = Vec::new();
        for &u in &self.order[..depth] {
            let x = self.image[u].unwrap();
            let ok = match (self.m1[v][u], self.m2[w][x]) {
                (None, None) => true,
                (Some(c), Some(d)) => match (self.color_fwd[c], self.color_back[d]) {
                    (Some(d0), _) => d0 == d,
                    (None, Some(_)) => false,
                    (None, None) => {
                        self.color_fwd[c] = Some(d);
                        self.color_back[d] = Some(c);
                        added.push(c);
                        true
                    }
                },
                _ => false,
            };
            if !ok {
                for c in added {
                    let d = self.color_fwd[c].take().unwrap();
                    self.color_back[d] = None;
                }
                return None;
            }
        }
        Some(added)
    }

    /// Colours absent from the edge set are matched in increasing order.
    fn complete_color_map(&self) -> Vec<Color> {
        let mut free = (0..self.color_back.len()).filter(|&d| self.color_back[d].is_none());
        self.color_fwd
            .iter()
            .map(|x| x.unwrap_or_else(|| free.next().unwrap()))
            .collect()
    }
}

/// `K_{n,n}` with parts `0..n` and `n..2n`.
pub fn complete_bipartite(n: usize) -> Graph {
    Graph::new(2 * n, (0..n).flat_map(|a| (0..n).map(move |b| (a, n + b))))
}

/// The cycle `0-1-..-(n-1)-0`.
pub fn cycle_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}
