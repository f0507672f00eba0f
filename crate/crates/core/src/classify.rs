//! Assembles the hemi-hypercube `P`, its chiral twin `Q` (and mirror image),
//! and the double cover `Qhat`, then checks every structural claim about them
//! and collects the outcomes in a [`VerificationReport`].

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    self, colorings_with_property, cycle_holonomy, derive_chiral_colorings,
    geometric_symmetry_group, graph_symmetry_group, hemicube_embedding, lift_cycle,
    lift_double_cover, ChiralProperty, EmbeddedGraph, GeometryError, Point, SymmetryGroup,
};
use crate::graph::{self, ColoredGraph, Coloring, GraphError};
use crate::group::{
    chain_stabilizer, classify_symmetry, color_respecting_automorphisms, GroupError, GroupExport,
    PermutationGroup, Verdict, VertexPermutation,
};
use crate::polytope::{
    check_polytopality, colourful_polytope, f_vector, flag_graph, petrie_polygons, schlafli_type,
    two_face_cycles, FaceId, Polytope, PolytopeError,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Other(String),
}

/// The objects the CLI and the pipeline know by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectName {
    /// Hemi-hypercube with the direction colouring.
    P,
    /// First chiral colouring of the projective `K_{4,4}`.
    Q,
    /// Second chiral colouring, the mirror image of `Q`.
    QMirror,
    /// Double cover of `Q` in 4-space.
    Qhat,
    /// The 4-cube, double cover of `P`.
    Hypercube,
}

impl ObjectName {
    pub const ALL: [ObjectName; 5] = [
        ObjectName::P,
        ObjectName::Q,
        ObjectName::QMirror,
        ObjectName::Qhat,
        ObjectName::Hypercube,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectName::P => "P",
            ObjectName::Q => "Q",
            ObjectName::QMirror => "Q-mirror",
            ObjectName::Qhat => "Qhat",
            ObjectName::Hypercube => "hypercube",
        }
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, ObjectName::P | ObjectName::Q | ObjectName::QMirror)
    }
}

impl fmt::Display for ObjectName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObjectName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ObjectName::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| {
                format!("unknown object {s:?} (expected P, Q, Q-mirror, Qhat or hypercube)")
            })
    }
}

/// A coloured embedded graph together with its colourful polytope.
#[derive(Clone, Debug)]
pub struct Construction {
    pub name: ObjectName,
    pub embedding: EmbeddedGraph,
    pub polytope: Polytope,
}

impl Construction {
    pub fn coloring(&self) -> Coloring {
        self.embedding.graph().coloring()
    }

    /// The geometric symmetry group: isometries preserving the colouring.
    pub fn symmetry_group(&self) -> SymmetryGroup {
        geometric_symmetry_group(&self.embedding, &self.coloring())
            .expect("colouring matches the embedding")
    }

    /// The double cover, for projective objects.
    pub fn double_cover(&self) -> Result<Construction, ClassifyError> {
        let lifted = lift_double_cover(&self.embedding, &self.coloring())?;
        let polytope = colourful_polytope(lifted.graph())?;
        let name = match self.name {
            ObjectName::P => ObjectName::Hypercube,
            _ => ObjectName::Qhat,
        };
        Ok(Construction {
            name,
            embedding: lifted,
            polytope,
        })
    }

    pub fn to_off(&self) -> Result<String, ClassifyError> {
        if self.embedding.is_projective() {
            let cover = self.double_cover()?;
            Ok(geometry::off::write_off(
                &cover.polytope,
                cover.embedding.coords(),
                Some(self.embedding.coords().len()),
            ))
        } else {
            Ok(geometry::off::write_off(
                &self.polytope,
                self.embedding.coords(),
                None,
            ))
        }
    }
}

/// The two chiral colourings in normal form; index 0 is `Q`, index 1 its mirror.
pub fn chiral_pair() -> Result<[Coloring; 2], ClassifyError> {
    let found = derive_chiral_colorings(&hemicube_embedding())?;
    <[Coloring; 2]>::try_from(found).map_err(|v| {
        ClassifyError::Other(format!("expected 2 chiral colourings, found {}", v.len()))
    })
}

pub fn construct(name: ObjectName) -> Result<Construction, ClassifyError> {
    let hemi = hemicube_embedding();
    let coloring = match name {
        ObjectName::P => hemi.direction_coloring(),
        ObjectName::Q | ObjectName::Qhat => chiral_pair()?[0].clone(),
        ObjectName::QMirror => chiral_pair()?[1].clone(),
        ObjectName::Hypercube => {
            let p = construct(ObjectName::P)?;
            return p.double_cover();
        }
    };
    let projective = construct_from_coloring(name, &hemi, &coloring)?;
    if name == ObjectName::Qhat {
        projective.double_cover()
    } else {
        Ok(projective)
    }
}

fn construct_from_coloring(
    name: ObjectName,
    hemi: &EmbeddedGraph,
    coloring: &Coloring,
) -> Result<Construction, ClassifyError> {
    let embedding = hemi.recolored(coloring)?;
    let polytope = colourful_polytope(embedding.graph())?;
    Ok(Construction {
        name,
        embedding,
        polytope,
    })
}

/// How two chiral colourings of the same embedded graph are related.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Enantiomorphy {
    /// Equal up to colour permutation.
    SameForm,
    /// Exchanged by some orientation-reversing symmetry and by no
    /// orientation-preserving one.
    Enantiomorphic,
    /// Exchanged by an orientation-preserving symmetry.
    DirectlyCongruent,
    /// Not exchanged by any symmetry of the embedded graph.
    Neither,
}

impl fmt::Display for Enantiomorphy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Enantiomorphy::SameForm => "same form",
            Enantiomorphy::Enantiomorphic => "enantiomorphic",
            Enantiomorphy::DirectlyCongruent => "directly congruent",
            Enantiomorphy::Neither => "neither",
        })
    }
}

pub fn enantiomorph_check(c1: &Coloring, c2: &Coloring, e: &EmbeddedGraph) -> Enantiomorphy {
    if c1.equivalent_to(c2) {
        return Enantiomorphy::SameForm;
    }
    let g = e.underlying();
    let (mut proper, mut improper) = (false, false);
    for (sigma, m) in graph_symmetry_group(e).iter() {
        let Some(image) = geometry::transport_coloring(&g, c1, sigma) else {
            continue;
        };
        if image.equivalent_to(c2) {
            if m.determinant() > 0 {
                proper = true;
            } else {
                improper = true;
            }
        }
    }
    match (proper, improper) {
        (true, _) => Enantiomorphy::DirectlyCongruent,
        (false, true) => Enantiomorphy::Enantiomorphic,
        (false, false) => Enantiomorphy::Neither,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// The expected value is stated outright for the construction.
    Stated,
    /// The expected value follows by independent computation.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub source: Source,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupSummary {
    pub object: String,
    pub kind: String,
    #[serde(flatten)]
    pub group: GroupExport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub groups: Vec<GroupSummary>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let source = match c.source {
                Source::Stated => "stated",
                Source::Derived => "derived",
            };
            out.push_str(&format!(
                "[{tag}] {} ({source}; {})\n       expected: {}\n       computed: {}\n",
                c.id, c.anchor, c.expected, c.computed
            ));
        }
        for g in &self.groups {
            out.push_str(&format!(
                "group {} {}: order {}, {} generators\n",
                g.object,
                g.kind,
                g.group.order,
                g.group.generators.len()
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {failed} failed\n", self.checks.len()));
        if self.overall {
            out.push_str("ALL CHECKS PASSED\n");
        } else {
            out.push_str("SOME CHECKS FAILED\n");
        }
        out
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<Check>,
    groups: Vec<GroupSummary>,
}

impl Recorder {
    fn check(
        &mut self,
        id: &str,
        anchor: &str,
        source: Source,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
        pass: bool,
    ) -> bool {
        assert!(
            self.checks.iter().all(|c| c.id != id),
            "duplicate claim id {id}"
        );
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            source,
            pass,
        });
        pass
    }

    /// Records an equality check.
    fn eq<T: fmt::Debug + PartialEq>(
        &mut self,
        id: &str,
        anchor: &str,
        source: Source,
        expected: T,
        computed: T,
    ) -> bool {
        let pass = expected == computed;
        self.check(
            id,
            anchor,
            source,
            format!("{expected:?}"),
            format!("{computed:?}"),
            pass,
        )
    }

    fn group(&mut self, object: &str, kind: &str, g: &PermutationGroup) {
        self.groups.push(GroupSummary {
            object: object.into(),
            kind: kind.into(),
            group: g.to_export(),
        });
    }

    fn abort(&mut self, stage: &str, err: &ClassifyError) {
        let id = format!("{stage}.aborted");
        self.check(
            &id,
            "pipeline stage completed",
            Source::Derived,
            "stage completes",
            format!("error: {err}"),
            false,
        );
    }
}

/// Substitutions for exercising the pipeline on other inputs.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Colouring used for `Q` in place of the first derived chiral colouring.
    pub q_coloring: Option<Coloring>,
}

/// Runs every check on the standard construction.
pub fn verify_paper() -> VerificationReport {
    verify_with(&VerifyOptions::default())
}

pub fn verify_with(options: &VerifyOptions) -> VerificationReport {
    let mut rec = Recorder::default();
    let hemi = hemicube_embedding();

    let p = match stage_p(&mut rec, &hemi) {
        Ok(p) => Some(p),
        Err(e) => {
            rec.abort("p", &e);
            None
        }
    };
    let chiral = match stage_colorings(&mut rec, &hemi) {
        Ok(c) => Some(c),
        Err(e) => {
            rec.abort("colorings", &e);
            None
        }
    };
    let q_coloring = options
        .q_coloring
        .clone()
        .or_else(|| chiral.as_ref().map(|c| c[0].clone()));
    let q = match (&p, q_coloring) {
        (Some(p), Some(c)) => match stage_q(&mut rec, &hemi, p, &c, chiral.as_ref()) {
            Ok(q) => Some(q),
            Err(e) => {
                rec.abort("q", &e);
                None
            }
        },
        _ => {
            rec.abort(
                "q",
                &ClassifyError::Other("prerequisites unavailable".into()),
            );
            None
        }
    };
    match &q {
        Some(q) => {
            if let Err(e) = stage_qhat(&mut rec, &hemi, q) {
                rec.abort("qhat", &e);
            }
        }
        None => rec.abort("qhat", &ClassifyError::Other("Q unavailable".into())),
    }

    let overall = rec.checks.iter().all(|c| c.pass);
    VerificationReport {
        checks: rec.checks,
        groups: rec.groups,
        overall,
    }
}

fn fmt_list<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn stage_p(rec: &mut Recorder, hemi: &EmbeddedGraph) -> Result<Construction, ClassifyError> {
    use Source::*;
    let diagnostics = graph::validate(hemi.graph());
    rec.check(
        "p.graph.valid",
        "regular colouring is a proper matching colouring of K4,4",
        Derived,
        "no violations",
        format!("{} violations", diagnostics.len()),
        diagnostics.is_empty(),
    );
    let p = construct_from_coloring(ObjectName::P, hemi, &hemi.direction_coloring())?;
    let poly = &p.polytope;
    let diag = check_polytopality(poly);
    rec.check(
        "p.polytopal",
        "P is a colourful 4-polytope",
        Stated,
        "no violations",
        format!("{} violations", diag.len()),
        diag.is_empty(),
    );
    rec.eq(
        "p.f_vector",
        "f-vector of the hemi-hypercube",
        Derived,
        vec![8, 16, 12, 4],
        f_vector(poly),
    );
    let facets: Vec<FaceId> = poly.faces_of_rank(3).collect();
    let mut cube_facets = 0;
    for &f in &facets {
        let s = poly.section(poly.minimum().unwrap(), f)?;
        if f_vector(&s) == [8, 12, 6] && schlafli_type(&s) == Some(vec![4, 3]) {
            cube_facets += 1;
        }
    }
    rec.check(
        "p.facets.cubes",
        "P has four facets, all cubes",
        Stated,
        "4 facets, 4 cubes",
        format!("{} facets, {cube_facets} cubes", facets.len()),
        facets.len() == 4 && cube_facets == 4,
    );
    rec.eq(
        "p.schlafli",
        "Schlafli type {4,3,3}",
        Stated,
        Some(vec![4, 3, 3]),
        schlafli_type(poly),
    );

    // opposite vertices of each facet cube are joined by an edge of the missing colour
    let mut missing_ok = true;
    let graph = hemi.graph();
    for &f in &facets {
        let face = poly.face(f);
        let missing = (0..4).find(|c| !face.colors.contains(c)).unwrap();
        let cube = ColoredGraph::new(
            8,
            4,
            face.edges.iter().map(|&i| {
                let e = graph.edges()[i];
                (e.u, e.v, e.color)
            }),
        );
        let dist = graph_distances(&cube);
        for e in graph.edges().iter().filter(|e| e.color == missing) {
            missing_ok &= dist[e.u][e.v] == 3;
        }
    }
    rec.check(
        "p.facets.diagonals",
        "missing colour of a facet joins its opposite vertices",
        Stated,
        "every missing-colour edge joins cube-antipodal vertices",
        missing_ok,
        missing_ok,
    );

    let geo = p.symmetry_group();
    let aut = color_respecting_automorphisms(p.embedding.graph());
    rec.eq(
        "p.symmetry.order",
        "P has 192 symmetries",
        Stated,
        192,
        geo.order(),
    );
    rec.eq(
        "p.automorphisms.order",
        "colour-respecting automorphisms of K4,4",
        Stated,
        192,
        aut.group.order(),
    );
    rec.eq(
        "p.symmetry.realises_automorphisms",
        "every colour-respecting automorphism is an isometry",
        Derived,
        true,
        geo.group.elements() == aut.group.elements(),
    );
    let class = classify_symmetry(poly, &geo.group)?;
    rec.check(
        "p.regular",
        "hemi-hypercube is regular",
        Stated,
        "regular, 1 flag orbit of 192",
        format!("{}, orbits {:?}", class.verdict, class.orbit_sizes),
        class.verdict == Verdict::Regular && class.orbit_sizes == [192],
    );
    rec.group("P", "geometric", &geo.group);
    Ok(p)
}

fn graph_distances(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    let mut d = vec![vec![usize::MAX / 4; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in g.edges() {
        d[e.u][e.v] = 1;
        d[e.v][e.u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

fn stage_colorings(
    rec: &mut Recorder,
    hemi: &EmbeddedGraph,
) -> Result<[Coloring; 2], ClassifyError> {
    use Source::*;
    let by_a = colorings_with_property(hemi, ChiralProperty::Transversal, true)?;
    let by_b = colorings_with_property(hemi, ChiralProperty::FourColoredFaces, true)?;
    let raw_a = colorings_with_property(hemi, ChiralProperty::Transversal, false)?;
    let raw_b = colorings_with_property(hemi, ChiralProperty::FourColoredFaces, false)?;
    rec.eq(
        "colorings.chiral_count",
        "exactly two chiral colourings up to colour permutation",
        Stated,
        2,
        by_a.len(),
    );
    rec.eq(
        "colorings.chiral_count_raw",
        "chiral colourings counted as raw assignments",
        Derived,
        48,
        raw_a.len(),
    );
    rec.check(
        "colorings.properties_equivalent",
        "transversality and four-coloured faces select the same colourings",
        Stated,
        "equal sets",
        format!(
            "|a| = {}, |b| = {}, equal = {}",
            raw_a.len(),
            raw_b.len(),
            raw_a == raw_b && by_a == by_b
        ),
        raw_a == raw_b && by_a == by_b,
    );
    let mut all_squares = true;
    for c in &by_a {
        let g = ColoredGraph::from_coloring(&hemi.underlying(), c)?;
        all_squares &= geometry::bicolored_components(&g)
            .iter()
            .all(|f| f.edges.len() == 4);
    }
    rec.check(
        "colorings.bicolored_squares",
        "all bicoloured cycles of a chiral colouring are squares",
        Stated,
        true,
        all_squares,
        all_squares,
    );
    <[Coloring; 2]>::try_from(by_a).map_err(|v| {
        ClassifyError::Other(format!("expected 2 chiral colourings, found {}", v.len()))
    })
}

fn stage_q(
    rec: &mut Recorder,
    hemi: &EmbeddedGraph,
    p: &Construction,
    q_coloring: &Coloring,
    chiral: Option<&[Coloring; 2]>,
) -> Result<Construction, ClassifyError> {
    use Source::*;
    let colored = ColoredGraph::from_coloring(&hemi.underlying(), q_coloring)?;
    let diagnostics = graph::validate(&colored);
    let valid = rec.check(
        "q.graph.valid",
        "chiral colouring is a proper matching colouring",
        Derived,
        "no violations",
        if diagnostics.is_empty() {
            "no violations".to_string()
        } else {
            diagnostics
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        },
        diagnostics.is_empty(),
    );
    if !valid {
        return Err(ClassifyError::Other("Q colouring is invalid".into()));
    }
    let q = construct_from_coloring(ObjectName::Q, hemi, q_coloring)?;
    let poly = &q.polytope;
    let diag = check_polytopality(poly);
    rec.check(
        "q.polytopal",
        "Q is a 4-polytope",
        Stated,
        "no violations",
        format!("{} violations", diag.len()),
        diag.is_empty(),
    );
    let iso = graph::colored_isomorphism(p.embedding.graph(), q.embedding.graph());
    rec.check(
        "q.isomorphic_to_p",
        "Q is combinatorially isomorphic to P",
        Stated,
        "colour-respecting isomorphism exists",
        match &iso {
            Some(i) => format!(
                "vertex map {:?}, colour map {:?}",
                i.vertex_map, i.color_map
            ),
            None => "none".into(),
        },
        iso.as_ref()
            .is_some_and(|i| i.is_valid(p.embedding.graph(), q.embedding.graph())),
    );
    rec.eq(
        "q.f_vector",
        "same f-vector as P",
        Stated,
        vec![8, 16, 12, 4],
        f_vector(poly),
    );
    rec.eq(
        "q.schlafli",
        "Schlafli type {4,3,3}",
        Stated,
        Some(vec![4, 3, 3]),
        schlafli_type(poly),
    );

    let geo = q.symmetry_group();
    let p_geo = p.symmetry_group();
    rec.eq(
        "q.symmetry.order",
        "Q has precisely 96 symmetries",
        Stated,
        96,
        geo.order(),
    );
    let proper: Vec<_> = geo
        .matrices
        .iter()
        .filter(|m| m.determinant() == 1)
        .collect();
    rec.check(
        "q.symmetry.orientation",
        "all symmetries of Q preserve orientation",
        Stated,
        "all determinants +1",
        format!("{} of {} with determinant +1", proper.len(), geo.order()),
        proper.len() == geo.order(),
    );
    let p_rotations: BTreeSet<&VertexPermutation> = p_geo
        .iter()
        .filter(|(_, m)| m.determinant() == 1)
        .map(|(s, _)| s)
        .collect();
    let q_elements: BTreeSet<&VertexPermutation> = geo.group.elements().iter().collect();
    rec.check(
        "q.symmetry.rotations_of_p",
        "the 96 orientation-preserving symmetries of P are exactly those of Q",
        Stated,
        "equal sets of 96",
        format!(
            "{} rotations of P, equal = {}",
            p_rotations.len(),
            p_rotations == q_elements
        ),
        p_rotations == q_elements,
    );
    let q_colored = q.embedding.graph();
    let reflections: Vec<_> = p_geo
        .iter()
        .filter(|(_, m)| m.determinant() == -1)
        .collect();
    let breaking = reflections
        .iter()
        .filter(|(s, _)| geometry::induced_color_map(q_colored, s).is_none())
        .count();
    rec.check(
        "q.symmetry.reflections_excluded",
        "no orientation-reversing symmetry of P preserves the chiral colouring",
        Stated,
        "every reflection breaks the colouring",
        format!("{breaking} of {} break it", reflections.len()),
        breaking == reflections.len() && !reflections.is_empty(),
    );
    let aut = color_respecting_automorphisms(q_colored);
    let contained = geo.group.elements().iter().all(|s| aut.group.contains(s));
    rec.check(
        "q.symmetry.within_automorphisms",
        "every symmetry of Q is a colour-respecting automorphism",
        Derived,
        "subgroup",
        format!(
            "{} in automorphism group of order {}",
            geo.order(),
            aut.group.order()
        ),
        contained,
    );
    rec.eq(
        "q.automorphisms.order",
        "colour-respecting automorphisms of the chiral K4,4",
        Derived,
        192,
        aut.group.order(),
    );
    let facets: Vec<FaceId> = poly.faces_of_rank(3).collect();
    let facet_orbit: BTreeSet<FaceId> = geo
        .group
        .elements()
        .iter()
        .map(|s| crate::group::induced_face_action(poly, s).map(|a| a[facets[0]]))
        .collect::<Result<_, _>>()?;
    rec.eq(
        "q.symmetry.facet_transitive",
        "rotation group acts transitively on facets",
        Stated,
        facets.len(),
        facet_orbit.len(),
    );
    let class = classify_symmetry(poly, &geo.group)?;
    rec.check(
        "q.chiral",
        "Q is geometrically chiral",
        Stated,
        "chiral, 2 flag orbits of 96, adjacent flags split",
        format!(
            "{}, orbits {:?}, split = {}",
            class.verdict, class.orbit_sizes, class.adjacency_split
        ),
        class.verdict == Verdict::Chiral && class.orbit_sizes == [96, 96],
    );
    let comb = classify_symmetry(poly, &aut.group)?;
    rec.check(
        "q.combinatorially_regular",
        "Q is combinatorially the regular hemi-hypercube",
        Derived,
        "regular under its automorphism group",
        format!("{}, orbits {:?}", comb.verdict, comb.orbit_sizes),
        comb.verdict == Verdict::Regular,
    );
    let min = poly.minimum().unwrap();
    let mut verdicts = Vec::new();
    for &f in &facets {
        let stab = chain_stabilizer(poly, &geo.group, &[f])?;
        let section = poly.section(min, f)?;
        let c = classify_symmetry(&section, &stab)?;
        verdicts.push(format!("{}:{}", c.verdict, fmt_list(&c.orbit_sizes)));
    }
    rec.check(
        "q.facets.chiral",
        "facets of Q are geometrically chiral",
        Stated,
        "4 x chiral:(24,24)",
        verdicts.join(" "),
        verdicts.len() == 4 && verdicts.iter().all(|v| v == "chiral:(24,24)"),
    );

    // stabilisers, checked for every incident pair
    let two_faces: Vec<FaceId> = poly.faces_of_rank(2).collect();
    let mut face_facet = BTreeSet::new();
    for &f2 in &two_faces {
        for &f3 in &facets {
            if poly.leq(f2, f3) {
                face_facet.insert(stabilizer_signature(&chain_stabilizer(
                    poly,
                    &geo.group,
                    &[f2, f3],
                )?));
            }
        }
    }
    rec.eq(
        "q.stabilizer.face_facet",
        "2-face/facet stabiliser is a twist with two 4-cycles",
        Stated,
        vec!["cyclic order 4, cycle type (4,4)".to_string()],
        face_facet.into_iter().collect(),
    );
    let mut vertex_facet = BTreeSet::new();
    for v in poly.faces_of_rank(0).collect::<Vec<_>>() {
        for &f3 in &facets {
            if poly.leq(v, f3) {
                let stab = chain_stabilizer(poly, &geo.group, &[v, f3])?;
                // generated by the 3-fold rotation about the edge at v missing the facet
                let axis_ok = stab.cyclic_generator().is_some_and(|g| {
                    poly.graph().edges().iter().any(|e| {
                        (e.u == poly.face(v).vertices[0] || e.v == poly.face(v).vertices[0])
                            && !poly.face(f3).colors.contains(&e.color)
                            && g.apply(e.u) == e.u
                            && g.apply(e.v) == e.v
                    })
                });
                vertex_facet.insert(format!(
                    "{}, axis edge fixed = {axis_ok}",
                    stabilizer_signature(&stab)
                ));
            }
        }
    }
    rec.eq(
        "q.stabilizer.vertex_facet",
        "vertex/facet stabiliser is a 3-fold edge rotation",
        Stated,
        vec!["cyclic order 3, cycle type (3,3,1,1), axis edge fixed = true".to_string()],
        vertex_facet.into_iter().collect(),
    );
    let mut edge_point = BTreeSet::new();
    for e in poly.graph().edges() {
        edge_point.insert(stabilizer_signature(
            &geo.group.pointwise_stabilizer(&[e.u, e.v]),
        ));
    }
    rec.eq(
        "q.stabilizer.edge_pointwise",
        "pointwise edge stabiliser is a 3-fold rotation",
        Stated,
        vec!["cyclic order 3, cycle type (3,3,1,1)".to_string()],
        edge_point.into_iter().collect(),
    );

    let petrie_p = petrie_polygons(&p.polytope)?;
    let faces_q = two_face_cycles(poly);
    let petrie_q = petrie_polygons(poly)?;
    let faces_p = two_face_cycles(&p.polytope);
    rec.check(
        "q.petrie.faces_of_q",
        "2-faces of Q are Petrie polygons of P",
        Stated,
        "every 2-face of Q is a Petrie polygon of P",
        format!(
            "{} of {} faces",
            faces_q.intersection(&petrie_p).count(),
            faces_q.len()
        ),
        faces_q.is_subset(&petrie_p),
    );
    rec.check(
        "q.petrie.faces_of_p",
        "2-faces of P are Petrie polygons of Q",
        Stated,
        "every 2-face of P is a Petrie polygon of Q",
        format!(
            "{} of {} faces",
            faces_p.intersection(&petrie_q).count(),
            faces_p.len()
        ),
        faces_p.is_subset(&petrie_q),
    );
    let other = chiral.map(|pair| {
        if pair[0].equivalent_to(q_coloring) {
            &pair[1]
        } else {
            &pair[0]
        }
    });
    if let Some(other) = other {
        // reflections of P swap the two chiral forms, so its Petrie polygons
        // are the faces of both
        let mirror = construct_from_coloring(ObjectName::QMirror, hemi, other)?;
        let both: BTreeSet<Vec<usize>> = faces_q
            .union(&two_face_cycles(&mirror.polytope))
            .cloned()
            .collect();
        rec.check(
            "q.petrie.both_forms",
            "Petrie polygons of P are the 2-faces of Q and of its mirror image",
            Derived,
            "24 Petrie polygons, equal to the union",
            format!(
                "{} Petrie polygons, equal = {}",
                petrie_p.len(),
                petrie_p == both
            ),
            petrie_p == both && petrie_p.len() == 24,
        );
    }

    if let Some(other) = other {
        let verdict = enantiomorph_check(q_coloring, other, hemi);
        rec.check(
            "q.enantiomorphs",
            "the two chiral colourings are mirror images",
            Stated,
            Enantiomorphy::Enantiomorphic,
            verdict,
            verdict == Enantiomorphy::Enantiomorphic,
        );
    }
    rec.group("Q", "geometric", &geo.group);
    rec.group("Q", "combinatorial", &aut.group);
    Ok(q)
}

/// "cyclic order k, cycle type (..)" for cyclic groups, "order k, not cyclic" otherwise.
fn stabilizer_signature(g: &PermutationGroup) -> String {
    match g.cyclic_generator() {
        Some(gen) => format!(
            "cyclic order {}, cycle type {}",
            g.order(),
            fmt_list(&gen.cycle_type())
        ),
        None => format!("order {}, not cyclic", g.order()),
    }
}

fn stage_qhat(
    rec: &mut Recorder,
    hemi: &EmbeddedGraph,
    q: &Construction,
) -> Result<(), ClassifyError> {
    use Source::*;
    let poly_q = &q.polytope;
    let mut holonomies = BTreeSet::new();
    let mut lift_lengths = BTreeSet::new();
    for f in poly_q.faces_of_rank(2).collect::<Vec<_>>() {
        let cycle = poly_q.face_cycle(f);
        holonomies.insert(cycle_holonomy(hemi, &cycle)?);
        let lifts = lift_cycle(hemi, &cycle)?;
        lift_lengths.insert(lifts.iter().map(Vec::len).collect::<Vec<_>>());
    }
    rec.eq(
        "qhat.holonomy",
        "every 2-face of Q has holonomy -1",
        Derived,
        vec![-1i8],
        holonomies.into_iter().collect(),
    );
    rec.eq(
        "qhat.lift.octagons",
        "4-gons of Q lift to 8-gons",
        Stated,
        vec![vec![8usize]],
        lift_lengths.into_iter().collect(),
    );

    let qhat = q.double_cover()?;
    let poly = &qhat.polytope;
    rec.eq(
        "qhat.lift.counts",
        "vertices and edges lift to two copies",
        Stated,
        (16, 32),
        (
            qhat.embedding.coords().len(),
            qhat.embedding.graph().edges().len(),
        ),
    );
    let upper: Vec<_> = (0..8).collect();
    let lower: Vec<_> = (8..16).collect();
    let cube_sheets = [upper, lower].iter().all(|sheet| {
        let edges: Vec<_> = qhat
            .embedding
            .graph()
            .edges()
            .iter()
            .filter(|e| sheet.contains(&e.u) && sheet.contains(&e.v))
            .collect();
        let degrees_ok = sheet
            .iter()
            .all(|v| edges.iter().filter(|e| e.u == *v || e.v == *v).count() == 3);
        edges.len() == 12 && degrees_ok
    });
    rec.check(
        "qhat.lift.sheets",
        "the two sheets of lifted vertices span disjoint cubes",
        Stated,
        "two 3-regular sheets with 12 edges each",
        cube_sheets,
        cube_sheets,
    );
    let diag = check_polytopality(poly);
    rec.check(
        "qhat.polytopal",
        "Qhat is a 4-polytope",
        Stated,
        "no violations",
        format!("{} violations", diag.len()),
        diag.is_empty(),
    );
    rec.eq(
        "qhat.f_vector",
        "f-vector of the double cover",
        Derived,
        vec![16, 32, 12, 4],
        f_vector(poly),
    );
    rec.eq(
        "qhat.schlafli",
        "Schlafli type {8,3,3}",
        Stated,
        Some(vec![8, 3, 3]),
        schlafli_type(poly),
    );
    let min = poly.minimum().unwrap();
    let facets: Vec<FaceId> = poly.faces_of_rank(3).collect();
    let mut facet_stats = Vec::new();
    for &f in &facets {
        let s = poly.section(min, f)?;
        let fv = f_vector(&s);
        let euler = fv[0] as i64 - fv[1] as i64 + fv[2] as i64;
        facet_stats.push((fv, schlafli_type(&s), euler, flag_graph(&s)?.len()));
    }
    rec.eq(
        "qhat.facets",
        "four facets of type {8,3} with 16 vertices, 24 edges, 6 faces",
        Stated,
        vec![(vec![16, 24, 6], Some(vec![8, 3]), -2i64, 96usize); 4],
        facet_stats,
    );

    let aut = color_respecting_automorphisms(qhat.embedding.graph());
    rec.check(
        "qhat.not_regular",
        "Qhat is not regular",
        Stated,
        "colour-respecting automorphisms < 384",
        aut.group.order(),
        aut.group.order() < 384,
    );
    let comb = classify_symmetry(poly, &aut.group)?;
    rec.check(
        "qhat.combinatorial",
        "classification under all colour-respecting automorphisms",
        Derived,
        "chiral, 2 flag orbits of 192",
        format!("{}, orbits {:?}", comb.verdict, comb.orbit_sizes),
        comb.verdict == Verdict::Chiral && comb.orbit_sizes == [192, 192],
    );
    let geo = qhat.symmetry_group();
    rec.eq(
        "qhat.symmetry.order",
        "order of the geometric symmetry group",
        Derived,
        192,
        geo.order(),
    );
    let proper = geo.matrices.iter().all(|m| m.determinant() == 1);
    rec.check(
        "qhat.symmetry.orientation",
        "symmetries of Qhat preserve orientation",
        Derived,
        "all determinants +1",
        proper,
        proper,
    );
    let class = classify_symmetry(poly, &geo.group)?;
    rec.check(
        "qhat.chiral",
        "Qhat is a chiral 4-polytope of full rank",
        Stated,
        "chiral, 2 flag orbits of 192, adjacent flags split",
        format!(
            "{}, orbits {:?}, split = {}",
            class.verdict, class.orbit_sizes, class.adjacency_split
        ),
        class.verdict == Verdict::Chiral && class.orbit_sizes == [192, 192],
    );

    // stabiliser of a (2-face, facet) pair as an isometry
    let two_faces: Vec<FaceId> = poly.faces_of_rank(2).collect();
    let mut signatures = BTreeSet::new();
    let mut steps = BTreeSet::new();
    for &f2 in &two_faces {
        for &f3 in &facets {
            if !poly.leq(f2, f3) {
                continue;
            }
            let stab = chain_stabilizer(poly, &geo.group, &[f2, f3])?;
            let Some(gen) = one_step_generator(poly, &stab, f2) else {
                signatures.insert(format!(
                    "{}, no 1-step rotation",
                    stabilizer_signature(&stab)
                ));
                continue;
            };
            let m = geo.matrix_of(gen).expect("group element has a matrix");
            let profile = m.rotation_profile::<f64>(1e-9);
            let angles_ok = profile
                .as_ref()
                .is_ok_and(|p| p.approx_eq([FRAC_PI_4, 3.0 * FRAC_PI_4], 1e-9));
            signatures.insert(format!(
                "{}, det {:+}, order {}, angles pi/4 and 3pi/4 = {angles_ok}",
                stabilizer_signature(&stab),
                m.determinant(),
                m.order()
            ));
            // the twin face: same colours, other component
            let twin = two_faces
                .iter()
                .copied()
                .find(|&t| t != f2 && poly.face(t).colors == poly.face(f2).colors)
                .unwrap();
            steps.insert(rotation_step(&poly.face_cycle(twin), gen));
        }
    }
    rec.eq(
        "qhat.stabilizer.face_facet",
        "2-face/facet stabiliser is an 8-fold double rotation",
        Stated,
        vec![format!(
            "cyclic order 8, cycle type (8,8), det +1, order 8, angles pi/4 and 3pi/4 = true"
        )],
        signatures.into_iter().collect(),
    );
    rec.eq(
        "qhat.stabilizer.twin_face_step",
        "1-step rotation of a face is a 3-step rotation of its twin",
        Stated,
        vec![Some(3usize)],
        steps.into_iter().collect(),
    );

    let coords = qhat.embedding.coords();
    let face_points = |p: &Polytope, f: FaceId, coords: &[Point]| -> Vec<Point> {
        p.face(f).vertices.iter().map(|&v| coords[v]).collect()
    };
    let helix_ranks: BTreeSet<usize> = two_faces
        .iter()
        .map(|&f| geometry::affine_rank(&face_points(poly, f, coords)))
        .collect();
    rec.eq(
        "qhat.helix",
        "2-faces of Qhat are helices in 4-space",
        Stated,
        vec![4usize],
        helix_ranks.into_iter().collect(),
    );
    let cube = construct(ObjectName::Hypercube)?;
    let square_ranks: BTreeSet<usize> = cube
        .polytope
        .faces_of_rank(2)
        .map(|f| geometry::affine_rank(&face_points(&cube.polytope, f, cube.embedding.coords())))
        .collect();
    rec.eq(
        "qhat.helix.regular_contrast",
        "2-faces of the 4-cube are planar squares",
        Derived,
        vec![2usize],
        square_ranks.into_iter().collect(),
    );
    rec.eq(
        "qhat.full_rank",
        "vertices of Qhat span 4-space",
        Stated,
        4,
        geometry::affine_rank(coords),
    );
    rec.group("Qhat", "geometric", &geo.group);
    rec.group("Qhat", "combinatorial", &aut.group);
    Ok(())
}

/// A generator of a cyclic stabiliser that advances the 2-face `face` by one
/// step along its cycle.
fn one_step_generator<'a>(
    p: &Polytope,
    stab: &'a PermutationGroup,
    face: FaceId,
) -> Option<&'a VertexPermutation> {
    let cycle = p.face_cycle(face);
    stab.elements()
        .iter()
        .find(|g| g.order() == stab.order() && rotation_step(&cycle, g) == Some(1))
}

/// The step `k` (taken in `1..=len/2`) by which `g` rotates a vertex cycle,
/// or `None` if `g` does not act on it as a rotation.
fn rotation_step(cycle: &[usize], g: &VertexPermutation) -> Option<usize> {
    let n = cycle.len();
    let pos = |v: usize| cycle.iter().position(|&x| x == v);
    let shift = (pos(g.apply(cycle[0]))? + n) % n;
    let is_rotation = (0..n).all(|i| g.apply(cycle[i]) == cycle[(i + shift) % n]);
    is_rotation.then_some(shift.min(n - shift))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_names_round_trip() {
        for o in ObjectName::ALL {
            assert_eq!(o.as_str().parse::<ObjectName>(), Ok(o));
        }
        assert!("R".parse::<ObjectName>().is_err());
    }

    #[test]
    fn rotation_steps() {
        let cycle = [0, 1, 2, 3, 4, 5, 6, 7];
        let g = VertexPermutation::from_cycles(8, &[&[0, 3, 6, 1, 4, 7, 2, 5]]);
        assert_eq!(rotation_step(&cycle, &g), Some(3));
        let flip = VertexPermutation::from_cycles(8, &[&[1, 7], &[2, 6], &[3, 5]]);
        assert_eq!(rotation_step(&cycle, &flip), None);
    }

    #[test]
    fn enantiomorph_verdicts() {
        let hemi = hemicube_embedding();
        let [a, b] = chiral_pair().unwrap();
        assert_eq!(
            enantiomorph_check(&a, &b, &hemi),
            Enantiomorphy::Enantiomorphic
        );
        assert_eq!(enantiomorph_check(&a, &a, &hemi), Enantiomorphy::SameForm);
        assert_eq!(
            enantiomorph_check(&hemi.direction_coloring(), &a, &hemi),
            Enantiomorphy::Neither
        );
    }

    #[test]
    fn constructions() {
        assert_eq!(
            f_vector(&construct(ObjectName::QMirror).unwrap().polytope),
            vec![8, 16, 12, 4]
        );
        assert_eq!(
            f_vector(&construct(ObjectName::Hypercube).unwrap().polytope),
            vec![16, 32, 24, 8]
        );
    }
}
