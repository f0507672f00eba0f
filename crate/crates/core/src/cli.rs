//! Command-line front end.
//!
//! ```text
//! chiral-polytope build <OBJECT> [--format text|json|off] [--output PATH]
//! chiral-polytope export <OBJECT> [--format off|json] [--output PATH]
//! chiral-polytope colorings [--property P [--up-to-color-permutation]] [--format text|json]
//! chiral-polytope verify [--format text|json] [--q-coloring PATH] [--output PATH]
//! ```
//!
//! Exit status is 0 on success, 1 when a check or computation fails and 2 on
//! a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{self, construct, Construction, ObjectName, VerifyOptions};
use crate::geometry::{colorings_with_property, hemicube_embedding, ChiralProperty, Point};
use crate::graph::{ColoredGraph, Coloring};
use crate::group::{classify_symmetry, SymmetryClassification};
use crate::polytope::{f_vector, flag_graph, schlafli_type, PolytopeExport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "chiral-polytope",
    version,
    about = "Colourful polytopes on K4,4 and the 4-cube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct an object and summarise it.
    Build {
        #[arg(value_parser = parse_object)]
        object: ObjectName,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write an object's faces as 4OFF or JSON.
    Export {
        #[arg(value_parser = parse_object)]
        object: ObjectName,
        #[arg(long, value_enum, default_value_t = Format::Off)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the regular and both chiral colourings of the projective K4,4,
    /// or with --property enumerate every colouring having that property.
    Colorings {
        #[arg(long, value_enum)]
        property: Option<Property>,
        #[arg(long, requires = "property")]
        up_to_color_permutation: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every structural check and print the report.
    Verify {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Coloured graph JSON replacing the colouring of Q.
        #[arg(long)]
        q_coloring: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    /// Both chiral properties (they agree).
    Chiral,
    /// Each colour class meets the four direction classes once.
    Transversal,
    /// Every 2-face uses four directions.
    FourColoredFaces,
}

fn parse_object(s: &str) -> Result<ObjectName, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Runtime(String),
    Checks(String),
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, output)) => match emit(&text, output.as_ref(), out) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_FAILURE
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
        Err(Failure::Checks(report)) => {
            let _ = out.write_all(report.as_bytes());
            EXIT_FAILURE
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

fn execute(command: Command) -> Result<(String, Option<PathBuf>), Failure> {
    match command {
        Command::Build {
            object,
            format,
            output,
        } => {
            let c = construct(object).map_err(runtime)?;
            let text = match format {
                Format::Text => summary(&c)?.to_text(),
                Format::Json => json(&summary(&c)?),
                Format::Off => c.to_off().map_err(runtime)?,
            };
            Ok((text, output))
        }
        Command::Export {
            object,
            format,
            output,
        } => {
            let c = construct(object).map_err(runtime)?;
            let text = match format {
                Format::Off => c.to_off().map_err(runtime)?,
                Format::Json => json(&ObjectExport::new(&c)),
                Format::Text => {
                    return Err(Failure::Usage(
                        "export supports --format off or json".into(),
                    ))
                }
            };
            Ok((text, output))
        }
        Command::Colorings {
            property,
            up_to_color_permutation,
            format,
            output,
        } => {
            let hemi = hemicube_embedding();
            let annotate = |object: Option<ObjectName>, c: &Coloring| ColoringEntry {
                object: object.map(|o| o.as_str().to_owned()),
                transversal: ChiralProperty::Transversal.holds(&hemi, c),
                four_colored_faces: ChiralProperty::FourColoredFaces.holds(&hemi, c),
                assignment: c.assignment.clone(),
            };
            let listing = match property {
                None => {
                    let mut colorings = Vec::new();
                    for name in [ObjectName::P, ObjectName::Q, ObjectName::QMirror] {
                        let c = construct(name).map_err(runtime)?.coloring();
                        colorings.push(annotate(Some(name), &c));
                    }
                    ColoringListing {
                        property: None,
                        up_to_color_permutation: true,
                        count: colorings.len(),
                        colorings,
                    }
                }
                Some(property) => {
                    let prop = match property {
                        Property::Chiral | Property::Transversal => ChiralProperty::Transversal,
                        Property::FourColoredFaces => ChiralProperty::FourColoredFaces,
                    };
                    let found = colorings_with_property(&hemi, prop, up_to_color_permutation)
                        .map_err(runtime)?;
                    ColoringListing {
                        property: Some(format!("{property:?}").to_lowercase()),
                        up_to_color_permutation,
                        count: found.len(),
                        colorings: found.iter().map(|c| annotate(None, c)).collect(),
                    }
                }
            };
            let text = match format {
                Format::Text => listing.to_text(),
                Format::Json => json(&listing),
                Format::Off => {
                    return Err(Failure::Usage(
                        "colorings supports --format text or json".into(),
                    ))
                }
            };
            Ok((text, output))
        }
        Command::Verify {
            format,
            q_coloring,
            output,
        } => {
            let mut options = VerifyOptions::default();
            if let Some(path) = q_coloring {
                options.q_coloring = Some(read_q_coloring(&path)?);
            }
            let report = classify::verify_with(&options);
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
                Format::Off => {
                    return Err(Failure::Usage(
                        "verify supports --format text or json".into(),
                    ))
                }
            };
            if report.overall {
                Ok((text, output))
            } else {
                if let Some(path) = output {
                    std::fs::write(path, &text).map_err(runtime)?;
                }
                Err(Failure::Checks(report.to_text()))
            }
        }
    }
}

fn read_q_coloring(path: &PathBuf) -> Result<Coloring, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    let g: ColoredGraph = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: not a coloured graph: {e}", path.display())))?;
    if g.underlying() != hemicube_embedding().underlying() {
        return Err(Failure::Usage(
            "colouring must be on the edges of the projective K4,4".into(),
        ));
    }
    Ok(g.coloring())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

#[derive(Serialize)]
struct ColoringListing {
    property: Option<String>,
    up_to_color_permutation: bool,
    count: usize,
    colorings: Vec<ColoringEntry>,
}

#[derive(Serialize)]
struct ColoringEntry {
    object: Option<String>,
    transversal: bool,
    four_colored_faces: bool,
    assignment: Vec<usize>,
}

impl ColoringListing {
    fn to_text(&self) -> String {
        let mut s = match &self.property {
            None => "regular and chiral colourings\n".to_owned(),
            Some(property) => format!(
                "{} colourings with property {}{}\n",
                self.count,
                property,
                if self.up_to_color_permutation {
                    " up to colour permutation"
                } else {
                    ""
                }
            ),
        };
        for c in &self.colorings {
            let digits: String = c.assignment.iter().map(ToString::to_string).collect();
            if let Some(object) = &c.object {
                s.push_str(&format!("{object:<9} "));
            }
            s.push_str(&format!(
                "{digits}  transversal={} four-colored-faces={}\n",
                c.transversal, c.four_colored_faces
            ));
        }
        s
    }
}

#[derive(Serialize)]
struct Summary {
    object: String,
    vertices: usize,
    edges: usize,
    colors: usize,
    projective: bool,
    f_vector: Vec<usize>,
    schlafli_type: Option<Vec<usize>>,
    flags: usize,
    symmetry_order: usize,
    symmetry: SymmetryClassification,
}

impl Summary {
    fn to_text(&self) -> String {
        let list = |xs: &[usize], open: &str, close: &str| {
            let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
            format!("{open}{}{close}", parts.join(","))
        };
        format!(
            "object: {}\nvertices: {}\nedges: {}\ncolours: {}\nprojective: {}\nf-vector: {}\nschlafli type: {}\nflags: {}\nsymmetry group order: {}\nsymmetry: {} (flag orbits {})\n",
            self.object,
            self.vertices,
            self.edges,
            self.colors,
            self.projective,
            list(&self.f_vector, "(", ")"),
            self.schlafli_type
                .as_deref()
                .map_or_else(|| "none".to_string(), |t| list(t, "{", "}")),
            self.flags,
            self.symmetry_order,
            self.symmetry.verdict,
            list(&self.symmetry.orbit_sizes, "", ""),
        )
    }
}

fn summary(c: &Construction) -> Result<Summary, Failure> {
    let group = c.symmetry_group();
    let symmetry = classify_symmetry(&c.polytope, &group.group).map_err(runtime)?;
    let g = c.embedding.graph();
    Ok(Summary {
        object: c.name.to_string(),
        vertices: g.n_vertices(),
        edges: g.edges().len(),
        colors: g.n_colors(),
        projective: c.embedding.is_projective(),
        f_vector: f_vector(&c.polytope),
        schlafli_type: schlafli_type(&c.polytope),
        flags: flag_graph(&c.polytope).map_err(runtime)?.len(),
        symmetry_order: group.order(),
        symmetry,
    })
}

#[derive(Serialize)]
struct ObjectExport<'a> {
    object: String,
    projective: bool,
    coordinates: &'a [Point],
    graph: &'a ColoredGraph,
    polytope: PolytopeExport,
}

impl<'a> ObjectExport<'a> {
    fn new(c: &'a Construction) -> Self {
        ObjectExport {
            object: c.name.to_string(),
            projective: c.embedding.is_projective(),
            coordinates: c.embedding.coords(),
            graph: c.embedding.graph(),
            polytope: c.polytope.to_export(),
        }
    }
}
