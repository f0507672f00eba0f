//! 4-dimensional OFF export of a polytope's vertices and 2-faces.
//!
//! ```text
//! 4OFF
//! # antipodal 8        (only for projective objects: vertex i ~ vertex i+8)
//! <vertices> <2-faces> <edges>
//! x0 x1 x2 x3          (one line per vertex, entries ±1)
//! k i_1 .. i_k         (one line per 2-face, a vertex cycle)
//! ```

use std::fmt::Write;

use super::Point;
use crate::polytope::Polytope;

/// Writes the 2-faces of `p` as vertex cycles over `coords`. When
/// `antipodal` is set, vertices `i` and `i + antipodal` are marked as the two
/// lifts of one projective point.
pub fn write_off(p: &Polytope, coords: &[Point], antipodal: Option<usize>) -> String {
    let faces: Vec<Vec<usize>> = p.faces_of_rank(2).map(|f| p.face_cycle(f)).collect();
    let mut out = String::from("4OFF\n");
    if let Some(shift) = antipodal {
        writeln!(out, "# antipodal {shift}").unwrap();
    }
    writeln!(
        out,
        "{} {} {}",
        coords.len(),
        faces.len(),
        p.graph().edges().len()
    )
    .unwrap();
    for x in coords {
        let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", parts.join(" ")).unwrap();
    }
    for cycle in faces {
        let parts: Vec<String> = cycle.iter().map(ToString::to_string).collect();
        writeln!(out, "{} {}", cycle.len(), parts.join(" ")).unwrap();
    }
    out
}

/// A parsed 4OFF file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffMesh {
    pub antipodal: Option<usize>,
    pub vertices: Vec<Point>,
    pub faces: Vec<Vec<usize>>,
    pub n_edges: usize,
}

/// Reads the format produced by [`write_off`].
pub fn read_off(text: &str) -> Result<OffMesh, String> {
    let mut antipodal = None;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    if lines.next() != Some("4OFF") {
        return Err("missing 4OFF header".into());
    }
    let mut data = Vec::new();
    for line in lines {
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("antipodal") {
                antipodal = Some(
                    n.trim()
                        .parse()
                        .map_err(|e| format!("bad antipodal flag: {e}"))?,
                );
            }
        } else {
            data.push(line);
        }
    }
    let nums = |line: &str| -> Result<Vec<i64>, String> {
        line.split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
            .collect()
    };
    let header = nums(data.first().ok_or("missing counts")?)?;
    let [nv, nf, ne] = <[i64; 3]>::try_from(header).map_err(|_| "counts line needs 3 numbers")?;
    let (nv, nf) = (nv as usize, nf as usize);
    if data.len() != 1 + nv + nf {
        return Err(format!(
            "expected {} data lines, found {}",
            1 + nv + nf,
            data.len()
        ));
    }
    let mut vertices = Vec::with_capacity(nv);
    for line in &data[1..=nv] {
        let v = nums(line)?;
        let p: [i64; 4] = v.try_into().map_err(|_| "vertex needs 4 coordinates")?;
        vertices.push(p.map(|x| x as i8));
    }
    let mut faces = Vec::with_capacity(nf);
    for line in &data[1 + nv..] {
        let v = nums(line)?;
        let (&k, rest) = v.split_first().ok_or("empty face line")?;
        if rest.len() != k as usize {
            return Err(format!("face declares {k} vertices, lists {}", rest.len()));
        }
        faces.push(rest.iter().map(|&x| x as usize).collect());
    }
    Ok(OffMesh {
        antipodal,
        vertices,
        faces,
        n_edges: ne as usize,
    })
}
