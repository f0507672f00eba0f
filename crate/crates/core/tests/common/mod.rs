//! Brute-force reference computations, written independently of the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

pub type Pt = [i8; 4];

/// All 384 signed permutations as `(perm, signs)`: `x -> y` with
/// `y[perm[j]] = signs[j] * x[j]`.
pub fn signed_permutations() -> Vec<([usize; 4], [i8; 4])> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let perm = [a, b, c, d];
                    let distinct: BTreeSet<_> = perm.iter().collect();
                    if distinct.len() != 4 {
                        continue;
                    }
                    for mask in 0..16 {
                        let signs = [0, 1, 2, 3].map(|j| if mask >> j & 1 == 1 { -1 } else { 1 });
                        out.push((perm, signs));
                    }
                }
            }
        }
    }
    out
}

pub fn act(perm: &[usize; 4], signs: &[i8; 4], x: &Pt) -> Pt {
    let mut y = [0; 4];
    for j in 0..4 {
        y[perm[j]] = signs[j] * x[j];
    }
    y
}

fn canon(x: Pt, projective: bool) -> Pt {
    if projective && x[0] < 0 {
        x.map(|t| -t)
    } else {
        x
    }
}

/// Number of signed permutations (modulo `±I` when projective) that map the
/// point set onto itself, edges onto edges and colour classes onto colour
/// classes.
pub fn symmetry_order(
    coords: &[Pt],
    edges: &[(usize, usize, usize)],
    projective: bool,
    respect_colours: bool,
) -> usize {
    let index: BTreeMap<Pt, usize> = coords
        .iter()
        .enumerate()
        .map(|(i, &x)| (canon(x, projective), i))
        .collect();
    let colour_of: BTreeMap<(usize, usize), usize> = edges
        .iter()
        .map(|&(u, v, c)| ((u.min(v), u.max(v)), c))
        .collect();
    let mut count = 0;
    for (perm, signs) in signed_permutations() {
        let image: Option<Vec<usize>> = coords
            .iter()
            .map(|x| {
                index
                    .get(&canon(act(&perm, &signs, x), projective))
                    .copied()
            })
            .collect();
        let Some(image) = image else { continue };
        let mut cmap: BTreeMap<usize, usize> = BTreeMap::new();
        let ok = edges.iter().all(|&(u, v, c)| {
            let (a, b) = (image[u], image[v]);
            match colour_of.get(&(a.min(b), a.max(b))) {
                None => false,
                Some(&d) if respect_colours => *cmap.entry(c).or_insert(d) == d,
                Some(_) => true,
            }
        });
        let injective: BTreeSet<_> = cmap.values().collect();
        if ok && injective.len() == cmap.len() {
            count += 1;
        }
    }
    if projective {
        count / 2
    } else {
        count
    }
}

/// All 4x4 Latin squares: entry `[i][j]` is the colour of edge `v_i u_j`.
pub fn latin_squares() -> Vec<[[usize; 4]; 4]> {
    let mut rows = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let r = [a, b, c, d];
                    if r.iter().collect::<BTreeSet<_>>().len() == 4 {
                        rows.push(r);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for r0 in &rows {
        for r1 in &rows {
            for r2 in &rows {
                for r3 in &rows {
                    let sq = [*r0, *r1, *r2, *r3];
                    if (0..4).all(|j| (0..4).map(|i| sq[i][j]).collect::<BTreeSet<_>>().len() == 4)
                    {
                        out.push(sq);
                    }
                }
            }
        }
    }
    out
}

/// Number of connected components of the graph on `n` vertices.
pub fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut count = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Face counts of the colourful polytope: components of every `i`-colour
/// subgraph, for `i` in `0..k`.
pub fn colourful_f_vector(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> Vec<usize> {
    (0..k)
        .map(|i| {
            subsets(k, i)
                .iter()
                .map(|set| {
                    let sub: Vec<_> = edges
                        .iter()
                        .filter(|e| set.contains(&e.2))
                        .map(|e| (e.0, e.1))
                        .collect();
                    component_count(n, &sub)
                })
                .sum()
        })
        .collect()
}

pub fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    (0..1u32 << k)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..k).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Affine rank by Gaussian elimination over the rationals.
pub fn rational_affine_rank(points: &[Pt]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let mut rows: Vec<Vec<Ratio<i64>>> = points[1..]
        .iter()
        .map(|p| {
            (0..4)
                .map(|j| Ratio::from_integer(i64::from(p[j] - base[j])))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..4 {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != Ratio::from_integer(0))
        else {
            continue;
        };
        rows.swap(rank, pivot);
        for i in 0..rows.len() {
            if i != rank {
                let f = rows[i][col] / rows[rank][col];
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= p * f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The hypercube walk lifted from a projective cycle: follows representatives
/// step by step and returns the number of steps until the walk closes up.
pub fn lifted_length(coords: &[Pt], cycle: &[usize]) -> usize {
    let start = coords[cycle[0]];
    let mut cur = start;
    let mut steps = 0;
    loop {
        let next = coords[cycle[(steps + 1) % cycle.len()]];
        let neg = next.map(|t| -t);
        let differ = |a: &Pt, b: &Pt| (0..4).filter(|&j| a[j] != b[j]).count();
        cur = if differ(&cur, &next) == 1 { next } else { neg };
        steps += 1;
        if cur == start && steps % cycle.len() == 0 {
            return steps;
        }
    }
}
