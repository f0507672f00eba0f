//! Signed permutation matrices of 4-space, optionally taken modulo `±I`.

use std::fmt;

use num_traits::{Float, FloatConst};
use serde::Serialize;

use super::linalg::{signed_cycle_angles, RotationProfile};
use super::{GeometryError, Point};

pub const DIM: usize = 4;

/// A 4x4 signed permutation matrix. Column `j` maps `e_j` to
/// `signs[j] * e_{perm[j]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IsometryMatrix {
    perm: [usize; DIM],
    signs: [i8; DIM],
    projective: bool,
}

impl IsometryMatrix {
    pub fn identity() -> Self {
        IsometryMatrix {
            perm: [0, 1, 2, 3],
            signs: [1; DIM],
            projective: false,
        }
    }

    /// Panics unless `perm` is a permutation and every sign is `±1`.
    pub fn new(perm: [usize; DIM], signs: [i8; DIM]) -> Self {
        let mut seen = [false; DIM];
        for &p in &perm {
            assert!(p < DIM && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        assert!(signs.iter().all(|s| s.abs() == 1), "signs must be ±1");
        IsometryMatrix {
            perm,
            signs,
            projective: false,
        }
    }

    pub fn diagonal(signs: [i8; DIM]) -> Self {
        IsometryMatrix::new([0, 1, 2, 3], signs)
    }

    /// All 384 signed permutation matrices, permutations in lexicographic
    /// order and sign patterns in binary order (`+` before `-`).
    pub fn all() -> Vec<IsometryMatrix> {
        let mut perms = Vec::new();
        permutations(&mut [0, 1, 2, 3], 0, &mut perms);
        perms.sort();
        let mut out = Vec::with_capacity(384);
        for perm in perms {
            for mask in 0..16u8 {
                let signs = std::array::from_fn(|j| {
                    if mask >> (DIM - 1 - j) & 1 == 1 {
                        -1
                    } else {
                        1
                    }
                });
                out.push(IsometryMatrix::new(perm, signs));
            }
        }
        out
    }

    /// The 192 classes modulo `±I`, by canonical representative.
    pub fn all_projective() -> Vec<IsometryMatrix> {
        let mut out: Vec<_> = IsometryMatrix::all()
            .into_iter()
            .map(|m| m.projectivized())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// The class modulo `±I`, represented by the lift whose entry in row 0 is
    /// positive.
    pub fn projectivized(&self) -> IsometryMatrix {
        let col = self.perm.iter().position(|&p| p == 0).unwrap();
        let m = if self.signs[col] < 0 {
            self.negated()
        } else {
            *self
        };
        IsometryMatrix {
            projective: true,
            ..m
        }
    }

    pub fn negated(&self) -> IsometryMatrix {
        IsometryMatrix {
            signs: self.signs.map(|s| -s),
            ..*self
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        if self.perm[col] == row {
            self.signs[col]
        } else {
            0
        }
    }

    pub fn to_rows(&self) -> [[i8; DIM]; DIM] {
        std::array::from_fn(|r| std::array::from_fn(|c| self.entry(r, c)))
    }

    pub fn apply(&self, x: &Point) -> Point {
        let mut y = [0; DIM];
        for j in 0..DIM {
            y[self.perm[j]] = self.signs[j] * x[j];
        }
        y
    }

    /// Matrix product `self * other`; projective if either factor is.
    pub fn mul(&self, other: &IsometryMatrix) -> IsometryMatrix {
        let perm = std::array::from_fn(|j| self.perm[other.perm[j]]);
        let signs = std::array::from_fn(|j| other.signs[j] * self.signs[other.perm[j]]);
        let m = IsometryMatrix {
            perm,
            signs,
            projective: false,
        };
        if self.projective || other.projective {
            m.projectivized()
        } else {
            m
        }
    }

    /// Sign of the permutation times the product of the signs. In dimension 4
    /// `det(-M) = det(M)`, so this is well defined on projective classes.
    pub fn determinant(&self) -> i8 {
        let inversions = (0..DIM)
            .flat_map(|i| (i + 1..DIM).map(move |j| (i, j)))
            .filter(|&(i, j)| self.perm[i] > self.perm[j])
            .count();
        let perm_sign = if inversions % 2 == 0 { 1 } else { -1 };
        perm_sign * self.signs.iter().product::<i8>()
    }

    pub fn order(&self) -> usize {
        let mut m = *self;
        let id = if self.projective {
            IsometryMatrix::identity().projectivized()
        } else {
            IsometryMatrix::identity()
        };
        let mut k = 1;
        while m != id {
            m = m.mul(self);
            k += 1;
        }
        k
    }

    /// Cycles of the underlying permutation with the product of signs along
    /// each cycle.
    pub fn signed_cycles(&self) -> Vec<(usize, i8)> {
        let mut seen = [false; DIM];
        let mut out = Vec::new();
        for start in 0..DIM {
            if seen[start] {
                continue;
            }
            let (mut len, mut sign, mut j) = (0, 1i8, start);
            while !seen[j] {
                seen[j] = true;
                sign *= self.signs[j];
                len += 1;
                j = self.perm[j];
            }
            out.push((len, sign));
        }
        out
    }

    /// Rotation angles of the two invariant planes, from the exact eigenvalues
    /// of the signed permutation.
    pub fn rotation_profile<T: Float + FloatConst>(
        &self,
        tol: T,
    ) -> Result<RotationProfile<T>, GeometryError> {
        if self.determinant() != 1 {
            return Err(GeometryError::NotARotation);
        }
        let angles = signed_cycle_angles::<T>(&self.signed_cycles());
        RotationProfile::from_eigen_angles(&angles, tol).ok_or(GeometryError::NotARotation)
    }
}

fn permutations(a: &mut [usize; DIM], k: usize, out: &mut Vec<[usize; DIM]>) {
    if k == DIM {
        out.push(*a);
        return;
    }
    for i in k..DIM {
        a.swap(k, i);
        permutations(a, k + 1, out);
        a.swap(k, i);
    }
}

impl fmt::Display for IsometryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| format!("{x:2}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Orientation of an isometry: its determinant.
pub fn orientation(m: &IsometryMatrix) -> i8 {
    m.determinant()
}

pub fn rotation_profile(m: &IsometryMatrix) -> Result<RotationProfile<f64>, GeometryError> {
    m.rotation_profile(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::determinant;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn counts() {
        assert_eq!(IsometryMatrix::all().len(), 384);
        assert_eq!(IsometryMatrix::all_projective().len(), 192);
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&IsometryMatrix::identity()), 1);
        assert_eq!(orientation(&IsometryMatrix::diagonal([-1; 4])), 1);
        assert_eq!(orientation(&IsometryMatrix::diagonal([-1, 1, 1, 1])), -1);
    }

    #[test]
    fn determinant_agrees_with_elimination() {
        for m in IsometryMatrix::all() {
            let rows = m.to_rows().map(|r| r.map(i64::from));
            assert_eq!(i64::from(m.determinant()), determinant(&rows));
            assert_eq!(m.determinant(), m.negated().determinant());
        }
    }

    #[test]
    fn product_matches_action() {
        let all = IsometryMatrix::all();
        let x: Point = [1, -1, -1, 1];
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(11) {
                assert_eq!(a.mul(b).apply(&x), a.apply(&b.apply(&x)));
            }
        }
    }

    #[test]
    fn projective_identity_absorbs_minus_identity() {
        let minus = IsometryMatrix::diagonal([-1; 4]).projectivized();
        assert_eq!(minus, IsometryMatrix::identity().projectivized());
        assert_eq!(minus.order(), 1);
    }

    #[test]
    fn profiles() {
        assert!(rotation_profile(&IsometryMatrix::identity())
            .unwrap()
            .is_identity(1e-9));
        // x0 -> x1 -> -x0: a quarter turn in one plane
        let quarter = IsometryMatrix::new([1, 0, 2, 3], [1, -1, 1, 1]);
        assert_eq!(quarter.determinant(), 1);
        let p = rotation_profile(&quarter).unwrap();
        assert!(p.approx_eq([FRAC_PI_2, 0.0], 1e-9));
        // e0 -> e1 -> e2 -> e3 -> -e0
        let eighth = IsometryMatrix::new([1, 2, 3, 0], [1, 1, 1, -1]);
        assert_eq!(eighth.order(), 8);
        assert!(rotation_profile(&eighth)
            .unwrap()
            .approx_eq([FRAC_PI_4, 3.0 * FRAC_PI_4], 1e-9));
        assert_eq!(
            rotation_profile(&IsometryMatrix::diagonal([-1, 1, 1, 1])),
            Err(GeometryError::NotARotation)
        );
    }
}
