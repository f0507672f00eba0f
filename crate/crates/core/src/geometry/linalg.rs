//! Small dense linear algebra, generic over the scalar.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination, which stays
//! exact over any integral domain: `i64`, big integers and rationals all work.
//! Floating point types are accepted as well; they are exact on the small
//! integer inputs this crate produces.

use num_traits::{Float, FloatConst, Num};

/// Rank of an `m x N` matrix given by rows.
pub fn rank<T, const N: usize>(rows: &[[T; N]]) -> usize
where
    T: Num + Clone,
{
    let mut a: Vec<[T; N]> = rows.to_vec();
    let mut prev = T::one();
    let mut r = 0;
    for col in 0..N {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in col + 1..N {
                let v = a[r][col].clone() * a[i][j].clone() - a[i][col].clone() * a[r][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][col] = T::zero();
        }
        prev = a[r][col].clone();
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of `points` (0 for a single point).
pub fn affine_rank<T, const N: usize>(points: &[[T; N]]) -> usize
where
    T: Num + Clone,
{
    let Some(base) = points.first() else {
        return 0;
    };
    let diffs: Vec<[T; N]> = points[1..]
        .iter()
        .map(|p| std::array::from_fn(|j| p[j].clone() - base[j].clone()))
        .collect();
    rank(&diffs)
}

/// Determinant of a square matrix.
pub fn determinant<T, const N: usize>(m: &[[T; N]; N]) -> T
where
    T: Num + Clone,
{
    let mut a = m.clone();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..N {
        let Some(p) = (k..N).find(|&i| !a[i][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..N {
            for j in k + 1..N {
                let v = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[N - 1][N - 1].clone();
    if negate {
        T::zero() - d
    } else {
        d
    }
}

/// Eigenvalue arguments of a signed permutation matrix, folded into `[0, π]`.
///
/// A cycle of length `k` of the underlying permutation whose signs multiply to
/// `s` contributes the `k` roots of `λ^k = s`.
pub fn signed_cycle_angles<T>(cycles: &[(usize, i8)]) -> Vec<T>
where
    T: Float + FloatConst,
{
    let mut out = Vec::new();
    for &(len, sign) in cycles {
        let k = T::from(len).unwrap();
        let offset = if sign < 0 { T::PI() } else { T::zero() };
        for m in 0..len {
            let mut theta = (T::TAU() * T::from(m).unwrap() + offset) / k;
            if theta > T::PI() {
                theta = T::TAU() - theta;
            }
            out.push(theta);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// The two rotation angles of a proper rotation of 4-space.
///
/// Angles lie in `[0, π]` in increasing order: `[0, 0]` is the identity and a
/// single zero marks a simple rotation fixing a plane pointwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationProfile<T> {
    pub angles: [T; 2],
}

impl<T: Float + FloatConst> RotationProfile<T> {
    /// Pairs up the four eigenvalue arguments of a rotation. Returns `None`
    /// if they do not come in equal pairs within `tol`.
    pub fn from_eigen_angles(angles: &[T], tol: T) -> Option<Self> {
        let [a, b, c, d] = <[T; 4]>::try_from(angles).ok()?;
        ((b - a).abs() <= tol && (d - c).abs() <= tol).then_some(RotationProfile { angles: [a, c] })
    }

    pub fn is_identity(&self, tol: T) -> bool {
        self.angles.iter().all(|a| a.abs() <= tol)
    }

    pub fn is_simple(&self, tol: T) -> bool {
        self.angles[0].abs() <= tol && self.angles[1].abs() > tol
    }

    /// Compares against an unordered pair of angles.
    pub fn approx_eq(&self, mut expected: [T; 2], tol: T) -> bool {
        if expected[0] > expected[1] {
            expected.swap(0, 1);
        }
        (self.angles[0] - expected[0]).abs() <= tol && (self.angles[1] - expected[1]).abs() <= tol
    }
}
