//! Finite metric spaces, point subsets, enlargements, Hausdorff distance,
//! and box products: the substrate for every finite-backend computation.
//!
//! A [`MetricSpace`] is validated on construction: symmetry, zero diagonal,
//! identity of indiscernibles, and the triangle inequality are all checked
//! with exact comparisons, and the first violated axiom is reported with
//! witness indices. Every ball and enlargement in this crate is *open*
//! (`d < ε`, never `≤`).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::scalar::{smax, smin, Ext, Scalar};

/// Rejection naming the first violated axiom, with witness indices.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("a metric space needs at least two points, got {points}")]
    TooFewPoints { points: usize },
    #[error("expected {expected} matrix rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, got: usize },
    #[error("distance at ({i},{j}) is not a finite number")]
    NotFinite { i: usize, j: usize },
    #[error("negative distance at ({i},{j})")]
    NegativeDistance { i: usize, j: usize },
    #[error("nonzero diagonal entry at ({i},{i})")]
    NonzeroDiagonal { i: usize },
    #[error("distinct points {i} and {j} at distance zero")]
    ZeroDistance { i: usize, j: usize },
    #[error("asymmetric entries at ({i},{j})")]
    Asymmetry { i: usize, j: usize },
    #[error("triangle inequality violated on ({i},{j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("subsets belong to different spaces")]
    MixedSpaces,
    #[error("subset must be non-empty")]
    EmptySubset,
    #[error("point index {index} out of range for a {len}-point space")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("product would have {points} points, exceeding the cap of {cap}")]
    SizeOverflow { points: usize, cap: usize },
    #[error("scale must be strictly positive and finite")]
    BadScale,
}

/// Hard cap on box-product size; products beyond this are rejected.
pub const MAX_PRODUCT_POINTS: usize = 65_536;

/// A validated finite metric space: labelled points plus a symmetric
/// distance matrix with zero diagonal satisfying the triangle inequality.
///
/// Immutable after construction and safe to share across readers.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace<T> {
    labels: Vec<String>,
    n: usize,
    dist: Vec<T>, // dense row-major n*n
}

impl<T: Scalar> MetricSpace<T> {
    /// Validates `matrix` against the metric axioms and returns the space,
    /// or the first violated axiom in a fixed check order: shape, point
    /// count, finiteness, negativity, diagonal, identity, symmetry,
    /// triangle inequality.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<T>>) -> Result<Self, MetricError> {
        let n = labels.len();
        if matrix.len() != n {
            return Err(MetricError::RowCount {
                expected: n,
                got: matrix.len(),
            });
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::RowLength {
                    row,
                    expected: n,
                    got: r.len(),
                });
            }
        }
        if n < 2 {
            return Err(MetricError::TooFewPoints { points: n });
        }
        let zero = T::zero();
        for (i, r) in matrix.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_finite_scalar() {
                    return Err(MetricError::NotFinite { i, j });
                }
                if *v < zero {
                    return Err(MetricError::NegativeDistance { i, j });
                }
            }
        }
        for (i, r) in matrix.iter().enumerate() {
            if !r[i].is_zero() {
                return Err(MetricError::NonzeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i][j].is_zero() {
                    return Err(MetricError::ZeroDistance { i, j });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(MetricError::Asymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if j == i {
                    continue;
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let via = matrix[i][j].clone() + matrix[j][k].clone();
                    if matrix[i][k].cmp_total(&via) == std::cmp::Ordering::Greater {
                        return Err(MetricError::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for r in matrix {
            dist.extend(r);
        }
        Ok(MetricSpace { labels, n, dist })
    }

    /// Builds a space from points on the real line; distances are absolute
    /// differences (always a metric).
    pub fn collinear(labels: Vec<String>, points: &[T]) -> Result<Self, MetricError>
    where
        T: std::ops::Sub<Output = T>,
    {
        let n = points.len();
        let mut matrix = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let d = if points[i].cmp_total(&points[j]) == std::cmp::Ordering::Greater {
                    points[i].clone() - points[j].clone()
                } else {
                    points[j].clone() - points[i].clone()
                };
                matrix[i][j] = d;
            }
        }
        Self::new(labels, matrix)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // validation requires at least two points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dist(&self, i: usize, j: usize) -> T {
        self.dist[i * self.n + j].clone()
    }

    pub fn dist_ref(&self, i: usize, j: usize) -> &T {
        &self.dist[i * self.n + j]
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> T {
        let mut best = T::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                best = smax(best, self.dist(i, j));
            }
        }
        best
    }

    /// Sorted distinct distance values including zero: the candidate set of
    /// every critical scale in the finite backend.
    pub fn distance_values(&self) -> Vec<T> {
        let mut vals: Vec<T> = vec![T::zero()];
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                vals.push(self.dist(i, j));
            }
        }
        vals.sort_by(|a, b| a.cmp_total(b));
        vals.dedup();
        vals
    }

    /// Product space on the Cartesian product of point sets with the box
    /// metric `max(d1, d2)`. Point `(i, j)` of the product has index
    /// `i * other.len() + j` and label `"(li,lj)"`.
    pub fn box_product(&self, other: &Self) -> Result<Self, MetricError> {
        let points = self.n.checked_mul(other.n).unwrap_or(usize::MAX);
        if points > MAX_PRODUCT_POINTS {
            return Err(MetricError::SizeOverflow {
                points,
                cap: MAX_PRODUCT_POINTS,
            });
        }
        let m = other.n;
        let mut labels = Vec::with_capacity(points);
        for i in 0..self.n {
            for j in 0..m {
                labels.push(format!("({},{})", self.labels[i], other.labels[j]));
            }
        }
        let mut matrix = vec![vec![T::zero(); points]; points];
        for i1 in 0..self.n {
            for j1 in 0..m {
                for i2 in 0..self.n {
                    for j2 in 0..m {
                        let d = smax(self.dist(i1, i2), other.dist(j1, j2));
                        matrix[i1 * m + j1][i2 * m + j2] = d;
                    }
                }
            }
        }
        Self::new(labels, matrix)
    }
}

/// A strictly positive, finite scale value `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scale<T>(T);

impl<T: Scalar> Scale<T> {
    pub fn new(value: T) -> Result<Self, MetricError> {
        if !value.is_finite_scalar() || value.cmp_total(&T::zero()) != std::cmp::Ordering::Greater
        {
            return Err(MetricError::BadScale);
        }
        Ok(Scale(value))
    }

    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_value(self) -> T {
        self.0
    }

    /// True when `d < ε`, the open-ball membership test used everywhere.
    pub fn admits(&self, d: &T) -> bool {
        d.cmp_total(&self.0) == std::cmp::Ordering::Less
    }
}

impl<T: fmt::Display> fmt::Display for Scale<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A non-empty index set over a fixed space. No cross-space operations:
/// mixing subsets of different spaces is an error.
#[derive(Debug, Clone)]
pub struct Subset<'s, T> {
    space: &'s MetricSpace<T>,
    members: BTreeSet<usize>,
}

impl<'s, T: Scalar> Subset<'s, T> {
    pub fn new(
        space: &'s MetricSpace<T>,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, MetricError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(MetricError::EmptySubset);
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= space.len()) {
            return Err(MetricError::IndexOutOfRange {
                index: bad,
                len: space.len(),
            });
        }
        Ok(Subset { space, members })
    }

    pub fn full(space: &'s MetricSpace<T>) -> Self {
        Subset {
            space,
            members: (0..space.len()).collect(),
        }
    }

    pub fn singleton(space: &'s MetricSpace<T>, i: usize) -> Result<Self, MetricError> {
        Self::new(space, [i])
    }

    pub fn space(&self) -> &'s MetricSpace<T> {
        self.space
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires non-empty
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    fn same_space(&self, other: &Subset<'_, T>) -> Result<(), MetricError> {
        if std::ptr::eq(self.space, other.space) {
            Ok(())
        } else {
            Err(MetricError::MixedSpaces)
        }
    }

    /// `d(y, A) = min over a in A of d(y, a)`.
    pub fn point_distance(&self, y: usize) -> T {
        let mut it = self.members.iter();
        let first = *it.next().expect("subset is non-empty");
        let mut best = self.space.dist(y, first);
        for &a in it {
            best = smin(best, self.space.dist(y, a));
        }
        best
    }

    /// The open ε-enlargement `{ y : d(y, A) < ε }`; strict inequality.
    pub fn enlarge(&self, scale: &Scale<T>) -> Subset<'s, T> {
        let members = (0..self.space.len())
            .filter(|&y| scale.admits(&self.point_distance(y)))
            .collect();
        Subset {
            space: self.space,
            members,
        }
    }

    /// Hausdorff distance `max(sup_{a∈A} d(a,B), sup_{b∈B} d(b,A))`.
    pub fn hausdorff(&self, other: &Subset<'_, T>) -> Result<Ext<T>, MetricError> {
        self.same_space(other)?;
        let mut worst = T::zero();
        for &a in &self.members {
            worst = smax(worst, other.point_distance(a));
        }
        for &b in &other.members {
            worst = smax(worst, self.point_distance(b));
        }
        Ok(Ext::Finite(worst))
    }

    /// `inf over a∈A, b∈B of d(a,b)`.
    pub fn gap(&self, other: &Subset<'_, T>) -> Result<Ext<T>, MetricError> {
        self.same_space(other)?;
        let mut best: Option<T> = None;
        for &a in &self.members {
            let d = other.point_distance(a);
            best = Some(match best {
                None => d,
                Some(cur) => smin(cur, d),
            });
        }
        Ok(Ext::Finite(best.expect("subset is non-empty")))
    }
}

impl<T: Scalar> PartialEq for Subset<'_, T> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.space, other.space) && self.members == other.members
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_space(points: &[f64]) -> MetricSpace<f64> {
        let labels = points.iter().map(|p| p.to_string()).collect();
        MetricSpace::collinear(labels, points).unwrap()
    }

    /// Direct axiom check used as the oracle for matrix acceptance.
    fn axioms_hold(m: &MetricSpace<f64>) {
        let n = m.len();
        for i in 0..n {
            assert_eq!(m.dist(i, i), 0.0);
            for j in 0..n {
                assert_eq!(m.dist(i, j), m.dist(j, i));
                if i != j {
                    assert!(m.dist(i, j) > 0.0);
                }
                for k in 0..n {
                    assert!(m.dist(i, k) <= m.dist(i, j) + m.dist(j, k));
                }
            }
        }
    }

    #[test]
    fn two_point_space_is_valid() {
        let m = MetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.dist(0, 1), 1.0);
    }

    #[test]
    fn asymmetric_matrix_is_rejected_with_witness() {
        let err = MetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::Asymmetry { i: 0, j: 1 });
    }

    #[test]
    fn collinear_points_form_a_metric() {
        let m = line_space(&[0.0, 1.0, 3.0]);
        axioms_hold(&m);
        assert_eq!(m.dist(0, 2), 3.0);
    }

    #[test]
    fn first_violation_order_is_deterministic() {
        // negative beats asymmetry in the check order
        let err = MetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, -1.0], vec![2.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::NegativeDistance { i: 0, j: 1 });

        let err = MetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 1.0, 5.0],
                vec![1.0, 0.0, 1.0],
                vec![5.0, 1.0, 0.0],
            ],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::TriangleViolation { i: 0, j: 1, k: 2 });

        let err = MetricSpace::new(vec!["a".into()], vec![vec![0.0]]).unwrap_err();
        assert_eq!(err, MetricError::TooFewPoints { points: 1 });

        let err = MetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, f64::NAN], vec![1.0, 0.0]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::NotFinite { i: 0, j: 1 });

        let err = MetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0],
            ],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::ZeroDistance { i: 0, j: 1 });
    }

    #[test]
    fn enlargement_is_strict() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::new(&m, [0]).unwrap();
        let grown = a.enlarge(&Scale::new(1.5).unwrap());
        assert_eq!(grown.members().iter().copied().collect::<Vec<_>>(), [0, 1]);
        // d(0,1) = 1 is not < 1
        let tight = a.enlarge(&Scale::new(1.0).unwrap());
        assert_eq!(tight.members().iter().copied().collect::<Vec<_>>(), [0]);
        // beyond the diameter everything is captured
        let all = a.enlarge(&Scale::new(7.5).unwrap());
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn hausdorff_of_named_subsets() {
        let m = line_space(&[0.0, 1.0, 3.0]);
        let a = Subset::new(&m, [0, 1]).unwrap();
        let b = Subset::new(&m, [2]).unwrap();
        assert_eq!(a.hausdorff(&b).unwrap(), Ext::Finite(3.0));
        assert_eq!(a.hausdorff(&a).unwrap(), Ext::Finite(0.0));
        // one-sided excess: B = A ∪ {y}
        let ab = Subset::new(&m, [0, 1, 2]).unwrap();
        assert_eq!(a.hausdorff(&ab).unwrap(), Ext::Finite(2.0));
    }

    #[test]
    fn gap_between_subsets() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::new(&m, [0, 1]).unwrap();
        let b = Subset::new(&m, [3]).unwrap();
        // direct evaluation: min(d(0,7), d(1,7)) = 6
        assert_eq!(a.gap(&b).unwrap(), Ext::Finite(6.0));
        let c = Subset::new(&m, [0]).unwrap();
        let d = Subset::new(&m, [2]).unwrap();
        assert_eq!(c.gap(&d).unwrap(), Ext::Finite(3.0));
        let overlapping = Subset::new(&m, [1, 2]).unwrap();
        assert_eq!(a.gap(&overlapping).unwrap(), Ext::Finite(0.0));
    }

    #[test]
    fn mixed_spaces_are_rejected() {
        let m1 = line_space(&[0.0, 1.0]);
        let m2 = line_space(&[0.0, 1.0]);
        let a = Subset::full(&m1);
        let b = Subset::full(&m2);
        assert_eq!(a.hausdorff(&b).unwrap_err(), MetricError::MixedSpaces);
        assert_eq!(a.gap(&b).unwrap_err(), MetricError::MixedSpaces);
    }

    #[test]
    fn box_product_of_two_point_spaces() {
        let x = line_space(&[0.0, 1.0]);
        let p = x.box_product(&x).unwrap();
        assert_eq!(p.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(p.dist(i, j), 1.0, "({i},{j})");
                }
            }
        }
        axioms_hold(&p);
    }

    #[test]
    fn box_product_takes_the_max_coordinate() {
        let x = line_space(&[0.0, 1.0]);
        let y = line_space(&[0.0, 2.0]);
        let p = x.box_product(&y).unwrap();
        // (0,0) has index 0, (1,2) has index 3
        assert_eq!(p.dist(0, 3), 2.0);
        // one coordinate fixed: d((x,y),(x,y')) = d2(y,y')
        assert_eq!(p.dist(0, 1), 2.0);
        assert_eq!(p.dist(0, 2), 1.0);
    }

    #[test]
    fn rational_scalar_works_end_to_end() {
        use num_rational::BigRational;
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let pts = [q(0, 1), q(1, 2), q(7, 3)];
        let labels = pts.iter().map(|p| p.to_string()).collect();
        let m = MetricSpace::collinear(labels, &pts).unwrap();
        assert_eq!(m.dist(0, 2), q(7, 3));
        let a = Subset::new(&m, [0]).unwrap();
        let grown = a.enlarge(&Scale::new(q(2, 3)).unwrap());
        assert_eq!(grown.members().iter().copied().collect::<Vec<_>>(), [0, 1]);
    }
}
