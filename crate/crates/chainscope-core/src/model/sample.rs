//! Bridge to the finite backend: truncate and discretize a model into an
//! exact rational metric space for cross-validation.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::piece::{Piece, Q};
use super::{Model1D, ModelError, POINT_BUDGET};
use crate::space::MetricSpace;

impl Model1D {
    /// All model points inside `[lo, hi]`, with continuum pieces
    /// discretized on a `resolution` grid anchored at their left end and
    /// always including the right end. Lattices and point sets are
    /// truncated, never re-gridded. Distances are exact rationals.
    pub fn sample(
        &self,
        lo: &Q,
        hi: &Q,
        resolution: &Q,
    ) -> Result<MetricSpace<Q>, ModelError> {
        if lo > hi {
            return Err(ModelError::BadWindow);
        }
        if resolution <= &Q::zero() {
            return Err(ModelError::BadResolution);
        }
        let mut points: BTreeSet<Q> = BTreeSet::new();
        for piece in self.pieces() {
            let Some(clipped) = piece.slice(Some(lo), Some(hi)) else {
                continue;
            };
            match &clipped {
                Piece::Interval { a, b } => {
                    let span = (b.clone() - a.clone()) / resolution.clone();
                    let steps: u64 = span
                        .floor()
                        .to_integer()
                        .try_into()
                        .map_err(|_| ModelError::TooComplex {
                            detail: "sample grid too fine".into(),
                        })?;
                    if steps >= POINT_BUDGET {
                        return Err(ModelError::TooComplex {
                            detail: "sample grid too fine".into(),
                        });
                    }
                    let mut x = a.clone();
                    for _ in 0..=steps {
                        points.insert(x.clone());
                        x += resolution.clone();
                    }
                    points.insert(b.clone());
                }
                Piece::Points { xs } => {
                    points.extend(xs.iter().cloned());
                }
                Piece::Lattice { .. } => {
                    let n = clipped.cardinality().expect("clipped lattice is finite");
                    if n >= POINT_BUDGET {
                        return Err(ModelError::TooComplex {
                            detail: "sample window covers too many lattice points".into(),
                        });
                    }
                    if let Piece::Lattice { start, step, .. } = &clipped {
                        let mut x = start.clone();
                        for _ in 0..n {
                            points.insert(x.clone());
                            x += step.clone();
                        }
                    }
                }
                Piece::Ray { .. } | Piece::FullLine => {
                    unreachable!("slicing to a bounded window removes rays")
                }
            }
        }
        let found = points.len();
        if found < 2 {
            return Err(ModelError::EmptySample { found });
        }
        let points: Vec<Q> = points.into_iter().collect();
        let labels = points.iter().map(|p| p.to_string()).collect();
        Ok(MetricSpace::collinear(labels, &points).expect("collinear rationals form a metric"))
    }
}
