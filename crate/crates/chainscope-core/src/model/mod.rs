//! Exact symbolic backend: finitely-presented closed subsets of the real
//! line with rational parameters.
//!
//! A [`Model1D`] is a disjoint union of [`Piece`]s (intervals, rays,
//! arithmetic lattices, finite point sets, or the full line). On it the
//! chain-geometry functionals `f_c`, `ν`, `I`, the regions `nslc` and `X'`,
//! the space classifiers (UC, cofinally complete, uniformly star
//! superparacompact, ...), and the subset classifiers are computed exactly:
//! component structure on the line is order-convex, so every question
//! reduces to gap analysis, and the gap structure of a model is finite up
//! to an eventually-periodic lattice tail.
//!
//! Irrational parameters are rejected by construction (all inputs are
//! rationals), which keeps every threshold comparison decidable: the
//! uniform-isolation analysis of lattice pairs is plain integer congruence
//! arithmetic rather than an equidistribution argument.

mod analysis;
mod arrange;
mod classify;
mod model_functionals;
mod piece;
mod region;
mod sample;

pub use analysis::{Zone, ZoneSpan};
pub use classify::{ClassifierReport, SubsetReport, Verdict};
pub use model_functionals::ModelFunctionals;
pub use piece::{Direction, LatticeCount, Piece, Q};
pub use region::Region;

use arrange::Arrangement;
use thiserror::Error;

/// Pointwise containment checks on big finite lattices and the explicit
/// window of an arrangement are capped at this many points.
pub(crate) const POINT_BUDGET: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("piece {index} is malformed: {reason}")]
    InvalidPiece { index: usize, reason: String },
    #[error("the full line must be the sole piece")]
    FullLineNotAlone,
    #[error("pieces {i} and {j} overlap")]
    Overlap { i: usize, j: usize },
    #[error("a model needs at least two points")]
    TooFewPoints,
    #[error("model too complex to analyze exactly: {detail}")]
    TooComplex { detail: String },
    #[error("point is not in the model")]
    PointNotInModel,
    #[error("scale must be strictly positive")]
    NonpositiveScale,
    #[error("subset piece {index} is not contained in the model")]
    SubsetNotContained { index: usize },
    #[error("a subset needs at least one piece")]
    EmptySubset,
    #[error("sampling produced {found} points; at least 2 are needed")]
    EmptySample { found: usize },
    #[error("window must satisfy lo <= hi")]
    BadWindow,
    #[error("resolution must be strictly positive")]
    BadResolution,
}

fn check_piece(index: usize, piece: &Piece) -> Result<(), ModelError> {
    let bad = |reason: &str| ModelError::InvalidPiece {
        index,
        reason: reason.to_string(),
    };
    match piece {
        Piece::Interval { a, b } => {
            if a >= b {
                return Err(bad(
                    "interval needs a < b (collapse a point to a points piece)",
                ));
            }
        }
        Piece::Ray { .. } | Piece::FullLine => {}
        Piece::Lattice { step, count, .. } => {
            use num_traits::Zero;
            if step <= &Q::zero() {
                return Err(bad("lattice step must be > 0"));
            }
            if matches!(count, LatticeCount::Finite(0)) {
                return Err(bad("lattice count must be at least 1"));
            }
        }
        Piece::Points { xs } => {
            if xs.is_empty() {
                return Err(bad("points piece must be non-empty"));
            }
            for w in xs.windows(2) {
                if w[0] >= w[1] {
                    return Err(bad("points must be strictly increasing"));
                }
            }
        }
    }
    Ok(())
}

fn check_pieces(pieces: &[Piece]) -> Result<(), ModelError> {
    for (i, p) in pieces.iter().enumerate() {
        check_piece(i, p)?;
    }
    if pieces.iter().any(|p| matches!(p, Piece::FullLine)) && pieces.len() > 1 {
        return Err(ModelError::FullLineNotAlone);
    }
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            if pieces[i].intersects(&pieces[j]) {
                return Err(ModelError::Overlap { i, j });
            }
        }
    }
    Ok(())
}

fn sort_points_pieces(pieces: &mut [Piece]) {
    for p in pieces.iter_mut() {
        if let Piece::Points { xs } = p {
            xs.sort();
        }
    }
}

/// A validated model: pairwise disjoint closed pieces whose union has at
/// least two points. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Model1D {
    pieces: Vec<Piece>,
    arr: Arrangement,
}

impl Model1D {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self, ModelError> {
        sort_points_pieces(&mut pieces);
        check_pieces(&pieces)?;
        let mut total: u64 = 0;
        let mut infinite = false;
        for p in &pieces {
            match p.cardinality() {
                None => infinite = true,
                Some(c) => total = total.saturating_add(c),
            }
        }
        if !infinite && total < 2 {
            return Err(ModelError::TooFewPoints);
        }
        let arr = Arrangement::build(&pieces, None)?;
        Ok(Model1D { pieces, arr })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub(crate) fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_bounded(&self) -> bool {
        self.pieces.iter().all(|p| p.is_bounded())
    }

    /// True when the model is unbounded to the right through a lattice
    /// tail (rather than a ray), i.e. splits into infinitely many
    /// components at small scales.
    pub fn right_end_is_tail(&self) -> bool {
        self.arr.tail().is_some()
    }

    /// Largest cyclic gap of the lattice tail, if there is one: the scale
    /// above which the tail fuses into a single component.
    pub fn tail_threshold(&self) -> Option<Q> {
        self.arr.tail().map(|t| t.gmax())
    }

    /// The model's point set clipped to `[lo, hi]` as a region
    /// (`None` = unbounded side).
    pub fn slice(&self, lo: Option<&Q>, hi: Option<&Q>) -> Region {
        Region::from_disjoint_pieces(
            self.pieces
                .iter()
                .filter_map(|p| p.slice(lo, hi))
                .collect(),
        )
    }

    /// Validates `pieces` as a subset of this model.
    pub fn subset(&self, pieces: Vec<Piece>) -> Result<SubsetSpec, ModelError> {
        SubsetSpec::new(self, pieces)
    }
}

/// A validated non-empty subset of a model, in the same piece grammar.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSpec {
    pieces: Vec<Piece>,
    arr: Arrangement,
}

impl SubsetSpec {
    pub fn new(model: &Model1D, mut pieces: Vec<Piece>) -> Result<Self, ModelError> {
        if pieces.is_empty() {
            return Err(ModelError::EmptySubset);
        }
        sort_points_pieces(&mut pieces);
        check_pieces(&pieces)?;
        for (index, p) in pieces.iter().enumerate() {
            if !piece_contained_in_model(p, model)? {
                return Err(ModelError::SubsetNotContained { index });
            }
        }
        // the subset's own tail must start deep inside the model's periodic
        // zone so that per-zone functional values read off the model are
        // constant on it
        let min_cut = model.arr.deep_threshold();
        let arr = Arrangement::build(&pieces, min_cut.as_ref())?;
        Ok(SubsetSpec { pieces, arr })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub(crate) fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_bounded(&self) -> bool {
        self.pieces.iter().all(|p| p.is_bounded())
    }

    pub fn has_infinite_lattice(&self) -> bool {
        self.pieces.iter().any(|p| {
            matches!(
                p,
                Piece::Lattice {
                    count: LatticeCount::Infinite,
                    ..
                }
            )
        })
    }

    pub fn as_region(&self) -> Region {
        Region::from_disjoint_pieces(self.pieces.clone())
    }
}

/// Exact containment of one piece in the model's union.
fn piece_contained_in_model(p: &Piece, model: &Model1D) -> Result<bool, ModelError> {
    match p {
        Piece::FullLine => Ok(model.pieces.iter().any(|m| matches!(m, Piece::FullLine))),
        Piece::Interval { a, b } => Ok(model.pieces.iter().any(|m| match m {
            Piece::FullLine => true,
            Piece::Interval { a: c, b: d } => c <= a && b <= d,
            Piece::Ray {
                dir: Direction::Left,
                end,
            } => b <= end,
            Piece::Ray {
                dir: Direction::Right,
                end,
            } => end <= a,
            _ => false,
        })),
        Piece::Ray {
            dir: Direction::Left,
            end,
        } => Ok(model.pieces.iter().any(|m| match m {
            Piece::FullLine => true,
            Piece::Ray {
                dir: Direction::Left,
                end: e,
            } => end <= e,
            _ => false,
        })),
        Piece::Ray {
            dir: Direction::Right,
            end,
        } => Ok(model.pieces.iter().any(|m| match m {
            Piece::FullLine => true,
            Piece::Ray {
                dir: Direction::Right,
                end: e,
            } => e <= end,
            _ => false,
        })),
        Piece::Points { xs } => Ok(xs.iter().all(|x| model.contains(x))),
        Piece::Lattice { start, step, count } => {
            // fast path: swallowed whole by one continuum piece
            let lo = p.lower();
            let hi = p.upper();
            let swallowed = model.pieces.iter().any(|m| match m {
                Piece::FullLine => true,
                Piece::Interval { a, b } => {
                    hi.is_some() && a <= lo.as_ref().unwrap() && hi.as_ref().unwrap() <= b
                }
                Piece::Ray {
                    dir: Direction::Left,
                    end,
                } => hi.is_some() && hi.as_ref().unwrap() <= end,
                Piece::Ray {
                    dir: Direction::Right,
                    end,
                } => end <= lo.as_ref().unwrap(),
                _ => false,
            });
            if swallowed {
                return Ok(true);
            }
            match count {
                LatticeCount::Finite(c) => {
                    if *c > POINT_BUDGET {
                        return Err(ModelError::TooComplex {
                            detail: format!("containment check over a {c}-point lattice"),
                        });
                    }
                    let mut x = start.clone();
                    for _ in 0..*c {
                        if !model.contains(&x) {
                            return Ok(false);
                        }
                        x += step.clone();
                    }
                    Ok(true)
                }
                LatticeCount::Infinite => {
                    // a right ray absorbs the tail; check the head pointwise
                    if let Some(ray_start) = model.pieces.iter().find_map(|m| match m {
                        Piece::Ray {
                            dir: Direction::Right,
                            end,
                        } => Some(end.clone()),
                        _ => None,
                    }) {
                        if let Some(head) = p.slice(None, Some(&ray_start)) {
                            return piece_contained_in_model(&head, model);
                        }
                        return Ok(true);
                    }
                    // otherwise the tail must embed into the model's own
                    // periodic lattice tail: check one common period
                    let Some((cut, period)) = model.arr.tail_cut_period() else {
                        return Ok(false); // nothing unbounded to the right
                    };
                    let common = region::rat_lcm(&period, step);
                    let span = common.clone() / step.clone();
                    let pts: u64 =
                        span.to_integer()
                            .try_into()
                            .map_err(|_| ModelError::TooComplex {
                                detail: "lattice/tail common period too large".into(),
                            })?;
                    if pts > POINT_BUDGET {
                        return Err(ModelError::TooComplex {
                            detail: format!("containment check over {pts} residues"),
                        });
                    }
                    // head below the model's cut, pointwise
                    if let Some(head) = p.slice(None, Some(&cut)) {
                        if head.cardinality().map_or(false, |c| c > POINT_BUDGET) {
                            return Err(ModelError::TooComplex {
                                detail: "lattice head too large".into(),
                            });
                        }
                        let ok = match &head {
                            Piece::Points { xs } => xs.iter().all(|x| model.contains(x)),
                            Piece::Lattice {
                                start: s,
                                step: h,
                                count: LatticeCount::Finite(c),
                            } => {
                                let mut x = s.clone();
                                let mut ok = true;
                                for _ in 0..*c {
                                    if !model.contains(&x) {
                                        ok = false;
                                        break;
                                    }
                                    x += h.clone();
                                }
                                ok
                            }
                            _ => false,
                        };
                        if !ok {
                            return Ok(false);
                        }
                    }
                    // one common period starting at the first point past the cut
                    let first = {
                        let q = (cut.clone() - start.clone()) / step.clone();
                        let k = q.ceil().to_integer();
                        let k = k.max(num_bigint::BigInt::from(0));
                        start.clone() + step.clone() * Q::from_integer(k)
                    };
                    let mut x = first;
                    for _ in 0..pts {
                        if !model.contains(&x) {
                            return Ok(false);
                        }
                        x += step.clone();
                    }
                    Ok(true)
                }
            }
        }
    }
}
