//! Symbolic regions: possibly-empty closed piece unions with exact set
//! queries (emptiness, boundedness, membership, equality, union,
//! intersection with continuum windows).

use num_bigint::BigInt;
use num_traits::One;

use super::arrange::{Arrangement, Atom, RightEnd};
use super::piece::{Direction, LatticeCount, Piece, Q};

pub(crate) use super::arrange::rat_lcm;

/// A closed subset of the line in the piece grammar; may be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pieces: Vec<Piece>,
}

impl Region {
    pub fn empty() -> Region {
        Region { pieces: Vec::new() }
    }

    /// Validated construction from arbitrary pieces (possibly empty).
    pub fn new(pieces: Vec<Piece>) -> Result<Region, super::ModelError> {
        super::check_pieces(&pieces)?;
        Ok(Region::from_disjoint_pieces(pieces))
    }

    /// Wraps pieces that are already pairwise disjoint (slicing and
    /// filtering of validated pieces preserves this).
    pub(crate) fn from_disjoint_pieces(pieces: Vec<Piece>) -> Region {
        let mut pieces = pieces;
        pieces.sort_by(|p, q| match (p.lower(), q.lower()) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, Some(_)) => std::cmp::Ordering::Less,
            (Some(_), None) => std::cmp::Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b),
        });
        Region { pieces }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.pieces.iter().all(|p| p.is_bounded())
    }

    /// Closed and bounded; the empty region counts as compact.
    pub fn is_compact(&self) -> bool {
        self.is_bounded()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn unbounded_below(&self) -> bool {
        self.pieces.iter().any(|p| p.lower().is_none())
    }

    pub fn unbounded_above(&self) -> bool {
        self.pieces.iter().any(|p| p.upper().is_none())
    }

    /// Least element, when bounded below and non-empty.
    pub fn min_point(&self) -> Option<Q> {
        if self.is_empty() || self.unbounded_below() {
            return None;
        }
        self.pieces.iter().map(|p| p.lower().unwrap()).min()
    }

    pub fn max_point(&self) -> Option<Q> {
        if self.is_empty() || self.unbounded_above() {
            return None;
        }
        self.pieces.iter().map(|p| p.upper().unwrap()).max()
    }

    /// Exact distance from a point to the region (`None` when empty).
    pub fn distance_to(&self, x: &Q) -> Option<Q> {
        self.pieces
            .iter()
            .map(|p| p.distance_to(x))
            .min()
    }

    /// Intersection with a region made of continuum pieces only
    /// (rays, intervals, the full line): plain window slicing.
    pub fn intersect_continuum(&self, windows: &Region) -> Region {
        debug_assert!(windows.pieces.iter().all(|p| p.is_continuum()));
        let mut out = Vec::new();
        for w in &windows.pieces {
            let lo = w.lower();
            let hi = w.upper();
            for p in &self.pieces {
                if let Some(s) = p.slice(lo.as_ref(), hi.as_ref()) {
                    out.push(s);
                }
            }
        }
        Region::from_disjoint_pieces(out)
    }

    /// Exact set equality, via aligned canonical arrangements.
    pub fn set_eq(&self, other: &Region) -> bool {
        let a = Arrangement::build(&self.pieces, None).expect("region arranges");
        let b = Arrangement::build(&other.pieces, None).expect("region arranges");
        if a.full_line != b.full_line {
            return false;
        }
        if a.full_line {
            return true;
        }
        if a.left_ray_end != b.left_ray_end {
            return false;
        }
        match (&a.right, &b.right) {
            (RightEnd::Bounded, RightEnd::Bounded) => a.atoms == b.atoms,
            (RightEnd::Ray { start: s1 }, RightEnd::Ray { start: s2 }) => {
                s1 == s2 && a.atoms == b.atoms
            }
            (RightEnd::Tail(t1), RightEnd::Tail(t2)) => {
                // realign both to a common cut, then compare patterns over
                // the common period
                let min_cut = t1.cut.clone().max(t2.cut.clone());
                let a = Arrangement::build(&self.pieces, Some(&min_cut)).expect("arranges");
                let b = Arrangement::build(&other.pieces, Some(&min_cut)).expect("arranges");
                let (t1, t2) = (a.tail().unwrap(), b.tail().unwrap());
                if t1.cut != t2.cut || a.atoms != b.atoms {
                    return false;
                }
                let common = rat_lcm(&t1.period, &t2.period);
                let expand = |t: &super::arrange::Tail| -> Vec<Q> {
                    let reps = (common.clone() / t.period.clone()).to_integer();
                    let mut out = Vec::new();
                    let mut j = BigInt::from(0);
                    while j < reps {
                        for o in &t.offsets {
                            out.push(o.clone() + t.period.clone() * Q::from_integer(j.clone()));
                        }
                        j += BigInt::one();
                    }
                    out.sort();
                    out
                };
                expand(t1) == expand(t2)
            }
            _ => false,
        }
    }

    /// Set union of two regions (subsets of a common ambient model), with
    /// overlapping and touching content merged into maximal pieces.
    pub fn union(&self, other: &Region) -> Region {
        let mut all: Vec<Piece> = Vec::new();
        all.extend(self.pieces.iter().cloned());
        all.extend(other.pieces.iter().cloned());
        if all.iter().any(|p| matches!(p, Piece::FullLine)) {
            return Region {
                pieces: vec![Piece::FullLine],
            };
        }
        if all.is_empty() {
            return Region::empty();
        }
        // force both tails (if any) strictly past all bounded content of
        // either side, so tails stay pure beyond every explicit atom
        let natural = |pieces: &[Piece]| Arrangement::build(pieces, None).expect("arranges");
        let (a0, b0) = (natural(&self.pieces), natural(&other.pieces));
        let mut bound: Option<Q> = None;
        for arr in [&a0, &b0] {
            for cand in [
                arr.tail_cut_period().map(|(c, _)| c),
                arr.last_explicit_hi(),
            ]
            .into_iter()
            .flatten()
            {
                bound = Some(match bound {
                    None => cand,
                    Some(c) => c.max(cand),
                });
            }
        }
        let min_cut = bound.map(|b| b + Q::from_integer(BigInt::one()));
        let build = |pieces: &[Piece]| Arrangement::build(pieces, min_cut.as_ref()).unwrap();
        let (a, b) = (build(&self.pieces), build(&other.pieces));

        // left ray
        let left_ray_end = match (&a.left_ray_end, &b.left_ray_end) {
            (Some(x), Some(y)) => Some(x.clone().max(y.clone())),
            (Some(x), None) => Some(x.clone()),
            (None, Some(y)) => Some(y.clone()),
            (None, None) => None,
        };

        // merge tails: choose uc = the later cut, demote earlier-tail
        // points below it to explicit atoms
        let mut extra_atoms: Vec<Atom> = Vec::new();
        let tail = match (a.tail(), b.tail()) {
            (None, None) => None,
            (Some(t), None) | (None, Some(t)) => Some(t.clone()),
            (Some(t1), Some(t2)) => {
                let uc = t1.cut.clone().max(t2.cut.clone());
                let common = rat_lcm(&t1.period, &t2.period);
                let mut offsets: Vec<Q> = Vec::new();
                for t in [t1, t2] {
                    // demote points in [t.cut, uc) to explicit atoms
                    let mut idx = BigInt::from(0);
                    loop {
                        let p = t.point_at_linear(&idx);
                        if p >= uc {
                            break;
                        }
                        extra_atoms.push(Atom::Pt { x: p });
                        idx += BigInt::one();
                    }
                    // residue classes of the tail relative to uc: every
                    // point of the class at or beyond uc is a tail point
                    let reps = (common.clone() / t.period.clone()).to_integer();
                    for to in &t.offsets {
                        let d = t.cut.clone() + to.clone() - uc.clone();
                        let rel =
                            d.clone() - (d / t.period.clone()).floor() * t.period.clone();
                        let mut j = BigInt::from(0);
                        while j < reps {
                            offsets
                                .push(rel.clone() + t.period.clone() * Q::from_integer(j.clone()));
                            j += BigInt::one();
                        }
                    }
                }
                offsets.sort();
                offsets.dedup();
                // anchor the cut on the least offset's actual first point
                let shift = offsets[0].clone();
                let cut = uc + shift.clone();
                let offsets: Vec<Q> = offsets.into_iter().map(|o| o - shift.clone()).collect();
                Some(super::arrange::Tail {
                    cut,
                    period: common,
                    offsets,
                })
            }
        };

        // right ray
        let right_ray = match (&a.right, &b.right) {
            (RightEnd::Ray { start: x }, RightEnd::Ray { start: y }) => {
                Some(x.clone().min(y.clone()))
            }
            (RightEnd::Ray { start }, _) | (_, RightEnd::Ray { start }) => Some(start.clone()),
            _ => None,
        };
        debug_assert!(
            !(tail.is_some() && right_ray.is_some()),
            "subsets of one ambient cannot mix a tail with a right ray"
        );

        // sweep-merge the atoms
        let mut atoms: Vec<Atom> = Vec::new();
        atoms.extend(a.atoms.iter().cloned());
        atoms.extend(b.atoms.iter().cloned());
        atoms.extend(extra_atoms);
        atoms.sort_by(|p, q| p.lo().cmp(q.lo()));
        let mut merged: Vec<(Q, Q)> = Vec::new();
        for at in atoms {
            let (lo, hi) = (at.lo().clone(), at.hi().clone());
            match merged.last_mut() {
                Some((_, cur_hi)) if lo <= *cur_hi => {
                    if hi > *cur_hi {
                        *cur_hi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        // absorb into the left ray
        let mut left_ray_end = left_ray_end;
        if let Some(e) = &mut left_ray_end {
            while let Some((lo, hi)) = merged.first().cloned() {
                if lo <= *e {
                    if hi > *e {
                        *e = hi;
                    }
                    merged.remove(0);
                } else {
                    break;
                }
            }
        }
        // absorb into the right ray
        let mut right_ray = right_ray;
        if let Some(s) = &mut right_ray {
            while let Some((lo, hi)) = merged.last().cloned() {
                if hi >= *s {
                    if lo < *s {
                        *s = lo;
                    }
                    merged.pop();
                } else {
                    break;
                }
            }
        }

        // emit pieces
        let mut pieces: Vec<Piece> = Vec::new();
        if let Some(e) = left_ray_end {
            pieces.push(Piece::Ray {
                dir: Direction::Left,
                end: e,
            });
        }
        let mut run: Vec<Q> = Vec::new();
        let flush_run = |pieces: &mut Vec<Piece>, run: &mut Vec<Q>| {
            if !run.is_empty() {
                pieces.push(Piece::Points {
                    xs: std::mem::take(run),
                });
            }
        };
        for (lo, hi) in merged {
            if lo == hi {
                run.push(lo);
            } else {
                flush_run(&mut pieces, &mut run);
                pieces.push(Piece::Interval { a: lo, b: hi });
            }
        }
        flush_run(&mut pieces, &mut run);
        if let Some(s) = right_ray {
            pieces.push(Piece::Ray {
                dir: Direction::Right,
                end: s,
            });
        }
        if let Some(t) = tail {
            for o in &t.offsets {
                pieces.push(Piece::Lattice {
                    start: t.cut.clone() + o.clone(),
                    step: t.period.clone(),
                    count: LatticeCount::Infinite,
                });
            }
        }
        Region::from_disjoint_pieces(pieces)
    }
}
