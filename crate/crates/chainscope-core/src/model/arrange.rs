//! Canonical decomposition of a piece union into an ordered, finitely
//! described arrangement: an optional left ray, a sorted list of bounded
//! atoms, and a right end that is nothing, a ray, or an eventually
//! periodic lattice tail.
//!
//! The tail starts at a `cut` placed at least two full periods beyond
//! every non-tail feature. That guarantees the explicit window already
//! exhibits a complete period of the tail's gap pattern, which is what
//! makes the chain functional constant on the deep tail.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::piece::{Direction, LatticeCount, Piece, Q};
use super::{ModelError, POINT_BUDGET};

/// A bounded maximal feature of the explicit window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Atom {
    Seg { a: Q, b: Q },
    Pt { x: Q },
}

impl Atom {
    pub fn lo(&self) -> &Q {
        match self {
            Atom::Seg { a, .. } => a,
            Atom::Pt { x } => x,
        }
    }

    pub fn hi(&self) -> &Q {
        match self {
            Atom::Seg { b, .. } => b,
            Atom::Pt { x } => x,
        }
    }
}

/// Eventually periodic lattice tail: points `cut + offsets[t] + j·period`
/// for `j ≥ 0`; `offsets[0] == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Tail {
    pub cut: Q,
    pub period: Q,
    pub offsets: Vec<Q>,
}

impl Tail {
    pub fn arity(&self) -> usize {
        self.offsets.len()
    }

    /// Gap after the `t`-th point of a period (wrapping to the next period
    /// for the last one).
    pub fn gap_after(&self, t: usize) -> Q {
        if t + 1 < self.offsets.len() {
            self.offsets[t + 1].clone() - self.offsets[t].clone()
        } else {
            self.period.clone() - self.offsets[t].clone()
        }
    }

    pub fn cyclic_gaps(&self) -> Vec<Q> {
        (0..self.arity()).map(|t| self.gap_after(t)).collect()
    }

    /// Largest cyclic gap: the chain threshold of the deep tail.
    pub fn gmax(&self) -> Q {
        self.cyclic_gaps()
            .into_iter()
            .max()
            .expect("tail has at least one offset")
    }

    pub fn point_at(&self, period_index: &BigInt, t: usize) -> Q {
        self.cut.clone()
            + self.offsets[t].clone()
            + self.period.clone() * Q::from_integer(period_index.clone())
    }

    /// Linear index decomposition of a tail point, if `x` is one.
    pub fn locate(&self, x: &Q) -> Option<(BigInt, usize)> {
        if *x < self.cut {
            return None;
        }
        let rel = x.clone() - self.cut.clone();
        let j = (rel.clone() / self.period.clone()).floor().to_integer();
        let off = rel - self.period.clone() * Q::from_integer(j.clone());
        self.offsets.iter().position(|o| *o == off).map(|t| (j, t))
    }

    /// 0-based linear index of point `(j, t)` in reading order.
    pub fn linear_index(&self, j: &BigInt, t: usize) -> BigInt {
        j * BigInt::from(self.arity()) + BigInt::from(t)
    }

    pub fn point_at_linear(&self, idx: &BigInt) -> Q {
        let r = BigInt::from(self.arity());
        let (j, t) = idx.div_mod_floor(&r);
        let t: usize = t.try_into().expect("offset index fits usize");
        self.point_at(&j, t)
    }

    /// Gap between linearly consecutive points `idx` and `idx + 1`.
    pub fn gap_after_linear(&self, idx: &BigInt) -> Q {
        let r = BigInt::from(self.arity());
        let t: usize = idx.mod_floor(&r).try_into().expect("fits usize");
        self.gap_after(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RightEnd {
    Bounded,
    Ray { start: Q },
    Tail(Tail),
}

/// Ordered canonical form of a piece union. Works for models, subsets,
/// and regions alike (the empty arrangement is allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Arrangement {
    pub full_line: bool,
    pub left_ray_end: Option<Q>,
    pub atoms: Vec<Atom>,
    pub right: RightEnd,
}

pub(crate) fn rat_lcm(a: &Q, b: &Q) -> Q {
    // lcm(n1/d1, n2/d2) = lcm(n1·d2, n2·d1) / (d1·d2)
    let n = (a.numer() * b.denom()).lcm(&(b.numer() * a.denom()));
    Q::new(n, a.denom() * b.denom())
}

impl Arrangement {
    pub fn build(pieces: &[Piece], min_cut: Option<&Q>) -> Result<Arrangement, ModelError> {
        if pieces.iter().any(|p| matches!(p, Piece::FullLine)) {
            return Ok(Arrangement {
                full_line: true,
                left_ray_end: None,
                atoms: Vec::new(),
                right: RightEnd::Bounded,
            });
        }
        let mut left_ray_end: Option<Q> = None;
        let mut right_ray_start: Option<Q> = None;
        let mut atoms: Vec<Atom> = Vec::new();
        let mut aps: Vec<(Q, Q)> = Vec::new(); // (start, step)
        let mut budget = POINT_BUDGET;
        let mut spend = |n: u64| -> Result<(), ModelError> {
            if n > budget {
                return Err(ModelError::TooComplex {
                    detail: "explicit window exceeds the point budget".into(),
                });
            }
            budget -= n;
            Ok(())
        };
        for p in pieces {
            match p {
                Piece::FullLine => unreachable!(),
                Piece::Ray {
                    dir: Direction::Left,
                    end,
                } => match &left_ray_end {
                    // disjoint validation forbids two left rays in models;
                    // internal regions keep the widest one
                    Some(cur) if cur >= end => {}
                    _ => left_ray_end = Some(end.clone()),
                },
                Piece::Ray {
                    dir: Direction::Right,
                    end,
                } => match &right_ray_start {
                    Some(cur) if cur <= end => {}
                    _ => right_ray_start = Some(end.clone()),
                },
                Piece::Interval { a, b } => atoms.push(Atom::Seg {
                    a: a.clone(),
                    b: b.clone(),
                }),
                Piece::Points { xs } => {
                    spend(xs.len() as u64)?;
                    atoms.extend(xs.iter().map(|x| Atom::Pt { x: x.clone() }));
                }
                Piece::Lattice { start, step, count } => match count {
                    LatticeCount::Finite(c) => {
                        spend(*c)?;
                        let mut x = start.clone();
                        for _ in 0..*c {
                            atoms.push(Atom::Pt { x: x.clone() });
                            x += step.clone();
                        }
                    }
                    LatticeCount::Infinite => aps.push((start.clone(), step.clone())),
                },
            }
        }
        let right = if aps.is_empty() {
            match right_ray_start {
                Some(start) => RightEnd::Ray { start },
                None => RightEnd::Bounded,
            }
        } else {
            debug_assert!(
                right_ray_start.is_none(),
                "validated pieces cannot mix an infinite lattice with a right ray"
            );
            // periodicity threshold: beyond every bounded feature and every
            // lattice start, plus two full periods of slack
            let period = aps
                .iter()
                .map(|(_, h)| h.clone())
                .reduce(|a, b| rat_lcm(&a, &b))
                .expect("at least one lattice");
            let mut base = aps
                .iter()
                .map(|(s, _)| s.clone())
                .max()
                .expect("at least one lattice");
            if let Some(e) = &left_ray_end {
                if *e > base {
                    base = e.clone();
                }
            }
            for a in &atoms {
                if *a.hi() > base {
                    base = a.hi().clone();
                }
            }
            let mut target = base + period.clone() + period.clone();
            if let Some(mc) = min_cut {
                if *mc > target {
                    target = mc.clone();
                }
            }
            // cut = first lattice point at or beyond the target
            let first_at_or_after = |s: &Q, h: &Q, t: &Q| -> Q {
                if t <= s {
                    return s.clone();
                }
                let k = ((t.clone() - s.clone()) / h.clone()).ceil().to_integer();
                s.clone() + h.clone() * Q::from_integer(k)
            };
            let cut = aps
                .iter()
                .map(|(s, h)| first_at_or_after(s, h, &target))
                .min()
                .unwrap();
            // offsets: tail pattern within one period of the cut
            let mut offsets: Vec<Q> = Vec::new();
            for (s, h) in &aps {
                let mut x = first_at_or_after(s, h, &cut);
                let end = cut.clone() + period.clone();
                while x < end {
                    offsets.push(x.clone() - cut.clone());
                    x += h.clone();
                }
            }
            offsets.sort();
            debug_assert!(offsets[0].is_zero());
            // everything below the cut becomes explicit points
            for (s, h) in &aps {
                let mut x = s.clone();
                let mut n: u64 = 0;
                while x < cut {
                    n += 1;
                    if n > POINT_BUDGET {
                        return Err(ModelError::TooComplex {
                            detail: "lattice head exceeds the point budget".into(),
                        });
                    }
                    atoms.push(Atom::Pt { x: x.clone() });
                    x += h.clone();
                }
                spend(n)?;
            }
            RightEnd::Tail(Tail {
                cut,
                period,
                offsets,
            })
        };
        atoms.sort_by(|p, q| p.lo().cmp(q.lo()));
        debug_assert!(
            atoms.windows(2).all(|w| w[0].hi() < w[1].lo()),
            "atoms of a disjoint piece union are separated"
        );
        Ok(Arrangement {
            full_line: false,
            left_ray_end,
            atoms,
            right,
        })
    }

    pub fn tail(&self) -> Option<&Tail> {
        match &self.right {
            RightEnd::Tail(t) => Some(t),
            _ => None,
        }
    }

    pub fn tail_cut_period(&self) -> Option<(Q, Q)> {
        self.tail().map(|t| (t.cut.clone(), t.period.clone()))
    }

    /// A coordinate beyond which the arrangement is purely periodic with
    /// one full period of slack; used to align subset tails.
    pub fn deep_threshold(&self) -> Option<Q> {
        self.tail().map(|t| t.cut.clone() + t.period.clone())
    }

    /// Rightmost explicit coordinate strictly left of the tail or ray.
    pub fn last_explicit_hi(&self) -> Option<Q> {
        self.atoms
            .last()
            .map(|a| a.hi().clone())
            .or_else(|| self.left_ray_end.clone())
    }

    /// One hole-free stretch (the full line, a single ray, or a single
    /// interval): chainable at every scale.
    pub fn is_single_run(&self) -> bool {
        if self.full_line {
            return true;
        }
        let sites = usize::from(self.left_ray_end.is_some())
            + self.atoms.len()
            + match &self.right {
                RightEnd::Bounded => 0,
                RightEnd::Ray { .. } => 1,
                RightEnd::Tail(_) => 2, // a tail is never a single run
            };
        sites == 1
    }

    /// All explicit gaps (left-ray edge, inter-atom, and the boundary gap
    /// to the ray or tail), in left-to-right order.
    pub fn explicit_gaps(&self) -> Vec<Q> {
        let mut gaps = Vec::new();
        let mut prev = self.left_ray_end.clone();
        for a in &self.atoms {
            if let Some(p) = &prev {
                gaps.push(a.lo().clone() - p.clone());
            }
            prev = Some(a.hi().clone());
        }
        let edge = match &self.right {
            RightEnd::Bounded => None,
            RightEnd::Ray { start } => Some(start.clone()),
            RightEnd::Tail(t) => Some(t.cut.clone()),
        };
        if let (Some(p), Some(e)) = (prev, edge) {
            gaps.push(e - p);
        }
        gaps
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;

    fn build(pieces: Vec<Piece>) -> Arrangement {
        Arrangement::build(&pieces, None).unwrap()
    }

    #[test]
    fn naturals_get_a_unit_tail() {
        let arr = build(vec![nat()]);
        assert!(arr.left_ray_end.is_none());
        let tail = arr.tail().unwrap();
        assert_eq!(tail.period, q("1"));
        assert_eq!(tail.offsets, vec![q("0")]);
        assert_eq!(tail.gmax(), q("1"));
        // heads below the cut are explicit points
        assert!(!arr.atoms.is_empty());
        assert!(arr.atoms.iter().all(|a| matches!(a, Atom::Pt { .. })));
        assert!(arr.explicit_gaps().iter().all(|g| *g == q("1")));
    }

    #[test]
    fn ray_plus_naturals() {
        let arr = build(vec![left_ray("0"), nat()]);
        assert_eq!(arr.left_ray_end, Some(q("0")));
        assert_eq!(arr.tail().unwrap().gmax(), q("1"));
        let gaps = arr.explicit_gaps();
        assert!(gaps.iter().all(|g| *g == q("1")), "gaps {gaps:?}");
    }

    #[test]
    fn interleaved_lattices_share_a_period() {
        // evens from 0 and odds from 1: effectively the naturals
        let arr = build(vec![
            lattice("0", "2", LatticeCount::Infinite),
            lattice("1", "2", LatticeCount::Infinite),
        ]);
        let tail = arr.tail().unwrap();
        assert_eq!(tail.period, q("2"));
        assert_eq!(tail.offsets, vec![q("0"), q("1")]);
        assert_eq!(tail.cyclic_gaps(), vec![q("1"), q("1")]);
        assert_eq!(tail.gmax(), q("1"));
    }

    #[test]
    fn sparse_and_dense_lattices() {
        // step 3 from 0 and step 3 from 1/2: pattern gaps 1/2 and 5/2
        let arr = build(vec![
            lattice("0", "3", LatticeCount::Infinite),
            lattice("1/2", "3", LatticeCount::Infinite),
        ]);
        let tail = arr.tail().unwrap();
        assert_eq!(tail.period, q("3"));
        // the gap cycle starts wherever the cut lands; compare as a multiset
        let mut gaps = tail.cyclic_gaps();
        gaps.sort();
        assert_eq!(gaps, vec![q("1/2"), q("5/2")]);
        assert_eq!(tail.gmax(), q("5/2"));
    }

    #[test]
    fn tail_point_location_is_exact() {
        let arr = build(vec![nat()]);
        let tail = arr.tail().unwrap();
        let deep = tail.cut.clone() + q("1000000");
        let (j, t) = tail.locate(&deep).unwrap();
        assert_eq!(tail.point_at(&j, t), deep);
        assert!(tail.locate(&(tail.cut.clone() + q("1/2"))).is_none());
    }

    #[test]
    fn min_cut_pushes_the_cut_out() {
        let pieces = vec![nat()];
        let base = Arrangement::build(&pieces, None).unwrap();
        let c0 = base.tail().unwrap().cut.clone();
        let forced = Arrangement::build(&pieces, Some(&(c0.clone() + q("10")))).unwrap();
        assert!(forced.tail().unwrap().cut >= c0 + q("10"));
    }

    #[test]
    fn finite_content_only() {
        let arr = build(vec![
            Piece::interval(q("0"), q("1")),
            Piece::Points {
                xs: vec![q("2"), q("3")],
            },
        ]);
        assert!(arr.tail().is_none());
        assert_eq!(arr.atoms.len(), 3);
        assert_eq!(arr.explicit_gaps(), vec![q("1"), q("1")]);
        assert!(arr.left_ray_end.is_none() && matches!(arr.right, RightEnd::Bounded));
    }
}
