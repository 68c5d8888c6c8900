//! Covering functionals on the symbolic backend, in their genuine
//! unbounded-budget form: the number of centers and the chain depth are
//! existentially quantified, so the values collapse to exact thresholds.
//!
//! * `α(A)` (finitely many open balls) is `0` for bounded `A` and `∞`
//!   otherwise: on the line, bounded closed sets are totally bounded and
//!   nothing else is coverable by finitely many balls.
//! * `η(A)` (finitely many m-step chain balls) behaves the same way: an
//!   m-step ball at scale `ε` lives inside a bounded `m·ε`-ball.
//! * `η*(A)` (finitely many chainable components) is `0` exactly when `A`
//!   is qC-precompact; otherwise it is the largest cyclic gap of the
//!   ambient lattice tail, the scale above which the tail fuses into
//!   finitely many components.
//! * `γ*(A)` (one chainable component) is the largest ambient hole lying
//!   between points of `A`.

use super::arrange::RightEnd;
use super::piece::Q;
use super::{Model1D, SubsetSpec};
use crate::scalar::Ext;

type ExtQ = Ext<Q>;

/// Exact unbounded-budget functional values for a subset of a model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFunctionals {
    pub alpha: ExtQ,
    pub eta: ExtQ,
    pub eta_star: ExtQ,
    pub gamma_star: ExtQ,
}

impl Model1D {
    pub fn functionals(&self, a: &SubsetSpec) -> ModelFunctionals {
        let bounded = a.is_bounded();
        let ball_value = if bounded {
            Ext::Finite(Q::from_integer(0.into()))
        } else {
            Ext::Infinite
        };
        let eta_star = if a.has_infinite_lattice() && self.right_end_is_tail() {
            Ext::Finite(self.tail_threshold().expect("tail present"))
        } else {
            Ext::Finite(Q::from_integer(0.into()))
        };
        let region = a.as_region();
        let lo = if region.unbounded_below() {
            None
        } else {
            region.min_point()
        };
        let hi = if region.unbounded_above() {
            None
        } else {
            region.max_point()
        };
        let gamma_star = Ext::Finite(self.max_hole_within(lo.as_ref(), hi.as_ref()));
        ModelFunctionals {
            alpha: ball_value.clone(),
            eta: ball_value,
            eta_star,
            gamma_star,
        }
    }

    /// Largest hole of the model whose closure lies inside `[lo, hi]`
    /// (`None` = unbounded side); zero when there is none.
    fn max_hole_within(&self, lo: Option<&Q>, hi: Option<&Q>) -> Q {
        let arr = self.arrangement();
        let zero = Q::from_integer(0.into());
        if arr.full_line {
            return zero;
        }
        let mut best = zero.clone();
        let mut consider = |start: &Q, end: &Q| {
            if lo.map_or(true, |l| start >= l) && hi.map_or(true, |h| end <= h) {
                let len = end.clone() - start.clone();
                if len > best {
                    best = len;
                }
            }
        };
        // explicit holes
        let mut prev = arr.left_ray_end.clone();
        for a in &arr.atoms {
            if let Some(p) = &prev {
                consider(p, a.lo());
            }
            prev = Some(a.hi().clone());
        }
        match &arr.right {
            RightEnd::Bounded => {}
            RightEnd::Ray { start } => {
                if let Some(p) = &prev {
                    consider(p, start);
                }
            }
            RightEnd::Tail(t) => {
                if let Some(p) = &prev {
                    consider(p, &t.cut);
                }
                // tail holes: all values are cyclic gaps; a window that
                // spans two periods past the relevant edge sees them all
                let from = match lo {
                    Some(l) if *l > t.cut => l.clone(),
                    _ => t.cut.clone(),
                };
                match hi {
                    None => {
                        for g in t.cyclic_gaps() {
                            if g > best {
                                best = g;
                            }
                        }
                    }
                    Some(h) => {
                        let two_periods = from.clone() + t.period.clone() + t.period.clone();
                        if *h >= two_periods {
                            for g in t.cyclic_gaps() {
                                if g > best {
                                    best = g;
                                }
                            }
                        } else {
                            // short window: walk the few concrete points
                            let mut idx = num_bigint::BigInt::from(0);
                            let mut prev_pt: Option<Q> = None;
                            loop {
                                let p = t.point_at_linear(&idx);
                                if p > *h {
                                    break;
                                }
                                if p >= from {
                                    if let Some(pp) = &prev_pt {
                                        consider(pp, &p);
                                    }
                                    prev_pt = Some(p);
                                }
                                idx += 1;
                            }
                        }
                    }
                }
            }
        }
        best
    }
}
