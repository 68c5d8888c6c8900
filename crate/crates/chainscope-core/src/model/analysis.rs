//! Exact evaluation of the chain-geometry functionals on a model.
//!
//! On the line, an ε-chain can never jump a hole of length ≥ ε, and inside
//! a hole-free stretch every pair is ε-chainable for every ε. The
//! ε-chainable component of `x` is therefore the maximal run of the model
//! around `x` delimited by the nearest holes of length ≥ ε, and
//!
//! `f_c(x) = min(GL(x), GR(x))`
//!
//! where `GL(x)` is the largest hole between `x` and the left-unbounded
//! part of the model (`∞` when the model is bounded below, `0` when `x`
//! itself sits in an unbounded continuum piece), and `GR(x)` symmetrically.
//! Both quantities are maxima of finitely many exact rationals: the
//! explicit gaps of the arrangement plus the cyclic gaps of the tail.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arrange::{Arrangement, Atom, RightEnd, Tail};
use super::piece::{Direction, Piece, Q};
use super::region::Region;
use super::{Model1D, ModelError};
use crate::scalar::Ext;

type ExtQ = Ext<Q>;

/// Location of a point inside an arrangement.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Loc {
    FullLine,
    LeftRay,
    Atom(usize),
    RightRay,
    TailPt { j: BigInt, t: usize },
}

/// A maximal stretch on which a pointwise functional is constant.
#[derive(Debug, Clone, PartialEq)]
pub enum ZoneSpan {
    FullLine,
    LeftRay { end: Q },
    Seg { a: Q, b: Q },
    Pt { x: Q },
    RightRay { start: Q },
    /// The periodic lattice tail from `from` onwards.
    DeepTail { from: Q },
}

impl ZoneSpan {
    pub fn representative(&self) -> Q {
        match self {
            ZoneSpan::FullLine => Q::zero(),
            ZoneSpan::LeftRay { end } => end.clone(),
            ZoneSpan::Seg { a, .. } => a.clone(),
            ZoneSpan::Pt { x } => x.clone(),
            ZoneSpan::RightRay { start } => start.clone(),
            ZoneSpan::DeepTail { from } => from.clone(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, ZoneSpan::Seg { .. } | ZoneSpan::Pt { .. })
    }
}

/// A zone with the constant value a functional takes on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Zone {
    pub span: ZoneSpan,
    pub value: ExtQ,
}

impl Arrangement {
    pub(crate) fn locate(&self, x: &Q) -> Option<Loc> {
        if self.full_line {
            return Some(Loc::FullLine);
        }
        if let Some(e) = &self.left_ray_end {
            if x <= e {
                return Some(Loc::LeftRay);
            }
        }
        let idx = self.atoms.partition_point(|a| a.lo() <= x);
        if idx > 0 {
            let a = &self.atoms[idx - 1];
            if x <= a.hi() {
                return Some(Loc::Atom(idx - 1));
            }
        }
        match &self.right {
            RightEnd::Bounded => None,
            RightEnd::Ray { start } => {
                if x >= start {
                    Some(Loc::RightRay)
                } else {
                    None
                }
            }
            RightEnd::Tail(t) => t.locate(x).map(|(j, t)| Loc::TailPt { j, t }),
        }
    }

    /// Leftmost coordinate of the ε-run containing the located point;
    /// `None` means the run is unbounded below.
    fn scan_left(&self, loc: &Loc, eps: &Q) -> Option<Q> {
        match loc {
            Loc::FullLine | Loc::LeftRay => None,
            Loc::Atom(i) => self.scan_left_from_atom(*i, eps),
            Loc::RightRay => {
                let start = match &self.right {
                    RightEnd::Ray { start } => start.clone(),
                    _ => unreachable!(),
                };
                match self.last_explicit_hi() {
                    None => Some(start),
                    Some(h) => {
                        if start.clone() - h < *eps {
                            if self.atoms.is_empty() {
                                None // ray chains into the left ray
                            } else {
                                self.scan_left_from_atom(self.atoms.len() - 1, eps)
                            }
                        } else {
                            Some(start)
                        }
                    }
                }
            }
            Loc::TailPt { j, t } => {
                let tail = self.tail().expect("tail location implies a tail");
                let r = tail.arity();
                let lin = tail.linear_index(j, *t);
                let max_steps = BigInt::from(r).min(lin.clone());
                let mut s = BigInt::one();
                while s <= max_steps {
                    let idx = lin.clone() - s.clone();
                    if tail.gap_after_linear(&idx) >= *eps {
                        return Some(tail.point_at_linear(&(idx + BigInt::one())));
                    }
                    s += BigInt::one();
                }
                if max_steps < BigInt::from(r) {
                    // walked down to the cut without a blocking gap
                    debug_assert_eq!(max_steps, lin);
                    self.scan_left_over_boundary(tail, eps)
                } else {
                    // a full period has no blocking gap, so nothing blocks
                    self.scan_left_over_boundary(tail, eps)
                }
            }
        }
    }

    fn scan_left_over_boundary(&self, tail: &Tail, eps: &Q) -> Option<Q> {
        match self.last_explicit_hi() {
            None => Some(tail.cut.clone()),
            Some(h) => {
                if tail.cut.clone() - h < *eps {
                    if self.atoms.is_empty() {
                        None // chained into the left ray
                    } else {
                        self.scan_left_from_atom(self.atoms.len() - 1, eps)
                    }
                } else {
                    Some(tail.cut.clone())
                }
            }
        }
    }

    fn scan_left_from_atom(&self, mut i: usize, eps: &Q) -> Option<Q> {
        loop {
            if i == 0 {
                return match &self.left_ray_end {
                    Some(e) => {
                        if self.atoms[0].lo().clone() - e.clone() < *eps {
                            None
                        } else {
                            Some(self.atoms[0].lo().clone())
                        }
                    }
                    None => Some(self.atoms[0].lo().clone()),
                };
            }
            let gap = self.atoms[i].lo().clone() - self.atoms[i - 1].hi().clone();
            if gap < *eps {
                i -= 1;
            } else {
                return Some(self.atoms[i].lo().clone());
            }
        }
    }

    /// Rightmost coordinate of the ε-run; `None` means unbounded above.
    fn scan_right(&self, loc: &Loc, eps: &Q) -> Option<Q> {
        match loc {
            Loc::FullLine | Loc::RightRay => None,
            Loc::LeftRay => {
                let e = self.left_ray_end.clone().expect("left ray present");
                if self.atoms.is_empty() {
                    match &self.right {
                        RightEnd::Bounded => Some(e),
                        RightEnd::Ray { start } => {
                            if start.clone() - e.clone() < *eps {
                                None
                            } else {
                                Some(e)
                            }
                        }
                        RightEnd::Tail(t) => {
                            if t.cut.clone() - e.clone() < *eps {
                                self.tail_scan_right(t, &BigInt::zero(), eps)
                            } else {
                                Some(e)
                            }
                        }
                    }
                } else if self.atoms[0].lo().clone() - e.clone() < *eps {
                    self.scan_right_from_atom(0, eps)
                } else {
                    Some(e)
                }
            }
            Loc::Atom(i) => self.scan_right_from_atom(*i, eps),
            Loc::TailPt { j, t } => {
                let tail = self.tail().expect("tail location implies a tail");
                let lin = tail.linear_index(j, *t);
                self.tail_scan_right(tail, &lin, eps)
            }
        }
    }

    fn tail_scan_right(&self, tail: &Tail, lin: &BigInt, eps: &Q) -> Option<Q> {
        for s in 0..tail.arity() {
            let idx = lin.clone() + BigInt::from(s);
            if tail.gap_after_linear(&idx) >= *eps {
                return Some(tail.point_at_linear(&idx));
            }
        }
        None // every cyclic gap is crossed
    }

    fn scan_right_from_atom(&self, mut i: usize, eps: &Q) -> Option<Q> {
        loop {
            if i + 1 < self.atoms.len() {
                let gap = self.atoms[i + 1].lo().clone() - self.atoms[i].hi().clone();
                if gap < *eps {
                    i += 1;
                    continue;
                }
                return Some(self.atoms[i].hi().clone());
            }
            return match &self.right {
                RightEnd::Bounded => Some(self.atoms[i].hi().clone()),
                RightEnd::Ray { start } => {
                    if start.clone() - self.atoms[i].hi().clone() < *eps {
                        None
                    } else {
                        Some(self.atoms[i].hi().clone())
                    }
                }
                RightEnd::Tail(t) => {
                    if t.cut.clone() - self.atoms[i].hi().clone() < *eps {
                        self.tail_scan_right(t, &BigInt::zero(), eps)
                    } else {
                        Some(self.atoms[i].hi().clone())
                    }
                }
            };
        }
    }

    /// Largest hole between the located point and the left-unbounded end:
    /// `0` inside an unbounded continuum piece, `∞` when the model is
    /// bounded below.
    fn reach_left(&self, loc: &Loc) -> ExtQ {
        if self.full_line {
            return Ext::Finite(Q::zero());
        }
        if self.left_ray_end.is_none() {
            return Ext::Infinite;
        }
        match loc {
            Loc::FullLine => unreachable!(),
            Loc::LeftRay => Ext::Finite(Q::zero()),
            Loc::Atom(i) => {
                let e = self.left_ray_end.as_ref().unwrap();
                let mut worst = self.atoms[0].lo().clone() - e.clone();
                for k in 1..=*i {
                    let gap = self.atoms[k].lo().clone() - self.atoms[k - 1].hi().clone();
                    worst = worst.max(gap);
                }
                Ext::Finite(worst)
            }
            Loc::RightRay | Loc::TailPt { .. } => {
                // every explicit gap lies to the left ...
                let mut worst = self
                    .explicit_gaps()
                    .into_iter()
                    .max()
                    .unwrap_or_else(Q::zero);
                // ... plus the in-tail gaps strictly left of the point
                if let Loc::TailPt { j, t } = loc {
                    let tail = self.tail().unwrap();
                    let lin = tail.linear_index(j, *t);
                    let upto = BigInt::from(tail.arity()).min(lin.clone());
                    let mut s = BigInt::zero();
                    while s < upto {
                        worst = worst.max(tail.gap_after_linear(&s));
                        s += BigInt::one();
                    }
                }
                Ext::Finite(worst)
            }
        }
    }

    /// Largest hole between the located point and the right-unbounded end.
    fn reach_right(&self, loc: &Loc) -> ExtQ {
        if self.full_line {
            return Ext::Finite(Q::zero());
        }
        match (&self.right, loc) {
            (_, Loc::FullLine) => unreachable!(),
            (RightEnd::Bounded, _) => Ext::Infinite,
            (_, Loc::RightRay) => Ext::Finite(Q::zero()),
            (RightEnd::Tail(t), Loc::TailPt { .. }) => Ext::Finite(t.gmax()),
            (right, loc) => {
                // explicit content left of the ray or tail
                let from_atom = match loc {
                    Loc::LeftRay => 0,
                    Loc::Atom(i) => i + 1,
                    _ => unreachable!(),
                };
                let mut worst = Q::zero();
                let mut prev: Option<Q> = match loc {
                    Loc::LeftRay => Some(self.left_ray_end.clone().unwrap()),
                    Loc::Atom(i) => Some(self.atoms[*i].hi().clone()),
                    _ => None,
                };
                for a in &self.atoms[from_atom.min(self.atoms.len())..] {
                    if let Some(p) = prev {
                        worst = worst.max(a.lo().clone() - p);
                    }
                    prev = Some(a.hi().clone());
                }
                match right {
                    RightEnd::Ray { start } => {
                        worst = worst.max(start.clone() - prev.unwrap());
                    }
                    RightEnd::Tail(t) => {
                        worst = worst.max(t.cut.clone() - prev.unwrap());
                        worst = worst.max(t.gmax());
                    }
                    RightEnd::Bounded => unreachable!(),
                }
                Ext::Finite(worst)
            }
        }
    }
}

impl Model1D {
    fn locate_checked(&self, x: &Q) -> Result<Loc, ModelError> {
        self.arrangement()
            .locate(x)
            .ok_or(ModelError::PointNotInModel)
    }

    /// The exact ε-chainable component of `x`, as a region.
    pub fn component(&self, x: &Q, eps: &Q) -> Result<Region, ModelError> {
        if eps <= &Q::zero() {
            return Err(ModelError::NonpositiveScale);
        }
        let loc = self.locate_checked(x)?;
        let arr = self.arrangement();
        let lo = arr.scan_left(&loc, eps);
        let hi = arr.scan_right(&loc, eps);
        Ok(self.slice(lo.as_ref(), hi.as_ref()))
    }

    /// `f_c(x)`: the threshold scale at which the component of `x` stops
    /// being compact; `0` if it never is, `∞` if it always is.
    pub fn f_c(&self, x: &Q) -> Result<ExtQ, ModelError> {
        let loc = self.locate_checked(x)?;
        Ok(self.fc_at(&loc))
    }

    fn fc_at(&self, loc: &Loc) -> ExtQ {
        let arr = self.arrangement();
        arr.reach_left(loc).min(arr.reach_right(loc))
    }

    /// `ν(x)`: always `∞` here, since every model is a closed subset of the
    /// line, hence proper, and closed balls are compact. The operation
    /// exists to make `nlc = ∅` explicit.
    pub fn nu(&self, x: &Q) -> Result<ExtQ, ModelError> {
        self.locate_checked(x)?;
        Ok(Ext::Infinite)
    }

    /// `I(x) = d(x, M \ {x})`: zero at limit points, the least adjacent
    /// gap at isolated points.
    pub fn isolation(&self, x: &Q) -> Result<ExtQ, ModelError> {
        let loc = self.locate_checked(x)?;
        let arr = self.arrangement();
        let v = match &loc {
            Loc::FullLine | Loc::LeftRay | Loc::RightRay => Q::zero(),
            Loc::Atom(i) => match &arr.atoms[*i] {
                Atom::Seg { .. } => Q::zero(),
                Atom::Pt { x } => {
                    let left = if *i > 0 {
                        Some(x.clone() - arr.atoms[i - 1].hi().clone())
                    } else {
                        arr.left_ray_end.as_ref().map(|e| x.clone() - e.clone())
                    };
                    let right = if i + 1 < arr.atoms.len() {
                        Some(arr.atoms[i + 1].lo().clone() - x.clone())
                    } else {
                        match &arr.right {
                            RightEnd::Bounded => None,
                            RightEnd::Ray { start } => Some(start.clone() - x.clone()),
                            RightEnd::Tail(t) => Some(t.cut.clone() - x.clone()),
                        }
                    };
                    match (left, right) {
                        (Some(l), Some(r)) => l.min(r),
                        (Some(l), None) => l,
                        (None, Some(r)) => r,
                        (None, None) => unreachable!("models have at least two points"),
                    }
                }
            },
            Loc::TailPt { j, t } => {
                let tail = arr.tail().unwrap();
                let right = tail.gap_after(*t);
                let left = if *t > 0 {
                    tail.offsets[*t].clone() - tail.offsets[*t - 1].clone()
                } else if j > &BigInt::zero() {
                    tail.period.clone() - tail.offsets.last().unwrap().clone()
                } else {
                    let h = arr
                        .last_explicit_hi()
                        .expect("a tail always has an explicit head");
                    tail.cut.clone() - h
                };
                left.min(right)
            }
        };
        Ok(Ext::Finite(v))
    }

    /// Zones of constant `f_c`, covering the whole model.
    pub fn fc_zones(&self) -> Vec<Zone> {
        zones_over(self.arrangement(), &|x| {
            self.f_c(x).expect("zone representative is in the model")
        })
    }

    /// Zones of constant isolation. The deep-tail zone carries the least
    /// isolation over its pattern (the value relevant to every infimum).
    pub fn iso_zones(&self) -> Vec<Zone> {
        zones_over(self.arrangement(), &|x| {
            self.isolation(x).expect("zone representative is in the model")
        })
    }

    /// `nslc(M) = {x : f_c(x) = 0}`: the unbounded continuum pieces.
    pub fn nslc(&self) -> Region {
        Region::from_disjoint_pieces(
            self.pieces()
                .iter()
                .filter(|p| {
                    matches!(p, Piece::FullLine)
                        || matches!(p, Piece::Ray { .. })
                })
                .cloned()
                .collect(),
        )
    }

    /// The set of limit points `X' = Ker I`: the continuum pieces.
    pub fn limit_points(&self) -> Region {
        Region::from_disjoint_pieces(
            self.pieces()
                .iter()
                .filter(|p| p.is_continuum())
                .cloned()
                .collect(),
        )
    }

    /// `Ker f_c` assembled from the zone decomposition (the independent
    /// route to `nslc`).
    pub fn fc_kernel(&self) -> Region {
        self.kernel_of(self.fc_zones())
    }

    /// `Ker I` assembled from the zone decomposition.
    pub fn iso_kernel(&self) -> Region {
        // the deep-tail zone value is the pattern minimum, which is
        // positive, so only explicit spans can vanish
        self.kernel_of(self.iso_zones())
    }

    /// Sorted distinct hole lengths of the model (explicit holes plus the
    /// cyclic holes of the tail): the only scales where component
    /// structure changes.
    pub fn gap_values(&self) -> Vec<Q> {
        let arr = self.arrangement();
        let mut vals = arr.explicit_gaps();
        if let Some(t) = arr.tail() {
            vals.extend(t.cyclic_gaps());
        }
        vals.sort();
        vals.dedup();
        vals
    }

    /// A window that covers every transient feature, a stretch of each
    /// ray, and two tail periods; handy for sampling.
    pub fn suggested_window(&self) -> (Q, Q) {
        let arr = self.arrangement();
        let one = Q::from_integer(1.into());
        let two = one.clone() + one.clone();
        if arr.full_line {
            return (-two.clone(), two);
        }
        let mut anchors: Vec<Q> = Vec::new();
        if let Some(e) = &arr.left_ray_end {
            anchors.push(e.clone() - two.clone());
            anchors.push(e.clone());
        }
        for a in &arr.atoms {
            anchors.push(a.lo().clone());
            anchors.push(a.hi().clone());
        }
        match &arr.right {
            RightEnd::Bounded => {}
            RightEnd::Ray { start } => {
                anchors.push(start.clone());
                anchors.push(start.clone() + two.clone());
            }
            RightEnd::Tail(t) => {
                anchors.push(t.cut.clone());
                anchors.push(t.cut.clone() + t.period.clone() + t.period.clone());
            }
        }
        let lo = anchors.iter().min().expect("models are non-empty").clone();
        let hi = anchors.iter().max().expect("models are non-empty").clone();
        (lo - one.clone(), hi + one)
    }

    pub(crate) fn kernel_of(&self, zones: Vec<Zone>) -> Region {
        let mut pieces = Vec::new();
        for z in zones {
            if !z.value.is_zero() {
                continue;
            }
            match z.span {
                ZoneSpan::FullLine => pieces.push(Piece::FullLine),
                ZoneSpan::LeftRay { end } => pieces.push(Piece::Ray {
                    dir: Direction::Left,
                    end,
                }),
                ZoneSpan::RightRay { start } => pieces.push(Piece::Ray {
                    dir: Direction::Right,
                    end: start,
                }),
                ZoneSpan::Seg { a, b } => pieces.push(Piece::Interval { a, b }),
                ZoneSpan::Pt { x } => pieces.push(Piece::Points { xs: vec![x] }),
                ZoneSpan::DeepTail { from } => {
                    let t = self.arrangement().tail().expect("deep tail zone");
                    for off in &t.offsets {
                        pieces.push(Piece::Lattice {
                            start: from.clone() + off.clone(),
                            step: t.period.clone(),
                            count: super::LatticeCount::Infinite,
                        });
                    }
                }
            }
        }
        Region::from_disjoint_pieces(pieces)
    }
}

/// Walks an arrangement into zones, evaluating a pointwise functional at
/// one representative per span (the minimum over the pattern for the deep
/// tail, whose representatives sit one period past the cut).
pub(crate) fn zones_over(arr: &Arrangement, value_at: &dyn Fn(&Q) -> ExtQ) -> Vec<Zone> {
    if arr.full_line {
        return vec![Zone {
            span: ZoneSpan::FullLine,
            value: value_at(&Q::zero()),
        }];
    }
    let mut zones = Vec::new();
    if let Some(e) = &arr.left_ray_end {
        zones.push(Zone {
            span: ZoneSpan::LeftRay { end: e.clone() },
            value: value_at(e),
        });
    }
    for a in &arr.atoms {
        let span = match a {
            Atom::Seg { a, b } => ZoneSpan::Seg {
                a: a.clone(),
                b: b.clone(),
            },
            Atom::Pt { x } => ZoneSpan::Pt { x: x.clone() },
        };
        zones.push(Zone {
            value: value_at(span.representative_ref()),
            span,
        });
    }
    match &arr.right {
        RightEnd::Bounded => {}
        RightEnd::Ray { start } => zones.push(Zone {
            span: ZoneSpan::RightRay {
                start: start.clone(),
            },
            value: value_at(start),
        }),
        RightEnd::Tail(t) => {
            let mut value: Option<ExtQ> = None;
            for ti in 0..t.arity() {
                let rep = t.point_at(&BigInt::one(), ti);
                let v = value_at(&rep);
                value = Some(match value {
                    None => v,
                    Some(cur) => cur.min(v),
                });
            }
            zones.push(Zone {
                span: ZoneSpan::DeepTail {
                    from: t.cut.clone(),
                },
                value: value.unwrap(),
            });
        }
    }
    zones
}

impl ZoneSpan {
    fn representative_ref(&self) -> &Q {
        match self {
            ZoneSpan::Seg { a, .. } => a,
            ZoneSpan::Pt { x } => x,
            ZoneSpan::LeftRay { end } => end,
            ZoneSpan::RightRay { start } => start,
            _ => unreachable!("only bounded spans are queried by reference"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::{LatticeCount, Model1D, ModelError, Piece};
    use super::*;

    fn fin(s: &str) -> ExtQ {
        Ext::Finite(q(s))
    }

    fn line() -> Model1D {
        Model1D::new(vec![Piece::FullLine]).unwrap()
    }

    fn naturals() -> Model1D {
        Model1D::new(vec![nat()]).unwrap()
    }

    fn ray_and_naturals() -> Model1D {
        Model1D::new(vec![left_ray("0"), nat()]).unwrap()
    }

    fn unit_interval() -> Model1D {
        Model1D::new(vec![Piece::interval(q("0"), q("1"))]).unwrap()
    }

    #[test]
    fn full_line_component_is_everything() {
        let m = line();
        for (x, eps) in [("0", "1"), ("-17/3", "1/1000")] {
            let c = m.component(&q(x), &q(eps)).unwrap();
            assert_eq!(c.pieces(), &[Piece::FullLine]);
        }
        assert_eq!(m.f_c(&q("3")).unwrap(), fin("0"));
        assert_eq!(m.nu(&q("0")).unwrap(), Ext::Infinite);
        assert_eq!(m.isolation(&q("0")).unwrap(), fin("0"));
    }

    #[test]
    fn naturals_have_singleton_components_below_one() {
        let m = naturals();
        let c = m.component(&q("5"), &q("1")).unwrap();
        assert_eq!(
            c.pieces(),
            &[Piece::Points { xs: vec![q("5")] }],
            "step not < 1"
        );
        let c = m.component(&q("5"), &q("3/2")).unwrap();
        assert!(!c.is_bounded(), "above the step the whole tail chains");
        assert!(c.contains(&q("1")) && c.contains(&q("1000000")));
    }

    #[test]
    fn naturals_fc_is_one_everywhere() {
        let m = naturals();
        for x in ["1", "2", "7", "1000"] {
            assert_eq!(m.f_c(&q(x)).unwrap(), fin("1"), "x={x}");
            assert_eq!(m.isolation(&q(x)).unwrap(), fin("1"));
            assert_eq!(m.nu(&q(x)).unwrap(), Ext::Infinite);
        }
        assert_eq!(m.f_c(&q("1/2")).unwrap_err(), ModelError::PointNotInModel);
    }

    #[test]
    fn ray_and_naturals_reference_values() {
        let m = ray_and_naturals();
        // component of -1 at 1/2 stays inside the ray
        let c = m.component(&q("-1"), &q("1/2")).unwrap();
        assert_eq!(
            c.pieces(),
            &[Piece::Ray {
                dir: Direction::Left,
                end: q("0")
            }]
        );
        // above the unit gap everything chains
        let c = m.component(&q("-1"), &q("3/2")).unwrap();
        assert!(c.contains(&q("10")) && c.contains(&q("-100")));
        // f_c vanishes on the ray and is 1 on the lattice
        assert_eq!(m.f_c(&q("-5")).unwrap(), fin("0"));
        assert_eq!(m.f_c(&q("0")).unwrap(), fin("0"));
        for x in ["1", "2", "50"] {
            assert_eq!(m.f_c(&q(x)).unwrap(), fin("1"), "x={x}");
        }
        // isolation: 1 at the point 1 (distance to 0 and to 2 both 1)
        assert_eq!(m.isolation(&q("1")).unwrap(), fin("1"));
        assert_eq!(m.isolation(&q("-1")).unwrap(), fin("0"));
    }

    #[test]
    fn bounded_models_have_infinite_fc() {
        let m = unit_interval();
        assert_eq!(m.f_c(&q("1/2")).unwrap(), Ext::Infinite);
        assert_eq!(m.f_c(&q("0")).unwrap(), Ext::Infinite);
        assert_eq!(m.isolation(&q("1/2")).unwrap(), fin("0"));
        let c = m.component(&q("1/2"), &q("1/1000")).unwrap();
        assert_eq!(c.pieces(), &[Piece::interval(q("0"), q("1"))]);
    }

    #[test]
    fn kernels_match_their_regions() {
        for m in [line(), naturals(), ray_and_naturals(), unit_interval()] {
            assert!(m.fc_kernel().set_eq(&m.nslc()), "fc kernel of {m:?}");
            assert!(m.iso_kernel().set_eq(&m.limit_points()), "iso kernel");
        }
    }

    #[test]
    fn reference_kernel_regions() {
        assert_eq!(line().nslc().pieces(), &[Piece::FullLine]);
        assert!(naturals().nslc().is_empty());
        assert!(naturals().limit_points().is_empty());
        let m = ray_and_naturals();
        assert_eq!(
            m.nslc().pieces(),
            &[Piece::Ray {
                dir: Direction::Left,
                end: q("0")
            }]
        );
        assert!(m.nslc().set_eq(&m.limit_points()));
    }

    #[test]
    fn transient_lattice_points_get_their_own_fc() {
        // a ray, then a lattice that starts close to it but spreads out:
        // (-inf,0] ∪ {1/2} ∪ {5/2, 9/2, 13/2, ...}
        let m = Model1D::new(vec![
            left_ray("0"),
            Piece::Points { xs: vec![q("1/2")] },
            lattice("5/2", "2", LatticeCount::Infinite),
        ])
        .unwrap();
        // at 1/2: the hole to the ray is 1/2, the holes rightward are 2
        assert_eq!(m.f_c(&q("1/2")).unwrap(), fin("1/2"));
        // deep lattice points: both reaches are 2
        assert_eq!(m.f_c(&q("5/2")).unwrap(), fin("2"));
        assert_eq!(m.f_c(&q("9/2")).unwrap(), fin("2"));
        assert_eq!(m.f_c(&q("7/2")).unwrap_err(), ModelError::PointNotInModel);
    }

    #[test]
    fn two_sided_reach_picks_the_smaller_threshold() {
        // {0} ∪ lattice from 10: f_c(0) is the 10-hole, not the lattice step
        let m = Model1D::new(vec![
            Piece::Points { xs: vec![q("0")] },
            lattice("10", "1", LatticeCount::Infinite),
        ])
        .unwrap();
        assert_eq!(m.f_c(&q("0")).unwrap(), fin("10"));
        assert_eq!(m.f_c(&q("10")).unwrap(), fin("1"));
        // and the component of 0 at eps in (1, 10] is just {0}
        let c = m.component(&q("0"), &q("5")).unwrap();
        assert_eq!(c.pieces(), &[Piece::Points { xs: vec![q("0")] }]);
        // at eps > 10 the whole model chains
        let c = m.component(&q("0"), &q("11")).unwrap();
        assert!(!c.is_bounded());
    }

    #[test]
    fn zone_decomposition_covers_the_model() {
        let m = ray_and_naturals();
        let zones = m.fc_zones();
        assert!(zones
            .iter()
            .any(|z| matches!(z.span, ZoneSpan::LeftRay { .. }) && z.value.is_zero()));
        assert!(zones
            .iter()
            .any(|z| matches!(z.span, ZoneSpan::DeepTail { .. }) && z.value == fin("1")));
        // every zone value for the lattice points is 1
        for z in &zones {
            if let ZoneSpan::Pt { .. } = z.span {
                assert_eq!(z.value, fin("1"));
            }
        }
    }
}
