//! Piece-level geometry: membership, bounds, intersection, slicing.
//!
//! All arithmetic is exact rational, so every comparison here is decidable
//! and immune to floating-point ties.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeCount {
    Finite(u64),
    Infinite,
}

/// One generator of a finitely-presented closed subset of the line.
///
/// An infinite lattice extends rightwards only (ascending); a bi-infinite
/// progression needs a different presentation and the integers as a whole
/// are not expressible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    /// Closed interval `[a, b]` with `a < b`.
    Interval { a: Q, b: Q },
    /// `(-∞, end]` or `[end, +∞)`.
    Ray { dir: Direction, end: Q },
    /// The whole line; only valid as the sole piece.
    FullLine,
    /// `start + k·step` for `0 ≤ k < count`, `step > 0`.
    Lattice {
        start: Q,
        step: Q,
        count: LatticeCount,
    },
    /// Finite point set, kept sorted and distinct.
    Points { xs: Vec<Q> },
}

impl Piece {
    pub fn interval(a: Q, b: Q) -> Piece {
        Piece::Interval { a, b }
    }

    pub fn point(x: Q) -> Piece {
        Piece::Points { xs: vec![x] }
    }

    /// Lower bound of the point set; `None` means unbounded below.
    pub fn lower(&self) -> Option<Q> {
        match self {
            Piece::Interval { a, .. } => Some(a.clone()),
            Piece::Ray {
                dir: Direction::Left,
                ..
            } => None,
            Piece::Ray {
                dir: Direction::Right,
                end,
            } => Some(end.clone()),
            Piece::FullLine => None,
            Piece::Lattice { start, .. } => Some(start.clone()),
            Piece::Points { xs } => Some(xs[0].clone()),
        }
    }

    /// Upper bound of the point set; `None` means unbounded above.
    pub fn upper(&self) -> Option<Q> {
        match self {
            Piece::Interval { b, .. } => Some(b.clone()),
            Piece::Ray {
                dir: Direction::Left,
                end,
            } => Some(end.clone()),
            Piece::Ray {
                dir: Direction::Right,
                ..
            } => None,
            Piece::FullLine => None,
            Piece::Lattice { start, step, count } => match count {
                LatticeCount::Infinite => None,
                LatticeCount::Finite(c) => {
                    Some(start.clone() + step.clone() * Q::from_integer(BigInt::from(c - 1)))
                }
            },
            Piece::Points { xs } => Some(xs.last().unwrap().clone()),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lower().is_some() && self.upper().is_some()
    }

    /// True for pieces made of limit points (continuum pieces).
    pub fn is_continuum(&self) -> bool {
        matches!(
            self,
            Piece::Interval { .. } | Piece::Ray { .. } | Piece::FullLine
        )
    }

    /// Number of points, `None` meaning infinite.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Piece::Interval { .. } | Piece::Ray { .. } | Piece::FullLine => None,
            Piece::Lattice { count, .. } => match count {
                LatticeCount::Finite(c) => Some(*c),
                LatticeCount::Infinite => None,
            },
            Piece::Points { xs } => Some(xs.len() as u64),
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        match self {
            Piece::Interval { a, b } => a <= x && x <= b,
            Piece::Ray {
                dir: Direction::Left,
                end,
            } => x <= end,
            Piece::Ray {
                dir: Direction::Right,
                end,
            } => x >= end,
            Piece::FullLine => true,
            Piece::Lattice { start, step, count } => {
                if x < start {
                    return false;
                }
                let q = (x.clone() - start.clone()) / step.clone();
                if !q.is_integer() {
                    return false;
                }
                let k = q.to_integer();
                match count {
                    LatticeCount::Infinite => true,
                    LatticeCount::Finite(c) => k < BigInt::from(*c),
                }
            }
            Piece::Points { xs } => xs.binary_search(x).is_ok(),
        }
    }

    /// Exact distance from `x` to the piece.
    pub fn distance_to(&self, x: &Q) -> Q {
        match self {
            Piece::Interval { a, b } => {
                if x < a {
                    a.clone() - x.clone()
                } else if x > b {
                    x.clone() - b.clone()
                } else {
                    Q::zero()
                }
            }
            Piece::Ray {
                dir: Direction::Left,
                end,
            } => {
                if x <= end {
                    Q::zero()
                } else {
                    x.clone() - end.clone()
                }
            }
            Piece::Ray {
                dir: Direction::Right,
                end,
            } => {
                if x >= end {
                    Q::zero()
                } else {
                    end.clone() - x.clone()
                }
            }
            Piece::FullLine => Q::zero(),
            Piece::Lattice { start, step, count } => {
                if x <= start {
                    return start.clone() - x.clone();
                }
                let q = (x.clone() - start.clone()) / step.clone();
                let k_hi = match count {
                    LatticeCount::Infinite => q.ceil().to_integer(),
                    LatticeCount::Finite(c) => q.ceil().to_integer().min(BigInt::from(c - 1)),
                };
                let k_lo = q.floor().to_integer().min(k_hi.clone()).max(BigInt::zero());
                let cand = |k: BigInt| -> Q {
                    let p = start.clone() + step.clone() * Q::from_integer(k);
                    (p - x.clone()).abs()
                };
                cand(k_lo).min(cand(k_hi))
            }
            Piece::Points { xs } => match xs.binary_search(x) {
                Ok(_) => Q::zero(),
                Err(pos) => {
                    let mut best: Option<Q> = None;
                    if pos > 0 {
                        best = Some(x.clone() - xs[pos - 1].clone());
                    }
                    if pos < xs.len() {
                        let d = xs[pos].clone() - x.clone();
                        best = Some(match best {
                            None => d,
                            Some(cur) => cur.min(d),
                        });
                    }
                    best.expect("points piece is non-empty")
                }
            },
        }
    }

    /// Intersection with the closed window `[lo, hi]` (`None` = unbounded
    /// side). Degenerate results collapse to `Points`; `None` means empty.
    pub fn slice(&self, lo: Option<&Q>, hi: Option<&Q>) -> Option<Piece> {
        let clamp_lo = |v: &Q| lo.map_or(false, |l| v < l);
        let clamp_hi = |v: &Q| hi.map_or(false, |h| v > h);
        match self {
            Piece::Interval { a, b } => {
                let a2 = if clamp_lo(a) { lo.unwrap().clone() } else { a.clone() };
                let b2 = if clamp_hi(b) { hi.unwrap().clone() } else { b.clone() };
                if a2 > b2 {
                    None
                } else if a2 == b2 {
                    Some(Piece::point(a2))
                } else {
                    Some(Piece::Interval { a: a2, b: b2 })
                }
            }
            Piece::Ray {
                dir: Direction::Left,
                end,
            } => {
                let b2 = if clamp_hi(end) {
                    hi.unwrap().clone()
                } else {
                    end.clone()
                };
                match lo {
                    None => Some(Piece::Ray {
                        dir: Direction::Left,
                        end: b2,
                    }),
                    Some(l) => {
                        if *l > b2 {
                            None
                        } else if *l == b2 {
                            Some(Piece::point(b2))
                        } else {
                            Some(Piece::Interval { a: l.clone(), b: b2 })
                        }
                    }
                }
            }
            Piece::Ray {
                dir: Direction::Right,
                end,
            } => {
                let a2 = if clamp_lo(end) {
                    lo.unwrap().clone()
                } else {
                    end.clone()
                };
                match hi {
                    None => Some(Piece::Ray {
                        dir: Direction::Right,
                        end: a2,
                    }),
                    Some(h) => {
                        if a2 > *h {
                            None
                        } else if a2 == *h {
                            Some(Piece::point(a2))
                        } else {
                            Some(Piece::Interval { a: a2, b: h.clone() })
                        }
                    }
                }
            }
            Piece::FullLine => match (lo, hi) {
                (None, None) => Some(Piece::FullLine),
                (Some(l), None) => Some(Piece::Ray {
                    dir: Direction::Right,
                    end: l.clone(),
                }),
                (None, Some(h)) => Some(Piece::Ray {
                    dir: Direction::Left,
                    end: h.clone(),
                }),
                (Some(l), Some(h)) => {
                    if l > h {
                        None
                    } else if l == h {
                        Some(Piece::point(l.clone()))
                    } else {
                        Some(Piece::Interval {
                            a: l.clone(),
                            b: h.clone(),
                        })
                    }
                }
            },
            Piece::Lattice { start, step, count } => {
                let k_lo = match lo {
                    None => BigInt::zero(),
                    Some(l) => {
                        if l <= start {
                            BigInt::zero()
                        } else {
                            ((l.clone() - start.clone()) / step.clone()).ceil().to_integer()
                        }
                    }
                };
                let k_hi: Option<BigInt> = match (hi, count) {
                    (None, LatticeCount::Infinite) => None,
                    (None, LatticeCount::Finite(c)) => Some(BigInt::from(c - 1)),
                    (Some(h), _) => {
                        if h < start {
                            return None;
                        }
                        let mut k =
                            ((h.clone() - start.clone()) / step.clone()).floor().to_integer();
                        if let LatticeCount::Finite(c) = count {
                            k = k.min(BigInt::from(c - 1));
                        }
                        Some(k)
                    }
                };
                let start2 = start.clone() + step.clone() * Q::from_integer(k_lo.clone());
                match k_hi {
                    None => Some(Piece::Lattice {
                        start: start2,
                        step: step.clone(),
                        count: LatticeCount::Infinite,
                    }),
                    Some(k_hi) => {
                        if k_hi < k_lo {
                            None
                        } else {
                            let n = (&k_hi - &k_lo) + BigInt::one();
                            let n: u64 = n.try_into().expect("sliced lattice count fits u64");
                            if n == 1 {
                                Some(Piece::point(start2))
                            } else {
                                Some(Piece::Lattice {
                                    start: start2,
                                    step: step.clone(),
                                    count: LatticeCount::Finite(n),
                                })
                            }
                        }
                    }
                }
            }
            Piece::Points { xs } => {
                let kept: Vec<Q> = xs
                    .iter()
                    .filter(|x| !clamp_lo(x) && !clamp_hi(x))
                    .cloned()
                    .collect();
                if kept.is_empty() {
                    None
                } else {
                    Some(Piece::Points { xs: kept })
                }
            }
        }
    }

    /// Whether two pieces share a point. Exact; lattice pairs go through
    /// integer congruence analysis.
    pub fn intersects(&self, other: &Piece) -> bool {
        use Piece::*;
        match (self, other) {
            (FullLine, _) | (_, FullLine) => true,
            (Lattice { .. }, Lattice { .. }) => lattice_pair_intersect(self, other),
            (Points { xs }, p) | (p, Points { xs }) => xs.iter().any(|x| p.contains(x)),
            // remaining combinations reduce to window slicing
            (a, b) => {
                let lo = a.lower();
                let hi = a.upper();
                b.slice(lo.as_ref(), hi.as_ref()).map_or(false, |sl| {
                    // the slice lives inside a's bounding window; for
                    // continuum `a` that already means intersection,
                    // otherwise check a representative point of the slice
                    match a {
                        Interval { .. } | Ray { .. } => true,
                        _ => match sl.lower() {
                            Some(x) => a.contains(&x) || sl_any_in(a, &sl),
                            None => true,
                        },
                    }
                })
            }
        }
    }
}

/// Does any point of the (bounded, discrete) slice lie in `a`?
fn sl_any_in(a: &Piece, slice: &Piece) -> bool {
    match slice {
        Piece::Points { xs } => xs.iter().any(|x| a.contains(x)),
        Piece::Lattice {
            start,
            step,
            count: LatticeCount::Finite(c),
        } => {
            let mut x = start.clone();
            for _ in 0..*c {
                if a.contains(&x) {
                    return true;
                }
                x += step.clone();
            }
            false
        }
        _ => unreachable!("slices checked here are bounded and discrete"),
    }
}

/// Exact intersection test for two lattices via the linear diophantine
/// equation `k·h1 - l·h2 = s2 - s1` over the integers after clearing
/// denominators.
fn lattice_pair_intersect(p1: &Piece, p2: &Piece) -> bool {
    let (s1, h1, c1) = match p1 {
        Piece::Lattice { start, step, count } => (start, step, count),
        _ => unreachable!(),
    };
    let (s2, h2, c2) = match p2 {
        Piece::Lattice { start, step, count } => (start, step, count),
        _ => unreachable!(),
    };
    // common denominator
    let d = s1
        .denom()
        .lcm(s2.denom())
        .lcm(h1.denom())
        .lcm(h2.denom());
    let scale = |q: &Q| -> BigInt { (q * Q::from_integer(d.clone())).to_integer() };
    let (s1i, h1i, s2i, h2i) = (scale(s1), scale(h1), scale(s2), scale(h2));
    let c = &s2i - &s1i;
    let e = h1i.extended_gcd(&h2i);
    if !(&c % &e.gcd).is_zero() {
        return false;
    }
    let mul = &c / &e.gcd;
    let k0 = &e.x * &mul;
    let l0: BigInt = -(&e.y * &mul);
    // k = k0 + (h2/g) t, l = l0 + (h1/g) t; both periods positive
    let pk = &h2i / &e.gcd;
    let pl = &h1i / &e.gcd;
    let mut t_lo = (-&k0).div_ceil(&pk); // k >= 0
    let mut t_hi: Option<BigInt> = None;
    if let LatticeCount::Finite(c1) = c1 {
        let hi = (BigInt::from(*c1) - BigInt::one() - &k0).div_floor(&pk);
        t_hi = Some(hi);
    }
    let l_lo = (-&l0).div_ceil(&pl); // l >= 0
    if l_lo > t_lo {
        t_lo = l_lo;
    }
    if let LatticeCount::Finite(c2) = c2 {
        let hi = (BigInt::from(*c2) - BigInt::one() - &l0).div_floor(&pl);
        t_hi = Some(match t_hi {
            None => hi,
            Some(cur) => cur.min(hi),
        });
    }
    match t_hi {
        None => true, // both unbounded above in t
        Some(hi) => t_lo <= hi,
    }
}
