//! Seed-deterministic instance generators. Spaces come out of four
//! families; models and subsets are assembled left to right with positive
//! holes so disjointness holds by construction. Everything passes the
//! validating constructors, and any instance is reproducible from its
//! seed alone.
//!
//! Coordinates and weights are dyadic (multiples of 1/16), so distance
//! arithmetic in `f64` is exact and the metric axioms hold exactly; the
//! euclidean cloud is the one family where rounding could in principle
//! nick the triangle inequality, so it validates and redraws on failure.

use num_rational::BigRational;
use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chainscope_core::model::{LatticeCount, Model1D, Piece, SubsetSpec};
use chainscope_core::{MetricSpace, SpaceF64};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    Collinear,
    EuclideanCloud { dim: usize },
    RandomGraphShortestPath,
    PerturbedLattice,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub kind: SpaceKind,
    pub size: usize,
    pub scale_range: (f64, f64),
}

impl GeneratorConfig {
    pub fn new(seed: u64, kind: SpaceKind, size: usize) -> Self {
        GeneratorConfig {
            seed,
            kind,
            size,
            scale_range: (0.5, 4.0),
        }
    }
}

/// Dyadic draw from `[lo, hi]` in steps of 1/16, never zero.
fn dyadic(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let lo16 = ((lo * 16.0).ceil() as i64).max(1);
    let hi16 = ((hi * 16.0).floor() as i64).max(lo16);
    rng.random_range(lo16..=hi16) as f64 / 16.0
}

pub fn gen_space(cfg: &GeneratorConfig) -> SpaceF64 {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.size.max(2);
    let (lo, hi) = cfg.scale_range;
    let labels = |n: usize| (0..n).map(|i| format!("p{i}")).collect::<Vec<_>>();
    match cfg.kind {
        SpaceKind::Collinear => {
            let mut points = Vec::with_capacity(n);
            let mut x = dyadic(&mut rng, 0.0625, hi);
            for _ in 0..n {
                points.push(x);
                x += dyadic(&mut rng, lo, hi);
            }
            MetricSpace::collinear(labels(n), &points).expect("distinct collinear points")
        }
        SpaceKind::PerturbedLattice => {
            // near-regular spacing with jitter below a quarter step
            let step = dyadic(&mut rng, lo.max(0.25), hi.max(0.5));
            let mut points = Vec::with_capacity(n);
            for i in 0..n {
                let jitter = dyadic(&mut rng, 0.0625, (step / 4.0).max(0.0625));
                points.push(i as f64 * step + jitter);
            }
            MetricSpace::collinear(labels(n), &points).expect("jitter below half a step")
        }
        SpaceKind::RandomGraphShortestPath => {
            let mut d = vec![vec![0.0f64; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let w = dyadic(&mut rng, lo, hi * 4.0);
                    d[i][j] = w;
                    d[j][i] = w;
                }
            }
            // all-pairs shortest paths make the triangle inequality hold
            // by construction; dyadic sums stay exact
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let via = d[i][k] + d[k][j];
                            if via < d[i][j] {
                                d[i][j] = via;
                            }
                        }
                    }
                }
            }
            MetricSpace::new(labels(n), d).expect("shortest-path closure is a metric")
        }
        SpaceKind::EuclideanCloud { dim } => {
            let dim = dim.max(1);
            loop {
                let coords: Vec<Vec<f64>> = (0..n)
                    .map(|_| (0..dim).map(|_| dyadic(&mut rng, lo, hi * 8.0)).collect())
                    .collect();
                let matrix: Vec<Vec<f64>> = coords
                    .iter()
                    .map(|a| {
                        coords
                            .iter()
                            .map(|b| {
                                a.iter()
                                    .zip(b)
                                    .map(|(x, y)| (x - y) * (x - y))
                                    .sum::<f64>()
                                    .sqrt()
                            })
                            .collect()
                    })
                    .collect();
                if let Ok(space) = MetricSpace::new(labels(n), matrix) {
                    return space;
                }
                // duplicate points or a rounding-level triangle nick: redraw
            }
        }
    }
}

/// Cycles through the four families deterministically.
pub fn gen_space_mixed(seed: u64, size: usize) -> SpaceF64 {
    let kind = match seed % 4 {
        0 => SpaceKind::Collinear,
        1 => SpaceKind::EuclideanCloud { dim: 2 },
        2 => SpaceKind::RandomGraphShortestPath,
        _ => SpaceKind::PerturbedLattice,
    };
    gen_space(&GeneratorConfig::new(seed, kind, size))
}

/// A non-empty random index subset.
pub fn gen_members(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    loop {
        let members: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !members.is_empty() {
            return members;
        }
    }
}

/// Random models: an optional left ray, a few bounded pieces, and either
/// nothing, a right ray, or one or two interleaved infinite lattices.
pub fn gen_model(seed: u64) -> Model1D {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.random_ratio(1, 12) {
        return Model1D::new(vec![Piece::FullLine]).expect("the line is a model");
    }
    let mut pieces: Vec<Piece> = Vec::new();
    let mut cursor = q(-8, 1);
    if rng.random_bool(0.4) {
        pieces.push(Piece::Ray {
            dir: chainscope_core::model::Direction::Left,
            end: cursor.clone(),
        });
    }
    let small = [q(1, 4), q(1, 2), q(3, 4), q(1, 1), q(3, 2), q(2, 1)];
    let gap = |rng: &mut ChaCha8Rng| small.choose(rng).unwrap().clone();
    let n_bounded = rng.random_range(0..=3);
    for _ in 0..n_bounded {
        cursor += gap(&mut rng);
        match rng.random_range(0..3) {
            0 => {
                let len = gap(&mut rng);
                pieces.push(Piece::Interval {
                    a: cursor.clone(),
                    b: cursor.clone() + len.clone(),
                });
                cursor += len;
            }
            1 => {
                let step = gap(&mut rng);
                let count = rng.random_range(2..=4u64);
                pieces.push(Piece::Lattice {
                    start: cursor.clone(),
                    step: step.clone(),
                    count: LatticeCount::Finite(count),
                });
                cursor += step * Q::from_integer((count - 1).into());
            }
            _ => {
                let mut xs = vec![cursor.clone()];
                if rng.random_bool(0.5) {
                    let d = gap(&mut rng);
                    xs.push(cursor.clone() + d.clone());
                    cursor += d;
                }
                pieces.push(Piece::Points { xs });
            }
        }
    }
    match rng.random_range(0..3) {
        0 => {} // bounded to the right
        1 => {
            cursor += gap(&mut rng);
            pieces.push(Piece::Ray {
                dir: chainscope_core::model::Direction::Right,
                end: cursor.clone(),
            });
        }
        _ => {
            cursor += gap(&mut rng);
            let step = small[rng.random_range(2..small.len())].clone();
            pieces.push(Piece::Lattice {
                start: cursor.clone(),
                step: step.clone(),
                count: LatticeCount::Infinite,
            });
            if rng.random_bool(0.5) {
                // a second lattice on the same step, shifted off-phase
                let phases = [q(1, 8), q(1, 4), q(1, 2)];
                let mut shift = phases.choose(&mut rng).unwrap().clone();
                if shift >= step {
                    shift = step.clone() / q(2, 1);
                }
                pieces.push(Piece::Lattice {
                    start: cursor.clone() + shift,
                    step,
                    count: LatticeCount::Infinite,
                });
            }
        }
    }
    if pieces.is_empty()
        || (pieces.len() == 1 && pieces[0].cardinality() == Some(1))
    {
        pieces.push(Piece::Points {
            xs: vec![cursor.clone() + q(100, 1), cursor + q(101, 1)],
        });
    }
    Model1D::new(pieces).expect("constructed left to right with positive holes")
}

/// A random non-empty subset of the model, one sub-piece per model piece
/// (with a fallback singleton so the subset is never empty).
pub fn gen_subset(model: &Model1D, seed: u64) -> SubsetSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let pieces = gen_subpieces(&mut rng, model.pieces());
    model
        .subset(pieces)
        .expect("sub-pieces are drawn inside their parents")
}

/// Shrinks a subset further (for bornology closure checks).
pub fn gen_subsubset(model: &Model1D, parent: &SubsetSpec, seed: u64) -> SubsetSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdeadbeefcafef00d);
    let pieces = gen_subpieces(&mut rng, parent.pieces());
    model
        .subset(pieces)
        .expect("sub-pieces of subset pieces stay inside the model")
}

fn gen_subpieces(rng: &mut ChaCha8Rng, parents: &[Piece]) -> Vec<Piece> {
    let mut out = Vec::new();
    for p in parents {
        if !rng.random_bool(0.7) {
            continue;
        }
        match p {
            Piece::FullLine => out.push(match rng.random_range(0..3) {
                0 => Piece::FullLine,
                1 => Piece::Interval {
                    a: q(0, 1),
                    b: q(rng.random_range(1..=4), 1),
                },
                _ => Piece::Lattice {
                    start: q(0, 1),
                    step: q(rng.random_range(1..=2), 1),
                    count: LatticeCount::Infinite,
                },
            }),
            Piece::Ray { dir, end } => out.push(match rng.random_range(0..3) {
                0 => Piece::Ray {
                    dir: *dir,
                    end: match dir {
                        chainscope_core::model::Direction::Left => end.clone() - q(1, 2),
                        chainscope_core::model::Direction::Right => end.clone() + q(1, 2),
                    },
                },
                1 => {
                    let (a, b) = match dir {
                        chainscope_core::model::Direction::Left => {
                            (end.clone() - q(3, 1), end.clone() - q(1, 1))
                        }
                        chainscope_core::model::Direction::Right => {
                            (end.clone() + q(1, 1), end.clone() + q(3, 1))
                        }
                    };
                    Piece::Interval { a, b }
                }
                _ => Piece::Points {
                    xs: vec![end.clone()],
                },
            }),
            Piece::Interval { a, b } => {
                let mid = (a.clone() + b.clone()) / q(2, 1);
                out.push(match rng.random_range(0..3) {
                    0 => Piece::Interval {
                        a: a.clone(),
                        b: mid.clone(),
                    },
                    1 => Piece::Interval {
                        a: mid.clone(),
                        b: b.clone(),
                    },
                    _ => Piece::Points { xs: vec![mid] },
                });
            }
            Piece::Points { xs } => {
                let kept: Vec<Q> = xs.iter().filter(|_| rng.random_bool(0.6)).cloned().collect();
                if !kept.is_empty() {
                    out.push(Piece::Points { xs: kept });
                }
            }
            Piece::Lattice { start, step, count } => match count {
                LatticeCount::Finite(c) => {
                    let keep = rng.random_range(1..=*c);
                    out.push(Piece::Lattice {
                        start: start.clone(),
                        step: step.clone(),
                        count: LatticeCount::Finite(keep),
                    });
                }
                LatticeCount::Infinite => {
                    let thin: u64 = rng.random_range(1..=3);
                    let offset: u64 = rng.random_range(0..=2);
                    let new_start =
                        start.clone() + step.clone() * Q::from_integer(offset.into());
                    let new_step = step.clone() * Q::from_integer(thin.into());
                    out.push(match rng.random_range(0..3) {
                        0 | 1 => Piece::Lattice {
                            start: new_start,
                            step: new_step,
                            count: LatticeCount::Infinite,
                        },
                        _ => Piece::Lattice {
                            start: new_start,
                            step: new_step,
                            count: LatticeCount::Finite(rng.random_range(1..=4)),
                        },
                    });
                }
            },
        }
    }
    if out.is_empty() {
        // fall back to a singleton from the first piece
        let p = &parents[0];
        let x = match p {
            Piece::FullLine => q(0, 1),
            Piece::Ray { end, .. } => end.clone(),
            Piece::Interval { a, .. } => a.clone(),
            Piece::Lattice { start, .. } => start.clone(),
            Piece::Points { xs } => xs[0].clone(),
        };
        out.push(Piece::Points { xs: vec![x] });
    }
    out
}
