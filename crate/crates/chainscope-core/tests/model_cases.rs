//! Handcrafted symbolic models with hand-computed expectations, covering
//! structure the random generator does not produce: interleaved lattices
//! with different steps, transients interleaving with bounded pieces, and
//! exact-threshold component queries.

use chainscope_core::model::{Direction, LatticeCount, Model1D, Piece, Q, Region};
use chainscope_core::{BottleneckMatrix, Ext, MergeTree, Scale};

fn q(s: &str) -> Q {
    s.parse().unwrap()
}

fn fin(s: &str) -> Ext<Q> {
    Ext::Finite(q(s))
}

fn lattice(start: &str, step: &str, count: LatticeCount) -> Piece {
    Piece::Lattice {
        start: q(start),
        step: q(step),
        count,
    }
}

/// Evens from 0 and a step-4 lattice from 1: the sorted union is
/// 0,1,2,4,5,6,8,... with gap pattern (1,1,2) repeating.
fn mixed_step_model() -> Model1D {
    Model1D::new(vec![
        lattice("0", "2", LatticeCount::Infinite),
        lattice("1", "4", LatticeCount::Infinite),
    ])
    .unwrap()
}

#[test]
fn mixed_step_tail_geometry() {
    let m = mixed_step_model();
    // every point has threshold 2: the recurring 2-hole
    for x in ["0", "1", "2", "4", "401", "4002"] {
        assert_eq!(m.f_c(&q(x)).unwrap(), fin("2"), "x={x}");
    }
    // every point touches a 1-hole on at least one side: the sorted
    // union is 0,1,2,4,5,6,8,... so isolation is identically 1
    assert_eq!(m.isolation(&q("0")).unwrap(), fin("1"));
    assert_eq!(m.isolation(&q("1")).unwrap(), fin("1"));
    assert_eq!(m.isolation(&q("2")).unwrap(), fin("1"));
    assert_eq!(m.isolation(&q("4")).unwrap(), fin("1"));
    // component of 5 at 3/2: the run {4, 5, 6}
    let c = m.component(&q("5"), &q("3/2")).unwrap();
    assert!(c.set_eq(&Region::new(vec![Piece::Points {
        xs: vec![q("4"), q("5"), q("6")],
    }])
    .unwrap()));
    // strictness at the recurring hole: eps = 2 does not cross it
    let c = m.component(&q("5"), &q("2")).unwrap();
    assert!(c.is_bounded());
    // just above, the whole model chains
    let c = m.component(&q("5"), &q("9/4")).unwrap();
    assert!(!c.is_bounded());
    assert!(c.contains(&q("0")) && c.contains(&q("12345/1")));
    // classifier: uniformly star superparacompact, like any uniformly
    // discrete unbounded set
    let r = m.classify();
    assert!(r.uss.holds);
    assert!(!r.compact.holds);
    assert!(r.hierarchy_violations().is_empty());
}

#[test]
fn mixed_step_sample_crosscheck_by_hand() {
    let m = mixed_step_model();
    let s = m.sample(&q("0"), &q("14"), &q("1/2")).unwrap();
    // lattice points only, never re-gridded
    let labels: Vec<&str> = (0..s.len()).map(|i| s.label(i)).collect();
    assert_eq!(
        labels,
        ["0", "1", "2", "4", "5", "6", "8", "9", "10", "12", "13", "14"]
    );
    let bn = BottleneckMatrix::compute(&s);
    let tree = MergeTree::compute(&s, &bn);
    // finite merge scales mirror the hole pattern
    assert_eq!(tree.merge_scales(), vec![q("1"), q("2")]);
    // component of the sampled point 5 at 3/2 matches the symbolic run
    let idx5 = labels.iter().position(|l| *l == "5").unwrap();
    let comp = tree.component(&s, idx5, &Scale::new(q("3/2")).unwrap());
    let got: Vec<&str> = comp.members().iter().map(|&i| s.label(i)).collect();
    assert_eq!(got, ["4", "5", "6"]);
}

#[test]
fn bounded_pieces_interleaved_with_lattice_transients() {
    // an interval sitting between early lattice points:
    // {1/2} ∪ [9/8, 11/8] ∪ {2, 4, 6, ...}
    let m = Model1D::new(vec![
        Piece::Points { xs: vec![q("1/2")] },
        Piece::Interval {
            a: q("9/8"),
            b: q("11/8"),
        },
        lattice("2", "2", LatticeCount::Infinite),
    ])
    .unwrap();
    // holes: 5/8 (point to interval), 5/8 (interval to 2), then 2s.
    // The model is bounded below, so the only route to unboundedness is
    // rightward through the recurring 2-holes: f_c is identically 2
    // even at the head (the nearby 5/8-holes only merge bounded runs).
    assert_eq!(m.f_c(&q("1/2")).unwrap(), fin("2"));
    assert_eq!(m.f_c(&q("5/4")).unwrap(), fin("2"));
    assert_eq!(m.f_c(&q("2")).unwrap(), fin("2"));
    assert_eq!(m.f_c(&q("100")).unwrap(), fin("2"));
    // at eps in (5/8, 2], the head merges with the first lattice point
    let c = m.component(&q("1/2"), &q("1")).unwrap();
    assert!(c.contains(&q("9/8")) && c.contains(&q("2")));
    assert!(!c.contains(&q("4")));
    assert!(c.is_bounded());
    // isolation vanishes on the interval, positive at isolated points
    assert_eq!(m.isolation(&q("5/4")).unwrap(), fin("0"));
    assert_eq!(m.isolation(&q("1/2")).unwrap(), fin("5/8"));
    assert!(m.iso_kernel().set_eq(&m.limit_points()));
    assert!(m.fc_kernel().set_eq(&m.nslc()));
    assert!(m.nslc().is_empty());
}

#[test]
fn subset_classification_on_the_mixed_model() {
    let m = mixed_step_model();
    // the step-4 strand alone is still an unbounded lattice subset
    let a = m
        .subset(vec![lattice("1", "4", LatticeCount::Infinite)])
        .unwrap();
    let r = m.classify_subset(&a);
    assert!(r.uss_subset.holds, "{}", r.uss_subset.witness);
    assert!(!r.qc_precompact.holds);
    assert!(!r.bourbaki_bounded.holds);
    let f = m.functionals(&a);
    // the tail fuses into one component only above the 2-hole
    assert_eq!(f.eta_star, fin("2"));
    assert_eq!(f.gamma_star, fin("2"));
    assert_eq!(f.alpha, Ext::Infinite);
    // a bounded slice of the same strand
    let b = m
        .subset(vec![lattice("1", "4", LatticeCount::Finite(3))])
        .unwrap();
    let fb = m.functionals(&b);
    assert_eq!(fb.alpha, fin("0"));
    assert_eq!(fb.eta_star, fin("0"));
    // holes of M between 1 and 9: two holes of length 2
    assert_eq!(fb.gamma_star, fin("2"));
    // union of the two strands is the whole model as a set
    let evens = m
        .subset(vec![lattice("0", "2", LatticeCount::Infinite)])
        .unwrap();
    let union = a.as_region().union(&evens.as_region());
    let whole = Region::new(m.pieces().to_vec()).unwrap();
    assert!(union.set_eq(&whole));
}

#[test]
fn left_ray_with_mixed_lattices() {
    // (-inf, -1] ∪ {0, 2, 4, ...} ∪ {1, 5, 9, ...}
    let m = Model1D::new(vec![
        Piece::Ray {
            dir: Direction::Left,
            end: q("-1"),
        },
        lattice("0", "2", LatticeCount::Infinite),
        lattice("1", "4", LatticeCount::Infinite),
    ])
    .unwrap();
    // the cheapest route to unboundedness from the early lattice points
    // runs leftward into the ray across 1-holes only: f_c = 1 up to the
    // point 2; from 4 onward every leftward route crosses a 2-hole, and
    // the rightward route through the tail also costs 2
    assert_eq!(m.f_c(&q("-1")).unwrap(), fin("0"));
    assert_eq!(m.f_c(&q("0")).unwrap(), fin("1"));
    assert_eq!(m.f_c(&q("1")).unwrap(), fin("1"));
    assert_eq!(m.f_c(&q("2")).unwrap(), fin("1"));
    assert_eq!(m.f_c(&q("4")).unwrap(), fin("2"));
    assert_eq!(m.f_c(&q("6")).unwrap(), fin("2"));
    let r = m.classify();
    assert!(!r.uss.holds, "nslc is a ray: {}", r.uss.witness);
    assert!(!r.uc.holds);
    assert!(r.cofinally_complete.holds);
    // nslc is exactly the ray
    assert!(m
        .nslc()
        .set_eq(&Region::new(vec![Piece::Ray {
            dir: Direction::Left,
            end: q("-1"),
        }])
        .unwrap()));
}
