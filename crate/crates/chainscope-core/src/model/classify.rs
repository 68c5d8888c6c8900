//! Completeness-like classifiers for models and their subsets.
//!
//! The two-condition criteria all have the same shape: a kernel region
//! (where the governing functional vanishes) must be compact, and for
//! every `δ > 0` the functional must be bounded away from zero outside
//! the open `δ`-enlargement of the kernel. The functional is piecewise
//! constant over finitely many zones, so the second condition is decided
//! exactly by scanning the finitely many critical `δ` values where the
//! outside set changes and checking that each infimum is positive.

use num_traits::Zero;

use super::analysis::{zones_over, Zone, ZoneSpan};
use super::arrange::Arrangement;
use super::piece::Q;
use super::region::Region;
use super::{Model1D, SubsetSpec};
use crate::scalar::Ext;

type ExtQ = Ext<Q>;

/// One classifier outcome with its explanation. `vacuous` marks verdicts
/// that hold because no point can satisfy the antecedent.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub vacuous: bool,
    pub witness: String,
}

impl Verdict {
    fn plain(holds: bool, witness: impl Into<String>) -> Verdict {
        Verdict {
            holds,
            vacuous: false,
            witness: witness.into(),
        }
    }
}

/// Space-level verdicts. The hierarchy invariants among them are audited
/// by [`ClassifierReport::hierarchy_violations`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierReport {
    pub compact: Verdict,
    pub chainable: Verdict,
    pub strongly_locally_compact: Verdict,
    pub strongly_uniformly_locally_compact: Verdict,
    pub uc: Verdict,
    pub cofinally_complete: Verdict,
    pub complete: Verdict,
    pub uss: Verdict,
}

impl ClassifierReport {
    /// Violated implications among the verdicts, empty when consistent:
    /// compact ⇒ USS ⇒ cofinally complete ⇒ complete, plus compact ⇒ UC
    /// and UC ⇒ USS.
    pub fn hierarchy_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let implies = |a: &Verdict, b: &Verdict| !a.holds || b.holds;
        if !implies(&self.compact, &self.uss) {
            out.push("compact => uss");
        }
        if !implies(&self.uss, &self.cofinally_complete) {
            out.push("uss => cofinally_complete");
        }
        if !implies(&self.cofinally_complete, &self.complete) {
            out.push("cofinally_complete => complete");
        }
        if !implies(&self.compact, &self.uc) {
            out.push("compact => uc");
        }
        if !implies(&self.uc, &self.uss) {
            out.push("uc => uss");
        }
        out
    }
}

/// Subset-level verdicts relative to a fixed ambient model.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetReport {
    pub uss_subset: Verdict,
    pub uc_subset: Verdict,
    pub cc_subset: Verdict,
    pub qc_precompact: Verdict,
    pub bourbaki_bounded: Verdict,
}

/// Largest distance from any point of the span to the kernel; `None`
/// stands for an unbounded span (always infinitely far from a compact
/// kernel).
fn span_sup_dist(span: &ZoneSpan, kernel_atoms: &[(Q, Q)]) -> Option<Q> {
    let dist_pt = |x: &Q| -> Q {
        kernel_atoms
            .iter()
            .map(|(lo, hi)| {
                if x < lo {
                    lo.clone() - x.clone()
                } else if x > hi {
                    x.clone() - hi.clone()
                } else {
                    Q::zero()
                }
            })
            .min()
            .expect("kernel is non-empty here")
    };
    match span {
        ZoneSpan::Pt { x } => Some(dist_pt(x)),
        ZoneSpan::Seg { a, b } => {
            // d(·, K) is piecewise linear: maxima sit at the ends or at
            // midpoints of kernel holes
            let mut cands = vec![a.clone(), b.clone()];
            for w in kernel_atoms.windows(2) {
                let mid = (w[0].1.clone() + w[1].0.clone()) / Q::from_integer(2.into());
                if &mid > a && &mid < b {
                    cands.push(mid);
                }
            }
            cands.into_iter().map(|x| dist_pt(&x)).max()
        }
        ZoneSpan::FullLine
        | ZoneSpan::LeftRay { .. }
        | ZoneSpan::RightRay { .. }
        | ZoneSpan::DeepTail { .. } => None,
    }
}

/// Decides `∀δ>0 ∃μ>0: x outside the open δ-enlargement of the kernel
/// ⇒ value(x) > μ`, by exact scan over the critical δ values.
fn delta_mu(zones: &[Zone], kernel: &Region) -> (bool, String) {
    if kernel.is_empty() {
        let inf = zones
            .iter()
            .map(|z| z.value.clone())
            .fold(Ext::Infinite, Ext::min);
        let holds = !inf.is_zero();
        return (
            holds,
            format!("kernel empty; inf over the whole set = {inf}"),
        );
    }
    debug_assert!(kernel.is_compact(), "caller gates on kernel compactness");
    let arr = Arrangement::build(kernel.pieces(), None).expect("kernel arranges");
    let kernel_atoms: Vec<(Q, Q)> = arr
        .atoms
        .iter()
        .map(|a| (a.lo().clone(), a.hi().clone()))
        .collect();
    // per-zone sup distances; None = unbounded span
    let sups: Vec<Option<Q>> = zones
        .iter()
        .map(|z| span_sup_dist(&z.span, &kernel_atoms))
        .collect();
    let mut criticals: Vec<Q> = sups
        .iter()
        .flatten()
        .filter(|d| !d.is_zero())
        .cloned()
        .collect();
    criticals.sort();
    criticals.dedup();
    let mut holds = true;
    let mut rows = Vec::new();
    let infimum_beyond = |delta: Option<&Q>| -> ExtQ {
        zones
            .iter()
            .zip(&sups)
            .filter(|(_, s)| match (s, delta) {
                (None, _) => true,
                (Some(d), Some(delta)) => d >= delta,
                (Some(d), None) => !d.is_zero(),
            })
            .map(|(z, _)| z.value.clone())
            .fold(Ext::Infinite, Ext::min)
    };
    for delta in &criticals {
        let inf = infimum_beyond(Some(delta));
        if inf.is_zero() {
            holds = false;
        }
        rows.push(format!("delta={delta}: inf={inf}"));
    }
    // the limiting small-δ check: every zone with positive reach counts
    let inf0 = infimum_beyond(None);
    if inf0.is_zero() {
        holds = false;
    }
    rows.push(format!("delta->0+: inf={inf0}"));
    (holds, rows.join("; "))
}

impl Model1D {
    /// Space classifiers, all decided exactly from the zone structure.
    pub fn classify(&self) -> ClassifierReport {
        let fc_zones = self.fc_zones();
        let iso_zones = self.iso_zones();

        let compact = Verdict::plain(
            self.is_bounded(),
            if self.is_bounded() {
                "bounded and closed in the line".to_string()
            } else {
                "contains an unbounded piece".to_string()
            },
        );

        let chainable = {
            let holds = self.arrangement().is_single_run();
            Verdict::plain(
                holds,
                if holds {
                    "a single hole-free stretch: chainable at every scale"
                } else {
                    "split by holes: not chainable below the largest hole"
                },
            )
        };

        let nslc = self.nslc();
        let strongly_locally_compact = Verdict::plain(
            nslc.is_empty(),
            if nslc.is_empty() {
                "f_c > 0 everywhere (Ker f_c is empty)".to_string()
            } else {
                format!("f_c vanishes on {} unbounded piece(s)", nslc.pieces().len())
            },
        );

        let inf_fc = fc_zones
            .iter()
            .map(|z| z.value.clone())
            .fold(Ext::Infinite, Ext::min);
        let strongly_uniformly_locally_compact =
            Verdict::plain(!inf_fc.is_zero(), format!("inf f_c = {inf_fc}"));

        let limit_points = self.limit_points();
        let uc = two_condition_verdict("X'", &limit_points, &iso_zones, "I");

        let cofinally_complete = Verdict {
            holds: true,
            vacuous: true,
            witness: "nlc = emptyset: closed subsets of the line are proper, \
                      so nu is identically infinite"
                .to_string(),
        };
        let complete = Verdict::plain(true, "closed subset of a complete space");

        let uss = two_condition_verdict("nslc", &nslc, &fc_zones, "f_c");

        ClassifierReport {
            compact,
            chainable,
            strongly_locally_compact,
            strongly_uniformly_locally_compact,
            uc,
            cofinally_complete,
            complete,
            uss,
        }
    }

    /// Subset classifiers for `A` relative to this model.
    pub fn classify_subset(&self, a: &SubsetSpec) -> SubsetReport {
        let fc_zones_a = zones_over(a.arrangement(), &|x| {
            self.f_c(x).expect("subset points live in the model")
        });
        let iso_zones_a = zones_over(a.arrangement(), &|x| {
            self.isolation(x).expect("subset points live in the model")
        });
        let region_a = a.as_region();

        let k_f = region_a.intersect_continuum(&self.nslc());
        let uss_subset = two_condition_verdict("cl A ∩ nslc", &k_f, &fc_zones_a, "f_c");

        let k_i = region_a.intersect_continuum(&self.limit_points());
        let uc_subset = two_condition_verdict("cl A ∩ X'", &k_i, &iso_zones_a, "I");

        let cc_subset = Verdict {
            holds: true,
            vacuous: true,
            witness: "vacuous: nlc = emptyset in a proper ambient, so no sequence \
                      drives nu to zero"
                .to_string(),
        };

        let splits_forever = self.right_end_is_tail();
        let qc = !(a.has_infinite_lattice() && splits_forever);
        let qc_precompact = Verdict::plain(
            qc,
            if qc {
                "meets finitely many chainable components at every scale".to_string()
            } else {
                "unbounded through the lattice tail: meets infinitely many \
                 components at small scales"
                    .to_string()
            },
        );

        let bounded = a.is_bounded();
        let bourbaki_bounded = Verdict::plain(
            bounded,
            if bounded {
                "bounded: finitely many m-step balls cover it at every scale"
            } else {
                "unbounded: m-step balls at scale eps stay inside bounded \
                 m*eps-balls, so no finite family covers it"
            },
        );

        SubsetReport {
            uss_subset,
            uc_subset,
            cc_subset,
            qc_precompact,
            bourbaki_bounded,
        }
    }
}

/// The shared two-condition criterion: kernel compact plus the δ–μ scan.
fn two_condition_verdict(
    kernel_name: &str,
    kernel: &Region,
    zones: &[Zone],
    functional: &str,
) -> Verdict {
    if !kernel.is_compact() {
        return Verdict::plain(false, format!("{kernel_name} is not compact"));
    }
    let (ok, table) = delta_mu(zones, kernel);
    let compact_note = if kernel.is_empty() {
        format!("{kernel_name} = emptyset (compact)")
    } else {
        format!("{kernel_name} compact")
    };
    Verdict::plain(ok, format!("{compact_note}; {functional} scan: {table}"))
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::{Model1D, Piece};
    #[allow(unused_imports)]
    use super::*;

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
    fn naturals_are_uss_but_not_compact() {
        let r = naturals().classify();
        assert!(!r.compact.holds);
        assert!(r.uss.holds, "{}", r.uss.witness);
        assert!(r.strongly_locally_compact.holds);
        assert!(r.strongly_uniformly_locally_compact.holds);
        assert!(r.uc.holds);
        assert!(r.cofinally_complete.holds);
        assert!(r.complete.holds);
        assert!(!r.chainable.holds);
        assert!(r.hierarchy_violations().is_empty());
    }

    #[test]
    fn the_line_fails_uss_but_is_cofinally_complete() {
        let r = line().classify();
        assert!(!r.uss.holds, "{}", r.uss.witness);
        assert!(r.cofinally_complete.holds);
        assert!(!r.uc.holds);
        assert!(!r.strongly_locally_compact.holds);
        assert!(r.chainable.holds);
        assert!(r.hierarchy_violations().is_empty());
    }

    #[test]
    fn ray_and_naturals_fails_uss_and_uc() {
        let r = ray_and_naturals().classify();
        assert!(!r.uss.holds);
        assert!(!r.uc.holds);
        assert!(r.cofinally_complete.holds);
        assert!(r.complete.holds);
        assert!(!r.strongly_locally_compact.holds);
        assert!(r.hierarchy_violations().is_empty());
    }

    #[test]
    fn the_unit_interval_passes_everything() {
        let r = unit_interval().classify();
        for (name, v) in [
            ("compact", &r.compact),
            ("chainable", &r.chainable),
            ("slc", &r.strongly_locally_compact),
            ("sulc", &r.strongly_uniformly_locally_compact),
            ("uc", &r.uc),
            ("cc", &r.cofinally_complete),
            ("complete", &r.complete),
            ("uss", &r.uss),
        ] {
            assert!(v.holds, "{name}: {}", v.witness);
        }
        assert!(r.hierarchy_violations().is_empty());
    }

    #[test]
    fn naturals_are_not_a_uss_subset_of_the_line() {
        let m = line();
        let a = m.subset(vec![nat()]).unwrap();
        let r = m.classify_subset(&a);
        assert!(!r.uss_subset.holds, "{}", r.uss_subset.witness);
        assert!(!r.uc_subset.holds);
        assert!(r.cc_subset.holds && r.cc_subset.vacuous);
        // every component of the line is the line itself
        assert!(r.qc_precompact.holds);
        assert!(!r.bourbaki_bounded.holds);
    }

    #[test]
    fn naturals_are_a_uss_subset_of_themselves() {
        let m = naturals();
        let a = m.subset(vec![nat()]).unwrap();
        let r = m.classify_subset(&a);
        assert!(r.uss_subset.holds, "{}", r.uss_subset.witness);
        assert!(r.uc_subset.holds);
        assert!(!r.qc_precompact.holds, "{}", r.qc_precompact.witness);
        assert!(!r.bourbaki_bounded.holds);
    }

    #[test]
    fn compact_intervals_are_uss_subsets_of_the_line() {
        let m = line();
        let a = m.subset(vec![Piece::interval(q("0"), q("1"))]).unwrap();
        let r = m.classify_subset(&a);
        assert!(r.uss_subset.holds, "{}", r.uss_subset.witness);
        assert!(r.uc_subset.holds);
        assert!(r.qc_precompact.holds);
        assert!(r.bourbaki_bounded.holds);
    }

    #[test]
    fn bounded_piece_of_the_ray_plus_lattice_ambient() {
        let m = ray_and_naturals();
        // A = [-2, 0] ∪ {1, 2, 3}: touches nslc in a compact set
        let a = m
            .subset(vec![
                Piece::interval(q("-2"), q("0")),
                Piece::Points {
                    xs: vec![q("1"), q("2"), q("3")],
                },
            ])
            .unwrap();
        let r = m.classify_subset(&a);
        assert!(r.uss_subset.holds, "{}", r.uss_subset.witness);
        assert!(r.bourbaki_bounded.holds);
        // B = the whole ray: kernel is the ray itself, not compact
        let b = m.subset(vec![left_ray("0")]).unwrap();
        let r = m.classify_subset(&b);
        assert!(!r.uss_subset.holds);
        // but B is qC-precompact (one component swallows it at any scale)
        assert!(r.qc_precompact.holds);
    }
}
