//! Covering functionals on the finite backend, in parametric form: `α_k`
//! (k open balls), `γ_m` (one chain ball of depth m), `η_{k,m}` (k chain
//! balls of depth m), `γ*` (one chainable component), `η*_k` (k chainable
//! components), and the isolation functional `I`.
//!
//! Every functional returns its critical value: coverage holds at every
//! scale strictly greater than the value and fails at the value itself.
//! Coverage predicates change only at stored distances, so solvers scan
//! the finite candidate set `{0} ∪ {d(x,y)}` and all results are exact
//! elements of that set. The unparametrized functionals (k and m
//! existentially quantified) are identically zero on finite spaces; the
//! parametric family is the meaningful finite form, and the degeneracy is
//! itself covered by tests.

use thiserror::Error;

use crate::chain::{BottleneckMatrix, MergeTree};
use crate::scalar::{smax, smin, Ext, Scalar};
use crate::space::{MetricSpace, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("budget parameter {param} must be at least 1, got {got}")]
    BudgetInvalid { param: &'static str, got: usize },
    #[error("instance exceeds the exact-mode bound ({detail}); use greedy mode")]
    ExactTooLarge { detail: String },
}

/// How a [`FunctionalResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    GreedyUpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Greedy,
}

/// Number of centers / chain steps: a positive integer or unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Finite(usize),
    Unbounded,
}

/// A `(k, m)` covering budget: `centers` many chain balls of depth `steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoveringBudget {
    pub centers: Budget,
    pub steps: Budget,
}

/// A functional value with its witness centers.
///
/// The witness certifies coverage at every scale strictly above `value`;
/// for exact results no coverage exists at any stored-distance scale below
/// it. Witness centers are the lexicographically smallest optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalResult<T> {
    pub value: Ext<T>,
    pub centers: Vec<usize>,
    pub exactness: Exactness,
}

/// Bounds on the exact solvers. `max_combinations` caps the center subsets
/// `α_k` may enumerate; `max_cover_elements` caps `|A|` in the set-cover
/// dynamic program of `η_{k,m}`.
#[derive(Debug, Clone, Copy)]
pub struct SolverLimits {
    pub max_combinations: u64,
    pub max_cover_elements: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits::from_budget(2_000_000)
    }
}

impl SolverLimits {
    /// Derives both bounds from one work budget: the budget caps the
    /// enumerated center subsets directly, and the set-cover universe is
    /// capped at `log2(budget)` bits (the dynamic program walks one state
    /// per subset of `A`), never above 26.
    pub fn from_budget(budget: u64) -> Self {
        let budget = budget.max(2);
        let bits = (63 - budget.leading_zeros() as usize).clamp(1, 24);
        SolverLimits {
            max_combinations: budget,
            max_cover_elements: bits,
        }
    }
}

/// `I(x) = d(x, X \ {x})`: the isolation of `x` in its space.
pub fn isolation<T: Scalar>(space: &MetricSpace<T>, x: usize) -> Ext<T> {
    let mut best: Option<T> = None;
    for y in 0..space.len() {
        if y == x {
            continue;
        }
        let d = space.dist(x, y);
        best = Some(match best {
            None => d,
            Some(cur) => smin(cur, d),
        });
    }
    Ext::Finite(best.expect("spaces have at least two points"))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Coverage radius of a fixed center set: `max over a of min over centers`.
fn cover_radius<T: Scalar>(rows: &[Vec<T>], centers: &[usize], targets: &[usize]) -> T {
    let mut worst = T::zero();
    for &a in targets {
        let mut best: Option<T> = None;
        for &c in centers {
            let d = rows[c][a].clone();
            best = Some(match best {
                None => d,
                Some(cur) => smin(cur, d),
            });
        }
        worst = smax(worst, best.expect("at least one center"));
    }
    worst
}

/// Lexicographic enumeration of k-subsets of `0..n`, calling `f` on each.
fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let remaining = k - cur.len();
        for i in start..=(n - remaining) {
            cur.push(i);
            rec(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k == 0 || k > n {
        return;
    }
    rec(n, k, 0, &mut Vec::new(), f);
}

/// Deterministic farthest-point greedy: first center is the best single
/// center, later centers are the worst-covered target (ties to the
/// smallest index). Upper bound; within factor 2 for plain balls.
fn greedy_centers<T: Scalar>(rows: &[Vec<T>], targets: &[usize], k: usize) -> (T, Vec<usize>) {
    let mut centers = vec![targets[0]];
    while centers.len() < k {
        // farthest target from the chosen centers
        let mut far: Option<(usize, T)> = None;
        for &a in targets {
            let mut best: Option<T> = None;
            for &c in &centers {
                let d = rows[c][a].clone();
                best = Some(match best {
                    None => d,
                    Some(cur) => smin(cur, d),
                });
            }
            let d = best.unwrap();
            let better = match &far {
                None => true,
                Some((_, cur)) => d.cmp_total(cur) == std::cmp::Ordering::Greater,
            };
            if better {
                far = Some((a, d));
            }
        }
        let (a, d) = far.unwrap();
        if d.is_zero() {
            break;
        }
        centers.push(a);
    }
    centers.sort_unstable();
    centers.dedup();
    let value = cover_radius(rows, &centers, targets);
    (value, centers)
}

fn distance_rows<T: Scalar>(space: &MetricSpace<T>) -> Vec<Vec<T>> {
    let n = space.len();
    (0..n)
        .map(|x| (0..n).map(|y| space.dist(x, y)).collect())
        .collect()
}

/// Minimax chain distances restricted to at most `m` steps, from every
/// source. Row `x` holds `c_m(x, ·)`; `c_1 = d`, and each further step
/// relaxes through every intermediate point.
fn hop_minimax_rows<T: Scalar>(space: &MetricSpace<T>, m: usize) -> Vec<Vec<T>> {
    let n = space.len();
    let m_eff = m.min(n.saturating_sub(1)).max(1);
    let mut rows = distance_rows(space);
    for _ in 1..m_eff {
        for x in 0..n {
            let cur = rows[x].clone();
            let next: Vec<T> = (0..n)
                .map(|y| {
                    let mut best = cur[y].clone();
                    for z in 0..n {
                        let via = smax(cur[z].clone(), space.dist(z, y));
                        best = smin(best, via);
                    }
                    best
                })
                .collect();
            rows[x] = next;
        }
    }
    rows
}

/// `α_k(A)`: the critical scale at which `k` open balls centered anywhere
/// in the ambient space cover `A`. Exact mode enumerates center subsets;
/// greedy mode is farthest-point and is an upper bound (≤ 2 · exact).
pub fn alpha_k<T: Scalar>(
    subset: &Subset<'_, T>,
    k: usize,
    mode: Mode,
    limits: &SolverLimits,
) -> Result<FunctionalResult<T>, CoverError> {
    if k < 1 {
        return Err(CoverError::BudgetInvalid { param: "k", got: k });
    }
    let space = subset.space();
    let rows = distance_rows(space);
    let targets: Vec<usize> = subset.members().iter().copied().collect();
    match mode {
        Mode::Exact => {
            let n = space.len();
            let k_eff = k.min(n);
            let combos = binomial(n as u64, k_eff as u64);
            if combos > limits.max_combinations {
                return Err(CoverError::ExactTooLarge {
                    detail: format!(
                        "C({n},{k_eff}) = {combos} center subsets exceeds {}",
                        limits.max_combinations
                    ),
                });
            }
            let mut best: Option<(T, Vec<usize>)> = None;
            for_each_combination(n, k_eff, &mut |centers| {
                let r = cover_radius(&rows, centers, &targets);
                let better = match &best {
                    None => true,
                    Some((cur, _)) => r.cmp_total(cur) == std::cmp::Ordering::Less,
                };
                if better {
                    best = Some((r, centers.to_vec()));
                }
            });
            let (value, centers) = best.expect("at least one center subset");
            Ok(FunctionalResult {
                value: Ext::Finite(value),
                centers,
                exactness: Exactness::Exact,
            })
        }
        Mode::Greedy => {
            let (value, centers) = greedy_centers(&rows, &targets, k);
            Ok(FunctionalResult {
                value: Ext::Finite(value),
                centers,
                exactness: Exactness::GreedyUpperBound,
            })
        }
    }
}

/// `γ_m(A)`: the critical scale at which a single chain ball of depth `m`
/// covers `A`; the center ranges over the whole space. Equals `η_{1,m}`.
pub fn gamma_m<T: Scalar>(
    subset: &Subset<'_, T>,
    m: usize,
) -> Result<FunctionalResult<T>, CoverError> {
    if m < 1 {
        return Err(CoverError::BudgetInvalid { param: "m", got: m });
    }
    let space = subset.space();
    let rows = hop_minimax_rows(space, m);
    let targets: Vec<usize> = subset.members().iter().copied().collect();
    let mut best: Option<(T, usize)> = None;
    for x in 0..space.len() {
        let r = cover_radius(&rows, &[x], &targets);
        let better = match &best {
            None => true,
            Some((cur, _)) => r.cmp_total(cur) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some((r, x));
        }
    }
    let (value, center) = best.expect("space is non-empty");
    Ok(FunctionalResult {
        value: Ext::Finite(value),
        centers: vec![center],
        exactness: Exactness::Exact,
    })
}

/// `γ*(A)`: the critical scale at which one chainable component absorbs
/// `A`; `min over x of max over a of c(x,a)`. Equals `η*_1`.
pub fn gamma_star<T: Scalar>(
    bottleneck: &BottleneckMatrix<T>,
    subset: &Subset<'_, T>,
) -> FunctionalResult<T> {
    let n = bottleneck.len();
    let mut best: Option<(T, usize)> = None;
    for x in 0..n {
        let mut worst = T::zero();
        for &a in subset.members() {
            worst = smax(worst, bottleneck.value(x, a));
        }
        let better = match &best {
            None => true,
            Some((cur, _)) => worst.cmp_total(cur) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some((worst, x));
        }
    }
    let (value, center) = best.expect("space is non-empty");
    FunctionalResult {
        value: Ext::Finite(value),
        centers: vec![center],
        exactness: Exactness::Exact,
    }
}

/// `η*_k(A)`: the critical scale at which `k` chainable components cover
/// `A`. Components partition the space, so `A` is coverable by `k` of them
/// exactly when it meets at most `k` classes; the answer is read off the
/// merge tree in polynomial time for every `k`. Witness centers are one
/// representative (smallest member) per class met at the critical scale.
pub fn eta_star_k<T: Scalar>(
    tree: &MergeTree<T>,
    subset: &Subset<'_, T>,
    k: usize,
) -> Result<FunctionalResult<T>, CoverError> {
    if k < 1 {
        return Err(CoverError::BudgetInvalid { param: "k", got: k });
    }
    let members: Vec<usize> = subset.members().iter().copied().collect();
    if members.len() <= k {
        return Ok(FunctionalResult {
            value: Ext::zero(),
            centers: members,
            exactness: Exactness::Exact,
        });
    }
    for event in tree.events() {
        let mut classes: Vec<usize> = members.iter().map(|&a| event.partition[a]).collect();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() <= k {
            return Ok(FunctionalResult {
                value: Ext::Finite(event.scale.clone()),
                centers: classes,
                exactness: Exactness::Exact,
            });
        }
    }
    unreachable!("the top merge scale leaves a single class")
}

/// Minimum number of the given bitmasks needed to cover `universe`, or
/// `None` if impossible. Classic subset dynamic program.
fn min_cover_size(masks: &[u32], universe: u32) -> Option<usize> {
    let size = (universe as usize) + 1;
    let mut dp = vec![u16::MAX; size];
    dp[0] = 0;
    for s in 0..size {
        if dp[s] == u16::MAX {
            continue;
        }
        for &m in masks {
            let t = (s as u32 | m) & universe;
            let t = t as usize;
            if dp[t] > dp[s] + 1 {
                dp[t] = dp[s] + 1;
            }
        }
    }
    if dp[universe as usize] == u16::MAX {
        None
    } else {
        Some(dp[universe as usize] as usize)
    }
}

/// `η_{k,m}(A)`: the critical scale at which `k` chain balls of depth `m`
/// cover `A`. Exact mode scans candidate scales (binary search over the
/// stored distances) and decides coverability by a set-cover dynamic
/// program over `A`; greedy mode is farthest-point over the `m`-step
/// minimax distances and is flagged as an upper bound.
pub fn eta_km<T: Scalar>(
    subset: &Subset<'_, T>,
    k: usize,
    m: usize,
    mode: Mode,
    limits: &SolverLimits,
) -> Result<FunctionalResult<T>, CoverError> {
    if k < 1 {
        return Err(CoverError::BudgetInvalid { param: "k", got: k });
    }
    if m < 1 {
        return Err(CoverError::BudgetInvalid { param: "m", got: m });
    }
    let space = subset.space();
    let rows = hop_minimax_rows(space, m);
    let targets: Vec<usize> = subset.members().iter().copied().collect();
    match mode {
        Mode::Greedy => {
            let (value, centers) = greedy_centers(&rows, &targets, k);
            Ok(FunctionalResult {
                value: Ext::Finite(value),
                centers,
                exactness: Exactness::GreedyUpperBound,
            })
        }
        Mode::Exact => {
            if targets.len() > limits.max_cover_elements {
                return Err(CoverError::ExactTooLarge {
                    detail: format!(
                        "|A| = {} exceeds the set-cover bound {}",
                        targets.len(),
                        limits.max_cover_elements
                    ),
                });
            }
            let n = space.len();
            let universe: u32 = if targets.len() == 32 {
                u32::MAX
            } else {
                (1u32 << targets.len()) - 1
            };
            let masks_at = |u: &T| -> Vec<u32> {
                (0..n)
                    .map(|x| {
                        let mut mask = 0u32;
                        for (bit, &a) in targets.iter().enumerate() {
                            if rows[x][a].cmp_total(u) != std::cmp::Ordering::Greater {
                                mask |= 1 << bit;
                            }
                        }
                        mask
                    })
                    .collect()
            };
            let feasible = |u: &T| -> bool {
                matches!(min_cover_size(&masks_at(u), universe), Some(c) if c <= k)
            };
            let values = space.distance_values();
            // binary search for the smallest feasible candidate scale
            let mut lo = 0usize;
            let mut hi = values.len() - 1;
            debug_assert!(feasible(&values[hi]));
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if feasible(&values[mid]) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let value = values[lo].clone();
            // lexicographically smallest witness of size ≤ k
            let masks = masks_at(&value);
            let mut centers = Vec::new();
            let mut covered = 0u32;
            let mut next_free = 0usize;
            while covered != universe {
                let budget = k - centers.len() - 1;
                let mut chosen = None;
                for x in next_free..n {
                    let gain = masks[x] & !covered;
                    if gain == 0 {
                        continue;
                    }
                    let rest = universe & !(covered | masks[x]);
                    let ok = if rest == 0 {
                        true
                    } else if budget == 0 {
                        false
                    } else {
                        let pool: Vec<u32> = masks[x + 1..].to_vec();
                        matches!(min_cover_size(&pool, rest), Some(c) if c <= budget)
                    };
                    if ok {
                        chosen = Some(x);
                        break;
                    }
                }
                let x = chosen.expect("feasible scale admits a witness");
                covered |= masks[x];
                next_free = x + 1;
                centers.push(x);
            }
            Ok(FunctionalResult {
                value: Ext::Finite(value),
                centers,
                exactness: Exactness::Exact,
            })
        }
    }
}

/// Routes a `(k, m)` budget to the appropriate solver. Unbounded budgets
/// collapse as they must on a finite space: unbounded `k` means every
/// point may be a center (the value is always zero), unbounded `m`
/// saturates chain balls into components.
pub fn evaluate_budget<T: Scalar>(
    subset: &Subset<'_, T>,
    bottleneck: &BottleneckMatrix<T>,
    tree: &MergeTree<T>,
    budget: CoveringBudget,
    mode: Mode,
    limits: &SolverLimits,
) -> Result<FunctionalResult<T>, CoverError> {
    let n = subset.space().len();
    let k = match budget.centers {
        Budget::Finite(k) if k < 1 => {
            return Err(CoverError::BudgetInvalid { param: "k", got: k })
        }
        Budget::Finite(k) => k,
        Budget::Unbounded => n,
    };
    match budget.steps {
        Budget::Finite(m) if m < 1 => Err(CoverError::BudgetInvalid { param: "m", got: m }),
        Budget::Unbounded => {
            if k == 1 {
                Ok(gamma_star(bottleneck, subset))
            } else {
                eta_star_k(tree, subset, k)
            }
        }
        Budget::Finite(1) => alpha_k(subset, k, mode, limits),
        Budget::Finite(m) if k == 1 => gamma_m(subset, m),
        Budget::Finite(m) => eta_km(subset, k, m, mode, limits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{BottleneckMatrix, MergeTree};
    use crate::space::MetricSpace;

    fn line_space(points: &[f64]) -> MetricSpace<f64> {
        let labels = points.iter().map(|p| p.to_string()).collect();
        MetricSpace::collinear(labels, points).unwrap()
    }

    fn fin(v: f64) -> Ext<f64> {
        Ext::Finite(v)
    }

    /// Independent oracle: scan candidate scales ascending; coverage is
    /// decided by exhaustive center enumeration with a threshold BFS.
    /// Shares no code with the solvers.
    fn oracle_cover(space: &MetricSpace<f64>, targets: &[usize], k: usize, m: usize) -> f64 {
        let n = space.len();
        let reach = |x: usize, u: f64| -> Vec<bool> {
            let mut seen = vec![false; n];
            seen[x] = true;
            let mut frontier = vec![x];
            for _ in 0..m {
                let mut next = Vec::new();
                for &p in &frontier {
                    for q in 0..n {
                        if !seen[q] && space.dist(p, q) <= u {
                            seen[q] = true;
                            next.push(q);
                        }
                    }
                }
                frontier = next;
            }
            seen
        };
        let feasible = |u: f64| -> bool {
            let sets: Vec<Vec<bool>> = (0..n).map(|x| reach(x, u)).collect();
            let mut found = false;
            for_each_combination(n, k.min(n), &mut |centers| {
                if found {
                    return;
                }
                if targets
                    .iter()
                    .all(|&a| centers.iter().any(|&c| sets[c][a]))
                {
                    found = true;
                }
            });
            found
        };
        for u in space.distance_values() {
            if feasible(u) {
                return u;
            }
        }
        unreachable!("diameter scale always covers")
    }

    #[test]
    fn isolation_on_the_reference_line() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        assert_eq!(isolation(&m, 0), fin(1.0));
        assert_eq!(isolation(&m, 2), fin(2.0));
        assert_eq!(isolation(&m, 3), fin(4.0));
        let two = line_space(&[0.0, 2.5]);
        assert_eq!(isolation(&two, 0), fin(2.5));
        assert_eq!(isolation(&two, 1), fin(2.5));
    }

    #[test]
    fn alpha_single_center_picks_the_median_point() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::full(&m);
        let r = alpha_k(&a, 1, Mode::Exact, &SolverLimits::default()).unwrap();
        assert_eq!(r.value, fin(4.0));
        assert_eq!(r.centers, vec![2]); // the point 3
        assert_eq!(r.exactness, Exactness::Exact);
        assert_eq!(oracle_cover(&m, &[0, 1, 2, 3], 1, 1), 4.0);
    }

    #[test]
    fn alpha_two_centers_on_the_reference_line() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::full(&m);
        let r = alpha_k(&a, 2, Mode::Exact, &SolverLimits::default()).unwrap();
        // confirmed against the enumeration oracle
        assert_eq!(oracle_cover(&m, &[0, 1, 2, 3], 2, 1), 2.0);
        assert_eq!(r.value, fin(2.0));
        assert_eq!(r.centers, vec![1, 3]); // the points 1 and 7
    }

    #[test]
    fn alpha_covers_each_point_by_itself_when_k_is_big() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::new(&m, [1, 2]).unwrap();
        let r = alpha_k(&a, 4, Mode::Exact, &SolverLimits::default()).unwrap();
        assert_eq!(r.value, fin(0.0));
    }

    #[test]
    fn alpha_rejects_bad_budgets_and_large_instances() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::full(&m);
        assert_eq!(
            alpha_k(&a, 0, Mode::Exact, &SolverLimits::default()).unwrap_err(),
            CoverError::BudgetInvalid { param: "k", got: 0 }
        );
        let tight = SolverLimits {
            max_combinations: 3,
            ..SolverLimits::default()
        };
        assert!(matches!(
            alpha_k(&a, 2, Mode::Exact, &tight).unwrap_err(),
            CoverError::ExactTooLarge { .. }
        ));
        // greedy path still works under the tight limit
        let g = alpha_k(&a, 2, Mode::Greedy, &tight).unwrap();
        assert_eq!(g.exactness, Exactness::GreedyUpperBound);
    }

    #[test]
    fn greedy_is_an_upper_bound_within_factor_two() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0, 11.0, 12.0]);
        let a = Subset::full(&m);
        for k in 1..=4 {
            let exact = alpha_k(&a, k, Mode::Exact, &SolverLimits::default()).unwrap();
            let greedy = alpha_k(&a, k, Mode::Greedy, &SolverLimits::default()).unwrap();
            let e = exact.value.as_finite().unwrap();
            let g = greedy.value.as_finite().unwrap();
            assert!(g >= e, "k={k}");
            assert!(*g <= 2.0 * e, "k={k}: greedy {g} vs exact {e}");
        }
    }

    #[test]
    fn gamma_m_on_the_three_point_line() {
        let m = line_space(&[0.0, 1.0, 3.0]);
        let a = Subset::full(&m);
        let r1 = gamma_m(&a, 1).unwrap();
        assert_eq!(r1.value, fin(2.0));
        assert_eq!(r1.centers, vec![1]);
        // no improvement at depth 2: c(1,3) = 2 bounds every route
        let r2 = gamma_m(&a, 2).unwrap();
        assert_eq!(r2.value, fin(2.0));
        assert_eq!(oracle_cover(&m, &[0, 1, 2], 1, 2), 2.0);
    }

    #[test]
    fn gamma_m_singleton_is_zero() {
        let m = line_space(&[0.0, 1.0, 3.0]);
        let a = Subset::new(&m, [1]).unwrap();
        assert_eq!(gamma_m(&a, 1).unwrap().value, fin(0.0));
    }

    #[test]
    fn gamma_m_saturates_to_gamma_star() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::full(&m);
        let bn = BottleneckMatrix::compute(&m);
        let deep = gamma_m(&a, m.len() - 1).unwrap();
        let star = gamma_star(&bn, &a);
        assert_eq!(deep.value, star.value);
        assert_eq!(star.value, fin(4.0));
    }

    #[test]
    fn gamma_star_values() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let bn = BottleneckMatrix::compute(&m);
        let sub = Subset::new(&m, [0, 1, 2]).unwrap();
        assert_eq!(gamma_star(&bn, &sub).value, fin(2.0));
        let single = Subset::new(&m, [2]).unwrap();
        assert_eq!(gamma_star(&bn, &single).value, fin(0.0));
    }

    #[test]
    fn eta_star_counts_classes_meeting_the_subset() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let bn = BottleneckMatrix::compute(&m);
        let tree = MergeTree::compute(&m, &bn);
        let a = Subset::full(&m);
        let r = eta_star_k(&tree, &a, 2).unwrap();
        assert_eq!(r.value, fin(2.0));
        assert_eq!(r.centers, vec![0, 3]);
        // k at least |A| gives zero
        let r0 = eta_star_k(&tree, &a, 4).unwrap();
        assert_eq!(r0.value, fin(0.0));
        // k = 1 coincides with gamma_star
        let r1 = eta_star_k(&tree, &a, 1).unwrap();
        assert_eq!(r1.value, gamma_star(&bn, &a).value);
    }

    #[test]
    fn eta_km_matches_the_worked_line_instance() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let a = Subset::full(&m);
        // oracle first: no 2-step center reaches 7 below scale 4
        assert_eq!(oracle_cover(&m, &[0, 1, 2, 3], 1, 2), 4.0);
        let r = eta_km(&a, 1, 2, Mode::Exact, &SolverLimits::default()).unwrap();
        assert_eq!(r.value, fin(4.0));
    }

    #[test]
    fn eta_km_coincides_with_alpha_and_gamma_and_eta_star() {
        let spaces = [
            vec![0.0, 1.0, 3.0, 7.0],
            vec![0.0, 2.0, 3.0, 8.0, 9.0],
            vec![0.0, 1.0, 2.0, 6.0, 10.0, 11.0],
        ];
        let limits = SolverLimits::default();
        for pts in &spaces {
            let m = line_space(pts);
            let bn = BottleneckMatrix::compute(&m);
            let tree = MergeTree::compute(&m, &bn);
            let a = Subset::full(&m);
            for k in 1..=3 {
                let alpha = alpha_k(&a, k, Mode::Exact, &limits).unwrap();
                let eta1 = eta_km(&a, k, 1, Mode::Exact, &limits).unwrap();
                assert_eq!(alpha.value, eta1.value, "alpha vs eta_k1, k={k}");
                let deep = eta_km(&a, k, m.len() - 1, Mode::Exact, &limits).unwrap();
                let star = eta_star_k(&tree, &a, k).unwrap();
                assert_eq!(deep.value, star.value, "eta saturation, k={k}");
                for steps in 1..=3 {
                    let eta = eta_km(&a, k, steps, Mode::Exact, &limits).unwrap();
                    let want = oracle_cover(
                        &m,
                        &a.members().iter().copied().collect::<Vec<_>>(),
                        k,
                        steps,
                    );
                    assert_eq!(eta.value, fin(want), "oracle, k={k} m={steps}");
                    if k == 1 {
                        let g = gamma_m(&a, steps).unwrap();
                        assert_eq!(g.value, eta.value, "gamma vs eta_1m, m={steps}");
                    }
                }
            }
        }
    }

    #[test]
    fn chain_dominance_and_budget_monotonicity() {
        let m = line_space(&[0.0, 2.0, 3.0, 8.0, 9.0]);
        let bn = BottleneckMatrix::compute(&m);
        let tree = MergeTree::compute(&m, &bn);
        let a = Subset::full(&m);
        let limits = SolverLimits::default();
        for k in 1..=3 {
            let star = eta_star_k(&tree, &a, k).unwrap().value;
            let alpha = alpha_k(&a, k, Mode::Exact, &limits).unwrap().value;
            let mut prev: Option<Ext<f64>> = None;
            for steps in 1..=4 {
                let eta = eta_km(&a, k, steps, Mode::Exact, &limits).unwrap().value;
                assert!(star <= eta && eta <= alpha, "k={k} m={steps}");
                if let Some(p) = prev {
                    assert!(eta <= p, "eta monotone in m, k={k} m={steps}");
                }
                prev = Some(eta);
            }
        }
        // monotone in k
        let mut prev: Option<Ext<f64>> = None;
        for k in 1..=4 {
            let star = eta_star_k(&tree, &a, k).unwrap().value;
            if let Some(p) = prev {
                assert!(star <= p);
            }
            prev = Some(star);
        }
    }

    #[test]
    fn unbounded_budgets_degenerate_to_zero() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let bn = BottleneckMatrix::compute(&m);
        let tree = MergeTree::compute(&m, &bn);
        let a = Subset::full(&m);
        let limits = SolverLimits::default();
        for steps in [Budget::Finite(1), Budget::Finite(2), Budget::Unbounded] {
            let r = evaluate_budget(
                &a,
                &bn,
                &tree,
                CoveringBudget {
                    centers: Budget::Unbounded,
                    steps,
                },
                Mode::Exact,
                &limits,
            )
            .unwrap();
            assert!(r.value.is_zero(), "steps={steps:?}");
        }
    }

    #[test]
    fn budget_router_hits_the_specialized_solvers() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let bn = BottleneckMatrix::compute(&m);
        let tree = MergeTree::compute(&m, &bn);
        let a = Subset::full(&m);
        let limits = SolverLimits::default();
        let go = |k, s| {
            evaluate_budget(
                &a,
                &bn,
                &tree,
                CoveringBudget {
                    centers: k,
                    steps: s,
                },
                Mode::Exact,
                &limits,
            )
            .unwrap()
            .value
        };
        assert_eq!(go(Budget::Finite(1), Budget::Unbounded), fin(4.0));
        assert_eq!(go(Budget::Finite(2), Budget::Unbounded), fin(2.0));
        assert_eq!(go(Budget::Finite(2), Budget::Finite(1)), fin(2.0));
        assert_eq!(go(Budget::Finite(1), Budget::Finite(2)), fin(4.0));
    }

    #[test]
    fn hausdorff_stability_inequality_on_a_line() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0, 12.0]);
        let bn = BottleneckMatrix::compute(&m);
        let tree = MergeTree::compute(&m, &bn);
        // exhaustive over all pairs of non-empty subsets
        let n = m.len();
        for bits_a in 1u32..(1 << n) {
            let a_m: Vec<usize> = (0..n).filter(|i| bits_a & (1 << i) != 0).collect();
            let a = Subset::new(&m, a_m).unwrap();
            for bits_b in 1u32..(1 << n) {
                let b_m: Vec<usize> = (0..n).filter(|i| bits_b & (1 << i) != 0).collect();
                let b = Subset::new(&m, b_m).unwrap();
                let h = a.hausdorff(&b).unwrap();
                for k in 1..=3 {
                    let ea = eta_star_k(&tree, &a, k).unwrap().value;
                    let eb = eta_star_k(&tree, &b, k).unwrap().value;
                    assert!(
                        eb.cmp_total(&ea.clone().max(h.clone())) != std::cmp::Ordering::Greater,
                        "k={k} A={bits_a:b} B={bits_b:b}"
                    );
                }
            }
        }
    }
}
