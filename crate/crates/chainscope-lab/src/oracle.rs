//! Independent brute-force oracles. These certify the production
//! algorithms and deliberately share no code with them: components come
//! from a definitional BFS closure, minimax values from threshold
//! connectivity (cross-checked against literal simple-path enumeration),
//! and covering optima from exhaustive center enumeration.

use std::collections::BTreeSet;

use thiserror::Error;

use chainscope_core::SpaceF64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the {what} oracle (limit {limit})")]
    TooLarge { what: &'static str, limit: usize },
}

/// `S^∞(x, ε)` by BFS transitive closure over the graph with edges
/// `d < ε`. Never touches a spanning tree.
pub fn oracle_chain_component(space: &SpaceF64, x: usize, eps: f64) -> BTreeSet<usize> {
    let n = space.len();
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && space.dist(u, v) < eps {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..n).filter(|&i| seen[i]).collect()
}

/// Bounded-depth variant: BFS to depth `m` over edges `d < ε`.
pub fn oracle_chain_ball(space: &SpaceF64, x: usize, eps: f64, m: usize) -> BTreeSet<usize> {
    let n = space.len();
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut frontier = vec![x];
    for _ in 0..m {
        let mut next = Vec::new();
        for &u in &frontier {
            for v in 0..n {
                if !seen[v] && space.dist(u, v) < eps {
                    seen[v] = true;
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    (0..n).filter(|&i| seen[i]).collect()
}

fn connected_under(space: &SpaceF64, x: usize, y: usize, cap: f64) -> bool {
    let n = space.len();
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(u) = stack.pop() {
        if u == y {
            return true;
        }
        for v in 0..n {
            if !seen[v] && space.dist(u, v) <= cap {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    false
}

/// Exact minimax path value as the smallest stored distance `v` such that
/// `x` and `y` are connected using edges `≤ v`; definitional and
/// independent of any spanning-tree computation.
pub fn oracle_minimax(space: &SpaceF64, x: usize, y: usize) -> Result<f64, OracleError> {
    if space.len() > 12 {
        return Err(OracleError::TooLarge {
            what: "minimax",
            limit: 12,
        });
    }
    if x == y {
        return Ok(0.0);
    }
    for v in space.distance_values() {
        if connected_under(space, x, y, v) {
            return Ok(v);
        }
    }
    unreachable!("the diameter connects everything")
}

/// Literal minimax over all simple paths, by exhaustive DFS with sound
/// pruning (a branch whose running maximum already reaches the incumbent
/// cannot improve it). Exponential; used to certify `oracle_minimax` on
/// small instances.
pub fn oracle_minimax_paths(space: &SpaceF64, x: usize, y: usize) -> Result<f64, OracleError> {
    if space.len() > 9 {
        return Err(OracleError::TooLarge {
            what: "path-enumeration",
            limit: 9,
        });
    }
    fn dfs(space: &SpaceF64, u: usize, y: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if u == y {
            *best = acc;
            return;
        }
        for v in 0..space.len() {
            if !used[v] {
                used[v] = true;
                dfs(space, v, y, used, acc.max(space.dist(u, v)), best);
                used[v] = false;
            }
        }
    }
    if x == y {
        return Ok(0.0);
    }
    let mut used = vec![false; space.len()];
    used[x] = true;
    let mut best = f64::INFINITY;
    dfs(space, x, y, &mut used, 0.0, &mut best);
    Ok(best)
}

/// Exact covering optimum by exhaustive enumeration of center subsets and
/// candidate scales. `steps = None` means unlimited chain depth
/// (components); `steps = Some(m)` bounds the chain depth; `m = 1` is the
/// plain ball cover. Centers range over the whole space.
pub fn oracle_kcenter(
    space: &SpaceF64,
    targets: &[usize],
    k: usize,
    steps: Option<usize>,
) -> Result<f64, OracleError> {
    let n = space.len();
    if n > 10 {
        return Err(OracleError::TooLarge {
            what: "k-center",
            limit: 10,
        });
    }
    if k > 3 && k < targets.len() {
        return Err(OracleError::TooLarge {
            what: "k-center (k)",
            limit: 3,
        });
    }
    let m = steps.unwrap_or(n - 1).min(n - 1).max(1);
    let reach = |c: usize, cap: f64| -> Vec<bool> {
        let mut seen = vec![false; n];
        seen[c] = true;
        let mut frontier = vec![c];
        for _ in 0..m {
            let mut next = Vec::new();
            for &u in &frontier {
                for v in 0..n {
                    if !seen[v] && space.dist(u, v) <= cap {
                        seen[v] = true;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        seen
    };
    let k_eff = k.min(n);
    let feasible = |cap: f64| -> bool {
        let sets: Vec<Vec<bool>> = (0..n).map(|c| reach(c, cap)).collect();
        let mut picked = vec![0usize; k_eff];
        // odometer over k-subsets in lexicographic order
        fn rec(
            sets: &[Vec<bool>],
            targets: &[usize],
            picked: &mut Vec<usize>,
            depth: usize,
            start: usize,
            n: usize,
        ) -> bool {
            if depth == picked.len() {
                return targets
                    .iter()
                    .all(|&a| picked.iter().any(|&c| sets[c][a]));
            }
            for c in start..n {
                picked[depth] = c;
                if rec(sets, targets, picked, depth + 1, c + 1, n) {
                    return true;
                }
            }
            false
        }
        rec(&sets, targets, &mut picked, 0, 0, n)
    };
    for v in space.distance_values() {
        if feasible(v) {
            return Ok(v);
        }
    }
    unreachable!("the diameter scale covers everything")
}

#[cfg(test)]
mod tests {
    use super::*;
    use chainscope_core::MetricSpace;

    fn line_space(points: &[f64]) -> SpaceF64 {
        let labels = points.iter().map(|p| p.to_string()).collect();
        MetricSpace::collinear(labels, points).unwrap()
    }

    #[test]
    fn minimax_oracles_agree_with_each_other() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(
                    oracle_minimax(&m, x, y).unwrap(),
                    oracle_minimax_paths(&m, x, y).unwrap(),
                    "({x},{y})"
                );
            }
        }
        assert_eq!(oracle_minimax(&m, 0, 3).unwrap(), 4.0);
        let two = line_space(&[0.0, 2.5]);
        assert_eq!(oracle_minimax(&two, 0, 1).unwrap(), 2.5);
    }

    #[test]
    fn component_oracle_thresholds() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        assert_eq!(
            oracle_chain_component(&m, 0, 0.5),
            [0usize].into_iter().collect()
        );
        assert_eq!(
            oracle_chain_component(&m, 0, 5.0),
            (0..4).collect::<BTreeSet<_>>()
        );
        assert_eq!(
            oracle_chain_component(&m, 0, 2.0),
            [0usize, 1].into_iter().collect()
        );
    }

    #[test]
    fn kcenter_oracle_reference_values() {
        let m = line_space(&[0.0, 1.0, 3.0, 7.0]);
        let all = [0, 1, 2, 3];
        assert_eq!(oracle_kcenter(&m, &all, 1, Some(1)).unwrap(), 4.0);
        assert_eq!(oracle_kcenter(&m, &all, 2, Some(1)).unwrap(), 2.0);
        assert_eq!(oracle_kcenter(&m, &all, 1, Some(2)).unwrap(), 4.0);
        assert_eq!(oracle_kcenter(&m, &all, 2, None).unwrap(), 2.0);
        assert_eq!(oracle_kcenter(&m, &all, 4, Some(1)).unwrap(), 0.0);
        assert!(matches!(
            oracle_kcenter(&line_space(&(0..11).map(|i| i as f64).collect::<Vec<_>>()), &[0], 1, None),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
