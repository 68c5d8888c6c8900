//! ε-chain reachability: chain balls, chainable components, the bottleneck
//! distance matrix, and the single-linkage merge tree.
//!
//! The bottleneck value `c(x,y)` is the smallest threshold above which `x`
//! and `y` are ε-chain joinable: the minimum over paths of the maximum step.
//! It is an ultrametric, and `y` lies in the ε-chainable component of `x`
//! exactly when `c(x,y) < ε`. Both facts are exploited throughout: `c` is
//! computed once per space from a minimum spanning tree (Prim, `O(n²)`),
//! and per-scale component queries resolve through the merge tree with a
//! binary search over merge scales, applying the strict `<` threshold at
//! lookup time.
//!
//! Chain length counts *steps*: a chain of length `n` visits `n + 1`
//! points. Since repeating a point is a legal step (`d = 0 < ε`), the set
//! reachable by chains of length exactly `m` equals the set reachable by
//! chains of length at most `m`.

use std::collections::BTreeSet;
use std::fmt;

use crate::scalar::{smax, Scalar};
use crate::space::{MetricSpace, Scale, Subset};

/// Returned by [`witness_chain`] when the endpoints sit in different
/// ε-components; carries the bottleneck value that certifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct NotJoinable<T> {
    pub bottleneck: T,
}

impl<T: fmt::Display> fmt::Display for NotJoinable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "not joinable: bottleneck distance is {}",
            self.bottleneck
        )
    }
}

impl<T: fmt::Debug + fmt::Display> std::error::Error for NotJoinable<T> {}

/// An ε-chain: ordered points with every step strictly below the scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain<T> {
    points: Vec<usize>,
    scale: Scale<T>,
}

impl<T: Scalar> Chain<T> {
    /// Number of steps (one less than the number of points).
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn scale(&self) -> &Scale<T> {
        &self.scale
    }

    /// Re-checks the chain invariant against the space.
    pub fn is_valid(&self, space: &MetricSpace<T>) -> bool {
        self.points
            .windows(2)
            .all(|w| self.scale.admits(&space.dist(w[0], w[1])))
    }
}

/// The chain ball `S^m(x, ε)`: every point reachable from `x` by an
/// ε-chain of at most `m` steps. BFS to depth `m` over edges `d < ε`.
pub fn chain_ball<'s, T: Scalar>(
    space: &'s MetricSpace<T>,
    x: usize,
    scale: &Scale<T>,
    m: usize,
) -> Subset<'s, T> {
    assert!(x < space.len(), "point index out of range");
    assert!(m >= 1, "chain length must be at least 1");
    let n = space.len();
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut frontier = vec![x];
    for _ in 0..m {
        if frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for &u in &frontier {
            for v in 0..n {
                if !seen[v] && scale.admits(&space.dist(u, v)) {
                    seen[v] = true;
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let members: BTreeSet<usize> = (0..n).filter(|&i| seen[i]).collect();
    Subset::new(space, members).expect("ball contains its center")
}

/// Minimax chain distances `c(x,y)` for a whole space, with the minimum
/// spanning tree kept around for witness chains.
#[derive(Debug, Clone)]
pub struct BottleneckMatrix<T> {
    n: usize,
    values: Vec<T>,          // dense n*n
    adjacency: Vec<Vec<(usize, T)>>, // MST edges
}

impl<T: Scalar> BottleneckMatrix<T> {
    /// Prim's algorithm on the complete distance graph, then per-root tree
    /// walks accumulating the running maximum edge.
    pub fn compute(space: &MetricSpace<T>) -> Self {
        let n = space.len();
        let mut in_tree = vec![false; n];
        let mut best: Vec<Option<(usize, T)>> = vec![None; n]; // (attach point, weight)
        let mut adjacency: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        in_tree[0] = true;
        for v in 1..n {
            best[v] = Some((0, space.dist(0, v)));
        }
        for _ in 1..n {
            let mut pick: Option<(usize, T)> = None;
            for v in 0..n {
                if in_tree[v] {
                    continue;
                }
                let (_, w) = best[v].clone().expect("candidate edge exists");
                match &pick {
                    None => pick = Some((v, w)),
                    Some((_, cur)) if w.cmp_total(cur) == std::cmp::Ordering::Less => {
                        pick = Some((v, w))
                    }
                    _ => {}
                }
            }
            let (v, w) = pick.expect("graph is connected");
            let (u, _) = best[v].clone().unwrap();
            in_tree[v] = true;
            adjacency[u].push((v, w.clone()));
            adjacency[v].push((u, w));
            for t in 0..n {
                if in_tree[t] {
                    continue;
                }
                let d = space.dist(v, t);
                let replace = match &best[t] {
                    None => true,
                    Some((_, cur)) => d.cmp_total(cur) == std::cmp::Ordering::Less,
                };
                if replace {
                    best[t] = Some((v, d));
                }
            }
        }
        // minimax values by DFS from every root over the tree
        let mut values = vec![T::zero(); n * n];
        for root in 0..n {
            let mut stack = vec![(root, T::zero())];
            let mut seen = vec![false; n];
            seen[root] = true;
            while let Some((u, acc)) = stack.pop() {
                for (v, w) in &adjacency[u] {
                    if !seen[*v] {
                        seen[*v] = true;
                        let m = smax(acc.clone(), w.clone());
                        values[root * n + v] = m.clone();
                        stack.push((*v, m));
                    }
                }
            }
        }
        BottleneckMatrix {
            n,
            values,
            adjacency,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `c(x,y)`: the minimax chain distance.
    pub fn value(&self, x: usize, y: usize) -> T {
        self.values[x * self.n + y].clone()
    }

    /// The ε-chainable component `{ y : c(x,y) < ε }`.
    pub fn component<'s>(
        &self,
        space: &'s MetricSpace<T>,
        x: usize,
        scale: &Scale<T>,
    ) -> Subset<'s, T> {
        assert_eq!(space.len(), self.n);
        let members: BTreeSet<usize> = (0..self.n)
            .filter(|&y| scale.admits(&self.value(x, y)))
            .collect();
        Subset::new(space, members).expect("component contains its base point")
    }

    /// Path between `x` and `y` through the MST.
    fn tree_path(&self, x: usize, y: usize) -> Vec<usize> {
        if x == y {
            return vec![x];
        }
        let mut parent = vec![usize::MAX; self.n];
        let mut stack = vec![x];
        parent[x] = x;
        while let Some(u) = stack.pop() {
            if u == y {
                break;
            }
            for (v, _) in &self.adjacency[u] {
                if parent[*v] == usize::MAX {
                    parent[*v] = u;
                    stack.push(*v);
                }
            }
        }
        let mut path = vec![y];
        let mut cur = y;
        while cur != x {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// A valid ε-chain from `x` to `y` (the MST path, not necessarily the
/// shortest chain), or `NotJoinable` carrying `c(x,y)`.
pub fn witness_chain<T: Scalar>(
    space: &MetricSpace<T>,
    bottleneck: &BottleneckMatrix<T>,
    x: usize,
    y: usize,
    scale: &Scale<T>,
) -> Result<Chain<T>, NotJoinable<T>> {
    let c = bottleneck.value(x, y);
    if x != y && !scale.admits(&c) {
        return Err(NotJoinable { bottleneck: c });
    }
    let chain = Chain {
        points: bottleneck.tree_path(x, y),
        scale: scale.clone(),
    };
    debug_assert!(chain.is_valid(space));
    let _ = space;
    Ok(chain)
}

/// One merge step of the single-linkage hierarchy: at `scale`, the listed
/// point pairs fall into a common component, producing `partition`
/// (class id per point; ids are the smallest member index of each class).
#[derive(Debug, Clone, PartialEq)]
pub struct MergeEvent<T> {
    pub scale: T,
    pub pairs: Vec<(usize, usize)>,
    pub partition: Vec<usize>,
    pub class_count: usize,
}

/// The full single-linkage dendrogram over `c`: ascending merge events,
/// one per distinct scale, each with a snapshot of the partition reached.
#[derive(Debug, Clone)]
pub struct MergeTree<T> {
    n: usize,
    events: Vec<MergeEvent<T>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut i = i;
        while self.parent[i] != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as the representative
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }

    fn snapshot(&mut self, n: usize) -> (Vec<usize>, usize) {
        let classes: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        let count = classes.iter().collect::<BTreeSet<_>>().len();
        (classes, count)
    }
}

impl<T: Scalar> MergeTree<T> {
    /// Kruskal over the MST edges of `bottleneck`, grouping equal scales
    /// into a single event.
    pub fn compute(space: &MetricSpace<T>, bottleneck: &BottleneckMatrix<T>) -> Self {
        let n = space.len();
        let mut edges: Vec<(usize, usize, T)> = Vec::with_capacity(n.saturating_sub(1));
        for u in 0..n {
            for (v, w) in &bottleneck.adjacency[u] {
                if u < *v {
                    edges.push((u, *v, w.clone()));
                }
            }
        }
        edges.sort_by(|a, b| a.2.cmp_total(&b.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
        let mut uf = UnionFind::new(n);
        let mut events = Vec::new();
        let mut i = 0;
        while i < edges.len() {
            let scale = edges[i].2.clone();
            let mut pairs = Vec::new();
            while i < edges.len() && edges[i].2 == scale {
                uf.union(edges[i].0, edges[i].1);
                pairs.push((edges[i].0, edges[i].1));
                i += 1;
            }
            let (partition, class_count) = uf.snapshot(n);
            events.push(MergeEvent {
                scale,
                pairs,
                partition,
                class_count,
            });
        }
        MergeTree { n, events }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn events(&self) -> &[MergeEvent<T>] {
        &self.events
    }

    /// Index of the last event applied strictly below `ε`, if any.
    fn last_event_below(&self, scale: &Scale<T>) -> Option<usize> {
        // binary search over ascending event scales for `event.scale < ε`
        let mut lo = 0usize;
        let mut hi = self.events.len();
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if scale.admits(&self.events[mid].scale) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo.checked_sub(1)
    }

    /// Class id per point at scale `ε` (classes of the relation `c < ε`).
    pub fn partition_at(&self, scale: &Scale<T>) -> Vec<usize> {
        match self.last_event_below(scale) {
            Some(i) => self.events[i].partition.clone(),
            None => (0..self.n).collect(),
        }
    }

    pub fn class_count_at(&self, scale: &Scale<T>) -> usize {
        match self.last_event_below(scale) {
            Some(i) => self.events[i].class_count,
            None => self.n,
        }
    }

    /// The ε-chainable component of `x`, resolved through the dendrogram.
    pub fn component<'s>(
        &self,
        space: &'s MetricSpace<T>,
        x: usize,
        scale: &Scale<T>,
    ) -> Subset<'s, T> {
        assert_eq!(space.len(), self.n);
        let partition = self.partition_at(scale);
        let class = partition[x];
        let members: BTreeSet<usize> =
            (0..self.n).filter(|&y| partition[y] == class).collect();
        Subset::new(space, members).expect("component contains its base point")
    }

    /// Ascending merge scales (distinct).
    pub fn merge_scales(&self) -> Vec<T> {
        self.events.iter().map(|e| e.scale.clone()).collect()
    }
}
