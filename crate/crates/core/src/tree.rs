//! Rooted trees, forward numbering, and route queries.
//!
//! Node `0` is the datum. A tree is *forward numbered* when every node's
//! parent carries a smaller label, which is the same as saying that labels
//! strictly increase along every walk that starts at the datum.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Label of the datum (root) node.
pub const DATUM: usize = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    /// The graph has no edges.
    Empty,
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    /// A label inside `0..=N` that no edge touches.
    IsolatedNode(usize),
    /// Adding this edge closed a loop.
    CycleDetected(usize, usize),
    /// This node cannot be reached from the datum.
    Disconnected(usize),
    DatumNotZero(usize),
    /// `(parent, child)` links with `parent >= child`.
    NonMonotoneNumbering(Vec<(usize, usize)>),
    InvalidParent { node: usize, parent: usize },
    IndexOutOfRange { index: usize, max: usize },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Empty => write!(f, "graph has no edges"),
            TreeError::SelfLoop(u) => write!(f, "self-loop on node {u}"),
            TreeError::DuplicateEdge(u, v) => write!(f, "duplicate edge {u} -- {v}"),
            TreeError::IsolatedNode(k) => write!(f, "node {k} has no incident edge"),
            TreeError::CycleDetected(u, v) => write!(f, "edge {u} -- {v} closes a cycle"),
            TreeError::Disconnected(k) => write!(f, "node {k} is not connected to the datum"),
            TreeError::DatumNotZero(d) => {
                write!(f, "datum is labeled {d}; forward numbering needs datum 0")
            }
            TreeError::NonMonotoneNumbering(v) => {
                write!(f, "numbering is not monotone:")?;
                for (p, c) in v {
                    write!(f, " {p}->{c}")?;
                }
                Ok(())
            }
            TreeError::InvalidParent { node, parent } => {
                write!(f, "node {node} has invalid parent {parent}")
            }
            TreeError::IndexOutOfRange { index, max } => {
                write!(f, "node index {index} out of range 0..={max}")
            }
        }
    }
}

impl core::error::Error for TreeError {}

/// Undirected edge list before any validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    datum: usize,
    edges: Vec<(usize, usize)>,
}

impl RawGraph {
    pub fn new(datum: usize, edges: Vec<(usize, usize)>) -> Self {
        RawGraph { datum, edges }
    }

    pub fn datum(&self) -> usize {
        self.datum
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// All labels touched by an edge, plus the datum.
    pub fn labels(&self) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        set.insert(self.datum);
        set
    }

    fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(u, v) in &self.edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Rejects self-loops, duplicates and cycles; reports the first problem
    /// in edge order.
    fn check_forest(&self) -> Result<(), TreeError> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge(u, v));
            }
        }
        let mut uf = UnionFind::default();
        for &(u, v) in &self.edges {
            if !uf.union(u, v) {
                return Err(TreeError::CycleDetected(u, v));
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct UnionFind {
    parent: BTreeMap<usize, usize>,
}

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        self.parent.entry(root).or_insert(root);
        let mut cur = x;
        while cur != root {
            let next = *self.parent.get(&cur).unwrap_or(&root);
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent.insert(ra, rb);
        true
    }
}

/// A rooted tree over `0..=N` with datum `0`. Labels are not required to be
/// forward; see [`validate_indexing`] and [`Tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    // parent[0] is unused and kept at 0
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// `parents[k - 1]` is the parent of node `k`.
    pub fn from_parents(parents: &[usize]) -> Result<Self, TreeError> {
        let n = parents.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut parent = Vec::with_capacity(n + 1);
        parent.push(DATUM);
        for (idx, &p) in parents.iter().enumerate() {
            let node = idx + 1;
            if p > n || p == node {
                return Err(TreeError::InvalidParent { node, parent: p });
            }
            parent.push(p);
        }
        // every parent chain must reach the datum
        let mut state = vec![0u8; n + 1]; // 0 unseen, 1 on stack, 2 done
        state[DATUM] = 2;
        let mut chain = Vec::new();
        for start in 1..=n {
            let mut cur = start;
            while state[cur] == 0 {
                state[cur] = 1;
                chain.push(cur);
                cur = parent[cur];
            }
            if state[cur] == 1 {
                return Err(TreeError::CycleDetected(cur, parent[cur]));
            }
            for k in chain.drain(..) {
                state[k] = 2;
            }
        }
        let mut children = vec![Vec::new(); n + 1];
        for k in 1..=n {
            children[parent[k]].push(k);
        }
        Ok(RootedTree { parent, children })
    }

    /// Orients a validated edge list away from datum `0`.
    pub fn from_raw(raw: &RawGraph) -> Result<Self, TreeError> {
        if raw.edges.is_empty() {
            return Err(TreeError::Empty);
        }
        raw.check_forest()?;
        let labels = raw.labels();
        let max = *labels.iter().next_back().unwrap_or(&0);
        if let Some(gap) = (0..=max).find(|k| !labels.contains(k)) {
            return Err(TreeError::IsolatedNode(gap));
        }
        if !raw.edges.iter().any(|&(u, v)| u == raw.datum || v == raw.datum) {
            return Err(TreeError::IsolatedNode(raw.datum));
        }
        if raw.datum != DATUM {
            return Err(TreeError::DatumNotZero(raw.datum));
        }
        let adj = raw.adjacency();
        let n = max;
        let mut parent = vec![usize::MAX; n + 1];
        parent[DATUM] = DATUM;
        let mut queue = VecDeque::from([DATUM]);
        while let Some(u) = queue.pop_front() {
            for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if v != DATUM && parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if let Some(k) = (1..=n).find(|&k| parent[k] == usize::MAX) {
            return Err(TreeError::Disconnected(k));
        }
        RootedTree::from_parents(&parent[1..])
    }

    /// Number of non-datum nodes.
    pub fn n(&self) -> usize {
        self.parent.len() - 1
    }

    /// Parent of `k`, or `None` for the datum.
    pub fn parent(&self, k: usize) -> Option<usize> {
        (k != DATUM && k <= self.n()).then(|| self.parent[k])
    }

    /// Children of `k` in ascending label order.
    pub fn children(&self, k: usize) -> &[usize] {
        self.children.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `(parent, child)` for every node `1..=N`, in child order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n()).map(move |k| (self.parent[k], k))
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph::new(DATUM, self.edges().collect())
    }
}

/// Outcome of [`validate_indexing`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexingReport {
    /// Every `(parent, child)` with `parent >= child`, ascending by child.
    pub violations: Vec<(usize, usize)>,
}

impl IndexingReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `parent[k] < k` for every node.
pub fn validate_indexing(tree: &RootedTree) -> IndexingReport {
    IndexingReport {
        violations: tree.edges().filter(|&(p, c)| p >= c).collect(),
    }
}

/// A forward-numbered rooted tree: `parent(k) < k` for all `k` in `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    rooted: RootedTree,
    depth: Vec<usize>,
}

impl Tree {
    pub fn new(rooted: RootedTree) -> Result<Self, TreeError> {
        let report = validate_indexing(&rooted);
        if !report.is_pass() {
            return Err(TreeError::NonMonotoneNumbering(report.violations));
        }
        let mut depth = vec![0; rooted.n() + 1];
        for k in 1..=rooted.n() {
            depth[k] = depth[rooted.parent[k]] + 1;
        }
        Ok(Tree { rooted, depth })
    }

    /// `parents[k - 1]` is the parent of node `k`.
    pub fn from_parents(parents: &[usize]) -> Result<Self, TreeError> {
        Tree::new(RootedTree::from_parents(parents)?)
    }

    pub fn rooted(&self) -> &RootedTree {
        &self.rooted
    }

    pub fn n(&self) -> usize {
        self.rooted.n()
    }

    pub fn parent(&self, k: usize) -> Option<usize> {
        self.rooted.parent(k)
    }

    pub fn children(&self, k: usize) -> &[usize] {
        self.rooted.children(k)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rooted.edges()
    }

    /// Number of edges between `k` and the datum.
    pub fn depth(&self, k: usize) -> usize {
        self.depth[k]
    }

    /// Sum of depths over `1..=N`; equals the number of ancestor pairs
    /// `(i, j)` with `1 <= i <= j`.
    pub fn total_depth(&self) -> u64 {
        self.depth.iter().map(|&d| d as u64).sum()
    }

    fn check(&self, k: usize) -> Result<(), TreeError> {
        if k > self.n() {
            Err(TreeError::IndexOutOfRange { index: k, max: self.n() })
        } else {
            Ok(())
        }
    }

    /// The forward route from `i` to `j`, if `i` is on `j`'s root path.
    pub fn route(&self, i: usize, j: usize) -> Result<Option<Route>, TreeError> {
        self.check(i)?;
        self.check(j)?;
        let mut nodes = vec![j];
        let mut cur = j;
        while cur > i {
            cur = self.rooted.parent[cur];
            nodes.push(cur);
        }
        if cur != i {
            return Ok(None);
        }
        nodes.reverse();
        Ok(Some(Route { from: i, to: j, nodes }))
    }

    /// Nodes of the route from the datum to `j`, datum first.
    pub fn root_path(&self, j: usize) -> Result<Route, TreeError> {
        self.route(DATUM, j).map(|r| r.expect("datum is on every root path"))
    }

    /// True iff `i` is the parent of `k`.
    pub fn forward_adjacent(&self, i: usize, k: usize) -> Result<bool, TreeError> {
        self.check(i)?;
        self.check(k)?;
        Ok(self.parent(k) == Some(i))
    }

    /// True iff `i` lies on the root path of `j` (reflexive).
    pub fn forward_connected(&self, i: usize, j: usize) -> Result<bool, TreeError> {
        self.check(i)?;
        self.check(j)?;
        let mut cur = j;
        while cur > i {
            cur = self.rooted.parent[cur];
        }
        Ok(cur == i)
    }

    /// Every node `m` with `forward_connected(k, m)`, ascending. This is the
    /// subtree rooted at `k`.
    pub fn forward_closure(&self, k: usize) -> Result<Vec<usize>, TreeError> {
        self.check(k)?;
        let mut out = Vec::new();
        let mut stack = vec![k];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend_from_slice(self.children(u));
        }
        out.sort_unstable();
        Ok(out)
    }
}

impl TryFrom<&RawGraph> for Tree {
    type Error = TreeError;

    fn try_from(raw: &RawGraph) -> Result<Self, Self::Error> {
        build_tree(raw)
    }
}

/// Validates an edge list and returns the forward-numbered tree it describes.
pub fn build_tree(raw: &RawGraph) -> Result<Tree, TreeError> {
    Tree::new(RootedTree::from_raw(raw)?)
}

/// The unique strictly increasing path `from -> ... -> to`, terminals
/// included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub from: usize,
    pub to: usize,
    pub nodes: Vec<usize>,
}

impl Route {
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.nodes.binary_search(&k).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumberingStrategy {
    #[default]
    DfsPreorder,
    BfsLevel,
}

/// Old label -> new label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Relabeling {
    map: BTreeMap<usize, usize>,
}

impl Relabeling {
    pub fn get(&self, old: usize) -> Option<usize> {
        self.map.get(&old).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    /// Rewrites every label; edges are emitted as `(parent, child)` sorted
    /// by child so the result builds directly.
    pub fn apply(&self, raw: &RawGraph) -> RawGraph {
        let mut edges: Vec<(usize, usize)> = raw
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.map[&u], self.map[&v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable_by_key(|&(p, c)| (c, p));
        RawGraph::new(self.map[&raw.datum], edges)
    }
}

/// Assigns labels `0..=N` so that the datum becomes `0` and labels grow
/// along every root path. Neighbours are visited in ascending original label.
pub fn assign_forward_indexing(
    raw: &RawGraph,
    strategy: NumberingStrategy,
) -> Result<Relabeling, TreeError> {
    if raw.edges.is_empty() {
        return Err(TreeError::Empty);
    }
    if let Err(e) = raw.check_forest() {
        return Err(match e {
            TreeError::SelfLoop(u) => TreeError::CycleDetected(u, u),
            TreeError::DuplicateEdge(u, v) => TreeError::CycleDetected(u, v),
            other => other,
        });
    }
    let adj = raw.adjacency();
    let mut map = BTreeMap::new();
    let mut next = 0usize;
    let mut assign = |map: &mut BTreeMap<usize, usize>, label: usize| {
        map.insert(label, next);
        next += 1;
    };
    let empty: &[usize] = &[];
    match strategy {
        NumberingStrategy::DfsPreorder => {
            let mut stack = vec![(raw.datum, usize::MAX)];
            while let Some((u, from)) = stack.pop() {
                assign(&mut map, u);
                let nbrs = adj.get(&u).map(Vec::as_slice).unwrap_or(empty);
                stack.extend(nbrs.iter().rev().filter(|&&v| v != from).map(|&v| (v, u)));
            }
        }
        NumberingStrategy::BfsLevel => {
            let mut queue = VecDeque::from([(raw.datum, usize::MAX)]);
            while let Some((u, from)) = queue.pop_front() {
                assign(&mut map, u);
                let nbrs = adj.get(&u).map(Vec::as_slice).unwrap_or(empty);
                queue.extend(nbrs.iter().filter(|&&v| v != from).map(|&v| (v, u)));
            }
        }
    }
    if let Some(&missing) = adj.keys().find(|k| !map.contains_key(k)) {
        return Err(TreeError::Disconnected(missing));
    }
    if !map.contains_key(&raw.datum) || map.len() < 2 {
        return Err(TreeError::Disconnected(raw.datum));
    }
    Ok(Relabeling { map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{fig1, FIG1_PARENTS};
    use proptest::prelude::*;

    fn fig1_raw() -> RawGraph {
        RawGraph::new(
            0,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (2, 6),
                (2, 7),
                (7, 8),
                (3, 9),
                (9, 10),
                (9, 11),
                (11, 12),
            ],
        )
    }

    #[test]
    fn builds_reference_graph() {
        let t = build_tree(&fig1_raw()).unwrap();
        assert_eq!(t.n(), 12);
        assert_eq!(t.parent(9), Some(3));
        assert_eq!(t.parent(12), Some(11));
        assert_eq!(t, fig1());
        assert_eq!(t.children(2), &[3, 6, 7]);
    }

    #[test]
    fn smallest_tree() {
        let t = build_tree(&RawGraph::new(0, vec![(0, 1)])).unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.parent(1), Some(0));
        assert!(validate_indexing(t.rooted()).is_pass());
    }

    #[test]
    fn build_errors() {
        let tri = RawGraph::new(0, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(build_tree(&tri), Err(TreeError::CycleDetected(2, 0)));
        assert_eq!(build_tree(&RawGraph::new(0, vec![])), Err(TreeError::Empty));
        assert_eq!(build_tree(&RawGraph::new(0, vec![(0, 0)])), Err(TreeError::SelfLoop(0)));
        assert_eq!(
            build_tree(&RawGraph::new(0, vec![(0, 1), (1, 0)])),
            Err(TreeError::DuplicateEdge(1, 0))
        );
        assert_eq!(
            build_tree(&RawGraph::new(0, vec![(0, 1), (2, 3)])),
            Err(TreeError::Disconnected(2))
        );
        assert_eq!(
            build_tree(&RawGraph::new(0, vec![(0, 1), (1, 3)])),
            Err(TreeError::IsolatedNode(2))
        );
        assert_eq!(
            build_tree(&RawGraph::new(1, vec![(0, 1)])),
            Err(TreeError::DatumNotZero(1))
        );
        assert_eq!(
            build_tree(&RawGraph::new(0, vec![(0, 2), (2, 1)])),
            Err(TreeError::NonMonotoneNumbering(vec![(2, 1)]))
        );
    }

    #[test]
    fn validate_reports_forged_parent() {
        // 0 - 1 - 2 - 4 - 5 - 3: node 3 forged under node 5
        let rooted = RootedTree::from_parents(&[0, 1, 5, 2, 4]).unwrap();
        let report = validate_indexing(&rooted);
        assert_eq!(report.violations, vec![(5, 3)]);
        assert!(validate_indexing(fig1().rooted()).is_pass());
        assert!(Tree::new(rooted).is_err());
    }

    #[test]
    fn parent_links_must_reach_datum() {
        assert_eq!(
            RootedTree::from_parents(&[2, 1]),
            Err(TreeError::CycleDetected(1, 2))
        );
        assert_eq!(
            RootedTree::from_parents(&[0, 2]),
            Err(TreeError::InvalidParent { node: 2, parent: 2 })
        );
        assert_eq!(
            RootedTree::from_parents(&[0, 7]),
            Err(TreeError::InvalidParent { node: 2, parent: 7 })
        );
    }

    #[test]
    fn routes_on_reference_graph() {
        let t = fig1();
        assert_eq!(t.route(2, 11).unwrap().unwrap().nodes, vec![2, 3, 9, 11]);
        assert_eq!(t.route(4, 9).unwrap(), None);
        for k in 0..=12 {
            let r = t.route(0, k).unwrap().unwrap();
            assert_eq!(r.nodes[0], 0);
            assert_eq!(*r.nodes.last().unwrap(), k);
        }
        assert_eq!(t.route(7, 7).unwrap().unwrap().nodes, vec![7]);
        assert_eq!(t.route(9, 3).unwrap(), None);
        assert_eq!(
            t.route(0, 13),
            Err(TreeError::IndexOutOfRange { index: 13, max: 12 })
        );
    }

    #[test]
    fn adjacency_and_connectivity() {
        let t = fig1();
        assert!(t.forward_adjacent(2, 6).unwrap());
        assert!(!t.forward_adjacent(6, 2).unwrap());
        assert!(!t.forward_adjacent(2, 11).unwrap());
        assert!(t.forward_connected(2, 11).unwrap());
        assert!(!t.forward_connected(4, 9).unwrap());
        for k in 0..=12 {
            assert!(t.forward_connected(k, k).unwrap());
        }
        assert!(t.forward_connected(3, 40).is_err());
    }

    #[test]
    fn closures_on_reference_graph() {
        let t = fig1();
        assert_eq!(t.forward_closure(5).unwrap(), vec![5]);
        assert_eq!(t.forward_closure(4).unwrap(), vec![4, 5]);
        assert_eq!(t.forward_closure(1).unwrap(), (1..=12).collect::<Vec<_>>());
        assert_eq!(t.forward_closure(3).unwrap(), vec![3, 4, 5, 9, 10, 11, 12]);
    }

    #[test]
    fn relabel_star_and_path() {
        // star centred on 7 with leaves 9 and 3
        let star = RawGraph::new(7, vec![(7, 9), (3, 7)]);
        for s in [NumberingStrategy::DfsPreorder, NumberingStrategy::BfsLevel] {
            let m = assign_forward_indexing(&star, s).unwrap();
            assert_eq!((m.get(7), m.get(3), m.get(9)), (Some(0), Some(1), Some(2)));
        }
        let path = RawGraph::new(5, vec![(8, 2), (5, 8)]);
        let m = assign_forward_indexing(&path, NumberingStrategy::DfsPreorder).unwrap();
        assert_eq!((m.get(5), m.get(8), m.get(2)), (Some(0), Some(1), Some(2)));
        let t = build_tree(&m.apply(&path)).unwrap();
        assert_eq!(t.parent(2), Some(1));
    }

    #[test]
    fn relabel_errors() {
        let tri = RawGraph::new(0, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(
            assign_forward_indexing(&tri, NumberingStrategy::DfsPreorder),
            Err(TreeError::CycleDetected(..))
        ));
        let split = RawGraph::new(0, vec![(0, 1), (5, 6)]);
        assert_eq!(
            assign_forward_indexing(&split, NumberingStrategy::BfsLevel),
            Err(TreeError::Disconnected(5))
        );
        let far = RawGraph::new(9, vec![(0, 1)]);
        assert_eq!(
            assign_forward_indexing(&far, NumberingStrategy::BfsLevel),
            Err(TreeError::Disconnected(0))
        );
    }

    #[test]
    fn depths() {
        let t = fig1();
        assert_eq!(t.depth(0), 0);
        assert_eq!(t.depth(12), 6);
        // number of ones in the reference inverse
        assert_eq!(t.total_depth(), 45);
    }

    fn arb_parents(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(any::<prop::sample::Index>(), 1..=max_n)
            .prop_map(|idx| idx.iter().enumerate().map(|(k, ix)| ix.index(k + 1)).collect())
    }

    /// Forward search from `i` over children, independent of parent walks.
    fn forward_search(t: &Tree, i: usize, j: usize) -> Option<Vec<usize>> {
        if i == j {
            return Some(vec![i]);
        }
        for &c in t.children(i) {
            if c <= j {
                if let Some(mut rest) = forward_search(t, c, j) {
                    rest.insert(0, i);
                    return Some(rest);
                }
            }
        }
        None
    }

    proptest! {
        #[test]
        fn route_uniqueness(parents in arb_parents(40)) {
            let t = Tree::from_parents(&parents).unwrap();
            let n = t.n();
            for i in 0..=n {
                for j in 0..=n {
                    let walked = t.route(i, j).unwrap().map(|r| r.nodes);
                    prop_assert_eq!(&walked, &forward_search(&t, i, j));
                    if let Some(nodes) = walked {
                        prop_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
                        prop_assert!(nodes.windows(2).all(|w| t.forward_adjacent(w[0], w[1]).unwrap()));
                        if i < j {
                            prop_assert!(nodes.len() - 2 < j - i);
                        }
                    }
                }
            }
        }

        #[test]
        fn single_parent_and_closure(parents in arb_parents(40)) {
            let t = Tree::from_parents(&parents).unwrap();
            let n = t.n();
            for k in 1..=n {
                let count = (0..=n).filter(|&i| t.forward_adjacent(i, k).unwrap()).count();
                prop_assert_eq!(count, 1);
                let closure = t.forward_closure(k).unwrap();
                for m in 0..=n {
                    let fc = t.forward_connected(k, m).unwrap();
                    prop_assert_eq!(closure.contains(&m), fc);
                    prop_assert_eq!(t.root_path(m).unwrap().contains(k), fc);
                }
            }
        }

        #[test]
        fn relabeling_is_forward(parents in arb_parents(60), shift in 1usize..1000, dfs in any::<bool>()) {
            // scramble labels by an affine bijection on the label set
            let t = Tree::from_parents(&parents).unwrap();
            let n = t.n();
            let scramble = |k: usize| (k * 7919 + shift) % 1_000_003;
            let raw = RawGraph::new(scramble(0), t.edges().map(|(p, c)| (scramble(c), scramble(p))).collect());
            let strategy = if dfs { NumberingStrategy::DfsPreorder } else { NumberingStrategy::BfsLevel };
            let m = assign_forward_indexing(&raw, strategy).unwrap();
            prop_assert_eq!(m.len(), n + 1);
            let rebuilt = build_tree(&m.apply(&raw)).unwrap();
            prop_assert!(validate_indexing(rebuilt.rooted()).is_pass());
        }
    }

    #[test]
    fn reference_parents_roundtrip_through_raw() {
        let t = fig1();
        assert_eq!(build_tree(&t.rooted().to_raw()).unwrap(), t);
        assert_eq!(t.edges().map(|(p, _)| p).collect::<Vec<_>>(), FIG1_PARENTS);
    }
}
