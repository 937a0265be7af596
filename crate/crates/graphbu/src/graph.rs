//! Finite connected graphs with a planar-embedding edge order, plus the
//! rooted spanning tree and DFS vertex numbering that the Morse machinery
//! is built on.
//!
//! Vertices of an [`OrderedGraph`] are identified with their walk numbers
//! `0..n`. Every edge is stored as `(lo, hi)` with `lo < hi`; a tree edge
//! `(u, v)` always has `u = parent(v)`, and collapsing the tree realizes
//! the fundamental group as the free group on the deleted (non-tree) edges.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};

/// A multigraph with per-vertex cyclic slot lists (the embedding).
/// Loops and parallel edges are allowed; this is the raw parse target and
/// the quotient carrier for involutions.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    /// Per vertex, the incident edge slots in embedding order. A loop at
    /// `v` contributes two slots to `slots[v]`.
    pub slots: Vec<Vec<Slot>>,
    /// Edge endpoints; a loop has both endpoints equal.
    pub edges: Vec<(usize, usize)>,
    /// External vertex labels, for diagnostics and file output.
    pub labels: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub nbr: usize,
    pub edge: usize,
}

impl MultiGraph {
    /// Builds from per-vertex neighbor lists in embedding order, pairing
    /// up slot occurrences. The k-th occurrence of `v` in `u`'s list and
    /// the k-th occurrence of `u` in `v`'s list denote the same edge; a
    /// loop occupies two consecutive occurrences of `v` in its own list.
    pub fn from_neighbor_lists(lists: Vec<Vec<usize>>, labels: Vec<u32>) -> Result<MultiGraph> {
        let n = lists.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if labels.len() != n {
            return Err(Error::Internal("label/list length mismatch".into()));
        }
        for (v, list) in lists.iter().enumerate() {
            for &w in list {
                if w >= n {
                    return Err(Error::InvalidGraph(format!(
                        "vertex {} lists unknown neighbor index {}",
                        labels[v], w
                    )));
                }
            }
        }
        // multiplicity check: occurrences must match on both sides
        let occurrences = |u: usize, w: usize| lists[u].iter().filter(|&&x| x == w).count();
        for u in 0..n {
            for &w in &lists[u] {
                if w != u && occurrences(u, w) != occurrences(w, u) {
                    return Err(Error::InvalidGraph(format!(
                        "adjacency inconsistent between vertices {} and {}",
                        labels[u], labels[w]
                    )));
                }
                if w == u && occurrences(u, u) % 2 != 0 {
                    return Err(Error::InvalidGraph(format!(
                        "vertex {} has an unpaired loop slot",
                        labels[u]
                    )));
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut slots: Vec<Vec<Slot>> = vec![Vec::new(); n];
        // edge id for the k-th parallel copy between u < w
        let mut copy_ids: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for u in 0..n {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for &w in &lists[u] {
                let k = seen.entry(w).or_insert(0);
                let occ = *k;
                *k += 1;
                if w == u {
                    // slots 2i and 2i+1 belong to loop copy i
                    let copy = occ / 2;
                    let ids = copy_ids.entry((u, u)).or_default();
                    if ids.len() <= copy {
                        edges.push((u, u));
                        ids.push(edges.len() - 1);
                    }
                    slots[u].push(Slot {
                        nbr: u,
                        edge: ids[copy],
                    });
                } else {
                    let key = (u.min(w), u.max(w));
                    let ids = copy_ids.entry(key).or_default();
                    if ids.len() <= occ {
                        edges.push(key);
                        ids.push(edges.len() - 1);
                    }
                    slots[u].push(Slot {
                        nbr: w,
                        edge: ids[occ],
                    });
                }
            }
        }
        let mg = MultiGraph {
            slots,
            edges,
            labels,
        };
        if !mg.is_connected() {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        Ok(mg)
    }

    pub fn from_graph(g: &Graph) -> MultiGraph {
        let lists = g.adj.clone();
        MultiGraph::from_neighbor_lists(lists, g.labels.clone())
            .expect("a valid Graph is a valid MultiGraph")
    }

    pub fn vertex_count(&self) -> usize {
        self.slots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.slots.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.slots.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for s in &self.slots[v] {
                if !seen[s.nbr] {
                    seen[s.nbr] = true;
                    stack.push(s.nbr);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.slots[v].len()
    }
}

/// Inserts subdivision vertices until the graph is simplicial: every loop
/// becomes a triangle (two new vertices) and every member of a parallel
/// class of size >= 2 is subdivided once. Already-simplicial graphs pass
/// through unchanged, so the operation is idempotent.
pub fn subdivide_to_simplicial(mg: &MultiGraph) -> Result<Graph> {
    let n = mg.vertex_count();
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut labels = mg.labels.clone();
    let mut next_label = mg
        .labels
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .saturating_add(1);
    let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
    for &(u, v) in &mg.edges {
        *multiplicity.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }

    // Per edge, the replacement endpoint seen from each side (None = keep).
    #[derive(Clone, Copy)]
    enum Fate {
        Keep,
        Midpoint(usize),
        LoopPath(usize, usize), // loop at v becomes v-a-b-v
    }
    let mut fate: Vec<Fate> = Vec::with_capacity(mg.edges.len());
    let mut fresh = |lists: &mut Vec<Vec<usize>>, labels: &mut Vec<u32>| {
        lists.push(Vec::new());
        labels.push(next_label);
        next_label = next_label.saturating_add(1);
        lists.len() - 1
    };
    for &(u, v) in &mg.edges {
        if u == v {
            let a = fresh(&mut lists, &mut labels);
            let b = fresh(&mut lists, &mut labels);
            fate.push(Fate::LoopPath(a, b));
        } else if multiplicity[&(u.min(v), u.max(v))] >= 2 {
            let m = fresh(&mut lists, &mut labels);
            fate.push(Fate::Midpoint(m));
        } else {
            fate.push(Fate::Keep);
        }
    }

    // Rewrite the slot lists in place, preserving the embedding order.
    for v in 0..n {
        let mut loop_first_seen: HashSet<usize> = HashSet::new();
        for s in &mg.slots[v] {
            match fate[s.edge] {
                Fate::Keep => lists[v].push(s.nbr),
                Fate::Midpoint(m) => {
                    lists[v].push(m);
                    lists[m].push(v);
                }
                Fate::LoopPath(a, b) => {
                    // first slot attaches to a, second to b
                    if loop_first_seen.insert(s.edge) {
                        lists[v].push(a);
                        lists[a] = vec![v, b];
                    } else {
                        lists[v].push(b);
                        lists[b] = vec![a, v];
                    }
                }
            }
        }
    }
    Graph::new(lists, labels)
}

/// A finite connected simplicial graph with a planar embedding given by the
/// cyclic order of each adjacency list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<u32>,
}

impl Graph {
    pub fn new(adj: Vec<Vec<usize>>, labels: Vec<u32>) -> Result<Graph> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if labels.len() != n {
            return Err(Error::Internal("label/adjacency length mismatch".into()));
        }
        {
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::InvalidGraph("duplicate vertex labels".into()));
            }
        }
        for (v, nbrs) in adj.iter().enumerate() {
            let mut seen = HashSet::new();
            for &w in nbrs {
                if w >= n {
                    return Err(Error::InvalidGraph(format!(
                        "vertex {} lists unknown neighbor index {}",
                        labels[v], w
                    )));
                }
                if w == v {
                    return Err(Error::InvalidGraph(format!(
                        "loop edge at vertex {}",
                        labels[v]
                    )));
                }
                if !seen.insert(w) {
                    return Err(Error::InvalidGraph(format!(
                        "parallel edges between vertices {} and {}",
                        labels[v], labels[w]
                    )));
                }
                if !adj[w].contains(&v) {
                    return Err(Error::InvalidGraph(format!(
                        "adjacency inconsistent between vertices {} and {}",
                        labels[v], labels[w]
                    )));
                }
            }
        }
        let g = Graph { adj, labels };
        if !MultiGraph::from_graph(&g).is_connected() {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// Convenience constructor from an edge list; embedding order is the
    /// order in which edges mention each vertex.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Graph::new(adj, (0..n as u32).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn index_of_label(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Edges as `(lo, hi)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for v in 0..self.adj.len() {
            for &w in &self.adj[v] {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn first_betti(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64
    }

    fn is_cut_vertex(&self, v: usize) -> bool {
        let n = self.vertex_count();
        if n <= 2 {
            return false;
        }
        let start = (0..n).find(|&u| u != v).unwrap();
        let mut seen = vec![false; n];
        seen[v] = true; // blocked
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached != n - 1
    }
}

/// A graph together with a rooted spanning tree and the walk numbering.
/// Vertex `v`'s index in `graph` IS its walk number; the root is 0.
#[derive(Clone, Debug)]
pub struct OrderedGraph {
    graph: Graph,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    tree_edges: BTreeSet<(usize, usize)>,
    deleted: Vec<(usize, usize)>,
}

impl OrderedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_tree_edge(&self, u: usize, v: usize) -> bool {
        self.tree_edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tree_edges.iter().copied()
    }

    /// Deleted (non-tree) edges, sorted by larger then smaller endpoint.
    pub fn deleted_edges(&self) -> &[(usize, usize)] {
        &self.deleted
    }

    pub fn is_deleted(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.deleted
            .binary_search_by(|d| (d.1, d.0).cmp(&(e.1, e.0)))
            .is_ok()
    }

    /// 1-based generator index of a deleted edge.
    pub fn z_index(&self, edge: (usize, usize)) -> Option<usize> {
        self.deleted.iter().position(|&d| d == edge).map(|i| i + 1)
    }

    pub fn z_edge(&self, index1: usize) -> Option<(usize, usize)> {
        self.deleted.get(index1.checked_sub(1)?).copied()
    }

    /// The tree edge from `v`'s parent into `v`, as `(parent, v)`.
    pub fn tree_edge_into(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v].map(|p| (p, v))
    }

    /// Whether `u` lies on the tree path from `v` back to the root.
    pub fn on_root_path(&self, v: usize, u: usize) -> bool {
        let mut cur = v;
        loop {
            if cur == u {
                return true;
            }
            match self.parent[cur] {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Smallest vertex with at least two tree children, with its two
    /// smallest children. `None` when the tree is a path.
    pub fn essential_vertex(&self) -> Option<(usize, usize, usize)> {
        (0..self.vertex_count())
            .find(|&v| self.children[v].len() >= 2)
            .map(|v| (v, self.children[v][0], self.children[v][1]))
    }
}

/// Builds the rooted, numbered spanning-tree structure.
///
/// With no explicit tree, a DFS tree is grown from the root taking
/// branches in embedding order (first unvisited neighbor after the
/// arrival edge). With no explicit root, a spanning-tree leaf is chosen
/// automatically, preferring degree-1 vertices of the graph; explicit
/// roots must have degree 1 in the resulting tree.
pub fn order_graph(
    g: &Graph,
    root_label: Option<u32>,
    tree_labels: Option<&[(u32, u32)]>,
) -> Result<OrderedGraph> {
    let n = g.vertex_count();
    let tree: Option<BTreeSet<(usize, usize)>> = match tree_labels {
        None => None,
        Some(pairs) => {
            let mut t = BTreeSet::new();
            for &(a, b) in pairs {
                let u = g.index_of_label(a).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown vertex label {a} in tree"))
                })?;
                let v = g.index_of_label(b).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown vertex label {b} in tree"))
                })?;
                if !g.has_edge(u, v) {
                    return Err(Error::InvalidInput(format!(
                        "tree edge {a}-{b} is not a graph edge"
                    )));
                }
                t.insert((u.min(v), u.max(v)));
            }
            if t.len() != n - 1 || !spans(g, &t) {
                return Err(Error::InvalidInput(
                    "proposed tree is not a spanning tree (wrong size, cyclic, or not spanning)"
                        .into(),
                ));
            }
            Some(t)
        }
    };

    let tree_degree = |v: usize| -> usize {
        match &tree {
            Some(t) => g
                .neighbors(v)
                .iter()
                .filter(|&&w| t.contains(&(v.min(w), v.max(w))))
                .count(),
            None => g.degree(v),
        }
    };

    let root = match (root_label, &tree) {
        (Some(l), _) => {
            let r = g
                .index_of_label(l)
                .ok_or_else(|| Error::InvalidInput(format!("unknown root label {l}")))?;
            match &tree {
                Some(_) => {
                    if tree_degree(r) != 1 {
                        return Err(Error::InvalidInput(format!(
                            "root {l} does not have degree 1 in the chosen tree"
                        )));
                    }
                }
                None => {
                    if n > 1 && g.is_cut_vertex(r) {
                        return Err(Error::InvalidInput(format!(
                            "root {l} is a cut vertex, so no spanning tree has it as a leaf; pick another root"
                        )));
                    }
                }
            }
            r
        }
        (None, Some(t)) => {
            // smallest-label tree leaf
            let mut best: Option<usize> = None;
            for v in 0..n {
                let deg = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| t.contains(&(v.min(w), v.max(w))))
                    .count();
                if deg == 1 && best.is_none_or(|b| g.label(v) < g.label(b)) {
                    best = Some(v);
                }
            }
            best.ok_or_else(|| Error::InvalidInput("tree has no leaf".into()))?
        }
        (None, None) => default_root(g),
    };

    // Walk along the tree (or grow one by DFS) in embedding order.
    let permitted = |u: usize, w: usize| match &tree {
        Some(t) => t.contains(&(u.min(w), u.max(w))),
        None => true,
    };
    let mut number = vec![usize::MAX; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut parent_old: Vec<Option<usize>> = vec![None; n];
    number[root] = 0;
    order.push(root);
    // stack of (vertex, arrival neighbor)
    let mut stack: Vec<(usize, Option<usize>)> = vec![(root, None)];
    while let Some(&(u, from)) = stack.last() {
        let nbrs = g.neighbors(u);
        let start = match from {
            Some(p) => nbrs
                .iter()
                .position(|&w| w == p)
                .map(|i| i + 1)
                .unwrap_or(0),
            None => 0,
        };
        let mut advanced = false;
        for k in 0..nbrs.len() {
            let w = nbrs[(start + k) % nbrs.len()];
            if permitted(u, w) && number[w] == usize::MAX {
                number[w] = order.len();
                order.push(w);
                parent_old[w] = Some(u);
                stack.push((w, Some(u)));
                advanced = true;
                break;
            }
        }
        if !advanced {
            stack.pop();
        }
    }
    if order.len() != n {
        return Err(Error::Internal(
            "walk did not reach every vertex of a connected graph".into(),
        ));
    }

    // Renumber the graph so vertex index == walk number.
    let adj: Vec<Vec<usize>> = order
        .iter()
        .map(|&old| g.neighbors(old).iter().map(|&w| number[w]).collect())
        .collect();
    let labels: Vec<u32> = order.iter().map(|&old| g.label(old)).collect();
    let graph = Graph::new(adj, labels)?;

    let parent: Vec<Option<usize>> = order
        .iter()
        .map(|&old| parent_old[old].map(|p| number[p]))
        .collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, p) in parent.iter().enumerate().skip(1) {
        let p = p.expect("non-root vertex has a parent");
        children[p].push(v);
    }
    for c in &mut children {
        c.sort_unstable();
    }

    let mut tree_edges = BTreeSet::new();
    for (v, p) in parent.iter().enumerate().skip(1) {
        let p = p.unwrap();
        if p >= v {
            return Err(Error::Internal(
                "walk numbering put a parent after its child".into(),
            ));
        }
        tree_edges.insert((p, v));
    }
    let mut deleted: Vec<(usize, usize)> = graph
        .edges()
        .into_iter()
        .filter(|e| !tree_edges.contains(e))
        .collect();
    deleted.sort_by_key(|&(lo, hi)| (hi, lo));
    for &(lo, hi) in &deleted {
        if lo + 1 >= hi {
            return Err(Error::InvalidGraph(format!(
                "deleted edge ({},{}) has consecutive endpoints under this tree; subdivide it \
                 (or use the default tree) so that every non-tree edge spans a gap",
                graph.label(lo),
                graph.label(hi)
            )));
        }
    }

    Ok(OrderedGraph {
        graph,
        parent,
        children,
        tree_edges,
        deleted,
    })
}

fn default_root(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 1 {
        return 0;
    }
    // degree-1 vertices are leaves of every spanning tree
    if let Some(v) = (0..n)
        .filter(|&v| g.degree(v) == 1)
        .min_by_key(|&v| g.label(v))
    {
        return v;
    }
    // otherwise take a leaf of an exploratory DFS tree; such a leaf is
    // never a cut vertex
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut has_child = vec![false; n];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                has_child[u] = true;
                stack.push(w);
            }
        }
    }
    (1..n)
        .filter(|&v| !has_child[v])
        .min_by_key(|&v| g.label(v))
        .unwrap_or(0)
}

fn spans(g: &Graph, t: &BTreeSet<(usize, usize)>) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if t.contains(&(u.min(w), u.max(w))) && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == n
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn star_y() -> Graph {
        // leaf 0, center 1, leaves 2 and 3
        Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn subdivide_leaves_simplicial_graphs_alone() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let out = subdivide_to_simplicial(&MultiGraph::from_graph(&k3)).unwrap();
        assert_eq!(out, k3);
    }

    #[test]
    fn subdivide_turns_a_loop_into_a_triangle() {
        let mg = MultiGraph::from_neighbor_lists(vec![vec![0, 0]], vec![7]).unwrap();
        let out = subdivide_to_simplicial(&mg).unwrap();
        assert_eq!(out.vertex_count(), 3);
        assert_eq!(out.edge_count(), 3);
        assert!(out.degree(0) == 2 && out.degree(1) == 2 && out.degree(2) == 2);
    }

    #[test]
    fn subdivide_splits_parallel_edges_and_keeps_betti() {
        let mg = MultiGraph::from_neighbor_lists(vec![vec![1, 1], vec![0, 0]], vec![0, 1]).unwrap();
        let before = mg.edge_count() as i64 - mg.vertex_count() as i64 + 1;
        let out = subdivide_to_simplicial(&mg).unwrap();
        // 4-cycle: one midpoint per parallel edge
        assert_eq!(out.vertex_count(), 4);
        assert_eq!(out.edge_count(), 4);
        assert_eq!(out.first_betti() as i64, before);
        for v in 0..4 {
            assert_eq!(out.degree(v), 2);
        }
    }

    #[test]
    fn subdivide_rejects_disconnected_input() {
        assert!(MultiGraph::from_neighbor_lists(vec![vec![], vec![]], vec![0, 1]).is_err());
    }

    #[test]
    fn order_star_y_matches_the_walk() {
        let og = order_graph(&star_y(), Some(0), None).unwrap();
        assert_eq!(og.vertex_count(), 4);
        assert_eq!(og.parent(1), Some(0));
        assert_eq!(og.parent(2), Some(1));
        assert_eq!(og.parent(3), Some(1));
        assert!(og.is_tree_edge(0, 1) && og.is_tree_edge(1, 2) && og.is_tree_edge(1, 3));
        assert!(og.deleted_edges().is_empty());
        assert_eq!(og.essential_vertex(), Some((1, 2, 3)));
    }

    #[test]
    fn path_has_no_essential_vertex() {
        let p = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let og = order_graph(&p, None, None).unwrap();
        assert_eq!(og.essential_vertex(), None);
    }

    #[test]
    fn h_tree_takes_the_smaller_branch_vertex() {
        // two degree-3 vertices; the first one met by the walk wins, with
        // its two smallest children
        let og = order_graph(&crate::corpus::h_tree(), Some(0), None).unwrap();
        assert_eq!(og.essential_vertex(), Some((1, 2, 3)));
    }

    #[test]
    fn k4_has_three_deleted_edges() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let og = order_graph(&k4, None, None).unwrap();
        assert_eq!(og.deleted_edges().len(), 3);
        assert_eq!(og.deleted_edges().len(), og.graph().first_betti());
        // sorted by larger endpoint
        let ys: Vec<usize> = og.deleted_edges().iter().map(|&(_, y)| y).collect();
        let mut sorted = ys.clone();
        sorted.sort_unstable();
        assert_eq!(ys, sorted);
    }

    #[test]
    fn ordering_is_idempotent_on_its_own_tree() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let og = order_graph(&k4, None, None).unwrap();
        let tree: Vec<(u32, u32)> = og
            .tree_edges()
            .map(|(u, v)| (og.graph().label(u), og.graph().label(v)))
            .collect();
        let root = og.graph().label(0);
        let og2 = order_graph(&k4, Some(root), Some(&tree)).unwrap();
        assert_eq!(og.graph().labels(), og2.graph().labels());
        assert_eq!(og.deleted_edges(), og2.deleted_edges());
    }

    #[test]
    fn parent_lies_on_the_root_path() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let og = order_graph(&k4, None, None).unwrap();
        for v in 1..og.vertex_count() {
            assert!(og.on_root_path(v, og.parent(v).unwrap()));
        }
    }

    #[test]
    fn cut_vertex_root_is_rejected() {
        // H-tree: center 2 is a cut vertex
        let h = Graph::from_edges(6, &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
        assert!(order_graph(&h, Some(2), None).is_err());
        assert!(order_graph(&h, Some(0), None).is_ok());
    }

    #[test]
    fn adjacent_deleted_endpoints_are_rejected_with_a_hint() {
        // triangle 1-2-3 with pendant 0 at 1; the star tree at 1 makes
        // (2,3) a deleted edge with consecutive numbers
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        let err = order_graph(&g, Some(0), Some(&[(0, 1), (1, 2), (1, 3)])).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("subdivide"), "unexpected message: {msg}");
        // the default DFS tree is fine
        assert!(order_graph(&g, Some(0), None).is_ok());
    }

    #[test]
    fn cycles_are_ordered_through_a_tree_leaf() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let og = order_graph(&c5, None, None).unwrap();
        assert_eq!(og.deleted_edges().len(), 1);
        let (x, y) = og.deleted_edges()[0];
        assert!(x + 1 < y);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Random connected simplicial graph: a tree from parent choices
        /// plus a few chords.
        fn arb_graph() -> impl Strategy<Value = Graph> {
            (
                2usize..10,
                proptest::collection::vec((0u8..8, 0u8..8), 0..6),
            )
                .prop_flat_map(|(n, chords)| {
                    proptest::collection::vec(0u8..8, n - 1).prop_map(move |parents| {
                        let mut edges: Vec<(usize, usize)> = parents
                            .iter()
                            .enumerate()
                            .map(|(i, &p)| (p as usize % (i + 1), i + 1))
                            .collect();
                        for &(a, b) in &chords {
                            let (u, v) = (a as usize % n, b as usize % n);
                            let e = (u.min(v), u.max(v));
                            if u != v && !edges.contains(&e) {
                                edges.push(e);
                            }
                        }
                        Graph::from_edges(n, &edges).unwrap()
                    })
                })
        }

        proptest! {
            #[test]
            fn prop_order_invariants(g in arb_graph()) {
                let og = order_graph(&g, None, None).unwrap();
                // deleted-edge count is the first Betti number
                prop_assert_eq!(og.deleted_edges().len(), g.first_betti());
                for v in 1..og.vertex_count() {
                    let p = og.parent(v).unwrap();
                    prop_assert!(p < v);
                    prop_assert!(og.on_root_path(v, p));
                }
                for &(x, y) in og.deleted_edges() {
                    prop_assert!(x + 1 < y);
                }
                // rerunning on its own tree reproduces the numbering
                let tree: Vec<(u32, u32)> = og
                    .tree_edges()
                    .map(|(u, v)| (og.graph().label(u), og.graph().label(v)))
                    .collect();
                let og2 = order_graph(&g, Some(og.graph().label(0)), Some(&tree)).unwrap();
                prop_assert_eq!(og.graph().labels(), og2.graph().labels());
            }
        }
    }
}
