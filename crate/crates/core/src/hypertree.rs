//! Weighted k-uniform hypergraphs and hypertrees.
//!
//! Vertices are `0..n`; edges are stored as sorted vertex lists in the
//! order they were given. A [`WeightedHypertree`] is a weighted hypergraph
//! whose tree certificate has been checked.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HypertreeError {
    #[error("uniformity k = {0} is below 2")]
    UniformityTooSmall(usize),
    #[error("edge {edge} has {len} vertices, expected k = {k}")]
    WrongEdgeSize { edge: usize, len: usize, k: usize },
    #[error("edge {edge} mentions vertex {vertex} but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge} repeats vertex {vertex}")]
    DuplicateVertex { edge: usize, vertex: usize },
    #[error("edges {first} and {second} are identical")]
    DuplicateEdge { first: usize, second: usize },
    #[error("expected {expected} {what} weights, got {got}")]
    WeightLength { what: &'static str, expected: usize, got: usize },
    #[error("not a hypertree: {0}")]
    NotATree(TreeCertificate),
    #[error("not a subtree: {0}")]
    NotASubtree(String),
}

/// A k-uniform hypergraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypertreeError> {
        if k < 2 {
            return Err(HypertreeError::UniformityTooSmall(k));
        }
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for (i, mut edge) in edges.into_iter().enumerate() {
            if edge.len() != k {
                return Err(HypertreeError::WrongEdgeSize { edge: i, len: edge.len(), k });
            }
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(HypertreeError::VertexOutOfRange { edge: i, vertex: v, n });
            }
            if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypertreeError::DuplicateVertex { edge: i, vertex: w[0] });
            }
            if let Some(first) = sorted_edges.iter().position(|e: &Vec<usize>| *e == edge) {
                return Err(HypertreeError::DuplicateEdge { first, second: i });
            }
            sorted_edges.push(edge);
        }
        Ok(Hypergraph { k, n, edges: sorted_edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    /// For each vertex, the indices of edges containing it (ascending).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(e);
            }
        }
        inc
    }

    /// Sub-hypergraph on the same vertex set keeping only `keep` edges.
    pub fn with_edges(&self, keep: &[usize]) -> Hypergraph {
        Hypergraph {
            k: self.k,
            n: self.n,
            edges: keep.iter().map(|&e| self.edges[e].clone()).collect(),
        }
    }
}

/// Connectivity and acyclicity of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCertificate {
    pub connected: bool,
    pub acyclic: bool,
    pub component_count: usize,
    /// Edges of the first cycle found, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cycle_edges: Option<Vec<usize>>,
}

impl TreeCertificate {
    pub fn is_tree(&self) -> bool {
        self.connected && self.acyclic
    }
}

impl fmt::Display for TreeCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "connected={}, acyclic={}, components={}",
            self.connected, self.acyclic, self.component_count
        )?;
        if let Some(cycle) = &self.cycle_edges {
            write!(f, ", cycle through edges {cycle:?}")?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind { parent: (0..size).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Checks connectivity and (Berge) acyclicity.
///
/// Works on the bipartite vertex–edge incidence graph: the hypergraph is
/// acyclic exactly when that graph is a forest. A connected acyclic k-graph
/// then satisfies `n = m(k-1) + 1`.
pub fn validate(graph: &Hypergraph) -> TreeCertificate {
    let n = graph.n;
    let mut uf = UnionFind::new(n + graph.m());
    let mut forest_adj: Vec<Vec<usize>> = vec![Vec::new(); n + graph.m()];
    let mut cycle_edges = None;
    for (e, edge) in graph.edges.iter().enumerate() {
        let enode = n + e;
        for &v in edge {
            if uf.union(v, enode) {
                forest_adj[v].push(enode);
                forest_adj[enode].push(v);
            } else if cycle_edges.is_none() {
                let path = incidence_path(&forest_adj, v, enode);
                let mut edges: Vec<usize> = path.into_iter().filter(|&x| x >= n).map(|x| x - n).collect();
                edges.sort_unstable();
                edges.dedup();
                cycle_edges = Some(edges);
            }
        }
    }
    let mut roots = BTreeSet::new();
    for v in 0..n {
        roots.insert(uf.find(v));
    }
    let component_count = roots.len();
    TreeCertificate {
        connected: component_count == 1,
        acyclic: cycle_edges.is_none(),
        component_count,
        cycle_edges,
    }
}

fn incidence_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from && prev[cur] != usize::MAX {
        cur = prev[cur];
        path.push(cur);
    }
    path
}

pub fn degrees(graph: &Hypergraph) -> Vec<usize> {
    let mut d = vec![0; graph.n];
    for edge in &graph.edges {
        for &v in edge {
            d[v] += 1;
        }
    }
    d
}

/// Edges with exactly `k - 1` vertices of degree one. A lone edge (all `k`
/// of its vertices have degree one) is not pendant.
pub fn pendant_edges(graph: &Hypergraph) -> Vec<usize> {
    let d = degrees(graph);
    graph
        .edges
        .iter()
        .enumerate()
        .filter(|(_, edge)| edge.iter().filter(|&&v| d[v] == 1).count() == graph.k - 1)
        .map(|(e, _)| e)
        .collect()
}

/// Vertex and edge weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weighting {
    pub vertex_weights: Vec<Scalar>,
    pub edge_weights: Vec<Scalar>,
}

impl Weighting {
    /// `w(v) = 0`, `w(e) = 1`: the plain adjacency tensor.
    pub fn unit(graph: &Hypergraph) -> Self {
        Weighting {
            vertex_weights: vec![Scalar::integer(0); graph.n()],
            edge_weights: vec![Scalar::integer(1); graph.m()],
        }
    }

    /// All `w(v) >= 0` real and all `w(e) > 0` real.
    pub fn is_nonnegative(&self) -> bool {
        self.vertex_weights.iter().all(Scalar::is_real_nonnegative)
            && self.edge_weights.iter().all(Scalar::is_real_positive)
    }

    pub fn is_rational(&self) -> bool {
        self.vertex_weights.iter().chain(&self.edge_weights).all(Scalar::is_rational)
    }
}

/// Laplacian (`w(e) = -1`) or signless Laplacian (`w(e) = +1`) weighting,
/// both with `w(v) = deg(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LaplacianSign {
    Laplacian,
    Signless,
}

impl FromStr for LaplacianSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "laplacian" => Ok(LaplacianSign::Laplacian),
            "signless" => Ok(LaplacianSign::Signless),
            other => Err(format!("unknown sign {other:?}, expected laplacian or signless")),
        }
    }
}

pub fn corollary_weighting(graph: &Hypergraph, sign: LaplacianSign) -> Weighting {
    let edge_weight = match sign {
        LaplacianSign::Laplacian => -1,
        LaplacianSign::Signless => 1,
    };
    Weighting {
        vertex_weights: degrees(graph).into_iter().map(|d| Scalar::integer(d as i64)).collect(),
        edge_weights: vec![Scalar::integer(edge_weight); graph.m()],
    }
}

/// A hypergraph with a weighting; no structural assumptions beyond
/// uniformity.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedHypergraph {
    graph: Hypergraph,
    weights: Weighting,
    vertex_c: Vec<Complex64>,
    edge_c: Vec<Complex64>,
}

impl WeightedHypergraph {
    pub fn new(graph: Hypergraph, weights: Weighting) -> Result<Self, HypertreeError> {
        if weights.vertex_weights.len() != graph.n() {
            return Err(HypertreeError::WeightLength {
                what: "vertex",
                expected: graph.n(),
                got: weights.vertex_weights.len(),
            });
        }
        if weights.edge_weights.len() != graph.m() {
            return Err(HypertreeError::WeightLength {
                what: "edge",
                expected: graph.m(),
                got: weights.edge_weights.len(),
            });
        }
        let vertex_c = weights.vertex_weights.iter().map(Scalar::to_complex).collect();
        let edge_c = weights.edge_weights.iter().map(Scalar::to_complex).collect();
        Ok(WeightedHypergraph { graph, weights, vertex_c, edge_c })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn weights(&self) -> &Weighting {
        &self.weights
    }

    pub fn k(&self) -> usize {
        self.graph.k
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn vertex_weight(&self, v: usize) -> &Scalar {
        &self.weights.vertex_weights[v]
    }

    pub fn edge_weight(&self, e: usize) -> &Scalar {
        &self.weights.edge_weights[e]
    }

    /// Vertex weights as complex numbers.
    pub fn vertex_weights_c(&self) -> &[Complex64] {
        &self.vertex_c
    }

    pub fn edge_weights_c(&self) -> &[Complex64] {
        &self.edge_c
    }

    /// Same vertex set, only the listed edges (with their weights).
    pub fn with_edges(&self, keep: &[usize]) -> WeightedHypergraph {
        let graph = self.graph.with_edges(keep);
        let weights = Weighting {
            vertex_weights: self.weights.vertex_weights.clone(),
            edge_weights: keep.iter().map(|&e| self.weights.edge_weights[e].clone()).collect(),
        };
        WeightedHypergraph::new(graph, weights).expect("lengths preserved")
    }

    /// Relabels the sub-hypergraph spanned by `vertices` and `edges`
    /// (all edge vertices must be listed) into a standalone weighted
    /// hypergraph on `0..vertices.len()`.
    pub fn extract(&self, vertices: &[usize], edges: &[usize]) -> WeightedHypergraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let sub_edges = edges
            .iter()
            .map(|&e| self.graph.edges[e].iter().map(|&v| local[v]).collect())
            .collect();
        let graph = Hypergraph::new(self.k(), vertices.len(), sub_edges).expect("sub-hypergraph of a valid hypergraph");
        let weights = Weighting {
            vertex_weights: vertices.iter().map(|&v| self.weights.vertex_weights[v].clone()).collect(),
            edge_weights: edges.iter().map(|&e| self.weights.edge_weights[e].clone()).collect(),
        };
        WeightedHypergraph::new(graph, weights).expect("lengths match")
    }

    /// A relabeled tree piece spanned by `vertices` and `edges`.
    pub fn component(&self, vertices: &[usize], edges: &[usize]) -> Result<Component, HypertreeError> {
        let inner = self.extract(vertices, edges);
        Ok(Component {
            tree: WeightedHypertree::from_hypergraph(inner)?,
            vertex_ids: vertices.to_vec(),
            edge_ids: edges.to_vec(),
            host_n: self.n(),
        })
    }

    /// Vertex sets of the connected components of the sub-hypergraph using
    /// only `edges`; every vertex not covered is its own component. Sorted by
    /// smallest vertex.
    pub fn components_with(&self, edges: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n());
        for &e in edges {
            let edge = &self.graph.edges[e];
            for w in edge.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n()];
        for v in 0..self.n() {
            let r = uf.find(v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }
}

/// A weighted hypergraph certified connected and acyclic.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedHypertree {
    inner: WeightedHypergraph,
    certificate: TreeCertificate,
}

impl WeightedHypertree {
    pub fn new(graph: Hypergraph, weights: Weighting) -> Result<Self, HypertreeError> {
        Self::from_hypergraph(WeightedHypergraph::new(graph, weights)?)
    }

    pub fn from_hypergraph(inner: WeightedHypergraph) -> Result<Self, HypertreeError> {
        let certificate = validate(&inner.graph);
        if !certificate.is_tree() {
            return Err(HypertreeError::NotATree(certificate));
        }
        Ok(WeightedHypertree { inner, certificate })
    }

    /// Unit weighting `w(v) = 0`, `w(e) = 1`.
    pub fn unit(graph: Hypergraph) -> Result<Self, HypertreeError> {
        let weights = Weighting::unit(&graph);
        Self::new(graph, weights)
    }

    pub fn certificate(&self) -> &TreeCertificate {
        &self.certificate
    }

    pub fn as_hypergraph(&self) -> &WeightedHypergraph {
        &self.inner
    }

    /// The weighted subtree spanned by `subtree`, relabeled.
    pub fn induced(&self, subtree: &Subtree) -> Component {
        let inner = self.inner.extract(&subtree.vertex_set, &subtree.edge_indices);
        Component {
            tree: WeightedHypertree::from_hypergraph(inner).expect("subtrees of a hypertree are hypertrees"),
            vertex_ids: subtree.vertex_set.clone(),
            edge_ids: subtree.edge_indices.clone(),
            host_n: self.n(),
        }
    }

    /// Checks that `edges` form a connected edge set and builds the subtree.
    pub fn subtree_from_edges(&self, edges: &[usize]) -> Result<Subtree, HypertreeError> {
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(HypertreeError::NotASubtree("empty edge set".into()));
        }
        if let Some(&e) = sorted.iter().find(|&&e| e >= self.m()) {
            return Err(HypertreeError::NotASubtree(format!("edge {e} out of range")));
        }
        let vertex_set: BTreeSet<usize> = sorted.iter().flat_map(|&e| self.graph().edge(e).iter().copied()).collect();
        let vertices: Vec<usize> = vertex_set.into_iter().collect();
        let sub = self.inner.extract(&vertices, &sorted);
        if !validate(sub.graph()).connected {
            return Err(HypertreeError::NotASubtree(format!("edges {sorted:?} are not connected")));
        }
        Ok(Subtree { edge_indices: sorted, vertex_set: vertices })
    }

    pub fn whole(&self) -> Subtree {
        Subtree { edge_indices: (0..self.m()).collect(), vertex_set: (0..self.n()).collect() }
    }
}

impl Deref for WeightedHypertree {
    type Target = WeightedHypergraph;

    fn deref(&self) -> &WeightedHypergraph {
        &self.inner
    }
}

/// A connected edge subset of a hypertree, or a single vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subtree {
    pub edge_indices: Vec<usize>,
    pub vertex_set: Vec<usize>,
}

impl Subtree {
    pub fn singleton(v: usize) -> Self {
        Subtree { edge_indices: Vec::new(), vertex_set: vec![v] }
    }

    pub fn is_singleton(&self) -> bool {
        self.edge_indices.is_empty()
    }
}

/// A relabeled piece of a host hypertree, remembering where it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub tree: WeightedHypertree,
    /// Host id of each local vertex.
    pub vertex_ids: Vec<usize>,
    /// Host index of each local edge.
    pub edge_ids: Vec<usize>,
    host_n: usize,
}

impl Component {
    /// Extends a local vector to host coordinates with zeros elsewhere.
    pub fn embed(&self, local: &[Complex64]) -> Vec<Complex64> {
        let mut x = vec![Complex64::new(0.0, 0.0); self.host_n];
        for (i, &v) in self.vertex_ids.iter().enumerate() {
            x[v] = local[i];
        }
        x
    }

    pub fn project(&self, host: &[Complex64]) -> Vec<Complex64> {
        self.vertex_ids.iter().map(|&v| host[v]).collect()
    }
}

/// Every subtree: all singletons in vertex order, then every connected edge
/// subset in lexicographic order of its sorted edge indices.
pub fn enumerate_subtrees(tree: &WeightedHypertree) -> impl Iterator<Item = Subtree> {
    let graph = tree.graph();
    let mut edge_sets = connected_edge_subsets(graph);
    edge_sets.sort();
    let singles: Vec<Subtree> = (0..graph.n()).map(Subtree::singleton).collect();
    let with_edges: Vec<Subtree> = edge_sets
        .into_iter()
        .map(|edges| {
            let vs: BTreeSet<usize> = edges.iter().flat_map(|&e| graph.edge(e).iter().copied()).collect();
            Subtree { edge_indices: edges, vertex_set: vs.into_iter().collect() }
        })
        .collect();
    singles.into_iter().chain(with_edges)
}

/// Connected subsets of the edge-intersection graph, each found once from
/// its smallest edge (ESU-style extension).
fn connected_edge_subsets(graph: &Hypergraph) -> Vec<Vec<usize>> {
    let m = graph.m();
    let inc = graph.incidence();
    let neighbours: Vec<BTreeSet<usize>> = (0..m)
        .map(|e| {
            graph.edge(e)
                .iter()
                .flat_map(|&v| inc[v].iter().copied())
                .filter(|&f| f != e)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for anchor in 0..m {
        let extension: BTreeSet<usize> = neighbours[anchor].iter().copied().filter(|&f| f > anchor).collect();
        let mut current = vec![anchor];
        extend_subset(anchor, &neighbours, &mut current, extension, &mut out);
    }
    out
}

fn extend_subset(
    anchor: usize,
    neighbours: &[BTreeSet<usize>],
    current: &mut Vec<usize>,
    mut extension: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let mut found = current.clone();
    found.sort_unstable();
    out.push(found);
    while let Some(w) = extension.pop_first() {
        // exclusive neighbours of w: not in current, not adjacent to current
        let mut next = extension.clone();
        for &u in &neighbours[w] {
            if u > anchor && !current.contains(&u) && !current.iter().any(|c| neighbours[*c].contains(&u)) {
                next.insert(u);
            }
        }
        current.push(w);
        extend_subset(anchor, neighbours, current, next, out);
        current.pop();
    }
}

/// Order in which to delete pendant edges of `tree` to arrive at `target`.
///
/// At each step the smallest-index pendant edge outside the target is
/// removed. For a singleton target `{v}` the tree is first peeled down to
/// the smallest edge containing `v`, which is then removed last.
pub fn peel_sequence(tree: &WeightedHypertree, target: &Subtree) -> Result<Vec<usize>, HypertreeError> {
    let (goal, last) = if target.is_singleton() {
        let v = *target.vertex_set.first().ok_or_else(|| HypertreeError::NotASubtree("empty subtree".into()))?;
        if target.vertex_set.len() != 1 || v >= tree.n() {
            return Err(HypertreeError::NotASubtree(format!("bad singleton {:?}", target.vertex_set)));
        }
        match tree.graph().incidence()[v].first() {
            Some(&e) => (tree.subtree_from_edges(&[e])?, Some(e)),
            None => return Ok(Vec::new()), // tree is the single vertex itself
        }
    } else {
        let checked = tree.subtree_from_edges(&target.edge_indices)?;
        if checked.vertex_set != target.vertex_set {
            return Err(HypertreeError::NotASubtree("vertex set does not match edges".into()));
        }
        (checked, None)
    };
    let k = tree.k();
    let keep: BTreeSet<usize> = goal.edge_indices.iter().copied().collect();
    let mut current: BTreeSet<usize> = (0..tree.m()).collect();
    let mut sequence = Vec::new();
    while current.len() > keep.len() {
        let mut deg = vec![0usize; tree.n()];
        for &e in &current {
            for &v in tree.graph().edge(e) {
                deg[v] += 1;
            }
        }
        let next = current
            .iter()
            .copied()
            .filter(|e| !keep.contains(e))
            .find(|&e| tree.graph().edge(e).iter().filter(|&&v| deg[v] == 1).count() == k - 1)
            .ok_or_else(|| HypertreeError::NotASubtree("no pendant edge left to delete".into()))?;
        current.remove(&next);
        sequence.push(next);
    }
    sequence.extend(last);
    Ok(sequence)
}

/// Deletes `sequence` (each edge with its then-isolated vertices) and
/// returns what remains. When every edge is deleted the result is the
/// singleton `{keep}` (vertex 0 if unspecified).
pub fn replay_peel(tree: &WeightedHypertree, sequence: &[usize], keep: Option<usize>) -> Subtree {
    let removed: BTreeSet<usize> = sequence.iter().copied().collect();
    let edges: Vec<usize> = (0..tree.m()).filter(|e| !removed.contains(e)).collect();
    if edges.is_empty() {
        return Subtree::singleton(keep.unwrap_or(0));
    }
    let vs: BTreeSet<usize> = edges.iter().flat_map(|&e| tree.graph().edge(e).iter().copied()).collect();
    Subtree { edge_indices: edges, vertex_set: vs.into_iter().collect() }
}

/// Removes zero-weight edges and splits into components (isolated vertices
/// become singleton components), ordered by smallest vertex.
pub fn prune_zero_edges(tree: &WeightedHypertree) -> Vec<Component> {
    let live: Vec<usize> = (0..tree.m()).filter(|&e| !tree.edge_weight(e).is_zero()).collect();
    let groups = tree.components_with(&live);
    let mut owner = vec![0usize; tree.n()];
    for (g, group) in groups.iter().enumerate() {
        for &v in group {
            owner[v] = g;
        }
    }
    groups
        .iter()
        .enumerate()
        .map(|(g, vertices)| {
            let edges: Vec<usize> = live.iter().copied().filter(|&e| owner[tree.graph().edge(e)[0]] == g).collect();
            let inner = tree.extract(vertices, &edges);
            Component {
                tree: WeightedHypertree::from_hypergraph(inner).expect("components of a forest are trees"),
                vertex_ids: vertices.clone(),
                edge_ids: edges,
                host_n: tree.n(),
            }
        })
        .collect()
}

/// Standard shapes with vertices numbered edge by edge.
pub mod shapes {
    use super::*;

    /// `{0, 1, 2}`.
    pub fn single_edge() -> Hypergraph {
        Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap()
    }

    /// `m` edges, consecutive ones sharing one vertex.
    pub fn loose_path(m: usize, k: usize) -> Hypergraph {
        let edges = (0..m).map(|i| (i * (k - 1)..i * (k - 1) + k).collect()).collect();
        Hypergraph::new(k, m * (k - 1) + 1, edges).unwrap()
    }

    /// `m` edges through vertex 0.
    pub fn star(m: usize, k: usize) -> Hypergraph {
        let edges = (0..m).map(|i| std::iter::once(0).chain(1 + i * (k - 1)..1 + (i + 1) * (k - 1)).collect()).collect();
        Hypergraph::new(k, m * (k - 1) + 1, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;

    #[test]
    fn validate_examples() {
        let c = validate(&single_edge());
        assert!(c.connected && c.acyclic && c.component_count == 1);
        let path = loose_path(2, 3);
        assert_eq!(path.n(), 5);
        assert!(validate(&path).is_tree());
        let disjoint = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let c = validate(&disjoint);
        assert_eq!(c.component_count, 2);
        assert!(!c.connected && c.acyclic);
    }

    #[test]
    fn detects_cycles() {
        // two edges sharing two vertices form a 2-cycle
        let g = Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let c = validate(&g);
        assert!(c.connected && !c.acyclic);
        assert_eq!(c.cycle_edges, Some(vec![0, 1]));
        let tri = Hypergraph::new(2, 3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(!validate(&tri).acyclic);
    }

    #[test]
    fn structural_errors() {
        assert_eq!(Hypergraph::new(1, 2, vec![]), Err(HypertreeError::UniformityTooSmall(1)));
        assert!(matches!(Hypergraph::new(3, 3, vec![vec![0, 1]]), Err(HypertreeError::WrongEdgeSize { .. })));
        assert!(matches!(Hypergraph::new(3, 3, vec![vec![0, 1, 1]]), Err(HypertreeError::DuplicateVertex { .. })));
        assert!(matches!(Hypergraph::new(3, 3, vec![vec![0, 1, 3]]), Err(HypertreeError::VertexOutOfRange { .. })));
        assert!(matches!(
            Hypergraph::new(3, 3, vec![vec![0, 1, 2], vec![2, 1, 0]]),
            Err(HypertreeError::DuplicateEdge { first: 0, second: 1 })
        ));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degrees(&single_edge()), vec![1, 1, 1]);
        assert_eq!(degrees(&loose_path(2, 3)), vec![1, 1, 2, 1, 1]);
        let d = degrees(&star(3, 3));
        assert_eq!(d[0], 3);
        assert!(d[1..].iter().all(|&x| x == 1));
    }

    #[test]
    fn pendant_examples() {
        assert!(pendant_edges(&single_edge()).is_empty());
        assert_eq!(pendant_edges(&loose_path(2, 3)), vec![0, 1]);
        assert_eq!(pendant_edges(&loose_path(3, 3)), vec![0, 2]);
    }

    #[test]
    fn subtree_counts() {
        let count = |g: Hypergraph| enumerate_subtrees(&WeightedHypertree::unit(g).unwrap()).count();
        assert_eq!(count(single_edge()), 4);
        assert_eq!(count(loose_path(2, 3)), 8);
        assert_eq!(count(star(3, 3)), 14);
        let t = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        let edge_sets: Vec<Vec<usize>> = enumerate_subtrees(&t).filter(|s| !s.is_singleton()).map(|s| s.edge_indices).collect();
        assert_eq!(edge_sets, vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn peel_examples() {
        let t = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        let target = t.subtree_from_edges(&[0]).unwrap();
        assert_eq!(peel_sequence(&t, &target).unwrap(), vec![1]);
        let t3 = WeightedHypertree::unit(loose_path(3, 3)).unwrap();
        let mid = t3.subtree_from_edges(&[1]).unwrap();
        assert_eq!(peel_sequence(&t3, &mid).unwrap(), vec![0, 2]);
        assert_eq!(peel_sequence(&t3, &t3.whole()).unwrap(), Vec::<usize>::new());
        assert_eq!(replay_peel(&t3, &[0, 2], None), mid);
    }

    #[test]
    fn peel_to_singleton_and_errors() {
        let t = WeightedHypertree::unit(loose_path(3, 3)).unwrap();
        let seq = peel_sequence(&t, &Subtree::singleton(0)).unwrap();
        assert_eq!(seq, vec![2, 1, 0]);
        assert_eq!(replay_peel(&t, &seq, Some(0)), Subtree::singleton(0));
        let bogus = Subtree { edge_indices: vec![0, 2], vertex_set: vec![0, 1, 2, 4, 5, 6] };
        assert!(matches!(peel_sequence(&t, &bogus), Err(HypertreeError::NotASubtree(_))));
    }

    #[test]
    fn prune_examples() {
        let g = loose_path(2, 3);
        let t = WeightedHypertree::unit(g.clone()).unwrap();
        let comps = prune_zero_edges(&t);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].tree, t);

        let mut w = Weighting::unit(&g);
        w.edge_weights[1] = Scalar::integer(0);
        let t = WeightedHypertree::new(g.clone(), w.clone()).unwrap();
        let comps = prune_zero_edges(&t);
        let ids: Vec<Vec<usize>> = comps.iter().map(|c| c.vertex_ids.clone()).collect();
        assert_eq!(ids, vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert_eq!(comps[0].tree.m(), 1);

        w.edge_weights[0] = Scalar::integer(0);
        let t = WeightedHypertree::new(g, w).unwrap();
        let comps = prune_zero_edges(&t);
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.tree.n() == 1 && c.tree.m() == 0));
    }

    #[test]
    fn corollary_weightings() {
        let w = corollary_weighting(&single_edge(), LaplacianSign::Signless);
        assert_eq!(w.vertex_weights, vec![Scalar::integer(1); 3]);
        assert_eq!(w.edge_weights, vec![Scalar::integer(1)]);
        let w = corollary_weighting(&single_edge(), LaplacianSign::Laplacian);
        assert_eq!(w.edge_weights, vec![Scalar::integer(-1)]);
        let w = corollary_weighting(&star(3, 3), LaplacianSign::Signless);
        assert_eq!(w.vertex_weights[0], Scalar::integer(3));
        assert!(w.vertex_weights[1..].iter().all(|x| *x == Scalar::integer(1)));
    }

    #[test]
    fn nonnegative_predicate() {
        let g = single_edge();
        assert!(Weighting::unit(&g).is_nonnegative());
        let mut w = Weighting::unit(&g);
        w.edge_weights[0] = Scalar::integer(0);
        assert!(!w.is_nonnegative());
        w.edge_weights[0] = Scalar::complex(1.0, 0.5);
        assert!(!w.is_nonnegative());
    }

    #[test]
    fn weight_length_mismatch() {
        let g = single_edge();
        let w = Weighting { vertex_weights: vec![], edge_weights: vec![Scalar::integer(1)] };
        assert!(matches!(WeightedHypertree::new(g, w), Err(HypertreeError::WeightLength { .. })));
    }
}
