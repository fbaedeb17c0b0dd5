//! Weighted incidence matrices and the normal-labeling calculus.
//!
//! A matrix `B` makes a hypergraph normal at `λ` when
//! * every row sums to one: `Σ_{e∋v} B(v,e) = 1` (C1),
//! * every column matches the edge: `Π_{v∈e} B(v,e) = Π_{v∈e} w(e)/(λ − w(v))` (C2),
//! * every cycle `v_0 e_1 v_1 … e_l v_l = v_0` has
//!   `Π_i B(v_i,e_i)(λ − w(v_i)) / (B(v_{i−1},e_i)(λ − w(v_{i−1}))) = 1` (C3).
//!
//! On trees C3 is vacuous, and a normal `B` is the same data as an eigenvector
//! with no zero entries.

use std::collections::{BTreeMap, VecDeque};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::hypertree::{WeightedHypergraph, WeightedHypertree};
use crate::matching::{edge_factors, eval_mu_tilde, MatchingError};
pub use crate::tensor::Eigenpair;
use crate::tensor::{residual, TensorError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NormalError {
    #[error("pole: lambda equals the weight of vertex {vertex}")]
    Pole { vertex: usize },
    #[error("construction is singular: B({vertex}, {edge}) vanishes where it is needed as a divisor")]
    Singular { vertex: usize, edge: usize },
    #[error("lambda is not a root for this tree: root row sum misses 1 by {residual:e}")]
    NotARoot { residual: f64 },
    #[error("eigenvector coordinate {vertex} is zero")]
    ZeroCoordinate { vertex: usize },
    #[error("entry ({vertex}, {edge}) does not lie on the incidence pattern")]
    OffPattern { vertex: usize, edge: usize },
    #[error("hypertree has no edges")]
    NoEdges,
    #[error("synthesized eigenvector has residual {residual:e} above tolerance")]
    ResidualTooLarge { residual: f64 },
    #[error("expected {expected} edge values, got {got}")]
    LambdaCount { expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl From<MatchingError> for NormalError {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::Pole { vertex, .. } => NormalError::Pole { vertex },
            MatchingError::LambdaCount { expected, got } => NormalError::LambdaCount { expected, got },
            other => NormalError::Precondition(other.to_string()),
        }
    }
}

/// Sparse vertex-by-edge matrix. Absent entries read as zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedIncidenceMatrix {
    entries: BTreeMap<(usize, usize), Complex64>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    v: usize,
    e: usize,
    #[serde(with = "crate::scalar::complex_pair")]
    value: Complex64,
}

impl WeightedIncidenceMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a matrix for `g`, rejecting entries off the incidence pattern.
    pub fn from_entries(
        g: &WeightedHypergraph,
        entries: impl IntoIterator<Item = ((usize, usize), Complex64)>,
    ) -> Result<Self, NormalError> {
        let b = WeightedIncidenceMatrix { entries: entries.into_iter().collect() };
        b.check_pattern(g)?;
        Ok(b)
    }

    pub fn check_pattern(&self, g: &WeightedHypergraph) -> Result<(), NormalError> {
        for &(vertex, edge) in self.entries.keys() {
            if edge >= g.m() || g.graph().edge(edge).binary_search(&vertex).is_err() {
                return Err(NormalError::OffPattern { vertex, edge });
            }
        }
        Ok(())
    }

    pub fn get(&self, v: usize, e: usize) -> Complex64 {
        self.entries.get(&(v, e)).copied().unwrap_or_else(Complex64::zero)
    }

    pub(crate) fn set(&mut self, v: usize, e: usize, value: Complex64) {
        self.entries.insert((v, e), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        let keys = self.entries.keys().chain(other.entries.keys());
        keys.map(|&(v, e)| (self.get(v, e) - other.get(v, e)).norm()).fold(0.0, f64::max)
    }
}

impl Serialize for WeightedIncidenceMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|((v, e), value)| Entry { v, e, value }))
    }
}

impl<'de> Deserialize<'de> for WeightedIncidenceMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(WeightedIncidenceMatrix { entries: entries.into_iter().map(|x| ((x.v, x.e), x.value)).collect() })
    }
}

/// Per-condition residuals and verdicts. `c3_ok` is `None` when cycles were
/// not examined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalReport {
    pub c1_residuals: Vec<f64>,
    pub c2_residuals: Vec<f64>,
    pub c3_residuals: Vec<f64>,
    pub c1_ok: bool,
    pub c2_ok: bool,
    pub c3_ok: Option<bool>,
}

impl NormalReport {
    pub fn is_normal(&self) -> bool {
        self.c1_ok && self.c2_ok
    }

    pub fn is_consistent(&self) -> bool {
        self.is_normal() && self.c3_ok.unwrap_or(false)
    }
}

fn all_within(values: &[f64], tol: f64) -> bool {
    values.iter().all(|&r| r <= tol)
}

/// Evaluates C1 and C2 with one `λ_e` per edge. C2 residuals are relative
/// to `max(1, |χ(e)|)` with `χ` from [`edge_factors`].
pub fn check_normal(
    g: &WeightedHypergraph,
    b: &WeightedIncidenceMatrix,
    lambdas: &[Complex64],
    tol: f64,
) -> Result<NormalReport, NormalError> {
    b.check_pattern(g)?;
    let chi = edge_factors(g, lambdas)?;
    let mut row = vec![Complex64::zero(); g.n()];
    for ((v, _), value) in b.iter() {
        row[v] += value;
    }
    let c1_residuals: Vec<f64> = row.iter().map(|s| (s - 1.0).norm()).collect();
    let c2_residuals: Vec<f64> = g
        .graph()
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let prod: Complex64 = edge.iter().map(|&v| b.get(v, e)).product();
            // χ(e) blows up as λ approaches a vertex weight
            (prod - chi[e]).norm() / chi[e].norm().max(1.0)
        })
        .collect();
    Ok(NormalReport {
        c1_ok: all_within(&c1_residuals, tol),
        c2_ok: all_within(&c2_residuals, tol),
        c1_residuals,
        c2_residuals,
        c3_residuals: Vec::new(),
        c3_ok: None,
    })
}

/// Evaluates C1, C2 and C3 at a constant `λ` on any uniform hypergraph,
/// including graphs (`k = 2`).
///
/// C3 is multiplicative along walks of the incidence graph, so it suffices
/// to check the fundamental cycles of a breadth-first spanning forest.
pub fn check_consistent(
    g: &WeightedHypergraph,
    b: &WeightedIncidenceMatrix,
    lambda: Complex64,
    tol: f64,
) -> Result<NormalReport, NormalError> {
    let mut report = check_normal(g, b, &vec![lambda; g.m()], tol)?;
    let gap = |v: usize, e: usize| b.get(v, e) * (lambda - g.vertex_weights_c()[v]);

    // incidence graph: vertices 0..n, edges n..n+m
    let (n, m) = (g.n(), g.m());
    let incidence = g.graph().incidence();
    let neighbours = |node: usize| -> Vec<usize> {
        if node < n {
            incidence[node].iter().map(|&e| n + e).collect()
        } else {
            g.graph().edge(node - n).to_vec()
        }
    };
    let mut parent = vec![usize::MAX; n + m];
    let mut depth = vec![0usize; n + m];
    let mut seen = vec![false; n + m];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for c in neighbours(a) {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = a;
                    depth[c] = depth[a] + 1;
                    queue.push_back(c);
                }
            }
        }
    }
    let chords: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| incidence[v].iter().map(move |&e| (v, n + e)))
        .filter(|&(v, e_node)| parent[e_node] != v && parent[v] != e_node)
        .collect();

    for (v, e_node) in chords {
        // tree path v → lca ← e_node, then the chord closes it
        let (mut a, mut c) = (v, e_node);
        let (mut up, mut down) = (vec![a], vec![c]);
        while a != c {
            if depth[a] >= depth[c] {
                a = parent[a];
                up.push(a);
            } else {
                c = parent[c];
                down.push(c);
            }
        }
        down.pop();
        up.extend(down.into_iter().rev());
        // `up` walks v … e_node; appending v closes the cycle
        up.push(v);
        let mut product = Complex64::one();
        for w in up.windows(3).step_by(2) {
            let (prev, edge, next) = (w[0], w[1] - n, w[2]);
            let denom = gap(prev, edge);
            if denom.is_zero() {
                return Err(NormalError::Singular { vertex: prev, edge });
            }
            product *= gap(next, edge) / denom;
        }
        report.c3_residuals.push((product - 1.0).norm());
    }
    report.c3_ok = Some(all_within(&report.c3_residuals, tol));
    Ok(report)
}

fn check_poles(g: &WeightedHypergraph, lambda: Complex64, tol: f64) -> Result<(), NormalError> {
    for (v, w) in g.vertex_weights_c().iter().enumerate() {
        if (lambda - w).norm() <= tol * (1.0 + lambda.norm()) {
            return Err(NormalError::Pole { vertex: v });
        }
    }
    Ok(())
}

/// Breadth-first rooting at `root`: edges in discovery order with their
/// parent vertex, and for each vertex its child edges.
struct Rooting {
    order: Vec<(usize, usize)>,
    child_edges: Vec<Vec<usize>>,
}

fn rooted_at(t: &WeightedHypertree, root: usize) -> Rooting {
    let incidence = t.graph().incidence();
    let mut edge_seen = vec![false; t.m()];
    let mut order = Vec::with_capacity(t.m());
    let mut child_edges = vec![Vec::new(); t.n()];
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        for &e in &incidence[p] {
            if edge_seen[e] {
                continue;
            }
            edge_seen[e] = true;
            order.push((e, p));
            child_edges[p].push(e);
            queue.extend(t.graph().edge(e).iter().copied().filter(|&u| u != p));
        }
    }
    Rooting { order, child_edges }
}

/// A vanishing divisor means either that `λ` is not a root at all or that
/// this rooting is singular; `μ̃(λ, …, λ)` tells the two apart.
fn breakdown(t: &WeightedHypertree, lambda: Complex64, chi: &[Complex64], tol: f64, vertex: usize, edge: usize) -> NormalError {
    let scale = 1.0 + chi.iter().map(|z| z.norm()).sum::<f64>();
    match eval_mu_tilde(t, &vec![lambda; t.m()]) {
        Ok(value) if value.norm() > tol * scale => NormalError::NotARoot { residual: value.norm() },
        _ => NormalError::Singular { vertex, edge },
    }
}

/// Solves C1 and C2 from the leaves up, rooted at vertex 0.
///
/// Each non-root vertex gets `B(v, parent edge) = 1 − Σ_{child g} B(v,g)`
/// and each edge gives its parent vertex whatever C2 leaves over. The
/// remaining C1 equation at the root holds exactly when `λ` is a root of the
/// tree's matching polynomial; it is checked relative to the size of the
/// root entries.
pub fn build_normal_matrix(t: &WeightedHypertree, lambda: Complex64, tol: f64) -> Result<WeightedIncidenceMatrix, NormalError> {
    build_normal_matrix_rooted(t, lambda, 0, tol)
}

/// [`build_normal_matrix`] with the recursion rooted at `root`. A normal
/// matrix does not depend on the rooting, but rounding and vanishing
/// divisors do.
pub fn build_normal_matrix_rooted(
    t: &WeightedHypertree,
    lambda: Complex64,
    root: usize,
    tol: f64,
) -> Result<WeightedIncidenceMatrix, NormalError> {
    if root >= t.n() {
        return Err(NormalError::Precondition(format!("root {root} out of range")));
    }
    if t.m() == 0 {
        return Err(NormalError::NoEdges);
    }
    check_poles(t, lambda, tol)?;
    let chi = edge_factors(t, &vec![lambda; t.m()])?;
    let rooting = rooted_at(t, root);
    let mut b = WeightedIncidenceMatrix::new();
    for &(e, p) in rooting.order.iter().rev() {
        let mut below = Complex64::one();
        for &u in t.graph().edge(e) {
            if u == p {
                continue;
            }
            let mut entry = Complex64::one();
            for &g in &rooting.child_edges[u] {
                entry -= b.get(u, g);
            }
            if entry.norm() <= tol {
                return Err(breakdown(t, lambda, &chi, tol, u, e));
            }
            b.set(u, e, entry);
            below *= entry;
        }
        b.set(p, e, chi[e] / below);
    }
    let terms: Vec<Complex64> = rooting.child_edges[root].iter().map(|&e| b.get(root, e)).collect();
    let residual = (terms.iter().sum::<Complex64>() - 1.0).norm();
    // relative to the size of what was summed, so cancellation is not mistaken for a non-root
    let scale = terms.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
    if residual > tol * scale {
        return Err(NormalError::NotARoot { residual });
    }
    Ok(b)
}

/// Turns a normal matrix into an eigenvector with no zero entries.
///
/// Across each edge the coordinates satisfy
/// `(B(v,e)(λ − w(v)))^{1/k} x_v = const`. Principal roots are used, then one
/// child root per edge is rotated by a root of unity so that the product of
/// roots over the edge equals `w(e)` exactly.
pub fn eigenvector_from_normal(
    t: &WeightedHypertree,
    b: &WeightedIncidenceMatrix,
    lambda: Complex64,
    tol: f64,
) -> Result<Eigenpair, NormalError> {
    if t.m() == 0 {
        return Err(NormalError::NoEdges);
    }
    b.check_pattern(t)?;
    let k = t.k();
    let ew = t.edge_weights_c();
    let vw = t.vertex_weights_c();
    let rooting = rooted_at(t, 0);
    let mut x = vec![Complex64::zero(); t.n()];
    x[0] = Complex64::one();
    for &(e, p) in &rooting.order {
        let edge = t.graph().edge(e);
        let mut roots = Vec::with_capacity(k);
        for &v in edge {
            let tv = b.get(v, e) * (lambda - vw[v]);
            if tv.is_zero() {
                return Err(NormalError::Singular { vertex: v, edge: e });
            }
            roots.push((v, tv.powf(1.0 / k as f64)));
        }
        let omega = roots.iter().map(|r| r.1).product::<Complex64>() / ew[e];
        if let Some(first_child) = roots.iter_mut().find(|r| r.0 != p) {
            first_child.1 /= omega;
        }
        let sp = roots.iter().find(|r| r.0 == p).expect("parent lies on its edge").1;
        for &(u, su) in &roots {
            if u != p {
                x[u] = x[p] * sp / su;
            }
        }
    }
    let scale = *x.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("n >= 1");
    x.iter_mut().for_each(|z| *z /= scale);
    let residual = residual(t, lambda, &x)?;
    if residual > tol {
        return Err(NormalError::ResidualTooLarge { residual });
    }
    Ok(Eigenpair { lambda, x, residual })
}

/// Normal matrix and eigenvector on `t`, rooted at vertex 0 first and at the
/// other vertices in turn when that rooting breaks down. `build_tol` goes to
/// the matrix construction, `tol` bounds the eigenvector residual. When every
/// rooting fails the error of the first attempt is returned.
pub fn normal_eigenpair(
    t: &WeightedHypertree,
    lambda: Complex64,
    build_tol: f64,
    tol: f64,
) -> Result<(WeightedIncidenceMatrix, Eigenpair), NormalError> {
    let mut first = None;
    for root in 0..t.n() {
        let attempt = build_normal_matrix_rooted(t, lambda, root, build_tol)
            .and_then(|b| eigenvector_from_normal(t, &b, lambda, tol).map(|pair| (b, pair)));
        match attempt {
            Ok(found) => return Ok(found),
            Err(e @ (NormalError::Pole { .. } | NormalError::NoEdges)) => return Err(e),
            Err(e) => {
                first.get_or_insert(e);
            }
        }
    }
    Err(first.expect("trees have at least one vertex"))
}

/// `B(v,e) = w(e) Π_{u∈e} x_u / ((λ − w(v)) x_v^k)`.
pub fn normal_from_eigenpair(g: &WeightedHypergraph, pair: &Eigenpair, tol: f64) -> Result<WeightedIncidenceMatrix, NormalError> {
    if let Some(v) = pair.x.iter().position(|z| z.is_zero()) {
        return Err(NormalError::ZeroCoordinate { vertex: v });
    }
    check_poles(g, pair.lambda, 0.0)?;
    let r = residual(g, pair.lambda, &pair.x)?;
    if r > tol {
        return Err(NormalError::Precondition(format!("pair has residual {r:e}")));
    }
    let k = g.k() as i32;
    let mut b = WeightedIncidenceMatrix::new();
    for (e, edge) in g.graph().edges().iter().enumerate() {
        let xe: Complex64 = edge.iter().map(|&u| pair.x[u]).product();
        for &v in edge {
            let value = g.edge_weights_c()[e] * xe / ((pair.lambda - g.vertex_weights_c()[v]) * pair.x[v].powi(k));
            b.set(v, e, value);
        }
    }
    Ok(b)
}
