//! The adjacency tensor as an operator, used as the ground-truth oracle.
//!
//! The order-k tensor is never stored. Its action is evaluated edge by edge:
//! `(A x^{k-1})_v = w(v) x_v^{k-1} + Σ_{e∋v} w(e) Π_{u∈e, u≠v} x_u`.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::hypertree::{degrees, validate, Component, WeightedHypergraph};
use crate::scalar::{complex_pair, complex_vec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TensorError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector is not an eigenvector")]
    ZeroVector,
    #[error("k = 2 is not supported here; for graphs the characteristic polynomial is the matching polynomial")]
    UniformityTwo,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("weights must be nonnegative (w(v) >= 0, w(e) > 0, all real)")]
    NotNonnegative,
    #[error("hypergraph is not connected")]
    NotConnected,
    #[error("power iteration did not converge in {iterations} steps: bracket [{lower}, {upper}]")]
    NoConvergence { iterations: usize, lower: f64, upper: f64 },
}

/// An eigenvalue with eigenvector and the residual it was checked at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    #[serde(with = "complex_pair")]
    pub lambda: Complex64,
    #[serde(with = "complex_vec")]
    pub x: Vec<Complex64>,
    pub residual: f64,
}

/// `x ↦ A x^{k-1}` for a weighted hypergraph.
#[derive(Clone, Copy, Debug)]
pub struct AdjacencyAction<'a> {
    graph: &'a WeightedHypergraph,
}

impl<'a> AdjacencyAction<'a> {
    pub fn new(graph: &'a WeightedHypergraph) -> Self {
        AdjacencyAction { graph }
    }

    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>, TensorError> {
        let g = self.graph;
        if x.len() != g.n() {
            return Err(TensorError::DimensionMismatch { expected: g.n(), got: x.len() });
        }
        let k = g.k() as i32;
        let vw = g.vertex_weights_c();
        let ew = g.edge_weights_c();
        let mut y: Vec<Complex64> = x.iter().zip(vw).map(|(xi, wi)| wi * xi.powi(k - 1)).collect();
        for (e, edge) in g.graph().edges().iter().enumerate() {
            for &v in edge {
                let others: Complex64 = edge.iter().filter(|&&u| u != v).map(|&u| x[u]).product();
                y[v] += ew[e] * others;
            }
        }
        Ok(y)
    }
}

pub fn apply(g: &WeightedHypergraph, x: &[Complex64]) -> Result<Vec<Complex64>, TensorError> {
    AdjacencyAction::new(g).apply(x)
}

/// `‖A x^{k-1} - λ x^{[k-1]}‖_∞ / max(1, ‖x‖_∞)^{k-1}`.
pub fn residual(g: &WeightedHypergraph, lambda: Complex64, x: &[Complex64]) -> Result<f64, TensorError> {
    let y = apply(g, x)?;
    let norm = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if norm == 0.0 {
        return Err(TensorError::ZeroVector);
    }
    let k = g.k() as i32;
    let worst = y
        .iter()
        .zip(x)
        .map(|(yi, xi)| (yi - lambda * xi.powi(k - 1)).norm())
        .fold(0.0, f64::max);
    Ok(worst / norm.max(1.0).powi(k - 1))
}

/// `(w(v), e_v)`: for `k >= 3` every edge term vanishes on a unit vector.
pub fn unit_eigenpair(g: &WeightedHypergraph, v: usize) -> Result<Eigenpair, TensorError> {
    if g.k() < 3 {
        return Err(TensorError::UniformityTwo);
    }
    if v >= g.n() {
        return Err(TensorError::Precondition(format!("vertex {v} out of range")));
    }
    let mut x = vec![Complex64::zero(); g.n()];
    x[v] = Complex64::one();
    let lambda = g.vertex_weights_c()[v];
    let residual = residual(g, lambda, &x)?;
    Ok(Eigenpair { lambda, x, residual })
}

/// Degree-one vertices of `edge` in `g`.
pub fn degree_one_vertices(g: &WeightedHypergraph, edge: usize) -> Vec<usize> {
    let d = degrees(g.graph());
    g.graph().edge(edge).iter().copied().filter(|&v| d[v] == 1).collect()
}

/// Lifts an eigenpair of `g ∖ edge` to `g` by zeroing the degree-one
/// vertices of `edge`.
///
/// `pair.x` is indexed by the vertices of `g`; its entries on the deleted
/// vertices are ignored. Requires at least two degree-one vertices in
/// `edge` and `pair` to have residual at most `tol` on `g ∖ edge`.
pub fn lift_eigenpair(g: &WeightedHypergraph, edge: usize, pair: &Eigenpair, tol: f64) -> Result<Eigenpair, TensorError> {
    if edge >= g.m() {
        return Err(TensorError::Precondition(format!("edge {edge} out of range")));
    }
    let deleted = degree_one_vertices(g, edge);
    if deleted.len() < 2 {
        return Err(TensorError::Precondition(format!(
            "edge {edge} has {} degree-one vertices, need at least 2",
            deleted.len()
        )));
    }
    let rest: Vec<usize> = (0..g.m()).filter(|&e| e != edge).collect();
    let reduced = g.with_edges(&rest);
    let mut x = pair.x.clone();
    if x.len() != g.n() {
        return Err(TensorError::DimensionMismatch { expected: g.n(), got: x.len() });
    }
    for &v in &deleted {
        x[v] = Complex64::zero();
    }
    let before = residual(&reduced, pair.lambda, &x)?;
    if before > tol {
        return Err(TensorError::Precondition(format!(
            "pair has residual {before:e} on the reduced hypergraph"
        )));
    }
    let after = residual(g, pair.lambda, &x)?;
    Ok(Eigenpair { lambda: pair.lambda, x, residual: after })
}

/// An eigenpair of one support component, in that component's coordinates.
#[derive(Clone, Debug)]
pub struct RestrictedPair {
    pub component: Component,
    pub pair: Eigenpair,
}

/// Splits an eigenpair along the components of the sub-hypergraph induced
/// on its support. Each restriction is an eigenpair with nowhere-zero
/// eigenvector.
pub fn restrict_eigenpair(g: &WeightedHypergraph, pair: &Eigenpair, tol: f64) -> Result<Vec<RestrictedPair>, TensorError> {
    let r = residual(g, pair.lambda, &pair.x)?;
    if r > tol {
        return Err(TensorError::Precondition(format!("pair has residual {r:e}")));
    }
    let in_support: Vec<bool> = pair.x.iter().map(|z| !z.is_zero()).collect();
    let induced: Vec<usize> = (0..g.m())
        .filter(|&e| g.graph().edge(e).iter().all(|&v| in_support[v]))
        .collect();
    let mut out = Vec::new();
    for vertices in g.components_with(&induced) {
        if !in_support[vertices[0]] {
            continue;
        }
        let edges: Vec<usize> = induced
            .iter()
            .copied()
            .filter(|&e| vertices.binary_search(&g.graph().edge(e)[0]).is_ok())
            .collect();
        let component = g
            .component(&vertices, &edges)
            .map_err(|e| TensorError::Precondition(format!("support component is not a tree: {e}")))?;
        let x = component.project(&pair.x);
        let residual = residual(&component.tree, pair.lambda, &x)?;
        out.push(RestrictedPair { component, pair: Eigenpair { lambda: pair.lambda, x, residual } });
    }
    Ok(out)
}

/// Result of the shifted power iteration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerIteration {
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    /// `(lower, upper)` bracket after each step.
    pub history: Vec<(f64, f64)>,
    pub eigenvector: Vec<f64>,
}

/// Spectral radius of a nonnegative connected weighted hypergraph.
///
/// Iterates `x ← normalize(((A + I) x^{k-1})^{[1/(k-1)]})` from the all-ones
/// vector. At each step `min_v`/`max_v` of `((A + I) x^{k-1})_v / x_v^{k-1}`
/// bracket `ρ(A) + 1`; stops when the bracket is narrower than `tol`.
pub fn power_spectral_radius(g: &WeightedHypergraph, tol: f64, max_iters: usize) -> Result<PowerIteration, TensorError> {
    if !g.weights().is_nonnegative() {
        return Err(TensorError::NotNonnegative);
    }
    if !validate(g.graph()).connected {
        return Err(TensorError::NotConnected);
    }
    let vw: Vec<f64> = g.vertex_weights_c().iter().map(|z| z.re).collect();
    let ew: Vec<f64> = g.edge_weights_c().iter().map(|z| z.re).collect();
    let k = g.k();
    let n = g.n();
    let mut x = vec![1.0f64; n];
    let mut history = Vec::new();
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for it in 1..=max_iters {
        let mut y: Vec<f64> = (0..n).map(|v| (vw[v] + 1.0) * x[v].powi(k as i32 - 1)).collect();
        for (e, edge) in g.graph().edges().iter().enumerate() {
            for &v in edge {
                let others: f64 = edge.iter().filter(|&&u| u != v).map(|&u| x[u]).product();
                y[v] += ew[e] * others;
            }
        }
        lower = f64::INFINITY;
        upper = 0.0;
        for v in 0..n {
            let ratio = y[v] / x[v].powi(k as i32 - 1);
            lower = f64::min(lower, ratio);
            upper = f64::max(upper, ratio);
        }
        history.push((lower - 1.0, upper - 1.0));
        let mut next: Vec<f64> = y.iter().map(|yi| yi.powf(1.0 / (k - 1) as f64)).collect();
        let norm = next.iter().copied().fold(0.0, f64::max);
        next.iter_mut().for_each(|z| *z /= norm);
        x = next;
        if upper - lower <= tol {
            return Ok(PowerIteration {
                radius: 0.5 * (lower + upper) - 1.0,
                lower: lower - 1.0,
                upper: upper - 1.0,
                iterations: it,
                history,
                eigenvector: x,
            });
        }
    }
    Err(TensorError::NoConvergence { iterations: max_iters, lower: lower - 1.0, upper: upper - 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::shapes::*;
    use crate::hypertree::{corollary_weighting, LaplacianSign, WeightedHypertree, Weighting};
    use crate::scalar::Scalar;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn apply_examples() {
        let t = WeightedHypertree::unit(single_edge()).unwrap();
        let w = Weighting { vertex_weights: vec![Scalar::integer(1); 3], edge_weights: vec![Scalar::integer(1)] };
        let t1 = WeightedHypertree::new(single_edge(), w).unwrap();
        assert_eq!(apply(&t, &[c(1.0); 3]).unwrap(), vec![c(1.0); 3]);
        assert_eq!(apply(&t1, &[c(1.0); 3]).unwrap(), vec![c(2.0); 3]);
        let x = vec![c(0.0), c(1.0), c(0.0)];
        assert_eq!(apply(&t1, &x).unwrap(), vec![c(0.0), c(1.0), c(0.0)]);
        assert!(matches!(apply(&t, &[c(1.0)]), Err(TensorError::DimensionMismatch { .. })));
    }

    #[test]
    fn residual_examples() {
        let t = WeightedHypertree::unit(single_edge()).unwrap();
        assert_eq!(residual(&t, c(1.0), &[c(1.0); 3]).unwrap(), 0.0);
        assert_eq!(residual(&t, c(2.0), &[c(1.0); 3]).unwrap(), 1.0);
        assert_eq!(residual(&t, c(0.0), &[c(0.0), c(1.0), c(0.0)]).unwrap(), 0.0);
        assert_eq!(residual(&t, c(1.0), &[c(0.0); 3]), Err(TensorError::ZeroVector));
    }

    #[test]
    fn unit_pairs() {
        let p = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        for v in 0..5 {
            let pair = unit_eigenpair(&p, v).unwrap();
            assert_eq!(pair.lambda, c(0.0));
            assert_eq!(pair.residual, 0.0);
        }
        let g = star(3, 3);
        let w = corollary_weighting(&g, LaplacianSign::Laplacian);
        let s = WeightedHypertree::new(g, w).unwrap();
        let pair = unit_eigenpair(&s, 0).unwrap();
        assert_eq!((pair.lambda, pair.residual), (c(3.0), 0.0));
        let g2 = crate::hypertree::Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        let e2 = WeightedHypertree::unit(g2).unwrap();
        assert_eq!(unit_eigenpair(&e2, 0), Err(TensorError::UniformityTwo));
    }

    #[test]
    fn lift_and_restrict() {
        let p = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        let reduced = Eigenpair { lambda: c(1.0), x: vec![c(1.0), c(1.0), c(1.0), c(7.0), c(7.0)], residual: 0.0 };
        let lifted = lift_eigenpair(&p, 1, &reduced, 1e-12).unwrap();
        assert_eq!(lifted.x, vec![c(1.0), c(1.0), c(1.0), c(0.0), c(0.0)]);
        assert_eq!(lifted.residual, 0.0);
        let parts = restrict_eigenpair(&p, &lifted, 1e-12).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].component.vertex_ids, vec![0, 1, 2]);
        assert_eq!(parts[0].pair.x, vec![c(1.0); 3]);
        assert_eq!(parts[0].pair.residual, 0.0);

        let zero = Eigenpair { lambda: c(0.0), x: vec![c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)], residual: 0.0 };
        assert_eq!(lift_eigenpair(&p, 1, &zero, 1e-12).unwrap().lambda, c(0.0));
        let parts = restrict_eigenpair(&p, &unit_eigenpair(&p, 3).unwrap(), 1e-12).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].component.tree.n(), 1);
        assert_eq!(parts[0].pair.lambda, c(0.0));
    }

    #[test]
    fn lift_preconditions() {
        let p = WeightedHypertree::unit(loose_path(3, 3)).unwrap();
        let pair = Eigenpair { lambda: c(1.0), x: vec![c(1.0); 7], residual: 0.0 };
        // middle edge has only one degree-one vertex
        assert!(matches!(lift_eigenpair(&p, 1, &pair, 1e-9), Err(TensorError::Precondition(_))));
        // not an eigenpair of the remainder
        assert!(matches!(lift_eigenpair(&p, 2, &pair, 1e-9), Err(TensorError::Precondition(_))));
    }

    #[test]
    fn power_examples() {
        let t = WeightedHypertree::unit(single_edge()).unwrap();
        assert!((power_spectral_radius(&t, 1e-12, 10_000).unwrap().radius - 1.0).abs() < 1e-9);
        let p = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        let r = power_spectral_radius(&p, 1e-10, 100_000).unwrap();
        assert!((r.radius - 2f64.powf(1.0 / 3.0)).abs() < 1e-6, "{r:?}");
        let w = corollary_weighting(&single_edge(), LaplacianSign::Signless);
        let q = WeightedHypertree::new(single_edge(), w).unwrap();
        assert!((power_spectral_radius(&q, 1e-10, 10_000).unwrap().radius - 2.0).abs() < 1e-6);
        let w = corollary_weighting(&single_edge(), LaplacianSign::Laplacian);
        let l = WeightedHypertree::new(single_edge(), w).unwrap();
        assert_eq!(power_spectral_radius(&l, 1e-10, 10), Err(TensorError::NotNonnegative));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn homogeneous_of_degree_k_minus_one(
                re in -2.0f64..2.0, im in -2.0f64..2.0,
                xs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 7),
            ) {
                let t = WeightedHypertree::unit(loose_path(3, 3)).unwrap();
                let x: Vec<Complex64> = xs.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
                let s = Complex64::new(re, im);
                let scaled: Vec<Complex64> = x.iter().map(|z| s * z).collect();
                let lhs = apply(&t, &scaled).unwrap();
                let rhs = apply(&t, &x).unwrap();
                for (a, b) in lhs.iter().zip(&rhs) {
                    prop_assert!((a - s.powi(2) * b).norm() <= 1e-12 * (1.0 + a.norm()));
                }
            }
        }
    }
}
