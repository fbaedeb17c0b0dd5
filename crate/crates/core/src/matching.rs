//! Matchings and weighted matching polynomials.
//!
//! `μ(H, w, x) = Σ_M (-1)^|M| Π_{e∈M} w(e)^k Π_{v∉V(M)} (x - w(v))`, summed
//! over all matchings including the empty one. The definitional sum is
//! always available; [`matching_polynomial_dp`] computes the same
//! polynomial on forests by a rooted bottom-up recursion.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::hypertree::{validate, Hypergraph, WeightedHypergraph};
use crate::poly::{Coefficient, Poly, Polynomial};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatchingError {
    #[error("pole: lambda for edge {edge} equals the weight of vertex {vertex}")]
    Pole { edge: usize, vertex: usize },
    #[error("expected {expected} edge values, got {got}")]
    LambdaCount { expected: usize, got: usize },
    #[error("the hypergraph has a cycle; the recursion needs a forest")]
    NotAForest,
}

/// A set of pairwise vertex-disjoint edges, as ascending edge indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub edge_indices: Vec<usize>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }
}

/// Every matching of `graph` (the empty one first), by depth-first
/// exclude/include branching over edges in index order.
pub fn enumerate_matchings(graph: &Hypergraph) -> impl Iterator<Item = Matching> {
    let mut out = Vec::new();
    let mut used = vec![false; graph.n()];
    let mut chosen = Vec::new();
    matchings_from(graph, 0, &mut used, &mut chosen, &mut out);
    out.into_iter()
}

fn matchings_from(
    graph: &Hypergraph,
    next: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Matching>,
) {
    if next == graph.m() {
        out.push(Matching { edge_indices: chosen.clone() });
        return;
    }
    matchings_from(graph, next + 1, used, chosen, out);
    let edge = graph.edge(next);
    if edge.iter().all(|&v| !used[v]) {
        for &v in edge {
            used[v] = true;
        }
        chosen.push(next);
        matchings_from(graph, next + 1, used, chosen, out);
        chosen.pop();
        for &v in edge {
            used[v] = false;
        }
    }
}

fn weights_as<T: Coefficient>(g: &WeightedHypergraph) -> (Vec<T>, Vec<T>) {
    let conv = |s| T::from_scalar(s).expect("backend chosen to hold every weight");
    (
        g.weights().vertex_weights.iter().map(conv).collect(),
        g.weights().edge_weights.iter().map(conv).collect(),
    )
}

fn pow<T: Coefficient>(base: &T, exp: usize) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

fn dispatch(g: &WeightedHypergraph, exact: impl Fn() -> Poly<BigRational>, float: impl Fn() -> Poly<Complex64>) -> Polynomial {
    if g.weights().is_rational() {
        Polynomial::Rational(exact())
    } else {
        Polynomial::Complex(float())
    }
}

/// Weighted matching polynomial from its definition. Accepts any weighted
/// k-graph, including forests and cyclic graphs.
pub fn matching_polynomial(g: &WeightedHypergraph) -> Polynomial {
    dispatch(g, || definitional::<BigRational>(g), || definitional::<Complex64>(g))
}

fn definitional<T: Coefficient>(g: &WeightedHypergraph) -> Poly<T> {
    let (vw, ew) = weights_as::<T>(g);
    let k = g.k();
    let mut total = Poly::zero();
    for matching in enumerate_matchings(g.graph()) {
        let mut covered = vec![false; g.n()];
        let mut coeff = T::one();
        for &e in &matching.edge_indices {
            coeff = coeff * -pow(&ew[e], k);
            for &v in g.graph().edge(e) {
                covered[v] = true;
            }
        }
        let term = (0..g.n())
            .filter(|&v| !covered[v])
            .fold(Poly::constant(coeff), |acc, v| acc.mul(&Poly::linear(vw[v].clone())));
        total = total.add(&term);
    }
    total
}

/// Matching polynomial of a weighted forest by dynamic programming.
///
/// Each component is rooted at its smallest vertex. For a vertex `v`,
/// `free(v)` sums over matchings below `v` that leave `v` uncovered
/// (without the factor for `v` itself) and `covered(v)` over those where a
/// child edge covers `v`. A child edge can be taken only when every one of
/// its child vertices is free below.
pub fn matching_polynomial_dp(g: &WeightedHypergraph) -> Result<Polynomial, MatchingError> {
    if !validate(g.graph()).acyclic {
        return Err(MatchingError::NotAForest);
    }
    Ok(dispatch(g, || tree_dp::<BigRational>(g), || tree_dp::<Complex64>(g)))
}

fn tree_dp<T: Coefficient>(g: &WeightedHypergraph) -> Poly<T> {
    let (vw, ew) = weights_as::<T>(g);
    let k = g.k();
    let n = g.n();
    let inc = g.graph().incidence();
    let mut seen_vertex = vec![false; n];
    let mut seen_edge = vec![false; g.m()];
    let mut free: Vec<Poly<T>> = vec![Poly::one(); n];
    let mut total_below: Vec<Poly<T>> = vec![Poly::zero(); n];
    let mut result = Poly::one();

    for root in 0..n {
        if seen_vertex[root] {
            continue;
        }
        // breadth-first order; child edges of each vertex recorded on the way
        let mut order = vec![root];
        let mut child_edges: Vec<(usize, Vec<usize>)> = Vec::new();
        seen_vertex[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let mut mine = Vec::new();
            for &e in &inc[v] {
                if seen_edge[e] {
                    continue;
                }
                seen_edge[e] = true;
                mine.push(e);
                for &u in g.graph().edge(e) {
                    if u != v {
                        seen_vertex[u] = true;
                        order.push(u);
                    }
                }
            }
            child_edges.push((v, mine));
        }
        for (v, edges) in child_edges.iter().rev() {
            let mut not_taken = Vec::with_capacity(edges.len());
            let mut taken = Vec::with_capacity(edges.len());
            for &e in edges {
                let kids = g.graph().edge(e).iter().filter(|&&u| u != *v);
                let (all, free_all) = kids.fold((Poly::one(), Poly::one()), |(a, f), &u| {
                    (a.mul(&total_below[u]), f.mul(&free[u]))
                });
                not_taken.push(all);
                taken.push(free_all.scale(&-pow(&ew[e], k)));
            }
            let free_v = not_taken.iter().fold(Poly::one(), |acc, p| acc.mul(p));
            let mut covered_v = Poly::zero();
            for (i, t) in taken.iter().enumerate() {
                let rest = not_taken
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(t.clone(), |acc, (_, p)| acc.mul(p));
                covered_v = covered_v.add(&rest);
            }
            total_below[*v] = Poly::linear(vw[*v].clone()).mul(&free_v).add(&covered_v);
            free[*v] = free_v;
        }
        result = result.mul(&total_below[root]);
    }
    result
}

/// `φ(T, x) = Σ_i (-1)^i p(T, i) x^{(m(T) - i) k}` where `p(T, i)` counts
/// i-matchings and `m(T)` is the matching number.
pub fn phi_polynomial(graph: &Hypergraph) -> Polynomial {
    let mut counts: Vec<usize> = Vec::new();
    for matching in enumerate_matchings(graph) {
        if counts.len() <= matching.len() {
            counts.resize(matching.len() + 1, 0);
        }
        counts[matching.len()] += 1;
    }
    let matching_number = counts.len() - 1;
    let k = graph.k();
    let mut coeffs = vec![BigRational::zero(); matching_number * k + 1];
    for (i, &count) in counts.iter().enumerate() {
        let c = BigRational::from_integer(count.into());
        coeffs[(matching_number - i) * k] = if i % 2 == 0 { c } else { -c };
    }
    Polynomial::Rational(Poly::new(coeffs))
}

/// Matching number: size of a largest matching.
pub fn matching_number(graph: &Hypergraph) -> usize {
    enumerate_matchings(graph).map(|m| m.len()).max().unwrap_or(0)
}

/// Evaluates `μ̃ = Σ_M (-1)^|M| Π_{e∈M} Π_{v∈e} w(e) / (λ_e - w(v))` at one
/// value per edge.
pub fn eval_mu_tilde(g: &WeightedHypergraph, lambdas: &[Complex64]) -> Result<Complex64, MatchingError> {
    if lambdas.len() != g.m() {
        return Err(MatchingError::LambdaCount { expected: g.m(), got: lambdas.len() });
    }
    let chi = edge_factors(g, lambdas)?;
    Ok(enumerate_matchings(g.graph())
        .map(|m| {
            let sign = if m.len() % 2 == 0 { 1.0 } else { -1.0 };
            m.edge_indices.iter().fold(Complex64::new(sign, 0.0), |acc, &e| acc * chi[e])
        })
        .sum())
}

/// `Π_{v∈e} w(e) / (λ_e - w(v))` for each edge.
pub fn edge_factors(g: &WeightedHypergraph, lambdas: &[Complex64]) -> Result<Vec<Complex64>, MatchingError> {
    let vw = g.vertex_weights_c();
    let ew = g.edge_weights_c();
    (0..g.m())
        .map(|e| {
            g.graph().edge(e).iter().try_fold(Complex64::one(), |acc, &v| {
                let gap = lambdas[e] - vw[v];
                if gap.is_zero() {
                    Err(MatchingError::Pole { edge: e, vertex: v })
                } else {
                    Ok(acc * ew[e] / gap)
                }
            })
        })
        .collect()
}
