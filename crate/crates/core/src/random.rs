//! Seeded random hypertrees and weightings.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hypertree::{Hypergraph, WeightedHypertree, Weighting};
use crate::scalar::Scalar;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// `w(v) = 0`, `w(e) = 1`.
    Unit,
    /// Small signed fractions, nonzero on edges.
    Rational,
    /// Nonnegative fractions on vertices, positive on edges.
    Nonnegative,
    /// Complex values with parts in `[-1, 1]`.
    Complex,
}

/// A uniformly relabeled k-uniform hypertree with `m` edges, grown by
/// attaching each new edge at a random existing vertex.
pub fn random_hypergraph<R: Rng>(rng: &mut R, k: usize, m: usize) -> Hypergraph {
    let n = if m == 0 { 1 } else { m * (k - 1) + 1 };
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut next = 0;
    for i in 0..m {
        let mut edge = Vec::with_capacity(k);
        if i == 0 {
            edge.push(0);
            next = 1;
        } else {
            edge.push(rng.gen_range(0..next));
        }
        edge.extend(next..next + k - 1);
        next += k - 1;
        edges.push(edge);
    }
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges: Vec<Vec<usize>> = edges.into_iter().map(|e| e.into_iter().map(|v| labels[v]).collect()).collect();
    edges.shuffle(rng);
    Hypergraph::new(k, n, edges).expect("construction yields a valid hypertree")
}

fn fraction<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(lo..=hi), rng.gen_range(1..=3))
}

fn nonzero_fraction<R: Rng>(rng: &mut R, signed: bool) -> Scalar {
    let p = rng.gen_range(1..=4);
    let p = if signed && rng.gen_bool(0.5) { -p } else { p };
    Scalar::ratio(p, rng.gen_range(1..=3))
}

fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

pub fn random_weighting<R: Rng>(rng: &mut R, graph: &Hypergraph, kind: WeightKind) -> Weighting {
    let (n, m) = (graph.n(), graph.m());
    match kind {
        WeightKind::Unit => Weighting::unit(graph),
        WeightKind::Rational => Weighting {
            vertex_weights: (0..n).map(|_| fraction(rng, -4, 4)).collect(),
            edge_weights: (0..m).map(|_| nonzero_fraction(rng, true)).collect(),
        },
        WeightKind::Nonnegative => Weighting {
            vertex_weights: (0..n).map(|_| fraction(rng, 0, 4)).collect(),
            edge_weights: (0..m).map(|_| nonzero_fraction(rng, false)).collect(),
        },
        WeightKind::Complex => Weighting {
            vertex_weights: (0..n).map(|_| Scalar::from(complex(rng))).collect(),
            edge_weights: (0..m)
                .map(|_| loop {
                    let z = complex(rng);
                    if z.norm() > 0.1 {
                        break Scalar::from(z);
                    }
                })
                .collect(),
        },
    }
}

pub fn random_tree<R: Rng>(rng: &mut R, k: usize, m: usize, kind: WeightKind) -> WeightedHypertree {
    let graph = random_hypergraph(rng, k, m);
    let weights = random_weighting(rng, &graph, kind);
    WeightedHypertree::new(graph, weights).expect("weights match the graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::validate;

    #[test]
    fn trees_are_trees() {
        let mut rng = rng_from_seed(7);
        for m in 0..8 {
            for k in 3..6 {
                let g = random_hypergraph(&mut rng, k, m);
                assert!(validate(&g).is_tree());
                assert_eq!(g.n(), if m == 0 { 1 } else { m * (k - 1) + 1 });
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = random_tree(&mut rng_from_seed(3), 3, 5, WeightKind::Rational);
        let b = random_tree(&mut rng_from_seed(3), 3, 5, WeightKind::Rational);
        assert_eq!(a, b);
        let c = random_tree(&mut rng_from_seed(3), 3, 5, WeightKind::Nonnegative);
        assert!(c.weights().is_nonnegative());
    }
}
