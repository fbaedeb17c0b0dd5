//! The complete eigenvalue set of a weighted hypertree.
//!
//! Every vertex weight is an eigenvalue. Every other eigenvalue is a root of
//! the weighted matching polynomial of some subtree, and conversely each such
//! root can be certified by building a normal incidence matrix on the
//! subtree, turning it into an eigenvector and extending by zero.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hypertree::{
    corollary_weighting, peel_sequence, prune_zero_edges, Component, Hypergraph, HypertreeError, LaplacianSign,
    Subtree, WeightedHypertree,
};
use crate::matching::{matching_polynomial_dp, MatchingError};
use crate::normal::{normal_eigenpair, NormalError};
use crate::poly::{close, find_roots, largest_real_root, sort_roots, RootError};
use crate::scalar::complex_pair;
use crate::tensor::{lift_eigenpair, power_spectral_radius, residual, unit_eigenpair, Eigenpair, PowerIteration, TensorError};

/// Residual bound for certified eigenpairs.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative distance below which two eigenvalues are merged.
pub const DEDUP_TOL: f64 = 1e-9;
/// Agreement required between the root and power estimates of the radius.
pub const RADIUS_AGREEMENT: f64 = 1e-6;

const ROOT_TOL: f64 = 1e-9;
const BUILD_TOL: f64 = 1e-9;
const POWER_TOL: f64 = 1e-11;
const POWER_MAX_ITERS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error("k = 2 is not supported: for graphs the spectrum is read off the matching polynomial directly")]
    UniformityTwo,
    #[error("weights must be real and nonnegative")]
    NotNonnegative,
    #[error("radius estimates disagree: {by_roots} by roots, {by_power} by power iteration")]
    RadiusMismatch { by_roots: f64, by_power: f64 },
    #[error(transparent)]
    Hypertree(#[from] HypertreeError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl SpectraError {
    /// Numerical failure as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            SpectraError::RadiusMismatch { .. }
                | SpectraError::Root(RootError::NoConvergence { .. })
                | SpectraError::Tensor(TensorError::NoConvergence { .. })
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Residual of an explicit eigenvector is within tolerance.
    Certified,
    /// Every witness broke the construction; membership still holds.
    Singular,
    /// The root equals some vertex weight; listed under `trivial` as well.
    Collision,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialEigenvalue {
    #[serde(with = "complex_pair")]
    pub lambda: Complex64,
    pub vertices: Vec<usize>,
    pub also_subtree_root: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEigenvalue {
    #[serde(with = "complex_pair")]
    pub lambda: Complex64,
    /// Smallest witnessing subtree (fewest edges, then lexicographic).
    pub witness_edges: Vec<usize>,
    /// All witnessing subtrees in the same order.
    pub witnesses: Vec<Vec<usize>>,
    pub status: Status,
    pub residual: Option<f64>,
    #[serde(skip)]
    pub eigenvector: Option<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub trivial: Vec<TrivialEigenvalue>,
    pub roots: Vec<RootEigenvalue>,
    pub spectral_radius: Option<f64>,
    pub dedup_tol: f64,
}

impl SpectrumReport {
    /// Distinct eigenvalues: trivial ones plus non-colliding roots, sorted.
    pub fn distinct(&self) -> Vec<Complex64> {
        let mut all: Vec<Complex64> = self.trivial.iter().map(|t| t.lambda).collect();
        all.extend(self.roots.iter().filter(|r| r.status != Status::Collision).map(|r| r.lambda));
        sort_roots(&mut all);
        all
    }

    pub fn count(&self, status: Status) -> usize {
        self.roots.iter().filter(|r| r.status == status).count()
    }
}

fn by_witness_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(feature = "parallel")]
fn map_all<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_all<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// A subtree of one pruned component.
struct Witness<'a> {
    component: &'a Component,
    local: Subtree,
    host_edges: Vec<usize>,
}

/// Builds an eigenvector for `lambda` on a witnessing subtree and extends it
/// by zero to the whole tree.
fn certify_on(tree: &WeightedHypertree, witness: &Witness, lambda: Complex64, tol: f64) -> Result<Eigenpair, NormalError> {
    let piece = witness.component.tree.induced(&witness.local);
    let (_, local) = normal_eigenpair(&piece.tree, lambda, BUILD_TOL, tol)?;
    let x = witness.component.embed(&piece.embed(&local.x));
    let residual = residual(tree, lambda, &x)?;
    if residual > tol {
        return Err(NormalError::ResidualTooLarge { residual });
    }
    Ok(Eigenpair { lambda, x, residual })
}

/// Eigenvalues of a weighted hypertree with `k >= 3`, each non-trivial one
/// certified by an explicit eigenvector when the construction allows.
pub fn eigenvalues(tree: &WeightedHypertree, tol: f64) -> Result<SpectrumReport, SpectraError> {
    if tree.k() == 2 {
        return Err(SpectraError::UniformityTwo);
    }
    let vw = tree.vertex_weights_c();

    let mut trivial: Vec<TrivialEigenvalue> = Vec::new();
    for (v, &w) in vw.iter().enumerate() {
        match trivial.iter_mut().find(|t| close(t.lambda, w, DEDUP_TOL)) {
            Some(t) => t.vertices.push(v),
            None => trivial.push(TrivialEigenvalue { lambda: w, vertices: vec![v], also_subtree_root: false }),
        }
    }

    let components = prune_zero_edges(tree);
    let mut witnesses = Vec::new();
    for component in &components {
        for local in crate::hypertree::enumerate_subtrees(&component.tree).filter(|s| !s.is_singleton()) {
            let host_edges = local.edge_indices.iter().map(|&e| component.edge_ids[e]).collect();
            witnesses.push(Witness { component, local, host_edges });
        }
    }
    witnesses.sort_by(|a, b| by_witness_order(&a.host_edges, &b.host_edges));

    let root_lists = map_all(&witnesses, |w| -> Result<Vec<Complex64>, SpectraError> {
        let piece = w.component.tree.induced(&w.local);
        Ok(find_roots(&matching_polynomial_dp(&piece.tree)?, ROOT_TOL)?)
    });

    // clusters hold indices into `witnesses`, smallest witness first
    let mut clusters: Vec<(Complex64, Vec<usize>)> = Vec::new();
    for (i, roots) in root_lists.into_iter().enumerate() {
        for z in roots? {
            match clusters.iter_mut().find(|c| close(c.0, z, DEDUP_TOL)) {
                Some(c) => {
                    if c.1.last() != Some(&i) {
                        c.1.push(i);
                    }
                }
                None => clusters.push((z, vec![i])),
            }
        }
    }

    let mut roots = map_all(&clusters, |(lambda, idx)| {
        let lambda = *lambda;
        let list: Vec<Vec<usize>> = idx.iter().map(|&i| witnesses[i].host_edges.clone()).collect();
        let collides = vw.iter().any(|&w| close(w, lambda, DEDUP_TOL));
        let (status, residual, eigenvector) = if collides {
            (Status::Collision, None, None)
        } else {
            match idx.iter().find_map(|&i| certify_on(tree, &witnesses[i], lambda, tol).ok()) {
                Some(pair) => (Status::Certified, Some(pair.residual), Some(pair.x)),
                None => (Status::Singular, None, None),
            }
        };
        RootEigenvalue { lambda, witness_edges: list[0].clone(), witnesses: list, status, residual, eigenvector }
    });
    for r in roots.iter().filter(|r| r.status == Status::Collision) {
        if let Some(t) = trivial.iter_mut().find(|t| close(t.lambda, r.lambda, DEDUP_TOL)) {
            t.also_subtree_root = true;
        }
    }
    trivial.sort_by(|a, b| a.lambda.re.total_cmp(&b.lambda.re).then(a.lambda.im.total_cmp(&b.lambda.im)));
    roots.sort_by(|a, b| a.lambda.re.total_cmp(&b.lambda.re).then(a.lambda.im.total_cmp(&b.lambda.im)));

    let spectral_radius = if admits_radius(tree) {
        Some(largest_real_root(&matching_polynomial_dp(tree)?, ROOT_TOL)?)
    } else {
        None
    };
    Ok(SpectrumReport { trivial, roots, spectral_radius, dedup_tol: DEDUP_TOL })
}

/// Real nonnegative weights, zero edge weights allowed.
fn admits_radius(tree: &WeightedHypertree) -> bool {
    let w = tree.weights();
    w.vertex_weights.iter().chain(&w.edge_weights).all(|s| s.is_real_nonnegative())
}

/// Root and power-iteration estimates of the spectral radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusCheck {
    pub by_roots: f64,
    pub by_power: f64,
    pub gap: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

pub fn radius_cross_check(tree: &WeightedHypertree) -> Result<RadiusCheck, SpectraError> {
    if !tree.weights().is_nonnegative() {
        return Err(SpectraError::NotNonnegative);
    }
    let by_roots = largest_real_root(&matching_polynomial_dp(tree)?, ROOT_TOL)?;
    let PowerIteration { radius, lower, upper, iterations, .. } = power_spectral_radius(tree, POWER_TOL, POWER_MAX_ITERS)?;
    Ok(RadiusCheck { by_roots, by_power: radius, gap: (by_roots - radius).abs(), lower, upper, iterations })
}

/// Largest real root of the matching polynomial, confirmed by power
/// iteration.
pub fn spectral_radius(tree: &WeightedHypertree) -> Result<f64, SpectraError> {
    let check = radius_cross_check(tree)?;
    if check.gap > RADIUS_AGREEMENT {
        return Err(SpectraError::RadiusMismatch { by_roots: check.by_roots, by_power: check.by_power });
    }
    Ok(check.by_roots)
}

/// Spectrum of the Laplacian or signless Laplacian tensor of `graph`.
pub fn corollary_spectrum(graph: &Hypergraph, sign: LaplacianSign, tol: f64) -> Result<SpectrumReport, SpectraError> {
    let weights = corollary_weighting(graph, sign);
    let tree = WeightedHypertree::new(graph.clone(), weights)?;
    eigenvalues(&tree, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Certified,
    Singular,
    Uncertifiable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifiedEntry {
    #[serde(with = "complex_pair")]
    pub lambda: Complex64,
    pub trivial: bool,
    pub outcome: Outcome,
    pub residual: Option<f64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub entries: Vec<VerifiedEntry>,
    pub certified: usize,
    pub singular: usize,
    pub uncertifiable: usize,
}

/// Re-checks every entry of a report independently of how it was made.
///
/// Trivial eigenvalues are checked with unit vectors. Each root is rebuilt
/// on its witnesses and carried back to the whole tree one pendant edge at
/// a time, checking the residual of every intermediate pair.
pub fn verify_report(tree: &WeightedHypertree, report: &SpectrumReport, tol: f64) -> Verification {
    let vw = tree.vertex_weights_c();
    let mut entries = Vec::new();
    for t in &report.trivial {
        entries.push(verify_trivial(tree, t.lambda, vw, tol));
    }
    let components = prune_zero_edges(tree);
    for r in &report.roots {
        if r.status == Status::Collision {
            entries.push(VerifiedEntry { trivial: false, ..verify_trivial(tree, r.lambda, vw, tol) });
            continue;
        }
        let mut list = r.witnesses.clone();
        if list.is_empty() {
            list.push(r.witness_edges.clone());
        }
        let mut notes = Vec::new();
        let mut singular = false;
        let mut found = None;
        for edges in &list {
            match verify_witness(tree, &components, edges, r.lambda, tol) {
                Ok(pair) => {
                    found = Some(pair);
                    break;
                }
                Err(e) => {
                    singular |= matches!(e, VerifyFailure::Normal(NormalError::Singular { .. }));
                    notes.push(format!("{edges:?}: {e}"));
                }
            }
        }
        entries.push(match found {
            Some(pair) => VerifiedEntry { lambda: r.lambda, trivial: false, outcome: Outcome::Certified, residual: Some(pair.residual), note: None },
            None => VerifiedEntry {
                lambda: r.lambda,
                trivial: false,
                outcome: if singular { Outcome::Singular } else { Outcome::Uncertifiable },
                residual: None,
                note: Some(notes.join("; ")),
            },
        });
    }
    let count = |o: Outcome| entries.iter().filter(|e| e.outcome == o).count();
    Verification {
        certified: count(Outcome::Certified),
        singular: count(Outcome::Singular),
        uncertifiable: count(Outcome::Uncertifiable),
        entries,
    }
}

fn verify_trivial(tree: &WeightedHypertree, lambda: Complex64, vw: &[Complex64], tol: f64) -> VerifiedEntry {
    let pair = vw.iter().position(|&w| close(w, lambda, DEDUP_TOL)).map(|v| unit_eigenpair(tree, v));
    match pair {
        Some(Ok(p)) if p.residual <= tol => {
            VerifiedEntry { lambda, trivial: true, outcome: Outcome::Certified, residual: Some(p.residual), note: None }
        }
        other => VerifiedEntry {
            lambda,
            trivial: true,
            outcome: Outcome::Uncertifiable,
            residual: None,
            note: Some(match other {
                Some(Err(e)) => e.to_string(),
                _ => "no vertex carries this weight".into(),
            }),
        },
    }
}

#[derive(Debug, thiserror::Error)]
enum VerifyFailure {
    #[error("{0}")]
    Bad(String),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Hypertree(#[from] HypertreeError),
}

fn verify_witness(
    tree: &WeightedHypertree,
    components: &[Component],
    edges: &[usize],
    lambda: Complex64,
    tol: f64,
) -> Result<Eigenpair, VerifyFailure> {
    tree.subtree_from_edges(edges)?;
    let component = components
        .iter()
        .find(|c| edges.iter().all(|e| c.edge_ids.contains(e)))
        .ok_or_else(|| VerifyFailure::Bad("witness uses a zero-weight edge or spans components".into()))?;
    let local_edges: Vec<usize> =
        edges.iter().map(|e| component.edge_ids.iter().position(|x| x == e).expect("checked above")).collect();
    let local = component.tree.subtree_from_edges(&local_edges)?;
    let piece = component.tree.induced(&local);
    let (_, small) = normal_eigenpair(&piece.tree, lambda, BUILD_TOL, tol)?;

    let sequence = peel_sequence(&component.tree, &local)?;
    let mut pair = Eigenpair { lambda, x: piece.embed(&small.x), residual: small.residual };
    for (i, &edge) in sequence.iter().enumerate().rev() {
        let kept: Vec<usize> = (0..component.tree.m()).filter(|e| !sequence[..i].contains(e)).collect();
        let stage = component.tree.with_edges(&kept);
        let position = kept.binary_search(&edge).expect("edge is still present");
        pair = lift_eigenpair(&stage, position, &pair, tol)?;
    }
    let x = component.embed(&pair.x);
    let residual = residual(tree, lambda, &x)?;
    if residual > tol {
        return Err(VerifyFailure::Bad(format!("lifted residual {residual:e}")));
    }
    Ok(Eigenpair { lambda, x, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::shapes::*;
    use crate::hypertree::Weighting;
    use crate::scalar::Scalar;
    use std::f64::consts::PI;

    fn unity(r: f64, k: usize) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = (0..k).map(|j| Complex64::from_polar(r, 2.0 * PI * j as f64 / k as f64)).collect();
        sort_roots(&mut v);
        v
    }

    fn same_set(got: &[Complex64], want: &[Complex64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for w in want {
            assert!(got.iter().any(|g| (g - w).norm() < 1e-9), "{w} missing from {got:?}");
        }
    }

    #[test]
    fn single_edge_spectrum() {
        let t = WeightedHypertree::unit(single_edge()).unwrap();
        let r = eigenvalues(&t, DEFAULT_TOL).unwrap();
        let mut want = unity(1.0, 3);
        want.push(Complex64::new(0.0, 0.0));
        same_set(&r.distinct(), &want);
        assert_eq!(r.count(Status::Certified), 3);
        assert!(r.roots.iter().all(|x| x.residual.unwrap() <= 1e-8));
        assert!((r.spectral_radius.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.trivial[0].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn loose_path_spectrum() {
        let t = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        let r = eigenvalues(&t, DEFAULT_TOL).unwrap();
        let mut want = unity(1.0, 3);
        want.extend(unity(2f64.powf(1.0 / 3.0), 3));
        want.push(Complex64::new(0.0, 0.0));
        same_set(&r.distinct(), &want);
        assert_eq!(r.count(Status::Certified), 6);
        assert_eq!(r.count(Status::Collision), 1);
        assert!(r.trivial[0].also_subtree_root);
        let one = r.roots.iter().find(|x| (x.lambda - 1.0).norm() < 1e-9).unwrap();
        assert_eq!(one.witnesses, vec![vec![0], vec![1]]);
        let v = verify_report(&t, &r, DEFAULT_TOL);
        assert_eq!((v.certified, v.singular, v.uncertifiable), (8, 0, 0));
    }

    #[test]
    fn heavy_vertex_is_trivial() {
        let w = Weighting {
            vertex_weights: vec![Scalar::integer(5), Scalar::integer(0), Scalar::integer(0)],
            edge_weights: vec![Scalar::integer(1)],
        };
        let t = WeightedHypertree::new(single_edge(), w).unwrap();
        let r = eigenvalues(&t, DEFAULT_TOL).unwrap();
        assert!(r.trivial.iter().any(|x| x.lambda == Complex64::new(5.0, 0.0) && x.vertices == vec![0]));
        assert_eq!(r.count(Status::Singular), 0);
    }

    #[test]
    fn bogus_entry_is_flagged() {
        let t = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        let mut r = eigenvalues(&t, DEFAULT_TOL).unwrap();
        r.roots.push(RootEigenvalue {
            lambda: Complex64::new(0.5, 0.0),
            witness_edges: vec![0],
            witnesses: vec![vec![0]],
            status: Status::Certified,
            residual: Some(0.0),
            eigenvector: None,
        });
        let v = verify_report(&t, &r, DEFAULT_TOL);
        assert_eq!(v.uncertifiable, 1);
        assert_eq!(v.entries.last().unwrap().outcome, Outcome::Uncertifiable);
    }

    #[test]
    fn corollary_single_edge() {
        let r = corollary_spectrum(&single_edge(), LaplacianSign::Signless, DEFAULT_TOL).unwrap();
        let want = vec![
            Complex64::new(0.5, -(3f64.sqrt()) / 2.0),
            Complex64::new(0.5, 3f64.sqrt() / 2.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ];
        same_set(&r.distinct(), &want);
        assert_eq!(r.spectral_radius, Some(2.0));
        let r = corollary_spectrum(&single_edge(), LaplacianSign::Laplacian, DEFAULT_TOL).unwrap();
        assert!(r.roots.iter().any(|x| x.lambda.norm() < 1e-9 && x.status == Status::Certified));
        assert_eq!(r.spectral_radius, None);
    }

    #[test]
    fn radius_examples() {
        let t = WeightedHypertree::unit(loose_path(2, 3)).unwrap();
        let c = radius_cross_check(&t).unwrap();
        assert!((c.by_roots - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!(c.gap < 1e-6, "{c:?}");
        let g = star(3, 3);
        let s = WeightedHypertree::new(g.clone(), corollary_weighting(&g, LaplacianSign::Signless)).unwrap();
        let c = radius_cross_check(&s).unwrap();
        assert!(c.gap < 1e-6, "{c:?}");
        assert!(spectral_radius(&s).is_ok());
        let l = WeightedHypertree::new(g.clone(), corollary_weighting(&g, LaplacianSign::Laplacian)).unwrap();
        assert_eq!(spectral_radius(&l), Err(SpectraError::NotNonnegative));
    }

    #[test]
    fn zero_edges_are_pruned() {
        let g = loose_path(3, 3);
        let w = Weighting {
            vertex_weights: vec![Scalar::integer(0); 7],
            edge_weights: vec![Scalar::integer(1), Scalar::integer(0), Scalar::integer(2)],
        };
        let t = WeightedHypertree::new(g, w).unwrap();
        let r = eigenvalues(&t, DEFAULT_TOL).unwrap();
        let mut want = unity(1.0, 3);
        want.extend(unity(2.0, 3));
        want.push(Complex64::new(0.0, 0.0));
        same_set(&r.distinct(), &want);
        assert_eq!(r.count(Status::Certified), 6);
        assert!((r.spectral_radius.unwrap() - 2.0).abs() < 1e-9);
        let v = verify_report(&t, &r, DEFAULT_TOL);
        assert_eq!(v.uncertifiable + v.singular, 0);
    }

    #[test]
    fn graphs_are_rejected() {
        let g = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        let t = WeightedHypertree::unit(g).unwrap();
        assert_eq!(eigenvalues(&t, DEFAULT_TOL), Err(SpectraError::UniformityTwo));
    }

    #[test]
    fn report_json_shape() {
        let t = WeightedHypertree::unit(single_edge()).unwrap();
        let r = eigenvalues(&t, DEFAULT_TOL).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["roots"][0]["status"], "certified");
        assert_eq!(v["spectral_radius"], 1.0);
        let back: SpectrumReport = serde_json::from_value(v).unwrap();
        assert_eq!(back.roots.len(), 3);
    }
}
