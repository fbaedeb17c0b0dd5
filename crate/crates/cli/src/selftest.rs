use rand::Rng;
use serde::Serialize;

use hypertree_spectra::matching::{matching_polynomial, matching_polynomial_dp};
use hypertree_spectra::poly::Polynomial;
use hypertree_spectra::random::{random_tree, rng_from_seed, WeightKind};
use hypertree_spectra::spectra::{eigenvalues, verify_report};

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub trees: usize,
    pub certified: usize,
    pub singular: usize,
    pub uncertifiable: usize,
    /// Trees whose recursive and enumerated matching polynomials differ.
    pub polynomial_mismatches: usize,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.uncertifiable == 0 && self.polynomial_mismatches == 0
    }
}

/// Random small trees of every weight kind: compare both matching
/// polynomials, compute the spectrum and verify it from scratch.
pub fn run(seed: u64, trees: usize, tol: f64) -> Result<Summary, CliError> {
    let kinds = [WeightKind::Unit, WeightKind::Rational, WeightKind::Nonnegative, WeightKind::Complex];
    let mut rng = rng_from_seed(seed);
    let mut summary =
        Summary { seed, trees, certified: 0, singular: 0, uncertifiable: 0, polynomial_mismatches: 0 };
    for i in 0..trees {
        let k = rng.gen_range(3..=5);
        let m = rng.gen_range(1..=5);
        let tree = random_tree(&mut rng, k, m, kinds[i % kinds.len()]);
        if !same_polynomial(&matching_polynomial_dp(&tree)?, &matching_polynomial(&tree)) {
            summary.polynomial_mismatches += 1;
        }
        let report = eigenvalues(&tree, tol)?;
        let verification = verify_report(&tree, &report, tol);
        summary.certified += verification.certified;
        summary.singular += verification.singular;
        summary.uncertifiable += verification.uncertifiable;
    }
    Ok(summary)
}

/// Exact equality on the rational backend; complex coefficients are
/// compared up to rounding.
fn same_polynomial(a: &Polynomial, b: &Polynomial) -> bool {
    if let (Some(p), Some(q)) = (a.as_rational(), b.as_rational()) {
        return p == q;
    }
    let (p, q) = (a.to_complex(), b.to_complex());
    let (p, q) = (p.coeffs(), q.coeffs());
    p.len() == q.len() && p.iter().zip(q).all(|(x, y)| (x - y).norm() <= 1e-9 * x.norm().max(y.norm()).max(1.0))
}
