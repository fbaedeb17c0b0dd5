//! Plain-text renderings. These are for reading only; JSON is the format to
//! parse.

use std::fmt::Write;

use num_complex::Complex64;

use hypertree_spectra::hypertree::{Subtree, TreeCertificate};
use hypertree_spectra::normal::NormalReport;
use hypertree_spectra::scalar::Scalar;
use hypertree_spectra::spectra::{RadiusCheck, SpectrumReport, Verification};

use crate::selftest::Summary;

pub fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{:.12} {sign} {:.12}i", z.re, z.im.abs())
    }
}

fn optional(r: Option<f64>) -> String {
    r.map_or_else(|| "-".to_string(), |r| format!("{r:.1e}"))
}

fn edges(list: &[usize]) -> String {
    let parts: Vec<String> = list.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn validation(k: usize, n: usize, m: usize, cert: &TreeCertificate) -> String {
    let verdict = if cert.is_tree() { "hypertree" } else { "not a hypertree" };
    format!("k={k} n={n} m={m}: {verdict} ({cert})")
}

pub fn coefficients(coeffs: &[Scalar]) -> String {
    let mut out = String::from("degree  coefficient\n");
    for (d, c) in coeffs.iter().enumerate().rev() {
        if !c.is_zero() {
            let _ = writeln!(out, "{d:>6}  {c}");
        }
    }
    out.pop();
    out
}

pub fn subtrees(subs: &[Subtree]) -> String {
    let mut out = format!("{} subtrees\n", subs.len());
    for s in subs {
        let _ = writeln!(out, "edges {:<16} vertices {}", edges(&s.edge_indices), edges(&s.vertex_set));
    }
    out.pop();
    out
}

pub fn spectrum(r: &SpectrumReport) -> String {
    let mut out = String::from("eigenvalue                                        kind        witness        residual\n");
    for t in &r.trivial {
        let kind = if t.also_subtree_root { "trivial*" } else { "trivial" };
        let _ = writeln!(out, "{:<48}  {kind:<10}  v{:<13}  -", complex(t.lambda), edges(&t.vertices));
    }
    for root in &r.roots {
        let status = serde_json::to_value(root.status).expect("status serializes");
        let _ = writeln!(
            out,
            "{:<48}  {:<10}  {:<14}  {}",
            complex(root.lambda),
            status.as_str().unwrap_or("?"),
            edges(&root.witness_edges),
            optional(root.residual)
        );
    }
    let _ = write!(out, "{} distinct", r.distinct().len());
    if let Some(rho) = r.spectral_radius {
        let _ = write!(out, ", spectral radius {rho:.12}");
    }
    out
}

pub fn radius_check(c: &RadiusCheck) -> String {
    format!(
        "by roots {:.12}\nby power {:.12} after {} steps, bracket [{:.12}, {:.12}]\ngap      {:.1e}",
        c.by_roots, c.by_power, c.iterations, c.lower, c.upper, c.gap
    )
}

pub fn verification(v: &Verification) -> String {
    let mut out = String::new();
    for e in &v.entries {
        let outcome = serde_json::to_value(e.outcome).expect("outcome serializes");
        let _ = write!(out, "{:<48}  {:<13}  {}", complex(e.lambda), outcome.as_str().unwrap_or("?"), optional(e.residual));
        if let Some(note) = &e.note {
            let _ = write!(out, "  {note}");
        }
        out.push('\n');
    }
    let _ = write!(out, "{} certified, {} singular, {} uncertifiable", v.certified, v.singular, v.uncertifiable);
    out
}

pub fn mu_tilde(value: Complex64, factors: &[Complex64]) -> String {
    let mut out = format!("mu~ = {}\n", complex(value));
    for (e, f) in factors.iter().enumerate() {
        let _ = writeln!(out, "edge {e}: {}", complex(*f));
    }
    out.pop();
    out
}

pub fn normal(r: &NormalReport) -> String {
    let worst = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let c3 = match r.c3_ok {
        None => "not checked".to_string(),
        Some(ok) => format!("{ok} over {} cycles (worst {:.1e})", r.c3_residuals.len(), worst(&r.c3_residuals)),
    };
    format!(
        "C1 {} (worst {:.1e})\nC2 {} (worst {:.1e})\nC3 {c3}",
        r.c1_ok,
        worst(&r.c1_residuals),
        r.c2_ok,
        worst(&r.c2_residuals)
    )
}

pub fn selftest(s: &Summary) -> String {
    format!(
        "seed {}: {} trees, {} eigenvalues certified, {} singular, {} uncertifiable, {} polynomial mismatches",
        s.seed, s.trees, s.certified, s.singular, s.uncertifiable, s.polynomial_mismatches
    )
}
