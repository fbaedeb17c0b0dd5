use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use hypertree_spectra::doc::InputDocument;
use hypertree_spectra::hypertree::{enumerate_subtrees, validate, Hypergraph, LaplacianSign, WeightedHypertree};
use hypertree_spectra::matching::{edge_factors, eval_mu_tilde, matching_number, matching_polynomial_dp, phi_polynomial};
use hypertree_spectra::normal::{check_consistent, check_normal, WeightedIncidenceMatrix};
use hypertree_spectra::scalar::Scalar;
use hypertree_spectra::spectra::{
    corollary_spectrum, eigenvalues, radius_cross_check, spectral_radius, verify_report, SpectrumReport, DEFAULT_TOL,
};

mod error;
mod selftest;
mod table;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "htspec", version, about = "Eigenvalues of weighted uniform hypertrees")]
struct Cli {
    /// Absolute residual tolerance for certificates and checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tree certificate of the input (exit 2 if it is not a hypertree).
    Validate { input: PathBuf },
    /// Weighted matching polynomial, ascending coefficients.
    MatchingPoly { input: PathBuf },
    /// Unweighted matching polynomial of the underlying hypergraph.
    Phi { input: PathBuf },
    /// Every subtree, singletons first.
    Subtrees { input: PathBuf },
    /// All eigenvalues with certificates.
    Spectrum { input: PathBuf },
    /// Spectral radius of a nonnegative weighting.
    Radius {
        input: PathBuf,
        /// Report both the root and power-iteration estimates.
        #[arg(long)]
        cross_check: bool,
    },
    /// Re-check a spectrum report independently.
    Verify {
        input: PathBuf,
        /// Report produced by `spectrum`; computed afresh when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Laplacian or signless Laplacian spectrum of the underlying hypertree.
    Corollary {
        input: PathBuf,
        #[arg(long)]
        sign: LaplacianSign,
    },
    /// Evaluate the normalized matching sum at one value per edge.
    MuTilde {
        input: PathBuf,
        /// JSON array of scalars, one per edge or a single one for all.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: String,
    },
    /// Check a weighted incidence matrix against the normal conditions.
    NormalCheck {
        input: PathBuf,
        /// JSON list of {"v", "e", "value": [re, im]} entries.
        #[arg(long)]
        matrix: PathBuf,
        /// JSON array of scalars, one per edge or a single one for all.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: String,
    },
    /// Randomized end-to-end check on generated hypertrees.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trees: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli));
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.write_all(b"\n");
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("htspec: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("HTSPEC_THREADS") else { return Ok(()) };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("HTSPEC_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Rendered output and the exit code to leave with.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn render<T: Serialize>(format: Format, value: &T, table: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string(value).expect("reports always serialize"),
        Format::Table => table(value),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| CliError::Io("<stdin>".into(), e))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    }
    Ok(text)
}

fn read_document(path: &Path) -> Result<InputDocument, CliError> {
    Ok(InputDocument::from_json(&read_text(path)?)?)
}

fn read_tree(path: &Path) -> Result<WeightedHypertree, CliError> {
    Ok(read_document(path)?.hypertree()?)
}

fn parse_lambdas(text: &str, m: usize) -> Result<Vec<Complex64>, CliError> {
    let bad = |why: String| CliError::Usage(format!("--lambdas: {why}"));
    let values: Vec<Scalar> = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    match values.len() {
        1 => Ok(vec![values[0].to_complex(); m]),
        len if len == m => Ok(values.iter().map(Scalar::to_complex).collect()),
        len => Err(bad(format!("expected 1 or {m} values, got {len}"))),
    }
}

fn warn_graph(k: usize) {
    if k == 2 {
        eprintln!("htspec: warning: for k = 2 the matching polynomial is the characteristic polynomial; tensor spectra need k >= 3");
    }
}

#[derive(Serialize)]
struct Coefficients {
    coeffs: Vec<Scalar>,
}

#[derive(Serialize)]
struct Validation {
    k: usize,
    n: usize,
    m: usize,
    #[serde(flatten)]
    certificate: hypertree_spectra::hypertree::TreeCertificate,
}

#[derive(Serialize)]
struct RadiusOnly {
    spectral_radius: f64,
}

#[derive(Serialize)]
struct MuTilde {
    #[serde(with = "hypertree_spectra::scalar::complex_pair")]
    value: Complex64,
    #[serde(with = "hypertree_spectra::scalar::complex_vec")]
    edge_factors: Vec<Complex64>,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let (tol, format) = (cli.tol, cli.format);
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let text = match &cli.command {
        Command::Validate { input } => {
            let g = read_document(input)?.hypergraph()?;
            let report = Validation { k: g.k(), n: g.n(), m: g.m(), certificate: validate(g.graph()) };
            let code = if report.certificate.is_tree() { 0 } else { 2 };
            return Ok(Output { text: render(format, &report, |r| table::validation(r.k, r.n, r.m, &r.certificate)), code });
        }
        Command::MatchingPoly { input } => {
            let t = read_tree(input)?;
            warn_graph(t.k());
            let p = matching_polynomial_dp(&t)?;
            render(format, &Coefficients { coeffs: p.coeffs() }, |c| table::coefficients(&c.coeffs))
        }
        Command::Phi { input } => {
            let t = read_tree(input)?;
            warn_graph(t.k());
            let p = phi_polynomial(t.graph());
            let nu = matching_number(t.graph());
            render(format, &Coefficients { coeffs: p.coeffs() }, |c| {
                format!("matching number {nu}\n{}", table::coefficients(&c.coeffs))
            })
        }
        Command::Subtrees { input } => {
            let t = read_tree(input)?;
            let subs: Vec<_> = enumerate_subtrees(&t).collect();
            render(format, &subs, |s| table::subtrees(s))
        }
        Command::Spectrum { input } => {
            let report = eigenvalues(&read_tree(input)?, tol)?;
            render(format, &report, table::spectrum)
        }
        Command::Radius { input, cross_check } => {
            let t = read_tree(input)?;
            if *cross_check {
                render(format, &radius_cross_check(&t)?, table::radius_check)
            } else {
                let spectral_radius = spectral_radius(&t)?;
                render(format, &RadiusOnly { spectral_radius }, |r| format!("spectral radius {:.12}", r.spectral_radius))
            }
        }
        Command::Verify { input, report } => {
            let t = read_tree(input)?;
            let report: SpectrumReport = match report {
                Some(path) => serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Report(e.to_string()))?,
                None => eigenvalues(&t, tol)?,
            };
            let verification = verify_report(&t, &report, tol);
            let code = if verification.uncertifiable == 0 { 0 } else { 3 };
            return Ok(Output { text: render(format, &verification, table::verification), code });
        }
        Command::Corollary { input, sign } => {
            // only the shape matters; any weights in the document are ignored
            let doc = read_document(input)?;
            let graph = Hypergraph::new(doc.k, doc.n, doc.edges)?;
            render(format, &corollary_spectrum(&graph, *sign, tol)?, table::spectrum)
        }
        Command::MuTilde { input, lambdas } => {
            let g = read_document(input)?.hypergraph()?;
            let lambdas = parse_lambdas(lambdas, g.m())?;
            let value = MuTilde { value: eval_mu_tilde(&g, &lambdas)?, edge_factors: edge_factors(&g, &lambdas)? };
            render(format, &value, |v| table::mu_tilde(v.value, &v.edge_factors))
        }
        Command::NormalCheck { input, matrix, lambdas } => {
            let g = read_document(input)?.hypergraph()?;
            let b: WeightedIncidenceMatrix =
                serde_json::from_str(&read_text(matrix)?).map_err(|e| CliError::Report(e.to_string()))?;
            let lambdas = parse_lambdas(lambdas, g.m())?;
            let report = match lambdas.first() {
                Some(&first) if lambdas.iter().all(|&l| l == first) => check_consistent(&g, &b, first, tol)?,
                _ => check_normal(&g, &b, &lambdas, tol)?,
            };
            let code = if report.is_normal() && report.c3_ok != Some(false) { 0 } else { 2 };
            return Ok(Output { text: render(format, &report, table::normal), code });
        }
        Command::Selftest { seed, trees } => {
            let summary = selftest::run(*seed, *trees, tol)?;
            let code = if summary.passed() { 0 } else { 3 };
            return Ok(Output { text: render(format, &summary, table::selftest), code });
        }
    };
    Ok(Output::ok(text))
}
