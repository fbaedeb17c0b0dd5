//! Univariate polynomials over an exact rational or a complex floating
//! backend, plus a simultaneous-iteration root finder.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{rational_to_f64, Scalar};

/// Ring operations shared by both coefficient backends.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn to_complex(&self) -> Complex64;

    /// Converts a weight into this backend; `None` when an exact backend
    /// is asked to hold a floating value.
    fn from_scalar(s: &Scalar) -> Option<Self>;

    fn from_usize(n: usize) -> Self;

    fn into_scalar(self) -> Scalar;
}

impl Coefficient for BigRational {
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn from_scalar(s: &Scalar) -> Option<Self> {
        s.as_rational().cloned()
    }

    fn from_usize(n: usize) -> Self {
        BigRational::from_integer(n.into())
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Rational(self)
    }
}

impl Coefficient for Complex64 {
    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn from_scalar(s: &Scalar) -> Option<Self> {
        Some(s.to_complex())
    }

    fn from_usize(n: usize) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Complex(self)
    }
}

/// Dense polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: T) -> Self {
        Poly::new(vec![-root, T::one()])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_usize(i))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn to_complex(&self) -> Poly<Complex64> {
        Poly { coeffs: self.coeffs.iter().map(|c| c.to_complex()).collect() }
    }
}

/// Square-free decomposition by Yun's algorithm: pairs `(factor, multiplicity)`
/// whose product (with multiplicity) is the monic form of `p`.
pub fn square_free_decomposition(p: &Poly<BigRational>) -> Vec<(Poly<BigRational>, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut multiplicity = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), multiplicity));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        multiplicity += 1;
    }
    out
}

/// Which scalar backend a polynomial lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Complex,
}

/// A polynomial on one of the two backends.
///
/// Binary operations on mixed backends promote the exact operand to complex.
#[derive(Clone, Debug, PartialEq)]
pub enum Polynomial {
    Rational(Poly<BigRational>),
    Complex(Poly<Complex64>),
}

impl Polynomial {
    pub fn from_scalars(coeffs: &[Scalar]) -> Self {
        if coeffs.iter().all(Scalar::is_rational) {
            Polynomial::Rational(Poly::new(
                coeffs.iter().map(|c| c.as_rational().unwrap().clone()).collect(),
            ))
        } else {
            Polynomial::Complex(Poly::new(coeffs.iter().map(Scalar::to_complex).collect()))
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            Polynomial::Rational(_) => Backend::Rational,
            Polynomial::Complex(_) => Backend::Complex,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Polynomial::Rational(p) => p.degree(),
            Polynomial::Complex(p) => p.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn coeffs(&self) -> Vec<Scalar> {
        match self {
            Polynomial::Rational(p) => p.coeffs().iter().cloned().map(Scalar::Rational).collect(),
            Polynomial::Complex(p) => p.coeffs().iter().copied().map(Scalar::Complex).collect(),
        }
    }

    pub fn to_complex(&self) -> Poly<Complex64> {
        match self {
            Polynomial::Rational(p) => p.to_complex(),
            Polynomial::Complex(p) => p.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Poly<BigRational>> {
        match self {
            Polynomial::Rational(p) => Some(p),
            Polynomial::Complex(_) => None,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        match (self, other) {
            (Polynomial::Rational(a), Polynomial::Rational(b)) => Polynomial::Rational(a.add(b)),
            _ => Polynomial::Complex(self.to_complex().add(&other.to_complex())),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        match (self, other) {
            (Polynomial::Rational(a), Polynomial::Rational(b)) => Polynomial::Rational(a.mul(b)),
            _ => Polynomial::Complex(self.to_complex().mul(&other.to_complex())),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        match (self, s) {
            (Polynomial::Rational(p), Scalar::Rational(r)) => Polynomial::Rational(p.scale(r)),
            _ => Polynomial::Complex(self.to_complex().scale(&s.to_complex())),
        }
    }

    pub fn evaluate(&self, x: &Scalar) -> Scalar {
        match (self, x) {
            (Polynomial::Rational(p), Scalar::Rational(r)) => Scalar::Rational(p.evaluate(r)),
            _ => Scalar::Complex(self.to_complex().evaluate(&x.to_complex())),
        }
    }

    pub fn evaluate_complex(&self, x: Complex64) -> Complex64 {
        self.to_complex().evaluate(&x)
    }
}

/// Wire form `{"backend": ..., "coeffs": [...]}`, ascending degree.
#[derive(Serialize, Deserialize)]
struct PolynomialWire {
    backend: Backend,
    coeffs: Vec<Scalar>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialWire { backend: self.backend(), coeffs: self.coeffs() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PolynomialWire::deserialize(deserializer)?;
        Ok(match wire.backend {
            Backend::Rational => Polynomial::from_scalars(&wire.coeffs),
            Backend::Complex => Polynomial::Complex(Poly::new(wire.coeffs.iter().map(Scalar::to_complex).collect())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("root iteration did not converge after {iterations} steps (worst backward error {worst_backward_error:e}); iterates: {iterates:?}")]
    NoConvergence {
        iterations: usize,
        worst_backward_error: f64,
        iterates: Vec<Complex64>,
    },
    #[error("no root within {tol:e} of the real axis")]
    NoRealRoot { tol: f64 },
}

const MAX_ABERTH_ITERATIONS: usize = 2000;

/// All `deg(p)` roots of `p`, with multiplicity, sorted by real then
/// imaginary part.
///
/// Exact polynomials are split into square-free factors first, so repeated
/// roots come out as exact copies instead of a cluster.
pub fn find_roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>, RootError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(RootError::BadTolerance(tol));
    }
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let mut roots = match p {
        Polynomial::Rational(q) => {
            let mut roots = Vec::new();
            for (factor, multiplicity) in square_free_decomposition(q) {
                let simple = roots_of_float_poly(&factor.to_complex(), tol, true)?;
                let slope = factor.derivative();
                for r in simple {
                    let r = polish_exact(&factor, &slope, r);
                    roots.extend(std::iter::repeat_n(r, multiplicity));
                }
            }
            roots
        }
        Polynomial::Complex(q) => {
            let real = q.coeffs().iter().all(|c| c.im == 0.0);
            roots_of_float_poly(q, tol, real)?
        }
    };
    sort_roots(&mut roots);
    Ok(roots)
}

fn exact_horner(p: &Poly<BigRational>, z: &Complex<BigRational>) -> Complex<BigRational> {
    p.coeffs().iter().rev().fold(Complex::zero(), |acc, c| acc * z + Complex::new(c.clone(), BigRational::zero()))
}

fn rational_complex_to_f64(z: &Complex<BigRational>) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Newton steps on a square-free exact polynomial, evaluating `p` and `p'`
/// exactly at each iterate. Coefficient rounding no longer limits the
/// accuracy, which matters inside tight clusters of roots.
fn polish_exact(p: &Poly<BigRational>, dp: &Poly<BigRational>, mut z: Complex64) -> Complex64 {
    let mut last = f64::INFINITY;
    for _ in 0..8 {
        let (Some(re), Some(im)) = (BigRational::from_float(z.re), BigRational::from_float(z.im)) else { break };
        let zq = Complex::new(re, im);
        let value = rational_complex_to_f64(&exact_horner(p, &zq));
        let slope = rational_complex_to_f64(&exact_horner(dp, &zq));
        if value.is_zero() || slope.is_zero() {
            break;
        }
        let step = value / slope;
        // stop once steps stop shrinking; the iterate is as good as the grid allows
        if !step.is_finite() || step.norm() >= last {
            break;
        }
        last = step.norm();
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

pub(crate) fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Largest real part among roots lying within `tol` of the real axis.
pub fn largest_real_root(p: &Polynomial, tol: f64) -> Result<f64, RootError> {
    find_roots(p, tol)?
        .into_iter()
        .filter(|z| z.im.abs() <= tol)
        .map(|z| z.re)
        .max_by(f64::total_cmp)
        .ok_or(RootError::NoRealRoot { tol })
}

/// Backward-error acceptance test for a computed root.
pub fn root_backward_error(p: &Poly<Complex64>, z: Complex64) -> f64 {
    let scale = p.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let d = p.degree().unwrap_or(0) as i32;
    p.evaluate(&z).norm() / (scale * z.norm().max(1.0).powi(d))
}

/// Merges roots closer than `rel_tol * (1 + |z|)`; returns representatives
/// with multiplicities, sorted.
pub fn dedup_roots(roots: &[Complex64], rel_tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &z in roots {
        match clusters.iter_mut().find(|(c, _)| close(*c, z, rel_tol)) {
            Some(entry) => entry.1 += 1,
            None => clusters.push((z, 1)),
        }
    }
    clusters.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    clusters
}

pub(crate) fn close(a: Complex64, b: Complex64, rel_tol: f64) -> bool {
    (a - b).norm() <= rel_tol * (1.0 + a.norm().max(b.norm()))
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn roots_of_float_poly(p: &Poly<Complex64>, tol: f64, real_coeffs: bool) -> Result<Vec<Complex64>, RootError> {
    let coeffs = p.coeffs();
    // zero roots are exact when the low coefficients vanish
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = Poly::new(coeffs[zeros..].to_vec()).monic();
    let mut roots = vec![Complex64::zero(); zeros];
    roots.extend(aberth(&reduced, tol)?);
    if real_coeffs {
        for z in roots.iter_mut() {
            if z.im.abs() <= 64.0 * f64::EPSILON * (1.0 + z.re.abs()) {
                z.im = 0.0;
            }
        }
    }
    Ok(roots)
}

/// Aberth–Ehrlich iteration for a monic polynomial, followed by Newton
/// polishing.
fn aberth(p: &Poly<Complex64>, tol: f64) -> Result<Vec<Complex64>, RootError> {
    let c = p.coeffs();
    let d = match p.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let cauchy = 1.0 + c[..d].iter().map(|a| (a / c[d]).norm()).fold(0.0, f64::max);
    // Start on a circle strictly inside the Cauchy bound, rotated off the
    // real axis so conjugate pairs do not collide.
    let radius = initial_radius(c).min(cauchy);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let theta = std::f64::consts::TAU * (j as f64) / (d as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut converged = vec![false; d];
    let mut iterations = 0;
    while iterations < MAX_ABERTH_ITERATIONS && !converged.iter().all(|&b| b) {
        iterations += 1;
        for i in 0..d {
            if converged[i] {
                continue;
            }
            let (pv, dpv) = horner_with_derivative(c, z[i]);
            if pv.is_zero() {
                converged[i] = true;
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.is_zero() { Complex64::zero() } else { diff.inv() }
                })
                .sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // perturb and retry
                z[i] += Complex64::new(radius * 1e-3, radius * 1e-3);
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                converged[i] = true;
            }
        }
    }
    for zi in z.iter_mut() {
        polish(c, zi);
    }
    let worst = z.iter().map(|&zi| root_backward_error(p, zi)).fold(0.0, f64::max);
    if !worst.is_finite() || worst > tol {
        return Err(RootError::NoConvergence {
            iterations,
            worst_backward_error: worst,
            iterates: z,
        });
    }
    Ok(z)
}

/// Geometric-mean based radius from the extreme coefficients.
fn initial_radius(c: &[Complex64]) -> f64 {
    let d = c.len() - 1;
    let low = c.iter().position(|a| !a.is_zero()).unwrap_or(0);
    let ratio = (c[low] / c[d]).norm();
    let r = ratio.powf(1.0 / (d - low) as f64);
    if r.is_finite() && r > 0.0 { r } else { 1.0 }
}

fn polish(c: &[Complex64], z: &mut Complex64) {
    let (mut pv, _) = horner_with_derivative(c, *z);
    for _ in 0..4 {
        let (p_cur, dp) = horner_with_derivative(c, *z);
        if dp.is_zero() || p_cur.is_zero() {
            break;
        }
        let candidate = *z - p_cur / dp;
        let (p_new, _) = horner_with_derivative(c, candidate);
        if p_new.norm() < pv.norm() {
            *z = candidate;
            pv = p_new;
        } else {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(coeffs: &[i64]) -> Polynomial {
        Polynomial::Rational(Poly::new(
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        ))
    }

    fn assert_root_set(found: &[Complex64], expected: &[Complex64], tol: f64) {
        assert_eq!(found.len(), expected.len(), "{found:?}");
        let mut used = vec![false; expected.len()];
        for z in found {
            let j = (0..expected.len())
                .find(|&j| !used[j] && (expected[j] - z).norm() <= tol)
                .unwrap_or_else(|| panic!("unexpected root {z} in {found:?}"));
            used[j] = true;
        }
    }

    #[test]
    fn ring_examples() {
        let a = rat(&[-1, 1]);
        let b = rat(&[1, 1, 1]);
        assert_eq!(a.mul(&b), rat(&[-1, 0, 0, 1]));
        assert_eq!(rat(&[-1, 0, 0, 1]).evaluate(&Scalar::integer(1)), Scalar::integer(0));
        let scaled = rat(&[-2, 0, 0, 1]).scale(&Scalar::ratio(1, 2));
        assert_eq!(
            scaled.coeffs(),
            vec![Scalar::integer(-1), Scalar::integer(0), Scalar::integer(0), Scalar::ratio(1, 2)]
        );
    }

    #[test]
    fn mixed_backend_promotes() {
        let a = rat(&[1, 1]);
        let b = Polynomial::Complex(Poly::new(vec![Complex64::new(0.0, 1.0)]));
        let prod = a.mul(&b);
        assert_eq!(prod.backend(), Backend::Complex);
        assert_eq!(prod.coeffs(), vec![Scalar::complex(0.0, 1.0), Scalar::complex(0.0, 1.0)]);
    }

    #[test]
    fn cube_roots_of_unity() {
        let roots = find_roots(&rat(&[-1, 0, 0, 1]), 1e-12).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert_root_set(
            &roots,
            &[Complex64::new(1.0, 0.0), Complex64::new(-0.5, h), Complex64::new(-0.5, -h)],
            1e-12,
        );
        // ordering by real part then imaginary part
        assert!(roots[0].re < 0.0 && roots[0].im < 0.0);
        assert_eq!(roots[2], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn x5_minus_2x2() {
        let p = rat(&[0, 0, -2, 0, 0, 1]);
        let roots = find_roots(&p, 1e-12).unwrap();
        let c = 2f64.powf(1.0 / 3.0);
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let expected = [Complex64::zero(), Complex64::zero(), c.into(), w * c, w * w * c];
        assert_root_set(&roots, &expected, 1e-12);
        assert!((largest_real_root(&p, 1e-9).unwrap() - c).abs() < 1e-12);
    }

    #[test]
    fn shifted_cube() {
        // (x-1)^3 - 1 = x^3 - 3x^2 + 3x - 2
        let p = rat(&[-2, 3, -3, 1]);
        let h = 3f64.sqrt() / 2.0;
        assert_root_set(
            &find_roots(&p, 1e-12).unwrap(),
            &[Complex64::new(2.0, 0.0), Complex64::new(0.5, h), Complex64::new(0.5, -h)],
            1e-12,
        );
        assert_eq!(largest_real_root(&p, 1e-9).unwrap(), 2.0);
    }

    #[test]
    fn repeated_roots_are_exact_on_rational_backend() {
        // (x-1)^3 (x+2)^2
        let p = rat(&[-1, 3, -3, 1]).mul(&rat(&[4, 4, 1]));
        let roots = find_roots(&p, 1e-12).unwrap();
        assert_eq!(roots.iter().filter(|z| **z == Complex64::new(1.0, 0.0)).count(), 3);
        assert_eq!(roots.iter().filter(|z| (**z - Complex64::new(-2.0, 0.0)).norm() < 1e-14).count(), 2);
        let sf = square_free_decomposition(p.as_rational().unwrap());
        assert_eq!(sf.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn errors() {
        assert_eq!(find_roots(&Polynomial::Rational(Poly::zero()), 1e-9), Err(RootError::ZeroPolynomial));
        assert!(matches!(find_roots(&rat(&[1, 1]), 0.0), Err(RootError::BadTolerance(_))));
        // x^2 + 1 has no real root
        assert!(matches!(largest_real_root(&rat(&[1, 0, 1]), 1e-9), Err(RootError::NoRealRoot { .. })));
    }

    #[test]
    fn complex_backend_roots() {
        // (x - i)(x - 2)
        let i = Complex64::new(0.0, 1.0);
        let p = Poly::linear(i).mul(&Poly::linear(Complex64::new(2.0, 0.0)));
        let roots = find_roots(&Polynomial::Complex(p), 1e-12).unwrap();
        assert_root_set(&roots, &[i, Complex64::new(2.0, 0.0)], 1e-12);
    }

    #[test]
    fn dedup_merges_close_roots() {
        let z = Complex64::new(1.0, 0.0);
        let d = dedup_roots(&[z, z + 1e-12, Complex64::new(2.0, 0.0)], 1e-9);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].1, 2);
    }

    #[test]
    fn serde_round_trip() {
        let p = rat(&[-1, 0, 0, 1]).scale(&Scalar::ratio(1, 3));
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"backend":"rational","coeffs":["-1/3",0,0,"1/3"]}"#);
        assert_eq!(serde_json::from_str::<Polynomial>(&text).unwrap(), p);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly(max_degree: usize) -> impl Strategy<Value = Poly<BigRational>> {
            prop::collection::vec((-6i64..=6, 1i64..=4), 1..=max_degree + 1).prop_map(|cs| {
                Poly::new(cs.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect())
            })
        }

        proptest! {
            #[test]
            fn ring_identities_hold_exactly(a in small_poly(4), b in small_poly(4), c in small_poly(4)) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert_eq!(a.add(&b), b.add(&a));
            }

            #[test]
            fn division_reconstructs(a in small_poly(6), b in small_poly(3)) {
                prop_assume!(!b.is_zero());
                let (q, r) = a.div_rem(&b);
                prop_assert_eq!(q.mul(&b).add(&r), a);
                prop_assert!(r.degree().is_none_or(|dr| dr < b.degree().unwrap()) || b.degree() == Some(0) && r.is_zero());
            }

            #[test]
            fn vieta_and_backward_error(roots in prop::collection::vec((-3i64..=3, -3i64..=3), 1..7), lead in 1i64..4) {
                // build from integer roots so the leading coefficient is known
                let mut p = Poly::constant(BigRational::from_integer(lead.into()));
                for (a, b) in &roots {
                    let r = BigRational::new((*a).into(), (*b).abs().max(1).into());
                    p = p.mul(&Poly::linear(r));
                }
                let tol = 1e-9;
                let found = find_roots(&Polynomial::Rational(p.clone()), tol).unwrap();
                let pc = p.to_complex();
                let c = pc.coeffs();
                let d = found.len();
                prop_assert_eq!(d, p.degree().unwrap());
                let sum: Complex64 = found.iter().sum();
                let prod: Complex64 = found.iter().product();
                let cmax = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
                prop_assert!((sum + c[d - 1] / c[d]).norm() <= 10.0 * tol * cmax.max(1.0));
                let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
                prop_assert!((prod - sign * c[0] / c[d]).norm() <= 10.0 * tol * cmax.max(1.0));
                for z in &found {
                    let bound = tol * cmax * z.norm().max(1.0).powi(d as i32);
                    prop_assert!(pc.evaluate(z).norm() <= bound);
                }
            }
        }
    }
}
