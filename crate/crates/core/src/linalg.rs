//! Dense complex linear algebra at desk scale (dimension up to 2^10).
//!
//! Norms are computed from Hermitian eigenvalues: every norm this crate
//! evaluates is of a Hermitian difference such as `E(ρ) - I/d`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type C64 = Complex64;

/// Seeded generator used for every random choice in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator number `stream` derived from `seed`.
pub fn rng_stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub const MAX_DIM: usize = 1 << 10;

const HERMITIAN_TOL: f64 = 1e-8;

/// A square complex matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn outer(psi: &StateVector) -> Self {
        let a = psi.amplitudes();
        Self::from_fn(a.len(), |i, j| a[i] * a[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    /// `sqrt(Σ |m_ij|^2)`, valid for any matrix.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|m_ij - conj(m_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `A ⊗ B` with `A` acting on the more significant index bits.
    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        let d = other.dim;
        Self::from_fn(self.dim * d, |i, j| self[(i / d, j / d)] * other[(i % d, j % d)])
    }

    /// Text form: `d=<d>` then one `re im` pair per line, row-major, 17
    /// significant digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("d={}\n", self.dim);
        for x in &self.data {
            out.push_str(&format!("{:.16e} {:.16e}\n", x.re, x.im));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        text.parse()
    }

    fn check_same_dim(&self, other: &ComplexMatrix) {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.check_same_dim(rhs);
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        out
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for ComplexMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dim: usize = header
            .trim()
            .strip_prefix("d=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected d=<dim>, got {header:?}")))?;
        let parse = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        let data = lines
            .map(|l| {
                let mut parts = l.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(re), Some(im), None) => Ok(C64::new(parse(re)?, parse(im)?)),
                    _ => Err(Error::Parse(format!("expected `re im`, got {l:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_row_major(dim, data)
    }
}

/// A unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps amplitudes that already have norm `1 ± 1e-12`.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let norm = l2(&amps);
        if amps.is_empty() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("state vector norm {norm} is not 1")));
        }
        Ok(StateVector { amps })
    }

    /// Rescales to unit norm.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let norm = l2(&amps);
        if amps.is_empty() || !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidArgument("cannot normalize a zero vector".into()));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(StateVector { amps })
    }

    /// Basis state `|k⟩` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        StateVector { amps }
    }

    pub(crate) fn from_raw(amps: Vec<C64>) -> Self {
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        l2(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `ψ ⊗ φ` with `self` on the more significant index bits.
    pub fn kron(&self, other: &StateVector) -> StateVector {
        let d = other.dim();
        StateVector {
            amps: (0..self.dim() * d)
                .map(|i| self.amps[i / d] * other.amps[i % d])
                .collect(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(ComplexMatrix::outer(self))
    }

    /// Multiplies by the global phase that makes the first amplitude of
    /// magnitude above `tol` real and positive.
    pub fn fix_phase(&mut self, tol: f64) {
        if let Some(first) = self.amps.iter().find(|a| a.norm() > tol).copied() {
            let phase = first.conj() / first.norm();
            for a in &mut self.amps {
                *a *= phase;
            }
        }
    }
}

fn l2(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

const DENSITY_TOL: f64 = 1e-10;

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m.hermitian_defect();
        if defect > DENSITY_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidArgument(format!("trace {tr} is not 1")));
        }
        let min = herm_eigvals(&m)?[0];
        if min < -DENSITY_TOL {
            return Err(Error::InvalidArgument(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix(m))
    }

    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        DensityMatrix(m)
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// `tr(ρ^2)`.
    pub fn purity(&self) -> f64 {
        self.0.data.iter().map(|x| x.norm_sqr()).sum()
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex
/// Jacobi rotations.
pub fn herm_eigvals(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let d = m.dim;
    let mut a = m.clone();
    // exact Hermitian symmetrization so rotations preserve structure
    for i in 0..d {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..d {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let scale = a.frobenius().max(f64::MIN_POSITIVE);
    let threshold = 1e-13 * d as f64 * scale.max(1.0);
    for _sweep in 0..100 {
        if off_diagonal(&a) < threshold {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..d).map(|i| a[(i, i)].re).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig)
}

fn off_diagonal(a: &ComplexMatrix) -> f64 {
    let d = a.dim;
    let mut sum = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi step zeroing `a[p][q]`: a diagonal phase makes the entry real,
/// then a real Givens rotation annihilates it.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let d = a.dim;
    // column q times conj(phase), row q times phase: a[p][q] becomes r
    let phase = apq / r;
    for k in 0..d {
        a[(k, q)] *= phase.conj();
    }
    for k in 0..d {
        a[(q, k)] *= phase;
    }
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..d {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = x * c - y * s;
        a[(k, q)] = x * s + y * c;
    }
    for k in 0..d {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = x * c - y * s;
        a[(q, k)] = x * s + y * c;
    }
    a[(p, p)] = C64::new(app - t * r, 0.0);
    a[(q, q)] = C64::new(aqq + t * r, 0.0);
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MatrixNorm {
    /// Sum of singular values.
    #[default]
    Trace,
    /// Root of the sum of squared entries.
    Frobenius,
    /// Largest singular value.
    Infinity,
}

impl MatrixNorm {
    pub fn as_str(&self) -> &'static str {
        match self {
            MatrixNorm::Trace => "trace",
            MatrixNorm::Frobenius => "frobenius",
            MatrixNorm::Infinity => "infinity",
        }
    }

    /// The norm of a matrix with the given eigenvalues.
    pub fn of_eigenvalues(&self, eig: &[f64]) -> f64 {
        match self {
            MatrixNorm::Trace => eig.iter().map(|x| x.abs()).sum(),
            MatrixNorm::Frobenius => eig.iter().map(|x| x * x).sum::<f64>().sqrt(),
            MatrixNorm::Infinity => eig.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }
}

impl fmt::Display for MatrixNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(MatrixNorm::Trace),
            "frobenius" => Ok(MatrixNorm::Frobenius),
            "infinity" => Ok(MatrixNorm::Infinity),
            other => Err(Error::Parse(format!("unknown norm {other:?}"))),
        }
    }
}

/// Trace, Frobenius or infinity norm of a Hermitian matrix.
pub fn matrix_norm(m: &ComplexMatrix, kind: MatrixNorm) -> Result<f64> {
    if kind == MatrixNorm::Frobenius {
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        return Ok(m.frobenius());
    }
    Ok(kind.of_eigenvalues(&herm_eigvals(m)?))
}

/// `||ρ - σ||_tr`, in `[0, 2]`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension(format!(
            "states of dimension {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    matrix_norm(&(rho.matrix() - sigma.matrix()), MatrixNorm::Trace)
}

pub(crate) fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

/// A uniformly random pure state: a normalized complex Gaussian vector.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    loop {
        let amps: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
        if let Ok(s) = StateVector::normalized(amps) {
            return s;
        }
    }
}

/// Mixture of `dim` random pure states with normalized exponential weights.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    random_density_rank(dim, dim, rng)
}

/// Mixture of `components` random pure states with normalized exponential
/// weights.
pub fn random_density_rank<R: Rng + ?Sized>(dim: usize, components: usize, rng: &mut R) -> DensityMatrix {
    assert!(components >= 1);
    let weights: Vec<f64> = (0..components).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(dim);
    for w in weights {
        let psi = random_state(dim, rng);
        let a = psi.amplitudes();
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] += a[i] * a[j].conj() * (w / total);
            }
        }
    }
    DensityMatrix(m)
}

/// A Haar-distributed unitary: Gram–Schmidt on the columns of a complex
/// Ginibre matrix, which leaves the triangular factor with a positive real
/// diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<C64>> = (0..dim)
            .map(|_| (0..dim).map(|_| complex_normal(rng)).collect())
            .collect();
        let mut ok = true;
        for k in 0..dim {
            for j in 0..k {
                let proj: C64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a.conj() * b).sum();
                let (head, tail) = cols.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= proj * y;
                }
            }
            let norm = l2(&cols[k]);
            if norm < 1e-12 {
                ok = false;
                break;
            }
            for x in &mut cols[k] {
                *x /= norm;
            }
        }
        if ok {
            return ComplexMatrix::from_fn(dim, |i, j| cols[j][i]);
        }
    }
}

/// A random Hermitian matrix with independent Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let x: f64 = StandardNormal.sample(rng);
        m[(i, i)] = C64::new(x, 0.0);
        for j in i + 1..dim {
            let z = complex_normal(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{any, prop_assert, proptest, ProptestConfig};
    use rand::Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigvals_examples() {
        let d = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(herm_eigvals(&d).unwrap(), vec![1.0, 2.0, 3.0]);
        let x = ComplexMatrix::from_row_major(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let e = herm_eigvals(&x).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-15 && (e[1] - 1.0).abs() < 1e-15);
        let y = ComplexMatrix::from_row_major(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let e = herm_eigvals(&y).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-15 && (e[1] - 1.0).abs() < 1e-15);
        let bad = ComplexMatrix::from_row_major(2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(herm_eigvals(&bad), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eigvals_match_quadratic_formula() {
        let mut rng = rng_from_seed(7);
        for _ in 0..200 {
            let m = random_hermitian(2, &mut rng);
            let (a, dd, b) = (m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
            let mean = (a + dd) / 2.0;
            let rad = (((a - dd) / 2.0).powi(2) + b.norm_sqr()).sqrt();
            let e = herm_eigvals(&m).unwrap();
            assert!((e[0] - (mean - rad)).abs() < 1e-12);
            assert!((e[1] - (mean + rad)).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_examples() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert_eq!(matrix_norm(&m, MatrixNorm::Trace).unwrap(), 2.0);
        assert!((matrix_norm(&m, MatrixNorm::Frobenius).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(matrix_norm(&m, MatrixNorm::Infinity).unwrap(), 1.0);
        let mut rng = rng_from_seed(3);
        let phi = random_state(2, &mut rng);
        let diff = phi.density().matrix() - DensityMatrix::maximally_mixed(2).matrix();
        assert!((matrix_norm(&diff, MatrixNorm::Trace).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_distance_examples() {
        let rho = StateVector::basis(2, 0).density();
        let sigma = StateVector::basis(2, 1).density();
        assert_eq!(trace_distance(&rho, &rho).unwrap(), 0.0);
        assert!((trace_distance(&rho, &sigma).unwrap() - 2.0).abs() < 1e-15);
        let skew = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[2.0 / 3.0, 1.0 / 3.0])).unwrap();
        let d = trace_distance(&skew, &DensityMatrix::maximally_mixed(2)).unwrap();
        assert!((d - 1.0 / 3.0).abs() < 1e-15);
        assert!(trace_distance(&rho, &DensityMatrix::maximally_mixed(4)).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.5, 0.4])).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[1.5, -0.5])).is_err());
        let mut rng = rng_from_seed(11);
        for d in [1, 2, 4, 8] {
            DensityMatrix::new(random_density(d, &mut rng).into_matrix()).unwrap();
        }
    }

    #[test]
    fn random_objects_are_valid() {
        let mut rng = rng_from_seed(1);
        for d in [1, 2, 5, 16, 64] {
            let s = random_state(d, &mut rng);
            assert!((s.norm() - 1.0).abs() < 1e-12);
            let u = haar_unitary(d, &mut rng);
            let defect = &(&u.adjoint() * &u) - &ComplexMatrix::identity(d);
            assert!(defect.frobenius() <= 1e-10, "d={d}: {}", defect.frobenius());
        }
    }

    #[test]
    fn random_states_have_mean_overlap_one_over_d() {
        for d in [2usize, 4, 8] {
            let mut rng = rng_from_seed(100 + d as u64);
            let fixed = StateVector::basis(d, 0);
            let n = 10_000;
            let samples: Vec<f64> = (0..n)
                .map(|_| fixed.inner(&random_state(d, &mut rng)).norm_sqr())
                .collect();
            let mean = samples.iter().sum::<f64>() / n as f64;
            let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let se = (var / n as f64).sqrt();
            assert!((mean - 1.0 / d as f64).abs() <= 5.0 * se, "d={d} mean={mean} se={se}");
        }
    }

    #[test]
    fn haar_columns_have_unbiased_phases() {
        // first entry of a Haar column has uniformly distributed phase
        let mut rng = rng_from_seed(5);
        let n = 4000;
        let mean: C64 = (0..n)
            .map(|_| {
                let u = haar_unitary(3, &mut rng);
                u[(0, 0)] / u[(0, 0)].norm()
            })
            .sum::<C64>()
            / n as f64;
        assert!(mean.norm() < 0.06, "{mean}");
    }

    #[test]
    fn unitary_invariance_of_spectrum() {
        let mut rng = rng_from_seed(21);
        for d in [2, 4, 8, 16] {
            let diag: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let u = haar_unitary(d, &mut rng);
            let m = &(&u * &ComplexMatrix::from_real_diagonal(&diag)) * &u.adjoint();
            let mut sorted = diag.clone();
            sorted.sort_by(f64::total_cmp);
            let e = herm_eigvals(&m).unwrap();
            for (x, y) in e.iter().zip(&sorted) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let mut rng = rng_from_seed(4);
        let m = random_hermitian(3, &mut rng);
        let text = m.to_text();
        assert!(text.starts_with("d=3\n"));
        let back = ComplexMatrix::from_text(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_text(), text);
        assert!(ComplexMatrix::from_text("d=2\n1 0\n").is_err());
        assert!(ComplexMatrix::from_text("d=1\n1 0 0\n").is_err());
    }

    #[test]
    fn fix_phase_makes_first_amplitude_positive() {
        let mut s = StateVector::normalized(vec![c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        s.fix_phase(1e-12);
        let a = s.amplitudes();
        assert!(a[1].im.abs() < 1e-15 && a[1].re > 0.0);
        assert!((a[2] - c(0.0, -1.0 / 2f64.sqrt())).norm() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn trace_distance_is_a_metric(seed in any::<u64>(), k in 1usize..4) {
            let d = 1 << k;
            let mut rng = rng_from_seed(seed);
            let (a, b, c) = (random_density(d, &mut rng), random_density(d, &mut rng), random_density(d, &mut rng));
            let ab = trace_distance(&a, &b).unwrap();
            prop_assert!((ab - trace_distance(&b, &a).unwrap()).abs() < 1e-10);
            prop_assert!(ab <= trace_distance(&a, &c).unwrap() + trace_distance(&c, &b).unwrap() + 1e-10);
            prop_assert!((0.0..=2.0 + 1e-12).contains(&ab));
        }

        #[test]
        fn eigenvalues_sum_to_trace(seed in any::<u64>(), d in 1usize..12) {
            let m = random_hermitian(d, &mut rng_from_seed(seed));
            let sum: f64 = herm_eigvals(&m).unwrap().iter().sum();
            prop_assert!((sum - m.trace().re).abs() < 1e-10);
            let fro = herm_eigvals(&m).unwrap().iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((fro - m.frobenius()).abs() < 1e-10);
        }
    }
}
