//! Randomizing channels.
//!
//! A [`PauliChannel`] is the map `ρ ↦ Σ_k w_k P_k ρ P_k†` for Pauli keys
//! `P_k = X^{a_k} Z^{b_k}`. Conjugation cancels phases, so keys are stored
//! by their labels `(a_k, b_k)` only and printed as plain letter words.
//!
//! Its [`FourierTable`] holds `c(u, v) = Σ_k w_k (-1)^{a_k·v + b_k·u}`, the
//! factor by which the channel scales the `X^u Z^v` component of its input.
//! The largest nontrivial `|c|`, call it δ, certifies that the channel is
//! `2^{n/2} δ`-randomizing in trace norm.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::bitlin::BitVector;
use crate::linalg::{haar_unitary, ComplexMatrix, DensityMatrix, StateVector, C64};
use crate::pauli::PauliOp;
use crate::smallbias::{aghp_space, parse_header, walsh_hadamard, SampleSpace};
use crate::{Error, Result};

/// Largest qubit count for dense channel application and Fourier tables.
pub const MAX_CHANNEL_QUBITS: usize = 8;

const WEIGHT_TOL: f64 = 1e-12;

/// Anything that maps `d`-dimensional density matrices to density matrices.
pub trait RandomizingMap: Sync {
    fn dim(&self) -> usize;

    fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix>;

    fn apply_pure(&self, psi: &StateVector) -> Result<DensityMatrix> {
        self.apply(&psi.density())
    }
}

/// A mixture of Pauli conjugations.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliChannel {
    n: usize,
    ops: Vec<PauliOp>,
    weights: Option<Vec<f64>>,
    source: Option<SampleSpace>,
}

impl PauliChannel {
    /// Uniform mixture over `ops` (duplicates count with multiplicity).
    pub fn new(n: usize, ops: Vec<PauliOp>) -> Result<Self> {
        let ops = normalize_ops(n, ops)?;
        let source = keys_to_space(n, &ops)?;
        Ok(PauliChannel {
            n,
            ops,
            weights: None,
            source: Some(source),
        })
    }

    /// Mixture with explicit weights, which must be nonnegative and sum to 1.
    pub fn with_weights(n: usize, ops: Vec<PauliOp>, weights: Vec<f64>) -> Result<Self> {
        let ops = normalize_ops(n, ops)?;
        if weights.len() != ops.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} operators",
                weights.len(),
                ops.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument("weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidArgument(format!("weights sum to {total}, not 1")));
        }
        Ok(PauliChannel {
            n,
            ops,
            weights: Some(weights),
            source: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of keys `m`.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[PauliOp] {
        &self.ops
    }

    pub fn weight(&self, k: usize) -> f64 {
        match &self.weights {
            Some(w) => w[k],
            None => 1.0 / self.ops.len() as f64,
        }
    }

    pub fn has_uniform_weights(&self) -> bool {
        self.weights.is_none()
    }

    /// The key multiset as a space of `2n`-bit strings `(a | b)`, available
    /// for uniformly weighted channels.
    pub fn source(&self) -> Option<&SampleSpace> {
        self.source.as_ref()
    }

    /// Bits needed to index a key: `ceil(log2 m)`.
    pub fn key_bits(&self) -> u32 {
        let m = self.ops.len() as u64;
        if m <= 1 {
            0
        } else {
            64 - (m - 1).leading_zeros()
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    fn check_dense(&self) -> Result<()> {
        if self.n > MAX_CHANNEL_QUBITS {
            return Err(Error::Capacity(format!(
                "dense channel on {} > {MAX_CHANNEL_QUBITS} qubits",
                self.n
            )));
        }
        Ok(())
    }

    /// Weight on each key label `a | b << n`.
    fn key_distribution(&self) -> Vec<f64> {
        let mut p = vec![0.0; 1usize << (2 * self.n)];
        for (k, op) in self.ops.iter().enumerate() {
            let idx = op.x_bits().to_u64() as usize | (op.z_bits().to_u64() as usize) << self.n;
            p[idx] += self.weight(k);
        }
        p
    }

    /// `Σ_k w_k P_k ρ P_k†`.
    ///
    /// Keys sharing an X part `a` act as `ρ[r⊕a][t⊕a]` scaled by
    /// `g_a(r⊕t) = Σ_{b} w_{a,b} (-1)^{b·(r⊕t)}`, so each distinct `a` costs
    /// one transform over `b` and one pass over the matrix.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_dense()?;
        let d = self.dim();
        if rho.dim() != d {
            return Err(Error::Dimension(format!(
                "{}-qubit channel on a state of dimension {}",
                self.n,
                rho.dim()
            )));
        }
        let mut by_x: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
        for (k, op) in self.ops.iter().enumerate() {
            let a = op.x_bits().to_u64() as usize;
            let b = op.z_bits().to_u64() as usize;
            by_x.entry(a).or_insert_with(|| vec![0.0; d])[b] += self.weight(k);
        }
        let src = rho.matrix().as_slice();
        let mut out = ComplexMatrix::zeros(d);
        let dst = out.as_mut_slice();
        for (a, mut g) in by_x {
            walsh_hadamard(&mut g);
            for r in 0..d {
                let s = r ^ a;
                let row = &src[s * d..(s + 1) * d];
                let out_row = &mut dst[r * d..(r + 1) * d];
                for t in 0..d {
                    out_row[t] += row[t ^ a] * g[r ^ t];
                }
            }
        }
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }

    /// The Fourier table `c(u, v)`.
    pub fn fourier(&self) -> Result<FourierTable> {
        self.check_dense()?;
        let n = self.n;
        let mut w = self.key_distribution();
        walsh_hadamard(&mut w);
        // w[β_a | β_b << n] = Σ p (-1)^{a·β_a + b·β_b}; c(u, v) needs β = (v, u)
        let mask = (1usize << n) - 1;
        let coeffs = (0..w.len())
            .map(|idx| {
                let (u, v) = (idx & mask, idx >> n);
                w[v | u << n]
            })
            .collect();
        Ok(FourierTable { n, coeffs })
    }

    /// `2^{n/2} · max_{(u,v) ≠ 0} |c(u, v)|`.
    pub fn certified_epsilon(&self) -> Result<f64> {
        Ok(self.fourier()?.certified_epsilon())
    }

    /// Text form: `n=<n> m=<m>` then one Pauli word per line, each followed
    /// by ` w=<weight>` when the channel carries explicit weights.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl RandomizingMap for PauliChannel {
    fn dim(&self) -> usize {
        PauliChannel::dim(self)
    }

    fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        PauliChannel::apply(self, rho)
    }
}

fn normalize_ops(n: usize, ops: Vec<PauliOp>) -> Result<Vec<PauliOp>> {
    if ops.is_empty() {
        return Err(Error::InvalidArgument("a channel needs at least one operator".into()));
    }
    if n > 62 {
        return Err(Error::Capacity(format!("{n} qubits")));
    }
    ops.into_iter()
        .map(|op| {
            if op.n() != n {
                return Err(Error::Dimension(format!(
                    "{}-qubit operator in a {n}-qubit channel",
                    op.n()
                )));
            }
            PauliOp::hermitian(op.x_bits().clone(), op.z_bits().clone())
        })
        .collect()
}

fn keys_to_space(n: usize, ops: &[PauliOp]) -> Result<SampleSpace> {
    SampleSpace::new(2 * n, ops.iter().map(PauliOp::label).collect())
}

impl fmt::Display for PauliChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} m={}", self.n, self.ops.len())?;
        for (k, op) in self.ops.iter().enumerate() {
            match &self.weights {
                Some(w) => writeln!(f, "{op} w={}", w[k])?,
                None => writeln!(f, "{op}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PauliChannel {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty channel file".into()))?;
        let fields = parse_header(header, &["n", "m"])?;
        let (n, m) = (fields[0], fields[1]);
        let mut ops = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for line in lines {
            let mut parts = line.split_whitespace();
            let word = parts.next().expect("line is not blank");
            ops.push(word.parse::<PauliOp>()?);
            if let Some(w) = parts.next() {
                let value = w
                    .strip_prefix("w=")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::Parse(format!("expected w=<weight>, got {w:?}")))?;
                weights.push(value);
            }
            if parts.next().is_some() {
                return Err(Error::Parse(format!("trailing fields in {line:?}")));
            }
        }
        if ops.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} operators, found {}",
                ops.len()
            )));
        }
        match weights.len() {
            0 => PauliChannel::new(n, ops),
            k if k == m => PauliChannel::with_weights(n, ops, weights),
            _ => Err(Error::Parse("either every operator or none carries a weight".into())),
        }
    }
}

/// Fourier coefficients `c(u, v)` indexed by `u | v << n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierTable {
    n: usize,
    coeffs: Vec<f64>,
}

impl FourierTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// `c(u, v)` for integer labels.
    pub fn at(&self, u: usize, v: usize) -> f64 {
        self.coeffs[u | v << self.n]
    }

    pub fn get(&self, u: &BitVector, v: &BitVector) -> Result<f64> {
        if u.len() != self.n || v.len() != self.n {
            return Err(Error::Dimension(format!(
                "labels of length {}, {} for n = {}",
                u.len(),
                v.len(),
                self.n
            )));
        }
        Ok(self.at(u.to_u64() as usize, v.to_u64() as usize))
    }

    /// Largest `|c(u, v)|` over `(u, v) ≠ (0, 0)` with its first maximizer.
    pub fn max_nontrivial(&self) -> (f64, usize, usize) {
        let mask = (1usize << self.n) - 1;
        let (idx, val) = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .fold(
                (0usize, -1.0f64),
                |(bi, bv), (i, c)| if c.abs() > bv { (i, c.abs()) } else { (bi, bv) },
            );
        if idx == 0 {
            return (0.0, 0, 0);
        }
        (val, idx & mask, idx >> self.n)
    }

    /// δ, the channel's bias.
    pub fn delta(&self) -> f64 {
        self.max_nontrivial().0
    }

    pub fn certified_epsilon(&self) -> f64 {
        2f64.powf(self.n as f64 / 2.0) * self.delta()
    }
}

/// The uniform mixture over all `4^n` Paulis.
pub fn qotp(n: usize) -> Result<PauliChannel> {
    if n > MAX_CHANNEL_QUBITS {
        return Err(Error::Capacity(format!(
            "one-time pad on {n} > {MAX_CHANNEL_QUBITS} qubits"
        )));
    }
    channel_from_space(&SampleSpace::full_cube(2 * n)?)
}

/// The channel whose keys are the strings of `space`, split as `(a | b)`.
pub fn channel_from_space(space: &SampleSpace) -> Result<PauliChannel> {
    if !space.n().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "{}-bit strings do not split into (a, b) halves",
            space.n()
        )));
    }
    let n = space.n() / 2;
    let ops = space
        .strings()
        .iter()
        .map(PauliOp::from_label)
        .collect::<Result<Vec<_>>>()?;
    let mut ch = PauliChannel::new(n, ops)?;
    ch.source = Some(space.clone());
    Ok(ch)
}

/// Smallest `(r, s)` with `s = ceil(2n / r)` and `(s - 1) / 2^r <= ε 2^{-n/2}`
/// that uses fewer keys than the one-time pad, or `None` when no such
/// choice exists.
pub fn aghp_parameters(n: usize, epsilon: f64) -> Result<Option<(u32, usize)>> {
    if !(epsilon > 0.0 && epsilon <= 2.0) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} outside (0, 2]")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let target = epsilon * 2f64.powf(-(n as f64) / 2.0);
    for r in 1..(n as u32).min(crate::smallbias::MAX_AGHP_DEGREE + 1) {
        let s = (2 * n).div_ceil(r as usize);
        let bias = (s as f64 - 1.0) / f64::from(1u32 << r);
        if bias <= target * (1.0 + 1e-12) {
            return Ok(Some((r, s)));
        }
    }
    Ok(None)
}

/// An ε-randomizing channel from the AGHP space, truncated to `2n` bits, or
/// the one-time pad when the space would not be smaller.
pub fn aghp_channel(n: usize, epsilon: f64) -> Result<PauliChannel> {
    match aghp_parameters(n, epsilon)? {
        Some((r, s)) => channel_from_space(&aghp_space(r, s)?.truncate(2 * n)?),
        None => qotp(n),
    }
}

/// `m` independent uniformly random Pauli keys.
pub fn random_pauli_channel<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<PauliChannel> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if n == 0 || n > 62 {
        return Err(Error::InvalidArgument(format!("unsupported qubit count {n}")));
    }
    let mask = (1u64 << n) - 1;
    let ops = (0..m)
        .map(|_| {
            let a = rng.random::<u64>() & mask;
            let b = rng.random::<u64>() & mask;
            PauliOp::from_xz(BitVector::from_u64(a, n), BitVector::from_u64(b, n))
        })
        .collect::<Result<Vec<_>>>()?;
    PauliChannel::new(n, ops)
}

pub fn apply_channel(channel: &PauliChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    channel.apply(rho)
}

pub fn fourier_coeffs(channel: &PauliChannel) -> Result<FourierTable> {
    channel.fourier()
}

pub fn certified_epsilon(channel: &PauliChannel) -> Result<f64> {
    channel.certified_epsilon()
}

/// `α(u, v) = tr(Z^v X^u ρ)`, indexed by `u | v << n`, so that
/// `ρ = 2^{-n} Σ α(u, v) X^u Z^v`.
pub fn pauli_coefficients(rho: &DensityMatrix) -> Result<Vec<C64>> {
    let d = rho.dim();
    if !d.is_power_of_two() {
        return Err(Error::Dimension(format!("dimension {d} is not a power of two")));
    }
    let n = d.trailing_zeros() as usize;
    let m = rho.matrix();
    // tr(Z^v X^u ρ) = Σ_c (-1)^{v·c} ρ[c ⊕ u][c]
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for u in 0..d {
        let mut diag: Vec<C64> = (0..d).map(|c| m[(c ^ u, c)]).collect();
        walsh_hadamard(&mut diag);
        for (v, val) in diag.into_iter().enumerate() {
            out[u | v << n] = val;
        }
    }
    Ok(out)
}

/// A uniform mixture of conjugations by arbitrary unitaries.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryChannel {
    dim: usize,
    unitaries: Vec<ComplexMatrix>,
}

impl UnitaryChannel {
    pub fn new(unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = unitaries
            .first()
            .ok_or_else(|| Error::InvalidArgument("a channel needs at least one unitary".into()))?
            .dim();
        for u in &unitaries {
            if u.dim() != dim {
                return Err(Error::Dimension("unitaries of different dimensions".into()));
            }
            let defect = (&(&u.adjoint() * u) - &ComplexMatrix::identity(dim)).frobenius();
            if defect > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "matrix is not unitary (defect {defect:e})"
                )));
            }
        }
        Ok(UnitaryChannel { dim, unitaries })
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }
}

impl RandomizingMap for UnitaryChannel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "channel of dimension {} on state of dimension {}",
                self.dim,
                rho.dim()
            )));
        }
        let w = C64::new(1.0 / self.unitaries.len() as f64, 0.0);
        let mut out = ComplexMatrix::zeros(self.dim);
        for u in &self.unitaries {
            let conj = &(u * rho.matrix()) * &u.adjoint();
            out = &out + &conj.scale(w);
        }
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }

    fn apply_pure(&self, psi: &StateVector) -> Result<DensityMatrix> {
        if psi.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "channel of dimension {} on state of dimension {}",
                self.dim,
                psi.dim()
            )));
        }
        let w = 1.0 / self.unitaries.len() as f64;
        let mut out = ComplexMatrix::zeros(self.dim);
        for u in &self.unitaries {
            let v = u.mul_vec(psi.amplitudes());
            for i in 0..self.dim {
                for j in 0..self.dim {
                    out[(i, j)] += v[i] * v[j].conj() * w;
                }
            }
        }
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }
}

/// `m` independent Haar-random unitaries of dimension `dim`.
pub fn haar_channel<R: Rng + ?Sized>(dim: usize, m: usize, rng: &mut R) -> Result<UnitaryChannel> {
    if m == 0 || dim == 0 {
        return Err(Error::InvalidArgument("haar channel needs m >= 1 and dim >= 1".into()));
    }
    UnitaryChannel::new((0..m).map(|_| haar_unitary(dim, rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_density, rng_from_seed, trace_distance};

    fn ixz() -> PauliChannel {
        PauliChannel::new(
            1,
            vec!["I".parse().unwrap(), "X".parse().unwrap(), "Z".parse().unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn qotp_examples() {
        let q1 = qotp(1).unwrap();
        let words: Vec<String> = q1.ops().iter().map(|p| p.to_string()).collect();
        assert_eq!(words, ["I", "X", "Z", "Y"]);
        for n in 1..=4 {
            assert_eq!(qotp(n).unwrap().len(), 1 << (2 * n));
        }
        assert!(matches!(qotp(9), Err(Error::Capacity(_))));
        let mut rng = rng_from_seed(0);
        for n in 1..=3 {
            let rho = random_density(1 << n, &mut rng);
            let out = qotp(n).unwrap().apply(&rho).unwrap();
            let d = trace_distance(&out, &DensityMatrix::maximally_mixed(1 << n)).unwrap();
            assert!(d < 1e-14, "n={n} d={d}");
        }
    }

    #[test]
    fn from_space_examples() {
        let zero = SampleSpace::parse_strings(&["0000"]).unwrap();
        let id = channel_from_space(&zero).unwrap();
        let rho = random_density(4, &mut rng_from_seed(1));
        let out = id.apply(&rho).unwrap();
        assert!((out.matrix() - rho.matrix()).frobenius() < 1e-15);
        assert_eq!(
            channel_from_space(&SampleSpace::full_cube(4).unwrap()).unwrap(),
            qotp(2).unwrap()
        );
        let s = SampleSpace::parse_strings(&["00", "10", "01"]).unwrap();
        assert_eq!(channel_from_space(&s).unwrap(), ixz());
        assert!(channel_from_space(&SampleSpace::parse_strings(&["000"]).unwrap()).is_err());
    }

    #[test]
    fn ixz_on_zero_state() {
        let out = ixz().apply(&StateVector::basis(2, 0).density()).unwrap();
        let m = out.matrix();
        assert!((m[(0, 0)].re - 2.0 / 3.0).abs() < 1e-15);
        assert!((m[(1, 1)].re - 1.0 / 3.0).abs() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn fourier_examples() {
        let t = ixz().fourier().unwrap();
        assert_eq!(t.at(0, 0), 1.0);
        assert!((t.at(1, 1) + 1.0 / 3.0).abs() < 1e-15);
        // c(1,0): X^1 component; signs (+, +, -) from b·u
        assert!((t.at(1, 0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((t.certified_epsilon() - 2f64.sqrt() / 3.0).abs() < 1e-12);
        for n in 1..=3 {
            let t = qotp(n).unwrap().fourier().unwrap();
            assert_eq!(t.at(0, 0), 1.0);
            assert!(t.coefficients()[1..].iter().all(|&c| c == 0.0));
            assert_eq!(t.certified_epsilon(), 0.0);
        }
    }

    #[test]
    fn aghp_parameter_search() {
        assert_eq!(aghp_parameters(8, 0.5).unwrap(), Some((6, 3)));
        let ch = aghp_channel(8, 0.5).unwrap();
        assert_eq!((ch.len(), ch.key_bits()), (4096, 12));
        assert_eq!(aghp_parameters(2, 0.5).unwrap(), None);
        assert_eq!(aghp_channel(2, 0.5).unwrap(), qotp(2).unwrap());
        for n in 1..=8 {
            let eps = 2f64.powf(-(n as f64) / 2.0);
            assert_eq!(aghp_parameters(n, eps).unwrap(), None);
            assert_eq!(aghp_parameters(n, eps / 3.0).unwrap(), None);
        }
        assert!(aghp_parameters(4, 0.0).is_err());
        assert!(aghp_parameters(4, 2.5).is_err());
    }

    #[test]
    fn random_channel_is_reproducible() {
        let a = random_pauli_channel(3, 10, &mut rng_from_seed(9)).unwrap();
        let b = random_pauli_channel(3, 10, &mut rng_from_seed(9)).unwrap();
        assert_eq!(a, b);
        let one = random_pauli_channel(2, 1, &mut rng_from_seed(1)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.ops()[0].n(), 2);
        assert!(random_pauli_channel(2, 0, &mut rng_from_seed(1)).is_err());
    }

    #[test]
    fn key_bits_round_up() {
        assert_eq!(ixz().key_bits(), 2);
        assert_eq!(qotp(3).unwrap().key_bits(), 6);
        assert_eq!(PauliChannel::new(1, vec!["X".parse().unwrap()]).unwrap().key_bits(), 0);
    }

    #[test]
    fn text_format() {
        let text = ixz().to_text();
        assert_eq!(text, "n=1 m=3\nI\nX\nZ\n");
        assert_eq!(PauliChannel::from_text(&text).unwrap(), ixz());
        let w =
            PauliChannel::with_weights(1, vec!["I".parse().unwrap(), "Y".parse().unwrap()], vec![0.75, 0.25]).unwrap();
        let text = w.to_text();
        assert_eq!(text, "n=1 m=2\nI w=0.75\nY w=0.25\n");
        assert_eq!(PauliChannel::from_text(&text).unwrap().to_text(), text);
        assert!(PauliChannel::from_text("n=1 m=2\nI w=0.5\nX\n").is_err());
        assert!(PauliChannel::from_text("n=1 m=2\nI\n").is_err());
        assert!(PauliChannel::from_text("n=2 m=1\nX\n").is_err());
        assert!(PauliChannel::from_text("n=1 m=1\nX w=2\n").is_err());
        // phases are dropped on input
        assert_eq!(
            PauliChannel::from_text("n=1 m=1\n-iY\n").unwrap().to_text(),
            "n=1 m=1\nY\n"
        );
    }

    #[test]
    fn weighted_channels_have_no_source() {
        let w =
            PauliChannel::with_weights(1, vec!["I".parse().unwrap(), "X".parse().unwrap()], vec![0.5, 0.5]).unwrap();
        assert!(w.source().is_none());
        assert!(ixz().source().is_some());
    }

    #[test]
    fn pauli_coefficients_reconstruct_state() {
        let rho = random_density(4, &mut rng_from_seed(2));
        let alpha = pauli_coefficients(&rho).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(4);
        for u in 0..4usize {
            for v in 0..4usize {
                let p = PauliOp::from_xz(BitVector::from_u64(u as u64, 2), BitVector::from_u64(v as u64, 2)).unwrap();
                rebuilt = &rebuilt + &p.to_matrix().scale(alpha[u | v << 2] / 4.0);
            }
        }
        assert!((&rebuilt - rho.matrix()).frobenius() < 1e-12);
    }

    #[test]
    fn haar_channel_outputs_are_states() {
        let mut rng = rng_from_seed(8);
        let ch = haar_channel(4, 5, &mut rng).unwrap();
        let psi = crate::linalg::random_state(4, &mut rng);
        let a = ch.apply_pure(&psi).unwrap();
        let b = RandomizingMap::apply(&ch, &psi.density()).unwrap();
        assert!((a.matrix() - b.matrix()).frobenius() < 1e-12);
        DensityMatrix::new(a.into_matrix()).unwrap();
    }
}
