//! Lower bounds on a channel's true epsilon.
//!
//! [`empirical_epsilon`] searches for a bad input state: random probes,
//! structured families (product eigenstates, cat states, stabilizer states)
//! and a derivative-free hill climb from the best candidates. Every value it
//! reports is reproduced by the witness it returns.
//!
//! The condition functions evaluate the channel on structured inputs
//! exactly, from the key space alone. On a product eigenstate, a stabilizer
//! state or a subspace state the output is diagonal in a known orthonormal
//! basis, so the trace distance is a variation distance of key labels.

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bitlin::{BitMatrix, BitVector};
use crate::channel::{PauliChannel, RandomizingMap};
use crate::linalg::{
    complex_normal, matrix_norm, random_state, rng_from_seed, rng_stream, ComplexMatrix, MatrixNorm, StateVector, C64,
};
use crate::pauli::{all_words, format_axes, sigma_v, swap_halves, Axis, PauliOp, StabilizerGroup};
use crate::smallbias::{bias_at, variation_from_uniform, SampleSpace};
use crate::{Error, Result};

/// Largest dimension the attack handles (8 qubits).
pub const MAX_ATTACK_DIM: usize = 256;
/// Witness count above which family enumerations are sampled.
pub const FAMILY_CAP: usize = 6561;
/// Largest `n` for exhaustive diagnostic scans.
pub const EXHAUSTIVE_DIAGNOSE_QUBITS: usize = 6;
/// Witnesses drawn per scan above [`EXHAUSTIVE_DIAGNOSE_QUBITS`].
pub const SAMPLED_WITNESSES: usize = 4096;
/// Random groups in the stabilizer catalog.
pub const RANDOM_CATALOG_GROUPS: usize = 32;
/// Seed of the random part of the stabilizer catalog and of sampled scans.
pub const CATALOG_SEED: u64 = 0x5151_c0de;

const FAMILY_STREAM: u64 = 1 << 40;
const CLIMB_STREAM: u64 = 1 << 41;

/// Which structured input families the attack tries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Families {
    pub product: bool,
    pub cat: bool,
    pub stabilizer: bool,
}

impl Families {
    pub fn all() -> Self {
        Families {
            product: true,
            cat: true,
            stabilizer: true,
        }
    }

    pub fn none() -> Self {
        Families {
            product: false,
            cat: false,
            stabilizer: false,
        }
    }
}

impl Default for Families {
    fn default() -> Self {
        Self::all()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttackConfig {
    /// Random pure states to evaluate.
    pub probes: usize,
    pub seed: u64,
    pub norm: MatrixNorm,
    pub families: Families,
    /// Hill-climb rounds per restart; 0 disables refinement.
    pub rounds: usize,
    /// Number of best candidates refined independently.
    pub restarts: usize,
}

impl Default for AttackConfig {
    fn default() -> Self {
        AttackConfig {
            probes: 200,
            seed: 0,
            norm: MatrixNorm::Trace,
            families: Families::all(),
            rounds: 200,
            restarts: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttackReport {
    pub dim: usize,
    /// Best `‖E(ψ) - I/d‖` found.
    pub epsilon_hat: f64,
    pub norm_kind: MatrixNorm,
    pub probes: usize,
    /// States evaluated in total, including families and refinement.
    pub evaluations: usize,
    pub families_used: Vec<String>,
    /// The family whose candidate led to the witness.
    pub best_family: String,
    #[serde(serialize_with = "serialize_state")]
    pub witness: StateVector,
}

fn serialize_state<S: Serializer>(psi: &StateVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(psi.amplitudes().iter().map(|z| [z.re, z.im]))
}

/// `‖E(ψψ†) - I/d‖` in the chosen norm.
pub fn deviation<M: RandomizingMap + ?Sized>(map: &M, psi: &StateVector, norm: MatrixNorm) -> Result<f64> {
    let out = map.apply_pure(psi)?;
    let d = out.dim();
    let mut diff = out.into_matrix();
    let shift = C64::new(1.0 / d as f64, 0.0);
    for i in 0..d {
        diff[(i, i)] -= shift;
    }
    matrix_norm(&diff, norm)
}

struct Candidate {
    value: f64,
    family: &'static str,
    state: StateVector,
}

fn evaluate_all<M: RandomizingMap + ?Sized>(
    map: &M,
    family: &'static str,
    states: Vec<StateVector>,
    norm: MatrixNorm,
) -> Result<Vec<Candidate>> {
    states
        .into_par_iter()
        .map(|state| {
            let value = deviation(map, &state, norm)?;
            Ok(Candidate { value, family, state })
        })
        .collect()
}

/// Searches for the state that `map` leaves farthest from `I/d`.
///
/// The result depends only on `map` and `cfg`, not on the thread count:
/// every random draw comes from a stream keyed by its index.
pub fn empirical_epsilon<M: RandomizingMap + ?Sized>(map: &M, cfg: &AttackConfig) -> Result<AttackReport> {
    let d = map.dim();
    if d > MAX_ATTACK_DIM {
        return Err(Error::Capacity(format!("attack on dimension {d} > {MAX_ATTACK_DIM}")));
    }
    let qubits = d.is_power_of_two().then(|| d.trailing_zeros() as usize);
    let mut used = Vec::new();
    let mut candidates = Vec::new();

    if cfg.probes > 0 {
        used.push("random".to_string());
        let states = (0..cfg.probes)
            .into_par_iter()
            .map(|i| random_state(d, &mut rng_stream(cfg.seed, i as u64)))
            .collect();
        candidates.extend(evaluate_all(map, "random", states, cfg.norm)?);
    }
    if let Some(n) = qubits.filter(|&n| n > 0) {
        let mut rng = rng_stream(cfg.seed, FAMILY_STREAM);
        if cfg.families.product {
            used.push("product".to_string());
            let states = capped_words(&Axis::NON_IDENTITY, n, false, &mut rng)
                .iter()
                .map(|v| product_state(v))
                .collect();
            candidates.extend(evaluate_all(map, "product", states, cfg.norm)?);
        }
        if cfg.families.cat {
            used.push("cat".to_string());
            let states = capped_words(&Axis::ALL, n, true, &mut rng)
                .iter()
                .map(|w| cat_state(w))
                .collect::<Result<Vec<_>>>()?;
            candidates.extend(evaluate_all(map, "cat", states, cfg.norm)?);
        }
        if cfg.families.stabilizer {
            used.push("stabilizer".to_string());
            let states = stabilizer_catalog(n, false)?
                .iter()
                .map(StabilizerGroup::state)
                .collect::<Result<Vec<_>>>()?;
            candidates.extend(evaluate_all(map, "stabilizer", states, cfg.norm)?);
        }
    }
    if candidates.is_empty() {
        used.push("basis".to_string());
        candidates.extend(evaluate_all(map, "basis", vec![StateVector::basis(d, 0)], cfg.norm)?);
    }
    let evaluated = candidates.len();

    // stable sort: ties keep generation order
    candidates.sort_by(|x, y| y.value.total_cmp(&x.value));
    let mut evaluations = evaluated;
    if cfg.rounds > 0 && cfg.restarts > 0 {
        used.push("hill-climb".to_string());
        let starts: Vec<&Candidate> = candidates.iter().take(cfg.restarts).collect();
        let refined: Vec<(Candidate, usize)> = starts
            .par_iter()
            .enumerate()
            .map(|(k, c)| {
                let mut rng = rng_stream(cfg.seed, CLIMB_STREAM + k as u64);
                hill_climb(map, c, cfg.rounds, cfg.norm, &mut rng)
            })
            .collect::<Result<_>>()?;
        for (c, evals) in refined {
            evaluations += evals;
            if c.value > candidates[0].value {
                candidates[0] = c;
            }
        }
    }
    let best = candidates.swap_remove(0);
    Ok(AttackReport {
        dim: d,
        epsilon_hat: best.value,
        norm_kind: cfg.norm,
        probes: cfg.probes,
        evaluations,
        families_used: used,
        best_family: best.family.to_string(),
        witness: best.state,
    })
}

/// Gaussian perturbation with scale starting at 0.1, halved after 10
/// consecutive failures; only improvements are kept.
fn hill_climb<M: RandomizingMap + ?Sized, R: Rng + ?Sized>(
    map: &M,
    start: &Candidate,
    rounds: usize,
    norm: MatrixNorm,
    rng: &mut R,
) -> Result<(Candidate, usize)> {
    let mut state = start.state.clone();
    let mut value = start.value;
    let mut sigma = 0.1;
    let mut failures = 0;
    for _ in 0..rounds {
        let amps: Vec<C64> = state
            .amplitudes()
            .iter()
            .map(|&z| z + complex_normal(rng) * sigma)
            .collect();
        let trial = StateVector::normalized(amps)?;
        let v = deviation(map, &trial, norm)?;
        if v > value {
            state = trial;
            value = v;
            failures = 0;
        } else {
            failures += 1;
            if failures == 10 {
                sigma *= 0.5;
                failures = 0;
            }
        }
    }
    Ok((
        Candidate {
            value,
            family: start.family,
            state,
        },
        rounds,
    ))
}

/// Every word over `letters` (minus the all-`I` word when `skip_identity`),
/// or [`FAMILY_CAP`] random ones when there are more.
fn capped_words<R: Rng + ?Sized>(letters: &[Axis], n: usize, skip_identity: bool, rng: &mut R) -> Vec<Vec<Axis>> {
    let total = (letters.len() as f64).powi(n as i32);
    if total <= FAMILY_CAP as f64 + 1.0 {
        all_words(letters, n)
            .into_iter()
            .filter(|w| !skip_identity || w.iter().any(|&a| a != Axis::I))
            .collect()
    } else {
        sample_words(letters, n, FAMILY_CAP, skip_identity, rng)
    }
}

fn sample_words<R: Rng + ?Sized>(
    letters: &[Axis],
    n: usize,
    count: usize,
    skip_identity: bool,
    rng: &mut R,
) -> Vec<Vec<Axis>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w: Vec<Axis> = (0..n).map(|_| letters[rng.random_range(0..letters.len())]).collect();
        if !skip_identity || w.iter().any(|&a| a != Axis::I) {
            out.push(w);
        }
    }
    out
}

fn single_qubit_eigenstate(axis: Axis) -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match axis {
        Axis::I | Axis::Z => vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        Axis::X => vec![C64::new(h, 0.0), C64::new(h, 0.0)],
        Axis::Y => vec![C64::new(h, 0.0), C64::new(0.0, h)],
    };
    StateVector::new(amps).expect("unit vector")
}

/// `⊗_j |+V_j⟩`, the joint +1 eigenstate of the letters of `basis`
/// (`|0⟩` at `I` positions).
pub fn product_state(basis: &[Axis]) -> StateVector {
    // qubit 1 is the least significant index bit, so it goes last in the product
    let mut rev = basis.iter().rev();
    let first = rev
        .next()
        .map_or_else(|| StateVector::basis(1, 0), |&a| single_qubit_eigenstate(a));
    rev.fold(first, |acc, &a| acc.kron(&single_qubit_eigenstate(a)))
}

/// `(|x⟩ + |x̄⟩)/√2` on the support of `w`, written in local eigenbases so
/// that it is the +1 eigenstate of the conjugate word (`X ↔ Z` swapped).
///
/// That conjugate word is the Pauli component the channel scales by the
/// bias of the parity `w` selects, so `E(cat_w)` sits at least that bias
/// away from `I/d`.
pub fn cat_state(w: &[Axis]) -> Result<StateVector> {
    let support: Vec<usize> = (0..w.len()).filter(|&j| w[j] != Axis::I).collect();
    if support.is_empty() {
        return Err(Error::InvalidTest("cat state for the all-I word".into()));
    }
    let d = 1usize << w.len();
    let mask: usize = support.iter().map(|&j| 1usize << j).sum();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![C64::new(0.0, 0.0); d];
    amps[0] = C64::new(h, 0.0);
    amps[mask] = C64::new(h, 0.0);
    // GHZ is the +1 eigenstate of X on the support; rotate X to the target letter
    for &j in &support {
        match w[j] {
            Axis::X => hadamard(&mut amps, j),
            Axis::Y => phase_gate(&mut amps, j),
            _ => {}
        }
    }
    let mut psi = StateVector::normalized(amps)?;
    psi.fix_phase(1e-12);
    Ok(psi)
}

fn hadamard(amps: &mut [C64], qubit: usize) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bit = 1usize << qubit;
    for i in (0..amps.len()).filter(|i| i & bit == 0) {
        let (x, y) = (amps[i], amps[i | bit]);
        amps[i] = (x + y) * h;
        amps[i | bit] = (x - y) * h;
    }
}

/// `S = diag(1, i)`, which maps `X` to `Y` under conjugation.
fn phase_gate(amps: &mut [C64], qubit: usize) {
    let bit = 1usize << qubit;
    for (i, a) in amps.iter_mut().enumerate() {
        if i & bit != 0 {
            *a *= C64::new(0.0, 1.0);
        }
    }
}

/// `2^{-k/2} Σ_{w ∈ W} |w⟩` for the row space `W` of `basis`.
pub fn subspace_state(basis: &BitMatrix) -> Result<StateVector> {
    let n = basis.cols();
    if n > crate::pauli::MAX_DENSE_QUBITS {
        return Err(Error::Capacity(format!("subspace state on {n} qubits")));
    }
    if basis.rank() != basis.rows() {
        return Err(Error::DependentGenerators);
    }
    let k = basis.rows();
    let rows: Vec<usize> = basis.row_vectors().iter().map(|r| r.to_u64() as usize).collect();
    let amp = C64::new(2f64.powf(-(k as f64) / 2.0), 0.0);
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    for combo in 0..(1usize << k) {
        let w = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| combo >> i & 1 == 1)
            .fold(0, |acc, (_, r)| acc ^ r);
        amps[w] = amp;
    }
    StateVector::new(amps)
}

fn key_halves(space: &SampleSpace) -> Result<usize> {
    if !space.n().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "{}-bit keys do not split into (a, b) halves",
            space.n()
        )));
    }
    Ok(space.n() / 2)
}

fn label_distance(space: &SampleSpace, bits: usize, label: impl Fn(&BitVector) -> Result<u64>) -> Result<f64> {
    if bits > 20 {
        return Err(Error::Capacity(format!("{bits}-bit labels")));
    }
    let mut counts = vec![0u64; 1 << bits];
    for s in space.strings() {
        counts[label(s)? as usize] += 1;
    }
    Ok(variation_from_uniform(&counts, space.size()))
}

/// Variation distance of `σ_V(a, b)` from uniform; equals the trace distance
/// of the channel output on the product eigenstate of `V` when `V` has no
/// `I` letters.
pub fn sigma_v_condition(space: &SampleSpace, basis: &[Axis]) -> Result<f64> {
    let n = key_halves(space)?;
    if basis.len() != n {
        return Err(Error::Dimension(format!(
            "basis of length {} for {n}-qubit keys",
            basis.len()
        )));
    }
    let ell = basis.iter().filter(|&&a| a != Axis::I).count();
    if ell == 0 {
        return Err(Error::InvalidTest("all-I basis".into()));
    }
    label_distance(space, ell, |s| {
        let (a, b) = s.split_halves()?;
        Ok(sigma_v(basis, &a, &b)?.to_u64())
    })
}

/// The test `α` on `(a | b)` induced by `w`: `X → a_j`, `Z → b_j`,
/// `Y → a_j ⊕ b_j`.
pub fn cat_test(w: &[Axis]) -> BitVector {
    let n = w.len();
    let mut alpha = BitVector::zeros(2 * n);
    for (j, &ax) in w.iter().enumerate() {
        if matches!(ax, Axis::X | Axis::Y) {
            alpha.set(j, true);
        }
        if matches!(ax, Axis::Z | Axis::Y) {
            alpha.set(n + j, true);
        }
    }
    alpha
}

/// Bias of the parity of key bits selected by `w`.
pub fn cat_condition(space: &SampleSpace, w: &[Axis]) -> Result<f64> {
    let n = key_halves(space)?;
    if w.len() != n {
        return Err(Error::Dimension(format!(
            "word of length {} for {n}-qubit keys",
            w.len()
        )));
    }
    if w.iter().all(|&a| a == Axis::I) {
        return Err(Error::InvalidTest("all-I word".into()));
    }
    bias_at(space, &cat_test(w))
}

/// Variation distance of the syndromes `H · (a | b)` from uniform, with
/// `H` the dual of `group`; signs play no role.
pub fn stabilizer_condition(space: &SampleSpace, group: &StabilizerGroup) -> Result<f64> {
    let n = key_halves(space)?;
    if group.n() != n {
        return Err(Error::Dimension(format!(
            "{}-qubit group for {n}-qubit keys",
            group.n()
        )));
    }
    let h = group.dual();
    label_distance(space, n, |s| Ok(h.mul_vec(s)?.to_u64()))
}

/// Variation distance of the coset labels `(H a, W b)` from uniform, where
/// the rows of `H` span `W⊥`.
pub fn subspace_condition(space: &SampleSpace, basis: &BitMatrix) -> Result<f64> {
    let n = key_halves(space)?;
    if basis.cols() != n {
        return Err(Error::Dimension(format!(
            "subspace of {} bits for {n}-qubit keys",
            basis.cols()
        )));
    }
    if basis.rank() != basis.rows() {
        return Err(Error::DependentGenerators);
    }
    let h = basis.kernel();
    let shift = h.rows();
    label_distance(space, n, |s| {
        let (a, b) = s.split_halves()?;
        Ok(h.mul_vec(&a)?.to_u64() | basis.mul_vec(&b)?.to_u64() << shift)
    })
}

/// Whether `m` keys can possibly be ε-randomizing in dimension `d`:
/// `m ≥ d (1 - ε/2)`.
pub fn rank_bound(m: usize, d: usize, epsilon: f64) -> bool {
    m as f64 >= d as f64 * (1.0 - epsilon / 2.0) - 1e-12
}

fn word_group(words: &[String]) -> Result<StabilizerGroup> {
    let refs: Vec<&str> = words.iter().map(String::as_str).collect();
    StabilizerGroup::from_paulis(&refs)
}

fn letter_word(n: usize, letters: &[(usize, char)]) -> String {
    let mut w = vec!['I'; n];
    for &(j, c) in letters {
        w[j] = c;
    }
    w.into_iter().collect()
}

/// GHZ-type, cluster and Bell-pair groups on `n ≥ 2` qubits.
pub fn entangled_groups(n: usize) -> Result<Vec<StabilizerGroup>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let chain = |c: char| -> Vec<String> { (0..n - 1).map(|i| letter_word(n, &[(i, c), (i + 1, c)])).collect() };
    let all = |c: char| -> String { std::iter::repeat_n(c, n).collect() };
    let mut families = vec![
        [vec![all('X')], chain('Z')].concat(),
        [vec![all('Z')], chain('X')].concat(),
        [vec![all('Y')], chain('Z')].concat(),
    ];
    families.push(
        (0..n)
            .map(|i| {
                let mut l = vec![(i, 'X')];
                if i > 0 {
                    l.push((i - 1, 'Z'));
                }
                if i + 1 < n {
                    l.push((i + 1, 'Z'));
                }
                letter_word(n, &l)
            })
            .collect(),
    );
    let mut bell = Vec::new();
    for p in (0..n - 1).step_by(2) {
        bell.push(letter_word(n, &[(p, 'X'), (p + 1, 'X')]));
        bell.push(letter_word(n, &[(p, 'Z'), (p + 1, 'Z')]));
    }
    if n % 2 == 1 {
        bell.push(letter_word(n, &[(n - 1, 'Z')]));
    }
    families.push(bell);
    families.iter().map(|f| word_group(f)).collect()
}

/// A uniformly chosen commuting, independent generator set, built one
/// generator at a time from the commutant of those already chosen.
pub fn random_stabilizer_group<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StabilizerGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("stabilizer group on zero qubits".into()));
    }
    let mut gens = BitMatrix::empty(2 * n);
    while gens.rows() < n {
        let commutant = swap_halves(&gens).kernel();
        let mut p = BitVector::zeros(2 * n);
        for row in commutant.row_vectors() {
            if rng.random::<bool>() {
                p ^= row;
            }
        }
        if !p.is_zero() && !gens.row_space_contains(&p)? {
            gens.push_row(p)?;
        }
    }
    crate::pauli::stab_validate(gens, BitVector::zeros(n))
}

/// The fixed stabilizer catalog: (optionally) every single-qubit-factor
/// group, the entangled families, and [`RANDOM_CATALOG_GROUPS`] random
/// groups drawn from [`CATALOG_SEED`].
///
/// Above [`EXHAUSTIVE_DIAGNOSE_QUBITS`] the single-factor groups are a
/// sample of [`SAMPLED_WITNESSES`].
pub fn stabilizer_catalog(n: usize, single_factor: bool) -> Result<Vec<StabilizerGroup>> {
    let mut rng = rng_from_seed(CATALOG_SEED ^ n as u64);
    let mut out = Vec::new();
    if single_factor {
        for v in scan_words(&Axis::NON_IDENTITY, n, false, &mut rng) {
            let words: Vec<String> = (0..n).map(|j| letter_word(n, &[(j, v[j].as_char())])).collect();
            out.push(word_group(&words)?);
        }
    }
    out.extend(entangled_groups(n)?);
    for _ in 0..RANDOM_CATALOG_GROUPS {
        out.push(random_stabilizer_group(n, &mut rng)?);
    }
    Ok(out)
}

fn scan_words<R: Rng + ?Sized>(letters: &[Axis], n: usize, skip_identity: bool, rng: &mut R) -> Vec<Vec<Axis>> {
    if n <= EXHAUSTIVE_DIAGNOSE_QUBITS {
        all_words(letters, n)
            .into_iter()
            .filter(|w| !skip_identity || w.iter().any(|&a| a != Axis::I))
            .collect()
    } else {
        sample_words(letters, n, SAMPLED_WITNESSES, skip_identity, rng)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub n: usize,
    pub m: usize,
    /// Whether the basis and word scans were exhaustive.
    pub exhaustive: bool,
    pub sigma_v_max: f64,
    pub sigma_v_witness: String,
    pub cat_max: f64,
    pub cat_witness: String,
    pub stabilizer_max: f64,
    /// Generators of the maximizing group.
    pub stabilizer_witness: Vec<String>,
    pub stabilizer_groups: usize,
    pub certified_epsilon: f64,
    pub rank_bound_ok: bool,
}

fn argmax<T>(items: impl IntoIterator<Item = Result<(f64, T)>>) -> Result<(f64, T)> {
    let mut best: Option<(f64, T)> = None;
    for item in items {
        let (v, w) = item?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, w));
        }
    }
    best.ok_or_else(|| Error::Internal("empty scan".into()))
}

/// Maxima of the σ_V, cat and stabilizer conditions over the key space of
/// `channel`, and the rank bound at its certified epsilon.
pub fn diagnose(channel: &PauliChannel) -> Result<DiagnosticsReport> {
    let space = channel
        .source()
        .ok_or_else(|| Error::NotApplicable("diagnostics need a uniformly weighted key space".into()))?;
    let n = channel.n();
    let mut rng = rng_from_seed(CATALOG_SEED);
    let bases = scan_words(&Axis::NON_IDENTITY, n, false, &mut rng);
    let words = scan_words(&Axis::ALL, n, true, &mut rng);
    let (sigma_v_max, v) = argmax(
        bases
            .into_par_iter()
            .map(|v| Ok((sigma_v_condition(space, &v)?, v)))
            .collect::<Vec<_>>(),
    )?;
    let (cat_max, w) = argmax(
        words
            .into_par_iter()
            .map(|w| Ok((cat_condition(space, &w)?, w)))
            .collect::<Vec<_>>(),
    )?;
    let catalog = stabilizer_catalog(n, true)?;
    let groups = catalog.len();
    let (stabilizer_max, g) = argmax(catalog.into_iter().map(|g| Ok((stabilizer_condition(space, &g)?, g))))?;
    let certified = channel.certified_epsilon()?;
    Ok(DiagnosticsReport {
        n,
        m: channel.len(),
        exhaustive: n <= EXHAUSTIVE_DIAGNOSE_QUBITS,
        sigma_v_max,
        sigma_v_witness: format_axes(&v),
        cat_max,
        cat_witness: format_axes(&w),
        stabilizer_max,
        stabilizer_witness: g.generator_words(),
        stabilizer_groups: groups,
        certified_epsilon: certified,
        rank_bound_ok: rank_bound(channel.len(), channel.dim(), certified),
    })
}

/// The dense operator of a Hermitian Pauli word, for spot checks.
pub fn word_matrix(w: &[Axis]) -> ComplexMatrix {
    PauliOp::from_axes(w).to_matrix()
}

/// One row of a random-channel sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub epsilon_hat: f64,
    pub certified_epsilon: f64,
    pub runtime_ms: u128,
}

/// Attacks `seeds` random Pauli channels for every key count in `ms`.
///
/// Row `(m, s)` samples its channel from stream `m` of seed `base + s` and
/// attacks it with seed `base + s`, so rows are independent of each other.
pub fn random_sweep(n: usize, ms: &[usize], seeds: u64, base: u64, cfg: &AttackConfig) -> Result<Vec<SweepRow>> {
    if ms.is_empty() {
        return Err(Error::InvalidArgument("empty key-count list".into()));
    }
    let mut rows = Vec::with_capacity(ms.len() * seeds as usize);
    for &m in ms {
        for s in 0..seeds {
            let seed = base.wrapping_add(s);
            let start = std::time::Instant::now();
            let ch = crate::channel::random_pauli_channel(n, m, &mut rng_stream(seed, m as u64))?;
            let attack = empirical_epsilon(&ch, &AttackConfig { seed, ..cfg.clone() })?;
            rows.push(SweepRow {
                n,
                m,
                seed,
                epsilon_hat: attack.epsilon_hat,
                certified_epsilon: ch.certified_epsilon()?,
                runtime_ms: start.elapsed().as_millis(),
            });
        }
    }
    Ok(rows)
}

/// Median `epsilon_hat` per key count, in the order of `ms`.
pub fn sweep_medians(rows: &[SweepRow], ms: &[usize]) -> Vec<f64> {
    ms.iter()
        .map(|&m| {
            let mut v: Vec<f64> = rows.iter().filter(|r| r.m == m).map(|r| r.epsilon_hat).collect();
            v.sort_by(f64::total_cmp);
            match v.len() {
                0 => f64::NAN,
                k if k % 2 == 1 => v[k / 2],
                k => 0.5 * (v[k / 2 - 1] + v[k / 2]),
            }
        })
        .collect()
}
