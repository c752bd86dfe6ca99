//! Pauli operators in symplectic form and stabilizer groups.
//!
//! A [`PauliOp`] is `i^phase · X^a Z^b` on `n` qubits, where `a` and `b` are
//! bit strings and bit `j` acts on qubit `j + 1`. Computational basis index
//! `c` has bit `j` equal to the value of qubit `j + 1`, so qubit 1 is the
//! least significant bit of a state-vector index.
//!
//! In text form a Pauli is an optional prefix from `""`, `"i"`, `"-"`,
//! `"-i"` followed by one letter per qubit. Letters multiply out with
//! `Y = iXZ`, e.g. `"Y"` is stored as `a = 1, b = 1, phase = 1`.

use std::fmt;
use std::str::FromStr;

use crate::bitlin::{symplectic, BitMatrix, BitVector};
use crate::linalg::{ComplexMatrix, StateVector, C64};
use crate::{Error, Result};

/// Largest qubit count for dense state construction.
pub const MAX_DENSE_QUBITS: usize = 10;

/// A single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    I,
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::I, Axis::X, Axis::Y, Axis::Z];
    pub const NON_IDENTITY: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// The `(x, z)` bits of the letter.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Axis::I => (false, false),
            Axis::X => (true, false),
            Axis::Y => (true, true),
            Axis::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Axis {
        match (x, z) {
            (false, false) => Axis::I,
            (true, false) => Axis::X,
            (true, true) => Axis::Y,
            (false, true) => Axis::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Axis::I => 'I',
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Axis> {
        match c {
            'I' => Ok(Axis::I),
            'X' => Ok(Axis::X),
            'Y' => Ok(Axis::Y),
            'Z' => Ok(Axis::Z),
            other => Err(Error::Parse(format!("invalid Pauli letter {other:?}"))),
        }
    }
}

/// Parses a word such as `"ZXY"` into letters.
pub fn parse_axes(s: &str) -> Result<Vec<Axis>> {
    s.chars().map(Axis::from_char).collect()
}

pub fn format_axes(axes: &[Axis]) -> String {
    axes.iter().map(|a| a.as_char()).collect()
}

/// All words over `letters` of length `n`, first position varying slowest.
pub fn all_words(letters: &[Axis], n: usize) -> Vec<Vec<Axis>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out
}

/// `i^phase · X^a Z^b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    a: BitVector,
    b: BitVector,
    phase: u8,
}

impl PauliOp {
    pub fn new(a: BitVector, b: BitVector, phase: u8) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension(format!(
                "X part has {} bits, Z part {}",
                a.len(),
                b.len()
            )));
        }
        Ok(PauliOp { a, b, phase: phase % 4 })
    }

    /// `X^a Z^b` with phase 0.
    pub fn from_xz(a: BitVector, b: BitVector) -> Result<Self> {
        Self::new(a, b, 0)
    }

    /// Splits a `2n`-bit label `(a | b)` into a phase-free Pauli.
    pub fn from_label(label: &BitVector) -> Result<Self> {
        let (a, b) = label.split_halves()?;
        Self::new(a, b, 0)
    }

    pub fn identity(n: usize) -> Self {
        PauliOp {
            a: BitVector::zeros(n),
            b: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn from_axes(axes: &[Axis]) -> Self {
        let mut op = Self::identity(axes.len());
        for (j, ax) in axes.iter().enumerate() {
            let (x, z) = ax.bits();
            op.a.set(j, x);
            op.b.set(j, z);
            if *ax == Axis::Y {
                op.phase = (op.phase + 1) % 4;
            }
        }
        op
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn x_bits(&self) -> &BitVector {
        &self.a
    }

    pub fn z_bits(&self) -> &BitVector {
        &self.b
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// The `2n`-bit label `(a | b)`.
    pub fn label(&self) -> BitVector {
        self.a.concat(&self.b)
    }

    pub fn without_phase(&self) -> Self {
        PauliOp {
            phase: 0,
            ..self.clone()
        }
    }

    pub fn axes(&self) -> Vec<Axis> {
        (0..self.n())
            .map(|j| Axis::from_bits(self.a.get(j), self.b.get(j)))
            .collect()
    }

    /// Number of `Y` letters, i.e. `|a ∧ b|`.
    fn y_count(&self) -> usize {
        (&self.a & &self.b).count_ones()
    }

    /// The Hermitian operator `i^{|a∧b|} X^a Z^b`, the product of the letters.
    pub fn hermitian(a: BitVector, b: BitVector) -> Result<Self> {
        let mut op = Self::new(a, b, 0)?;
        op.phase = (op.y_count() % 4) as u8;
        Ok(op)
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + 4 - self.y_count() % 4).is_multiple_of(2)
    }

    fn check_n(&self, other: &PauliOp) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension(format!(
                "Paulis on {} and {} qubits",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    /// `self · other`, moving `Z^b` past `X^c` at the cost of `(-1)^{b·c}`.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check_n(other)?;
        let swap = u8::from(self.b.dot_unchecked(&other.a));
        Ok(PauliOp {
            a: &self.a ^ &other.a,
            b: &self.b ^ &other.b,
            phase: (self.phase + other.phase + 2 * swap) % 4,
        })
    }

    pub fn commutes(&self, other: &PauliOp) -> Result<bool> {
        self.check_n(other)?;
        Ok(!symplectic((&self.a, &self.b), (&other.a, &other.b))?)
    }

    fn masks(&self) -> (usize, usize) {
        assert!(self.n() < usize::BITS as usize);
        (self.a.to_u64() as usize, self.b.to_u64() as usize)
    }

    /// Applies the operator to raw amplitudes:
    /// `|c⟩ ↦ i^phase (-1)^{b·c} |c ⊕ a⟩`.
    pub fn apply_amplitudes(&self, amps: &[C64]) -> Result<Vec<C64>> {
        if self.n() > 62 || amps.len() != 1usize << self.n() {
            return Err(Error::Dimension(format!(
                "{}-qubit Pauli on a vector of dimension {}",
                self.n(),
                amps.len()
            )));
        }
        let (a, b) = self.masks();
        let global = phase_factor(self.phase);
        let mut out = vec![C64::new(0.0, 0.0); amps.len()];
        for (c, &amp) in amps.iter().enumerate() {
            let sign = if (b & c).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            out[c ^ a] = amp * global * sign;
        }
        Ok(out)
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        Ok(StateVector::from_raw(self.apply_amplitudes(psi.amplitudes())?))
    }

    /// Dense `2^n × 2^n` matrix, built column by column from the basis action.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = 1usize << self.n();
        let (a, b) = self.masks();
        let global = phase_factor(self.phase);
        let mut m = ComplexMatrix::zeros(d);
        for c in 0..d {
            let sign = if (b & c).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            m[(c ^ a, c)] = global * sign;
        }
        m
    }
}

/// `i^k`.
pub(crate) fn phase_factor(k: u8) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = (self.phase as usize + 4 - self.y_count() % 4) % 4;
        f.write_str(["", "i", "-", "-i"][prefix])?;
        f.write_str(&format_axes(&self.axes()))
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (prefix, letters) = if let Some(rest) = s.strip_prefix("-i") {
            (3u8, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        let mut op = PauliOp::from_axes(&parse_axes(letters)?);
        op.phase = (op.phase + prefix) % 4;
        Ok(op)
    }
}

pub fn pauli_mul(p: &PauliOp, q: &PauliOp) -> Result<PauliOp> {
    p.mul(q)
}

pub fn pauli_commutes(p: &PauliOp, q: &PauliOp) -> Result<bool> {
    p.commutes(q)
}

pub fn pauli_apply(p: &PauliOp, psi: &StateVector) -> Result<StateVector> {
    p.apply(psi)
}

/// Reduces a key `(a, b)` to the bits that flip the eigenstates of the
/// product basis `V`: `a_j` where `V_j = Z`, `b_j` where `V_j = X`,
/// `a_j ⊕ b_j` where `V_j = Y`. Positions with `V_j = I` are dropped.
pub fn sigma_v(basis: &[Axis], a: &BitVector, b: &BitVector) -> Result<BitVector> {
    if a.len() != basis.len() || b.len() != basis.len() {
        return Err(Error::Dimension(format!(
            "basis of length {} with key halves of length {} and {}",
            basis.len(),
            a.len(),
            b.len()
        )));
    }
    let bits: Vec<bool> = basis
        .iter()
        .enumerate()
        .filter_map(|(j, ax)| match ax {
            Axis::I => None,
            Axis::Z => Some(a.get(j)),
            Axis::X => Some(b.get(j)),
            Axis::Y => Some(a.get(j) ^ b.get(j)),
        })
        .collect();
    Ok(BitVector::from_bits(&bits))
}

/// An abelian Pauli group with `n` independent generators on `n` qubits.
///
/// Generator `i` is the Hermitian operator `(-1)^{signs_i} i^{|a∧b|} X^a Z^b`
/// where `(a | b)` is row `i` of the generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    generators: BitMatrix,
    signs: BitVector,
}

/// Checks a generator matrix (rows `(a_i | b_i)`, `2n` columns) and builds
/// the group. The rows must pairwise commute, be independent, and number `n`.
pub fn stab_validate(generators: BitMatrix, signs: BitVector) -> Result<StabilizerGroup> {
    if !generators.cols().is_multiple_of(2) || generators.cols() == 0 {
        return Err(Error::Dimension(format!(
            "generator rows have odd or zero length {}",
            generators.cols()
        )));
    }
    let n = generators.cols() / 2;
    let rows = generators.rows();
    if signs.len() != rows {
        return Err(Error::Dimension(format!("{} signs for {rows} generators", signs.len())));
    }
    for i in 0..rows {
        let (ai, bi) = generators.row(i).split_halves()?;
        for j in i + 1..rows {
            let (aj, bj) = generators.row(j).split_halves()?;
            if symplectic((&ai, &bi), (&aj, &bj))? {
                return Err(Error::NotAbelian(i, j));
            }
        }
    }
    if generators.rank() != rows {
        return Err(Error::DependentGenerators);
    }
    if rows != n {
        return Err(Error::Dimension(format!(
            "{rows} generators on {n} qubits; a stabilizer state needs {n}"
        )));
    }
    Ok(StabilizerGroup { generators, signs })
}

impl StabilizerGroup {
    /// Builds a group from signed Pauli words such as `["XX", "-ZZ"]`.
    pub fn from_paulis(words: &[&str]) -> Result<Self> {
        let n = words.len();
        let mut rows = Vec::with_capacity(n);
        let mut signs = BitVector::zeros(n);
        for (i, w) in words.iter().enumerate() {
            let op: PauliOp = w.parse()?;
            if op.n() != n {
                return Err(Error::Dimension(format!("generator {w:?} is not on {n} qubits")));
            }
            if !op.is_hermitian() {
                return Err(Error::InvalidArgument(format!("generator {w:?} is not Hermitian")));
            }
            let plus = PauliOp::hermitian(op.a.clone(), op.b.clone())?;
            signs.set(i, plus.phase != op.phase);
            rows.push(op.label());
        }
        stab_validate(BitMatrix::from_rows(2 * n, rows)?, signs)
    }

    /// `⟨Z_1, ..., Z_n⟩` with all signs `+`.
    pub fn computational(n: usize) -> Self {
        let mut g = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            g.set(i, n + i, true);
        }
        StabilizerGroup {
            generators: g,
            signs: BitVector::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.generators.rows()
    }

    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    pub fn signs(&self) -> &BitVector {
        &self.signs
    }

    /// The signed Hermitian generator `i`.
    pub fn generator(&self, i: usize) -> PauliOp {
        let (a, b) = self.generators.row(i).split_halves().expect("rows have even length");
        let mut op = PauliOp::hermitian(a, b).expect("halves have equal length");
        if self.signs.get(i) {
            op.phase = (op.phase + 2) % 4;
        }
        op
    }

    pub fn generator_words(&self) -> Vec<String> {
        (0..self.n()).map(|i| self.generator(i).to_string()).collect()
    }

    /// The same generators with every sign `+`.
    pub fn unsigned(&self) -> Self {
        StabilizerGroup {
            generators: self.generators.clone(),
            signs: BitVector::zeros(self.n()),
        }
    }

    /// Whether the phase-free label `(a | b)` belongs to the group.
    pub fn contains_label(&self, label: &BitVector) -> Result<bool> {
        self.generators.row_space_contains(label)
    }

    /// The dual matrix: each generator row `(s | t)` becomes `(t | s)`, so
    /// `H · (a | b)` lists the symplectic products of `(a, b)` with every
    /// generator.
    pub fn dual(&self) -> BitMatrix {
        swap_halves(&self.generators)
    }

    /// The unique state fixed by every signed generator, with its first
    /// nonzero amplitude real and positive.
    pub fn state(&self) -> Result<StateVector> {
        let n = self.n();
        if n > MAX_DENSE_QUBITS {
            return Err(Error::Capacity(format!(
                "stabilizer state on {n} > {MAX_DENSE_QUBITS} qubits"
            )));
        }
        let d = 1usize << n;
        let gens: Vec<PauliOp> = (0..n).map(|i| self.generator(i)).collect();
        let project = |mut v: Vec<C64>| -> Result<Vec<C64>> {
            for g in &gens {
                let gv = g.apply_amplitudes(&v)?;
                for (x, y) in v.iter_mut().zip(gv) {
                    *x = (*x + y) * 0.5;
                }
            }
            Ok(v)
        };
        // projector columns: trace gives the rank, the heaviest column spans the range
        let mut trace = 0.0;
        let mut best: Option<(f64, Vec<C64>)> = None;
        for k in 0..d {
            let col = project(StateVector::basis(d, k).into_amplitudes())?;
            trace += col[k].re;
            let weight: f64 = col.iter().map(|x| x.norm_sqr()).sum();
            if best.as_ref().is_none_or(|(w, _)| weight > *w + 1e-12) {
                best = Some((weight, col));
            }
        }
        if trace < 0.5 {
            return Err(Error::InconsistentSigns);
        }
        if (trace - 1.0).abs() > 1e-9 {
            return Err(Error::Internal(format!("stabilizer projector has trace {trace}")));
        }
        let (_, col) = best.expect("dimension is at least 1");
        let mut psi = StateVector::normalized(col)?;
        psi.fix_phase(1e-9);
        Ok(psi)
    }
}

/// Swaps the two halves of every row.
pub fn swap_halves(m: &BitMatrix) -> BitMatrix {
    let rows = m
        .row_vectors()
        .iter()
        .map(|r| {
            let (s, t) = r.split_halves().expect("rows have even length");
            t.concat(&s)
        })
        .collect();
    BitMatrix::from_rows(m.cols(), rows).expect("row lengths are unchanged")
}

pub fn stab_dual(g: &StabilizerGroup) -> BitMatrix {
    g.dual()
}

pub fn stab_state(g: &StabilizerGroup) -> Result<StateVector> {
    g.state()
}
