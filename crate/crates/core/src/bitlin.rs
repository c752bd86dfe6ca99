//! Linear algebra over GF(2).
//!
//! Bit `j` of a [`BitVector`] is the `j`-th character of its string form
//! (leftmost character is bit 0) and refers to qubit `j + 1`. Bits are packed
//! little-endian into 64-bit words.

use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};
use std::str::FromStr;

use crate::{Error, Result};

const WORD: usize = 64;

/// A fixed-length string of bits. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// Builds a vector whose bit `j` is bit `j` of `value`; higher bits of
    /// `value` are discarded.
    pub fn from_u64(value: u64, len: usize) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len >= WORD {
                value
            } else {
                value & ((1u64 << len) - 1)
            };
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (j, &b) in bits.iter().enumerate() {
            v.set(j, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, j: usize) -> bool {
        assert!(j < self.len, "bit index {j} out of range for length {}", self.len);
        (self.words[j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, j: usize, bit: bool) {
        assert!(j < self.len, "bit index {j} out of range for length {}", self.len);
        let mask = 1u64 << (j % WORD);
        if bit {
            self.words[j / WORD] |= mask;
        } else {
            self.words[j / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, j: usize) {
        assert!(j < self.len);
        self.words[j / WORD] ^= 1u64 << (j % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The bits as an integer (bit `j` of the result is bit `j` here).
    ///
    /// Panics when `len > 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "vector of length {} does not fit in u64", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |j| self.get(j))
    }

    /// Indices of the set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + t)
            })
        })
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        check_len(self.len, other.len)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &BitVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
            & 1
            == 1
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for j in self.ones() {
            out.set(j, true);
        }
        for j in other.ones() {
            out.set(self.len + j, true);
        }
        out
    }

    /// Bits `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len);
        let mut out = BitVector::zeros(end - start);
        for j in self.ones().filter(|&j| j >= start && j < end) {
            out.set(j - start, true);
        }
        out
    }

    /// Splits a `2n`-bit vector into its first and second halves.
    pub fn split_halves(&self) -> Result<(BitVector, BitVector)> {
        if !self.len.is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "cannot split odd length {} into halves",
                self.len
            )));
        }
        let n = self.len / 2;
        Ok((self.slice(0, n), self.slice(n, self.len)))
    }

    fn xor_in_place(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x ^= y;
        }
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension(format!("bit lengths {a} and {b} differ")));
    }
    Ok(())
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.chars().count());
        for (j, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(j, true),
                other => return Err(Error::Parse(format!("invalid bit character {other:?}"))),
            }
        }
        Ok(v)
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        let mut out = self.clone();
        out.xor_in_place(rhs);
        out
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        self.xor_in_place(rhs);
    }
}

impl BitAnd for &BitVector {
    type Output = BitVector;

    fn bitand(self, rhs: &BitVector) -> BitVector {
        assert_eq!(self.len, rhs.len, "and of vectors with different lengths");
        BitVector {
            len: self.len,
            words: self.words.iter().zip(&rhs.words).map(|(x, y)| x & y).collect(),
        }
    }
}

/// Parity of the AND of `u` and `v`.
pub fn gf2_dot(u: &BitVector, v: &BitVector) -> Result<bool> {
    u.dot(v)
}

/// The symplectic form `a·d + b·c` of `p = (a, b)` and `q = (c, d)`.
///
/// Equals 1 exactly when the Paulis `X^a Z^b` and `X^c Z^d` anti-commute.
pub fn symplectic(p: (&BitVector, &BitVector), q: (&BitVector, &BitVector)) -> Result<bool> {
    let (a, b) = p;
    let (c, d) = q;
    check_len(a.len(), b.len())?;
    check_len(a.len(), c.len())?;
    check_len(a.len(), d.len())?;
    Ok(a.dot_unchecked(d) ^ b.dot_unchecked(c))
}

/// A dense GF(2) matrix stored as row vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// An empty matrix (no rows) with the given column count.
    pub fn empty(cols: usize) -> Self {
        BitMatrix { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Parses rows given as bit strings, e.g. `["10", "01"]`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(cols, parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        check_len(row.len(), self.cols)?;
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `M v` over GF(2).
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.cols, v.len())?;
        let mut out = BitVector::zeros(self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot_unchecked(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ` over GF(2).
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, other.cols)?;
        let mut out = BitMatrix::zeros(self.rows(), other.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, s) in other.rows.iter().enumerate() {
                if r.dot_unchecked(s) {
                    out.rows[i].set(j, true);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    ///
    /// Pivoting scans columns left to right and takes the topmost remaining
    /// row with a one in that column.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            if top == m.rows.len() {
                break;
            }
            let Some(p) = (top..m.rows.len()).find(|&i| m.rows[i].get(col)) else {
                continue;
            };
            m.rows.swap(top, p);
            let pivot_row = m.rows[top].clone();
            for (i, r) in m.rows.iter_mut().enumerate() {
                if i != top && r.get(col) {
                    r.xor_in_place(&pivot_row);
                }
            }
            pivots.push(col);
            top += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : M v = 0}`, one row per free column in increasing
    /// column order.
    pub fn kernel(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = BitMatrix::empty(self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in pivots.iter().enumerate() {
                if r.rows[row].get(free) {
                    v.set(p, true);
                }
            }
            basis.rows.push(v);
        }
        basis
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVector) -> Result<bool> {
        check_len(self.cols, v.len())?;
        let mut extended = self.clone();
        extended.rows.push(v.clone());
        Ok(extended.rank() == self.rank())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[{}x{}](", self.rows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Rank of `m` over GF(2).
pub fn gf2_rank(m: &BitMatrix) -> usize {
    m.rank()
}

/// Kernel basis of `m` over GF(2).
pub fn gf2_kernel(m: &BitMatrix) -> BitMatrix {
    m.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn dot_examples() {
        assert!(gf2_dot(&bv("101"), &bv("110")).unwrap());
        assert!(!gf2_dot(&bv("000"), &bv("111")).unwrap());
        assert!(gf2_dot(&bv("111"), &bv("111")).unwrap());
        assert!(matches!(gf2_dot(&bv("11"), &bv("111")), Err(Error::Dimension(_))));
    }

    #[test]
    fn symplectic_examples() {
        // X = (1,0), Z = (0,1)
        assert!(symplectic((&bv("1"), &bv("0")), (&bv("0"), &bv("1"))).unwrap());
        // X⊗I vs Z⊗Z
        assert!(symplectic((&bv("10"), &bv("00")), (&bv("00"), &bv("11"))).unwrap());
        for s in ["00", "10", "01", "11"] {
            let (a, b) = (bv(&s[..1]), bv(&s[1..]));
            assert!(!symplectic((&a, &b), (&a, &b)).unwrap());
        }
        assert!(symplectic((&bv("1"), &bv("0")), (&bv("01"), &bv("1"))).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(gf2_rank(&BitMatrix::identity(5)), 5);
        assert_eq!(gf2_rank(&BitMatrix::zeros(3, 4)), 0);
        assert_eq!(gf2_rank(&BitMatrix::parse_rows(&["11", "11"]).unwrap()), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = gf2_kernel(&BitMatrix::parse_rows(&["11"]).unwrap());
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &bv("11"));
        assert_eq!(gf2_kernel(&BitMatrix::identity(4)).rows(), 0);
        let m = BitMatrix::parse_rows(&["10", "01", "11"]).unwrap();
        // exhaustive: only the zero vector solves M v = 0
        let solutions = (0..4u64)
            .filter(|&x| m.mul_vec(&BitVector::from_u64(x, 2)).unwrap().is_zero())
            .count();
        assert_eq!(solutions, 1);
        assert_eq!(gf2_kernel(&m).rows(), 0);
    }

    #[test]
    fn string_form_is_little_endian() {
        let v = bv("1101");
        assert_eq!(v.to_u64(), 0b1011);
        assert_eq!(BitVector::from_u64(0b1011, 4).to_string(), "1101");
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert!("10a".parse::<BitVector>().is_err());
    }

    #[test]
    fn wide_vectors_cross_words() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        let (lo, hi) = v.split_halves().unwrap();
        assert_eq!(lo.ones().collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(hi.ones().collect::<Vec<_>>(), vec![64]);
        assert_eq!(lo.concat(&hi), v);
    }

    #[test]
    fn row_space_membership() {
        let m = BitMatrix::parse_rows(&["110", "011"]).unwrap();
        assert!(m.row_space_contains(&bv("101")).unwrap());
        assert!(!m.row_space_contains(&bv("100")).unwrap());
    }
}
