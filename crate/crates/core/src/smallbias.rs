//! Sample spaces of bit strings and their distance from uniform.
//!
//! A [`SampleSpace`] is a multiset: drawing from it means picking one of its
//! listed strings uniformly, duplicates included. The bias of a space at a
//! nonzero test `α` is `|E_s (-1)^{α·s}|`; a space is δ-biased when every
//! nonzero test has bias at most δ.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bitlin::BitVector;
use crate::gf2ext::{field_spec, FieldSpec};
use crate::{Error, Result};

/// Largest string length scanned exhaustively (2^24 transform bins).
pub const MAX_EXHAUSTIVE_BITS: usize = 24;
/// Largest field degree accepted by [`aghp_space`].
pub const MAX_AGHP_DEGREE: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpace {
    n: usize,
    strings: Vec<BitVector>,
}

impl SampleSpace {
    pub fn new(n: usize, strings: Vec<BitVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "sample space strings must have at least one bit".into(),
            ));
        }
        if strings.is_empty() {
            return Err(Error::InvalidArgument(
                "sample space must contain at least one string".into(),
            ));
        }
        if let Some(bad) = strings.iter().find(|s| s.len() != n) {
            return Err(Error::Dimension(format!(
                "string of length {} in a space of length {n}",
                bad.len()
            )));
        }
        Ok(SampleSpace { n, strings })
    }

    /// All `2^n` strings in integer order.
    pub fn full_cube(n: usize) -> Result<Self> {
        if n > MAX_EXHAUSTIVE_BITS {
            return Err(Error::Capacity(format!("full cube on {n} bits")));
        }
        Self::new(n, (0..1u64 << n).map(|x| BitVector::from_u64(x, n)).collect())
    }

    /// Builds a space from integers, bit `j` of each value being bit `j` of the string.
    pub fn from_u64s(n: usize, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(n, values.into_iter().map(|x| BitVector::from_u64(x, n)).collect())
    }

    /// Parses a list of bit strings such as `["00", "11"]`.
    pub fn parse_strings(strings: &[&str]) -> Result<Self> {
        let parsed = strings.iter().map(|s| s.parse()).collect::<Result<Vec<BitVector>>>()?;
        let n = parsed.first().map_or(0, BitVector::len);
        Self::new(n, parsed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.strings.len()
    }

    pub fn strings(&self) -> &[BitVector] {
        &self.strings
    }

    /// Keeps only the first `bits` bits of every string.
    pub fn truncate(&self, bits: usize) -> Result<Self> {
        if bits == 0 || bits > self.n {
            return Err(Error::Dimension(format!(
                "cannot truncate {}-bit strings to {bits}",
                self.n
            )));
        }
        Self::new(bits, self.strings.iter().map(|s| s.slice(0, bits)).collect())
    }

    /// Strings as integers; requires `n <= 64`.
    pub(crate) fn as_u64s(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        self.strings.iter().map(BitVector::to_u64).collect()
    }

    /// Text form: a header line `n=<n> size=<m>` then one string per line.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for SampleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} size={}", self.n, self.strings.len())?;
        for s in &self.strings {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SampleSpace {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty sample space file".into()))?;
        let fields = parse_header(header, &["n", "size"])?;
        let (n, size) = (fields[0], fields[1]);
        let strings = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.trim().parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        if strings.len() != size {
            return Err(Error::Parse(format!(
                "header declares {size} strings, found {}",
                strings.len()
            )));
        }
        SampleSpace::new(n, strings)
    }
}

/// Parses `key1=<v1> key2=<v2>` headers, keys in the given order.
pub(crate) fn parse_header(line: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != keys.len() {
        return Err(Error::Parse(format!("malformed header {line:?}")));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(part, key)| {
            part.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("expected {key}=<count> in header {line:?}")))
        })
        .collect()
}

/// Bias at a single nonzero test and the worst test found by a scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiasReport {
    pub max_bias: f64,
    #[serde(serialize_with = "serialize_bits")]
    pub witness: BitVector,
    pub scanned: u64,
}

pub(crate) fn serialize_bits<S: serde::Serializer>(v: &BitVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The AGHP powering construction over GF(2^r).
///
/// Each pair `(x, y)` of field elements yields a string of `r·s` bits whose
/// bit `i·r + (j - 1)` is the GF(2) dot product of the coefficients of
/// `x^(j-1) · x^i` (product in the field, first factor the `j`-th standard
/// basis element) with `y`. Pairs are enumerated with `x` outer and `y` inner,
/// both in integer order, so the result has exactly `2^(2r)` strings.
pub fn aghp_space(r: u32, s: usize) -> Result<SampleSpace> {
    if r == 0 || r > MAX_AGHP_DEGREE {
        return Err(Error::UnsupportedDegree(r));
    }
    if s == 0 {
        return Err(Error::InvalidArgument("AGHP space needs s >= 1".into()));
    }
    let field = field_spec(r)?;
    let r_us = r as usize;
    let bits = r_us * s;
    let mut strings = Vec::with_capacity(1usize << (2 * r));
    for x in 0..field.order() {
        let masks = aghp_masks(&field, x, s)?;
        for y in 0..field.order() {
            let mut z = BitVector::zeros(bits);
            for (pos, &m) in masks.iter().enumerate() {
                if (m & y).count_ones() & 1 == 1 {
                    z.set(pos, true);
                }
            }
            strings.push(z);
        }
    }
    SampleSpace::new(bits, strings)
}

/// The field elements `v_j · x^i` in bit order `i·r + (j - 1)`.
fn aghp_masks(field: &FieldSpec, x: u64, s: usize) -> Result<Vec<u64>> {
    let r = field.degree() as usize;
    let xe = field.element(x)?;
    let mut out = Vec::with_capacity(r * s);
    let mut power = field.one();
    for _ in 0..s {
        for j in 0..r {
            let basis = field.element(1u64 << j)?;
            out.push(field.mul(&basis, &power)?.value());
        }
        power = field.mul(&power, &xe)?;
    }
    Ok(out)
}

/// `|E_{s∈S} (-1)^{α·s}|` for a nonzero test `α`.
pub fn bias_at(space: &SampleSpace, alpha: &BitVector) -> Result<f64> {
    if alpha.len() != space.n {
        return Err(Error::Dimension(format!(
            "test of length {} on {}-bit strings",
            alpha.len(),
            space.n
        )));
    }
    if alpha.is_zero() {
        return Err(Error::InvalidTest(
            "the zero test has bias 1 and is not a linear test".into(),
        ));
    }
    let sum: i64 = space
        .strings
        .iter()
        .map(|s| if s.dot_unchecked(alpha) { -1 } else { 1 })
        .sum();
    Ok((sum as f64 / space.size() as f64).abs())
}

/// In-place Walsh–Hadamard transform: `out[β] = Σ_x f[x] (-1)^{β·x}`.
pub(crate) fn walsh_hadamard<T>(data: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = data.len();
    assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*x, *y);
                *x = u + v;
                *y = u - v;
            }
        }
        h *= 2;
    }
}

/// Correlations `Σ_s (-1)^{α·s}` for every `α`, indexed by `α` as an integer.
fn correlation_table(space: &SampleSpace) -> Result<Vec<i64>> {
    if space.n > MAX_EXHAUSTIVE_BITS {
        return Err(scan_capacity_error(space.n));
    }
    let mut table = vec![0i64; 1usize << space.n];
    for s in &space.strings {
        table[s.to_u64() as usize] += 1;
    }
    walsh_hadamard(&mut table);
    Ok(table)
}

fn scan_capacity_error(n: usize) -> Error {
    Error::Capacity(format!(
        "exhaustive bias scan on {n} bits exceeds {MAX_EXHAUSTIVE_BITS}; pass max_weight or sample tests"
    ))
}

/// Maximum bias over all nonzero tests, or over tests of Hamming weight at
/// most `max_weight` when given. Ties resolve to the smallest test as an
/// integer.
pub fn max_bias(space: &SampleSpace, max_weight: Option<usize>) -> Result<BiasReport> {
    if max_weight == Some(0) {
        return Err(Error::InvalidTest("max_weight must be at least 1".into()));
    }
    let size = space.size() as f64;
    if space.n <= MAX_EXHAUSTIVE_BITS {
        let table = correlation_table(space)?;
        let weight_ok = |a: usize| max_weight.is_none_or(|k| a.count_ones() as usize <= k);
        let mut best = (0i64, 0usize);
        let mut scanned = 0u64;
        for (alpha, &c) in table.iter().enumerate().skip(1) {
            if !weight_ok(alpha) {
                continue;
            }
            scanned += 1;
            if best.1 == 0 || c.abs() > best.0 {
                best = (c.abs(), alpha);
            }
        }
        return Ok(BiasReport {
            max_bias: best.0 as f64 / size,
            witness: BitVector::from_u64(best.1 as u64, space.n),
            scanned,
        });
    }
    let Some(k) = max_weight else {
        return Err(scan_capacity_error(space.n));
    };
    if space.n > 64 {
        return Err(Error::Capacity(format!("weight-limited scan on {} bits", space.n)));
    }
    let points = space.as_u64s();
    let mut best = (0i64, 0u64);
    let mut scanned = 0u64;
    for w in 1..=k.min(space.n) {
        for alpha in combinations(space.n, w) {
            scanned += 1;
            if scanned.saturating_mul(points.len() as u64) > 1 << 36 {
                return Err(Error::Capacity("weight-limited scan is too large".into()));
            }
            let c: i64 = points
                .iter()
                .map(|p| if (p & alpha).count_ones() & 1 == 1 { -1 } else { 1 })
                .sum();
            if best.1 == 0 || c.abs() > best.0 || (c.abs() == best.0 && alpha < best.1) {
                best = (c.abs(), alpha);
            }
        }
    }
    Ok(BiasReport {
        max_bias: best.0 as f64 / size,
        witness: BitVector::from_u64(best.1, space.n),
        scanned,
    })
}

/// All `n`-bit masks of popcount `w` in increasing order (Gosper's hack).
pub(crate) fn combinations(n: usize, w: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 64 && w <= n);
    let limit: u128 = 1u128 << n;
    let mut next: Option<u64> = if w == 0 {
        Some(0)
    } else {
        Some(((1u128 << w) - 1) as u64)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur as u128 + c as u128;
            let nxt = (((r as u64 ^ cur) >> 2) / c) as u128 | r;
            (nxt < limit).then_some(nxt as u64)
        };
        Some(cur)
    })
}

fn marginal_counts(points: &[u64], positions: &[usize]) -> Vec<u64> {
    let mut counts = vec![0u64; 1usize << positions.len()];
    for &p in points {
        let mut beta = 0usize;
        for (t, &pos) in positions.iter().enumerate() {
            beta |= (((p >> pos) & 1) as usize) << t;
        }
        counts[beta] += 1;
    }
    counts
}

fn check_positions(space: &SampleSpace, positions: &[usize]) -> Result<()> {
    if positions.is_empty() {
        return Err(Error::InvalidTest("empty position set".into()));
    }
    if positions.len() > 20 {
        return Err(Error::Capacity(format!(
            "marginal over {} positions exceeds 20",
            positions.len()
        )));
    }
    if space.n > 64 {
        return Err(Error::Capacity(format!("marginals on {}-bit strings", space.n)));
    }
    let mut seen = vec![false; space.n];
    for &p in positions {
        if p >= space.n {
            return Err(Error::Dimension(format!(
                "position {p} out of range for {}-bit strings",
                space.n
            )));
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument(format!("position {p} repeated")));
        }
    }
    Ok(())
}

/// `Σ_β |Pr[s restricted to W = β] - 2^{-|W|}|`.
///
/// `positions` are zero-based bit indices.
pub fn marginal_distance(space: &SampleSpace, positions: &[usize]) -> Result<f64> {
    check_positions(space, positions)?;
    let counts = marginal_counts(&space.as_u64s(), positions);
    Ok(variation_from_uniform(&counts, space.size()))
}

/// `Σ_k |counts[k]/total - 1/len|`.
pub(crate) fn variation_from_uniform(counts: &[u64], total: usize) -> f64 {
    let u = 1.0 / counts.len() as f64;
    let t = total as f64;
    counts.iter().map(|&c| (c as f64 / t - u).abs()).sum()
}

/// Measured k-wise independence of a space against the bounds implied by its
/// bias over tests of weight at most `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VaziraniReport {
    pub k: usize,
    /// Largest bias over tests of weight `<= k`.
    pub epsilon_k: f64,
    /// Largest `|Pr[s|W = β] - 2^{-k}|` over all `|W| = k` and `β`.
    pub max_point_deviation: f64,
    /// `(1 - 2^{-k}) ε_k`.
    pub point_bound: f64,
    /// Largest marginal distance over all `|W| = k`.
    pub max_marginal_distance: f64,
    /// `sqrt(2^k - 1) ε_k`.
    pub marginal_bound: f64,
    pub subsets_checked: u64,
    pub violations: u64,
}

const BOUND_SLACK: f64 = 1e-12;

pub fn vazirani_report(space: &SampleSpace, k: usize) -> Result<VaziraniReport> {
    if k == 0 || k > space.n {
        return Err(Error::InvalidTest(format!("k = {k} outside 1..={}", space.n)));
    }
    if k > 10 {
        return Err(Error::Capacity(format!("k = {k} exceeds 10")));
    }
    if space.n > MAX_EXHAUSTIVE_BITS {
        return Err(Error::Capacity(format!(
            "{} bits exceeds {MAX_EXHAUSTIVE_BITS}",
            space.n
        )));
    }
    let epsilon_k = max_bias(space, Some(k))?.max_bias;
    let point_bound = (1.0 - 0.5f64.powi(k as i32)) * epsilon_k;
    let marginal_bound = (((1u64 << k) - 1) as f64).sqrt() * epsilon_k;
    let points = space.as_u64s();
    let size = space.size() as f64;
    let uniform = 0.5f64.powi(k as i32);
    let mut report = VaziraniReport {
        k,
        epsilon_k,
        max_point_deviation: 0.0,
        point_bound,
        max_marginal_distance: 0.0,
        marginal_bound,
        subsets_checked: 0,
        violations: 0,
    };
    for mask in combinations(space.n, k) {
        let positions: Vec<usize> = (0..space.n).filter(|&j| (mask >> j) & 1 == 1).collect();
        let counts = marginal_counts(&points, &positions);
        let point_dev = counts
            .iter()
            .map(|&c| (c as f64 / size - uniform).abs())
            .fold(0.0, f64::max);
        let dist = variation_from_uniform(&counts, space.size());
        report.subsets_checked += 1;
        if point_dev > point_bound + BOUND_SLACK {
            report.violations += 1;
        }
        if dist > marginal_bound + BOUND_SLACK {
            report.violations += 1;
        }
        report.max_point_deviation = report.max_point_deviation.max(point_dev);
        report.max_marginal_distance = report.max_marginal_distance.max(dist);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    /// Direct definition of the bias, independent of the transform.
    fn oracle_bias(space: &SampleSpace, alpha: u64) -> f64 {
        let sum: f64 = space
            .as_u64s()
            .iter()
            .map(|&s| {
                if (s & alpha).count_ones().is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            })
            .sum();
        (sum / space.size() as f64).abs()
    }

    #[test]
    fn aghp_small_enumeration() {
        // (x, y) = (0,0),(0,1),(1,0),(1,1); bits (y, x·y)
        let s = aghp_space(1, 2).unwrap();
        let got: Vec<String> = s.strings().iter().map(|b| b.to_string()).collect();
        assert_eq!(got, ["00", "10", "00", "11"]);
        for (r, sw) in [(1, 1), (2, 3), (3, 2), (4, 1)] {
            assert_eq!(aghp_space(r, sw).unwrap().size(), 1 << (2 * r));
        }
        assert_eq!(aghp_space(0, 2), Err(Error::UnsupportedDegree(0)));
        assert_eq!(aghp_space(17, 2), Err(Error::UnsupportedDegree(17)));
    }

    #[test]
    fn aghp_bits_follow_the_field_product() {
        // r = 3, s = 2, x = x (0b010), y = 0b001: bit (i, j) = coefficient of
        // x^0 in x^(j-1) · x^i
        let s = aghp_space(3, 2).unwrap();
        let z = &s.strings()[(0b010 << 3) | 0b001];
        // i = 0: v_1 = 1 -> 1, v_2 = x -> 0, v_3 = x^2 -> 0
        // i = 1: x -> 0, x^2 -> 0, x^3 = x + 1 -> 1
        assert_eq!(z.to_string(), "100001");
    }

    #[test]
    fn aghp_bias_bound_r4_s3() {
        let report = max_bias(&aghp_space(4, 3).unwrap(), None).unwrap();
        assert!(report.max_bias <= 2.0 / 16.0 + 1e-15, "{report:?}");
    }

    #[test]
    fn aghp_bias_bound_small_grid() {
        for r in 1..=5u32 {
            for s in (1..=5usize).filter(|&s| r as usize * s <= MAX_EXHAUSTIVE_BITS) {
                let space = aghp_space(r, s).unwrap();
                let b = max_bias(&space, None).unwrap().max_bias;
                assert!(
                    b <= (s as f64 - 1.0) / f64::from(1u32 << r) + 1e-15,
                    "r={r} s={s} bias={b}"
                );
            }
        }
    }

    #[test]
    fn bias_at_examples() {
        let s = SampleSpace::parse_strings(&["00", "11"]).unwrap();
        assert_eq!(bias_at(&s, &bv("01")).unwrap(), 0.0);
        assert_eq!(bias_at(&s, &bv("11")).unwrap(), 1.0);
        assert!(matches!(bias_at(&s, &bv("00")), Err(Error::InvalidTest(_))));
        assert!(matches!(bias_at(&s, &bv("1")), Err(Error::Dimension(_))));
        let cube = SampleSpace::full_cube(4).unwrap();
        for a in 1..16 {
            assert_eq!(bias_at(&cube, &BitVector::from_u64(a, 4)).unwrap(), 0.0);
        }
    }

    #[test]
    fn max_bias_examples() {
        assert_eq!(
            max_bias(&SampleSpace::full_cube(3).unwrap(), None).unwrap().max_bias,
            0.0
        );
        let r = max_bias(&SampleSpace::parse_strings(&["00", "11"]).unwrap(), None).unwrap();
        assert_eq!(r.max_bias, 1.0);
        assert_eq!(r.witness, bv("11"));
        assert_eq!(r.scanned, 3);
        assert!(max_bias(&aghp_space(3, 2).unwrap(), None).unwrap().max_bias <= 0.125);
    }

    #[test]
    fn max_bias_capacity_and_weight_limit() {
        let wide = SampleSpace::new(30, vec![BitVector::zeros(30), BitVector::from_u64(0b111, 30)]).unwrap();
        assert!(matches!(max_bias(&wide, None), Err(Error::Capacity(_))));
        let r = max_bias(&wide, Some(2)).unwrap();
        assert_eq!(r.max_bias, 1.0);
        // weight-1 and weight-2 tests: 30 + 435
        assert_eq!(r.scanned, 465);
        assert_eq!(r.witness.to_u64(), 0b011);
        assert!(max_bias(&wide, Some(0)).is_err());
    }

    #[test]
    fn marginal_distance_examples() {
        let cube = SampleSpace::full_cube(3).unwrap();
        assert_eq!(marginal_distance(&cube, &[0, 2]).unwrap(), 0.0);
        let s = SampleSpace::parse_strings(&["00", "11"]).unwrap();
        // masses 1/2, 0, 0, 1/2 against 1/4 each
        assert_eq!(marginal_distance(&s, &[0, 1]).unwrap(), 1.0);
        assert_eq!(marginal_distance(&s, &[0]).unwrap(), 0.0);
        assert!(matches!(marginal_distance(&s, &[]), Err(Error::InvalidTest(_))));
        assert!(marginal_distance(&s, &[2]).is_err());
        assert!(marginal_distance(&s, &[1, 1]).is_err());
    }

    #[test]
    fn vazirani_examples() {
        let cube = SampleSpace::full_cube(4).unwrap();
        let r = vazirani_report(&cube, 3).unwrap();
        assert_eq!(
            (r.max_point_deviation, r.max_marginal_distance, r.violations),
            (0.0, 0.0, 0)
        );
        let s = SampleSpace::parse_strings(&["00", "11"]).unwrap();
        let r1 = vazirani_report(&s, 1).unwrap();
        assert_eq!((r1.epsilon_k, r1.max_point_deviation), (0.0, 0.0));
        let r2 = vazirani_report(&s, 2).unwrap();
        assert_eq!(r2.epsilon_k, 1.0);
        assert_eq!(r2.max_marginal_distance, 1.0);
        assert!(r2.max_marginal_distance <= 3f64.sqrt());
        assert_eq!(r2.violations, 0);
        assert!(vazirani_report(&s, 0).is_err());
        assert!(vazirani_report(&s, 3).is_err());
    }

    #[test]
    fn text_format() {
        let s = aghp_space(1, 2).unwrap();
        let text = s.to_text();
        assert_eq!(text, "n=2 size=4\n00\n10\n00\n11\n");
        assert_eq!(SampleSpace::from_text(&text).unwrap(), s);
        assert!(SampleSpace::from_text("n=2 size=3\n00\n11\n").is_err());
        assert!(SampleSpace::from_text("n=2\n00\n").is_err());
        assert!(SampleSpace::from_text("n=2 size=1\n001\n").is_err());
    }

    #[test]
    fn combinations_enumerate_binomials() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(64, 1).count(), 64);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(combinations(4, 0).collect::<Vec<_>>(), vec![0]);
        let c: Vec<u64> = combinations(4, 2).collect();
        assert_eq!(c, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }

    fn arb_space(max_n: usize) -> impl Strategy<Value = SampleSpace> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(0u64..(1 << n), 1..40).prop_map(move |v| SampleSpace::from_u64s(n, v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn bias_at_matches_direct_sum(space in arb_space(12), a in any::<u64>()) {
            let alpha = (a & ((1 << space.n()) - 1)).max(1);
            let got = bias_at(&space, &BitVector::from_u64(alpha, space.n())).unwrap();
            prop_assert!((got - oracle_bias(&space, alpha)).abs() < 1e-12);
        }

        #[test]
        fn transform_scan_matches_exhaustive(space in arb_space(12)) {
            let report = max_bias(&space, None).unwrap();
            let brute = (1..1u64 << space.n()).map(|a| oracle_bias(&space, a)).fold(0.0, f64::max);
            prop_assert!((report.max_bias - brute).abs() < 1e-12);
            prop_assert!((bias_at(&space, &report.witness).unwrap() - brute).abs() < 1e-12);
        }

        #[test]
        fn weight_limited_paths_agree(space in arb_space(10), k in 1usize..4) {
            let fast = max_bias(&space, Some(k)).unwrap().max_bias;
            let brute = (1..1u64 << space.n())
                .filter(|a| a.count_ones() as usize <= k)
                .map(|a| oracle_bias(&space, a))
                .fold(0.0, f64::max);
            prop_assert!((fast - brute).abs() < 1e-12);
        }

        #[test]
        fn vazirani_bounds_hold(space in arb_space(8), k in 1usize..4) {
            prop_assume!(k <= space.n());
            prop_assert_eq!(vazirani_report(&space, k).unwrap().violations, 0);
        }

        #[test]
        fn text_round_trip(space in arb_space(16)) {
            let text = space.to_text();
            let back = SampleSpace::from_text(&text).unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, space);
        }
    }
}
