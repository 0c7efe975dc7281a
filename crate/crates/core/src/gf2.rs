//! Dense linear algebra over GF(2).
//!
//! Vectors and matrices are bit-packed into `u64` words. Coordinates are
//! 1-based throughout: `v.get(1)` is the first entry, matching the way code
//! coordinates are numbered `1..=n`.
//!
//! Elimination always pivots on the lowest eligible row of the lowest
//! remaining column, so kernels and echelon forms are reproducible.

use std::fmt;
use std::str::FromStr;

use crate::error::Gf2Error;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector in GF(2)^len.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector with a single one at coordinate `i` (1-based).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            if b {
                v.set(k + 1, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones at the given 1-based coordinates.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Entry at 1-based coordinate `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "coordinate {i} out of 1..={}", self.len);
        let k = i - 1;
        (self.words[k / WORD] >> (k % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i >= 1 && i <= self.len, "coordinate {i} out of 1..={}", self.len);
        let k = i - 1;
        let mask = 1u64 << (k % WORD);
        if value {
            self.words[k / WORD] |= mask;
        } else {
            self.words[k / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let cur = self.get(i);
        self.set(i, !cur);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 1-based coordinates of the nonzero entries, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz + 1)
            })
        })
    }

    /// Lowest coordinate holding a one.
    pub fn leading_one(&self) -> Option<usize> {
        self.support().next()
    }

    /// In-place GF(2) addition. Lengths must match.
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Whether every one of `self` is also a one of `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.get(i))
    }

    /// Integer value with coordinate 1 as the most significant bit.
    /// Only defined for `len <= 128`.
    pub fn to_u128_msb_first(&self) -> u128 {
        assert!(self.len <= 128);
        self.iter().fold(0u128, |acc, b| (acc << 1) | b as u128)
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = BitVec::zeros(s.len());
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(k + 1, true),
                other => return Err(Gf2Error::BadDigit(other)),
            }
        }
        Ok(v)
    }
}

/// Coordinatewise sum over GF(2).
pub fn xor(a: &BitVec, b: &BitVec) -> Result<BitVec, Gf2Error> {
    if a.len() != b.len() {
        return Err(Gf2Error::LengthMismatch(a.len(), b.len()));
    }
    let mut out = a.clone();
    out.xor_assign(b);
    Ok(out)
}

/// A dense GF(2) matrix stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMat {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (1..=n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Stacks `rows` into a matrix with `cols` columns.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::LengthMismatch(cols, r.len()));
        }
        Ok(Self { cols, rows })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r - 1]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r - 1].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r - 1].set(c, value)
    }

    /// Column `c` as a vector of length `num_rows`.
    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_support(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.get(c))
                .map(|(k, _)| k + 1),
        )
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        BitVec::from_support(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(x))
                .map(|(k, _)| k + 1),
        )
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (BitMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 1..=self.cols {
            if next == m.rows.len() {
                break;
            }
            let Some(p) = (next..m.rows.len()).find(|&r| m.rows[r].get(c)) else {
                continue;
            };
            m.rows.swap(next, p);
            let pivot_row = m.rows[next].clone();
            for (r, row) in m.rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        (m, pivots)
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMat {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// GF(2) row rank.
pub fn rank(m: &BitMat) -> usize {
    // Forward elimination only; cheaper than a full RREF.
    let mut rows: Vec<BitVec> = m.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut rank = 0;
    for c in 1..=m.cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[BitVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let m = BitMat {
        cols: first.len(),
        rows: vectors.to_vec(),
    };
    rank(&m)
}

/// A basis of `{x : Mx = 0}`, one vector per free column.
pub fn nullspace(m: &BitMat) -> Vec<BitVec> {
    let (r, pivots) = m.rref();
    let n = m.cols;
    let mut is_pivot = vec![false; n + 1];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(n - pivots.len());
    for free in (1..=n).filter(|&c| !is_pivot[c]) {
        let mut x = BitVec::unit(n, free);
        for (row, &p) in r.rows.iter().zip(&pivots) {
            if row.get(free) {
                x.set(p, true);
            }
        }
        basis.push(x);
    }
    basis
}

fn check_lengths(vectors: &[BitVec], len: usize) -> Result<(), Gf2Error> {
    match vectors.iter().find(|v| v.len() != len) {
        Some(v) => Err(Gf2Error::LengthMismatch(len, v.len())),
        None => Ok(()),
    }
}

/// Whether the two lists span the same subspace.
pub fn span_equal(a: &[BitVec], b: &[BitVec]) -> Result<bool, Gf2Error> {
    let Some(len) = a.first().or(b.first()).map(BitVec::len) else {
        return Ok(true);
    };
    check_lengths(a, len)?;
    check_lengths(b, len)?;
    let ra = rank_of(a);
    let rb = rank_of(b);
    if ra != rb {
        return Ok(false);
    }
    let both: Vec<BitVec> = a.iter().chain(b).cloned().collect();
    Ok(rank_of(&both) == ra)
}

/// Restricts every vector to the `keep` coordinates, in the order given.
///
/// `keep` names the surviving coordinates, i.e. the complement of the
/// punctured set.
pub fn puncture(vectors: &[BitVec], keep: &[usize]) -> Result<Vec<BitVec>, Gf2Error> {
    let mut seen = std::collections::HashSet::new();
    for &k in keep {
        if !seen.insert(k) {
            return Err(Gf2Error::DuplicateIndex(k));
        }
    }
    vectors
        .iter()
        .map(|v| {
            let mut out = BitVec::zeros(keep.len());
            for (j, &k) in keep.iter().enumerate() {
                if k == 0 || k > v.len() {
                    return Err(Gf2Error::IndexOutOfRange(k, v.len()));
                }
                if v.get(k) {
                    out.set(j + 1, true);
                }
            }
            Ok(out)
        })
        .collect()
}

/// Expresses `v` as a sum of basis vectors.
///
/// Returns the indicator of the selected basis vectors (coordinate `i` set
/// iff `basis[i-1]` is used), or `None` when `v` is outside the span.
pub fn express(v: &BitVec, basis: &[BitVec]) -> Result<Option<BitVec>, Gf2Error> {
    check_lengths(basis, v.len())?;
    let d = basis.len();
    // Augment each basis vector with its own indicator, then eliminate.
    let mut rows: Vec<(BitVec, BitVec)> = basis
        .iter()
        .enumerate()
        .map(|(k, b)| (b.clone(), BitVec::unit(d, k + 1)))
        .collect();
    let mut pivots: Vec<usize> = Vec::with_capacity(d);
    for k in 0..rows.len() {
        for j in 0..k {
            let p = pivots[j];
            if rows[k].0.get(p) {
                let (head, tail) = rows.split_at_mut(k);
                tail[0].0.xor_assign(&head[j].0);
                tail[0].1.xor_assign(&head[j].1);
            }
        }
        match rows[k].0.leading_one() {
            Some(p) => {
                // Keep earlier rows reduced against the new pivot as well.
                let (head, tail) = rows.split_at_mut(k);
                for row in head.iter_mut() {
                    if row.0.get(p) {
                        row.0.xor_assign(&tail[0].0);
                        row.1.xor_assign(&tail[0].1);
                    }
                }
                pivots.push(p);
            }
            None => return Err(Gf2Error::DependentBasis),
        }
    }
    let mut rest = v.clone();
    let mut coeffs = BitVec::zeros(d);
    for (row, &p) in rows.iter().zip(&pivots) {
        if rest.get(p) {
            rest.xor_assign(&row.0);
            coeffs.xor_assign(&row.1);
        }
    }
    Ok(if rest.is_zero() { Some(coeffs) } else { None })
}

/// Sum of the basis vectors selected by `indicator`.
pub fn combine(indicator: &BitVec, basis: &[BitVec], len: usize) -> BitVec {
    let mut out = BitVec::zeros(len);
    for i in indicator.support() {
        out.xor_assign(&basis[i - 1]);
    }
    out
}
