//! Binary linear codes and the 2-basis decision.
//!
//! A 2-basis is a basis in which every coordinate is nonzero in at most two
//! basis vectors. Codes with a 2-basis are exactly the cut spaces of
//! multigraphs, and they are the codes whose minimal representation
//! dimension is 3; every other code needs 4.

use std::cmp::Ordering;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::error::CodeError;
use crate::gf2::{self, BitMat, BitVec};

/// Largest dimension accepted by [`two_basis_oracle`].
pub const ORACLE_MAX_DIM: usize = 6;

/// A binary linear code stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    len: usize,
    basis: Vec<BitVec>,
}

impl LinearCode {
    /// Row span of `rows`, canonicalized. `len` is needed for the empty case.
    pub fn from_rows(len: usize, rows: &[BitVec]) -> Result<Self, CodeError> {
        let m = BitMat::from_rows(len, rows.to_vec())?;
        let (r, pivots) = m.rref();
        let basis = r.rows()[..pivots.len()].to_vec();
        Ok(Self { len, basis })
    }

    pub fn zero(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    pub fn repetition(len: usize) -> Self {
        let ones = BitVec::from_support(len, 1..=len);
        Self::from_rows(len, &[ones]).expect("consistent lengths")
    }

    /// All even-weight words of length `len`.
    pub fn even_weight(len: usize) -> Self {
        let rows: Vec<BitVec> = (1..len)
            .map(|i| BitVec::from_support(len, [i, i + 1]))
            .collect();
        Self::from_rows(len, &rows).expect("consistent lengths")
    }

    /// The [7,4] Hamming code.
    pub fn hamming_7_4() -> Self {
        let rows: Vec<BitVec> = ["1000110", "0100101", "0010011", "0001111"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        Self::from_rows(7, &rows).expect("consistent lengths")
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Length zero.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical (reduced echelon) basis.
    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.len
            && gf2::express(v, &self.basis)
                .expect("canonical basis is independent")
                .is_some()
    }

    /// Whether `vectors` span exactly this code.
    pub fn is_spanned_by(&self, vectors: &[BitVec]) -> bool {
        vectors.iter().all(|v| v.len() == self.len)
            && gf2::rank_of(vectors) == self.dim()
            && vectors.iter().all(|v| self.contains(v))
    }

    /// All `2^d` codewords; the `m`-th word is the sum of the basis rows
    /// selected by the bits of `m`.
    pub fn codewords(&self) -> Vec<BitVec> {
        let d = self.dim();
        let mut words = Vec::with_capacity(1 << d);
        words.push(BitVec::zeros(self.len));
        for k in 0..d {
            for m in 0..(1usize << k) {
                let mut w = words[m].clone();
                w.xor_assign(&self.basis[k]);
                words.push(w);
            }
        }
        words
    }

    /// Parses the generator-row text format.
    pub fn parse_text(text: &str) -> Result<Self, CodeError> {
        let mut rows = Vec::new();
        let mut len = None;
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: BitVec = line.parse().map_err(|e| CodeError::Parse {
                line: k + 1,
                msg: format!("{e}"),
            })?;
            match len {
                None => len = Some(row.len()),
                Some(n) if n != row.len() => {
                    return Err(CodeError::Parse {
                        line: k + 1,
                        msg: format!("row has length {}, expected {n}", row.len()),
                    })
                }
                Some(_) => {}
            }
            rows.push(row);
        }
        Self::from_rows(len.unwrap_or(0), &rows)
    }

    /// Canonical basis rows, one per line. A zero code of positive length is
    /// written as a single all-zero row so the length survives.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.basis.is_empty() && self.len > 0 {
            let _ = writeln!(out, "{}", BitVec::zeros(self.len));
            return out;
        }
        for b in &self.basis {
            let _ = writeln!(out, "{b}");
        }
        out
    }
}

/// Outcome of a 2-basis search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoBasisReport {
    pub found: bool,
    #[serde(serialize_with = "serialize_opt_basis")]
    pub basis: Option<Vec<BitVec>>,
    /// For each coordinate, how many vectors of the witness (or of the
    /// canonical basis, when nothing was found) are nonzero there.
    pub coordinate_load: Vec<usize>,
}

fn serialize_opt_basis<S: serde::Serializer>(
    basis: &Option<Vec<BitVec>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let strings: Option<Vec<String>> = basis
        .as_ref()
        .map(|b| b.iter().map(|v| v.to_string()).collect());
    serde::Serialize::serialize(&strings, s)
}

impl TwoBasisReport {
    pub fn max_load(&self) -> usize {
        self.coordinate_load.iter().copied().max().unwrap_or(0)
    }
}

/// Per-coordinate number of vectors with a one there.
pub fn coordinate_load(vectors: &[BitVec], len: usize) -> Vec<usize> {
    let mut load = vec![0; len];
    for v in vectors {
        for i in v.support() {
            load[i - 1] += 1;
        }
    }
    load
}

/// Compares two equal-length vectors as binary integers, coordinate 1 first.
fn numeric_order(a: &BitVec, b: &BitVec) -> Ordering {
    a.iter().cmp(b.iter())
}

/// Nonzero codewords in ascending integer order.
fn search_candidates(code: &LinearCode) -> Vec<BitVec> {
    let mut words: Vec<BitVec> = code.codewords().into_iter().skip(1).collect();
    words.sort_by(numeric_order);
    words
}

fn report(code: &LinearCode, witness: Option<Vec<BitVec>>) -> TwoBasisReport {
    let coordinate_load = coordinate_load(witness.as_deref().unwrap_or(code.basis()), code.len());
    TwoBasisReport {
        found: witness.is_some(),
        basis: witness,
        coordinate_load,
    }
}

/// Incrementally maintained echelon form used to reject dependent picks.
struct Echelon {
    rows: Vec<(usize, BitVec)>,
}

impl Echelon {
    /// Reduces `v`; returns the residue if it is independent of the rows.
    fn reduce(&self, v: &BitVec) -> Option<BitVec> {
        let mut r = v.clone();
        for (p, row) in &self.rows {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        (!r.is_zero()).then_some(r)
    }
}

struct Search<'a> {
    candidates: &'a [BitVec],
    target: usize,
    load: Vec<u8>,
    chosen: Vec<usize>,
    echelon: Echelon,
}

impl Search<'_> {
    fn run(&mut self, start: usize) -> bool {
        if self.chosen.len() == self.target {
            return true;
        }
        let needed = self.target - self.chosen.len();
        for idx in start..self.candidates.len() {
            if self.candidates.len() - idx < needed {
                break;
            }
            let c = &self.candidates[idx];
            if c.support().any(|i| self.load[i - 1] >= 2) {
                continue;
            }
            let Some(residue) = self.echelon.reduce(c) else {
                continue;
            };
            let pivot = residue.leading_one().expect("nonzero residue");
            for i in c.support() {
                self.load[i - 1] += 1;
            }
            self.chosen.push(idx);
            self.echelon.rows.push((pivot, residue));
            if self.run(idx + 1) {
                return true;
            }
            self.echelon.rows.pop();
            self.chosen.pop();
            for i in c.support() {
                self.load[i - 1] -= 1;
            }
        }
        false
    }
}

/// Searches for a 2-basis by backtracking over codewords.
///
/// Codewords are tried in ascending integer order (coordinate 1 most
/// significant) and a branch is cut as soon as a coordinate would reach load
/// 3 or the pick is dependent, so the witness is the first one in that order.
/// Runtime is exponential in the dimension.
pub fn find_two_basis(code: &LinearCode) -> TwoBasisReport {
    let candidates = search_candidates(code);
    let mut search = Search {
        candidates: &candidates,
        target: code.dim(),
        load: vec![0; code.len()],
        chosen: Vec::new(),
        echelon: Echelon { rows: Vec::new() },
    };
    let witness = search
        .run(0)
        .then(|| search.chosen.iter().map(|&i| candidates[i].clone()).collect());
    report(code, witness)
}

/// Exhaustive check over every unordered `d`-subset of nonzero codewords.
///
/// Independent of [`find_two_basis`]; only for `d <= ORACLE_MAX_DIM`.
pub fn two_basis_oracle(code: &LinearCode) -> Result<TwoBasisReport, CodeError> {
    let d = code.dim();
    if d > ORACLE_MAX_DIM {
        return Err(CodeError::OracleGuard(d));
    }
    let candidates = search_candidates(code);
    let witness = candidates
        .iter()
        .combinations(d)
        .map(|pick| pick.into_iter().cloned().collect::<Vec<_>>())
        .find(|pick| {
            coordinate_load(pick, code.len()).iter().all(|&l| l <= 2) && gf2::rank_of(pick) == d
        });
    Ok(report(code, witness))
}

/// Number of canonical basis vectors needed to write `c`.
pub fn degree(c: &BitVec, code: &LinearCode) -> Result<usize, CodeError> {
    degree_in_basis(c, code.basis())
}

/// Number of vectors of `basis` needed to write `c`.
pub fn degree_in_basis(c: &BitVec, basis: &[BitVec]) -> Result<usize, CodeError> {
    match gf2::express(c, basis)? {
        Some(ind) => Ok(ind.weight()),
        None => Err(CodeError::NotInCode(c.to_string())),
    }
}

/// Smallest `D` such that the code has a geometric representation in `R^D`,
/// restricted to the 3-or-4 dichotomy.
pub fn min_representation_dim(code: &LinearCode) -> u8 {
    if find_two_basis(code).found {
        3
    } else {
        4
    }
}

/// Checks that `basis` is a 2-basis of `code`.
pub fn check_two_basis(code: &LinearCode, basis: &[BitVec]) -> Result<(), CodeError> {
    if basis.iter().any(|b| b.len() != code.len()) {
        return Err(CodeError::NotTwoBasis("length mismatch".into()));
    }
    if !code.is_spanned_by(basis) || basis.len() != code.dim() {
        return Err(CodeError::NotTwoBasis("does not form a basis of the code".into()));
    }
    let load = coordinate_load(basis, code.len());
    if let Some(i) = load.iter().position(|&l| l > 2) {
        return Err(CodeError::NotTwoBasis(format!(
            "coordinate {} has load {}",
            i + 1,
            load[i]
        )));
    }
    Ok(())
}
