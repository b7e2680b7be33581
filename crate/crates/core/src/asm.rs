//! Alternating sign matrices, their corner sum matrices, and permutations.
//!
//! All public indices are 1-based. Corner sums use the boundary convention
//! `Ã(0, j) = Ã(i, 0) = 0`, supplied by [`CornerSum::get`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Axis, Error, Result};

/// An `n × n` alternating sign matrix.
///
/// Entries are stored row-major. The derived ordering compares the size first
/// and then the entry sequence lexicographically with `-1 < 0 < 1`, which is
/// the canonical enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "AsmJson", into = "AsmJson")]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
struct AsmJson {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl TryFrom<AsmJson> for Asm {
    type Error = Error;

    fn try_from(value: AsmJson) -> Result<Self> {
        if value.entries.len() != value.n {
            return Err(Error::Parse(format!(
                "declared n = {} but {} rows given",
                value.n,
                value.entries.len()
            )));
        }
        validate_asm(&value.entries)
    }
}

impl From<Asm> for AsmJson {
    fn from(a: Asm) -> Self {
        AsmJson {
            n: a.n,
            entries: a
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
        }
    }
}

/// Checks the alternating-sign axioms and builds an [`Asm`].
///
/// Cells are scanned in row-major order; at each cell the entry range is
/// checked, then the column prefix sum, then the row prefix sum. Full row and
/// column sums are checked after the scan.
pub fn validate_asm(m: &[Vec<i64>]) -> Result<Asm> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquare);
    }
    let mut col_prefix = vec![0i64; n];
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in m.iter().enumerate() {
        let mut row_prefix = 0i64;
        for (j, &v) in row.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(Error::EntryOutOfRange { row: i + 1, col: j + 1 });
            }
            col_prefix[j] += v;
            row_prefix += v;
            if !(0..=1).contains(&col_prefix[j]) {
                return Err(Error::PrefixSumViolation {
                    axis: Axis::Col,
                    row: i + 1,
                    col: j + 1,
                });
            }
            if !(0..=1).contains(&row_prefix) {
                return Err(Error::PrefixSumViolation {
                    axis: Axis::Row,
                    row: i + 1,
                    col: j + 1,
                });
            }
            entries.push(v as i8);
        }
    }
    for (i, row) in m.iter().enumerate() {
        if row.iter().sum::<i64>() != 1 {
            return Err(Error::TotalSumViolation { axis: Axis::Row, index: i + 1 });
        }
    }
    for (j, &s) in col_prefix.iter().enumerate() {
        if s != 1 {
            return Err(Error::TotalSumViolation { axis: Axis::Col, index: j + 1 });
        }
    }
    Ok(Asm { n, entries })
}

impl Asm {
    pub fn identity(n: usize) -> Asm {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a_ij`, 1-based. Returns 0 when `i` or `j` is 0.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        if i == 0 || j == 0 {
            0
        } else {
            self.entries[(i - 1) * self.n + (j - 1)]
        }
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// An ASM is proper iff it has a `-1` entry.
    pub fn is_proper(&self) -> bool {
        self.entries.iter().any(|&v| v < 0)
    }

    pub fn corner_sum(&self) -> CornerSum {
        let n = self.n;
        let mut c = vec![0i32; n * n];
        for i in 0..n {
            let mut row = 0i32;
            for j in 0..n {
                row += i32::from(self.entries[i * n + j]);
                c[i * n + j] = row + if i > 0 { c[(i - 1) * n + j] } else { 0 };
            }
        }
        CornerSum { n, entries: c }
    }

    /// Inverse of [`Asm::corner_sum`]: `a_ij = Ã(i,j) + Ã(i-1,j-1) - Ã(i,j-1) - Ã(i-1,j)`.
    pub fn from_corner_sum(c: &CornerSum) -> Asm {
        let n = c.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let v = c.get(i, j) + c.get(i - 1, j - 1) - c.get(i, j - 1) - c.get(i - 1, j);
                entries.push(v as i8);
            }
        }
        Asm { n, entries }
    }

    pub fn from_permutation(p: &Permutation) -> Asm {
        let n = p.n();
        let mut entries = vec![0; n * n];
        for (i, &w) in p.images().iter().enumerate() {
            entries[i * n + (w - 1)] = 1;
        }
        Asm { n, entries }
    }

    pub fn to_permutation(&self) -> Result<Permutation> {
        if self.is_proper() {
            return Err(Error::NotAPermutation);
        }
        let images = self
            .entries
            .chunks(self.n)
            .map(|row| row.iter().position(|&v| v == 1).expect("row sums to 1") + 1)
            .collect();
        Ok(Permutation { images })
    }

    /// Text format: `n` on the first line, then `n` rows of space-separated entries.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.entries.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Asm> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad size line {header:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
        }
        validate_asm(&rows)
    }
}

impl fmt::Debug for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Asm{:?}", self.rows())
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Corner sum matrix `Ã(i, j) = Σ_{p ≤ i, q ≤ j} a_pq`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CornerSum {
    n: usize,
    entries: Vec<i32>,
}

impl CornerSum {
    /// Builds a corner sum matrix, checking the Robbins–Rumsey criterion:
    /// `X(i,n) = X(n,i) = i` and unit steps along rows and columns.
    pub fn new(rows: &[Vec<i64>]) -> Result<CornerSum> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare);
        }
        let entries: Vec<i32> = rows.iter().flatten().map(|&v| v as i32).collect();
        if rows.iter().flatten().any(|&v| v < 0 || v > n as i64) {
            let pos = rows.iter().flatten().position(|&v| v < 0 || v > n as i64).unwrap();
            return Err(Error::InvalidCornerSum {
                row: pos / n + 1,
                col: pos % n + 1,
                reason: "entry out of range",
            });
        }
        let c = CornerSum { n, entries };
        c.check()?;
        Ok(c)
    }

    pub(crate) fn from_raw(n: usize, entries: Vec<i32>) -> CornerSum {
        CornerSum { n, entries }
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                let v = self.get(i, j);
                if (i == n && v != j as i32) || (j == n && v != i as i32) {
                    return Err(Error::InvalidCornerSum { row: i, col: j, reason: "boundary row/column must read 1..n" });
                }
                if !(0..=1).contains(&(v - self.get(i - 1, j))) {
                    return Err(Error::InvalidCornerSum { row: i, col: j, reason: "column step not in {0,1}" });
                }
                if !(0..=1).contains(&(v - self.get(i, j - 1))) {
                    return Err(Error::InvalidCornerSum { row: i, col: j, reason: "row step not in {0,1}" });
                }
            }
        }
        Ok(())
    }

    /// Returns true iff the Robbins–Rumsey criterion holds.
    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Ã(i, j)`, 1-based, with `Ã(0, ·) = Ã(·, 0) = 0`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        if i == 0 || j == 0 {
            0
        } else {
            self.entries[(i - 1) * self.n + (j - 1)]
        }
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [i32] {
        &mut self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn to_asm(&self) -> Asm {
        Asm::from_corner_sum(self)
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().map(|&v| i64::from(v)).sum()
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for &w in &images {
            if w == 0 || w > n || seen[w - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..{n}")));
            }
            seen[w - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &w) in self.images.iter().enumerate() {
            inv[w - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Pairs `(i, j)` with `i < j` and `w(i) > w(j)`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.at(i) > self.at(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn inversion_count(&self) -> usize {
        self.inversions().len()
    }

    /// `(-1)^ℓ(w)`.
    pub fn sign(&self) -> i32 {
        if self.inversion_count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Descent positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.at(i) > self.at(i + 1)).collect()
    }

    pub fn to_asm(&self) -> Asm {
        Asm::from_permutation(self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact one-line notation (`4312`) or separated images
    /// (`10 2 1 ...`, `3,1,2`) for sizes above 9.
    fn from_str(s: &str) -> Result<Permutation> {
        let s = s.trim();
        let images: Vec<usize> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad image {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for w in &self.images {
                write!(f, "{w}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|w| w.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn center() -> Asm {
        validate_asm(&m(&[&[0, 1, 0], &[1, -1, 1], &[0, 1, 0]])).unwrap()
    }

    #[test]
    fn validates_center_of_a3() {
        assert!(center().is_proper());
        assert!(validate_asm(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).is_ok());
    }

    #[test]
    fn rejections_name_first_violation() {
        assert_eq!(
            validate_asm(&m(&[&[0, 1], &[-1, 1]])),
            Err(Error::PrefixSumViolation { axis: Axis::Col, row: 2, col: 1 })
        );
        assert_eq!(validate_asm(&m(&[&[0, 2], &[1, 0]])), Err(Error::EntryOutOfRange { row: 1, col: 2 }));
        assert_eq!(validate_asm(&m(&[&[1, 0], &[0]])), Err(Error::NonSquare));
        assert_eq!(validate_asm(&[]), Err(Error::Empty));
        assert_eq!(
            validate_asm(&m(&[&[-1, 1], &[1, 0]])),
            Err(Error::PrefixSumViolation { axis: Axis::Col, row: 1, col: 1 })
        );
        assert_eq!(
            validate_asm(&m(&[&[1, -1], &[0, 1]])),
            Err(Error::PrefixSumViolation { axis: Axis::Col, row: 1, col: 2 })
        );
        assert_eq!(
            validate_asm(&m(&[&[1, 1], &[0, 0]])),
            Err(Error::PrefixSumViolation { axis: Axis::Row, row: 1, col: 2 })
        );
        assert_eq!(
            validate_asm(&m(&[&[0, 0], &[1, 0]])),
            Err(Error::TotalSumViolation { axis: Axis::Row, index: 1 })
        );
        assert_eq!(
            validate_asm(&m(&[&[1, 0], &[1, 0]])),
            Err(Error::PrefixSumViolation { axis: Axis::Col, row: 2, col: 1 })
        );
        assert_eq!(
            validate_asm(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 1, 0]])),
            Err(Error::PrefixSumViolation { axis: Axis::Col, row: 3, col: 2 })
        );
        assert_eq!(
            validate_asm(&m(&[&[0, 1], &[0, 1]])),
            Err(Error::PrefixSumViolation { axis: Axis::Col, row: 2, col: 2 })
        );
    }

    #[test]
    fn corner_sum_examples() {
        // Direct summation (the centre of the corner-sum lattice of A_3).
        assert_eq!(center().corner_sum().rows(), vec![vec![0, 1, 1], vec![1, 1, 2], vec![1, 2, 3]]);
        assert_eq!(Asm::identity(3).corner_sum().rows(), vec![vec![1, 1, 1], vec![1, 2, 2], vec![1, 2, 3]]);
        let p: Permutation = "4312".parse().unwrap();
        assert_eq!(
            p.to_asm().corner_sum().rows(),
            vec![vec![0, 0, 0, 1], vec![0, 0, 1, 2], vec![1, 1, 2, 3], vec![1, 2, 3, 4]]
        );
    }

    #[test]
    fn from_corner_sum_inverts() {
        let c = CornerSum::new(&m(&[&[1, 1, 1], &[1, 1, 2], &[1, 2, 3]])).unwrap();
        assert_eq!(c.to_asm(), "132".parse::<Permutation>().unwrap().to_asm());
        let c = CornerSum::new(&m(&[&[0, 1, 1], &[1, 1, 2], &[1, 2, 3]])).unwrap();
        assert_eq!(c.to_asm(), center());
        let mins: Vec<Vec<i64>> = (1..=4).map(|i| (1..=4).map(|j| i64::min(i, j)).collect()).collect();
        assert_eq!(CornerSum::new(&mins).unwrap().to_asm(), Asm::identity(4));
    }

    #[test]
    fn invalid_corner_sums_are_rejected() {
        assert!(matches!(
            CornerSum::new(&m(&[&[1, 1, 1], &[1, 1, 2], &[1, 2, 2]])),
            Err(Error::InvalidCornerSum { row: 3, col: 3, .. })
        ));
        assert!(matches!(
            CornerSum::new(&m(&[&[0, 1, 1], &[2, 1, 2], &[1, 2, 3]])),
            Err(Error::InvalidCornerSum { .. })
        ));
    }

    #[test]
    fn permutation_round_trip() {
        let p: Permutation = "231".parse().unwrap();
        let a = p.to_asm();
        assert_eq!(a.rows(), vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(a.to_permutation().unwrap(), p);
        assert_eq!(center().to_permutation(), Err(Error::NotAPermutation));
    }

    #[test]
    fn inversion_statistics() {
        let check = |s: &str, len: usize, sign: i32| {
            let p: Permutation = s.parse().unwrap();
            assert_eq!(p.inversion_count(), len, "{s}");
            assert_eq!(p.sign(), sign, "{s}");
        };
        check("1234", 0, 1);
        check("4321", 6, 1);
        check("2143", 2, 1);
        check("2413", 3, -1);
        assert_eq!("2143".parse::<Permutation>().unwrap().inversions(), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn permutation_parsing() {
        assert!("1224".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        let p: Permutation = "10 9 8 7 6 5 4 3 2 1".parse().unwrap();
        assert_eq!(p.n(), 10);
        assert_eq!(p.to_string(), "10 9 8 7 6 5 4 3 2 1");
        assert_eq!("3,1,2".parse::<Permutation>().unwrap().to_string(), "312");
    }

    #[test]
    fn text_and_json_formats() {
        let a = center();
        assert_eq!(a.to_text(), "3\n0 1 0\n1 -1 1\n0 1 0\n");
        assert_eq!(Asm::parse_text(&a.to_text()).unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":3,"entries":[[0,1,0],[1,-1,1],[0,1,0]]}"#);
        assert_eq!(serde_json::from_str::<Asm>(&json).unwrap(), a);
        assert!(serde_json::from_str::<Asm>(r#"{"n":2,"entries":[[0,1],[-1,1]]}"#).is_err());
        assert!(Asm::parse_text("2\n1 0\n").is_err());
    }

    #[test]
    fn one_by_one() {
        let a = validate_asm(&m(&[&[1]])).unwrap();
        assert_eq!(a, Asm::identity(1));
        assert_eq!(a.corner_sum().rows(), vec![vec![1]]);
    }
}
