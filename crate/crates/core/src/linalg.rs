//! Exact matrices over the rationals and determinants over commutative rings.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p / q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Commutative ring with identity, as needed by [`det_cofactor`].
pub trait Ring:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Determinant by Laplace expansion along the last row, memoized over column
/// subsets: `O(2^n · n)` ring multiplications, no division. The empty matrix
/// has determinant 1.
pub fn det_cofactor<R: Ring>(rows: &[Vec<R>]) -> R {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    assert!(n < usize::BITS as usize - 1, "matrix too large for subset memoization");
    // minors[mask] = det of rows 0..popcount(mask) restricted to columns in mask
    let mut minors: Vec<R> = vec![R::zero(); 1 << n];
    minors[0] = R::one();
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = &rows[k - 1];
        let mut acc = R::zero();
        let mut rank = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            rank += 1;
            // entry sits at position (k, rank) of the k × k minor
            let term = row[c].clone() * minors[mask & !(1 << c)].clone();
            acc = if (k + rank) % 2 == 0 { acc + term } else { acc - term };
        }
        minors[mask] = acc;
    }
    minors[(1 << n) - 1].clone()
}

/// Square matrix of exact rationals, 1-based access.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixJson> for RationalMatrix {
    type Error = Error;

    fn try_from(value: MatrixJson) -> Result<Self> {
        let rows = value
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<Rational>().map_err(|_| Error::Parse(format!("bad rational {s:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != value.n {
            return Err(Error::Parse(format!("declared n = {} but {} rows given", value.n, rows.len())));
        }
        RationalMatrix::from_rows(rows)
    }
}

impl From<RationalMatrix> for MatrixJson {
    fn from(m: RationalMatrix) -> Self {
        MatrixJson {
            n: m.n,
            entries: m.rows().into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<RationalMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare);
        }
        Ok(RationalMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<RationalMatrix> {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect())
    }

    /// Matrix with entries `f(i, j)`, 1-based.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> RationalMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { n, entries }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        RationalMatrix::from_fn(n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        if self.n == 0 {
            return Vec::new();
        }
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Submatrix on the given 1-based rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Rational>> {
        rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect()
    }

    /// `A_j^i`-style deletion: drop the listed rows and columns.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let keep_r: Vec<usize> = (1..=self.n).filter(|r| !rows.contains(r)).collect();
        let keep_c: Vec<usize> = (1..=self.n).filter(|c| !cols.contains(c)).collect();
        assert_eq!(keep_r.len(), keep_c.len(), "deletion must keep the matrix square");
        RationalMatrix::from_rows(self.submatrix(&keep_r, &keep_c)).expect("square by construction")
    }

    /// Minor on 1-based row and column index lists, by Gaussian elimination.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Rational {
        det_gauss(self.submatrix(rows, cols))
    }

    pub fn det(&self) -> Rational {
        det_gauss(self.rows())
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        RationalMatrix::from_fn(self.n, |i, j| {
            (1..=self.n).fold(Rational::zero(), |acc, t| acc + self.get(i, t) * other.get(t, j))
        })
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix{self}")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Determinant over the rationals by Gaussian elimination with row swaps.
pub fn det_gauss(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &p;
            for c in col..n {
                let delta = &factor * &rows[col][c];
                rows[r][c] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofactor_and_gauss_agree_on_fixed_matrix() {
        let m = RationalMatrix::from_ints(&[vec![2, -1, 0, 3], vec![1, 4, 2, -2], vec![0, 5, -3, 1], vec![7, 0, 1, 1]])
            .unwrap();
        assert_eq!(det_cofactor(&m.rows()), m.det());
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_cofactor::<Rational>(&[]), Rational::one());
        assert_eq!(det_gauss(vec![]), Rational::one());
        let m = RationalMatrix::from_ints(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.det(), rat(-2, 1));
        assert_eq!(det_cofactor(&m.rows()), rat(-2, 1));
        let singular = RationalMatrix::from_ints(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.det().is_zero());
    }

    #[test]
    fn deletion_and_json() {
        let m = RationalMatrix::from_ints(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap();
        assert_eq!(m.delete(&[1], &[3]), RationalMatrix::from_ints(&[vec![4, 5], vec![7, 8]]).unwrap());
        assert_eq!(m.delete(&[1, 3], &[1, 3]).rows(), vec![vec![rat(5, 1)]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<RationalMatrix>(&json).unwrap(), m);
        let half = RationalMatrix::from_rows(vec![vec![rat(1, 2)]]).unwrap();
        assert_eq!(serde_json::to_string(&half).unwrap(), r#"{"n":1,"entries":[["1/2"]]}"#);
    }
}
