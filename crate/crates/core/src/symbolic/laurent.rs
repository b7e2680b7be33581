use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::asm::Asm;
use crate::error::{Error, Result};
use crate::linalg::{det_cofactor, Rational, RationalMatrix};

pub(crate) fn var_name(i: usize, j: usize) -> String {
    if i <= 9 && j <= 9 {
        format!("x{i}{j}")
    } else {
        format!("x_{i}_{j}")
    }
}

/// `c · Π x_ij^{e_ij}` with exact rational `c` and integer exponents.
///
/// Exponents are keyed by `(row, col)` so iteration is row-major; zero
/// exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentMonomial {
    coeff: Rational,
    exps: BTreeMap<(usize, usize), i32>,
}

impl LaurentMonomial {
    pub fn one() -> Self {
        LaurentMonomial { coeff: Rational::one(), exps: BTreeMap::new() }
    }

    pub fn var(i: usize, j: usize) -> Self {
        Self::one().with_factor(i, j, 1)
    }

    pub fn from_exponents(coeff: Rational, exps: impl IntoIterator<Item = ((usize, usize), i32)>) -> Self {
        let mut m = LaurentMonomial { coeff, exps: BTreeMap::new() };
        for ((i, j), e) in exps {
            m = m.with_factor(i, j, e);
        }
        m
    }

    /// Multiplies in `x_ij^e`.
    pub fn with_factor(mut self, i: usize, j: usize, e: i32) -> Self {
        let entry = self.exps.entry((i, j)).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.exps.remove(&(i, j));
        }
        self
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn with_coeff(mut self, coeff: Rational) -> Self {
        self.coeff = coeff;
        self
    }

    pub fn exponent(&self, i: usize, j: usize) -> i32 {
        self.exps.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero exponents in row-major order.
    pub fn exponents(&self) -> impl Iterator<Item = ((usize, usize), i32)> + '_ {
        self.exps.iter().map(|(&k, &e)| (k, e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentMonomial { coeff: &self.coeff * &other.coeff, exps: self.exps.clone() };
        for (&(i, j), &e) in &other.exps {
            out = out.with_factor(i, j, e);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        LaurentMonomial {
            coeff: self.coeff.recip(),
            exps: self.exps.iter().map(|(&k, &e)| (k, -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    /// Every exponent is at least `-1`.
    pub fn is_almost_positive(&self) -> bool {
        self.exps.values().all(|&e| e >= -1)
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.exps.values().all(|&e| e >= 0)
    }

    /// Value at `x_ij = m_ij`; undefined when a zero entry carries a negative exponent.
    pub fn eval(&self, m: &RationalMatrix) -> Result<Rational> {
        let mut num = self.coeff.clone();
        let mut den = Rational::one();
        for (&(i, j), &e) in &self.exps {
            let x = m.get(i, j);
            if e < 0 && x.is_zero() {
                return Err(Error::Undefined { row: i, col: j });
            }
            let target = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target *= x;
            }
        }
        Ok(num / den)
    }

    /// Splits into `(numerator, denominator)` monomials with positive exponents.
    pub fn numerator_denominator(&self) -> (Self, Self) {
        let num = LaurentMonomial {
            coeff: self.coeff.clone(),
            exps: self.exps.iter().filter(|(_, &e)| e > 0).map(|(&k, &e)| (k, e)).collect(),
        };
        let den = LaurentMonomial {
            coeff: Rational::one(),
            exps: self.exps.iter().filter(|(_, &e)| e < 0).map(|(&k, &e)| (k, -e)).collect(),
        };
        (num, den)
    }

    fn write_positive(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .exps
            .iter()
            .map(|(&(i, j), &e)| if e == 1 { var_name(i, j) } else { format!("{}^{e}", var_name(i, j)) })
            .collect();
        match (self.coeff.is_one(), factors.is_empty()) {
            (_, true) => write!(f, "{}", self.coeff),
            (true, false) => f.write_str(&factors.join("*")),
            (false, false) => write!(f, "{}*{}", self.coeff, factors.join("*")),
        }
    }
}

/// Display style: `x12*x21*x23/(x22*x33)`.
impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.numerator_denominator();
        num.write_positive(f)?;
        match den.exps.len() {
            0 => Ok(()),
            1 if den.exps.values().all(|&e| e == 1) => {
                f.write_str("/")?;
                den.write_positive(f)
            }
            _ => {
                f.write_str("/(")?;
                den.write_positive(f)?;
                f.write_str(")")
            }
        }
    }
}

/// `x^A = Π x_ij^{a_ij}`.
pub fn asm_monomial(a: &Asm) -> LaurentMonomial {
    let n = a.n();
    let mut m = LaurentMonomial::one();
    for i in 1..=n {
        for j in 1..=n {
            m = m.with_factor(i, j, i32::from(a.get(i, j)));
        }
    }
    m
}

/// The q-weighted monomial `x_q^A = q^{Σ (i-j)^2 a_ij / 2} · x^A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMonomial {
    pub monomial: LaurentMonomial,
    /// Twice the exponent of `q`.
    pub q_twice: i64,
}

impl QMonomial {
    /// The q-exponent when it is an integer.
    pub fn q_power(&self) -> Option<i64> {
        (self.q_twice % 2 == 0).then_some(self.q_twice / 2)
    }
}

pub fn q_monomial(a: &Asm) -> QMonomial {
    let n = a.n();
    let mut q_twice = 0i64;
    for i in 1..=n {
        for j in 1..=n {
            let d = i as i64 - j as i64;
            q_twice += d * d * i64::from(a.get(i, j));
        }
    }
    QMonomial { monomial: asm_monomial(a), q_twice }
}

/// A minor `Δ(x)` on sorted row and column index lists (1-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MinorRef {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorRef {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let increasing = |v: &[usize]| v.first().is_none_or(|&x| x >= 1) && v.windows(2).all(|w| w[0] < w[1]);
        if rows.len() != cols.len() || !increasing(&rows) || !increasing(&cols) {
            return Err(Error::Parse(format!("invalid minor rows {rows:?} cols {cols:?}")));
        }
        Ok(MinorRef { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Size 1 or 2.
    pub fn is_small(&self) -> bool {
        (1..=2).contains(&self.size())
    }

    /// Consecutive rows and consecutive columns.
    pub fn is_solid(&self) -> bool {
        self.rows.windows(2).all(|w| w[1] == w[0] + 1) && self.cols.windows(2).all(|w| w[1] == w[0] + 1)
    }

    pub fn eval(&self, m: &RationalMatrix) -> Rational {
        det_cofactor(&m.submatrix(&self.rows, &self.cols))
    }
}

/// `|x32 x33; x42 x43|`.
impl fmt::Display for MinorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|&r| self.cols.iter().map(|&c| var_name(r, c)).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "|{}|", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{validate_asm, Permutation};
    use crate::linalg::rat;

    #[test]
    fn center_monomial() {
        let c = validate_asm(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap();
        let q = q_monomial(&c);
        assert_eq!(q.monomial.to_string(), "x12*x21*x23*x32/x22");
        assert_eq!(q.q_power(), Some(2));
        assert!(q.monomial.is_almost_positive());
    }

    #[test]
    fn permutation_monomials() {
        let e = q_monomial(&Asm::identity(3));
        assert_eq!(e.monomial.to_string(), "x11*x22*x33");
        assert_eq!(e.q_power(), Some(0));
        let w = q_monomial(&"231".parse::<Permutation>().unwrap().to_asm());
        assert_eq!(w.monomial.to_string(), "x12*x23*x31");
        assert_eq!(w.q_power(), Some(3));
    }

    #[test]
    fn arithmetic_and_eval() {
        let m = LaurentMonomial::var(1, 2).mul(&LaurentMonomial::var(2, 2).inverse());
        assert_eq!(m.to_string(), "x12/x22");
        assert_eq!(m.mul(&LaurentMonomial::var(2, 2)), LaurentMonomial::var(1, 2));
        let x = RationalMatrix::from_ints(&[vec![1, 3], vec![5, 2]]).unwrap();
        assert_eq!(m.eval(&x).unwrap(), rat(3, 2));
        let z = RationalMatrix::from_ints(&[vec![1, 3], vec![5, 0]]).unwrap();
        assert_eq!(m.eval(&z), Err(Error::Undefined { row: 2, col: 2 }));
        let sq = LaurentMonomial::one().with_factor(1, 1, 2).with_factor(2, 1, -1).with_factor(2, 2, -1);
        assert_eq!(sq.to_string(), "x11^2/(x21*x22)");
        assert!(!sq.inverse().is_almost_positive());
    }

    #[test]
    fn minors() {
        let d = MinorRef::new(vec![3, 4], vec![2, 3]).unwrap();
        assert!(d.is_small() && d.is_solid());
        assert_eq!(d.to_string(), "|x32 x33; x42 x43|");
        assert!(!MinorRef::new(vec![1, 3], vec![2, 3]).unwrap().is_solid());
        assert!(MinorRef::new(vec![2, 1], vec![1, 2]).is_err());
        assert!(MinorRef::new(vec![1], vec![1, 2]).is_err());
        let x = RationalMatrix::from_ints(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap();
        assert_eq!(MinorRef::new(vec![2, 3], vec![2, 3]).unwrap().eval(&x), rat(2, 1));
    }
}
