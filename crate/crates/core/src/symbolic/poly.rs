//! Polynomials in `q^{1/2}` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rational, Ring};

/// Coefficient ring of a [`HalfExpPoly`].
pub trait Coeff: Ring + PartialEq + Signed + fmt::Debug + fmt::Display {
    /// `self / rhs` if it lies in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    fn to_rational(&self) -> Rational;
}

impl Coeff for BigInt {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
}

impl Coeff for Rational {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// A finite sum `Σ c_e q^{e/2}`.
///
/// Terms are keyed by *twice* the exponent, so `q^{1/2}` has key 1 and `q^2`
/// has key 4. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfExpPoly<C = BigInt> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> HalfExpPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · q^{twice_exp / 2}`.
    pub fn monomial(c: C, twice_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(twice_exp, c);
        }
        HalfExpPoly { terms }
    }

    /// `q^{twice_exp / 2}`.
    pub fn q_half_pow(twice_exp: i64) -> Self {
        Self::monomial(C::one(), twice_exp)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::q_half_pow(2 * k)
    }

    /// Builds a polynomial from `(twice exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, twice_exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(twice_exp).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&twice_exp);
        }
    }

    /// Coefficient of `q^{twice_exp / 2}`.
    pub fn coeff(&self, twice_exp: i64) -> C {
        self.terms.get(&twice_exp).cloned().unwrap_or_else(C::zero)
    }

    /// `(twice exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Largest twice-exponent, or `None` for the zero polynomial.
    pub fn degree_twice(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_twice_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// True iff every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Dense coefficients `c_0, c_1, …` of an integral polynomial in `q` with
    /// nonnegative exponents.
    pub fn dense_coeffs(&self) -> Option<Vec<C>> {
        if !self.is_integral() || self.min_twice_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let deg = self.degree_twice().map_or(0, |d| d / 2);
        Some((0..=deg).map(|k| self.coeff(2 * k)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Multiplies by `q^{twice_shift / 2}`.
    pub fn shift(&self, twice_shift: i64) -> Self {
        HalfExpPoly { terms: self.terms.iter().map(|(&e, c)| (e + twice_shift, c.clone())).collect() }
    }

    /// `q^{deg} · p(1/q)`: the coefficient sequence reversed.
    pub fn reversed(&self) -> Self {
        let Some(top) = self.degree_twice() else {
            return self.clone();
        };
        HalfExpPoly { terms: self.terms.iter().map(|(&e, c)| (top - e, c.clone())).collect() }
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Value at `q = s^2`, so that `q^{e/2} = s^e`.
    pub fn eval_sqrt(&self, s: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (&e, c) in &self.terms {
            let mut p = Rational::one();
            let base = if e >= 0 { s.clone() } else { s.recip() };
            for _ in 0..e.unsigned_abs() {
                p *= &base;
            }
            total += c.to_rational() * p;
        }
        total
    }

    /// Exact quotient `self / divisor`; fails unless the remainder vanishes.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (&top_d, lead_d) = divisor.terms.iter().next_back().ok_or(Error::NonExactDivision)?;
        let (&low_d, _) = divisor.terms.iter().next().expect("nonempty");
        // lowest exponent an exact quotient can have
        let floor = self.min_twice_exp().unwrap_or(0) - low_d;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&top_r, lead_r)) = rem.terms.iter().next_back() {
            if top_r - top_d < floor {
                return Err(Error::NonExactDivision);
            }
            let c = lead_r.exact_div(lead_d).ok_or(Error::NonExactDivision)?;
            let term = Self::monomial(c, top_r - top_d);
            rem = rem - term.clone() * divisor.clone();
            quot = quot + term;
        }
        Ok(quot)
    }
}

impl<C: Coeff> Zero for HalfExpPoly<C> {
    fn zero() -> Self {
        HalfExpPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for HalfExpPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coeff> Add for HalfExpPoly<C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Coeff> Neg for HalfExpPoly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        HalfExpPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Coeff> Sub for HalfExpPoly<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Mul for HalfExpPoly<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

fn write_q_power(f: &mut fmt::Formatter<'_>, twice: i64) -> fmt::Result {
    match twice {
        0 => Ok(()),
        2 => f.write_str("q"),
        e if e % 2 == 0 => write!(f, "q^{}", e / 2),
        e => write!(f, "q^({e}/2)"),
    }
}

/// Ascending exponents, e.g. `1 - 2q + 2q^3 - q^4`.
impl<C: Coeff> fmt::Display for HalfExpPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let text = mag.to_string();
            if e == 0 {
                f.write_str(&text)?;
            } else if !mag.is_one() {
                if text.contains('/') {
                    write!(f, "({text})")?;
                } else {
                    f.write_str(&text)?;
                }
            }
            write_q_power(f, e)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for HalfExpPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfExpPoly({self})")
    }
}
