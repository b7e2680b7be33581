//! The signed bigrassmannian polynomial `B_n(q) = Σ_w (-1)^{ℓ(w)} q^{β(w)}`,
//! Dodgson condensation and its q-analog.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::asm::Permutation;
use crate::error::{Error, Limit, Result};
use crate::lattice::beta;
use crate::linalg::{det_cofactor, Rational, RationalMatrix};
use crate::symbolic::HalfExpPoly;

pub const MAX_DEFINITION_N: usize = 9;
pub const MAX_QDET_N: usize = 10;
pub const MAX_PERMANENT_N: usize = 8;

pub type IntPoly = HalfExpPoly<BigInt>;
pub type RatPoly = HalfExpPoly<Rational>;

/// Calls `f` on every permutation of `1..=n` whose first image is `first`.
fn for_each_with_first(n: usize, first: usize, mut f: impl FnMut(Permutation)) {
    let rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
    for tail in rest.iter().copied().permutations(n - 1) {
        let mut images = Vec::with_capacity(n);
        images.push(first);
        images.extend(tail);
        f(Permutation::new(images).expect("a rearrangement of 1..=n"));
    }
}

/// Sums `sign(w) q^{β(w)}` over `S_n`, with β read off corner sums.
pub fn bq_definition(n: usize) -> Result<IntPoly> {
    bq_definition_with(n, Limit::Default)
}

pub fn bq_definition_with(n: usize, limit: Limit) -> Result<IntPoly> {
    limit.check("bq_definition", n, MAX_DEFINITION_N)?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let partial: Vec<Vec<i64>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut coeffs: Vec<i64> = Vec::new();
            for_each_with_first(n, first, |w| {
                let b = beta(&w.to_asm()) as usize;
                if coeffs.len() <= b {
                    coeffs.resize(b + 1, 0);
                }
                coeffs[b] += i64::from(w.sign());
            });
            coeffs
        })
        .collect();
    Ok(IntPoly::from_terms(
        partial.iter().flat_map(|c| c.iter().enumerate().map(|(b, &v)| (2 * b as i64, BigInt::from(v)))),
    ))
}

/// `Π_{k=1}^{n-1} (1 - q^k)^{n-k}`.
pub fn bq_product(n: usize) -> IntPoly {
    (1..n).fold(IntPoly::one(), |acc, k| acc * (IntPoly::one() - IntPoly::q_pow(k as i64)).pow((n - k) as u32))
}

/// The `n × n` matrix with entries `q^{(i-j)^2/2}`.
pub fn q_matrix(n: usize) -> Vec<Vec<IntPoly>> {
    (1..=n)
        .map(|i: usize| (1..=n).map(|j: usize| IntPoly::q_half_pow(i.abs_diff(j).pow(2) as i64)).collect())
        .collect()
}

/// `det (q^{(i-j)^2/2})` by cofactor expansion over the half-exponent ring.
pub fn bq_qdet(n: usize) -> Result<IntPoly> {
    bq_qdet_with(n, Limit::Default)
}

pub fn bq_qdet_with(n: usize, limit: Limit) -> Result<IntPoly> {
    limit.check("bq_qdet", n, MAX_QDET_N)?;
    Ok(det_cofactor(&q_matrix(n)))
}

/// `B_n = B_{n-1}^2 (1 - q^{n-1}) / B_{n-2}` from `B_1 = 1`, `B_2 = 1 - q`,
/// with every division checked exact.
pub fn bq_recursion(n: usize) -> Result<IntPoly> {
    let b1 = IntPoly::one();
    let b2 = IntPoly::one() - IntPoly::q_pow(1);
    match n {
        0 | 1 => return Ok(b1),
        2 => return Ok(b2),
        _ => {}
    }
    let (mut prev, mut cur) = (b1, b2);
    for m in 3..=n {
        let next = (cur.clone() * cur.clone() * (IntPoly::one() - IntPoly::q_pow(m as i64 - 1))).div_exact(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `Σ_{w ∈ S_n} Π_i q^{(i - w(i))^2 / 2}`, the permanent of the q-matrix.
pub fn unsigned_permanent_q(n: usize) -> Result<IntPoly> {
    unsigned_permanent_q_with(n, Limit::Default)
}

pub fn unsigned_permanent_q_with(n: usize, limit: Limit) -> Result<IntPoly> {
    limit.check("unsigned_permanent_q", n, MAX_PERMANENT_N)?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let parts: Vec<IntPoly> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = IntPoly::zero();
            for_each_with_first(n, first, |w| {
                let twice: usize = (1..=n).map(|i| i.abs_diff(w.at(i)).pow(2)).sum();
                acc.add_term(twice as i64, BigInt::one());
            });
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(IntPoly::zero(), |a, b| a + b))
}

/// `+1` if `q^deg p(1/q) = p`, `-1` if it equals `-p`, `None` otherwise.
pub fn reversal_sign(p: &IntPoly) -> Option<i32> {
    let r = p.reversed();
    if r == *p {
        Some(1)
    } else if r == -p.clone() {
        Some(-1)
    } else {
        None
    }
}

/// `(|A_1^1| |A_n^n| - |A_n^1| |A_1^n|) / |A_{1n}^{1n}|`, where `A_j^i` drops
/// row `i` and column `j`, and the empty determinant is 1.
pub fn dodgson(m: &RationalMatrix) -> Result<Rational> {
    let n = m.n();
    if n < 2 {
        return Err(Error::SizeLimitExceeded { what: "dodgson (needs n >= 2)", n, limit: 2 });
    }
    let det = |rows: &[usize], cols: &[usize]| det_cofactor(&m.delete(rows, cols).rows());
    let interior = det(&[1, n], &[1, n]);
    if interior.is_zero() {
        return Err(Error::SingularInterior);
    }
    let top = det(&[1], &[1]) * det(&[n], &[n]) - det(&[1], &[n]) * det(&[n], &[1]);
    Ok(top / interior)
}

/// `m_q` with entries `q^{(i-j)^2/2} m_ij`.
pub fn q_weighted_poly_matrix(m: &RationalMatrix) -> Vec<Vec<RatPoly>> {
    let n = m.n();
    (1..=n)
        .map(|i: usize| {
            (1..=n).map(|j: usize| RatPoly::monomial(m.get(i, j).clone(), i.abs_diff(j).pow(2) as i64)).collect()
        })
        .collect()
}

fn q_det_of(m: &RationalMatrix) -> RatPoly {
    det_cofactor(&q_weighted_poly_matrix(m))
}

/// Both sides of
/// `|A_q| · |(A_{1n}^{1n})_q| = |(A_1^1)_q| |(A_n^n)_q| - q^{n-1} |(A_n^1)_q| |(A_1^n)_q|`,
/// each submatrix weighted by its own positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDodgsonReport {
    pub n: usize,
    pub lhs: RatPoly,
    pub rhs: RatPoly,
    pub holds: bool,
}

pub fn q_dodgson_check(m: &RationalMatrix) -> Result<QDodgsonReport> {
    let n = m.n();
    if n < 2 {
        return Err(Error::SizeLimitExceeded { what: "q_dodgson_check (needs n >= 2)", n, limit: 2 });
    }
    let sub = |rows: &[usize], cols: &[usize]| q_det_of(&m.delete(rows, cols));
    let lhs = q_det_of(m) * sub(&[1, n], &[1, n]);
    let rhs = sub(&[1], &[1]) * sub(&[n], &[n]) - RatPoly::q_pow(n as i64 - 1) * sub(&[1], &[n]) * sub(&[n], &[1]);
    Ok(QDodgsonReport { n, holds: lhs == rhs, lhs, rhs })
}

/// `|A_q|` from the condensation right-hand side by exact polynomial division.
pub fn q_dodgson_divided(m: &RationalMatrix) -> Result<RatPoly> {
    let n = m.n();
    if n < 2 {
        return Err(Error::SizeLimitExceeded { what: "q_dodgson_divided (needs n >= 2)", n, limit: 2 });
    }
    let sub = |rows: &[usize], cols: &[usize]| q_det_of(&m.delete(rows, cols));
    let interior = sub(&[1, n], &[1, n]);
    if interior.is_zero() {
        return Err(Error::SingularInterior);
    }
    let rhs = sub(&[1], &[1]) * sub(&[n], &[n]) - RatPoly::q_pow(n as i64 - 1) * sub(&[1], &[n]) * sub(&[n], &[1]);
    rhs.div_exact(&interior)
}

/// `|A_q|` directly.
pub fn q_determinant(m: &RationalMatrix) -> RatPoly {
    q_det_of(m)
}

/// Converts dense integer coefficients `c_0, c_1, …` into a polynomial in `q`.
pub fn int_poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (2 * k as i64, BigInt::from(c))))
}

/// `{"0": c0, "1": c1, …}` for nonzero coefficients of an integral polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyJson {
    pub n: usize,
    pub coeffs: std::collections::BTreeMap<String, serde_json::Value>,
}

pub fn poly_json(n: usize, p: &IntPoly) -> PolyJson {
    let mut coeffs = std::collections::BTreeMap::new();
    for (twice, c) in p.terms() {
        let key = if twice % 2 == 0 { (twice / 2).to_string() } else { format!("{twice}/2") };
        let value = i64::try_from(c.clone())
            .map(serde_json::Value::from)
            .unwrap_or_else(|_| serde_json::Value::String(c.to_string()));
        coeffs.insert(key, value);
    }
    PolyJson { n, coeffs }
}
