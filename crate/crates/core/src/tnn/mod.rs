//! Totally nonnegative matrices: exact minor checks, random samples,
//! evaluation of `x^A - x^B`, and counterexamples for incomparable pairs.

mod scan;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asm::Asm;
use crate::error::{Error, Limit, Result};
use crate::linalg::{rat, Rational};
use crate::symbolic::asm_monomial;

pub use crate::linalg::RationalMatrix;
pub use scan::{qtnn_scan, QtnnReport, QtnnRow};

pub const MAX_TNN_N: usize = 8;

/// Every minor of `m`, keyed by `(row mask, column mask)`.
///
/// Minors are built up by expanding along the last chosen row, so each
/// `k × k` minor costs `k` products of already known `(k-1) × (k-1)` minors.
/// Calls `visit` on each minor of size at least one and stops early when it
/// returns false.
fn for_each_minor(m: &RationalMatrix, mut visit: impl FnMut(u32, u32, &Rational) -> bool) -> bool {
    let n = m.n();
    let full = 1u32 << n;
    let idx = |r: u32, c: u32| ((r as usize) << n) | c as usize;
    let mut table: Vec<Option<Rational>> = vec![None; 1 << (2 * n)];
    table[0] = Some(Rational::one());
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0..full {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for k in 1..=n {
        for &r in &by_size[k] {
            let last = 31 - r.leading_zeros();
            let rest = r & !(1 << last);
            for &c in &by_size[k] {
                let mut acc = Rational::zero();
                let mut rank = 0;
                for col in 0..n as u32 {
                    if c & (1 << col) == 0 {
                        continue;
                    }
                    rank += 1;
                    let x = m.get(last as usize + 1, col as usize + 1);
                    if x.is_zero() {
                        continue;
                    }
                    let sub = table[idx(rest, c & !(1 << col))].as_ref().expect("smaller minors come first");
                    let term = x * sub;
                    if (k + rank) % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                if !visit(r, c, &acc) {
                    return false;
                }
                table[idx(r, c)] = Some(acc);
            }
        }
    }
    true
}

/// All minors nonnegative, checked exactly.
pub fn is_tnn(m: &RationalMatrix) -> Result<bool> {
    is_tnn_with(m, Limit::Default)
}

pub fn is_tnn_with(m: &RationalMatrix, limit: Limit) -> Result<bool> {
    limit.check("is_tnn", m.n(), MAX_TNN_N)?;
    Ok(for_each_minor(m, |_, _, d| !d.is_negative()))
}

/// The first negative minor as `(rows, cols, value)`, 1-based.
pub fn negative_minor(m: &RationalMatrix) -> Result<Option<(Vec<usize>, Vec<usize>, Rational)>> {
    Limit::Default.check("negative_minor", m.n(), MAX_TNN_N)?;
    let mut found = None;
    let bits = |mask: u32| (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b as usize + 1).collect::<Vec<_>>();
    for_each_minor(m, |r, c, d| {
        if d.is_negative() {
            found = Some((bits(r), bits(c), d.clone()));
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// The rational square root of `q`, if it has one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root = |x: &BigInt| {
        let r = x.sqrt();
        (&r * &r == *x).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// `m_{q0}`: entries scaled by `s^{(i-j)^2}` where `s^2 = q0`.
pub fn q_weight(m: &RationalMatrix, s: &Rational) -> RationalMatrix {
    scale_by_powers(m, s)
}

fn scale_by_powers(m: &RationalMatrix, s: &Rational) -> RationalMatrix {
    let max = m.n().saturating_sub(1).pow(2);
    let mut powers = vec![Rational::one()];
    for t in 0..max {
        let next = &powers[t] * s;
        powers.push(next);
    }
    RationalMatrix::from_fn(m.n(), |i, j| &powers[i.abs_diff(j).pow(2)] * m.get(i, j))
}

/// All minors of `m_{q0}` nonnegative. `q0` must be the square of a positive rational.
pub fn is_locally_tnn_at(m: &RationalMatrix, q0: &Rational) -> Result<bool> {
    let s = positive_sqrt(q0)?;
    is_tnn(&q_weight(m, &s))
}

pub(crate) fn positive_sqrt(q0: &Rational) -> Result<Rational> {
    match rational_sqrt(q0) {
        Some(s) if s.is_positive() => Ok(s),
        _ => Err(Error::NotAPerfectSquare(q0.to_string())),
    }
}

/// `I + t E_{p,p+1}` (upper) or `I + t E_{p+1,p}` (lower).
fn bidiagonal(n: usize, p: usize, t: &Rational, upper: bool) -> RationalMatrix {
    RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            Rational::one()
        } else if (upper && i == p && j == p + 1) || (!upper && i == p + 1 && j == p) {
            t.clone()
        } else {
            Rational::zero()
        }
    })
}

/// The index sequence of a reduced word for the longest permutation.
fn long_word(n: usize) -> Vec<usize> {
    (1..n).flat_map(|k| (k..n).rev()).collect()
}

/// `L · D · U` with `L` a product of lower elementary bidiagonal factors,
/// `D` diagonal and `U` a product of upper factors, one factor per letter
/// of a reduced word of the longest permutation. Nonnegative parameters
/// and a positive diagonal give a TNN matrix.
pub fn tnn_from_parameters(
    n: usize,
    lower: &[Rational],
    diagonal: &[Rational],
    upper: &[Rational],
) -> Result<RationalMatrix> {
    let word = long_word(n);
    if lower.len() != word.len() || upper.len() != word.len() || diagonal.len() != n {
        return Err(Error::Parse(format!(
            "expected {} lower, {n} diagonal and {} upper parameters",
            word.len(),
            word.len()
        )));
    }
    let mut m = RationalMatrix::identity(n);
    for (&p, t) in word.iter().zip(lower) {
        m = m.mul(&bidiagonal(n, p, t, false));
    }
    m = m.mul(&RationalMatrix::from_fn(n, |i, j| if i == j { diagonal[i - 1].clone() } else { Rational::zero() }));
    for (&p, t) in word.iter().rev().zip(upper) {
        m = m.mul(&bidiagonal(n, p, t, true));
    }
    Ok(m)
}

/// A random totally positive matrix: every parameter is drawn from
/// `{1, …, size_param} / {1, 2}`.
pub fn random_tnn(n: usize, seed: u64, size_param: u32) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tnn_from(n, &mut rng, size_param)
}

pub(crate) fn random_tnn_from(n: usize, rng: &mut impl Rng, size_param: u32) -> RationalMatrix {
    let top = i64::from(size_param.max(1));
    let mut draw = |count: usize| -> Vec<Rational> {
        (0..count).map(|_| rat(rng.gen_range(1..=top), rng.gen_range(1..=2))).collect()
    };
    let len = n * n.saturating_sub(1) / 2;
    let lower = draw(len);
    let diagonal = draw(n);
    let upper = draw(len);
    tnn_from_parameters(n, &lower, &diagonal, &upper).expect("parameter counts match")
}

/// `x^A - x^B` at `x = m`.
pub fn evaluate_difference(a: &Asm, b: &Asm, m: &RationalMatrix) -> Result<Rational> {
    for other in [b.n(), m.n()] {
        if a.n() != other {
            return Err(Error::SizeMismatch { left: a.n(), right: other });
        }
    }
    Ok(asm_monomial(a).eval(m)? - asm_monomial(b).eval(m)?)
}

/// A TNN matrix on which `x^A - x^B < 0`, witnessing `A ≰ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub matrix: RationalMatrix,
    /// The cell `(k, l)` with `Ã(k,l) < B̃(k,l)`.
    pub witness: (usize, usize),
    /// `2^{Ã(k,l)} - 2^{B̃(k,l)}`.
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Entries 2 on the block `i ≤ k, j ≤ l` and 1 elsewhere, where `(k, l)` is
/// the row-major first cell with `Ã(k,l) < B̃(k,l)`.
pub fn counterexample_matrix(a: &Asm, b: &Asm) -> Result<Counterexample> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { left: a.n(), right: b.n() });
    }
    let n = a.n();
    let (ca, cb) = (a.corner_sum(), b.corner_sum());
    let witness = (1..=n)
        .flat_map(|k| (1..=n).map(move |l| (k, l)))
        .find(|&(k, l)| ca.get(k, l) < cb.get(k, l))
        .ok_or(Error::Comparable)?;
    let (k, l) = witness;
    let matrix = RationalMatrix::from_fn(n, |i, j| if i <= k && j <= l { rat(2, 1) } else { Rational::one() });
    let value = evaluate_difference(a, b, &matrix)?;
    debug_assert!(value.is_negative());
    Ok(Counterexample { matrix, witness, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{validate_asm, Permutation};
    use crate::linalg::det_gauss;

    fn perm(s: &str) -> Asm {
        s.parse::<Permutation>().unwrap().to_asm()
    }

    /// Independent oracle: every minor by elimination over explicit index subsets.
    fn tnn_by_subsets(m: &RationalMatrix) -> bool {
        let n = m.n();
        (1u32..1 << n).all(|r| {
            (1u32..1 << n).filter(|c| c.count_ones() == r.count_ones()).all(|c| {
                let rows: Vec<usize> = (0..n).filter(|b| r & (1 << b) != 0).map(|b| b + 1).collect();
                let cols: Vec<usize> = (0..n).filter(|b| c & (1 << b) != 0).map(|b| b + 1).collect();
                !det_gauss(m.submatrix(&rows, &cols)).is_negative()
            })
        })
    }

    #[test]
    fn fixed_matrices() {
        let ones = RationalMatrix::from_ints(&vec![vec![1; 4]; 4]).unwrap();
        assert!(is_tnn(&ones).unwrap());
        let swap = RationalMatrix::from_ints(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!is_tnn(&swap).unwrap());
        let (rows, cols, v) = negative_minor(&swap).unwrap().unwrap();
        assert_eq!((rows, cols, v), (vec![1, 2], vec![1, 2], rat(-1, 1)));
        let big = RationalMatrix::identity(9);
        assert!(matches!(is_tnn(&big), Err(Error::SizeLimitExceeded { .. })));
        assert!(is_tnn_with(&big, Limit::Override).unwrap());
    }

    #[test]
    fn minor_table_agrees_with_subsets() {
        for seed in 0..20 {
            let m = RationalMatrix::from_fn(4, |i, j| rat(((seed * 7 + i * 3 + j * j) % 5) as i64 - 1, 1));
            assert_eq!(is_tnn(&m).unwrap(), tnn_by_subsets(&m), "seed {seed}");
        }
    }

    #[test]
    fn random_samples_are_tnn() {
        for seed in 0..30 {
            let m = random_tnn(4, seed, 5);
            assert!(tnn_by_subsets(&m), "seed {seed}: {m}");
        }
    }

    #[test]
    fn identity_parameters() {
        let z = vec![Rational::zero(); 6];
        let ones = vec![Rational::one(); 4];
        assert_eq!(tnn_from_parameters(4, &z, &ones, &z).unwrap(), RationalMatrix::identity(4));
        assert!(tnn_from_parameters(4, &z, &ones, &z[..5]).is_err());
    }

    #[test]
    fn square_roots_and_local_tnn() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        let m = random_tnn(3, 4, 3);
        assert!(is_locally_tnn_at(&m, &rat(1, 1)).unwrap());
        assert!(matches!(is_locally_tnn_at(&m, &rat(2, 1)), Err(Error::NotAPerfectSquare(_))));
        let ones = RationalMatrix::from_ints(&vec![vec![1; 3]; 3]).unwrap();
        // weighted at q0 = 4 the leading 2x2 block is [[1, 2], [2, 1]]
        assert!(!is_locally_tnn_at(&ones, &rat(4, 1)).unwrap());
        let back = q_weight(&m, &rat(1, 2));
        assert!(is_locally_tnn_at(&back, &rat(4, 1)).unwrap());
    }

    #[test]
    fn example_difference() {
        // x^{213} - x^{center} = m12 m21 (m22 m33 - m23 m32) / m22
        let center = validate_asm(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap();
        let top = perm("321");
        let m = random_tnn(3, 11, 4);
        let lhs = evaluate_difference(&perm("213"), &center, &m).unwrap();
        let g = |i, j| m.get(i, j).clone();
        let rhs = g(1, 2) * g(2, 1) * (g(2, 2) * g(3, 3) - g(2, 3) * g(3, 2)) / g(2, 2);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_negative());
        assert!(evaluate_difference(&top, &top, &m).unwrap().is_zero());
    }

    #[test]
    fn undefined_difference() {
        let center = validate_asm(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap();
        let id = RationalMatrix::identity(3);
        let err = evaluate_difference(&center, &perm("123"), &RationalMatrix::from_ints(&[vec![1, 1, 1], vec![1, 0, 1], vec![1, 1, 1]]).unwrap());
        assert_eq!(err, Err(Error::Undefined { row: 2, col: 2 }));
        assert!(evaluate_difference(&center, &perm("123"), &id).is_ok());
    }

    #[test]
    fn counterexamples() {
        let (u, v) = (perm("132"), perm("213"));
        let cx = counterexample_matrix(&u, &v).unwrap();
        assert!(cx.value.is_negative());
        assert!(is_tnn(&cx.matrix).unwrap());
        let (k, l) = cx.witness;
        let expected = rat(1 << u.corner_sum().get(k, l), 1) - rat(1 << v.corner_sum().get(k, l), 1);
        assert_eq!(cx.value, expected);
        assert_eq!(counterexample_matrix(&Asm::identity(3), &perm("321")), Err(Error::Comparable));
        let rev = counterexample_matrix(&perm("4321"), &perm("1234")).unwrap();
        assert_eq!(rev.witness, (1, 1));
    }
}
