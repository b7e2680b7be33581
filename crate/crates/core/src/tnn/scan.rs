//! Sampled check that `x^A - x^B` is locally TNN along a grid of `q`.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asm::Asm;
use crate::error::{Error, Result};
use crate::lattice::{asm_leq, beta};
use crate::linalg::Rational;
use crate::symbolic::asm_monomial;

use super::{counterexample_matrix, evaluate_difference, positive_sqrt, q_weight, random_tnn_from, Counterexample};

/// Parameter range handed to the sampler.
const SAMPLE_SIZE_PARAM: u32 = 4;

/// Findings at one grid point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QtnnRow {
    pub q0: String,
    pub samples: usize,
    /// Samples with `(x^A - x^B)(X_{q0}) < 0`.
    pub violations: usize,
    /// Samples where the value differs from `q0^β(A) x^A(X) - q0^β(B) x^B(X)`.
    pub weighting_mismatches: usize,
    pub undefined: usize,
    /// Smallest value seen, as an exact rational string.
    pub min_value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QtnnReport {
    pub comparable: bool,
    pub rows: Vec<QtnnRow>,
    /// For an incomparable pair, the block matrix that is not locally TNN at 1.
    pub counterexample: Option<Counterexample>,
}

impl QtnnReport {
    pub fn total_violations(&self) -> usize {
        self.rows.iter().map(|r| r.violations).sum::<usize>() + usize::from(self.counterexample.is_some())
    }

    pub fn total_mismatches(&self) -> usize {
        self.rows.iter().map(|r| r.weighting_mismatches).sum()
    }
}

enum Sample {
    Value { value: Rational, consistent: bool },
    Undefined,
}

fn pow(base: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * base)
}

/// Draws, for each `q0 = s^2` in `grid`, `samples` matrices `X` such that
/// `X_{q0}` is a random TNN matrix, and evaluates `x^A - x^B` at `X_{q0}`.
///
/// Sample `t` of grid point `g` uses a ChaCha stream numbered
/// `g * samples + t` under `seed`, so the report does not depend on thread
/// scheduling. Every grid value must be the square of a positive rational.
pub fn qtnn_scan(a: &Asm, b: &Asm, grid: &[Rational], samples: usize, seed: u64) -> Result<QtnnReport> {
    let comparable = asm_leq(a, b)?;
    let roots = grid.iter().map(positive_sqrt).collect::<Result<Vec<_>>>()?;
    let n = a.n();
    let (xa, xb) = (asm_monomial(a), asm_monomial(b));
    let (ba, bb) = (beta(a), beta(b));

    let mut rows = Vec::with_capacity(grid.len());
    for (g, (q0, s)) in grid.iter().zip(&roots).enumerate() {
        let s_inv = s.recip();
        let results: Vec<Result<Sample>> = (0..samples)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((g * samples + t) as u64);
                let m = random_tnn_from(n, &mut rng, SAMPLE_SIZE_PARAM);
                // X with X_{q0} = m
                let x = q_weight(&m, &s_inv);
                let value = match evaluate_difference(a, b, &m) {
                    Ok(v) => v,
                    Err(Error::Undefined { .. }) => return Ok(Sample::Undefined),
                    Err(e) => return Err(e),
                };
                let weighted = pow(q0, ba) * xa.eval(&x)? - pow(q0, bb) * xb.eval(&x)?;
                Ok(Sample::Value { consistent: weighted == value, value })
            })
            .collect();
        let mut row = QtnnRow {
            q0: q0.to_string(),
            samples,
            violations: 0,
            weighting_mismatches: 0,
            undefined: 0,
            min_value: None,
        };
        let mut min: Option<Rational> = None;
        for r in results {
            match r? {
                Sample::Undefined => row.undefined += 1,
                Sample::Value { value, consistent } => {
                    row.violations += usize::from(value.is_negative());
                    row.weighting_mismatches += usize::from(!consistent);
                    if min.as_ref().is_none_or(|m| value < *m) {
                        min = Some(value);
                    }
                }
            }
        }
        row.min_value = min.map(|m| m.to_string());
        rows.push(row);
    }

    let counterexample = if comparable { None } else { Some(counterexample_matrix(a, b)?) };
    debug_assert!(counterexample.as_ref().is_none_or(|c| !c.value.is_zero()));
    Ok(QtnnReport { comparable, rows, counterexample })
}
