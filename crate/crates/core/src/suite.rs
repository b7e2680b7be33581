//! Self-checks for a fixed size `n`, run by `asmgraph verify-all`.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asm::Asm;
use crate::bigrassmannian::{bq_definition, bq_product, bq_qdet, bq_recursion, dodgson, q_dodgson_check};
use crate::enumerate::{enumerate_asms, enumerate_permutations};
use crate::error::{Error, Result};
use crate::lattice::{
    asm_leq, beta, beta_corner_sum, beta_entry_formula, bigrassmannians, build_graph, covered_by,
    essential_points, fulton_essential_set, CORNER_DIFFERENCE,
};
use crate::linalg::{det_gauss, rat, RationalMatrix};
use crate::symbolic::{q_monomial, sfl_certificate, verify_certificate};
use crate::tnn::{counterexample_matrix, evaluate_difference, is_tnn, random_tnn};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult { name, passed, detail, millis: start.elapsed().as_millis() }
}

/// `Π_{k<n} (3k+1)! / (n+k)!`.
pub fn asm_count_formula(n: usize) -> BigInt {
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for k in 0..n {
        num *= fact(3 * k + 1);
        den *= fact(n + k);
    }
    num / den
}

/// A random rational matrix with entries `p/q`, `|p| ≤ 9`, `1 ≤ q ≤ 5`.
pub fn random_rational_matrix(n: usize, rng: &mut impl Rng) -> RationalMatrix {
    RationalMatrix::from_fn(n, |_, _| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
}

fn check_enumeration(n: usize) -> Result<(bool, String)> {
    let asms = enumerate_asms(n)?;
    let expected = asm_count_formula(n);
    let sorted = asms.windows(2).all(|w| w[0] < w[1]);
    Ok((BigInt::from(asms.len()) == expected && sorted, format!("{} ASMs, product formula {expected}", asms.len())))
}

fn check_beta(n: usize) -> Result<(bool, String)> {
    let asms = enumerate_asms(n)?;
    let below: Vec<Asm> = bigrassmannians(n)?.iter().map(|w| w.to_asm()).collect();
    let mut bad = 0usize;
    for a in &asms {
        let b = beta_corner_sum(a);
        let count = below.iter().filter(|w| asm_leq(w, a).unwrap_or(false)).count() as u32;
        if beta_entry_formula(a) != b || count != b || q_monomial(a).q_power() != Some(b.into()) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{} ASMs, {bad} disagreements among the β evaluators", asms.len())))
}

fn check_lattice(n: usize) -> Result<(bool, String)> {
    let g = build_graph(n)?;
    let mut problems = Vec::new();
    let mut types = BTreeSet::new();
    for e in g.edges() {
        let (s, t) = (&g.nodes()[e.source], &g.nodes()[e.target]);
        let r = e.rect;
        if g.beta(e.target) != g.beta(e.source) + r.area() as u32 {
            problems.push(format!("β jump along {r}"));
        }
        let diff: Vec<i8> = r.corners().iter().map(|&(p, q)| s.get(p, q) - t.get(p, q)).collect();
        if diff != CORNER_DIFFERENCE {
            problems.push(format!("corner difference along {r}"));
        }
        types.insert(e.edge_type);
    }
    let mut lower_covers: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.nodes().len()];
    for e in g.edges().filter(|e| e.rect.is_point()) {
        lower_covers[e.target].insert(e.source);
    }
    for (idx, b) in g.nodes().iter().enumerate() {
        let lower = &lower_covers[idx];
        let covers = covered_by(b);
        if covers.len() != essential_points(b).len() || covers.len() != lower.len() {
            problems.push(format!("cover count at node {idx}"));
        }
        for (c, _) in covers {
            let ok = g.index_of(&c).is_some_and(|ci| lower.contains(&ci)) && beta(&c) + 1 == beta(b);
            if !ok {
                problems.push(format!("cover of node {idx}"));
            }
        }
    }
    let e = g.index_of(&Asm::identity(n)).expect("identity is an ASM");
    let structural = g.is_acyclic() && g.sources() == vec![e] && g.reachable_from(e).iter().all(|&r| r);
    let detail = format!(
        "{} nodes, {} edges, types witnessed {:?}, {} problems",
        g.nodes().len(),
        g.edge_count(),
        types,
        problems.len()
    );
    Ok((structural && problems.is_empty(), detail))
}

fn check_order_oracle(n: usize, seed: u64) -> Result<(bool, String)> {
    let asms = enumerate_asms(n)?;
    let pairs: Vec<(usize, usize)> = (0..asms.len()).flat_map(|i| (0..asms.len()).map(move |j| (i, j))).collect();
    let outcomes: Vec<Result<bool>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&asms[i], &asms[j]);
            let leq = asm_leq(a, b)?;
            let cert = sfl_certificate(a, b);
            let cx = counterexample_matrix(a, b);
            match (leq, cert, cx) {
                (true, Ok(c), Err(Error::Comparable)) => {
                    verify_certificate(&c, 2, seed ^ (i * 1000 + j) as u64)?;
                    for t in 0..3u64 {
                        let m = random_tnn(n, seed.wrapping_add(t * 7919 + (i * 1000 + j) as u64), 4);
                        let direct = evaluate_difference(a, b, &m)?;
                        if direct.is_negative() || c.eval(&m)? != direct {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                (false, Err(Error::Incomparable), Ok(x)) => Ok(x.value.is_negative() && is_tnn(&x.matrix)?),
                _ => Ok(false),
            }
        })
        .collect();
    let mut failures = 0;
    for o in outcomes {
        failures += usize::from(!o?);
    }
    Ok((failures == 0, format!("{} ordered pairs, {failures} failures", pairs.len())))
}

fn check_bq(n: usize) -> Result<(bool, String)> {
    let p = bq_product(n);
    let all = [bq_definition(n)?, bq_qdet(n)?, bq_recursion(n)?];
    Ok((all.iter().all(|x| *x == p), format!("B_{n}(q) = {p}")))
}

fn check_dodgson(n: usize, seed: u64, trials: usize) -> Result<(bool, String)> {
    if n < 2 {
        return Ok((true, "needs n >= 2, skipped".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut plain_ok, mut q_ok, mut singular) = (0, 0, 0);
    for _ in 0..trials {
        let m = random_rational_matrix(n, &mut rng);
        match dodgson(&m) {
            Ok(d) => plain_ok += usize::from(d == det_gauss(m.rows())),
            Err(Error::SingularInterior) => singular += 1,
            Err(e) => return Err(e),
        }
        q_ok += usize::from(q_dodgson_check(&m)?.holds);
    }
    let passed = plain_ok + singular == trials && q_ok == trials;
    Ok((passed, format!("dodgson {plain_ok}/{} ({singular} singular interiors), q-dodgson {q_ok}/{trials}", trials - singular)))
}

fn check_fulton(n: usize) -> Result<(bool, String)> {
    let perms = enumerate_permutations(n)?;
    let bad = perms.iter().filter(|w| fulton_essential_set(w) != essential_points(&w.to_asm())).count();
    Ok((bad == 0, format!("{} permutations, {bad} mismatches", perms.len())))
}

/// Runs every check that applies at size `n`. The order oracle runs for
/// `n ≤ 4` and the polynomial checks for `n ≤ 7`.
pub fn run_suite(n: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = vec![
        timed("enumeration", || check_enumeration(n)),
        timed("beta", || check_beta(n)),
        timed("lattice", || check_lattice(n)),
    ];
    if n <= 4 {
        out.push(timed("order-oracle", || check_order_oracle(n, seed)));
    }
    if n <= 7 {
        out.push(timed("bq", || check_bq(n)));
    }
    if n <= 5 {
        out.push(timed("dodgson", || check_dodgson(n, seed, 20)));
    }
    out.push(timed("fulton", || check_fulton(n)));
    out
}
