//! Subtraction-free certificates for `x^A - x^B` along a covering chain.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::asm::Asm;
use crate::error::{Error, Result};
use crate::lattice::{beta, covering_chain, edge_between, Edge, Rect};
use crate::linalg::{rat, Rational, RationalMatrix};

use super::laurent::{asm_monomial, LaurentMonomial, MinorRef};

/// `x^A - x^B = prefix · minor / divisor` for one edge `A → B`.
///
/// `prefix` is `x^{AB}` times the source's four corner variables raised to
/// their entries, `divisor` is `x_ik · x_jl`, and `minor` is the 2×2 minor
/// on rows `{i, j}`, columns `{k, l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFactorization {
    pub common: LaurentMonomial,
    pub prefix: LaurentMonomial,
    pub divisor: LaurentMonomial,
    pub minor: MinorRef,
}

impl EdgeFactorization {
    /// `prefix / divisor`.
    pub fn combined_prefix(&self) -> LaurentMonomial {
        self.prefix.div(&self.divisor)
    }
}

pub fn edge_factorization(e: &Edge) -> Result<EdgeFactorization> {
    let Edge { source, target, rect, .. } = e;
    // re-validates the edge, so hand-built values are rejected too
    crate::lattice::classify_edge(source, target, rect)?;
    Ok(factor_rect(source, rect))
}

fn factor_rect(source: &Asm, rect: &Rect) -> EdgeFactorization {
    let n = source.n();
    let corners = rect.corners();
    let mut common = LaurentMonomial::one();
    for p in 1..=n {
        for q in 1..=n {
            if !corners.contains(&(p, q)) {
                common = common.with_factor(p, q, i32::from(source.get(p, q)));
            }
        }
    }
    let prefix = corners.iter().fold(common.clone(), |m, &(p, q)| m.with_factor(p, q, i32::from(source.get(p, q))));
    let Rect { i, j, k, l } = *rect;
    let divisor = LaurentMonomial::var(i, k).with_factor(j, l, 1);
    let minor = MinorRef::new(vec![i, j], vec![k, l]).expect("rectangle corners are increasing");
    EdgeFactorization { common, prefix, divisor, minor }
}

/// One step of a certificate; see [`EdgeFactorization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SflStep {
    /// β of the step's lower end.
    pub beta: u32,
    pub prefix: LaurentMonomial,
    pub divisor: LaurentMonomial,
    pub minor: MinorRef,
}

impl SflStep {
    pub fn combined_prefix(&self) -> LaurentMonomial {
        self.prefix.div(&self.divisor)
    }

    /// Value at `x = m`.
    pub fn eval(&self, m: &RationalMatrix) -> Result<Rational> {
        Ok(self.combined_prefix().eval(m)? * self.minor.eval(m))
    }

    /// The rectangle this step moves along.
    pub fn rect(&self) -> Result<Rect> {
        match (self.minor.rows(), self.minor.cols()) {
            (&[i, j], &[k, l]) => Rect::new(i, j, k, l),
            _ => Err(Error::Parse(format!("certificate minor {} is not 2x2", self.minor))),
        }
    }
}

impl fmt::Display for SflStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.combined_prefix(), self.minor)
    }
}

/// A telescoping sum `x^A - x^B = Σ_t step_t` along a covering chain from `A` up to `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateJson", into = "CertificateJson")]
pub struct SflCertificate {
    pub endpoints: (Asm, Asm),
    pub beta: (u32, u32),
    pub steps: Vec<SflStep>,
}

pub fn sfl_certificate(a: &Asm, b: &Asm) -> Result<SflCertificate> {
    let chain = covering_chain(a, b)?;
    let steps = chain
        .windows(2)
        .map(|w| {
            let e = edge_between(&w[0], &w[1]).expect("coverings are edges");
            let f = factor_rect(&w[0], &e.rect);
            SflStep { beta: beta(&w[0]), prefix: f.prefix, divisor: f.divisor, minor: f.minor }
        })
        .collect();
    Ok(SflCertificate { endpoints: (a.clone(), b.clone()), beta: (beta(a), beta(b)), steps })
}

/// `common · Σ_t term_t · minor_t` with every `term_t` a polynomial monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedForm {
    pub common: LaurentMonomial,
    pub terms: Vec<(LaurentMonomial, MinorRef)>,
}

impl CombinedForm {
    /// Positive coefficients and no negative exponents inside the bracket.
    pub fn is_subtraction_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.coeff().is_positive() && m.is_polynomial())
    }

    pub fn eval(&self, m: &RationalMatrix) -> Result<Rational> {
        let mut inner = Rational::zero();
        for (t, d) in &self.terms {
            inner += t.eval(m)? * d.eval(m);
        }
        Ok(self.common.eval(m)? * inner)
    }
}

/// `x12*x23/(x22*x32) * (x21*x32*|x32 x33; x42 x43| + ...)`.
impl fmt::Display for CombinedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let inner: Vec<String> = self
            .terms
            .iter()
            .map(|(t, d)| if t.exponents().next().is_none() && t.coeff().is_one() { d.to_string() } else { format!("{t}*{d}") })
            .collect();
        write!(f, "{} * ({})", self.common, inner.join(" + "))
    }
}

impl SflCertificate {
    /// The chain `A = A_0, A_1, …, A_k = B` recovered from the step minors.
    pub fn chain(&self) -> Result<Vec<Asm>> {
        let mut out = vec![self.endpoints.0.clone()];
        for (t, step) in self.steps.iter().enumerate() {
            let rect = step.rect()?;
            let current = out.last().expect("nonempty");
            let mut c = current.corner_sum();
            for p in rect.i..rect.j {
                for q in rect.k..rect.l {
                    c.entries_mut()[(p - 1) * current.n() + (q - 1)] -= 1;
                }
            }
            if !c.is_valid() {
                return Err(Error::VerificationFailure {
                    step: Some(t),
                    detail: format!("{rect} is not a move from the current element"),
                });
            }
            out.push(c.to_asm());
        }
        Ok(out)
    }

    /// The certificate over its common denominator: `L` is the per-variable
    /// minimum exponent across the step prefixes and term `t` is `P_t / L`.
    pub fn combined_form(&self) -> CombinedForm {
        let prefixes: Vec<LaurentMonomial> = self.steps.iter().map(SflStep::combined_prefix).collect();
        let mut lows: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for p in &prefixes {
            for (key, _) in p.exponents() {
                lows.insert(key, 0);
            }
        }
        for (key, low) in lows.iter_mut() {
            *low = prefixes.iter().map(|p| p.exponent(key.0, key.1)).min().unwrap_or(0);
        }
        let common = LaurentMonomial::from_exponents(Rational::one(), lows);
        let terms = prefixes.iter().zip(&self.steps).map(|(p, s)| (p.div(&common), s.minor.clone())).collect();
        CombinedForm { common, terms }
    }

    /// Sum of the steps at `x = m`.
    pub fn eval(&self, m: &RationalMatrix) -> Result<Rational> {
        let mut total = Rational::zero();
        for s in &self.steps {
            total += s.eval(m)?;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

impl fmt::Display for SflCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "x^A - x^B with beta {} -> {}, {} step(s)", self.beta.0, self.beta.1, self.steps.len())?;
        for (t, s) in self.steps.iter().enumerate() {
            writeln!(f, "  step {}: {s}", t + 1)?;
        }
        write!(f, "  combined: {}", self.combined_form())
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub steps: usize,
    pub samples: usize,
    /// Sample points skipped because a step prefix had a zero denominator.
    pub undefined: usize,
}

fn random_positive_matrix(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    RationalMatrix::from_fn(n, |_, _| rat(rng.gen_range(1..=9), rng.gen_range(1..=4)))
}

/// `X_q` with entries `s^{(i-j)^2} x_ij`, i.e. `x_{ij,q}` at `q = s^2`.
fn q_weighted(m: &RationalMatrix, s: &Rational) -> RationalMatrix {
    RationalMatrix::from_fn(m.n(), |i, j| {
        let d = i.abs_diff(j);
        let mut w = Rational::one();
        for _ in 0..d * d {
            w *= s;
        }
        w * m.get(i, j)
    })
}

fn pow(base: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * base)
}

fn fail(step: Option<usize>, detail: String) -> Error {
    Error::VerificationFailure { step, detail }
}

/// Checks a certificate structurally and by exact evaluation.
///
/// * consecutive chain elements are covering edges with β increasing by one,
///   and the chain ends at the second endpoint;
/// * each minor is small and solid, each combined prefix almost positive;
/// * at `samples` random positive rational points each step equals
///   `x^{A_t} - x^{A_{t+1}}` and the sum equals `x^A - x^B`;
/// * with `x_ij ↦ q^{(i-j)^2/2} x_ij` at `q = 4`, each step equals
///   `q^{β(A_t)} x^{A_t} - q^{β(A_{t+1})} x^{A_{t+1}}`.
pub fn verify_certificate(c: &SflCertificate, samples: usize, seed: u64) -> Result<VerificationReport> {
    let (a, b) = &c.endpoints;
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { left: a.n(), right: b.n() });
    }
    if c.beta != (beta(a), beta(b)) {
        return Err(fail(None, format!("recorded beta {:?} but endpoints have ({}, {})", c.beta, beta(a), beta(b))));
    }
    let chain = c.chain()?;
    if chain.last() != Some(b) {
        return Err(fail(None, "chain does not end at the upper endpoint".into()));
    }
    for (t, step) in c.steps.iter().enumerate() {
        let (lo, hi) = (&chain[t], &chain[t + 1]);
        if step.beta != beta(lo) || beta(hi) != beta(lo) + 1 {
            return Err(fail(Some(t), format!("beta {} -> {} is not a covering step", beta(lo), beta(hi))));
        }
        if !step.minor.is_small() || !step.minor.is_solid() {
            return Err(fail(Some(t), format!("minor {} is not small and solid", step.minor)));
        }
        if !step.combined_prefix().is_almost_positive() {
            return Err(fail(Some(t), format!("prefix {} is not almost positive", step.combined_prefix())));
        }
    }

    let n = a.n();
    let monomials: Vec<LaurentMonomial> = chain.iter().map(asm_monomial).collect();
    let betas: Vec<u32> = chain.iter().map(beta).collect();
    let s = rat(2, 1);
    let q = &s * &s;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut undefined = 0;
    for _ in 0..samples {
        let m = random_positive_matrix(n, &mut rng);
        let mq = q_weighted(&m, &s);
        let mut total = Rational::zero();
        for (t, step) in c.steps.iter().enumerate() {
            let value = match step.eval(&m) {
                Ok(v) => v,
                Err(Error::Undefined { .. }) => {
                    undefined += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let expected = monomials[t].eval(&m)? - monomials[t + 1].eval(&m)?;
            if value != expected {
                return Err(fail(Some(t), format!("step value {value} but x^A_t - x^A_t+1 = {expected} at {m}")));
            }
            let q_value = step.eval(&mq)?;
            let q_expected = pow(&q, betas[t]) * monomials[t].eval(&m)? - pow(&q, betas[t + 1]) * monomials[t + 1].eval(&m)?;
            if q_value != q_expected {
                return Err(fail(Some(t), format!("q-weighted step value {q_value}, expected {q_expected} at {m}")));
            }
            total += value;
        }
        let expected = asm_monomial(a).eval(&m)? - asm_monomial(b).eval(&m)?;
        if total != expected {
            return Err(fail(None, format!("certificate sums to {total} but x^A - x^B = {expected} at {m}")));
        }
    }
    Ok(VerificationReport { steps: c.steps.len(), samples, undefined })
}

#[derive(Serialize, Deserialize)]
struct MinorJson {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    beta: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeff: Option<String>,
    prefix: BTreeMap<String, i32>,
    divisor: BTreeMap<String, i32>,
    minor: MinorJson,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    endpoints: [Asm; 2],
    beta: [u32; 2],
    steps: Vec<StepJson>,
}

fn exps_to_json(m: &LaurentMonomial) -> BTreeMap<String, i32> {
    m.exponents().map(|((i, j), e)| (format!("({i},{j})"), e)).collect()
}

fn exps_from_json(map: &BTreeMap<String, i32>, coeff: Rational) -> Result<LaurentMonomial> {
    let mut out = Vec::with_capacity(map.len());
    for (key, &e) in map {
        let parsed = key
            .strip_prefix('(')
            .and_then(|k| k.strip_suffix(')'))
            .and_then(|k| k.split_once(','))
            .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)));
        let (i, j) = parsed.ok_or_else(|| Error::Parse(format!("bad variable key {key:?}")))?;
        out.push(((i, j), e));
    }
    Ok(LaurentMonomial::from_exponents(coeff, out))
}

impl From<SflCertificate> for CertificateJson {
    fn from(c: SflCertificate) -> Self {
        let steps = c
            .steps
            .iter()
            .map(|s| StepJson {
                beta: s.beta,
                coeff: (!s.prefix.coeff().is_one()).then(|| s.prefix.coeff().to_string()),
                prefix: exps_to_json(&s.prefix),
                divisor: exps_to_json(&s.divisor),
                minor: MinorJson { rows: s.minor.rows().to_vec(), cols: s.minor.cols().to_vec() },
            })
            .collect();
        CertificateJson { endpoints: [c.endpoints.0, c.endpoints.1], beta: [c.beta.0, c.beta.1], steps }
    }
}

impl TryFrom<CertificateJson> for SflCertificate {
    type Error = Error;

    fn try_from(c: CertificateJson) -> Result<Self> {
        let steps = c
            .steps
            .into_iter()
            .map(|s| {
                let coeff = match &s.coeff {
                    Some(text) => text.parse::<Rational>().map_err(|_| Error::Parse(format!("bad coefficient {text:?}")))?,
                    None => Rational::one(),
                };
                Ok(SflStep {
                    beta: s.beta,
                    prefix: exps_from_json(&s.prefix, coeff)?,
                    divisor: exps_from_json(&s.divisor, Rational::one())?,
                    minor: MinorRef::new(s.minor.rows, s.minor.cols)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let [a, b] = c.endpoints;
        Ok(SflCertificate { endpoints: (a, b), beta: (c.beta[0], c.beta[1]), steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{validate_asm, Permutation};

    fn m(rows: &[&[i64]]) -> Asm {
        validate_asm(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn worked() -> (Asm, Asm, Asm) {
        let a = m(&[&[0, 1, 0, 0, 0], &[1, -1, 1, 0, 0], &[0, 1, -1, 0, 1], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 0]]);
        let b = m(&[&[0, 1, 0, 0, 0], &[1, -1, 1, 0, 0], &[0, 0, 0, 0, 1], &[0, 1, -1, 1, 0], &[0, 0, 1, 0, 0]]);
        let c = m(&[&[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[1, -1, 0, 0, 1], &[0, 1, -1, 1, 0], &[0, 0, 1, 0, 0]]);
        (a, b, c)
    }

    #[test]
    fn factorization_of_worked_step() {
        let (a, b, _) = worked();
        let f = edge_factorization(&edge_between(&a, &b).unwrap()).unwrap();
        assert_eq!(f.common.to_string(), "x12*x21*x23*x35*x44*x53/x22");
        assert_eq!(f.combined_prefix().to_string(), "x12*x21*x23*x35*x44*x53/(x22*x33*x43)");
        assert_eq!(f.minor.to_string(), "|x32 x33; x42 x43|");
    }

    #[test]
    fn factorization_of_permutation_edge() {
        // x^{213} - x^{312} = x21 |x12 x13; x32 x33|
        let u: Asm = "213".parse::<Permutation>().unwrap().to_asm();
        let v: Asm = "312".parse::<Permutation>().unwrap().to_asm();
        let f = edge_factorization(&edge_between(&u, &v).unwrap()).unwrap();
        assert!(f.combined_prefix().is_polynomial());
        assert_eq!(f.combined_prefix().to_string(), "x21");
        assert_eq!(f.minor.to_string(), "|x12 x13; x32 x33|");
    }

    #[test]
    fn rejects_non_edges() {
        let (a, _, c) = worked();
        let fake = Edge { source: a.clone(), target: c, rect: Rect::new(2, 4, 1, 3).unwrap(), edge_type: 1 };
        assert!(matches!(edge_factorization(&fake), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn worked_example_combined_form() {
        let (a, _, c) = worked();
        let cert = sfl_certificate(&a, &c).unwrap();
        assert_eq!(cert.steps.len(), 2);
        assert_eq!(cert.beta, (6, 8));
        let form = cert.combined_form();
        assert_eq!(
            form.to_string(),
            "x12*x23*x35*x44*x53/(x22*x32*x33*x43) * (x21*x32*|x32 x33; x42 x43| + x33*x42*|x21 x22; x31 x32|)"
        );
        assert!(form.is_subtraction_free());
        let report = verify_certificate(&cert, 10, 1).unwrap();
        assert_eq!(report.steps, 2);
    }

    #[test]
    fn trivial_and_incomparable() {
        let e = Asm::identity(3);
        let cert = sfl_certificate(&e, &e).unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(cert.combined_form().to_string(), "0");
        verify_certificate(&cert, 3, 0).unwrap();
        let u: Asm = "132".parse::<Permutation>().unwrap().to_asm();
        let v: Asm = "213".parse::<Permutation>().unwrap().to_asm();
        assert_eq!(sfl_certificate(&u, &v), Err(Error::Incomparable));
    }

    #[test]
    fn flipped_sign_is_caught() {
        let (a, _, c) = worked();
        let mut cert = sfl_certificate(&a, &c).unwrap();
        let p = cert.steps[1].prefix.clone();
        cert.steps[1].prefix = p.clone().with_coeff(-p.coeff().clone());
        match verify_certificate(&cert, 5, 2) {
            Err(Error::VerificationFailure { step, .. }) => assert_eq!(step, Some(1)),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let (a, _, c) = worked();
        let cert = sfl_certificate(&a, &c).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains(r#""minor":{"rows":[3,4],"cols":[2,3]}"#));
        assert!(json.contains(r#""(2,2)":-1"#));
        assert!(!json.contains("coeff"));
        let back: SflCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
