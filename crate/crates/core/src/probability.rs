//! Absorption probabilities of the walk started at `x = k`.
//!
//! Three independent routes are provided:
//!
//! - [`absorption_exact`]: `P(x=k) = P(x=1)^k` with `P(x=1) = min(1, (1-p)/p)`.
//! - [`absorption_series`]: the path-count series
//!   `sum_n C_k(n) p^n (1-p)^(n+k)`, truncated with a certified geometric
//!   tail bound.
//! - [`absorption_via_gf`]: `F(p - p^2) / p` where `F(z) = sum C(a-1) z^a`
//!   is the root of `F^2 - F + z = 0` that vanishes at `z = 0`.
//!
//! Rational inputs (`Probability::Exact`) are carried through in exact
//! arithmetic wherever the route allows it.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A probability, either an exact rational or a binary float.
#[derive(Debug, Clone, PartialEq)]
pub enum Probability {
    Exact(BigRational),
    Float(f64),
}

/// The right-step probability `p` of the walk.
pub type StepProbability = Probability;

impl Probability {
    /// Exact `num / den`, checked to lie in `[0, 1]`.
    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ProbabilitySyntax(format!("{num}/{den}")));
        }
        Self::exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn exact(value: BigRational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::ProbabilityRange(value.to_string()));
        }
        Ok(Probability::Exact(value))
    }

    pub fn float(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::ProbabilityRange(value.to_string()));
        }
        Ok(Probability::Float(value))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Probability::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Probability::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Probability::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Probability::Exact(r) => Some(r),
            Probability::Float(_) => None,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Probability::Exact(r) => r.is_zero(),
            Probability::Float(x) => *x == 0.0,
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Probability::Exact(r) => r.is_one(),
            Probability::Float(x) => *x == 1.0,
        }
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probability::Exact(r) => write!(f, "{r}"),
            Probability::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Accepts `num/den` (exact) or a decimal literal (float).
impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let syntax = || Error::ProbabilitySyntax(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| syntax())?;
            let den: BigInt = den.trim().parse().map_err(|_| syntax())?;
            if den.is_zero() {
                return Err(syntax());
            }
            return Probability::exact(BigRational::new(num, den));
        }
        let x: f64 = s.parse().map_err(|_| syntax())?;
        if !x.is_finite() {
            return Err(syntax());
        }
        Probability::float(x)
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `P(x = k)`: 1 when `p <= 1/2`, otherwise `((1 - p) / p)^k`.
pub fn absorption_exact(k: u32, p: &StepProbability) -> Result<Probability> {
    if k == 0 {
        return Err(Error::ZeroStart);
    }
    Ok(match p {
        Probability::Exact(p) => {
            if *p <= half() {
                Probability::Exact(BigRational::one())
            } else {
                let ratio = (BigRational::one() - p) / p;
                Probability::Exact(num_traits::pow::Pow::pow(ratio, k))
            }
        }
        Probability::Float(p) => {
            if *p <= 0.5 {
                Probability::Float(1.0)
            } else {
                let ratio = (1.0 - p) / p;
                Probability::Float(match i32::try_from(k) {
                    Ok(k) => ratio.powi(k),
                    Err(_) => ratio.powf(k as f64),
                })
            }
        }
    })
}

/// `F(z) = (1 - sqrt(1 - 4z)) / 2` on `[0, 1/4]`.
///
/// Evaluated as `2z / (1 + sqrt(1 - 4z))`, which avoids cancellation for
/// small `z`.
pub fn generating_function(z: f64) -> Result<f64> {
    if !(0.0..=0.25).contains(&z) {
        return Err(Error::Domain(z.to_string(), "the generating function"));
    }
    Ok(2.0 * z / (1.0 + (1.0 - 4.0 * z).sqrt()))
}

/// `P(x = 1) = F(p - p^2) / p`, in floating point.
///
/// The vanishing root picks up `|1 - 2p|` from the square root, so both
/// sides of `p = 1/2` come out right without a branch.
pub fn absorption_via_gf(p: &StepProbability) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::Domain(p.to_string(), "absorption_via_gf (p = 0)"));
    }
    let p = p.to_f64();
    // p - p^2 can land a hair above 1/4 near p = 1/2
    let z = (p * (1.0 - p)).min(0.25);
    Ok(generating_function(z)? / p)
}

/// Cooperative cancellation flag checked between series terms.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone)]
pub struct SeriesOptions {
    /// Half-width of the band around `p = 1/2` where no tail is certified.
    pub critical_band: f64,
    /// Term budget; reaching it without certification yields `converged = false`.
    pub max_terms: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { critical_band: 0.005, max_terms: 100_000, cancel: None }
    }
}

/// A truncated evaluation of the absorption series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEvaluation {
    /// Sum of the first `terms_used` terms; always a lower bound.
    pub partial_sum: Probability,
    pub terms_used: usize,
    /// Upper bound on the omitted tail, rounded up; `+inf` when none exists.
    pub tail_bound: f64,
    pub converged: bool,
}

/// Index from which the geometric tail bound is certified:
/// `max(0, (k^2 - k - 2) / 2)`.
///
/// The term ratio is `t_{n+1} / t_n = p(1-p)(2n+k)(2n+k+1) / ((n+1)(n+k+1))`
/// and `4(n+1)(n+k+1) - (2n+k)(2n+k+1) = 6n + 3k + 4 - k^2`, so the ratio
/// stays at or below `r = 4p(1-p)` once `6n >= k^2 - 3k - 4`. The index
/// returned here is never smaller than that threshold.
pub fn tail_start(k: u32) -> u64 {
    let k = k as u64;
    (k * k).saturating_sub(k + 2) / 2
}

/// Sums `t_n = C_k(n) p^n (1-p)^(n+k)` for `n = 0..=N`.
///
/// `N` is the first index `>= tail_start(k)` at which the geometric bound
/// `t_N r / (1 - r)`, `r = 4p(1-p)`, is at most `target_tail`. Inside the
/// critical band around `p = 1/2`, or when the term budget runs out, the
/// result has `converged = false`.
pub fn absorption_series(
    k: u32,
    p: &StepProbability,
    target_tail: f64,
    opts: &SeriesOptions,
) -> Result<SeriesEvaluation> {
    if k == 0 {
        return Err(Error::ZeroStart);
    }
    if target_tail.is_nan() || target_tail <= 0.0 {
        return Err(Error::Domain(target_tail.to_string(), "target_tail (must be > 0)"));
    }
    if opts.max_terms == 0 {
        return Err(Error::Config("max_terms must be at least 1".into()));
    }
    match p {
        Probability::Exact(p) => series_exact(k, p, target_tail, opts),
        Probability::Float(p) => Ok(series_float(k, *p, target_tail, opts)?),
    }
}

fn check_cancel(opts: &SeriesOptions, terms: usize) -> Result<()> {
    match &opts.cancel {
        Some(t) if t.is_cancelled() => Err(Error::Cancelled { terms }),
        _ => Ok(()),
    }
}

// With p = a/b and c = b - a, term n is T_n / b^(2n+k) where
// T_n = C_k(n) (ac)^n c^k is an integer. The partial sum is kept as a single
// numerator over b^(2N+k), so no gcd work happens until the end.
fn series_exact(
    k: u32,
    p: &BigRational,
    target_tail: f64,
    opts: &SeriesOptions,
) -> Result<SeriesEvaluation> {
    let a = p.numer().to_biguint().expect("p >= 0");
    let b = p.denom().to_biguint().expect("denominator > 0");
    let c = &b - &a;
    let ac = &a * &c;
    let b2 = &b * &b;
    let four_ac = &ac * 4u32;
    // r = 4ac / b^2 < 1 unless p = 1/2
    let geometric = four_ac < b2;
    let distance = (p - half()).abs();
    let in_band = distance < BigRational::from_float(opts.critical_band).unwrap_or_default();
    let slack = if geometric { &b2 - &four_ac } else { BigUint::zero() };
    let tau = BigRational::from_float(target_tail).expect("finite tail");
    let tau_num = tau.numer().to_biguint().expect("tail > 0");
    let tau_den = tau.denom().to_biguint().expect("denominator > 0");

    let n0 = tail_start(k);
    let k64 = k as u64;
    let mut term = num_traits::pow::Pow::pow(&c, k); // T_0
    let mut denom = num_traits::pow::Pow::pow(&b, k); // b^(2N+k)
    let mut numer = term.clone();
    let mut n: u64 = 0;

    let bound_holds = |term: &BigUint, denom: &BigUint| {
        // T_N * 4ac / (b^(2N+k) (b^2 - 4ac)) <= tau
        term * &four_ac * &tau_den <= &tau_num * denom * &slack
    };

    loop {
        let terms = n as usize + 1;
        if !in_band && geometric && n >= n0 && bound_holds(&term, &denom) {
            let bound = ratio_to_f64_up(&(&term * &four_ac), &(&denom * &slack));
            return Ok(SeriesEvaluation {
                partial_sum: Probability::Exact(ratio(numer, denom)),
                terms_used: terms,
                tail_bound: bound,
                converged: true,
            });
        }
        if terms >= opts.max_terms {
            let tail_bound = if !in_band && geometric && n >= n0 {
                ratio_to_f64_up(&(&term * &four_ac), &(&denom * &slack))
            } else {
                f64::INFINITY
            };
            return Ok(SeriesEvaluation {
                partial_sum: Probability::Exact(ratio(numer, denom)),
                terms_used: terms,
                tail_bound,
                converged: false,
            });
        }
        check_cancel(opts, terms)?;

        // T_{n+1} = T_n ac (2n+k)(2n+k+1) / ((n+1)(n+k+1)), exact
        let grow = BigUint::from((2 * n + k64) * (2 * n + k64 + 1));
        let shrink = BigUint::from((n + 1) * (n + k64 + 1));
        term = term * &ac * grow / shrink;
        numer = numer * &b2 + &term;
        denom *= &b2;
        n += 1;
    }
}

fn ratio(numer: BigUint, denom: BigUint) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// An `f64` no smaller than `numer / denom`.
fn ratio_to_f64_up(numer: &BigUint, denom: &BigUint) -> f64 {
    let exact = ratio(numer.clone(), denom.clone());
    let mut x = exact.to_f64().unwrap_or(f64::INFINITY);
    while x.is_finite() && BigRational::from_float(x).is_some_and(|v| v < exact) {
        x = x.next_up();
    }
    x
}

fn series_float(
    k: u32,
    p: f64,
    target_tail: f64,
    opts: &SeriesOptions,
) -> Result<SeriesEvaluation> {
    let q = 1.0 - p;
    let r = 4.0 * p * q;
    let geometric = r < 1.0;
    let in_band = (p - 0.5).abs() < opts.critical_band;
    let n0 = tail_start(k);
    let k64 = k as u64;

    let mut term = q.powf(k as f64);
    let mut sum = term;
    let mut n: u64 = 0;
    loop {
        let terms = n as usize + 1;
        let eligible = !in_band && geometric && n >= n0;
        let bound = if eligible { term * r / (1.0 - r) } else { f64::INFINITY };
        if eligible && bound <= target_tail {
            return Ok(SeriesEvaluation {
                partial_sum: Probability::Float(sum),
                terms_used: terms,
                tail_bound: bound,
                converged: true,
            });
        }
        if terms >= opts.max_terms {
            return Ok(SeriesEvaluation {
                partial_sum: Probability::Float(sum),
                terms_used: terms,
                tail_bound: bound,
                converged: false,
            });
        }
        check_cancel(opts, terms)?;

        let (nf, kf) = (n as f64, k64 as f64);
        term *= p * q * (2.0 * nf + kf) * (2.0 * nf + kf + 1.0) / ((nf + 1.0) * (nf + kf + 1.0));
        sum += term;
        n += 1;
    }
}

/// One row of a convergence trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub n: u64,
    pub term: f64,
    pub partial_sum: f64,
    /// Geometric tail bound after this term, when one is valid.
    pub tail_bound: Option<f64>,
}

/// Per-term trace of the absorption series for `n = 0..=max_n`, in
/// floating point.
pub fn series_trace(k: u32, p: &StepProbability, max_n: u64) -> Result<Vec<TraceRow>> {
    if k == 0 {
        return Err(Error::ZeroStart);
    }
    let p = p.to_f64();
    let q = 1.0 - p;
    let r = 4.0 * p * q;
    let n0 = tail_start(k);
    let kf = k as f64;

    let mut rows = Vec::with_capacity(max_n as usize + 1);
    let mut term = q.powf(kf);
    let mut sum = 0.0;
    for n in 0..=max_n {
        if n > 0 {
            let nf = (n - 1) as f64;
            term *= p * q * (2.0 * nf + kf) * (2.0 * nf + kf + 1.0) / ((nf + 1.0) * (nf + kf + 1.0));
        }
        sum += term;
        let tail_bound = (r < 1.0 && n >= n0).then(|| term * r / (1.0 - r));
        rows.push(TraceRow { n, term, partial_sum: sum, tail_bound });
    }
    Ok(rows)
}

/// Checks `P(k+2) = P(k+1) / p - (1-p)/p * P(k)` on [`absorption_exact`]
/// values: exactly for rational `p`, to `1e-12` for floats.
pub fn verify_three_term(k: u32, p: &StepProbability) -> Result<bool> {
    if k == 0 {
        return Err(Error::ZeroStart);
    }
    if p.is_zero() || p.is_one() {
        return Err(Error::Domain(p.to_string(), "verify_three_term (needs 0 < p < 1)"));
    }
    let values = [
        absorption_exact(k, p)?,
        absorption_exact(k + 1, p)?,
        absorption_exact(k + 2, p)?,
    ];
    Ok(match (p, values) {
        (Probability::Exact(p), [Probability::Exact(a), Probability::Exact(b), Probability::Exact(c)]) => {
            let q = BigRational::one() - p;
            c == b / p - q / p * a
        }
        (_, [a, b, c]) => {
            let p = p.to_f64();
            let rhs = b.to_f64() / p - (1.0 - p) / p * a.to_f64();
            (c.to_f64() - rhs).abs() <= 1e-12
        }
    })
}
