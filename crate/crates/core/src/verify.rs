//! Identity suites that cross-check the counting and probability routes.
//!
//! Each check runs one identity over a stated range and reports the first
//! counterexample it meets. The `ruin verify` subcommand prints these.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;

use crate::combinatorics::{ballot_count, ballot_via_recurrence, catalan, catalan_via_convolution};
use crate::error::{Error, Result};
use crate::paths::{
    enumerate_first_passage_capped, first_return_compose, first_return_decompose,
    is_first_passage, partition_by_first_step_capped, shift_bijection_k2,
    shift_bijection_k2_inverse, LatticePath, DEFAULT_ENUMERATION_CAP,
};
use crate::probability::{
    absorption_exact, absorption_series, absorption_via_gf, generating_function, tail_start,
    verify_three_term, Probability, SeriesOptions,
};

/// Outcome of one identity over one range.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub range: String,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {}  [{}; {} cases]", self.name, self.range, self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, "  first counterexample: {c}")?;
        }
        Ok(())
    }
}

struct Tally {
    name: &'static str,
    range: String,
    cases: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str, range: String) -> Self {
        Tally { name, range, cases: 0, counterexample: None }
    }

    /// Records one case; returns false once a counterexample is known.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
        self.counterexample.is_none()
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name,
            range: self.range,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Recurrences,
    Bijections,
    Oracle,
    Probability,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "recurrences" => Suite::Recurrences,
            "bijections" => Suite::Bijections,
            "oracle" => Suite::Oracle,
            "probability" => Suite::Probability,
            _ => return Err(Error::Config(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Bounds {
    /// Largest start position for the recurrence tables.
    pub k_max: u32,
    /// Largest right-step count for the recurrence tables.
    pub n_max: u32,
    /// Largest path length `2n + k` enumerated by the oracle and bijection checks.
    pub max_len: u64,
    pub cap: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { k_max: 50, n_max: 200, max_len: 22, cap: DEFAULT_ENUMERATION_CAP }
    }
}

impl Bounds {
    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 {
            return Err(Error::Config("k bound must be at least 1".into()));
        }
        if self.max_len > self.cap {
            return Err(Error::TooLarge { length: self.max_len, cap: self.cap });
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, bounds: &Bounds) -> Result<Vec<IdentityCheck>> {
    bounds.validate()?;
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Recurrences {
        out.push(check_catalan_convolution(bounds.n_max));
        out.push(check_shift_identity(bounds.n_max));
        out.push(check_three_step_recurrence(bounds.k_max, bounds.n_max));
        out.push(check_recurrence_route(bounds.k_max, bounds.n_max));
        out.push(check_division_exact(bounds.k_max, bounds.n_max));
    }
    if all || suite == Suite::Oracle {
        out.push(check_oracle(bounds.k_max, bounds.max_len, bounds.cap)?);
    }
    if all || suite == Suite::Bijections {
        out.push(check_first_return(bounds.max_len, bounds.cap)?);
        out.push(check_shift_bijection(bounds.max_len, bounds.cap)?);
        out.push(check_partition(bounds.k_max, bounds.max_len, bounds.cap)?);
    }
    if all || suite == Suite::Probability {
        out.push(check_branches(64));
        out.push(check_power_law(64));
        out.push(check_gf_quadratic());
        out.push(check_gf_route());
        out.push(check_series_certificates(10, 1e-12));
        out.push(check_three_term(32));
    }
    Ok(out)
}

/// Rational grid of step probabilities used by the probability checks.
pub fn rational_grid() -> Vec<Probability> {
    [(0, 1), (1, 10), (1, 4), (1, 3), (9, 20), (1, 2), (11, 20), (3, 5), (2, 3), (3, 4), (9, 10), (1, 1)]
        .into_iter()
        .map(|(a, b)| Probability::ratio(a, b).expect("grid point in [0, 1]"))
        .collect()
}

pub fn check_catalan_convolution(n_max: u32) -> IdentityCheck {
    let mut t = Tally::new("catalan convolution C(n) = sum C(a-1) C(n-a)", format!("n = 1..={n_max}"));
    for n in 1..=n_max {
        let conv = catalan_via_convolution(n).expect("n >= 1");
        if !t.check(conv == catalan(n), || format!("n={n}")) {
            break;
        }
    }
    t.finish()
}

pub fn check_shift_identity(n_max: u32) -> IdentityCheck {
    let mut t = Tally::new("C_2(n) = C(n+1)", format!("n = 0..={n_max}"));
    for n in 0..=n_max {
        let lhs = ballot_count(2, n).expect("k = 2");
        if !t.check(lhs == catalan(n + 1), || format!("n={n}")) {
            break;
        }
    }
    t.finish()
}

pub fn check_three_step_recurrence(k_max: u32, n_max: u32) -> IdentityCheck {
    let mut t = Tally::new(
        "C_k(n) = C_(k-1)(n+1) - C_(k-2)(n+1)",
        format!("k = 3..={k_max}, n = 0..={n_max}"),
    );
    // rows[k][n] = C_k(n) for n = 0..=n_max + 1
    let rows: Vec<Vec<BigUint>> = (0..=k_max)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            (0..=n_max + 1).map(|n| ballot_count(k, n).expect("k >= 1").into_inner()).collect()
        })
        .collect();
    'outer: for k in 3..=k_max as usize {
        for n in 0..=n_max as usize {
            let (hi, lo) = (&rows[k - 1][n + 1], &rows[k - 2][n + 1]);
            let ok = hi >= lo && rows[k][n] == hi - lo;
            if !t.check(ok, || format!("k={k} n={n}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}

pub fn check_recurrence_route(k_max: u32, n_max: u32) -> IdentityCheck {
    let mut t = Tally::new(
        "recurrence-only C_k(n) equals closed form",
        format!("k = 1..={k_max}, n = 0..={n_max}"),
    );
    'outer: for k in 1..=k_max {
        for n in 0..=n_max {
            let a = ballot_via_recurrence(k, n).expect("k >= 1");
            let b = ballot_count(k, n).expect("k >= 1");
            if !t.check(a == b, || format!("k={k} n={n}: {a} != {b}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}

pub fn check_division_exact(k_max: u32, n_max: u32) -> IdentityCheck {
    let mut t = Tally::new(
        "C_k(n) (2n+k) = k binom(2n+k, n)",
        format!("k = 1..={k_max}, n = 0..={n_max}"),
    );
    'outer: for k in 1..=k_max {
        for n in 0..=n_max {
            let lhs = ballot_count(k, n).expect("k >= 1").into_inner() * (2 * n + k);
            let rhs = binomial(BigUint::from(2 * n + k), BigUint::from(n)) * k;
            if !t.check(lhs == rhs, || format!("k={k} n={n}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}

pub fn check_oracle(k_max: u32, max_len: u64, cap: u64) -> Result<IdentityCheck> {
    let mut t = Tally::new(
        "|enumerated first-passage paths| = C_k(n)",
        format!("k = 1..={k_max}, 2n+k <= {max_len}"),
    );
    'outer: for k in 1..=k_max.min(max_len as u32) {
        let mut n = 0;
        while 2 * n as u64 + k as u64 <= max_len {
            let paths = enumerate_first_passage_capped(k, n, cap)?;
            let valid = paths.iter().all(|p| is_first_passage(p.start(), p.steps()));
            let expected = ballot_count(k, n)?;
            let ok = valid && expected == paths.len() as u64;
            if !t.check(ok, || format!("k={k} n={n}: enumerated {} vs {expected}", paths.len())) {
                break 'outer;
            }
            n += 1;
        }
    }
    Ok(t.finish())
}

fn canonical_set(paths: &[LatticePath]) -> BTreeSet<String> {
    paths.iter().map(LatticePath::canonical).collect()
}

/// First-return decomposition round-trips, and composing over all
/// `(alpha, left, right)` reproduces each start-1 path exactly once.
pub fn check_first_return(max_len: u64, cap: u64) -> Result<IdentityCheck> {
    let n_max = ((max_len.saturating_sub(1)) / 2) as u32;
    let mut t = Tally::new("first-return decomposition is a bijection", format!("n = 1..={n_max}"));
    for n in 1..=n_max {
        let paths = enumerate_first_passage_capped(1, n, cap)?;
        let mut roundtrip = true;
        for p in &paths {
            let (alpha, left, right) = first_return_decompose(p)?;
            let back = first_return_compose(alpha, &left, &right)?;
            if back != *p || !(1..=n).contains(&alpha) || left.right_steps() + right.right_steps() != n - 1 {
                roundtrip = false;
            }
        }
        if !t.check(roundtrip, || format!("n={n}: decompose/compose round trip")) {
            break;
        }
        let mut composed = Vec::new();
        for alpha in 1..=n {
            for left in enumerate_first_passage_capped(1, alpha - 1, cap)? {
                for right in enumerate_first_passage_capped(1, n - alpha, cap)? {
                    composed.push(first_return_compose(alpha, &left, &right)?.canonical());
                }
            }
        }
        let distinct: BTreeSet<String> = composed.iter().cloned().collect();
        let ok = composed.len() == paths.len() && distinct == canonical_set(&paths);
        if !t.check(ok, || format!("n={n}: composed {} paths vs {}", composed.len(), paths.len())) {
            break;
        }
    }
    Ok(t.finish())
}

pub fn check_shift_bijection(max_len: u64, cap: u64) -> Result<IdentityCheck> {
    // source paths have 2(n+1) + 1 steps
    let n_max = (max_len.saturating_sub(3) / 2) as u32;
    let mut t = Tally::new("strip-first-step maps C(n+1) paths onto C_2(n) paths", format!("n = 0..={n_max}"));
    for n in 0..=n_max {
        let source = enumerate_first_passage_capped(1, n + 1, cap)?;
        let target = enumerate_first_passage_capped(2, n, cap)?;
        let mut image = Vec::with_capacity(source.len());
        let mut inverse_ok = true;
        for p in &source {
            let q = shift_bijection_k2(p)?;
            inverse_ok &= shift_bijection_k2_inverse(&q)? == *p;
            image.push(q);
        }
        let image_set = canonical_set(&image);
        let ok = inverse_ok && image_set.len() == source.len() && image_set == canonical_set(&target);
        if !t.check(ok, || format!("n={n}")) {
            break;
        }
    }
    Ok(t.finish())
}

pub fn check_partition(k_max: u32, max_len: u64, cap: u64) -> Result<IdentityCheck> {
    let k_hi = k_max.clamp(3, 5);
    let mut t = Tally::new(
        "first-step partition: C_(k-1)(n+1) = C_k(n) + C_(k-2)(n+1)",
        format!("k = 3..={k_hi}, 2(n+1)+(k-1) <= {max_len}"),
    );
    'outer: for k in 3..=k_hi {
        let mut n = 0u32;
        while 2 * (n as u64 + 1) + (k as u64 - 1) <= max_len {
            let (to_k, to_km2) = partition_by_first_step_capped(k, n, cap)?;
            let source = enumerate_first_passage_capped(k - 1, n + 1, cap)?;
            let a = canonical_set(&to_k);
            let b = canonical_set(&to_km2);
            let ok = a.len() == to_k.len()
                && b.len() == to_km2.len()
                && a == canonical_set(&enumerate_first_passage_capped(k, n, cap)?)
                && b == canonical_set(&enumerate_first_passage_capped(k - 2, n + 1, cap)?)
                && to_k.len() + to_km2.len() == source.len();
            if !t.check(ok, || format!("k={k} n={n}")) {
                break 'outer;
            }
            n += 1;
        }
    }
    Ok(t.finish())
}

pub fn check_branches(k_max: u32) -> IdentityCheck {
    let mut t = Tally::new(
        "P(x=k) = 1 for p <= 1/2, ((1-p)/p)^k otherwise",
        format!("k = 1..={k_max}, rational grid"),
    );
    let half = BigRational::new(1.into(), 2.into());
    'outer: for p in rational_grid() {
        let r = p.as_exact().expect("rational grid").clone();
        for k in 1..=k_max {
            let expected = if r <= half {
                BigRational::one()
            } else {
                let ratio = (BigRational::one() - &r) / &r;
                (0..k).fold(BigRational::one(), |acc, _| acc * &ratio)
            };
            let got = absorption_exact(k, &p).expect("k >= 1");
            if !t.check(got == Probability::Exact(expected), || format!("k={k} p={p}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}

pub fn check_power_law(k_max: u32) -> IdentityCheck {
    let mut t = Tally::new("P(x=k) = P(x=1)^k", format!("k = 1..={k_max}, rational grid"));
    'outer: for p in rational_grid() {
        let one = absorption_exact(1, &p).expect("k = 1");
        let base = one.as_exact().expect("exact").clone();
        for k in 1..=k_max {
            let pow = (0..k).fold(BigRational::one(), |acc, _| acc * &base);
            let got = absorption_exact(k, &p).expect("k >= 1");
            if !t.check(got == Probability::Exact(pow), || format!("k={k} p={p}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}

/// z grid for the generating-function quadratic.
pub fn z_grid() -> Vec<f64> {
    let mut zs: Vec<f64> = (0..=100).map(|i| 0.25 * i as f64 / 100.0).collect();
    zs.extend([0.01, 0.1, 0.2, 0.25]);
    zs
}

pub fn check_gf_quadratic() -> IdentityCheck {
    let mut t = Tally::new("|F(z)^2 - F(z) + z| <= 1e-14", "z in [0, 1/4], 105 points".into());
    for z in z_grid() {
        let f = generating_function(z).expect("z in domain");
        let residual = (f * f - f + z).abs();
        if !t.check(residual <= 1e-14, || format!("z={z}: residual {residual:e}")) {
            break;
        }
    }
    t.finish()
}

pub fn check_gf_route() -> IdentityCheck {
    let mut t = Tally::new(
        "|F(p - p^2)/p - P(x=1)| <= 1e-12",
        "p in {0.1, 0.3, 0.5, 0.6, 0.9}".into(),
    );
    for p in [0.1, 0.3, 0.5, 0.6, 0.9] {
        let prob = Probability::Float(p);
        let gf = absorption_via_gf(&prob).expect("p > 0");
        let exact = absorption_exact(1, &prob).expect("k = 1").to_f64();
        if !t.check((gf - exact).abs() <= 1e-12, || format!("p={p}: {gf} vs {exact}")) {
            break;
        }
    }
    t.finish()
}

pub fn check_series_certificates(k_max: u32, target_tail: f64) -> IdentityCheck {
    let mut t = Tally::new(
        "series brackets closed form with certified tail",
        format!("k = 1..={k_max}, rational grid with |p - 1/2| >= 0.05, tail {target_tail:e}"),
    );
    let half = BigRational::new(1.into(), 2.into());
    let band = BigRational::new(1.into(), 20.into());
    let opts = SeriesOptions::default();
    'outer: for p in rational_grid() {
        let r = p.as_exact().expect("rational grid").clone();
        let dist = if r > half { &r - &half } else { &half - &r };
        if dist < band {
            continue;
        }
        for k in 1..=k_max {
            let ev = absorption_series(k, &p, target_tail, &opts).expect("valid input");
            let truth = absorption_exact(k, &p).expect("k >= 1");
            let truth = truth.as_exact().expect("exact");
            let sum = ev.partial_sum.as_exact().expect("exact input stays exact");
            let ok = ev.converged
                && ev.tail_bound <= target_tail
                && (ev.terms_used as u64) > tail_start(k)
                && sum <= truth
                && BigRational::from_float(ev.tail_bound).is_some_and(|tb| *truth <= sum + tb);
            if !t.check(ok, || format!("k={k} p={p}: {ev:?}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}

pub fn check_three_term(k_max: u32) -> IdentityCheck {
    let mut t = Tally::new(
        "P(k+2) = P(k+1)/p - (1-p)/p P(k)",
        format!("k = 1..={k_max}, rational grid without 0 and 1"),
    );
    'outer: for p in rational_grid() {
        let r = p.as_exact().expect("rational grid");
        if r.numer() == &0.into() || r.numer() == r.denom() {
            continue;
        }
        for k in 1..=k_max {
            let ok = verify_three_term(k, &p).expect("0 < p < 1");
            if !t.check(ok, || format!("k={k} p={p}")) {
                break 'outer;
            }
        }
    }
    t.finish()
}
