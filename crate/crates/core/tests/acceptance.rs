//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line;
//! run with `cargo test --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use ruin::cli::{run, EXIT_INVALID, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_VERIFY_FAILED};
use ruin::paths::{
    enumerate_first_passage_capped, first_return_compose, first_return_decompose,
    partition_by_first_step_capped, shift_bijection_k2, shift_bijection_k2_inverse, LatticePath,
};
use ruin::probability::{
    absorption_exact, absorption_series, absorption_via_gf, generating_function, tail_start,
    verify_three_term, Probability, SeriesOptions,
};
use ruin::simulator::{estimate_absorption, estimate_absorption_with_workers, WalkConfig};
use ruin::verify::{rational_grid, z_grid};
use ruin::{ballot_count, catalan, catalan_via_convolution};

const CAP: u64 = 26;

fn report(id: u32, what: &str, checks: &[(&str, bool)], elapsed: Duration, budget: Option<Duration>) {
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let ok = checks.iter().all(|(_, ok)| *ok) && in_time;
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[{status}] AC-{id:02} {what} ({:.2?})", elapsed);
    for (name, ok) in checks {
        if !ok {
            println!("         failed: {name}");
        }
    }
    if !in_time {
        println!("         failed: runtime budget {:?}", budget.unwrap());
    }
    assert!(ok, "AC-{id:02} failed");
}

fn canonical(paths: &[LatticePath]) -> BTreeSet<String> {
    paths.iter().map(|p| p.to_string()).collect()
}

fn exact(p: &Probability) -> &BigRational {
    p.as_exact().expect("exact value")
}

#[test]
fn ac01_oracle_equivalence() {
    let t = Instant::now();
    let mut ok = true;
    let mut cases = 0;
    for k in 1..=6u32 {
        let mut n = 0u32;
        while 2 * n + k <= 22 {
            let paths = enumerate_first_passage_capped(k, n, CAP).unwrap();
            ok &= ballot_count(k, n).unwrap() == paths.len() as u64;
            cases += 1;
            n += 1;
        }
    }
    report(
        1,
        &format!("|enumerate(k, n)| == C_k(n) for k in 1..=6, 2n+k <= 22 ({cases} cases)"),
        &[("counts agree", ok)],
        t.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn ac02_catalan_convolution() {
    let t = Instant::now();
    let ok = (1..=200).all(|n| catalan_via_convolution(n).unwrap() == catalan(n));
    report(
        2,
        "catalan_via_convolution(n) == catalan(n), n = 1..=200",
        &[("convolution", ok)],
        t.elapsed(),
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn ac03_shift_identity_and_bijection() {
    let t = Instant::now();
    let identity = (0..=500).all(|n| ballot_count(2, n).unwrap() == catalan(n + 1));
    let mut bijection = true;
    for n in 0..=8 {
        let source = enumerate_first_passage_capped(1, n + 1, CAP).unwrap();
        let target = enumerate_first_passage_capped(2, n, CAP).unwrap();
        let image: Vec<LatticePath> = source.iter().map(|p| shift_bijection_k2(p).unwrap()).collect();
        let image_set = canonical(&image);
        bijection &= image_set.len() == source.len();
        bijection &= image_set == canonical(&target);
        bijection &= image
            .iter()
            .zip(&source)
            .all(|(q, p)| shift_bijection_k2_inverse(q).unwrap() == *p);
    }
    report(
        3,
        "C_2(n) == C(n+1) for n = 0..=500; shift map is a set bijection for n <= 8",
        &[("identity", identity), ("bijection", bijection)],
        t.elapsed(),
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn ac04_three_step_recurrence_and_partition() {
    let t = Instant::now();
    let mut recurrence = true;
    for k in 3..=50 {
        for n in 0..=200 {
            let lhs = ballot_count(k, n).unwrap().into_inner();
            let a = ballot_count(k - 1, n + 1).unwrap().into_inner();
            let b = ballot_count(k - 2, n + 1).unwrap().into_inner();
            recurrence &= a >= b && lhs == a - b;
        }
    }
    let mut partition = true;
    let mut cases = 0;
    for k in 3..=5u32 {
        let mut n = 0u32;
        while 2 * (n + 1) + (k - 1) <= 20 {
            let (to_k, to_km2) = partition_by_first_step_capped(k, n, CAP).unwrap();
            let source = enumerate_first_passage_capped(k - 1, n + 1, CAP).unwrap();
            let a = canonical(&to_k);
            let b = canonical(&to_km2);
            partition &= a.len() == to_k.len() && b.len() == to_km2.len();
            partition &= a == canonical(&enumerate_first_passage_capped(k, n, CAP).unwrap());
            partition &= b == canonical(&enumerate_first_passage_capped(k - 2, n + 1, CAP).unwrap());
            partition &= to_k.len() + to_km2.len() == source.len();
            cases += 1;
            n += 1;
        }
    }
    report(
        4,
        &format!("C_k(n) = C_(k-1)(n+1) - C_(k-2)(n+1), k = 3..=50, n = 0..=200; partition bijection ({cases} cases)"),
        &[("recurrence", recurrence), ("partition", partition)],
        t.elapsed(),
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn ac05_first_return_bijection() {
    let t = Instant::now();
    let mut round_trip = true;
    let mut reproduces = true;
    let mut fig_n4 = false;
    for n in 1..=8u32 {
        let paths = enumerate_first_passage_capped(1, n, CAP).unwrap();
        for p in &paths {
            let (alpha, left, right) = first_return_decompose(p).unwrap();
            round_trip &= (1..=n).contains(&alpha);
            round_trip &= first_return_compose(alpha, &left, &right).unwrap() == *p;
        }
        let mut composed = Vec::new();
        for alpha in 1..=n {
            for left in enumerate_first_passage_capped(1, alpha - 1, CAP).unwrap() {
                for right in enumerate_first_passage_capped(1, n - alpha, CAP).unwrap() {
                    composed.push(first_return_compose(alpha, &left, &right).unwrap());
                }
            }
        }
        let set = canonical(&composed);
        reproduces &= composed.len() == paths.len() && set == canonical(&paths);
        if n == 4 {
            fig_n4 = composed.len() == 14 && set.len() == 14;
        }
    }
    report(
        5,
        "first-return decompose/compose round-trips and reproduces enumerate(1, n), n <= 8",
        &[("round trip", round_trip), ("image equals enumeration", reproduces), ("n = 4 gives 14 paths", fig_n4)],
        t.elapsed(),
        None,
    );
}

#[test]
fn ac06_closed_form_and_power_law() {
    let t = Instant::now();
    let half = BigRational::new(1.into(), 2.into());
    let mut branches = true;
    let mut power = true;
    for p in rational_grid() {
        let r = exact(&p).clone();
        let one = absorption_exact(1, &p).unwrap();
        for k in 1..=64u32 {
            let got = absorption_exact(k, &p).unwrap();
            let expected = if r <= half {
                BigRational::one()
            } else {
                let ratio = (BigRational::one() - &r) / &r;
                (0..k).fold(BigRational::one(), |acc, _| acc * &ratio)
            };
            branches &= *exact(&got) == expected;
            let pow = (0..k).fold(BigRational::one(), |acc, _| acc * exact(&one));
            power &= *exact(&got) == pow;
        }
    }
    report(
        6,
        "closed form: 1 for p <= 1/2, ((1-p)/p)^k otherwise; P(k) = P(1)^k exactly, k <= 64",
        &[("branches", branches), ("power law", power)],
        t.elapsed(),
        None,
    );
}

#[test]
fn ac07_route_agreement() {
    let t = Instant::now();
    let gf_ok = [0.1, 0.3, 0.5, 0.6, 0.9].iter().all(|&p| {
        let prob = Probability::Float(p);
        let gf = absorption_via_gf(&prob).unwrap();
        let closed = absorption_exact(1, &prob).unwrap().to_f64();
        (gf - closed).abs() <= 1e-12
    });
    let quad_ok = z_grid().into_iter().all(|z| {
        let f = generating_function(z).unwrap();
        (f * f - f + z).abs() <= 1e-14
    });
    report(
        7,
        "|F(p-p^2)/p - P(x=1)| <= 1e-12; |F(z)^2 - F(z) + z| <= 1e-14",
        &[("gf route", gf_ok), ("quadratic", quad_ok)],
        t.elapsed(),
        None,
    );
}

#[test]
fn ac08_series_certification() {
    let t = Instant::now();
    let half = BigRational::new(1.into(), 2.into());
    let band = BigRational::new(1.into(), 20.into());
    let opts = SeriesOptions::default();
    let (mut converged, mut bracket, mut bound, mut start) = (true, true, true, true);
    for p in rational_grid() {
        let r = exact(&p).clone();
        let dist = if r > half { &r - &half } else { &half - &r };
        if dist < band {
            continue;
        }
        for k in 1..=10u32 {
            let ev = absorption_series(k, &p, 1e-12, &opts).unwrap();
            let truth = absorption_exact(k, &p).unwrap();
            let sum = exact(&ev.partial_sum);
            converged &= ev.converged;
            bound &= ev.tail_bound <= 1e-12;
            let tb = BigRational::from_float(ev.tail_bound).unwrap();
            bracket &= sum <= exact(&truth) && *exact(&truth) <= sum + tb;
            // certified index N = terms_used - 1
            start &= (ev.terms_used as u64 - 1) >= tail_start(k);
        }
    }
    // n0(k) = ceil((k^2 - k - 2) / 2), floored at 0
    let n0_formula = (1..=10u64).all(|k| {
        let v = (k * k) as i64 - k as i64 - 2;
        tail_start(k as u32) == (v.max(0) as u64).div_ceil(2)
    });
    report(
        8,
        "series with tail 1e-12 converges and brackets closed form, k <= 10, |p - 1/2| >= 0.05",
        &[
            ("converged", converged),
            ("bracket", bracket),
            ("tail_bound <= 1e-12", bound),
            ("certification starts at n0(k) or later", start && n0_formula),
        ],
        t.elapsed(),
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn ac09_three_term_recurrence() {
    let t = Instant::now();
    let mut ok = true;
    for p in rational_grid() {
        let r = exact(&p);
        if *r == BigRational::from_integer(0.into()) || r.is_one() {
            continue;
        }
        for k in 1..=32 {
            ok &= verify_three_term(k, &p).unwrap();
        }
    }
    report(9, "P(k+2) = P(k+1)/p - (1-p)/p P(k) exactly, k <= 32", &[("recurrence", ok)], t.elapsed(), None);
}

#[test]
fn ac10_monte_carlo_agreement() {
    let t = Instant::now();
    const SEED: u64 = 20_240_611;
    let p = Probability::Float(0.6);
    let cfg1 = WalkConfig::new(1, p.clone(), 1_000_000, SEED).with_max_steps(100_000);
    let cfg2 = WalkConfig::new(2, p, 1_000_000, SEED).with_max_steps(100_000);
    let e1 = estimate_absorption(&cfg1).unwrap();
    let e2 = estimate_absorption(&cfg2).unwrap();
    println!("         k=1: {e1:?}");
    println!("         k=2: {e2:?}");
    let again = estimate_absorption(&cfg1).unwrap();
    let two_workers = estimate_absorption_with_workers(&cfg1, 2).unwrap();
    report(
        10,
        "Monte Carlo, 10^6 trials, horizon 10^5: k=1 within 0.002 of 2/3, k=2 within 0.002 of 4/9",
        &[
            ("k=1", (e1.point - 2.0 / 3.0).abs() <= 0.002),
            ("k=2", (e2.point - 4.0 / 9.0).abs() <= 0.002),
            ("bit-reproducible", again == e1),
            ("worker-count independent", two_workers == e1),
        ],
        t.elapsed(),
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn ac11_cli_contract() {
    let t = Instant::now();
    let cli = |args: &[&str]| run(std::iter::once("ruin").chain(args.iter().copied()));

    let count = cli(&["count", "--k", "1..1", "--n", "0..4", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(count.stdout.as_bytes());
    let counts: Vec<String> = rdr.records().map(|r| r.unwrap()[2].to_string()).collect();
    let count_ok = count.code == EXIT_OK && counts == ["1", "1", "2", "5", "14"];

    let prob = cli(&["prob", "--k", "3", "--p", "2/3", "--method", "exact"]);
    let headline = prob.stdout.lines().next().unwrap_or_default().to_string();
    println!("         prob --k 3 --p 2/3 --method exact -> {headline:?}");
    let prob_ok = prob.code == EXIT_OK && headline == "1/27";

    let exit_ok = cli(&["prob", "--k", "1", "--p", "x"]).code == EXIT_INVALID
        && cli(&["count", "--k", "2..1", "--n", "0"]).code == EXIT_INVALID
        && cli(&["prob", "--k", "2", "--p", "1/2", "--method", "series", "--max-terms", "100"]).code
            == EXIT_NOT_CONVERGED
        && cli(&["verify", "--suite", "oracle", "--len", "12"]).code == EXIT_OK
        && cli(&["verify", "--len", "99"]).code == EXIT_INVALID
        && EXIT_VERIFY_FAILED == 1;

    report(
        11,
        "CLI: count emits 1,1,2,5,14; exact rational query emits 1/27; exit codes",
        &[("count", count_ok), ("prob (k=3, p=2/3) == \"1/27\"", prob_ok), ("exit codes", exit_ok)],
        t.elapsed(),
        None,
    );
}
