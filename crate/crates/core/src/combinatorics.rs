//! Exact Catalan numbers `C(n)` and ballot counts `C_k(n)`.
//!
//! `C_k(n)` is the number of first-passage paths from position `k` to the
//! origin that use `n` right steps (and therefore `n + k` left steps):
//!
//! ```text
//! C_k(n) = k / (2n + k) * binom(2n + k, n)
//! ```
//!
//! with `C_1(n) = C(n)` the Catalan numbers. Everything here is exact; the
//! factorial forms are never evaluated literally.

use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact, nonnegative path count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallotCount(BigUint);

impl BallotCount {
    pub fn new(value: BigUint) -> Self {
        BallotCount(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    /// The count as a `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for BallotCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<u64> for BallotCount {
    fn from(v: u64) -> Self {
        BallotCount(BigUint::from(v))
    }
}

impl From<BigUint> for BallotCount {
    fn from(v: BigUint) -> Self {
        BallotCount(v)
    }
}

impl PartialEq<u64> for BallotCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

// Grow-only memo of C(0), C(1), ...; readers share the lock, a miss takes the
// write lock once and extends the table far enough.
static CATALAN_TABLE: LazyLock<RwLock<Vec<BigUint>>> =
    LazyLock::new(|| RwLock::new(vec![BigUint::one()]));

/// The `n`th Catalan number `(2n)! / (n! (n+1)!)`.
///
/// Values are cached; uses `C(m+1) = C(m) * 2(2m+1) / (m+2)`, where the
/// division is exact.
pub fn catalan(n: u32) -> BallotCount {
    let n = n as usize;
    {
        let table = CATALAN_TABLE.read().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = table.get(n) {
            return BallotCount(v.clone());
        }
    }
    let mut table = CATALAN_TABLE.write().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = (table.len() - 1) as u64;
        let next = table[m as usize].clone() * (2 * (2 * m + 1)) / (m + 2);
        table.push(next);
    }
    BallotCount(table[n].clone())
}

/// `C_k(n) = k / (2n + k) * binom(2n + k, n)`.
///
/// `binom(2n + k, n)` is built as a running product `prod (n + k + i) / i`,
/// each partial product being itself a binomial coefficient, so every
/// division is exact. Rejects `k = 0`.
pub fn ballot_count(k: u32, n: u32) -> Result<BallotCount> {
    if k == 0 {
        return Err(Error::ZeroStart);
    }
    let (k, n) = (k as u64, n as u64);
    let mut binom = BigUint::one();
    for i in 1..=n {
        binom *= n + k + i;
        binom /= i;
    }
    Ok(BallotCount(binom * k / (2 * n + k)))
}

/// `C(n)` rebuilt from first-return convolution:
/// `sum_{a=1..n} C(a-1) C(n-a)`.
///
/// The sum is empty at `n = 0`, which is rejected rather than mapped to 1.
pub fn catalan_via_convolution(n: u32) -> Result<BallotCount> {
    if n == 0 {
        return Err(Error::EmptyConvolution);
    }
    let mut total = BigUint::zero();
    for alpha in 1..=n {
        total += catalan(alpha - 1).0 * catalan(n - alpha).0;
    }
    Ok(BallotCount(total))
}

/// `C_k(n)` computed only from the recurrences
///
/// ```text
/// C_1(n) = C(n),  C_2(n) = C(n + 1),  C_k(n) = C_{k-1}(n + 1) - C_{k-2}(n + 1)  (k >= 3)
/// ```
///
/// Row `j` is needed at `n .. n + k - j`, so the table is triangular and
/// costs `O(k^2)` subtractions.
pub fn ballot_via_recurrence(k: u32, n: u32) -> Result<BallotCount> {
    if k == 0 {
        return Err(Error::ZeroStart);
    }
    let width = k as usize;
    // row j (1-based) holds C_j(n + i) for i in 0..=(k - j)
    let mut older: Vec<BigUint> = (0..width as u32).map(|i| catalan(n + i).0).collect();
    if k == 1 {
        return Ok(BallotCount(older.swap_remove(0)));
    }
    let mut newer: Vec<BigUint> = (0..width as u32 - 1).map(|i| catalan(n + i + 1).0).collect();
    for _ in 3..=k {
        let next: Vec<BigUint> = (0..newer.len() - 1)
            .map(|i| &newer[i + 1] - &older[i + 1])
            .collect();
        older = newer;
        newer = next;
    }
    Ok(BallotCount(newer.swap_remove(0)))
}
