//! Lattice paths of the absorbed walk and the bijections between them.
//!
//! A right step of the particle is a horizontal lattice bond and a left step
//! a vertical one. A path from start `k` with `n` right steps therefore runs
//! from the origin to `(n, n + k)`. Only the step sequence and the start are
//! stored; positions and lattice coordinates are derived on demand.
//!
//! Paths serialize canonically as `<start>:<steps>`, e.g. `2:RLLL`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default bound on `2n + k` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 26;

/// One unit step of the particle.
///
/// `Left` orders before `Right` so that the derived ordering of paths matches
/// the lexicographic order of their canonical strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Left,
    Right,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Right => 1,
            Step::Left => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Left => 'L',
        }
    }
}

/// A first-passage trajectory: starts at `start > 0`, stays positive on
/// every proper prefix, and ends at 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    start: u32,
    steps: Vec<Step>,
}

impl LatticePath {
    /// Validates the first-passage invariants.
    pub fn new(start: u32, steps: Vec<Step>) -> Result<Self> {
        if start == 0 {
            return Err(Error::ZeroStart);
        }
        if !is_first_passage(start, &steps) {
            return Err(Error::NotFirstPassage(render(start, &steps)));
        }
        Ok(LatticePath { start, steps })
    }

    // Callers guarantee the invariants.
    fn from_parts(start: u32, steps: Vec<Step>) -> Self {
        debug_assert!(is_first_passage(start, &steps), "{}", render(start, &steps));
        LatticePath { start, steps }
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `n`, the number of right steps.
    pub fn right_steps(&self) -> u32 {
        self.steps.iter().filter(|s| **s == Step::Right).count() as u32
    }

    /// `n + k`, the number of left steps.
    pub fn left_steps(&self) -> u32 {
        self.steps.len() as u32 - self.right_steps()
    }

    /// Particle positions `start, ..., 0`, one more than the step count.
    pub fn positions(&self) -> Vec<u32> {
        let mut pos = self.start as i64;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start);
        for s in &self.steps {
            pos += s.delta();
            out.push(pos as u32);
        }
        out
    }

    /// Lattice vertices visited from `(0, 0)` to `(n, n + k)`: right steps
    /// advance the first coordinate, left steps the second.
    pub fn lattice_points(&self) -> Vec<(u32, u32)> {
        let (mut x, mut y) = (0, 0);
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push((x, y));
        for s in &self.steps {
            match s {
                Step::Right => x += 1,
                Step::Left => y += 1,
            }
            out.push((x, y));
        }
        out
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

fn render(start: u32, steps: &[Step]) -> String {
    let mut s = format!("{start}:");
    s.extend(steps.iter().map(|st| st.as_char()));
    s
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.start, &self.steps))
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = || Error::PathSyntax(s.to_string());
        let (start, body) = s.split_once(':').ok_or_else(syntax)?;
        let start: u32 = start.trim().parse().map_err(|_| syntax())?;
        let steps = body
            .chars()
            .map(|c| match c {
                'R' => Ok(Step::Right),
                'L' => Ok(Step::Left),
                _ => Err(syntax()),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new(start, steps)
    }
}

/// True iff `(start, steps)` is a first-passage path: every proper prefix
/// ends at a positive position and the full sequence ends at 0.
pub fn is_first_passage(start: u32, steps: &[Step]) -> bool {
    if start == 0 || steps.is_empty() {
        return false;
    }
    let mut pos = start as i64;
    let last = steps.len() - 1;
    for (i, s) in steps.iter().enumerate() {
        pos += s.delta();
        if i < last && pos <= 0 {
            return false;
        }
    }
    pos == 0
}

fn check_cap(length: u64, cap: u64) -> Result<()> {
    if length > cap {
        return Err(Error::TooLarge { length, cap });
    }
    Ok(())
}

/// All first-passage paths from `k` with `n` right steps, in canonical order,
/// subject to [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_first_passage(k: u32, n: u32) -> Result<Vec<LatticePath>> {
    enumerate_first_passage_capped(k, n, DEFAULT_ENUMERATION_CAP)
}

/// Exhaustive enumeration by backtracking. A left step is only taken when it
/// keeps the particle positive, or when it is the final step; this prunes
/// every prefix that would be absorbed early, so the work is proportional to
/// the output rather than to `binom(2n + k, n)`.
pub fn enumerate_first_passage_capped(k: u32, n: u32, cap: u64) -> Result<Vec<LatticePath>> {
    if k == 0 {
        return Err(Error::ZeroStart);
    }
    let length = 2 * n as u64 + k as u64;
    check_cap(length, cap)?;

    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(length as usize);
    extend(n, n + k, &mut prefix, &mut |steps| {
        out.push(LatticePath::from_parts(k, steps.to_vec()))
    });
    Ok(out)
}

fn extend(
    rights: u32,
    lefts: u32,
    prefix: &mut Vec<Step>,
    emit: &mut impl FnMut(&[Step]),
) {
    // position is implied by the remaining counts: pos + rights - lefts = 0
    let pos = lefts - rights;
    if rights == 0 && lefts == 0 {
        emit(prefix);
        return;
    }
    if lefts > 0 && (pos > 1 || (pos == 1 && lefts == 1 && rights == 0)) {
        prefix.push(Step::Left);
        extend(rights, lefts - 1, prefix, emit);
        prefix.pop();
    }
    if rights > 0 {
        prefix.push(Step::Right);
        extend(rights - 1, lefts, prefix, emit);
        prefix.pop();
    }
}

/// Splits a start-1 path with `n >= 1` right steps at its first return to
/// level 1.
///
/// The leading step is necessarily right. The excursion from level 2 back to
/// level 1, shifted down one level, is `left` (with `alpha - 1` right
/// steps); the remainder from level 1 to 0 is `right` (with `n - alpha`).
pub fn first_return_decompose(path: &LatticePath) -> Result<(u32, LatticePath, LatticePath)> {
    if path.start != 1 {
        return Err(Error::WrongStart { expected: 1, found: path.start });
    }
    if path.right_steps() == 0 {
        return Err(Error::TooFewRightSteps { min: 1 });
    }
    debug_assert_eq!(path.steps[0], Step::Right);
    let mut pos = 2i64;
    let mut split = 1;
    for (i, s) in path.steps.iter().enumerate().skip(1) {
        pos += s.delta();
        if pos == 1 {
            split = i + 1;
            break;
        }
    }
    let left = LatticePath::from_parts(1, path.steps[1..split].to_vec());
    let right = LatticePath::from_parts(1, path.steps[split..].to_vec());
    let alpha = left.right_steps() + 1;
    Ok((alpha, left, right))
}

/// Inverse of [`first_return_decompose`]: `R`, then `left` lifted one
/// level, then `right`.
pub fn first_return_compose(
    alpha: u32,
    left: &LatticePath,
    right: &LatticePath,
) -> Result<LatticePath> {
    for p in [left, right] {
        if p.start != 1 {
            return Err(Error::WrongStart { expected: 1, found: p.start });
        }
    }
    if alpha != left.right_steps() + 1 {
        return Err(Error::Config(format!(
            "alpha = {alpha} does not match a left part with {} right steps",
            left.right_steps()
        )));
    }
    let mut steps = Vec::with_capacity(1 + left.len() + right.len());
    steps.push(Step::Right);
    steps.extend_from_slice(&left.steps);
    steps.extend_from_slice(&right.steps);
    Ok(LatticePath::from_parts(1, steps))
}

/// Maps a start-1 path with `n + 1` right steps to a start-2 path with `n`
/// right steps by dropping the leading right step.
pub fn shift_bijection_k2(path: &LatticePath) -> Result<LatticePath> {
    if path.start != 1 {
        return Err(Error::WrongStart { expected: 1, found: path.start });
    }
    if path.right_steps() == 0 {
        return Err(Error::TooFewRightSteps { min: 1 });
    }
    Ok(LatticePath::from_parts(2, path.steps[1..].to_vec()))
}

/// Inverse of [`shift_bijection_k2`].
pub fn shift_bijection_k2_inverse(path: &LatticePath) -> Result<LatticePath> {
    if path.start != 2 {
        return Err(Error::WrongStart { expected: 2, found: path.start });
    }
    let mut steps = Vec::with_capacity(path.len() + 1);
    steps.push(Step::Right);
    steps.extend_from_slice(&path.steps);
    Ok(LatticePath::from_parts(1, steps))
}

/// Splits the paths from `k - 1` with `n + 1` right steps by their first
/// step and strips it.
///
/// Paths that open with a right step become the paths from `k` with `n`
/// right steps; those that open with a left step become the paths from
/// `k - 2` with `n + 1` right steps. Counting both sides gives
/// `C_{k-1}(n+1) = C_k(n) + C_{k-2}(n+1)`.
pub fn partition_by_first_step(k: u32, n: u32) -> Result<(Vec<LatticePath>, Vec<LatticePath>)> {
    partition_by_first_step_capped(k, n, DEFAULT_ENUMERATION_CAP)
}

pub fn partition_by_first_step_capped(
    k: u32,
    n: u32,
    cap: u64,
) -> Result<(Vec<LatticePath>, Vec<LatticePath>)> {
    if k < 3 {
        return Err(Error::PartitionStart(k));
    }
    let source = enumerate_first_passage_capped(k - 1, n + 1, cap)?;
    let mut to_k = Vec::new();
    let mut to_k_minus_2 = Vec::new();
    for path in source {
        let rest = path.steps[1..].to_vec();
        match path.steps[0] {
            Step::Right => to_k.push(LatticePath::from_parts(k, rest)),
            Step::Left => to_k_minus_2.push(LatticePath::from_parts(k - 2, rest)),
        }
    }
    Ok((to_k, to_k_minus_2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Step::{Left as L, Right as R};

    fn strings(paths: &[LatticePath]) -> Vec<String> {
        paths.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn first_passage_examples() {
        assert!(is_first_passage(1, &[L]));
        assert!(!is_first_passage(2, &[L, L, R, L]));
        assert!(is_first_passage(2, &[R, L, L, L]));
        assert!(!is_first_passage(1, &[]));
        assert!(!is_first_passage(0, &[L]));
        assert!(!is_first_passage(2, &[L]));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(strings(&enumerate_first_passage(1, 0).unwrap()), ["1:L"]);
        assert_eq!(
            strings(&enumerate_first_passage(2, 1).unwrap()),
            ["2:LRLL", "2:RLLL"]
        );
        assert_eq!(enumerate_first_passage(1, 3).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let paths = enumerate_first_passage(3, 4).unwrap();
        assert!(paths.windows(2).all(|w| w[0] < w[1]));
        let s = strings(&paths);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        for p in &paths {
            assert!(is_first_passage(p.start(), p.steps()));
            assert_eq!(p.right_steps(), 4);
            assert_eq!(p.left_steps(), 7);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_first_passage(2, 13),
            Err(Error::TooLarge { length: 28, cap: 26 })
        );
        assert!(enumerate_first_passage_capped(2, 3, 7).is_err());
        assert!(enumerate_first_passage_capped(2, 3, 8).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let p: LatticePath = "2:RLLL".parse().unwrap();
        assert_eq!(p.start(), 2);
        assert_eq!(p.to_string(), "2:RLLL");
        assert_eq!(p.positions(), [2, 3, 2, 1, 0]);
        assert_eq!(p.lattice_points().last(), Some(&(1, 3)));
        assert!(matches!("2:LLRL".parse::<LatticePath>(), Err(Error::NotFirstPassage(_))));
        assert!(matches!("2-RL".parse::<LatticePath>(), Err(Error::PathSyntax(_))));
        assert!(matches!("1:X".parse::<LatticePath>(), Err(Error::PathSyntax(_))));
        assert_eq!("0:L".parse::<LatticePath>(), Err(Error::ZeroStart));
    }

    #[test]
    fn first_return_smallest_case() {
        let p: LatticePath = "1:RLL".parse().unwrap();
        let (alpha, left, right) = first_return_decompose(&p).unwrap();
        assert_eq!(alpha, 1);
        assert_eq!(left.to_string(), "1:L");
        assert_eq!(right.to_string(), "1:L");
        assert_eq!(first_return_compose(alpha, &left, &right).unwrap(), p);
    }

    #[test]
    fn first_return_rejects() {
        let p: LatticePath = "1:L".parse().unwrap();
        assert!(first_return_decompose(&p).is_err());
        let q: LatticePath = "2:LL".parse().unwrap();
        assert!(first_return_decompose(&q).is_err());
        let one: LatticePath = "1:L".parse().unwrap();
        assert!(first_return_compose(2, &one, &one).is_err());
    }

    #[test]
    fn shift_examples() {
        let p: LatticePath = "1:RLL".parse().unwrap();
        let img = shift_bijection_k2(&p).unwrap();
        assert_eq!(img.to_string(), "2:LL");
        assert_eq!(shift_bijection_k2_inverse(&img).unwrap(), p);
        assert!(shift_bijection_k2(&"1:L".parse().unwrap()).is_err());
    }

    #[test]
    fn partition_examples() {
        let (a, b) = partition_by_first_step(3, 0).unwrap();
        assert_eq!((a.len(), b.len()), (1, 1));
        let (a, b) = partition_by_first_step(4, 1).unwrap();
        assert_eq!((a.len(), b.len()), (4, 5));
        let (a, b) = partition_by_first_step(3, 2).unwrap();
        assert_eq!(a.len() + b.len(), 14);
        assert_eq!(partition_by_first_step(2, 0), Err(Error::PartitionStart(2)));
    }
}
