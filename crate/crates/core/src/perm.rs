//! Unsigned and signed permutations of `{1..n}`.
//!
//! A signed permutation acts on `{±1..±n}` with `π(-i) = -π(i)`; unsigned
//! permutations are the all-positive case of the same type. Group elements are
//! ranked in lexicographic order of their image sequences (with the signed
//! value order `-n < ... < -1 < 1 < ... < n`), which is also the enumeration
//! order and the dense index used by the BFS engine.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Default ceiling for exhaustive enumeration of `S_n`.
pub const UNSIGNED_ENUMERATION_LIMIT: usize = 12;
/// Default ceiling for exhaustive enumeration of the signed group.
pub const SIGNED_ENUMERATION_LIMIT: usize = 9;
/// Default ceiling for the brute-force factorization count.
pub const FACTORIZATION_LIMIT: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    /// Checks that the absolute values of `images` form a bijection of `{1..n}`.
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for (position, &v) in images.iter().enumerate() {
            let position = position + 1;
            if v == 0 {
                return Err(Error::InvalidPermutation { position, reason: "zero image".into() });
            }
            let a = v.unsigned_abs() as usize;
            if a > n {
                return Err(Error::InvalidPermutation {
                    position,
                    reason: format!("|{v}| is outside 1..{n}"),
                });
            }
            if seen[a] {
                return Err(Error::InvalidPermutation {
                    position,
                    reason: format!("duplicate absolute value {a}"),
                });
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { images })
    }

    /// Caller guarantees validity; used on hot enumeration paths.
    pub(crate) fn from_images_unchecked(images: Vec<i32>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        SignedPermutation { images }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { images: (1..=n as i32).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Image of `i` for `1 <= |i| <= n`, honouring `π(-i) = -π(i)`.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.images[i.unsigned_abs() as usize - 1];
        if i < 0 { -v } else { v }
    }

    pub fn is_unsigned(&self) -> bool {
        self.images.iter().all(|&v| v > 0)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    /// `self ∘ other`, applied right to left.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        self.check_size(other)?;
        Ok(SignedPermutation { images: other.images.iter().map(|&v| self.apply(v)).collect() })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v.unsigned_abs() as usize - 1] = v.signum() * (i as i32 + 1);
        }
        SignedPermutation { images }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate(&self, by: &SignedPermutation) -> Result<SignedPermutation> {
        by.compose(self)?.compose(&by.inverse())
    }

    /// Canonical disjoint cycle decomposition, fixed points included.
    pub fn cycle_decomposition(&self) -> Result<CycleDecomposition> {
        if !self.is_unsigned() {
            return Err(Error::SignedInput);
        }
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v - 1] as usize;
            }
            cycles.push(cycle);
        }
        // Starting each walk at the smallest unvisited element already yields
        // the canonical rotation and ordering.
        Ok(CycleDecomposition { cycles })
    }

    /// Number of disjoint cycles of an unsigned permutation.
    pub fn cycle_count(&self) -> Result<usize> {
        Ok(self.cycle_decomposition()?.len())
    }

    /// Position of this permutation in lexicographic enumeration order.
    pub fn rank(&self) -> u64 {
        rank_images(&self.images, !self.is_unsigned())
    }

    /// Rank within the signed group, even when all signs are positive.
    pub fn signed_rank(&self) -> u64 {
        rank_images(&self.images, true)
    }

    fn check_size(&self, other: &SignedPermutation) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.images {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

/// Accepts comma- and/or whitespace-separated signed integers, e.g. `-5 1 2 4 -7 -3 6`.
impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::new(images)
    }
}

/// Cycles rotated to start at their minimum and sorted by that minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Cycle lengths in ascending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

/// `n!` (unsigned) or `2^n n!` (signed), if it fits in a `u64`.
pub fn group_order(n: usize, signed: bool) -> Option<u64> {
    let mut acc: u64 = 1;
    for i in 1..=n as u64 {
        acc = acc.checked_mul(i)?;
        if signed {
            acc = acc.checked_mul(2)?;
        }
    }
    Some(acc)
}

// Number of completions once `taken` positions are fixed.
fn suffix_weight(n: usize, taken: usize, signed: bool) -> u64 {
    group_order(n - taken, signed).expect("group order overflow")
}

// Candidate values for the next position, in ascending signed order.
fn candidate(remaining: &[i32], signed: bool, digit: usize) -> i32 {
    if !signed {
        return remaining[digit];
    }
    let m = remaining.len();
    if digit < m { -remaining[m - 1 - digit] } else { remaining[digit - m] }
}

fn candidate_index(remaining: &[i32], signed: bool, value: i32) -> usize {
    let pos = remaining
        .iter()
        .position(|&r| r == value.abs())
        .expect("value not among remaining");
    match (signed, value < 0) {
        (false, _) => pos,
        (true, true) => remaining.len() - 1 - pos,
        (true, false) => remaining.len() + pos,
    }
}

fn rank_images(images: &[i32], signed: bool) -> u64 {
    let n = images.len();
    let mut remaining: Vec<i32> = (1..=n as i32).collect();
    let mut rank = 0u64;
    for (i, &v) in images.iter().enumerate() {
        let d = candidate_index(&remaining, signed, v);
        rank += d as u64 * suffix_weight(n, i + 1, signed);
        remaining.retain(|&r| r != v.abs());
    }
    rank
}

/// Inverse of [`SignedPermutation::rank`] (with `signed` selecting the group).
pub fn unrank(n: usize, signed: bool, rank: u64) -> SignedPermutation {
    let mut digits = vec![0usize; n];
    let mut r = rank;
    for (i, d) in digits.iter_mut().enumerate() {
        let w = suffix_weight(n, i + 1, signed);
        *d = (r / w) as usize;
        r %= w;
    }
    let mut images = vec![0; n];
    fill_from_digits(&digits, &mut images, 0, signed);
    SignedPermutation::from_images_unchecked(images)
}

fn fill_from_digits(digits: &[usize], images: &mut [i32], from: usize, signed: bool) {
    let n = images.len();
    let mut used = vec![false; n + 1];
    for &v in &images[..from] {
        used[v.unsigned_abs() as usize] = true;
    }
    let mut remaining: Vec<i32> = (1..=n as i32).filter(|&v| !used[v as usize]).collect();
    for i in from..n {
        let v = candidate(&remaining, signed, digits[i]);
        images[i] = v;
        remaining.retain(|&r| r != v.abs());
    }
}

/// A contiguous block of ranks in lexicographic order.
///
/// Ranges over disjoint rank intervals are independent work units.
#[derive(Clone, Debug)]
pub struct PermutationRange {
    n: usize,
    signed: bool,
    ranks: Range<u64>,
}

impl PermutationRange {
    pub fn new(n: usize, signed: bool, ranks: Range<u64>) -> Self {
        let order = group_order(n, signed).expect("group order overflow");
        assert!(ranks.end <= order, "rank range beyond group order");
        PermutationRange { n, signed, ranks }
    }

    pub fn full(n: usize, signed: bool) -> Self {
        Self::new(n, signed, 0..group_order(n, signed).expect("group order overflow"))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn ranks(&self) -> Range<u64> {
        self.ranks.clone()
    }

    pub fn len(&self) -> u64 {
        self.ranks.end - self.ranks.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cuts the range into at most `parts` contiguous, non-empty pieces.
    pub fn split(&self, parts: usize) -> Vec<PermutationRange> {
        let parts = (parts.max(1) as u64).min(self.len().max(1));
        let base = self.len() / parts;
        let extra = self.len() % parts;
        let mut start = self.ranks.start;
        (0..parts)
            .map(|i| {
                let len = base + u64::from(i < extra);
                let r = PermutationRange { n: self.n, signed: self.signed, ranks: start..start + len };
                start += len;
                r
            })
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Calls `visit` on each image sequence without allocating per element.
    pub fn for_each_images(&self, mut visit: impl FnMut(&[i32])) {
        if self.is_empty() {
            return;
        }
        let n = self.n;
        let mut digits = vec![0usize; n];
        let mut r = self.ranks.start;
        for (i, d) in digits.iter_mut().enumerate() {
            let w = suffix_weight(n, i + 1, self.signed);
            *d = (r / w) as usize;
            r %= w;
        }
        let radix = |i: usize| (n - i) * if self.signed { 2 } else { 1 };
        let mut images = vec![0i32; n];
        fill_from_digits(&digits, &mut images, 0, self.signed);
        for step in 0..self.len() {
            visit(&images);
            if step + 1 == self.len() {
                break;
            }
            // Mixed-radix increment; rebuild only the changed suffix.
            let mut p = n;
            while p > 0 {
                p -= 1;
                digits[p] += 1;
                if digits[p] < radix(p) {
                    break;
                }
                digits[p] = 0;
            }
            fill_from_digits(&digits, &mut images, p, self.signed);
        }
    }

    pub fn iter(&self) -> PermutationIter {
        PermutationIter { n: self.n, signed: self.signed, ranks: self.ranks.clone(), state: None }
    }
}

impl IntoIterator for PermutationRange {
    type Item = SignedPermutation;
    type IntoIter = PermutationIter;

    fn into_iter(self) -> PermutationIter {
        self.iter()
    }
}

pub struct PermutationIter {
    n: usize,
    signed: bool,
    ranks: Range<u64>,
    state: Option<(Vec<usize>, Vec<i32>)>,
}

impl Iterator for PermutationIter {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.ranks.is_empty() {
            return None;
        }
        let n = self.n;
        let signed = self.signed;
        match &mut self.state {
            None => {
                let first = unrank(n, signed, self.ranks.start);
                let mut digits = vec![0usize; n];
                let mut remaining: Vec<i32> = (1..=n as i32).collect();
                for (i, &v) in first.images().iter().enumerate() {
                    digits[i] = candidate_index(&remaining, signed, v);
                    remaining.retain(|&r| r != v.abs());
                }
                self.state = Some((digits, first.images().to_vec()));
            }
            Some((digits, images)) => {
                let mut p = n;
                while p > 0 {
                    p -= 1;
                    digits[p] += 1;
                    if digits[p] < (n - p) * if signed { 2 } else { 1 } {
                        break;
                    }
                    digits[p] = 0;
                }
                fill_from_digits(digits, images, p, signed);
            }
        }
        self.ranks.start += 1;
        let images = self.state.as_ref().map(|(_, im)| im.clone()).expect("state initialised");
        Some(SignedPermutation::from_images_unchecked(images))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = (self.ranks.end - self.ranks.start) as usize;
        (len, Some(len))
    }
}

impl ExactSizeIterator for PermutationIter {}

fn guard(what: &'static str, n: usize, limit: usize, force: bool) -> Result<()> {
    if n > limit && !force {
        return Err(Error::GuardExceeded { what, n, limit });
    }
    Ok(())
}

/// All of `S_n` in lexicographic order.
pub fn enumerate_unsigned(n: usize, force: bool) -> Result<PermutationRange> {
    guard("unsigned enumeration", n, UNSIGNED_ENUMERATION_LIMIT, force)?;
    Ok(PermutationRange::full(n, false))
}

/// All `2^n n!` signed permutations in lexicographic order.
pub fn enumerate_signed(n: usize, force: bool) -> Result<PermutationRange> {
    guard("signed enumeration", n, SIGNED_ENUMERATION_LIMIT, force)?;
    Ok(PermutationRange::full(n, true))
}

/// Counts `ω ∈ S_{n+1}` with `k` cycles such that `β ∘ ω⁻¹` is an
/// `(n+1)`-cycle, where `β = (1 2 ... n+1)`. Brute force over `S_{n+1}`.
pub fn count_factorizations(n: usize, k: usize, force: bool) -> Result<BigInt> {
    guard("factorization count", n, FACTORIZATION_LIMIT, force)?;
    let m = n + 1;
    let beta = SignedPermutation::from_images_unchecked((1..=m as i32).map(|i| i % m as i32 + 1).collect());
    let mut count = BigInt::zero();
    for omega in PermutationRange::full(m, false) {
        if omega.cycle_count()? != k {
            continue;
        }
        let rho = beta.compose(&omega.inverse())?;
        if rho.cycle_count()? == 1 {
            count += 1;
        }
    }
    Ok(count)
}
