//! Exhaustive censuses: exact distribution tables obtained by walking a whole
//! permutation group (or matching family) and tallying a statistic.
//!
//! Work is cut into a fixed number of rank ranges regardless of the thread
//! count, and partial tallies are summed in range order, so the result never
//! depends on `jobs`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bpgraph::{enumerate_matchings_branch, union_cycle_count, PerfectMatching, ProfileScratch};
use crate::error::{Error, Result};
use crate::hultman::MomentPair;
use crate::perm::{group_order, PermutationRange};

pub const UNSIGNED_CENSUS_LIMIT: usize = 10;
pub const SIGNED_CENSUS_LIMIT: usize = 8;
pub const MATCHING_CENSUS_LIMIT: usize = 6;

const WORK_UNITS: usize = 256;

/// Exact histogram `k -> count`; absent keys mean zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistributionTable {
    n: usize,
    statistic: String,
    counts: BTreeMap<i64, BigInt>,
}

impl DistributionTable {
    pub fn new(n: usize, statistic: impl Into<String>) -> Self {
        DistributionTable { n, statistic: statistic.into(), counts: BTreeMap::new() }
    }

    /// Builds a table from `(k, count)` pairs, summing repeated keys and
    /// dropping zeros.
    pub fn from_counts<C: Into<BigInt>>(
        n: usize,
        statistic: impl Into<String>,
        counts: impl IntoIterator<Item = (i64, C)>,
    ) -> Self {
        let mut t = Self::new(n, statistic);
        for (k, c) in counts {
            t.add(k, c.into());
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn statistic(&self) -> &str {
        &self.statistic
    }

    pub fn counts(&self) -> &BTreeMap<i64, BigInt> {
        &self.counts
    }

    pub fn get(&self, k: i64) -> BigInt {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, k: i64, count: BigInt) {
        if count.is_zero() {
            return;
        }
        let slot = self.counts.entry(k).or_default();
        *slot += count;
        if slot.is_zero() {
            self.counts.remove(&k);
        }
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn min_key(&self) -> Option<i64> {
        self.counts.keys().next().copied()
    }

    pub fn max_key(&self) -> Option<i64> {
        self.counts.keys().next_back().copied()
    }

    /// Per-key addition; both tables must describe the same statistic at the
    /// same `n`.
    pub fn merge(&mut self, other: &DistributionTable) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        if self.statistic != other.statistic {
            return Err(Error::OutOfDomain(format!(
                "cannot merge `{}` into `{}`",
                other.statistic, self.statistic
            )));
        }
        for (&k, c) in &other.counts {
            self.add(k, c.clone());
        }
        Ok(())
    }

    /// The table with every key replaced by `f(k)`.
    pub fn remap(&self, statistic: impl Into<String>, mut f: impl FnMut(i64) -> i64) -> Self {
        Self::from_counts(self.n, statistic, self.counts.iter().map(|(&k, c)| (f(k), c.clone())))
    }
}

/// Statistics a permutation census can tally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// `c(BG(π))`
    Cycles,
    /// `c_odd(BG(π))`
    OddCycles,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Cycles => "cycles",
            Statistic::OddCycles => "odd",
        }
    }

    fn evaluate(self, lengths: &[usize]) -> usize {
        match self {
            Statistic::Cycles => lengths.len(),
            Statistic::OddCycles => lengths.iter().filter(|&&l| l % 2 == 1).count(),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycles" => Ok(Statistic::Cycles),
            "odd" | "odd_cycles" => Ok(Statistic::OddCycles),
            other => Err(Error::UnknownMetric(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    /// Worker threads; 0 means one per available core.
    pub jobs: usize,
    /// Run past the size guards.
    pub force: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { jobs: 1, force: false }
    }
}

impl CensusOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        CensusOptions { jobs, force: false }
    }
}

pub(crate) fn run_in_pool<R: Send>(jobs: usize, work: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("failed to start worker threads");
    pool.install(work)
}

fn check_guard(what: &'static str, n: usize, limit: usize, force: bool) -> Result<()> {
    if n > limit && !force {
        return Err(Error::GuardExceeded { what, n, limit });
    }
    Ok(())
}

fn permutation_census(n: usize, signed: bool, statistic: Statistic, opts: CensusOptions) -> Result<DistributionTable> {
    if group_order(n, signed).is_none() {
        return Err(Error::OutOfDomain(format!("group order overflows at n = {n}")));
    }
    let units = PermutationRange::full(n, signed).split(WORK_UNITS);
    let partials: Vec<Vec<u64>> = run_in_pool(opts.jobs, || {
        units
            .par_iter()
            .map(|range| {
                let mut counts = vec![0u64; n + 2];
                let mut scratch = ProfileScratch::new();
                let mut lengths = Vec::with_capacity(n + 1);
                range.for_each_images(|images| {
                    scratch.cycle_lengths(images, &mut lengths);
                    counts[statistic.evaluate(&lengths)] += 1;
                });
                counts
            })
            .collect()
    });
    let mut totals = vec![0u64; n + 2];
    for part in &partials {
        for (t, c) in totals.iter_mut().zip(part) {
            *t += c;
        }
    }
    let label = if signed { format!("signed_{}", statistic.name()) } else { statistic.name().to_string() };
    Ok(DistributionTable::from_counts(
        n,
        label,
        totals.into_iter().enumerate().map(|(k, c)| (k as i64, c)),
    ))
}

/// Counts of `c(BG(π))` over `S_n`.
pub fn hultman_census(n: usize, opts: CensusOptions) -> Result<DistributionTable> {
    check_guard("unsigned census", n, UNSIGNED_CENSUS_LIMIT, opts.force)?;
    permutation_census(n, false, Statistic::Cycles, opts)
}

/// Counts of `c(BG(π))` over the signed permutations of size `n`.
pub fn signed_hultman_census(n: usize, opts: CensusOptions) -> Result<DistributionTable> {
    check_guard("signed census", n, SIGNED_CENSUS_LIMIT, opts.force)?;
    permutation_census(n, true, Statistic::Cycles, opts)
}

/// Counts of `c_odd(BG(π))` over `S_n`. There is no closed form to compare
/// against; this census is the only implementation.
pub fn odd_hultman_census(n: usize, opts: CensusOptions) -> Result<DistributionTable> {
    check_guard("odd-cycle census", n, UNSIGNED_CENSUS_LIMIT, opts.force)?;
    permutation_census(n, false, Statistic::OddCycles, opts)
}

/// Joint counts of `(c(δ_G ∪ τ), c(τ ∪ δ̄_G))` as `τ` ranges over every
/// perfect matching on `2n + 2` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCensus {
    n: usize,
    counts: BTreeMap<(usize, usize), BigInt>,
}

impl MatchingCensus {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.counts
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.counts.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Distribution of `i` over matchings with `c(τ ∪ δ̄_G) = j`. At `j = 1`
    /// these are exactly the breakpoint graphs, so the slice is the signed
    /// Hultman row.
    pub fn slice(&self, j: usize) -> DistributionTable {
        DistributionTable::from_counts(
            self.n,
            format!("matching_slice_{j}"),
            self.counts.iter().filter(|((_, jj), _)| *jj == j).map(|(&(i, _), c)| (i as i64, c.clone())),
        )
    }
}

pub fn matching_census(n: usize, opts: CensusOptions) -> Result<MatchingCensus> {
    check_guard("matching census", n, MATCHING_CENSUS_LIMIT, opts.force)?;
    let m = n + 1;
    let grey = PerfectMatching::grey(m);
    let shifted = PerfectMatching::shifted_grey(m);
    // one work unit per partner of vertex 0
    let partials: Vec<BTreeMap<(usize, usize), u64>> = run_in_pool(opts.jobs, || {
        (1..2 * m)
            .into_par_iter()
            .map(|w| {
                let mut local = BTreeMap::new();
                let branch = enumerate_matchings_branch(m, w, true).expect("branch in range");
                for tau in branch {
                    let key = (union_cycle_count(&grey, &tau), union_cycle_count(&tau, &shifted));
                    *local.entry(key).or_insert(0u64) += 1;
                }
                local
            })
            .collect()
    });
    let mut counts: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for part in partials {
        for (key, c) in part {
            *counts.entry(key).or_default() += c;
        }
    }
    Ok(MatchingCensus { n, counts })
}

/// Exact mean `Σ k·count/total` and variance `Σ k²·count/total − mean²`.
pub fn moments_from_table(table: &DistributionTable, total: &BigInt) -> Result<MomentPair> {
    let actual = table.total();
    if &actual != total || total.is_zero() {
        return Err(Error::TotalMismatch { expected: total.to_string(), actual: actual.to_string() });
    }
    let mut first = BigInt::zero();
    let mut second = BigInt::zero();
    for (&k, c) in table.counts() {
        let k = BigInt::from(k);
        first += &k * c;
        second += &k * &k * c;
    }
    let mean = BigRational::new(first, total.clone());
    let variance = BigRational::new(second, total.clone()) - &mean * &mean;
    Ok(MomentPair { mean, variance })
}

/// `n!` or `2^n n!` as an exact integer.
pub fn group_size(n: usize, signed: bool) -> BigInt {
    let f = crate::exactmath::factorial(n as u64);
    if signed { f * crate::exactmath::pow2(n as u64) } else { f }
}

/// `(2m - 1)!!`, the number of perfect matchings on `2m` vertices.
pub fn double_factorial_odd(m: usize) -> BigInt {
    (1..m).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational;
    use crate::hultman::{hultman_row, signed_hultman_row};

    fn table(pairs: &[(i64, i64)]) -> BTreeMap<i64, BigInt> {
        pairs.iter().map(|&(k, c)| (k, BigInt::from(c))).collect()
    }

    #[test]
    fn census_examples() {
        let o = CensusOptions::default();
        assert_eq!(signed_hultman_census(3, o).unwrap().counts(), &table(&[(1, 20), (2, 21), (3, 6), (4, 1)]));
        assert_eq!(hultman_census(2, o).unwrap().counts(), &table(&[(1, 1), (3, 1)]));
        assert_eq!(signed_hultman_census(1, o).unwrap().counts(), &table(&[(1, 1), (2, 1)]));
        assert_eq!(hultman_census(0, o).unwrap().counts(), &table(&[(1, 1)]));
        assert_eq!(odd_hultman_census(1, o).unwrap().counts(), &table(&[(2, 1)]));
    }

    #[test]
    fn guards() {
        let o = CensusOptions::default();
        assert!(matches!(hultman_census(11, o), Err(Error::GuardExceeded { .. })));
        assert!(matches!(signed_hultman_census(9, o), Err(Error::GuardExceeded { .. })));
        assert!(matches!(matching_census(7, o), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn odd_census_parity_and_total() {
        for n in 1..=8 {
            let t = odd_hultman_census(n, CensusOptions::with_jobs(4)).unwrap();
            assert_eq!(t.total(), group_size(n, false));
            assert!(t.counts().keys().all(|k| (k - n as i64 - 1) % 2 == 0), "n={n}");
        }
    }

    #[test]
    fn census_matches_closed_forms() {
        for n in 0..=7 {
            let t = hultman_census(n, CensusOptions::with_jobs(2)).unwrap();
            for (k, c) in hultman_row(n).into_iter().enumerate() {
                assert_eq!(t.get(k as i64), c);
            }
        }
        for n in 0..=6 {
            let t = signed_hultman_census(n, CensusOptions::with_jobs(2)).unwrap();
            for (k, c) in signed_hultman_row(n).into_iter().enumerate() {
                assert_eq!(t.get(k as i64), c);
            }
        }
    }

    #[test]
    fn matching_census_examples() {
        let mc = matching_census(1, CensusOptions::default()).unwrap();
        let expect: BTreeMap<_, _> =
            [((2, 1), 1), ((1, 1), 1), ((1, 2), 1)].into_iter().map(|(k, c)| (k, BigInt::from(c))).collect();
        assert_eq!(mc.counts(), &expect);
        let mc3 = matching_census(3, CensusOptions::with_jobs(3)).unwrap();
        assert_eq!(mc3.slice(1).counts(), &table(&[(1, 20), (2, 21), (3, 6), (4, 1)]));
        for n in 0..=5 {
            let mc = matching_census(n, CensusOptions::with_jobs(2)).unwrap();
            assert_eq!(mc.total(), double_factorial_odd(n + 1));
            assert_eq!(mc.slice(1).total(), group_size(n, true));
        }
    }

    #[test]
    fn moments_examples() {
        let o = CensusOptions::default();
        let s1 = signed_hultman_census(1, o).unwrap();
        let m = moments_from_table(&s1, &BigInt::from(2)).unwrap();
        assert_eq!((m.mean, m.variance), (rational(3, 2), rational(1, 4)));
        let u1 = hultman_census(1, o).unwrap();
        let m = moments_from_table(&u1, &BigInt::from(1)).unwrap();
        assert_eq!((m.mean, m.variance), (rational(2, 1), rational(0, 1)));
        let u2 = hultman_census(2, o).unwrap();
        let m = moments_from_table(&u2, &BigInt::from(2)).unwrap();
        assert_eq!((m.mean, m.variance), (rational(2, 1), rational(1, 1)));
        assert!(matches!(moments_from_table(&u2, &BigInt::from(3)), Err(Error::TotalMismatch { .. })));
    }

    #[test]
    fn jobs_do_not_change_tables() {
        let a = signed_hultman_census(5, CensusOptions::with_jobs(1)).unwrap();
        let b = signed_hultman_census(5, CensusOptions::with_jobs(8)).unwrap();
        assert_eq!(a, b);
        let a = matching_census(4, CensusOptions::with_jobs(1)).unwrap();
        let b = matching_census(4, CensusOptions::with_jobs(8)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn merge_is_per_key_addition() {
        let mut a = DistributionTable::from_counts(3, "x", [(1i64, 2i64), (2, 3)]);
        let b = DistributionTable::from_counts(3, "x", [(2i64, 1i64), (4, 5)]);
        a.merge(&b).unwrap();
        assert_eq!(a.counts(), &table(&[(1, 2), (2, 4), (4, 5)]));
        assert!(a.merge(&DistributionTable::new(4, "x")).is_err());
        assert!(a.merge(&DistributionTable::new(3, "y")).is_err());
    }
}
