//! Rearrangement distances determined by breakpoint-graph cycles, lower bounds
//! for the harder distances, and an exhaustive breadth-first search that
//! computes exact distances for small `n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::bpgraph::{CycleProfile, ProfileScratch};
use crate::census::{run_in_pool, CensusOptions, DistributionTable, SIGNED_CENSUS_LIMIT, UNSIGNED_CENSUS_LIMIT};
use crate::error::{Error, Result};
use crate::hultman::{hultman_row, signed_hultman_row};
use crate::perm::{group_order, unrank, PermutationRange, SignedPermutation};

pub const UNSIGNED_BFS_LIMIT: usize = 8;
pub const SIGNED_BFS_LIMIT: usize = 6;

const BFS_UNITS: usize = 64;
const UNVISITED: u8 = u8::MAX;

/// Operations whose sorting distances the BFS engine can compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSet {
    Reversal,
    PrefixReversal,
    Transposition,
    PrefixTransposition,
    BlockInterchange,
    SignedReversal,
    PrefixSignedReversal,
}

/// One generator, as a position map: the new image at position `p` is the
/// old image at `src[p]`, negated when `flip[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    src: Vec<u8>,
    flip: Vec<bool>,
}

impl Move {
    fn from_order(order: Vec<usize>, flipped: impl Fn(usize) -> bool) -> Self {
        let flip = (0..order.len()).map(&flipped).collect();
        Move { src: order.into_iter().map(|s| s as u8).collect(), flip }
    }

    pub fn apply_into(&self, images: &[i32], out: &mut [i32]) {
        for (p, o) in out.iter_mut().enumerate() {
            let v = images[self.src[p] as usize];
            *o = if self.flip[p] { -v } else { v };
        }
    }

    pub fn apply(&self, pi: &SignedPermutation) -> SignedPermutation {
        let mut out = vec![0; pi.n()];
        self.apply_into(pi.images(), &mut out);
        SignedPermutation::from_images_unchecked(out)
    }
}

fn reversal(n: usize, i: usize, j: usize, signed: bool) -> Move {
    let order = (0..n).map(|p| if p >= i && p <= j { i + j - p } else { p }).collect();
    Move::from_order(order, |p| signed && p >= i && p <= j)
}

// Exchanges blocks [i, j) and [k, l), with j <= k.
fn interchange(n: usize, i: usize, j: usize, k: usize, l: usize) -> Move {
    let mut order: Vec<usize> = (0..i).collect();
    order.extend(k..l);
    order.extend(j..k);
    order.extend(i..j);
    order.extend(l..n);
    Move::from_order(order, |_| false)
}

impl GeneratorSet {
    pub const ALL: [GeneratorSet; 7] = [
        GeneratorSet::Reversal,
        GeneratorSet::PrefixReversal,
        GeneratorSet::Transposition,
        GeneratorSet::PrefixTransposition,
        GeneratorSet::BlockInterchange,
        GeneratorSet::SignedReversal,
        GeneratorSet::PrefixSignedReversal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorSet::Reversal => "reversal",
            GeneratorSet::PrefixReversal => "prefix_reversal",
            GeneratorSet::Transposition => "transposition",
            GeneratorSet::PrefixTransposition => "prefix_transposition",
            GeneratorSet::BlockInterchange => "block_interchange",
            GeneratorSet::SignedReversal => "signed_reversal",
            GeneratorSet::PrefixSignedReversal => "prefix_signed_reversal",
        }
    }

    pub fn is_signed(self) -> bool {
        matches!(self, GeneratorSet::SignedReversal | GeneratorSet::PrefixSignedReversal)
    }

    /// Every generator acting on permutations of size `n`.
    pub fn moves(self, n: usize) -> Vec<Move> {
        let mut out = Vec::new();
        match self {
            GeneratorSet::Reversal => {
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(reversal(n, i, j, false));
                    }
                }
            }
            GeneratorSet::PrefixReversal => {
                for j in 1..n {
                    out.push(reversal(n, 0, j, false));
                }
            }
            GeneratorSet::SignedReversal => {
                for i in 0..n {
                    for j in i..n {
                        out.push(reversal(n, i, j, true));
                    }
                }
            }
            GeneratorSet::PrefixSignedReversal => {
                for j in 0..n {
                    out.push(reversal(n, 0, j, true));
                }
            }
            GeneratorSet::Transposition | GeneratorSet::PrefixTransposition => {
                let starts = if self == GeneratorSet::Transposition { 0..n } else { 0..n.min(1) };
                for i in starts {
                    for j in i + 1..n {
                        for k in j + 1..=n {
                            out.push(interchange(n, i, j, j, k));
                        }
                    }
                }
            }
            GeneratorSet::BlockInterchange => {
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j..n {
                            for l in k + 1..=n {
                                out.push(interchange(n, i, j, k, l));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorSet::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

// Lexicographic rank compatible with `perm::unrank`, using a bitmask of the
// unused values instead of an allocated list.
struct Ranker {
    signed: bool,
    weights: Vec<u64>,
}

impl Ranker {
    fn new(n: usize, signed: bool) -> Self {
        let weights = (1..=n).map(|taken| group_order(n - taken, signed).expect("group order overflow")).collect();
        Ranker { signed, weights }
    }

    fn rank(&self, images: &[i32]) -> u64 {
        let mut unused: u32 = u32::MAX;
        let mut rank = 0;
        for (i, &v) in images.iter().enumerate() {
            let a = v.unsigned_abs();
            let below = (unused & ((1u32 << a) - 2)).count_ones() as usize;
            let left = images.len() - i;
            let digit = match (self.signed, v < 0) {
                (false, _) => below,
                (true, true) => left - 1 - below,
                (true, false) => left + below,
            };
            rank += digit as u64 * self.weights[i];
            unused &= !(1u32 << a);
        }
        rank
    }
}

/// Exact sorting distance of every element of the group, indexed by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMap {
    n: usize,
    generators: GeneratorSet,
    distances: Vec<u8>,
}

impl DistanceMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> GeneratorSet {
        self.generators
    }

    pub fn by_rank(&self) -> &[u8] {
        &self.distances
    }

    pub fn get(&self, pi: &SignedPermutation) -> Result<usize> {
        if pi.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: pi.n() });
        }
        if !self.generators.is_signed() && !pi.is_unsigned() {
            return Err(Error::OutOfDomain(format!("{} acts on unsigned permutations", self.generators)));
        }
        let r = Ranker::new(self.n, self.generators.is_signed()).rank(pi.images());
        Ok(self.distances[r as usize] as usize)
    }

    /// Number of permutations at each distance `0, 1, ..., diameter`.
    pub fn level_sizes(&self) -> Vec<u64> {
        let max = self.distances.iter().copied().max().unwrap_or(0) as usize;
        let mut levels = vec![0u64; max + 1];
        for &d in &self.distances {
            levels[d as usize] += 1;
        }
        levels
    }

    pub fn distribution(&self) -> DistributionTable {
        DistributionTable::from_counts(
            self.n,
            self.generators.name(),
            self.level_sizes().into_iter().enumerate().map(|(k, c)| (k as i64, c)),
        )
    }
}

fn bfs_guard(n: usize, g: GeneratorSet, force: bool) -> Result<()> {
    let limit = if g.is_signed() { SIGNED_BFS_LIMIT } else { UNSIGNED_BFS_LIMIT };
    if n > limit && !force {
        return Err(Error::GuardExceeded { what: "BFS", n, limit });
    }
    Ok(())
}

/// Breadth-first search over the whole group from the identity.
pub fn bfs_distances(n: usize, g: GeneratorSet, opts: CensusOptions) -> Result<DistanceMap> {
    bfs_distances_from(n, g, &SignedPermutation::identity(n), opts)
}

/// Breadth-first search from `start`: entry `r` is the number of generators
/// needed to turn `start` into the permutation of rank `r`.
pub fn bfs_distances_from(
    n: usize,
    g: GeneratorSet,
    start: &SignedPermutation,
    opts: CensusOptions,
) -> Result<DistanceMap> {
    bfs_guard(n, g, opts.force)?;
    if start.n() != n {
        return Err(Error::SizeMismatch { left: n, right: start.n() });
    }
    if !g.is_signed() && !start.is_unsigned() {
        return Err(Error::OutOfDomain(format!("{g} acts on unsigned permutations")));
    }
    let signed = g.is_signed();
    let order = group_order(n, signed)
        .filter(|&o| o <= usize::MAX as u64)
        .ok_or_else(|| Error::OutOfDomain(format!("group order overflows at n = {n}")))?;
    let moves = g.moves(n);
    let ranker = Ranker::new(n, signed);
    let mut distances = vec![UNVISITED; order as usize];
    let first = ranker.rank(start.images());
    distances[first as usize] = 0;
    let mut frontier = vec![first];
    let mut level: u8 = 0;
    while !frontier.is_empty() {
        if level == UNVISITED - 1 {
            return Err(Error::OutOfDomain("distance exceeds 254".into()));
        }
        let chunk = frontier.len().div_ceil(BFS_UNITS).max(1);
        let seen = &distances;
        let mut next: Vec<u64> = run_in_pool(opts.jobs, || {
            frontier
                .par_chunks(chunk)
                .flat_map_iter(|ranks| {
                    let mut found = Vec::new();
                    let mut buf = vec![0i32; n];
                    for &r in ranks {
                        let pi = unrank(n, signed, r);
                        for mv in &moves {
                            mv.apply_into(pi.images(), &mut buf);
                            let s = ranker.rank(&buf);
                            if seen[s as usize] == UNVISITED {
                                found.push(s);
                            }
                        }
                    }
                    found
                })
                .collect()
        });
        next.sort_unstable();
        next.dedup();
        level += 1;
        for &s in &next {
            distances[s as usize] = level;
        }
        frontier = next;
    }
    if distances.contains(&UNVISITED) {
        return Err(Error::OutOfDomain(format!("{g} does not generate the group at n = {n}")));
    }
    Ok(DistanceMap { n, generators: g, distances })
}

fn require_unsigned(pi: &SignedPermutation) -> Result<()> {
    if pi.is_unsigned() { Ok(()) } else { Err(Error::SignedInput) }
}

fn profile(pi: &SignedPermutation) -> CycleProfile {
    let mut lengths = Vec::new();
    ProfileScratch::new().cycle_lengths(pi.images(), &mut lengths);
    CycleProfile::new(lengths)
}

fn half_exact(value: usize, what: &str) -> usize {
    assert!(value % 2 == 0, "{what}: odd numerator {value} contradicts breakpoint-graph parity");
    value / 2
}

/// Block-interchange distance `(n + 1 − c)/2`.
pub fn bid(pi: &SignedPermutation) -> Result<usize> {
    require_unsigned(pi)?;
    Ok(half_exact(pi.n() + 1 - profile(pi).c(), "bid"))
}

/// Double cut-and-join distance `n + 1 − c`.
pub fn dcj(pi: &SignedPermutation) -> usize {
    pi.n() + 1 - profile(pi).c()
}

/// Cycle-based bound on signed reversal distance, `n + 1 − c`.
pub fn srd_lower(pi: &SignedPermutation) -> usize {
    dcj(pi)
}

/// Bound on transposition distance, `(n + 1 − c_odd)/2`.
pub fn td_lower(pi: &SignedPermutation) -> Result<usize> {
    require_unsigned(pi)?;
    Ok(Bound::Td.value(pi.n(), pi.images(), &profile(pi)))
}

/// Bound on prefix transposition distance,
/// `(n + 1 + c)/2 − c_1 − [π_1 ≠ 1]`, clamped at 0.
pub fn ptd_lower(pi: &SignedPermutation) -> Result<usize> {
    require_unsigned(pi)?;
    Ok(Bound::Ptd.value(pi.n(), pi.images(), &profile(pi)))
}

/// Bound on prefix signed reversal distance,
/// `n + 1 + c − 2c_1 − (0 if π_1 = +1 else 2)`, clamped at 0.
pub fn psrd_lower(pi: &SignedPermutation) -> usize {
    Bound::Psrd.value(pi.n(), pi.images(), &profile(pi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Bound {
    Srd,
    Td,
    Ptd,
    Psrd,
}

impl Bound {
    fn value(self, n: usize, images: &[i32], p: &CycleProfile) -> usize {
        let first_is_one = images.first().is_none_or(|&v| v == 1);
        let (n, c, c1) = (n as i64, p.c() as i64, p.c_1() as i64);
        let v = match self {
            Bound::Srd => n + 1 - c,
            Bound::Td => half_exact((n + 1) as usize - p.c_odd(), "td bound") as i64,
            Bound::Ptd => half_exact((n + 1 + c) as usize, "ptd bound") as i64 - c1 - i64::from(!first_is_one),
            Bound::Psrd => n + 1 + c - 2 * c1 - if first_is_one { 0 } else { 2 },
        };
        v.max(0) as usize
    }
}

/// A bound together with the cycle statistics it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub permutation: SignedPermutation,
    pub value: usize,
    pub c: usize,
    pub c_odd: usize,
    pub c_1: usize,
    pub first_is_one: bool,
}

/// Everything the CLI can tabulate as a distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Bid,
    Dcj,
    SrdLower,
    TdLower,
    PtdLower,
    PsrdLower,
    Exact(GeneratorSet),
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Bid => "bid",
            Metric::Dcj => "dcj",
            Metric::SrdLower => "srd_lower",
            Metric::TdLower => "td_lower",
            Metric::PtdLower => "ptd_lower",
            Metric::PsrdLower => "psrd_lower",
            Metric::Exact(g) => g.name(),
        }
    }

    pub fn is_signed(self) -> bool {
        match self {
            Metric::Dcj | Metric::SrdLower | Metric::PsrdLower => true,
            Metric::Bid | Metric::TdLower | Metric::PtdLower => false,
            Metric::Exact(g) => g.is_signed(),
        }
    }

    fn bound(self) -> Option<Bound> {
        match self {
            Metric::SrdLower => Some(Bound::Srd),
            Metric::TdLower => Some(Bound::Td),
            Metric::PtdLower => Some(Bound::Ptd),
            Metric::PsrdLower => Some(Bound::Psrd),
            _ => None,
        }
    }

    /// Value of a cycle-determined metric (everything except BFS metrics).
    pub fn report(self, pi: &SignedPermutation) -> Result<BoundReport> {
        if !self.is_signed() {
            require_unsigned(pi)?;
        }
        let p = profile(pi);
        let value = match (self, self.bound()) {
            (_, Some(b)) => b.value(pi.n(), pi.images(), &p),
            (Metric::Bid, _) => half_exact(pi.n() + 1 - p.c(), "bid"),
            (Metric::Dcj, _) => pi.n() + 1 - p.c(),
            _ => return Err(Error::OutOfDomain(format!("{} is not determined by cycles", self.name()))),
        };
        Ok(BoundReport {
            permutation: pi.clone(),
            value,
            c: p.c(),
            c_odd: p.c_odd(),
            c_1: p.c_1(),
            first_is_one: pi.images().first().is_none_or(|&v| v == 1),
        })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "bid" => Metric::Bid,
            "dcj" => Metric::Dcj,
            "srd_lower" => Metric::SrdLower,
            "td_lower" => Metric::TdLower,
            "ptd_lower" => Metric::PtdLower,
            "psrd_lower" => Metric::PsrdLower,
            other => Metric::Exact(other.parse()?),
        })
    }
}

fn bound_distribution(n: usize, signed: bool, bound: Bound, name: &str, opts: CensusOptions) -> Result<DistributionTable> {
    let limit = if signed { SIGNED_CENSUS_LIMIT } else { UNSIGNED_CENSUS_LIMIT };
    if n > limit && !opts.force {
        return Err(Error::GuardExceeded { what: "bound census", n, limit });
    }
    let units = PermutationRange::full(n, signed).split(256);
    let partials: Vec<Vec<u64>> = run_in_pool(opts.jobs, || {
        units
            .par_iter()
            .map(|range| {
                let mut counts = vec![0u64; 2 * n + 3];
                let mut scratch = ProfileScratch::new();
                let mut lengths = Vec::new();
                range.for_each_images(|images| {
                    scratch.cycle_lengths(images, &mut lengths);
                    let p = CycleProfile::new(lengths.clone());
                    counts[bound.value(n, images, &p)] += 1;
                });
                counts
            })
            .collect()
    });
    let mut totals = vec![0u64; 2 * n + 3];
    for part in &partials {
        for (t, c) in totals.iter_mut().zip(part) {
            *t += c;
        }
    }
    Ok(DistributionTable::from_counts(n, name, totals.into_iter().enumerate().map(|(k, c)| (k as i64, c))))
}

/// Number of permutations at each value of `metric`. `bid` and `dcj` come
/// from the closed forms; bounds are tallied over the group; generator sets
/// run the BFS.
pub fn distance_distribution(n: usize, metric: Metric, opts: CensusOptions) -> Result<DistributionTable> {
    match metric {
        Metric::Bid => {
            let row = hultman_row(n);
            Ok(DistributionTable::from_counts(
                n,
                "bid",
                row.into_iter().enumerate().map(|(c, count)| (((n + 1 - c.min(n + 1)) / 2) as i64, count)),
            ))
        }
        Metric::Dcj => {
            let row = signed_hultman_row(n);
            Ok(DistributionTable::from_counts(
                n,
                "dcj",
                row.into_iter().enumerate().map(|(c, count)| ((n + 1) as i64 - c as i64, count)),
            ))
        }
        Metric::Exact(g) => Ok(bfs_distances(n, g, opts)?.distribution()),
        other => {
            let bound = other.bound().expect("remaining metrics are bounds");
            bound_distribution(n, other.is_signed(), bound, other.name(), opts)
        }
    }
}

/// A distance distribution set against the cycle-count distribution shifted
/// by the best-fitting offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub n: usize,
    pub metric: Metric,
    /// `reference(k) = base(k − offset)`, where `base` is the `bid`
    /// (unsigned) or `dcj` (signed) distribution.
    pub offset: i64,
    /// `(k, metric count, shifted reference count)` over the union of supports.
    pub rows: Vec<(i64, BigInt, BigInt)>,
    pub total_variation: BigRational,
}

/// Picks the offset `m ∈ [−(n+1), n+1]` minimising the total variation
/// distance between `dist` and `base` shifted by `m`; ties go to the smaller
/// `m`.
pub fn best_fit_offset(dist: &DistributionTable, base: &DistributionTable) -> (i64, BigRational) {
    let n = dist.n() as i64;
    let total = dist.total();
    let mut best: Option<(i64, BigInt)> = None;
    for m in -(n + 1)..=n + 1 {
        let gap = l1_gap(dist, base, m);
        if best.as_ref().is_none_or(|(_, g)| &gap < g) {
            best = Some((m, gap));
        }
    }
    let (m, gap) = best.expect("offset range is non-empty");
    let tvd = if total.is_zero() { BigRational::zero() } else { BigRational::new(gap, total * 2) };
    (m, tvd)
}

fn support(dist: &DistributionTable, base: &DistributionTable, m: i64) -> Vec<i64> {
    let mut keys: Vec<i64> = dist.counts().keys().copied().chain(base.counts().keys().map(|k| k + m)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys
}

fn l1_gap(dist: &DistributionTable, base: &DistributionTable, m: i64) -> BigInt {
    support(dist, base, m).into_iter().map(|k| (dist.get(k) - base.get(k - m)).abs()).sum()
}

pub fn compare(n: usize, metric: Metric, opts: CensusOptions) -> Result<Comparison> {
    let dist = distance_distribution(n, metric, opts)?;
    let base = distance_distribution(n, if metric.is_signed() { Metric::Dcj } else { Metric::Bid }, opts)?;
    let (offset, total_variation) = best_fit_offset(&dist, &base);
    let rows = support(&dist, &base, offset)
        .into_iter()
        .map(|k| (k, dist.get(k), base.get(k - offset)))
        .collect();
    Ok(Comparison { n, metric, offset, rows, total_variation })
}
