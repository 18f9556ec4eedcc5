//! Breakpoint graphs, configurations and perfect matchings.
//!
//! Vertices are the integers `0..2n+2`. The grey matching `{2i, 2i+1}` is
//! implicit; a [`Configuration`] only stores its black matching. Cycle lengths
//! are always reported in breakpoint-graph units (black edges per cycle).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::SignedPermutation;

/// Default ceiling on the edge count for exhaustive matching enumeration.
pub const MATCHING_ENUMERATION_LIMIT: usize = 8;

/// A perfect matching stored as a fixed-point-free involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    partner: Vec<usize>,
}

impl PerfectMatching {
    pub fn new(partner: Vec<usize>) -> Result<Self> {
        if partner.len() % 2 != 0 {
            return Err(Error::InvalidMatching(format!("odd vertex count {}", partner.len())));
        }
        for (v, &w) in partner.iter().enumerate() {
            if w >= partner.len() || w == v || partner[w] != v {
                return Err(Error::InvalidMatching(format!("vertex {v} is not properly paired")));
            }
        }
        Ok(PerfectMatching { partner })
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; vertices];
        for &(u, v) in edges {
            if u >= vertices || v >= vertices || partner[u] != usize::MAX || partner[v] != usize::MAX {
                return Err(Error::InvalidMatching(format!("edge {{{u}, {v}}} overlaps or is out of range")));
            }
            partner[u] = v;
            partner[v] = u;
        }
        Self::new(partner)
    }

    /// `{2i, 2i+1}` on `2m` vertices.
    pub fn grey(m: usize) -> Self {
        PerfectMatching { partner: (0..2 * m).map(|v| v ^ 1).collect() }
    }

    /// `{2i-1, 2i} ∪ {0, 2m-1}`: the grey matching shifted by one.
    pub fn shifted_grey(m: usize) -> Self {
        let last = 2 * m - 1;
        let partner = (0..2 * m)
            .map(|v| match v {
                0 => last,
                v if v == last => 0,
                v if v % 2 == 1 => v + 1,
                v => v - 1,
            })
            .collect();
        PerfectMatching { partner }
    }

    /// `{i, m+i}` on `2m` vertices.
    pub fn identity(m: usize) -> Self {
        PerfectMatching { partner: (0..2 * m).map(|v| if v < m { v + m } else { v - m }).collect() }
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, v: usize) -> usize {
        self.partner[v]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Edges `(u, v)` with `u < v`, sorted by `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.partner.iter().enumerate().filter(|&(u, &v)| u < v).map(|(u, &v)| (u, v)).collect()
    }

    /// Renames every endpoint through `relabel` (a bijection of the vertex set).
    pub fn conjugate(&self, relabel: &[usize]) -> Result<Self> {
        if relabel.len() != self.partner.len() {
            return Err(Error::SizeMismatch { left: relabel.len(), right: self.partner.len() });
        }
        let mut partner = vec![usize::MAX; self.partner.len()];
        for (v, &w) in self.partner.iter().enumerate() {
            let slot = relabel.get(v).copied().filter(|&x| x < partner.len());
            let Some(x) = slot else {
                return Err(Error::InvalidMatching("relabeling is not a bijection".into()));
            };
            partner[x] = relabel[w];
        }
        Self::new(partner).map_err(|_| Error::InvalidMatching("relabeling is not a bijection".into()))
    }
}

/// `i ↦ i/2` for even `i`, `(i + 2n + 1)/2` for odd `i`, on `0..2n+2`.
///
/// Conjugating by this map sends the grey matching to the identity matching
/// and the shifted grey matching to a matching forming a hamiltonian cycle
/// with it.
pub fn mu_relabeling(n: usize) -> Vec<usize> {
    (0..2 * n + 2).map(|i| if i % 2 == 0 { i / 2 } else { (i + 2 * n + 1) / 2 }).collect()
}

/// Lengths (edges of `a` per cycle) of the alternating cycles of `a ∪ b`.
pub fn union_cycle_lengths(a: &PerfectMatching, b: &PerfectMatching) -> Vec<usize> {
    assert_eq!(a.partner.len(), b.partner.len(), "matchings on different vertex sets");
    alternating_cycles(&a.partner, &b.partner, &mut vec![false; a.partner.len()])
}

pub fn union_cycle_count(a: &PerfectMatching, b: &PerfectMatching) -> usize {
    union_cycle_lengths(a, b).len()
}

fn alternating_cycles(a: &[usize], b: &[usize], seen: &mut [bool]) -> Vec<usize> {
    seen.iter_mut().for_each(|s| *s = false);
    let mut lengths = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        loop {
            seen[v] = true;
            let w = a[v];
            seen[w] = true;
            len += 1;
            v = b[w];
            if v == start {
                break;
            }
        }
        lengths.push(len);
    }
    lengths
}

fn grey_partner(v: usize) -> usize {
    v ^ 1
}

fn shifted_grey_partner(v: usize, last: usize) -> usize {
    match v {
        0 => last,
        v if v == last => 0,
        v if v % 2 == 1 => v + 1,
        v => v - 1,
    }
}

/// Union of an arbitrary black matching on `0..2n+2` with the grey matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    n: usize,
    black: PerfectMatching,
}

impl Configuration {
    pub fn new(n: usize, black: PerfectMatching) -> Result<Self> {
        if black.m() != n + 1 {
            return Err(Error::SizeMismatch { left: black.m(), right: n + 1 });
        }
        Ok(Configuration { n, black })
    }

    pub fn from_black_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, PerfectMatching::from_edges(2 * n + 2, edges)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn black(&self) -> &PerfectMatching {
        &self.black
    }

    pub fn cycle_profile(&self) -> CycleProfile {
        CycleProfile::new(union_cycle_lengths(&self.black, &PerfectMatching::grey(self.n + 1)))
    }

    pub fn complement(&self) -> Complement {
        Complement { n: self.n, black: self.black.clone() }
    }

    /// True iff the complement is a single (hamiltonian) cycle.
    pub fn is_valid_breakpoint_graph(&self) -> bool {
        self.complement().cycle_count() == 1
    }

    /// Reads the permutation back off the hamiltonian complement cycle.
    pub fn recover_permutation(&self) -> Result<SignedPermutation> {
        let cycles = self.complement().cycle_count();
        if cycles != 1 {
            return Err(Error::NotHamiltonian { cycles });
        }
        let last = 2 * self.n + 1;
        let mut doubled = Vec::with_capacity(last + 1);
        let mut v = 0;
        doubled.push(v);
        for _ in 0..=self.n {
            let w = self.black.partner(v);
            doubled.push(w);
            if w == last {
                break;
            }
            v = shifted_grey_partner(w, last);
            doubled.push(v);
        }
        debug_assert_eq!(doubled.len(), last + 1);
        let images = doubled[1..last]
            .chunks(2)
            .map(|pair| {
                let (x, y) = (pair[0] as i32, pair[1] as i32);
                if y == x + 1 { y / 2 } else { -(x / 2) }
            })
            .collect();
        SignedPermutation::new(images)
    }

    /// Line-based edge list: `B u v` for black edges, `G u v` for grey ones.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.black.edges() {
            let _ = writeln!(out, "B {u} {v}");
        }
        for i in 0..=self.n {
            let _ = writeln!(out, "G {} {}", 2 * i, 2 * i + 1);
        }
        out
    }
}

/// The black matching together with the shifted grey matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    n: usize,
    black: PerfectMatching,
}

impl Complement {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        union_cycle_lengths(&self.black, &PerfectMatching::shifted_grey(self.n + 1))
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths().len()
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.cycle_count() == 1
    }
}

/// Multiset of alternating-cycle lengths, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleProfile {
    lengths: Vec<usize>,
}

impl CycleProfile {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        CycleProfile { lengths }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Number of cycles.
    pub fn c(&self) -> usize {
        self.lengths.len()
    }

    pub fn c_odd(&self) -> usize {
        self.lengths.iter().filter(|&&l| l % 2 == 1).count()
    }

    pub fn c_1(&self) -> usize {
        self.lengths.iter().filter(|&&l| l == 1).count()
    }
}

/// `(0, π'_1, ..., π'_{2n}, 2n+1)` with `π_i ↦ (2π_i−1, 2π_i)` when positive
/// and `(2|π_i|, 2|π_i|−1)` when negative.
pub fn double(pi: &SignedPermutation) -> Vec<usize> {
    let n = pi.n();
    let mut out = Vec::with_capacity(2 * n + 2);
    out.push(0);
    for &v in pi.images() {
        let a = 2 * v.unsigned_abs() as usize;
        if v > 0 {
            out.extend([a - 1, a]);
        } else {
            out.extend([a, a - 1]);
        }
    }
    out.push(2 * n + 1);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointGraph {
    config: Configuration,
    source: SignedPermutation,
    doubled: Vec<usize>,
}

impl BreakpointGraph {
    pub fn new(pi: &SignedPermutation) -> Self {
        let doubled = double(pi);
        let mut partner = vec![0; doubled.len()];
        for pair in doubled.chunks(2) {
            partner[pair[0]] = pair[1];
            partner[pair[1]] = pair[0];
        }
        let black = PerfectMatching::new(partner).expect("doubling yields a perfect matching");
        BreakpointGraph {
            config: Configuration { n: pi.n(), black },
            source: pi.clone(),
            doubled,
        }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn source(&self) -> &SignedPermutation {
        &self.source
    }

    pub fn doubled(&self) -> &[usize] {
        &self.doubled
    }

    pub fn cycle_profile(&self) -> CycleProfile {
        self.config.cycle_profile()
    }
}

pub fn breakpoint_graph(pi: &SignedPermutation) -> BreakpointGraph {
    BreakpointGraph::new(pi)
}

/// Reusable buffers for computing cycle profiles straight from image
/// sequences, as the census engines do millions of times.
#[derive(Default)]
pub struct ProfileScratch {
    black: Vec<usize>,
    seen: Vec<bool>,
}

impl ProfileScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Alternating-cycle lengths of `BG(π)` for the image sequence of `π`,
    /// in traversal order.
    pub fn cycle_lengths(&mut self, images: &[i32], out: &mut Vec<usize>) {
        let n = images.len();
        let verts = 2 * n + 2;
        self.black.clear();
        self.black.resize(verts, 0);
        self.seen.clear();
        self.seen.resize(verts, false);
        let mut prev = 0usize;
        for &v in images {
            let a = 2 * v.unsigned_abs() as usize;
            let (first, second) = if v > 0 { (a - 1, a) } else { (a, a - 1) };
            self.black[prev] = first;
            self.black[first] = prev;
            prev = second;
        }
        self.black[prev] = verts - 1;
        self.black[verts - 1] = prev;
        out.clear();
        for start in 0..verts {
            if self.seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            loop {
                self.seen[v] = true;
                let w = self.black[v];
                self.seen[w] = true;
                len += 1;
                v = grey_partner(w);
                if v == start {
                    break;
                }
            }
            out.push(len);
        }
    }
}

/// Enumerates every perfect matching on `2m` vertices, always pairing the
/// smallest unmatched vertex first (candidates in increasing order).
pub struct MatchingIter {
    m: usize,
    partner: Vec<usize>,
    // (vertex being matched, index of the candidate currently chosen)
    stack: Vec<(usize, usize)>,
    first: Option<usize>,
    started: bool,
    done: bool,
}

impl MatchingIter {
    fn new(m: usize, first: Option<usize>) -> Self {
        MatchingIter {
            m,
            partner: vec![usize::MAX; 2 * m],
            stack: Vec::with_capacity(m),
            first,
            started: false,
            done: m == 0,
        }
    }

    fn candidates(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (v + 1..2 * self.m).filter(|&w| self.partner[w] == usize::MAX)
    }

    // Completes the current partial matching with the smallest choices.
    fn descend(&mut self) {
        while self.stack.len() < self.m {
            let v = (0..2 * self.m).find(|&u| self.partner[u] == usize::MAX).expect("unmatched vertex");
            let w = match self.first {
                Some(w) if v == 0 => w,
                _ => self.candidates(v).next().expect("a candidate exists"),
            };
            self.partner[v] = w;
            self.partner[w] = v;
            self.stack.push((v, w));
        }
    }

    // Advances to the next complete matching; false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some((v, w)) = self.stack.pop() {
            self.partner[v] = usize::MAX;
            self.partner[w] = usize::MAX;
            if v == 0 && self.first.is_some() {
                return false;
            }
            let next = self.candidates(v).find(|&x| x > w);
            if let Some(next) = next {
                self.partner[v] = next;
                self.partner[next] = v;
                self.stack.push((v, next));
                self.descend();
                return true;
            }
        }
        false
    }
}

impl Iterator for MatchingIter {
    type Item = PerfectMatching;

    fn next(&mut self) -> Option<PerfectMatching> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(PerfectMatching { partner: self.partner.clone() })
    }
}

fn check_matching_guard(m: usize, force: bool) -> Result<()> {
    if m > MATCHING_ENUMERATION_LIMIT && !force {
        return Err(Error::GuardExceeded { what: "matching enumeration", n: m, limit: MATCHING_ENUMERATION_LIMIT });
    }
    Ok(())
}

/// All `(2m-1)!!` perfect matchings on `2m` vertices.
pub fn enumerate_matchings(m: usize, force: bool) -> Result<MatchingIter> {
    if m == 0 {
        return Err(Error::OutOfDomain("matching enumeration needs m >= 1".into()));
    }
    check_matching_guard(m, force)?;
    Ok(MatchingIter::new(m, None))
}

/// The branch of [`enumerate_matchings`] in which vertex 0 is paired with
/// `partner_of_zero`; the `2m-1` branches partition the whole family.
pub fn enumerate_matchings_branch(m: usize, partner_of_zero: usize, force: bool) -> Result<MatchingIter> {
    if m == 0 || partner_of_zero == 0 || partner_of_zero >= 2 * m {
        return Err(Error::OutOfDomain(format!("no branch {partner_of_zero} for m = {m}")));
    }
    check_matching_guard(m, force)?;
    Ok(MatchingIter::new(m, Some(partner_of_zero)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermutationRange;

    fn p(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    // Black matching of a configuration whose complement splits into two cycles.
    fn non_hamiltonian_example() -> Configuration {
        Configuration::from_black_edges(
            7,
            &[(0, 10), (1, 9), (2, 15), (4, 7), (3, 12), (6, 13), (5, 11), (8, 14)],
        )
        .unwrap()
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(
            double(&p(&[-5, 1, 2, 4, -7, -3, 6])),
            vec![0, 10, 9, 1, 2, 3, 4, 7, 8, 14, 13, 6, 5, 11, 12, 15]
        );
        assert_eq!(double(&p(&[-1])), vec![0, 2, 1, 3]);
        assert_eq!(double(&SignedPermutation::identity(2)), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn breakpoint_graph_cycle_counts() {
        for n in 0..6 {
            let prof = breakpoint_graph(&SignedPermutation::identity(n)).cycle_profile();
            assert_eq!(prof.c(), n + 1);
            assert!(prof.lengths().iter().all(|&l| l == 1));
        }
        assert_eq!(breakpoint_graph(&p(&[-5, 1, 2, 4, -7, -3, 6])).cycle_profile().c(), 2);
        // ⟨2 1⟩ doubles to 0 3 4 1 2 5: black {0,3},{4,1},{2,5}; walk
        // 0-3-2-5-4-1-0 uses all three black edges.
        let prof = breakpoint_graph(&p(&[2, 1])).cycle_profile();
        assert_eq!(prof.lengths(), &[3]);
    }

    #[test]
    fn cycle_profile_examples() {
        let prof = breakpoint_graph(&SignedPermutation::identity(3)).cycle_profile();
        assert_eq!((prof.lengths(), prof.c(), prof.c_odd(), prof.c_1()), (&[1usize, 1, 1, 1][..], 4, 4, 4));
        let prof = breakpoint_graph(&p(&[-1])).cycle_profile();
        assert_eq!((prof.lengths(), prof.c(), prof.c_odd(), prof.c_1()), (&[2usize][..], 1, 0, 0));
    }

    #[test]
    fn complement_examples() {
        let bg = breakpoint_graph(&p(&[-5, 1, 2, 4, -7, -3, 6]));
        assert!(bg.config().complement().is_hamiltonian());
        assert!(non_hamiltonian_example().complement().cycle_count() >= 2);
        for n in 0..5 {
            let comp = breakpoint_graph(&SignedPermutation::identity(n)).config().complement();
            assert_eq!(comp.cycle_lengths(), vec![n + 1]);
        }
    }

    #[test]
    fn validity_examples() {
        assert!(!non_hamiltonian_example().is_valid_breakpoint_graph());
        let bad = Configuration::from_black_edges(1, &[(0, 3), (1, 2)]).unwrap();
        assert!(!bad.is_valid_breakpoint_graph());
        assert_eq!(bad.complement().cycle_count(), 2);
        assert_eq!(bad.recover_permutation(), Err(Error::NotHamiltonian { cycles: 2 }));
        let neg = Configuration::from_black_edges(1, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(neg.recover_permutation().unwrap(), p(&[-1]));
        assert!(matches!(non_hamiltonian_example().recover_permutation(), Err(Error::NotHamiltonian { .. })));
    }

    #[test]
    fn round_trip_all_signed_up_to_5() {
        let mut scratch = ProfileScratch::new();
        let mut lengths = Vec::new();
        for n in 0..=5 {
            for pi in PermutationRange::full(n, true) {
                let bg = breakpoint_graph(&pi);
                assert!(bg.config().is_valid_breakpoint_graph());
                assert_eq!(bg.config().recover_permutation().unwrap(), pi);
                let prof = bg.cycle_profile();
                assert_eq!(prof.lengths().iter().sum::<usize>(), n + 1);
                assert!((1..=n + 1).contains(&prof.c()));
                scratch.cycle_lengths(pi.images(), &mut lengths);
                assert_eq!(CycleProfile::new(lengths.clone()), prof);
            }
        }
    }

    #[test]
    fn matching_enumeration() {
        let all: Vec<_> = enumerate_matchings(2, false).unwrap().collect();
        assert_eq!(all.len(), 3);
        assert_eq!(all[0].edges(), vec![(0, 1), (2, 3)]);
        for m in 1..=6 {
            let all: Vec<_> = enumerate_matchings(m, false).unwrap().collect();
            let expect: usize = (1..=m).map(|i| 2 * i - 1).product();
            assert_eq!(all.len(), expect);
            let mut dedup = all.clone();
            dedup.sort_by(|a, b| a.partners().cmp(b.partners()));
            dedup.dedup();
            assert_eq!(dedup.len(), expect);
            let branches: Vec<_> = (1..2 * m)
                .flat_map(|w| enumerate_matchings_branch(m, w, false).unwrap())
                .collect();
            assert_eq!(branches, all);
        }
        assert!(enumerate_matchings(9, false).is_err());
        assert!(enumerate_matchings(0, false).is_err());
    }

    #[test]
    fn mu_maps_grey_to_identity() {
        let n = 4;
        let mu = mu_relabeling(n);
        assert_eq!(mu, vec![0, 5, 1, 6, 2, 7, 3, 8, 4, 9]);
        let grey = PerfectMatching::grey(n + 1);
        let shifted = PerfectMatching::shifted_grey(n + 1);
        assert_eq!(grey.conjugate(&mu).unwrap(), PerfectMatching::identity(n + 1));
        let delta = shifted.conjugate(&mu).unwrap();
        assert_eq!(union_cycle_count(&PerfectMatching::identity(n + 1), &delta), 1);
        assert_eq!(union_cycle_count(&grey, &shifted), 1);
    }

    #[test]
    fn conjugation_preserves_union_cycles() {
        // small deterministic LCG so the test stays reproducible
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move |bound: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % bound as u64) as usize
        };
        for m in 1..=6 {
            let all: Vec<_> = enumerate_matchings(m, false).unwrap().collect();
            for _ in 0..20 {
                let a = &all[next(all.len())];
                let b = &all[next(all.len())];
                let mut relabel: Vec<usize> = (0..2 * m).collect();
                for i in (1..relabel.len()).rev() {
                    relabel.swap(i, next(i + 1));
                }
                let (ca, cb) = (a.conjugate(&relabel).unwrap(), b.conjugate(&relabel).unwrap());
                let mut l1 = union_cycle_lengths(a, b);
                let mut l2 = union_cycle_lengths(&ca, &cb);
                l1.sort();
                l2.sort();
                assert_eq!(l1, l2);
            }
        }
    }

    #[test]
    fn edge_list_format() {
        let bg = breakpoint_graph(&p(&[-1]));
        assert_eq!(bg.config().to_edge_list(), "B 0 2\nB 1 3\nG 0 1\nG 2 3\n");
    }

    #[test]
    fn bad_matchings_rejected() {
        assert!(PerfectMatching::new(vec![1, 0, 2]).is_err());
        assert!(PerfectMatching::new(vec![0, 1]).is_err());
        assert!(PerfectMatching::from_edges(4, &[(0, 1), (1, 2)]).is_err());
        assert!(Configuration::from_black_edges(2, &[(0, 1), (2, 3)]).is_err());
    }
}
