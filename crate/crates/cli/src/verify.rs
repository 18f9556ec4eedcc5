//! Self-check suites run by `hultman verify`.

use std::fmt::Write as _;

use clap::ValueEnum;
use hultman::bpgraph::{breakpoint_graph, mu_relabeling, union_cycle_count, PerfectMatching};
use hultman::census::{
    group_size, hultman_census, matching_census, moments_from_table, odd_hultman_census, signed_hultman_census,
};
use hultman::distances::{bfs_distances, distance_distribution};
use hultman::exactmath::{format_rational, rational_to_f64};
use hultman::hultman::{
    hultman_new_formula_row, hultman_row, r_abs_sum, r_abs_sum_bound, signed_gf, signed_hultman,
    signed_hultman_row, signed_hultman_special, signed_mean, sury_identity_check, unsigned_gf, unsigned_moments,
    signed_moments,
};
use hultman::perm::{count_factorizations, PermutationRange, FACTORIZATION_LIMIT};
use hultman::reference::signed_hultman_reference;
use hultman::{CensusOptions, ExactInt, GeneratorSet, Metric, MomentPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Table1,
    Formulas,
    Lemmas,
    Bounds,
    Moments,
}

impl Suite {
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Table1 => 11,
            Suite::Formulas => 9,
            Suite::Lemmas => 5,
            Suite::Bounds => 6,
            Suite::Moments => 7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Formulas => "formulas",
            Suite::Lemmas => "lemmas",
            Suite::Bounds => "bounds",
            Suite::Moments => "moments",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { label: label.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, suite: Suite) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "{status} {}", c.label);
            } else {
                let _ = writeln!(out, "{status} {} ({})", c.label, c.detail);
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "{}: {} passed, {} failed", suite.name(), self.checks.len() - failed, failed);
        out
    }
}

fn first_mismatch(expected: &[ExactInt], got: &[ExactInt]) -> String {
    if expected.len() != got.len() {
        return format!("length {} vs {}", expected.len(), got.len());
    }
    match expected.iter().zip(got).position(|(a, b)| a != b) {
        Some(k) => format!("index {k}: expected {}, got {}", expected[k], got[k]),
        None => String::new(),
    }
}

fn row_of(table: &hultman::DistributionTable, len: usize) -> Vec<ExactInt> {
    (0..len as i64).map(|k| table.get(k)).collect()
}

pub fn run_suite(suite: Suite, max_n: Option<usize>, jobs: usize) -> Result<Report, hultman::Error> {
    let max_n = max_n.unwrap_or(suite.default_max_n());
    let opts = CensusOptions::with_jobs(jobs);
    let mut r = Report::default();
    match suite {
        Suite::Table1 => table1(&mut r, max_n),
        Suite::Formulas => formulas(&mut r, max_n, opts)?,
        Suite::Lemmas => lemmas(&mut r, max_n, opts)?,
        Suite::Bounds => bounds(&mut r, max_n, opts)?,
        Suite::Moments => moments(&mut r, max_n, opts)?,
    }
    Ok(r)
}

fn table1(r: &mut Report, max_n: usize) {
    let reference = signed_hultman_reference();
    let mut matched = 0;
    for n in 1..=max_n.min(11) {
        let row = signed_hultman_row(n);
        let mut bad = Vec::new();
        for (_, k, expected) in reference.iter().filter(|(m, _, _)| *m == n) {
            let per_entry = signed_hultman(n, *k as i64);
            if &row[*k] == expected && &per_entry == expected {
                matched += 1;
            } else {
                bad.push(format!("k={k}: expected {expected}, got {} / {per_entry}", row[*k]));
            }
        }
        r.check(format!("signed Hultman row n={n} equals the reference values"), bad.is_empty(), bad.join("; "));
    }
    let expected = reference.iter().filter(|(n, _, _)| *n <= max_n).count();
    r.check(
        format!("{matched} of {expected} reference values reproduced"),
        matched == expected,
        String::new(),
    );
}

fn formulas(r: &mut Report, max_n: usize, opts: CensusOptions) -> Result<(), hultman::Error> {
    for n in 0..=max_n {
        let census = hultman_census(n, opts)?;
        let got = row_of(&census, n + 2);
        let closed = hultman_row(n);
        let alt = hultman_new_formula_row(n);
        let detail = format!("{}{}", first_mismatch(&closed, &got), first_mismatch(&alt, &got));
        r.check(format!("unsigned census equals both closed forms, n={n}"), detail.is_empty(), detail);
    }
    for n in 0..=max_n.min(7) {
        let census = signed_hultman_census(n, opts)?;
        let got = row_of(&census, n + 2);
        let detail = first_mismatch(&signed_hultman_row(n), &got);
        r.check(format!("signed census equals the hook-partition formula, n={n}"), detail.is_empty(), detail);
    }
    for n in 1..=max_n {
        let row = signed_hultman_row(n);
        let ok = [n - 1, n, n + 1]
            .into_iter()
            .filter(|&k| k >= 1)
            .all(|k| signed_hultman_special(n, k).is_ok_and(|v| v == row[k]));
        r.check(format!("signed special cases k=n+1, n, n-1 agree, n={n}"), ok, String::new());
    }
    for n in 1..=max_n.min(8) {
        let t = odd_hultman_census(n, opts)?;
        let parity = t.counts().keys().all(|k| (k - n as i64 - 1) % 2 == 0);
        let total = t.total() == group_size(n, false);
        r.check(format!("odd-cycle census totals n! with fixed parity, n={n}"), parity && total, String::new());
    }
    for n in 1..=max_n.min(FACTORIZATION_LIMIT) {
        let row = hultman_row(n);
        let mut bad = Vec::new();
        for (k, expected) in row.iter().enumerate().skip(1) {
            let got = count_factorizations(n, k, false)?;
            if &got != expected {
                bad.push(format!("k={k}: expected {expected}, got {got}"));
            }
        }
        r.check(format!("long-cycle factorisation counts equal S_H(n, k), n={n}"), bad.is_empty(), bad.join("; "));
    }
    Ok(())
}

fn lemmas(r: &mut Report, max_n: usize, opts: CensusOptions) -> Result<(), hultman::Error> {
    for n in 0..=max_n {
        let mut failures = 0u64;
        for pi in PermutationRange::full(n, true) {
            let bg = breakpoint_graph(&pi);
            let ok = bg.config().is_valid_breakpoint_graph()
                && bg.config().recover_permutation().is_ok_and(|back| back == pi);
            failures += u64::from(!ok);
        }
        r.check(
            format!("every signed permutation's graph has a hamiltonian complement and round-trips, n={n}"),
            failures == 0,
            if failures == 0 { String::new() } else { format!("{failures} failures") },
        );
    }
    for n in 0..=max_n {
        let mc = matching_census(n, opts)?;
        let slice = mc.slice(1);
        let detail = first_mismatch(&signed_hultman_row(n), &row_of(&slice, n + 2));
        r.check(format!("hamiltonian-complement matchings reproduce the signed row, n={n}"), detail.is_empty(), detail);
        r.check(
            format!("hamiltonian-complement matchings number 2^n n!, n={n}"),
            slice.total() == group_size(n, true),
            format!("{}", slice.total()),
        );
    }
    for n in 0..=max_n {
        let mu = mu_relabeling(n);
        let m = n + 1;
        let grey = PerfectMatching::grey(m).conjugate(&mu)?;
        let shifted = PerfectMatching::shifted_grey(m).conjugate(&mu)?;
        let ok = grey == PerfectMatching::identity(m) && union_cycle_count(&grey, &shifted) == 1;
        r.check(format!("relabeling sends the grey matching to the identity matching, n={n}"), ok, String::new());
    }
    Ok(())
}

fn dominated(metric: Metric, g: GeneratorSet, n: usize, opts: CensusOptions) -> Result<(bool, u64, u64), hultman::Error> {
    let map = bfs_distances(n, g, opts)?;
    let mut ok = true;
    let mut equal = 0u64;
    let mut total = 0u64;
    for (rank, pi) in PermutationRange::full(n, g.is_signed()).iter().enumerate() {
        let bound = metric.report(&pi)?.value;
        let exact = map.by_rank()[rank] as usize;
        ok &= bound <= exact;
        equal += u64::from(bound == exact);
        total += 1;
    }
    Ok((ok, equal, total))
}

fn bounds(r: &mut Report, max_n: usize, opts: CensusOptions) -> Result<(), hultman::Error> {
    for n in 0..=max_n.min(8) {
        let t = distance_distribution(n, Metric::Bid, opts)?;
        let census = hultman_census(n, opts)?;
        let shifted = census.remap("bid", |c| (n as i64 + 1 - c) / 2);
        r.check(format!("bid distribution equals the shifted unsigned census, n={n}"), t == shifted, String::new());
    }
    for n in 0..=max_n.min(7) {
        let t = distance_distribution(n, Metric::Dcj, opts)?;
        let census = signed_hultman_census(n, opts)?;
        let shifted = census.remap("dcj", |c| n as i64 + 1 - c);
        r.check(format!("dcj distribution equals the shifted signed census, n={n}"), t == shifted, String::new());
    }
    let cases = [
        (Metric::SrdLower, GeneratorSet::SignedReversal, max_n.min(6)),
        (Metric::TdLower, GeneratorSet::Transposition, max_n.min(7)),
        (Metric::Bid, GeneratorSet::Transposition, max_n.min(7)),
        (Metric::PtdLower, GeneratorSet::PrefixTransposition, max_n.min(6)),
        (Metric::PsrdLower, GeneratorSet::PrefixSignedReversal, max_n.min(5)),
    ];
    for (metric, g, top) in cases {
        for n in 1..=top {
            let (ok, equal, total) = dominated(metric, g, n, opts)?;
            r.check(
                format!("{metric} never exceeds the exact {g} distance, n={n}"),
                ok,
                format!("equal on {equal}/{total}"),
            );
            if metric == Metric::SrdLower && n == 6 {
                let fraction = equal as f64 / total as f64;
                r.check(
                    "srd_lower is exact on more than 90% of signed permutations, n=6",
                    fraction > 0.9,
                    format!("{fraction:.4}"),
                );
            }
        }
    }
    for g in GeneratorSet::ALL {
        let n = max_n.min(if g.is_signed() { 5 } else { 6 });
        let levels = bfs_distances(n, g, opts)?.level_sizes();
        let sum: u64 = levels.iter().sum();
        let expected = group_size(n, g.is_signed());
        r.check(
            format!("{g} BFS levels sum to the group order, n={n}"),
            ExactInt::from(sum) == expected && levels[0] == 1,
            format!("levels {levels:?}"),
        );
    }
    Ok(())
}

fn show(m: &MomentPair) -> String {
    format!("{} / {}", format_rational(&m.mean), format_rational(&m.variance))
}

fn moments(r: &mut Report, max_n: usize, opts: CensusOptions) -> Result<(), hultman::Error> {
    for n in 0..=max_n {
        let closed = unsigned_moments(n);
        let census = moments_from_table(&hultman_census(n, opts)?, &group_size(n, false))?;
        let gf = MomentPair::from_generating_function(&unsigned_gf(n));
        r.check(
            format!("unsigned mean and variance equal the census moments, n={n}"),
            closed == census && closed == gf,
            show(&closed),
        );
    }
    for n in 0..=max_n.min(7) {
        let closed = signed_moments(n);
        let census = moments_from_table(&signed_hultman_census(n, opts)?, &group_size(n, true))?;
        let gf = MomentPair::from_generating_function(&signed_gf(n));
        r.check(
            format!("signed mean and variance equal the census moments, n={n}"),
            closed == census && closed == gf,
            show(&closed),
        );
    }
    let mut sury_ok = true;
    for n in 0..=50 {
        let (lhs, rhs) = sury_identity_check(n);
        sury_ok &= lhs == rhs;
    }
    r.check("alternating reciprocal binomial sum identity, 0 <= n <= 50", sury_ok, String::new());
    let mut bound_ok = true;
    for n in 1..=30 {
        bound_ok &= r_abs_sum(n) <= r_abs_sum_bound(n);
    }
    r.check("sum of |r_n(a, b)| within 2(1 - 2^-n)/(n + 2), n <= 30", bound_ok, String::new());
    let n = 1000;
    let gamma = 0.577_215_664_901_532_9_f64;
    let unsigned = rational_to_f64(&unsigned_moments(n).mean);
    let signed = rational_to_f64(&signed_mean(n));
    let ln = (n as f64).ln();
    let du = (unsigned - (ln + gamma)).abs();
    let ds = (signed - (ln / 2.0 + gamma / 2.0 + std::f64::consts::LN_2)).abs();
    r.check("unsigned mean within 0.05 of ln n + gamma, n=1000", du < 0.05, format!("gap {du:.6}"));
    r.check("signed mean within 0.05 of ln(n)/2 + gamma/2 + ln 2, n=1000", ds < 0.05, format!("gap {ds:.6}"));
    Ok(())
}
