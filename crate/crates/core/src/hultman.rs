//! Closed forms for unsigned and signed Hultman numbers, their generating
//! functions, and exact means and variances of the breakpoint-graph cycle
//! count.
//!
//! The signed formula sums over hook partitions `λ = (a, b, 1^{n-a-b+1})` of
//! `n + 1`. Every quantity indexed by a partition (`F_λ`, `c_λ(2)`) is
//! evaluated with the partition size `n + 1`, so callers always pass the
//! permutation size `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    as_integer, binomial, exact_div, factorial, harmonic, harmonic_squares, harmonic_table, pow2,
    rising_factorial_poly, shifted_falling_factorial_poly, stirling_first, falling_factorial_poly,
};
use crate::{IntPolynomial, RationalPolynomial};

/// A hook partition `(a, b, 1^{n-a-b+1})` of `n + 1`, or the single row
/// `(n + 1)` when `b = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HookPartition {
    a: usize,
    b: usize,
    n: usize,
}

impl HookPartition {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        let hook = b >= 1 && a >= b && a + b <= n + 1;
        let row = a == n + 1 && b == 0;
        if !(hook || row) {
            return Err(Error::InvalidPartition { a, b, total: n + 1 });
        }
        Ok(HookPartition { a, b, n })
    }

    /// Every contributing partition: `b` ascending, then `a` ascending, with
    /// the single row last.
    pub fn all(n: usize) -> Vec<HookPartition> {
        let mut out = Vec::new();
        for b in 1..=(n + 1) / 2 {
            for a in b..=n + 1 - b {
                out.push(HookPartition { a, b, n });
            }
        }
        out.push(HookPartition { a: n + 1, b: 0, n });
        out
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_single_row(&self) -> bool {
        self.b == 0
    }

    /// Non-zero parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<usize> {
        if self.is_single_row() {
            return vec![self.a];
        }
        let mut parts = vec![self.a, self.b];
        parts.extend(std::iter::repeat_n(1, self.n + 1 - self.a - self.b));
        parts
    }
}

fn sign(odd: bool) -> BigInt {
    if odd { -BigInt::one() } else { BigInt::one() }
}

fn fact(n: usize) -> BigInt {
    factorial(n as u64)
}

/// `F_λ(x) = 2^{a-b} (x/2 + a - 1)^{falling a-b} (x + 2b - 2)^{falling n+1-a+b}`,
/// built as `(x+2a-2)(x+2a-4)...(x+2b)` times the falling part so every
/// intermediate coefficient stays integral.
pub fn f_lambda_poly(lambda: &HookPartition) -> IntPolynomial {
    let HookPartition { a, b, n } = *lambda;
    let halved = (b..a).fold(IntPolynomial::one(), |p, j| p.times_x_plus(&BigInt::from(2 * j)));
    let falling = shifted_falling_factorial_poly::<BigInt>(2 * b as i64 - 2, n + 1 - a + b);
    &halved * &falling
}

/// Coefficient of `x` in `F_λ`, i.e. `F'_λ(0)`, in closed form.
pub fn f_lambda_linear_coeff(lambda: &HookPartition) -> BigInt {
    let HookPartition { a, b, n } = *lambda;
    if lambda.is_single_row() {
        return pow2(n as u64) * fact(n);
    }
    let m = n + 2 - a - b;
    // (-1)^{n-a-b}; n + a + b has the same parity and cannot underflow
    let num = sign((n + a + b) % 2 == 1)
        * pow2((a - b) as u64)
        * fact(a - 1)
        * fact(2 * b - 2)
        * fact(m);
    exact_div(&num, &fact(b - 1), "F'_λ(0)")
}

/// `c_λ(2)` evaluated at partition size `n + 1`.
pub fn c_lambda(lambda: &HookPartition) -> BigRational {
    let HookPartition { a, b, n } = *lambda;
    let size = n + 1;
    if lambda.is_single_row() {
        return BigRational::new(pow2(size as u64) * fact(size), fact(2 * size));
    }
    let num = sign((size + a - b + 1) % 2 == 1)
        * pow2((a - b + 1) as u64)
        * BigInt::from(size)
        * BigInt::from(2 * (a - b) + 1)
        * fact(a - 1);
    let den = BigInt::from((size + a - b + 1) * (size + a - b))
        * BigInt::from((size + b - a) * (size + b - a - 1))
        * fact(size - a - b)
        * fact(2 * a - 1)
        * fact(b - 1);
    BigRational::new(num, den)
}

/// Number of permutations of `n` elements whose breakpoint graph has `k`
/// cycles, via the Stirling-number closed form.
pub fn hultman_bona_flynn(n: usize, k: i64) -> BigInt {
    if k < 1 || k > n as i64 + 1 || (n as i64 - k) % 2 == 0 {
        return BigInt::zero();
    }
    exact_div(&stirling_first(n + 2, k), &binomial(n as u64 + 2, 2), "unsigned Hultman number")
}

/// `S_H(n, k)` for `k = 0..=n+1` (index `k`).
pub fn hultman_row(n: usize) -> Vec<BigInt> {
    (0..=n as i64 + 1).map(|k| hultman_bona_flynn(n, k)).collect()
}

/// `(1/(n+1)) Σ_{i=1}^{n+1} (h + n - i + 1)^{falling n+1}` as a polynomial in `h`.
fn factorisation_sum_poly(n: usize) -> IntPolynomial {
    let sum = (1..=n + 1).fold(IntPolynomial::zero(), |acc, i| {
        &acc + &shifted_falling_factorial_poly::<BigInt>((n + 1 - i) as i64, n + 1)
    });
    let d = BigInt::from(n + 1);
    sum.map(|c| exact_div(c, &d, "factorisation sum"))
}

/// `S_H(n, k)` through the sum of shifted falling factorials.
pub fn hultman_new_formula(n: usize, k: i64) -> BigInt {
    if k < 1 || k > n as i64 + 1 {
        return BigInt::zero();
    }
    factorisation_sum_poly(n).coeff(k as usize)
}

/// [`hultman_new_formula`] for every `k = 0..=n+1` at once.
pub fn hultman_new_formula_row(n: usize) -> Vec<BigInt> {
    let poly = factorisation_sum_poly(n);
    (0..=n + 1).map(|k| if k == 0 { BigInt::zero() } else { poly.coeff(k) }).collect()
}

/// Signed Hultman number `S_H^±(n, k)`: the hook-partition sum, extracting
/// the `x^k` coefficient of each `F_λ`.
pub fn signed_hultman(n: usize, k: i64) -> BigInt {
    if k < 1 || k > n as i64 + 1 {
        return BigInt::zero();
    }
    let k = k as usize;
    let total = HookPartition::all(n).iter().fold(BigRational::zero(), |acc, lambda| {
        let coeff = f_lambda_poly(lambda).coeff(k);
        if coeff.is_zero() {
            return acc;
        }
        acc + c_lambda(lambda) * BigRational::from_integer(coeff * f_lambda_linear_coeff(lambda))
    });
    as_integer(&total).unwrap_or_else(|| panic!("signed Hultman sum is not integral: {total}"))
}

/// `S_H^±(n, k)` for `k = 0..=n+1` (index `k`), read off the generating function.
pub fn signed_hultman_row(n: usize) -> Vec<BigInt> {
    let g = signed_gf(n);
    (0..=n + 1).map(|k| g.coeff(k)).collect()
}

/// Closed forms for `k ∈ {n+1, n, n-1}`.
pub fn signed_hultman_special(n: usize, k: usize) -> Result<BigInt> {
    let m = n as u64 + 1;
    match k {
        k if k == n + 1 => Ok(BigInt::one()),
        k if k == n && n >= 1 => Ok(binomial(m, 2)),
        k if k + 1 == n => Ok(binomial(m, 4) * 5 + binomial(m, 3) * 4),
        _ => Err(Error::OutOfDomain(format!("no special-case formula for S_H^±({n}, {k})"))),
    }
}

/// `F(x) = (x^{rising n+2} − x^{falling n+2}) / (2 C(n+2, 2))`.
pub fn unsigned_gf(n: usize) -> IntPolynomial {
    let diff = &rising_factorial_poly::<BigInt>(n + 2) - &falling_factorial_poly::<BigInt>(n + 2);
    let d = binomial(n as u64 + 2, 2) * 2;
    diff.map(|c| exact_div(c, &d, "unsigned generating function"))
}

/// `(F(1), F'(1), F''(1))` from their closed forms, independent of any
/// polynomial arithmetic.
pub fn unsigned_gf_derivatives(n: usize) -> [BigRational; 3] {
    let n64 = n as u64;
    let d = BigRational::from_integer(binomial(n64 + 2, 2) * 2);
    let big = BigRational::from_integer(factorial(n64 + 2));
    let small = BigRational::from_integer(factorial(n64));
    let h2 = harmonic(n64 + 2);
    let f1 = small.clone();
    let f1p = (&big * &h2 + BigRational::from_integer(sign(n % 2 == 0)) * &small) / &d;
    let f2p = (&big * (&h2 * &h2 - harmonic_squares(n64 + 2))
        + BigRational::from_integer(sign(n % 2 == 1) * 2) * &small * (harmonic(n64) - BigRational::one()))
        / &d;
    [f1, f1p, f2p]
}

/// `G(x) = Σ_λ c_λ(2) F_λ(x) F'_λ(0)`; the coefficient of `x^k` is `S_H^±(n, k)`.
pub fn signed_gf(n: usize) -> IntPolynomial {
    let g = HookPartition::all(n).iter().fold(RationalPolynomial::zero(), |acc, lambda| {
        let weight = c_lambda(lambda) * BigRational::from_integer(f_lambda_linear_coeff(lambda));
        let term = f_lambda_poly(lambda).map(|c| BigRational::from_integer(c.clone()) * &weight);
        &acc + &term
    });
    g.map(|c| as_integer(c).unwrap_or_else(|| panic!("signed generating function has coefficient {c}")))
}

/// Exact mean and variance of a cycle-count distribution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentPair {
    pub mean: BigRational,
    pub variance: BigRational,
}

impl MomentPair {
    /// Moments of the distribution with probability generating polynomial
    /// `p / p(1)`: mean `p'(1)/p(1)`, variance `p'(1)/p(1) + p''(1)/p(1) − mean²`.
    pub fn from_generating_function(p: &IntPolynomial) -> MomentPair {
        let one = BigInt::one();
        let total = p.evaluate(&one);
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let mean = BigRational::new(d1.evaluate(&one), total.clone());
        let second = BigRational::new(d2.evaluate(&one), total);
        let variance = &mean + second - &mean * &mean;
        MomentPair { mean, variance }
    }
}

/// Mean `H_n + 1/⌊(n+2)/2⌋` and the matching closed-form variance.
pub fn unsigned_moments(n: usize) -> MomentPair {
    let n64 = n as u64;
    let mean = harmonic(n64) + BigRational::new(BigInt::one(), BigInt::from((n + 2) / 2));
    let p = BigInt::from((n + 1) * (n + 2));
    let h2 = harmonic(n64 + 2);
    let variance = &h2 - harmonic_squares(n64 + 2)
        + BigRational::new(BigInt::one(), p.clone())
            * BigRational::from_integer(sign(n % 2 == 1))
            * (&h2 * BigInt::from(2) + harmonic(n64) * BigInt::from(2) - BigInt::from(3))
        - BigRational::new(BigInt::one(), &p * &p);
    MomentPair { mean, variance }
}

fn check_pair(n: usize, a: usize, b: usize) -> Result<()> {
    if b >= 1 && a >= b && a + b <= n + 1 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("({a}, {b}) is not in A_{n}")))
    }
}

/// `r_n(a, b)` for `a ≥ b ≥ 1`, `a + b ≤ n + 1`, from its closed form.
pub fn r_coefficient(n: usize, a: usize, b: usize) -> Result<BigRational> {
    check_pair(n, a, b)?;
    let num = sign((n + a - b) % 2 == 1)
        * BigInt::from(n + 1)
        * BigInt::from(2 * (a - b) + 1)
        * fact(a - 1)
        * fact(2 * b - 2)
        * fact(n + 2 - a - b);
    let den = pow2((n + b - a - 1) as u64)
        * fact(n)
        * fact(b - 1)
        * BigInt::from((n + a - b + 2) * (n + a - b + 1))
        * BigInt::from((n + b - a + 1) * (n + b - a));
    Ok(BigRational::new(num, den))
}

/// Index set `A_n = {(a, b): a ≥ b ≥ 1, a + b ≤ n + 1}` in `b`-then-`a` order.
pub fn a_set(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=(n + 1) / 2).flat_map(move |b| (b..=n + 1 - b).map(move |a| (a, b)))
}

// Σ_{A_n} r_n(a,b) grouped by k = a - b: each group is a rational prefactor
// times an integer inner sum whose terms follow by small-integer ratios.
// Returns (signed sum, sum of absolute values).
fn r_sums_grouped(n: usize) -> (BigRational, BigRational) {
    let mut signed = BigRational::zero();
    let mut absolute = BigRational::zero();
    for k in 0..n {
        let bmax = (n - k + 1) / 2;
        if bmax == 0 {
            continue;
        }
        // b = 1 term: k! (n-k)!
        let mut term = fact(k) * fact(n - k);
        let mut inner = term.clone();
        for b in 1..bmax {
            term *= (k + b) * 2 * b * (2 * b - 1);
            let den = BigInt::from(b * (n - k - 2 * b + 2) * (n - k - 2 * b + 1));
            term = exact_div(&term, &den, "r-sum inner term");
            inner += &term;
        }
        let num = BigInt::from(n + 1) * BigInt::from(2 * k + 1) * inner;
        let den = pow2((n - k - 1) as u64)
            * fact(n)
            * BigInt::from((n + k + 2) * (n + k + 1))
            * BigInt::from((n - k + 1) * (n - k));
        let value = BigRational::new(num, den);
        absolute += &value;
        if (n + k) % 2 == 1 {
            signed -= value;
        } else {
            signed += value;
        }
    }
    (signed, absolute)
}

/// `Σ_{A_n} r_n(a, b)`.
pub fn r_sum(n: usize) -> BigRational {
    r_sums_grouped(n).0
}

/// `Σ_{A_n} |r_n(a, b)|`.
pub fn r_abs_sum(n: usize) -> BigRational {
    r_sums_grouped(n).1
}

/// `2 (1 − 2^{-n}) / (n + 2)`, the upper bound on [`r_abs_sum`].
pub fn r_abs_sum_bound(n: usize) -> BigRational {
    let p = pow2(n as u64);
    BigRational::new((&p - BigInt::one()) * 2, p * BigInt::from(n + 2))
}

/// Mean number of breakpoint-graph cycles of a uniform signed permutation:
/// `H_{2n+1} − H_n/2 − Σ_{A_n} r_n(a, b)`.
pub fn signed_mean(n: usize) -> BigRational {
    let n64 = n as u64;
    harmonic(2 * n64 + 1) - harmonic(n64) / BigInt::from(2) - r_sum(n)
}

/// Exact mean and variance for signed permutations.
pub fn signed_moments(n: usize) -> MomentPair {
    let n64 = n as u64;
    let h = harmonic_table(2 * n64 + 1);
    let base = &h[2 * n + 1] - &h[n] / BigInt::from(2);
    let odd_squares = (0..=n64).fold(BigRational::zero(), |acc, k| {
        acc + BigRational::new(BigInt::one(), BigInt::from(2 * k + 1).pow(2))
    });
    let mut r_total = BigRational::zero();
    let mut weighted = BigRational::zero();
    let constant = &h[2 * n + 1] * BigInt::from(2) - &h[n] - BigRational::one();
    for (a, b) in a_set(n) {
        let r = r_coefficient(n, a, b).expect("pair drawn from A_n");
        let brace = &constant - &h[2 * a - 1] * BigInt::from(2) + &h[n + 1 - a - b] * BigInt::from(2)
            + &h[a - 1]
            - &h[b - 1];
        weighted += &r * brace;
        r_total += r;
    }
    let mean = &base - &r_total;
    let variance = &base - odd_squares - &r_total * &r_total + weighted;
    MomentPair { mean, variance }
}

/// Both sides of `Σ_{i=0}^{n} (−1)^i / C(n, i) = (1 + (−1)^n)(n + 1)/(n + 2)`.
pub fn sury_identity_check(n: usize) -> (BigRational, BigRational) {
    let lhs = (0..=n as i64).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(sign(i % 2 == 1), binomial(n as u64, i))
    });
    let rhs = if n % 2 == 0 {
        BigRational::new(BigInt::from(2 * (n + 1)), BigInt::from(n + 2))
    } else {
        BigRational::zero()
    };
    (lhs, rhs)
}

/// True when every entry of the rational is non-negative; used by tests on
/// variances.
pub fn is_nonnegative(q: &BigRational) -> bool {
    !q.is_negative()
}

/// `S_H(n, 1)` closed form `2 n!/(n + 2)` for even `n`, zero for odd `n`.
pub fn hultman_single_cycle(n: usize) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let (q, r) = (factorial(n as u64) * BigInt::from(2)).div_rem(&BigInt::from(n + 2));
    assert!(r.is_zero(), "2 n!/(n+2) must be integral for even n");
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bpgraph::ProfileScratch;
    use crate::exactmath::rational;
    use crate::perm::PermutationRange;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    // Exhaustive oracle: histogram of c(BG(π)) over the whole group.
    fn brute_row(n: usize, signed: bool) -> Vec<i64> {
        let mut row = vec![0i64; n + 2];
        let mut scratch = ProfileScratch::new();
        let mut lengths = Vec::new();
        PermutationRange::full(n, signed).for_each_images(|im| {
            scratch.cycle_lengths(im, &mut lengths);
            row[lengths.len()] += 1;
        });
        row
    }

    #[test]
    fn bona_flynn_examples() {
        assert_eq!(brute_row(2, false), vec![0, 1, 0, 1]);
        assert_eq!(hultman_bona_flynn(2, 1), int(1));
        assert_eq!(brute_row(3, false)[2], 5);
        assert_eq!(hultman_bona_flynn(3, 2), int(5));
        assert!(hultman_bona_flynn(4, 2).is_zero());
        assert!(hultman_bona_flynn(4, 0).is_zero());
        assert!(hultman_bona_flynn(4, 6).is_zero());
    }

    #[test]
    fn new_formula_examples() {
        assert_eq!(hultman_new_formula(2, 3), int(1));
        assert_eq!(hultman_new_formula(3, 2), int(5));
        assert_eq!(hultman_new_formula(0, 1), int(1));
    }

    #[test]
    fn unsigned_formulas_agree_with_census() {
        for n in 0..=8 {
            let brute = brute_row(n, false);
            let bf = hultman_row(n);
            let nf = hultman_new_formula_row(n);
            for k in 0..=n + 1 {
                assert_eq!(bf[k], int(brute[k]), "bona-flynn n={n} k={k}");
                assert_eq!(nf[k], int(brute[k]), "new formula n={n} k={k}");
            }
        }
    }

    #[test]
    fn f_lambda_examples() {
        let two = HookPartition::new(2, 0, 1).unwrap();
        assert_eq!(f_lambda_poly(&two).coeffs(), &[int(0), int(2), int(1)]);
        let hook = HookPartition::new(1, 1, 1).unwrap();
        assert_eq!(f_lambda_poly(&hook).coeffs(), &[int(0), int(-1), int(1)]);
        for n in 0..8 {
            let row = HookPartition::new(n + 1, 0, n).unwrap();
            let expect = (1..=n).fold(IntPolynomial::x(), |p, k| p.times_x_plus(&int(2 * k as i64)));
            assert_eq!(f_lambda_poly(&row), expect);
        }
    }

    // Direct evaluation of the defining product with rational arithmetic,
    // independent of the integer product form used by f_lambda_poly.
    fn f_lambda_rational(lambda: &HookPartition) -> RationalPolynomial {
        let (a, b, size) = (lambda.a() as i64, lambda.b() as i64, lambda.n() as i64 + 1);
        let half = rational(1, 2);
        let mut p = RationalPolynomial::constant(BigRational::from_integer(pow2((a - b) as u64)));
        for j in 0..a - b {
            // (x/2 + a - 1 - j)
            let lin = RationalPolynomial::new(vec![rational(a - 1 - j, 1), half.clone()]);
            p = &p * &lin;
        }
        for j in 0..size - a + b {
            p = p.times_x_plus(&rational(2 * b - 2 - j, 1));
        }
        p
    }

    #[test]
    fn f_lambda_matches_definition_and_linear_coeff() {
        for n in 0..=9 {
            for lambda in HookPartition::all(n) {
                let p = f_lambda_poly(&lambda);
                assert_eq!(p.map(|c| BigRational::from_integer(c.clone())), f_lambda_rational(&lambda));
                assert_eq!(p.coeff(1), f_lambda_linear_coeff(&lambda), "{lambda:?}");
                assert_eq!(p.derivative().evaluate(&BigInt::zero()), f_lambda_linear_coeff(&lambda));
            }
        }
    }

    #[test]
    fn c_lambda_examples() {
        assert_eq!(c_lambda(&HookPartition::new(1, 1, 1).unwrap()), rational(-1, 3));
        assert_eq!(c_lambda(&HookPartition::new(2, 0, 1).unwrap()), rational(1, 3));
        for n in 0..15 {
            assert!(c_lambda(&HookPartition::new(n + 1, 0, n).unwrap()).is_positive());
        }
    }

    #[test]
    fn partitions_valid_and_ordered() {
        assert!(HookPartition::new(3, 0, 3).is_err());
        assert!(HookPartition::new(1, 2, 3).is_err());
        assert!(HookPartition::new(3, 2, 3).is_err());
        let all = HookPartition::all(3);
        let pairs: Vec<_> = all.iter().map(|l| (l.a(), l.b())).collect();
        assert_eq!(pairs, vec![(1, 1), (2, 1), (3, 1), (2, 2), (4, 0)]);
        for l in &all {
            assert_eq!(l.parts().iter().sum::<usize>(), 4);
        }
    }

    #[test]
    fn signed_examples() {
        assert_eq!(signed_hultman(5, 1), int(1348));
        assert_eq!(signed_hultman(8, 3), int(2_325_740));
        assert_eq!(brute_row(1, true), vec![0, 1, 1]);
        assert_eq!(signed_hultman(1, 2), int(1));
        assert_eq!(signed_hultman(0, 1), int(1));
        assert!(signed_hultman(3, 0).is_zero());
        assert!(signed_hultman(3, 5).is_zero());
    }

    #[test]
    fn signed_formula_agrees_with_census() {
        for n in 0..=6 {
            let brute = brute_row(n, true);
            let row = signed_hultman_row(n);
            for k in 0..=n + 1 {
                assert_eq!(row[k], int(brute[k]), "n={n} k={k}");
                assert_eq!(signed_hultman(n, k as i64), int(brute[k]), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn special_cases() {
        assert_eq!(signed_hultman_special(4, 5).unwrap(), int(1));
        assert_eq!(signed_hultman_special(4, 4).unwrap(), int(10));
        assert_eq!(signed_hultman_special(4, 3).unwrap(), int(65));
        assert!(signed_hultman_special(4, 2).is_err());
        for n in 1..=12 {
            let row = signed_hultman_row(n);
            for k in [n - 1, n, n + 1] {
                if k >= 1 {
                    assert_eq!(signed_hultman_special(n, k).unwrap(), row[k], "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn generating_functions() {
        assert_eq!(unsigned_gf(1), IntPolynomial::monomial(int(1), 2));
        assert_eq!(unsigned_gf(2).coeffs(), &[int(0), int(1), int(0), int(1)]);
        for n in 0..=12 {
            assert_eq!(unsigned_gf(n).evaluate(&int(1)), factorial(n as u64));
        }
        assert_eq!(signed_gf(1).coeffs(), &[int(0), int(1), int(1)]);
        assert_eq!(signed_gf(3).coeffs(), &[int(0), int(20), int(21), int(6), int(1)]);
        for n in 0..=10 {
            assert_eq!(signed_gf(n).evaluate(&int(1)), pow2(n as u64) * factorial(n as u64));
        }
    }

    #[test]
    fn unsigned_gf_derivatives_match_closed_forms() {
        for n in 0..=15 {
            let f = unsigned_gf(n);
            let one = int(1);
            let got = [
                f.evaluate(&one),
                f.derivative().evaluate(&one),
                f.derivative().derivative().evaluate(&one),
            ];
            let closed = unsigned_gf_derivatives(n);
            for i in 0..3 {
                assert_eq!(BigRational::from_integer(got[i].clone()), closed[i], "n={n} order {i}");
            }
        }
    }

    #[test]
    fn moments_small_cases() {
        let m1 = unsigned_moments(1);
        assert_eq!((m1.mean, m1.variance), (rational(2, 1), rational(0, 1)));
        assert_eq!(unsigned_moments(2).mean, rational(2, 1));
        assert_eq!(unsigned_moments(2).mean, harmonic(2) + rational(1, 2));
        let m0 = unsigned_moments(0);
        assert_eq!((m0.mean, m0.variance), (rational(1, 1), rational(0, 1)));
        assert_eq!(r_coefficient(1, 1, 1).unwrap(), rational(-1, 6));
        assert!(r_coefficient(1, 2, 1).is_err());
        assert!(r_coefficient(3, 1, 2).is_err());
        let s1 = signed_moments(1);
        assert_eq!((s1.mean, s1.variance), (rational(3, 2), rational(1, 4)));
        let s0 = signed_moments(0);
        assert_eq!((s0.mean, s0.variance), (rational(1, 1), rational(0, 1)));
    }

    #[test]
    fn moments_match_generating_functions() {
        for n in 0..=15 {
            assert_eq!(unsigned_moments(n), MomentPair::from_generating_function(&unsigned_gf(n)), "n={n}");
            let s = signed_moments(n);
            assert_eq!(s, MomentPair::from_generating_function(&signed_gf(n)), "n={n}");
            assert_eq!(s.mean, signed_mean(n));
            assert!(is_nonnegative(&s.variance));
        }
    }

    #[test]
    fn grouped_r_sum_matches_direct() {
        for n in 1..=30 {
            let direct: BigRational = a_set(n).map(|(a, b)| r_coefficient(n, a, b).unwrap()).sum();
            let direct_abs: BigRational = a_set(n).map(|(a, b)| r_coefficient(n, a, b).unwrap().abs()).sum();
            assert_eq!(r_sum(n), direct);
            assert_eq!(r_abs_sum(n), direct_abs);
            assert!(r_abs_sum(n) <= r_abs_sum_bound(n));
        }
    }

    #[test]
    fn sury_examples() {
        assert_eq!(sury_identity_check(1), (rational(0, 1), rational(0, 1)));
        assert_eq!(sury_identity_check(2), (rational(3, 2), rational(3, 2)));
        assert_eq!(sury_identity_check(4), (rational(5, 3), rational(5, 3)));
        for n in 0..=30 {
            let (l, r) = sury_identity_check(n);
            assert_eq!(l, r);
            assert_eq!(hultman_bona_flynn(n, 1), hultman_single_cycle(n));
        }
    }
}
