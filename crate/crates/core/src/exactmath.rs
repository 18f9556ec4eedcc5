//! Exact integers, rationals and dense univariate polynomials.
//!
//! Polynomials are generic over any [`Scalar`] so the same code serves the
//! integer and rational coefficient rings (and `f64` for quick diagnostics).
//! Factorial polynomials, Stirling numbers of the first kind, harmonic sums and
//! binomials live here as well.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Coefficient ring for [`Polynomial`].
pub trait Scalar: Clone + Num + FromPrimitive + fmt::Debug {}

impl<T: Clone + Num + FromPrimitive + fmt::Debug> Scalar for T {}

fn lift<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("coefficient ring cannot represent a small integer")
}

/// Dense polynomial with coefficients in ascending degree order.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `c * x^degree`.
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Horner evaluation.
    pub fn evaluate(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * lift::<T>(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    /// Multiplies by the linear factor `(x + shift)`.
    pub fn times_x_plus(&self, shift: &T) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] = out[k + 1].clone() + c.clone();
            out[k] = out[k].clone() + c.clone() * shift.clone();
        }
        Self::new(out)
    }

    /// Converts every coefficient into another ring.
    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(&mut f).collect())
    }
}

impl<T: Scalar> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $method(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

/// `x (x+1) ... (x+n-1)`; the coefficient of `x^k` is the unsigned Stirling
/// number of the first kind.
pub fn rising_factorial_poly<T: Scalar>(n: usize) -> Polynomial<T> {
    (0..n as i64).fold(Polynomial::one(), |p, j| p.times_x_plus(&lift(j)))
}

/// `(x + offset)(x + offset - 1) ... (x + offset - length + 1)`.
pub fn shifted_falling_factorial_poly<T: Scalar>(offset: i64, length: usize) -> Polynomial<T> {
    (0..length as i64).fold(Polynomial::one(), |p, j| p.times_x_plus(&lift(offset - j)))
}

/// `x (x-1) ... (x-n+1)`.
pub fn falling_factorial_poly<T: Scalar>(n: usize) -> Polynomial<T> {
    shifted_falling_factorial_poly(0, n)
}

// Rows of the unsigned Stirling triangle, grown on demand and never mutated
// once written.
static STIRLING_ROWS: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

fn ensure_stirling_rows(n: usize) {
    if STIRLING_ROWS.read().expect("stirling table poisoned").len() > n {
        return;
    }
    let mut rows = STIRLING_ROWS.write().expect("stirling table poisoned");
    if rows.is_empty() {
        rows.push(vec![BigInt::one()]);
    }
    while rows.len() <= n {
        let m = rows.len();
        let prev = &rows[m - 1];
        let scale = BigInt::from(m - 1);
        let row: Vec<BigInt> = (0..=m)
            .map(|k| {
                let diag = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                let side = prev.get(k).map(|v| v * &scale).unwrap_or_default();
                diag + side
            })
            .collect();
        rows.push(row);
    }
}

/// Unsigned Stirling number of the first kind `[n, k]`; zero for `k < 0` or `k > n`.
pub fn stirling_first(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    ensure_stirling_rows(n);
    STIRLING_ROWS.read().expect("stirling table poisoned")[n][k as usize].clone()
}

/// The whole row `[n, 0], ..., [n, n]`.
pub fn stirling_first_row(n: usize) -> Vec<BigInt> {
    ensure_stirling_rows(n);
    STIRLING_ROWS.read().expect("stirling table poisoned")[n].clone()
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n! / (n-k)!`, i.e. the falling factorial evaluated at an integer.
pub fn falling_product(n: u64, k: u64) -> BigInt {
    assert!(k <= n, "falling product {n}^({k}) leaves the naturals");
    (n - k + 1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `H_n = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: u64) -> BigRational {
    harmonic_table(n).pop().expect("table has n+1 entries")
}

/// `H_0, H_1, ..., H_n`.
pub fn harmonic_table(n: u64) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = BigRational::zero();
    out.push(acc.clone());
    for i in 1..=n {
        acc += BigRational::new(BigInt::one(), BigInt::from(i));
        out.push(acc.clone());
    }
    out
}

/// `1 + 1/4 + ... + 1/n^2`.
pub fn harmonic_squares(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(i) * i)
    })
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Returns the integer value of `q`, or `None` if it has a denominator.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Exact quotient of two integers; panics on a remainder.
///
/// Every closed form in this crate divides exactly, so a remainder here is an
/// implementation bug rather than a recoverable condition.
pub fn exact_div(num: &BigInt, den: &BigInt, context: &str) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(num, den);
    assert!(r.is_zero(), "inexact division in {context}: {num} / {den}");
    q
}

/// Nearest `f64` to an exact rational, usable even when numerator and
/// denominator individually overflow `f64`.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale both sides down to ~60 significant bits.
    let shift = |v: &BigInt| v.bits().saturating_sub(60);
    let (num, den) = (q.numer(), q.denom());
    let (sn, sd) = (shift(num), shift(den));
    let n = (num.abs() >> sn).to_f64().unwrap_or(f64::NAN) * num.signum().to_f64().unwrap_or(1.0);
    let d = (den >> sd).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi(sn as i32 - sd as i32)
}

/// `p/q` rendering with an explicit denominator (`2/1`, `0/1`).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    type IntPoly = Polynomial<BigInt>;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    // Independent oracle: the classic triangle recurrence on i128, built
    // without the shared memo table.
    fn stirling_recurrence(n: usize, k: usize) -> i128 {
        let mut row = vec![1i128];
        for m in 1..=n {
            let mut next = vec![0i128; m + 1];
            for j in 0..=m {
                let diag = if j >= 1 { row[j - 1] } else { 0 };
                let side = if j < row.len() { (m as i128 - 1) * row[j] } else { 0 };
                next[j] = diag + side;
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    fn permutations_with_cycles(n: usize, k: usize) -> usize {
        fn heap(a: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<usize>>) {
            if m <= 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..m {
                heap(a, m - 1, out);
                if m % 2 == 0 { a.swap(i, m - 1) } else { a.swap(0, m - 1) }
            }
        }
        let mut all = Vec::new();
        heap(&mut (0..n).collect(), n, &mut all);
        all.iter()
            .filter(|p| {
                let mut seen = vec![false; n];
                let mut cycles = 0;
                for s in 0..n {
                    if !seen[s] {
                        cycles += 1;
                        let mut v = s;
                        while !seen[v] {
                            seen[v] = true;
                            v = p[v];
                        }
                    }
                }
                cycles == k
            })
            .count()
    }

    #[test]
    fn rising_factorial_small() {
        assert_eq!(rising_factorial_poly::<BigInt>(2).coeffs(), ints(&[0, 1, 1]).as_slice());
        assert_eq!(rising_factorial_poly::<BigInt>(0), IntPoly::one());
        assert_eq!(rising_factorial_poly::<BigInt>(4).coeff(2), BigInt::from(stirling_recurrence(4, 2)));
        assert_eq!(stirling_recurrence(4, 2), 11);
    }

    #[test]
    fn shifted_falling_small() {
        assert_eq!(shifted_falling_factorial_poly::<BigInt>(0, 3).coeffs(), ints(&[0, 2, -3, 1]).as_slice());
        assert_eq!(shifted_falling_factorial_poly::<BigInt>(0, 0), IntPoly::one());
        assert_eq!(shifted_falling_factorial_poly::<BigInt>(2, 2).coeffs(), ints(&[2, 3, 1]).as_slice());
    }

    #[test]
    fn stirling_values() {
        assert_eq!(permutations_with_cycles(4, 2), 11);
        assert_eq!(stirling_first(4, 2), BigInt::from(11));
        assert_eq!(stirling_first(5, 2), BigInt::from(stirling_recurrence(5, 2)));
        assert_eq!(stirling_first(5, 2), BigInt::from(50));
        for n in 0..12 {
            assert_eq!(stirling_first(n, n as i64), BigInt::one());
        }
        assert!(stirling_first(3, -1).is_zero());
        assert!(stirling_first(3, 4).is_zero());
        assert_eq!(stirling_first(0, 0), BigInt::one());
        for k in 0..=6 {
            assert_eq!(stirling_first(6, k as i64), BigInt::from(permutations_with_cycles(6, k)));
        }
    }

    #[test]
    fn factorial_polys_match_stirling_up_to_40() {
        for n in 0..=40usize {
            let rising = rising_factorial_poly::<BigInt>(n);
            let falling = falling_factorial_poly::<BigInt>(n);
            for k in 0..=n {
                let s = stirling_first(n, k as i64);
                assert_eq!(rising.coeff(k), s);
                let sign = if (n - k) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                assert_eq!(falling.coeff(k), sign * s);
            }
            if n <= 30 {
                for k in 0..=n {
                    assert_eq!(stirling_first(n, k as i64), BigInt::from(stirling_recurrence(n, k)));
                }
            }
        }
    }

    #[test]
    fn stirling_rows_sum_to_factorial() {
        for n in 0..=20u64 {
            let total: BigInt = stirling_first_row(n as usize).iter().sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn harmonic_and_binomial() {
        assert_eq!(harmonic(3), rational(11, 6));
        assert!(harmonic(0).is_zero());
        assert_eq!(harmonic_squares(2), rational(5, 4));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert!(binomial(5, 6).is_zero());
        assert!(binomial(5, -1).is_zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn derivative_and_evaluate() {
        let p = IntPoly::new(ints(&[1, -2, 0, 3]));
        assert_eq!(p.derivative().coeffs(), ints(&[-2, 0, 9]).as_slice());
        assert_eq!(p.evaluate(&BigInt::from(2)), BigInt::from(21));
        assert_eq!(IntPoly::new(ints(&[0, 0])).degree(), None);
        assert_eq!(p.degree(), Some(3));
        assert!(p.coeff(17).is_zero());
    }

    #[test]
    fn rational_to_float_handles_huge_parts() {
        let big = factorial(400);
        let q = BigRational::new(&big * 3, &big * 2);
        assert_eq!(rational_to_f64(&q), 1.5);
        let q = BigRational::new(factorial(300) + 1, factorial(300));
        assert!((rational_to_f64(&q) - 1.0).abs() < 1e-15);
        assert_eq!(format_rational(&rational(4, 2)), "2/1");
    }
}
