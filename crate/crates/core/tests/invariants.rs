use std::collections::HashSet;

use hultman::bpgraph::{enumerate_matchings, union_cycle_count, Configuration, PerfectMatching};
use hultman::exactmath::{factorial, pow2};
use hultman::hultman::{
    hultman_bona_flynn, hultman_new_formula, signed_gf, signed_hultman, unsigned_gf,
};
use hultman::perm::count_factorizations;
use hultman::ExactInt;
use num_traits::Zero;

#[test]
fn unsigned_parity_zeros() {
    for n in 0..=25usize {
        for k in 0..=n as i64 + 2 {
            if (n as i64 - k) % 2 == 0 {
                assert!(hultman_bona_flynn(n, k).is_zero());
                assert!(hultman_new_formula(n, k).is_zero());
            }
        }
    }
}

#[test]
fn row_totals_up_to_25() {
    for n in 0..=25usize {
        let unsigned: ExactInt = (1..=n as i64 + 1).map(|k| hultman_bona_flynn(n, k)).sum();
        assert_eq!(unsigned, factorial(n as u64), "n={n}");
        let g = signed_gf(n);
        let signed: ExactInt = g.coeffs().iter().sum();
        assert_eq!(signed, pow2(n as u64) * factorial(n as u64), "n={n}");
    }
}

#[test]
fn generating_function_coefficients_match_closed_forms() {
    for n in 0..=15usize {
        let f = unsigned_gf(n);
        let g = signed_gf(n);
        for k in 0..=n + 2 {
            assert_eq!(f.coeff(k), hultman_bona_flynn(n, k as i64), "unsigned n={n} k={k}");
            assert_eq!(g.coeff(k), signed_hultman(n, k as i64), "signed n={n} k={k}");
        }
    }
}

#[test]
fn factorisations_count_unsigned_hultman_numbers() {
    for n in 0..=6usize {
        let mut total = ExactInt::zero();
        for k in 1..=n + 1 {
            let c = count_factorizations(n, k, false).unwrap();
            assert_eq!(c, hultman_bona_flynn(n, k as i64), "n={n} k={k}");
            total += c;
        }
        assert_eq!(total, factorial(n as u64));
    }
}

#[test]
fn hamiltonian_complements_biject_with_signed_permutations() {
    for n in 1..=5usize {
        let m = n + 1;
        let shifted = PerfectMatching::shifted_grey(m);
        let mut recovered = HashSet::new();
        for tau in enumerate_matchings(m, false).unwrap() {
            if union_cycle_count(&tau, &shifted) != 1 {
                continue;
            }
            let config = Configuration::new(n, tau).unwrap();
            assert!(config.is_valid_breakpoint_graph());
            assert!(recovered.insert(config.recover_permutation().unwrap()), "duplicate at n={n}");
        }
        assert_eq!(ExactInt::from(recovered.len()), pow2(n as u64) * factorial(n as u64));
    }
}
