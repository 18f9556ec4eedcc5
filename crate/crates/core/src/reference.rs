//! Published signed Hultman numbers `S_H^±(n, k)` for `1 ≤ n ≤ 11`, kept as
//! decimal strings so the fixture is independent of any integer type.

use num_bigint::BigInt;

/// Row `n - 1` lists `S_H^±(n, k)` for `k = 1..=n+1`.
pub const SIGNED_HULTMAN_ROWS: [&[&str]; 11] = [
    &["1", "1"],
    &["4", "3", "1"],
    &["20", "21", "6", "1"],
    &["148", "160", "65", "10", "1"],
    &["1348", "1620", "701", "155", "15", "1"],
    &["15104", "19068", "9324", "2247", "315", "21", "1"],
    &["198144", "264420", "138016", "38029", "5908", "574", "28", "1"],
    &["2998656", "4166880", "2325740", "692088", "124029", "13524", "966", "36", "1"],
    &["51290496", "74011488", "43448940", "13945700", "2723469", "344961", "27930", "1530", "45", "1"],
    &[
        "979732224", "1459381440", "897020784", "305142068", "64711856", "8996295", "850905", "53262", "2310",
        "55", "1",
    ],
    &[
        "20661458688", "31674232128", "20241273264", "7255047116", "1640552028", "249029717", "26004330",
        "1910403", "95304", "3355", "66", "1",
    ],
];

/// `(n, k, S_H^±(n, k))` for every stored entry, row by row.
pub fn signed_hultman_reference() -> Vec<(usize, usize, BigInt)> {
    SIGNED_HULTMAN_ROWS
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(j, s)| (i + 1, j + 1, s.parse().expect("fixture is decimal")))
        })
        .collect()
}
