//! Reference data shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

/// Signature as five flags: pentagon, left, mid, right, unit-unit.
pub type Flags = [bool; 5];

/// Axiom flags read straight off the table, without building any diagram:
/// pentagon is associativity, mid is `x·e = x`, right is `e·x = x`, and the
/// left and unit-unit axioms always hold.
pub fn reduced_flags(n: usize, rows: &[Vec<usize>], e: usize) -> Flags {
    let op = |x: usize, y: usize| rows[x][y];
    let mut assoc = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op(op(x, y), z) != op(x, op(y, z)) {
                    assoc = false;
                }
            }
        }
    }
    let right_identity = (0..n).all(|x| op(x, e) == x);
    let left_identity = (0..n).all(|x| op(e, x) == x);
    [assoc, true, right_identity, left_identity, true]
}

/// Every `n x n` table, in lexicographic order of the flattened entries.
pub fn all_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    (0..total)
        .map(|mut idx| {
            let mut flat = vec![0; cells];
            for slot in flat.iter_mut().rev() {
                *slot = idx % n;
                idx /= n;
            }
            flat.chunks(n).map(<[usize]>::to_vec).collect()
        })
        .collect()
}

/// Direct nested-loop census of one size.
pub fn oracle_counts(n: usize) -> BTreeMap<Flags, u64> {
    let mut counts = BTreeMap::new();
    for rows in all_tables(n) {
        for e in 0..n {
            *counts.entry(reduced_flags(n, &rows, e)).or_insert(0) += 1;
        }
    }
    counts
}

fn parse(sig: &str) -> Flags {
    let b: Vec<bool> = sig.chars().map(|c| c == 'T').collect();
    [b[0], b[1], b[2], b[3], b[4]]
}

/// Counts frozen from an independent brute-force run before the library
/// existed, per size.
pub fn frozen_counts(n: usize) -> BTreeMap<Flags, u64> {
    let rows: &[(&str, u64)] = match n {
        1 => &[("TTTTT", 1)],
        2 => &[
            ("TTTTT", 4),
            ("TTTFT", 2),
            ("TTFTT", 2),
            ("TTFFT", 8),
            ("FTTFT", 2),
            ("FTFTT", 2),
            ("FTFFT", 12),
        ],
        3 => &[
            ("TTTTT", 33),
            ("TTTFT", 21),
            ("TTFTT", 21),
            ("TTFFT", 264),
            ("FTTTT", 210),
            ("FTTFT", 1923),
            ("FTFTT", 1923),
            ("FTFFT", 54654),
        ],
        _ => panic!("no frozen counts for size {n}"),
    };
    rows.iter().map(|&(s, c)| (parse(s), c)).collect()
}
