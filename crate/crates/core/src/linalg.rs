//! Exact rank computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so each division is exact
/// and no fractions appear.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for c in col + 1..cols {
                let mut v = &row[c] * pivot;
                if !lead.is_zero() && !pivot_row[c].is_zero() {
                    v -= &lead * &pivot_row[c];
                }
                row[c] = if v.is_zero() { v } else { v / &prev };
            }
            row[col] = BigInt::zero();
        }
        prev = top[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix. Each row is scaled by the lcm of its
/// denominators, which does not change the rank.
pub fn rational_rank(m: &[Vec<Rational64>]) -> usize {
    let ints = m
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(1i64, |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| BigInt::from(*x.numer()) * BigInt::from(l / x.denom()))
                .collect()
        })
        .collect();
    bareiss_rank(ints)
}

/// Rank over `GF(p)` of a rational matrix, or `None` if some denominator is
/// divisible by `p`. `p` must be prime and below `2^32`.
///
/// The result never exceeds the rank over the rationals, and agrees with it
/// for all but finitely many primes.
pub fn modular_rank(m: &[Vec<Rational64>], p: u64) -> Option<usize> {
    let reduce = |x: &Rational64| -> Option<u64> {
        let num = (x.numer().rem_euclid(p as i64)) as u64;
        let den = (x.denom().rem_euclid(p as i64)) as u64;
        if den == 0 {
            return None;
        }
        Some(num * pow_mod(den, p - 2, p) % p)
    };
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(reduce).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let rows = a.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = a[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for c in col..cols {
            a[rank][c] = a[rank][c] * inv % p;
        }
        for r in rank + 1..rows {
            let f = a[r][col];
            if f == 0 {
                continue;
            }
            for c in col..cols {
                let sub = f * a[rank][c] % p;
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Primes just below `2^31` used for modular cross-checks.
pub const CHECK_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

pub(crate) fn is_skew(m: &[Vec<Rational64>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == -m[j][i]))
}
