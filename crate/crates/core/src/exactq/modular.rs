//! Multi-modular RREF with rational reconstruction.
//!
//! The RREF is computed modulo word-sized primes, lifted by CRT and rational
//! reconstruction, and accepted only after an exact certificate: every input
//! row equals `Σ_k a[p_k]·R_k`. Since rank mod p never exceeds the rational
//! rank, the certificate forces equal row spaces, and RREF is unique.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::Rat;

const PRIME_COUNT: usize = 400;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

// Deterministic Miller–Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2⁶², largest first.
pub(super) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

struct Image {
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

fn rref_mod(a: &[Vec<BigInt>], cols: usize, p: u64) -> Image {
    let bp = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    if x.is_zero() {
                        0
                    } else {
                        x.mod_floor(&bp).to_u64().expect("reduced below p")
                    }
                })
                .collect()
        })
        .collect();
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == n {
            break;
        }
        let Some(found) = (pr..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pr, found);
        let inv = powmod(rows[pr][col], p - 2, p);
        for e in rows[pr].iter_mut() {
            if *e != 0 {
                *e = mulmod(*e, inv, p);
            }
        }
        let pivot_row = rows[pr].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pr || row[col] == 0 {
                continue;
            }
            let f = p - row[col];
            for (e, &q) in row.iter_mut().zip(&pivot_row).skip(col) {
                if q != 0 {
                    *e = ((*e as u128 + f as u128 * q as u128) % p as u128) as u64;
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    rows.truncate(pivots.len());
    Image { pivots, rows }
}

// Rational n/d ≡ u (mod m) with |n|, d ≤ √(m/2), if one exists.
fn reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rat> {
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Whether every row of `a` is `Σ_k a[i][p_k]·R_k` exactly.
fn certify(a: &[Vec<BigInt>], cols: usize, pivots: &[usize], r: &[Vec<Rat>]) -> bool {
    let free: Vec<usize> = {
        let mut is_pivot = vec![false; cols];
        for &p in pivots {
            is_pivot[p] = true;
        }
        (0..cols).filter(|&c| !is_pivot[c]).collect()
    };
    let mut denom = BigInt::one();
    for row in r {
        for &c in &free {
            if !row[c].is_zero() {
                denom = denom.lcm(row[c].denom());
            }
        }
    }
    let scaled: Vec<Vec<BigInt>> = r
        .iter()
        .map(|row| {
            free.iter()
                .map(|&c| row[c].numer() * (&denom / row[c].denom()))
                .collect()
        })
        .collect();
    a.par_iter().all(|ai| {
        let coeffs: Vec<(usize, &BigInt)> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| !ai[p].is_zero())
            .map(|(k, &p)| (k, &ai[p]))
            .collect();
        free.iter().enumerate().all(|(fi, &c)| {
            let mut acc = BigInt::zero();
            for &(k, x) in &coeffs {
                let s = &scaled[k][fi];
                if !s.is_zero() {
                    acc += x * s;
                }
            }
            acc == &ai[c] * &denom
        })
    })
}

/// RREF rows and pivots of the integer matrix `a`, or `None` if the prime
/// supply runs out (the caller falls back to exact elimination).
pub(super) fn rref_multimodular(a: &[Vec<BigInt>], cols: usize) -> Option<(Vec<usize>, Vec<Vec<Rat>>)> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::zero();
    let mut free: Vec<usize> = Vec::new();
    for &p in primes() {
        let img = rref_mod(a, cols, p);
        let better = modulus.is_zero()
            || match img.pivots.len().cmp(&pivots.len()) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => img.pivots < pivots,
            };
        if better {
            pivots = img.pivots;
            let mut is_pivot = vec![false; cols];
            for &q in &pivots {
                is_pivot[q] = true;
            }
            free = (0..cols).filter(|&c| !is_pivot[c]).collect();
            residues = img
                .rows
                .iter()
                .map(|row| free.iter().map(|&c| BigInt::from(row[c])).collect())
                .collect();
            modulus = BigInt::from(p);
        } else if img.pivots == pivots {
            let bp = BigInt::from(p);
            let minv = BigInt::from(powmod((&modulus % &bp).to_u64().expect("below p"), p - 2, p));
            residues.par_iter_mut().zip(&img.rows).for_each(|(res, row)| {
                for (x, &c) in res.iter_mut().zip(&free) {
                    // x ← x + M·((r − x)·M⁻¹ mod p)
                    let diff = (BigInt::from(row[c]) - &*x).mod_floor(&bp);
                    let k = (diff * &minv) % &bp;
                    *x += &modulus * k;
                }
            });
            modulus *= bp;
        } else {
            continue;
        }
        let bound = (&modulus >> 1u32).sqrt();
        let lifted: Option<Vec<Vec<Rat>>> = residues
            .par_iter()
            .enumerate()
            .map(|(k, res)| {
                let mut row = vec![Rat::zero(); cols];
                row[pivots[k]] = Rat::one();
                for (x, &c) in res.iter().zip(&free) {
                    if !x.is_zero() {
                        row[c] = reconstruct(x, &modulus, &bound)?;
                    }
                }
                Some(row)
            })
            .collect();
        if let Some(r) = lifted {
            if certify(a, cols, &pivots, &r) {
                return Some((pivots, r));
            }
        }
    }
    None
}
