//! Integer verification of the classical (q = 1) congruences modulo p^2.
//!
//! These are the shadows of the q-series claims: for a prime p >= 5 the
//! truncated central binomial sum is congruent to the symbol (p/3) mod p^2,
//! and the truncated Catalan sum to (3(p/3) - 1)/2. Everything here is plain
//! integer arithmetic; the binomial and Catalan streams are kept exact so the
//! multiplicative recurrences can divide exactly, while the running sums are
//! reduced modulo p^2 as they grow.

use std::time::Instant;

use num::bigint::BigInt;
use num::traits::{One, Zero};
use num::Integer;

use crate::congruences::{symbol3, ClaimId, ClaimReport, Status, VerifyError};
use crate::poly::RatPoly;

/// Witness bases that make Miller-Rabin deterministic for all 64-bit inputs.
const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MILLER_RABIN_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MILLER_RABIN_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `p^2` as a big integer, after validating the precondition `p` prime, >= 5.
fn modulus_for(p: u64) -> Result<BigInt, VerifyError> {
    if p < 5 || !is_prime(p) {
        return Err(VerifyError::InvalidPrime);
    }
    let big = BigInt::from(p);
    Ok(&big * &big)
}

/// Wraps an integer difference mod `p^2` into a report, centering the
/// witness representative around zero for readability.
fn report_mod_square(
    claim: ClaimId,
    p: u64,
    diff: BigInt,
    modulus: &BigInt,
    start: Instant,
) -> ClaimReport {
    let mut rep = diff.mod_floor(modulus);
    let holds = rep.is_zero();
    if &rep * 2 > *modulus {
        rep -= modulus;
    }
    ClaimReport {
        claim,
        n: p,
        status: if holds { Status::Holds } else { Status::Fails },
        witness: if holds {
            None
        } else {
            Some(RatPoly::constant(rep.into()))
        },
        elapsed: start.elapsed(),
    }
}

/// Verifies `sum_{k=0}^{p-1} binom(2k, k) = (p/3) (mod p^2)`.
pub fn verify_classical_central(p: u64) -> Result<ClaimReport, VerifyError> {
    let start = Instant::now();
    let modulus = modulus_for(p)?;
    let mut acc = BigInt::one(); // k = 0 term
    let mut binom = BigInt::one();
    for k in 0..p - 1 {
        // binom(2k+2, k+1) = binom(2k, k) * 2(2k+1) / (k+1), exactly.
        binom *= BigInt::from(2 * (2 * k + 1));
        let (quot, rem) = binom.div_rem(&BigInt::from(k + 1));
        debug_assert!(rem.is_zero());
        binom = quot;
        acc = (acc + &binom).mod_floor(&modulus);
    }
    let rhs = BigInt::from(symbol3(p as i64).value());
    Ok(report_mod_square(
        ClaimId::ClassicalCentral,
        p,
        acc - rhs,
        &modulus,
        start,
    ))
}

/// Verifies `sum_{k=0}^{p-1} C_k = (3(p/3) - 1) / 2 (mod p^2)`, with the
/// division by 2 performed through the modular inverse of 2 mod `p^2`.
pub fn verify_classical_catalan(p: u64) -> Result<ClaimReport, VerifyError> {
    let start = Instant::now();
    let modulus = modulus_for(p)?;
    let mut acc = BigInt::one(); // C_0 = 1
    let mut catalan = BigInt::one();
    for k in 1..p {
        // C_k = C_{k-1} * 2(2k-1) / (k+1), exactly.
        catalan *= BigInt::from(2 * (2 * k - 1));
        let (quot, rem) = catalan.div_rem(&BigInt::from(k + 1));
        debug_assert!(rem.is_zero());
        catalan = quot;
        acc = (acc + &catalan).mod_floor(&modulus);
    }
    let inv_two = (&modulus + BigInt::one()) / BigInt::from(2);
    let rhs = (BigInt::from(3 * symbol3(p as i64).value() - 1) * inv_two).mod_floor(&modulus);
    Ok(report_mod_square(
        ClaimId::ClassicalCatalan,
        p,
        acc - rhs,
        &modulus,
        start,
    ))
}

// ---------------------------------------------------------------------------
