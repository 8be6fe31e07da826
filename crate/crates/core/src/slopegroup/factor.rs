//! Exact factorization of rationals over 64-bit-bounded primes: trial
//! division below 2^20, then a deterministic Miller–Rabin check on the
//! remaining cofactor.  Inputs with larger composite cofactors are rejected
//! rather than approximated.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

const TRIAL_BOUND: u64 = 1 << 20;

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

/// Deterministic Miller–Rabin for u64 (the standard 12-witness set decides
/// primality exactly for all 64-bit inputs).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of a positive integer into `prime -> multiplicity`.
pub fn factor_int(n: &BigInt) -> Result<BTreeMap<u64, i64>> {
    if !n.is_positive() {
        return Err(Error::BadParameter(format!(
            "can only factor positive integers, got {n}"
        )));
    }
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < TRIAL_BOUND {
        let bp = BigInt::from(p);
        if (&bp * &bp) > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            *out.entry(p).or_insert(0) += 1;
            rest /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        match rest.to_u64() {
            Some(r) if is_prime_u64(r) => {
                *out.entry(r).or_insert(0) += 1;
            }
            _ => return Err(Error::FactorTooLarge(n.to_string())),
        }
    }
    Ok(out)
}

/// Signed prime-exponent map of a positive rational.
pub fn factor_rational(x: &BigRational) -> Result<BTreeMap<u64, i64>> {
    if !x.is_positive() {
        return Err(Error::BadParameter(format!(
            "can only factor positive rationals, got {x}"
        )));
    }
    let mut out = factor_int(x.numer())?;
    for (p, e) in factor_int(x.denom())? {
        *out.entry(p).or_insert(0) -= e;
    }
    out.retain(|_, e| *e != 0);
    Ok(out)
}
