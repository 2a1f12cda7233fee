//! Exact modular arithmetic on `u128`, deterministic primality and
//! multiplicative orders.
//!
//! Residue products use native `u64` below `2^32`, `u128` below `2^64`, and
//! shift-and-add above that, so no intermediate ever wraps.

use crate::{Error, Integer, Natural, Result};

/// Largest `n` (exclusive) for which [`is_prime`] gives a proven verdict.
///
/// Miller-Rabin with the first thirteen primes as witnesses has no strong
/// pseudoprime below this value (Sorenson and Webster).
pub const PRIMALITY_LIMIT: Natural = 3_317_044_064_679_887_385_961_981;

/// Largest modulus accepted by [`mult_order`]; the group order is factored
/// by trial division.
pub const ORDER_LIMIT: Natural = 1 << 40;

const WITNESSES: [Natural; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn gcd(mut a: Natural, mut b: Natural) -> Natural {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub(crate) fn add_mod(a: Natural, b: Natural, m: Natural) -> Natural {
    debug_assert!(a < m && b < m);
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

#[inline]
pub(crate) fn sub_mod(a: Natural, b: Natural, m: Natural) -> Natural {
    debug_assert!(a < m && b < m);
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// `a * b mod m` for reduced `a, b`.
#[inline]
pub(crate) fn mul_mod(a: Natural, b: Natural, m: Natural) -> Natural {
    debug_assert!(a < m && b < m);
    if m <= u32::MAX as Natural {
        return ((a as u64 * b as u64) % m as u64) as Natural;
    }
    if m <= (u64::MAX as Natural) + 1 {
        return a * b % m;
    }
    let (mut a, mut b) = (a, b);
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

/// `base^exp mod modulus`.
pub fn mod_pow(base: Natural, exp: Natural, modulus: Natural) -> Result<Natural> {
    if modulus < 2 {
        return Err(Error::domain(format!(
            "modulus must be at least 2, got {modulus}"
        )));
    }
    Ok(pow_mod_unchecked(base % modulus, exp, modulus))
}

pub(crate) fn pow_mod_unchecked(mut base: Natural, mut exp: Natural, m: Natural) -> Natural {
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `modulus` via the extended Euclidean algorithm.
pub fn mod_inv(a: Natural, modulus: Natural) -> Result<Natural> {
    if modulus < 2 {
        return Err(Error::domain(format!(
            "modulus must be at least 2, got {modulus}"
        )));
    }
    let a_red = a % modulus;
    // Track Bezout coefficients of `a` modulo `modulus` so they never go negative.
    let (mut r0, mut r1) = (modulus, a_red);
    let (mut s0, mut s1) = (0, 1 % modulus);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        let step = mul_mod(quot % modulus, s1, modulus);
        (s0, s1) = (s1, sub_mod(s0, step, modulus));
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { a, modulus });
    }
    Ok(s0)
}

/// Deterministic primality for `n < PRIMALITY_LIMIT`.
///
/// Larger inputs are rejected with a bound error rather than answered
/// probabilistically.
pub fn is_prime(n: Natural) -> Result<bool> {
    if n >= PRIMALITY_LIMIT {
        return Err(Error::bound(format!(
            "primality of {n} is outside the certified range (< {PRIMALITY_LIMIT})"
        )));
    }
    if n < 2 {
        return Ok(false);
    }
    if n <= u32::MAX as Natural {
        return Ok(is_prime_u32(n as u32));
    }
    for &w in &WITNESSES {
        if n == w {
            return Ok(true);
        }
        if n.is_multiple_of(w) {
            return Ok(false);
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod_unchecked(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Bases 2, 7, 61 are deterministic below 4,759,123,141.
fn is_prime_u32(n: u32) -> bool {
    let n64 = n as u64;
    for w in [2u64, 3, 5, 7, 11, 13, 61] {
        if n64 == w {
            return true;
        }
        if n64.is_multiple_of(w) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = ((n - 1) >> s) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % n64;
            }
            b = b * b % n64;
            e >>= 1;
        }
        acc
    };
    'witness: for w in [2u64, 7, 61] {
        let mut x = pow(w, d);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n64;
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn require_prime(n: Natural, what: &str) -> Result<()> {
    if is_prime(n)? {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} = {n} is not prime")))
    }
}

pub(crate) fn require_odd_prime(n: Natural, what: &str) -> Result<()> {
    require_prime(n, what)?;
    if n == 2 {
        return Err(Error::domain(format!("{what} = 2 must be an odd prime")));
    }
    Ok(())
}

/// Prime factors of `n` (without multiplicity) by trial division.
fn prime_factors(mut n: Natural) -> Vec<Natural> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `k >= 1` with `a^k = 1 (mod n)`.
pub fn mult_order(a: Natural, n: Natural) -> Result<Natural> {
    if n < 2 {
        return Err(Error::domain(format!(
            "order modulus must be at least 2, got {n}"
        )));
    }
    if n > ORDER_LIMIT {
        return Err(Error::bound(format!(
            "order modulus {n} exceeds the supported limit {ORDER_LIMIT}"
        )));
    }
    if gcd(a, n) != 1 {
        return Err(Error::domain(format!(
            "gcd({a}, {n}) != 1, no multiplicative order"
        )));
    }
    // Euler phi, and the primes dividing it.
    let n_primes = prime_factors(n);
    let mut phi = n;
    let mut phi_primes = Vec::new();
    for &ell in &n_primes {
        phi = phi / ell * (ell - 1);
        if n.is_multiple_of(ell * ell) {
            phi_primes.push(ell);
        }
        phi_primes.extend(prime_factors(ell - 1));
    }
    phi_primes.sort_unstable();
    phi_primes.dedup();

    let a = a % n;
    let mut order = phi;
    for ell in phi_primes {
        while order.is_multiple_of(ell) && pow_mod_unchecked(a, order / ell, n) == 1 {
            order /= ell;
        }
    }
    Ok(order)
}

/// Whether the class of `p` generates the cyclic group `(Z/q)^*`.
pub fn is_generator(p: Natural, q: Natural) -> Result<bool> {
    require_odd_prime(q, "q")?;
    if p.is_multiple_of(q) {
        return Err(Error::domain(format!("{p} is not a unit modulo {q}")));
    }
    Ok(mult_order(p % q, q)? == q - 1)
}

/// Legendre symbol `(a / p)` by Euler's criterion; `a` may be negative.
pub fn legendre(a: Integer, p: Natural) -> Result<i8> {
    require_odd_prime(p, "Legendre modulus p")?;
    let a_red = a.rem_euclid(p as Integer) as Natural;
    Ok(match pow_mod_unchecked(a_red, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        v if v == p - 1 => -1,
        v => {
            return Err(Error::Invariant(format!(
                "Euler criterion for ({a}/{p}) gave {v}"
            )))
        }
    })
}

pub fn checked_pow(base: Natural, exp: u32) -> Result<Natural> {
    base.checked_pow(exp)
        .ok_or(Error::Overflow("natural power"))
}

pub fn checked_ipow(base: Integer, exp: u32) -> Result<Integer> {
    base.checked_pow(exp)
        .ok_or(Error::Overflow("integer power"))
}

/// `floor(n^(1/q))`.
pub fn integer_root(n: Natural, q: u32) -> Result<Natural> {
    if q == 0 {
        return Err(Error::domain("root index must be at least 1"));
    }
    if q == 1 || n < 2 {
        return Ok(n);
    }
    // Invariant: lo^q <= n < hi^q.
    let mut lo: Natural = 1;
    let mut hi: Natural = match q {
        2 => 1 << 64,
        _ => (1 << (128 / q + 1)).min(n) + 1,
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(q) {
            Some(v) if v <= n => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(lo)
}

pub fn isqrt(n: Natural) -> Natural {
    integer_root(n, 2).expect("square root index is nonzero")
}

/// Narrow a `u32` exponent out of a natural, e.g. the `q` of `x^q`.
pub(crate) fn small_exponent(q: Natural) -> Result<u32> {
    u32::try_from(q).map_err(|_| Error::bound(format!("exponent {q} does not fit in 32 bits")))
}
