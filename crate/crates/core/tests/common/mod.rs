//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's arithmetic.
#![allow(dead_code)]

pub fn is_prime_naive(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_below(n: u128) -> Vec<u128> {
    (2..n).filter(|&k| is_prime_naive(k)).collect()
}

/// `b^e mod m` by repeated multiplication, for small `e`.
pub fn pow_naive(b: u128, e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    for _ in 0..e {
        acc = acc * (b % m) % m;
    }
    acc
}

/// `x^q + r*y^q` by repeated multiplication.
pub fn form_naive(x: i128, y: i128, q: u128, r: u128) -> i128 {
    let mut xq = 1i128;
    let mut yq = 1i128;
    for _ in 0..q {
        xq *= x;
        yq *= y;
    }
    xq + r as i128 * yq
}

/// Multiplicative order of `a` mod `n` by stepping through powers.
pub fn order_naive(a: u128, n: u128) -> u128 {
    let mut k = 1;
    let mut v = a % n;
    while v != 1 {
        v = v * a % n;
        k += 1;
    }
    k
}

/// Polynomials over `F_p`, coefficients constant-first, no trailing zeros.
pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn pmul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % p) % p;
        }
    }
    trim(out)
}

pub fn psub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|&b| a * b % p == 1).expect("unit")
}

pub fn prem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let li = inv(*m.last().unwrap(), p);
    while r.len() >= m.len() {
        let c = r.last().unwrap() * li % p;
        let shift = r.len() - m.len();
        for (j, &d) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * d % p) % p;
        }
        r = trim(r);
    }
    r
}

pub fn pgcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = prem(&a, &b, p);
        a = b;
        b = r;
    }
    let li = inv(*a.last().unwrap(), p);
    a.iter().map(|&c| c * li % p).collect()
}

/// `a^e mod m` by square-and-multiply on naive polynomials.
pub fn ppowmod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut acc = prem(&[1], m, p);
    let mut base = prem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = prem(&pmul(&acc, &base, p), m, p);
        }
        base = prem(&pmul(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

/// Rabin's test: `g` of degree `n` is irreducible iff `x^(p^n) = x mod g`
/// and `gcd(x^(p^(n/l)) - x, g) = 1` for every prime `l | n`.
pub fn is_irreducible_naive(g: &[u64], p: u64) -> bool {
    let n = g.len() - 1;
    if n == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let frob = |k: usize| {
        let mut h = prem(&x, g, p);
        for _ in 0..k {
            h = ppowmod(&h, p as u128, g, p);
        }
        h
    };
    if psub(&frob(n), &prem(&x, g, p), p) != Vec::<u64>::new() {
        return false;
    }
    (2..=n)
        .filter(|&l| n.is_multiple_of(l) && is_prime_naive(l as u128))
        .all(|l| pgcd(g, &psub(&frob(n / l), &x, p), p) == vec![1])
}
