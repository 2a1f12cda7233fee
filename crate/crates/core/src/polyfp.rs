//! Univariate polynomials over `Z` and over prime fields `F_p`.
//!
//! Coefficients are stored constant term first with no trailing zeros, so
//! the zero polynomial is the empty vector. Factorization over `F_p` runs
//! squarefree decomposition, then distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting driven by a seeded ChaCha
//! stream. Factor lists come back sorted by `(degree, coefficients)`, so
//! the output does not depend on the seed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, add_mod, mul_mod, sub_mod};
use crate::{Error, Integer, Natural, Result};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

fn trim<T: PartialEq + Default>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| *c == T::default()) {
        v.pop();
    }
}

/// Polynomial with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Integer) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Integer {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out.push(
                a.checked_add(b)
                    .ok_or(Error::Overflow("integer polynomial add"))?,
            );
        }
        Ok(Self::new(out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let neg = other
            .coeffs
            .iter()
            .map(|c| {
                c.checked_neg()
                    .ok_or(Error::Overflow("integer polynomial negate"))
            })
            .collect::<Result<Vec<_>>>()?;
        self.checked_add(&IntPoly { coeffs: neg })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0 as Integer; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a
                    .checked_mul(b)
                    .ok_or(Error::Overflow("integer polynomial multiply"))?;
                out[i + j] = out[i + j]
                    .checked_add(t)
                    .ok_or(Error::Overflow("integer polynomial multiply"))?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn checked_pow(&self, mut e: usize) -> Result<Self> {
        let mut acc = Self::constant(1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                c.checked_mul(i as Integer)
                    .ok_or(Error::Overflow("derivative"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Exact division of every coefficient by `d`; fails if any is not divisible.
    pub fn exact_div_scalar(&self, d: Integer) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("division of a polynomial by zero"));
        }
        self.coeffs
            .iter()
            .map(|&c| {
                if c % d == 0 {
                    Ok(c / d)
                } else {
                    Err(Error::Invariant(format!(
                        "coefficient {c} not divisible by {d}"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn eval(&self, x: Integer) -> Result<Integer> {
        self.coeffs.iter().rev().try_fold(0 as Integer, |acc, &c| {
            acc.checked_mul(x)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow("polynomial evaluation"))
        })
    }
}

/// Coefficientwise reduction of `f` into `F_p[X]`.
pub fn reduce_mod(f: &IntPoly, p: Natural) -> Result<FpPoly> {
    let m = Integer::try_from(p).map_err(|_| Error::bound(format!("modulus {p} too large")))?;
    if p < 2 {
        return Err(Error::domain(format!(
            "modulus must be at least 2, got {p}"
        )));
    }
    Ok(FpPoly::from_reduced(
        p,
        f.coeffs
            .iter()
            .map(|c| c.rem_euclid(m) as Natural)
            .collect(),
    ))
}

/// Polynomial over the prime field `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: Natural,
    coeffs: Vec<Natural>,
}

impl FpPoly {
    /// Builds a polynomial, reducing every coefficient mod `p`.
    pub fn new(p: Natural, coeffs: Vec<Natural>) -> Self {
        assert!(p >= 2, "F_p modulus must be at least 2");
        Self::from_reduced(p, coeffs.into_iter().map(|c| c % p).collect())
    }

    fn from_reduced(p: Natural, mut coeffs: Vec<Natural>) -> Self {
        trim(&mut coeffs);
        FpPoly { p, coeffs }
    }

    pub fn zero(p: Natural) -> Self {
        Self::from_reduced(p, Vec::new())
    }

    pub fn constant(p: Natural, c: Natural) -> Self {
        Self::new(p, vec![c])
    }

    pub fn one(p: Natural) -> Self {
        Self::constant(p, 1)
    }

    /// The indeterminate `X`.
    pub fn x(p: Natural) -> Self {
        Self::from_reduced(p, vec![0, 1 % p])
    }

    pub fn modulus(&self) -> Natural {
        self.p
    }

    pub fn coeffs(&self) -> &[Natural] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0.
    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Natural {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Lift into `Z[X]` with coefficients in `(-p/2, p/2]`.
    pub fn symmetric_lift(&self) -> IntPoly {
        // Both branches are at most p/2 <= i128::MAX in magnitude.
        let half = self.p / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    if c > half {
                        -((self.p - c) as Integer)
                    } else {
                        c as Integer
                    }
                })
                .collect(),
        )
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::domain(format!(
                "modulus mismatch: F_{} vs F_{}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self.mul_raw(other))
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        Ok(self.divrem_raw(divisor))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self.gcd_raw(other))
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, e: Natural, modulus: &Self) -> Result<Self> {
        self.check_same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::domain("reduction modulo the zero polynomial"));
        }
        Ok(self.powmod_raw(e, modulus))
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                add_mod(a, b, self.p)
            })
            .collect();
        Self::from_reduced(self.p, out)
    }

    pub(crate) fn sub_raw(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                sub_mod(a, b, self.p)
            })
            .collect();
        Self::from_reduced(self.p, out)
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        if p <= u32::MAX as Natural {
            // Products are below 2^64, so a u128 column sum of fewer than
            // 2^64 of them cannot overflow; reduce once per column.
            let mut acc = vec![0u128; len];
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (j, &b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += (a * b as u64) as u128;
                }
            }
            return Self::from_reduced(p, acc.into_iter().map(|c| c % p).collect());
        }
        let mut out = vec![0; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        Self::from_reduced(p, out)
    }

    pub(crate) fn scale(&self, c: Natural) -> Self {
        let c = c % self.p;
        Self::from_reduced(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    pub(crate) fn divrem_raw(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.deg();
        let lead_inv = arith::mod_inv(divisor.leading(), p).expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        if p <= u32::MAX as Natural {
            let (q, r) = divrem_small(&rem, &divisor.coeffs, lead_inv as u64, p as u64);
            return (Self::from_reduced(p, q), Self::from_reduced(p, r));
        }
        let mut quot = vec![0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], lead_inv, p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(c, d, p), p);
            }
        }
        rem.truncate(dd);
        (Self::from_reduced(p, quot), Self::from_reduced(p, rem))
    }

    pub(crate) fn rem_raw(&self, divisor: &Self) -> Self {
        self.divrem_raw(divisor).1
    }

    pub(crate) fn div_exact_raw(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem_raw(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = arith::mod_inv(self.leading(), self.p).expect("nonzero residue is a unit");
        self.scale(inv)
    }

    pub(crate) fn gcd_raw(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem_raw(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub(crate) fn powmod_raw(&self, mut e: Natural, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem_raw(modulus);
        let mut base = self.rem_raw(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base).rem_raw(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base).rem_raw(modulus);
            }
        }
        acc
    }

    /// `self^e mod modulus` for exponents beyond `u128`, such as `(p^f - 1)/q`.
    pub fn powmod_big(&self, e: &BigUint, modulus: &Self) -> Result<Self> {
        self.check_same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::domain("reduction modulo the zero polynomial"));
        }
        let mut acc = Self::one(self.p).rem_raw(modulus);
        let base = self.rem_raw(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_raw(&acc).rem_raw(modulus);
            if e.bit(i) {
                acc = acc.mul_raw(&base).rem_raw(modulus);
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as Natural) % p, p))
            .collect();
        Self::from_reduced(p, out)
    }

    /// Evaluate at a residue.
    pub fn eval(&self, x: Natural) -> Natural {
        let x = x % self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// Canonical ordering for factor lists: degree, then coefficients from
    /// the constant term up.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// `g` with `g(X)^p = self`, for polynomials whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.p;
        let step = usize::try_from(p).expect("p-th root only arises when p <= degree");
        Self::from_reduced(p, self.coeffs.iter().step_by(step).copied().collect())
    }
}

fn write_terms<T: fmt::Display + Copy>(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (usize, T, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (i, mag, neg) in terms.rev() {
        let sign = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let mag_s = mag.to_string();
        let coeff = if mag_s == "1" && i > 0 {
            String::new()
        } else {
            mag_s
        };
        let var = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        write!(f, "{sign}{coeff}{var}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, &c)| (i, c.unsigned_abs(), c < 0)),
        )
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, &c)| (i, c, false)),
        )
    }
}

/// Irreducible factor with its multiplicity.
pub type Factor = (FpPoly, usize);

/// Factor `f` into monic irreducibles with the default seed.
pub fn factor_mod_p(f: &FpPoly) -> Result<Vec<Factor>> {
    factor_mod_p_seeded(f, DEFAULT_SEED)
}

/// Factor `f` into distinct monic irreducibles with multiplicities.
///
/// The leading coefficient is dropped; a nonzero constant has no factors.
pub fn factor_mod_p_seeded(f: &FpPoly, seed: u64) -> Result<Vec<Factor>> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Factor> = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    // Merge repeated irreducibles from different multiplicity strata.
    let mut merged: Vec<Factor> = Vec::with_capacity(out.len());
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, n)) if *h == g => *n += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

/// Monic squarefree parts `(a_i, i)` with `f = prod a_i^i`.
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd_raw(&f.derivative());
    let mut w = f.div_exact_raw(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd_raw(&c);
        let fac = w.div_exact_raw(&y);
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact_raw(&w);
        i += 1;
    }
    if !c.is_one() {
        let p = usize::try_from(f.p).expect("p-th power part implies p <= degree");
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Long division for `p < 2^32`, in `u64` so every product fits a machine word.
fn divrem_small(
    num: &[Natural],
    divisor: &[Natural],
    lead_inv: u64,
    p: u64,
) -> (Vec<Natural>, Vec<Natural>) {
    let dd = divisor.len() - 1;
    let divisor: Vec<u64> = divisor.iter().map(|&c| c as u64).collect();
    let mut rem: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let mut quot = vec![0; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] * lead_inv % p;
        quot[k] = c as Natural;
        if c == 0 {
            continue;
        }
        let neg = p - c;
        for (r, &d) in rem[k..].iter_mut().zip(&divisor) {
            *r = (*r + neg * d) % p;
        }
    }
    rem.truncate(dd);
    (quot, rem.into_iter().map(|c| c as Natural).collect())
}

/// The `F_p`-linear map `h -> h^p mod f`, stored as the images of `x^i`.
struct Frobenius {
    modulus: FpPoly,
    images: Vec<FpPoly>,
}

impl Frobenius {
    fn new(modulus: &FpPoly) -> Self {
        let p = modulus.p;
        let n = modulus.deg();
        let xp = FpPoly::x(p).powmod_raw(p, modulus);
        let mut images = Vec::with_capacity(n);
        let mut cur = FpPoly::one(p).rem_raw(modulus);
        for _ in 0..n {
            images.push(cur.clone());
            cur = cur.mul_raw(&xp).rem_raw(modulus);
        }
        Frobenius {
            modulus: modulus.clone(),
            images,
        }
    }

    /// `h^p mod f` for `h` already reduced mod `f`.
    fn apply(&self, h: &FpPoly) -> FpPoly {
        let p = self.modulus.p;
        let n = self.modulus.deg();
        if p <= u32::MAX as Natural {
            let mut acc = vec![0u128; n];
            for (&c, image) in h.coeffs.iter().zip(&self.images) {
                if c == 0 {
                    continue;
                }
                for (slot, &v) in acc.iter_mut().zip(&image.coeffs) {
                    *slot += (c as u64 * v as u64) as u128;
                }
            }
            return FpPoly::from_reduced(p, acc.into_iter().map(|c| c % p).collect());
        }
        h.coeffs
            .iter()
            .zip(&self.images)
            .fold(FpPoly::zero(p), |acc, (&c, image)| {
                acc.add_raw(&image.scale(c))
            })
    }
}

/// Split a monic squarefree polynomial into blocks `(g, d)` where `g` is the
/// product of all its irreducible factors of degree `d`.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut frobenius = Frobenius::new(&rest);
    // x^(p^d) mod rest
    let mut frob = x.rem_raw(&rest);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        frob = frobenius.apply(&frob);
        let g = rest.gcd_raw(&frob.sub_raw(&x));
        if !g.is_one() {
            rest = rest.div_exact_raw(&g);
            frob = frob.rem_raw(&rest);
            out.push((g, d));
            if rest.deg() >= 2 * (d + 1) {
                frobenius = Frobenius::new(&rest);
            }
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let p = f.p;
    let frobenius = (d > 1).then(|| Frobenius::new(f));
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = f.gcd_raw(&a);
        let candidate = if !g.is_one() {
            g
        } else if p == 2 {
            // Absolute trace a + a^2 + ... + a^(2^(d-1)).
            let mut term = a.rem_raw(f);
            let mut trace = term.clone();
            for _ in 1..d {
                term = frobenius.as_ref().expect("d > 1").apply(&term);
                trace = trace.add_raw(&term);
            }
            f.gcd_raw(&trace)
        } else {
            // a^((p^d - 1)/2) as (a * a^p * ... * a^(p^(d-1)))^((p - 1)/2).
            let mut conj = a.rem_raw(f);
            let mut norm = conj.clone();
            for _ in 1..d {
                conj = frobenius.as_ref().expect("d > 1").apply(&conj);
                norm = norm.mul_raw(&conj).rem_raw(f);
            }
            let b = norm.powmod_raw((p - 1) / 2, f);
            f.gcd_raw(&b.sub_raw(&FpPoly::one(p)))
        };
        let k = candidate.deg();
        if k > 0 && k < n {
            let other = f.div_exact_raw(&candidate);
            let mut out = equal_degree(&candidate, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Fraction-free (Bareiss) determinant with checked arithmetic.
fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Result<Integer> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let overflow = || Error::Overflow("discriminant determinant");
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k]).ok_or_else(overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or_else(overflow)?;
                m[i][j] = a.checked_sub(b).ok_or_else(overflow)? / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign).ok_or_else(overflow)
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<Integer> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Ok(0);
    };
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, count) in [(f, m, n), (g, n, m)] {
        for shift in 0..count {
            let mut row = vec![0; size];
            for (i, &c) in poly.coeffs.iter().enumerate() {
                row[shift + deg - i] = c;
            }
            rows.push(row);
        }
    }
    bareiss_det(rows)
}

/// `disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<Integer> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::domain("discriminant requires degree at least 1")),
    };
    let res = resultant(f, &f.derivative()?)?;
    let lc = f.leading();
    if res % lc != 0 {
        return Err(Error::Invariant(format!(
            "Res(f, f') = {res} not divisible by lc = {lc}"
        )));
    }
    let sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(sign * (res / lc))
}

/// Everything the Dedekind criterion builds along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindData {
    pub p: Natural,
    /// Factorization of `f mod p`.
    pub factors: Vec<Factor>,
    /// Monic lifts `g_i` of the irreducible factors.
    pub lifts: Vec<IntPoly>,
    /// `(f - prod g_i^e_i) / p`.
    pub g: IntPoly,
    /// Indices `i` with `e_i > 1` and `phi_i | g mod p`.
    pub obstructions: Vec<usize>,
}

impl DedekindData {
    /// True iff `p` divides `[Z_K : Z[alpha]]`.
    pub fn divides_index(&self) -> bool {
        !self.obstructions.is_empty()
    }
}

/// Run the Dedekind index criterion for a monic `f` at the prime `p`.
pub fn dedekind_criterion(f: &IntPoly, p: Natural) -> Result<DedekindData> {
    dedekind_criterion_seeded(f, p, DEFAULT_SEED)
}

pub fn dedekind_criterion_seeded(f: &IntPoly, p: Natural, seed: u64) -> Result<DedekindData> {
    if !f.is_monic() || f.degree().unwrap_or(0) < 1 {
        return Err(Error::domain(format!(
            "Dedekind criterion needs a monic non-constant polynomial, got {f}"
        )));
    }
    arith::require_prime(p, "p")?;
    let factors = factor_mod_p_seeded(&reduce_mod(f, p)?, seed)?;
    let lifts: Vec<IntPoly> = factors
        .iter()
        .map(|(phi, _)| phi.symmetric_lift())
        .collect();
    let mut prod = IntPoly::constant(1);
    for (lift, (_, e)) in lifts.iter().zip(&factors) {
        prod = prod.checked_mul(&lift.checked_pow(*e)?)?;
    }
    let p_int = Integer::try_from(p).map_err(|_| Error::bound("prime too large"))?;
    let g = f.checked_sub(&prod)?.exact_div_scalar(p_int)?;
    let g_bar = reduce_mod(&g, p)?;
    let obstructions = factors
        .iter()
        .enumerate()
        .filter(|(_, (phi, e))| *e > 1 && g_bar.rem_raw(phi).is_zero())
        .map(|(i, _)| i)
        .collect();
    Ok(DedekindData {
        p,
        factors,
        lifts,
        g,
        obstructions,
    })
}

/// Whether `p` divides the index `[Z_K : Z[alpha]]` for `alpha` a root of `f`.
pub fn dedekind_index_divides(f: &IntPoly, p: Natural) -> Result<bool> {
    Ok(dedekind_criterion(f, p)?.divides_index())
}
