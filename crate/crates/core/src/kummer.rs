//! The Kummer extension `L = K(r^(1/q))` of `K = Q(z)`.
//!
//! For a prime `P` of `Z[z]` above `p != q` the `q`-th power residue
//! character `(mu/P)_q` is the `q`-th root of unity congruent to
//! `mu^((N(P) - 1)/q)`. It decides how `P` behaves in `L`: ramified when
//! the value is 0, split into `q` primes when it is 1, inert otherwise. The
//! Frobenius of `P` in `L/K` sends `r^(1/q)` to `(r/P)_q * r^(1/q)`, so it is
//! the identity exactly when the character of `r` is trivial.
//!
//! Roots of unity are carried as exponents `k` of `z`; nothing here is
//! embedded in the complex numbers.

use std::fmt;

use num_bigint::BigUint;

use crate::arith::{
    self, add_mod, mod_inv, mul_mod, pow_mod_unchecked, require_odd_prime, require_prime,
};
use crate::cyclo::{residue_elem, splitting_data_seeded, PrimeIdealRep};
use crate::polyfp::{IntPoly, DEFAULT_SEED};
use crate::search::Representation;
use crate::{Error, Integer, Natural, Result};

/// Value of the `q`-th power residue character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueSymbol {
    /// `mu` lies in `P`.
    Zero,
    /// The value `z^k`, `0 <= k < q`.
    Root(usize),
}

impl ResidueSymbol {
    /// True for `Root(0)`: the character is 1 and the Frobenius is the identity.
    pub fn is_trivial(self) -> bool {
        self == ResidueSymbol::Root(0)
    }
}

impl fmt::Display for ResidueSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueSymbol::Zero => write!(f, "0"),
            ResidueSymbol::Root(k) => write!(f, "z^{k}"),
        }
    }
}

/// Behaviour of a prime of `Z[z]` in `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KummerSplitType {
    /// `P` is the `q`-th power of a prime of `L`.
    Ramified,
    /// `P` is a product of `q` distinct primes of `L`.
    SplitsCompletely,
    /// `P` stays prime in `L`.
    Inert,
}

impl From<ResidueSymbol> for KummerSplitType {
    fn from(symbol: ResidueSymbol) -> Self {
        match symbol {
            ResidueSymbol::Zero => KummerSplitType::Ramified,
            ResidueSymbol::Root(0) => KummerSplitType::SplitsCompletely,
            ResidueSymbol::Root(_) => KummerSplitType::Inert,
        }
    }
}

impl fmt::Display for KummerSplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KummerSplitType::Ramified => "ramified",
            KummerSplitType::SplitsCompletely => "splits-completely",
            KummerSplitType::Inert => "inert",
        })
    }
}

/// `(mu/P)_q` for `mu` in `Z[z]`, written as a polynomial in `z`.
pub fn power_residue_symbol(mu: &IntPoly, prime: &PrimeIdealRep) -> Result<ResidueSymbol> {
    let m = residue_elem(prime, mu)?;
    if m.is_zero() {
        return Ok(ResidueSymbol::Zero);
    }
    let q = prime.q();
    let norm_minus_one = prime.norm() - 1u32;
    let q_big = BigUint::from(q);
    if &norm_minus_one % &q_big != BigUint::from(0u32) {
        return Err(Error::Invariant(format!(
            "q = {q} does not divide N({prime}) - 1"
        )));
    }
    let s = m.pow_big(&(norm_minus_one / q_big));
    let xi = prime.xi();
    let mut xi_k = prime.one();
    for k in 0..q as usize {
        if xi_k == s {
            return Ok(ResidueSymbol::Root(k));
        }
        xi_k = xi_k.mul(&xi);
    }
    Err(Error::Invariant(format!(
        "mu^((N(P)-1)/q) = {} is not a power of z modulo {prime}",
        s.value()
    )))
}

/// Character of the constant `r`, i.e. the Frobenius of `P` in `K(r^(1/q))/K`
/// as the exponent `k` in `r^(1/q) -> z^k * r^(1/q)`.
pub fn artin_symbol(r: Natural, prime: &PrimeIdealRep) -> Result<ResidueSymbol> {
    require_prime(r, "r")?;
    if r == prime.q() {
        return Err(Error::domain(format!(
            "r = q = {r}: the radicand must differ from q"
        )));
    }
    let r = Integer::try_from(r).map_err(|_| Error::bound(format!("r = {r} too large")))?;
    power_residue_symbol(&IntPoly::constant(r), prime)
}

pub fn kummer_split_type(r: Natural, prime: &PrimeIdealRep) -> Result<KummerSplitType> {
    artin_symbol(r, prime).map(KummerSplitType::from)
}

/// Exhaustive search limit for [`qth_root_mod_p`] when `q^2 | p - 1`.
pub const QTH_ROOT_SCAN_LIMIT: Natural = 1_000_000;

/// All `a` in `[1, p)` with `a^q = r (mod p)`, ascending.
pub fn qth_root_mod_p(r: Natural, q: Natural, p: Natural) -> Result<Vec<Natural>> {
    qth_root_mod_p_bounded(r, q, p, QTH_ROOT_SCAN_LIMIT)
}

/// As [`qth_root_mod_p`], with an explicit bound on the brute-force fallback.
pub fn qth_root_mod_p_bounded(
    r: Natural,
    q: Natural,
    p: Natural,
    scan_limit: Natural,
) -> Result<Vec<Natural>> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    let r = r % p;
    if r == 0 {
        return Err(Error::domain(format!("p = {p} divides r")));
    }
    let group = p - 1;
    if !group.is_multiple_of(q) {
        // q is invertible mod p - 1, so a -> a^q is a bijection.
        let inv = mod_inv(q, group).expect("gcd(q, p - 1) = 1");
        return Ok(vec![pow_mod_unchecked(r, inv, p)]);
    }
    let cofactor = group / q;
    if pow_mod_unchecked(r, cofactor, p) != 1 {
        return Ok(Vec::new());
    }
    let mut roots = if !cofactor.is_multiple_of(q) {
        // gcd(q, cofactor) = 1 and r^cofactor = 1, so r^(q^-1 mod cofactor) is a root.
        let base = if cofactor == 1 {
            1
        } else {
            pow_mod_unchecked(r, mod_inv(q % cofactor, cofactor).expect("coprime"), p)
        };
        let zeta = (2..p)
            .map(|g| pow_mod_unchecked(g, cofactor, p))
            .find(|&z| z != 1)
            .expect("q | p - 1 gives a nontrivial q-th root of unity");
        let mut out = Vec::with_capacity(q as usize);
        let mut a = base;
        for _ in 0..q {
            out.push(a);
            a = arith::mul_mod(a, zeta, p);
        }
        out
    } else {
        if p >= scan_limit {
            return Err(Error::bound(format!(
                "q^2 | p - 1 and p = {p} exceeds the exhaustive root search limit {scan_limit}"
            )));
        }
        (1..p)
            .filter(|&a| pow_mod_unchecked(a, q, p) == r)
            .collect()
    };
    roots.sort_unstable();
    for &a in &roots {
        if pow_mod_unchecked(a, q, p) != r {
            return Err(Error::Invariant(format!("{a}^{q} != {r} mod {p}")));
        }
    }
    Ok(roots)
}

/// One factor `(x + z^i * y * rt)` of `p` in the ring of integers of `L`,
/// where `rt = r^(1/q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerIdealFactor {
    pub index: usize,
    pub x: Integer,
    pub y: Integer,
    /// When known, the same prime as `(p, alpha - z^i * rt)`.
    pub two_generator: Option<(Natural, Natural)>,
}

impl KummerIdealFactor {
    /// `(x + y * z^i * rt)` in ASCII.
    pub fn principal_form(&self) -> String {
        let sign = if self.y < 0 { '-' } else { '+' };
        format!(
            "({} {sign} {} * z^{} * rt)",
            self.x,
            self.y.unsigned_abs(),
            self.index
        )
    }

    /// `(p, alpha - z^i * rt)` in ASCII.
    pub fn two_generator_form(&self) -> Option<String> {
        self.two_generator
            .map(|(p, alpha)| format!("({p}, {alpha} - z^{} * rt)", self.index))
    }
}

/// Factorization of `p = x^q + r*y^q` into `q` primes of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerDecomposition {
    pub rep: Representation,
    /// The unique `alpha` with `alpha^q = r (mod p)`.
    pub alpha: Option<Natural>,
    pub factors: Vec<KummerIdealFactor>,
    /// Constant term after expanding the product of all factors and
    /// substituting `rt^q = r`; equals `p`.
    pub product_value: Integer,
}

impl KummerDecomposition {
    pub fn legend(&self) -> String {
        format!(
            "z = primitive root of unity of order {q}, rt = {r}^(1/{q})",
            q = self.rep.q,
            r = self.rep.r
        )
    }
}

/// Element of `Z[z]/(Phi_q)`, kept as `q` coefficients modulo `z^q - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct CycloInt(Vec<Integer>);

impl CycloInt {
    fn zero(q: usize) -> Self {
        CycloInt(vec![0; q])
    }

    fn monomial(q: usize, c: Integer, i: usize) -> Self {
        let mut v = vec![0; q];
        v[i % q] = c;
        CycloInt(v)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("cyclotomic add")))
            .collect::<Result<_>>()
            .map(CycloInt)
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let q = self.0.len();
        let mut out = vec![0 as Integer; q];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                let t = a
                    .checked_mul(b)
                    .ok_or(Error::Overflow("cyclotomic multiply"))?;
                out[(i + j) % q] = out[(i + j) % q]
                    .checked_add(t)
                    .ok_or(Error::Overflow("cyclotomic multiply"))?;
            }
        }
        Ok(CycloInt(out))
    }

    /// Canonical form: subtract `c_(q-1) * Phi_q` so the top coefficient is 0.
    fn normalized(&self) -> Result<Self> {
        let top = *self.0.last().expect("q >= 1");
        self.0
            .iter()
            .map(|&c| {
                c.checked_sub(top)
                    .ok_or(Error::Overflow("cyclotomic normalize"))
            })
            .collect::<Result<_>>()
            .map(CycloInt)
    }

    /// The rational integer this element equals, if it is one.
    fn as_rational(&self) -> Result<Option<Integer>> {
        let n = self.normalized()?;
        Ok(n.0[1..].iter().all(|&c| c == 0).then_some(n.0[0]))
    }
}

/// Expand `prod_i (x + y z^i T)` over `Z[z]/(Phi_q)`, check that it is
/// `x^q + y^q T^q`, and return its value at `T^q = r`.
fn principal_product_value(q: usize, x: Integer, y: Integer, r: Integer) -> Result<Integer> {
    // Coefficients of the running product as a polynomial in T.
    let mut poly = vec![CycloInt::monomial(q, 1, 0)];
    for i in 0..q {
        let mut next = vec![CycloInt::zero(q); poly.len() + 1];
        let shift = CycloInt::monomial(q, y, i);
        let constant = CycloInt::monomial(q, x, 0);
        for (k, c) in poly.iter().enumerate() {
            next[k] = next[k].add(&c.mul(&constant)?)?;
            next[k + 1] = next[k + 1].add(&c.mul(&shift)?)?;
        }
        poly = next;
    }
    let mut rationals = Vec::with_capacity(poly.len());
    for c in &poly {
        match c.as_rational()? {
            Some(v) => rationals.push(v),
            None => {
                return Err(Error::Invariant(format!(
                    "product of principal factors has a non-rational coefficient {c:?}"
                )))
            }
        }
    }
    if rationals[1..q].iter().any(|&c| c != 0) {
        return Err(Error::Invariant(
            "product of principal factors has middle terms".into(),
        ));
    }
    let overflow = || Error::Overflow("principal product value");
    rationals[q]
        .checked_mul(r)
        .and_then(|v| v.checked_add(rationals[0]))
        .ok_or_else(overflow)
}

/// The ideal factorization `pA = prod_i (x + z^i y rt)A` for an inert `p`.
pub fn kummer_ideal_decomposition(rep: &Representation) -> Result<KummerDecomposition> {
    rep.validate()?;
    let (p, q, r) = (rep.p, rep.q, rep.r);
    require_odd_prime(q, "q")?;
    require_prime(r, "r")?;
    if p == q || p == r || q == r {
        return Err(Error::domain(format!(
            "p, q, r = {p}, {q}, {r} must be distinct"
        )));
    }
    if !arith::is_generator(p, q)? {
        return Err(Error::domain(format!(
            "p = {p} does not generate (Z/{q})^*, so p is not inert in Z[z]"
        )));
    }
    let qs = arith::small_exponent(q)? as usize;

    let roots = qth_root_mod_p(r, q, p)?;
    let alpha = match roots.as_slice() {
        [a] => Some(*a),
        _ => None,
    };
    if let Some(a) = alpha {
        // -x/y is a q-th root of r mod p, hence equal to alpha.
        let modulus = p as Integer;
        let x_res = rep.x.rem_euclid(modulus) as Natural;
        let y_res = rep.y.rem_euclid(modulus) as Natural;
        if add_mod(x_res, mul_mod(y_res, a, p), p) != 0 {
            return Err(Error::Invariant(format!(
                "x + y*alpha != 0 mod {p} for alpha = {a}"
            )));
        }
    }

    let factors = (0..qs)
        .map(|index| KummerIdealFactor {
            index,
            x: rep.x,
            y: rep.y,
            two_generator: alpha.map(|a| (p, a)),
        })
        .collect();

    let r_int = Integer::try_from(r).map_err(|_| Error::bound("r too large"))?;
    let product_value = principal_product_value(qs, rep.x, rep.y, r_int)?;
    if product_value != p as Integer {
        return Err(Error::Invariant(format!(
            "product of principal factors is {product_value}, expected {p}"
        )));
    }
    Ok(KummerDecomposition {
        rep: rep.clone(),
        alpha,
        factors,
        product_value,
    })
}

fn check_distinct_primes(p: Natural, q: Natural, r: Natural) -> Result<()> {
    require_prime(p, "p")?;
    require_odd_prime(q, "q")?;
    require_prime(r, "r")?;
    if p == q || p == r || q == r {
        return Err(Error::domain(format!(
            "p, q, r = {p}, {q}, {r} must be distinct"
        )));
    }
    Ok(())
}

/// True iff the Frobenius of every prime of `Z[z]` above `p` is trivial in
/// `K(r^(1/q))`, which a representation `p = x^q + r*y^q` forces.
pub fn lemma31_check(p: Natural, q: Natural, r: Natural) -> Result<bool> {
    lemma31_check_seeded(p, q, r, DEFAULT_SEED)
}

pub fn lemma31_check_seeded(p: Natural, q: Natural, r: Natural, seed: u64) -> Result<bool> {
    check_distinct_primes(p, q, r)?;
    let split = splitting_data_seeded(p, q, seed)?;
    for prime in &split.ideals {
        if !artin_symbol(r, prime)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}
