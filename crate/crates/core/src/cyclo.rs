//! Splitting of a rational prime `p` in `Z[z]`, `z` a primitive `q`-th root
//! of unity, for an odd prime `q != p`.
//!
//! `p` is unramified, its residue degree `f` is the order of `p` mod `q`,
//! and there are `t = (q - 1)/f` primes above it. Each prime is the ideal
//! `(p, g(z))` for a monic irreducible factor `g` of `Phi_q mod p`, and its
//! residue field is `F_p[x]/(g)` with `z` mapping to the class of `x`.

use std::fmt;

use num_bigint::BigUint;

use crate::arith::{self, require_odd_prime, require_prime};
use crate::polyfp::{self, reduce_mod, FpPoly, IntPoly, DEFAULT_SEED};
use crate::{Error, Natural, Result};

/// `Phi_q = x^(q-1) + ... + x + 1` for an odd prime `q`.
pub fn cyclotomic_poly(q: Natural) -> Result<IntPoly> {
    require_odd_prime(q, "q")?;
    let len = usize::try_from(q).map_err(|_| Error::bound(format!("q = {q} too large")))?;
    Ok(IntPoly::new(vec![1; len]))
}

/// A prime ideal `(p, g(z))` of `Z[z]` above `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeIdealRep {
    p: Natural,
    q: Natural,
    g: FpPoly,
}

impl PrimeIdealRep {
    /// Checks that `g` is a monic irreducible factor of `Phi_q` over `F_p`.
    pub fn new(p: Natural, q: Natural, g: FpPoly) -> Result<Self> {
        check_pair(p, q)?;
        if g.modulus() != p {
            return Err(Error::domain(format!("generator {g} is not over F_{p}")));
        }
        if !g.is_monic() || g.degree().unwrap_or(0) == 0 {
            return Err(Error::domain(format!(
                "generator {g} must be monic of positive degree"
            )));
        }
        let phi = reduce_mod(&cyclotomic_poly(q)?, p)?;
        if !phi.divrem(&g)?.1.is_zero() {
            return Err(Error::domain(format!(
                "{g} does not divide Phi_{q} mod {p}"
            )));
        }
        if polyfp::factor_mod_p(&g)?.len() != 1 {
            return Err(Error::domain(format!("{g} is reducible mod {p}")));
        }
        Ok(PrimeIdealRep { p, q, g })
    }

    pub fn p(&self) -> Natural {
        self.p
    }

    pub fn q(&self) -> Natural {
        self.q
    }

    pub fn generator(&self) -> &FpPoly {
        &self.g
    }

    pub fn residue_degree(&self) -> usize {
        self.g.degree().expect("generator is nonconstant")
    }

    /// `N(P) = p^f`, exact.
    pub fn norm(&self) -> BigUint {
        BigUint::from(self.p).pow(self.residue_degree() as u32)
    }

    /// The image of `z` in `Z[z]/P`.
    pub fn xi(&self) -> ResidueFieldElem<'_> {
        ResidueFieldElem::from_poly(self, FpPoly::x(self.p))
    }

    pub fn one(&self) -> ResidueFieldElem<'_> {
        ResidueFieldElem::from_poly(self, FpPoly::one(self.p))
    }
}

impl fmt::Display for PrimeIdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.g.to_string().replace('x', "z"))
    }
}

/// An element of the residue field `F_p[x]/(g)` of a prime ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueFieldElem<'a> {
    context: &'a PrimeIdealRep,
    value: FpPoly,
}

impl<'a> ResidueFieldElem<'a> {
    fn from_poly(context: &'a PrimeIdealRep, value: FpPoly) -> Self {
        let value = value.rem_raw(&context.g);
        ResidueFieldElem { context, value }
    }

    pub fn context(&self) -> &'a PrimeIdealRep {
        self.context
    }

    pub fn value(&self) -> &FpPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.context, other.context);
        Self::from_poly(self.context, self.value.mul_raw(&other.value))
    }

    pub fn pow(&self, e: Natural) -> Self {
        ResidueFieldElem {
            context: self.context,
            value: self.value.powmod_raw(e, &self.context.g),
        }
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        let value = self
            .value
            .powmod_big(e, &self.context.g)
            .expect("same field, nonzero modulus");
        ResidueFieldElem {
            context: self.context,
            value,
        }
    }
}

/// Image in `Z[z]/P` of the element `a(z)` of `Z[z]`.
pub fn residue_elem<'a>(prime: &'a PrimeIdealRep, a: &IntPoly) -> Result<ResidueFieldElem<'a>> {
    Ok(ResidueFieldElem::from_poly(prime, reduce_mod(a, prime.p)?))
}

/// How `p` splits in `Z[z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSplit {
    pub p: Natural,
    pub q: Natural,
    /// Residue degree.
    pub f: usize,
    /// Number of primes above `p`.
    pub t: usize,
    pub ideals: Vec<PrimeIdealRep>,
}

impl CyclotomicSplit {
    /// Ramification index; always 1 because `p != q`.
    pub fn e(&self) -> usize {
        1
    }

    pub fn is_inert(&self) -> bool {
        self.t == 1
    }
}

fn check_pair(p: Natural, q: Natural) -> Result<()> {
    require_prime(p, "p")?;
    require_odd_prime(q, "q")?;
    if p == q {
        return Err(Error::domain(format!(
            "p = q = {p} is ramified in Z[z]; splitting data needs p != q"
        )));
    }
    Ok(())
}

pub fn splitting_data(p: Natural, q: Natural) -> Result<CyclotomicSplit> {
    splitting_data_seeded(p, q, DEFAULT_SEED)
}

/// Splitting data of `p` in `Z[z]`, factoring `Phi_q mod p` with the given seed.
pub fn splitting_data_seeded(p: Natural, q: Natural, seed: u64) -> Result<CyclotomicSplit> {
    check_pair(p, q)?;
    let f = arith::mult_order(p % q, q)? as usize;
    let n = (q - 1) as usize;
    let t = n / f;
    let phi = reduce_mod(&cyclotomic_poly(q)?, p)?;
    let factors = polyfp::factor_mod_p_seeded(&phi, seed)?;

    if factors.len() != t
        || factors
            .iter()
            .any(|(g, e)| *e != 1 || g.degree() != Some(f))
    {
        return Err(Error::Invariant(format!(
            "Phi_{q} mod {p} should be {t} distinct factors of degree {f}"
        )));
    }
    let product = factors
        .iter()
        .fold(FpPoly::one(p), |acc, (g, _)| acc.mul_raw(g));
    if product != phi {
        return Err(Error::Invariant(format!(
            "factors of Phi_{q} mod {p} do not multiply back"
        )));
    }

    let ideals = factors
        .into_iter()
        .map(|(g, _)| PrimeIdealRep { p, q, g })
        .collect();
    Ok(CyclotomicSplit { p, q, f, t, ideals })
}
