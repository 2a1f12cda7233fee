//! Reduced positive-definite binary quadratic forms and the
//! class-number-one case of the `p = x^2 + n*y^2` criterion.
//!
//! When `h(-4n) = 1` the Hilbert class field of `Q(sqrt(-n))` is the field
//! itself, so an odd prime `p` not dividing `n` is `x^2 + n*y^2` exactly
//! when `(-n/p) = 1`. For larger class numbers the criterion needs the
//! class polynomial, which is not computed here.

use std::fmt;

use crate::arith::{self, isqrt, legendre};
use crate::{Error, Integer, Natural, Result};

/// The form `a*x^2 + b*x*y + c*y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
}

impl QuadForm {
    pub fn discriminant(&self) -> Integer {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    pub fn is_primitive(&self) -> bool {
        let g = arith::gcd(self.a.unsigned_abs(), self.b.unsigned_abs());
        arith::gcd(g, self.c.unsigned_abs()) == 1
    }

    /// `|b| <= a <= c`, and `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Every reduced primitive positive-definite form of discriminant `delta`,
/// sorted by `(a, b, c)`.
pub fn reduced_forms(delta: Integer) -> Result<Vec<QuadForm>> {
    if delta >= 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
        return Err(Error::domain(format!(
            "discriminant {delta} must be negative and congruent to 0 or 1 mod 4"
        )));
    }
    let abs = delta.unsigned_abs();
    // Reduced forms have 3b^2 <= 3a^2 <= 4ac - b^2 = |delta|.
    let b_max = isqrt(abs / 3) as Integer;
    let mut out = Vec::new();
    for b in (0..=b_max).filter(|b| (b - delta) % 2 == 0) {
        let m = (b * b - delta) / 4;
        // a | m with b <= a <= c = m/a.
        let a_lo = b.max(1);
        let a_hi = isqrt(m as Natural) as Integer;
        for a in (a_lo..=a_hi).filter(|a| m % a == 0) {
            let c = m / a;
            for form in [QuadForm { a, b, c }, QuadForm { a, b: -b, c }] {
                if form.is_reduced() && form.is_primitive() && !out.contains(&form) {
                    out.push(form);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn is_squarefree(n: Natural) -> bool {
    let mut d: Natural = 2;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks the hypotheses on `n`: positive, squarefree, not `3 mod 4`.
fn check_cox_hypotheses(n: Natural) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be a positive integer"));
    }
    if n % 4 == 3 {
        return Err(Error::domain(format!("n = {n} is congruent to 3 mod 4")));
    }
    if !is_squarefree(n) {
        return Err(Error::domain(format!("n = {n} is not squarefree")));
    }
    Ok(())
}

/// `h(-4n)`.
pub fn class_number(n: Natural) -> Result<usize> {
    check_cox_hypotheses(n)?;
    let delta = Integer::try_from(n)
        .ok()
        .and_then(|n| n.checked_mul(-4))
        .ok_or_else(|| Error::bound(format!("n = {n} too large")))?;
    Ok(reduced_forms(delta)?.len())
}

/// A witness `p = x^2 + n*y^2` with `x, y >= 0`, smallest `y` first.
pub fn represents(p: Natural, n: Natural) -> Option<(Natural, Natural)> {
    if n == 0 {
        return None;
    }
    (0..=isqrt(p / n)).find_map(|y| {
        let rest = p - n * y * y;
        let x = isqrt(rest);
        (x * x == rest).then_some((x, y))
    })
}

/// Outcome of checking the criterion over a range of primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxReport {
    pub n: Natural,
    pub p_max: Natural,
    pub class_number: usize,
    /// Odd primes `p <= p_max` with `p` not dividing `n`.
    pub primes_checked: usize,
    /// Of those, how many are `x^2 + n*y^2`.
    pub represented: usize,
    /// Of those, how many have `(-n/p) = 1`.
    pub residue_one: usize,
    /// Primes where the two sides disagree.
    pub counterexamples: Vec<Natural>,
}

/// Verify `p = x^2 + n*y^2  <=>  (-n/p) = 1` for all odd primes `p <= p_max`
/// not dividing `n`. Only valid, and only accepted, when `h(-4n) = 1`.
pub fn cox_check_h1(n: Natural, p_max: Natural) -> Result<CoxReport> {
    let h = class_number(n)?;
    if h != 1 {
        return Err(Error::domain(format!(
            "h(-4*{n}) = {h}: the criterion needs the class polynomial, supported only for h = 1"
        )));
    }
    let neg_n = -Integer::try_from(n).map_err(|_| Error::bound("n too large"))?;
    let mut report = CoxReport {
        n,
        p_max,
        class_number: h,
        primes_checked: 0,
        represented: 0,
        residue_one: 0,
        counterexamples: Vec::new(),
    };
    for p in (3..=p_max).step_by(2) {
        if n.is_multiple_of(p) || !arith::is_prime(p)? {
            continue;
        }
        report.primes_checked += 1;
        let rep = represents(p, n).is_some();
        let res = legendre(neg_n, p)? == 1;
        report.represented += rep as usize;
        report.residue_one += res as usize;
        if rep != res {
            report.counterexamples.push(p);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: Integer, b: Integer, c: Integer) -> QuadForm {
        QuadForm { a, b, c }
    }

    /// All reduced primitive forms by brute force over a box.
    fn naive_forms(delta: Integer) -> Vec<QuadForm> {
        let bound = 1 + delta.abs();
        let mut out = Vec::new();
        for a in 1..=bound {
            for b in -a..=a {
                let num = b * b - delta;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                if c > bound {
                    continue;
                }
                let form = f(a, b, c);
                if form.is_reduced() && form.is_primitive() {
                    out.push(form);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn reduced_form_examples() {
        assert_eq!(reduced_forms(-4).unwrap(), vec![f(1, 0, 1)]);
        assert_eq!(reduced_forms(-20).unwrap(), vec![f(1, 0, 5), f(2, 2, 3)]);
        assert_eq!(reduced_forms(-3).unwrap(), vec![f(1, 1, 1)]);
        assert!(reduced_forms(-5).is_err());
        assert!(reduced_forms(0).is_err());
        assert!(reduced_forms(5).is_err());
    }

    #[test]
    fn reduced_forms_match_naive_enumeration() {
        for delta in (-200..0).filter(|d: &Integer| matches!(d.rem_euclid(4), 0 | 1)) {
            let forms = reduced_forms(delta).unwrap();
            assert_eq!(forms, naive_forms(delta), "delta = {delta}");
            for form in &forms {
                assert_eq!(form.discriminant(), delta);
                assert!(form.is_positive_definite() && form.is_primitive() && form.is_reduced());
            }
        }
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(1).unwrap(), 1);
        assert_eq!(class_number(5).unwrap(), 2);
        assert_eq!(class_number(2).unwrap(), 1);
        // h(-4n) for a few more squarefree n != 3 mod 4.
        assert_eq!(class_number(6).unwrap(), 2);
        assert_eq!(class_number(14).unwrap(), 4);
        assert_eq!(class_number(17).unwrap(), 4);
    }

    #[test]
    fn class_number_names_violated_hypothesis() {
        let msg = class_number(3).unwrap_err().to_string();
        assert!(msg.contains("3 mod 4"), "{msg}");
        let msg = class_number(12).unwrap_err().to_string();
        assert!(msg.contains("squarefree"), "{msg}");
        assert!(class_number(0).is_err());
    }

    #[test]
    fn represents_examples() {
        assert_eq!(represents(5, 1), Some((2, 1)));
        assert_eq!(represents(13, 1), Some((3, 2)));
        assert_eq!(represents(7, 1), None);
        assert_eq!(represents(11, 2), Some((3, 1)));
    }

    #[test]
    fn cox_h1_regime() {
        for n in [1, 2] {
            let report = cox_check_h1(n, 2000).unwrap();
            assert!(report.counterexamples.is_empty());
            assert_eq!(report.represented, report.residue_one);
        }
        assert!(matches!(cox_check_h1(5, 100), Err(Error::Domain(_))));
    }
}
