//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use kprime::cyclo::{cyclotomic_poly, splitting_data};
use kprime::kummer::{lemma31_check, power_residue_symbol, ResidueSymbol};
use kprime::polyfp::{dedekind_criterion, dedekind_index_divides, factor_mod_p, FpPoly, IntPoly};
use kprime::qforms::{class_number, cox_check_h1, represents};
use kprime::search::{heathbrown_census, WORKED_EXAMPLES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Distinct primes x^3 + 2y^3 on the 20 x 20 grid, frozen from a separate
/// trial-division run.
const CENSUS_20: usize = 60;

const VERIFY_RUNTIME_LIMIT: Duration = Duration::from_secs(10);

fn kprime(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kprime"))
        .args(args)
        .output()
        .expect("spawn kprime");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = kprime(&full);
    assert_eq!(code, 0, "{args:?}");
    out.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn to_naive(f: &FpPoly) -> Poly {
    f.coeffs().iter().map(|&c| c as u64).collect()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_examples() -> Outcome {
    let start = Instant::now();
    let rows = json_lines(&["verify-paper"]);
    let elapsed = start.elapsed();
    ensure(rows.len() == 8, || format!("{} rows", rows.len()))?;
    for (row, &(p, q, r, x, y)) in rows.iter().zip(WORKED_EXAMPLES.iter()) {
        let res = &row["result"];
        ensure(
            res["p"] == p.to_string() && res["q"] == q.to_string() && res["r"] == r.to_string(),
            || format!("row order: {res}"),
        )?;
        ensure(res["generator_ok"] == true, || format!("{p}: generator"))?;
        ensure(order_naive(p % q, q) == q - 1, || {
            format!("{p}: order oracle")
        })?;
        ensure(res["t"] == 1, || format!("{p}: not inert"))?;
        ensure(res["artin_trivial"] == true, || format!("{p}: symbol"))?;
        let stated = serde_json::json!([x.to_string(), y.to_string()]);
        ensure(
            res["witnesses"].as_array().unwrap().contains(&stated),
            || format!("{p}: witness"),
        )?;
        ensure(form_naive(x, y, q, r) == p as i128, || {
            format!("{p}: stated witness arithmetic")
        })?;
    }
    ensure(elapsed < VERIFY_RUNTIME_LIMIT, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("8/8 rows, {:.3}s", elapsed.as_secs_f64()))
}

fn decompose_197() -> Outcome {
    let v = &json_lines(&["decompose", "197", "3", "7"])[0]["result"];
    ensure(v["alpha"] == "65", || format!("alpha = {}", v["alpha"]))?;
    ensure(pow_naive(65, 3, 197) == 7, || "65^3 != 7 mod 197".into())?;
    ensure(
        (1..197).filter(|&a| pow_naive(a, 3, 197) == 7).eq([65]),
        || "cube root not unique".into(),
    )?;
    let forms: Vec<String> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["two_generator"].as_str().unwrap().into())
        .collect();
    let expected: Vec<String> = (0..3).map(|i| format!("(197, 65 - z^{i} * rt)")).collect();
    ensure(forms == expected, || format!("{forms:?}"))?;
    Ok(format!("alpha = 65, ideals {}", forms.join(" ")))
}

fn symbol_mass_property() -> Outcome {
    let mut checked = 0;
    for q in [3u128, 5] {
        for r in [3u128, 7, 11, 13].into_iter().filter(|&r| r != q) {
            let rows = json_lines(&["mine", &q.to_string(), &r.to_string(), "30", "30"]);
            let mut ps: Vec<u128> = rows
                .iter()
                .map(|v| v["result"]["p"].as_str().unwrap().parse().unwrap())
                .collect();
            ps.dedup();
            for p in ps {
                if p == q || p == r || (q * r) % p == 0 {
                    continue;
                }
                ensure(lemma31_check(p, q, r).unwrap(), || {
                    format!("p = {p}, q = {q}, r = {r}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} primes, 0 exceptions"))
}

fn splitting_law() -> Outcome {
    let mut pairs = 0;
    for q in [3u128, 5, 7, 11] {
        for p in primes_below(1000).into_iter().filter(|&p| p != q) {
            let s = splitting_data(p, q).unwrap();
            let f = order_naive(p % q, q) as usize;
            let ctx = || format!("p = {p}, q = {q}");
            ensure(s.e() == 1 && s.f == f && s.t == (q as usize - 1) / f, ctx)?;
            ensure(s.ideals.len() == s.t, ctx)?;
            let mut product: Poly = vec![1];
            for ideal in &s.ideals {
                let g = to_naive(ideal.generator());
                ensure(g.len() - 1 == f && *g.last().unwrap() == 1, ctx)?;
                ensure(is_irreducible_naive(&g, p as u64), ctx)?;
                product = pmul(&product, &g, p as u64);
            }
            ensure(product == vec![1u64; q as usize], ctx)?;
            ensure(
                cyclotomic_poly(q).unwrap().coeffs().iter().all(|&c| c == 1),
                ctx,
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// All `q`-th powers of nonzero elements of `F_p[x]/(g)`.
fn qth_power_table(g: &[u64], p: u64, q: u128) -> HashSet<Poly> {
    let f = g.len() - 1;
    let mut set = HashSet::new();
    let mut digits = vec![0u64; f];
    loop {
        let a = trim(digits.clone());
        if !a.is_empty() {
            set.insert(ppowmod(&a, q, g, p));
        }
        let mut i = 0;
        while i < f && digits[i] == p - 1 {
            digits[i] = 0;
            i += 1;
        }
        if i == f {
            return set;
        }
        digits[i] += 1;
    }
}

fn character_oracle() -> Outcome {
    let mut ideals = 0;
    for q in [3u128, 5, 7, 11] {
        for p in primes_below(1000).into_iter().filter(|&p| p != q) {
            for ideal in splitting_data(p, q).unwrap().ideals {
                if ideal.norm() > 10_000u32.into() {
                    continue;
                }
                let g = to_naive(ideal.generator());
                let powers = qth_power_table(&g, p as u64, q);
                for mu in 1..=50i128 {
                    let sym = power_residue_symbol(&IntPoly::constant(mu), &ideal).unwrap();
                    let m = trim(vec![(mu as u128 % p) as u64]);
                    let expected_zero = m.is_empty();
                    ensure((sym == ResidueSymbol::Zero) == expected_zero, || {
                        format!("mu = {mu} at {ideal}")
                    })?;
                    if !expected_zero {
                        ensure(sym.is_trivial() == powers.contains(&m), || {
                            format!("mu = {mu} at {ideal}: {sym}")
                        })?;
                    }
                }
                ideals += 1;
            }
        }
    }
    Ok(format!("{ideals} prime ideals, mu = 1..50"))
}

fn census() -> Outcome {
    let v = &json_lines(&["census", "20", "20"])[0]["result"];
    let count = v["count"].as_u64().unwrap() as usize;
    let mut naive = HashSet::new();
    for x in 1..=20i128 {
        for y in 1..=20i128 {
            let n = form_naive(x, y, 3, 2) as u128;
            if is_prime_naive(n) {
                naive.insert(n);
            }
        }
    }
    ensure(count == CENSUS_20, || {
        format!("count {count}, fixture {CENSUS_20}")
    })?;
    ensure(naive.len() == CENSUS_20, || {
        format!("trial division gives {}", naive.len())
    })?;
    ensure(heathbrown_census(20, 20).unwrap() == count, || {
        "library and CLI disagree".into()
    })?;
    ensure(count >= 10, || "fewer than 10".into())?;
    Ok(format!("N_20 = {count}"))
}

/// Reduced primitive forms of discriminant -4n by a triple loop.
fn naive_class_number(n: i128) -> usize {
    let delta = -4 * n;
    let bound = 1 + delta.abs();
    let mut count = 0;
    for a in 1..=bound {
        for b in -a..=a {
            for c in a..=bound {
                if b * b - 4 * a * c != delta {
                    continue;
                }
                let reduced = b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c));
                let g = [a, b.abs(), c].into_iter().fold(0, |g, v| {
                    let (mut x, mut y) = (g, v);
                    while y != 0 {
                        (x, y) = (y, x % y);
                    }
                    x
                });
                if reduced && g == 1 {
                    count += 1;
                }
            }
        }
    }
    count
}

fn cox_h1() -> Outcome {
    for (n, h) in [(1u128, 1usize), (2, 1), (5, 2)] {
        ensure(class_number(n).unwrap() == h, || format!("h(-4*{n})"))?;
        ensure(naive_class_number(n as i128) == h, || {
            format!("oracle h(-4*{n})")
        })?;
    }
    let mut checked = 0;
    for n in [1u128, 2] {
        let report = cox_check_h1(n, 10_000).unwrap();
        ensure(report.counterexamples.is_empty(), || {
            format!("n = {n}: {:?}", report.counterexamples)
        })?;
        // Independent: Euler's criterion against a direct search for x, y.
        for p in primes_below(10_001)
            .into_iter()
            .filter(|&p| p > 2 && n % p != 0)
        {
            let euler = pow_naive((p - n % p) % p, (p - 1) / 2, p) == 1;
            let mut rep = false;
            let mut y = 0;
            while n * y * y <= p {
                let rest = p - n * y * y;
                let x = (rest as f64).sqrt() as u128;
                rep |= (x.saturating_sub(1)..=x + 1).any(|x| x * x == rest);
                y += 1;
            }
            ensure(rep == euler && represents(p, n).is_some() == rep, || {
                format!("n = {n}, p = {p}")
            })?;
        }
        checked += report.primes_checked;
    }
    Ok(format!("{checked} primes, 0 counterexamples; h = 1, 1, 2"))
}

/// Whether some `(a + b*alpha)/p`, `alpha^2 = -c`, `0 <= a, b < p`, not in
/// `Z[alpha]`, is an algebraic integer: trace `2a/p` and norm
/// `(a^2 + c*b^2)/p^2` must both be integers.
fn quadratic_index_oracle(c: i128, p: i128) -> bool {
    (0..p).any(|a| {
        (0..p).any(|b| (a, b) != (0, 0) && (2 * a) % p == 0 && (a * a + c * b * b) % (p * p) == 0)
    })
}

fn dedekind_and_factoring() -> Outcome {
    let x2p1 = IntPoly::new(vec![1, 0, 1]);
    let x2p3 = IntPoly::new(vec![3, 0, 1]);
    ensure(!dedekind_index_divides(&x2p1, 2).unwrap(), || {
        "x^2 + 1".into()
    })?;
    ensure(dedekind_index_divides(&x2p3, 2).unwrap(), || {
        "x^2 + 3".into()
    })?;
    ensure(
        !quadratic_index_oracle(1, 2) && quadratic_index_oracle(3, 2),
        || "integrality oracle".into(),
    )?;
    for c in 1..=30i128 {
        for p in [2u128, 3, 5, 7] {
            let f = IntPoly::new(vec![c, 0, 1]);
            let got = dedekind_criterion(&f, p).unwrap().divides_index();
            ensure(got == quadratic_index_oracle(c, p as i128), || {
                format!("x^2 + {c}, p = {p}")
            })?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    for case in 0..1000 {
        let p = [3u64, 5, 7, 11, 13][rng.gen_range(0..5)];
        let deg = rng.gen_range(1..=8);
        let mut coeffs: Vec<u128> = (0..deg).map(|_| rng.gen_range(0..p) as u128).collect();
        coeffs.push(1);
        let f = FpPoly::new(p as u128, coeffs);
        let factors = factor_mod_p(&f).unwrap();
        let mut product: Poly = vec![1];
        for (i, (g, e)) in factors.iter().enumerate() {
            let g = to_naive(g);
            ensure(
                *g.last().unwrap() == 1 && is_irreducible_naive(&g, p),
                || format!("case {case}: factor {g:?}"),
            )?;
            ensure(factors[..i].iter().all(|(h, _)| to_naive(h) != g), || {
                format!("case {case}: repeated")
            })?;
            for _ in 0..*e {
                product = pmul(&product, &g, p);
            }
        }
        ensure(product == to_naive(&f), || format!("case {case}: product"))?;
    }
    Ok("x^2 + 1: no, x^2 + 3: yes; 1000 round trips".into())
}

const DETERMINISM_COMMANDS: &[&[&str]] = &[
    &["verify-paper"],
    &["decompose", "197", "3", "7"],
    &["decompose", "187387", "11", "5"],
    &["split", "101", "5"],
    &["split", "997", "11"],
    &["symbol", "2", "31", "5"],
    &["symbol", "5", "331", "11"],
    &["represent", "127277", "7", "3", "--allow-negative"],
    &["mine", "3", "7", "30", "30", "--jobs", "4"],
    &["mine", "5", "3", "30", "30", "--jobs", "4"],
    &["lemma31", "353", "5", "11"],
    &["forms", "2", "--p-max", "2000"],
    &["census", "20", "20"],
];

fn full_run() -> String {
    let mut out = String::new();
    for args in DETERMINISM_COMMANDS {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let (code, text) = kprime(&full);
        assert_eq!(code, 0, "{args:?}");
        out.push_str(&text);
    }
    out
}

fn determinism() -> Outcome {
    let a = full_run();
    let b = full_run();
    ensure(a == b, || "runs differ".into())?;
    let jobs4 = kprime(&["--json", "mine", "5", "11", "30", "30", "--jobs", "4"]).1;
    let jobs1 = kprime(&["--json", "mine", "5", "11", "30", "30", "--jobs", "1"]).1;
    ensure(jobs4 == jobs1, || "--jobs 4 differs from --jobs 1".into())?;
    Ok(format!("{} bytes identical across two runs", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("worked examples reproduction", worked_examples),
        ("decompose 197 3 7", decompose_197),
        ("symbol trivial at every mined prime", symbol_mass_property),
        ("cyclotomic splitting law", splitting_law),
        ("character vs q-th power table", character_oracle),
        ("census 20 20", census),
        ("x^2 + n*y^2 for h = 1", cox_h1),
        ("Dedekind criterion and factoring", dedekind_and_factoring),
        ("deterministic machine-readable output", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
