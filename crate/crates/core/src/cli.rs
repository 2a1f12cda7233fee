//! Command-line front end.
//!
//! Every subcommand produces a stream of entries. In text mode each entry is
//! printed as one or more human-readable lines; with `--json` each becomes a
//! single-line record `{schema_version, command, inputs, result, status}`.
//! Integers that may not fit a double are written as decimal strings.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::cyclo::splitting_data_seeded;
use crate::kummer::{self, artin_symbol, kummer_ideal_decomposition, ResidueSymbol};
use crate::polyfp::DEFAULT_SEED;
use crate::search::{self, Representation};
use crate::{qforms, Error, Integer, Natural};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kprime",
    version,
    about = "Primes x^q + r*y^q, cyclotomic splitting and Kummer symbols"
)]
struct Cli {
    /// Emit one JSON record per line.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized polynomial factorization.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Splitting of p in Z[z], z a primitive q-th root of unity.
    Split { p: Natural, q: Natural },
    /// Power residue symbol of r at each prime of Z[z] above p.
    Symbol { r: Natural, p: Natural, q: Natural },
    /// All (x, y) with p = x^q + r*y^q.
    Represent {
        p: Natural,
        q: Natural,
        r: Natural,
        /// Also search negative x and y.
        #[arg(long)]
        allow_negative: bool,
    },
    /// Primes x^q + r*y^q with 1 <= x <= x_max, 1 <= y <= y_max.
    Mine {
        q: Natural,
        r: Natural,
        x_max: Natural,
        y_max: Natural,
        /// Worker threads.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
    },
    /// Prime ideal factors of p in Q(z, r^(1/q)) from a representation.
    Decompose { p: Natural, q: Natural, r: Natural },
    /// Whether r has trivial symbol at every prime above p.
    Lemma31 { p: Natural, q: Natural, r: Natural },
    /// Reduced forms of discriminant -4n, and the x^2 + n*y^2 check when h = 1.
    Forms {
        n: Natural,
        #[arg(long)]
        p_max: Option<Natural>,
    },
    /// Count of distinct primes x^3 + 2*y^3 on the grid.
    Census { x_max: Natural, y_max: Natural },
    /// Re-check the eight worked examples.
    VerifyPaper,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Split { .. } => "split",
            Command::Symbol { .. } => "symbol",
            Command::Represent { .. } => "represent",
            Command::Mine { .. } => "mine",
            Command::Decompose { .. } => "decompose",
            Command::Lemma31 { .. } => "lemma31",
            Command::Forms { .. } => "forms",
            Command::Census { .. } => "census",
            Command::VerifyPaper => "verify-paper",
        }
    }

    fn inputs(&self, seed: u64) -> Map<String, Value> {
        let mut m = Map::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), v);
        };
        match *self {
            Command::Split { p, q } => {
                put("p", num(p));
                put("q", num(q));
            }
            Command::Symbol { r, p, q } => {
                put("r", num(r));
                put("p", num(p));
                put("q", num(q));
            }
            Command::Represent {
                p,
                q,
                r,
                allow_negative,
            } => {
                put("p", num(p));
                put("q", num(q));
                put("r", num(r));
                put("allow_negative", json!(allow_negative));
            }
            // The thread count does not affect the result, so it is not an input.
            Command::Mine {
                q,
                r,
                x_max,
                y_max,
                jobs: _,
            } => {
                put("q", num(q));
                put("r", num(r));
                put("x_max", num(x_max));
                put("y_max", num(y_max));
            }
            Command::Decompose { p, q, r } | Command::Lemma31 { p, q, r } => {
                put("p", num(p));
                put("q", num(q));
                put("r", num(r));
            }
            Command::Forms { n, p_max } => {
                put("n", num(n));
                put("p_max", p_max.map_or(Value::Null, num));
            }
            Command::Census { x_max, y_max } => {
                put("x_max", num(x_max));
                put("y_max", num(y_max));
            }
            Command::VerifyPaper => {}
        }
        put("seed", Value::String(seed.to_string()));
        m
    }
}

fn num(n: Natural) -> Value {
    Value::String(n.to_string())
}

fn int(n: Integer) -> Value {
    Value::String(n.to_string())
}

/// `n`, parenthesized when negative so that `n^q` reads correctly.
fn base(n: Integer) -> String {
    if n < 0 {
        format!("({n})")
    } else {
        n.to_string()
    }
}

/// One result entry: its JSON payload and its text rendering.
struct Entry {
    result: Value,
    text: String,
}

fn symbol_json(s: ResidueSymbol) -> Value {
    match s {
        ResidueSymbol::Zero => json!({ "kind": "zero", "k": Value::Null }),
        ResidueSymbol::Root(k) => json!({ "kind": "root", "k": k }),
    }
}

fn execute(command: &Command, seed: u64) -> crate::Result<Vec<Entry>> {
    match *command {
        Command::Split { p, q } => {
            let s = splitting_data_seeded(p, q, seed)?;
            let ideals: Vec<String> = s.ideals.iter().map(ToString::to_string).collect();
            let mut text = format!("p = {p}, q = {q}: e = {}, f = {}, t = {}", s.e(), s.f, s.t);
            for ideal in &ideals {
                text.push_str(&format!("\n  {ideal}"));
            }
            Ok(vec![Entry {
                result: json!({
                    "e": s.e(), "f": s.f, "t": s.t, "inert": s.is_inert(), "ideals": ideals,
                }),
                text,
            }])
        }
        Command::Symbol { r, p, q } => {
            let s = splitting_data_seeded(p, q, seed)?;
            s.ideals
                .iter()
                .map(|ideal| {
                    let sym = artin_symbol(r, ideal)?;
                    let split = kummer::KummerSplitType::from(sym).to_string();
                    Ok(Entry {
                        text: format!("({r}/{ideal})_{q} = {sym}  [{split}]"),
                        result: json!({
                            "ideal": ideal.to_string(),
                            "symbol": symbol_json(sym),
                            "split_type": split,
                        }),
                    })
                })
                .collect()
        }
        Command::Represent {
            p,
            q,
            r,
            allow_negative,
        } => {
            let found = search::find_representations(p, q, r, allow_negative)?;
            let mut text = format!(
                "{} representation(s) of {p} as x^{q} + {r}*y^{q}",
                found.len()
            );
            for (x, y) in &found {
                text.push_str(&format!("\n  x = {x}, y = {y}"));
            }
            let witnesses: Vec<Value> = found
                .iter()
                .map(|&(x, y)| json!([int(x), int(y)]))
                .collect();
            Ok(vec![Entry {
                result: json!({ "witnesses": witnesses }),
                text,
            }])
        }
        Command::Mine {
            q,
            r,
            x_max,
            y_max,
            jobs,
        } => {
            let reps = match jobs {
                Some(j) => search::mine_primes_with_jobs(q, r, x_max, y_max, j as usize)?,
                None => search::mine_primes(q, r, x_max, y_max)?,
            };
            Ok(reps
                .iter()
                .map(|rep| Entry {
                    text: format!("{} = {}^{q} + {r}*{}^{q}", rep.p, base(rep.x), base(rep.y)),
                    result: json!({ "p": num(rep.p), "x": int(rep.x), "y": int(rep.y) }),
                })
                .collect())
        }
        Command::Decompose { p, q, r } => {
            // Prefer a nonnegative witness; fall back to mixed signs.
            let mut found = search::find_representations(p, q, r, false)?;
            if found.is_empty() {
                found = search::find_representations(p, q, r, true)?;
            }
            let (x, y) = *found.first().ok_or_else(|| {
                Error::Domain(format!("{p} has no representation x^{q} + {r}*y^{q}"))
            })?;
            let d = kummer_ideal_decomposition(&Representation { p, q, r, x, y })?;
            let factors: Vec<Value> = d
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "index": f.index,
                        "principal": f.principal_form(),
                        "two_generator": f.two_generator_form(),
                    })
                })
                .collect();
            let mut text = format!(
                "{p} = {}^{q} + {r}*{}^{q}\n{}",
                base(x),
                base(y),
                d.legend()
            );
            if let Some(a) = d.alpha {
                text.push_str(&format!("\nalpha = {a}  (alpha^{q} = {r} mod {p})"));
            }
            for f in &d.factors {
                text.push_str(&format!("\n  {}", f.principal_form()));
                if let Some(two) = f.two_generator_form() {
                    text.push_str(&format!(" = {two}"));
                }
            }
            Ok(vec![Entry {
                result: json!({
                    "x": int(x),
                    "y": int(y),
                    "alpha": d.alpha.map_or(Value::Null, num),
                    "factors": factors,
                    "product": int(d.product_value),
                    "legend": d.legend(),
                }),
                text,
            }])
        }
        Command::Lemma31 { p, q, r } => {
            let holds = kummer::lemma31_check_seeded(p, q, r, seed)?;
            Ok(vec![Entry {
                text: format!("symbol of {r} trivial at every prime above {p} (q = {q}): {holds}"),
                result: json!({ "holds": holds }),
            }])
        }
        Command::Forms { n, p_max } => {
            let h = qforms::class_number(n)?;
            let forms = qforms::reduced_forms(-4 * n as Integer)?;
            let names: Vec<String> = forms.iter().map(ToString::to_string).collect();
            let mut text = format!("h(-4*{n}) = {h}: {}", names.join(" "));
            let cox = match p_max {
                Some(b) => {
                    let rep = qforms::cox_check_h1(n, b)?;
                    text.push_str(&format!(
                        "\nodd primes p <= {b} not dividing {n}: {} checked, {} of the form x^2 + {n}*y^2, {} with (-{n}/p) = 1, {} disagreements",
                        rep.primes_checked,
                        rep.represented,
                        rep.residue_one,
                        rep.counterexamples.len()
                    ));
                    json!({
                        "primes_checked": rep.primes_checked,
                        "represented": rep.represented,
                        "residue_one": rep.residue_one,
                        "counterexamples": rep.counterexamples.iter().map(|&c| num(c)).collect::<Vec<_>>(),
                    })
                }
                None => Value::Null,
            };
            Ok(vec![Entry {
                result: json!({ "class_number": h, "forms": names, "cox": cox }),
                text,
            }])
        }
        Command::Census { x_max, y_max } => {
            let count = search::heathbrown_census(x_max, y_max)?;
            Ok(vec![Entry {
                text: format!(
                    "{count} distinct primes x^3 + 2*y^3 with x <= {x_max}, y <= {y_max}"
                ),
                result: json!({ "count": count }),
            }])
        }
        Command::VerifyPaper => {
            let records = search::verify_paper_table_seeded(seed)?;
            Ok(records
                .iter()
                .map(|rec| {
                    let witnesses: Vec<Value> =
                        rec.witnesses.iter().map(|&(x, y)| json!([int(x), int(y)])).collect();
                    Entry {
                        text: format!(
                            "p = {}, q = {}, r = {}: generator {}, f = {}, t = {}, symbol trivial {}; {}",
                            rec.p,
                            rec.q,
                            rec.r,
                            rec.generator_ok,
                            rec.split.f,
                            rec.split.t,
                            rec.artin_trivial,
                            rec.notes
                        ),
                        result: json!({
                            "p": num(rec.p),
                            "q": num(rec.q),
                            "r": num(rec.r),
                            "witnesses": witnesses,
                            "generator_ok": rec.generator_ok,
                            "artin_trivial": rec.artin_trivial,
                            "f": rec.split.f,
                            "t": rec.split.t,
                            "factor_degrees": rec.split.factor_degrees,
                            "notes": rec.notes,
                        }),
                    }
                })
                .collect())
        }
    }
}

fn status_of(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Invariant(_) => ("internal_error", EXIT_INTERNAL),
        e if e.is_bound() => ("bound_error", EXIT_DOMAIN),
        _ => ("domain_error", EXIT_DOMAIN),
    }
}

fn record(command: &str, inputs: &Map<String, Value>, result: Value, status: &str) -> String {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        "status": status,
    })
    .to_string()
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let name = cli.command.name();
    let inputs = cli.command.inputs(cli.seed);
    let written = match execute(&cli.command, cli.seed) {
        Ok(entries) => {
            let mut lines = entries.into_iter().map(|e| {
                if cli.json {
                    record(name, &inputs, e.result, "ok")
                } else {
                    e.text
                }
            });
            lines
                .try_for_each(|l| writeln!(out, "{l}"))
                .map(|_| EXIT_OK)
        }
        Err(e) => {
            let (status, code) = status_of(&e);
            let written = if cli.json {
                writeln!(
                    out,
                    "{}",
                    record(name, &inputs, json!({ "error": e.to_string() }), status)
                )
            } else {
                writeln!(err, "kprime {name}: {e}")
            };
            written.map(|_| code)
        }
    };
    written.unwrap_or(EXIT_INTERNAL)
}
