//! The `kamp` command-line front end. Every command returns an [`Outcome`]
//! holding the exit code and both output streams, so it can be driven from
//! tests without spawning a process.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use kamp_core::formulas::{parse_fo, parse_tl, FoFormula, TlFormula, Var};
use kamp_core::semantics::{check_equiv_fo_tl, enumerate_chains, random_chains, Chain, Density, TlEvaluator, Verdict};
use kamp_core::{Error, Translator};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_ARITY: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

/// Largest chain drawn for the random part of `verify`.
pub const RANDOM_CHAIN_MAX_SIZE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Infix,
    Sexpr,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_size: usize,
    pub random: usize,
    pub seed: u64,
    /// Alphabet for chain enumeration; defaults to the atoms of the input.
    pub atoms: Option<Vec<String>>,
    pub format: Format,
    pub trace: bool,
    pub budget: u64,
    pub chain: Option<PathBuf>,
    pub density: Density,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_size: 4,
            random: 100,
            seed: 0,
            atoms: None,
            format: Format::Infix,
            trace: false,
            budget: 1_000_000,
            chain: None,
            density: Density::half(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(code: u8, message: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::MalformedChain(_) => EXIT_PARSE,
        Error::Arity { .. } => EXIT_ARITY,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_FAIL,
    }
}

fn failure(e: Error) -> Outcome {
    match e {
        Error::BudgetExceeded { budget, reached } => {
            Outcome::error(EXIT_BUDGET, format!("BUDGET-EXCEEDED: reached {reached} against a budget of {budget}"))
        }
        e => Outcome::error(exit_code(&e), e),
    }
}

/// Parses a formula with exactly one free variable.
fn parse_open(input: &str) -> Result<(FoFormula, Var), Error> {
    let f = parse_fo(input)?;
    let free = f.free_vars();
    match free.iter().next() {
        Some(x) if free.len() == 1 => Ok((f.clone(), x.clone())),
        _ => Err(Error::Arity { expected: 1, found: free }),
    }
}

fn render(f: &TlFormula, format: Format) -> String {
    match format {
        Format::Infix => f.to_string(),
        Format::Sexpr => f.to_sexpr(),
    }
}

pub fn translate(input: &str, cfg: &RunConfig) -> Outcome {
    let (f, _) = match parse_open(input) {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let mut t = Translator::with_budget(cfg.budget);
    let result = t.kamp(&f);
    let stderr = if cfg.trace { t.trace().to_string() } else { String::new() };
    match result {
        Ok(out) => Outcome { stderr, ..Outcome::ok(format!("{}\n", render(&out, cfg.format))) },
        Err(e) => {
            let mut o = failure(e);
            o.stderr.insert_str(0, &stderr);
            o
        }
    }
}

fn alphabet(cfg: &RunConfig, fo: &FoFormula, tl: &TlFormula) -> Vec<String> {
    if let Some(atoms) = &cfg.atoms {
        return atoms.clone();
    }
    let mut all: BTreeSet<String> = fo.atoms();
    all.extend(tl.atoms());
    all.into_iter().collect()
}

pub fn verify(input: &str, cfg: &RunConfig) -> Outcome {
    let budget = cfg.budget;
    verify_with(input, cfg, |f| Translator::with_budget(budget).kamp(f))
}

/// `verify` with the translation supplied by the caller.
pub fn verify_with(input: &str, cfg: &RunConfig, translate: impl Fn(&FoFormula) -> Result<TlFormula, Error>) -> Outcome {
    let (f, x) = match parse_open(input) {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let out = match translate(&f) {
        Ok(out) => out,
        Err(e) => return failure(e),
    };
    let atoms = alphabet(cfg, &f, &out);
    let mut chains: Vec<Chain> = enumerate_chains(cfg.max_size, &atoms).collect();
    let exhaustive = chains.len();
    chains.extend(random_chains(cfg.seed, cfg.random, RANDOM_CHAIN_MAX_SIZE, &atoms, cfg.density));
    match check_equiv_fo_tl(&f, &x, &out, chains) {
        Ok(Verdict::Pass { chains, points }) => Outcome::ok(format!(
            "PASS {chains} chains ({exhaustive} exhaustive up to size {}, {} random up to size {RANDOM_CHAIN_MAX_SIZE}), {points} points\n",
            cfg.max_size, cfg.random,
        )),
        Ok(Verdict::Fail(cx)) => {
            let mut s = String::new();
            let _ = writeln!(s, "FAIL at position {} of chain #{}", cx.position, cx.chain_index);
            let _ = writeln!(s, "chain: {}", cx.chain);
            let _ = writeln!(s, "first-order: {}", u8::from(cx.fo_value));
            let _ = writeln!(s, "temporal: {}", u8::from(cx.tl_value));
            Outcome { code: EXIT_FAIL, stdout: s, stderr: String::new() }
        }
        Err(e) => failure(e),
    }
}

fn row(values: impl IntoIterator<Item = bool>) -> String {
    values.into_iter().map(|b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" ")
}

/// Evaluates at every position of every chain in `chain_text`, one line per
/// chain. FO input is tried first; TL only if it does not parse as FO.
pub fn eval(input: &str, chain_text: &str) -> Outcome {
    let chains: Vec<Chain> = match chain_text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, Error>>()
    {
        Ok(cs) => cs,
        Err(e) => return failure(e),
    };
    let mut out = String::new();
    match parse_fo(input) {
        Ok(f) => {
            let free = f.free_vars();
            let x = match free.iter().next() {
                Some(x) if free.len() == 1 => x.clone(),
                _ => return failure(Error::Arity { expected: 1, found: free }),
            };
            for m in &chains {
                let values: Result<Vec<bool>, Error> = (0..m.size())
                    .map(|t| kamp_core::semantics::eval_fo(m, &[(x.clone(), t)].into_iter().collect(), &f))
                    .collect();
                match values {
                    Ok(v) => out.push_str(&row(v)),
                    Err(e) => return failure(e),
                }
                out.push('\n');
            }
        }
        Err(_) => {
            let f = match parse_tl(input) {
                Ok(f) => f,
                Err(e) => return failure(e.into()),
            };
            for m in &chains {
                out.push_str(&row(TlEvaluator::new(m).row(&f).iter().copied()));
                out.push('\n');
            }
        }
    }
    Outcome::ok(out)
}

pub fn eval_file(input: &str, cfg: &RunConfig) -> Outcome {
    let Some(path) = &cfg.chain else {
        return Outcome::error(EXIT_PARSE, "eval needs --chain FILE");
    };
    match std::fs::read_to_string(path) {
        Ok(text) => eval(input, &text),
        Err(e) => Outcome::error(EXIT_PARSE, format!("cannot read {}: {e}", path.display())),
    }
}

pub fn stats(input: &str, cfg: &RunConfig) -> Outcome {
    let (f, _) = match parse_open(input) {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let mut t = Translator::with_budget(cfg.budget);
    let result = t.kamp(&f);
    let stderr = if cfg.trace { t.trace().to_string() } else { String::new() };
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            let mut o = failure(e);
            o.stderr.insert_str(0, &stderr);
            return o;
        }
    };
    let mut s = String::new();
    let _ = writeln!(s, "input_size {}", f.size());
    let _ = writeln!(s, "output_size {}", out.size());
    for (pass, max) in t.trace().max_disjuncts_per_pass() {
        let _ = writeln!(s, "max_disjuncts {pass} {max}");
    }
    Outcome { stderr, ..Outcome::ok(s) }
}
