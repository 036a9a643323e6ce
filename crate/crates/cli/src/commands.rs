//! Subcommand bodies. Each returns a [`Report`] whose text and JSON forms
//! carry the same facts; nothing time- or thread-dependent is printed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use forge_core::acc::{check_witness, compile_acc, compile_reach, witness_for, Layout};
use forge_core::bits::Bits;
use forge_core::eval::{
    check_mfv, eval, eval_lifted, mfv_witness, naive_value, node_value_traced, Assignment, EvalError, FiniteSlice,
    MonotoneTree,
};
use forge_core::formula::{parse_formula, print_formula, Formula};
use forge_core::nepo::{self, compile_acceptance_sigma0, size_report, NepoBounds};
use forge_core::poly::PolyBound;
use forge_core::proof::reflect::{instance_slice, reflection_instance_with, reflection_sweep, Checker};
use forge_core::proof::text::parse_proof;
use forge_core::proof::{check, System};
use forge_core::prop::parse_prop;
use forge_core::tm::TmDescription;
use forge_core::translate::{translate, SizeProfile};
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Cli, Command, Failure, Report};

pub const NODE_CAP_VAR: &str = "FORGE_NODE_CAP";

type Outcome = Result<Report, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::CompileAcc(a) => compile_acc_cmd(a),
        Command::CompileNepo(a) => compile_nepo_cmd(a),
        Command::Eval(a) => eval_cmd(a),
        Command::Translate(a) => translate_cmd(a),
        Command::Mfv(a) => mfv_cmd(a),
        Command::CheckProof(a) => check_proof_cmd(a),
        Command::Reflect(a) => reflect_cmd(a),
        Command::OracleTest(a) => oracle_test_cmd(a, cli.seed),
    }
}

fn report<T: Serialize>(text: String, body: &T, ok: bool) -> Outcome {
    Ok(Report { text, json: serde_json::to_value(body).expect("reports serialize"), ok })
}

fn read(sub: &'static str, path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(sub, format!("cannot read {}: {e}", path.display())))
}

fn read_tm(sub: &'static str, path: &Path) -> Result<TmDescription, Failure> {
    read(sub, path)?.parse().map_err(|e| Failure::Usage(sub, format!("{}: {e}", path.display())))
}

fn read_formula(sub: &'static str, path: &Path) -> Result<Formula, Failure> {
    parse_formula(&read(sub, path)?).map_err(|e| Failure::Usage(sub, format!("{}: {e}", path.display())))
}

fn poly(sub: &'static str, text: &str) -> Result<PolyBound, Failure> {
    text.parse().map_err(|e| Failure::Usage(sub, format!("bad coefficients {text:?}: {e}")))
}

fn bits(sub: &'static str, what: &str, text: &str) -> Result<Bits, Failure> {
    text.parse().map_err(|e| Failure::Usage(sub, format!("bad {what} {text:?}: {e}")))
}

/// Splits `name=value`.
fn binding<'a>(sub: &'static str, text: &'a str) -> Result<(&'a str, &'a str), Failure> {
    text.split_once('=').ok_or_else(|| Failure::Usage(sub, format!("expected name=value, got {text:?}")))
}

fn number<T: std::str::FromStr>(sub: &'static str, text: &str) -> Result<T, Failure> {
    text.parse().map_err(|_| Failure::Usage(sub, format!("bad number {text:?}")))
}

/// `FORGE_NODE_CAP`, unlimited when unset.
fn node_cap() -> Result<usize, Failure> {
    match std::env::var(NODE_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Domain(format!("{NODE_CAP_VAR}={v:?} is not a count"))),
        Err(_) => Ok(usize::MAX),
    }
}

fn within_cap(size: usize) -> Result<(), Failure> {
    let cap = node_cap()?;
    if size > cap {
        return Err(Failure::Domain(format!("formula has {size} nodes, {NODE_CAP_VAR} is {cap}")));
    }
    Ok(())
}

/// Unbound names and sort clashes are the caller's mistake; everything
/// else is a failed evaluation.
fn eval_failure(sub: &'static str, e: EvalError) -> Failure {
    match e {
        EvalError::Unbound(_) | EvalError::SortMismatch(_) | EvalError::BadSlice => Failure::Usage(sub, e.to_string()),
        _ => Failure::Domain(e.to_string()),
    }
}

#[derive(Serialize)]
struct Emitted {
    formula: String,
    size: usize,
    class: String,
}

fn emitted(f: &Formula) -> Result<Emitted, Failure> {
    within_cap(f.size())?;
    Ok(Emitted { formula: print_formula(f), size: f.size(), class: f.classify().to_string() })
}

fn compile_acc_cmd(a: &crate::CompileAcc) -> Outcome {
    const SUB: &str = "compile-acc";
    let tm = read_tm(SUB, &a.tm)?;
    let p = poly(SUB, &a.poly)?;
    let f = if a.reach { compile_reach(&tm, &p) } else { compile_acc(&tm, &p) };
    let out = emitted(&f)?;
    report(format!("{}\n", out.formula), &out, true)
}

#[derive(Serialize)]
struct NepoOut {
    bounds: NepoBounds,
    level: Option<u32>,
    #[serde(flatten)]
    emitted: Emitted,
    sizes: nepo::SizeReport,
}

fn compile_nepo_cmd(a: &crate::CompileNepo) -> Outcome {
    const SUB: &str = "compile-nepo";
    let tm = read_tm(SUB, &a.tm)?;
    let (p, q) = a.eps.split_once('/').ok_or_else(|| Failure::Usage(SUB, format!("eps must be p/q, got {:?}", a.eps)))?;
    let eps = (number(SUB, p)?, number(SUB, q)?);
    let usage = |e: nepo::NepoError| Failure::Usage(SUB, e.to_string());
    let mut b = NepoBounds::new(a.m, a.c, eps, a.k).map_err(usage)?;
    if let Some(d) = a.d {
        b = b.with_depth(d).map_err(usage)?;
    }
    let f = match a.level {
        Some(l) => nepo::compile_reach(&tm, &b, l).map_err(usage)?,
        None => compile_acceptance_sigma0(&tm, &b),
    };
    let emitted = emitted(&f)?;
    let sizes = size_report(&tm, &b, node_cap()?);
    let mut text = format!("{}\n", emitted.formula);
    let _ = writeln!(
        text,
        "; s={} b={} time={} d={} field={} comp_bits={}",
        sizes.width, sizes.branching, sizes.time, sizes.depth, sizes.field, sizes.comp_bits
    );
    let _ = writeln!(text, "; reach sizes {:?}, acceptance size {}", sizes.reach_sizes, sizes.acceptance_size);
    report(text, &NepoOut { bounds: b, level: a.level, emitted, sizes }, true)
}

#[derive(Serialize)]
struct EvalOut {
    value: bool,
    class: String,
    strategy: &'static str,
    /// Only for lifted evaluation.
    sat_calls: Option<usize>,
}

fn eval_cmd(a: &crate::Eval) -> Outcome {
    const SUB: &str = "eval";
    let f = read_formula(SUB, &a.formula)?;
    let slice = FiniteSlice::new(a.num_bound, a.str_width).map_err(|e| eval_failure(SUB, e))?;
    let mut env = Assignment::new();
    for b in &a.binds {
        let (name, v) = binding(SUB, b)?;
        env = env.with_str(name, bits(SUB, "string", v)?);
    }
    for b in &a.vals {
        let (name, v) = binding(SUB, b)?;
        env = env.with_num(name, number::<BigUint>(SUB, v)?);
    }
    let (value, sat_calls) = if a.lifted {
        let (v, stats) = eval_lifted(&f, &slice, &env).map_err(|e| eval_failure(SUB, e))?;
        (v, Some(stats.sat_calls))
    } else {
        (eval(&f, &slice, &env).map_err(|e| eval_failure(SUB, e))?, None)
    };
    let out = EvalOut {
        value,
        class: f.classify().to_string(),
        strategy: if a.lifted { "lifted" } else { "brute" },
        sat_calls,
    };
    report(format!("{}\n", value as u8), &out, true)
}

#[derive(Serialize)]
struct TranslateOut {
    formula: String,
    size: usize,
    depth: usize,
    sizes: SizeProfile,
}

fn translate_cmd(a: &crate::Translate) -> Outcome {
    const SUB: &str = "translate";
    let f = read_formula(SUB, &a.formula)?;
    let mut sizes = SizeProfile::new();
    for b in &a.lens {
        let (name, v) = binding(SUB, b)?;
        sizes = sizes.with_len(name, number(SUB, v)?);
    }
    for b in &a.vals {
        let (name, v) = binding(SUB, b)?;
        sizes = sizes.with_num(name, number(SUB, v)?);
    }
    let mut p = translate(&f, &sizes).map_err(|e| eval_failure(SUB, e))?;
    if a.simplify {
        p = p.simplify();
    }
    within_cap(p.size())?;
    let out = TranslateOut { formula: p.to_string(), size: p.size(), depth: p.depth(), sizes };
    report(format!("{}\n", out.formula), &out, true)
}

#[derive(Serialize)]
struct MfvOut {
    value: bool,
    naive: bool,
    /// Deepest recursion reached and the allowed budget.
    depth: usize,
    budget: usize,
    witness: String,
    clauses_hold: bool,
}

fn mfv_cmd(a: &crate::Mfv) -> Outcome {
    const SUB: &str = "mfv";
    let usage = |e: forge_core::eval::MfvError| Failure::Usage(SUB, e.to_string());
    let t = MonotoneTree::new(bits(SUB, "tree", &a.tree)?, a.a).map_err(usage)?;
    let input = bits(SUB, "input", &a.input)?;
    let (value, depth) = node_value_traced(&t, &input, 1).map_err(usage)?;
    let y = mfv_witness(&t, &input).map_err(usage)?;
    let out = MfvOut {
        value,
        naive: naive_value(&t, &input),
        depth,
        budget: t.depth_budget(),
        witness: y.to_string(),
        clauses_hold: check_mfv(&t, &input, &y),
    };
    let ok = out.value == out.naive && out.clauses_hold && out.depth <= out.budget;
    let text = format!(
        "value {}\nnaive {}\ndepth {}/{}\nwitness {}\nclauses {}\n",
        value as u8,
        out.naive as u8,
        depth,
        out.budget,
        out.witness,
        if out.clauses_hold { "hold" } else { "fail" }
    );
    report(text, &out, ok)
}

fn system(sub: &'static str, text: &str) -> Result<System, Failure> {
    match text {
        "frege" => Ok(System::Frege),
        _ => text
            .strip_prefix("depth:")
            .and_then(|d| d.parse().ok())
            .map(System::DepthFrege)
            .ok_or_else(|| Failure::Usage(sub, format!("system must be frege or depth:<d>, got {text:?}"))),
    }
}

#[derive(Serialize)]
struct CheckOut {
    system: System,
    lines: usize,
    target: String,
    valid: bool,
    error: Option<String>,
}

fn check_proof_cmd(a: &crate::CheckProof) -> Outcome {
    const SUB: &str = "check-proof";
    let text = read(SUB, &a.proof)?;
    let pi = parse_proof(&text).map_err(|e| Failure::Usage(SUB, format!("{}: {e}", a.proof.display())))?;
    let target = match &a.target {
        Some(t) => parse_prop(t).map_err(|e| Failure::Usage(SUB, format!("bad target: {e}")))?,
        None => pi.conclusion().cloned().ok_or_else(|| Failure::Domain("last line is not a single-formula endsequent".into()))?,
    };
    let sys = a.depth.map_or(System::Frege, System::DepthFrege);
    let (valid, error) = match check(sys, &pi, &target) {
        Ok(v) => (v, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let out = CheckOut { system: sys, lines: pi.lines.len(), target: target.to_string(), valid, error };
    let mut text = format!("{} ({} lines, target {})\n", if valid { "valid" } else { "invalid" }, out.lines, out.target);
    if let Some(e) = &out.error {
        let _ = writeln!(text, "{e}");
    }
    report(text, &out, valid)
}

#[derive(Serialize)]
struct ReflectOut {
    system: System,
    checker: Checker,
    table_len: u64,
    holds: bool,
    method: &'static str,
    sweep: Option<forge_core::proof::reflect::ReflectionReport>,
    sentence: Option<Emitted>,
}

fn reflect_cmd(a: &crate::Reflect) -> Outcome {
    const SUB: &str = "reflect";
    let sys = system(SUB, &a.system)?;
    // a bare integer is a constant length bound
    let t = match a.t.trim().parse() {
        Ok(c) => PolyBound::constant(c),
        Err(_) => poly(SUB, &a.t)?,
    };
    let checker = if a.broken { Checker::SkipAxiomShape } else { Checker::Honest };
    let domain = |e: forge_core::proof::reflect::ReflectError| Failure::Domain(e.to_string());
    let sentence = if a.emit || !a.sweep { Some(reflection_instance_with(sys, checker, &t, a.x).map_err(domain)?) } else { None };
    let (holds, sweep) = if a.sweep {
        let r = reflection_sweep(sys, checker, &t, a.x).map_err(domain)?;
        (r.holds, Some(r))
    } else {
        let f = sentence.as_ref().expect("built above");
        let slice = instance_slice(&t, a.x);
        (eval_lifted(f, &slice, &Assignment::new()).map_err(|e| eval_failure(SUB, e))?.0, None)
    };
    let sentence = match (a.emit, &sentence) {
        (true, Some(f)) => Some(emitted(f)?),
        _ => None,
    };
    let out = ReflectOut {
        system: sys,
        checker,
        table_len: t.eval(a.x),
        holds,
        method: if a.sweep { "sweep" } else { "sentence" },
        sweep,
        sentence,
    };
    let mut text = String::new();
    if let Some(s) = &out.sentence {
        let _ = writeln!(text, "{}", s.formula);
    }
    let _ = writeln!(text, "reflection T={} {:?}: {}", out.table_len, checker, if holds { "true" } else { "false" });
    if let Some(r) = &out.sweep {
        let _ = writeln!(text, "decoded {} proofs, {} formulas, {} accepted", r.proofs_decoded, r.formulas, r.accepted);
        if let Some(c) = &r.counterexample {
            let _ = writeln!(text, "counterexample: Z = {:?} falsifies {}", c.assignment, c.formula);
        }
    }
    report(text, &out, holds)
}

#[derive(Serialize)]
struct OracleOut {
    inputs: usize,
    disagreements: Vec<String>,
    witness_inputs: usize,
    mutations: usize,
    rejected: usize,
    equivalence: bool,
    mutation_pass: bool,
}

/// Mutants rejected below this fraction fail the mutation line.
const MIN_REJECTION: f64 = 0.95;

fn oracle_test_cmd(a: &crate::OracleTest, seed: u64) -> Outcome {
    const SUB: &str = "oracle-test";
    let tm = read_tm(SUB, &a.tm)?;
    let p = poly(SUB, &a.poly)?;
    let f = compile_acc(&tm, &p);
    let layout = Layout::acc(&tm, &p, a.max_len);
    let slice = FiniteSlice::new(layout.len().max(1), layout.len()).map_err(|e| eval_failure(SUB, e))?;
    let inputs: Vec<Bits> = Bits::all_up_to(a.max_len).collect();
    let verdicts = forge_core::par::map(&inputs, |x| {
        eval_lifted(&f, &slice, &Assignment::new().with_str("X", x.clone())).map(|(v, _)| v == tm.accepts(x, &p))
    });
    let mut disagreements = Vec::new();
    for (x, v) in inputs.iter().zip(verdicts) {
        if !v.map_err(|e| Failure::Domain(format!("on {x:?}: {e}")))? {
            disagreements.push(x.to_string());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let accepted: Vec<&Bits> = inputs.iter().filter(|x| tm.accepts(x, &p)).take(20).collect();
    let (mut total, mut rejected) = (0usize, 0usize);
    for x in &accepted {
        let w = witness_for(&tm, &p, x);
        if check_witness(&tm, &p, x, &w) != Ok(true) {
            disagreements.push(format!("witness for {x}"));
        }
        let picks = sample(&mut rng, w.len(), a.mutations.min(w.len()));
        for pos in picks.into_iter() {
            let mut bad = w.clone();
            bad.flip(pos);
            total += 1;
            rejected += usize::from(check_witness(&tm, &p, x, &bad) != Ok(true));
        }
    }
    let rate = if total == 0 { 1.0 } else { rejected as f64 / total as f64 };
    let out = OracleOut {
        inputs: inputs.len(),
        equivalence: disagreements.is_empty(),
        mutation_pass: rate >= MIN_REJECTION,
        disagreements,
        witness_inputs: accepted.len(),
        mutations: total,
        rejected,
    };
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let mut text = format!("acc-equivalence: {} ({} inputs)\n", verdict(out.equivalence), out.inputs);
    for d in &out.disagreements {
        let _ = writeln!(text, "  disagrees on {d}");
    }
    let _ = writeln!(
        text,
        "witness-mutation: {} ({}/{} rejected over {} inputs)",
        verdict(out.mutation_pass),
        rejected,
        total,
        out.witness_inputs
    );
    let ok = out.equivalence && out.mutation_pass;
    report(text, &out, ok)
}
