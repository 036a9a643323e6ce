//! Acceptance suite: nine end-to-end criteria, one report line each.
//!
//! Runs without the libtest harness so the report always prints; the
//! process exits nonzero when any criterion fails or overruns its budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use forge_core::acc::{check_witness, compile_acc, witness_for};
use forge_core::bits::Bits;
use forge_core::corpus::{self, SENTENCES};
use forge_core::eval::{check_mfv, eval, eval_lifted, mfv_witness, naive_value, node_value_traced, Assignment, FiniteSlice, MonotoneTree};
use forge_core::formula::{parse_formula, QuantClass};
use forge_core::nepo::{cell_number, compile_acceptance_sigma0, compile_reach, config_number, slice_for, NepoBounds};
use forge_core::poly::PolyBound;
use forge_core::proof::mutate::mutation_sweep;
use forge_core::proof::reflect::{instance_slice, reflection_instance_with, reflection_sweep, Checker};
use forge_core::proof::{check_depth_frege, check_frege, corpus as proofs, soundness_sweep, System};
use forge_core::prop::{prop_depth, taut_check};
use forge_core::tm::{Configuration, TmDescription};
use forge_core::translate::{fit_power_law, translate, SizeProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn n_plus_2() -> PolyBound {
    PolyBound::new(vec![2, 1]).unwrap()
}

/// Inputs of length 1 to 6.
fn short_inputs() -> Vec<Bits> {
    (1..=6).flat_map(Bits::all_of_len).collect()
}

fn acc_equivalence() -> Verdict {
    let p = n_plus_2();
    let slice = FiniteSlice::new(64u32, 256).unwrap();
    let mut per_machine = Vec::new();
    for (name, tm) in corpus::machines() {
        let start = Instant::now();
        let f = compile_acc(&tm, &p);
        let inputs = short_inputs();
        for x in &inputs {
            let env = Assignment::new().with_str("X", x.clone());
            let (got, _) = eval_lifted(&f, &slice, &env).map_err(|e| format!("{name} on {x}: {e}"))?;
            ensure(got == tm.accepts(x, &p), || format!("{name} disagrees on {x}"))?;
        }
        let took = start.elapsed();
        ensure(took <= Duration::from_secs(60), || format!("{name} took {took:.1?}"))?;
        per_machine.push(format!("{name} {} inputs {took:.1?}", inputs.len()));
    }
    Ok(per_machine.join(", "))
}

/// Twenty accepted inputs per machine: the shortest accepted strings, or
/// `0^n` for machines that accept too few short strings.
fn accepted_inputs(tm: &TmDescription, p: &PolyBound) -> Vec<Bits> {
    let short: Vec<Bits> = (0..=6).flat_map(Bits::all_of_len).filter(|x| tm.accepts(x, p)).take(20).collect();
    if short.len() == 20 {
        return short;
    }
    (0..20).map(Bits::zeros).filter(|x| tm.accepts(x, p)).collect()
}

fn witness_mutation() -> Verdict {
    let p = n_plus_2();
    let mut report = Vec::new();
    for (name, tm) in corpus::machines() {
        let inputs = accepted_inputs(&tm, &p);
        ensure(inputs.len() == 20, || format!("{name}: only {} accepted inputs", inputs.len()))?;
        let (mut total, mut rejected) = (0usize, 0usize);
        for x in &inputs {
            let w = witness_for(&tm, &p, x);
            ensure(check_witness(&tm, &p, x, &w) == Ok(true), || format!("{name} rejects its own witness for {x}"))?;
            // every layout bit is constrained, so every position is mutated
            for pos in 0..w.len() {
                let mut bad = w.clone();
                bad.flip(pos);
                total += 1;
                rejected += usize::from(check_witness(&tm, &p, x, &bad) != Ok(true));
            }
        }
        let rate = rejected as f64 / total as f64;
        ensure(rate >= 0.95, || format!("{name}: rejection rate {rate:.4}"))?;
        report.push(format!("{name} {rejected}/{total}"));
    }
    Ok(report.join(", "))
}

fn bounds16() -> NepoBounds {
    NepoBounds::new(16, 1, (1, 2), 2).unwrap()
}

/// Start configurations for the level checks: two initial ones and one
/// taken mid-run.
fn starts(tm: &TmDescription, width: usize) -> Vec<Configuration> {
    let mut out: Vec<Configuration> =
        ["1101001", "0110000000000001"].iter().map(|x| Configuration::initial(&Bits::from(*x), width)).collect();
    let mut c = Configuration::initial(&Bits::from("0111"), width);
    for _ in 0..5 {
        c = tm.step(&c).unwrap();
    }
    out.push(c);
    out
}

fn nepo_levels() -> Verdict {
    let b = bounds16();
    let (s, br) = (b.width(), b.branching());
    let mut evals = 0usize;
    for (name, tm) in [("SCAN1", corpus::scan1()), ("PARITY", corpus::parity())] {
        let sb = tm.state_bits();
        let slice = slice_for(&tm, &b);
        let cells = 1u64 << (1 + sb);
        let reach = [compile_reach(&tm, &b, 0).unwrap(), compile_reach(&tm, &b, 1).unwrap()];
        for start in starts(&tm, s) {
            for level in 0..=1u32 {
                let stride = usize::try_from(b.stride(level)).unwrap();
                for p1 in 0..=br {
                    let mut c = start.clone();
                    for _ in 0..p1 * stride {
                        c = tm.step(&c).unwrap();
                    }
                    for p2 in 0..s {
                        let want = cell_number(&c, p2);
                        for cell in 0..cells {
                            let env = Assignment::new()
                                .with_num("start", config_number(&start, sb))
                                .with_num("p1", p1 as u64)
                                .with_num("p2", p2 as u64)
                                .with_num("cell", cell);
                            let f = &reach[level as usize];
                            let (got, _) = eval_lifted(f, &slice, &env).map_err(|e| format!("{name}: {e}"))?;
                            evals += 1;
                            ensure(got == (cell == want), || {
                                format!("{name} level {level} p1 {p1} p2 {p2} cell {cell}: got {got}")
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("s={s} b={br}, {evals} evaluations"))
}

fn nepo_acceptance() -> Verdict {
    let b = bounds16();
    let t = PolyBound::constant(u64::try_from(b.time()).unwrap());
    let mut report = Vec::new();
    for (name, tm) in corpus::machines() {
        let f = compile_acceptance_sigma0(&tm, &b);
        ensure(f.classify() == QuantClass::SigmaB(0), || format!("{name}: class {:?}", f.classify()))?;
        let slice = slice_for(&tm, &b);
        let inputs: Vec<Bits> = (0..=6).flat_map(Bits::all_of_len).collect();
        let verdicts = forge_core::par::map(&inputs, |x| {
            eval_lifted(&f, &slice, &Assignment::new().with_str("X", x.clone())).map(|(v, _)| v)
        });
        for (x, got) in inputs.iter().zip(verdicts) {
            let got = got.map_err(|e| format!("{name} on {x}: {e}"))?;
            ensure(got == tm.accepts(x, &t), || format!("{name} disagrees on {x}"))?;
        }
        report.push(format!("{name} {} inputs, size {}", inputs.len(), f.size()));
    }
    Ok(report.join(", "))
}

/// Trees of criterion 5: every labeling for `a ≤ 4`, 100 seeded random
/// labelings for `a = 8`.
fn mfv_trees() -> Vec<MonotoneTree> {
    let mut trees = Vec::new();
    for a in [1usize, 2, 4] {
        for code in 0..1u32 << (a - 1) {
            let labels: Vec<bool> = (0..a - 1).map(|i| (code >> i) & 1 == 1).collect();
            trees.push(MonotoneTree::from_labels(&labels).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let labels: Vec<bool> = (0..7).map(|_| rng.gen()).collect();
        trees.push(MonotoneTree::from_labels(&labels).unwrap());
    }
    trees
}

fn node_value_equivalence() -> Verdict {
    let mut calls = 0usize;
    for t in mfv_trees() {
        let budget = t.depth_budget();
        for input in Bits::all_of_len(t.a) {
            let want = naive_value(&t, &input);
            for node in 1..2 * t.a {
                let (v, depth) = node_value_traced(&t, &input, node).map_err(|e| e.to_string())?;
                calls += 1;
                ensure(depth <= budget, || format!("a={} node {node}: depth {depth} > {budget}", t.a))?;
                if node == 1 {
                    ensure(v == want, || format!("a={} g={} input {input}: root {v}", t.a, t.g))?;
                }
            }
        }
    }
    Ok(format!("{calls} calls within budget"))
}

fn mfv_clauses() -> Verdict {
    let mut instances = 0usize;
    for t in mfv_trees() {
        for input in Bits::all_of_len(t.a) {
            let y = mfv_witness(&t, &input).map_err(|e| e.to_string())?;
            ensure(check_mfv(&t, &input, &y), || format!("a={} g={} input {input}: clauses fail", t.a, t.g))?;
            ensure(y.get(1) == naive_value(&t, &input), || format!("a={} input {input}: Y(1) wrong", t.a))?;
            instances += 1;
        }
    }
    Ok(format!("{instances} instances"))
}

fn translation() -> Verdict {
    let mut fits = Vec::new();
    for (name, text) in SENTENCES {
        let phi = parse_formula(text).map_err(|e| format!("{name}: {e}"))?;
        let at = |n: usize| translate(&phi, &SizeProfile::new().with_len("X", n)).map_err(|e| format!("{name} n={n}: {e}"));
        for n in 0..=6 {
            let slice = FiniteSlice::new(64u32, n).unwrap();
            let valid = Bits::all_of_len(n).all(|x| eval(&phi, &slice, &Assignment::new().with_str("X", x)).unwrap());
            let taut = taut_check(&at(n)?).map_err(|e| format!("{name}: {e}"))?;
            ensure(taut == valid, || format!("{name} n={n}: taut {taut}, valid {valid}"))?;
        }
        let props = (1..=8).map(at).collect::<Result<Vec<_>, _>>()?;
        let depths: Vec<usize> = props.iter().map(prop_depth).collect();
        ensure(depths.iter().all(|d| *d == depths[0]), || format!("{name}: depths {depths:?}"))?;
        let sizes: Vec<f64> = props.iter().map(|p| p.size() as f64).collect();
        ensure(sizes.windows(2).all(|w| w[0] <= w[1]), || format!("{name}: sizes {sizes:?} decrease"))?;
        let points: Vec<(f64, f64)> = (1..=4).map(|n| (n as f64, sizes[n - 1])).collect();
        let (c, d) = fit_power_law(&points);
        for n in 5..=8 {
            let (got, model) = (sizes[n - 1], c * (n as f64).powf(d));
            ensure(got <= 2.0 * model && got >= model / 2.0, || {
                format!("{name} n={n}: size {got} vs fit {c:.2}·n^{d:.2} = {model:.1}")
            })?;
        }
        fits.push(format!("{d:.1}"));
    }
    Ok(format!("10 sentences, fitted exponents [{}]", fits.join(" ")))
}

fn proof_checking() -> Verdict {
    let corpus = proofs::proofs();
    let mut mutants = 0;
    for (name, pi) in &corpus {
        let target = pi.conclusion().ok_or_else(|| format!("{name} has no single conclusion"))?;
        ensure(check_frege(pi, target) == Ok(true), || format!("{name} rejected"))?;
        let r = mutation_sweep(System::Frege, pi, target);
        ensure(r.survivors.is_empty(), || format!("{name}: surviving mutants {:?}", r.survivors))?;
        mutants += r.total;
        let verdicts: Vec<bool> = (1..=4).map(|d| check_depth_frege(pi, target, d).unwrap()).collect();
        ensure(verdicts.windows(2).all(|w| !w[0] || w[1]), || format!("{name}: depth verdicts {verdicts:?}"))?;
    }
    let all: Vec<_> = corpus.into_iter().map(|(_, p)| p).collect();
    let sound = soundness_sweep(System::Frege, 12, &all);
    ensure(sound.accepted == 10 && sound.failures.is_empty(), || format!("soundness {sound:?}"))?;
    Ok(format!("10 proofs, {mutants} mutants rejected"))
}

fn reflection() -> Verdict {
    // t(x) = x + 2 at x = 10 gives length bound 12
    let (t, x) = (PolyBound::new(vec![2, 1]).unwrap(), 10);
    let honest = reflection_sweep(System::Frege, Checker::Honest, &t, x).map_err(|e| e.to_string())?;
    let broken = reflection_sweep(System::Frege, Checker::SkipAxiomShape, &t, x).map_err(|e| e.to_string())?;
    ensure(honest.table_len == 12, || format!("table length {}", honest.table_len))?;
    ensure(honest.holds, || format!("honest checker fails: {:?}", honest.counterexample))?;
    ensure(!broken.holds, || "broken checker still reflects".into())?;
    let slice = instance_slice(&t, x);
    for (checker, want) in [(Checker::Honest, true), (Checker::SkipAxiomShape, false)] {
        let phi = reflection_instance_with(System::Frege, checker, &t, x).map_err(|e| e.to_string())?;
        ensure(phi.classify() == QuantClass::PiB(1), || format!("class {:?}", phi.classify()))?;
        let (got, _) = eval_lifted(&phi, &slice, &Assignment::new()).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{checker:?}: sentence evaluates to {got}"))?;
    }
    let cx = broken.counterexample.unwrap();
    Ok(format!(
        "{} proofs decoded, {} formulas, honest accepts {}, broken accepts {} (first: Z = {:?} falsifies {})",
        honest.proofs_decoded, honest.formulas, honest.accepted, broken.accepted, cx.assignment, cx.formula
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Verdict); 9] = [
        ("acc oracle equivalence", 180, acc_equivalence),
        ("witness mutation", 120, witness_mutation),
        ("nepomnjascij level equivalence", 300, nepo_levels),
        ("sigma0 acceptance end-to-end", 300, nepo_acceptance),
        ("node value vs naive", 60, node_value_equivalence),
        ("mfv clauses", 60, mfv_clauses),
        ("translation adequacy", 120, translation),
        ("proof checking", 60, proof_checking),
        ("reflection sweep", 300, reflection),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(d) if took > Duration::from_secs(*budget) => Err(format!("{d}; over the {budget}s budget")),
            v => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(verdict.is_err());
        println!("criterion {}: {tag} {name} [{took:.1?}] {detail}", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
