//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Instances and budgets are fixed so the run is repeatable.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use basewitness::basesize::{
    brute_base_size, verify_base_two, verify_th1, verify_th2, CosetAction, GroupCtx,
    BRUTE_FORCE_CAP,
};
use basewitness::bounds::{
    class_bound_exponent, class_size_semisimple, decompositions, eta, find_t_g, pow_at_most,
    prime_order_classes, qhat, qhat_f64, sweep_b6, RowKind, SweepRow,
};
use basewitness::report::VerificationReport;
use basewitness::singer::{
    build_block_h, build_torus, build_unitary_d_s, check_lemma_form, check_lemma_ir,
    check_lemma_m7, check_lemma_nep, check_prop1, TorusCtx,
};
use basewitness::{prime_power, Result, Sign};

const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn prime_powers(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_some())
}

/// (ε, n, q) for the exhaustive torus checks.
fn torus_instances() -> Vec<(Sign, usize, u64)> {
    let mut v = Vec::new();
    for n in [2usize, 3, 4, 6] {
        for q in prime_powers(2, 256) {
            if q.checked_pow(n as u32).is_some_and(|s| s <= 1 << 16) {
                v.push((Sign::Plus, n, q));
            }
        }
    }
    v.extend([
        (Sign::Minus, 2, 2),
        (Sign::Minus, 2, 3),
        (Sign::Minus, 3, 2),
        (Sign::Minus, 4, 2),
    ]);
    v
}

/// Runs `check` on each instance and collects the failing ones.
fn run_all(
    instances: &[(Sign, usize, u64)],
    check: impl Fn(&TorusCtx) -> Result<VerificationReport>,
) -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    for &(eps, n, q) in instances {
        let outcome = build_torus(eps, n, q).and_then(|(ctx, _)| check(&ctx));
        match outcome {
            Ok(r) if r.passed() => {}
            Ok(r) => bad.push(format!(
                "({eps},{n},{q}): {} counterexamples",
                r.counterexamples.len()
            )),
            Err(e) => bad.push(format!("({eps},{n},{q}): {e}")),
        }
    }
    (instances.len(), bad)
}

fn summarize(what: &str, (count, bad): (usize, Vec<String>), elapsed: Duration) -> Outcome {
    if bad.is_empty() {
        Outcome::new(true, format!("{what}: {count} instances, {elapsed:.2?}"))
    } else {
        Outcome::new(false, format!("{what}: {}", bad.join("; ")))
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let res = run_all(&torus_instances(), check_lemma_nep);
    let elapsed = t.elapsed();
    let mut o = summarize("lemma-nep", res, elapsed);
    if elapsed >= Duration::from_secs(60) {
        o.pass = false;
        o.detail.push_str(" (over 60 s)");
    }
    o
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let res = run_all(&torus_instances(), check_lemma_form);
    summarize("lemma-form", res, t.elapsed())
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let res = run_all(&[(Sign::Plus, 3, 2), (Sign::Plus, 2, 5)], check_prop1);
    summarize("prop1 on GL_3(2), GL_2(5)", res, t.elapsed())
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut inst = Vec::new();
    for n in 2..=12usize {
        for q in prime_powers(2, 64) {
            if q.checked_pow(n as u32).is_some_and(|s| s <= 1 << 12) {
                inst.push((Sign::Plus, n, q));
            }
        }
    }
    let (count, mut bad) = run_all(&inst, check_lemma_m7);
    bad.extend(run_all(&inst, check_lemma_ir).1);
    summarize("lemma-m7 and lemma-ir", (count, bad), t.elapsed())
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for eps in [Sign::Plus, Sign::Minus] {
        for n in 2..=20usize {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                let ds = match decompositions(eps, n, q) {
                    Ok(ds) => ds,
                    Err(e) => {
                        bad.push(format!("({eps},{n},{q}): {e}"));
                        continue;
                    }
                };
                for d in ds {
                    checked += 1;
                    let ok = class_size_semisimple(eps, n, q, &d)
                        .map(|c| pow_at_most(q, class_bound_exponent(eps, n, &d), &c.class_size));
                    if !matches!(ok, Ok(true)) {
                        bad.push(format!("({eps},{n},{q}) {d:?}"));
                    }
                }
            }
        }
    }
    let elapsed = t.elapsed();
    let mut o = summarize("class bound", (checked, bad), elapsed);
    o.detail = o.detail.replace("instances", "decompositions");
    if elapsed >= Duration::from_secs(30) {
        o.pass = false;
        o.detail.push_str(" (over 30 s)");
    }
    o
}

fn row_label(r: &SweepRow) -> String {
    match &r.decomposition {
        Some(d) => format!(
            "{} ({},n={},q={},r={},e={},k={},t={})",
            r.kind.as_str(),
            r.eps,
            r.n,
            r.q,
            d.r,
            d.e,
            d.k,
            d.t
        ),
        None => format!("{} ({},n={},q={})", r.kind.as_str(), r.eps, r.n, r.q),
    }
}

fn shape(r: &SweepRow) -> Option<(u64, u64, u64)> {
    r.decomposition.as_ref().map(|d| (d.e, d.k, d.t))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for eps in [Sign::Plus, Sign::Minus] {
        let global: Vec<SweepRow> = sweep_b6(eps, 21..=60, 2..=16)
            .into_iter()
            .filter(|r| r.kind == RowKind::Global)
            .collect();
        let failing: Vec<String> = global.iter().filter(|r| !r.holds).map(row_label).collect();
        if !failing.is_empty() || global.is_empty() {
            pass = false;
            notes.push(format!("(a) {eps}: {}", failing.join(", ")));
        }
        let rows = sweep_b6(eps, 7..=20, 2..=16);
        let per_d: Vec<&SweepRow> = rows
            .iter()
            .filter(|r| r.kind == RowKind::Decomposition)
            .collect();
        let failing: Vec<String> = per_d
            .iter()
            .filter(|r| !r.holds)
            .map(|r| row_label(r))
            .collect();
        if !failing.is_empty() || per_d.is_empty() {
            pass = false;
            notes.push(format!("(b) {eps}: {}", failing.join(", ")));
        } else {
            notes.push(format!(
                "(a,b) {eps}: {} global and {} decomposition rows hold",
                global.len(),
                per_d.len()
            ));
        }
        let prop338: Vec<String> = rows
            .iter()
            .filter(|r| r.kind == RowKind::Prop338 && !r.holds)
            .map(row_label)
            .collect();
        notes.push(format!(
            "{eps} prop338 rows left open: [{}]",
            prop338.join(", ")
        ));
    }

    // n = 6, linear case, with the refined special rows for r = 3.
    let rows = sweep_b6(Sign::Plus, [6], 2..=16);
    let special = |q: u64, s: (u64, u64, u64)| {
        rows.iter()
            .find(|r| r.kind == RowKind::SpecialN6 && r.q == q && shape(r) == Some(s))
            .map(|r| r.holds)
    };
    for s in [(2, 2, 2), (3, 2, 0)] {
        let bad: Vec<u64> = prime_powers(2, 16)
            .filter(|&q| special(q, s) != Some(true))
            .collect();
        if !bad.is_empty() {
            pass = false;
            notes.push(format!("(c) shape {s:?} fails at q in {bad:?}"));
        }
    }
    let exceptional: Vec<u64> = prime_powers(2, 16)
        .filter(|&q| special(q, (2, 3, 0)) == Some(false))
        .collect();
    if exceptional != [2, 3] {
        pass = false;
        notes.push(format!(
            "(c) shape (2,3,0) fails exactly at q in {exceptional:?}, expected [2, 3]"
        ));
    }
    let unipotent_q3 = rows
        .iter()
        .filter(|r| r.kind == RowKind::Prop338 && r.q == 3)
        .filter(|r| r.decomposition.as_ref().is_some_and(|d| d.r == 3))
        .all(|r| !r.holds);
    notes.push(format!("(c) r = p = 3 row at q = 3 fails: {unipotent_q3}"));
    Outcome::new(pass, notes.join("; "))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    match verify_base_two(Sign::Plus, 6, 2, SEED, 100_000) {
        Ok(r) => {
            let tries = r.data.get("candidates_used").cloned().unwrap_or_default();
            let ok = r.passed()
                && r.intersection_order == Some(1)
                && r.data.get("h_order").and_then(|v| v.as_u64()) == Some(378)
                && t.elapsed() < Duration::from_secs(300);
            Outcome::new(
                ok,
                format!(
                    "GL_6(2): |H ∩ H^x| = {:?}, candidates {tries}, {:.2?}",
                    r.intersection_order,
                    t.elapsed()
                ),
            )
        }
        Err(e) => Outcome::new(false, format!("GL_6(2): {e}")),
    }
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    let cases: [(&[usize], Sign, u64); 3] = [
        (&[2, 2], Sign::Plus, 3),
        (&[2, 2], Sign::Minus, 2),
        (&[3, 1], Sign::Plus, 2),
    ];
    for (blocks, eps, q) in cases {
        match verify_th1(blocks, eps, q, SEED, 100_000) {
            Ok(r) => {
                pass &= r.passed();
                notes.push(format!(
                    "{blocks:?},{eps},{q}: {:?} |K| = {:?}",
                    r.verdict, r.intersection_order
                ));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{blocks:?},{eps},{q}: {e}"));
            }
        }
    }
    for q in [2u64, 3, 4, 5] {
        if let Err(e) = build_unitary_d_s(&[2], q) {
            pass = false;
            notes.push(format!("D at q = {q}: {e}"));
        }
    }
    notes.push("D·conj(D)^T checked for q = 2,3,4,5".into());
    Outcome::new(pass, notes.join("; "))
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for q in [3u64, 2] {
        let t = Instant::now();
        match verify_th2(4, q, true, SEED, 100_000, 1_000_000) {
            Ok(r) => {
                let ok = r.passed() && t.elapsed() < Duration::from_secs(600);
                pass &= ok;
                let mut line = format!("n=4,q={q}: {:?} in {:.2?}", r.verdict, t.elapsed());
                if !r.counterexamples.is_empty() {
                    line.push_str(&format!(" {}", serde_json::json!(r.counterexamples)));
                }
                notes.push(line);
            }
            Err(e) => {
                pass = false;
                notes.push(format!("n=4,q={q}: {e}"));
            }
        }
    }
    Outcome::new(pass, notes.join("; "))
}

fn criterion_10() -> Outcome {
    let run = || -> Result<Outcome> {
        let h = build_block_h(&[3], Sign::Plus, 2)?;
        let g = GroupCtx::linear(3, 2)?;
        let classes = prime_order_classes(&g, &h)?;
        let q3 = qhat(&classes, 3);
        let action = CosetAction::new(&h, &g.generators()?, 5000, BRUTE_FORCE_CAP)?;
        let b = brute_base_size(&action, 4)?.map(|r| r.base_size);
        let consistent = b.is_some_and(|b| qhat(&classes, b as u32) < BigRational::one());
        let grid: Vec<f64> = (1..100).map(|i| eta(&classes, i as f64 / 100.0)).collect();
        let decreasing = grid.windows(2).all(|w| w[1] < w[0]);
        let t = find_t_g(&classes)?;
        let at = eta(&classes, t);
        let ok = q3 < BigRational::one()
            && b == Some(3)
            && consistent
            && decreasing
            && (at - 1.0).abs() < 1e-6;
        Ok(Outcome::new(
            ok,
            format!(
                "Q̂(3) = {q3} ≈ {:.5}, b = {b:?}, η decreasing: {decreasing}, T_G = {t:.6}, η(T_G) − 1 = {:.1e}",
                qhat_f64(&q3),
                at - 1.0
            ),
        ))
    };
    run().unwrap_or_else(|e| Outcome::new(false, e.to_string()))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let o = c();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} - {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
