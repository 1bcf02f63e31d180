//! Acceptance gate: one pass/fail line per criterion, each under its time
//! limit. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use tubecat::endo::{loopless_quiver, EndoBundle};
use tubecat::exec::Exec;
use tubecat::hom_functor::{HomFunctor, OracleTable};
use tubecat::quiver::{connecting_vertices, is_cluster_tilted_a, three_cycles, ArrowKind};
use tubecat::rigid::{enumerate_brute_force, enumerate_structured, RigidObject};
use tubecat::strings::{default_cap, enumerate_strings};
use tubecat::verify::{converse_check, endo_check, gorenstein_check, oracle_sweep};
use tubecat::Rank;

type Outcome = Result<String, String>;

fn rank(n: usize) -> Rank {
    Rank::new(n).expect("valid rank")
}

fn objects(n: usize) -> Vec<RigidObject> {
    enumerate_structured(rank(n), Exec::default())
}

fn fail_if(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let total = failures.len();
        let mut shown: Vec<String> = failures.into_iter().take(3).collect();
        if total > 3 {
            shown.push(format!("... {total} failures"));
        }
        Err(shown.join("; "))
    }
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for n in 2..=6 {
        let sweep = oracle_sweep(rank(n), 3 * n, Exec::default());
        pairs += sweep.pairs;
        for (x, y, a, b) in sweep.mismatches {
            failures.push(format!("n={n} {x}->{y}: {a} vs {b}"));
        }
    }
    fail_if(failures, format!("{pairs} pairs agree"))
}

fn rigid_counts() -> Outcome {
    let expected = [2, 6, 20, 70, 252, 924];
    let mut failures = Vec::new();
    for (n, &want) in (2..=7).zip(&expected) {
        let brute = enumerate_brute_force(rank(n), Exec::default());
        let structured = enumerate_structured(rank(n), Exec::default());
        if brute.len() != want {
            failures.push(format!("n={n}: {} objects, expected {want}", brute.len()));
        }
        if brute != structured {
            failures.push(format!("n={n}: enumerations differ"));
        }
    }
    fail_if(failures, "2, 6, 20, 70, 252, 924; both enumerations identical".into())
}

/// Shape facts any instance must show: `Γ_T` a tree on `n-1` vertices, each
/// zero relation of `Γ_T` closed into a 3-cycle carrying three relations,
/// and `Λ_T` adding one loop at a connecting vertex with `ω² = 0`.
fn rank_seven_shape(t: &RigidObject) -> Vec<String> {
    let mut failures = Vec::new();
    let Ok(b) = EndoBundle::new(t) else {
        return vec![format!("{t}: no bundle")];
    };
    let (g, gt, l) = (&b.gamma, &b.gamma_tilde, &b.lambda);
    let r = g.relations().len();
    let d_arrows = gt.quiver().arrows().iter().filter(|a| a.kind == Some(ArrowKind::D)).count();
    let shape = [
        (g.quiver().vertex_count(), 6, "Γ_T vertices"),
        (g.quiver().arrows().len(), 5, "Γ_T arrows"),
        (d_arrows, r, "D-arrows"),
        (gt.quiver().arrows().len(), 5 + r, "Γ̃_T arrows"),
        (gt.relations().len(), 3 * r, "Γ̃_T relations"),
        (three_cycles(gt.quiver()).len(), r, "3-cycles"),
        (l.quiver().arrows().len(), 6 + r, "Λ_T arrows"),
        (l.relations().len(), 3 * r + 1, "Λ_T relations"),
        (l.quiver().loop_vertices().len(), 1, "loops"),
    ];
    for (got, want, what) in shape {
        if got != want {
            failures.push(format!("{t}: {what} {got}, expected {want}"));
        }
    }
    match loopless_quiver(t) {
        Ok((q, v)) => {
            let connecting = connecting_vertices(&q).map(|c| c.contains(&v)).unwrap_or(false);
            if !is_cluster_tilted_a(&q) || !connecting {
                failures.push(format!("{t}: loopless quiver or loop vertex wrong"));
            }
        }
        Err(e) => failures.push(format!("{t}: {e}")),
    }
    failures
}

fn endomorphism_ring() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=6 {
        for t in objects(n) {
            checked += 1;
            match EndoBundle::new(&t).and_then(|b| endo_check(&t, &b)) {
                Ok(f) => failures.extend(f.into_iter().map(|m| format!("{t}: {m}"))),
                Err(e) => failures.push(format!("{t}: {e}")),
            }
        }
    }
    let sevens = objects(7);
    let example = sevens
        .iter()
        .max_by_key(|t| EndoBundle::new(t).map(|b| b.gamma.relations().len()).unwrap_or(0))
        .expect("rank 7 has objects");
    for t in &sevens {
        failures.extend(rank_seven_shape(t));
    }
    let b = EndoBundle::new(example).map_err(|e| e.to_string())?;
    fail_if(
        failures,
        format!(
            "{checked} objects (n=2..6) exact; n=7 shape on {} objects, e.g. {example}: {} vertices, {} arrows, {} relations",
            sevens.len(),
            b.lambda.quiver().vertex_count(),
            b.lambda.quiver().arrows().len(),
            b.lambda.relations().len()
        ),
    )
}

fn gentle_gorenstein() -> Outcome {
    let mut failures = Vec::new();
    let mut tally: BTreeMap<(usize, String), usize> = BTreeMap::new();
    for n in 2..=6 {
        for t in objects(n) {
            let b = EndoBundle::new(&t).map_err(|e| e.to_string())?;
            match gorenstein_check(&t, &b.lambda) {
                Ok((f, detail)) => {
                    failures.extend(f.into_iter().map(|m| format!("{t}: {m}")));
                    let key = detail.split(", P_").next().unwrap_or(&detail).to_string();
                    *tally.entry((n, key)).or_default() += 1;
                }
                Err(e) => failures.push(format!("{t}: {e}")),
            }
        }
    }
    let summary: Vec<String> = tally.iter().map(|((n, d), c)| format!("n={n} {d} ×{c}")).collect();
    fail_if(failures, format!("all gentle; {}", summary.join("; ")))
}

fn string_counts() -> Outcome {
    let expected = [2, 7, 15, 26, 40, 57];
    let mut failures = Vec::new();
    for (n, &want) in (2..=7).zip(&expected) {
        for t in objects(n) {
            let b = EndoBundle::new(&t).map_err(|e| e.to_string())?;
            match enumerate_strings(&b.lambda, default_cap(&b.lambda)) {
                Ok(e) if e.strings.len() == want && !e.has_bands() && !e.truncated => {}
                Ok(e) => failures.push(format!(
                    "{t}: {} strings, {} bands",
                    e.strings.len(),
                    e.bands.len()
                )),
                Err(e) => failures.push(format!("{t}: {e}")),
            }
        }
    }
    fail_if(failures, "2, 7, 15, 26, 40, 57 strings; no bands".into())
}

struct HomRun {
    domain: Vec<String>,
    outside: Vec<String>,
    objects: usize,
    outside_records: usize,
}

fn hom_functor_run() -> Result<HomRun, String> {
    let mut run = HomRun { domain: Vec::new(), outside: Vec::new(), objects: 0, outside_records: 0 };
    for n in 2..=5 {
        let oracle = OracleTable::new(rank(n), 3 * n, Exec::default());
        for t in objects(n) {
            let report = HomFunctor::new(&t).map_err(|e| e.to_string())?.verify(&oracle);
            run.objects += 1;
            run.outside_records += report.records.iter().filter(|r| !r.in_f).count();
            if !report.domain_ok() {
                run.domain.push(format!("{t}"));
            }
            if !report.outside_ok() {
                run.outside.push(format!("{t}"));
            }
        }
    }
    Ok(run)
}

fn converse() -> Outcome {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for n in 2..=6 {
        let r = converse_check(rank(n), &objects(n)).map_err(|e| e.to_string())?;
        if !r.ok || r.skipped {
            failures.push(format!("n={n}: {}", r.detail));
        }
        details.push(format!("n={n} {}", r.detail.split(',').next().unwrap_or("")));
    }
    fail_if(failures, details.join("; "))
}

fn standalone_suite() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_tubecat"))
        .args(["verify", "--rank", "2..5"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let summary = stdout.lines().last().unwrap_or("").to_string();
    match out.status.code() {
        Some(0) => Ok(format!("exit 0, {summary}")),
        code => Err(format!("exit {code:?}, {summary}")),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn report(id: usize, name: &str, limit: Option<Duration>, outcome: Outcome, elapsed: Duration) -> bool {
    let over = limit.is_some_and(|l| elapsed > l);
    let ok = outcome.is_ok() && !over;
    let limit_text = limit.map(|l| format!(" / {}s", l.as_secs())).unwrap_or_default();
    let detail = match &outcome {
        Ok(d) | Err(d) => d.clone(),
    };
    let over_text = if over { " [time limit exceeded]" } else { "" };
    println!(
        "[{}] {id}. {name} ({:.2}s{limit_text}){over_text}: {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut all = true;

    let (o, t) = timed(oracle_equivalence);
    all &= report(1, "Hom oracle equivalence, n=2..6, ql<=3n", secs(30), o, t);
    let (o, t) = timed(rigid_counts);
    all &= report(2, "maximal rigid counts, n=2..7", secs(60), o, t);
    let (o, t) = timed(endomorphism_ring);
    all &= report(3, "endomorphism ring shape and Cartan, n=2..6", secs(120), o, t);
    let (o, t) = timed(gentle_gorenstein);
    all &= report(4, "gentle, Gorenstein dimension 0 at n=2 and 1 for n=3..6", None, o, t);
    let (o, t) = timed(string_counts);
    all &= report(5, "string counts and no bands, n=2..7", secs(60), o, t);

    let (run, t) = timed(hom_functor_run);
    let (c6, c7) = match run {
        Ok(run) => (
            fail_if(run.domain, format!("{} objects, n=2..5", run.objects)),
            fail_if(run.outside, format!("{} objects outside F checked", run.outside_records)),
        ),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    all &= report(6, "Hom-functor on F \\ add τT, n=2..5", secs(120), c6, t);
    all &= report(7, "vanishing and two-summand prediction outside F, n=2..5", None, c7, t);

    let (o, t) = timed(converse);
    all &= report(8, "converse realization by single τ-orbits, n=2..6", secs(180), o, t);
    let (o, t) = timed(standalone_suite);
    all &= report(9, "standalone `verify --rank 2..5`", secs(300), o, t);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
