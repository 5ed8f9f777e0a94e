//! Acceptance criteria over the built-in corpus, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hvn_core::corpus::{abelian_groups, groups};
use hvn_core::verify::{self, Report};

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: Box<dyn Fn() -> Report>,
}

fn main() -> ExitCode {
    let seed = 0;
    let corpus = groups(168);
    let small: Vec<_> = corpus.iter().filter(|g| g.group.order() <= 24).cloned().collect();
    let abelian = abelian_groups(32);
    let criteria = vec![
        Criterion {
            name: "character-table validity (order <= 24 and GL(3,2))",
            budget: Some(Duration::from_secs(60)),
            run: Box::new({
                let c = corpus.clone();
                move || verify::character_tables(&c)
            }),
        },
        Criterion {
            name: "duality equivalence (order <= 24)",
            budget: None,
            run: Box::new({
                let s = small.clone();
                move || verify::duality_equivalence(&s)
            }),
        },
        Criterion {
            name: "abelian coherence (abelian, order <= 32)",
            budget: None,
            run: Box::new(move || verify::abelian_coherence(&abelian)),
        },
        Criterion {
            name: "env/rot equivalence (transitive normal, <= 24 points)",
            budget: None,
            run: Box::new({
                let c = corpus.clone();
                move || verify::env_rot(&c, 24)
            }),
        },
        Criterion {
            name: "hvn decision vs oracle (normal transitive, <= 16 points)",
            budget: None,
            run: Box::new({
                let c = corpus.clone();
                move || verify::hvn_decision(&c, 16, seed)
            }),
        },
        Criterion {
            name: "realization of every grouplike subset",
            budget: None,
            run: Box::new({
                let c = corpus.clone();
                move || verify::realization(&c)
            }),
        },
        Criterion {
            name: "meas/top equivalence (pairs <= 12 points)",
            budget: None,
            run: Box::new({
                let c = corpus.clone();
                move || verify::meas_top(&c, 24, 12, seed)
            }),
        },
        Criterion {
            name: "non-completeness witness in GL(3,2)",
            budget: Some(Duration::from_secs(120)),
            run: Box::new(|| verify::gassmann(true)),
        },
        Criterion {
            name: "multiplicity bound on minimal systems",
            budget: None,
            run: Box::new({
                let c = corpus.clone();
                move || verify::mult_bound(&c, 24)
            }),
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let report = (c.run)();
        let elapsed = start.elapsed();
        let over = c.budget.is_some_and(|b| elapsed > b);
        let ok = report.passed() && report.checks > 0 && !over;
        if !ok {
            failed += 1;
        }
        let budget = c.budget.map(|b| format!(" budget {}s", b.as_secs())).unwrap_or_default();
        println!(
            "{} {} ({} checks, {:.2}s{budget})",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            report.checks,
            elapsed.as_secs_f64()
        );
        for f in report.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
