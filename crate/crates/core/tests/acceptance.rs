//! Acceptance criteria, one test each. Every test prints a PASS/FAIL line
//! straight to stderr (bypassing output capture) before asserting.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use double_bubble::cli::{read_csv, run_with, sweep};
use double_bubble::family::{closed_form_perimeter, validate, FamilyConfig, VolumeAssignment};
use double_bubble::geometry::double_bubble_perimeter;
use double_bubble::kkt::{
    alpha_one, per_assignment_minimum, solve_general_mu1, solve_general_unconstrained, BranchLabel,
};
use double_bubble::oracle::{
    certify_lower_bound, check_minimizers, detect_kinks, kink_discrepancies, oracle_agreement,
};
use double_bubble::reduce::CaseKind;

fn report(n: u8, pass: bool, elapsed: Duration, limit: Duration, detail: &str) -> bool {
    let ok = pass && elapsed <= limit;
    let line = format!(
        "criterion {n}: {} ({:.2?} of {:.0?}) {detail}\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    ok
}

/// Plotted coordinates of the two curves, `(α, Vol(A)=α curve, Vol(A)=1 curve)`.
const PLOTTED: [(f64, f64, f64); 22] = [
    (0.0125, 4.2485292, 4.3162278),
    (0.025, 4.3659191, 4.4472136),
    (0.05, 4.5459939, 4.6324555),
    (0.1, 4.8276909, 4.8944272),
    (0.15, 5.0641188, 5.0954451),
    (0.2, 5.264911, 5.264911),
    (0.25, 5.4142136, 5.4142136),
    (0.3, 5.5491933, 5.5491933),
    (0.35, 5.6733201, 5.6733201),
    (0.4, 5.7888544, 5.7888544),
    (0.45, 5.8973666, 5.8973666),
    (0.5, 6.0, 6.0),
    (0.55, 6.0991803, 6.0991803),
    (0.6, 6.1967734, 6.1967734),
    (0.65, 6.2928531, 6.2928531),
    (0.7, 6.3874878, 6.3874878),
    (0.75, 6.4807407, 6.4807407),
    (0.8, 6.5726707, 6.5726707),
    (0.85, 6.6633325, 6.6633325),
    (0.9, 6.7527772, 6.7527772),
    (0.95, 6.8410526, 6.8410526),
    (1.0, 6.9282032, 6.9282032),
];

#[test]
fn criterion_1_volume_curves() {
    let start = Instant::now();
    let mut misses = Vec::new();

    let alphas: Vec<f64> = PLOTTED.iter().map(|p| p.0).collect();
    let rows = sweep(&alphas, true).unwrap();
    for (pair, &(alpha, blue, red)) in rows.chunks(2).zip(&PLOTTED) {
        // Rows come unit-first then unit-second: red then blue.
        for (row, expected) in [(&pair[0], red), (&pair[1], blue)] {
            if (row.alpha - alpha).abs() > 0.0 || (row.perimeter - expected).abs() > 5e-7 {
                misses.push(format!(
                    "α={alpha} {:?}: {} vs {expected}",
                    row.assignment, row.perimeter
                ));
            }
        }
    }

    // Both curves start at (0, 4); the ratio must stay positive, so take the limit.
    for asg in VolumeAssignment::both(1e-14) {
        let p = per_assignment_minimum(1e-14, asg).unwrap().perimeter;
        if (p - 4.0).abs() > 5e-7 {
            misses.push(format!("limit at 0 for {asg}: {p}"));
        }
    }

    // Through the command line: the evenly spaced part of the plot.
    let argv = [
        "dbubble",
        "sweep",
        "--from",
        "0.05",
        "--to",
        "1",
        "--steps",
        "20",
        "--per-assignment",
        "--format",
        "csv",
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run_with(argv.map(String::from), &mut out, &mut err), 0);
    let csv_rows = read_csv(out.as_slice()).unwrap();
    assert_eq!(csv_rows.len(), 40);
    for row in &csv_rows {
        let plotted = PLOTTED
            .iter()
            .find(|p| (p.0 - row.alpha).abs() < 1e-12)
            .expect("plotted ratio");
        let expected = if row.volume_assignment().unwrap().beta == 1.0 {
            plotted.2
        } else {
            plotted.1
        };
        if (row.perimeter - expected).abs() > 5e-7 {
            misses.push(format!(
                "cli α={} {}: {} vs {expected}",
                row.alpha, row.assignment, row.perimeter
            ));
        }
    }

    let ok = report(
        1,
        misses.is_empty(),
        start.elapsed(),
        Duration::from_secs(1),
        &format!(
            "{} plotted points per curve, {} misses",
            PLOTTED.len() + 1,
            misses.len()
        ),
    );
    assert!(ok, "{misses:#?}");
}

#[test]
fn criterion_2_piecewise_formula_and_non_uniqueness() {
    let start = Instant::now();
    let rep = check_minimizers(10_000, 7).unwrap();
    let ok = report(
        2,
        rep.violations.is_empty() && rep.minimizers_at_critical >= 2,
        start.elapsed(),
        Duration::from_secs(5),
        &format!(
            "max disagreement {:.1e}, {} minimizers at the critical ratio",
            rep.max_disagreement, rep.minimizers_at_critical
        ),
    );
    assert!(ok, "{rep:#?}");
}

#[test]
fn criterion_3_phase_transitions() {
    let start = Instant::now();
    let rep = detect_kinks(1e-4, 1e-5).unwrap();
    let problems = kink_discrepancies(&rep, 1e-4);
    let found: Vec<f64> = rep
        .first_order
        .iter()
        .chain(&rep.second_order)
        .map(|k| k.alpha)
        .collect();
    let ok = report(
        3,
        problems.is_empty() && (rep.first_order[0].alpha - alpha_one()).abs() < 1e-4,
        start.elapsed(),
        Duration::from_secs(5),
        &format!("kinks at {found:?}"),
    );
    assert!(ok, "{problems:#?}");
}

#[test]
fn criterion_4_general_branches_infeasible() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let alpha = 1.0 - rng.gen::<f64>();
        for asg in VolumeAssignment::both(alpha) {
            for (sol, expected) in [
                (solve_general_unconstrained(asg), "b ≥ d"),
                (solve_general_mu1(asg), "e ≤ a"),
            ] {
                if sol.valid || sol.violated.as_deref() != Some(expected) {
                    failures.push(format!(
                        "{} at {asg}: valid={} violated={:?}",
                        sol.branch, sol.valid, sol.violated
                    ));
                }
            }
        }
    }
    let by_branch = |b: BranchLabel| {
        failures
            .iter()
            .filter(|f| f.starts_with(&b.to_string()))
            .count()
    };
    let ok = report(
        4,
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(1),
        &format!(
            "{} of 4000 certificates disagree (unconstrained {}, mu1 {}); first: {}",
            failures.len(),
            by_branch(BranchLabel::GeneralUnconstrained),
            by_branch(BranchLabel::GeneralMu1),
            failures.first().map(String::as_str).unwrap_or("none")
        ),
    );
    assert!(
        ok,
        "{} disagreements, e.g. {:#?}",
        failures.len(),
        &failures[..failures.len().min(4)]
    );
}

#[test]
fn criterion_5_oracle_agreement() {
    let start = Instant::now();
    let rep = oracle_agreement(50, 6).unwrap();
    let (lo, hi) = rep
        .searches
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.gap), hi.max(s.gap))
        });
    let ok = report(
        5,
        rep.violations.is_empty() && rep.searches.len() == 50,
        start.elapsed(),
        Duration::from_secs(30),
        &format!("gaps in [{lo:.2e}, {hi:.2e}]"),
    );
    assert!(ok, "{:#?}", rep.violations);
}

#[test]
fn criterion_6_reduction_monotonicity() {
    let start = Instant::now();
    let mut per_case = [0usize; 4];
    let mut violations = Vec::new();
    let (mut fallbacks, mut skipped) = (0, 0);
    for (i, alpha) in [0.1, 0.3, 0.6, 1.0].into_iter().enumerate() {
        let rep = certify_lower_bound(alpha, 1004, 600 + i as u64).unwrap();
        for (k, n) in &rep.by_case {
            let slot = [
                CaseKind::Contained,
                CaseKind::TwoCorners,
                CaseKind::OneCorner,
                CaseKind::DisjointBoxes,
            ]
            .iter()
            .position(|c| c == k)
            .unwrap();
            per_case[slot] += n;
        }
        fallbacks += rep.fallbacks;
        skipped += rep.skipped;
        violations.extend(
            rep.violations
                .into_iter()
                .map(|v| format!("α={alpha}: {v}")),
        );
    }
    let ok = report(
        6,
        violations.is_empty() && per_case.iter().all(|&n| n >= 1000),
        start.elapsed(),
        Duration::from_secs(60),
        &format!(
            "pairs per case {per_case:?}, {skipped} skipped, {fallbacks} fallbacks, {} violations",
            violations.len()
        ),
    );
    assert!(ok, "{violations:#?}");
}

fn random_config(rng: &mut ChaCha8Rng) -> FamilyConfig {
    let mut p = || rng.gen_range(0.05..3.0);
    let (a, b, c, d, e, f) = (p(), p(), p(), p(), p(), p());
    match rng.gen_range(0..3) {
        0 => FamilyConfig::Kissing {
            a,
            b,
            c,
            d: d.min(b),
        },
        1 => FamilyConfig::Embedded {
            a,
            b,
            c: a + c,
            d: b + d,
        },
        _ => FamilyConfig::General {
            a,
            b,
            c,
            d: d.min(b),
            e: e.min(a),
            f,
        },
    }
}

#[test]
fn criterion_7_realization_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let cfg = random_config(&mut rng);
        let (beta, gamma) = cfg.areas();
        assert!(
            validate(&cfg, VolumeAssignment::new(beta, gamma).unwrap()).is_valid(),
            "{cfg:?}"
        );
        let geometric = double_bubble_perimeter(&cfg.realize().unwrap());
        worst = worst.max((geometric - closed_form_perimeter(&cfg)).abs());
    }
    let ok = report(
        7,
        worst <= 1e-9,
        start.elapsed(),
        Duration::from_secs(5),
        &format!("max difference {worst:.1e}"),
    );
    assert!(ok);
}
