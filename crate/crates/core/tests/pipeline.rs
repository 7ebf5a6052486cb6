use num_complex::Complex64;

use holimit::cli::suites::{run_suite, Context};
use holimit::cli::ExperimentConfig;
use holimit::geometry::{CellGrid, Grid};
use holimit::harmonic::classify_harmonicity;
use holimit::osgood::{bounded_index_map, classify_holomorphy, find_dense_ball, ClassifierParams, Verdict, DEFAULT_K_CAP};
use holimit::runge::store::{load_sequence, save_sequence};
use holimit::runge::{build_example_sequence_best_effort, build_s, build_t, limit_example, FitOptions};
use holimit::scv::{analyze_line, lift, ComplexLine};
use holimit::geometry::Rect;

#[test]
fn short_example_round_trips_and_certifies() {
    let seq = build_example_sequence_best_effort(2, 32, &FitOptions::default()).unwrap();
    assert!(seq.all_certified());
    let dir = tempfile::tempdir().unwrap();
    save_sequence(&seq, dir.path()).unwrap();
    let back = load_sequence(dir.path()).unwrap();
    assert_eq!(back, seq);
    for e in &back.entries {
        for cert in &e.polynomial.certificates {
            let again = e.polynomial.reverify(cert).unwrap();
            assert!(again < 1.0 / e.j as f64, "j = {} {} {again}", e.j, cert.region_id);
        }
    }
    let f = back.to_sequence().unwrap();
    let p = Complex64::new(0.5, 0.5);
    assert!(f.eval(2, p).unwrap().norm() < 0.5);
    assert!((f.eval(2, Complex64::new(0.3, 0.0)).unwrap() - 1.0).norm() < 0.5);
    assert!(build_s(2).unwrap().rects().len() + build_s(2).unwrap().segments().len() > 0);
    assert!(build_t(2).unwrap().rects().len() == 4);
    assert_eq!(limit_example(Complex64::new(0.0, 0.4)).unwrap(), Complex64::new(1.0, 0.0));
}

#[test]
fn baire_on_the_short_example() {
    let seq = build_example_sequence_best_effort(2, 16, &FitOptions::default()).unwrap().to_sequence().unwrap();
    let d = bounded_index_map(&seq, &Grid::square(0.9, 33).unwrap(), DEFAULT_K_CAP).unwrap();
    d.check_invariants().unwrap();
    assert!(find_dense_ball(&d).is_ok());
}

#[test]
fn lifted_sequences_reduce_to_one_variable() {
    let one = holimit::sequence::geometric_partial_sums(60).unwrap();
    let b = Rect::new(-0.8, 0.8, -0.8, 0.8).unwrap();
    let two = lift(&one, b, b).unwrap();
    let params = ClassifierParams::new(CellGrid::square(0.7, 7).unwrap(), vec![(40, 60)]);
    let on_line = analyze_line(&two, &ComplexLine::horizontal(Complex64::new(0.0, 0.0)).unwrap(), &params).unwrap();
    let direct = classify_holomorphy(&one, &params).unwrap();
    for (a, d) in on_line.reports.iter().zip(&direct.reports) {
        assert_eq!(a.verdict, d.verdict);
        assert_eq!(a.tail_deviation, d.tail_deviation);
    }
}

#[test]
fn harmonic_map_agrees_with_holomorphy_map() {
    let seq = holimit::sequence::koebe_partial_sums(200, 0.8).unwrap();
    let params = ClassifierParams::new(CellGrid::square(0.8, 10).unwrap(), vec![(150, 200)]);
    let h = classify_holomorphy(&seq, &params).unwrap();
    let u = classify_harmonicity(&seq, &params).unwrap();
    assert_eq!(h.count(Verdict::Outside), u.count(Verdict::Outside));
    for (a, b) in h.reports.iter().zip(&u.reports) {
        if a.verdict == Verdict::Regular {
            assert_eq!(b.verdict, Verdict::Regular);
        }
    }
}

#[test]
fn suites_report_errors_as_failed_checks() {
    let mut cfg = ExperimentConfig::default();
    cfg.example.sequence_dir = Some("/nonexistent/holimit".into());
    let ctx = Context::new(cfg);
    let checks = run_suite(&ctx, "baire");
    assert_eq!(checks.len(), 1);
    assert!(!checks[0].pass);
    assert!(checks[0].note.as_deref().unwrap().starts_with("error:"));
    assert!(run_suite(&ctx, "montel").iter().all(|c| c.pass));
}
