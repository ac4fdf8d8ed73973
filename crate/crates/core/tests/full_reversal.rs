mod common;

use maxplus_transience::analysis::analyze_instance;
use maxplus_transience::full_reversal::{fr_matrix, fr_run, verify_work_recurrence, FRGraph, FROutcome, Mode};
use maxplus_transience::oracle::system_transient;
use maxplus_transience::{Matrix, Rational, Vector, Weight};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 12;

fn with_destinations(rng: &mut ChaCha8Rng, n: usize, mut edges: Vec<(usize, usize)>) -> FRGraph {
    let count = rng.gen_range(1..=(n / 3).max(1));
    let mut chosen = std::collections::BTreeSet::new();
    while chosen.len() < count {
        chosen.insert(rng.gen_range(0..n));
    }
    edges.extend(chosen.into_iter().map(|d| (d, d)));
    FRGraph::new(n, edges, Mode::Routing).unwrap()
}

fn zero(n: usize) -> Vector {
    Vector::new(vec![Weight::zero(); n]).unwrap()
}

#[test]
fn routing_terminates_within_quadratic_time() {
    let mut rng = common::rng(61);
    for _ in 0..400 {
        let n = rng.gen_range(3..=10);
        let extra = rng.gen_range(0.0..0.6);
        let edges = common::dag(&mut rng, n, extra);
        let g0 = with_destinations(&mut rng, n, edges);
        let trace = fr_run(&g0, 4 * n * n).unwrap();
        let theta = trace.theta().unwrap();
        assert!(theta <= (n - 1) * (n - 1));
        assert!(trace.final_graph().is_destination_oriented());
        let a: Matrix = fr_matrix(&g0);
        assert!(verify_work_recurrence(&trace, &a));
        if n <= 8 {
            let report = analyze_instance(&a, Some(&zero(n)), CAP).unwrap();
            assert!(report.bounds.b_cnc.unwrap() <= Rational::from(((n - 1) * (n - 1)) as i64));
            assert_eq!(report.critical.rho, Rational::from(0));
            assert_eq!(report.system.unwrap().transient, theta);
        }
    }
}

#[test]
fn routing_on_trees_is_linear() {
    let mut rng = common::rng(62);
    for _ in 0..400 {
        let n = rng.gen_range(2..=12);
        let edges = common::oriented_tree(&mut rng, n);
        let g0 = with_destinations(&mut rng, n, edges);
        let trace = fr_run(&g0, 4 * n * n).unwrap();
        assert!(trace.theta().unwrap() <= 2 * (n - 1));
        assert!(trace.final_graph().is_destination_oriented());
        assert!(verify_work_recurrence(&trace, &fr_matrix::<Rational>(&g0)));
    }
}

#[test]
fn scheduling_matches_the_oracle() {
    let mut rng = common::rng(63);
    for _ in 0..300 {
        let n = rng.gen_range(2..=8);
        let extra = rng.gen_range(0.0..0.6);
        let edges = common::dag(&mut rng, n, extra);
        let g0 = FRGraph::new(n, edges, Mode::Scheduling).unwrap();
        let trace = fr_run(&g0, 10 * n * n * n).unwrap();
        let a: Matrix = fr_matrix(&g0);
        assert!(verify_work_recurrence(&trace, &a));
        let oracle = system_transient(&a, &zero(n), CAP).unwrap();
        assert_eq!(trace.outcome, FROutcome::Periodic { transient: oracle.transient, period: oracle.period });
    }
}

#[test]
fn scheduling_on_trees() {
    let mut rng = common::rng(64);
    for _ in 0..300 {
        let n = rng.gen_range(4..=10);
        let g0 = FRGraph::new(n, common::oriented_tree(&mut rng, n), Mode::Scheduling).unwrap();
        let trace = fr_run(&g0, 10 * n * n).unwrap();
        let FROutcome::Periodic { transient, period } = trace.outcome else { panic!("scheduling terminated") };
        assert!(transient <= 6 * (n - 3));
        assert!(period <= 2 || period % 2 == 0);
        assert!(verify_work_recurrence(&trace, &fr_matrix::<Rational>(&g0)));
        if n <= 8 {
            let report = analyze_instance(&fr_matrix::<Rational>(&g0), Some(&zero(n)), CAP).unwrap();
            assert_eq!(report.critical.rho, Rational::new(-1, 2));
            assert_eq!(report.bounds.b_cnc.unwrap(), Rational::from(0));
            assert!(report.critical.rho_nc.is_bottom());
        }
    }
}

#[test]
fn worked_chain() {
    let g0 = FRGraph::new(3, [(2, 1), (1, 0), (2, 2)], Mode::Routing).unwrap();
    let trace = fr_run(&g0, 20).unwrap();
    assert_eq!(trace.theta(), Some(3));
    assert_eq!(trace.work[3], vec![2, 1, 0]);
}
