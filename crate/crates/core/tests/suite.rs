use nilcone::checks::{check_euler_bridge, check_regular_fixed, closure_pairs, run_suite, CheckContext, CheckKind, Verdict};
use nilcone::combinatorics::{bipartitions, flag_shape};
use nilcone::fiber::count_lambda_fixed;
use nilcone::normal_form::normal_pair;
use nilcone::{FiberCounter, FiberQuery, PrimeField};

#[test]
fn every_check_passes_through_n3() {
    let ctx = CheckContext::default();
    let reports = run_suite(&ctx, 3, &CheckKind::ALL).unwrap();
    let failures: Vec<_> = reports.iter().filter(|r| r.verdict != Verdict::Pass).collect();
    assert!(failures.is_empty(), "{failures:#?}");
    for kind in CheckKind::ALL {
        assert!(reports.iter().any(|r| r.check == kind.name()), "{} never ran", kind.name());
    }
}

#[test]
fn euler_bridge_on_closure_pairs() {
    let ctx = CheckContext::default();
    for n in 0..=3 {
        for (big, small) in closure_pairs(&ctx, n).unwrap() {
            let r = check_euler_bridge(&ctx, &big, &small).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn fixed_points_never_exceed_the_fiber() {
    let counter = FiberCounter::new();
    for n in 0..=4 {
        for p in [2, 3] {
            assert!(check_regular_fixed(n, p).unwrap().passed());
        }
        for big in bipartitions(n) {
            for small in bipartitions(n) {
                let np = normal_pair(&small, PrimeField::new(2).unwrap());
                let q = FiberQuery::normal(&np, flag_shape(&big)).unwrap();
                assert!(count_lambda_fixed(&q).unwrap() <= counter.count(&q).unwrap());
            }
        }
    }
}
