//! Acceptance criteria 1-7, one line each. Exits nonzero if any fails.
//!
//! Every check is exact integer arithmetic: no tolerance applies beyond the
//! bounds pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tamelift::selftest::{self, CriterionReport, DEFAULT_SEED};

/// Largest admissible regularization constant.
const MAX_C: u64 = 4;
/// Required agreement between the criterion and the oracle, in percent.
const ORACLE_AGREEMENT_PERCENT: u64 = 100;
/// Wall-clock budgets per criterion, as stated for optimized builds; an
/// overrun is reported but does not fail the run.
const BUDGETS: [(u8, Duration); 7] = [
    (1, Duration::from_secs(60)),
    (2, Duration::from_secs(120)),
    (3, Duration::from_secs(600)),
    (4, Duration::from_secs(120)),
    (5, Duration::from_secs(10)),
    (6, Duration::from_secs(600)),
    (7, Duration::from_secs(60)),
];

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn report(r: &CriterionReport, took: Duration) -> bool {
    let budget = BUDGETS.iter().find(|(id, _)| *id == r.id).map(|(_, b)| *b).unwrap();
    let over = if took > budget { format!(" [over {}s budget]", budget.as_secs()) } else { String::new() };
    println!("{} in {:.2?}{}", r.line(), took, over);
    r.pass
}

fn main() -> ExitCode {
    assert_eq!(selftest::MAX_REGULARIZATION_C, MAX_C);
    let seed = DEFAULT_SEED;
    let mut ok = true;

    let (r, t) = timed(|| selftest::lift_soundness(seed));
    ok &= report(&r, t);

    let (r, t) = timed(|| selftest::exactness(seed));
    ok &= report(&r, t);

    let (sweep, t) = timed(|| selftest::oracle_sweep(seed));
    let r = selftest::irreducibility_vs_oracle(&sweep);
    let agreement = 100 * (sweep.compared - sweep.disagreements) / sweep.compared.max(1);
    ok &= report(&r, t) && agreement >= ORACLE_AGREEMENT_PERCENT;

    let (r, t) = timed(|| selftest::regular_lift_sweep(seed));
    ok &= report(&r, t);

    let (r, t) = timed(selftest::fixture_suite);
    ok &= report(&r, t);

    let r = selftest::weyl_order_of_irreducibles(&sweep);
    ok &= report(&r, Duration::ZERO);

    let (r, t) = timed(|| selftest::chamber_sum_invariance(seed));
    ok &= report(&r, t);

    println!("acceptance: {}", if ok { "all criteria pass" } else { "FAILURES" });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
