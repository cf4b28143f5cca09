//! Desk-scale sweeps over presets, residue fields and Weyl elements.
//!
//! Every sweep is single-threaded and seeded: configuration `k` of a sweep
//! draws from ChaCha8 stream `k` of the given seed, so reports are
//! reproducible bit for bit.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::crystalline_lift::{kernel_membership, lift_inertia, reduction, simple_trick_check, TrickMode};
use crate::dynamic::parabolic_of;
use crate::fixtures::run_fixtures;
use crate::hodge_tate::{ht_type, is_ht_regular, regular_lift};
use crate::root_datum::{Cochar, Preset, RootDatum, WeylElement};
use crate::tame_reps::{
    check_weyl_order, compatibility_kernel, enumerate_compatible, inertia_centralizer_roots, is_g_irreducible,
    modulus, sample_compatible, OracleGuard, ParabolicCatalog, TameInertialPair,
};

pub const DEFAULT_SEED: u64 = 0x7a3e_11f0;

pub const LIFT_PRESETS: [Preset; 5] = [Preset::GL(2), Preset::GL(3), Preset::GL(4), Preset::Sp(4), Preset::G2];
pub const LIFT_Q: [u64; 3] = [2, 3, 5];
pub const LIFT_F: [u32; 3] = [1, 2, 3];
pub const LIFT_SAMPLES: usize = 100;

/// Exhaustive exactness check up to this many vectors.
pub const EXACTNESS_EXHAUSTIVE_LIMIT: u128 = 1_000_000;

pub const ORACLE_PRESETS: [Preset; 4] = [Preset::GL(2), Preset::GL(3), Preset::Sp(4), Preset::G2];
pub const ORACLE_Q: [u64; 3] = [2, 3, 4];
pub const ORACLE_F: [u32; 2] = [1, 2];
pub const ORACLE_MAX_MODULUS: i64 = 80;
/// Compatible sets up to `N^r` this size are enumerated in full.
pub const ORACLE_EXHAUSTIVE_LIMIT: u128 = 100_000;
pub const ORACLE_SAMPLES: usize = 500;

pub const MAX_REGULARIZATION_C: u64 = 4;

pub const CHAMBER_PRESETS: [Preset; 7] =
    [Preset::GL(2), Preset::GL(3), Preset::GL(4), Preset::SL(3), Preset::Sp(4), Preset::SO(5), Preset::G2];
pub const CHAMBER_SAMPLES: usize = 1000;
pub const CHAMBER_ENTRY_BOUND: i64 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub cases: u64,
    pub failures: u64,
    pub detail: String,
}

impl CriterionReport {
    fn new(id: u8, name: &'static str, cases: u64, failures: u64, detail: String) -> Self {
        CriterionReport { id, name, pass: failures == 0 && cases > 0, cases, failures, detail }
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {} cases, {} failures{}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failures,
            if self.detail.is_empty() { String::new() } else { format!(" ({})", self.detail) }
        )
    }
}

/// One `(datum, q, f, w)` configuration with its stream index.
pub struct Config<'a> {
    pub datum: &'a RootDatum,
    pub q: u64,
    pub f: u32,
    pub w: &'a WeylElement,
    pub stream: u64,
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn datums(presets: &[Preset]) -> Vec<(RootDatum, Vec<WeylElement>)> {
    presets
        .iter()
        .map(|&p| {
            let d = RootDatum::preset(p).expect("sweep presets are supported");
            let w = d.weyl_group();
            (d, w)
        })
        .collect()
}

/// Calls `body` on every configuration of the lifting sweep, restricted to
/// `w^f = 1`.
fn for_each_lift_config(mut body: impl FnMut(&Config<'_>)) {
    let mut stream = 0;
    for (d, weyl) in datums(&LIFT_PRESETS) {
        for q in LIFT_Q {
            for f in LIFT_F {
                for w in weyl.iter().filter(|w| w.pow(u64::from(f)).is_identity()) {
                    body(&Config { datum: &d, q, f, w, stream });
                    stream += 1;
                }
            }
        }
    }
}

fn lift_samples(cfg: &Config<'_>, seed: u64) -> Vec<TameInertialPair> {
    let kernel = compatibility_kernel(cfg.w, cfg.q, cfg.f).expect("sweep parameters are in range");
    let mut rng = stream_rng(seed, cfg.stream);
    (0..LIFT_SAMPLES)
        .map(|_| {
            let v = sample_compatible(&kernel, &mut rng);
            TameInertialPair::new(cfg.datum, cfg.q, cfg.f, v, cfg.w.clone()).expect("shapes agree")
        })
        .collect()
}

/// Lifts are compatible and reduce to the given inertia data.
pub fn lift_soundness(seed: u64) -> CriterionReport {
    let (mut cases, mut failures) = (0u64, 0u64);
    let mut first = String::new();
    for_each_lift_config(|cfg| {
        for pair in lift_samples(cfg, seed) {
            cases += 1;
            let ok = match lift_inertia(cfg.datum, &pair) {
                Ok(r) => {
                    kernel_membership(cfg.w, r.tuple()) && reduction(r.tuple()).ok().as_deref() == Some(pair.vbar())
                }
                Err(_) => false,
            };
            if !ok {
                failures += 1;
                if first.is_empty() {
                    first = format!("first failure on {} q={} v̄={:?}", cfg.datum.label(), cfg.q, pair.vbar());
                }
            }
        }
    });
    CriterionReport::new(1, "lift soundness", cases, failures, first)
}

/// `ker(q - w) = im(Ξ̄)`, exhaustively when `N^r <= 10^6`.
pub fn exactness(_seed: u64) -> CriterionReport {
    let (mut cases, mut failures, mut exhaustive) = (0u64, 0u64, 0u64);
    let mut first = String::new();
    for_each_lift_config(|cfg| {
        cases += 1;
        let n = modulus(cfg.q, cfg.f).expect("in range") as u128;
        if n.pow(cfg.datum.rank() as u32) <= EXACTNESS_EXHAUSTIVE_LIMIT {
            exhaustive += 1;
        }
        let mode = TrickMode::Auto { limit: EXACTNESS_EXHAUSTIVE_LIMIT };
        if simple_trick_check(cfg.datum, cfg.q, cfg.f, cfg.w, mode) != Ok(true) {
            failures += 1;
            if first.is_empty() {
                first = format!("first failure on {} q={} f={}", cfg.datum.label(), cfg.q, cfg.f);
            }
        }
    });
    let detail = format!("{exhaustive} exhaustive, {} by subgroup orders{}", cases - exhaustive, prefix(&first));
    CriterionReport::new(2, "exactness", cases, failures, detail)
}

fn prefix(s: &str) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!("; {s}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleSweep {
    pub compared: u64,
    pub disagreements: u64,
    pub irreducible: u64,
    /// Irreducible pairs with `w^{f₀} != 1`.
    pub order_exceptions: u64,
    pub first_disagreement: Option<String>,
}

/// Criterion versus brute force over compatible pairs with no centralizer
/// roots.
pub fn oracle_sweep(seed: u64) -> OracleSweep {
    let mut out = OracleSweep::default();
    let mut stream = 0;
    for (d, weyl) in datums(&ORACLE_PRESETS) {
        let catalog = ParabolicCatalog::new(&d, OracleGuard::default()).expect("sweep presets fit the guard");
        for q in ORACLE_Q {
            for f in ORACLE_F {
                let n = modulus(q, f).expect("in range");
                if n > ORACLE_MAX_MODULUS {
                    continue;
                }
                for w in &weyl {
                    let stable_empty = catalog.stabilized_by(&d, w).is_empty();
                    let kernel = compatibility_kernel(w, q, f).expect("in range");
                    let vbars: Vec<Vec<i64>> = if (n as u128).pow(d.rank() as u32) <= ORACLE_EXHAUSTIVE_LIMIT {
                        enumerate_compatible(&kernel).collect()
                    } else {
                        let mut rng = stream_rng(seed, stream);
                        (0..ORACLE_SAMPLES).map(|_| sample_compatible(&kernel, &mut rng)).collect()
                    };
                    stream += 1;
                    for v in vbars {
                        let pair = TameInertialPair::new(&d, q, f, v, w.clone()).expect("shapes agree");
                        if !inertia_centralizer_roots(&d, &pair).expect("compatible").is_empty() {
                            continue;
                        }
                        out.compared += 1;
                        let verdict = is_g_irreducible(&d, &pair).expect("compatible").irreducible;
                        if verdict != stable_empty {
                            out.disagreements += 1;
                            out.first_disagreement.get_or_insert_with(|| {
                                format!("{} q={q} f={f} v̄={:?} w={:?}", d.label(), pair.vbar(), w.word())
                            });
                        }
                        if verdict {
                            out.irreducible += 1;
                            if !check_weyl_order(&pair).expect("compatible").niveau_power_trivial {
                                out.order_exceptions += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn irreducibility_vs_oracle(sweep: &OracleSweep) -> CriterionReport {
    let detail = format!(
        "{} irreducible{}",
        sweep.irreducible,
        prefix(sweep.first_disagreement.as_deref().unwrap_or(""))
    );
    CriterionReport::new(3, "irreducibility criterion vs oracle", sweep.compared, sweep.disagreements, detail)
}

pub fn weyl_order_of_irreducibles(sweep: &OracleSweep) -> CriterionReport {
    CriterionReport::new(
        6,
        "irreducible pairs have w^f0 = 1",
        sweep.irreducible,
        sweep.order_exceptions,
        String::new(),
    )
}

fn regular_lift_digest(seed: u64) -> (u64, u64, u64, u64) {
    let (mut cases, mut failures, mut max_c) = (0u64, 0u64, 0u64);
    let mut hasher = DefaultHasher::new();
    for_each_lift_config(|cfg| {
        for pair in lift_samples(cfg, seed) {
            cases += 1;
            match regular_lift(cfg.datum, &pair) {
                Ok(r) => {
                    max_c = max_c.max(r.c);
                    r.c.hash(&mut hasher);
                    r.result.tuple().slots().hash(&mut hasher);
                    if !is_ht_regular(cfg.datum, &ht_type(r.result.tuple())) || r.c > MAX_REGULARIZATION_C {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    });
    (cases, failures, max_c, hasher.finish())
}

/// Regular lifts exist with `C <= 4`, identically on a second run.
pub fn regular_lift_sweep(seed: u64) -> CriterionReport {
    let (cases, failures, max_c, digest) = regular_lift_digest(seed);
    let (_, _, _, again) = regular_lift_digest(seed);
    let nondeterministic = u64::from(digest != again);
    let detail = format!("max C = {max_c}, digest {digest:016x}{}", if nondeterministic == 1 { ", rerun differs" } else { "" });
    CriterionReport::new(4, "Hodge-Tate regular lift", cases, failures + nondeterministic, detail)
}

pub fn fixture_suite() -> CriterionReport {
    let outcomes = run_fixtures();
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.name).collect();
    let detail = if failed.is_empty() { String::new() } else { format!("mismatched: {}", failed.join(", ")) };
    CriterionReport::new(5, "golden fixtures", outcomes.len() as u64, failed.len() as u64, detail)
}

fn random_regular(d: &RootDatum, rng: &mut ChaCha8Rng) -> Cochar {
    loop {
        let c = Cochar((0..d.rank()).map(|_| rng.gen_range(-CHAMBER_ENTRY_BOUND..=CHAMBER_ENTRY_BOUND)).collect());
        if d.is_regular_cochar(&c) {
            return c;
        }
    }
}

/// `P(λ + μ) = P(λ)` for `λ, μ` in a common open chamber.
pub fn chamber_sum_invariance(seed: u64) -> CriterionReport {
    let (mut cases, mut failures) = (0u64, 0u64);
    for (k, &preset) in CHAMBER_PRESETS.iter().enumerate() {
        let d = RootDatum::preset(preset).expect("supported");
        let mut rng = stream_rng(seed, k as u64);
        let mut done = 0;
        while done < CHAMBER_SAMPLES {
            let lambda = random_regular(&d, &mut rng);
            let mu = random_regular(&d, &mut rng);
            let p = parabolic_of(&d, &lambda);
            if !p.same_roots(&parabolic_of(&d, &mu)) {
                continue;
            }
            done += 1;
            cases += 1;
            if !parabolic_of(&d, &(&lambda + &mu)).same_roots(&p) {
                failures += 1;
            }
        }
    }
    CriterionReport::new(7, "chamber-sum invariance", cases, failures, String::new())
}

/// All seven criteria in order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    let sweep = oracle_sweep(seed);
    vec![
        lift_soundness(seed),
        exactness(seed),
        irreducibility_vs_oracle(&sweep),
        regular_lift_sweep(seed),
        fixture_suite(),
        weyl_order_of_irreducibles(&sweep),
        chamber_sum_invariance(seed),
    ]
}
