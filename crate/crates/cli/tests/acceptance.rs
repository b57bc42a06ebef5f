//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so every criterion is evaluated and
//! reported even when an earlier one fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use raman_core::analysis::{
    dicke_pair_correlation, enhancement_bruteforce, enhancement_formula, enhancement_in,
    rate_ratio_in,
};
use raman_core::collective::{
    collective_operator_full, commutator_residual, embed_collective, embed_ket, ladder_apply,
    CollectiveKet, CollectiveState, DEFAULT_COMMUTATOR_CAP,
};
use raman_core::raman::{scattered_state, Geometry, RamanConfig};
use raman_core::states::w_state;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut outcome = f();
    let elapsed = start.elapsed();
    outcome.detail = format!("{} [{:.3} s]", outcome.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed >= limit {
            outcome.passed = false;
            outcome
                .detail
                .push_str(&format!(" exceeds {:.0} s", limit.as_secs_f64()));
        }
    }
    outcome
}

fn three_atom_w() -> Outcome {
    let value =
        enhancement_bruteforce(CollectiveState::new(2, 0, 1), &RamanConfig::default()).unwrap();
    let err = (value - 4.0 / 3.0).abs();
    check(
        err <= 1e-10,
        format!("E(2,0,1) = {value:.15}, |E - 4/3| = {err:.2e}"),
    )
}

fn w_scaling() -> Outcome {
    let cfg = RamanConfig::default();
    let mut worst_e: f64 = 0.0;
    let mut worst_raw: f64 = 0.0;
    for n in 2..=8usize {
        let cs = CollectiveState::new(n - 1, 0, 1);
        let nf = n as f64;
        worst_e = worst_e.max((enhancement_bruteforce(cs, &cfg).unwrap() - (2.0 - 2.0 / nf)).abs());
        let raw = rate_ratio_in(cs, &cfg, &Geometry::uniform(n)).unwrap();
        worst_raw = worst_raw.max((raw - 2.0 * (nf - 1.0)).abs());
    }
    check(
        worst_e <= 1e-9 && worst_raw <= 1e-9,
        format!(
            "N = 2..8: max |E - (2 - 2/N)| = {worst_e:.2e}, max |ratio - 2(N-1)| = {worst_raw:.2e}"
        ),
    )
}

fn full_oracle_equivalence() -> Outcome {
    let cfg = RamanConfig::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 1..=6usize {
        for cs in CollectiveState::all(n).filter(|cs| cs.n_i >= 1) {
            let formula = enhancement_formula(cs.n_i, cs.n_l, cs.n_f).unwrap();
            let brute = enhancement_bruteforce(cs, &cfg).unwrap();
            worst = worst.max((formula - brute).abs());
            count += 1;
        }
    }
    let mut named: f64 = 0.0;
    for n in 2..=6usize {
        let nf = n as f64;
        let intermediate_w =
            enhancement_bruteforce(CollectiveState::new(n - 1, 1, 0), &cfg).unwrap();
        named = named.max((intermediate_w - 4.0 * (1.0 - 1.0 / nf)).abs());
        if n % 2 == 0 {
            let half = enhancement_bruteforce(CollectiveState::new(n / 2, 0, n / 2), &cfg).unwrap();
            named = named.max((half - (nf + 2.0) / 4.0).abs());
        }
    }
    check(
        worst <= 1e-9 && named <= 1e-9,
        format!("{count} partitions, max residual {worst:.2e}; named cases max error {named:.2e}"),
    )
}

fn n_squared_regime() -> Outcome {
    let cfg = RamanConfig::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [4usize, 6, 8] {
        let formula = enhancement_formula(n / 2, n / 2, 0).unwrap();
        let brute = enhancement_bruteforce(CollectiveState::new(n / 2, n / 2, 0), &cfg).unwrap();
        let bound = (n * n) as f64 / 8.0;
        ok &= formula >= bound && (formula - brute).abs() <= 1e-9;
        parts.push(format!(
            "N={n}: E={formula} >= {bound}, |dE|={:.1e}",
            (formula - brute).abs()
        ));
    }
    check(ok, parts.join("; "))
}

fn su3_algebra() -> Outcome {
    let mut worst_commutator: f64 = 0.0;
    for n in 2..=4 {
        for idx in 0..81 {
            let (i, l, f, j) = (idx / 27, (idx / 9) % 3, (idx / 3) % 3, idx % 3);
            let r = commutator_residual(i, l, f, j, n, DEFAULT_COMMUTATOR_CAP).unwrap();
            worst_commutator = worst_commutator.max(r);
        }
    }
    let mut worst_bridge: f64 = 0.0;
    for n in 1..=5 {
        for cs in CollectiveState::all(n) {
            let embedded = embed_collective(cs).unwrap();
            for to in 0..3 {
                for from in 0..3 {
                    let full = collective_operator_full(to, from, n)
                        .unwrap()
                        .apply(&embedded)
                        .unwrap();
                    let ladder = ladder_apply(to, from, &CollectiveKet::single(cs)).unwrap();
                    let err = full.max_abs_diff(&embed_ket(&ladder, n).unwrap()).unwrap();
                    worst_bridge = worst_bridge.max(err);
                }
            }
        }
    }
    check(
        worst_commutator <= 1e-12 && worst_bridge <= 1e-12,
        format!(
            "commutator residual {worst_commutator:.2e}, ladder bridge error {worst_bridge:.2e}"
        ),
    )
}

fn scattered_structure() -> Outcome {
    let cfg = RamanConfig::default();
    let initial = w_state(3, 0, 2, 1).unwrap();
    let target = w_state(3, 0, 2, 2).unwrap();
    let out = scattered_state(&initial, &cfg, &Geometry::uniform(3)).unwrap();
    let single =
        scattered_state(&w_state(1, 0, 2, 0).unwrap(), &cfg, &Geometry::uniform(1)).unwrap();
    let fidelity = out.fidelity_with(&target).unwrap();
    let ratio = out.squared_norm / single.squared_norm;
    check(
        (fidelity - 1.0).abs() <= 1e-12 && (ratio - 4.0).abs() <= 1e-12,
        format!("fidelity {fidelity:.15}, squared-norm ratio {ratio:.15}"),
    )
}

fn dicke_correlation() -> Outcome {
    // |N/2, 0> exists only for even N
    let mut worst: f64 = 0.0;
    for n in (2..=10usize).step_by(2) {
        let value = dicke_pair_correlation(n, 0.0).unwrap();
        let oracle = n as f64 / (4.0 * (n as f64 - 1.0));
        worst = worst.max((value - oracle).abs());
    }
    let at_ten = dicke_pair_correlation(10, 0.0).unwrap();
    let gap = (at_ten - 0.25).abs();
    check(
        worst <= 1e-12 && gap < 0.03,
        format!("max |C - N/(4(N-1))| = {worst:.2e}; C(10) = {at_ten:.6}, |C - 1/4| = {gap:.4}"),
    )
}

fn random_geometry(rng: &mut ChaCha8Rng, n: usize) -> Geometry {
    let mut v = || {
        [
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ]
    };
    let positions = (0..n).map(|_| v()).collect();
    Geometry::new(positions, v(), v()).unwrap()
}

fn invariance_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let base = RamanConfig::default();
    let trials = 120;
    let mut worst_scale: f64 = 0.0;
    let mut worst_translation: f64 = 0.0;
    for _ in 0..trials {
        let n = rng.gen_range(1..=4usize);
        let n_i = rng.gen_range(1..=n);
        let n_l = rng.gen_range(0..=n - n_i);
        let cs = CollectiveState::new(n_i, n_l, n - n_i - n_l);

        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mut scaled = RamanConfig::with_detuning(sign * rng.gen_range(0.1..5.0));
        scaled.field_plus = rng.gen_range(0.1..10.0);
        scaled.field_minus = rng.gen_range(0.1..10.0);
        scaled.dipole_il = C64::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(0.0..6.3));
        scaled.dipole_fl = C64::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(0.0..6.3));

        let g = random_geometry(&mut rng, n);
        let a = enhancement_in(cs, &base, &g).unwrap();
        let b = enhancement_in(cs, &scaled, &g).unwrap();
        worst_scale = worst_scale.max((a - b).abs());

        let shift = [
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        ];
        let c = enhancement_in(cs, &scaled, &g.translated(shift)).unwrap();
        worst_translation = worst_translation.max((b - c).abs());
    }
    check(
        worst_scale <= 1e-12 && worst_translation <= 1e-12,
        format!("{trials} trials: rescaling error {worst_scale:.2e}, translation error {worst_translation:.2e}"),
    )
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    let mut codes = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("run{k}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_raman-lab"))
            .args(["scan-partitions", "--n-max", "6", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        codes.push(status.code());
        outputs.push(std::fs::read(&path).unwrap());
    }
    let identical = outputs[0] == outputs[1];
    let rows = String::from_utf8_lossy(&outputs[0]).lines().count();
    check(
        identical && codes.iter().all(|c| *c == Some(0)),
        format!("byte-identical: {identical}, exit codes {codes:?}, {rows} lines"),
    )
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "AC1 three-atom W enhancement",
            Some(Duration::from_secs(1)),
            three_atom_w,
        ),
        (
            "AC2 W scaling law",
            Some(Duration::from_secs(30)),
            w_scaling,
        ),
        (
            "AC3 closed-form vs brute-force enhancement",
            Some(Duration::from_secs(120)),
            full_oracle_equivalence,
        ),
        ("AC4 N^2 regime", None, n_squared_regime),
        ("AC5 SU(3) algebra and ladder bridge", None, su3_algebra),
        ("AC6 scattered-state structure", None, scattered_structure),
        ("AC7 Dicke pair correlation", None, dicke_correlation),
        ("AC8 invariance suite", None, invariance_suite),
        ("AC9 CLI determinism", None, cli_determinism),
    ];
    let mut failures = 0;
    for (name, limit, f) in criteria {
        let outcome = timed(limit, f);
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", outcome.detail);
        if !outcome.passed {
            failures += 1;
        }
    }
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
