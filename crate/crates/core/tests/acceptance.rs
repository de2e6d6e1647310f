//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; the process fails if any
//! criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rwa_core::bounds::{eps_window, fock_lower, lower_at_tstar, t_star};
use rwa_core::harness::verify::IBP_SET;
use rwa_core::harness::{cmd_epswindow, cmd_fig2, run_suite, verify_ibp, Fig2Options, SuiteOptions};
use rwa_core::operators::conserved_number;
use rwa_core::propagate::{jc_propagate, jc_propagate_oracle, jc_propagate_with, norm_difference, BlockFrequency};
use rwa_core::{Complex64, ModelParams, Spin, SpinBosonState};

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: String) -> Outcome {
    Outcome { passed, summary }
}

/// Bound sandwich over 40 photon numbers at g = 1/100, Δ = 0, ωt = 0.04.
fn sandwich_scan() -> Outcome {
    let rows = cmd_fig2(&Fig2Options::default()).expect("scan runs");
    let max_cert = rows.iter().map(|r| r.cert_error).fold(0.0, f64::max);
    let bad: Vec<usize> = rows.iter().filter(|r| !r.sandwich_ok()).map(|r| r.n).collect();
    let trend = rows.windows(2).all(|w| w[1].exact >= w[0].exact);
    outcome(
        rows.len() == 40 && bad.is_empty() && max_cert <= 1e-8,
        format!(
            "{} rows, n in [{}, {}], violations {:?}, max cert {:.2e} (<= 1e-8), exact nondecreasing: {}",
            rows.len(),
            rows[0].n,
            rows[rows.len() - 1].n,
            bad,
            max_cert,
            trend
        ),
    )
}

/// Worst error over ωt ∈ [0, π] for g = 0.003, n = 10⁴ against the window.
fn eps_window_check() -> Outcome {
    let (g, n) = (0.003, 10_000);
    let row = cmd_epswindow(g, n, PI, 64, 24, 1e-10).expect("sup search runs");
    let w = eps_window(g, n as u64).unwrap();
    let (lo, hi) = (0.1149, 1.5003);
    let e = row.cert_error;
    let stated = row.eps_hat >= lo - e && row.eps_hat <= hi + e;
    let computed = row.in_window == Some(true);
    outcome(
        stated && computed,
        format!(
            "eps_hat {:.6} at omega*t {:.4} (cert {:.1e}); stated window [{lo}, {hi}], computed [{:.6}, {:.6}]",
            row.eps_hat, row.t_opt, e, w.lower, w.upper
        ),
    )
}

/// A Fock state whose exact error exceeds the large-n lower estimate.
fn large_error_witness() -> Outcome {
    let (g, n) = (0.1, 10_000u64);
    let nf = n as f64;
    let threshold = 1.0 / 6.0 - 1.0 / (216.0 * g * g * nf) - 7.0 / (12.0 * nf);
    let wt = t_star(g, n).unwrap();
    let p = ModelParams::from_ratio(g, 0.0).unwrap();
    let psi = SpinBosonState::fock(Spin::Up, n as usize, n as usize).unwrap();
    let (exact, cert) = norm_difference(&p, &psi, wt, 1e-10).unwrap();
    outcome(
        threshold > 0.16 && wt <= PI && exact >= threshold - 1e-6,
        format!(
            "g {g}, n {n}, omega*t {wt:.6}: exact {exact:.6} (cert {:.1e}) >= threshold {threshold:.6}",
            cert.total_error_estimate
        ),
    )
}

fn random_state(rng: &mut ChaCha8Rng, cutoff: usize) -> SpinBosonState {
    let mut branch = || -> Vec<Complex64> {
        (0..=cutoff)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    };
    let up = branch();
    let down = branch();
    SpinBosonState::from_branches(up, down).unwrap().normalized()
}

/// Closed form against block exponentials on 1000 random draws.
fn jc_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut agree, mut unit, mut cons) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let omega = rng.gen_range(0.2..3.0);
        let p = ModelParams::new(omega, omega * rng.gen_range(0.0..0.5), omega * rng.gen_range(0.0..2.0)).unwrap();
        let cutoff = rng.gen_range(1..=128);
        let s = random_state(&mut rng, cutoff);
        let t = rng.gen_range(-10.0..10.0) / omega;
        let out = jc_propagate(&p, &s, t);
        agree = agree.max(out.distance(&jc_propagate_oracle(&p, &s, t)));
        unit = unit.max((out.norm() - s.norm()).abs());
        cons = cons.max((conserved_number(&out) - conserved_number(&s)).abs());
    }
    outcome(
        agree < 1e-12 && unit < 1e-10 && cons < 1e-10,
        format!("1000 draws: oracle {agree:.2e} (< 1e-12), norm {unit:.2e}, excitation number {cons:.2e} (< 1e-10)"),
    )
}

/// Integration-by-parts residual on Fock and coherent inputs.
fn ibp_identity() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for &(g, delta, spin, n, t) in IBP_SET {
        let p = ModelParams::from_ratio(g, delta).unwrap();
        let s = SpinBosonState::fock(spin, n, n).unwrap();
        worst = worst.max(verify_ibp(&p, &s, t, 1e-8).unwrap());
        cases += 1;
    }
    let p = ModelParams::from_ratio(0.08, -0.1).unwrap();
    let s = SpinBosonState::coherent(Spin::Up, Complex64::new(2.0, 1.0), 64, 1e-12).unwrap();
    worst = worst.max(verify_ibp(&p, &s, 1.3, 1e-8).unwrap());
    cases += 1;
    outcome(worst < 1e-6, format!("{cases} cases, worst residual {worst:.2e} (< 1e-6)"))
}

/// The closed-form maximiser of the Fock lower bound against a 10⁴-point grid.
fn t_star_optimality() -> Outcome {
    let k = 10_000;
    let mut worst_arg = 0.0f64;
    let mut worst_val = 0.0f64;
    let mut pairs = 0;
    for &g in &[0.001, 0.01, 0.1] {
        for &n in &[2u64, 10, 100, 10_000] {
            let (mut best, mut arg) = (f64::NEG_INFINITY, 0.0);
            for i in 0..=k {
                let x = PI * i as f64 / k as f64;
                let v = fock_lower(g, n, x).unwrap();
                if v > best {
                    best = v;
                    arg = x;
                }
            }
            let ts = t_star(g, n).unwrap();
            worst_arg = worst_arg.max((arg - ts).abs() / (PI / k as f64));
            worst_val = worst_val.max((lower_at_tstar(g, n).unwrap() - fock_lower(g, n, ts).unwrap()).abs());
            pairs += 1;
        }
    }
    outcome(
        pairs == 12 && worst_arg <= 1.0 && worst_val <= 1e-10,
        format!("{pairs} pairs: argmax offset {worst_arg:.3} grid steps (<= 1), closed form {worst_val:.2e} (<= 1e-10)"),
    )
}

/// Halving g halves the exact error.
fn weak_coupling_scaling() -> Outcome {
    let psi = SpinBosonState::fock(Spin::Up, 3, 3).unwrap();
    let gs = [0.04, 0.02, 0.01, 0.005];
    let errs: Vec<f64> = gs
        .iter()
        .map(|&g| norm_difference(&ModelParams::from_ratio(g, 0.0).unwrap(), &psi, 1.0, 1e-12).unwrap().0)
        .collect();
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
    let ok = ratios.iter().all(|r| (r / 2.0 - 1.0).abs() <= 0.1);
    outcome(ok, format!("errors {errs:.4?}, successive ratios {ratios:.4?} (within 10% of 2)"))
}

/// The shifted off-diagonal frequency must visibly break unitarity.
fn fault_injection() -> Outcome {
    let p = ModelParams::from_ratio(0.1, 0.0).unwrap();
    let psi = SpinBosonState::fock(Spin::Up, 5, 5).unwrap();
    let bad = (jc_propagate_with(&p, &psi, PI, BlockFrequency::ShiftedOffDiagonal).norm() - 1.0).abs();
    let good = (jc_propagate(&p, &psi, PI).norm() - 1.0).abs();
    let opts = |fault| SuiteOptions {
        fault_inject: fault,
        only: Some(vec!["unitarity".into(), "oracle".into()]),
        seed: 1,
    };
    let faulty_suite_fails = run_suite(&opts(true)).unwrap().iter().all(|c| !c.passed);
    let shipped_suite_passes = run_suite(&opts(false)).unwrap().iter().all(|c| c.passed);
    outcome(
        bad > 1e-3 && good < 1e-12 && faulty_suite_fails && shipped_suite_passes,
        format!(
            "norm defect injected {bad:.4e} (> 1e-3), shipped {good:.1e}; suite fails with fault: {faulty_suite_fails}, passes without: {shipped_suite_passes}"
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("bound sandwich over photon number", sandwich_scan),
        ("worst-case error window", eps_window_check),
        ("large-error witness", large_error_witness),
        ("closed-form JC vs oracle", jc_oracle),
        ("integration-by-parts identity", ibp_identity),
        ("t* optimality", t_star_optimality),
        ("weak-coupling scaling", weak_coupling_scaling),
        ("fault injection", fault_injection),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "[{status}] criterion {} {name}: {} [{:.1}s]",
            k + 1,
            o.summary,
            start.elapsed().as_secs_f64()
        );
        if !o.passed {
            failures += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
