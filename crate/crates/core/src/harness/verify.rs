//! Invariant suite run by `rwa verify`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{lower_bound, upper_bound};
use crate::error::{Result, RwaError};
use crate::model::{moments, ModelParams, Spin, SpinBosonState};
use crate::operators::{
    apply_s21, build_h, build_h0, build_h1, build_h2, build_h_rwa, conserved_number, SparseOp,
};
use crate::propagate::{
    interaction_propagate, jc_propagate_oracle, jc_propagate_with, norm_difference, rabi_propagate, BlockFrequency,
};
use crate::Complex64;

use super::ibp::verify_ibp;
use super::output::{fmt_f64, Record};
use super::sandwich_holds;

pub const CHECK_NAMES: &[&str] = &[
    "unitarity",
    "conservation",
    "oracle",
    "frame",
    "s21-derivative",
    "ibp",
    "sandwich",
];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteOptions {
    /// Swap in the shifted off-diagonal frequency for the Jaynes–Cummings
    /// coefficients; the unitarity-based checks must then fail.
    pub fault_inject: bool,
    /// Subset of [`CHECK_NAMES`]; `None` runs everything.
    pub only: Option<Vec<String>>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst observed defect.
    pub metric: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Record for CheckResult {
    const HEADER: &'static [&'static str] = &["name", "passed", "metric", "threshold", "detail"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            self.passed.to_string(),
            fmt_f64(self.metric),
            fmt_f64(self.threshold),
            self.detail.clone(),
        ]
    }
}

fn check(name: &str, metric: f64, threshold: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: metric <= threshold,
        metric,
        threshold,
        detail,
    }
}

/// Normalised state with uniformly random real and imaginary parts.
pub fn random_state<R: Rng>(rng: &mut R, cutoff: usize) -> SpinBosonState {
    let mut branch = || -> Vec<Complex64> {
        (0..=cutoff)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    };
    let up = branch();
    let down = branch();
    SpinBosonState::from_branches(up, down)
        .expect("branches have equal length")
        .normalized()
}

/// Random `(params, state, t)` with `g ≤ 0.3`, `|Δ| ≤ 0.5ω` and cutoff ≤ `max_cutoff`.
pub fn random_draw<R: Rng>(rng: &mut R, max_cutoff: usize) -> (ModelParams, SpinBosonState, f64) {
    let omega = rng.gen_range(0.5..2.0);
    let lambda = omega * rng.gen_range(0.0..0.3);
    let big = omega * (1.0 + rng.gen_range(-0.5..0.5));
    let params = ModelParams::new(omega, lambda, big).expect("valid draw");
    let cutoff = rng.gen_range(1..=max_cutoff);
    let t = rng.gen_range(0.0..2.0 * PI) / omega;
    (params, random_state(rng, cutoff), t)
}

fn policy(opts: &SuiteOptions) -> BlockFrequency {
    if opts.fault_inject {
        BlockFrequency::ShiftedOffDiagonal
    } else {
        BlockFrequency::Unitary
    }
}

fn unitarity(opts: &SuiteOptions) -> Result<CheckResult> {
    let pol = policy(opts);
    let p = ModelParams::from_ratio(0.1, 0.0)?;
    let fock = SpinBosonState::fock(Spin::Up, 5, 5)?;
    let mut worst = (jc_propagate_with(&p, &fock, PI, pol).norm() - 1.0).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..50 {
        let (p, s, t) = random_draw(&mut rng, 64);
        worst = worst.max((jc_propagate_with(&p, &s, t, pol).norm() - s.norm()).abs());
    }
    let (rabi, cert) = rabi_propagate(&p, &fock, PI, 1e-11)?;
    let rabi_defect = ((rabi.norm() - 1.0).abs() - cert.total_error_estimate).max(0.0);
    Ok(check(
        "unitarity",
        worst.max(rabi_defect),
        1e-10,
        format!("jc worst {worst:.3e}, rabi {rabi_defect:.3e}"),
    ))
}

fn conservation(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (p, s, t) = random_draw(&mut rng, 128);
        let out = jc_propagate_with(&p, &s, t, policy(opts));
        worst = worst.max((conserved_number(&out) - conserved_number(&s)).abs());
    }
    Ok(check("conservation", worst, 1e-10, "100 random draws".into()))
}

fn oracle(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(2));
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (p, s, t) = random_draw(&mut rng, 128);
        let a = jc_propagate_with(&p, &s, t, policy(opts));
        worst = worst.max(a.distance(&jc_propagate_oracle(&p, &s, t)));
    }
    Ok(check("oracle", worst, 1e-12, "200 random draws".into()))
}

fn frame(opts: &SuiteOptions) -> Result<CheckResult> {
    let p = ModelParams::new(1.3, 0.2, 0.9)?;
    let c = 24;
    let h0 = build_h0(&p, c).to_sparse();
    let one = Complex64::new(1.0, 0.0);
    let sum = |a: &SparseOp, b: &SparseOp| SparseOp::linear_combination(&[(one, a), (one, b)], true);
    let mut worst = build_h(&p, c).max_abs_diff(&sum(&h0, &build_h1(&p, 0.0, c)));
    worst = worst.max(build_h_rwa(&p, c).max_abs_diff(&sum(&h0, &build_h2(&p, c))));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(3));
    let s = random_state(&mut rng, 12);
    let t = 1.9;
    let (direct, _) = norm_difference(&p, &s, t, 1e-12)?;
    let (rabi, _) = rabi_propagate(&p, &s, t, 1e-12)?;
    let u1 = build_h0(&p, rabi.cutoff()).rotate(&rabi, t);
    let u2 = interaction_propagate(&p, &s, t).padded_to(u1.cutoff());
    let cancel = (u1.distance(&u2) - direct).abs();
    Ok(check(
        "frame",
        worst.max(cancel),
        1e-12,
        format!("entrywise {worst:.3e}, picture change {cancel:.3e}"),
    ))
}

fn s21_derivative(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(4));
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (p, s, t) = random_draw(&mut rng, 32);
        let h = 1e-6 / p.omega();
        let fd = apply_s21(&p, t + h, &s)
            .add_scaled(Complex64::new(-1.0, 0.0), &apply_s21(&p, t - h, &s))
            .scaled(Complex64::new(0.5 / h, 0.0));
        let c = s.cutoff() + 1;
        let v = build_h2(&p, c).sub(&build_h1(&p, t, c));
        let exact = v.apply_state(&s.padded_to(c));
        let rel = fd.distance(&exact) / exact.norm().max(f64::MIN_POSITIVE);
        if exact.norm() > 0.0 {
            worst = worst.max(rel);
        }
    }
    Ok(check("s21-derivative", worst, 1e-6, "central differences, h = 1e-6/omega".into()))
}

/// `(g, Δ/ω, spin, n, ωt)` for the integration-by-parts check.
pub const IBP_SET: &[(f64, f64, Spin, usize, f64)] = &[
    (0.05, 0.1, Spin::Up, 3, PI / 2.0),
    (0.1, 0.0, Spin::Up, 8, 1.0),
    (0.02, -0.2, Spin::Down, 16, PI),
    (0.1, 0.3, Spin::Down, 1, 2.0),
    (0.0, 0.5, Spin::Up, 4, 1.0),
];

fn ibp(_opts: &SuiteOptions) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for &(g, delta, spin, n, t) in IBP_SET {
        let p = ModelParams::from_ratio(g, delta)?;
        let s = SpinBosonState::fock(spin, n, n)?;
        worst = worst.max(verify_ibp(&p, &s, t, 1e-8)?);
    }
    Ok(check("ibp", worst, 1e-6, format!("{} cases, quad_tol 1e-8", IBP_SET.len())))
}

fn sandwich(_opts: &SuiteOptions) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for &g in &[0.001, 0.01, 0.05, 0.1] {
        let p = ModelParams::from_ratio(g, 0.0)?;
        for &n in &[1usize, 4, 16, 64] {
            let s = SpinBosonState::fock(Spin::Up, n, n)?;
            let m = moments(&s);
            for &t in &[0.04, 0.5, 1.5, 3.0] {
                let (exact, cert) = norm_difference(&p, &s, t, 1e-10)?;
                let (lo, up) = (lower_bound(&p, &m, t).clamped, upper_bound(&p, &m, t).raw);
                let e = cert.total_error_estimate;
                let slack = (lo - e - exact).max(exact - up - e).max(0.0);
                debug_assert_eq!(slack == 0.0, sandwich_holds(lo, exact, up, e));
                worst = worst.max(slack);
                cases += 1;
            }
        }
    }
    Ok(check("sandwich", worst, 0.0, format!("{cases} Fock cases")))
}

/// Runs the selected checks in the fixed order of [`CHECK_NAMES`].
pub fn run_suite(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let selected: Vec<&str> = match &opts.only {
        None => CHECK_NAMES.to_vec(),
        Some(names) => {
            let names: Vec<&str> = names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
            if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(n)) {
                return Err(RwaError::InvalidArgument(format!("unknown check `{bad}`")));
            }
            CHECK_NAMES.iter().copied().filter(|c| names.contains(c)).collect()
        }
    };
    if selected.is_empty() {
        return Err(RwaError::InvalidArgument("no checks selected".into()));
    }
    selected
        .into_iter()
        .map(|name| match name {
            "unitarity" => unitarity(opts),
            "conservation" => conservation(opts),
            "oracle" => oracle(opts),
            "frame" => frame(opts),
            "s21-derivative" => s21_derivative(opts),
            "ibp" => ibp(opts),
            "sandwich" => sandwich(opts),
            _ => unreachable!("names validated above"),
        })
        .collect()
}
