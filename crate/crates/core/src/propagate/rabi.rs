//! Rabi evolution `e^{−itH}Ψ` with a certified truncation, and the RWA error
//! `‖e^{−itH}Ψ − e^{−itH_RWA}Ψ‖`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RwaError};
use crate::model::{ModelParams, SpinBosonState};
use crate::operators::build_h;

use super::jc::jc_propagate;
use super::krylov::expm_apply;

pub const MIN_TOL: f64 = 1e-12;
pub const MAX_TOL: f64 = 1e-4;
/// Default ceiling on the Fock cutoff reached by buffer doubling.
pub const MAX_CUTOFF: usize = 1 << 20;
const INITIAL_BUFFER: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationCertificate {
    /// Cutoff of the returned state; never below the input cutoff.
    pub cutoff_used: usize,
    /// Fock cutoff of the Hamiltonian whose result was accepted.
    pub truncation_cutoff: usize,
    pub solver_residual: f64,
    /// Distance between the results at the last two buffer sizes.
    pub truncation_delta: f64,
    pub total_error_estimate: f64,
    pub substeps: usize,
}

impl PropagationCertificate {
    /// Certificate of an exact evolution (no solver, no truncation error).
    pub fn exact(cutoff: usize) -> Self {
        Self {
            cutoff_used: cutoff,
            truncation_cutoff: cutoff,
            solver_residual: 0.0,
            truncation_delta: 0.0,
            total_error_estimate: 0.0,
            substeps: 0,
        }
    }
}

pub fn check_tol(tol: f64) -> Result<()> {
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(RwaError::DomainError {
            name: "tol",
            value: tol,
            domain: "[1e-12, 1e-4]",
        });
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(RwaError::NonFinite("t"))
    }
}

/// `e^{−itH}Ψ` with `total_error_estimate < tol`.
pub fn rabi_propagate(
    params: &ModelParams,
    state: &SpinBosonState,
    t: f64,
    tol: f64,
) -> Result<(SpinBosonState, PropagationCertificate)> {
    rabi_propagate_capped(params, state, t, tol, MAX_CUTOFF)
}

pub fn rabi_propagate_capped(
    params: &ModelParams,
    state: &SpinBosonState,
    t: f64,
    tol: f64,
    max_cutoff: usize,
) -> Result<(SpinBosonState, PropagationCertificate)> {
    check_tol(tol)?;
    check_time(t)?;
    let Some(top) = state.support_top() else {
        return Ok((state.clone(), PropagationCertificate::exact(state.cutoff())));
    };
    let p = params.normalized();
    let tau = t * params.omega();
    let budget = 0.25 * tol;
    let run = |cutoff: usize| -> Result<(SpinBosonState, f64, usize)> {
        let h = build_h(&p, cutoff);
        let v = state.truncated_to(top).padded_to(cutoff);
        let out = expm_apply(&h, v.as_slice(), tau, budget)?;
        Ok((SpinBosonState::from_flat(out.result), out.residual, out.substeps))
    };

    let mut buffer = INITIAL_BUFFER;
    let mut prev = run(top + buffer)?;
    loop {
        let cutoff = top + 2 * buffer;
        if cutoff > max_cutoff {
            return Err(RwaError::NoConvergence(format!(
                "truncation not certified below cutoff ceiling {max_cutoff}"
            )));
        }
        let cur = run(cutoff)?;
        let delta = cur.0.distance(&prev.0.padded_to(cutoff));
        if delta < budget {
            let (psi, residual, substeps) = cur;
            let out_cutoff = cutoff.max(state.cutoff());
            let cert = PropagationCertificate {
                cutoff_used: out_cutoff,
                truncation_cutoff: cutoff,
                solver_residual: residual,
                truncation_delta: delta,
                total_error_estimate: residual + delta,
                substeps,
            };
            return Ok((psi.padded_to(out_cutoff), cert));
        }
        buffer *= 2;
        prev = cur;
    }
}

/// `‖e^{−itH}Ψ − e^{−itH_RWA}Ψ‖`, with the certificate of the Rabi leg (the
/// Jaynes–Cummings leg is exact).
pub fn norm_difference(
    params: &ModelParams,
    state: &SpinBosonState,
    t: f64,
    tol: f64,
) -> Result<(f64, PropagationCertificate)> {
    let (rabi, cert) = rabi_propagate(params, state, t, tol)?;
    let jc = jc_propagate(params, state, t);
    let c = rabi.cutoff().max(jc.cutoff());
    Ok((rabi.padded_to(c).distance(&jc.padded_to(c)), cert))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupResult {
    pub t_opt: f64,
    pub value: f64,
    pub grid_points: usize,
    pub refinement_depth: usize,
    /// Largest certificate error over all evaluations.
    pub error_estimate: f64,
}

pub const MIN_GRID: usize = 64;

/// Maximum of [`norm_difference`] over `[0, t_max]`: uniform grid of
/// `grid + 1` points, then golden-section search around the best grid point.
/// Ties keep the earliest time.
pub fn sup_norm_difference(
    params: &ModelParams,
    state: &SpinBosonState,
    t_max: f64,
    grid: usize,
    refine_depth: usize,
    tol: f64,
) -> Result<SupResult> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(RwaError::DomainError {
            name: "t_max",
            value: t_max,
            domain: "(0, inf)",
        });
    }
    if grid < MIN_GRID {
        return Err(RwaError::InvalidArgument(format!("grid {grid} below {MIN_GRID}")));
    }
    check_tol(tol)?;
    let h = t_max / grid as f64;
    let times: Vec<f64> = (0..=grid).map(|k| if k == grid { t_max } else { k as f64 * h }).collect();
    let values = times
        .par_iter()
        .map(|&t| norm_difference(params, state, t, tol))
        .collect::<Result<Vec<_>>>()?;

    let mut err = 0.0f64;
    let mut best = 0;
    for (k, (v, cert)) in values.iter().enumerate() {
        err = err.max(cert.total_error_estimate);
        if *v > values[best].0 {
            best = k;
        }
    }
    let (mut t_opt, mut value) = (times[best], values[best].0);

    let (mut a, mut b) = (times[best.saturating_sub(1)], times[(best + 1).min(grid)]);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut eval = |t: f64| -> Result<f64> {
        let (v, cert) = norm_difference(params, state, t, tol)?;
        err = err.max(cert.total_error_estimate);
        if v > value {
            value = v;
            t_opt = t;
        }
        Ok(v)
    };
    if refine_depth > 0 {
        let mut x1 = b - ratio * (b - a);
        let mut x2 = a + ratio * (b - a);
        let mut f1 = eval(x1)?;
        let mut f2 = eval(x2)?;
        for _ in 2..refine_depth.max(2) {
            if f1 >= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - ratio * (b - a);
                f1 = eval(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + ratio * (b - a);
                f2 = eval(x2)?;
            }
        }
    }
    Ok(SupResult {
        t_opt,
        value,
        grid_points: grid + 1,
        refinement_depth: refine_depth,
        error_estimate: err,
    })
}
