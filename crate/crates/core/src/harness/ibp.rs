//! Residual of the integration-by-parts identity relating the two
//! interaction-picture propagators:
//!
//! `i(U2(t) − U1(t))Ψ = S21(t)U2(t)Ψ + i∫₀ᵗ U1(t)U1(s)† X(s) U2(s)Ψ ds`,
//!
//! with `U1(t) = e^{itH0}e^{−itH}` and `U2(t) = e^{−itH2}`.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use serde::Serialize;

use crate::error::{Result, RwaError};
use crate::model::{ModelParams, SpinBosonState};
use crate::operators::{apply_s21, apply_x, build_h0};
use crate::propagate::{interaction_propagate, rabi_propagate};
use crate::Complex64;

pub const MAX_LEVELS: usize = 20;
const GL_ORDER: usize = 6;
/// Tolerance handed to each Rabi propagation inside the identity.
const PROPAGATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IbpReport {
    pub residual: f64,
    /// Number of interval halvings that were needed.
    pub levels: usize,
    pub quadrature_change: f64,
    /// Sum of the certificate errors of the Rabi propagations that enter.
    pub propagation_error: f64,
}

fn add_padded(acc: &mut SpinBosonState, coeff: Complex64, x: &SpinBosonState) {
    let c = acc.cutoff().max(x.cutoff());
    *acc = acc.padded_to(c).add_scaled(coeff, &x.padded_to(c));
}

/// `U1(t)U1(s)†X(s)U2(s)Ψ = e^{itH0} e^{−i(t−s)H} e^{−isH0} X(s) e^{−isH2} Ψ`.
fn integrand(params: &ModelParams, psi: &SpinBosonState, s: f64, t: f64) -> Result<(SpinBosonState, f64)> {
    let u2 = interaction_propagate(params, psi, s);
    let x = apply_x(params, s, &u2);
    let back = build_h0(params, x.cutoff()).rotate(&x, -s);
    let (evolved, cert) = rabi_propagate(params, &back, t - s, PROPAGATION_TOL)?;
    Ok((build_h0(params, evolved.cutoff()).rotate(&evolved, t), cert.total_error_estimate))
}

fn composite_gl(
    params: &ModelParams,
    psi: &SpinBosonState,
    t: f64,
    panels: usize,
    rule: &GaussLegendre,
    prop_err: &mut f64,
) -> Result<SpinBosonState> {
    let h = t / panels as f64;
    let mut acc = SpinBosonState::zeros(psi.cutoff());
    for k in 0..panels {
        let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for &(x, w) in rule.as_node_weight_pairs() {
            let (f, e) = integrand(params, psi, mid + half * x, t)?;
            *prop_err += e * (w * half).abs();
            add_padded(&mut acc, Complex64::new(w * half, 0.0), &f);
        }
    }
    Ok(acc)
}

/// Norm of the identity's defect. The integral is refined by halving every
/// panel until two successive estimates differ by less than `quad_tol`.
pub fn verify_ibp(params: &ModelParams, state: &SpinBosonState, t: f64, quad_tol: f64) -> Result<f64> {
    verify_ibp_report(params, state, t, quad_tol).map(|r| r.residual)
}

pub fn verify_ibp_report(params: &ModelParams, state: &SpinBosonState, t: f64, quad_tol: f64) -> Result<IbpReport> {
    verify_ibp_report_with(params, state, t, quad_tol, MAX_LEVELS)
}

/// As [`verify_ibp_report`] with at most `max_levels` halvings.
pub fn verify_ibp_report_with(
    params: &ModelParams,
    state: &SpinBosonState,
    t: f64,
    quad_tol: f64,
    max_levels: usize,
) -> Result<IbpReport> {
    if !t.is_finite() {
        return Err(RwaError::NonFinite("t"));
    }
    if !(quad_tol > 0.0 && quad_tol.is_finite()) {
        return Err(RwaError::DomainError {
            name: "quad_tol",
            value: quad_tol,
            domain: "(0, inf)",
        });
    }
    if max_levels == 0 || max_levels > MAX_LEVELS {
        return Err(RwaError::InvalidArgument(format!("max_levels must be in 1..={MAX_LEVELS}")));
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(GL_ORDER).expect("order is positive"));
    let i = Complex64::new(0.0, 1.0);

    let mut prop_err = 0.0;
    let mut integral = composite_gl(params, state, t, 1, &rule, &mut prop_err)?;
    let mut levels = 0;
    let mut change = f64::INFINITY;
    while levels < max_levels {
        levels += 1;
        let mut err = 0.0;
        let finer = composite_gl(params, state, t, 1 << levels, &rule, &mut err)?;
        let c = finer.cutoff().max(integral.cutoff());
        change = finer.padded_to(c).distance(&integral.padded_to(c));
        integral = finer;
        prop_err = err;
        if change < quad_tol {
            break;
        }
    }
    if change >= quad_tol {
        return Err(RwaError::QuadratureNoConvergence {
            levels: max_levels,
            last_change: change,
        });
    }

    let u2 = interaction_propagate(params, state, t);
    let (rabi, cert) = rabi_propagate(params, state, t, PROPAGATION_TOL)?;
    let u1 = build_h0(params, rabi.cutoff()).rotate(&rabi, t);
    prop_err += cert.total_error_estimate;

    let mut lhs = SpinBosonState::zeros(0);
    add_padded(&mut lhs, i, &u2);
    add_padded(&mut lhs, -i, &u1);
    add_padded(&mut lhs, Complex64::new(-1.0, 0.0), &apply_s21(params, t, &u2));
    add_padded(&mut lhs, -i, &integral);
    Ok(IbpReport {
        residual: lhs.norm(),
        levels,
        quadrature_change: change,
        propagation_error: prop_err,
    })
}
