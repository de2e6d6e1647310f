//! Analytic upper and lower bounds on `‖e^{−itH}Ψ − e^{−itH_RWA}Ψ‖`.
//!
//! The general bounds take the weighted moments of `Ψ`; the Fock versions are
//! their `Δ = 0` specialisations written in `g = λ/ω` and `ωt`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RwaError};
use crate::model::{MomentSet, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub raw: f64,
    pub clamped: f64,
    /// Whether `t` lies where the bound is proven.
    pub valid_domain: bool,
}

impl BoundValue {
    fn new(raw: f64, valid_domain: bool) -> Self {
        Self {
            raw,
            clamped: raw.max(0.0),
            valid_domain,
        }
    }
}

/// `(λ/ω)[m_np2 + |t|(|Δ| m_np2 + 3λ m_prod)]`, valid for every `t`.
pub fn upper_bound(params: &ModelParams, m: &MomentSet, t: f64) -> BoundValue {
    let lam = params.lambda();
    let growth = params.delta().abs() * m.m_np2 + 3.0 * lam * m.m_prod;
    BoundValue::new(params.g() * (m.m_np2 + t.abs() * growth), true)
}

/// `(λ/ω) sin(ωt) m_nm1 − (λ/ω²)(1 − cos ωt)(|Δ| m_np2 + 3λ m_prod)`,
/// proven for `0 ≤ t ≤ π/ω`.
pub fn lower_bound(params: &ModelParams, m: &MomentSet, t: f64) -> BoundValue {
    let (w, lam) = (params.omega(), params.lambda());
    let wt = w * t;
    let growth = params.delta().abs() * m.m_np2 + 3.0 * lam * m.m_prod;
    let raw = params.g() * wt.sin() * m.m_nm1 - lam / (w * w) * (1.0 - wt.cos()) * growth;
    BoundValue::new(raw, (0.0..=PI).contains(&wt))
}

/// Upper bound on a Fock state `Φ_{j,n}` at `Δ = 0`.
pub fn fock_upper(g: f64, n: u64, omega_t: f64) -> f64 {
    let n = n as f64;
    g * (n + 2.0).sqrt() * (1.0 + 3.0 * g * omega_t * (n + 3.0).sqrt())
}

/// Lower bound on a Fock state at `Δ = 0`, for `ωt ∈ [0, π]`.
pub fn fock_lower(g: f64, n: u64, omega_t: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&omega_t) {
        return Err(RwaError::DomainError {
            name: "omega_t",
            value: omega_t,
            domain: "[0, pi]",
        });
    }
    check_n(n)?;
    let nf = n as f64;
    let prod = ((nf + 2.0) * (nf + 3.0)).sqrt();
    Ok(g * omega_t.sin() * (nf - 1.0).sqrt() - 3.0 * g * g * (1.0 - omega_t.cos()) * prod)
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(RwaError::DomainError {
            name: "n",
            value: 0.0,
            domain: "n >= 1",
        });
    }
    Ok(())
}

/// `ωt*`, the maximiser of [`fock_lower`] over `[0, π]`.
pub fn t_star(g: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    if n == 1 {
        // the sine term vanishes and the maximum sits at the origin
        return Ok(0.0);
    }
    let nf = n as f64;
    let r = (nf - 1.0) / ((nf + 2.0) * (nf + 3.0));
    let denom = (9.0 * g * g + r).sqrt();
    Ok((3.0 * g / denom).clamp(-1.0, 1.0).acos())
}

/// Closed form of `fock_lower(g, n, t_star(g, n))`.
pub fn lower_at_tstar(g: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    let p = (nf + 2.0) * (nf + 3.0);
    let q = 9.0 * g * g * p + nf - 1.0;
    if q == 0.0 {
        return Ok(0.0);
    }
    Ok(g * (9.0 * g * g * p - 3.0 * g * (p * q).sqrt() + nf - 1.0) / q.sqrt())
}

/// Two-sided window for the worst RWA error `ε_n` of an `n`-photon Fock state
/// over `ωt ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsWindow {
    pub n: u64,
    pub g: f64,
    pub upper: f64,
    pub lower: f64,
    /// `lower > 0` and `upper < 2`; otherwise one side is trivial.
    pub informative: bool,
}

pub fn eps_window(g: f64, n: u64) -> Result<EpsWindow> {
    check_n(n)?;
    if !(g > 0.0 && g.is_finite()) {
        return Err(RwaError::DomainError {
            name: "g",
            value: g,
            domain: "(0, inf)",
        });
    }
    let nf = n as f64;
    let upper = 5.0 * g * (nf + 3.0).sqrt();
    let lower = 1.0 / 6.0 - 1.0 / (216.0 * g * g * nf) - 7.0 / (12.0 * nf);
    Ok(EpsWindow {
        n,
        g,
        upper,
        lower,
        informative: lower > 0.0 && upper < 2.0,
    })
}

/// Largest `g` with `fock_upper(g, n, ωt_max) ≤ eps_budget`, by bisection to
/// relative precision `1e−10`.
pub fn min_g_for_error(n: u64, eps_budget: f64, omega_t_max: f64) -> Result<f64> {
    if !(eps_budget > 0.0 && eps_budget.is_finite()) {
        return Err(RwaError::DomainError {
            name: "eps_budget",
            value: eps_budget,
            domain: "(0, inf)",
        });
    }
    if !(omega_t_max >= 0.0 && omega_t_max.is_finite()) {
        return Err(RwaError::DomainError {
            name: "omega_t_max",
            value: omega_t_max,
            domain: "[0, inf)",
        });
    }
    let f = |g: f64| fock_upper(g, n, omega_t_max);
    // fock_upper is increasing in g and vanishes at 0, so a bracket always exists
    let mut lo = 0.0;
    let mut hi = eps_budget / (n as f64 + 2.0).sqrt();
    let mut guard = 0;
    while f(hi) <= eps_budget {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        if guard > 2000 {
            return Err(RwaError::Infeasible);
        }
    }
    while hi - lo > 1e-10 * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= eps_budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo > 0.0 {
        Ok(lo)
    } else {
        Err(RwaError::Infeasible)
    }
}
