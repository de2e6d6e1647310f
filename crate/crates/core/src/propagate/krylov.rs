//! Lanczos approximation of `e^{−iτH} v` for sparse Hermitian `H`.
//!
//! Each step builds a Krylov basis of dimension at most [`MAX_KRYLOV_DIM`],
//! exponentiates the tridiagonal projection exactly and stops once the
//! a-posteriori estimate `β_m |[e^{−iτT_m}]_{m,1}| ‖v‖` drops below the step
//! budget. When a step fails to converge, `τ` is split into twice as many
//! equal substeps and the whole propagation restarts.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Result, RwaError};
use crate::operators::SparseOp;

pub const MAX_KRYLOV_DIM: usize = 64;
pub const MAX_SUBSTEPS: usize = 1 << 16;
const MIN_CHECK_DIM: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct KrylovOutcome {
    pub result: Vec<Complex64>,
    /// Sum of the per-step error estimates.
    pub residual: f64,
    pub substeps: usize,
    /// Largest Krylov dimension reached by any accepted step.
    pub krylov_dim: usize,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// First column of `e^{−iτT}` for the symmetric tridiagonal `T` with the
/// given diagonal and off-diagonal.
fn exp_tridiag_first_col(diag: &[f64], off: &[f64], tau: f64) -> Vec<Complex64> {
    let m = diag.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for (k, &a) in diag.iter().enumerate() {
        t[(k, k)] = a;
    }
    for (k, &b) in off.iter().enumerate() {
        t[(k, k + 1)] = b;
        t[(k + 1, k)] = b;
    }
    let eig = SymmetricEigen::new(t);
    let q = &eig.eigenvectors;
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &lam)| Complex64::new(0.0, -tau * lam).exp() * q[(0, k)])
        .collect();
    (0..m)
        .map(|r| (0..m).map(|k| phases[k] * q[(r, k)]).sum())
        .collect()
}

struct Step {
    result: Vec<Complex64>,
    error: f64,
    dim: usize,
}

/// One Lanczos step; `None` if the budget is not met within `max_dim`.
fn lanczos_step(op: &SparseOp, v: &[Complex64], tau: f64, budget: f64, max_dim: usize) -> Option<Step> {
    let beta0 = norm(v);
    if beta0 == 0.0 || tau == 0.0 {
        return Some(Step {
            result: v.to_vec(),
            error: 0.0,
            dim: 0,
        });
    }
    let n = v.len();
    let mut basis: Vec<Vec<Complex64>> = vec![v.iter().map(|z| z / beta0).collect()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![ZERO; n];
    let mut scale = 0.0f64;
    for j in 0..max_dim {
        op.matvec_into(&basis[j], &mut w);
        if j > 0 {
            let b = betas[j - 1];
            for (wi, pi) in w.iter_mut().zip(&basis[j - 1]) {
                *wi -= pi * b;
            }
        }
        let alpha: f64 = basis[j].iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum();
        for (wi, xi) in w.iter_mut().zip(&basis[j]) {
            *wi -= xi * alpha;
        }
        let beta = norm(&w);
        alphas.push(alpha);
        scale = scale.max(alpha.abs()).max(beta);

        let m = j + 1;
        let breakdown = beta <= 1e-14 * scale.max(1.0);
        if breakdown || m == max_dim || (m >= MIN_CHECK_DIM && m % 2 == 0) {
            // shift by the Rayleigh quotient of v so the tridiagonal phases stay small
            let shift = alphas[0];
            let diag: Vec<f64> = alphas.iter().map(|a| a - shift).collect();
            let col = exp_tridiag_first_col(&diag, &betas, tau);
            let error = if beta == 0.0 { 0.0 } else { beta * col[m - 1].norm() * beta0 };
            if breakdown || error <= budget {
                let global = Complex64::new(0.0, -tau * shift).exp() * beta0;
                let mut y = vec![ZERO; n];
                for (ck, vk) in col.iter().zip(&basis) {
                    let c = ck * global;
                    for (yi, vi) in y.iter_mut().zip(vk) {
                        *yi += c * vi;
                    }
                }
                return Some(Step { result: y, error, dim: m });
            }
        }
        if m == max_dim {
            return None;
        }
        betas.push(beta);
        basis.push(w.iter().map(|z| z / beta).collect());
    }
    None
}

/// `e^{−iτH} v` with total error estimate at most `tol`.
pub fn expm_apply(op: &SparseOp, v: &[Complex64], tau: f64, tol: f64) -> Result<KrylovOutcome> {
    expm_apply_with(op, v, tau, tol, MAX_KRYLOV_DIM)
}

pub fn expm_apply_with(
    op: &SparseOp,
    v: &[Complex64],
    tau: f64,
    tol: f64,
    max_dim: usize,
) -> Result<KrylovOutcome> {
    if !tau.is_finite() {
        return Err(RwaError::NonFinite("t"));
    }
    if max_dim < 2 {
        return Err(RwaError::InvalidArgument(format!("Krylov dimension {max_dim} below 2")));
    }
    let mut substeps = 1usize;
    while substeps <= MAX_SUBSTEPS {
        if let Some(out) = equal_substeps(op, v, tau, tol, max_dim, substeps) {
            return Ok(out);
        }
        substeps *= 2;
    }
    Err(RwaError::NoConvergence(format!(
        "Krylov propagation needs more than {MAX_SUBSTEPS} substeps"
    )))
}

/// `substeps` equal steps with the error budget split evenly; `None` if any
/// step misses its budget at `max_dim`.
fn equal_substeps(
    op: &SparseOp,
    v: &[Complex64],
    tau: f64,
    tol: f64,
    max_dim: usize,
    substeps: usize,
) -> Option<KrylovOutcome> {
    let h = tau / substeps as f64;
    let budget = tol / substeps as f64;
    let mut cur = v.to_vec();
    let mut residual = 0.0;
    let mut krylov_dim = 0;
    for _ in 0..substeps {
        let step = lanczos_step(op, &cur, h, budget, max_dim)?;
        cur = step.result;
        residual += step.error;
        krylov_dim = krylov_dim.max(step.dim);
    }
    Some(KrylovOutcome {
        result: cur,
        residual,
        substeps,
        krylov_dim,
    })
}

/// Dense reference `e^{−iτH} v` by Hermitian eigendecomposition.
pub fn expm_apply_dense(op: &SparseOp, v: &[Complex64], tau: f64) -> Vec<Complex64> {
    let d = op.dim();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for (r, c, x) in op.triplets() {
        m[(r, c)] = x;
    }
    let eig = SymmetricEigen::new(m);
    let q = &eig.eigenvectors;
    let vv = nalgebra::DVector::from_column_slice(v);
    let mut coeffs = q.adjoint() * vv;
    for (k, c) in coeffs.iter_mut().enumerate() {
        *c *= Complex64::new(0.0, -tau * eig.eigenvalues[k]).exp();
    }
    (q * coeffs).iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ModelParams, Spin, SpinBosonState};
    use crate::operators::build_h;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn matches_dense_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(lam, big, tau) in &[(0.1, 1.0, 3.0), (0.5, 1.4, 1.0), (1.0, 0.3, 7.5)] {
            let p = ModelParams::new(1.0, lam, big).unwrap();
            let h = build_h(&p, 40);
            let v: Vec<Complex64> = (0..h.dim())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let nv = norm(&v);
            let v: Vec<Complex64> = v.iter().map(|z| z / nv).collect();
            let out = expm_apply(&h, &v, tau, 1e-13).unwrap();
            let dense = expm_apply_dense(&h, &v, tau);
            assert!(dist(&out.result, &dense) < 1e-11, "{}", dist(&out.result, &dense));
            assert!(out.residual <= 1e-13);
        }
    }

    #[test]
    fn diagonal_operator_breaks_down_immediately() {
        let p = ModelParams::new(1.0, 0.0, 1.0).unwrap();
        let h = build_h(&p, 10);
        let s = SpinBosonState::fock(Spin::Up, 3, 10).unwrap();
        let out = expm_apply(&h, s.as_slice(), 2.0, 1e-12).unwrap();
        assert_eq!(out.residual, 0.0);
        assert_eq!(out.krylov_dim, 1);
        let want = Complex64::new(0.0, -2.0 * 3.5).exp();
        assert!((out.result[3] - want).norm() < 1e-15);
    }

    #[test]
    fn substeps_when_subspace_is_capped() {
        let p = ModelParams::new(1.0, 0.8, 1.0).unwrap();
        let h = build_h(&p, 60);
        let s = SpinBosonState::fock(Spin::Down, 20, 60).unwrap();
        let out = expm_apply_with(&h, s.as_slice(), 12.0, 1e-10, 12).unwrap();
        assert!(out.substeps > 1);
        let dense = expm_apply_dense(&h, s.as_slice(), 12.0);
        assert!(dist(&out.result, &dense) < 1e-9);
    }

    #[test]
    fn zero_time_and_zero_vector() {
        let p = ModelParams::new(1.0, 0.3, 1.0).unwrap();
        let h = build_h(&p, 5);
        let z = vec![ZERO; h.dim()];
        assert_eq!(expm_apply(&h, &z, 1.0, 1e-12).unwrap().result, z);
        let s = SpinBosonState::fock(Spin::Up, 2, 5).unwrap();
        assert_eq!(expm_apply(&h, s.as_slice(), 0.0, 1e-12).unwrap().result, s.as_slice());
    }
}
