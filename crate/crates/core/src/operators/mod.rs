//! Truncated operators on `C² ⊗ span{φ_0, …, φ_cutoff}`.
//!
//! Hamiltonians are materialised as [`SparseOp`]s. The auxiliary maps
//! `S21(t)` and `X(t)` are applied as closed-form amplitude maps that grow the
//! cutoff so that no amplitude is lost at the truncation boundary.
//!
//! Boundary convention: `a φ_0 = 0` exactly, and the truncated `a†` sends
//! `φ_cutoff` to zero. Consequently `[a, a†] = I` only on `n < cutoff`.

mod sparse;

pub use sparse::{SparseOp, SpinMatrix};

use num_complex::Complex64;

use crate::model::{ModelParams, Spin, SpinBosonState};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const SIGMA_X: SpinMatrix = [[ZERO, ONE], [ONE, ZERO]];
pub const SIGMA_Y: SpinMatrix = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
pub const SIGMA_Z: SpinMatrix = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];
/// `σ+ e2 = e1`.
pub const SIGMA_PLUS: SpinMatrix = [[ZERO, ONE], [ZERO, ZERO]];
/// `σ− e1 = e2`.
pub const SIGMA_MINUS: SpinMatrix = [[ZERO, ZERO], [ONE, ZERO]];
pub const SPIN_IDENTITY: SpinMatrix = [[ONE, ZERO], [ZERO, ONE]];
/// `P+ = σ+σ−`, projector onto `e1`.
pub const P_PLUS: SpinMatrix = [[ONE, ZERO], [ZERO, ZERO]];

/// Boson ladder operators on `span{φ_0, …, φ_cutoff}`.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub a: SparseOp,
    pub adag: SparseOp,
    pub number: SparseOp,
}

pub fn ladder_ops(cutoff: usize) -> Ladder {
    let d = cutoff + 1;
    let a = SparseOp::from_triplets(
        d,
        (1..d).map(|n| (n - 1, n, Complex64::new((n as f64).sqrt(), 0.0))),
        false,
    );
    let adag = a.adjoint();
    let number = SparseOp::from_triplets(d, (0..d).map(|n| (n, n, Complex64::new(n as f64, 0.0))), true);
    Ladder { a, adag, number }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Quantum Rabi Hamiltonian `(Ω/2)σz⊗I + ω I⊗a†a + λ σx⊗(a + a†)`.
pub fn build_h(params: &ModelParams, cutoff: usize) -> SparseOp {
    let l = ladder_ops(cutoff);
    let field = SparseOp::linear_combination(&[(ONE, &l.a), (ONE, &l.adag)], true);
    let id = SparseOp::identity(cutoff + 1);
    SparseOp::linear_combination(
        &[
            (re(params.big_omega() / 2.0), &SparseOp::kron_spin(&SIGMA_Z, &id, true)),
            (re(params.omega()), &SparseOp::kron_spin(&SPIN_IDENTITY, &l.number, true)),
            (re(params.lambda()), &SparseOp::kron_spin(&SIGMA_X, &field, true)),
        ],
        true,
    )
}

/// Jaynes–Cummings Hamiltonian `(Ω/2)σz⊗I + ω I⊗a†a + λ(σ+⊗a + σ−⊗a†)`.
pub fn build_h_rwa(params: &ModelParams, cutoff: usize) -> SparseOp {
    let l = ladder_ops(cutoff);
    let id = SparseOp::identity(cutoff + 1);
    SparseOp::linear_combination(
        &[
            (re(params.big_omega() / 2.0), &SparseOp::kron_spin(&SIGMA_Z, &id, true)),
            (re(params.omega()), &SparseOp::kron_spin(&SPIN_IDENTITY, &l.number, true)),
            (re(params.lambda()), &SparseOp::kron_spin(&SIGMA_PLUS, &l.a, false)),
            (re(params.lambda()), &SparseOp::kron_spin(&SIGMA_MINUS, &l.adag, false)),
        ],
        true,
    )
}

/// Interaction-picture JC generator `H2 = (Δ/2)σz⊗I + λ(σ+⊗a + σ−⊗a†)`.
pub fn build_h2(params: &ModelParams, cutoff: usize) -> SparseOp {
    let l = ladder_ops(cutoff);
    let id = SparseOp::identity(cutoff + 1);
    SparseOp::linear_combination(
        &[
            (re(params.delta() / 2.0), &SparseOp::kron_spin(&SIGMA_Z, &id, true)),
            (re(params.lambda()), &SparseOp::kron_spin(&SIGMA_PLUS, &l.a, false)),
            (re(params.lambda()), &SparseOp::kron_spin(&SIGMA_MINUS, &l.adag, false)),
        ],
        true,
    )
}

/// Interaction-picture Rabi generator
/// `H1(t) = H2 + λ(e^{2itω}σ+⊗a† + e^{−2itω}σ−⊗a)`.
pub fn build_h1(params: &ModelParams, t: f64, cutoff: usize) -> SparseOp {
    let l = ladder_ops(cutoff);
    let id = SparseOp::identity(cutoff + 1);
    let lam = params.lambda();
    let rot = Complex64::from_polar(1.0, 2.0 * t * params.omega());
    SparseOp::linear_combination(
        &[
            (re(params.delta() / 2.0), &SparseOp::kron_spin(&SIGMA_Z, &id, true)),
            (re(lam), &SparseOp::kron_spin(&SIGMA_PLUS, &l.a, false)),
            (re(lam), &SparseOp::kron_spin(&SIGMA_MINUS, &l.adag, false)),
            (rot * lam, &SparseOp::kron_spin(&SIGMA_PLUS, &l.adag, false)),
            (rot.conj() * lam, &SparseOp::kron_spin(&SIGMA_MINUS, &l.a, false)),
        ],
        true,
    )
}

/// Conserved excitation number `𝒩 = σ+σ−⊗I + I⊗a†a`.
pub fn conserved_number_op(cutoff: usize) -> SparseOp {
    let l = ladder_ops(cutoff);
    let id = SparseOp::identity(cutoff + 1);
    SparseOp::linear_combination(
        &[
            (ONE, &SparseOp::kron_spin(&P_PLUS, &id, true)),
            (ONE, &SparseOp::kron_spin(&SPIN_IDENTITY, &l.number, true)),
        ],
        true,
    )
}

/// Free generator `H0 = (ω/2)σz⊗I + ω I⊗a†a`, kept as its diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameOp {
    omega: f64,
    cutoff: usize,
}

pub fn build_h0(params: &ModelParams, cutoff: usize) -> FrameOp {
    FrameOp {
        omega: params.omega(),
        cutoff,
    }
}

impl FrameOp {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Diagonal entry at `e_spin ⊗ φ_n`: `ω(n ± 1/2)`, `+` for spin up.
    pub fn phase(&self, spin: Spin, n: usize) -> f64 {
        let s = match spin {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        };
        self.omega * (n as f64 + s)
    }

    pub fn to_sparse(&self) -> SparseOp {
        let d = self.cutoff + 1;
        SparseOp::from_triplets(
            2 * d,
            (0..d)
                .map(|n| (n, n, re(self.phase(Spin::Up, n))))
                .chain((0..d).map(|n| (d + n, d + n, re(self.phase(Spin::Down, n))))),
            true,
        )
    }

    /// `e^{itH0} Ψ`. Works for any state cutoff; the frame is diagonal.
    pub fn rotate(&self, state: &SpinBosonState, t: f64) -> SpinBosonState {
        let mut out = state.clone();
        for spin in [Spin::Up, Spin::Down] {
            for n in 0..=state.cutoff() {
                *out.amp_mut(spin, n) *= Complex64::from_polar(1.0, t * self.phase(spin, n));
            }
        }
        out
    }
}

/// `S21(t)Ψ = −(λ sin(tω)/ω)(e^{itω}σ+⊗a† + e^{−itω}σ−⊗a)Ψ`.
///
/// The result lives on cutoff `state.cutoff() + 1` so the `a†` image of the
/// top level is kept.
pub fn apply_s21(params: &ModelParams, t: f64, state: &SpinBosonState) -> SpinBosonState {
    let w = params.omega();
    let s = -params.lambda() * (t * w).sin() / w;
    let p = Complex64::from_polar(1.0, t * w);
    let c = state.cutoff();
    let up = |k: usize| if k <= c { state.amp(Spin::Up, k) } else { ZERO };
    let down = |k: usize| if k <= c { state.amp(Spin::Down, k) } else { ZERO };
    let mut out = SpinBosonState::zeros(c + 1);
    for m in 0..=c + 1 {
        let mf = m as f64;
        if m >= 1 {
            *out.amp_mut(Spin::Up, m) = s * p * mf.sqrt() * down(m - 1);
        }
        *out.amp_mut(Spin::Down, m) = s * p.conj() * (mf + 1.0).sqrt() * up(m + 1);
    }
    out
}

/// `X(t)Ψ` with `X(t) = S21(t)H2 − H1(t)S21(t)`, applied through its
/// expanded normal-ordered form. The result lives on cutoff `state.cutoff() + 2`.
pub fn apply_x(params: &ModelParams, t: f64, state: &SpinBosonState) -> SpinBosonState {
    let w = params.omega();
    let lam = params.lambda();
    let delta = params.delta();
    let s = -lam * (t * w).sin() / w;
    let p = Complex64::from_polar(1.0, t * w);
    let pc = p.conj();
    let c = state.cutoff();
    let up = |k: usize| if k <= c { state.amp(Spin::Up, k) } else { ZERO };
    let down = |k: usize| if k <= c { state.amp(Spin::Down, k) } else { ZERO };
    let mut out = SpinBosonState::zeros(c + 2);
    for m in 0..=c + 2 {
        let mf = m as f64;
        // a†^2 φ_{m-2} = √(m(m-1)) φ_m,  a^2 φ_{m+2} = √((m+1)(m+2)) φ_m
        let raise2 = |f: &dyn Fn(usize) -> Complex64| {
            if m >= 2 {
                (mf * (mf - 1.0)).sqrt() * f(m - 2)
            } else {
                ZERO
            }
        };
        let lower2 = |f: &dyn Fn(usize) -> Complex64| ((mf + 1.0) * (mf + 2.0)).sqrt() * f(m + 2);

        let mut u = lam * (p * raise2(&up) - pc * lower2(&up) - p * mf * up(m));
        if m >= 1 {
            u -= delta * p * mf.sqrt() * down(m - 1);
        }
        let d = delta * pc * (mf + 1.0).sqrt() * up(m + 1)
            + lam * (-p * raise2(&down) + pc * lower2(&down) - pc * (mf + 1.0) * down(m));
        *out.amp_mut(Spin::Up, m) = s * u;
        *out.amp_mut(Spin::Down, m) = s * d;
    }
    out
}

/// `⟨Ψ|(σ+σ−⊗I + I⊗a†a)|Ψ⟩`.
pub fn conserved_number(state: &SpinBosonState) -> f64 {
    (0..=state.cutoff())
        .map(|n| {
            let pu = state.amp(Spin::Up, n).norm_sqr();
            let pd = state.amp(Spin::Down, n).norm_sqr();
            (n as f64 + 1.0) * pu + n as f64 * pd
        })
        .sum()
}
