//! Model parameters, spin⊗boson states on a truncated Fock space, and the
//! weighted moments that enter the error bounds.
//!
//! A state is stored as one flat amplitude vector of length `2 * (cutoff + 1)`:
//! the spin-up branch `e1 ⊗ φ_n` occupies indices `0..=cutoff`, the spin-down
//! branch `e2 ⊗ φ_n` the following `cutoff + 1` slots. Sparse operators in
//! [`crate::operators`] use the same spin-major layout.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RwaError};

/// Construction tolerance on `|‖Ψ‖² − 1|` for normalised constructors.
pub const NORM_EPS: f64 = 1e-12;

/// Physical parameters of the Rabi / Jaynes–Cummings pair.
///
/// `delta = big_omega - omega` and `g = lambda / omega` are derived once at
/// construction. Propagators work in units where `omega = 1`; see
/// [`ModelParams::normalized`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    omega: f64,
    lambda: f64,
    big_omega: f64,
    delta: f64,
    g: f64,
}

impl ModelParams {
    /// Field frequency `omega`, coupling `lambda`, atomic frequency `big_omega`.
    pub fn new(omega: f64, lambda: f64, big_omega: f64) -> Result<Self> {
        for (name, v) in [("omega", omega), ("lambda", lambda), ("Omega", big_omega)] {
            if !v.is_finite() {
                return Err(RwaError::NonFinite(name));
            }
        }
        if omega <= 0.0 {
            return Err(RwaError::NonPositiveFrequency(omega));
        }
        if lambda < 0.0 {
            return Err(RwaError::NegativeCoupling(lambda));
        }
        Ok(Self {
            omega,
            lambda,
            big_omega,
            delta: big_omega - omega,
            g: lambda / omega,
        })
    }

    /// Parameters in units of `omega = 1`: coupling `g`, detuning `delta`.
    pub fn from_ratio(g: f64, delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(RwaError::NonFinite("delta"));
        }
        Self::new(1.0, g, 1.0 + delta)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Atomic transition frequency Ω.
    pub fn big_omega(&self) -> f64 {
        self.big_omega
    }

    /// Detuning Ω − ω.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Coupling ratio λ/ω.
    pub fn g(&self) -> f64 {
        self.g
    }

    /// The same physics with frequencies measured in units of `omega`.
    /// Times for the normalised model are `omega * t`.
    pub fn normalized(&self) -> Self {
        let big_omega = self.big_omega / self.omega;
        Self {
            omega: 1.0,
            lambda: self.g,
            big_omega,
            delta: big_omega - 1.0,
            g: self.g,
        }
    }

    /// Copy with a different coupling, keeping `omega` and `big_omega`.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.omega, lambda, self.big_omega)
    }
}

/// Two-level index: `Up` is `e1` (σz = +1), `Down` is `e2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// Accepts the 1-based labels `1` (up) and `2` (down).
    pub fn from_index(j: u8) -> Result<Self> {
        match j {
            1 => Ok(Spin::Up),
            2 => Ok(Spin::Down),
            _ => Err(RwaError::InvalidArgument(format!(
                "spin index must be 1 or 2, got {j}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Spin::Up => 1,
            Spin::Down => 2,
        }
    }
}

/// Amplitudes over `{e1, e2} ⊗ {φ_0, …, φ_cutoff}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinBosonState {
    cutoff: usize,
    amps: Vec<Complex64>,
}

impl SpinBosonState {
    /// General (not necessarily normalised) state from its two branches.
    pub fn from_branches(up: Vec<Complex64>, down: Vec<Complex64>) -> Result<Self> {
        if up.len() != down.len() || up.is_empty() {
            return Err(RwaError::InvalidArgument(format!(
                "branch lengths must be equal and non-zero, got {} and {}",
                up.len(),
                down.len()
            )));
        }
        if up.iter().chain(down.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(RwaError::NonFinite("amplitude"));
        }
        let cutoff = up.len() - 1;
        let mut amps = up;
        amps.extend(down);
        Ok(Self { cutoff, amps })
    }

    /// Wrap a flat spin-major amplitude vector. Length must be even and non-zero.
    pub fn from_flat(amps: Vec<Complex64>) -> Self {
        assert!(
            !amps.is_empty() && amps.len().is_multiple_of(2),
            "flat amplitude vector must have even non-zero length"
        );
        Self {
            cutoff: amps.len() / 2 - 1,
            amps,
        }
    }

    pub fn zeros(cutoff: usize) -> Self {
        Self {
            cutoff,
            amps: vec![Complex64::new(0.0, 0.0); 2 * (cutoff + 1)],
        }
    }

    /// Normalised basis state `e_j ⊗ φ_n`.
    pub fn fock(spin: Spin, n: usize, cutoff: usize) -> Result<Self> {
        if n > cutoff {
            return Err(RwaError::CutoffTooSmall { n, cutoff });
        }
        let mut s = Self::zeros(cutoff);
        *s.amp_mut(spin, n) = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Glauber coherent state `|α⟩` on spin branch `spin`, truncated at
    /// `cutoff` and renormalised. Fails when the Poisson mass above the
    /// cutoff is not below `mass_tol`.
    pub fn coherent(spin: Spin, alpha: Complex64, cutoff: usize, mass_tol: f64) -> Result<Self> {
        check_mass_tol(mass_tol)?;
        check_alpha(alpha)?;
        if alpha.norm() == 0.0 {
            return Self::fock(spin, 0, cutoff);
        }
        let mean = alpha.norm_sqr();
        let tail = poisson_tail_upper(mean, cutoff, |_| true);
        if tail >= mass_tol {
            return Err(RwaError::TruncationMassTooLarge {
                mass: tail,
                cutoff,
                tol: mass_tol,
            });
        }
        let mut s = Self::zeros(cutoff);
        for (n, z) in coherent_amplitudes(alpha, cutoff).into_iter().enumerate() {
            *s.amp_mut(spin, n) = z;
        }
        Ok(s.normalized())
    }

    /// Even cat state `(|α⟩ + |−α⟩)` normalised; only even Fock levels are
    /// populated. `α = 0` gives the vacuum.
    pub fn cat(spin: Spin, alpha: Complex64, cutoff: usize, mass_tol: f64) -> Result<Self> {
        check_mass_tol(mass_tol)?;
        check_alpha(alpha)?;
        if alpha.norm() == 0.0 {
            return Self::fock(spin, 0, cutoff);
        }
        let mean = alpha.norm_sqr();
        // Σ_{n even} e^{-|α|²}|α|^{2n}/n! = (1 + e^{-2|α|²}) / 2
        let even_mass = 0.5 * (1.0 + (-2.0 * mean).exp());
        let tail = poisson_tail_upper(mean, cutoff, |n| n % 2 == 0) / even_mass;
        if tail >= mass_tol {
            return Err(RwaError::TruncationMassTooLarge {
                mass: tail,
                cutoff,
                tol: mass_tol,
            });
        }
        let mut s = Self::zeros(cutoff);
        for (n, z) in coherent_amplitudes(alpha, cutoff).into_iter().enumerate().step_by(2) {
            *s.amp_mut(spin, n) = z;
        }
        Ok(s.normalized())
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Spin-up branch, `⟨e1 ⊗ φ_n|Ψ⟩` for `n = 0..=cutoff`.
    pub fn up(&self) -> &[Complex64] {
        &self.amps[..=self.cutoff]
    }

    /// Spin-down branch, `⟨e2 ⊗ φ_n|Ψ⟩`.
    pub fn down(&self) -> &[Complex64] {
        &self.amps[self.cutoff + 1..]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_flat(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn amp(&self, spin: Spin, n: usize) -> Complex64 {
        self.amps[flat_index(self.cutoff, spin, n)]
    }

    pub(crate) fn amp_mut(&mut self, spin: Spin, n: usize) -> &mut Complex64 {
        let i = flat_index(self.cutoff, spin, n);
        &mut self.amps[i]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let inv = 1.0 / self.norm();
        Self {
            cutoff: self.cutoff,
            amps: self.amps.iter().map(|z| z * inv).collect(),
        }
    }

    /// Highest Fock index carrying a non-zero amplitude in either branch.
    pub fn support_top(&self) -> Option<usize> {
        (0..=self.cutoff)
            .rev()
            .find(|&n| self.amp(Spin::Up, n) != Complex64::new(0.0, 0.0) || self.amp(Spin::Down, n) != Complex64::new(0.0, 0.0))
    }

    /// Zero-pad both branches up to `cutoff`. A smaller `cutoff` is a no-op.
    pub fn padded_to(&self, cutoff: usize) -> Self {
        if cutoff <= self.cutoff {
            return self.clone();
        }
        let mut out = Self::zeros(cutoff);
        out.amps[..=self.cutoff].copy_from_slice(self.up());
        out.amps[cutoff + 1..cutoff + 2 + self.cutoff].copy_from_slice(self.down());
        out
    }

    /// Keep only levels `0..=cutoff`, dropping anything above.
    pub fn truncated_to(&self, cutoff: usize) -> Self {
        if cutoff >= self.cutoff {
            return self.padded_to(cutoff);
        }
        let mut up = self.up()[..=cutoff].to_vec();
        up.extend_from_slice(&self.down()[..=cutoff]);
        Self { cutoff, amps: up }
    }

    /// `⟨self|other⟩`, padding the shorter state with zeros.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let c = self.cutoff.min(other.cutoff);
        let mut acc = Complex64::new(0.0, 0.0);
        for spin in [Spin::Up, Spin::Down] {
            for n in 0..=c {
                acc += self.amp(spin, n).conj() * other.amp(spin, n);
            }
        }
        acc
    }

    /// `self + coeff * other`, on the larger of the two cutoffs.
    pub fn add_scaled(&self, coeff: Complex64, other: &Self) -> Self {
        let c = self.cutoff.max(other.cutoff);
        let mut out = self.padded_to(c);
        for spin in [Spin::Up, Spin::Down] {
            for n in 0..=other.cutoff {
                *out.amp_mut(spin, n) += coeff * other.amp(spin, n);
            }
        }
        out
    }

    pub fn scaled(&self, coeff: Complex64) -> Self {
        Self {
            cutoff: self.cutoff,
            amps: self.amps.iter().map(|z| z * coeff).collect(),
        }
    }

    /// `‖self − other‖` with zero padding.
    pub fn distance(&self, other: &Self) -> f64 {
        self.add_scaled(Complex64::new(-1.0, 0.0), other).norm()
    }
}

/// Flat index of `e_spin ⊗ φ_n` for a given cutoff.
pub fn flat_index(cutoff: usize, spin: Spin, n: usize) -> usize {
    debug_assert!(n <= cutoff);
    match spin {
        Spin::Up => n,
        Spin::Down => cutoff + 1 + n,
    }
}

/// Weighted norms of a state entering the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    /// `‖(N+2)^{1/2} Ψ‖`
    pub m_np2: f64,
    /// `‖((N+2)(N+3))^{1/2} Ψ‖`
    pub m_prod: f64,
    /// `‖(N−1)_+^{1/2} Ψ‖`
    pub m_nm1: f64,
}

pub fn moments(state: &SpinBosonState) -> MomentSet {
    let (mut s_np2, mut s_prod, mut s_nm1) = (0.0, 0.0, 0.0);
    for n in 0..=state.cutoff() {
        let p = state.amp(Spin::Up, n).norm_sqr() + state.amp(Spin::Down, n).norm_sqr();
        let nf = n as f64;
        s_np2 += (nf + 2.0) * p;
        s_prod += (nf + 2.0) * (nf + 3.0) * p;
        s_nm1 += (nf - 1.0).max(0.0) * p;
    }
    MomentSet {
        m_np2: s_np2.sqrt(),
        m_prod: s_prod.sqrt(),
        m_nm1: s_nm1.sqrt(),
    }
}

fn check_mass_tol(mass_tol: f64) -> Result<()> {
    if !(mass_tol > 0.0 && mass_tol <= 1e-3) {
        return Err(RwaError::DomainError {
            name: "mass_tol",
            value: mass_tol,
            domain: "(0, 1e-3]",
        });
    }
    Ok(())
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(RwaError::NonFinite("alpha"));
    }
    Ok(())
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `e^{-|α|²/2} α^n / √(n!)` for `n = 0..=cutoff`, accumulated in log space
/// so that large `|α|` does not underflow the low levels.
fn coherent_amplitudes(alpha: Complex64, cutoff: usize) -> Vec<Complex64> {
    let r = alpha.norm();
    let (ln_r, phase) = (r.ln(), alpha.arg());
    let mut ln_mag = -0.5 * r * r;
    (0..=cutoff)
        .map(|n| {
            if n > 0 {
                ln_mag += ln_r - 0.5 * (n as f64).ln();
            }
            Complex64::from_polar(ln_mag.exp(), n as f64 * phase)
        })
        .collect()
}

/// Upper estimate of `Σ_{n > cutoff, keep(n)} e^{-μ} μ^n / n!`.
///
/// Terms are summed until they stop contributing past the Poisson peak; the
/// remainder is then bounded by a geometric series with ratio `μ / (n+1)`.
fn poisson_tail_upper(mean: f64, cutoff: usize, keep: impl Fn(usize) -> bool) -> f64 {
    let ln_mu = mean.ln();
    let mut ln_p = -mean + cutoff as f64 * ln_mu - ln_factorial(cutoff);
    let mut sum = 0.0;
    let mut n = cutoff;
    loop {
        n += 1;
        ln_p += ln_mu - (n as f64).ln();
        let p = ln_p.exp();
        if keep(n) {
            sum += p;
        }
        let past_peak = n as f64 > mean;
        if past_peak && (p == 0.0 || p <= f64::EPSILON * 1e-4 * sum) {
            let q = mean / (n as f64 + 1.0);
            return sum + p * q / (1.0 - q);
        }
    }
}
