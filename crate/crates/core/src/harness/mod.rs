//! Experiment drivers behind the `rwa` command line: single evaluations,
//! parameter sweeps, the photon-number scan at `g = 1/100`, the `ε_n` window
//! check, the integration-by-parts residual and the invariant suite.

pub mod ibp;
pub mod output;
pub mod verify;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{eps_window, lower_bound, upper_bound};
use crate::error::{Result, RwaError};
use crate::model::{moments, ModelParams, Spin, SpinBosonState};
use crate::propagate::{check_tol, norm_difference, sup_norm_difference};
use crate::Complex64;

pub use ibp::{verify_ibp, verify_ibp_report, verify_ibp_report_with, IbpReport, MAX_LEVELS};
pub use output::{fmt_bool, fmt_f64, fmt_opt, write_rows, Format, Record};
pub use verify::{run_suite, CheckResult, SuiteOptions, CHECK_NAMES};

/// Probability mass allowed beyond the cutoff of coherent and cat states
/// built from the command line.
pub const STATE_MASS_TOL: f64 = 1e-15;
const MAX_STATE_CUTOFF: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateKind {
    Fock(usize),
    Coherent(Complex64),
    Cat(Complex64),
}

/// Initial state as given on the command line: `fock:N`, `coherent:RE,IM`
/// or `cat:RE,IM`, on spin `e1` unless overridden.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub kind: StateKind,
    pub spin: Spin,
}

impl StateSpec {
    pub fn fock(n: usize) -> Self {
        Self {
            kind: StateKind::Fock(n),
            spin: Spin::Up,
        }
    }

    pub fn with_spin(self, spin: Spin) -> Self {
        Self { spin, ..self }
    }

    /// Builds the state on the smallest cutoff whose Poisson tail is below
    /// [`STATE_MASS_TOL`].
    pub fn build(&self) -> Result<SpinBosonState> {
        let (alpha, cat) = match self.kind {
            StateKind::Fock(n) => return SpinBosonState::fock(self.spin, n, n),
            StateKind::Coherent(a) => (a, false),
            StateKind::Cat(a) => (a, true),
        };
        let r = alpha.norm();
        let mut cutoff = (r * r + 8.0 * r + 16.0).ceil() as usize;
        loop {
            let built = if cat {
                SpinBosonState::cat(self.spin, alpha, cutoff, STATE_MASS_TOL)
            } else {
                SpinBosonState::coherent(self.spin, alpha, cutoff, STATE_MASS_TOL)
            };
            match built {
                Err(RwaError::TruncationMassTooLarge { .. }) if cutoff < MAX_STATE_CUTOFF => cutoff *= 2,
                other => return other,
            }
        }
    }
}

impl FromStr for StateSpec {
    type Err = RwaError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || RwaError::InvalidArgument(format!("cannot parse state `{s}`"));
        let (class, arg) = s.split_once(':').ok_or_else(bad)?;
        let complex = |arg: &str| -> Result<Complex64> {
            let (re, im) = arg.split_once(',').ok_or_else(bad)?;
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            if !(re.is_finite() && im.is_finite()) {
                return Err(RwaError::NonFinite("alpha"));
            }
            Ok(Complex64::new(re, im))
        };
        let kind = match class {
            "fock" => StateKind::Fock(arg.trim().parse().map_err(|_| bad())?),
            "coherent" => StateKind::Coherent(complex(arg)?),
            "cat" => StateKind::Cat(complex(arg)?),
            _ => return Err(bad()),
        };
        Ok(Self { kind, spin: Spin::Up })
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StateKind::Fock(n) => write!(f, "fock:{n}"),
            StateKind::Coherent(a) => write!(f, "coherent:{},{}", a.re, a.im),
            StateKind::Cat(a) => write!(f, "cat:{},{}", a.re, a.im),
        }
    }
}

/// One evaluation of the exact error against both bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub omega: f64,
    pub lambda: f64,
    #[serde(rename = "Omega")]
    pub big_omega: f64,
    pub g: f64,
    pub delta: f64,
    pub state: String,
    pub spin: u8,
    pub t: f64,
    pub exact: Option<f64>,
    pub upper: Option<f64>,
    pub lower_raw: Option<f64>,
    pub lower_clamped: Option<f64>,
    /// Whether `t` lies in `[0, π/ω]`, where the lower bound is proven.
    pub lower_valid: Option<bool>,
    pub cert_error: Option<f64>,
    pub sandwich_ok: Option<bool>,
    pub error: Option<String>,
}

impl ReportRow {
    fn skeleton(params: &ModelParams, state: &StateSpec, t: f64) -> Self {
        Self {
            omega: params.omega(),
            lambda: params.lambda(),
            big_omega: params.big_omega(),
            g: params.g(),
            delta: params.delta(),
            state: state.to_string(),
            spin: state.spin.index(),
            t,
            exact: None,
            upper: None,
            lower_raw: None,
            lower_clamped: None,
            lower_valid: None,
            cert_error: None,
            sandwich_ok: None,
            error: None,
        }
    }

    /// The proven part of the sandwich: both sides inside `[0, π/ω]`, only
    /// the upper side outside it. `None` when the row failed to evaluate.
    pub fn proven_ok(&self) -> Option<bool> {
        match (self.lower_valid, self.exact, self.upper, self.cert_error) {
            (Some(true), ..) => self.sandwich_ok,
            (Some(false), Some(exact), Some(upper), Some(e)) => Some(exact <= upper + e),
            _ => None,
        }
    }
}

impl Record for ReportRow {
    const HEADER: &'static [&'static str] = &[
        "omega",
        "lambda",
        "Omega",
        "g",
        "delta",
        "state",
        "spin",
        "t",
        "exact",
        "upper",
        "lower_raw",
        "lower_clamped",
        "lower_valid",
        "cert_error",
        "sandwich_ok",
        "error",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_f64(self.omega),
            fmt_f64(self.lambda),
            fmt_f64(self.big_omega),
            fmt_f64(self.g),
            fmt_f64(self.delta),
            self.state.clone(),
            self.spin.to_string(),
            fmt_f64(self.t),
            fmt_opt(self.exact),
            fmt_opt(self.upper),
            fmt_opt(self.lower_raw),
            fmt_opt(self.lower_clamped),
            fmt_bool(self.lower_valid),
            fmt_opt(self.cert_error),
            fmt_bool(self.sandwich_ok),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

/// `lower − cert ≤ exact ≤ upper + cert`.
pub fn sandwich_holds(lower_clamped: f64, exact: f64, upper: f64, cert: f64) -> bool {
    lower_clamped - cert <= exact && exact <= upper + cert
}

pub fn cmd_bounds(params: &ModelParams, state: &StateSpec, t: f64, tol: f64) -> Result<ReportRow> {
    let psi = state.build()?;
    let (exact, cert) = norm_difference(params, &psi, t, tol)?;
    let m = moments(&psi);
    let up = upper_bound(params, &m, t);
    let lo = lower_bound(params, &m, t);
    let err = cert.total_error_estimate;
    Ok(ReportRow {
        exact: Some(exact),
        upper: Some(up.raw),
        lower_raw: Some(lo.raw),
        lower_clamped: Some(lo.clamped),
        lower_valid: Some(lo.valid_domain),
        cert_error: Some(err),
        sandwich_ok: Some(sandwich_holds(lo.clamped, exact, up.raw, err)),
        ..ReportRow::skeleton(params, state, t)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Photon number of a Fock initial state.
    N,
    T,
    G,
}

impl FromStr for Axis {
    type Err = RwaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" => Ok(Axis::N),
            "t" => Ok(Axis::T),
            "g" => Ok(Axis::G),
            other => Err(RwaError::InvalidArgument(format!("unknown sweep axis `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Sweep values: an explicit list or `count` points between `min` and `max`.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    List(Vec<f64>),
    Range {
        min: f64,
        max: f64,
        count: usize,
        spacing: Spacing,
    },
}

impl Values {
    pub fn expand(&self) -> Vec<f64> {
        match self {
            Values::List(v) => v.clone(),
            Values::Range {
                min,
                max,
                count,
                spacing,
            } => (0..*count)
                .map(|k| {
                    if *count == 1 {
                        return *min;
                    }
                    let s = k as f64 / (*count - 1) as f64;
                    match spacing {
                        Spacing::Linear => min + s * (max - min),
                        Spacing::Log => (min.ln() + s * (max.ln() - min.ln())).exp(),
                    }
                })
                .collect(),
        }
    }
}

impl FromStr for Values {
    type Err = RwaError;

    /// `a,b,c` or `MIN:MAX:COUNT[:lin|log]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || RwaError::InvalidArgument(format!("cannot parse sweep values `{s}`"));
        let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if !(3..=4).contains(&parts.len()) {
                return Err(bad());
            }
            let spacing = match parts.get(3).copied() {
                None | Some("lin") => Spacing::Linear,
                Some("log") => Spacing::Log,
                Some(_) => return Err(bad()),
            };
            Ok(Values::Range {
                min: num(parts[0])?,
                max: num(parts[1])?,
                count: parts[2].trim().parse().map_err(|_| bad())?,
                spacing,
            })
        } else {
            s.split(',').map(num).collect::<Result<Vec<_>>>().map(Values::List)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Values,
    pub params: ModelParams,
    pub state: StateSpec,
    pub t: f64,
    pub tol: f64,
}

impl SweepSpec {
    /// Expanded values after validation. Photon numbers are rounded.
    pub fn points(&self) -> Result<Vec<f64>> {
        check_tol(self.tol)?;
        let mut v = self.values.expand();
        if self.axis == Axis::N {
            for x in &mut v {
                if *x < 0.0 {
                    return Err(RwaError::InvalidArgument(format!("photon number {x} is negative")));
                }
                *x = x.round();
            }
        }
        if let Values::Range { min, max, spacing, .. } = self.values {
            if spacing == Spacing::Log && !(min > 0.0 && max > 0.0) {
                return Err(RwaError::InvalidArgument("log spacing needs positive endpoints".into()));
            }
        }
        if v.is_empty() {
            return Err(RwaError::InvalidArgument("empty sweep".into()));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(RwaError::NonFinite("sweep value"));
        }
        if v.windows(2).any(|w| w[1] <= w[0]) {
            return Err(RwaError::InvalidArgument(
                "sweep values must be strictly increasing (after rounding photon numbers)".into(),
            ));
        }
        Ok(v)
    }

    fn row(&self, x: f64) -> ReportRow {
        let (params, state, t) = match self.axis {
            Axis::N => (Ok(self.params), StateSpec::fock(x as usize).with_spin(self.state.spin), self.t),
            Axis::T => (Ok(self.params), self.state, x),
            Axis::G => (self.params.with_lambda(x * self.params.omega()), self.state, self.t),
        };
        let params = match params {
            Ok(p) => p,
            Err(e) => {
                let mut row = ReportRow::skeleton(&self.params, &state, t);
                row.g = x;
                row.lambda = x * self.params.omega();
                row.error = Some(e.kind().to_string());
                return row;
            }
        };
        cmd_bounds(&params, &state, t, self.tol).unwrap_or_else(|e| ReportRow {
            error: Some(format!("{}: {e}", e.kind())),
            ..ReportRow::skeleton(&params, &state, t)
        })
    }
}

/// Rows in axis order; failures are recorded per row and the sweep continues.
pub fn cmd_sweep(spec: &SweepSpec) -> Result<Vec<ReportRow>> {
    let points = spec.points()?;
    Ok(points.par_iter().map(|&x| spec.row(x)).collect())
}

/// Settings for the photon-number scan of the exact error and both bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Options {
    pub g: f64,
    /// `ωt`.
    pub t: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub points: usize,
    pub tol: f64,
}

impl Default for Fig2Options {
    fn default() -> Self {
        Self {
            g: 0.01,
            t: 0.04,
            n_min: 1,
            n_max: 10_000,
            points: 40,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Row {
    pub n: usize,
    pub exact: f64,
    pub lower_raw: f64,
    pub lower_clamped: f64,
    pub upper: f64,
    pub cert_error: f64,
}

impl Fig2Row {
    pub fn sandwich_ok(&self) -> bool {
        sandwich_holds(self.lower_clamped, self.exact, self.upper, self.cert_error)
    }
}

impl Record for Fig2Row {
    const HEADER: &'static [&'static str] = &["n", "exact", "lower_raw", "lower_clamped", "upper", "cert_error"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fmt_f64(self.exact),
            fmt_f64(self.lower_raw),
            fmt_f64(self.lower_clamped),
            fmt_f64(self.upper),
            fmt_f64(self.cert_error),
        ]
    }
}

/// `count` distinct integers from `lo` to `hi`, geometrically spaced; where
/// rounding would repeat a value the next integer is taken instead.
pub fn log_spaced_integers(lo: usize, hi: usize, count: usize) -> Result<Vec<usize>> {
    if lo == 0 || hi < lo || count == 0 || hi - lo + 1 < count {
        return Err(RwaError::InvalidArgument(format!(
            "cannot place {count} distinct integers in [{lo}, {hi}]"
        )));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = Vec::with_capacity(count);
    for k in 0..count {
        let x = (a + (b - a) * k as f64 / (count - 1) as f64).exp().round() as usize;
        // leave room for the remaining points below hi
        let ceiling = hi - (count - 1 - k);
        let floor = out.last().map_or(lo, |&p| p + 1);
        out.push(x.clamp(floor, ceiling));
    }
    Ok(out)
}

pub fn cmd_fig2(opts: &Fig2Options) -> Result<Vec<Fig2Row>> {
    let params = ModelParams::from_ratio(opts.g, 0.0)?;
    check_tol(opts.tol)?;
    let ns = log_spaced_integers(opts.n_min, opts.n_max, opts.points)?;
    ns.par_iter()
        .map(|&n| {
            let row = cmd_bounds(&params, &StateSpec::fock(n), opts.t, opts.tol)?;
            Ok(Fig2Row {
                n,
                exact: row.exact.unwrap_or(f64::NAN),
                lower_raw: row.lower_raw.unwrap_or(f64::NAN),
                lower_clamped: row.lower_clamped.unwrap_or(f64::NAN),
                upper: row.upper.unwrap_or(f64::NAN),
                cert_error: row.cert_error.unwrap_or(f64::NAN),
            })
        })
        .collect()
}

/// Worst exact error over `ωt ∈ [0, t_max]` for `Φ_{1,n}`, compared with the
/// analytic window when `t_max = π`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsWindowRow {
    pub g: f64,
    pub n: usize,
    pub eps_hat: f64,
    pub t_opt: f64,
    pub cert_error: f64,
    pub window_lower: Option<f64>,
    pub window_upper: Option<f64>,
    pub informative: bool,
    /// `None` when the window is not informative.
    pub in_window: Option<bool>,
}

impl Record for EpsWindowRow {
    const HEADER: &'static [&'static str] = &[
        "g",
        "n",
        "eps_hat",
        "t_opt",
        "cert_error",
        "window_lower",
        "window_upper",
        "informative",
        "in_window",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_f64(self.g),
            self.n.to_string(),
            fmt_f64(self.eps_hat),
            fmt_f64(self.t_opt),
            fmt_f64(self.cert_error),
            fmt_opt(self.window_lower),
            fmt_opt(self.window_upper),
            self.informative.to_string(),
            fmt_bool(self.in_window),
        ]
    }
}

pub fn cmd_epswindow(
    g: f64,
    n: usize,
    t_max: f64,
    grid: usize,
    refine_depth: usize,
    tol: f64,
) -> Result<EpsWindowRow> {
    let params = ModelParams::from_ratio(g, 0.0)?;
    let psi = SpinBosonState::fock(Spin::Up, n, n)?;
    let sup = sup_norm_difference(&params, &psi, t_max, grid, refine_depth, tol)?;
    // the window is only defined for g > 0, n ≥ 1 and the interval [0, π]
    let window = if g > 0.0 && n >= 1 && t_max == PI {
        Some(eps_window(g, n as u64)?)
    } else {
        None
    };
    let informative = window.is_some_and(|w| w.informative);
    let in_window = window.filter(|w| w.informative).map(|w| {
        let e = sup.error_estimate;
        sup.value >= w.lower - e && sup.value <= w.upper + e
    });
    Ok(EpsWindowRow {
        g,
        n,
        eps_hat: sup.value,
        t_opt: sup.t_opt,
        cert_error: sup.error_estimate,
        window_lower: window.map(|w| w.lower),
        window_upper: window.map(|w| w.upper),
        informative,
        in_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_states() {
        assert_eq!("fock:7".parse::<StateSpec>().unwrap(), StateSpec::fock(7));
        let c: StateSpec = "coherent:1.5,-0.5".parse().unwrap();
        assert_eq!(c.kind, StateKind::Coherent(Complex64::new(1.5, -0.5)));
        assert_eq!(c.to_string(), "coherent:1.5,-0.5");
        assert!("cat:1".parse::<StateSpec>().is_err());
        assert!("squeezed:1,0".parse::<StateSpec>().is_err());
        assert!("fock:-1".parse::<StateSpec>().is_err());
        assert!("coherent:nan,0".parse::<StateSpec>().is_err());
    }

    #[test]
    fn built_states_are_normalised() {
        for s in ["fock:3", "coherent:2,1", "cat:3,0", "coherent:0,0"] {
            let psi = s.parse::<StateSpec>().unwrap().build().unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12, "{s}");
        }
        let down = StateSpec::fock(2).with_spin(Spin::Down).build().unwrap();
        assert_eq!(down.amp(Spin::Down, 2), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn values_parse_and_expand() {
        assert_eq!("1,2,4".parse::<Values>().unwrap().expand(), vec![1.0, 2.0, 4.0]);
        let v = "1:100:3:log".parse::<Values>().unwrap().expand();
        assert!((v[1] - 10.0).abs() < 1e-12);
        let v = "0:1:5".parse::<Values>().unwrap().expand();
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!("1:2".parse::<Values>().is_err());
        assert!("1:2:3:cubic".parse::<Values>().is_err());
    }

    #[test]
    fn bounds_row_examples() {
        let zero = ModelParams::new(1.0, 0.0, 1.0).unwrap();
        let row = cmd_bounds(&zero, &StateSpec::fock(4), 1.0, 1e-10).unwrap();
        assert_eq!(row.exact, Some(0.0));
        assert_eq!(row.upper, Some(0.0));
        assert_eq!(row.sandwich_ok, Some(true));

        let p = ModelParams::from_ratio(0.01, 0.0).unwrap();
        let row = cmd_bounds(&p, &StateSpec::fock(10), 0.04, 1e-10).unwrap();
        assert_eq!(row.sandwich_ok, Some(true));
        assert!(row.cert_error.unwrap() <= 1e-10);
        assert_eq!(row.cells().len(), ReportRow::HEADER.len());
        assert_eq!(row.proven_ok(), Some(true));
    }

    #[test]
    fn unproven_lower_side_is_not_asserted() {
        let p = ModelParams::from_ratio(0.01, 0.0).unwrap();
        let mut row = cmd_bounds(&p, &StateSpec::fock(10), 7.5, 1e-10).unwrap();
        assert_eq!(row.lower_valid, Some(false));
        row.lower_clamped = Some(1.0);
        row.sandwich_ok = Some(false);
        assert_eq!(row.proven_ok(), Some(true));
        row.upper = Some(0.0);
        assert_eq!(row.proven_ok(), Some(false));
    }

    #[test]
    fn sweep_records_errors_and_keeps_order() {
        let spec = SweepSpec {
            axis: Axis::N,
            values: Values::List((1..=8).map(f64::from).collect()),
            params: ModelParams::new(1.0, 0.0, 1.0).unwrap(),
            state: StateSpec::fock(0),
            t: 0.7,
            tol: 1e-10,
        };
        let rows = cmd_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 8);
        for (k, r) in rows.iter().enumerate() {
            assert_eq!(r.state, format!("fock:{}", k + 1));
            assert_eq!(r.exact, Some(0.0));
        }

        let neg = SweepSpec {
            axis: Axis::G,
            values: Values::List(vec![-0.1, 0.01]),
            ..spec.clone()
        };
        let rows = cmd_sweep(&neg).unwrap();
        assert_eq!(rows[0].error.as_deref(), Some("NegativeCoupling"));
        assert!(rows[1].error.is_none());

        let unsorted = SweepSpec {
            values: Values::List(vec![2.0, 1.0]),
            ..spec.clone()
        };
        assert!(cmd_sweep(&unsorted).is_err());
        let dup = SweepSpec {
            values: Values::List(vec![1.2, 1.4]),
            ..spec
        };
        assert!(cmd_sweep(&dup).is_err());
    }

    #[test]
    fn g_sweep_scales_linearly() {
        let spec = SweepSpec {
            axis: Axis::G,
            values: Values::List(vec![0.005, 0.01, 0.02, 0.04]),
            params: ModelParams::from_ratio(0.01, 0.0).unwrap(),
            state: StateSpec::fock(3),
            t: 1.0,
            tol: 1e-11,
        };
        let rows = cmd_sweep(&spec).unwrap();
        for w in rows.windows(2) {
            let ratio = w[1].exact.unwrap() / w[0].exact.unwrap();
            assert!((ratio - 2.0).abs() < 0.2, "{ratio}");
        }
    }

    #[test]
    fn log_integers() {
        let v = log_spaced_integers(1, 10_000, 40).unwrap();
        assert_eq!(v.len(), 40);
        assert_eq!((v[0], v[39]), (1, 10_000));
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(log_spaced_integers(1, 5, 5).unwrap(), vec![1, 2, 3, 4, 5]);
        assert!(log_spaced_integers(1, 5, 6).is_err());
        assert!(log_spaced_integers(0, 5, 2).is_err());
    }

    #[test]
    fn epswindow_edge_cases() {
        let zero = cmd_epswindow(0.0, 5, PI, 64, 4, 1e-10).unwrap();
        assert_eq!(zero.eps_hat, 0.0);
        assert!(!zero.informative);
        assert_eq!(zero.in_window, None);
        let weak = cmd_epswindow(0.01, 1, PI, 64, 4, 1e-10).unwrap();
        assert!(!weak.informative);
        assert_eq!(weak.in_window, None);
        assert!(weak.eps_hat > 0.0);
    }
}
