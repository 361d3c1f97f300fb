use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factors::{log_c_bold_tilde, log_f_factor, scaling_data};
use crate::rootsystem::{ChamberPoint, Covector};
use crate::scalar::{relative_error, Cx, Real};
use crate::series::{Character, ScaledSum};

use super::Workspace;

const REL_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepKind {
    /// e^{−(λ,ρ∨)M} Ψ_CM(λ,k_M;a_M) against Ψ_T(w₀λ;a).
    Prop22,
    /// The normalised F(λ,k_M;a_M) against c̃_bold(ρ) f(λ) a^{−ρ} W(λ,ψ₁;a).
    Main,
    /// e^{(λ,ρ∨)M} Π Γ(k_M) c̃(λ,k_M) against f(λ) c̃_bold(λ).
    ScaledC,
}

impl SweepKind {
    pub fn label(&self) -> &'static str {
        match self {
            SweepKind::Prop22 => "prop22",
            SweepKind::Main => "main",
            SweepKind::ScaledC => "scaled-c",
        }
    }
}

/// Truncation policy for sweeps: start at `n_start` and grow by `n_step`
/// until the series tails fall below `tail_ratio` times |lhs − rhs|, or
/// `n_max` is reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub n_start: usize,
    pub n_step: usize,
    pub n_max: usize,
    pub tail_ratio: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            n_start: 20,
            n_step: 10,
            n_max: 80,
            tail_ratio: 0.1,
        }
    }
}

impl SweepOptions {
    pub fn with_max(n_max: usize) -> Self {
        SweepOptions {
            n_start: n_max.min(20),
            n_max,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub m: T,
    pub lhs: Cx<T>,
    pub rhs: Cx<T>,
    pub rel_err: T,
    pub tail_lhs: T,
    pub tail_rhs: T,
    /// Truncation height used for the left-hand side.
    pub height: usize,
    /// Whether a_M lies in the positive chamber; rows outside carry NaN.
    pub in_chamber: bool,
    pub error: Option<Error>,
}

impl<T: Real> SweepRow<T> {
    fn failed(m: T, rhs: Cx<T>, tail_rhs: T, in_chamber: bool, error: Option<Error>) -> Self {
        let nan = T::nan();
        SweepRow {
            m,
            lhs: Cx::new(nan, nan),
            rhs,
            rel_err: nan,
            tail_lhs: nan,
            tail_rhs,
            height: 0,
            in_chamber,
            error,
        }
    }

    /// Usable for convergence analysis.
    pub fn is_valid(&self) -> bool {
        self.in_chamber && self.error.is_none() && self.rel_err.is_finite()
    }

    /// Combined tail estimate relative to |rhs|.
    pub fn tail_estimate(&self) -> T {
        (self.tail_lhs + self.tail_rhs) / self.rhs.norm().max(T::lit(REL_FLOOR))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub kind: SweepKind,
    pub system: String,
    /// (λ, α∨) for α ∈ B.
    pub lambda: Vec<Cx<T>>,
    pub point: Vec<T>,
    pub n_max: usize,
    pub rows: Vec<SweepRow<T>>,
    /// For the main sweep: the M-independent termwise limit
    /// Σ_w f(wλ) c̃_bold(wλ) Ψ_T(w₀wλ;a), which must equal every rhs.
    pub termwise_limit: Option<Cx<T>>,
}

impl<T: Real> SweepResult<T> {
    pub fn valid_rows(&self) -> impl Iterator<Item = &SweepRow<T>> {
        self.rows.iter().filter(|r| r.is_valid())
    }

    /// Whether rel_err strictly decreases along the valid rows.
    pub fn strictly_decreasing(&self) -> bool {
        let errs: Vec<T> = self.valid_rows().map(|r| r.rel_err).collect();
        !errs.is_empty() && errs.windows(2).all(|w| w[1] < w[0])
    }

    pub fn slope(&self) -> Option<T> {
        log_error_slope(&self.rows)
    }
}

/// Least-squares slope of log(rel_err) against M over the valid rows.
pub fn log_error_slope<T: Real>(rows: &[SweepRow<T>]) -> Option<T> {
    let pts: Vec<(T, T)> = rows
        .iter()
        .filter(|r| r.is_valid() && r.rel_err > T::zero())
        .map(|r| (r.m, r.rel_err.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = T::from_int(pts.len() as i64);
    let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
    let my = pts.iter().map(|p| p.1).sum::<T>() / n;
    let sxy = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<T>();
    let sxx = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<T>();
    Some(sxy / sxx)
}

fn adaptive_row<T: Real>(
    m: T,
    rhs: &ScaledSum<T>,
    opts: &SweepOptions,
    lhs_at: impl Fn(usize) -> Result<ScaledSum<T>>,
) -> SweepRow<T> {
    let rhs_v = rhs.value();
    let mut n = opts.n_start.min(opts.n_max).max(1);
    loop {
        let lhs = match lhs_at(n) {
            Ok(v) => v.value(),
            Err(e) => return SweepRow::failed(m, rhs_v.value, rhs_v.tail, true, Some(e)),
        };
        let gap = (lhs.value - rhs_v.value).norm();
        let done = lhs.tail + rhs_v.tail < T::lit(opts.tail_ratio) * gap || n >= opts.n_max;
        if done {
            return SweepRow {
                m,
                lhs: lhs.value,
                rhs: rhs_v.value,
                rel_err: relative_error(lhs.value, rhs_v.value, T::lit(REL_FLOOR)),
                tail_lhs: lhs.tail,
                tail_rhs: rhs_v.tail,
                height: n,
                in_chamber: true,
                error: None,
            };
        }
        n = (n + opts.n_step.max(1)).min(opts.n_max);
    }
}

fn sweep_rows<T: Real>(
    ws: &Workspace<T>,
    a: &ChamberPoint<T>,
    ms: &[T],
    rhs: &ScaledSum<T>,
    opts: &SweepOptions,
    lhs_at: impl Fn(&crate::factors::ScalingData<T>, usize) -> Result<ScaledSum<T>> + Sync,
) -> Vec<SweepRow<T>> {
    let rs = ws.root_system();
    let mut ms = ms.to_vec();
    ms.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    ms.par_iter()
        .map(|&m| {
            let rhs_v = rhs.value();
            let sd = match scaling_data(rs, m) {
                Ok(sd) => sd,
                Err(e) => return SweepRow::failed(m, rhs_v.value, rhs_v.tail, false, Some(e)),
            };
            if !sd.a_shifted(rs, a).in_positive_chamber() {
                return SweepRow::failed(m, rhs_v.value, rhs_v.tail, false, None);
            }
            adaptive_row(m, rhs, opts, |n| lhs_at(&sd, n))
        })
        .collect()
}

fn check_inputs<T: Real>(ws: &Workspace<T>, lambda: &Covector<T>, a: &ChamberPoint<T>) -> Result<()> {
    let rank = ws.root_system().rank();
    if lambda.rank() != rank || a.rank() != rank {
        return Err(Error::Configuration(format!(
            "{} needs {rank} spectral and point coordinates",
            ws.root_system().label()
        )));
    }
    Ok(())
}

/// The sweep M ↦ e^{−(λ,ρ∨)M} Ψ_CM(λ,k_M;a_M) against Ψ_T(w₀λ;a).
pub fn limit_prop22<T: Real>(
    ws: &Workspace<T>,
    lambda: &Covector<T>,
    a: &ChamberPoint<T>,
    ms: &[T],
    opts: &SweepOptions,
) -> Result<SweepResult<T>> {
    check_inputs(ws, lambda, a)?;
    let rs = ws.root_system();
    let psi = Character::standard(rs.rank());
    let rhs = ws.psi_toda(&ws.group().longest().act(lambda), &psi, a, opts.n_max)?;
    let rows = sweep_rows(ws, a, ms, &rhs, opts, |sd, n| ws.scaled_psi_cm(lambda, sd, a, n));
    Ok(SweepResult {
        kind: SweepKind::Prop22,
        system: rs.label(),
        lambda: rs.simple_pairings(lambda),
        point: a.x.clone(),
        n_max: opts.n_max,
        rows,
        termwise_limit: None,
    })
}

/// The sweep of the normalised F(λ,k_M;a_M) against c̃_bold(ρ) f(λ) a^{−ρ} W(λ,ψ₁;a).
pub fn limit_main<T: Real>(
    ws: &Workspace<T>,
    lambda: &Covector<T>,
    a: &ChamberPoint<T>,
    ms: &[T],
    opts: &SweepOptions,
) -> Result<SweepResult<T>> {
    check_inputs(ws, lambda, a)?;
    let rs = ws.root_system();
    let rhs = ws.whittaker_limit_form(lambda, a, opts.n_max)?;
    let termwise = ws.termwise_limit(lambda, a, opts.n_max)?.value().value;
    let rows = sweep_rows(ws, a, ms, &rhs, opts, |sd, n| ws.normalized_f_limit(lambda, sd, a, n));
    Ok(SweepResult {
        kind: SweepKind::Main,
        system: rs.label(),
        lambda: rs.simple_pairings(lambda),
        point: a.x.clone(),
        n_max: opts.n_max,
        rows,
        termwise_limit: Some(termwise),
    })
}

/// The sweep M ↦ e^{(λ,ρ∨)M} Π_α Γ(k_M(α)) c̃(λ,k_M) against f(λ) c̃_bold(λ).
pub fn scaled_c_sweep<T: Real>(ws: &Workspace<T>, lambda: &Covector<T>, ms: &[T]) -> Result<SweepResult<T>> {
    let rs = ws.root_system();
    let log_rhs = log_f_factor(rs, lambda)? + log_c_bold_tilde(rs, lambda)?;
    let rhs = log_rhs.exp();
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let sd = scaling_data(rs, m)?;
        let log_lhs = sd.log_scaled_c_tilde(rs, lambda)?;
        rows.push(SweepRow {
            m,
            lhs: log_lhs.exp(),
            rhs,
            // Formed from the log difference to keep full precision.
            rel_err: ((log_lhs - log_rhs).exp() - Cx::new(T::one(), T::zero())).norm(),
            tail_lhs: T::zero(),
            tail_rhs: T::zero(),
            height: 0,
            in_chamber: true,
            error: None,
        });
    }
    Ok(SweepResult {
        kind: SweepKind::ScaledC,
        system: rs.label(),
        lambda: rs.simple_pairings(lambda),
        point: Vec::new(),
        n_max: 0,
        rows,
        termwise_limit: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn slope_of_exact_exponential() {
        let rows: Vec<SweepRow<f64>> = (2..7)
            .map(|m| SweepRow {
                m: m as f64,
                lhs: c(1.0, 0.0),
                rhs: c(1.0, 0.0),
                rel_err: (-2.0 * m as f64).exp(),
                tail_lhs: 0.0,
                tail_rhs: 0.0,
                height: 10,
                in_chamber: true,
                error: None,
            })
            .collect();
        assert!((log_error_slope(&rows).unwrap() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn prop22_rank_one_converges() {
        let ws = Workspace::<f64>::from_label("A1").unwrap();
        let rs = ws.root_system();
        let lam = Covector::from_pairings(rs, &[c(0.9, 0.31)]).unwrap();
        let a = ChamberPoint::new(vec![1.0]);
        let ms = [2.0, 3.0, 4.0, 5.0, 6.0];
        let r = limit_prop22(&ws, &lam, &a, &ms, &SweepOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 5);
        assert!(r.strictly_decreasing(), "{:?}", r.rows.iter().map(|r| r.rel_err).collect::<Vec<_>>());
        let slope = r.slope().unwrap();
        assert!((slope + 2.0).abs() < 0.5, "slope {slope}");
    }

    #[test]
    fn rows_are_sorted_and_flagged() {
        let ws = Workspace::<f64>::from_label("A1").unwrap();
        let rs = ws.root_system();
        let lam = Covector::from_pairings(rs, &[c(0.9, 0.31)]).unwrap();
        let a = ChamberPoint::new(vec![3.0]);
        let r = limit_prop22(&ws, &lam, &a, &[3.0, 1.0, 2.0], &SweepOptions::default()).unwrap();
        let ms: Vec<f64> = r.rows.iter().map(|r| r.m).collect();
        assert_eq!(ms, vec![1.0, 2.0, 3.0]);
        assert!(!r.rows[0].in_chamber && r.rows[0].rel_err.is_nan());
        assert!(r.rows[2].is_valid());
    }
}
