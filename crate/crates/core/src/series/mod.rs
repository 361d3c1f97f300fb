//! Series solutions on the two sides of the limit transition.
//!
//! * Harish-Chandra series Φ(λ,k;a) = Σ_{μ∈Q₊} Γ_μ e^{(λ−ρ(k)−μ)(log a)} of the
//!   hypergeometric system, and Ψ_CM = δ(k)^{1/2} Φ for the trigonometric
//!   Calogero-Moser operator.
//! * Toda series Ψ_T(λ;a) = Σ_{μ∈Q₊} b_μ a^{λ+μ} of the quantum Toda operator.
//! * The rescaled Calogero-Moser series along (k_M, a_M), which degenerates
//!   into the Toda series as M → ∞.
//!
//! Truncation is by height n(μ) ≤ N. The reported tail is an empirical
//! estimate built from the magnitudes of the last height shells.

mod cache;
mod harish_chandra;
mod toda;

pub use cache::{CacheKey, CoefficientCache};
pub use harish_chandra::{
    hc_coefficients, hc_coefficients_scaled, log_delta_half, phi, psi_cm, psi_cm_scaled, sum_cm,
    sum_phi,
};
pub use toda::{
    limit_series, limit_series_coefficients, psi_toda, psi_toda_sum, toda_coefficients,
};

pub use crate::rootsystem::ChamberPoint;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsystem::{Covector, LatticePoint, LatticeTable, RootSystem};
use crate::scalar::{Cx, Real};

/// W-invariant multiplicity k on R, one value per W-orbit (short, long).
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityFunction<T> {
    values: Vec<T>,
}

impl<T: Real> MultiplicityFunction<T> {
    /// `values` holds one entry per orbit; a single entry is broadcast.
    pub fn new(rs: &RootSystem, values: &[T]) -> Result<Self> {
        let orbits = rs.num_orbits();
        let values = match values.len() {
            1 => vec![values[0]; orbits],
            n if n == orbits => values.to_vec(),
            n => {
                return Err(Error::Configuration(format!(
                    "{} has {orbits} root orbit(s), got {n} multiplicities",
                    rs.label()
                )))
            }
        };
        if values.iter().any(|k| !(*k >= T::zero())) {
            return Err(Error::Configuration("multiplicities must be nonnegative".into()));
        }
        Ok(MultiplicityFunction { values })
    }

    pub fn uniform(rs: &RootSystem, k: T) -> Result<Self> {
        Self::new(rs, &[k])
    }

    /// Unchecked constructor for derived multiplicities such as k_M.
    pub(crate) fn from_orbits(values: Vec<T>) -> Self {
        MultiplicityFunction { values }
    }

    pub fn orbit_values(&self) -> &[T] {
        &self.values
    }

    /// k_α for the positive root stored at `index`.
    pub fn of_root(&self, rs: &RootSystem, index: usize) -> T {
        self.values[rs.positive_roots()[index].orbit]
    }

    /// ρ(k) = ½ Σ_{α∈R₊} k_α α.
    pub fn rho(&self, rs: &RootSystem) -> Covector<T> {
        let mut coords = vec![Cx::new(T::zero(), T::zero()); rs.rank()];
        for root in rs.positive_roots() {
            let k = self.values[root.orbit] * T::lit(0.5);
            for (c, &n) in coords.iter_mut().zip(&root.coords) {
                *c = *c + k * T::from_int(n);
            }
        }
        Covector::new(coords)
    }

    pub fn key_bits(&self) -> Vec<u64> {
        self.values.iter().map(|v| v.as_f64().to_bits()).collect()
    }
}

/// A unitary character of N through its values l_α, α ∈ B.
///
/// Only real positive l_α are accepted, so that every power
/// (2l_α²/(α,α))^z is taken on the positive real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Character<T> {
    l: Vec<T>,
}

impl<T: Real> Character<T> {
    pub fn new(rs: &RootSystem, l: &[T]) -> Result<Self> {
        if l.len() != rs.rank() {
            return Err(Error::Configuration(format!(
                "{} needs {} character values, got {}",
                rs.label(),
                rs.rank(),
                l.len()
            )));
        }
        for (index, &v) in l.iter().enumerate() {
            if v == T::zero() {
                return Err(Error::DegenerateCharacter {
                    index,
                    value: v.as_f64(),
                });
            }
            if !(v > T::zero()) {
                return Err(Error::Configuration(format!(
                    "character value l[{index}] = {v} must be real positive"
                )));
            }
        }
        Ok(Character { l: l.to_vec() })
    }

    /// l_α = 1 for every α ∈ B.
    pub fn standard(rank: usize) -> Self {
        Character {
            l: vec![T::one(); rank],
        }
    }

    pub fn values(&self) -> &[T] {
        &self.l
    }

    pub fn l_sq(&self, i: usize) -> T {
        self.l[i] * self.l[i]
    }

    pub fn is_standard(&self) -> bool {
        self.l.iter().all(|&v| v == T::one())
    }

    pub fn key_bits(&self) -> Vec<u64> {
        self.l.iter().map(|v| v.as_f64().to_bits()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// Γ_μ(λ,k), optionally rescaled by e^{−(μ,ρ∨)s}.
    HarishChandra,
    /// b_μ(λ) for the Toda operator with character ψ.
    Toda,
    /// b̃_μ(λ,M) of the rescaled Calogero-Moser series.
    Limit,
}

/// A height-truncated coefficient table μ ↦ c_μ with c₀ = 1.
#[derive(Debug, Clone)]
pub struct SeriesCoefficients<T> {
    pub kind: SeriesKind,
    pub lambda: Covector<T>,
    /// k for Harish-Chandra tables.
    pub multiplicity: Option<MultiplicityFunction<T>>,
    /// The scale s (or M) the coefficients were built for; zero if unscaled.
    pub scale: T,
    table: Arc<LatticeTable>,
    coeffs: Vec<Cx<T>>,
}

impl<T: Real> SeriesCoefficients<T> {
    pub fn height(&self) -> usize {
        self.table.height()
    }

    pub fn table(&self) -> &LatticeTable {
        &self.table
    }

    pub fn coefficients(&self) -> &[Cx<T>] {
        &self.coeffs
    }

    pub fn get(&self, mu: &LatticePoint) -> Option<Cx<T>> {
        self.table.index_of(&mu.as_i64()).map(|i| self.coeffs[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Cx<T>)> {
        self.table.points().iter().zip(&self.coeffs)
    }
}

/// A series value with its empirical truncation error (absolute).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: Cx<T>,
    pub tail: T,
}

/// exp(log_scale) · sum, kept factored so that huge or tiny prefactors can
/// be combined in log space before exponentiating.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSum<T> {
    pub log_scale: Cx<T>,
    pub sum: Cx<T>,
    /// Tail estimate in the units of `sum`.
    pub tail: T,
}

impl<T: Real> ScaledSum<T> {
    pub fn value(&self) -> SeriesValue<T> {
        let s = self.log_scale.exp();
        SeriesValue {
            value: s * self.sum,
            tail: s.norm() * self.tail,
        }
    }

    /// Multiplies by exp(extra).
    pub fn rescaled(mut self, extra: Cx<T>) -> Self {
        self.log_scale = self.log_scale + extra;
        self
    }

    /// Tail relative to |sum|.
    pub fn relative_tail(&self) -> T {
        self.tail / self.sum.norm()
    }
}

/// Σ parts, normalised against the largest prefactor.
pub(crate) fn combine_scaled<T: Real>(parts: &[ScaledSum<T>]) -> ScaledSum<T> {
    let reference = parts
        .iter()
        .filter(|p| p.sum.norm() > T::zero() || p.tail > T::zero())
        .map(|p| p.log_scale.re)
        .fold(T::neg_infinity(), T::max);
    if !reference.is_finite() {
        return ScaledSum {
            log_scale: Cx::new(T::zero(), T::zero()),
            sum: Cx::new(T::zero(), T::zero()),
            tail: T::zero(),
        };
    }
    let mut sum = Cx::new(T::zero(), T::zero());
    let mut tail = T::zero();
    for p in parts {
        let w = (p.log_scale - reference).exp();
        sum = sum + w * p.sum;
        tail = tail + w.norm() * p.tail;
    }
    ScaledSum {
        log_scale: Cx::new(reference, T::zero()),
        sum,
        tail,
    }
}

/// Empirical tail Σ_{h>N} s_h from shell magnitudes s_0..s_N: the last shell,
/// or its geometric extrapolation when that is larger. Infinite while the
/// shells are not yet decreasing.
pub(crate) fn tail_from_shells<T: Real>(shells: &[T]) -> T {
    let n = shells.len();
    if n == 0 {
        return T::infinity();
    }
    let last = shells[n - 1];
    if last == T::zero() {
        return T::zero();
    }
    if n < 3 {
        return T::infinity();
    }
    let prev = shells[n - 3];
    if prev == T::zero() {
        return last;
    }
    // Ratio over two shells, to be robust to parity effects in the lattice.
    let q = (last / prev).sqrt();
    if q >= T::one() {
        return T::infinity();
    }
    last.max(last * q / (T::one() - q))
}

pub(crate) fn resonance_tolerance<T: Real>(rs: &RootSystem, lambda: &Covector<T>) -> T {
    T::lit(1e-8) * (T::one() + rs.norm_sq(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_validation() {
        let b2 = RootSystem::from_label("B2").unwrap();
        assert!(MultiplicityFunction::new(&b2, &[0.5, 1.0]).is_ok());
        assert!(MultiplicityFunction::new(&b2, &[0.5, 1.0, 2.0]).is_err());
        assert!(MultiplicityFunction::new(&b2, &[-0.5]).is_err());
        let k = MultiplicityFunction::new(&b2, &[0.5, 1.0]).unwrap();
        for (i, root) in b2.positive_roots().iter().enumerate() {
            let expected = if root.orbit == 0 { 0.5 } else { 1.0 };
            assert_eq!(k.of_root(&b2, i), expected);
        }
    }

    #[test]
    fn rho_k_at_half_is_rho() {
        for label in ["A2", "B2", "G2", "D4"] {
            let rs = RootSystem::from_label(label).unwrap();
            let k = MultiplicityFunction::uniform(&rs, 0.5).unwrap();
            let rho = Covector::<f64>::from_rational(rs.rho());
            assert!((&k.rho(&rs) - &rho).coords.iter().all(|c| c.norm() < 1e-15));
        }
    }

    #[test]
    fn character_validation() {
        let a2 = RootSystem::from_label("A2").unwrap();
        assert!(matches!(
            Character::new(&a2, &[1.0, 0.0]),
            Err(Error::DegenerateCharacter { index: 1, .. })
        ));
        assert!(Character::new(&a2, &[1.0, -2.0]).is_err());
        assert!(Character::new(&a2, &[1.0]).is_err());
        assert!(Character::<f64>::standard(2).is_standard());
    }

    #[test]
    fn tail_estimates() {
        assert_eq!(tail_from_shells::<f64>(&[1.0, 0.0, 0.0]), 0.0);
        let geometric: Vec<f64> = (0..10).map(|h| 0.5f64.powi(h)).collect();
        let t = tail_from_shells(&geometric);
        assert!((t - 0.5f64.powi(9)).abs() < 1e-12);
        let growing: Vec<f64> = (0..10).map(|h| 2f64.powi(h)).collect();
        assert!(tail_from_shells(&growing).is_infinite());
    }
}
