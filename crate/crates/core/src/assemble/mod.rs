//! The hypergeometric function, the Whittaker function and the limit
//! transition between them, assembled from series and prefactors.
//!
//! Every Weyl-group sum is formed from [`ScaledSum`] terms, so that the
//! exponentially large pieces (Γ(k_M), e^{±(λ,ρ∨)M}, δ^{1/2}, leading
//! exponentials) meet in log space before anything is exponentiated.

mod fd;
mod sweep;

pub use fd::{apply_hamiltonian_fd, lemma_check, Hamiltonian, LemmaRow};
pub use sweep::{
    limit_main, limit_prop22, log_error_slope, scaled_c_sweep, SweepKind, SweepOptions, SweepResult,
    SweepRow,
};

use crate::error::{Error, Result};
use crate::factors::{log_c_bold_tilde, log_c_tilde, log_f_factor, IntertwinerCache, ScalingData};
use crate::rootsystem::{ChamberPoint, Covector, RootSystem, WeylGroup};
use crate::scalar::{Cx, Real};
use crate::series::{
    combine_scaled, sum_cm, sum_phi, psi_toda_sum, Character, CoefficientCache, MultiplicityFunction,
    ScaledSum, SeriesValue,
};
use crate::specfun::bessel_k;

/// Nodes and radius of the contour mean used by
/// [`Workspace::hypergeom_f_regularized`].
const REGULARIZE_NODES: usize = 32;
const REGULARIZE_RADIUS: f64 = 0.25;

/// A root system with its Weyl group and coefficient caches, shared by all
/// evaluations that use it.
#[derive(Debug)]
pub struct Workspace<T: Real> {
    rs: RootSystem,
    group: WeylGroup,
    longest: usize,
    series: CoefficientCache<T>,
    intertwiners: IntertwinerCache<T>,
}

impl<T: Real> Workspace<T> {
    pub fn new(rs: RootSystem) -> Self {
        let group = rs.weyl_group();
        let longest = group.find(&group.longest().matrix).expect("w₀ is in W");
        Workspace {
            rs,
            group,
            longest,
            series: CoefficientCache::new(),
            intertwiners: IntertwinerCache::new(),
        }
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(RootSystem::from_label(label)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn cache(&self) -> &CoefficientCache<T> {
        &self.series
    }

    /// F(λ,k;a) = Σ_w c(wλ,k) Φ(wλ,k;a), in factored form.
    ///
    /// `scale` rescales the Harish-Chandra tables (see
    /// [`hc_coefficients_scaled`](crate::series::hc_coefficients_scaled)) and
    /// leaves the value unchanged. Terms whose c-function vanishes through a
    /// denominator pole are dropped.
    pub fn hypergeom_f_scaled(
        &self,
        lambda: &Covector<T>,
        k: &MultiplicityFunction<T>,
        a: &ChamberPoint<T>,
        height: usize,
        scale: T,
    ) -> Result<ScaledSum<T>> {
        let rs = &self.rs;
        let log_c_rho = log_c_tilde(rs, &k.rho(rs), k)?;
        let mut parts = Vec::with_capacity(self.group.len());
        for w in self.group.elements() {
            let wl = w.act(lambda);
            let log_c = match log_c_tilde(rs, &wl, k) {
                Ok(v) => v - log_c_rho,
                Err(Error::ZeroByPole { .. }) => continue,
                Err(e) => return Err(e.in_weyl_term(&w.word)),
            };
            let term = self
                .series
                .harish_chandra(rs, &wl, k, height, scale)
                .and_then(|t| sum_phi(rs, &t, a, height))
                .map_err(|e| e.in_weyl_term(&w.word))?;
            parts.push(term.rescaled(log_c));
        }
        Ok(combine_scaled(&parts))
    }

    pub fn hypergeom_f(
        &self,
        lambda: &Covector<T>,
        k: &MultiplicityFunction<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<SeriesValue<T>> {
        Ok(self.hypergeom_f_scaled(lambda, k, a, height, T::zero())?.value())
    }

    /// F(λ,k;a) as the mean of F over a small circle around λ in a generic
    /// complex direction.
    ///
    /// F is entire in λ, so the mean equals F(λ) up to terms of order
    /// r^32; the nodes avoid the non-generic parameters (such as λ = ρ(k)
    /// at integral k) where individual Weyl terms are singular.
    pub fn hypergeom_f_regularized(
        &self,
        lambda: &Covector<T>,
        k: &MultiplicityFunction<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<SeriesValue<T>> {
        let rank = self.rs.rank();
        let dir: Vec<Cx<T>> = [2.0f64, 3.0, 5.0, 7.0][..rank]
            .iter()
            .map(|p| Cx::new(T::lit(p.sqrt()), T::zero()))
            .collect();
        let dir = Covector::new(dir);
        let dir = dir.scale(Cx::new(T::one() / self.rs.norm_sq(&dir).sqrt(), T::zero()));
        let n = REGULARIZE_NODES;
        let mut sum = Cx::new(T::zero(), T::zero());
        let mut tail = T::zero();
        for j in 0..n {
            let theta = T::PI() * T::from_int(2 * j as i64 + 1) / T::from_int(n as i64);
            let shift = Cx::from_polar(T::lit(REGULARIZE_RADIUS), theta);
            let node = lambda + &dir.scale(shift);
            let v = self.hypergeom_f(&node, k, a, height)?;
            sum = sum + v.value;
            tail = tail + v.tail;
        }
        let n = T::from_int(n as i64);
        Ok(SeriesValue {
            value: sum / n,
            tail: tail / n,
        })
    }

    /// Ψ_T(λ,ψ;a) in factored form.
    pub fn psi_toda(
        &self,
        lambda: &Covector<T>,
        psi: &Character<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<ScaledSum<T>> {
        let t = self.series.toda(&self.rs, lambda, psi, height)?;
        psi_toda_sum(&self.rs, &t, a, height)
    }

    /// Σ_w M(w₀w,λ,ψ) c̃_bold(w₀wλ) Ψ_T(wλ,ψ;a), the Weyl sum of the
    /// Whittaker function without the a^ρ / c̃_bold(ρ) normalisation.
    fn whittaker_core(
        &self,
        lambda: &Covector<T>,
        psi: &Character<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<ScaledSum<T>> {
        let rs = &self.rs;
        let mut parts = Vec::with_capacity(self.group.len());
        for (i, w) in self.group.elements().iter().enumerate() {
            let term = (|| {
                let w0w = self.group.get(self.group.product(self.longest, i));
                let log_m = self.intertwiners.log_m(rs, w0w, lambda, psi)?;
                let log_c = log_c_bold_tilde(rs, &w0w.act(lambda))?;
                Ok(self.psi_toda(&w.act(lambda), psi, a, height)?.rescaled(log_m + log_c))
            })()
            .map_err(|e: Error| e.in_weyl_term(&w.word))?;
            parts.push(term);
        }
        Ok(combine_scaled(&parts))
    }

    /// W(λ,ψ;a) = a^ρ Σ_w M(w₀w,λ,ψ) c_bold(w₀wλ) Ψ_T(wλ,ψ;a).
    ///
    /// Ψ_T is entire in log a, so no chamber restriction applies; for large
    /// α(log a) the Weyl terms cancel and accuracy degrades.
    pub fn whittaker_scaled(
        &self,
        lambda: &Covector<T>,
        psi: &Character<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<ScaledSum<T>> {
        let rs = &self.rs;
        let rho = Covector::from_rational(rs.rho());
        let log_norm = a.eval(&rho) - log_c_bold_tilde(rs, &rho)?;
        Ok(self.whittaker_core(lambda, psi, a, height)?.rescaled(log_norm))
    }

    pub fn whittaker_w(
        &self,
        lambda: &Covector<T>,
        psi: &Character<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<SeriesValue<T>> {
        Ok(self.whittaker_scaled(lambda, psi, a, height)?.value())
    }

    /// c̃_bold(ρ) f(λ) a^{−ρ} W(λ,ψ₁;a), the limit of the normalised
    /// hypergeometric function.
    pub fn whittaker_limit_form(&self, lambda: &Covector<T>, a: &ChamberPoint<T>, height: usize) -> Result<ScaledSum<T>> {
        let psi = Character::standard(self.rs.rank());
        Ok(self
            .whittaker_core(lambda, &psi, a, height)?
            .rescaled(log_f_factor(&self.rs, lambda)?))
    }

    /// Σ_w f(wλ) c̃_bold(wλ) Ψ_T(w₀wλ;a): the termwise limit of the Weyl sum
    /// for F. Equal to [`whittaker_limit_form`](Self::whittaker_limit_form)
    /// by f(wλ) = f(λ) M(w,λ,ψ₁).
    pub fn termwise_limit(&self, lambda: &Covector<T>, a: &ChamberPoint<T>, height: usize) -> Result<ScaledSum<T>> {
        let rs = &self.rs;
        let psi = Character::standard(rs.rank());
        let w0 = self.group.longest();
        let mut parts = Vec::with_capacity(self.group.len());
        for w in self.group.elements() {
            let term = (|| {
                let wl = w.act(lambda);
                let log_pre = log_f_factor(rs, &wl)? + log_c_bold_tilde(rs, &wl)?;
                Ok(self.psi_toda(&w0.act(&wl), &psi, a, height)?.rescaled(log_pre))
            })()
            .map_err(|e: Error| e.in_weyl_term(&w.word))?;
            parts.push(term);
        }
        Ok(combine_scaled(&parts))
    }

    /// e^{−(λ,ρ∨)M} Ψ_CM(λ, k_M; a_M).
    pub fn scaled_psi_cm(
        &self,
        lambda: &Covector<T>,
        sd: &ScalingData<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<ScaledSum<T>> {
        let rs = &self.rs;
        let a_m = sd.a_shifted(rs, a);
        let t = self.series.harish_chandra(rs, lambda, &sd.k_m, height, sd.m)?;
        let s = sum_cm(rs, &t, &a_m, height)?;
        Ok(s.rescaled(-crate::factors::rho_vee_pairing(rs, lambda) * sd.m))
    }

    /// δ(k_M;a_M)^{1/2} c̃(ρ(k_M),k_M) Π_α Γ(k_M(α)) F(λ,k_M;a_M), assembled as
    /// Σ_w [e^{(wλ,ρ∨)M} Π Γ(k_M) c̃(wλ,k_M)] · [e^{−(wλ,ρ∨)M} Ψ_CM(wλ,k_M;a_M)].
    pub fn normalized_f_limit(
        &self,
        lambda: &Covector<T>,
        sd: &ScalingData<T>,
        a: &ChamberPoint<T>,
        height: usize,
    ) -> Result<ScaledSum<T>> {
        let mut parts = Vec::with_capacity(self.group.len());
        for w in self.group.elements() {
            let term = (|| {
                let wl = w.act(lambda);
                let pre = match sd.log_scaled_c_tilde(&self.rs, &wl) {
                    Ok(v) => v,
                    Err(Error::ZeroByPole { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                };
                Ok(Some(self.scaled_psi_cm(&wl, sd, a, height)?.rescaled(pre)))
            })()
            .map_err(|e: Error| e.in_weyl_term(&w.word))?;
            parts.extend(term);
        }
        Ok(combine_scaled(&parts))
    }
}

/// F(λ,k;a) truncated at height N.
pub fn hypergeom_f<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    k: &MultiplicityFunction<T>,
    a: &ChamberPoint<T>,
    height: usize,
) -> Result<SeriesValue<T>> {
    Workspace::new(rs.clone()).hypergeom_f(lambda, k, a, height)
}

/// W(λ,ψ;a) with Toda series truncated at height N.
pub fn whittaker_w<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    psi: &Character<T>,
    a: &ChamberPoint<T>,
    height: usize,
) -> Result<SeriesValue<T>> {
    Workspace::new(rs.clone()).whittaker_w(lambda, psi, a, height)
}

/// Both sides of the rank-one limit
/// k^{−1/2} 2^{−k} sinh^k(M − t) F(λ, k_M; a_{M−t}) → π^{−1/2} K_{λ̂}(e^t),
/// where k = k_M, λ̂ = (λ,α∨) and a_s denotes α(log a_s) = 2s.
pub fn rank_one_example<T: Real>(ws: &Workspace<T>, lambda_hat: Cx<T>, t: T, m: T, height: usize) -> Result<(Cx<T>, Cx<T>)> {
    let rs = ws.root_system();
    if rs.rank() != 1 {
        return Err(Error::Configuration("the rank-one example needs A1".into()));
    }
    let lambda = Covector::from_pairings(rs, &[lambda_hat])?;
    let sd = crate::factors::scaling_data(rs, m)?;
    let k = sd.k_m.orbit_values()[0];
    let s = m - t;
    if !(s > T::zero()) {
        return Err(Error::Domain(format!("M − t = {s} must be positive")));
    }
    let a = ChamberPoint::new(vec![T::lit(2.0) * s]);
    let f = ws.hypergeom_f_scaled(&lambda, &sd.k_m, &a, height, m)?;
    let log_pre = -T::lit(0.5) * k.ln() - k * T::LN_2() + k * s.sinh().ln();
    let lhs = f.rescaled(Cx::new(log_pre, T::zero())).value().value;
    let rhs = bessel_k(lambda_hat, t.exp())? / T::PI().sqrt();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_2f1;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_gauss_closed_form() {
        let ws = Workspace::<f64>::from_label("A1").unwrap();
        let rs = ws.root_system();
        for (lhat, kk, t) in [(c(0.3, 0.7), 0.5, 0.5), (c(1.1, -0.4), 2.5, 2.0), (c(0.3, 0.7), 1.0, 1.0)] {
            let lam = Covector::from_pairings(rs, &[lhat]).unwrap();
            let k = MultiplicityFunction::uniform(rs, kk).unwrap();
            let a = ChamberPoint::new(vec![2.0 * t]);
            let v = ws.hypergeom_f(&lam, &k, &a, 60).unwrap().value;
            let sh = f64::sinh(t);
            let expected = gauss_2f1((kk - lhat) / 2.0, (kk + lhat) / 2.0, c(kk + 0.5, 0.0), -sh * sh).unwrap();
            assert!((v - expected).norm() / expected.norm() < 1e-10, "{lhat} {kk} {t}: {v} {expected}");
        }
    }

    #[test]
    fn weyl_invariance_b2() {
        let ws = Workspace::<f64>::from_label("B2").unwrap();
        let rs = ws.root_system();
        let lam = Covector::from_pairings(rs, &[c(0.9, 0.31), c(1.3, -0.27)]).unwrap();
        let k = MultiplicityFunction::new(rs, &[0.8, 1.3]).unwrap();
        let a = ChamberPoint::new(vec![0.9, 1.2]);
        let base = ws.hypergeom_f(&lam, &k, &a, 40).unwrap().value;
        for w in ws.group().elements() {
            let v = ws.hypergeom_f(&w.act(&lam), &k, &a, 40).unwrap().value;
            assert!((v - base).norm() / base.norm() < 1e-9);
        }
    }

    #[test]
    fn regularized_matches_direct_at_generic_lambda() {
        let ws = Workspace::<f64>::from_label("A2").unwrap();
        let rs = ws.root_system();
        let lam = Covector::from_pairings(rs, &[c(0.9, 0.31), c(1.3, -0.27)]).unwrap();
        let k = MultiplicityFunction::uniform(rs, 0.8).unwrap();
        let a = ChamberPoint::new(vec![0.9, 1.2]);
        let d = ws.hypergeom_f(&lam, &k, &a, 40).unwrap().value;
        let r = ws.hypergeom_f_regularized(&lam, &k, &a, 40).unwrap().value;
        assert!((d - r).norm() / d.norm() < 1e-10);
    }

    #[test]
    fn weyl_term_errors_name_the_element() {
        let ws = Workspace::<f64>::from_label("A2").unwrap();
        let rs = ws.root_system();
        let lam = Covector::from_pairings(rs, &[c(0.0, 0.0), c(0.4, 0.1)]).unwrap();
        let k = MultiplicityFunction::uniform(rs, 0.5).unwrap();
        let err = ws.hypergeom_f(&lam, &k, &ChamberPoint::new(vec![0.5, 0.5]), 10).unwrap_err();
        assert!(matches!(err, Error::InWeylTerm { .. }));
        assert_eq!(err.kind(), "pole");
    }

    #[test]
    fn termwise_limit_equals_whittaker_form() {
        let ws = Workspace::<f64>::from_label("A2").unwrap();
        let rs = ws.root_system();
        let lam = Covector::from_pairings(rs, &[c(0.4, 0.3), c(0.5, -0.2)]).unwrap();
        let a = ChamberPoint::new(vec![0.3, -0.4]);
        let x = ws.termwise_limit(&lam, &a, 40).unwrap().value().value;
        let y = ws.whittaker_limit_form(&lam, &a, 40).unwrap().value().value;
        assert!((x - y).norm() / y.norm() < 1e-10);
    }
}
