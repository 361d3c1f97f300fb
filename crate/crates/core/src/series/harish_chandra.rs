use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsystem::{ChamberPoint, Covector, LatticeTable, RootSystem};
use crate::scalar::{Cx, Real};

use super::{
    resonance_tolerance, tail_from_shells, MultiplicityFunction, ScaledSum, SeriesCoefficients,
    SeriesKind, SeriesValue,
};

/// Below this value of α(log a) the point is treated as lying on a wall.
const WALL_TOL: f64 = 1e-12;

/// Harish-Chandra coefficients Γ_μ(λ,k) for n(μ) ≤ `height`.
///
/// Substituting Φ into L(k)Φ = ((λ,λ) − (ρ(k),ρ(k)))Φ and expanding
/// coth(α/2) = 1 + 2Σ_{j≥1} e^{−jα} gives
///
/// ```text
/// (2(λ,μ) − (μ,μ)) Γ_μ = 2 Σ_{α∈R₊} k_α Σ_{j≥1} (λ − ρ(k) − μ + jα, α) Γ_{μ−jα},   Γ₀ = 1.
/// ```
pub fn hc_coefficients<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    k: &MultiplicityFunction<T>,
    height: usize,
) -> Result<SeriesCoefficients<T>> {
    hc_coefficients_scaled(rs, lambda, k, height, T::zero())
}

/// Γ̃_μ = Γ_μ e^{−(μ,ρ∨)s}.
///
/// For large multiplicities Γ_μ grows like e^{(μ,ρ∨)M}; the rescaled table
/// stays bounded along the limit k = k_M. The recurrence becomes
/// `(2λ−μ,μ) Γ̃_μ = 2 Σ_α k_α Σ_j (λ−ρ(k)−μ+jα, α) e^{−j(α,ρ∨)s} Γ̃_{μ−jα}`.
pub fn hc_coefficients_scaled<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    k: &MultiplicityFunction<T>,
    height: usize,
    scale: T,
) -> Result<SeriesCoefficients<T>> {
    let rank = rs.rank();
    let table = Arc::new(LatticeTable::new(rank, height));
    let eps = resonance_tolerance(rs, lambda);
    let shifted = lambda - &k.rho(rs);

    struct RootData<T> {
        coords: Vec<i64>,
        gram_coords: Vec<i64>,
        norm_sq: T,
        weight: T,
        shifted_pairing: Cx<T>,
        decay: T,
    }
    let roots: Vec<RootData<T>> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| RootData {
            coords: r.coords.clone(),
            gram_coords: rs.gram_times(&r.coords),
            norm_sq: T::from_int(r.norm_sq()),
            weight: T::lit(2.0) * k.of_root(rs, i),
            shifted_pairing: rs.inner_lattice(&shifted, &r.coords),
            decay: (-T::from_int(rs.rho_vee_pairing(&r.coords)) * scale).exp(),
        })
        .filter(|r| r.weight != T::zero())
        .collect();

    // (λ, μ) = Σ_i n_i (Gλ)_i
    let gram_lambda: Vec<Cx<T>> = (0..rank)
        .map(|i| rs.inner_lattice(lambda, &rs.simple_root(i)))
        .collect();

    let mut coeffs = vec![Cx::new(T::zero(), T::zero()); table.len()];
    coeffs[0] = Cx::new(T::one(), T::zero());
    for idx in 1..table.len() {
        let mu = &table.points()[idx];
        let n = mu.as_i64();
        let lam_mu = n
            .iter()
            .zip(&gram_lambda)
            .fold(Cx::new(T::zero(), T::zero()), |acc, (&c, g)| acc + g * T::from_int(c));
        let denom = lam_mu * T::lit(2.0) - T::from_int(rs.inner_int(&n, &n));
        if denom.norm() <= eps {
            return Err(Error::Resonance {
                mu: mu.n.clone(),
                magnitude: denom.norm().as_f64(),
                context: "Harish-Chandra recurrence (2λ−μ,μ)".into(),
            });
        }
        let mut acc = Cx::new(T::zero(), T::zero());
        for r in &roots {
            let mu_alpha: i64 = n.iter().zip(&r.gram_coords).map(|(a, b)| a * b).sum();
            let base = r.shifted_pairing - T::from_int(mu_alpha);
            let mut inner = Cx::new(T::zero(), T::zero());
            let mut damp = T::one();
            let mut j = 1;
            while let Some(prev) = table.index_of_shifted(&mu.n, &r.coords, j) {
                damp = damp * r.decay;
                inner = inner + (base + r.norm_sq * T::from_int(j)) * coeffs[prev] * damp;
                j += 1;
            }
            acc = acc + inner * r.weight;
        }
        coeffs[idx] = acc / denom;
    }
    Ok(SeriesCoefficients {
        kind: SeriesKind::HarishChandra,
        lambda: lambda.clone(),
        multiplicity: Some(k.clone()),
        scale,
        table,
        coeffs,
    })
}

fn require_chamber<T: Real>(rs: &RootSystem, a: &ChamberPoint<T>) -> Result<()> {
    if a.rank() != rs.rank() {
        return Err(Error::Configuration(format!(
            "{} point needs {} coordinates, got {}",
            rs.label(),
            rs.rank(),
            a.rank()
        )));
    }
    if let Some(i) = a.x.iter().position(|&x| !(x > T::lit(WALL_TOL))) {
        return Err(Error::Domain(format!(
            "point outside the positive chamber: x[{i}] = {}",
            a.x[i]
        )));
    }
    Ok(())
}

/// Σ_{n(μ)≤N} Γ̃_μ e^{−μ(log a) + (μ,ρ∨)s}, with its tail estimate.
fn hc_sum<T: Real>(coeffs: &SeriesCoefficients<T>, a: &ChamberPoint<T>, height: usize) -> (Cx<T>, T) {
    let table = coeffs.table();
    let height = height.min(table.height());
    // (μ, ρ∨) = 2 n(μ): every simple root of R pairs to 2 with ρ∨.
    let y: Vec<T> = a.x.iter().map(|&x| x - T::lit(2.0) * coeffs.scale).collect();
    let mut sum = Cx::new(T::zero(), T::zero());
    let mut shells = Vec::with_capacity(height + 1);
    for h in 0..=height {
        let mut shell = T::zero();
        for idx in table.shell(h) {
            let n = &table.points()[idx].n;
            let expo = n.iter().zip(&y).fold(T::zero(), |acc, (&c, &yy)| acc - T::from_int(i64::from(c)) * yy);
            let term = coeffs.coefficients()[idx] * expo.exp();
            shell = shell + term.norm();
            sum = sum + term;
        }
        shells.push(shell);
    }
    (sum, tail_from_shells(&shells))
}

/// Φ(λ,k;a) from precomputed coefficients, in factored form.
pub fn sum_phi<T: Real>(
    rs: &RootSystem,
    coeffs: &SeriesCoefficients<T>,
    a: &ChamberPoint<T>,
    height: usize,
) -> Result<ScaledSum<T>> {
    require_chamber(rs, a)?;
    let k = coeffs
        .multiplicity
        .as_ref()
        .ok_or_else(|| Error::Configuration("not a Harish-Chandra table".into()))?;
    let (sum, tail) = hc_sum(coeffs, a, height);
    Ok(ScaledSum {
        log_scale: a.eval(&(&coeffs.lambda - &k.rho(rs))),
        sum,
        tail,
    })
}

/// Ψ_CM(λ,k;a) = δ(k;a)^{1/2} Φ(λ,k;a) from precomputed coefficients.
///
/// The prefactor is assembled as λ(log a) + Σ_α k_α log(1 − e^{−α(log a)}),
/// which is δ^{1/2} e^{−ρ(k)} without the large cancelling exponentials.
pub fn sum_cm<T: Real>(
    rs: &RootSystem,
    coeffs: &SeriesCoefficients<T>,
    a: &ChamberPoint<T>,
    height: usize,
) -> Result<ScaledSum<T>> {
    require_chamber(rs, a)?;
    let k = coeffs
        .multiplicity
        .as_ref()
        .ok_or_else(|| Error::Configuration("not a Harish-Chandra table".into()))?;
    let (sum, tail) = hc_sum(coeffs, a, height);
    let mut log_scale = a.eval(&coeffs.lambda);
    for (i, root) in rs.positive_roots().iter().enumerate() {
        let t = a.eval_lattice(&root.coords);
        log_scale = log_scale + k.of_root(rs, i) * (-(-t).exp()).ln_1p();
    }
    Ok(ScaledSum { log_scale, sum, tail })
}

/// Φ(λ,k;a) truncated at height N.
pub fn phi<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    k: &MultiplicityFunction<T>,
    a: &ChamberPoint<T>,
    height: usize,
) -> Result<SeriesValue<T>> {
    require_chamber(rs, a)?;
    let coeffs = hc_coefficients(rs, lambda, k, height)?;
    Ok(sum_phi(rs, &coeffs, a, height)?.value())
}

/// log δ(k;a)^{1/2} = Σ_{α∈R₊} k_α log(2 sinh(α(log a)/2)).
pub fn log_delta_half<T: Real>(rs: &RootSystem, k: &MultiplicityFunction<T>, a: &ChamberPoint<T>) -> Result<T> {
    require_chamber(rs, a)?;
    let mut acc = T::zero();
    for (i, root) in rs.positive_roots().iter().enumerate() {
        let t = a.eval_lattice(&root.coords);
        acc = acc + k.of_root(rs, i) * (t * T::lit(0.5) + (-(-t).exp()).ln_1p());
    }
    Ok(acc)
}

/// Ψ_CM(λ,k;a) truncated at height N.
pub fn psi_cm<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    k: &MultiplicityFunction<T>,
    a: &ChamberPoint<T>,
    height: usize,
) -> Result<SeriesValue<T>> {
    Ok(psi_cm_scaled(rs, lambda, k, a, height, T::zero())?.value())
}

/// Ψ_CM(λ,k;a) in factored form, computed from the e^{−(μ,ρ∨)s}-rescaled
/// table. Mathematically independent of `scale`; choose s ≈ M when k = k_M.
pub fn psi_cm_scaled<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    k: &MultiplicityFunction<T>,
    a: &ChamberPoint<T>,
    height: usize,
    scale: T,
) -> Result<ScaledSum<T>> {
    require_chamber(rs, a)?;
    let coeffs = hc_coefficients_scaled(rs, lambda, k, height, scale)?;
    sum_cm(rs, &coeffs, a, height)
}
