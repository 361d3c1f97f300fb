use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsystem::{ChamberPoint, Covector, LatticeTable, RootSystem};
use crate::scalar::{Cx, Real};

use super::{
    resonance_tolerance, tail_from_shells, Character, ScaledSum, SeriesCoefficients, SeriesKind,
    SeriesValue,
};

/// Shared solver for (2ν+μ, μ) c_μ = Σ_{(β, j, w)} w · c_{μ−jβ}.
fn ascending_recurrence<T: Real>(
    rs: &RootSystem,
    nu: &Covector<T>,
    sources: &[(Vec<i64>, i64, T)],
    height: usize,
    context: &str,
) -> Result<(Arc<LatticeTable>, Vec<Cx<T>>)> {
    let rank = rs.rank();
    let table = Arc::new(LatticeTable::new(rank, height));
    let eps = resonance_tolerance(rs, nu);
    let gram_nu: Vec<Cx<T>> = (0..rank)
        .map(|i| rs.inner_lattice(nu, &rs.simple_root(i)))
        .collect();
    let mut coeffs = vec![Cx::new(T::zero(), T::zero()); table.len()];
    coeffs[0] = Cx::new(T::one(), T::zero());
    for idx in 1..table.len() {
        let mu = &table.points()[idx];
        let n = mu.as_i64();
        let nu_mu = n
            .iter()
            .zip(&gram_nu)
            .fold(Cx::new(T::zero(), T::zero()), |acc, (&c, g)| acc + g * T::from_int(c));
        let denom = nu_mu * T::lit(2.0) + T::from_int(rs.inner_int(&n, &n));
        if denom.norm() <= eps {
            return Err(Error::Resonance {
                mu: mu.n.clone(),
                magnitude: denom.norm().as_f64(),
                context: context.into(),
            });
        }
        let mut acc = Cx::new(T::zero(), T::zero());
        for (beta, j, w) in sources {
            if let Some(prev) = table.index_of_shifted(&mu.n, beta, *j) {
                acc = acc + coeffs[prev] * *w;
            }
        }
        coeffs[idx] = acc / denom;
    }
    Ok((table, coeffs))
}

/// Toda coefficients b_μ(λ) for n(μ) ≤ `height`:
/// `(2λ+μ, μ) b_μ = 2 Σ_{α∈B} l_α² b_{μ−α}`, b₀ = 1.
pub fn toda_coefficients<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    psi: &Character<T>,
    height: usize,
) -> Result<SeriesCoefficients<T>> {
    if psi.values().len() != rs.rank() {
        return Err(Error::Configuration("character rank mismatch".into()));
    }
    let sources: Vec<(Vec<i64>, i64, T)> = (0..rs.rank())
        .map(|i| (rs.simple_root(i), 1, T::lit(2.0) * psi.l_sq(i)))
        .collect();
    let (table, coeffs) = ascending_recurrence(rs, lambda, &sources, height, "Toda recurrence (2λ+μ,μ)")?;
    Ok(SeriesCoefficients {
        kind: SeriesKind::Toda,
        lambda: lambda.clone(),
        multiplicity: None,
        scale: T::zero(),
        table,
        coeffs,
    })
}

/// Σ c_μ e^{μ(log a)} with tail estimate.
fn ascending_sum<T: Real>(coeffs: &SeriesCoefficients<T>, a: &ChamberPoint<T>, height: usize) -> (Cx<T>, T) {
    let table = coeffs.table();
    let height = height.min(table.height());
    let mut sum = Cx::new(T::zero(), T::zero());
    let mut shells = Vec::with_capacity(height + 1);
    for h in 0..=height {
        let mut shell = T::zero();
        for idx in table.shell(h) {
            let n = &table.points()[idx].n;
            let expo = n
                .iter()
                .zip(&a.x)
                .fold(T::zero(), |acc, (&c, &x)| acc + T::from_int(i64::from(c)) * x);
            let term = coeffs.coefficients()[idx] * expo.exp();
            shell = shell + term.norm();
            sum = sum + term;
        }
        shells.push(shell);
    }
    (sum, tail_from_shells(&shells))
}

fn require_rank<T: Real>(rs: &RootSystem, a: &ChamberPoint<T>) -> Result<()> {
    if a.rank() != rs.rank() {
        return Err(Error::Configuration(format!(
            "{} point needs {} coordinates, got {}",
            rs.label(),
            rs.rank(),
            a.rank()
        )));
    }
    if a.x.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("point coordinates must be finite".into()));
    }
    Ok(())
}

/// Ψ_T(λ;a) = a^λ Σ b_μ a^μ from a Toda table, in factored form.
///
/// The series is entire in log a (the coefficients decay factorially), so
/// any point is admissible; the tail estimate decides whether N suffices.
pub fn psi_toda_sum<T: Real>(
    rs: &RootSystem,
    coeffs: &SeriesCoefficients<T>,
    a: &ChamberPoint<T>,
    height: usize,
) -> Result<ScaledSum<T>> {
    require_rank(rs, a)?;
    if coeffs.kind != SeriesKind::Toda {
        return Err(Error::Configuration("not a Toda table".into()));
    }
    let (sum, tail) = ascending_sum(coeffs, a, height);
    Ok(ScaledSum {
        log_scale: a.eval(&coeffs.lambda),
        sum,
        tail,
    })
}

/// Ψ_T(λ,ψ;a) truncated at height N. Fails with an accuracy error when the
/// estimated tail exceeds `tol` relative to the value.
pub fn psi_toda<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    psi: &Character<T>,
    a: &ChamberPoint<T>,
    height: usize,
    tol: T,
) -> Result<SeriesValue<T>> {
    let coeffs = toda_coefficients(rs, lambda, psi, height)?;
    let s = psi_toda_sum(rs, &coeffs, a, height)?;
    let rel = s.relative_tail();
    if !(rel <= tol) {
        return Err(Error::Accuracy {
            achieved: rel.as_f64(),
            requested: tol.as_f64(),
            context: format!("Toda series at height {height}"),
        });
    }
    Ok(s.value())
}

/// Coefficients b̃_μ(λ,M) of the rescaled Calogero-Moser series
///
/// ```text
/// e^{−(λ,ρ∨)M} Ψ_CM(λ, k_M; a_M) = Σ_{μ∈Q₊} b̃_μ(λ,M) e^{(w₀λ+μ)(log a)},
/// (2w₀λ+μ, μ) b̃_μ = 2 Σ_{α∈R₊} Σ_{j≥1} j e^{(2−j(α,ρ∨))M} b̃_{μ−jα}.
/// ```
///
/// This works directly with the Schrödinger form of the operator, so it is
/// independent of the Harish-Chandra recurrence. As M → ∞ only the simple
/// roots with j = 1 survive and the Toda recurrence for w₀λ is recovered.
pub fn limit_series_coefficients<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    m: T,
    height: usize,
) -> Result<SeriesCoefficients<T>> {
    let w0 = rs.weyl_group().longest().clone();
    let nu = w0.act(lambda);
    let mut sources = Vec::new();
    for root in rs.positive_roots() {
        let pairing = rs.rho_vee_pairing(&root.coords);
        let jmax = height as i64 / root.height().max(1);
        for j in 1..=jmax {
            let w = T::lit(2.0) * T::from_int(j) * ((T::lit(2.0) - T::from_int(j * pairing)) * m).exp();
            sources.push((root.coords.clone(), j, w));
        }
    }
    let (table, coeffs) = ascending_recurrence(rs, &nu, &sources, height, "rescaled recurrence (2w₀λ+μ,μ)")?;
    Ok(SeriesCoefficients {
        kind: SeriesKind::Limit,
        lambda: lambda.clone(),
        multiplicity: None,
        scale: m,
        table,
        coeffs,
    })
}

/// e^{−(λ,ρ∨)M} Ψ_CM(λ, k_M; a_M) through the rescaled recurrence.
pub fn limit_series<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    a: &ChamberPoint<T>,
    m: T,
    height: usize,
) -> Result<ScaledSum<T>> {
    require_rank(rs, a)?;
    let coeffs = limit_series_coefficients(rs, lambda, m, height)?;
    let w0 = rs.weyl_group().longest().clone();
    let (sum, tail) = ascending_sum(&coeffs, a, height);
    Ok(ScaledSum {
        log_scale: a.eval(&w0.act(lambda)),
        sum,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::LatticePoint;
    use crate::specfun::{bessel_k, gamma};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn first_coefficients() {
        let rs = RootSystem::from_label("A1").unwrap();
        let lam = Covector::from_pairings(&rs, &[c(0.9, 0.31)]).unwrap();
        let t = toda_coefficients(&rs, &lam, &Character::standard(1), 4).unwrap();
        assert_eq!(t.coefficients()[0], c(1.0, 0.0));
        let alpha = rs.simple_root(0);
        let expected = 2.0 / (rs.inner_lattice(&lam, &alpha) * 2.0 + 8.0);
        assert!((t.coefficients()[1] - expected).norm() < 1e-15);

        let a2 = RootSystem::from_label("A2").unwrap();
        let lam = Covector::from_pairings(&a2, &[c(0.9, 0.31), c(1.3, -0.27)]).unwrap();
        let t = toda_coefficients(&a2, &lam, &Character::standard(2), 3).unwrap();
        let get = |n: Vec<u32>| t.get(&LatticePoint { n }).unwrap();
        let mu = [1i64, 1];
        let denom = rs_inner2(&a2, &lam, &mu);
        let expected = 2.0 / denom * (get(vec![1, 0]) + get(vec![0, 1]));
        assert!((get(vec![1, 1]) - expected).norm() < 1e-15);
    }

    fn rs_inner2(rs: &RootSystem, lam: &Covector<f64>, mu: &[i64]) -> Complex64 {
        rs.inner_lattice(lam, mu) * 2.0 + rs.inner_int(mu, mu) as f64
    }

    #[test]
    fn rank_one_is_modified_bessel_i() {
        // Ψ_T(λ̂) = Γ(1+λ̂) 2^{λ̂} I_{λ̂}(e^{x/2}), so
        // K_ν(z) = π/(2 sin νπ) (I_{−ν} − I_ν) can be assembled from two series.
        let rs = RootSystem::from_label("A1").unwrap();
        let nu = c(0.3, 0.7);
        let psi = Character::standard(1);
        for x in [-2.0, 0.0, 1.5, 3.0] {
            let a = ChamberPoint::new(vec![x]);
            let i_of = |v: Complex64| {
                let lam = Covector::from_pairings(&rs, &[v]).unwrap();
                let s = psi_toda(&rs, &lam, &psi, &a, 60, 1e-15).unwrap().value;
                s / (gamma(v + 1.0).unwrap() * (v * 2f64.ln()).exp())
            };
            let k = std::f64::consts::PI / (2.0 * (nu * std::f64::consts::PI).sin()) * (i_of(-nu) - i_of(nu));
            let z = (x / 2.0f64).exp();
            let expected = bessel_k(nu, z).unwrap();
            assert!((k - expected).norm() / expected.norm() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn accuracy_error_when_truncated_too_early() {
        let rs = RootSystem::from_label("A1").unwrap();
        let lam = Covector::from_pairings(&rs, &[c(0.3, 0.1)]).unwrap();
        let a = ChamberPoint::new(vec![6.0]);
        let r = psi_toda(&rs, &lam, &Character::standard(1), &a, 3, 1e-8);
        assert!(matches!(r, Err(Error::Accuracy { .. })));
    }

    #[test]
    fn negative_region_converges_fast() {
        let rs = RootSystem::from_label("A2").unwrap();
        let lam = Covector::from_pairings(&rs, &[c(0.9, 0.31), c(1.3, -0.27)]).unwrap();
        let a = ChamberPoint::new(vec![-5.0, -5.0]);
        let coeffs = toda_coefficients(&rs, &lam, &Character::standard(2), 12).unwrap();
        let s = psi_toda_sum(&rs, &coeffs, &a, 12).unwrap();
        assert!(s.relative_tail() < 1e-8);
        assert!((s.sum - 1.0).norm() < 1e-2);
    }

    #[test]
    fn limit_recurrence_tends_to_toda() {
        let rs = RootSystem::from_label("A2").unwrap();
        let lam = Covector::from_pairings(&rs, &[c(0.9, 0.31), c(1.3, -0.27)]).unwrap();
        let w0 = rs.weyl_group().longest().clone();
        let toda = toda_coefficients(&rs, &w0.act(&lam), &Character::standard(2), 6).unwrap();
        let mut prev = f64::INFINITY;
        for m in [2.0, 4.0, 6.0, 8.0] {
            let lim = limit_series_coefficients(&rs, &lam, m, 6).unwrap();
            let dev = lim
                .coefficients()
                .iter()
                .zip(toda.coefficients())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dev < prev);
            prev = dev;
        }
        assert!(prev < 1e-5);
    }
}
