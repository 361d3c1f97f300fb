//! Gamma-product prefactors and the data of the limit transition.
//!
//! Every product is accumulated as a sum of logarithms and exponentiated
//! once by the caller: Γ(k_M) alone leaves the double range near M ≈ 5.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::rootsystem::{ChamberPoint, Covector, RootSystem, WeylElement};
use crate::scalar::{re, Cx, Real};
use crate::series::{Character, MultiplicityFunction};
use crate::specfun::{log_gamma, log_gamma_ratio};

/// log c̃(λ,k) = Σ_{α∈R₊} log Γ((λ,α∨)) − log Γ((λ,α∨) + k_α).
///
/// A pole of a numerator Gamma is [`Error::Pole`]; a pole of a denominator
/// (which makes c̃ vanish) is [`Error::ZeroByPole`]. Both name the root.
pub fn log_c_tilde<T: Real>(rs: &RootSystem, lambda: &Covector<T>, k: &MultiplicityFunction<T>) -> Result<Cx<T>> {
    let mut acc = Cx::new(T::zero(), T::zero());
    let mut zero = None;
    for (i, root) in rs.positive_roots().iter().enumerate() {
        let kk = k.of_root(rs, i);
        if kk == T::zero() {
            continue;
        }
        let p = rs.coroot_pairing(lambda, i);
        match log_gamma_ratio(p, p + re(kk)) {
            Ok(v) => acc = acc + v,
            // Keep scanning: a numerator pole elsewhere makes the product undefined.
            Err(e @ Error::ZeroByPole { .. }) => {
                zero.get_or_insert(e.with_context(&format!("c-function at root {:?}", root.coords)));
            }
            Err(e) => return Err(e.with_context(&format!("c-function at root {:?}", root.coords))),
        }
    }
    match zero {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

pub fn c_tilde<T: Real>(rs: &RootSystem, lambda: &Covector<T>, k: &MultiplicityFunction<T>) -> Result<Cx<T>> {
    Ok(log_c_tilde(rs, lambda, k)?.exp())
}

/// c(λ,k) = c̃(λ,k)/c̃(ρ(k),k), normalised so that c(ρ(k),k) = 1.
pub fn c_norm<T: Real>(rs: &RootSystem, lambda: &Covector<T>, k: &MultiplicityFunction<T>) -> Result<Cx<T>> {
    Ok((log_c_tilde(rs, lambda, k)? - log_c_tilde(rs, &k.rho(rs), k)?).exp())
}

fn half<T: Real>(rs: &RootSystem) -> MultiplicityFunction<T> {
    MultiplicityFunction::uniform(rs, T::lit(0.5)).expect("1/2 is a valid multiplicity")
}

/// log of the split-group c̃, i.e. c̃ at k ≡ 1/2.
pub fn log_c_bold_tilde<T: Real>(rs: &RootSystem, lambda: &Covector<T>) -> Result<Cx<T>> {
    log_c_tilde(rs, lambda, &half(rs))
}

pub fn c_bold_tilde<T: Real>(rs: &RootSystem, lambda: &Covector<T>) -> Result<Cx<T>> {
    Ok(log_c_bold_tilde(rs, lambda)?.exp())
}

/// Harish-Chandra's c-function of the split group, c(λ, 1/2).
pub fn c_bold<T: Real>(rs: &RootSystem, lambda: &Covector<T>) -> Result<Cx<T>> {
    c_norm(rs, lambda, &half(rs))
}

/// log f(λ) = Σ_{α∈R₊} ((λ,α∨)/2) log((α,α)/2) + log Γ((λ,α∨) + 1/2).
pub fn log_f_factor<T: Real>(rs: &RootSystem, lambda: &Covector<T>) -> Result<Cx<T>> {
    let mut acc = Cx::new(T::zero(), T::zero());
    for (i, root) in rs.positive_roots().iter().enumerate() {
        let p = rs.coroot_pairing(lambda, i);
        let base = (T::from_int(root.norm_sq()) * T::lit(0.5)).ln();
        acc = acc
            + p * (base * T::lit(0.5))
            + log_gamma(p + re(T::lit(0.5)))
                .map_err(|e| e.with_context(&format!("f at root {:?}", root.coords)))?;
    }
    Ok(acc)
}

pub fn f_factor<T: Real>(rs: &RootSystem, lambda: &Covector<T>) -> Result<Cx<T>> {
    Ok(log_f_factor(rs, lambda)?.exp())
}

/// log M(s_i, λ, ψ) = (λ,α_i∨) log(2l_i²/(α_i,α_i)) + log Γ(1/2 − (λ,α_i∨)) − log Γ(1/2 + (λ,α_i∨)).
pub fn log_m_simple<T: Real>(rs: &RootSystem, i: usize, lambda: &Covector<T>, psi: &Character<T>) -> Result<Cx<T>> {
    let idx = rs.simple_index(i);
    let p = rs.coroot_pairing(lambda, idx);
    let base = (T::lit(2.0) * psi.l_sq(i) / T::from_int(rs.positive_roots()[idx].norm_sq())).ln();
    let h = re(T::lit(0.5));
    let g = log_gamma_ratio(h - p, h + p).map_err(|e| e.with_context(&format!("M(s_{i})")))?;
    Ok(p * base + g)
}

/// log M(w, λ, ψ) along the word `word` (w = s_{i₁}⋯s_{i_k}), using the cocycle
/// M(ww′,λ) = M(w′,λ) M(w,w′λ) from the rightmost letter outwards.
pub fn log_m_word<T: Real>(rs: &RootSystem, word: &[usize], lambda: &Covector<T>, psi: &Character<T>) -> Result<Cx<T>> {
    validate_character(rs, psi)?;
    let mut acc = Cx::new(T::zero(), T::zero());
    let mut mu = lambda.clone();
    for (pos, &i) in word.iter().enumerate().rev() {
        acc = acc
            + log_m_simple(rs, i, &mu, psi)
                .map_err(|e| e.with_context(&format!("word position {pos}")))?;
        mu = WeylElement::simple_reflection(rs, i).act(&mu);
    }
    Ok(acc)
}

pub fn log_m_intertwiner<T: Real>(
    rs: &RootSystem,
    w: &WeylElement,
    lambda: &Covector<T>,
    psi: &Character<T>,
) -> Result<Cx<T>> {
    log_m_word(rs, &w.word, lambda, psi)
}

/// M(w, λ, ψ).
pub fn m_intertwiner<T: Real>(
    rs: &RootSystem,
    w: &WeylElement,
    lambda: &Covector<T>,
    psi: &Character<T>,
) -> Result<Cx<T>> {
    Ok(log_m_intertwiner(rs, w, lambda, psi)?.exp())
}

fn validate_character<T: Real>(rs: &RootSystem, psi: &Character<T>) -> Result<()> {
    if psi.values().len() != rs.rank() {
        return Err(Error::Configuration(format!(
            "{} needs {} character values, got {}",
            rs.label(),
            rs.rank(),
            psi.values().len()
        )));
    }
    Ok(())
}

/// Memo of log M(w, λ, ψ) keyed by the reduced word and exact bits of λ, ψ.
#[derive(Debug, Default)]
pub struct IntertwinerCache<T> {
    values: RwLock<HashMap<(Vec<usize>, Vec<u64>, Vec<u64>), Cx<T>>>,
}

impl<T: Real> IntertwinerCache<T> {
    pub fn new() -> Self {
        IntertwinerCache {
            values: RwLock::new(HashMap::new()),
        }
    }

    pub fn log_m(&self, rs: &RootSystem, w: &WeylElement, lambda: &Covector<T>, psi: &Character<T>) -> Result<Cx<T>> {
        let key = (w.word.clone(), lambda.key_bits(), psi.key_bits());
        if let Some(v) = self.values.read().expect("cache lock poisoned").get(&key) {
            return Ok(*v);
        }
        let v = log_m_intertwiner(rs, w, lambda, psi)?;
        self.values.write().expect("cache lock poisoned").insert(key, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.values.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// (λ, ρ∨).
pub fn rho_vee_pairing<T: Real>(rs: &RootSystem, lambda: &Covector<T>) -> Cx<T> {
    rs.inner(lambda, &Covector::from_rational(rs.rho_vee()))
}

/// The limit parameters for a given M: k_M and the map a ↦ a_M.
#[derive(Debug, Clone)]
pub struct ScalingData<T> {
    pub m: T,
    pub k_m: MultiplicityFunction<T>,
    w0: WeylElement,
}

/// k_M(α) = (1 + √(1 + 8e^{2M}/(α,α)))/2, the root of k(k−1)(α,α) = 2e^{2M} above 1.
pub fn scaling_data<T: Real>(rs: &RootSystem, m: T) -> Result<ScalingData<T>> {
    if !(m > T::zero()) || !m.is_finite() {
        return Err(Error::Configuration(format!("M must be positive and finite, got {m}")));
    }
    let mut values = vec![T::zero(); rs.num_orbits()];
    for root in rs.positive_roots() {
        let nsq = T::from_int(root.norm_sq());
        let disc = T::one() + T::lit(8.0) * (T::lit(2.0) * m).exp() / nsq;
        values[root.orbit] = (T::one() + disc.sqrt()) * T::lit(0.5);
    }
    Ok(ScalingData {
        m,
        k_m: MultiplicityFunction::from_orbits(values),
        w0: rs.weyl_group().longest().clone(),
    })
}

impl<T: Real> ScalingData<T> {
    /// a_M: log a_M = w₀ log a + Mρ∨, so every simple coordinate gains 2M.
    /// The result may lie outside A₊ for small M; see
    /// [`ChamberPoint::in_positive_chamber`].
    pub fn a_shifted(&self, rs: &RootSystem, a: &ChamberPoint<T>) -> ChamberPoint<T> {
        let mut p = self.w0.act_point(rs, a);
        for x in &mut p.x {
            *x = *x + T::lit(2.0) * self.m;
        }
        p
    }

    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    /// log of e^{(λ,ρ∨)M} Π_{α∈R₊} Γ(k_M(α)) c̃(λ, k_M), which tends to
    /// log f(λ) + log c̃_bold(λ) as M → ∞.
    pub fn log_scaled_c_tilde(&self, rs: &RootSystem, lambda: &Covector<T>) -> Result<Cx<T>> {
        let mut acc = rho_vee_pairing(rs, lambda) * self.m + log_c_tilde(rs, lambda, &self.k_m)?;
        for i in 0..rs.positive_roots().len() {
            acc = acc + log_gamma(re(self.k_m.of_root(rs, i)))?;
        }
        Ok(acc)
    }
}

/// a_M for a single M. See [`ScalingData::a_shifted`].
pub fn a_shifted<T: Real>(rs: &RootSystem, a: &ChamberPoint<T>, m: T) -> Result<ChamberPoint<T>> {
    Ok(scaling_data(rs, m)?.a_shifted(rs, a))
}

/// The change of variables α(log a) = α(log a′) − log l_α², α ∈ B, applied
/// to a′. Its inverse is [`standard_argument`].
pub fn shift_for_general_l<T: Real>(rs: &RootSystem, psi: &Character<T>, a_prime: &ChamberPoint<T>) -> Result<ChamberPoint<T>> {
    validate_character(rs, psi)?;
    Ok(ChamberPoint::new(
        a_prime
            .x
            .iter()
            .enumerate()
            .map(|(i, &x)| x - psi.l_sq(i).ln())
            .collect(),
    ))
}

/// The point a′ with α(log a′) = α(log a) + log l_α². An eigenfunction for
/// the potential 2Σ l_α² e^α at a is an eigenfunction for the standard
/// potential at a′.
pub fn standard_argument<T: Real>(rs: &RootSystem, psi: &Character<T>, a: &ChamberPoint<T>) -> Result<ChamberPoint<T>> {
    validate_character(rs, psi)?;
    Ok(ChamberPoint::new(
        a.x.iter()
            .enumerate()
            .map(|(i, &x)| x + psi.l_sq(i).ln())
            .collect(),
    ))
}
