//! Gauss ₂F₁ on the negative real axis.

use crate::error::{Error, Result};
use crate::scalar::{re, Cx, Real};

use super::gamma::nonpositive_integer;

const MAX_TERMS: usize = 200_000;

/// ₂F₁(a, b; c; z) for real z ≤ 0.
///
/// The Pfaff transformation ₂F₁(a,b;c;z) = (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))
/// moves the argument into [0, 1), where the defining series converges.
pub fn gauss_2f1<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: T) -> Result<Cx<T>> {
    if let Some(n) = nonpositive_integer(c) {
        return Err(Error::Domain(format!("2F1: c = {n} is a nonpositive integer")));
    }
    if z > T::zero() {
        return Err(Error::Domain("2F1 is only provided for real z <= 0".into()));
    }
    if z == T::zero() {
        return Ok(re(T::one()));
    }
    let w = z / (z - T::one());
    let prefactor = (-a * (T::one() - z).ln()).exp();
    Ok(prefactor * hypergeometric_series(a, c - b, c, w)?)
}

/// Σ (a)_n (b)_n / ((c)_n n!) w^n for 0 ≤ w < 1.
pub(crate) fn hypergeometric_series<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, w: T) -> Result<Cx<T>> {
    debug_assert!(w >= T::zero() && w < T::one());
    let eps = T::epsilon() * T::lit(0.5);
    let mut term = re(T::one());
    let mut sum = term;
    // Kahan-compensated sum.
    let mut carry = Cx::new(T::zero(), T::zero());
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nn = re(T::from_int(n as i64));
        term = term * (a + nn) * (b + nn) / ((c + nn) * (nn + T::one())) * w;
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        if term.norm() <= eps * sum.norm() {
            quiet += 1;
            // Early terms of a non-monotone series can be tiny by accident.
            if quiet >= 3 && (a + nn).norm() * (b + nn).norm() <= (c + nn).norm() * (nn.re + T::one()) / w.max(eps) {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
        if term.norm() == T::zero() {
            return Ok(sum);
        }
    }
    Err(Error::Accuracy {
        achieved: (term.norm() / sum.norm()).as_f64(),
        requested: eps.as_f64(),
        context: "2F1 series did not converge".into(),
    })
}
