//! Complex log-Gamma and Gamma ratios.

use crate::error::{Error, Result};
use crate::scalar::{cx, re, Cx, Real};

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_TOL: f64 = 1e-12;

/// Below this real part the upward recurrence gets long; use reflection.
const RECURRENCE_FLOOR: f64 = -60.0;

/// If `z` is within `POLE_TOL` of a nonpositive integer, that integer.
pub fn nonpositive_integer<T: Real>(z: Cx<T>) -> Option<i64> {
    let n = z.re.round();
    if n <= T::zero() && (z - re(n)).norm() <= T::lit(POLE_TOL) {
        n.to_i64()
    } else {
        None
    }
}

/// log Γ(z) on the principal branch, continuous on ℂ ∖ (−∞, 0].
///
/// For Re z < −60 the reflection formula is used and the imaginary part is
/// only fixed modulo 2π; exponentiating is unaffected.
pub fn log_gamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    if let Some(at) = nonpositive_integer(z) {
        return Err(Error::Pole {
            at,
            context: "log_gamma".into(),
        });
    }
    let half = T::lit(0.5);
    if z.re >= half {
        return Ok(lanczos(z));
    }
    if z.re > T::lit(RECURRENCE_FLOOR) {
        // log Γ(z) = log Γ(z + m) − Σ_{j<m} log(z + j), each log principal.
        let m = (half - z.re).ceil().to_i64().unwrap_or(0).max(1);
        let mut shift = Cx::new(T::zero(), T::zero());
        for j in 0..m {
            shift = shift + (z + re(T::from_int(j))).ln();
        }
        return Ok(lanczos(z + re(T::from_int(m))) - shift);
    }
    let one = re(T::one());
    Ok(re(T::PI().ln()) - log_sin_pi(z) - lanczos(one - z))
}

fn lanczos<T: Real>(z: Cx<T>) -> Cx<T> {
    let z = z - re(T::one());
    let mut acc = re(T::lit(LANCZOS_COEF[0]));
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + re(T::lit(c)) / (z + re(T::from_int(i as i64)));
    }
    let t = z + re(T::lit(LANCZOS_G + 0.5));
    let half_log_two_pi = T::lit(0.918_938_533_204_672_8);
    re(half_log_two_pi) + (z + re(T::lit(0.5))) * t.ln() - t + acc.ln()
}

/// log sin(πz) modulo 2πi, without overflow for large |Im z|.
fn log_sin_pi<T: Real>(z: Cx<T>) -> Cx<T> {
    let n = z.re.round();
    let r = z - re(n);
    let parity = cx(T::zero(), T::PI() * n);
    let w = r * T::PI();
    if w.im.abs() < T::lit(30.0) {
        return w.sin().ln() + parity;
    }
    let i = cx(T::zero(), T::one());
    let one = re(T::one());
    let half = T::lit(0.5);
    let body = if w.im > T::zero() {
        -(i * w) + (one - (i * w * T::lit(2.0)).exp()).ln() + cx(T::zero(), half).ln()
    } else {
        i * w + (one - (-(i * w) * T::lit(2.0)).exp()).ln() - cx(T::zero(), T::lit(2.0)).ln()
    };
    body + parity
}

/// Γ(z).
pub fn gamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    Ok(log_gamma(z)?.exp())
}

/// log(Γ(num)/Γ(den)).
///
/// A pole in the numerator is an error; a pole in the denominator makes the
/// ratio zero, which is reported as [`Error::ZeroByPole`] so the caller can
/// decide.
pub fn log_gamma_ratio<T: Real>(num: Cx<T>, den: Cx<T>) -> Result<Cx<T>> {
    if let Some(at) = nonpositive_integer(den) {
        if nonpositive_integer(num).is_none() {
            return Err(Error::ZeroByPole {
                at,
                context: "gamma_ratio denominator".into(),
            });
        }
    }
    let ln = log_gamma(num).map_err(|e| e.with_context("gamma_ratio numerator"))?;
    let ld = log_gamma(den)?;
    Ok(ln - ld)
}

/// Γ(num)/Γ(den), formed in log space.
pub fn gamma_ratio<T: Real>(num: Cx<T>, den: Cx<T>) -> Result<Cx<T>> {
    Ok(log_gamma_ratio(num, den)?.exp())
}
