//! Macdonald function K_ν(x) for complex order and real positive argument,
//! from K_ν(x) = ∫₀^∞ e^{−x cosh t} cosh(νt) dt.

use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

use super::quadrature::{composite_gauss, gauss_legendre, trapezoid};

/// Orders with |Re ν| above this are rejected.
pub const ORDER_WINDOW: f64 = 10.0;

const GAUSS_POINTS: usize = 20;
const MAX_PANELS: usize = 1 << 12;
const MAX_TRAPEZOID_STEPS: usize = 1 << 20;
/// log-magnitude drop below the integrand's peak at which the range is cut.
const CUTOFF_DROP: f64 = 45.0;

fn check<T: Real>(order: Cx<T>, x: T) -> Result<()> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("bessel_k needs x > 0, got {x}")));
    }
    if order.re.abs() > T::lit(ORDER_WINDOW) {
        return Err(Error::Domain(format!(
            "bessel_k order {order} outside |Re nu| <= {ORDER_WINDOW}"
        )));
    }
    Ok(())
}

fn integrand<T: Real>(order: Cx<T>, x: T) -> impl Fn(T) -> Cx<T> {
    move |t: T| {
        let base = -x * t.cosh();
        let half = T::lit(0.5);
        ((order * t + base).exp() + (-order * t + base).exp()) * half
    }
}

/// Upper limit t* beyond which the integrand is below e^{−45} of its peak.
fn cutoff<T: Real>(order: Cx<T>, x: T) -> T {
    let nu = order.re.abs();
    let g = |t: T| -x * t.cosh() + nu * t;
    let peak_t = (nu / x).asinh();
    let peak = g(peak_t);
    let mut t = peak_t;
    let step = T::lit(0.25);
    while g(t) > peak - T::lit(CUTOFF_DROP) {
        t = t + step;
    }
    t
}

/// K_ν(x) by composite Gauss-Legendre quadrature with panel doubling.
pub fn bessel_k<T: Real>(order: Cx<T>, x: T) -> Result<Cx<T>> {
    check(order, x)?;
    let f = integrand(order, x);
    let hi = cutoff(order, x);
    let rule = gauss_legendre::<T>(GAUSS_POINTS);
    let tol = T::epsilon() * T::lit(64.0);
    let mut panels = 4;
    let mut prev = composite_gauss(&f, T::zero(), hi, panels, &rule);
    while panels < MAX_PANELS {
        panels *= 2;
        let next = composite_gauss(&f, T::zero(), hi, panels, &rule);
        if (next - prev).norm() <= tol * next.norm() {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Accuracy {
        achieved: f64::NAN,
        requested: tol.as_f64(),
        context: "bessel_k Gauss-Legendre panels did not converge".into(),
    })
}

/// K_ν(x) by the trapezoidal rule with step halving.
///
/// The integrand extends to an even analytic function of t, so the
/// trapezoidal rule converges geometrically. Independent of [`bessel_k`]
/// except for the shared truncation point.
pub fn bessel_k_trapezoid<T: Real>(order: Cx<T>, x: T) -> Result<Cx<T>> {
    check(order, x)?;
    let f = integrand(order, x);
    let hi = cutoff(order, x);
    let tol = T::epsilon() * T::lit(64.0);
    let mut steps = 16;
    let mut prev = trapezoid(&f, T::zero(), hi, steps);
    while steps < MAX_TRAPEZOID_STEPS {
        steps *= 2;
        let next = trapezoid(&f, T::zero(), hi, steps);
        if (next - prev).norm() <= tol * next.norm() {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Accuracy {
        achieved: f64::NAN,
        requested: tol.as_f64(),
        context: "bessel_k trapezoid did not converge".into(),
    })
}
