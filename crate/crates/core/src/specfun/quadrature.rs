//! Composite Gauss-Legendre and trapezoidal rules on a finite interval.

use crate::scalar::{Cx, Real};

/// Nodes and weights of the n-point Gauss-Legendre rule on [−1, 1].
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::from_int(n as i64);
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (T::PI() * (T::from_int(i as i64) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != T::zero() {
            dp = d;
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::from_int(k as i64);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_int(n as i64);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// ∫_lo^hi f using `panels` equal panels of the given Gauss rule.
pub fn composite_gauss<T: Real, F: Fn(T) -> Cx<T>>(
    f: &F,
    lo: T,
    hi: T,
    panels: usize,
    rule: &(Vec<T>, Vec<T>),
) -> Cx<T> {
    let width = (hi - lo) / T::from_int(panels as i64);
    let half = width * T::lit(0.5);
    let mut acc = Cx::new(T::zero(), T::zero());
    for p in 0..panels {
        let mid = lo + width * T::from_int(p as i64) + half;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            acc = acc + f(mid + half * *x) * (*w * half);
        }
    }
    acc
}

/// Trapezoidal rule with `steps` intervals.
pub fn trapezoid<T: Real, F: Fn(T) -> Cx<T>>(f: &F, lo: T, hi: T, steps: usize) -> Cx<T> {
    let h = (hi - lo) / T::from_int(steps as i64);
    let mut acc = (f(lo) + f(hi)) * T::lit(0.5);
    for j in 1..steps {
        acc = acc + f(lo + h * T::from_int(j as i64));
    }
    acc * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn gauss_rule_is_exact_for_polynomials() {
        let rule = gauss_legendre::<f64>(10);
        assert!((rule.1.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // ∫_0^1 x^19 = 1/20
        let v = composite_gauss(&|x: f64| Complex64::new(x.powi(19), 0.0), 0.0, 1.0, 1, &rule);
        assert!((v.re - 0.05).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_converges_quadratically() {
        let f = |x: f64| Complex64::new(x * x, 0.0);
        let e1 = (trapezoid(&f, 0.0, 1.0, 10).re - 1.0 / 3.0).abs();
        let e2 = (trapezoid(&f, 0.0, 1.0, 20).re - 1.0 / 3.0).abs();
        assert!((e1 / e2 - 4.0).abs() < 1e-6);
    }
}
