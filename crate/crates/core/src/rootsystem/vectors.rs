use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

use super::RootSystem;

/// Complex covector λ ∈ 𝔞*_ℂ, stored as coefficients over B.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector<T> {
    pub coords: Vec<Cx<T>>,
}

impl<T: Real> Covector<T> {
    pub fn new(coords: Vec<Cx<T>>) -> Self {
        Covector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Covector {
            coords: vec![Cx::new(T::zero(), T::zero()); rank],
        }
    }

    pub fn from_integer(v: &[i64]) -> Self {
        Covector {
            coords: v.iter().map(|&c| Cx::new(T::from_int(c), T::zero())).collect(),
        }
    }

    pub fn from_rational(v: &[Rational64]) -> Self {
        Covector {
            coords: v
                .iter()
                .map(|c| Cx::new(T::from_int(*c.numer()) / T::from_int(*c.denom()), T::zero()))
                .collect(),
        }
    }

    /// The covector whose pairings with the simple coroots are `pairings`,
    /// i.e. `(λ, α_i∨) = pairings[i]` for α_i ∈ B.
    pub fn from_pairings(rs: &RootSystem, pairings: &[Cx<T>]) -> Result<Self> {
        let n = rs.rank();
        if pairings.len() != n {
            return Err(Error::Configuration(format!(
                "{} expects {n} pairings, got {}",
                rs.label(),
                pairings.len()
            )));
        }
        // (λ, α_i) = p_i (α_i, α_i)/2, then λ = G⁻¹ (λ, α_·).
        let rhs: Vec<Cx<T>> = (0..n)
            .map(|i| pairings[i] * T::from_int(rs.gram()[i][i]) / T::lit(2.0))
            .collect();
        let inv = rs.gram_inverse();
        let coords = (0..n)
            .map(|i| {
                (0..n).fold(Cx::new(T::zero(), T::zero()), |acc, j| {
                    let q = inv[i][j];
                    acc + rhs[j] * (T::from_int(*q.numer()) / T::from_int(*q.denom()))
                })
            })
            .collect();
        Ok(Covector { coords })
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        Covector {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Bit pattern of the coordinates, used as an exact cache key.
    pub fn key_bits(&self) -> Vec<u64> {
        self.coords
            .iter()
            .flat_map(|c| [c.re.as_f64().to_bits(), c.im.as_f64().to_bits()])
            .collect()
    }
}

impl<T: Real> Add for &Covector<T> {
    type Output = Covector<T>;
    fn add(self, rhs: Self) -> Covector<T> {
        Covector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &Covector<T> {
    type Output = Covector<T>;
    fn sub(self, rhs: Self) -> Covector<T> {
        Covector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &Covector<T> {
    type Output = Covector<T>;
    fn neg(self) -> Covector<T> {
        Covector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Real> Mul<T> for &Covector<T> {
    type Output = Covector<T>;
    fn mul(self, s: T) -> Covector<T> {
        Covector {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }
}

/// A point a ∈ A in root coordinates: `x[i] = α_i(log a)` for α_i ∈ B.
///
/// Since B spans 𝔞*, these coordinates determine log a; for a covector λ
/// with coefficients c over B one has λ(log a) = Σ c_i x_i.
#[derive(Debug, Clone, PartialEq)]
pub struct ChamberPoint<T> {
    pub x: Vec<T>,
}

impl<T: Real> ChamberPoint<T> {
    pub fn new(x: Vec<T>) -> Self {
        ChamberPoint { x }
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    /// λ(log a).
    pub fn eval(&self, lambda: &Covector<T>) -> Cx<T> {
        lambda
            .coords
            .iter()
            .zip(&self.x)
            .fold(Cx::new(T::zero(), T::zero()), |acc, (c, &x)| acc + c * x)
    }

    /// μ(log a) for an integer vector μ over B.
    pub fn eval_lattice(&self, mu: &[i64]) -> T {
        mu.iter()
            .zip(&self.x)
            .fold(T::zero(), |acc, (&m, &x)| acc + T::from_int(m) * x)
    }

    /// Same as [`eval_lattice`](Self::eval_lattice) for a rational vector.
    pub fn eval_rational(&self, v: &[Rational64]) -> T {
        v.iter().zip(&self.x).fold(T::zero(), |acc, (q, &x)| {
            acc + T::from_int(*q.numer()) / T::from_int(*q.denom()) * x
        })
    }

    /// Whether α(log a) > 0 for every α ∈ R₊ (equivalently for α ∈ B).
    pub fn in_positive_chamber(&self) -> bool {
        self.x.iter().all(|&x| x > T::zero())
    }
}
