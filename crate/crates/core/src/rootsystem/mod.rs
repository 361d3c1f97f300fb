//! Reduced crystallographic root systems Σ together with the doubled system
//! R = 2Σ used by the hypergeometric side.
//!
//! Everything is stored exactly: simple-root coordinates are integers and the
//! Gram matrix is integral once short roots of Σ are normalised to squared
//! length 2. Floating point only appears when a covector or point is paired
//! against this data.
//!
//! Coordinates. A doubled root α = 2β ∈ R has, in the simple basis
//! B = 2Π of R, exactly the coordinate vector that β has in Π. All covectors
//! (spectral parameters, ρ, ρ∨, lattice points μ) are therefore stored as
//! coefficient vectors over B, and the Gram matrix over B is four times the
//! Gram matrix over Π.

mod lattice;
mod vectors;
mod weyl;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

pub use lattice::{enumerate_qplus, LatticePoint, LatticeTable};
pub use vectors::{ChamberPoint, Covector};
pub use weyl::{WeylElement, WeylGroup};

/// Cartan-Killing family label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

/// A positive root of Σ, stored once. Its double in R₊ shares `coords`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coefficients over Π (equivalently: coefficients of 2β over B).
    pub coords: Vec<i64>,
    /// (β, β) in the normalisation where short roots of Σ have length² 2.
    pub sigma_norm_sq: i64,
    /// W-orbit index: 0 for short roots, 1 for long roots.
    pub orbit: usize,
}

impl PositiveRoot {
    /// (α, α) for the doubled root α = 2β ∈ R₊.
    pub fn norm_sq(&self) -> i64 {
        4 * self.sigma_norm_sq
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// Gram matrix over B = 2Π.
    gram: Vec<Vec<i64>>,
    gram_inv: Vec<Vec<Rational64>>,
    positive: Vec<PositiveRoot>,
    /// ρ = ½ Σ_{β∈Σ₊} β, over B.
    rho: Vec<Rational64>,
    /// ρ∨ = Σ_{α∈R₊} α∨, over B.
    rho_vee: Vec<Rational64>,
    num_orbits: usize,
}

impl RootSystem {
    /// Builds one of A₁…A₄, B₂, B₃, C₂, C₃, D₄, G₂.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let sigma_gram = sigma_gram(family, rank).ok_or_else(|| Error::UnsupportedRootSystem {
            family: family.to_string(),
            rank,
        })?;
        let gram: Vec<Vec<i64>> = sigma_gram
            .iter()
            .map(|row| row.iter().map(|g| 4 * g).collect())
            .collect();
        let gram_inv = invert_exact(&gram)
            .ok_or_else(|| Error::Configuration("singular Gram matrix".into()))?;

        let positive_coords = positive_roots(&sigma_gram);
        let short = positive_coords
            .iter()
            .map(|c| quad(&sigma_gram, c))
            .min()
            .unwrap_or(2);
        let positive: Vec<PositiveRoot> = positive_coords
            .into_iter()
            .map(|coords| {
                let sigma_norm_sq = quad(&sigma_gram, &coords);
                PositiveRoot {
                    orbit: usize::from(sigma_norm_sq != short),
                    coords,
                    sigma_norm_sq,
                }
            })
            .collect();
        let num_orbits = 1 + positive.iter().map(|r| r.orbit).max().unwrap_or(0);

        let mut rho = vec![Rational64::zero(); rank];
        let mut rho_vee = vec![Rational64::zero(); rank];
        for root in &positive {
            // β = α/2 over B; α∨ = 2α/(α,α).
            let half = Rational64::new(1, 4);
            let coroot = Rational64::new(2, root.norm_sq());
            for i in 0..rank {
                let c = Rational64::from_integer(root.coords[i]);
                rho[i] += half * c;
                rho_vee[i] += coroot * c;
            }
        }

        Ok(RootSystem {
            family,
            rank,
            gram,
            gram_inv,
            positive,
            rho,
            rho_vee,
            num_orbits,
        })
    }

    /// Parses labels like `A2`, `b3`, `G2`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let unsupported = || Error::UnsupportedRootSystem {
            family: label.chars().take(1).collect(),
            rank: label.get(1..).and_then(|r| r.parse().ok()).unwrap_or(0),
        };
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(unsupported()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        Self::new(family, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Gram matrix of (·,·) over B.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &[Vec<Rational64>] {
        &self.gram_inv
    }

    /// Σ₊, one entry per root; the doubled root 2β ∈ R₊ shares the entry.
    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    pub fn num_orbits(&self) -> usize {
        self.num_orbits
    }

    /// Coordinates over B of the i-th simple root of R.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Index into [`positive_roots`](Self::positive_roots) of the i-th simple root.
    pub fn simple_index(&self, i: usize) -> usize {
        let e = self.simple_root(i);
        self.positive
            .iter()
            .position(|r| r.coords == e)
            .expect("simple roots are positive")
    }

    pub fn rho(&self) -> &[Rational64] {
        &self.rho
    }

    pub fn rho_vee(&self) -> &[Rational64] {
        &self.rho_vee
    }

    /// Exact (u, v) for integer or rational coordinate vectors over B.
    pub fn inner_exact(&self, u: &[Rational64], v: &[Rational64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += u[i] * Rational64::from_integer(self.gram[i][j]) * v[j];
            }
        }
        acc
    }

    /// (u, v) for integer coordinate vectors over B.
    pub fn inner_int(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += u[i] * self.gram[i][j] * v[j];
            }
        }
        acc
    }

    /// Row vector v ↦ (v, α) for an integer vector α over B.
    pub fn gram_times(&self, alpha: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.gram[i][j] * alpha[j]).sum())
            .collect()
    }

    /// (α, ρ∨) for a root given over B; an integer for every root.
    pub fn rho_vee_pairing(&self, alpha: &[i64]) -> i64 {
        let a: Vec<Rational64> = alpha.iter().map(|&c| Rational64::from_integer(c)).collect();
        let p = self.inner_exact(&a, &self.rho_vee);
        debug_assert!(p.is_integer());
        p.to_integer()
    }

    /// (λ, μ) with λ complex and μ an integer lattice vector over B.
    pub fn inner_lattice<T: Real>(&self, lambda: &Covector<T>, mu: &[i64]) -> Cx<T> {
        let gm = self.gram_times(mu);
        lambda
            .coords
            .iter()
            .zip(gm)
            .fold(Cx::new(T::zero(), T::zero()), |acc, (c, g)| acc + c * T::from_int(g))
    }

    /// Bilinear (λ, μ) of two complex covectors.
    pub fn inner<T: Real>(&self, lambda: &Covector<T>, mu: &Covector<T>) -> Cx<T> {
        let mut acc = Cx::new(T::zero(), T::zero());
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc = acc + lambda.coords[i] * mu.coords[j] * T::from_int(self.gram[i][j]);
            }
        }
        acc
    }

    /// Hermitian norm² (λ, λ̄).
    pub fn norm_sq<T: Real>(&self, lambda: &Covector<T>) -> T {
        let mut acc = Cx::new(T::zero(), T::zero());
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc = acc + lambda.coords[i] * lambda.coords[j].conj() * T::from_int(self.gram[i][j]);
            }
        }
        acc.re
    }

    /// (λ, α∨) = 2(λ, α)/(α, α) for a nonzero integer vector α over B.
    pub fn pairing<T: Real>(&self, lambda: &Covector<T>, alpha: &[i64]) -> Result<Cx<T>> {
        let nsq = self.inner_int(alpha, alpha);
        if nsq == 0 {
            return Err(Error::Domain("pairing against the zero root".into()));
        }
        Ok(self.inner_lattice(lambda, alpha) * T::lit(2.0) / T::from_int(nsq))
    }

    /// (λ, α∨) for the doubled positive root stored at `index`.
    pub fn coroot_pairing<T: Real>(&self, lambda: &Covector<T>, index: usize) -> Cx<T> {
        let root = &self.positive[index];
        self.inner_lattice(lambda, &root.coords) * T::lit(2.0) / T::from_int(root.norm_sq())
    }

    /// (λ, α_i∨) for the simple roots α_i ∈ B.
    pub fn simple_pairings<T: Real>(&self, lambda: &Covector<T>) -> Vec<Cx<T>> {
        (0..self.rank)
            .map(|i| self.coroot_pairing(lambda, self.simple_index(i)))
            .collect()
    }

    /// Whether (β_i, β_j∨) ∈ ℤ for all roots, the integrality axiom.
    pub fn is_integral(&self) -> bool {
        self.positive.iter().all(|a| {
            self.positive.iter().all(|b| {
                let num = 2 * self.inner_int(&a.coords, &b.coords);
                num % b.norm_sq() == 0
            })
        })
    }

    /// Distinct squared lengths of the roots of Σ.
    pub fn sigma_lengths(&self) -> BTreeSet<i64> {
        self.positive.iter().map(|r| r.sigma_norm_sq).collect()
    }

    pub fn weyl_group(&self) -> WeylGroup {
        WeylGroup::generate(self)
    }
}

/// Gram matrices over Π with short roots of squared length 2.
fn sigma_gram(family: Family, rank: usize) -> Option<Vec<Vec<i64>>> {
    let chain = |diag: Vec<i64>, off: Vec<i64>| {
        let n = diag.len();
        let mut g = vec![vec![0; n]; n];
        for i in 0..n {
            g[i][i] = diag[i];
        }
        for (i, &o) in off.iter().enumerate() {
            g[i][i + 1] = o;
            g[i + 1][i] = o;
        }
        g
    };
    match (family, rank) {
        (Family::A, 1..=4) => Some(chain(vec![2; rank], vec![-1; rank - 1])),
        (Family::B, 2 | 3) => {
            let mut diag = vec![4; rank];
            diag[rank - 1] = 2;
            Some(chain(diag, vec![-2; rank - 1]))
        }
        (Family::C, 2 | 3) => {
            let mut diag = vec![2; rank];
            diag[rank - 1] = 4;
            let mut off = vec![-1; rank - 1];
            off[rank - 2] = -2;
            Some(chain(diag, off))
        }
        (Family::D, 4) => {
            let mut g = vec![vec![0; 4]; 4];
            for i in 0..4 {
                g[i][i] = 2;
            }
            for &j in &[0, 2, 3] {
                g[1][j] = -1;
                g[j][1] = -1;
            }
            Some(g)
        }
        (Family::G, 2) => Some(vec![vec![2, -3], vec![-3, 6]]),
        _ => None,
    }
}

fn quad(g: &[Vec<i64>], v: &[i64]) -> i64 {
    let n = v.len();
    let mut acc = 0;
    for i in 0..n {
        for j in 0..n {
            acc += v[i] * g[i][j] * v[j];
        }
    }
    acc
}

/// Closure of the simple roots under simple reflections, keeping positives.
fn positive_roots(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while let Some(v) = queue.pop() {
        if !found.insert(v.clone()) {
            continue;
        }
        for j in 0..n {
            let gv: i64 = (0..n).map(|k| g[j][k] * v[k]).sum();
            let pair = 2 * gv / g[j][j];
            let mut w = v.clone();
            w[j] -= pair;
            if w.iter().all(|&c| c >= 0) && w.iter().any(|&c| c > 0) && !found.contains(&w) {
                queue.push(w);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

fn invert_exact(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational64::one() } else { Rational64::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}
