use crate::error::{Error, Result};
use crate::factors::scaling_data;
use crate::rootsystem::{ChamberPoint, Covector, RootSystem};
use crate::scalar::{Cx, Real};
use crate::series::{Character, MultiplicityFunction};

/// The two Schrödinger operators of the limit transition.
#[derive(Debug, Clone, PartialEq)]
pub enum Hamiltonian<T> {
    /// Δ − Σ_{α∈R₊} k_α(k_α−1)(α,α) / (4 sinh²(α/2)).
    CalogeroMoser(MultiplicityFunction<T>),
    /// Δ − 2 Σ_{α∈B} l_α² e^α.
    Toda(Character<T>),
}

impl<T: Real> Hamiltonian<T> {
    /// The potential at a. Calogero-Moser needs a ∈ A₊.
    pub fn potential(&self, rs: &RootSystem, a: &ChamberPoint<T>) -> Result<T> {
        match self {
            Hamiltonian::CalogeroMoser(k) => {
                let mut v = T::zero();
                for (i, root) in rs.positive_roots().iter().enumerate() {
                    let kk = k.of_root(rs, i);
                    let t = a.eval_lattice(&root.coords);
                    if !(t > T::zero()) {
                        return Err(Error::Domain("Calogero-Moser potential outside A₊".into()));
                    }
                    let s = (t * T::lit(0.5)).sinh();
                    v = v + kk * (kk - T::one()) * T::from_int(root.norm_sq()) / (T::lit(4.0) * s * s);
                }
                Ok(v)
            }
            Hamiltonian::Toda(psi) => Ok((0..rs.rank())
                .map(|i| T::lit(2.0) * psi.l_sq(i) * a.x[i].exp())
                .sum()),
        }
    }
}

/// Lower-triangular L with L Lᵀ = G, the Gram matrix over B. Column k is the
/// change of root coordinates along the k-th orthonormal direction ξ_k.
fn cholesky<T: Real>(rs: &RootSystem) -> Vec<Vec<T>> {
    let n = rs.rank();
    let g = rs.gram();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s = (0..j).fold(T::from_int(g[i][j]), |acc, p| acc - l[i][p] * l[j][p]);
            l[i][j] = if i == j { s.sqrt() } else { s / l[j][j] };
        }
    }
    l
}

fn stencil_directions<T: Real>(rs: &RootSystem) -> Vec<Vec<T>> {
    let l = cholesky::<T>(rs);
    let n = rs.rank();
    (0..n).map(|k| (0..n).map(|i| l[i][k]).collect()).collect()
}

fn fd_laplacian<T: Real>(
    phi: &dyn Fn(&ChamberPoint<T>) -> Result<Cx<T>>,
    a: &ChamberPoint<T>,
    dirs: &[Vec<T>],
    h: T,
) -> Result<(Cx<T>, Cx<T>)> {
    let centre = phi(a)?;
    let mut lap = Cx::new(T::zero(), T::zero());
    for d in dirs {
        let plus = ChamberPoint::new(a.x.iter().zip(d).map(|(&x, &e)| x + h * e).collect());
        let minus = ChamberPoint::new(a.x.iter().zip(d).map(|(&x, &e)| x - h * e).collect());
        lap = lap + (phi(&plus)? + phi(&minus)? - centre * T::lit(2.0)) / (h * h);
    }
    Ok((lap, centre))
}

/// Hφ(a) with a central-difference Laplacian in orthonormal coordinates
/// (2n+1 evaluations of φ) and the exact potential at a.
pub fn apply_hamiltonian_fd<T: Real>(
    rs: &RootSystem,
    which: &Hamiltonian<T>,
    phi: &dyn Fn(&ChamberPoint<T>) -> Result<Cx<T>>,
    a: &ChamberPoint<T>,
    h: T,
) -> Result<Cx<T>> {
    if !(h > T::zero()) {
        return Err(Error::Configuration(format!("step h = {h} must be positive")));
    }
    if a.rank() != rs.rank() {
        return Err(Error::Configuration("point rank mismatch".into()));
    }
    let dirs = stencil_directions::<T>(rs);
    if let Hamiltonian::CalogeroMoser(_) = which {
        let reach = dirs.iter().map(|d| d.iter().fold(T::zero(), |m, v| m.max(v.abs()))).fold(T::zero(), T::max);
        if a.x.iter().any(|&x| x - h * reach <= T::zero()) {
            return Err(Error::Domain("finite-difference stencil leaves A₊".into()));
        }
    }
    let (lap, centre) = fd_laplacian(phi, a, &dirs, h)?;
    Ok(lap - centre * which.potential(rs, a)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaRow<T> {
    pub m: T,
    /// H_CM(k_M) φ_M at a_M, with φ_M(a_M) = φ(a).
    pub lhs: Cx<T>,
    /// H_T φ at a.
    pub rhs: Cx<T>,
    pub rel_err: T,
}

/// Compares H_CM(k_M) applied to φ_M(b) := φ(w₀(log b − Mρ∨)) at a_M with
/// H_T φ(a), for φ(a) = e^{λ(log a)}.
///
/// The Toda stencil is the image of the Calogero-Moser stencil under the
/// change of variables, so both Laplacians sample identical values and the
/// difference isolates the potentials.
pub fn lemma_check<T: Real>(
    rs: &RootSystem,
    lambda: &Covector<T>,
    a: &ChamberPoint<T>,
    ms: &[T],
    h: T,
) -> Result<Vec<LemmaRow<T>>> {
    let w0 = rs.weyl_group().longest().clone();
    let phi = |p: &ChamberPoint<T>| -> Result<Cx<T>> { Ok(p.eval(lambda).exp()) };
    let dirs = stencil_directions::<T>(rs);
    let rotated: Vec<Vec<T>> = dirs
        .iter()
        .map(|d| w0.act_point(rs, &ChamberPoint::new(d.clone())).x)
        .collect();
    let (lap_t, centre) = fd_laplacian(&phi, a, &rotated, h)?;
    let rhs = lap_t - centre * Hamiltonian::Toda(Character::standard(rs.rank())).potential(rs, a)?;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let sd = scaling_data(rs, m)?;
        let a_m = sd.a_shifted(rs, a);
        let two_m = T::lit(2.0) * m;
        let phi_m = |b: &ChamberPoint<T>| -> Result<Cx<T>> {
            let shifted = ChamberPoint::new(b.x.iter().map(|&x| x - two_m).collect());
            phi(&w0.act_point(rs, &shifted))
        };
        let lhs = apply_hamiltonian_fd(rs, &Hamiltonian::CalogeroMoser(sd.k_m.clone()), &phi_m, &a_m, h)?;
        rows.push(LemmaRow {
            m,
            lhs,
            rhs,
            rel_err: (lhs - rhs).norm() / rhs.norm(),
        });
    }
    Ok(rows)
}
