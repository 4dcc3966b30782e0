//! Entanglement and nonlocality quantifiers: analytic X-state concurrence,
//! the Wootters spin-flip oracle, negativity, and the Horodecki CHSH
//! parameter.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::Matrix4c;
use crate::thermal::{hermiticity_deviation, XState};

/// Tolerance for accepting a matrix as a valid density matrix.
const STATE_TOL: f64 = 1e-8;

/// The two candidate concurrence branches of an X state.
///
/// `c1 = |rho14| - sqrt(rho22 rho33)` probes the outer block,
/// `c2 = |rho23| - sqrt(rho11 rho44)` the inner one. For a physical X state
/// at most one branch is positive and both are bounded by 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrencePair {
    pub c1: f64,
    pub c2: f64,
}

pub fn concurrence_branches(x: &XState) -> ConcurrencePair {
    ConcurrencePair {
        c1: x.rho14.norm() - (x.rho22 * x.rho33).max(0.0).sqrt(),
        c2: x.rho23.norm() - (x.rho11 * x.rho44).max(0.0).sqrt(),
    }
}

/// Analytic X-state concurrence, `2 max{c1, c2, 0}`.
pub fn concurrence_x(x: &XState) -> f64 {
    let b = concurrence_branches(x);
    2.0 * b.c1.max(b.c2).max(0.0)
}

fn validate_density(rho: &Matrix4c) -> Result<()> {
    let herm = hermiticity_deviation(rho);
    if !herm.is_finite() || herm > STATE_TOL {
        return Err(Error::InvalidState(format!(
            "not Hermitian (max deviation {herm:.3e})"
        )));
    }
    let trace: Complex64 = rho.diagonal().iter().sum();
    if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
        return Err(Error::InvalidState(format!("trace {trace} is not 1")));
    }
    let min_eig = rho
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_eig < -STATE_TOL {
        return Err(Error::InvalidState(format!(
            "not positive semidefinite (min eigenvalue {min_eig:.3e})"
        )));
    }
    Ok(())
}

fn pauli() -> [Matrix2<Complex64>; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix2::new(o, one, one, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(one, o, o, -one),
    ]
}

/// sigma_y x sigma_y, the two-qubit spin-flip operator (real antidiagonal).
fn spin_flip() -> Matrix4c {
    let o = Complex64::new(0.0, 0.0);
    let p = Complex64::new(1.0, 0.0);
    let n = Complex64::new(-1.0, 0.0);
    Matrix4c::new(o, o, o, n, o, o, p, o, o, p, o, o, n, o, o, o)
}

/// A factor F with F F^dag = rho, from the Hermitian eigendecomposition
/// (columns are eigenvectors scaled by the square roots of the clamped
/// eigenvalues).
fn psd_factor(m: &Matrix4c) -> Result<Matrix4c> {
    let eig = SymmetricEigen::try_new(*m, f64::EPSILON, 2048)
        .ok_or_else(|| Error::Numeric("eigensolver failed to converge".into()))?;
    let mut f = eig.eigenvectors;
    for i in 0..4 {
        let w = Complex64::new(eig.eigenvalues[i].max(0.0).sqrt(), 0.0);
        for a in 0..4 {
            f[(a, i)] *= w;
        }
    }
    Ok(f)
}

/// Wootters concurrence, `max{0, l1 - l2 - l3 - l4}` with `l_i` the
/// decreasing square roots of the eigenvalues of
/// `rho (sy x sy) rho* (sy x sy)`.
///
/// Those square roots equal the singular values of `F^t (sy x sy) F` for any
/// factor `F F^dag = rho`, which keeps the computation on a Hermitian
/// eigensolver plus one SVD. Going through `sqrt(rho)` and the eigenvalues
/// of the similar Hermitian product instead squares the small lambdas and
/// costs half the floating-point digits near pure states.
pub fn concurrence_wootters(rho: &Matrix4c) -> Result<f64> {
    validate_density(rho)?;
    let s = spin_flip();
    let f = psd_factor(rho)?;
    let m = f.transpose() * s * f;
    let svd = nalgebra::linalg::SVD::try_new(m, false, false, f64::EPSILON, 2048)
        .ok_or_else(|| Error::Numeric("SVD failed to converge".into()))?;
    let mut lambdas: Vec<f64> = svd.singular_values.iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Partial transpose over the second qubit: transpose each 2x2 block.
pub fn partial_transpose(rho: &Matrix4c) -> Matrix4c {
    let mut out = *rho;
    for a in 0..2 {
        for b in 0..2 {
            out[(2 * a, 2 * b + 1)] = rho[(2 * a + 1, 2 * b)];
            out[(2 * a + 1, 2 * b)] = rho[(2 * a, 2 * b + 1)];
        }
    }
    out
}

/// Negativity: sum of |negative eigenvalues| of the partial transpose.
/// Ranges from 0 (PPT/separable for two qubits) to 1/2 (Bell state).
pub fn negativity(rho: &Matrix4c) -> Result<f64> {
    validate_density(rho)?;
    let pt = partial_transpose(rho);
    let neg: f64 = pt
        .symmetric_eigenvalues()
        .iter()
        .filter(|e| **e < 0.0)
        .map(|e| -e)
        .sum();
    Ok(neg)
}

/// Correlation matrix `T_ij = Tr[rho sigma_i x sigma_j]`, i,j in {x,y,z}.
pub fn correlation_matrix(rho: &Matrix4c) -> Matrix3<f64> {
    let p = pauli();
    let mut t = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let op = p[i].kronecker(&p[j]);
            let mut tr = Complex64::new(0.0, 0.0);
            for a in 0..4 {
                for b in 0..4 {
                    tr += rho[(a, b)] * op[(b, a)];
                }
            }
            t[(i, j)] = tr.re;
        }
    }
    t
}

/// Horodecki CHSH parameter: the sum of the two largest eigenvalues of
/// `T^t T`. The CHSH inequality is violated iff the value exceeds 1.
pub fn chsh_parameter(rho: &Matrix4c) -> Result<f64> {
    validate_density(rho)?;
    let t = correlation_matrix(rho);
    let m = t.transpose() * t;
    let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(eig[0] + eig[1])
}
