//! Gibbs states of the dimer model: closed-form X-state elements with
//! low-temperature stability, the partition function, and an independent
//! dense-matrix oracle.

use nalgebra::linalg::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{ensure_temperature, Error, Result};
use crate::model::{derived_quantities, GeneralCouplings, Matrix4c};

/// Thermal X-state: the six independent entries of exp(-H/T)/Z.
///
/// Built from energy-shifted Boltzmann weights `w_i = exp(-(E_i - E_min)/T)`
/// normalized by their sum, so no overflow occurs for any T > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    /// Outer coherence, entry (1,4); (4,1) is its conjugate.
    pub rho14: Complex64,
    /// Inner coherence, entry (2,3); (3,2) is its conjugate.
    pub rho23: Complex64,
    /// Log of the sum of shifted Boltzmann weights.
    pub log_z_shifted: f64,
    pub temperature: f64,
}

impl XState {
    /// Dense 4x4 matrix form.
    pub fn to_matrix(&self) -> Matrix4c {
        let mut m = Matrix4c::from_element(Complex64::new(0.0, 0.0));
        m[(0, 0)] = Complex64::new(self.rho11, 0.0);
        m[(1, 1)] = Complex64::new(self.rho22, 0.0);
        m[(2, 2)] = Complex64::new(self.rho33, 0.0);
        m[(3, 3)] = Complex64::new(self.rho44, 0.0);
        m[(0, 3)] = self.rho14;
        m[(3, 0)] = self.rho14.conj();
        m[(1, 2)] = self.rho23;
        m[(2, 1)] = self.rho23.conj();
        m
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.rho11, self.rho22, self.rho33, self.rho44]
    }
}

/// The four block energies `(Jzz + e1, Jzz - e1, -Jzz + e2, -Jzz - e2)`.
///
/// These are the eigenvalues of the Hamiltonian: the outer {|00>, |11>}
/// block contributes `Jzz +- epsilon1`, the inner {|01>, |10>} block
/// `-Jzz +- epsilon2`.
pub fn block_energies(g: &GeneralCouplings) -> [f64; 4] {
    let a = derived_quantities(g);
    [
        g.j_zz + a.epsilon1,
        g.j_zz - a.epsilon1,
        -g.j_zz + a.epsilon2,
        -g.j_zz - a.epsilon2,
    ]
}

/// Closed-form Gibbs state exp(-H/T)/Z.
pub fn thermal_state(g: &GeneralCouplings, t: f64) -> Result<XState> {
    g.check_finite()?;
    ensure_temperature(t)?;
    let a = derived_quantities(g);
    let [e1p, e1m, e2p, e2m] = block_energies(g);
    let m = e1p.min(e1m).min(e2p).min(e2m);
    // All weights in (0, 1], the ground block at exactly 1.
    let w1p = ((m - e1p) / t).exp();
    let w1m = ((m - e1m) / t).exp();
    let w2p = ((m - e2p) / t).exp();
    let w2m = ((m - e2m) / t).exp();
    let zs = w1p + w1m + w2p + w2m;

    // cosh/sinh combinations like (w1m + w1p) -/+ (w1m - w1p) cos(vt) cancel
    // catastrophically when the angle degenerates (e.g. the pure-field outer
    // block has cos(vt) = 1 and a true rho11 of order w1p). The half-angle
    // form keeps every term nonnegative:
    //   rho11 = w1m sin^2(vt/2) + w1p cos^2(vt/2), etc.
    let (sin_hv, cos_hv) = (0.5 * a.vartheta).sin_cos();
    let (sin_ht, cos_ht) = (0.5 * a.theta).sin_cos();
    let (sv2, cv2) = (sin_hv * sin_hv, cos_hv * cos_hv);
    let (st2, ct2) = (sin_ht * sin_ht, cos_ht * cos_ht);
    let dif1 = w1m - w1p;
    let dif2 = w2m - w2p;
    let sin_vt = 2.0 * sin_hv * cos_hv;
    let sin_th = 2.0 * sin_ht * cos_ht;

    let rho11 = (w1m * sv2 + w1p * cv2) / zs;
    let rho44 = (w1m * cv2 + w1p * sv2) / zs;
    let rho22 = (w2m * st2 + w2p * ct2) / zs;
    let rho33 = (w2m * ct2 + w2p * st2) / zs;
    let rho14 = -Complex64::from_polar(dif1 * sin_vt / (2.0 * zs), -a.phi1);
    let rho23 = -Complex64::from_polar(dif2 * sin_th / (2.0 * zs), -a.phi2);

    Ok(XState {
        rho11,
        rho22,
        rho33,
        rho44,
        rho14,
        rho23,
        log_z_shifted: zs.ln(),
        temperature: t,
    })
}

/// Partition function Z = Tr exp(-H/T)
///   = 2 e^{-Jzz/T} cosh(e1/T) + 2 e^{Jzz/T} cosh(e2/T).
///
/// Errors with a pointer to [`log_partition_function`] when the direct value
/// overflows f64.
pub fn partition_function(g: &GeneralCouplings, t: f64) -> Result<f64> {
    g.check_finite()?;
    ensure_temperature(t)?;
    let a = derived_quantities(g);
    let z = 2.0 * (-g.j_zz / t).exp() * (a.epsilon1 / t).cosh()
        + 2.0 * (g.j_zz / t).exp() * (a.epsilon2 / t).cosh();
    if z.is_finite() {
        Ok(z)
    } else {
        Err(Error::Numeric(
            "partition function overflows f64; use log_partition_function".into(),
        ))
    }
}

/// log Z, stable for any T > 0.
pub fn log_partition_function(g: &GeneralCouplings, t: f64) -> Result<f64> {
    g.check_finite()?;
    ensure_temperature(t)?;
    let [e1p, e1m, e2p, e2m] = block_energies(g);
    let m = e1p.min(e1m).min(e2p).min(e2m);
    let zs = ((m - e1p) / t).exp()
        + ((m - e1m) / t).exp()
        + ((m - e2p) / t).exp()
        + ((m - e2m) / t).exp();
    Ok(zs.ln() - m / t)
}

const HERMITICITY_TOL: f64 = 1e-9;

/// Independent Gibbs-state oracle: eigendecompose H, exponentiate shifted
/// eigenvalues, reassemble and normalize.
pub fn thermal_state_oracle(h: &Matrix4c, t: f64) -> Result<Matrix4c> {
    ensure_temperature(t)?;
    let dev = hermiticity_deviation(h);
    if !dev.is_finite() || dev > HERMITICITY_TOL {
        return Err(Error::InvalidParameter(format!(
            "matrix is not Hermitian (max |H - H^dag| entry = {dev:.3e})"
        )));
    }
    let eig = SymmetricEigen::try_new(*h, f64::EPSILON, 2048)
        .ok_or_else(|| Error::Numeric("eigensolver failed to converge".into()))?;
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let weights = eig.eigenvalues.map(|e| ((min - e) / t).exp());
    let z: f64 = weights.iter().sum();
    let mut rho = Matrix4c::from_element(Complex64::new(0.0, 0.0));
    for i in 0..4 {
        let v = eig.eigenvectors.column(i);
        let w = Complex64::new(weights[i] / z, 0.0);
        for a in 0..4 {
            for b in 0..4 {
                rho[(a, b)] += w * v[a] * v[b].conj();
            }
        }
    }
    Ok(rho)
}

pub(crate) fn hermiticity_deviation(m: &Matrix4c) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}
