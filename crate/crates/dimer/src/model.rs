//! Coupling parameters, unit conventions, derived angles/energies, and the
//! 4x4 dimer Hamiltonian.
//!
//! The pair Hamiltonian in the Pauli (sigma) convention is
//!
//! ```text
//! H = (w+/2) sz x I + (w-/2) I x sz
//!   + Jxx sx sx + Jxy sx sy + Jyx sy sx + Jyy sy sy + Jzz sz sz
//! ```
//!
//! with `Jxx = (J+r)/2`, `Jyy = (J-r)/2`, `Jxy = (K-D)/2`, `Jyx = (K+D)/2`
//! and `w+- = omega +- delta`. Energies and temperatures share one arbitrary
//! unit with hbar = kB = 1.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// 4x4 complex matrix in the ordered product basis {|00>, |01>, |10>, |11>}.
pub type Matrix4c = Matrix4<Complex64>;

/// How the two magnetic moments align with the external field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    /// Parallel moments: w+ = w- = B, i.e. omega = B, delta = 0.
    Symmetric,
    /// Antiparallel moments: w+ = -w- = B, i.e. omega = 0, delta = B.
    Antisymmetric,
}

impl Category {
    pub fn flipped(self) -> Self {
        match self {
            Category::Symmetric => Category::Antisymmetric,
            Category::Antisymmetric => Category::Symmetric,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Symmetric => "symmetric",
            Category::Antisymmetric => "antisymmetric",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(Category::Symmetric),
            "antisymmetric" => Ok(Category::Antisymmetric),
            other => Err(Error::InvalidParameter(format!(
                "unknown category {other:?} (expected \"symmetric\" or \"antisymmetric\")"
            ))),
        }
    }
}

/// Which operator normalization the coupling constants refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Couplings multiply Pauli bilinears directly (the general model form).
    Pauli,
    /// Couplings multiply spin-1/2 bilinears, s = sigma/2; bilinear couplings
    /// pick up a factor 1/4 on conversion, fields are unchanged.
    Spin,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Pauli => "pauli",
            Convention::Spin => "spin",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pauli" => Ok(Convention::Pauli),
            "spin" => Ok(Convention::Spin),
            other => Err(Error::InvalidParameter(format!(
                "unknown convention {other:?} (expected \"pauli\" or \"spin\")"
            ))),
        }
    }
}

/// The five exchange couplings (J, D, r, K, J_zz) of the pair form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCouplings {
    /// Isotropic transverse exchange.
    pub j: f64,
    /// Dzyaloshinskii-Moriya (antisymmetric) exchange, z component.
    pub d: f64,
    /// XY anisotropy.
    pub r: f64,
    /// Symmetric off-diagonal exchange.
    pub k: f64,
    /// Ising (zz) exchange.
    pub j_zz: f64,
}

impl PairCouplings {
    pub fn new(j: f64, d: f64, r: f64, k: f64, j_zz: f64) -> Result<Self> {
        let c = PairCouplings { j, d, r, k, j_zz };
        c.check_finite()?;
        Ok(c)
    }

    pub fn zero() -> Self {
        PairCouplings {
            j: 0.0,
            d: 0.0,
            r: 0.0,
            k: 0.0,
            j_zz: 0.0,
        }
    }

    fn check_finite(&self) -> Result<()> {
        ensure_finite("J", self.j)?;
        ensure_finite("D", self.d)?;
        ensure_finite("r", self.r)?;
        ensure_finite("K", self.k)?;
        ensure_finite("J_zz", self.j_zz)
    }
}

/// The seven real parameters of the general traceless pair model, Pauli
/// convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralCouplings {
    pub j: f64,
    pub d: f64,
    pub r: f64,
    pub k: f64,
    pub j_zz: f64,
    /// Mean field splitting: omega = (w+ + w-)/2.
    pub omega: f64,
    /// Field imbalance: delta = (w+ - w-)/2.
    pub delta: f64,
}

impl GeneralCouplings {
    pub fn new(j: f64, d: f64, r: f64, k: f64, j_zz: f64, omega: f64, delta: f64) -> Result<Self> {
        let g = GeneralCouplings {
            j,
            d,
            r,
            k,
            j_zz,
            omega,
            delta,
        };
        g.check_finite()?;
        Ok(g)
    }

    pub fn zero() -> Self {
        GeneralCouplings {
            j: 0.0,
            d: 0.0,
            r: 0.0,
            k: 0.0,
            j_zz: 0.0,
            omega: 0.0,
            delta: 0.0,
        }
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        ensure_finite("J", self.j)?;
        ensure_finite("D", self.d)?;
        ensure_finite("r", self.r)?;
        ensure_finite("K", self.k)?;
        ensure_finite("J_zz", self.j_zz)?;
        ensure_finite("omega", self.omega)?;
        ensure_finite("delta", self.delta)
    }

    pub fn j_xx(&self) -> f64 {
        0.5 * (self.j + self.r)
    }

    pub fn j_yy(&self) -> f64 {
        0.5 * (self.j - self.r)
    }

    pub fn j_xy(&self) -> f64 {
        0.5 * (self.k - self.d)
    }

    pub fn j_yx(&self) -> f64 {
        0.5 * (self.k + self.d)
    }

    pub fn omega_plus(&self) -> f64 {
        self.omega + self.delta
    }

    pub fn omega_minus(&self) -> f64 {
        self.omega - self.delta
    }
}

/// Convert cartesian spin-convention couplings to the Pauli pair form.
///
/// The input names a Hamiltonian written with spin-1/2 operators,
/// `a_xx sx sx + a_yy sy sy + a_xy sx sy + a_yx sy sx + c_zz sz sz
///  + h (sz1 + sz2) + dh (sz1 - sz2)`.
pub fn couplings_from_spin_convention(
    a_xx: f64,
    a_yy: f64,
    a_xy: f64,
    a_yx: f64,
    c_zz: f64,
    h: f64,
    dh: f64,
) -> Result<GeneralCouplings> {
    GeneralCouplings::new(
        0.25 * (a_xx + a_yy),
        0.25 * (a_yx - a_xy),
        0.25 * (a_xx - a_yy),
        0.25 * (a_xy + a_yx),
        0.25 * c_zz,
        h,
        dh,
    )
}

/// A dimer model: exchange couplings, field-coupling category, field strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerSpec {
    pub category: Category,
    pub convention: Convention,
    pub couplings: PairCouplings,
    /// External field strength B.
    pub field: f64,
}

impl DimerSpec {
    pub fn new(
        category: Category,
        convention: Convention,
        couplings: PairCouplings,
        field: f64,
    ) -> Result<Self> {
        couplings.check_finite()?;
        ensure_finite("B", field)?;
        Ok(DimerSpec {
            category,
            convention,
            couplings,
            field,
        })
    }

    /// Isotropic exchange of strength `j` between spin-1/2 moments,
    /// `j (s1 . s2) + B (sz1 +- sz2)`. Antiferromagnetic for j > 0.
    pub fn heisenberg(j: f64, category: Category, field: f64) -> Result<Self> {
        let g = couplings_from_spin_convention(j, j, 0.0, 0.0, j, 0.0, 0.0)?;
        ensure_finite("B", field)?;
        Ok(DimerSpec {
            category,
            convention: Convention::Pauli,
            couplings: PairCouplings {
                j: g.j,
                d: g.d,
                r: g.r,
                k: g.k,
                j_zz: g.j_zz,
            },
            field,
        })
    }

    /// Anisotropic XY exchange, `(1+gamma) sx sx + (1-gamma) sy sy + B (sz1 +- sz2)`.
    pub fn xy(gamma: f64, category: Category, field: f64) -> Result<Self> {
        let g = couplings_from_spin_convention(1.0 + gamma, 1.0 - gamma, 0.0, 0.0, 0.0, 0.0, 0.0)?;
        ensure_finite("B", field)?;
        Ok(DimerSpec {
            category,
            convention: Convention::Pauli,
            couplings: PairCouplings {
                j: g.j,
                d: g.d,
                r: g.r,
                k: g.k,
                j_zz: g.j_zz,
            },
            field,
        })
    }

    /// Explicit Pauli-convention couplings.
    pub fn general(couplings: PairCouplings, category: Category, field: f64) -> Result<Self> {
        DimerSpec::new(category, Convention::Pauli, couplings, field)
    }

    /// Same dimer at a different field strength.
    pub fn with_field(mut self, field: f64) -> Self {
        self.field = field;
        self
    }

    /// Normalize to the Pauli convention (bilinears divided by 4).
    pub fn to_pauli(self) -> Self {
        match self.convention {
            Convention::Pauli => self,
            Convention::Spin => DimerSpec {
                category: self.category,
                convention: Convention::Pauli,
                couplings: PairCouplings {
                    j: 0.25 * self.couplings.j,
                    d: 0.25 * self.couplings.d,
                    r: 0.25 * self.couplings.r,
                    k: 0.25 * self.couplings.k,
                    j_zz: 0.25 * self.couplings.j_zz,
                },
                field: self.field,
            },
        }
    }
}

/// Expand a dimer spec into the seven general-model parameters.
pub fn compile_spec(spec: &DimerSpec) -> GeneralCouplings {
    let s = spec.to_pauli();
    let (omega, delta) = match s.category {
        Category::Symmetric => (s.field, 0.0),
        Category::Antisymmetric => (0.0, s.field),
    };
    GeneralCouplings {
        j: s.couplings.j,
        d: s.couplings.d,
        r: s.couplings.r,
        k: s.couplings.k,
        j_zz: s.couplings.j_zz,
        omega,
        delta,
    }
}

/// Block energies and mixing angles of the general model.
///
/// `epsilon1/vartheta/phi1` describe the outer {|00>, |11>} block,
/// `epsilon2/theta/phi2` the inner {|01>, |10>} block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedAngles {
    pub epsilon1: f64,
    pub epsilon2: f64,
    pub vartheta: f64,
    pub theta: f64,
    pub phi1: f64,
    pub phi2: f64,
}

/// Derived energies and angles: epsilon1 = sqrt(omega^2 + r^2 + K^2),
/// epsilon2 = sqrt(delta^2 + J^2 + D^2), with two-argument arctangents for
/// the angles. Degenerate blocks (epsilon = 0) get angle pi/2 and phase 0;
/// the Boltzmann weights do not depend on them there.
pub fn derived_quantities(g: &GeneralCouplings) -> DerivedAngles {
    let perp1 = (g.r * g.r + g.k * g.k).sqrt();
    let perp2 = (g.j * g.j + g.d * g.d).sqrt();
    let epsilon1 = (g.omega * g.omega + g.r * g.r + g.k * g.k).sqrt();
    let epsilon2 = (g.delta * g.delta + g.j * g.j + g.d * g.d).sqrt();
    let vartheta = if epsilon1 == 0.0 {
        FRAC_PI_2
    } else {
        perp1.atan2(g.omega)
    };
    let theta = if epsilon2 == 0.0 {
        FRAC_PI_2
    } else {
        perp2.atan2(g.delta)
    };
    let phi1 = if perp1 == 0.0 { 0.0 } else { g.k.atan2(g.r) };
    let phi2 = if perp2 == 0.0 { 0.0 } else { g.d.atan2(g.j) };
    DerivedAngles {
        epsilon1,
        epsilon2,
        vartheta,
        theta,
        phi1,
        phi2,
    }
}

/// The 4x4 Hamiltonian matrix of the general model.
///
/// Hermitian, traceless and X-sparse: diagonal
/// `(omega + Jzz, delta - Jzz, -delta - Jzz, -omega + Jzz)`, inner
/// off-diagonal entry (2,3) = J - iD, outer entry (1,4) = r - iK.
pub fn hamiltonian_matrix(g: &GeneralCouplings) -> Matrix4c {
    let z = Complex64::new(0.0, 0.0);
    let mut h = Matrix4c::from_element(z);
    h[(0, 0)] = Complex64::new(g.omega + g.j_zz, 0.0);
    h[(1, 1)] = Complex64::new(g.delta - g.j_zz, 0.0);
    h[(2, 2)] = Complex64::new(-g.delta - g.j_zz, 0.0);
    h[(3, 3)] = Complex64::new(-g.omega + g.j_zz, 0.0);
    h[(1, 2)] = Complex64::new(g.j, -g.d);
    h[(2, 1)] = Complex64::new(g.j, g.d);
    h[(0, 3)] = Complex64::new(g.r, -g.k);
    h[(3, 0)] = Complex64::new(g.r, g.k);
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn heis_sigma() -> GeneralCouplings {
        couplings_from_spin_convention(1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn spin_conversion_heisenberg() {
        let g = heis_sigma();
        assert_eq!(g.j, 0.5);
        assert_eq!(g.d, 0.0);
        assert_eq!(g.r, 0.0);
        assert_eq!(g.k, 0.0);
        assert_eq!(g.j_zz, 0.25);
        assert_eq!(g.omega, 0.0);
        assert_eq!(g.delta, 0.0);
    }

    #[test]
    fn derived_matrix_entries() {
        let g = GeneralCouplings::new(0.7, -0.4, 0.3, 1.1, 0.2, 0.9, -0.6).unwrap();
        assert_eq!(g.j_xx(), 0.5 * (0.7 + 0.3));
        assert_eq!(g.j_yy(), 0.5 * (0.7 - 0.3));
        assert_eq!(g.j_xy(), 0.5 * (1.1 - (-0.4)));
        assert_eq!(g.j_yx(), 0.5 * (1.1 + (-0.4)));
        assert!((g.j_xx() + g.j_yy() - g.j).abs() < 1e-15);
        assert!((g.j_xx() - g.j_yy() - g.r).abs() < 1e-15);
        assert!((g.j_yx() + g.j_xy() - g.k).abs() < 1e-15);
        assert!((g.j_yx() - g.j_xy() - g.d).abs() < 1e-15);
        assert_eq!(g.omega_plus(), 0.9 - 0.6);
        assert_eq!(g.omega_minus(), 0.9 + 0.6);
    }

    #[test]
    fn spin_conversion_zero_map() {
        let g = couplings_from_spin_convention(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(g, GeneralCouplings::zero());
    }

    #[test]
    fn spin_conversion_xy_anisotropy() {
        let gamma = 0.6;
        let g = couplings_from_spin_convention(1.0 + gamma, 1.0 - gamma, 0.0, 0.0, 0.0, 0.0, 0.0)
            .unwrap();
        assert!((g.j - 0.5).abs() < 1e-15);
        assert!((g.r - gamma / 2.0).abs() < 1e-15);
        assert!((g.j * g.j + g.d * g.d - 0.25).abs() < 1e-15);
        assert!((g.r * g.r + g.k * g.k - gamma * gamma / 4.0).abs() < 1e-15);
    }

    #[test]
    fn spin_conversion_rejects_non_finite() {
        assert!(couplings_from_spin_convention(f64::NAN, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(
            couplings_from_spin_convention(0.0, 0.0, 0.0, 0.0, f64::INFINITY, 0.0, 0.0).is_err()
        );
    }

    #[test]
    fn compile_symmetric_sets_omega() {
        let spec = DimerSpec::general(
            PairCouplings {
                j: 0.0,
                d: 0.0,
                r: 0.0,
                k: 0.0,
                j_zz: 0.25,
            },
            Category::Symmetric,
            2.0,
        )
        .unwrap();
        let g = compile_spec(&spec);
        assert_eq!(g.omega, 2.0);
        assert_eq!(g.delta, 0.0);
        assert_eq!(g.j_zz, 0.25);
    }

    #[test]
    fn compile_antisymmetric_sets_delta() {
        let spec = DimerSpec::general(PairCouplings::zero(), Category::Antisymmetric, 2.0).unwrap();
        let g = compile_spec(&spec);
        assert_eq!(g.omega, 0.0);
        assert_eq!(g.delta, 2.0);
    }

    #[test]
    fn compile_zero_spec_is_zero() {
        let spec = DimerSpec::general(PairCouplings::zero(), Category::Symmetric, 0.0).unwrap();
        assert_eq!(compile_spec(&spec), GeneralCouplings::zero());
    }

    #[test]
    fn compile_spin_convention_divides_bilinears() {
        let spec = DimerSpec::new(
            Category::Symmetric,
            Convention::Spin,
            PairCouplings {
                j: 2.0,
                d: 0.4,
                r: 1.2,
                k: -0.8,
                j_zz: 1.0,
            },
            1.5,
        )
        .unwrap();
        let g = compile_spec(&spec);
        assert_eq!(g.j, 0.5);
        assert_eq!(g.d, 0.1);
        assert_eq!(g.r, 0.3);
        assert_eq!(g.k, -0.2);
        assert_eq!(g.j_zz, 0.25);
        assert_eq!(g.omega, 1.5);
    }

    #[test]
    fn angles_antisymmetric_limit() {
        // omega = 0 with a nonzero outer block forces vartheta = pi/2.
        let g = GeneralCouplings::new(0.0, 0.0, 0.3, 0.4, 0.0, 0.0, 1.0).unwrap();
        let a = derived_quantities(&g);
        assert!((a.vartheta - FRAC_PI_2).abs() < 1e-15);
        assert!((a.epsilon1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn angles_symmetric_limit() {
        // delta = 0 with a nonzero inner block forces theta = pi/2.
        let g = GeneralCouplings::new(0.3, 0.4, 0.0, 0.0, 0.0, 1.0, 0.0).unwrap();
        let a = derived_quantities(&g);
        assert!((a.theta - FRAC_PI_2).abs() < 1e-15);
        assert!((a.epsilon2 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn angles_heisenberg() {
        let mut g = heis_sigma();
        g.omega = 1.0;
        let a = derived_quantities(&g);
        assert!((a.epsilon2 - 0.5).abs() < 1e-15);
        assert_eq!(a.phi2, 0.0);
        assert_eq!(a.theta, FRAC_PI_2);
    }

    #[test]
    fn angles_degenerate_block_defaults() {
        let g = GeneralCouplings::zero();
        let a = derived_quantities(&g);
        assert_eq!(a.vartheta, FRAC_PI_2);
        assert_eq!(a.theta, FRAC_PI_2);
        assert_eq!(a.phi1, 0.0);
        assert_eq!(a.phi2, 0.0);
    }

    #[test]
    fn angles_negative_couplings_have_phases() {
        let g = GeneralCouplings::new(-0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let a = derived_quantities(&g);
        assert!((a.phi2 - PI).abs() < 1e-15);
        assert_eq!(a.theta, FRAC_PI_2);
    }

    #[test]
    fn hamiltonian_zero_couplings() {
        let h = hamiltonian_matrix(&GeneralCouplings::zero());
        assert!(h.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn hamiltonian_heisenberg_entries() {
        let h = hamiltonian_matrix(&heis_sigma());
        assert_eq!(h[(1, 2)], Complex64::new(0.5, 0.0));
        assert_eq!(h[(0, 0)], Complex64::new(0.25, 0.0));
        assert_eq!(h[(1, 1)], Complex64::new(-0.25, 0.0));
        assert_eq!(h[(2, 2)], Complex64::new(-0.25, 0.0));
        assert_eq!(h[(3, 3)], Complex64::new(0.25, 0.0));
        assert_eq!(h[(0, 3)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hamiltonian_heisenberg_spectrum() {
        // Triplet/singlet splitting: {J/4 (x3), -3J/4} in spin units.
        let h = hamiltonian_matrix(&heis_sigma());
        let mut eig: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        let expected = [-0.75, 0.25, 0.25, 0.25];
        for (a, b) in eig.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-12, "eig {a} vs {b}");
        }
    }

    #[test]
    fn dimer_spec_rejects_non_finite_field() {
        assert!(DimerSpec::heisenberg(1.0, Category::Symmetric, f64::NAN).is_err());
    }
}
