//! Toric equivalence classes of dimers, the symmetric/antisymmetric duality
//! map, duality-equation residuals, and torus sampling.
//!
//! Two dimers of the same category, field-coupling aside, share an
//! entanglement transition line iff they share `alpha = J^2 + D^2`,
//! `beta = r^2 + K^2` and `J_zz`. Each class is a 2-torus in (J, D, r, K)
//! space with radii `sqrt(alpha)`, `sqrt(beta)`. The dual class lives in the
//! opposite category with the radii swapped and `J_zz` negated.

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{ensure_temperature, Error, Result};
use crate::model::{
    compile_spec, derived_quantities, Category, DimerSpec, Matrix4c, PairCouplings,
};

/// Default absolute tolerance for class comparisons. Absolute rather than
/// relative: invariants are frequently exactly zero (e.g. beta for the
/// Heisenberg class).
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

/// The class-identifying data of a dimer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusInvariants {
    /// J^2 + D^2.
    pub alpha: f64,
    /// r^2 + K^2.
    pub beta: f64,
    pub j_zz: f64,
    pub category: Category,
}

/// Class invariants of a dimer spec (computed in the Pauli convention).
pub fn torus_invariants(spec: &DimerSpec) -> TorusInvariants {
    let g = compile_spec(spec);
    TorusInvariants {
        alpha: g.j * g.j + g.d * g.d,
        beta: g.r * g.r + g.k * g.k,
        j_zz: g.j_zz,
        category: spec.category,
    }
}

/// Whether two dimers lie on the same entanglement class.
pub fn same_class(a: &DimerSpec, b: &DimerSpec, tol: f64) -> bool {
    let ia = torus_invariants(a);
    let ib = torus_invariants(b);
    ia.category == ib.category
        && (ia.j_zz - ib.j_zz).abs() <= tol
        && (ia.alpha - ib.alpha).abs() <= tol
        && (ia.beta - ib.beta).abs() <= tol
}

/// Canonical dual: category flipped, couplings
/// `(J, D, r, K, J_zz) -> (r, K, J, D, -J_zz)`, field unchanged.
///
/// This representative swaps the torus radii as the duality relations
/// require, and moreover its thermal state equals the original conjugated by
/// the bit flip on qubit 2 at every (B, T), so every local-unitary-invariant
/// measure matches exactly, not only the transition line.
pub fn dual_map(spec: &DimerSpec) -> DimerSpec {
    let s = spec.to_pauli();
    let c = s.couplings;
    DimerSpec {
        category: s.category.flipped(),
        convention: s.convention,
        // `+ 0.0` keeps a zero Jzz from flipping to -0.0.
        couplings: PairCouplings {
            j: c.r,
            d: c.k,
            r: c.j,
            k: c.d,
            j_zz: -c.j_zz + 0.0,
        },
        field: s.field,
    }
}

/// Whether two dimers are dual classes: opposite categories, opposite
/// `J_zz`, torus radii swapped.
pub fn is_dual_pair(a: &DimerSpec, b: &DimerSpec, tol: f64) -> bool {
    let ia = torus_invariants(a);
    let ib = torus_invariants(b);
    ia.category != ib.category
        && (ia.j_zz + ib.j_zz).abs() <= tol
        && (ia.alpha - ib.beta).abs() <= tol
        && (ia.beta - ib.alpha).abs() <= tol
}

/// Conjugate a two-qubit state by the bit flip X on qubit 2.
///
/// This is the local unitary relating a dimer's thermal state to its
/// [`dual_map`] partner's.
pub fn qubit2_flip_conjugate(rho: &Matrix4c) -> Matrix4c {
    // X on qubit 2 permutes the basis as |00><->|01|, |10><->|11>.
    let perm = [1usize, 0, 3, 2];
    let mut out = *rho;
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = rho[(perm[i], perm[j])];
        }
    }
    out
}

fn couplings_on_torus(inv: &TorusInvariants, angle_a: f64, angle_b: f64) -> PairCouplings {
    let ra = inv.alpha.sqrt();
    let rb = inv.beta.sqrt();
    PairCouplings {
        j: ra * angle_a.cos(),
        d: ra * angle_a.sin(),
        r: rb * angle_b.cos(),
        k: rb * angle_b.sin(),
        j_zz: inv.j_zz,
    }
}

fn check_sampleable(inv: &TorusInvariants, n: usize) -> Result<()> {
    if !(inv.alpha.is_finite() && inv.beta.is_finite() && inv.j_zz.is_finite()) {
        return Err(Error::InvalidParameter(
            "non-finite torus invariants".into(),
        ));
    }
    if inv.alpha < 0.0 || inv.beta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "torus invariants must be nonnegative, got alpha = {}, beta = {}",
            inv.alpha, inv.beta
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "sample count must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Draw `n` class members with seeded-uniform torus angles.
pub fn sample_class(inv: &TorusInvariants, n: usize, seed: u64) -> Result<Vec<DimerSpec>> {
    check_sampleable(inv, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let a = rng.gen_range(0.0..TAU);
            let b = rng.gen_range(0.0..TAU);
            DimerSpec::general(couplings_on_torus(inv, a, b), inv.category, 0.0)
                .expect("torus point is finite")
        })
        .collect())
}

/// `n` class members on an even angle grid starting at angle 0.
pub fn sample_class_grid(inv: &TorusInvariants, n: usize) -> Result<Vec<DimerSpec>> {
    check_sampleable(inv, n)?;
    Ok((0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            DimerSpec::general(couplings_on_torus(inv, a, a), inv.category, 0.0)
                .expect("torus point is finite")
        })
        .collect())
}

/// log(sinh x) for x >= 0 without overflow; -inf at x = 0.
fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// log(e^a + e^b), tolerating -inf arguments.
fn log_sum_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// e^ln_a - e^ln_b, evaluated directly when representable and through a
/// scaled difference otherwise. Never NaN; saturates to +-inf when the
/// true magnitude exceeds f64 range.
fn exp_diff(ln_a: f64, ln_b: f64) -> f64 {
    const SAFE: f64 = 700.0;
    if ln_a <= SAFE && ln_b <= SAFE {
        return ln_a.exp() - ln_b.exp();
    }
    let m = ln_a.max(ln_b);
    let scaled = (ln_a - m).exp() - (ln_b - m).exp();
    if scaled == 0.0 {
        0.0
    } else {
        scaled * m.exp()
    }
}

/// Residuals of the two duality equations at (spec.B, T):
///
/// ```text
/// resI  = e^{-2Jzz/T} p^2 - e^{2Jzz/T} q^2 - e^{2Jzz/T}
/// resII = e^{2Jzz/T} q^2 - e^{-2Jzz/T} p^2 - e^{-2Jzz/T}
/// ```
///
/// with `p = sinh(e1/T) sin(vartheta)` and `q = sinh(e2/T) sin(theta)`.
/// `resI` has the sign of the outer concurrence branch and `resII` the sign
/// of the inner one, so their zero sets are the transition lines.
pub fn duality_residuals(spec: &DimerSpec, t: f64) -> Result<(f64, f64)> {
    ensure_temperature(t)?;
    let g = compile_spec(spec);
    g.check_finite()?;
    let a = derived_quantities(&g);
    let w = 2.0 * g.j_zz / t;
    let ln_p2 = 2.0 * (ln_sinh(a.epsilon1 / t) + a.vartheta.sin().ln());
    let ln_q2 = 2.0 * (ln_sinh(a.epsilon2 / t) + a.theta.sin().ln());
    let res_i = exp_diff(-w + ln_p2, log_sum_exp(w + ln_q2, w));
    let res_ii = exp_diff(w + ln_q2, log_sum_exp(-w + ln_p2, -w));
    Ok((res_i, res_ii))
}
