//! Entanglement transition curves in the (B, T) plane, concurrence and
//! negativity rasters, and closed-form checks for the Heisenberg family.

use std::fmt;

use crate::error::{Error, Result};
use crate::measures::{concurrence_branches, concurrence_x, negativity};
use crate::model::{compile_spec, DimerSpec};
use crate::thermal::thermal_state;

/// Default bisection tolerance on the critical temperature.
pub const DEFAULT_SOLVER_TOL: f64 = 1e-10;
/// Number of points in the log-spaced scan used to bracket roots.
pub const SCAN_POINTS: usize = 256;

/// Which concurrence branch crosses zero at a transition point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    C1,
    C2,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::C1 => "C1",
            Branch::C2 => "C2",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One point of a transition curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub field: f64,
    pub t_c: f64,
    pub branch: Branch,
}

/// Transition points sorted by field, with the solver tolerance they were
/// refined to.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionCurve {
    pub points: Vec<CurvePoint>,
    pub solver_tol: f64,
}

/// A rasterized measure over the (B, T) plane; `values[i][j]` belongs to
/// `(b_axis[i], t_axis[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramGrid {
    pub b_axis: Vec<f64>,
    pub t_axis: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// `n` evenly spaced points covering [lo, hi]; `n = 1` gives just `lo`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    v[n - 1] = hi;
    v
}

/// `n` evenly spaced points covering (lo, hi]: `lo + (hi-lo) (i+1)/n`.
/// Used for temperature axes that must exclude T = 0.
pub fn linspace_open(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * (i + 1) as f64 / n as f64)
        .collect()
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    let step = (lhi - llo) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| (llo + step * i as f64).exp()).collect();
    v[0] = lo;
    v[n - 1] = hi;
    v
}

/// Scan range [1e-3 E*, 10 E*] around the dominant energy scale of the
/// dimer; transitions cluster at T of order the coupling scale.
pub fn default_t_range(spec: &DimerSpec) -> (f64, f64) {
    let c = spec.to_pauli().couplings;
    let scale = [c.j, c.d, c.r, c.k, c.j_zz, spec.field]
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    (1e-3 * scale, 10.0 * scale)
}

fn validate_t_axis(t_axis: &[f64]) -> Result<()> {
    if t_axis.is_empty() {
        return Err(Error::InvalidParameter("empty temperature axis".into()));
    }
    if t_axis.iter().any(|t| !t.is_finite() || *t <= 0.0) {
        return Err(Error::Domain(
            "temperature axis must be strictly positive".into(),
        ));
    }
    Ok(())
}

fn measure_grid<F>(spec: &DimerSpec, b_axis: &[f64], t_axis: &[f64], f: F) -> Result<DiagramGrid>
where
    F: Fn(&DimerSpec, f64, f64) -> Result<f64>,
{
    if b_axis.is_empty() {
        return Err(Error::InvalidParameter("empty field axis".into()));
    }
    validate_t_axis(t_axis)?;
    let mut values = Vec::with_capacity(b_axis.len());
    for &b in b_axis {
        let mut row = Vec::with_capacity(t_axis.len());
        for &t in t_axis {
            row.push(f(spec, b, t)?);
        }
        values.push(row);
    }
    Ok(DiagramGrid {
        b_axis: b_axis.to_vec(),
        t_axis: t_axis.to_vec(),
        values,
    })
}

/// Concurrence raster from the analytic X-state path.
pub fn concurrence_grid(spec: &DimerSpec, b_axis: &[f64], t_axis: &[f64]) -> Result<DiagramGrid> {
    measure_grid(spec, b_axis, t_axis, |s, b, t| {
        Ok(concurrence_x(&thermal_state(
            &compile_spec(&s.with_field(b)),
            t,
        )?))
    })
}

/// Negativity raster (partial-transpose eigenvalues of the thermal state).
pub fn negativity_grid(spec: &DimerSpec, b_axis: &[f64], t_axis: &[f64]) -> Result<DiagramGrid> {
    measure_grid(spec, b_axis, t_axis, |s, b, t| {
        negativity(&thermal_state(&compile_spec(&s.with_field(b)), t)?.to_matrix())
    })
}

/// Fraction of grid cells whose value exceeds `threshold`.
pub fn entangled_area(grid: &DiagramGrid, threshold: f64) -> f64 {
    let total: usize = grid.values.iter().map(Vec::len).sum();
    if total == 0 {
        return 0.0;
    }
    let hits: usize = grid
        .values
        .iter()
        .map(|row| row.iter().filter(|v| **v > threshold).count())
        .sum();
    hits as f64 / total as f64
}

/// Closed-form Heisenberg-class critical temperature, `Gamma / ln 3`, where
/// `Gamma` is the class radius in spin-convention units.
pub fn heisenberg_tc(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Gamma = {gamma} is not finite"
        )));
    }
    if gamma <= 0.0 {
        return Err(Error::Domain(format!(
            "Gamma must be positive, got {gamma}"
        )));
    }
    Ok(gamma / 3.0f64.ln())
}

/// All zero crossings of `max(C1, C2)` in temperature at fixed field.
///
/// Scans a log-spaced grid (SCAN_POINTS points), brackets every sign change
/// and bisects each bracket down to `tol`. Multiple roots are returned in
/// ascending order with the branch that is active at the crossing; an empty
/// list means no transition in the range.
pub fn critical_temperatures(
    spec: &DimerSpec,
    field: f64,
    t_range: (f64, f64),
    tol: f64,
) -> Result<Vec<(f64, Branch)>> {
    let (t_lo, t_hi) = t_range;
    if !(t_lo.is_finite() && t_hi.is_finite()) || t_lo <= 0.0 || t_hi <= t_lo {
        return Err(Error::InvalidParameter(format!(
            "temperature range must satisfy 0 < Tlo < Thi, got ({t_lo}, {t_hi})"
        )));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let g = compile_spec(&spec.with_field(field));
    let gmax = |t: f64| -> Result<f64> {
        let b = concurrence_branches(&thermal_state(&g, t)?);
        Ok(b.c1.max(b.c2))
    };
    let active_branch = |t: f64| -> Result<Branch> {
        let b = concurrence_branches(&thermal_state(&g, t)?);
        Ok(if b.c1 >= b.c2 { Branch::C1 } else { Branch::C2 })
    };

    let ts = log_space(t_lo, t_hi, SCAN_POINTS);
    let gs: Vec<f64> = ts.iter().map(|&t| gmax(t)).collect::<Result<_>>()?;

    let mut roots = Vec::new();
    for i in 0..ts.len() - 1 {
        if gs[i] == 0.0 {
            roots.push((ts[i], active_branch(ts[i])?));
            continue;
        }
        if gs[i + 1] == 0.0 {
            continue; // handled as the next interval's left endpoint
        }
        if gs[i].signum() == gs[i + 1].signum() {
            continue;
        }
        let (mut lo, mut hi) = (ts[i], ts[i + 1]);
        let mut g_lo = gs[i];
        for _ in 0..200 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let g_mid = gmax(mid)?;
            if g_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if g_mid.signum() == g_lo.signum() {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        roots.push((root, active_branch(root)?));
    }
    if gs[ts.len() - 1] == 0.0 {
        roots.push((t_hi, active_branch(t_hi)?));
    }
    Ok(roots)
}

/// Transition curve over a field axis: all roots at every field value.
pub fn transition_curve(
    spec: &DimerSpec,
    b_axis: &[f64],
    t_range: (f64, f64),
    tol: f64,
) -> Result<TransitionCurve> {
    if b_axis.is_empty() {
        return Err(Error::InvalidParameter("empty field axis".into()));
    }
    let mut points = Vec::new();
    for &b in b_axis {
        for (t_c, branch) in critical_temperatures(spec, b, t_range, tol)? {
            points.push(CurvePoint {
                field: b,
                t_c,
                branch,
            });
        }
    }
    points.sort_by(|a, b| a.field.total_cmp(&b.field).then(a.t_c.total_cmp(&b.t_c)));
    Ok(TransitionCurve {
        points,
        solver_tol: tol,
    })
}
