//! Output formatting: CSV with 17-significant-digit numbers (so reruns are
//! byte-comparable and parse back exactly) and JSON values.

use serde_json::{json, Value};

use dimer::{torus_invariants, DiagramGrid, DimerSpec, TorusInvariants, TransitionCurve};

/// 17 significant digits round-trip any f64 exactly.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn diagram_csv(grid: &DiagramGrid) -> String {
    let mut out = String::from("B,T,value\n");
    for (i, b) in grid.b_axis.iter().enumerate() {
        for (j, t) in grid.t_axis.iter().enumerate() {
            out.push_str(&fmt17(*b));
            out.push(',');
            out.push_str(&fmt17(*t));
            out.push(',');
            out.push_str(&fmt17(grid.values[i][j]));
            out.push('\n');
        }
    }
    out
}

pub fn diagram_json(grid: &DiagramGrid, measure: &str) -> Value {
    json!({
        "measure": measure,
        "b_axis": grid.b_axis,
        "t_axis": grid.t_axis,
        "values": grid.values,
    })
}

pub fn curve_csv(curve: &TransitionCurve) -> String {
    let mut out = String::from("B,Tc,branch\n");
    for p in &curve.points {
        out.push_str(&fmt17(p.field));
        out.push(',');
        out.push_str(&fmt17(p.t_c));
        out.push(',');
        out.push_str(p.branch.as_str());
        out.push('\n');
    }
    out
}

pub fn curve_json(curve: &TransitionCurve) -> Value {
    json!({
        "solver_tol": curve.solver_tol,
        "points": curve
            .points
            .iter()
            .map(|p| json!({"B": p.field, "Tc": p.t_c, "branch": p.branch.as_str()}))
            .collect::<Vec<_>>(),
    })
}

pub fn spec_json(spec: &DimerSpec) -> Value {
    json!({
        "category": spec.category.as_str(),
        "convention": spec.convention.as_str(),
        "couplings": {
            "J": spec.couplings.j,
            "D": spec.couplings.d,
            "r": spec.couplings.r,
            "K": spec.couplings.k,
            "J_zz": spec.couplings.j_zz,
        },
        "B": spec.field,
    })
}

pub fn invariants_json(inv: &TorusInvariants) -> Value {
    json!({
        "alpha": inv.alpha,
        "beta": inv.beta,
        "J_zz": inv.j_zz,
        "category": inv.category.as_str(),
    })
}

pub fn sample_csv(members: &[DimerSpec]) -> String {
    let mut out = String::from("category,J,D,r,K,J_zz,B\n");
    for m in members {
        let c = m.couplings;
        out.push_str(m.category.as_str());
        for v in [c.j, c.d, c.r, c.k, c.j_zz, m.field] {
            out.push(',');
            out.push_str(&fmt17(v));
        }
        out.push('\n');
    }
    out
}

pub fn sample_json(inv: &TorusInvariants, members: &[DimerSpec], seed: u64) -> Value {
    json!({
        "seed": seed,
        "class": invariants_json(inv),
        "members": members.iter().map(spec_json).collect::<Vec<_>>(),
    })
}

pub fn classify_json(spec: &DimerSpec, other: Option<&DimerSpec>, tol: f64) -> Value {
    let inv = torus_invariants(spec);
    let mut v = json!({
        "spec": spec_json(spec),
        "invariants": invariants_json(&inv),
    });
    if let Some(o) = other {
        v["other"] = json!({
            "spec": spec_json(o),
            "invariants": invariants_json(&torus_invariants(o)),
        });
        v["comparison"] = json!({
            "tol": tol,
            "same_class": dimer::same_class(spec, o, tol),
            "dual_pair": dimer::is_dual_pair(spec, o, tol),
        });
    }
    v
}
