//! Seeded verification suites: closed-form vs oracle state equivalence,
//! exact duality, and class invariance. Each suite reports its maximum
//! deviation against a fixed tolerance.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dimer::{
    chsh_parameter, compile_spec, concurrence_grid, concurrence_wootters, concurrence_x, dual_map,
    hamiltonian_matrix, linspace, negativity, qubit2_flip_conjugate, sample_class, thermal_state,
    thermal_state_oracle, Category, DimerSpec, GeneralCouplings, Matrix4c, PairCouplings,
    TorusInvariants,
};

pub struct SuiteReport {
    pub name: &'static str,
    pub samples: usize,
    pub checks: Vec<(String, f64, f64)>, // (label, max deviation, tolerance)
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, dev, tol)| dev <= tol)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "samples": self.samples,
            "checks": self
                .checks
                .iter()
                .map(|(label, dev, tol)| {
                    json!({"check": label, "max_deviation": dev, "tolerance": tol, "pass": dev <= tol})
                })
                .collect::<Vec<_>>(),
            "pass": self.pass(),
        })
    }
}

fn max_entry_diff(a: &Matrix4c, b: &Matrix4c) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn random_couplings(rng: &mut ChaCha8Rng) -> GeneralCouplings {
    GeneralCouplings::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
    .expect("finite")
}

fn random_spec(rng: &mut ChaCha8Rng) -> DimerSpec {
    let couplings = PairCouplings {
        j: rng.gen_range(-2.0..2.0),
        d: rng.gen_range(-2.0..2.0),
        r: rng.gen_range(-2.0..2.0),
        k: rng.gen_range(-2.0..2.0),
        j_zz: rng.gen_range(-2.0..2.0),
    };
    let category = if rng.gen_bool(0.5) {
        Category::Symmetric
    } else {
        Category::Antisymmetric
    };
    DimerSpec::general(couplings, category, rng.gen_range(-2.0..2.0)).expect("finite")
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Analytic X state vs the eigendecomposition oracle, plus analytic
/// concurrence vs the Wootters formula on the oracle state.
pub fn oracle_equivalence(seed: u64, samples: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_state: f64 = 0.0;
    let mut max_conc: f64 = 0.0;
    for _ in 0..samples {
        let g = random_couplings(&mut rng);
        let t = log_uniform(&mut rng, 1e-3, 1e3);
        let x = thermal_state(&g, t).expect("valid state");
        let oracle = thermal_state_oracle(&hamiltonian_matrix(&g), t).expect("valid oracle");
        max_state = max_state.max(max_entry_diff(&x.to_matrix(), &oracle));
        max_conc =
            max_conc.max((concurrence_x(&x) - concurrence_wootters(&oracle).expect("valid")).abs());
    }
    SuiteReport {
        name: "oracle_equivalence",
        samples,
        checks: vec![
            ("thermal state entrywise".into(), max_state, 1e-12),
            ("concurrence formula vs Wootters".into(), max_conc, 1e-10),
        ],
    }
}

/// Thermal state of the dual equals the bit-flip conjugate; all measures
/// agree between the two.
pub fn duality(seed: u64, samples: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut max_state: f64 = 0.0;
    let mut max_measure: f64 = 0.0;
    for _ in 0..samples {
        let spec = random_spec(&mut rng);
        let t = log_uniform(&mut rng, 1e-2, 1e2);
        let rho = thermal_state(&compile_spec(&spec), t).expect("valid state");
        let dual = thermal_state(&compile_spec(&dual_map(&spec)), t).expect("valid state");
        max_state = max_state.max(max_entry_diff(
            &dual.to_matrix(),
            &qubit2_flip_conjugate(&rho.to_matrix()),
        ));
        let (ma, mb) = (rho.to_matrix(), dual.to_matrix());
        max_measure = max_measure
            .max((concurrence_x(&rho) - concurrence_x(&dual)).abs())
            .max((negativity(&ma).expect("valid") - negativity(&mb).expect("valid")).abs())
            .max((chsh_parameter(&ma).expect("valid") - chsh_parameter(&mb).expect("valid")).abs());
    }
    SuiteReport {
        name: "duality",
        samples,
        checks: vec![
            ("dual state vs bit-flip conjugate".into(), max_state, 1e-12),
            (
                "concurrence/negativity/CHSH agreement".into(),
                max_measure,
                1e-10,
            ),
        ],
    }
}

/// Members of one toric class share the concurrence raster.
pub fn class_invariance(seed: u64, classes: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let b_axis = linspace(0.0, 3.0, 50);
    let t_axis = linspace(0.05, 3.0, 50);
    let mut max_dev: f64 = 0.0;
    for _ in 0..classes {
        let inv = TorusInvariants {
            alpha: rng.gen_range(0.0..2.0),
            beta: rng.gen_range(0.0..2.0),
            j_zz: rng.gen_range(-1.0..1.0),
            category: if rng.gen_bool(0.5) {
                Category::Symmetric
            } else {
                Category::Antisymmetric
            },
        };
        let members = sample_class(&inv, 3, rng.gen()).expect("valid class");
        let reference = concurrence_grid(&members[0], &b_axis, &t_axis).expect("valid grid");
        for m in &members[1..] {
            let grid = concurrence_grid(m, &b_axis, &t_axis).expect("valid grid");
            for (ra, rb) in grid.values.iter().zip(reference.values.iter()) {
                for (a, b) in ra.iter().zip(rb.iter()) {
                    max_dev = max_dev.max((a - b).abs());
                }
            }
        }
    }
    SuiteReport {
        name: "class_invariance",
        samples: classes,
        checks: vec![("concurrence on 50x50 grid".into(), max_dev, 1e-12)],
    }
}

/// Run all suites; the report is deterministic for a fixed seed.
pub fn run_all(seed: u64, samples: usize) -> (Value, bool) {
    let suites = [
        oracle_equivalence(seed, samples),
        duality(seed, samples),
        class_invariance(seed, 4),
    ];
    let pass = suites.iter().all(SuiteReport::pass);
    let report = json!({
        "seed": seed,
        "samples": samples,
        "suites": suites.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
        "pass": pass,
    });
    (report, pass)
}
