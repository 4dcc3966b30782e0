//! Command-line front end: JSON configs or flags in, CSV/JSON artifacts out.
//!
//! Exit codes: 0 success, 1 usage/validation, 2 numeric or verification
//! failure, 3 I/O.

mod config;
mod error;
mod output;
mod verify;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use dimer::{
    chsh_parameter, compile_spec, concurrence_branches, concurrence_grid, concurrence_x, dual_map,
    negativity, negativity_grid, sample_class, thermal_state, torus_invariants, transition_curve,
    DiagramGrid, DimerSpec,
};

use config::{parse_axis_flag, validate, Format, Job, Measure, PresetSpec, RawConfig, RunConfig};
use error::{CliError, CliResult};

/// Thermal entanglement of spin-1/2 dimers: diagrams, transition curves,
/// toric classification and duality.
#[derive(Parser, Debug)]
#[command(name = "dimer", version, about)]
struct Args {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<String>,
    /// concurrence | diagram | curve | classify | dual | verify | sample
    #[arg(long)]
    command: Option<String>,
    /// Model preset: heisenberg | xy | general.
    #[arg(long)]
    preset: Option<String>,
    /// Heisenberg exchange strength (spin convention).
    #[arg(long = "J", allow_negative_numbers = true)]
    j: Option<f64>,
    /// XY anisotropy in [0, 1].
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// General-model couplings (Pauli convention unless --convention spin).
    #[arg(long = "D", allow_negative_numbers = true)]
    d: Option<f64>,
    #[arg(long = "r", allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long = "K", allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long = "J_zz", allow_negative_numbers = true)]
    j_zz: Option<f64>,
    /// symmetric | antisymmetric.
    #[arg(long)]
    category: Option<String>,
    /// pauli | spin (general preset only).
    #[arg(long)]
    convention: Option<String>,
    /// Field: a number, min:max or min:max:n.
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    /// Temperature: a number, min:max or min:max:n.
    #[arg(long = "T", allow_hyphen_values = true)]
    t: Option<String>,
    /// Solver / comparison tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Diagram measure: concurrence | negativity | chsh.
    #[arg(long)]
    measure: Option<String>,
    /// Sample count.
    #[arg(long)]
    n: Option<usize>,
    /// RNG seed (default: DIMER_SEED env or 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Verification sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// csv | json.
    #[arg(long)]
    format: Option<String>,
    /// Output path, or - for stdout.
    #[arg(long)]
    out: Option<String>,
}

fn flag_preset(args: &Args, raw: &RawConfig) -> CliResult<Option<PresetSpec>> {
    let mut preset = raw.preset.clone();
    if let Some(name) = &args.preset {
        preset = Some(match name.as_str() {
            "heisenberg" => PresetSpec {
                heisenberg: Some(BTreeMap::new()),
                xy: None,
                general: None,
            },
            "xy" => PresetSpec {
                heisenberg: None,
                xy: Some(BTreeMap::new()),
                general: None,
            },
            "general" => PresetSpec {
                heisenberg: None,
                xy: None,
                general: Some(BTreeMap::new()),
            },
            other => {
                return Err(CliError::usage(format!(
                    "unknown preset {other:?} (expected heisenberg, xy or general)"
                )))
            }
        });
    }
    // Parameter flags drop into whichever preset is selected.
    if let Some(p) = &mut preset {
        if let Some(map) = &mut p.heisenberg {
            if let Some(j) = args.j {
                map.insert("J".into(), j);
            }
        }
        if let Some(map) = &mut p.xy {
            if let Some(g) = args.gamma {
                map.insert("gamma".into(), g);
            }
        }
        if let Some(map) = &mut p.general {
            for (key, value) in [
                ("J", args.j),
                ("D", args.d),
                ("r", args.r),
                ("K", args.k),
                ("J_zz", args.j_zz),
            ] {
                if let Some(v) = value {
                    map.insert(key.into(), v);
                }
            }
        }
    } else if args.j.is_some()
        || args.gamma.is_some()
        || args.d.is_some()
        || args.r.is_some()
        || args.k.is_some()
        || args.j_zz.is_some()
    {
        return Err(CliError::usage(
            "model parameter flags need a preset (--preset or a config file preset)".into(),
        ));
    }
    Ok(preset)
}

fn merge(args: &Args, mut raw: RawConfig) -> CliResult<RawConfig> {
    raw.preset = flag_preset(args, &raw)?;
    if args.command.is_some() {
        raw.command = args.command.clone();
    }
    if args.category.is_some() {
        raw.category = args.category.clone();
    }
    if args.convention.is_some() {
        raw.convention = args.convention.clone();
    }
    if let Some(b) = &args.b {
        raw.b = Some(parse_axis_flag(b)?);
    }
    if let Some(t) = &args.t {
        raw.t = Some(parse_axis_flag(t)?);
    }
    if args.tol.is_some() {
        raw.tol = args.tol;
    }
    if args.measure.is_some() {
        raw.measure = args.measure.clone();
    }
    if args.n.is_some() {
        raw.n = args.n;
    }
    if args.seed.is_some() {
        raw.seed = args.seed;
    }
    if args.samples.is_some() {
        raw.samples = args.samples;
    }
    if args.format.is_some() {
        raw.format = args.format.clone();
    }
    if args.out.is_some() {
        raw.out = args.out.clone();
    }
    Ok(raw)
}

fn diagram_values(
    spec: &DimerSpec,
    b_axis: &[f64],
    t_axis: &[f64],
    measure: Measure,
) -> CliResult<DiagramGrid> {
    let grid = match measure {
        Measure::Concurrence => concurrence_grid(spec, b_axis, t_axis)?,
        Measure::Negativity => negativity_grid(spec, b_axis, t_axis)?,
        Measure::Chsh => {
            let mut values = Vec::with_capacity(b_axis.len());
            for &b in b_axis {
                let mut row = Vec::with_capacity(t_axis.len());
                for &t in t_axis {
                    let x = thermal_state(&compile_spec(&spec.with_field(b)), t)?;
                    row.push(chsh_parameter(&x.to_matrix())?);
                }
                values.push(row);
            }
            DiagramGrid {
                b_axis: b_axis.to_vec(),
                t_axis: t_axis.to_vec(),
                values,
            }
        }
    };
    Ok(grid)
}

/// Execute a validated job; returns (artifact text, success flag).
fn execute(cfg: &RunConfig) -> CliResult<(String, bool)> {
    let text = match &cfg.job {
        Job::Concurrence { spec, b, t } => {
            let x = thermal_state(&compile_spec(&spec.with_field(*b)), *t)?;
            let branches = concurrence_branches(&x);
            let c = concurrence_x(&x);
            match cfg.format {
                Format::Csv => format!(
                    "B,T,value\n{},{},{}\n",
                    output::fmt17(*b),
                    output::fmt17(*t),
                    output::fmt17(c)
                ),
                Format::Json => {
                    let rho = x.to_matrix();
                    let v = json!({
                        "B": b,
                        "T": t,
                        "concurrence": c,
                        "c1": branches.c1,
                        "c2": branches.c2,
                        "negativity": negativity(&rho)?,
                        "chsh": chsh_parameter(&rho)?,
                    });
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("serializable")
                    )
                }
            }
        }
        Job::Diagram {
            spec,
            b_axis,
            t_axis,
            measure,
        } => {
            let grid = diagram_values(spec, b_axis, t_axis, *measure)?;
            match cfg.format {
                Format::Csv => output::diagram_csv(&grid),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&output::diagram_json(&grid, measure.as_str()))
                        .expect("serializable")
                ),
            }
        }
        Job::Curve {
            spec,
            b_axis,
            t_range,
            tol,
        } => {
            let curve = transition_curve(spec, b_axis, *t_range, *tol)?;
            match cfg.format {
                Format::Csv => output::curve_csv(&curve),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&output::curve_json(&curve))
                        .expect("serializable")
                ),
            }
        }
        Job::Classify { spec, other, tol } => {
            let v = output::classify_json(spec, other.as_ref(), *tol);
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serializable")
            )
        }
        Job::Dual { spec } => {
            let dual = dual_map(spec);
            let v = json!({
                "spec": output::spec_json(spec),
                "invariants": output::invariants_json(&torus_invariants(spec)),
                "dual": output::spec_json(&dual),
                "dual_invariants": output::invariants_json(&torus_invariants(&dual)),
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serializable")
            )
        }
        Job::Sample { spec, n, seed } => {
            let inv = torus_invariants(spec);
            let members = sample_class(&inv, *n, *seed)?;
            match cfg.format {
                Format::Csv => output::sample_csv(&members),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&output::sample_json(&inv, &members, *seed))
                        .expect("serializable")
                ),
            }
        }
        Job::Verify { seed, samples } => {
            let (report, pass) = verify::run_all(*seed, *samples);
            let text = format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            return Ok((text, pass));
        }
    };
    Ok((text, true))
}

fn write_output(path: &str, text: &str) -> CliResult<()> {
    if path == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
        return Ok(());
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {path:?}: {e}")))
}

fn env_seed() -> CliResult<Option<u64>> {
    match std::env::var("DIMER_SEED") {
        Ok(v) => v.parse::<u64>().map(Some).map_err(|_| {
            CliError::usage(format!("DIMER_SEED must be an unsigned integer, got {v:?}"))
        }),
        Err(_) => Ok(None),
    }
}

fn run() -> CliResult<bool> {
    let args = Args::parse();
    let raw = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read config {path:?}: {e}")))?;
            RawConfig::from_json(&text)?
        }
        None => RawConfig::default(),
    };
    let merged = merge(&args, raw)?;
    let cfg = validate(&merged, env_seed()?)?;
    let (text, pass) = execute(&cfg)?;
    write_output(&cfg.out, &text)?;
    Ok(pass)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed: at least one suite exceeded its tolerance");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
