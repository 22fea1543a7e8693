use std::io::Write;

use serde_json::{json, Value};

use pto_core::limits::{compare_energy, fp_limit_expansion, ho_limit_expansion};
use pto_core::oracle::{
    numerical_pressures, solve_eigenvalues, EnergySource, GridSpec, DEFAULT_RELATIVE_STEP,
};
use pto_core::perturbation::perturbed_energy;
use pto_core::semiclassical::{qc_energy_closed, qc_energy_numeric};
use pto_core::spectra::{effective_exponent, energy_level, pressure_level, spectrum_table};
use pto_core::{derive_scales, PtParameters};

use crate::error::CliError;
use crate::format::{float_object, render_json, Cell, Format, Table};
use crate::{CommonArgs, CompareArgs, Method, SpectrumArgs, SweepArgs, SweepVar, ValidateArgs};

const DEFAULT_N_MAX: u64 = 10;
const DEFAULT_COMPARE_N_MAX: u64 = 5;
const DEFAULT_GRID_N: usize = 4000;
const DEFAULT_LEVELS: usize = 5;
const DEFAULT_RICHARDSON: u8 = 3;
const DEFAULT_ENERGY_TOLERANCE: f64 = 1e-6;
const DEFAULT_PRESSURE_TOLERANCE: f64 = 1e-8;
const DEFAULT_EIGEN_PRESSURE_TOLERANCE: f64 = 1e-5;

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required option --{flag}")))
}

fn parameters(common: &CommonArgs) -> Result<PtParameters, CliError> {
    let well_depth = required(common.well_depth, "well-depth")?;
    let half_width = required(common.half_width, "half-width")?;
    Ok(PtParameters::new(
        common.mass.unwrap_or(1.0),
        well_depth,
        half_width,
        common.hbar.unwrap_or(1.0),
    )?)
}

fn parameters_json(p: &PtParameters) -> Value {
    float_object(&[
        ("mass", p.mass()),
        ("well_depth", p.well_depth()),
        ("half_width", p.half_width()),
        ("hbar", p.action_quantum()),
    ])
}

fn emit(common: &CommonArgs, text: &str) -> Result<(), CliError> {
    match &common.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn render(common: &CommonArgs, table: &Table, mut envelope: Value) -> String {
    match common.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => {
            envelope["rows"] = table.to_json_rows();
            render_json(&envelope)
        }
    }
}

pub fn spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let params = parameters(&args.common)?;
    let table = spectrum_table(&params, args.n_max.unwrap_or(DEFAULT_N_MAX))?;
    let mut out = Table::new(vec![
        "n", "E_fp", "E_ho", "E_total", "P_fp", "P_ho", "P_total", "eta", "regime",
    ]);
    for r in &table.rows {
        out.push(vec![
            r.n.into(),
            r.energy_fp.into(),
            r.energy_ho.into(),
            r.energy_total.into(),
            r.pressure_fp.into(),
            r.pressure_ho.into(),
            r.pressure_total.into(),
            r.regime_ratio.into(),
            r.regime_label.as_str().into(),
        ]);
    }
    let s = &table.scales;
    let envelope = json!({
        "parameters": parameters_json(&params),
        "scales": float_object(&[
            ("alpha", s.alpha),
            ("T", s.kinetic_scale),
            ("zeta2", s.zeta_squared),
            ("lambda", s.lambda_exact),
            ("hbar_omega", s.oscillator_quantum),
            ("psi", s.psi_factor),
            ("n_cr", s.n_critical),
        ]),
    });
    emit(&args.common, &render(&args.common, &out, envelope))
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let var = required(args.sweep_var, "sweep-var")?;
    let from = required(args.from, "from")?;
    let to = required(args.to, "to")?;
    let steps = required(args.steps, "steps")?;
    let n = args.level.unwrap_or(1);
    if from.is_nan() || to.is_nan() || from >= to {
        return Err(pto_core::PtError::InvalidParameter(format!(
            "sweep range needs from < to, got [{from}, {to}]"
        ))
        .into());
    }
    if steps < 2 {
        return Err(pto_core::PtError::InvalidParameter(format!(
            "sweep needs at least 2 steps, got {steps}"
        ))
        .into());
    }
    // the swept quantity may be absent from the flags
    let mut common = args.common.clone();
    match var {
        SweepVar::HalfWidth => common.half_width = common.half_width.or(Some(from)),
        SweepVar::WellDepth => common.well_depth = common.well_depth.or(Some(from)),
    }
    let base = parameters(&common)?;

    let mut out = Table::new(vec![
        "param_value",
        "lambda",
        "hbar_omega",
        "E_n",
        "P_n",
        "s_eff",
        "n_cr",
    ]);
    for i in 0..steps {
        let value = if i + 1 == steps {
            to
        } else {
            from + (to - from) * i as f64 / (steps - 1) as f64
        };
        let p = match var {
            SweepVar::HalfWidth => base.with_half_width(value)?,
            SweepVar::WellDepth => base.with_well_depth(value)?,
        };
        let s = derive_scales(&p);
        out.push(vec![
            value.into(),
            s.lambda_exact.into(),
            s.oscillator_quantum.into(),
            energy_level(&p, n)?.total.into(),
            pressure_level(&p, n)?.total.into(),
            effective_exponent(&p, n)?.into(),
            s.n_critical.into(),
        ]);
    }
    let var_name = match var {
        SweepVar::HalfWidth => "half-width",
        SweepVar::WellDepth => "well-depth",
    };
    let envelope = json!({
        "parameters": parameters_json(&base),
        "sweep_var": var_name,
        "level": n,
    });
    emit(&args.common, &render(&args.common, &out, envelope))
}

pub fn compare(args: &CompareArgs) -> Result<(), CliError> {
    let params = parameters(&args.common)?;
    let method = required(args.method, "method")?;
    let n_max = args.n_max.unwrap_or(DEFAULT_COMPARE_N_MAX);
    if n_max < 1 {
        return Err(pto_core::PtError::InvalidParameter("n-max must be at least 1".into()).into());
    }

    let mut header = vec!["n", "E_exact", "E_approx", "abs_err", "rel_err"];
    if method == Method::Semiclassical {
        header.push("E_qc_numeric");
    }
    let mut out = Table::new(header);

    let limit = match method {
        Method::FpLimit => Some(fp_limit_expansion(&params, args.order.unwrap_or(2))?),
        Method::HoLimit => Some(ho_limit_expansion(&params, args.order.unwrap_or(3))?),
        _ => None,
    };
    for n in 1..=n_max {
        let exact = energy_level(&params, n)?.total;
        let approx = match (method, &limit) {
            (_, Some(expansion)) => compare_energy(&params, expansion, n)?.approx,
            (Method::Semiclassical, None) => qc_energy_closed(&params, n)?,
            (Method::Perturbation, None) => perturbed_energy(&params, n)?.total,
            _ => unreachable!("limit methods carry an expansion"),
        };
        let abs_err = (exact - approx).abs();
        let mut row: Vec<Cell> = vec![
            n.into(),
            exact.into(),
            approx.into(),
            abs_err.into(),
            (abs_err / exact).into(),
        ];
        if method == Method::Semiclassical {
            row.push(qc_energy_numeric(&params, n)?.into());
        }
        out.push(row);
    }
    let method_name = match method {
        Method::FpLimit => "fp-limit",
        Method::HoLimit => "ho-limit",
        Method::Semiclassical => "semiclassical",
        Method::Perturbation => "perturbation",
    };
    let mut envelope = json!({
        "parameters": parameters_json(&params),
        "method": method_name,
    });
    if let Some(e) = &limit {
        envelope["order"] = json!(e.order_kept);
    }
    emit(&args.common, &render(&args.common, &out, envelope))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn validate(args: &ValidateArgs) -> Result<(), CliError> {
    let params = parameters(&args.common)?;
    let levels = args.levels.unwrap_or(DEFAULT_LEVELS);
    let grid = GridSpec::new(
        args.grid_n.unwrap_or(DEFAULT_GRID_N),
        args.richardson.unwrap_or(DEFAULT_RICHARDSON),
        levels,
    )?;
    let e_tol = args.tolerance.unwrap_or(DEFAULT_ENERGY_TOLERANCE);
    let p_tol = args
        .pressure_tolerance
        .unwrap_or(DEFAULT_PRESSURE_TOLERANCE);
    let pe_tol = args
        .eigen_pressure_tolerance
        .unwrap_or(DEFAULT_EIGEN_PRESSURE_TOLERANCE);

    let numeric = solve_eigenvalues(&params, &grid)?;
    let p_fd = numerical_pressures(
        &params,
        levels,
        DEFAULT_RELATIVE_STEP,
        EnergySource::ClosedForm,
    )?;
    let p_num = numerical_pressures(
        &params,
        levels,
        DEFAULT_RELATIVE_STEP,
        EnergySource::Eigenvalues(grid),
    )?;

    let mut out = Table::new(vec![
        "n",
        "E_closed",
        "E_numeric",
        "E_error_estimate",
        "E_rel_err",
        "P_closed",
        "P_fd",
        "P_fd_rel_err",
        "P_numeric",
        "P_numeric_rel_err",
        "pass",
    ]);
    let mut failures = Vec::new();
    for i in 0..levels {
        let n = i as u64 + 1;
        let e = energy_level(&params, n)?.total;
        let p = pressure_level(&params, n)?.total;
        let e_err = rel(numeric.eigenvalues[i], e);
        let pfd_err = rel(p_fd[i], p);
        let pnum_err = rel(p_num[i], p);
        let pass = e_err <= e_tol && pfd_err <= p_tol && pnum_err <= pe_tol;
        if !pass {
            failures.push(n.to_string());
        }
        out.push(vec![
            n.into(),
            e.into(),
            numeric.eigenvalues[i].into(),
            numeric.error_estimates[i].unwrap_or(f64::NAN).into(),
            e_err.into(),
            p.into(),
            p_fd[i].into(),
            pfd_err.into(),
            p_num[i].into(),
            pnum_err.into(),
            pass.into(),
        ]);
    }
    let envelope = json!({
        "parameters": parameters_json(&params),
        "grid": {
            "interior_points": grid.interior_points,
            "richardson_levels": grid.richardson_levels,
            "level_count": grid.level_count,
        },
        "tolerances": float_object(&[
            ("energy", e_tol),
            ("pressure_closed_form", p_tol),
            ("pressure_eigenvalues", pe_tol),
        ]),
        "pass": failures.is_empty(),
    });
    emit(&args.common, &render(&args.common, &out, envelope))?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Breach(format!(
            "levels {} outside tolerance",
            failures.join(", ")
        )))
    }
}
