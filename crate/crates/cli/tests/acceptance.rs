//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit if any fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, ExitCode};

use pto_core::limits::{fp_limit_expansion, harmonic_lambda, ho_limit_expansion};
use pto_core::numerics::fit::polyfit;
use pto_core::numerics::richardson::log_log_slope;
use pto_core::oracle::{
    convergence_study, numerical_pressures, solve_eigenvalues, EnergySource, GridSpec,
};
use pto_core::perturbation::perturbed_energy;
use pto_core::semiclassical::{qc_energy_closed, qc_energy_numeric};
use pto_core::spectra::{effective_exponent, energy_level, pressure_level};
use pto_core::{derive_scales, PtParameters};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params(v0: f64, l: f64) -> PtParameters {
    PtParameters::reduced(v0, l).expect("valid parameters")
}

fn reference_sets() -> [(&'static str, PtParameters); 3] {
    [
        ("lambda=1", params(0.375, FRAC_PI_2)),
        ("oscillator", params(0.5, 50.0 * PI)),
        ("box-like", params(0.005, FRAC_PI_2)),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn per_set(values: &[(&str, f64)]) -> String {
    values
        .iter()
        .map(|(name, v)| format!("{name} {v:.2e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn log_space(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

fn exact_spectrum_vs_oracle() -> Outcome {
    let grid = GridSpec::new(4000, 3, 10).map_err(|e| e.to_string())?;
    let mut worst = Vec::new();
    for (name, p) in reference_sets() {
        let numeric = solve_eigenvalues(&p, &grid).map_err(|e| e.to_string())?;
        let max = numeric
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, e)| rel(*e, energy_level(&p, i as u64 + 1).unwrap().total))
            .fold(0.0, f64::max);
        worst.push((name, max));
    }
    let ok = worst.iter().all(|(_, m)| *m <= 1e-6);
    check(
        ok,
        format!("max rel err n<=10, N=4000, 3 grids: {}", per_set(&worst)),
    )
}

fn hellmann_feynman() -> Outcome {
    let mut worst = Vec::new();
    for (name, p) in reference_sets() {
        let fd = numerical_pressures(&p, 5, 1e-4, EnergySource::ClosedForm)
            .map_err(|e| e.to_string())?;
        let max = fd
            .iter()
            .enumerate()
            .map(|(i, v)| rel(*v, pressure_level(&p, i as u64 + 1).unwrap().total))
            .fold(0.0, f64::max);
        worst.push((name, max));
    }
    let p1 = pressure_level(&params(0.375, FRAC_PI_2), 1).unwrap().total;
    let p1_err = rel(p1, 2.25 / PI);
    let ok = worst.iter().all(|(_, m)| *m <= 1e-8) && p1_err <= 1e-12;
    check(
        ok,
        format!(
            "max rel err n<=5, delta=1e-4: {}; P1 = {p1} (2.25/pi rel {p1_err:.1e})",
            per_set(&worst)
        ),
    )
}

fn equation_of_state() -> Outcome {
    let box_exact = [0.5, 1.0, 7.3]
        .iter()
        .all(|&l| (1..=20).all(|n| effective_exponent(&params(0.0, l), n).unwrap() == 2.0));
    let dev = |l: f64| (effective_exponent(&params(0.5, l), 1).unwrap() - 1.0).abs();
    let (d1, d10) = (dev(50.0 * PI), dev(500.0 * PI));
    let ok = box_exact && d1 <= 1e-2 && d10 / d1 <= 0.5;
    check(
        ok,
        format!("s_eff=2 exactly at V0=0: {box_exact}; |s_eff-1| = {d1:.3e} at L=50pi, {d10:.3e} at L=500pi (ratio {:.3})", d10 / d1),
    )
}

fn fp_slope(order: u8) -> f64 {
    // T = 1/2 at L = π/2, so x = 4V0/T = 8V0
    let xs = log_space(1e-5, 1e-1, 17);
    let errs: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let p = params(x / 8.0, FRAC_PI_2);
            let e = fp_limit_expansion(&p, order).unwrap();
            (e.lambda_approx - derive_scales(&p).lambda_exact).abs()
        })
        .collect();
    let ratios: Vec<f64> = xs
        .iter()
        .map(|&x| params(x / 8.0, FRAC_PI_2).coupling_ratio())
        .collect();
    log_log_slope(&ratios, &errs)
}

/// Slope of the `ħω` error against `1/λ̃` at fixed `V0 = 1`.
fn ho_slope(order: u8, lambda_lo: f64, lambda_hi: f64) -> f64 {
    let targets = log_space(lambda_lo, lambda_hi, 17);
    let mut inv = Vec::new();
    let mut errs = Vec::new();
    for lt in targets {
        // λ̃ = 2 sqrt(V0/T) with T = π²/(8L²)
        let l = lt * PI / (4.0 * 2f64.sqrt());
        let p = params(1.0, l);
        let e = ho_limit_expansion(&p, order).unwrap();
        inv.push(1.0 / harmonic_lambda(&p));
        errs.push((e.oscillator_quantum_approx - derive_scales(&p).oscillator_quantum).abs());
    }
    log_log_slope(&inv, &errs)
}

fn limit_orders() -> Outcome {
    let fp = [fp_slope(1), fp_slope(2)];
    let ho = [ho_slope(1, 10.0, 1e5), ho_slope(2, 10.0, 1e5)];
    let ok = (0..2).all(|k| {
        let want = k as f64 + 2.0;
        (fp[k] - want).abs() <= 0.2 && (ho[k] - want).abs() <= 0.2
    });
    check(
        ok,
        format!(
            "box side (x in [1e-5, 1e-1]) k=1: {:.3}, k=2: {:.3}; oscillator side (1/lt over 4 decades) k=1: {:.3}, k=2: {:.3}",
            fp[0], fp[1], ho[0], ho[1]
        ),
    )
}

fn oscillator_third_order() -> Outcome {
    // the α⁴ term of ħω vanishes, so order 3 is accurate through α⁴
    let s = ho_slope(3, 10.0, 1e3);
    check(
        (s - 5.0).abs() <= 0.2,
        format!("oscillator side k=3 slope {s:.3} (expected 5)"),
    )
}

fn semiclassical() -> Outcome {
    let mut root_err: f64 = 0.0;
    let mut monotone = true;
    for v0 in [0.01, 0.375, 3.0, 50.0] {
        for l in [0.5, FRAC_PI_2, 10.0] {
            let p = params(v0, l);
            for n in 1..=20 {
                let a = qc_energy_numeric(&p, n).map_err(|e| e.to_string())?;
                root_err = root_err.max(rel(a, qc_energy_closed(&p, n).unwrap()));
            }
            let devs: Vec<f64> = (1..=50)
                .map(|n| {
                    rel(
                        qc_energy_closed(&p, n).unwrap(),
                        energy_level(&p, n).unwrap().total,
                    )
                })
                .collect();
            monotone &= devs.windows(2).all(|w| w[1] < w[0]);
        }
    }
    let p = params(0.375, FRAC_PI_2);
    let e1 = qc_energy_closed(&p, 1).unwrap();
    // E_QC is a quadratic in u = n - 1/2 with curvature T and slope ħω̃
    let us: Vec<f64> = (1..=30).map(|n| n as f64 - 0.5).collect();
    let es: Vec<f64> = (1..=30).map(|n| qc_energy_closed(&p, n).unwrap()).collect();
    let fit = polyfit(&us, &es, 2).map_err(|e| e.to_string())?;
    let t = p.kinetic_scale();
    let shape = fit.coefficients[0].abs() <= 1e-10
        && rel(fit.coefficients[1], t * harmonic_lambda(&p)) <= 1e-10
        && rel(fit.coefficients[2], t) <= 1e-10
        && fit.max_residual <= 1e-10;
    let ok = root_err <= 1e-8 && monotone && (e1 - 0.5580127).abs() <= 1e-6 && shape;
    check(
        ok,
        format!(
            "root-find vs closed form max rel {root_err:.1e}; deviation decreasing n=1..50 on 12 sets: {monotone}; E1_QC = {e1:.9}; quadratic shape: {shape}"
        ),
    )
}

fn perturbation() -> Outcome {
    let p = params(0.5, 50.0 * PI);
    let t = p.kinetic_scale();
    let hw = t * harmonic_lambda(&p);
    let ratios: Vec<f64> = (1..=5)
        .map(|n| {
            let diff = energy_level(&p, n).unwrap().total - perturbed_energy(&p, n).unwrap().total;
            diff / (t * t / (2.0 * hw) * (n as f64 - 0.5))
        })
        .collect();
    let ns: Vec<f64> = (1..=12).map(f64::from).collect();
    let es: Vec<f64> = (1..=12)
        .map(|n| perturbed_energy(&p, n).unwrap().total)
        .collect();
    let fit = polyfit(&ns, &es, 2).map_err(|e| e.to_string())?;
    let curvature = rel(fit.coefficients[2], t);
    let ok = ratios.iter().all(|r| (0.9..=1.1).contains(r)) && curvature <= 1e-10;
    check(
        ok,
        format!("residual ratios n<=5: {ratios:.4?}; n^2 coefficient vs T rel {curvature:.1e}"),
    )
}

fn discretization() -> Outcome {
    let mut slopes = Vec::new();
    for (name, p) in [
        ("box", params(0.0, 1.0)),
        ("lambda=1", params(0.375, FRAC_PI_2)),
    ] {
        let r = convergence_study(&p, &[500, 1000, 2000], 3).map_err(|e| e.to_string())?;
        slopes.push((name, r.slopes));
    }
    let ok = slopes
        .iter()
        .all(|(_, s)| s.iter().all(|v| (v - 2.0).abs() <= 0.2));
    check(ok, format!("error-vs-h slopes for n=1..3: {slopes:.3?}"))
}

fn run_cli(args: &[&str], threads: &str) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_pto"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code())
}

fn cli_determinism() -> Outcome {
    let case = [
        "--well-depth",
        "0.375",
        "--half-width",
        "1.5707963267948966",
    ];
    let wide = ["--well-depth", "0.375", "--half-width", "30"];
    let shallow = ["--well-depth", "0.01", "--half-width", "1.5707963267948966"];
    let runs: Vec<Vec<&str>> = vec![
        [&["spectrum"][..], &case].concat(),
        [
            &[
                "sweep",
                "--well-depth",
                "0.375",
                "--sweep-var",
                "half-width",
            ][..],
            &["--from", "0.5", "--to", "20", "--steps", "25"],
        ]
        .concat(),
        [&["compare", "--method", "fp-limit"][..], &shallow].concat(),
        [&["compare", "--method", "ho-limit"][..], &wide].concat(),
        [&["compare", "--method", "semiclassical"][..], &case].concat(),
        [&["compare", "--method", "perturbation"][..], &wide].concat(),
        [&["validate"][..], &case].concat(),
    ];
    let mut mismatches = Vec::new();
    let mut validate_code = None;
    for run in &runs {
        for format in ["csv", "json"] {
            let mut args = run.clone();
            args.extend(["--format", format]);
            let first = run_cli(&args, "0");
            let second = run_cli(&args, "1");
            if first != second || first.0.is_empty() {
                mismatches.push(format!("{} {format}", run[..3].join(" ")));
            }
            if run[0] == "validate" {
                validate_code = first.1;
            }
        }
    }
    let mut coarse = vec!["validate"];
    coarse.extend(case);
    coarse.extend(["--grid-n", "64"]);
    let coarse_code = run_cli(&coarse, "0").1;
    let ok = mismatches.is_empty() && validate_code == Some(0) && coarse_code == Some(4);
    check(
        ok,
        format!(
            "{} subcommand runs repeated byte-identical (mismatches: {mismatches:?}); validate exit {validate_code:?} at defaults, {coarse_code:?} at N=64",
            runs.len() * 2
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1", exact_spectrum_vs_oracle),
        ("2", hellmann_feynman),
        ("3", equation_of_state),
        ("4", limit_orders),
        ("4+", oscillator_third_order),
        ("5", semiclassical),
        ("6", perturbation),
        ("7", discretization),
        ("8", cli_determinism),
    ];
    let mut failed = 0;
    for (id, f) in criteria {
        let start = std::time::Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({secs:.1} s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id}: FAIL ({secs:.1} s) {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
