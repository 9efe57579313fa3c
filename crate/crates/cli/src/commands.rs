use std::collections::BTreeMap;

use critqfi::analysis::{
    log_grid, par_map, peak_qfi, phase_diagram, power_law_fit, scaling_class, sigma_f, EvalSettings, PeakSearch,
    SigmaFSettings,
};
use critqfi::models::{LmgParams, LzParams, TfimParams};
use critqfi::qfi::{
    crb_variance, lmg_qfim_numeric, lmg_thermo_qfim, lz_qfim_closed, lz_qfim_numeric, tfim_qfim_closed,
    tfim_qfim_numeric, QfiMatrix,
};
use critqfi::uncertainty::Probe;
use critqfi::{Error, ParameterId, Tolerances};
use serde_json::{json, Value};

use crate::args::{
    Command, EvalArgs, FitArgs, Model, PeakScalingArgs, PhaseDiagramArgs, QfimArgs, SearchArgs, SigmaFArgs,
};
use crate::error::CliError;
use crate::output::{num, opt_flag, opt_num, Table};
use crate::ranges::{check_size, parse_sizes, parse_values};

pub const DEFAULT_COUNT: usize = 101;

const QFIM_COLUMNS: crate::output::Columns = &[
    ("method", "closed or numeric"),
    ("i_omega_omega", "1/E^2, E the unit of omega and g"),
    ("i_omega_g", "1/E^2"),
    ("i_g_g", "1/E^2"),
    ("det", "1/E^4"),
    ("singular", "det <= 1e-10 * (|I_ww I_gg| + I_wg^2)"),
    ("crb_omega", "E^2, inf when singular"),
    ("crb_g", "E^2, inf when singular"),
];

const SWEEP_COLUMNS: crate::output::Columns = &[
    ("g_over_omega", "mean coupling / omega"),
    ("sigma_over_omega", "coupling standard deviation / omega"),
    ("qfi_times_omega2", "averaged QFI for omega, times omega^2"),
    ("converged", "|I(M) - I(2M)| / I(2M) <= 1e-6; empty when unchecked or failed"),
];

const PEAK_COLUMNS: crate::output::Columns = &[
    ("n", "number of spins; empty for lz"),
    ("sigma_over_omega", "coupling standard deviation / omega"),
    ("peak_qfi_times_omega2", "maximum over g of the averaged QFI, times omega^2"),
    ("g_star_over_omega", "maximising mean coupling / omega"),
];

const SIGMA_F_COLUMNS: crate::output::Columns = &[
    ("n", "number of spins; empty for lz"),
    ("sigma_f_over_omega", "largest tolerated standard deviation / omega"),
    ("epsilon_rel", "tolerated relative deviation of the peak"),
];

const FIT_COLUMNS: crate::output::Columns = &[
    ("prefactor", "a in y = a x^b"),
    ("exponent", "b"),
    ("rms_residual", "RMS of ln-space residuals"),
    ("points_used", "rows entering the fit"),
];

/// Table plus per-cell details for the sidecar.
pub struct RunOutput {
    pub table: Table,
    pub details: Value,
    pub failed: usize,
    pub stdout: Option<String>,
}

fn lib_error(e: Error) -> CliError {
    match e {
        Error::InvalidArgument(m) => CliError::Usage(m),
        other => CliError::Compute(other.to_string()),
    }
}

fn check_omega(omega: f64) -> Result<(), CliError> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--omega must be finite and positive, got {omega}")))
    }
}

fn probe(model: Model, n: Option<usize>) -> Result<Probe, CliError> {
    let need = |n: Option<usize>| {
        let n = n.ok_or_else(|| CliError::Usage(format!("--n is required for {model:?}")))?;
        check_size(model, n)?;
        Ok(n)
    };
    match model {
        Model::Lz => Ok(Probe::LandauZener),
        Model::Tfim => Ok(Probe::Ising { n_spins: need(n)? }),
        Model::Lmg => Ok(Probe::Lmg { n_spins: need(n)? }),
        Model::LmgThermo => Err(CliError::Usage(
            "lmg-thermo has no finite-size state to average; it is available in qfim only".into(),
        )),
    }
}

fn probes(model: Model, sizes: &str) -> Result<Vec<Probe>, CliError> {
    match model {
        Model::Lz => Ok(vec![Probe::LandauZener]),
        _ => parse_sizes(sizes, model)?
            .into_iter()
            .map(|n| probe(model, Some(n)))
            .collect(),
    }
}

fn size_of(p: Probe) -> String {
    match p {
        Probe::LandauZener => String::new(),
        Probe::Ising { n_spins } | Probe::Lmg { n_spins } => n_spins.to_string(),
    }
}

fn settings(omega: f64, eval: &EvalArgs) -> Result<EvalSettings, CliError> {
    check_omega(omega)?;
    Ok(EvalSettings {
        omega,
        nodes: eval.nodes,
        route: eval.route.into(),
        path: eval.path.into(),
        check_convergence: eval.check_convergence,
        tolerances: Tolerances::default(),
    })
}

fn search(s: &SearchArgs) -> PeakSearch {
    PeakSearch {
        lower: s.g_min,
        upper: s.g_max,
        coarse_points: s.coarse_points,
        tolerance: s.tolerance,
    }
}

pub fn execute(command: &Command) -> Result<RunOutput, CliError> {
    match command {
        Command::Qfim(a) => qfim(a),
        Command::Sweep(a) => {
            let g = parse_values(&a.g, DEFAULT_COUNT)?;
            let sigma = parse_values(&a.sigma, DEFAULT_COUNT)?;
            grid(a.model, a.n, a.omega, &g, &sigma, &a.eval)
        }
        Command::PhaseDiagram(PhaseDiagramArgs {
            model,
            n,
            omega,
            g,
            sigma,
            eval,
            ..
        }) => {
            let g = parse_values(g, DEFAULT_COUNT)?;
            let sigma = parse_values(sigma, DEFAULT_COUNT)?;
            grid(*model, *n, *omega, &g, &sigma, eval)
        }
        Command::PeakScaling(a) => peak_scaling(a),
        Command::SigmaF(a) => sigma_f_cmd(a),
        Command::Fit(a) => fit(a),
        Command::Rerun(_) => Err(CliError::Usage("rerun cannot be nested".into())),
    }
}

fn qfim_row(method: &str, q: Result<QfiMatrix, Error>, table: &mut Table, details: &mut Vec<Value>) -> bool {
    match q {
        Ok(q) => {
            table.rows.push(vec![
                method.to_string(),
                num(q.i_oo),
                num(q.i_og),
                num(q.i_gg),
                num(q.det()),
                q.is_singular().to_string(),
                num(crb_variance(&q, ParameterId::Omega)),
                num(crb_variance(&q, ParameterId::Coupling)),
            ]);
            details.push(json!({ "method": method, "error": null }));
            true
        }
        Err(e) => {
            let mut row = vec![method.to_string()];
            row.resize(QFIM_COLUMNS.len(), String::new());
            table.rows.push(row);
            details.push(json!({ "method": method, "error": e.to_string() }));
            false
        }
    }
}

fn qfim(a: &QfimArgs) -> Result<RunOutput, CliError> {
    check_omega(a.omega)?;
    if !a.g.is_finite() {
        return Err(CliError::Usage(format!("--g must be finite, got {}", a.g)));
    }
    let mut rows: Vec<(&str, Result<QfiMatrix, Error>)> = Vec::new();
    match a.model {
        Model::Lz => {
            let p = LzParams::new(a.omega, a.g).map_err(lib_error)?;
            rows.push(("closed", lz_qfim_closed(&p)));
            rows.push(("numeric", lz_qfim_numeric(&p)));
        }
        Model::Tfim => {
            let Probe::Ising { n_spins } = probe(a.model, a.n)? else { unreachable!() };
            let p = TfimParams::new(a.omega, a.g, n_spins).map_err(lib_error)?;
            rows.push(("closed", tfim_qfim_closed(&p)));
            rows.push(("numeric", tfim_qfim_numeric(&p)));
        }
        Model::Lmg => {
            let Probe::Lmg { n_spins } = probe(a.model, a.n)? else { unreachable!() };
            let p = LmgParams::new(a.omega, a.g, n_spins).map_err(lib_error)?;
            rows.push(("numeric", lmg_qfim_numeric(&p)));
        }
        Model::LmgThermo => rows.push(("closed", lmg_thermo_qfim(a.omega, a.g))),
    }
    let mut table = Table::new(QFIM_COLUMNS);
    let mut details = Vec::new();
    let mut failed = 0;
    for (method, q) in rows {
        if !qfim_row(method, q, &mut table, &mut details) {
            failed += 1;
        }
    }
    let stdout = String::from_utf8(table.to_csv()?).ok();
    Ok(RunOutput {
        table,
        details: Value::Array(details),
        failed,
        stdout,
    })
}

fn grid(
    model: Model,
    n: Option<usize>,
    omega: f64,
    g: &[f64],
    sigma: &[f64],
    eval: &EvalArgs,
) -> Result<RunOutput, CliError> {
    let probe = probe(model, n)?;
    let s = settings(omega, eval)?;
    let sweep = phase_diagram(probe, g, sigma, &s, None).map_err(lib_error)?;
    let mut table = Table::new(SWEEP_COLUMNS);
    let mut cells = Vec::with_capacity(sweep.cells.len());
    let points = sigma.iter().flat_map(|&s| g.iter().map(move |&g| (s, g)));
    for ((s, g), cell) in points.zip(&sweep.cells) {
        table
            .rows
            .push(vec![num(g), num(s), opt_num(cell.value), opt_flag(cell.converged)]);
        cells.push(json!({
            "g_over_omega": g,
            "sigma_over_omega": s,
            "converged": cell.converged,
            "relative_change": cell.relative_change,
            "error": cell.error,
        }));
    }
    Ok(RunOutput {
        table,
        failed: sweep.failed_cells(),
        details: json!({ "metadata": sweep.metadata, "cells": cells }),
        stdout: None,
    })
}

fn peak_scaling(a: &PeakScalingArgs) -> Result<RunOutput, CliError> {
    let probes = probes(a.model, &a.n)?;
    let sigmas = parse_values(&a.sigma_list, DEFAULT_COUNT)?;
    if sigmas.iter().any(|s| *s < 0.0) {
        return Err(CliError::Usage("--sigma-list values must be non-negative".into()));
    }
    let s = settings(a.omega, &a.eval)?;
    let search = search(&a.search);
    let cells: Vec<(Probe, f64)> = probes
        .iter()
        .flat_map(|&p| sigmas.iter().map(move |&s| (p, s)))
        .collect();
    let peaks = par_map(&cells, None, |&(p, sigma)| peak_qfi(p, sigma, &search, &s)).map_err(lib_error)?;
    let mut table = Table::new(PEAK_COLUMNS);
    let mut details = Vec::new();
    let mut failed = 0;
    for (&(p, sigma), peak) in cells.iter().zip(peaks) {
        match peak {
            Ok(pk) => {
                table
                    .rows
                    .push(vec![size_of(p), num(sigma), num(pk.value), num(pk.g_star)]);
                details.push(json!({
                    "n": size_of(p),
                    "sigma_over_omega": sigma,
                    "multi_peak": pk.multi_peak,
                    "converged": pk.converged,
                    "relative_change": pk.relative_change,
                    "error": null,
                }));
            }
            Err(e) => {
                failed += 1;
                table
                    .rows
                    .push(vec![size_of(p), num(sigma), String::new(), String::new()]);
                details.push(json!({ "n": size_of(p), "sigma_over_omega": sigma, "error": e.to_string() }));
            }
        }
    }
    Ok(RunOutput {
        table,
        details: json!({ "settings": s, "search": search, "cells": details }),
        failed,
        stdout: None,
    })
}

fn sigma_f_cmd(a: &SigmaFArgs) -> Result<RunOutput, CliError> {
    let probes = probes(a.model, &a.n)?;
    let s = settings(a.omega, &a.eval)?;
    let cfg = SigmaFSettings {
        epsilon_rel: a.epsilon,
        sigmas: log_grid(a.sigma_min, a.sigma_max, a.per_decade).map_err(lib_error)?,
        reference_search: search(&a.search),
        window: a.window,
        window_points: a.window_points,
        stride: a.stride,
    };
    let results = par_map(&probes, None, |&p| sigma_f(p, &cfg, &s)).map_err(lib_error)?;
    let mut table = Table::new(SIGMA_F_COLUMNS);
    let mut details = Vec::new();
    let mut failed = 0;
    for (&p, r) in probes.iter().zip(results) {
        match r {
            Ok(r) => {
                table
                    .rows
                    .push(vec![size_of(p), num(r.sigma_f), num(r.epsilon_rel)]);
                details.push(json!({
                    "n": size_of(p),
                    "status": r.status,
                    "monotone": r.monotone,
                    "reference_g_star_over_omega": r.reference.g_star,
                    "reference_peak_qfi_times_omega2": r.reference.value,
                    "curve": r.curve,
                    "error": null,
                }));
            }
            Err(e) => {
                failed += 1;
                table
                    .rows
                    .push(vec![size_of(p), String::new(), num(a.epsilon)]);
                details.push(json!({ "n": size_of(p), "error": e.to_string() }));
            }
        }
    }
    Ok(RunOutput {
        table,
        details: json!({ "settings": s, "sigma_grid_points": cfg.sigmas.len(), "cells": details }),
        failed,
        stdout: None,
    })
}

fn fit(a: &FitArgs) -> Result<RunOutput, CliError> {
    let mut reader = csv::Reader::from_path(&a.input).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(&a.input, io),
        other => CliError::Usage(format!("{}: {other:?}", a.input.display())),
    })?;
    let bad = |e: csv::Error| CliError::Usage(format!("{}: {e}", a.input.display()));
    let header: Vec<String> = reader.headers().map_err(bad)?.iter().map(String::from).collect();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("column `{name}` not in {}", a.input.display())))
    };
    let x_name = a.x.clone().unwrap_or_else(|| "n".into());
    let y_name = match &a.y {
        Some(y) => y.clone(),
        None => ["peak_qfi_times_omega2", "sigma_f_over_omega"]
            .into_iter()
            .find(|c| header.iter().any(|h| h == c))
            .ok_or_else(|| CliError::Usage("cannot detect the y column; pass --y".into()))?
            .to_string(),
    };
    let (xi, yi) = (col(&x_name)?, col(&y_name)?);
    let filter = match &a.filter {
        Some(f) => {
            let (k, v) = f
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--where expects column=value, got `{f}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--where value `{v}` is not a number")))?;
            Some((col(k.trim())?, v))
        }
        None => None,
    };

    let mut points = Vec::new();
    let mut sigmas = BTreeMap::new();
    let sigma_col = header.iter().position(|h| h == "sigma_over_omega");
    for rec in reader.records() {
        let rec = rec.map_err(bad)?;
        let field = |i: usize| rec.get(i).and_then(|s| s.trim().parse::<f64>().ok());
        if let Some((k, v)) = filter {
            if field(k) != Some(v) {
                continue;
            }
        }
        let (Some(x), Some(y)) = (field(xi), field(yi)) else {
            continue;
        };
        if a.x_min.is_some_and(|m| x < m) || a.x_max.is_some_and(|m| x > m) {
            continue;
        }
        if let Some(s) = sigma_col.and_then(field) {
            sigmas.insert(s.to_bits(), s);
        }
        points.push((x, y));
    }
    if filter.is_none() && sigmas.len() > 1 {
        return Err(CliError::Usage(
            "input mixes several sigma_over_omega values; select one with --where sigma_over_omega=VALUE".into(),
        ));
    }
    let f = power_law_fit(&points).map_err(|e| CliError::Compute(e.to_string()))?;
    let mut table = Table::new(FIT_COLUMNS);
    table.rows.push(vec![
        num(f.prefactor),
        num(f.exponent),
        num(f.rms_residual),
        f.points_used.to_string(),
    ]);
    Ok(RunOutput {
        table,
        details: json!({
            "x": x_name,
            "y": y_name,
            "scaling_class": scaling_class(&f).label(),
            "points": points,
        }),
        failed: 0,
        stdout: None,
    })
}
