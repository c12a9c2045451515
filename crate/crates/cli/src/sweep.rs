//! Sweep execution: grid expansion, per-point tier evaluation with error
//! capture, deterministic CSV emission, and a JSON manifest with
//! checksums over every artifact.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use qbattery_core::analytic::{self, EnergyReport};
use qbattery_core::fock::{self, DensityState, FockConfig};
use qbattery_core::moments::{self, MomentState};
use qbattery_core::{BatteryParams, DriveKind};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{AxisParam, SweepSpec, Tier};
use crate::format;

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub workers: usize,
    /// Relative tolerance handed to the adaptive integrators.
    pub tol: f64,
    /// Override both Fock truncation sizes.
    pub fock_n: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            tol: 1e-8,
            fock_n: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ManifestFile {
    pub name: String,
    pub sha256: String,
    pub rows: usize,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub schema: String,
    pub recipe: String,
    pub spec: serde_json::Value,
    pub tolerance: f64,
    pub input_sha256: String,
    pub files: Vec<ManifestFile>,
    pub status_counts: BTreeMap<String, usize>,
}

pub struct SweepReport {
    pub manifest_path: PathBuf,
    pub files: Vec<PathBuf>,
    pub status_counts: BTreeMap<String, usize>,
}

/// One evaluated grid point for one tier.
struct Row {
    coords: Vec<f64>,
    status: String,
    values: Vec<Option<f64>>,
}

fn apply_axis(p: &mut BatteryParams, param: AxisParam, value: f64) {
    match param {
        AxisParam::Delta => p.delta = value,
        AxisParam::G => p.g = value,
        AxisParam::Gamma => p.gamma = value,
        AxisParam::GammaH => p.gamma_h = value,
        AxisParam::Omega => p.omega_drive_amp = value,
        AxisParam::Theta => p.theta = value,
        AxisParam::Time => unreachable!("time handled by trajectory mode"),
    }
}

fn tier_columns(tier: Tier, spec: &SweepSpec, trajectory: bool) -> Vec<&'static str> {
    match (tier, trajectory) {
        (Tier::Analytic, true) => vec!["e_holder", "e_passive", "ergotropy"],
        (Tier::Analytic, false) => match spec.params.drive_kind {
            DriveKind::Linear => vec![
                "e_holder",
                "e_passive",
                "ergotropy",
                "d_value",
                "delta_opt",
                "erg_max",
                "eps_plus_re",
                "eps_plus_im",
                "eps_minus_re",
                "eps_minus_im",
            ],
            DriveKind::Quadratic => vec![
                "e_holder",
                "e_passive",
                "ergotropy",
                "d_value",
                "ham_stable",
                "omega_plus",
                "omega_minus",
                "omega_c1",
                "omega_c2",
                "liouv_stable",
            ],
        },
        (Tier::Moments, true) => vec![
            "n_c", "n_h", "e_holder", "e_passive", "ergotropy", "d_value", "power",
        ],
        (Tier::Moments, false) => vec![
            "n_c",
            "n_h",
            "e_holder",
            "e_passive",
            "ergotropy",
            "d_value",
            "var_x",
            "var_p",
            "uncertainty_product",
        ],
        (Tier::Fock, true) => vec![
            "n_c",
            "n_h",
            "e_holder",
            "e_passive",
            "ergotropy",
            "purity",
            "negativity",
        ],
        (Tier::Fock, false) => {
            let mut cols = vec![
                "n_c",
                "n_h",
                "e_holder",
                "e_passive",
                "ergotropy",
                "purity",
                "negativity",
                "top_pop_c",
                "top_pop_h",
                "saturated",
                "residual",
            ];
            if spec.fock_gap {
                cols.push("gap");
            }
            cols
        }
    }
}

fn named(cols: &[&'static str], pairs: &[(&str, Option<f64>)]) -> Vec<Option<f64>> {
    cols.iter()
        .map(|c| {
            pairs
                .iter()
                .find(|(name, _)| name == c)
                .and_then(|(_, v)| *v)
        })
        .collect()
}

fn energy_pairs(r: &EnergyReport) -> [(&'static str, Option<f64>); 4] {
    [
        ("e_holder", Some(r.e_holder)),
        ("e_passive", Some(r.e_passive)),
        ("ergotropy", Some(r.ergotropy)),
        ("d_value", Some(r.d_value)),
    ]
}

fn eval_analytic_steady(p: &BatteryParams, cols: &[&'static str]) -> (String, Vec<Option<f64>>) {
    let mut pairs: Vec<(&str, Option<f64>)> = Vec::new();
    let mut status = "ok".to_string();
    match p.drive_kind {
        DriveKind::Linear => {
            if let Ok(s) = analytic::classify_linear_regime(p) {
                pairs.push(("eps_plus_re", Some(s.eps_plus.re)));
                pairs.push(("eps_plus_im", Some(s.eps_plus.im)));
                pairs.push(("eps_minus_re", Some(s.eps_minus.re)));
                pairs.push(("eps_minus_im", Some(s.eps_minus.im)));
            }
            pairs.push(("delta_opt", Some(analytic::linear_optimal_detuning(p.g, p.gamma))));
            if let Ok(m) = analytic::linear_max_steady_ergotropy(p) {
                pairs.push(("erg_max", Some(m)));
            }
            match analytic::linear_steady_ergotropy(p) {
                Ok(r) => pairs.extend(energy_pairs(&r)),
                Err(_) => status = "no-steady-state".into(),
            }
        }
        DriveKind::Quadratic => {
            if let Ok(h) = analytic::hamiltonian_stability(p) {
                pairs.push(("ham_stable", Some(if h.stable { 1.0 } else { 0.0 })));
            }
            if let Ok(b) = analytic::bogoliubov_spectrum(p) {
                // normal-mode frequencies are reported only when real (stable side)
                let real_part = |z: num_complex::Complex64| (z.im.abs() < 1e-12).then_some(z.re);
                pairs.push(("omega_plus", real_part(b.omega_plus)));
                pairs.push(("omega_minus", real_part(b.omega_minus)));
            }
            if let Ok((c1, c2)) = analytic::critical_amplitudes(p) {
                pairs.push(("omega_c1", c1.is_finite().then_some(c1)));
                pairs.push(("omega_c2", c2.is_finite().then_some(c2)));
            }
            match analytic::liouvillian_stable(p) {
                Ok(stable) => {
                    pairs.push(("liouv_stable", Some(if stable { 1.0 } else { 0.0 })));
                    if stable {
                        if let Ok(r) = analytic::quadratic_steady_ergotropy(p) {
                            pairs.extend(energy_pairs(&r));
                        }
                    } else {
                        status = "unstable".into();
                    }
                }
                Err(_) => status = "no-steady-state".into(),
            }
        }
    }
    (status, named(cols, &pairs))
}

fn moment_pairs(m: &MomentState, p: &BatteryParams) -> Vec<(&'static str, Option<f64>)> {
    let mut pairs: Vec<(&str, Option<f64>)> =
        vec![("n_c", Some(m.n_c)), ("n_h", Some(m.n_h))];
    if let Ok(r) = moments::energy_report_from_moments(m, p.omega_b) {
        pairs.extend(energy_pairs(&r));
    }
    let q = moments::quadrature_variances(m, p.theta);
    pairs.push(("var_x", Some(q.var_x)));
    pairs.push(("var_p", Some(q.var_p)));
    pairs.push(("uncertainty_product", Some(q.uncertainty_product)));
    pairs
}

fn eval_moments_steady(p: &BatteryParams, cols: &[&'static str]) -> (String, Vec<Option<f64>>) {
    match moments::steady_state_moments(p) {
        Ok(m) => ("ok".into(), named(cols, &moment_pairs(&m, p))),
        Err(qbattery_core::Error::NoSteadyState) => ("unstable".into(), named(cols, &[])),
        Err(_) => ("no-steady-state".into(), named(cols, &[])),
    }
}

fn fock_state_pairs(
    ds: &DensityState,
    p: &BatteryParams,
) -> Vec<(&'static str, Option<f64>)> {
    let m = fock::moments_from_density(ds);
    let mut pairs: Vec<(&str, Option<f64>)> =
        vec![("n_c", Some(m.n_c)), ("n_h", Some(m.n_h))];
    let rho_h = fock::reduced_holder_state(ds);
    if let Ok(r) = fock::passive_energy_and_ergotropy(&rho_h, p.omega_b) {
        pairs.push(("e_holder", Some(r.e_holder)));
        pairs.push(("e_passive", Some(r.e_passive)));
        pairs.push(("ergotropy", Some(r.ergotropy)));
    }
    pairs.push(("purity", Some(fock::purity(ds))));
    pairs.push(("negativity", Some(fock::negativity(ds))));
    pairs
}

fn eval_fock_steady(
    p: &BatteryParams,
    cfg: &FockConfig,
    want_gap: bool,
    cols: &[&'static str],
) -> (String, Vec<Option<f64>>) {
    match fock::steady_state_density(p, cfg) {
        Ok(sd) => {
            let mut pairs = fock_state_pairs(&sd.state, p);
            pairs.push(("top_pop_c", Some(sd.top_level_population.0)));
            pairs.push(("top_pop_h", Some(sd.top_level_population.1)));
            pairs.push(("saturated", Some(if sd.saturated { 1.0 } else { 0.0 })));
            pairs.push(("residual", Some(sd.residual)));
            if want_gap {
                pairs.push(("gap", fock::liouvillian_gap(p, cfg).ok()));
            }
            let status = if sd.truncation_warning {
                "truncation-warning"
            } else {
                "ok"
            };
            (status.into(), named(cols, &pairs))
        }
        Err(_) => ("no-steady-state".into(), named(cols, &[])),
    }
}

/// Steady-state evaluation of one grid point for one tier.
fn eval_steady(tier: Tier, p: &BatteryParams, spec: &SweepSpec, cols: &[&'static str]) -> Row {
    let (status, values) = match tier {
        Tier::Analytic => eval_analytic_steady(p, cols),
        Tier::Moments => eval_moments_steady(p, cols),
        Tier::Fock => {
            let cfg = spec.fock.expect("validated: fock tier has a config");
            eval_fock_steady(p, &cfg, spec.fock_gap, cols)
        }
    };
    Row {
        coords: Vec::new(),
        status,
        values,
    }
}

/// Trajectory evaluation: one integration per combination of non-time
/// axes, sampled on the time grid. Returns a row per time value.
fn eval_trajectory(
    tier: Tier,
    p: &BatteryParams,
    spec: &SweepSpec,
    times: &[f64],
    tol: f64,
    cols: &[&'static str],
) -> Vec<Row> {
    let empty = |status: &str| -> Vec<Row> {
        times
            .iter()
            .map(|_| Row {
                coords: Vec::new(),
                status: status.into(),
                values: named(cols, &[]),
            })
            .collect()
    };
    match tier {
        Tier::Analytic => times
            .iter()
            .map(|&t| match analytic::linear_ergotropy_at(p, t) {
                Ok(r) => Row {
                    coords: Vec::new(),
                    status: "ok".into(),
                    values: named(cols, &energy_pairs(&r)),
                },
                Err(_) => Row {
                    coords: Vec::new(),
                    status: "ok".into(),
                    values: named(cols, &[]),
                },
            })
            .collect(),
        Tier::Moments => {
            let t_end = times.last().copied().unwrap_or(1.0).max(1e-6);
            let tol = tol.clamp(1e-12, 1e-4);
            match moments::integrate(p, t_end, tol, times) {
                Ok(traj) => traj
                    .states
                    .iter()
                    .map(|m| {
                        let mut pairs = moment_pairs(m, p);
                        let erg = pairs
                            .iter()
                            .find(|(n, _)| *n == "ergotropy")
                            .and_then(|(_, v)| *v);
                        let power = match (erg, m.t > 0.0) {
                            (Some(e), true) => Some(e / m.t),
                            _ => None,
                        };
                        pairs.push(("power", power));
                        Row {
                            coords: Vec::new(),
                            status: "ok".into(),
                            values: named(cols, &pairs),
                        }
                    })
                    .collect(),
                Err(_) => empty("no-steady-state"),
            }
        }
        Tier::Fock => {
            let cfg = spec.fock.expect("validated: fock tier has a config");
            let rho0 = DensityState::vacuum(cfg);
            match fock::evolve_density(&rho0, p, &cfg, times, tol.clamp(1e-12, 1e-4)) {
                Ok(traj) => traj
                    .states
                    .iter()
                    .map(|(_, ds)| Row {
                        coords: Vec::new(),
                        status: "ok".into(),
                        values: named(cols, &fock_state_pairs(ds, p)),
                    })
                    .collect(),
                Err(_) => empty("no-steady-state"),
            }
        }
    }
}

fn write_artifact(
    dir: &std::path::Path,
    name: &str,
    content: &str,
) -> anyhow::Result<(PathBuf, String)> {
    let path = dir.join(name);
    fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    let digest = Sha256::digest(content.as_bytes());
    Ok((path, format!("{digest:x}")))
}

fn csv_for_tier(coord_names: &[&str], cols: &[&'static str], rows: &[Row]) -> String {
    let mut out = String::new();
    out.push_str(&coord_names.join(","));
    out.push_str(",status,");
    out.push_str(&cols.join(","));
    out.push('\n');
    for row in rows {
        let mut fields: Vec<String> = row.coords.iter().map(|&c| format::cell(c)).collect();
        fields.push(row.status.clone());
        fields.extend(row.values.iter().map(|v| format::opt_cell(*v)));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn comparison_csv(
    coord_names: &[&str],
    tiers: &[(Tier, Vec<&'static str>, Vec<Row>)],
) -> Option<String> {
    if tiers.len() < 2 {
        return None;
    }
    // pairwise over tiers, restricted to shared observable columns
    let mut headers: Vec<String> = coord_names.iter().map(|s| s.to_string()).collect();
    let mut series: Vec<Vec<Option<f64>>> = Vec::new();
    for a in 0..tiers.len() {
        for b in a + 1..tiers.len() {
            let (ta, cols_a, rows_a) = &tiers[a];
            let (tb, cols_b, rows_b) = &tiers[b];
            for (ia, col) in cols_a.iter().enumerate() {
                let Some(ib) = cols_b.iter().position(|c| c == col) else {
                    continue;
                };
                headers.push(format!("rel_diff_{col}_{ta}_vs_{tb}"));
                let diffs = rows_a
                    .iter()
                    .zip(rows_b.iter())
                    .map(|(ra, rb)| match (ra.values[ia], rb.values[ib]) {
                        (Some(x), Some(y)) => {
                            // relative difference; values that are both
                            // numerically zero count as agreeing
                            let scale = x.abs().max(y.abs());
                            Some(if scale < 1e-12 { 0.0 } else { (x - y).abs() / scale })
                        }
                        _ => None,
                    })
                    .collect();
                series.push(diffs);
            }
        }
    }
    if series.is_empty() {
        return None;
    }
    let n_rows = tiers[0].2.len();
    let n_coords = coord_names.len();
    let mut out = headers.join(",");
    out.push('\n');
    for i in 0..n_rows {
        let mut fields: Vec<String> = tiers[0].2[i]
            .coords
            .iter()
            .map(|&c| format::cell(c))
            .collect();
        fields.extend(series.iter().map(|s| format::opt_cell(s[i])));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    // summary block: max and median of each difference column
    for (label, reduce) in [
        ("max", true),
        ("median", false),
    ] {
        let mut fields = vec![label.to_string()];
        fields.extend(vec![String::new(); n_coords.saturating_sub(1)]);
        for s in &series {
            let mut vals: Vec<f64> = s.iter().flatten().copied().collect();
            let v = if vals.is_empty() {
                None
            } else if reduce {
                Some(vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
            } else {
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                Some(vals[vals.len() / 2])
            };
            fields.push(format::opt_cell(v));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Some(out)
}

/// Run a sweep, writing one CSV per tier, an optional comparison CSV, and
/// a manifest, all under the spec's output directory.
pub fn run_sweep(spec: &SweepSpec, opts: &SweepOptions) -> anyhow::Result<SweepReport> {
    let mut spec = spec.clone();
    if let Some(n) = opts.fock_n {
        if let Some(f) = spec.fock.as_mut() {
            f.n_c_levels = n;
            f.n_h_levels = n;
        }
    }
    spec.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
    let spec = &spec;

    let time_pos = spec.axes.iter().position(|a| a.param == AxisParam::Time);
    let coord_names: Vec<&str> = spec.axes.iter().map(|a| a.param.column_name()).collect();
    let axis_values: Vec<Vec<f64>> = spec.axes.iter().map(|a| a.values()).collect();

    // grid points in row order: axis1 outer, axis2 inner
    let grid: Vec<Vec<f64>> = match axis_values.len() {
        1 => axis_values[0].iter().map(|&v| vec![v]).collect(),
        2 => axis_values[0]
            .iter()
            .flat_map(|&v0| axis_values[1].iter().map(move |&v1| vec![v0, v1]))
            .collect(),
        _ => unreachable!("validated"),
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .context("building worker pool")?;

    let mut tier_rows: Vec<(Tier, Vec<&'static str>, Vec<Row>)> = Vec::new();
    for &tier in &spec.tiers {
        let cols = tier_columns(tier, spec, time_pos.is_some());
        let rows: Vec<Row> = match time_pos {
            None => {
                use rayon::prelude::*;
                pool.install(|| {
                    grid.par_iter()
                        .map(|coords| {
                            let mut p = spec.params;
                            for (axis, &v) in spec.axes.iter().zip(coords.iter()) {
                                apply_axis(&mut p, axis.param, v);
                            }
                            let mut row = eval_steady(tier, &p, spec, &cols);
                            row.coords = coords.clone();
                            row
                        })
                        .collect()
                })
            }
            Some(tpos) => {
                use rayon::prelude::*;
                let times = &axis_values[tpos];
                // combos over the non-time axis (or a single empty combo)
                let combos: Vec<Option<f64>> = if spec.axes.len() == 1 {
                    vec![None]
                } else {
                    axis_values[1 - tpos].iter().map(|&v| Some(v)).collect()
                };
                let blocks: Vec<Vec<Row>> = pool.install(|| {
                    combos
                        .par_iter()
                        .map(|combo| {
                            let mut p = spec.params;
                            if let (Some(v), true) = (combo, spec.axes.len() == 2) {
                                apply_axis(&mut p, spec.axes[1 - tpos].param, *v);
                            }
                            let mut rows =
                                eval_trajectory(tier, &p, spec, times, opts.tol, &cols);
                            for (row, &t) in rows.iter_mut().zip(times.iter()) {
                                row.coords = match (tpos, combo) {
                                    (_, None) => vec![t],
                                    (0, Some(v)) => vec![t, *v],
                                    (_, Some(v)) => vec![*v, t],
                                };
                            }
                            rows
                        })
                        .collect()
                });
                // restore axis1-major row order
                if tpos == 0 && spec.axes.len() == 2 {
                    let mut rows = Vec::with_capacity(grid.len());
                    for ti in 0..times.len() {
                        for block in &blocks {
                            rows.push(Row {
                                coords: block[ti].coords.clone(),
                                status: block[ti].status.clone(),
                                values: block[ti].values.clone(),
                            });
                        }
                    }
                    rows
                } else {
                    blocks.into_iter().flatten().collect()
                }
            }
        };
        tier_rows.push((tier, cols, rows));
    }

    fs::create_dir_all(&spec.output_path)
        .with_context(|| format!("creating {}", spec.output_path.display()))?;
    let recipe_tag = spec.recipe.to_string().to_ascii_lowercase();

    let mut files = Vec::new();
    let mut manifest_files = Vec::new();
    let mut status_counts: BTreeMap<String, usize> = BTreeMap::new();
    for (tier, cols, rows) in &tier_rows {
        for row in rows {
            *status_counts.entry(row.status.clone()).or_insert(0) += 1;
        }
        let csv = csv_for_tier(&coord_names, cols, rows);
        let name = format!("{recipe_tag}_{tier}.csv");
        let (path, sha) = write_artifact(&spec.output_path, &name, &csv)?;
        manifest_files.push(ManifestFile {
            name,
            sha256: sha,
            rows: rows.len(),
        });
        files.push(path);
    }
    if let Some(csv) = comparison_csv(&coord_names, &tier_rows) {
        let name = format!("{recipe_tag}_comparison.csv");
        let rows = csv.lines().count().saturating_sub(1);
        let (path, sha) = write_artifact(&spec.output_path, &name, &csv)?;
        manifest_files.push(ManifestFile {
            name,
            sha256: sha,
            rows,
        });
        files.push(path);
    }

    let spec_json = serde_json::to_value(spec).context("serializing spec")?;
    let input_sha = format!(
        "{:x}",
        Sha256::digest(serde_json::to_string(&spec_json)?.as_bytes())
    );
    let manifest = Manifest {
        schema: "1".into(),
        recipe: spec.recipe.to_string(),
        spec: spec_json,
        tolerance: opts.tol,
        input_sha256: input_sha,
        files: manifest_files,
        status_counts: status_counts.clone(),
    };
    let manifest_text = serde_json::to_string_pretty(&manifest)?;
    let (manifest_path, _) = write_artifact(&spec.output_path, "manifest.json", &manifest_text)?;

    Ok(SweepReport {
        manifest_path,
        files,
        status_counts,
    })
}
