//! Reproducible experiment drivers behind the `gini-qudit` CLI.
//!
//! Each command writes its data file(s) plus `<out>.manifest.json`. Data
//! files depend only on the command's parameters and seed.

mod output;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

pub use output::{fmt_num, manifest_path, read_state_file, write_manifest, RunManifest};

use crate::error::{Error, Result};
use crate::phase_space::{
    component_vectors, expand, max_abs_diff, noise_experiment, reconstruct, CoherentFamily,
    ExpansionCoefficients, NoiseOutcome, PhasePoint, SymmetricLabel,
};
use crate::qudit::{Dimension, PureState, StateFile};
use crate::reference::published_fiducial;
use crate::search::{
    estimate_eta, find_min_uncertainty_state, sample_gxp_values, EtaEstimate, SearchConfig,
};
use crate::uncertainty::{entropy_report_pure, gini_report_pure, EntropyReport, GiniReport};

/// Slack for dominance over published (4-decimal) states.
pub const DOMINANCE_TOLERANCE: f64 = 1e-6;
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-10;
pub const ENTROPIC_TOLERANCE: f64 = 1e-10;

fn violation(check: &str, detail: impl Into<String>) -> Error {
    Error::InvariantViolation {
        check: check.to_string(),
        detail: detail.into(),
    }
}

/// Odd dimensions in `[d_min, d_max]`.
pub fn odd_range(d_min: usize, d_max: usize) -> Result<Vec<Dimension>> {
    let lo = Dimension::new(d_min)?;
    let hi = Dimension::new(d_max)?;
    if lo > hi {
        return Err(Error::InvalidConfig(format!(
            "empty range: d_min = {d_min} > d_max = {d_max}"
        )));
    }
    (lo.get()..=hi.get())
        .step_by(2)
        .map(Dimension::new)
        .collect()
}

fn write_text(path: &Path, body: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, body)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut body = serde_json::to_string_pretty(value)?;
    body.push('\n');
    write_text(path, &body)
}

fn check_gini_report(r: &GiniReport) -> Result<()> {
    let max = r.dim.gini_max() + 1e-12;
    for (name, g) in [("g_x", r.g_x), ("g_p", r.g_p)] {
        if !(g >= -1e-12 && g <= max) {
            return Err(violation(
                "gini_range",
                format!("{name} = {g} outside [0, {max}]"),
            ));
        }
    }
    if (r.g_xp - r.g_x - r.g_p).abs() > 1e-12
        || (r.delta - (2.0 * r.dim.gini_max() - r.g_xp)).abs() > 1e-12
    {
        return Err(violation("gini_report_consistency", format!("{r:?}")));
    }
    Ok(())
}

// ---------------------------------------------------------------- gxp-hist

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GxpHistogram {
    pub values: Vec<f64>,
    pub max: f64,
}

/// `G_XP` of `n_samples` Haar states; CSV `index,g_xp` plus a `max` row.
pub fn gxp_histogram(
    dim: Dimension,
    n_samples: usize,
    seed: u64,
    out: &Path,
) -> Result<GxpHistogram> {
    if n_samples == 0 {
        return Err(Error::InvalidConfig("samples must be at least 1".into()));
    }
    let values = sample_gxp_values(dim, n_samples, seed);
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let upper = 2.0 * dim.gini_max();
    if let Some(v) = values
        .iter()
        .find(|v| !(**v >= -1e-12 && **v <= upper + 1e-12))
    {
        return Err(violation(
            "gxp_range",
            format!("G_XP = {v} outside [0, {upper}]"),
        ));
    }
    let mut body = String::from("index,g_xp\n");
    for (i, v) in values.iter().enumerate() {
        body.push_str(&format!("{i},{}\n", fmt_num(*v)));
    }
    body.push_str(&format!("max,{}\n", fmt_num(max)));
    write_text(out, &body)?;
    Ok(GxpHistogram { values, max })
}

// ---------------------------------------------------------------- eta-sweep

pub const ETA_SWEEP_HEADER: &str = "d,n_samples,sup_gxp,eta_hat,eta_tilde,delta_gap,seed";

pub fn eta_sweep(
    d_min: usize,
    d_max: usize,
    cfg: &SearchConfig,
    out: &Path,
) -> Result<Vec<EtaEstimate>> {
    let dims = odd_range(d_min, d_max)?;
    cfg.validate()?;
    let rows: Vec<EtaEstimate> = dims
        .par_iter()
        .map(|&dim| estimate_eta(dim, cfg))
        .collect::<Result<_>>()?;
    for r in &rows {
        if r.eta_hat > r.eta_tilde + 1e-12 {
            return Err(violation(
                "eta_hat_le_eta_tilde",
                format!("d = {}: {} > {}", r.d, r.eta_hat, r.eta_tilde),
            ));
        }
        if r.eta_hat < -1e-12 {
            return Err(violation(
                "eta_hat_nonnegative",
                format!("d = {}: {}", r.d, r.eta_hat),
            ));
        }
    }
    let mut body = format!("{ETA_SWEEP_HEADER}\n");
    for r in &rows {
        body.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.d,
            r.n_samples,
            fmt_num(r.sup_gxp_estimate),
            fmt_num(r.eta_hat),
            fmt_num(r.eta_tilde),
            fmt_num(r.gap()),
            r.seed
        ));
    }
    write_text(out, &body)?;
    Ok(rows)
}

// ---------------------------------------------------------------- find-g

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FindGOutput {
    pub d: Dimension,
    pub state: PureState,
    pub report: GiniReport,
    pub entropy: EntropyReport,
    pub eta_hat: f64,
    pub eta_tilde: f64,
    /// `Δ` of the published fiducial, when one exists for this `d`.
    pub reference_delta: Option<f64>,
    pub dominates_reference: Option<bool>,
    pub config: SearchConfig,
}

pub fn find_g(dim: Dimension, cfg: &SearchConfig, out: &Path) -> Result<FindGOutput> {
    let found = find_min_uncertainty_state(dim, cfg)?;
    check_gini_report(&found.report)?;
    let reference_delta = published_fiducial(dim.get()).map(|g| gini_report_pure(&g).delta);
    let dominates_reference = reference_delta.map(|r| found.delta <= r + DOMINANCE_TOLERANCE);
    let output = FindGOutput {
        d: dim,
        entropy: entropy_report_pure(&found.state),
        state: found.state,
        report: found.report,
        eta_hat: found.estimate.eta_hat,
        eta_tilde: found.estimate.eta_tilde,
        reference_delta,
        dominates_reference,
        config: SearchConfig {
            refine: true,
            ..*cfg
        },
    };
    write_json(out, &output)?;
    if dominates_reference == Some(false) {
        return Err(violation(
            "reference_dominance",
            format!(
                "Δ = {} exceeds published Δ = {}",
                output.report.delta,
                reference_delta.unwrap_or(f64::NAN)
            ),
        ));
    }
    Ok(output)
}

// ---------------------------------------------------------------- expand

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentVector {
    pub point: PhasePoint,
    pub label: SymmetricLabel,
    pub vector: StateFile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpandOutput {
    pub d: Dimension,
    pub coefficients: ExpansionCoefficients,
    pub components: Vec<ComponentVector>,
    pub residual: f64,
}

fn load_inputs(
    d: usize,
    fiducial_path: &Path,
    state_path: &Path,
) -> Result<(CoherentFamily, Vec<num_complex::Complex64>)> {
    let dim = Dimension::new(d)?;
    let fiducial = read_state_file(fiducial_path)?;
    let state = read_state_file(state_path)?;
    for file in [&fiducial, &state] {
        if file.dim()? != dim {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: file.d,
            });
        }
    }
    Ok((
        CoherentFamily::new(fiducial.to_state()?),
        state.to_complex(),
    ))
}

/// Expands the vector in `state_path` over the coherent family of the
/// fiducial in `fiducial_path` (renormalized). The state is used as given.
pub fn expand_cmd(
    d: usize,
    fiducial_path: &Path,
    state_path: &Path,
    out: &Path,
) -> Result<ExpandOutput> {
    let (fam, s) = load_inputs(d, fiducial_path, state_path)?;
    let coefficients = expand(&fam, &s)?;
    let residual = max_abs_diff(&reconstruct(&fam, &coefficients)?, &s);
    let components = component_vectors(&fam, &coefficients)
        .into_iter()
        .map(|(point, v)| ComponentVector {
            point,
            label: point.into(),
            vector: StateFile::from_amplitudes(&v),
        })
        .collect();
    let output = ExpandOutput {
        d: fam.dim(),
        coefficients,
        components,
        residual,
    };
    write_json(out, &output)?;
    if residual.is_nan() || residual >= RECONSTRUCTION_TOLERANCE {
        return Err(violation(
            "reconstruction_residual",
            format!("{residual:e}"),
        ));
    }
    Ok(output)
}

// ---------------------------------------------------------------- noise

pub fn noise_cmd(
    d: usize,
    fiducial_path: &Path,
    state_path: &Path,
    epsilon: f64,
    trials: usize,
    seed: u64,
    out: &Path,
) -> Result<NoiseOutcome> {
    let (fam, s) = load_inputs(d, fiducial_path, state_path)?;
    let outcome = noise_experiment(&fam, &s, epsilon, trials, seed)?;
    let mut body = String::from("trial,error_norm\n");
    for (t, e) in outcome.per_trial.iter().enumerate() {
        body.push_str(&format!("{t},{}\n", fmt_num(*e)));
    }
    body.push_str(&format!("average,{}\n", fmt_num(outcome.average)));
    write_text(out, &body)?;
    let slack = 1e-12 * outcome.bound.max(1.0);
    if let Some((t, e)) = outcome
        .per_trial
        .iter()
        .enumerate()
        .find(|(_, e)| **e > outcome.bound + slack)
    {
        return Err(violation(
            "noise_triangle_bound",
            format!("trial {t}: {e} > {}", outcome.bound),
        ));
    }
    Ok(outcome)
}

// ---------------------------------------------------------------- entropy-compare

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyRow {
    pub d: Dimension,
    pub delta: f64,
    pub entropic_excess: f64,
}

pub const ENTROPY_HEADER: &str = "d,delta,entropic_excess";

/// For each odd `d`, the entropic excess of `|0,0⟩_g = |g⟩` for the found
/// minimum-Gini state.
pub fn entropy_compare(
    d_min: usize,
    d_max: usize,
    cfg: &SearchConfig,
    out: &Path,
) -> Result<Vec<EntropyRow>> {
    let dims = odd_range(d_min, d_max)?;
    cfg.validate()?;
    let rows: Vec<EntropyRow> = dims
        .par_iter()
        .map(|&dim| {
            let found = find_min_uncertainty_state(dim, cfg)?;
            let fam = CoherentFamily::new(found.state);
            let origin = fam.member(PhasePoint::origin(dim));
            Ok(EntropyRow {
                d: dim,
                delta: found.delta,
                entropic_excess: entropy_report_pure(origin).excess,
            })
        })
        .collect::<Result<_>>()?;
    let mut body = format!("{ENTROPY_HEADER}\n");
    for r in &rows {
        body.push_str(&format!(
            "{},{},{}\n",
            r.d,
            fmt_num(r.delta),
            fmt_num(r.entropic_excess)
        ));
    }
    write_text(out, &body)?;
    if let Some(r) = rows
        .iter()
        .find(|r| r.entropic_excess < -ENTROPIC_TOLERANCE)
    {
        return Err(violation(
            "entropic_nonnegative",
            format!("d = {}: {}", r.d, r.entropic_excess),
        ));
    }
    Ok(rows)
}

/// Output files of a command, data file first.
pub fn outputs_for(out: &Path) -> Vec<PathBuf> {
    vec![out.to_path_buf(), manifest_path(out)]
}
