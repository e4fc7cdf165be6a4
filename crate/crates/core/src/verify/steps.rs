//! The two per-factor inequalities the growth bounds are assembled from:
//! the root-distance ratio and the pole-distance ratio.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::Serialize;

use crate::complex_poly::{unit, Complex};
use crate::error::{Error, Result};

use super::generator::substream;

pub const STEP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepOutcome {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// The left side has a zero denominator; the inequality is vacuous.
    pub degenerate: bool,
}

/// `|ηe^{iδ} − ηⱼ| / |e^{iδ} − ηⱼ| >= (η + ηⱼ)/(1 + ηⱼ)`.
///
/// Both squared distances are evaluated as `(a − b)² + 4ab·sin²(δ/2)`, which
/// equals `a² + b² − 2ab·cos δ` without the cancellation near `δ = 0`.
pub fn check_root_ratio_step(eta: f64, eta_j: f64, delta: f64) -> Result<StepOutcome> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Domain(format!("eta = {eta} outside [0, 1]")));
    }
    if !(eta_j >= 1.0) {
        return Err(Error::Domain(format!("root modulus {eta_j} < 1")));
    }
    if !(0.0..TAU).contains(&delta) {
        return Err(Error::Domain(format!("delta = {delta} outside [0, 2π)")));
    }
    let s2 = (0.5 * delta).sin().powi(2);
    let num = (eta - eta_j).powi(2) + 4.0 * eta * eta_j * s2;
    let den = (1.0 - eta_j).powi(2) + 4.0 * eta_j * s2;
    let rhs = (eta + eta_j) / (1.0 + eta_j);
    if den == 0.0 {
        return Ok(StepOutcome { holds: true, lhs: f64::INFINITY, rhs, degenerate: true });
    }
    let lhs = (num / den).sqrt();
    Ok(StepOutcome { holds: lhs >= rhs - STEP_TOL, lhs, rhs, degenerate: false })
}

/// `|e^{iθ} − β| / |ηe^{iθ} − β| >= (|β| − 1)/(|β| + η)` for `|β| > 1`.
pub fn check_pole_ratio_step(eta: f64, beta: Complex, theta: f64) -> Result<StepOutcome> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Domain(format!("eta = {eta} outside [0, 1]")));
    }
    let m = beta.norm();
    if !(m > 1.0) {
        return Err(Error::Domain(format!("pole modulus {m} <= 1")));
    }
    let z = unit(theta);
    let lhs = (z - beta).norm() / (z * eta - beta).norm();
    let rhs = (m - 1.0) / (m + eta);
    Ok(StepOutcome { holds: lhs >= rhs - STEP_TOL, lhs, rhs, degenerate: false })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepSweep {
    pub samples: usize,
    pub failures: usize,
    pub degenerate: usize,
    pub min_margin: f64,
    /// Largest `|lhs − rhs|` over the equality configurations.
    pub max_equality_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofStepReport {
    pub root_step: StepSweep,
    pub pole_step: StepSweep,
}

/// Random sweep of both step inequalities. Root step: `η ∈ [0,1]`,
/// `ηⱼ ∈ [1,10]`, `δ ∈ [0,2π)`, equality probed at `δ = π`. Pole step:
/// `|β| ∈ (1,10]`, uniform angles, equality probed at `η = 0`, `θ = arg β`.
pub fn proof_step_sweep(samples: usize, seed: u64) -> Result<ProofStepReport> {
    let mut root = StepSweep { samples, failures: 0, degenerate: 0, min_margin: f64::INFINITY, max_equality_gap: 0.0 };
    let mut pole = root.clone();
    for i in 0..samples {
        let mut rng = substream(seed, 2 * i as u64);
        let eta: f64 = rng.random();
        let eta_j = 1.0 + 9.0 * rng.random::<f64>();
        let delta = TAU * rng.random::<f64>();
        let out = check_root_ratio_step(eta, eta_j, delta)?;
        tally(&mut root, &out);
        let eq = check_root_ratio_step(eta, eta_j, PI)?;
        root.max_equality_gap = root.max_equality_gap.max((eq.lhs - eq.rhs).abs());

        let mut rng = substream(seed, 2 * i as u64 + 1);
        let eta: f64 = rng.random();
        let modulus = 1.0 + 9.0 * (1.0 - rng.random::<f64>());
        let arg = TAU * rng.random::<f64>();
        let beta = Complex::from_polar(modulus, arg);
        let theta = TAU * rng.random::<f64>();
        let out = check_pole_ratio_step(eta, beta, theta)?;
        tally(&mut pole, &out);
        let eq = check_pole_ratio_step(0.0, beta, beta.arg())?;
        pole.max_equality_gap = pole.max_equality_gap.max((eq.lhs - eq.rhs).abs());
    }
    Ok(ProofStepReport { root_step: root, pole_step: pole })
}

fn tally(sweep: &mut StepSweep, out: &StepOutcome) {
    if out.degenerate {
        sweep.degenerate += 1;
        return;
    }
    if !out.holds {
        sweep.failures += 1;
    }
    sweep.min_margin = sweep.min_margin.min(out.lhs - out.rhs);
}
