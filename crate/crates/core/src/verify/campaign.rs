//! Seeded randomized search over the hypothesis class of a theorem.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{BoundParams, TheoremId};
use crate::error::{Error, Result};
use crate::rational::InstanceFile;

use super::generator::{generate_instance_at, GeneratorConfig};
use super::grid::CircleGrid;
use super::theorem::{verify_theorem_multi, Status, VerificationReport, VerifyPolicy};

/// Number of failing trials kept in full in the report.
const MAX_FAILURE_WITNESSES: usize = 10;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CampaignCounts {
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub hypothesis_unmet: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlackSummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub min_relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub eta: f64,
    pub instance: InstanceFile,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub theorem: TheoremId,
    pub generator: GeneratorConfig,
    pub trials: usize,
    pub eta_set: Vec<f64>,
    pub grid: CircleGrid,
    pub counts: CampaignCounts,
    pub slack: Option<SlackSummary>,
    /// Trial with the smallest slack, ties broken by trial then `η` index.
    pub witness: Option<Witness>,
    pub failures: Vec<Witness>,
    pub error_messages: Vec<String>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.counts.fail == 0 && self.counts.errors == 0
    }
}

struct TrialResult {
    instance: Option<InstanceFile>,
    outcome: std::result::Result<Vec<VerificationReport>, String>,
}

fn run_trial(id: TheoremId, cfg: &GeneratorConfig, trial: usize, params: &[BoundParams], grid: CircleGrid, policy: &VerifyPolicy) -> TrialResult {
    let instance = match generate_instance_at(cfg, trial as u64) {
        Ok(i) => i,
        Err(e) => return TrialResult { instance: None, outcome: Err(e.to_string()) },
    };
    let outcome = verify_theorem_multi(id, &instance, params, grid, policy).map_err(|e| e.to_string());
    TrialResult { instance: Some(instance.to_file()), outcome }
}

/// Runs `trials` generated instances against `id` at every `η` of
/// `eta_set`. Trials run in parallel; aggregation is keyed by trial index so
/// the report does not depend on scheduling.
pub fn fuzz_campaign(
    id: TheoremId,
    cfg: &GeneratorConfig,
    trials: usize,
    eta_set: &[f64],
    grid: CircleGrid,
    policy: &VerifyPolicy,
) -> Result<CampaignReport> {
    if trials == 0 {
        return Err(Error::Params("trials must be >= 1".into()));
    }
    if eta_set.is_empty() {
        return Err(Error::Params("eta set is empty".into()));
    }
    cfg.validate()?;
    let params = eta_set
        .iter()
        .map(|&eta| BoundParams::eta_k(eta, cfg.k))
        .collect::<Result<Vec<_>>>()?;

    let results: Vec<TrialResult> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(id, cfg, t, &params, grid, policy))
        .collect();

    let mut counts = CampaignCounts::default();
    let mut error_messages = Vec::new();
    let mut failures = Vec::new();
    let mut best: Option<(f64, usize, usize)> = None;
    let (mut slack_min, mut slack_max, mut slack_sum, mut rel_min, mut slack_n) =
        (f64::INFINITY, f64::NEG_INFINITY, 0.0, f64::INFINITY, 0usize);

    for (trial, result) in results.iter().enumerate() {
        let reports = match &result.outcome {
            Ok(r) => r,
            Err(msg) => {
                counts.errors += 1;
                if error_messages.len() < MAX_FAILURE_WITNESSES {
                    error_messages.push(format!("trial {trial}: {msg}"));
                }
                continue;
            }
        };
        for (e, report) in reports.iter().enumerate() {
            counts.checks += 1;
            match report.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::Vacuous => counts.vacuous += 1,
                Status::HypothesisUnmet => counts.hypothesis_unmet += 1,
            }
            if report.status == Status::Fail && failures.len() < MAX_FAILURE_WITNESSES {
                failures.push(witness(&results, trial, e, eta_set));
            }
            if let Some(s) = report.slack {
                slack_min = slack_min.min(s);
                slack_max = slack_max.max(s);
                slack_sum += s;
                slack_n += 1;
                if let Some(r) = report.relative_slack() {
                    rel_min = rel_min.min(r);
                }
                if best.is_none_or(|(b, _, _)| s < b) {
                    best = Some((s, trial, e));
                }
            }
        }
    }

    let slack = (slack_n > 0).then(|| SlackSummary {
        min: slack_min,
        max: slack_max,
        mean: slack_sum / slack_n as f64,
        min_relative: rel_min,
    });
    let witness = best.map(|(_, t, e)| witness(&results, t, e, eta_set));

    Ok(CampaignReport {
        theorem: id,
        generator: *cfg,
        trials,
        eta_set: eta_set.to_vec(),
        grid,
        counts,
        slack,
        witness,
        failures,
        error_messages,
    })
}

fn witness(results: &[TrialResult], trial: usize, eta_index: usize, eta_set: &[f64]) -> Witness {
    let r = &results[trial];
    Witness {
        trial,
        eta: eta_set[eta_index],
        instance: r.instance.clone().expect("checked trials carry their instance"),
        report: r.outcome.as_ref().expect("checked trials have reports")[eta_index].clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::theorem::verify_theorem;

    fn small_grid() -> CircleGrid {
        CircleGrid::new(256, 30).unwrap()
    }

    #[test]
    fn single_trial_matches_direct_verification() {
        let cfg = GeneratorConfig::new(3, 1.0, 5);
        let rep = fuzz_campaign(TheoremId::T1New, &cfg, 1, &[0.4], small_grid(), &VerifyPolicy::default()).unwrap();
        let inst = generate_instance_at(&cfg, 0).unwrap();
        let direct = verify_theorem(TheoremId::T1New, &inst, &BoundParams::eta(0.4).unwrap(), small_grid(), &VerifyPolicy::default()).unwrap();
        let w = rep.witness.unwrap();
        assert_eq!(w.report, direct);
        assert_eq!(w.instance, inst.to_file());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let cfg = GeneratorConfig::new(4, 1.5, 11);
        let etas = [0.0, 0.5, 1.0];
        let a = fuzz_campaign(TheoremId::T2New, &cfg, 20, &etas, small_grid(), &VerifyPolicy::default()).unwrap();
        let b = fuzz_campaign(TheoremId::T2New, &cfg, 20, &etas, small_grid(), &VerifyPolicy::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.all_passed());
        assert_eq!(a.counts.checks, 60);
    }

    #[test]
    fn rejects_empty_inputs() {
        let cfg = GeneratorConfig::new(2, 1.0, 0);
        assert!(fuzz_campaign(TheoremId::T1New, &cfg, 0, &[0.5], small_grid(), &VerifyPolicy::default()).is_err());
        assert!(fuzz_campaign(TheoremId::T1New, &cfg, 1, &[], small_grid(), &VerifyPolicy::default()).is_err());
        assert!(fuzz_campaign(TheoremId::T1New, &cfg, 1, &[1.5], small_grid(), &VerifyPolicy::default()).is_err());
    }
}
