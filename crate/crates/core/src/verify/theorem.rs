use serde::Serialize;

use crate::bounds::{factor, BoundDirection, BoundFactor, BoundParams, TheoremId};
use crate::error::{Error, Result};
use crate::rational::{Instance, RationalFunction, ValidationOutcome, Violation, ViolationKind, ZeroConstraint, DEFAULT_POLE_MARGIN};

use super::grid::{check_eta, max_modulus_on_circle, CircleGrid, CircleSampler, ABS_TOL, REL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The numerator vanishes at every grid point.
    Vacuous,
    HypothesisUnmet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub params: BoundParams,
    pub n: usize,
    pub factor: Option<f64>,
    pub correction_term: Option<f64>,
    pub direction: Option<BoundDirection>,
    pub min_observed: Option<f64>,
    pub argmin_theta: Option<f64>,
    pub slack: Option<f64>,
    pub status: Status,
    pub pass: bool,
    pub violations: usize,
    pub skipped_points: usize,
    pub grid: CircleGrid,
    pub hypothesis_violations: Vec<Violation>,
    pub instance_digest: String,
}

impl VerificationReport {
    /// `slack / factor`, when both are defined and the factor is positive.
    pub fn relative_slack(&self) -> Option<f64> {
        match (self.slack, self.factor) {
            (Some(s), Some(f)) if f > 0.0 => Some(s / f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyPolicy {
    pub pole_margin: f64,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        Self { pole_margin: DEFAULT_POLE_MARGIN }
    }
}

struct Prepared {
    target: RationalFunction,
    hypothesis: ValidationOutcome,
    coeffs: Option<(f64, f64)>,
    digest: String,
}

fn prepare(id: TheoremId, instance: &Instance, k: f64, policy: &VerifyPolicy) -> Result<Prepared> {
    let n = instance.n;
    let target = if id.is_rational() {
        if instance.poles.len() != n {
            return Err(Error::Instance(format!("n = {n} but {} poles", instance.poles.len())));
        }
        instance.rational()?
    } else {
        RationalFunction::from_polynomial(instance.polynomial())
    };

    let mut hypothesis = if id.has_zero_hypothesis() {
        let radius = if id.uses_k() { k } else { 1.0 };
        instance.validate(ZeroConstraint::new(radius)?, policy.pole_margin, id.is_rational())
    } else {
        ValidationOutcome::default()
    };

    let degree = instance.numerator_degree();
    let coeffs = if id.uses_coefficients() {
        let exact = if degree == n { target.numerator().coeff_moduli(Some(n)).ok() } else { None };
        if exact.is_none() {
            hypothesis.violations.push(Violation {
                kind: ViolationKind::DegreeMismatch,
                index: n,
                modulus: degree as f64,
                required: n as f64,
            });
        }
        exact
    } else {
        None
    };

    Ok(Prepared { target, hypothesis, coeffs, digest: instance.digest() })
}

fn unmet(
    id: TheoremId,
    params: BoundParams,
    n: usize,
    grid: CircleGrid,
    hypothesis_violations: Vec<Violation>,
    digest: &str,
    bound: Option<&BoundFactor>,
) -> VerificationReport {
    VerificationReport {
        theorem: id,
        params,
        n,
        factor: bound.map(|b| b.value),
        correction_term: bound.map(|b| b.correction_term),
        direction: bound.map(|b| b.direction),
        min_observed: None,
        argmin_theta: None,
        slack: None,
        status: Status::HypothesisUnmet,
        pass: false,
        violations: 0,
        skipped_points: 0,
        grid,
        hypothesis_violations,
        instance_digest: digest.to_string(),
    }
}

/// Verifies one theorem on one instance at several parameter sets, sharing the
/// unit-circle samples across them. All `params` must share `k`.
pub fn verify_theorem_multi(
    id: TheoremId,
    instance: &Instance,
    params: &[BoundParams],
    grid: CircleGrid,
    policy: &VerifyPolicy,
) -> Result<Vec<VerificationReport>> {
    let Some(first) = params.first() else {
        return Ok(Vec::new());
    };
    if params.iter().any(|p| p.k != first.k) {
        return Err(Error::Params("all parameter sets must share k".into()));
    }
    for p in params {
        check_eta(p.eta)?;
    }
    let prepared = prepare(id, instance, first.k, policy)?;
    let n = instance.n;
    let sampler = (!id.is_max_modulus() && prepared.hypothesis.accepted())
        .then(|| CircleSampler::new(&prepared.target, grid));

    params
        .iter()
        .map(|p| {
            if !prepared.hypothesis.accepted() {
                return Ok(unmet(id, *p, n, grid, prepared.hypothesis.violations.clone(), &prepared.digest, None));
            }
            let bound = factor(id, p, n, prepared.coeffs, prepared.target.poles())?;
            if let Some(w) = bound.warning {
                // A negative coefficient bracket means the zero hypothesis is impossible.
                let violations = vec![Violation {
                    kind: ViolationKind::CoefficientBracket,
                    index: 0,
                    modulus: w.a0,
                    required: w.required,
                }];
                return Ok(unmet(id, *p, n, grid, violations, &prepared.digest, Some(&bound)));
            }
            match &sampler {
                Some(s) => Ok(pointwise_report(id, *p, n, grid, s, &bound, &prepared.digest)),
                None => Ok(max_modulus_report(id, *p, n, grid, prepared.target.numerator(), &bound, &prepared.digest)),
            }
        })
        .collect()
}

/// Checks the inequality of `id` on `instance`. Instances that fail the
/// theorem's hypotheses produce a `HypothesisUnmet` report with no check.
pub fn verify_theorem(
    id: TheoremId,
    instance: &Instance,
    params: &BoundParams,
    grid: CircleGrid,
    policy: &VerifyPolicy,
) -> Result<VerificationReport> {
    let mut reports = verify_theorem_multi(id, instance, std::slice::from_ref(params), grid, policy)?;
    Ok(reports.remove(0))
}

fn pointwise_report(
    id: TheoremId,
    params: BoundParams,
    n: usize,
    grid: CircleGrid,
    sampler: &CircleSampler<'_>,
    bound: &BoundFactor,
    digest: &str,
) -> VerificationReport {
    let pw = sampler.pointwise(params.eta, bound.value);
    let minimum = sampler.min_ratio(params.eta).ok();
    let status = match (&minimum, pw.pass) {
        (None, _) => Status::Vacuous,
        (Some(_), true) => Status::Pass,
        (Some(_), false) => Status::Fail,
    };
    VerificationReport {
        theorem: id,
        params,
        n,
        factor: Some(bound.value),
        correction_term: Some(bound.correction_term),
        direction: Some(bound.direction),
        min_observed: minimum.map(|m| m.min),
        argmin_theta: minimum.map(|m| m.argmin_theta),
        slack: minimum.map(|m| m.min - bound.value),
        status,
        pass: pw.pass,
        violations: pw.violations,
        skipped_points: pw.skipped_points,
        grid,
        hypothesis_violations: Vec::new(),
        instance_digest: digest.to_string(),
    }
}

/// Max-modulus bounds: compares `max_{|z|=ρ}|f| / max_{|z|=1}|f|` with the
/// factor, where `ρ = ν` for the upper bound and `ρ = η` for the lower one.
fn max_modulus_report(
    id: TheoremId,
    params: BoundParams,
    n: usize,
    grid: CircleGrid,
    f: &crate::complex_poly::Polynomial,
    bound: &BoundFactor,
    digest: &str,
) -> VerificationReport {
    let radius = match bound.direction {
        BoundDirection::Upper => params.nu,
        BoundDirection::Lower => params.eta,
    };
    let (unit_max, _) = max_modulus_on_circle(f, 1.0, grid);
    let (scaled_max, theta) = max_modulus_on_circle(f, radius, grid);
    let mut report = VerificationReport {
        theorem: id,
        params,
        n,
        factor: Some(bound.value),
        correction_term: Some(bound.correction_term),
        direction: Some(bound.direction),
        min_observed: None,
        argmin_theta: None,
        slack: None,
        status: Status::Vacuous,
        pass: true,
        violations: 0,
        skipped_points: 0,
        grid,
        hypothesis_violations: Vec::new(),
        instance_digest: digest.to_string(),
    };
    if unit_max == 0.0 {
        return report;
    }
    let observed = scaled_max / unit_max;
    let (pass, slack) = match bound.direction {
        BoundDirection::Upper => (scaled_max <= bound.value * unit_max * (1.0 + REL_TOL) + ABS_TOL, bound.value - observed),
        BoundDirection::Lower => (scaled_max >= bound.value * unit_max * (1.0 - REL_TOL) - ABS_TOL, observed - bound.value),
    };
    report.min_observed = Some(observed);
    report.argmin_theta = Some(theta);
    report.slack = Some(slack);
    report.pass = pass;
    report.violations = usize::from(!pass);
    report.status = if pass { Status::Pass } else { Status::Fail };
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_poly::{Complex, Polynomial, RootForm};
    use crate::rational::{Numerator, PoleSet};

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn linear(root: f64, pole: f64, k: Option<f64>) -> Instance {
        Instance::from_roots(RootForm::new(c(1.0), vec![c(root)]), PoleSet::new(vec![c(pole)]), k)
    }

    #[test]
    fn t1_on_linear_instance() {
        // (z + 2)/(z − 2)
        let inst = linear(-2.0, 2.0, None);
        let rep = verify_theorem(TheoremId::T1New, &inst, &BoundParams::eta(0.0).unwrap(), CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert!((rep.factor.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        // Equality case: min ratio |z − 2|/|z + 2| = 1/3 at θ = 0.
        assert!(rep.slack.unwrap().abs() < 1e-12);
    }

    #[test]
    fn t2_on_linear_instance() {
        let inst = linear(-3.0, 3.0, Some(2.0));
        let p = BoundParams::eta_k(0.0, 2.0).unwrap();
        let rep = verify_theorem(TheoremId::T2New, &inst, &p, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert!((rep.factor.unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn t2_hypothesis_unmet_for_root_inside_k() {
        let inst = linear(-1.5, 3.0, Some(2.0));
        let p = BoundParams::eta_k(0.5, 2.0).unwrap();
        let rep = verify_theorem(TheoremId::T2New, &inst, &p, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        assert_eq!(rep.status, Status::HypothesisUnmet);
        assert!(!rep.pass);
        assert_eq!(rep.min_observed, None);
        assert_eq!(rep.hypothesis_violations[0].kind, ViolationKind::RootInsideDisk);
    }

    #[test]
    fn degree_below_n_blocks_coefficient_bounds_only() {
        // f = z + 3 with two poles: deg f = 1 < n = 2.
        let inst = Instance {
            n: 2,
            numerator: Numerator::Roots(RootForm::new(c(1.0), vec![c(-3.0)])),
            poles: PoleSet::new(vec![c(2.0), c(0.0) + Complex::new(0.0, 4.0)]),
            k: None,
        };
        let p = BoundParams::eta(0.4).unwrap();
        let g = CircleGrid::default();
        let pol = VerifyPolicy::default();
        let t1 = verify_theorem(TheoremId::T1New, &inst, &p, g, &pol).unwrap();
        assert_eq!(t1.status, Status::HypothesisUnmet);
        assert_eq!(t1.hypothesis_violations[0].kind, ViolationKind::DegreeMismatch);
        let tg = verify_theorem(TheoremId::GRather, &inst, &p, g, &pol).unwrap();
        assert_eq!(tg.status, Status::Pass);
    }

    #[test]
    fn polynomial_theorems_ignore_poles() {
        let inst = linear(-1.0, 1.01, None);
        let p = BoundParams::eta(0.3).unwrap();
        let rep = verify_theorem(TheoremId::EDk, &inst, &p, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        assert_eq!(rep.status, Status::Pass);
        let rep = verify_theorem(TheoremId::T1New, &inst, &p, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        assert_eq!(rep.status, Status::HypothesisUnmet);
    }

    #[test]
    fn max_modulus_bounds_on_monomial_are_tight() {
        let inst = Instance {
            n: 3,
            numerator: Numerator::Coeffs(Polynomial::from_real(&[0.0, 0.0, 0.0, 2.0])),
            poles: PoleSet::new(vec![c(2.0); 3]),
            k: None,
        };
        let p = BoundParams::new(0.5, 1.0, 1.5).unwrap();
        for id in [TheoremId::E2MaxMod, TheoremId::E1Varga] {
            let rep = verify_theorem(id, &inst, &p, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
            assert_eq!(rep.status, Status::Pass, "{id}");
            assert!(rep.slack.unwrap().abs() < 1e-12, "{id}");
        }
    }

    #[test]
    fn coefficient_instance_needs_certified_zero_location() {
        // (z + 2)² = z² + 4z + 4 has zeros at modulus 2, but the coefficient
        // certificate only reaches 2(√2 − 1) < 1.
        let inst = Instance {
            n: 2,
            numerator: Numerator::Coeffs(Polynomial::from_real(&[4.0, 4.0, 1.0])),
            poles: PoleSet::new(vec![c(3.0), c(-3.0)]),
            k: None,
        };
        let p = BoundParams::eta(0.5).unwrap();
        let rep = verify_theorem(TheoremId::T1New, &inst, &p, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        assert_eq!(rep.status, Status::HypothesisUnmet);
        assert_eq!(rep.hypothesis_violations[0].kind, ViolationKind::ZeroLocationUncertified);

        let inst = Instance {
            n: 1,
            numerator: Numerator::Coeffs(Polynomial::from_real(&[4.0, 1.0])),
            poles: PoleSet::new(vec![c(3.0)]),
            k: None,
        };
        let rep = verify_theorem(TheoremId::T1New, &inst, &p, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        assert_eq!(rep.status, Status::Pass);
    }

    #[test]
    fn multi_matches_single() {
        let inst = linear(-2.5, -1.7, None);
        let g = CircleGrid::new(512, 30).unwrap();
        let pol = VerifyPolicy::default();
        let params: Vec<_> = [0.0, 0.5, 1.0].iter().map(|&e| BoundParams::eta(e).unwrap()).collect();
        let multi = verify_theorem_multi(TheoremId::T1New, &inst, &params, g, &pol).unwrap();
        for (p, m) in params.iter().zip(&multi) {
            assert_eq!(&verify_theorem(TheoremId::T1New, &inst, p, g, &pol).unwrap(), m);
        }
    }
}
