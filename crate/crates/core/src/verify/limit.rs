//! Recovery of the polynomial bounds from the rational ones as a single
//! repeated pole `β` moves to infinity.

use serde::Serialize;

use crate::bounds::{factor_polynomial, factor_rational, BoundParams, TheoremId};
use crate::complex_poly::{unit, Complex, Polynomial};
use crate::error::{Error, Result};
use crate::rational::PoleSet;

use super::grid::CircleGrid;

/// Max over the grid of
/// `|c_rat(β)·|(ηz − β)/(z − β)|ⁿ − c_poly|`, where `w = (z − β)ⁿ` with real
/// `β = beta_modulus`. Uses `t1`/`tE` for `k = 1` and `t2`/`tF` otherwise.
pub fn limit_recovery_check(n: usize, eta: f64, k: f64, poly: &Polynomial, beta_modulus: f64, grid: CircleGrid) -> Result<f64> {
    if n == 0 {
        return Err(Error::Params("limit check needs n >= 1".into()));
    }
    if poly.degree() != n {
        return Err(Error::Params(format!("polynomial degree {} differs from n = {n}", poly.degree())));
    }
    if !(beta_modulus > 1.0) || !beta_modulus.is_finite() {
        return Err(Error::Params(format!("beta modulus {beta_modulus} must be finite and > 1")));
    }
    let params = BoundParams::eta_k(eta, k)?;
    let coeffs = poly.coeff_moduli(Some(n))?;
    let (rat_id, poly_id) = if k == 1.0 {
        (TheoremId::T1New, TheoremId::EDk)
    } else {
        (TheoremId::T2New, TheoremId::FDk)
    };
    let beta = Complex::new(beta_modulus, 0.0);
    let poles = PoleSet::new(vec![beta; n]);
    let rational = factor_rational(rat_id, &params, n, Some(coeffs), &poles)?;
    let polynomial = factor_polynomial(poly_id, &params, n, Some(coeffs))?;
    if rational.warning.is_some() {
        return Err(Error::Domain("coefficients contradict the zero hypothesis".into()));
    }
    let nn = n as u32;
    let diff = (0..grid.points)
        .map(|i| {
            let z = unit(grid.theta(i));
            let pole_term = crate::bounds::ipow(((z * eta - beta) / (z - beta)).norm(), nn);
            (rational.value * pole_term - polynomial.value).abs()
        })
        .fold(0.0, f64::max);
    Ok(diff)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitPoint {
    pub beta_modulus: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub n: usize,
    pub eta: f64,
    pub k: f64,
    pub points: Vec<LimitPoint>,
    /// Differences strictly decrease along increasing `|β|`.
    pub monotone: bool,
}

/// `|β| ∈ {10, 10², …, 10⁸}`.
pub fn default_beta_sweep() -> Vec<f64> {
    (1..=8).map(|e| 10f64.powi(e)).collect()
}

pub fn limit_sweep(n: usize, eta: f64, k: f64, poly: &Polynomial, betas: &[f64], grid: CircleGrid) -> Result<LimitReport> {
    let points = betas
        .iter()
        .map(|&b| Ok(LimitPoint { beta_modulus: b, difference: limit_recovery_check(n, eta, k, poly, b, grid)? }))
        .collect::<Result<Vec<_>>>()?;
    let monotone = points.windows(2).all(|w| w[1].beta_modulus > w[0].beta_modulus && w[1].difference < w[0].difference);
    Ok(LimitReport { n, eta, k, points, monotone })
}
