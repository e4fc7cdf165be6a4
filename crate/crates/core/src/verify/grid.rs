//! Sampling of the growth ratio `|r(ηe^{iθ})| / |r(e^{iθ})|` on an
//! equispaced circle grid, with golden-section refinement of the minimum.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::complex_poly::{unit, Complex, Polynomial};
use crate::error::{Error, Result};
use crate::rational::{RationalFunction, POLE_HIT_TOL};

/// Relative tolerance of the pointwise inequality.
pub const REL_TOL: f64 = 1e-9;
/// Absolute tolerance of the pointwise inequality.
pub const ABS_TOL: f64 = 1e-12;
/// Points with `|r(e^{iθ})| < VACUOUS_REL · scale` are skipped.
pub const VACUOUS_REL: f64 = 1e-13;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircleGrid {
    pub points: usize,
    pub refine_iters: usize,
}

impl Default for CircleGrid {
    fn default() -> Self {
        Self { points: 4096, refine_iters: 60 }
    }
}

impl CircleGrid {
    pub fn new(points: usize, refine_iters: usize) -> Result<Self> {
        if points < 16 {
            return Err(Error::Params(format!("grid needs at least 16 points, got {points}")));
        }
        Ok(Self { points, refine_iters })
    }

    pub fn theta(&self, i: usize) -> f64 {
        TAU * i as f64 / self.points as f64
    }

    pub fn step(&self) -> f64 {
        TAU / self.points as f64
    }
}

/// Circular distance between two angles, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Minimizes `f` on `[lo, hi]` by golden-section search. `seed` is a known
/// point/value pair (the grid minimum) that the result never exceeds.
pub fn golden_section_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize, seed: (f64, f64)) -> (f64, f64) {
    let mut best = seed;
    let mut consider = |x: f64, v: f64| {
        if v < best.1 {
            best = (x, v);
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc <= fd {
            consider(c, fc);
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            consider(d, fd);
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    if iters > 0 {
        consider(c, fc);
        consider(d, fd);
    }
    best
}

fn modulus_at(r: &RationalFunction, z: Complex) -> Option<f64> {
    let mut w = Complex::new(1.0, 0.0);
    for &b in r.poles().poles() {
        let d = z - b;
        if d.norm_sqr() <= POLE_HIT_TOL * POLE_HIT_TOL {
            return None;
        }
        w *= d;
    }
    Some(r.numerator().eval(z).norm() / w.norm())
}

/// Unit-circle values of one rational function, reusable across `η`.
pub struct CircleSampler<'a> {
    r: &'a RationalFunction,
    grid: CircleGrid,
    points: Vec<Complex>,
    /// `|r(e^{iθᵢ})|`, or `None` for vacuous / pole-hit points.
    unit_values: Vec<Option<f64>>,
    threshold: f64,
}

impl<'a> CircleSampler<'a> {
    pub fn new(r: &'a RationalFunction, grid: CircleGrid) -> Self {
        let points: Vec<Complex> = (0..grid.points).map(|i| unit(grid.theta(i))).collect();
        let min_w = if r.poles().is_empty() {
            1.0
        } else {
            points
                .iter()
                .map(|&z| crate::rational::w_eval(r.poles(), z).norm())
                .fold(f64::INFINITY, f64::min)
        };
        let scale = r.numerator().max_coeff_modulus() / min_w;
        let threshold = VACUOUS_REL * scale;
        let unit_values = points
            .iter()
            .map(|&z| modulus_at(r, z).filter(|&m| m > threshold && m.is_finite()))
            .collect();
        Self { r, grid, points, unit_values, threshold }
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn skipped_points(&self) -> usize {
        self.unit_values.iter().filter(|v| v.is_none()).count()
    }

    /// Ratio at grid index `i`, or `None` where the point is skipped.
    fn ratio_at(&self, i: usize, eta: f64) -> Option<(f64, f64)> {
        let den = self.unit_values[i]?;
        let num = modulus_at(self.r, self.points[i] * eta)?;
        Some((num, den))
    }

    /// Ratio at an arbitrary angle, `+∞` where vacuous.
    pub fn ratio_at_angle(&self, theta: f64, eta: f64) -> f64 {
        let z = unit(theta);
        match (modulus_at(self.r, z), modulus_at(self.r, z * eta)) {
            (Some(den), Some(num)) if den > self.threshold => num / den,
            _ => f64::INFINITY,
        }
    }

    pub fn pointwise(&self, eta: f64, factor: f64) -> PointwiseReport {
        let mut violations = 0;
        let mut skipped = 0;
        let mut grid_min: Option<(usize, f64)> = None;
        for i in 0..self.grid.points {
            let Some((num, den)) = self.ratio_at(i, eta) else {
                skipped += 1;
                continue;
            };
            if num < factor * den * (1.0 - REL_TOL) - ABS_TOL {
                violations += 1;
            }
            let ratio = num / den;
            if grid_min.is_none_or(|(_, m)| ratio < m) {
                grid_min = Some((i, ratio));
            }
        }
        PointwiseReport {
            factor,
            pass: violations == 0,
            violations,
            skipped_points: skipped,
            grid_min: grid_min.map(|(_, m)| m),
            grid_argmin_theta: grid_min.map(|(i, _)| self.grid.theta(i)),
        }
    }

    pub fn min_ratio(&self, eta: f64) -> Result<RatioMinimum> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.grid.points {
            if let Some((num, den)) = self.ratio_at(i, eta) {
                let ratio = num / den;
                if best.is_none_or(|(_, m)| ratio < m) {
                    best = Some((i, ratio));
                }
            }
        }
        let (i, grid_value) = best.ok_or(Error::AllSkipped)?;
        let theta = self.grid.theta(i);
        let h = self.grid.step();
        let (arg, min) = golden_section_min(
            |t| self.ratio_at_angle(t, eta),
            theta - h,
            theta + h,
            self.grid.refine_iters,
            (theta, grid_value),
        );
        Ok(RatioMinimum { min, argmin_theta: arg.rem_euclid(TAU) })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseReport {
    pub factor: f64,
    pub pass: bool,
    pub violations: usize,
    pub skipped_points: usize,
    pub grid_min: Option<f64>,
    pub grid_argmin_theta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioMinimum {
    pub min: f64,
    pub argmin_theta: f64,
}

/// Checks `|r(ηz)| >= factor·|r(z)|` at every grid point, with the relative
/// and absolute tolerances above.
pub fn pointwise_check(r: &RationalFunction, eta: f64, factor: f64, grid: CircleGrid) -> Result<PointwiseReport> {
    check_eta(eta)?;
    Ok(CircleSampler::new(r, grid).pointwise(eta, factor))
}

/// Global minimum of the growth ratio on the unit circle: best grid angle,
/// then golden-section refinement on the neighbouring bracket.
pub fn min_ratio_search(r: &RationalFunction, eta: f64, grid: CircleGrid) -> Result<RatioMinimum> {
    check_eta(eta)?;
    CircleSampler::new(r, grid).min_ratio(eta)
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Params(format!("eta = {eta} must lie in [0, 1]")));
    }
    Ok(())
}

/// `max_{|z|=radius} |f(z)|` and the angle where it is attained.
pub fn max_modulus_on_circle(f: &Polynomial, radius: f64, grid: CircleGrid) -> (f64, f64) {
    let value = |t: f64| f.eval(unit(t) * radius).norm();
    let mut best = (0.0, value(0.0));
    for i in 1..grid.points {
        let t = grid.theta(i);
        let v = value(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    let h = grid.step();
    let (arg, neg) = golden_section_min(|t| -value(t), best.0 - h, best.0 + h, grid.refine_iters, (best.0, -best.1));
    (-neg, arg.rem_euclid(TAU))
}
