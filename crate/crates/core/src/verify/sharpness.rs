//! Equality cases of the polynomial bounds.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{factor_polynomial, BoundParams, TheoremId};
use crate::complex_poly::{Complex, RootForm};
use crate::error::{Error, Result};
use crate::rational::RationalFunction;

use super::grid::{angle_distance, min_ratio_search, CircleGrid};

/// Agreement required between the circle minimum and the factor.
pub const EQUALITY_TOL: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtremalFamily {
    /// `(z + ζ)ⁿ`, `|ζ| = 1`.
    ZetaPower { zeta: Complex },
    /// `(z + k)ⁿ`.
    KPower { k: f64 },
    /// `(a + bz)ⁿ`, `|a| = |b| = 1`.
    AbPower { a: Complex, b: Complex },
    /// `z + γ`, `|γ| >= k`.
    LinearGamma { gamma: Complex },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    ZetaPower,
    KPower,
    AbPower,
    LinearGamma,
}

impl FamilyKind {
    pub fn tag(self) -> &'static str {
        match self {
            FamilyKind::ZetaPower => "zeta-power",
            FamilyKind::KPower => "k-power",
            FamilyKind::AbPower => "ab-power",
            FamilyKind::LinearGamma => "linear-gamma",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [FamilyKind::ZetaPower, FamilyKind::KPower, FamilyKind::AbPower, FamilyKind::LinearGamma]
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Params(format!("unknown family '{s}'")))
    }
}

impl ExtremalFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            ExtremalFamily::ZetaPower { .. } => FamilyKind::ZetaPower,
            ExtremalFamily::KPower { .. } => FamilyKind::KPower,
            ExtremalFamily::AbPower { .. } => FamilyKind::AbPower,
            ExtremalFamily::LinearGamma { .. } => FamilyKind::LinearGamma,
        }
    }

    fn check(&self) -> Result<()> {
        let on_circle = |z: Complex| (z.norm() - 1.0).abs() <= UNIT_TOL;
        let ok = match *self {
            ExtremalFamily::ZetaPower { zeta } => on_circle(zeta),
            ExtremalFamily::KPower { k } => k >= 1.0 && k.is_finite(),
            ExtremalFamily::AbPower { a, b } => on_circle(a) && on_circle(b),
            ExtremalFamily::LinearGamma { gamma } => gamma.norm() >= 1.0 && gamma.norm().is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Params(format!("{self:?} violates its parameter constraint")))
        }
    }

    /// Degree of the member used for `n`; `z + γ` is always linear.
    pub fn degree(&self, n: usize) -> usize {
        match self {
            ExtremalFamily::LinearGamma { .. } => 1,
            _ => n,
        }
    }

    pub fn root_form(&self, n: usize) -> RootForm {
        let one = Complex::new(1.0, 0.0);
        match *self {
            ExtremalFamily::ZetaPower { zeta } => RootForm::new(one, vec![-zeta; n]),
            ExtremalFamily::KPower { k } => RootForm::new(one, vec![Complex::new(-k, 0.0); n]),
            ExtremalFamily::AbPower { a, b } => RootForm::new(b.powu(n as u32), vec![-a / b; n]),
            ExtremalFamily::LinearGamma { gamma } => RootForm::new(one, vec![-gamma]),
        }
    }

    /// Angle at which `|f(ηz)|/|f(z)|` is smallest: opposite the roots.
    pub fn expected_argmin(&self) -> f64 {
        let dir = match *self {
            ExtremalFamily::ZetaPower { zeta } => zeta,
            ExtremalFamily::KPower { .. } => Complex::new(1.0, 0.0),
            ExtremalFamily::AbPower { a, b } => a / b,
            ExtremalFamily::LinearGamma { gamma } => gamma,
        };
        dir.arg().rem_euclid(std::f64::consts::TAU)
    }

    /// Whether the family is among the stated equality cases of `id` at `k`.
    pub fn is_extremal_for(&self, id: TheoremId, k: f64) -> bool {
        use TheoremId::*;
        match (*self, id) {
            (ExtremalFamily::ZetaPower { .. }, ARivlin | EDk) => true,
            (ExtremalFamily::AbPower { .. }, EDk) => true,
            (ExtremalFamily::KPower { k: kf }, BAziz | DKm | FDk) => kf == k,
            (ExtremalFamily::LinearGamma { gamma }, DKm | FDk) => gamma.norm() >= k,
            (ExtremalFamily::LinearGamma { gamma }, EDk) => gamma.norm() >= 1.0,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub family: FamilyKind,
    pub theorem: TheoremId,
    pub params: BoundParams,
    pub n: usize,
    pub factor: f64,
    pub min_ratio: f64,
    pub argmin_theta: f64,
    pub expected_argmin: f64,
    pub argmin_error: f64,
    pub abs_error: f64,
    pub equality: bool,
}

/// Minimizes `|f(ηz)|/|f(z)|` for the family member of degree `n` and
/// compares the minimum with the factor of `id`.
pub fn sharpness_check(family: &ExtremalFamily, id: TheoremId, params: &BoundParams, n: usize, grid: CircleGrid) -> Result<SharpnessReport> {
    family.check()?;
    let k = if id.uses_k() { params.k } else { 1.0 };
    if !family.is_extremal_for(id, k) {
        return Err(Error::FamilyMismatch { family: family.kind().tag().into(), theorem: id.tag().into() });
    }
    let degree = family.degree(n);
    if degree == 0 {
        return Err(Error::Params("sharpness needs n >= 1".into()));
    }
    let f = family.root_form(degree).expand();
    let coeffs = if id.uses_coefficients() { Some(f.coeff_moduli(Some(degree))?) } else { None };
    let bound = factor_polynomial(id, params, degree, coeffs)?;
    let r = RationalFunction::from_polynomial(f);
    let m = min_ratio_search(&r, params.eta, grid)?;
    let abs_error = (m.min - bound.value).abs();
    let expected_argmin = family.expected_argmin();
    Ok(SharpnessReport {
        family: family.kind(),
        theorem: id,
        params: *params,
        n: degree,
        factor: bound.value,
        min_ratio: m.min,
        argmin_theta: m.argmin_theta,
        expected_argmin,
        argmin_error: angle_distance(m.argmin_theta, expected_argmin),
        abs_error,
        equality: abs_error <= EQUALITY_TOL,
    })
}
