//! Closed-form growth factors.
//!
//! Every lower-bound theorem has the shape `|g(ηz)| >= c·|g(z)|` on `|z| = 1`
//! and this module returns `c`. The coefficient-sharpened theorems split `c`
//! into `base·(1 + correction)` (times the pole product for rational ones),
//! and both parts are reported.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::PoleSet;

/// Above this length products are accumulated as sums of logarithms.
const LOG_SPACE_MIN_LEN: usize = 33;

/// Relative slack before `a0 < an·kⁿ` raises a hypothesis warning.
const HYPOTHESIS_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    E2MaxMod,
    E1Varga,
    ARivlin,
    BAziz,
    CKm,
    DKm,
    EDk,
    FDk,
    GRather,
    HRather,
    IRather,
    JRather,
    T1New,
    T2New,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::E2MaxMod,
        TheoremId::E1Varga,
        TheoremId::ARivlin,
        TheoremId::BAziz,
        TheoremId::CKm,
        TheoremId::DKm,
        TheoremId::EDk,
        TheoremId::FDk,
        TheoremId::GRather,
        TheoremId::HRather,
        TheoremId::IRather,
        TheoremId::JRather,
        TheoremId::T1New,
        TheoremId::T2New,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::E2MaxMod => "e2max",
            TheoremId::E1Varga => "e1varga",
            TheoremId::ARivlin => "tA",
            TheoremId::BAziz => "tB",
            TheoremId::CKm => "tC",
            TheoremId::DKm => "tD",
            TheoremId::EDk => "tE",
            TheoremId::FDk => "tF",
            TheoremId::GRather => "tG",
            TheoremId::HRather => "tH",
            TheoremId::IRather => "tI",
            TheoremId::JRather => "tJ",
            TheoremId::T1New => "t1",
            TheoremId::T2New => "t2",
        }
    }

    /// Bounds stated for polynomials (no pole product).
    pub fn is_polynomial(self) -> bool {
        matches!(
            self,
            TheoremId::E2MaxMod
                | TheoremId::E1Varga
                | TheoremId::ARivlin
                | TheoremId::BAziz
                | TheoremId::CKm
                | TheoremId::DKm
                | TheoremId::EDk
                | TheoremId::FDk
        )
    }

    pub fn is_rational(self) -> bool {
        !self.is_polynomial()
    }

    /// Whether the factor depends on `|α₀|` and `|αₙ|`.
    pub fn uses_coefficients(self) -> bool {
        matches!(
            self,
            TheoremId::CKm
                | TheoremId::DKm
                | TheoremId::EDk
                | TheoremId::FDk
                | TheoremId::IRather
                | TheoremId::JRather
                | TheoremId::T1New
                | TheoremId::T2New
        )
    }

    /// Whether the zero hypothesis is `|z| >= k` rather than `|z| >= 1`.
    pub fn uses_k(self) -> bool {
        matches!(
            self,
            TheoremId::BAziz | TheoremId::DKm | TheoremId::FDk | TheoremId::HRather | TheoremId::JRather | TheoremId::T2New
        )
    }

    /// The max-modulus bounds compare circle maxima instead of pointwise values.
    pub fn is_max_modulus(self) -> bool {
        matches!(self, TheoremId::E2MaxMod | TheoremId::E1Varga)
    }

    /// Whether the theorem carries a zero-location hypothesis.
    pub fn has_zero_hypothesis(self) -> bool {
        !self.is_max_modulus()
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| Error::Params(format!("unknown theorem tag '{s}'")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams {
    pub eta: f64,
    pub k: f64,
    pub nu: f64,
}

impl BoundParams {
    pub fn new(eta: f64, k: f64, nu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::Params(format!("eta = {eta} must lie in [0, 1]")));
        }
        if !(k >= 1.0 && k.is_finite()) {
            return Err(Error::Params(format!("k = {k} must be >= 1")));
        }
        if !(nu >= 1.0 && nu.is_finite()) {
            return Err(Error::Params(format!("nu = {nu} must be >= 1")));
        }
        Ok(Self { eta, k, nu })
    }

    pub fn eta(eta: f64) -> Result<Self> {
        Self::new(eta, 1.0, 1.0)
    }

    pub fn eta_k(eta: f64, k: f64) -> Result<Self> {
        Self::new(eta, k, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    /// `|g(ηz)| >= value·|g(z)|` (or the max-modulus analogue).
    Lower,
    /// `max_{|z|=ν}|f| <= value·max_{|z|=1}|f|`.
    Upper,
}

/// The coefficients violate `a0 >= an·kⁿ`, so the zero hypothesis cannot hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisWarning {
    pub a0: f64,
    pub required: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundFactor {
    pub value: f64,
    pub theorem: TheoremId,
    pub params: BoundParams,
    pub correction_term: f64,
    pub direction: BoundDirection,
    pub warning: Option<HypothesisWarning>,
}

/// `xⁿ` by repeated squaring, so results do not depend on a platform `pow`.
pub fn ipow(x: f64, n: u32) -> f64 {
    let mut result = 1.0;
    let mut base = x;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result *= base;
        }
        base *= base;
        e >>= 1;
    }
    result
}

fn product(terms: impl ExactSizeIterator<Item = f64>) -> f64 {
    if terms.len() >= LOG_SPACE_MIN_LEN {
        terms.map(f64::ln).sum::<f64>().exp()
    } else {
        terms.product()
    }
}

fn degree_u32(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::Params(format!("degree {n} out of range")))
}

/// `∏(|βⱼ| − 1)/(|βⱼ| + η)`.
pub fn pole_product(poles: &PoleSet, eta: f64) -> Result<f64> {
    let moduli = poles.moduli();
    if let Some((index, &modulus)) = moduli.iter().enumerate().find(|(_, &m)| !(m > 1.0)) {
        return Err(Error::PoleOnCircle { index, modulus });
    }
    Ok(product(moduli.iter().map(|&m| (m - 1.0) / (m + eta))))
}

struct Shape {
    base: f64,
    correction: f64,
    direction: BoundDirection,
}

fn required_coeffs(id: TheoremId, coeffs: Option<(f64, f64)>) -> Result<(f64, f64)> {
    let (a0, an) = coeffs.ok_or_else(|| Error::Params(format!("{id} needs |alpha_0| and |alpha_n|")))?;
    if !(an > 0.0) || !(a0 >= 0.0) || !a0.is_finite() || !an.is_finite() {
        return Err(Error::Params(format!("{id}: need a0 >= 0 and an > 0 (got {a0}, {an})")));
    }
    Ok((a0, an))
}

/// Shared evaluation of every catalogued factor except for the pole product.
fn shape(id: TheoremId, params: &BoundParams, n: usize, coeffs: Option<(f64, f64)>) -> Result<(Shape, Option<HypothesisWarning>)> {
    let BoundParams { eta, k, nu } = *params;
    let nn = degree_u32(n)?;
    let unit_base = ipow((1.0 + eta) / 2.0, nn);
    let k_base = ipow((k + eta) / (k + 1.0), nn);

    let mut warning = None;
    let mut bracket = |k_eff: f64| -> Result<f64> {
        if n == 0 {
            return Err(Error::Params(format!("{id} needs degree n >= 1")));
        }
        let (a0, an) = required_coeffs(id, coeffs)?;
        let required = an * ipow(k_eff, nn);
        if a0 < required * (1.0 - HYPOTHESIS_REL_TOL) {
            warning = Some(HypothesisWarning { a0, required });
        }
        Ok((a0 - required) / (a0 + an))
    };

    let lower = |base: f64, correction: f64| Shape { base, correction, direction: BoundDirection::Lower };
    let shape = match id {
        TheoremId::E2MaxMod => Shape { base: ipow(nu, nn), correction: 0.0, direction: BoundDirection::Upper },
        TheoremId::E1Varga => lower(ipow(eta, nn), 0.0),
        TheoremId::ARivlin | TheoremId::GRather => lower(unit_base, 0.0),
        TheoremId::BAziz | TheoremId::HRather => lower(k_base, 0.0),
        TheoremId::CKm | TheoremId::IRather => {
            let c = bracket(1.0)?;
            lower(unit_base, c * ipow((1.0 - eta) / (1.0 + eta), nn))
        }
        TheoremId::DKm => {
            let c = bracket(k)?;
            lower(k_base, c * ipow((1.0 - eta) / (k + eta), nn))
        }
        TheoremId::EDk | TheoremId::T1New => {
            let c = bracket(1.0)?;
            lower(unit_base, c * (1.0 - eta) / ipow(1.0 + eta, nn))
        }
        TheoremId::FDk | TheoremId::T2New => {
            let c = bracket(k)?;
            lower(k_base, c * (1.0 - eta) / ipow(k + eta, nn) / ipow(k, nn - 1))
        }
        TheoremId::JRather => {
            let c = bracket(k)?;
            lower(k_base, c * ipow((1.0 - eta) / (k + eta), nn) / ipow(k, nn - 1))
        }
    };
    Ok((shape, warning))
}

/// Factor of one of the polynomial bounds (`e2max`, `e1varga`, `tA`..`tF`).
/// `coeffs = (|α₀|, |αₙ|)` is needed for `tC`..`tF` only.
pub fn factor_polynomial(id: TheoremId, params: &BoundParams, n: usize, coeffs: Option<(f64, f64)>) -> Result<BoundFactor> {
    if !id.is_polynomial() {
        return Err(Error::Params(format!("{id} is not a polynomial bound")));
    }
    let (s, warning) = shape(id, params, n, coeffs)?;
    Ok(BoundFactor {
        value: s.base * (1.0 + s.correction),
        theorem: id,
        params: *params,
        correction_term: s.correction,
        direction: s.direction,
        warning,
    })
}

/// Factor of one of the rational bounds (`tG`..`tJ`, `t1`, `t2`), pole
/// product included. `n` must equal the number of poles.
pub fn factor_rational(
    id: TheoremId,
    params: &BoundParams,
    n: usize,
    coeffs: Option<(f64, f64)>,
    poles: &PoleSet,
) -> Result<BoundFactor> {
    if !id.is_rational() {
        return Err(Error::Params(format!("{id} is not a rational bound")));
    }
    if poles.len() != n {
        return Err(Error::Params(format!("{id}: n = {n} but {} poles", poles.len())));
    }
    let pp = pole_product(poles, params.eta)?;
    let (s, warning) = shape(id, params, n, coeffs)?;
    Ok(BoundFactor {
        value: s.base * (1.0 + s.correction) * pp,
        theorem: id,
        params: *params,
        correction_term: s.correction,
        direction: s.direction,
        warning,
    })
}

/// Dispatches on the theorem family.
pub fn factor(id: TheoremId, params: &BoundParams, n: usize, coeffs: Option<(f64, f64)>, poles: &PoleSet) -> Result<BoundFactor> {
    if id.is_polynomial() {
        factor_polynomial(id, params, n, coeffs)
    } else {
        factor_rational(id, params, n, coeffs, poles)
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Domain(format!("eta = {eta} outside [0, 1]")));
    }
    Ok(())
}

/// `∏(ηⱼ + η)/(ηⱼ + 1)`.
pub fn product_lhs(eta: f64, root_moduli: &[f64]) -> f64 {
    product(root_moduli.iter().map(|&m| (m + eta) / (m + 1.0)))
}

/// Right-hand side of the `ηⱼ >= 1` product lemma.
pub fn lemma1_rhs(eta: f64, root_moduli: &[f64]) -> Result<f64> {
    check_eta(eta)?;
    if let Some(m) = root_moduli.iter().find(|&&m| !(m >= 1.0)) {
        return Err(Error::Domain(format!("root modulus {m} < 1")));
    }
    let n = degree_u32(root_moduli.len())?;
    let p = product(root_moduli.iter().copied());
    let bracket = 1.0 + (p - 1.0) * (1.0 - eta) / ((p + 1.0) * ipow(eta + 1.0, n));
    Ok(ipow((eta + 1.0) / 2.0, n) * bracket)
}

/// Right-hand side of the `ηⱼ >= k >= 1` product lemma.
pub fn lemma2_rhs(eta: f64, k: f64, root_moduli: &[f64]) -> Result<f64> {
    check_eta(eta)?;
    if !(k >= 1.0) {
        return Err(Error::Domain(format!("k = {k} < 1")));
    }
    if let Some(m) = root_moduli.iter().find(|&&m| !(m >= k)) {
        return Err(Error::Domain(format!("root modulus {m} < k = {k}")));
    }
    let n = degree_u32(root_moduli.len())?;
    if n == 0 {
        return Ok(1.0);
    }
    let p = product(root_moduli.iter().copied());
    let kn = ipow(k, n);
    let bracket = 1.0 + (1.0 - eta) / ipow(k + eta, n) * (p - kn) / (p + 1.0) / ipow(k, n - 1);
    Ok(ipow((k + eta) / (k + 1.0), n) * bracket)
}
