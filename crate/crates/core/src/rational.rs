//! Rational functions `r = f/w` with prescribed poles outside the unit disk.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex_poly::{Complex, Polynomial, RootForm};
use crate::error::{Error, Result};

/// Absolute distance at which an evaluation point counts as a pole.
pub const POLE_HIT_TOL: f64 = 1e-14;
/// Default clearance of generated/validated poles above the unit circle.
pub const DEFAULT_POLE_MARGIN: f64 = 0.05;
/// Slack applied to the root and pole modulus thresholds in validation.
pub const LOCATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PoleSet {
    poles: Vec<Complex>,
}

impl PoleSet {
    /// Poles are stored as given; location is checked by [`validate_instance`]
    /// and by the bound functions that need `|βⱼ| > 1`.
    pub fn new(poles: Vec<Complex>) -> Self {
        Self { poles }
    }

    pub fn poles(&self) -> &[Complex] {
        &self.poles
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.poles.iter().map(|b| b.norm()).collect()
    }

    fn check_hit(&self, z: Complex) -> Result<()> {
        for (index, &b) in self.poles.iter().enumerate() {
            let distance = (z - b).norm();
            if distance <= POLE_HIT_TOL {
                return Err(Error::PoleHit { index, distance });
            }
        }
        Ok(())
    }
}

/// `w(z) = ∏(z − βⱼ)`.
pub fn w_eval(poles: &PoleSet, z: Complex) -> Complex {
    poles.poles.iter().fold(Complex::new(1.0, 0.0), |acc, &b| acc * (z - b))
}

/// `B(z) = ∏(1 − conj(βⱼ)z)/(z − βⱼ)`.
pub fn blaschke_eval(poles: &PoleSet, z: Complex) -> Result<Complex> {
    poles.check_hit(z)?;
    let one = Complex::new(1.0, 0.0);
    Ok(poles
        .poles
        .iter()
        .fold(one, |acc, &b| acc * (one - b.conj() * z) / (z - b)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: Polynomial,
    poles: PoleSet,
}

impl RationalFunction {
    /// Requires `deg f <= n` where `n` is the number of poles.
    pub fn new(numerator: Polynomial, poles: PoleSet) -> Result<Self> {
        if numerator.degree() > poles.len() {
            return Err(Error::Instance(format!(
                "numerator degree {} exceeds pole count {}",
                numerator.degree(),
                poles.len()
            )));
        }
        Ok(Self { numerator, poles })
    }

    /// A polynomial viewed as a rational function with `w ≡ 1`.
    pub fn from_polynomial(numerator: Polynomial) -> Self {
        Self { numerator, poles: PoleSet::default() }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn poles(&self) -> &PoleSet {
        &self.poles
    }

    pub fn eval(&self, z: Complex) -> Result<Complex> {
        self.poles.check_hit(z)?;
        Ok(self.numerator.eval(z) / w_eval(&self.poles, z))
    }
}

pub fn rat_eval(r: &RationalFunction, z: Complex) -> Result<Complex> {
    r.eval(z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroConstraint {
    k: f64,
}

impl ZeroConstraint {
    pub fn new(k: f64) -> Result<Self> {
        if !(k >= 1.0) || !k.is_finite() {
            return Err(Error::Params(format!("zero-exclusion radius k = {k} must be >= 1")));
        }
        Ok(Self { k })
    }

    pub fn unit() -> Self {
        Self { k: 1.0 }
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A numerator root lies inside `|z| < k`.
    RootInsideDisk,
    /// A pole is closer to the unit circle than the margin allows.
    PoleMargin,
    /// Coefficient-form numerator whose zeros could not be certified to lie
    /// in `|z| >= k`.
    ZeroLocationUncertified,
    /// Numerator degree differs from `n` where a coefficient bound needs it exact.
    DegreeMismatch,
    /// `|α₀| < |αₙ|·kⁿ`, which no admissible numerator satisfies.
    CoefficientBracket,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub index: usize,
    pub modulus: f64,
    pub required: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ValidationOutcome {
    pub violations: Vec<Violation>,
}

impl ValidationOutcome {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pole_violations(poles: &PoleSet, pole_margin: f64) -> Vec<Violation> {
    let required = 1.0 + pole_margin;
    poles
        .poles
        .iter()
        .enumerate()
        .filter_map(|(index, b)| {
            let modulus = b.norm();
            (!(modulus >= required - LOCATION_TOL)).then_some(Violation {
                kind: ViolationKind::PoleMargin,
                index,
                modulus,
                required,
            })
        })
        .collect()
}

pub fn validate_instance(
    numerator_roots: &RootForm,
    poles: &PoleSet,
    constraint: ZeroConstraint,
    pole_margin: f64,
) -> ValidationOutcome {
    let k = constraint.k();
    let mut violations: Vec<Violation> = numerator_roots
        .roots
        .iter()
        .enumerate()
        .filter_map(|(index, z)| {
            let modulus = z.norm();
            (!(modulus >= k - LOCATION_TOL)).then_some(Violation {
                kind: ViolationKind::RootInsideDisk,
                index,
                modulus,
                required: k,
            })
        })
        .collect();
    violations.extend(pole_violations(poles, pole_margin));
    ValidationOutcome { violations }
}

/// Lower bound on the moduli of all zeros of `p`: the positive root `R` of
/// `|α₀| = Σ_{j≥1} |αⱼ| xʲ`. Infinite for nonzero constants, zero when
/// `α₀ = 0`.
pub fn zero_modulus_lower_bound(p: &Polynomial) -> f64 {
    let moduli: Vec<f64> = p.coeffs().iter().map(|c| c.norm()).collect();
    let a0 = moduli[0];
    if a0 == 0.0 {
        return 0.0;
    }
    if moduli[1..].iter().all(|&m| m == 0.0) {
        return f64::INFINITY;
    }
    let excess = |x: f64| {
        let tail = moduli[1..].iter().rev().fold(0.0, |acc, &m| acc * x + m) * x;
        a0 - tail
    };
    let mut hi = 1.0;
    while excess(hi) > 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    lo
}

/// Validation for a coefficient-form numerator. Zero location is certified
/// only through [`zero_modulus_lower_bound`]; no root finding is attempted.
pub fn validate_coefficients(
    numerator: &Polynomial,
    poles: &PoleSet,
    constraint: ZeroConstraint,
    pole_margin: f64,
) -> ValidationOutcome {
    let k = constraint.k();
    let mut violations = Vec::new();
    let bound = zero_modulus_lower_bound(numerator);
    if !(bound >= k - LOCATION_TOL) {
        violations.push(Violation {
            kind: ViolationKind::ZeroLocationUncertified,
            index: 0,
            modulus: bound,
            required: k,
        });
    }
    violations.extend(pole_violations(poles, pole_margin));
    ValidationOutcome { violations }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Numerator {
    Coeffs(Polynomial),
    Roots(RootForm),
}

/// A problem instance: numerator, pole set and nominal `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub n: usize,
    pub numerator: Numerator,
    pub poles: PoleSet,
    pub k: Option<f64>,
}

type Pair = [f64; 2];

fn to_pair(z: Complex) -> Pair {
    [z.re, z.im]
}

fn from_pair(p: Pair) -> Complex {
    Complex::new(p[0], p[1])
}

/// On-disk instance document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub numerator: NumeratorFile,
    pub poles: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum NumeratorFile {
    Coeffs(Vec<Pair>),
    Roots(RootsFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsFile {
    pub leading: Pair,
    pub roots: Vec<Pair>,
}

impl Instance {
    pub fn from_roots(roots: RootForm, poles: PoleSet, k: Option<f64>) -> Self {
        Self { n: poles.len().max(roots.degree()), numerator: Numerator::Roots(roots), poles, k }
    }

    pub fn polynomial(&self) -> Polynomial {
        match &self.numerator {
            Numerator::Coeffs(p) => p.clone(),
            Numerator::Roots(rf) => rf.expand(),
        }
    }

    /// Numerator degree: root count for root form, detected degree otherwise.
    pub fn numerator_degree(&self) -> usize {
        match &self.numerator {
            Numerator::Coeffs(p) => p.degree(),
            Numerator::Roots(rf) => {
                if rf.leading.norm() == 0.0 {
                    0
                } else {
                    rf.degree()
                }
            }
        }
    }

    pub fn rational(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.polynomial(), self.poles.clone())
    }

    pub fn validate(&self, constraint: ZeroConstraint, pole_margin: f64, check_poles: bool) -> ValidationOutcome {
        let empty = PoleSet::default();
        let poles = if check_poles { &self.poles } else { &empty };
        match &self.numerator {
            Numerator::Roots(rf) => validate_instance(rf, poles, constraint, pole_margin),
            Numerator::Coeffs(p) => validate_coefficients(p, poles, constraint, pole_margin),
        }
    }

    pub fn to_file(&self) -> InstanceFile {
        let numerator = match &self.numerator {
            Numerator::Coeffs(p) => NumeratorFile::Coeffs(p.coeffs().iter().copied().map(to_pair).collect()),
            Numerator::Roots(rf) => NumeratorFile::Roots(RootsFile {
                leading: to_pair(rf.leading),
                roots: rf.roots.iter().copied().map(to_pair).collect(),
            }),
        };
        InstanceFile {
            n: self.n,
            numerator,
            poles: self.poles.poles().iter().copied().map(to_pair).collect(),
            k: self.k,
        }
    }

    pub fn from_file(file: InstanceFile) -> Result<Self> {
        let finite = |p: &Pair| p[0].is_finite() && p[1].is_finite();
        let numerator = match file.numerator {
            NumeratorFile::Coeffs(c) => {
                if c.is_empty() || !c.iter().all(finite) {
                    return Err(Error::Instance("coeffs must be a non-empty list of finite pairs".into()));
                }
                Numerator::Coeffs(Polynomial::new(c.into_iter().map(from_pair).collect()))
            }
            NumeratorFile::Roots(r) => {
                if !finite(&r.leading) || !r.roots.iter().all(finite) {
                    return Err(Error::Instance("roots must be finite".into()));
                }
                Numerator::Roots(RootForm::new(from_pair(r.leading), r.roots.into_iter().map(from_pair).collect()))
            }
        };
        if !file.poles.iter().all(finite) {
            return Err(Error::Instance("poles must be finite".into()));
        }
        if file.poles.len() != file.n {
            return Err(Error::Instance(format!("n = {} but {} poles given", file.n, file.poles.len())));
        }
        if let Some(k) = file.k {
            ZeroConstraint::new(k)?;
        }
        let instance = Self {
            n: file.n,
            numerator,
            poles: PoleSet::new(file.poles.into_iter().map(from_pair).collect()),
            k: file.k,
        };
        if instance.numerator_degree() > instance.n {
            return Err(Error::Instance(format!(
                "numerator degree {} exceeds n = {}",
                instance.numerator_degree(),
                instance.n
            )));
        }
        Ok(instance)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    /// Short content hash of the instance, stable across runs.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(&self.to_file()).expect("instance serializes");
        let hash = Sha256::digest(canonical.as_bytes());
        hex::encode(&hash[..8])
    }
}
