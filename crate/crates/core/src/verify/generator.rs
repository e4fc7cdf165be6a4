//! Seeded random instances satisfying the zero and pole hypotheses.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::complex_poly::{Complex, RootForm};
use crate::error::{Error, Result};
use crate::rational::{Instance, PoleSet, DEFAULT_POLE_MARGIN};

/// Independent stream for draw `index` under `seed`. Draws do not depend on
/// each other, so any evaluation order yields the same instances.
pub fn substream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub k: f64,
    pub root_modulus_max: f64,
    pub pole_margin: f64,
    pub pole_modulus_max: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(n: usize, k: f64, seed: u64) -> Self {
        Self { n, k, root_modulus_max: 5.0, pole_margin: DEFAULT_POLE_MARGIN, pole_modulus_max: 10.0, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Params("generator needs n >= 1".into()));
        }
        if !(self.k >= 1.0) {
            return Err(Error::Params(format!("generator k = {} must be >= 1", self.k)));
        }
        if !(self.root_modulus_max >= self.k) || !self.root_modulus_max.is_finite() {
            return Err(Error::Params("root_modulus_max must be finite and >= k".into()));
        }
        if !(self.pole_margin > 0.0) {
            return Err(Error::Params("pole_margin must be positive".into()));
        }
        if !(self.pole_modulus_max >= 1.0 + self.pole_margin) || !self.pole_modulus_max.is_finite() {
            return Err(Error::Params("pole_modulus_max must be finite and >= 1 + pole_margin".into()));
        }
        Ok(())
    }
}

fn uniform(rng: &mut ChaCha20Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Draw number `index` of the configured stream.
pub fn generate_draw(cfg: &GeneratorConfig, index: u64) -> Result<(RootForm, PoleSet)> {
    cfg.validate()?;
    let mut rng = substream(cfg.seed, index);
    let roots = (0..cfg.n)
        .map(|_| {
            let m = uniform(&mut rng, cfg.k, cfg.root_modulus_max);
            Complex::from_polar(m, TAU * rng.random::<f64>())
        })
        .collect();
    let poles = (0..cfg.n)
        .map(|_| {
            let m = uniform(&mut rng, 1.0 + cfg.pole_margin, cfg.pole_modulus_max);
            Complex::from_polar(m, TAU * rng.random::<f64>())
        })
        .collect();
    let leading = Complex::from_polar(1.0, TAU * rng.random::<f64>());
    Ok((RootForm::new(leading, roots), PoleSet::new(poles)))
}

pub fn generate_instance(cfg: &GeneratorConfig) -> Result<(RootForm, PoleSet)> {
    generate_draw(cfg, 0)
}

/// The draw packaged as an [`Instance`] carrying `k`.
pub fn generate_instance_at(cfg: &GeneratorConfig, index: u64) -> Result<Instance> {
    let (roots, poles) = generate_draw(cfg, index)?;
    Ok(Instance::from_roots(roots, poles, Some(cfg.k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{validate_instance, ZeroConstraint};

    #[test]
    fn same_seed_same_instance() {
        let cfg = GeneratorConfig::new(3, 1.0, 77);
        assert_eq!(generate_instance(&cfg).unwrap(), generate_instance(&cfg).unwrap());
        assert_ne!(generate_draw(&cfg, 0).unwrap(), generate_draw(&cfg, 1).unwrap());
    }

    #[test]
    fn draws_satisfy_hypotheses() {
        for seed in 0..50 {
            let cfg = GeneratorConfig::new(5, 2.0, seed);
            let (roots, poles) = generate_instance(&cfg).unwrap();
            assert!(roots.moduli().iter().all(|&m| m >= 2.0 - 1e-12));
            let v = validate_instance(&roots, &poles, ZeroConstraint::new(2.0).unwrap(), cfg.pole_margin);
            assert!(v.accepted(), "{v:?}");
            assert!((roots.leading.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn bad_configs_rejected() {
        assert!(GeneratorConfig::new(0, 1.0, 0).validate().is_err());
        assert!(GeneratorConfig::new(2, 0.5, 0).validate().is_err());
        let mut cfg = GeneratorConfig::new(2, 6.0, 0);
        assert!(cfg.validate().is_err());
        cfg.k = 1.0;
        cfg.pole_margin = 0.0;
        assert!(cfg.validate().is_err());
    }
}
