//! Random sweep of the two product lemmas.

use rand::Rng;
use serde::Serialize;

use crate::bounds::{lemma1_rhs, lemma2_rhs, product_lhs};
use crate::error::{Error, Result};

use super::generator::substream;

pub const LEMMA_TOL: f64 = 1e-12;
const MAX_MODULUS: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaWitness {
    pub eta: f64,
    pub k: f64,
    pub moduli: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaStats {
    pub samples: usize,
    pub failures: usize,
    /// Smallest `lhs − rhs` seen.
    pub min_slack: f64,
    pub tightest: Option<LemmaWitness>,
    pub n1_samples: usize,
    /// Largest `|lhs − rhs|` among `n = 1` samples, where the lemmas are equalities.
    pub n1_max_gap: f64,
}

impl LemmaStats {
    fn new() -> Self {
        Self { samples: 0, failures: 0, min_slack: f64::INFINITY, tightest: None, n1_samples: 0, n1_max_gap: 0.0 }
    }

    fn record(&mut self, w: LemmaWitness) {
        self.samples += 1;
        let slack = w.lhs - w.rhs;
        if slack < -LEMMA_TOL {
            self.failures += 1;
        }
        if w.moduli.len() == 1 {
            self.n1_samples += 1;
            self.n1_max_gap = self.n1_max_gap.max(slack.abs());
        }
        if slack < self.min_slack {
            self.min_slack = slack;
            self.tightest = Some(w);
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0 && self.n1_max_gap <= LEMMA_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub n_max: usize,
    pub lemma1: LemmaStats,
    pub lemma2: LemmaStats,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.lemma1.ok() && self.lemma2.ok()
    }
}

/// `samples` draws per lemma: `η ∈ [0,1]`, `n ∈ 1..=n_max`, `ηⱼ ∈ [1,10]`
/// for the first lemma; `k ∈ [1,3]` and `ηⱼ ∈ [k,10]` for the second.
pub fn lemma_sweep(samples: usize, seed: u64, n_max: usize) -> Result<LemmaReport> {
    if n_max == 0 {
        return Err(Error::Params("n_max must be >= 1".into()));
    }
    let mut lemma1 = LemmaStats::new();
    let mut lemma2 = LemmaStats::new();
    for i in 0..samples as u64 {
        let mut rng = substream(seed, 2 * i);
        let eta: f64 = rng.random();
        let n = rng.random_range(1..=n_max);
        let moduli: Vec<f64> = (0..n).map(|_| 1.0 + (MAX_MODULUS - 1.0) * rng.random::<f64>()).collect();
        let lhs = product_lhs(eta, &moduli);
        let rhs = lemma1_rhs(eta, &moduli)?;
        lemma1.record(LemmaWitness { eta, k: 1.0, moduli, lhs, rhs });

        let mut rng = substream(seed, 2 * i + 1);
        let eta: f64 = rng.random();
        let k = 1.0 + 2.0 * rng.random::<f64>();
        let n = rng.random_range(1..=n_max);
        let moduli: Vec<f64> = (0..n).map(|_| k + (MAX_MODULUS - k) * rng.random::<f64>()).collect();
        let lhs = product_lhs(eta, &moduli);
        let rhs = lemma2_rhs(eta, k, &moduli)?;
        lemma2.record(LemmaWitness { eta, k, moduli, lhs, rhs });
    }
    Ok(LemmaReport { seed, n_max, lemma1, lemma2 })
}
