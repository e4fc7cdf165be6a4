//! Side-by-side factor tables and the sharpening orders between them.

use serde::Serialize;

use crate::bounds::{factor, BoundParams, TheoremId};
use crate::error::{Error, Result};
use crate::rational::Instance;

/// Minimum relative separation of correction terms for a strict ordering.
pub const STRICT_MARGIN: f64 = 1e-12;

/// Each chain runs from the sharpest bound to the weakest.
pub const CHAINS: [[TheoremId; 3]; 2] = [
    [TheoremId::T1New, TheoremId::IRather, TheoremId::GRather],
    [TheoremId::T2New, TheoremId::JRather, TheoremId::HRather],
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorEntry {
    pub theorem: TheoremId,
    pub factor: f64,
    pub correction_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub eta: f64,
    pub entries: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderingCheck {
    pub eta: f64,
    pub chain: [TheoremId; 3],
    /// `factor(a) >= factor(b)` along the chain.
    pub weak_holds: bool,
    /// `η ∈ (0,1)`, `n > 1` and a nonzero coefficient bracket.
    pub strict_expected: bool,
    /// Smallest `(corr_a − corr_b)/|corr_a|` along the chain; the factors
    /// share base and pole product, so this orders them without the
    /// cancellation in `1 + corr`.
    pub min_relative_margin: f64,
    pub strict_holds: bool,
}

impl OrderingCheck {
    pub fn ok(&self) -> bool {
        self.weak_holds && (!self.strict_expected || self.strict_holds)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub n: usize,
    pub k: f64,
    pub a0: f64,
    pub an: f64,
    pub theorems: Vec<TheoremId>,
    pub rows: Vec<ComparisonRow>,
    pub orderings: Vec<OrderingCheck>,
}

impl ComparisonTable {
    pub fn orderings_hold(&self) -> bool {
        self.orderings.iter().all(OrderingCheck::ok)
    }

    pub fn entry(&self, eta_index: usize, id: TheoremId) -> Option<&FactorEntry> {
        self.rows.get(eta_index)?.entries.iter().find(|e| e.theorem == id)
    }
}

pub fn compare_factors(ids: &[TheoremId], instance: &Instance, eta_sweep: &[f64], k: f64) -> Result<ComparisonTable> {
    if ids.is_empty() {
        return Err(Error::Params("no theorems to compare".into()));
    }
    let n = instance.n;
    let poly = instance.polynomial();
    let (a0, an) = poly.coeff_moduli(Some(n))?;
    let rows = eta_sweep
        .iter()
        .map(|&eta| {
            let params = BoundParams::eta_k(eta, k)?;
            let entries = ids
                .iter()
                .map(|&id| {
                    let b = factor(id, &params, n, Some((a0, an)), &instance.poles)?;
                    Ok(FactorEntry { theorem: id, factor: b.value, correction_term: b.correction_term })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ComparisonRow { eta, entries })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut orderings = Vec::new();
    for chain in CHAINS {
        if !chain.iter().all(|id| ids.contains(id)) {
            continue;
        }
        let k_eff = if chain[0] == TheoremId::T2New { k } else { 1.0 };
        let bracket_nonzero = a0 != an * crate::bounds::ipow(k_eff, n as u32);
        for row in &rows {
            let pick = |id: TheoremId| row.entries.iter().find(|e| e.theorem == id).expect("chain member present");
            let e = chain.map(pick);
            let weak_holds = e[0].factor >= e[1].factor && e[1].factor >= e[2].factor;
            let margin = |a: &FactorEntry, b: &FactorEntry| {
                if a.correction_term == 0.0 {
                    0.0
                } else {
                    (a.correction_term - b.correction_term) / a.correction_term.abs()
                }
            };
            let min_relative_margin = margin(e[0], e[1]).min(margin(e[1], e[2]));
            let strict_expected = row.eta > 0.0 && row.eta < 1.0 && n > 1 && bracket_nonzero;
            orderings.push(OrderingCheck {
                eta: row.eta,
                chain,
                weak_holds,
                strict_expected,
                min_relative_margin,
                strict_holds: min_relative_margin >= STRICT_MARGIN,
            });
        }
    }

    Ok(ComparisonTable { n, k, a0, an, theorems: ids.to_vec(), rows, orderings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_poly::{Complex, Polynomial};
    use crate::rational::{Numerator, PoleSet};

    fn instance(coeffs: &[f64], poles: &[f64]) -> Instance {
        Instance {
            n: poles.len(),
            numerator: Numerator::Coeffs(Polynomial::from_real(coeffs)),
            poles: PoleSet::new(poles.iter().map(|&p| Complex::new(p, 0.0)).collect()),
            k: None,
        }
    }

    const ALL_CHAINS: [TheoremId; 6] = [
        TheoremId::T1New,
        TheoremId::IRather,
        TheoremId::GRather,
        TheoremId::T2New,
        TheoremId::JRather,
        TheoremId::HRather,
    ];

    #[test]
    fn equal_end_coefficients_collapse_the_chain() {
        let inst = instance(&[2.0, 1.0, 2.0], &[3.0, -4.0]);
        let t = compare_factors(&ALL_CHAINS[..3], &inst, &[0.0, 0.3, 0.7], 1.0).unwrap();
        for row in &t.rows {
            let f: Vec<f64> = row.entries.iter().map(|e| e.factor).collect();
            assert!((f[0] - f[1]).abs() < 1e-14 && (f[1] - f[2]).abs() < 1e-14);
        }
        assert!(t.orderings.iter().all(|o| !o.strict_expected && o.ok()));
    }

    #[test]
    fn hand_values_at_eta_zero_and_half() {
        // a0 = 4, an = 1, n = 2, poles [2, 2].
        let inst = instance(&[4.0, 0.0, 1.0], &[2.0, 2.0]);
        let t = compare_factors(&ALL_CHAINS[..3], &inst, &[0.0, 0.5], 1.0).unwrap();
        let t1 = t.entry(0, TheoremId::T1New).unwrap().factor;
        let ti = t.entry(0, TheoremId::IRather).unwrap().factor;
        assert!((t1 - 0.1).abs() < 1e-15);
        assert!((ti - 0.1).abs() < 1e-15);

        let c1 = t.entry(1, TheoremId::T1New).unwrap().correction_term;
        let ci = t.entry(1, TheoremId::IRather).unwrap().correction_term;
        assert!((c1 - 0.6 * 0.5 / 2.25).abs() < 1e-15);
        assert!((ci - 0.6 * (0.5f64 / 1.5).powi(2)).abs() < 1e-15);
        assert!(t.entry(1, TheoremId::T1New).unwrap().factor > t.entry(1, TheoremId::IRather).unwrap().factor);
        assert!(t.orderings_hold());
        assert!(t.orderings[1].strict_expected && t.orderings[1].strict_holds);
    }

    #[test]
    fn k_chain_orders() {
        // Roots at modulus >= 2: (z+2)(z+3) = z² + 5z + 6, a0 = 6 > an·k² = 4.
        let inst = instance(&[6.0, 5.0, 1.0], &[1.5, 2.5]);
        let t = compare_factors(&ALL_CHAINS, &inst, &[0.1, 0.5, 0.9], 2.0).unwrap();
        assert_eq!(t.orderings.len(), 6);
        assert!(t.orderings_hold(), "{:?}", t.orderings);
    }
}
