use std::f64::consts::TAU;

use proptest::prelude::*;

use ratgrow::bounds::{factor, lemma1_rhs, lemma2_rhs, product_lhs, BoundParams, TheoremId};
use ratgrow::complex_poly::{poly_eval, poly_from_roots, Complex, Polynomial};
use ratgrow::rational::{blaschke_eval, rat_eval, w_eval, PoleSet, RationalFunction};
use ratgrow::verify::grid::{min_ratio_search, pointwise_check, CircleGrid};
use ratgrow::verify::steps::check_pole_ratio_step;
use ratgrow::verify::theorem::{verify_theorem, Status, VerifyPolicy};
use ratgrow::Instance;

fn polar(m: f64, t: f64) -> Complex {
    Complex::from_polar(m, t)
}

fn roots(lo: f64, hi: f64, max_len: usize) -> impl Strategy<Value = Vec<Complex>> {
    prop::collection::vec((lo..hi, 0.0..TAU).prop_map(|(m, t)| polar(m, t)), 1..=max_len)
}

fn poles(max_len: usize) -> impl Strategy<Value = Vec<Complex>> {
    roots(1.05, 10.0, max_len)
}

/// Oracle: the rational lower bounds written out with `powf` and a plain
/// product, independent of the library's shared factor code.
fn oracle_factor(id: TheoremId, eta: f64, k: f64, n: usize, a0: f64, an: f64, pole_moduli: &[f64]) -> f64 {
    let nf = n as f64;
    let pp: f64 = pole_moduli.iter().map(|m| (m - 1.0) / (m + eta)).product();
    let c = |kk: f64| (a0 - an * kk.powf(nf)) / (a0 + an);
    let base1 = ((1.0 + eta) / 2.0).powf(nf);
    let basek = ((k + eta) / (k + 1.0)).powf(nf);
    match id {
        TheoremId::GRather => base1 * pp,
        TheoremId::HRather => basek * pp,
        TheoremId::IRather => base1 * (1.0 + c(1.0) * ((1.0 - eta) / (1.0 + eta)).powf(nf)) * pp,
        TheoremId::JRather => basek * (1.0 + c(k) * ((1.0 - eta) / (k + eta)).powf(nf) / k.powf(nf - 1.0)) * pp,
        TheoremId::T1New => base1 * (1.0 + c(1.0) * (1.0 - eta) / (1.0 + eta).powf(nf)) * pp,
        TheoremId::T2New => basek * (1.0 + c(k) * (1.0 - eta) / ((k + eta).powf(nf) * k.powf(nf - 1.0))) * pp,
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn expansion_vanishes_at_roots(zs in roots(0.5, 2.0, 10), lead in (0.5f64..2.0, 0.0..TAU)) {
        let p = poly_from_roots(polar(lead.0, lead.1), &zs);
        let scale = 1.0 + p.max_coeff_modulus();
        for &z in &zs {
            prop_assert!(poly_eval(&p, z).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn constant_coefficient_is_scaled_root_product(zs in roots(0.5, 2.0, 10), lead in (0.5f64..2.0, 0.0..TAU)) {
        let p = poly_from_roots(polar(lead.0, lead.1), &zs);
        let expected = lead.0 * zs.iter().map(|z| z.norm()).product::<f64>();
        prop_assert!((p.coeffs()[0].norm() - expected).abs() <= 1e-9 * expected);
    }

    #[test]
    fn expansion_matches_direct_product(zs in roots(0.5, 3.0, 8), t in 0.0..TAU, r in 0.0f64..2.0) {
        let p = poly_from_roots(Complex::new(1.0, 0.0), &zs);
        let z = polar(r, t);
        let direct: Complex = zs.iter().map(|&w| z - w).product();
        prop_assert!((poly_eval(&p, z) - direct).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    #[test]
    fn evaluation_is_linear(
        a in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..8),
        b in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..8),
        t in 0.0..TAU, r in 0.0f64..2.0,
    ) {
        let p = Polynomial::new(a.iter().map(|&(x, y)| Complex::new(x, y)).collect());
        let q = Polynomial::new(b.iter().map(|&(x, y)| Complex::new(x, y)).collect());
        let z = polar(r, t);
        let sum = poly_eval(&(&p + &q), z);
        let sep = poly_eval(&p, z) + poly_eval(&q, z);
        let scale = poly_eval(&p, z).norm() + poly_eval(&q, z).norm() + 1.0;
        prop_assert!((sum - sep).norm() <= 1e-12 * scale);
    }

    #[test]
    fn blaschke_is_unimodular_on_circle(bs in poles(8), t in 0.0..TAU) {
        let b = blaschke_eval(&PoleSet::new(bs), polar(1.0, t)).unwrap();
        prop_assert!((b.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn rational_evaluation_is_quotient(zs in roots(1.0, 5.0, 6), bs in poles(6), t in 0.0..TAU, r in 0.0f64..1.0) {
        prop_assume!(zs.len() <= bs.len());
        let p = poly_from_roots(Complex::new(1.0, 0.0), &zs);
        let set = PoleSet::new(bs);
        let z = polar(r, t);
        let f = RationalFunction::new(p.clone(), set.clone()).unwrap();
        prop_assert_eq!(rat_eval(&f, z).unwrap(), poly_eval(&p, z) / w_eval(&set, z));
    }

    #[test]
    fn pole_ratio_step_holds(m in 1.0f64 + 1e-6..10.0, phase in 0.0..TAU, eta in 0.0f64..=1.0, t in 0.0..TAU) {
        let beta = polar(m, phase);
        let s = check_pole_ratio_step(eta, beta, t).unwrap();
        prop_assert!(s.holds);
        let z = polar(1.0, t);
        let direct = (z - beta).norm() / (z * eta - beta).norm();
        prop_assert!(direct >= (m - 1.0) / (m + eta) - 1e-12);
    }

    #[test]
    fn first_product_lemma(eta in 0.0f64..=1.0, ms in prop::collection::vec(1.0f64..10.0, 1..=8)) {
        let lhs = product_lhs(eta, &ms);
        prop_assert!(lhs >= lemma1_rhs(eta, &ms).unwrap() - 1e-12);
        let direct: f64 = ms.iter().map(|m| (m + eta) / (m + 1.0)).product();
        prop_assert!((lhs - direct).abs() <= 1e-15);
    }

    #[test]
    fn second_product_lemma(eta in 0.0f64..=1.0, k in 1.0f64..3.0, u in prop::collection::vec(0.0f64..1.0, 1..=8)) {
        let ms: Vec<f64> = u.iter().map(|x| k + (10.0 - k) * x).collect();
        prop_assert!(product_lhs(eta, &ms) >= lemma2_rhs(eta, k, &ms).unwrap() - 1e-12);
    }

    #[test]
    fn single_factor_lemmas_are_equalities(eta in 0.0f64..=1.0, k in 1.0f64..3.0, u in 0.0f64..1.0) {
        let m = k + (10.0 - k) * u;
        prop_assert!((product_lhs(eta, &[m]) - lemma1_rhs(eta, &[m]).unwrap()).abs() <= 1e-12);
        prop_assert!((product_lhs(eta, &[m]) - lemma2_rhs(eta, k, &[m]).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn rational_factors_match_oracle(
        eta in 0.0f64..=1.0, k in 1.0f64..3.0, bs in poles(8), ratio in 1.0f64..50.0, an in 0.1f64..5.0,
    ) {
        let n = bs.len();
        let moduli: Vec<f64> = bs.iter().map(|b| b.norm()).collect();
        let set = PoleSet::new(bs);
        let a0 = an * k.powi(n as i32) * ratio;
        let params = BoundParams::eta_k(eta, k).unwrap();
        for id in [TheoremId::GRather, TheoremId::HRather, TheoremId::IRather, TheoremId::JRather, TheoremId::T1New, TheoremId::T2New] {
            let got = factor(id, &params, n, Some((a0, an)), &set).unwrap();
            let want = oracle_factor(id, eta, k, n, a0, an, &moduli);
            prop_assert!((got.value - want).abs() <= 1e-12 * want.max(1e-300), "{id}: {} vs {want}", got.value);
            prop_assert!(got.warning.is_none());
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&got.value), "{id} factor {}", got.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn global_minimum_sits_above_passing_factor(zs in roots(1.0, 5.0, 5), bs in poles(5), eta in 0.0f64..=1.0) {
        prop_assume!(zs.len() <= bs.len());
        let n = bs.len();
        let inst = Instance::from_roots(ratgrow::RootForm::new(Complex::new(1.0, 0.0), zs), PoleSet::new(bs), None);
        let params = BoundParams::eta(eta).unwrap();
        let rep = verify_theorem(TheoremId::GRather, &inst, &params, CircleGrid::default(), &VerifyPolicy::default()).unwrap();
        prop_assert_eq!(rep.status, Status::Pass);
        let f = inst.rational().unwrap();
        let factor_value = rep.factor.unwrap();
        let pw = pointwise_check(&f, eta, factor_value, CircleGrid::default()).unwrap();
        prop_assert!(pw.pass);
        let m = min_ratio_search(&f, eta, CircleGrid::default()).unwrap();
        prop_assert!(m.min >= factor_value - 1e-9, "n = {n}");
    }

    #[test]
    fn doubling_grid_is_stable(zs in roots(1.0, 5.0, 6), bs in poles(6), eta in 0.0f64..=1.0) {
        prop_assume!(zs.len() <= bs.len());
        let f = RationalFunction::new(poly_from_roots(Complex::new(1.0, 0.0), &zs), PoleSet::new(bs)).unwrap();
        let coarse = min_ratio_search(&f, eta, CircleGrid::new(4096, 60).unwrap()).unwrap();
        let fine = min_ratio_search(&f, eta, CircleGrid::new(8192, 60).unwrap()).unwrap();
        prop_assert!((coarse.min - fine.min).abs() <= 1e-8, "{} vs {}", coarse.min, fine.min);
    }
}
