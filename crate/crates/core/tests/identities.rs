//! Algebraic identities of the joint pmf and the SINR CDF chain, checked on
//! randomized inputs at machine-level tolerance.

use corrblock::blocking::{JointPmf, PairBlockingStats};
use corrblock::sinr::{db_to_linear, sinr_cdf, z_cdf, z_distribution, ReceivedPowers};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn feasible_stats(p1: f64, p2: f64, u: f64) -> PairBlockingStats {
    let probe = PairBlockingStats::new(p1, p2, 0.0).unwrap();
    let (lo, hi) = probe.rho_bounds();
    let rho = lo + u * (hi - lo);
    PairBlockingStats::new(p1, p2, rho).unwrap()
}

fn pmf_identities(stats: &PairBlockingStats, pmf: &JointPmf) {
    let sum = pmf.p00 + pmf.p01 + pmf.p10 + pmf.p11;
    assert!((sum - 1.0).abs() < TOL, "sum {sum}");
    assert!((pmf.marginal1() - stats.p1).abs() < TOL);
    assert!((pmf.marginal2() - stats.p2).abs() < TOL);
    let product_mean = stats.p1 * stats.p2 + stats.rho * stats.h;
    assert!((pmf.indicator_product_mean() - product_mean).abs() < TOL);
    let rho_back = pmf.correlation().unwrap();
    assert!((rho_back - stats.rho).abs() < TOL, "rho {rho_back}");
}

proptest! {
    #[test]
    fn joint_pmf_satisfies_moment_identities(
        p1 in 0.02..0.98f64,
        p2 in 0.02..0.98f64,
        u in 0.001..0.999f64,
    ) {
        let stats = feasible_stats(p1, p2, u);
        let pmf = stats.joint_pmf().unwrap();
        pmf_identities(&stats, &pmf);
    }

    #[test]
    fn sinr_cdf_matches_z_cdf_chain(
        p1 in 0.05..0.95f64,
        p2 in 0.05..0.95f64,
        u in 0.01..0.99f64,
        r1 in 1.0..6.0f64,
        r_gap in 0.0..3.0f64,
        snr_db in 5.0..25.0f64,
        alpha in 1.5..4.0f64,
        beta_db in -5.0..30.0f64,
    ) {
        let stats = feasible_stats(p1, p2, u);
        let pmf = stats.joint_pmf().unwrap();
        let powers = ReceivedPowers::from_distances(
            1.0,
            db_to_linear(snr_db),
            alpha,
            r1,
            (r1 + r_gap).min(6.0),
        )
        .unwrap();
        let cdf = sinr_cdf(&powers, &pmf);
        let dist = z_distribution(&powers, &pmf);
        let beta = db_to_linear(beta_db);
        let via_z = 1.0 - z_cdf(&dist, powers.omega0 / beta - powers.c);
        prop_assert!((cdf.value_at(beta) - via_z).abs() < TOL);
        // Larger unblocked interference maps to a lower SINR breakpoint.
        let bp: Vec<f64> = cdf.breakpoints().collect();
        prop_assert!(bp.windows(2).all(|w| w[0] < w[1]));
        // Limits: zero below the first breakpoint, one just above the SNR
        // (the last breakpoint is the SNR up to division rounding).
        prop_assert_eq!(cdf.value_at(bp[0] * 0.5), 0.0);
        prop_assert!((cdf.value_at(powers.snr * (1.0 + 1e-9)) - 1.0).abs() < TOL);
        prop_assert!(*bp.last().unwrap() <= powers.snr * (1.0 + 1e-9));
    }

    #[test]
    fn symmetric_gap_is_rho_pq_on_both_plateaus(
        p in 0.05..0.95f64,
        u in 0.01..0.99f64,
        r in 1.0..6.0f64,
        snr_db in 5.0..25.0f64,
    ) {
        let stats = feasible_stats(p, p, u);
        let rho = stats.rho;
        let q = 1.0 - p;
        let powers =
            ReceivedPowers::from_distances(1.0, db_to_linear(snr_db), 2.0, r, r).unwrap();
        let correlated = sinr_cdf(&powers, &stats.joint_pmf().unwrap());
        let independent = sinr_cdf(&powers, &stats.independent().joint_pmf().unwrap());
        let bp: Vec<f64> = correlated.breakpoints().collect();
        prop_assert_eq!(bp.len(), 3);
        let first = 0.5 * (bp[0] + bp[1]);
        let second = 0.5 * (bp[1] + bp[2]);
        prop_assert!(
            ((correlated.value_at(first) - independent.value_at(first)) - rho * p * q).abs() < TOL
        );
        prop_assert!(
            ((correlated.value_at(second) - independent.value_at(second)) + rho * p * q).abs()
                < TOL
        );
        prop_assert!((correlated.sup_gap(&independent) - (rho * p * q).abs()) < TOL);
    }

    #[test]
    fn z_distribution_is_a_probability_distribution(
        p1 in 0.02..0.98f64,
        p2 in 0.02..0.98f64,
        u in 0.001..0.999f64,
        r1 in 1.0..6.0f64,
        r2 in 1.0..6.0f64,
    ) {
        let stats = feasible_stats(p1, p2, u);
        let pmf = stats.joint_pmf().unwrap();
        let powers =
            ReceivedPowers::from_distances(1.0, db_to_linear(15.0), 2.0, r1, r2).unwrap();
        let dist = z_distribution(&powers, &pmf);
        let total: f64 = dist.atoms().iter().map(|(_, p)| p).sum();
        prop_assert!((total - 1.0).abs() < TOL);
        prop_assert!(dist.atoms().windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(dist.atoms().iter().all(|(_, p)| *p >= 0.0));
    }
}
