//! Agreement between the Monte-Carlo engine and the closed forms, with each
//! side of the comparison using a consistent region model.

use corrblock::blocking::{pair_analysis, BlockageField};
use corrblock::geometry::{DeploymentRegion, RegionModel, TransmitterSite};
use corrblock::montecarlo::{
    estimate_pair_blocking, simulate_random_network, simulate_sinr, McControls, Placement,
    SinrScenario,
};
use corrblock::sinr::db_to_linear;

fn circle6_field(count: u32, width: f64) -> BlockageField {
    BlockageField::new(count, width, DeploymentRegion::circle(6.0).unwrap()).unwrap()
}

fn pair_at(theta_deg: f64) -> (TransmitterSite, TransmitterSite) {
    (
        TransmitterSite::new(5.0, 0.0),
        TransmitterSite::new(5.0, theta_deg.to_radians()),
    )
}

#[test]
fn estimator_consistent_with_rectangle_analytics() {
    let field = circle6_field(1, 2.0);
    let (s1, s2) = pair_at(45.0);
    let controls = McControls::new(100_000, 1, 101).unwrap();
    let analysis = pair_analysis(&s1, &s2, &field, RegionModel::Rectangle).unwrap();
    let est =
        estimate_pair_blocking(&s1, &s2, &field, &controls, RegionModel::Rectangle).unwrap();
    assert!((est.p1_hat - analysis.stats.p1).abs() < 3.0 * est.se_p1);
    assert!((est.p2_hat - analysis.stats.p2).abs() < 3.0 * est.se_p2);
    assert!((est.p00_hat - analysis.p00).abs() < 3.0 * est.se_p00);
    let rho = est.rho_hat.unwrap();
    assert!((rho - analysis.stats.rho).abs() < 3.0 * est.se_rho.unwrap());
}

#[test]
fn estimator_consistent_with_exact_analytics() {
    let field = circle6_field(2, 3.0);
    let (s1, s2) = pair_at(30.0);
    let controls = McControls::new(100_000, 1, 103).unwrap();
    let analysis = pair_analysis(&s1, &s2, &field, RegionModel::Exact).unwrap();
    let est = estimate_pair_blocking(&s1, &s2, &field, &controls, RegionModel::Exact).unwrap();
    assert!((est.p1_hat - analysis.stats.p1).abs() < 3.0 * est.se_p1);
    assert!((est.p00_hat - analysis.p00).abs() < 3.0 * est.se_p00);
    let rho = est.rho_hat.unwrap();
    assert!((rho - analysis.stats.rho).abs() < 3.0 * est.se_rho.unwrap());
}

#[test]
fn rectangle_and_exact_marginals_differ_as_their_areas_do() {
    // The exact region is strictly inside the rectangle, so the exact-model
    // blocking probability is strictly smaller; the engine comparison must
    // pick matching sides.
    let field = circle6_field(20, 1.0);
    let (s1, s2) = pair_at(25.0);
    let rect = pair_analysis(&s1, &s2, &field, RegionModel::Rectangle).unwrap();
    let exact = pair_analysis(&s1, &s2, &field, RegionModel::Exact).unwrap();
    assert!(exact.a1 < rect.a1);
    assert!(exact.stats.p1 < rect.stats.p1);
    assert!(rect.stats.p1 - exact.stats.p1 > 0.02);
}

#[test]
fn simulated_sinr_matches_correlated_but_not_independent_analytics() {
    // One cell of the close-pair family: the simulated CDF tracks the
    // correlated curve while the independent curve misses by about rho*p*q.
    let field = circle6_field(5, 3.0);
    let (s1, s2) = pair_at(25.0);
    let scenario =
        SinrScenario::omni(field, [s1, s2], 1.0, db_to_linear(15.0), 2.0).unwrap();
    let controls = McControls::new(200_000, 1, 107).unwrap();
    let empirical = simulate_sinr(&scenario, &controls).unwrap();
    let pair = scenario
        .analytic_pair([0.0, 0.0], RegionModel::Exact)
        .unwrap();
    let ks_corr = empirical.ks_distance(&pair.correlated);
    let ks_ind = empirical.ks_distance(&pair.independent);
    let stats = pair.analysis.unwrap().stats;
    let gap = stats.rho * stats.p1 * stats.q1;
    assert!(ks_corr < 0.01, "correlated KS {ks_corr}");
    assert!(ks_ind > 0.5 * gap, "independent KS {ks_ind} vs gap {gap}");
}

#[test]
fn pooled_random_network_matches_pooled_analytics() {
    // Uniformly placed interferers, omni antennas: the pooled empirical CDF
    // tracks the equal-weight mixture of per-realization analytic curves.
    let field = circle6_field(5, 2.0);
    let scenario = SinrScenario::omni(
        field,
        [
            TransmitterSite::new(5.0, 0.0),
            TransmitterSite::new(5.0, 1.0),
        ],
        1.0,
        db_to_linear(15.0),
        2.0,
    )
    .unwrap();
    let controls = McControls::new(10_000, 1_000, 109).unwrap();
    let run = simulate_random_network(
        &scenario,
        Placement::UniformInRegion,
        &controls,
        RegionModel::Exact,
    )
    .unwrap();
    let ks = run.pooled_empirical.ks_distance(&run.pooled_correlated);
    assert!(ks <= 0.02, "pooled KS {ks}");
    assert_eq!(run.realizations.len(), 1_000);
}
