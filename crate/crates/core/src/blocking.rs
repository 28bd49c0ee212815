//! Marginal and joint blocking statistics of the two interferers.
//!
//! With `K` blockage centers uniform over a region of area `A`, a transmitter
//! whose blocking region has area `a` is blocked with probability
//! `p = 1 - (1 - a/A)^K`. Both transmitters are simultaneously unblocked with
//! probability `p00 = (1 - (a1 + a2 - v)/A)^K`, where `v` is the overlap of
//! the two blocking regions. The Pearson correlation of the two blocking
//! indicators is `rho = (p00 - q1 q2) / h` with `h = sqrt(p1 p2 q1 q2)`, and
//! the joint pmf of the indicator pair follows from `(p1, p2, rho)` alone.

use crate::geometry::{
    overlap_area, region_area, BlockingRegion, DeploymentRegion, GeometryError, RegionModel,
    TransmitterSite,
};
use thiserror::Error;

/// Slack for pmf entries at the feasibility boundary and for quadrature
/// noise in area preconditions.
const FEASIBILITY_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum BlockingError {
    #[error("blocking region exceeds deployment region (a = {a}, A = {area})")]
    RegionExceedsDeployment { a: f64, area: f64 },
    #[error("union of blocking regions exceeds deployment region (union = {union}, A = {area})")]
    UnionExceedsDeployment { union: f64, area: f64 },
    #[error("overlap exceeds a blocking region (v = {v}, min a_i = {min_area})")]
    OverlapExceedsRegion { v: f64, min_area: f64 },
    #[error("degenerate marginal; correlation undefined (p = {0})")]
    DegenerateMarginal(f64),
    #[error("correlation {rho} infeasible: pmf entry {entry} = {value} outside [0, 1]")]
    InfeasibleRho {
        rho: f64,
        entry: &'static str,
        value: f64,
    },
    #[error("blockage width must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("blockage count overflows exponent range")]
    CountTooLarge,
    #[error("area override must be positive, got {0}")]
    NonPositiveArea(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The blockage process: `K` segments of width `W`, centers uniform over a
/// deployment region of area `A`.
#[derive(Debug, Clone)]
pub struct BlockageField {
    count: u32,
    width: f64,
    region: DeploymentRegion,
    area_override: Option<f64>,
}

impl BlockageField {
    pub fn new(count: u32, width: f64, region: DeploymentRegion) -> Result<Self, BlockingError> {
        if width <= 0.0 {
            return Err(BlockingError::NonPositiveWidth(width));
        }
        if count > i32::MAX as u32 {
            return Err(BlockingError::CountTooLarge);
        }
        Ok(Self {
            count,
            width,
            region,
            area_override: None,
        })
    }

    /// Use an explicit area for the analytic formulas instead of the
    /// region's geometric area. Sampling still uses the region shape.
    pub fn with_area(mut self, area: f64) -> Result<Self, BlockingError> {
        if area <= 0.0 {
            return Err(BlockingError::NonPositiveArea(area));
        }
        self.area_override = Some(area);
        Ok(self)
    }

    pub fn count(&self) -> u32 {
        self.count
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn region(&self) -> &DeploymentRegion {
        &self.region
    }

    /// The area `A` entering the blocking formulas.
    pub fn area(&self) -> f64 {
        self.area_override.unwrap_or_else(|| self.region.area())
    }
}

/// Marginal and pairwise blocking statistics of two transmitters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairBlockingStats {
    pub p1: f64,
    pub p2: f64,
    pub q1: f64,
    pub q2: f64,
    pub h: f64,
    pub rho: f64,
}

impl PairBlockingStats {
    /// Build from marginals and a correlation coefficient, enforcing the
    /// feasibility bounds that keep every joint-pmf entry in `[0, 1]`.
    pub fn new(p1: f64, p2: f64, rho: f64) -> Result<Self, BlockingError> {
        for p in [p1, p2] {
            if !(p > 0.0 && p < 1.0) {
                return Err(BlockingError::DegenerateMarginal(p));
            }
        }
        let q1 = 1.0 - p1;
        let q2 = 1.0 - p2;
        let h = ((p1 * q1) * (p2 * q2)).sqrt();
        let stats = Self {
            p1,
            p2,
            q1,
            q2,
            h,
            rho,
        };
        stats.joint_pmf()?;
        Ok(stats)
    }

    /// Feasible correlation interval `[lo, hi]` for these marginals.
    pub fn rho_bounds(&self) -> (f64, f64) {
        let lo = -((self.q1 * self.q2).min(self.p1 * self.p2)) / self.h;
        let hi = ((self.q1 * self.p2).min(self.p1 * self.q2)) / self.h;
        (lo, hi)
    }

    /// Same statistics with the correlation forced to zero (independent
    /// blocking), for comparison curves.
    pub fn independent(&self) -> Self {
        Self { rho: 0.0, ..*self }
    }

    pub fn joint_pmf(&self) -> Result<JointPmf, BlockingError> {
        joint_pmf(self)
    }
}

/// Joint pmf of the blocking indicator pair `(B1, B2)`; `pXY` is the
/// probability of `B1 = X, B2 = Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPmf {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
}

impl JointPmf {
    /// Product pmf for independent indicators; accepts degenerate marginals
    /// (a transmitter that is never or always blocked).
    pub fn independent(p1: f64, p2: f64) -> Self {
        let q1 = 1.0 - p1;
        let q2 = 1.0 - p2;
        Self {
            p00: q1 * q2,
            p01: q1 * p2,
            p10: p1 * q2,
            p11: p1 * p2,
        }
    }

    /// Probability that transmitter 1 is blocked.
    pub fn marginal1(&self) -> f64 {
        self.p10 + self.p11
    }

    /// Probability that transmitter 2 is blocked.
    pub fn marginal2(&self) -> f64 {
        self.p01 + self.p11
    }

    /// `E[B1 B2]`, which for indicator variables is the both-blocked mass.
    pub fn indicator_product_mean(&self) -> f64 {
        self.p11
    }

    /// Recover the correlation coefficient from the pmf entries; `None` for
    /// degenerate marginals.
    pub fn correlation(&self) -> Option<f64> {
        let p1 = self.marginal1();
        let p2 = self.marginal2();
        if !(p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0) {
            return None;
        }
        let h = ((p1 * (1.0 - p1)) * (p2 * (1.0 - p2))).sqrt();
        Some((self.p00 - (1.0 - p1) * (1.0 - p2)) / h)
    }
}

/// Probability that a region of area `a` contains at least one of the `K`
/// uniform blockage centers.
pub fn marginal_block_prob(a: f64, field: &BlockageField) -> Result<f64, BlockingError> {
    let area = field.area();
    if !(0.0..=area).contains(&a) {
        return Err(BlockingError::RegionExceedsDeployment { a, area });
    }
    Ok(1.0 - (1.0 - a / area).powi(field.count() as i32))
}

/// Probability that both transmitters are unblocked, accounting for the
/// overlap `v` of their blocking regions.
pub fn both_los_prob(a1: f64, a2: f64, v: f64, field: &BlockageField) -> Result<f64, BlockingError> {
    let min_area = a1.min(a2);
    // Quadrature can overshoot the smaller area by its relative tolerance;
    // clamp that, reject anything larger.
    if v > min_area + 1e-3 * min_area.max(1e-12) {
        return Err(BlockingError::OverlapExceedsRegion { v, min_area });
    }
    let v = v.min(min_area);
    let union = a1 + a2 - v;
    let area = field.area();
    if union > area {
        return Err(BlockingError::UnionExceedsDeployment { union, area });
    }
    Ok((1.0 - union / area).powi(field.count() as i32))
}

/// Correlation coefficient of the blocking indicators from the both-unblocked
/// probability and the marginals.
pub fn correlation(p00: f64, p1: f64, p2: f64) -> Result<f64, BlockingError> {
    for p in [p1, p2] {
        if !(p > 0.0 && p < 1.0) {
            return Err(BlockingError::DegenerateMarginal(p));
        }
    }
    let q1 = 1.0 - p1;
    let q2 = 1.0 - p2;
    let h = ((p1 * q1) * (p2 * q2)).sqrt();
    Ok((p00 - q1 * q2) / h)
}

/// Joint pmf from `(p1, p2, rho)`. Errors name the first entry pushed
/// outside `[0, 1]` by an infeasible correlation.
pub fn joint_pmf(stats: &PairBlockingStats) -> Result<JointPmf, BlockingError> {
    let shift = stats.rho * stats.h;
    let entries = [
        ("p00", stats.q1 * stats.q2 + shift),
        ("p01", stats.q1 * stats.p2 - shift),
        ("p10", stats.p1 * stats.q2 - shift),
        ("p11", stats.p1 * stats.p2 + shift),
    ];
    let mut clamped = [0.0; 4];
    for (i, (name, value)) in entries.iter().enumerate() {
        if !(-FEASIBILITY_EPS..=1.0 + FEASIBILITY_EPS).contains(value) {
            return Err(BlockingError::InfeasibleRho {
                rho: stats.rho,
                entry: name,
                value: *value,
            });
        }
        clamped[i] = value.clamp(0.0, 1.0);
    }
    Ok(JointPmf {
        p00: clamped[0],
        p01: clamped[1],
        p10: clamped[2],
        p11: clamped[3],
    })
}

/// Full analytic description of a transmitter pair under a blockage field:
/// region areas, overlap, and the derived statistics.
#[derive(Debug, Clone, Copy)]
pub struct PairAnalysis {
    pub a1: f64,
    pub a2: f64,
    pub v: f64,
    pub p00: f64,
    pub stats: PairBlockingStats,
}

/// Compute areas, overlap and blocking statistics for two sites.
pub fn pair_analysis(
    site1: &TransmitterSite,
    site2: &TransmitterSite,
    field: &BlockageField,
    model: RegionModel,
) -> Result<PairAnalysis, BlockingError> {
    let r1 = BlockingRegion::new(*site1, field.width(), model)?;
    let r2 = BlockingRegion::new(*site2, field.width(), model)?;
    let a1 = region_area(&r1);
    let a2 = region_area(&r2);
    let area = field.area();
    for a in [a1, a2] {
        if a > area {
            return Err(BlockingError::RegionExceedsDeployment { a, area });
        }
    }
    let v = overlap_area(&r1, &r2)?;
    let p1 = marginal_block_prob(a1, field)?;
    let p2 = marginal_block_prob(a2, field)?;
    let p00 = both_los_prob(a1, a2, v, field)?;
    for p in [p1, p2] {
        if !(p > 0.0 && p < 1.0) {
            return Err(BlockingError::DegenerateMarginal(p));
        }
    }
    // Coincident sites have identical blocking regions, so the indicators
    // are equal and the correlation is exactly 1.
    let rho = if site1 == site2 {
        1.0
    } else {
        correlation(p00, p1, p2)?
    };
    let q1 = 1.0 - p1;
    let q2 = 1.0 - p2;
    let h = ((p1 * q1) * (p2 * q2)).sqrt();
    let stats = PairBlockingStats {
        p1,
        p2,
        q1,
        q2,
        h,
        rho,
    };
    Ok(PairAnalysis {
        a1,
        a2,
        v,
        p00,
        stats,
    })
}

/// Blocking statistics for two sites; see [`pair_analysis`] for the areas.
pub fn pair_stats(
    site1: &TransmitterSite,
    site2: &TransmitterSite,
    field: &BlockageField,
    model: RegionModel,
) -> Result<PairBlockingStats, BlockingError> {
    Ok(pair_analysis(site1, site2, field, model)?.stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn circle6_field(count: u32, width: f64) -> BlockageField {
        BlockageField::new(count, width, DeploymentRegion::circle(6.0).unwrap()).unwrap()
    }

    #[test]
    fn marginal_matches_direct_evaluation() {
        // W = 1, R = 5 over a circle of radius 6 with K = 20.
        let field = circle6_field(20, 1.0);
        let p = marginal_block_prob(5.0, &field).unwrap();
        assert_relative_eq!(p, 0.5952, epsilon = 1e-4);
        assert_relative_eq!(
            p,
            1.0 - (1.0 - 5.0 / (36.0 * std::f64::consts::PI)).powi(20),
            epsilon = 1e-15
        );
    }

    #[test]
    fn marginal_boundary_cases() {
        let field = circle6_field(0, 1.0);
        assert_eq!(marginal_block_prob(5.0, &field).unwrap(), 0.0);
        let field = circle6_field(3, 1.0);
        assert_eq!(marginal_block_prob(0.0, &field).unwrap(), 0.0);
        let area = field.area();
        assert_eq!(marginal_block_prob(area, &field).unwrap(), 1.0);
        assert!(matches!(
            marginal_block_prob(area * 1.01, &field),
            Err(BlockingError::RegionExceedsDeployment { .. })
        ));
    }

    #[test]
    fn marginal_monotone_in_count_and_area() {
        let mut last = 0.0;
        for k in [0u32, 1, 2, 5, 10, 20, 50] {
            let p = marginal_block_prob(5.0, &circle6_field(k, 1.0)).unwrap();
            assert!(p >= last);
            last = p;
        }
        let field = circle6_field(7, 1.0);
        let mut last = 0.0;
        for a in [0.0, 1.0, 5.0, 20.0, 80.0] {
            let p = marginal_block_prob(a, &field).unwrap();
            assert!(p >= last);
            last = p;
        }
    }

    #[test]
    fn both_los_examples() {
        let field = circle6_field(1, 1.0);
        // Disjoint regions, K = 1: p00 = 1 - 10/(36 pi).
        let p00 = both_los_prob(5.0, 5.0, 0.0, &field).unwrap();
        assert_relative_eq!(p00, 0.91158, epsilon = 1e-5);
        // Coincident regions collapse to a single region.
        let field = circle6_field(4, 1.0);
        let q = 1.0 - marginal_block_prob(5.0, &field).unwrap();
        assert_relative_eq!(
            both_los_prob(5.0, 5.0, 5.0, &field).unwrap(),
            q,
            epsilon = 1e-15
        );
        // No blockages: always line of sight.
        let field = circle6_field(0, 1.0);
        assert_eq!(both_los_prob(5.0, 5.0, 2.0, &field).unwrap(), 1.0);
        assert!(matches!(
            both_los_prob(5.0, 5.0, 5.5, &field),
            Err(BlockingError::OverlapExceedsRegion { .. })
        ));
    }

    #[test]
    fn correlation_identical_independent_and_disjoint() {
        // Identical regions with friendly p = q = 1/2: exact 1.
        assert_eq!(correlation(0.5, 0.5, 0.5).unwrap(), 1.0);
        // Independence: p00 = q1 q2.
        assert_relative_eq!(
            correlation(0.7 * 0.6, 0.3, 0.4).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        // K = 1, disjoint equal regions: rho = -p/q.
        let p = 5.0 / (36.0 * std::f64::consts::PI);
        let q = 1.0 - p;
        let p00 = 1.0 - 2.0 * p;
        let rho = correlation(p00, p, p).unwrap();
        assert_relative_eq!(rho, -p / q, epsilon = 1e-12);
        assert_relative_eq!(rho, -0.04626, epsilon = 1e-5);
        assert!(correlation(0.5, 0.0, 0.5).is_err());
        assert!(correlation(0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn joint_pmf_independence_and_perfect_correlation() {
        let stats = PairBlockingStats::new(0.3, 0.7, 0.0).unwrap();
        let pmf = stats.joint_pmf().unwrap();
        assert_relative_eq!(pmf.p00, 0.7 * 0.3, epsilon = 1e-15);
        assert_relative_eq!(pmf.p01, 0.7 * 0.7, epsilon = 1e-15);
        assert_relative_eq!(pmf.p10, 0.3 * 0.3, epsilon = 1e-15);
        assert_relative_eq!(pmf.p11, 0.3 * 0.7, epsilon = 1e-15);

        let stats = PairBlockingStats::new(0.25, 0.25, 1.0).unwrap();
        let pmf = stats.joint_pmf().unwrap();
        assert_relative_eq!(pmf.p01, 0.0, epsilon = 1e-15);
        assert_relative_eq!(pmf.p10, 0.0, epsilon = 1e-15);
        assert_relative_eq!(pmf.p11, 0.25, epsilon = 1e-15);
        assert_relative_eq!(pmf.p00, 0.75, epsilon = 1e-15);
    }

    #[test]
    fn joint_pmf_matches_hand_evaluated_entries() {
        // p1 = p2 = 0.595, rho = -0.1:
        //   h = 0.595 * 0.405 = 0.240975, rho*h = -0.0240975
        //   p00 = 0.405^2 - 0.0240975 = 0.1399275
        //   p01 = p10 = 0.240975 + 0.0240975 = 0.2650725
        //   p11 = 0.595^2 - 0.0240975 = 0.3299275
        let stats = PairBlockingStats::new(0.595, 0.595, -0.1).unwrap();
        let pmf = stats.joint_pmf().unwrap();
        assert_relative_eq!(pmf.p00, 0.1399275, epsilon = 1e-12);
        assert_relative_eq!(pmf.p01, 0.2650725, epsilon = 1e-12);
        assert_relative_eq!(pmf.p10, 0.2650725, epsilon = 1e-12);
        assert_relative_eq!(pmf.p11, 0.3299275, epsilon = 1e-12);
        let sum = pmf.p00 + pmf.p01 + pmf.p10 + pmf.p11;
        assert_relative_eq!(sum, 1.0, epsilon = 1e-12);
        assert_relative_eq!(
            pmf.indicator_product_mean(),
            stats.p1 * stats.p2 + stats.rho * stats.h,
            epsilon = 1e-12
        );
    }

    #[test]
    fn joint_pmf_rejects_infeasible_rho() {
        let err = PairBlockingStats::new(0.1, 0.9, 0.9).unwrap_err();
        assert!(matches!(err, BlockingError::InfeasibleRho { .. }));
        // Boundary values are accepted.
        let stats = PairBlockingStats::new(0.3, 0.3, 0.0).unwrap();
        let (lo, hi) = stats.rho_bounds();
        assert!(PairBlockingStats::new(0.3, 0.3, lo).is_ok());
        assert!(PairBlockingStats::new(0.3, 0.3, hi).is_ok());
        assert!(PairBlockingStats::new(0.3, 0.3, hi + 1e-6).is_err());
    }

    #[test]
    fn pair_stats_coincident_sites_give_exact_unit_rho() {
        let site = TransmitterSite::new(5.0, 0.4);
        for model in [RegionModel::Rectangle, RegionModel::Exact] {
            for k in [1u32, 7, 20] {
                let field = circle6_field(k, 2.0);
                let stats = pair_stats(&site, &site, &field, model).unwrap();
                assert_eq!(stats.rho, 1.0);
            }
        }
    }

    #[test]
    fn pair_stats_opposite_sites_single_blockage() {
        let field = circle6_field(1, 1.0);
        let s1 = TransmitterSite::new(5.0, 0.0);
        let s2 = TransmitterSite::new(5.0, std::f64::consts::PI);
        let stats = pair_stats(&s1, &s2, &field, RegionModel::Rectangle).unwrap();
        let p = 5.0 / field.area();
        assert_relative_eq!(stats.rho, -p / (1.0 - p), epsilon = 1e-9);
    }

    #[test]
    fn pair_stats_rho_positive_and_decreasing_in_count_at_close_angle() {
        let s1 = TransmitterSite::new(5.0, 0.0);
        let s2 = TransmitterSite::new(5.0, 25f64.to_radians());
        let mut last = f64::INFINITY;
        for k in [1u32, 2, 5, 10] {
            let field = circle6_field(k, 3.0);
            let stats = pair_stats(&s1, &s2, &field, RegionModel::Rectangle).unwrap();
            assert!(stats.rho > 0.0);
            assert!(stats.rho < last);
            last = stats.rho;
        }
    }

    #[test]
    fn area_override_changes_analytics_only() {
        let region = DeploymentRegion::circle(6.0).unwrap();
        let field = BlockageField::new(20, 1.0, region)
            .unwrap()
            .with_area(2.0 * std::f64::consts::PI * 36.0)
            .unwrap();
        let p = marginal_block_prob(5.0, &field).unwrap();
        assert_relative_eq!(
            p,
            1.0 - (1.0 - 5.0 / (72.0 * std::f64::consts::PI)).powi(20),
            epsilon = 1e-15
        );
    }
}
