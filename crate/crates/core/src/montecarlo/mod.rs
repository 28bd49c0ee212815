//! Deterministic Monte-Carlo engine.
//!
//! Trials are independent and indexed; every random draw comes from a
//! counter-based substream keyed on `(master seed, realization, trial,
//! purpose)` and results are reduced in trial order, so a run is
//! bit-identical no matter how many threads execute it. The blocking test
//! inside the SINR engine is always the exact segment predicate; the
//! pair-blocking estimator takes the predicate as a parameter so it can be
//! compared against either region model's analytics.

mod empirical;
mod substream;

pub use empirical::EmpiricalCdf;
pub use substream::{stream_rng, StreamPurpose};

use crate::antenna::{received_power_with, AntennaPattern};
use crate::blocking::{
    joint_pmf, pair_analysis, BlockageField, BlockingError, JointPmf, PairBlockingStats,
};
use crate::geometry::{
    blocks, rectangle_region_contains, BlockageSegment, DeploymentRegion, GeometryError, Point2,
    RegionModel, TransmitterSite,
};
use crate::sinr::{sinr_cdf, ReceivedPowers, SinrCdf, SinrError};
use rand::Rng;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error("{0} must be at least 1")]
    InvalidControls(&'static str),
    #[error("scenario site {0} coincides with the receiver")]
    SiteAtReceiver(usize),
    #[error(transparent)]
    Blocking(#[from] BlockingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Sinr(#[from] SinrError),
}

/// Trial and realization counts plus the master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McControls {
    trials: u64,
    realizations: u64,
    master_seed: u64,
}

impl McControls {
    pub fn new(trials: u64, realizations: u64, master_seed: u64) -> Result<Self, McError> {
        if trials == 0 {
            return Err(McError::InvalidControls("trials"));
        }
        if realizations == 0 {
            return Err(McError::InvalidControls("realizations"));
        }
        Ok(Self {
            trials,
            realizations,
            master_seed,
        })
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn realizations(&self) -> u64 {
        self.realizations
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }
}

/// How trial loops execute. `Parallel` uses the ambient rayon pool; both
/// backends produce bit-identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Backend {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Backend::Parallel
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Backend::Sequential
    }
}

#[cfg(feature = "parallel")]
const PAR_BATCH: u64 = 1024;

/// Map a per-index closure over `0..count`, collecting outputs in index
/// order regardless of scheduling.
fn map_indexed<T, F>(count: u64, backend: Backend, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match backend {
        Backend::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Backend::Parallel => {
            use rayon::prelude::*;
            let batches = count.div_ceil(PAR_BATCH);
            (0..batches)
                .into_par_iter()
                .map(|b| {
                    let lo = b * PAR_BATCH;
                    let hi = (lo + PAR_BATCH).min(count);
                    (lo..hi).map(&f).collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        }
    }
}

/// One point uniform over the region: polar inversion for circles,
/// rejection over the bounding box for polygons.
pub fn sample_point<R: Rng + ?Sized>(region: &DeploymentRegion, rng: &mut R) -> Point2 {
    match region {
        DeploymentRegion::Circle { radius } => {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            Point2::from_polar(radius * u.sqrt(), TAU * v)
        }
        DeploymentRegion::Polygon(poly) => {
            let (min, max) = poly.bounding_box();
            loop {
                let x = min.x + (max.x - min.x) * rng.random::<f64>();
                let y = min.y + (max.y - min.y) * rng.random::<f64>();
                let p = Point2::new(x, y);
                if poly.contains(p) {
                    return p;
                }
            }
        }
    }
}

/// `count` i.i.d. uniform blockage centers.
pub fn sample_blockages<R: Rng + ?Sized>(
    region: &DeploymentRegion,
    count: u32,
    rng: &mut R,
) -> Vec<Point2> {
    (0..count).map(|_| sample_point(region, rng)).collect()
}

fn sample_site<R: Rng + ?Sized>(region: &DeploymentRegion, rng: &mut R) -> TransmitterSite {
    loop {
        let p = sample_point(region, rng);
        if p.r() > 0.0 {
            return TransmitterSite::from_point(p);
        }
    }
}

/// Empirical blocking statistics of a transmitter pair with standard errors.
#[derive(Debug, Clone, Copy)]
pub struct PairBlockingEstimate {
    pub trials: u64,
    pub p1_hat: f64,
    pub p2_hat: f64,
    pub p00_hat: f64,
    /// Sample correlation of the indicators; `None` when a marginal estimate
    /// is degenerate.
    pub rho_hat: Option<f64>,
    pub se_p1: f64,
    pub se_p2: f64,
    pub se_p00: f64,
    pub se_rho: Option<f64>,
}

/// Which per-blockage test the estimator applies: the exact segment
/// predicate or membership in the rectangle region.
fn predicate_blocks(
    model: RegionModel,
    center: Point2,
    width: f64,
    site: &TransmitterSite,
) -> bool {
    match model {
        RegionModel::Exact => blocks(&BlockageSegment { center, width }, site)
            .expect("site validated nonzero"),
        RegionModel::Rectangle => rectangle_region_contains(site, width, center),
    }
}

/// Estimate `(p1, p2, p00, rho)` by dropping `controls.trials` independent
/// blockage fields and testing both sites with the chosen predicate.
pub fn estimate_pair_blocking(
    site1: &TransmitterSite,
    site2: &TransmitterSite,
    field: &BlockageField,
    controls: &McControls,
    predicate: RegionModel,
) -> Result<PairBlockingEstimate, McError> {
    estimate_pair_blocking_with(site1, site2, field, controls, predicate, Backend::default())
}

pub fn estimate_pair_blocking_with(
    site1: &TransmitterSite,
    site2: &TransmitterSite,
    field: &BlockageField,
    controls: &McControls,
    predicate: RegionModel,
    backend: Backend,
) -> Result<PairBlockingEstimate, McError> {
    if site1.r() <= 0.0 {
        return Err(McError::SiteAtReceiver(1));
    }
    if site2.r() <= 0.0 {
        return Err(McError::SiteAtReceiver(2));
    }
    let seed = controls.master_seed();
    let width = field.width();
    let count = field.count();
    let region = field.region();
    let outcomes = map_indexed(controls.trials(), backend, |t| {
        let mut rng = stream_rng(seed, 0, t, StreamPurpose::Blockage);
        let mut b1 = false;
        let mut b2 = false;
        for _ in 0..count {
            let center = sample_point(region, &mut rng);
            b1 |= predicate_blocks(predicate, center, width, site1);
            b2 |= predicate_blocks(predicate, center, width, site2);
        }
        (b1 as u8) | ((b2 as u8) << 1)
    });
    let n = controls.trials();
    let mut n1 = 0u64;
    let mut n2 = 0u64;
    let mut n11 = 0u64;
    let mut n00 = 0u64;
    for o in outcomes {
        let b1 = o & 1 != 0;
        let b2 = o & 2 != 0;
        n1 += b1 as u64;
        n2 += b2 as u64;
        n11 += (b1 && b2) as u64;
        n00 += (!b1 && !b2) as u64;
    }
    let nf = n as f64;
    let p1_hat = n1 as f64 / nf;
    let p2_hat = n2 as f64 / nf;
    let p00_hat = n00 as f64 / nf;
    let p11_hat = n11 as f64 / nf;
    let (rho_hat, se_rho) = sample_correlation(n, n1, n2, n11)
        .map(|rho| (Some(rho), Some(rho_standard_error(p1_hat, p2_hat, p11_hat, rho, nf))))
        .unwrap_or((None, None));
    Ok(PairBlockingEstimate {
        trials: n,
        p1_hat,
        p2_hat,
        p00_hat,
        rho_hat,
        se_p1: (p1_hat * (1.0 - p1_hat) / nf).sqrt(),
        se_p2: (p2_hat * (1.0 - p2_hat) / nf).sqrt(),
        se_p00: (p00_hat * (1.0 - p00_hat) / nf).sqrt(),
        se_rho,
    })
}

/// Sample correlation of two indicator sequences from their counts, in
/// integer arithmetic so identical sequences give exactly 1.
fn sample_correlation(n: u64, n1: u64, n2: u64, n11: u64) -> Option<f64> {
    let (n, n1, n2, n11) = (n as i128, n1 as i128, n2 as i128, n11 as i128);
    let var1 = n1 * (n - n1);
    let var2 = n2 * (n - n2);
    if var1 == 0 || var2 == 0 {
        return None;
    }
    let num = (n * n11 - n1 * n2) as f64;
    let den = if var1 == var2 {
        var1 as f64
    } else {
        ((var1 as f64) * (var2 as f64)).sqrt()
    };
    Some(num / den)
}

/// Delta-method standard error of the sample correlation of two Bernoulli
/// indicators, from the multinomial covariance of `(B1, B2, B1*B2)`.
fn rho_standard_error(p1: f64, p2: f64, p11: f64, rho: f64, n: f64) -> f64 {
    let q1 = 1.0 - p1;
    let q2 = 1.0 - p2;
    let g = ((p1 * q1) * (p2 * q2)).sqrt();
    let du = -p2 / g - rho * (1.0 - 2.0 * p1) / (2.0 * p1 * q1);
    let dv = -p1 / g - rho * (1.0 - 2.0 * p2) / (2.0 * p2 * q2);
    let dw = 1.0 / g;
    let var_u = p1 * q1;
    let var_v = p2 * q2;
    let var_w = p11 * (1.0 - p11);
    let c_uv = p11 - p1 * p2;
    let c_uw = p11 * q1;
    let c_vw = p11 * q2;
    let var = du * du * var_u
        + dv * dv * var_v
        + dw * dw * var_w
        + 2.0 * (du * dv * c_uv + du * dw * c_uw + dv * dw * c_vw);
    (var.max(0.0) / n).sqrt()
}

/// A full fixed-placement experiment: blockage field, two interferers with
/// transmit patterns, receiver pattern, and link budget.
///
/// A `None` boresight on a directional transmitter means the orientation is
/// random: the SINR engine draws it fresh every trial, the random-network
/// engine once per realization.
#[derive(Debug, Clone)]
pub struct SinrScenario {
    pub field: BlockageField,
    pub sites: [TransmitterSite; 2],
    pub tx_patterns: [AntennaPattern; 2],
    pub tx_boresights: [Option<f64>; 2],
    pub rx_pattern: AntennaPattern,
    pub rx_boresight: f64,
    pub omega0: f64,
    pub snr: f64,
    pub alpha: f64,
}

impl SinrScenario {
    /// Omnidirectional scenario with all antenna terms trivial.
    pub fn omni(
        field: BlockageField,
        sites: [TransmitterSite; 2],
        omega0: f64,
        snr: f64,
        alpha: f64,
    ) -> Result<Self, McError> {
        let scenario = Self {
            field,
            sites,
            tx_patterns: [AntennaPattern::Omni, AntennaPattern::Omni],
            tx_boresights: [None, None],
            rx_pattern: AntennaPattern::Omni,
            rx_boresight: 0.0,
            omega0,
            snr,
            alpha,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<(), McError> {
        for (i, site) in self.sites.iter().enumerate() {
            if site.r() <= 0.0 {
                return Err(McError::SiteAtReceiver(i + 1));
            }
        }
        // Surfaces non-positive SNR and negative powers early.
        self.received_powers([0.0, 0.0])?;
        Ok(())
    }

    /// Whether interferer `i` needs an orientation draw.
    fn draws_orientation(&self, i: usize) -> bool {
        self.tx_patterns[i].is_directional() && self.tx_boresights[i].is_none()
    }

    fn interferer_power(&self, i: usize, boresight: f64) -> f64 {
        received_power_with(
            &self.sites[i],
            boresight,
            &self.tx_patterns[i],
            &self.rx_pattern,
            self.rx_boresight,
            self.alpha,
        )
    }

    /// Received powers for concrete orientations.
    pub fn received_powers(&self, boresights: [f64; 2]) -> Result<ReceivedPowers, SinrError> {
        ReceivedPowers::from_powers(
            self.omega0,
            self.snr,
            self.alpha,
            self.interferer_power(0, self.tx_boresights[0].unwrap_or(boresights[0])),
            self.interferer_power(1, self.tx_boresights[1].unwrap_or(boresights[1])),
        )
    }

    /// Analytic correlated and independent SINR CDFs plus the pair analysis,
    /// for fixed orientations. With no blockages both reduce to the
    /// deterministic all-line-of-sight CDF.
    pub fn analytic_pair(
        &self,
        boresights: [f64; 2],
        model: RegionModel,
    ) -> Result<AnalyticPair, McError> {
        let powers = self.received_powers(boresights)?;
        if self.field.count() == 0 {
            let pmf = JointPmf::independent(0.0, 0.0);
            return Ok(AnalyticPair {
                correlated: sinr_cdf(&powers, &pmf),
                independent: sinr_cdf(&powers, &pmf),
                analysis: None,
                powers,
            });
        }
        let analysis = pair_analysis(&self.sites[0], &self.sites[1], &self.field, model)?;
        let pmf_corr = joint_pmf(&analysis.stats)?;
        let pmf_ind = joint_pmf(&analysis.stats.independent())?;
        Ok(AnalyticPair {
            correlated: sinr_cdf(&powers, &pmf_corr),
            independent: sinr_cdf(&powers, &pmf_ind),
            analysis: Some(analysis),
            powers,
        })
    }
}

/// Closed-form curves for one concrete scenario.
#[derive(Debug, Clone)]
pub struct AnalyticPair {
    pub correlated: SinrCdf,
    pub independent: SinrCdf,
    /// `None` when there are no blockages.
    pub analysis: Option<crate::blocking::PairAnalysis>,
    pub powers: ReceivedPowers,
}

/// Simulate the SINR distribution at fixed placements. Blocking always uses
/// the exact segment predicate; orientations are drawn per trial for
/// transmitters with random boresight.
pub fn simulate_sinr(scenario: &SinrScenario, controls: &McControls) -> Result<EmpiricalCdf, McError> {
    simulate_sinr_with(scenario, controls, Backend::default())
}

pub fn simulate_sinr_with(
    scenario: &SinrScenario,
    controls: &McControls,
    backend: Backend,
) -> Result<EmpiricalCdf, McError> {
    scenario.validate()?;
    let samples = sinr_samples(scenario, controls.master_seed(), 0, controls.trials(), backend);
    Ok(EmpiricalCdf::from_samples(samples))
}

/// Raw per-trial SINR samples for one realization index, in trial order.
fn sinr_samples(
    scenario: &SinrScenario,
    seed: u64,
    realization: u64,
    trials: u64,
    backend: Backend,
) -> Vec<f64> {
    let field = &scenario.field;
    let region = field.region();
    let width = field.width();
    let count = field.count();
    let draws = [scenario.draws_orientation(0), scenario.draws_orientation(1)];
    let any_draws = draws[0] || draws[1];
    // Powers that do not depend on a per-trial draw are fixed.
    let fixed: [Option<f64>; 2] = [0, 1].map(|i| {
        if draws[i] {
            None
        } else {
            Some(scenario.interferer_power(i, scenario.tx_boresights[i].unwrap_or(0.0)))
        }
    });
    let c = scenario.omega0 / scenario.snr;
    map_indexed(trials, backend, move |t| {
        let mut rng = stream_rng(seed, realization, t, StreamPurpose::Blockage);
        let mut blocked = [false, false];
        for _ in 0..count {
            let center = sample_point(region, &mut rng);
            let seg = BlockageSegment { center, width };
            blocked[0] |= blocks(&seg, &scenario.sites[0]).expect("validated site");
            blocked[1] |= blocks(&seg, &scenario.sites[1]).expect("validated site");
        }
        let mut orng = if any_draws {
            Some(stream_rng(seed, realization, t, StreamPurpose::Orientation))
        } else {
            None
        };
        let mut interference = 0.0;
        for i in 0..2 {
            let omega = match fixed[i] {
                Some(w) => w,
                None => {
                    let psi = crate::antenna::draw_orientation(orng.as_mut().unwrap());
                    scenario.interferer_power(i, psi)
                }
            };
            if !blocked[i] {
                interference += omega;
            }
        }
        scenario.omega0 / (c + interference)
    })
}

/// Interferer placement policy for the random-network engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Keep the scenario's fixed sites in every realization.
    Scenario,
    /// Draw both sites independently and uniformly over the region.
    UniformInRegion,
}

/// Per-realization record of a random-network run.
#[derive(Debug, Clone)]
pub struct RealizationSummary {
    pub sites: [TransmitterSite; 2],
    pub boresights: [f64; 2],
    /// `None` when the field has no blockages.
    pub stats: Option<PairBlockingStats>,
    pub omegas: [f64; 2],
}

/// Pooled outputs of a random-network run: the empirical SINR CDF over all
/// realizations and trials, and the equal-weight mixtures of the
/// per-realization analytic curves.
#[derive(Debug, Clone)]
pub struct RandomNetworkRun {
    pub pooled_empirical: EmpiricalCdf,
    pub pooled_correlated: SinrCdf,
    pub pooled_independent: SinrCdf,
    pub realizations: Vec<RealizationSummary>,
}

/// Outer loop over network realizations (placements and orientations), inner
/// loop over blockage trials. Each realization also yields its analytic
/// correlated/independent CDF pair for averaging.
pub fn simulate_random_network(
    scenario: &SinrScenario,
    placement: Placement,
    controls: &McControls,
    model: RegionModel,
) -> Result<RandomNetworkRun, McError> {
    scenario.validate()?;
    let seed = controls.master_seed();
    let trials = controls.trials();
    struct RealizationOutput {
        samples: Vec<f64>,
        correlated: SinrCdf,
        independent: SinrCdf,
        summary: RealizationSummary,
    }
    let run_one = |r: u64| -> Result<RealizationOutput, McError> {
        let mut concrete = scenario.clone();
        if placement == Placement::UniformInRegion {
            let mut prng = stream_rng(seed, r, 0, StreamPurpose::Placement);
            concrete.sites = [
                sample_site(scenario.field.region(), &mut prng),
                sample_site(scenario.field.region(), &mut prng),
            ];
        }
        let mut orng = stream_rng(seed, r, 0, StreamPurpose::Orientation);
        let mut boresights = [0.0, 0.0];
        for (i, slot) in boresights.iter_mut().enumerate() {
            *slot = match concrete.tx_boresights[i] {
                Some(b) => b,
                None => {
                    if concrete.tx_patterns[i].is_directional() {
                        crate::antenna::draw_orientation(&mut orng)
                    } else {
                        0.0
                    }
                }
            };
        }
        // Freeze the orientations for this realization, both for the
        // analytic pair and for the trial loop.
        concrete.tx_boresights = [Some(boresights[0]), Some(boresights[1])];
        let pair = concrete.analytic_pair(boresights, model)?;
        let samples = sinr_samples(&concrete, seed, r, trials, Backend::Sequential);
        Ok(RealizationOutput {
            samples,
            summary: RealizationSummary {
                sites: concrete.sites,
                boresights,
                stats: pair.analysis.map(|a| a.stats),
                omegas: [pair.powers.omega1, pair.powers.omega2],
            },
            correlated: pair.correlated,
            independent: pair.independent,
        })
    };
    let outputs: Vec<Result<RealizationOutput, McError>> =
        map_indexed(controls.realizations(), Backend::default(), run_one);
    let mut samples = Vec::with_capacity((controls.realizations() * trials) as usize);
    let mut correlated = Vec::with_capacity(controls.realizations() as usize);
    let mut independent = Vec::with_capacity(controls.realizations() as usize);
    let mut summaries = Vec::with_capacity(controls.realizations() as usize);
    for out in outputs {
        let out = out?;
        samples.extend_from_slice(&out.samples);
        correlated.push(out.correlated);
        independent.push(out.independent);
        summaries.push(out.summary);
    }
    Ok(RandomNetworkRun {
        pooled_empirical: EmpiricalCdf::from_samples(samples),
        pooled_correlated: SinrCdf::mixture(&correlated),
        pooled_independent: SinrCdf::mixture(&independent),
        realizations: summaries,
    })
}
