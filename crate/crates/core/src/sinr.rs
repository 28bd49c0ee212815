//! Closed-form SINR distribution.
//!
//! The unblocked interference `Z` takes one of four values — `0`, `Omega_2`,
//! `Omega_1`, `Omega_1 + Omega_2` — with probabilities given by the joint
//! blocking pmf. The SINR `Omega_0 / (c + Z)` therefore has a
//! piecewise-constant CDF with a breakpoint per atom of `Z`; the CDF at
//! threshold `beta` is the probability that `Z >= Omega_0/beta - c`.

use crate::blocking::JointPmf;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SinrError {
    #[error("SNR must be positive, got {0}")]
    NonPositiveSnr(f64),
    #[error("power must be nonnegative, got {0}")]
    NegativePower(f64),
    #[error("transmitter distance must be positive, got {0}")]
    NonPositiveDistance(f64),
}

/// Convert decibels to a linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Convert a linear ratio to decibels.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Received powers of the source and the two interferers, plus the noise
/// constant `c = Omega_0 / SNR`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceivedPowers {
    pub omega0: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub c: f64,
    pub alpha: f64,
    pub snr: f64,
}

impl ReceivedPowers {
    /// Omnidirectional case: interferer powers follow `R^-alpha`.
    pub fn from_distances(
        omega0: f64,
        snr: f64,
        alpha: f64,
        r1: f64,
        r2: f64,
    ) -> Result<Self, SinrError> {
        if r1 <= 0.0 {
            return Err(SinrError::NonPositiveDistance(r1));
        }
        if r2 <= 0.0 {
            return Err(SinrError::NonPositiveDistance(r2));
        }
        Self::from_powers(omega0, snr, alpha, r1.powf(-alpha), r2.powf(-alpha))
    }

    /// Directional case: interferer powers already include antenna gains.
    pub fn from_powers(
        omega0: f64,
        snr: f64,
        alpha: f64,
        omega1: f64,
        omega2: f64,
    ) -> Result<Self, SinrError> {
        if snr <= 0.0 {
            return Err(SinrError::NonPositiveSnr(snr));
        }
        for w in [omega0, omega1, omega2] {
            if w < 0.0 {
                return Err(SinrError::NegativePower(w));
            }
        }
        Ok(Self {
            omega0,
            omega1,
            omega2,
            c: omega0 / snr,
            alpha,
            snr,
        })
    }

    /// SINR value for a given blocking outcome.
    pub fn sinr(&self, blocked1: bool, blocked2: bool) -> f64 {
        let mut interference = 0.0;
        if !blocked1 {
            interference += self.omega1;
        }
        if !blocked2 {
            interference += self.omega2;
        }
        self.omega0 / (self.c + interference)
    }
}

/// Discrete distribution of the unblocked interference.
#[derive(Debug, Clone, PartialEq)]
pub struct ZDistribution {
    /// `(z, probability)` sorted ascending in `z`; coincident values merged,
    /// zero-probability atoms dropped.
    atoms: Vec<(f64, f64)>,
}

impl ZDistribution {
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Right-continuous CDF of `Z`.
    pub fn cdf(&self, z: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|(zk, _)| *zk <= z)
            .map(|(_, p)| p)
            .sum()
    }
}

/// Atoms of `Z` from the interferer powers and the joint blocking pmf:
/// both blocked gives 0, a single line-of-sight interferer contributes its
/// own power, both line-of-sight add.
pub fn z_distribution(powers: &ReceivedPowers, pmf: &JointPmf) -> ZDistribution {
    let mut raw = [
        (0.0, pmf.p11),
        (powers.omega2, pmf.p10),
        (powers.omega1, pmf.p01),
        (powers.omega1 + powers.omega2, pmf.p00),
    ];
    raw.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(4);
    for (z, p) in raw {
        if p == 0.0 {
            continue;
        }
        match atoms.last_mut() {
            Some((zk, pk)) if *zk == z => *pk += p,
            _ => atoms.push((z, p)),
        }
    }
    ZDistribution { atoms }
}

/// Right-continuous CDF of `Z` evaluated at `z`.
pub fn z_cdf(dist: &ZDistribution, z: f64) -> f64 {
    dist.cdf(z)
}

/// Piecewise-constant, right-continuous CDF over SINR thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrCdf {
    /// `(beta, value)` with strictly increasing `beta` and nondecreasing
    /// `value`; the CDF is `value` at and to the right of each breakpoint
    /// and 0 below the first.
    steps: Vec<(f64, f64)>,
}

impl SinrCdf {
    pub fn steps(&self) -> &[(f64, f64)] {
        &self.steps
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|(b, _)| *b)
    }

    /// CDF value at threshold `beta`.
    pub fn value_at(&self, beta: f64) -> f64 {
        match self
            .steps
            .partition_point(|(b, _)| *b <= beta)
            .checked_sub(1)
        {
            Some(i) => self.steps[i].1,
            None => 0.0,
        }
    }

    /// Equal-weight mixture of several step CDFs, still an exact step CDF.
    pub fn mixture(cdfs: &[SinrCdf]) -> SinrCdf {
        let weight = 1.0 / cdfs.len() as f64;
        let mut jumps: Vec<(f64, f64)> = Vec::new();
        for cdf in cdfs {
            let mut prev = 0.0;
            for (b, v) in &cdf.steps {
                jumps.push((*b, (v - prev) * weight));
                prev = *v;
            }
        }
        jumps.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut steps: Vec<(f64, f64)> = Vec::with_capacity(jumps.len());
        let mut cum = 0.0;
        for (b, j) in jumps {
            cum += j;
            match steps.last_mut() {
                Some((bk, vk)) if *bk == b => *vk = cum,
                _ => steps.push((b, cum)),
            }
        }
        SinrCdf { steps }
    }

    /// Supremum of `|F - G|` over all thresholds; exact for step CDFs since
    /// the supremum is attained on a plateau.
    pub fn sup_gap(&self, other: &SinrCdf) -> f64 {
        let mut gap: f64 = 0.0;
        for b in self.breakpoints().chain(other.breakpoints()) {
            gap = gap.max((self.value_at(b) - other.value_at(b)).abs());
        }
        gap
    }
}

/// The SINR CDF: breakpoints at `Omega_0 / (c + z)` per atom `z`, with the
/// value at a breakpoint covering every atom of at least that interference.
pub fn sinr_cdf(powers: &ReceivedPowers, pmf: &JointPmf) -> SinrCdf {
    let dist = z_distribution(powers, pmf);
    let mut steps: Vec<(f64, f64)> = Vec::with_capacity(dist.atoms().len());
    let mut cum = 0.0;
    for (z, p) in dist.atoms().iter().rev() {
        cum += p;
        steps.push((powers.omega0 / (powers.c + z), cum));
    }
    SinrCdf { steps }
}

/// Outage probability at threshold `beta`.
pub fn outage(cdf: &SinrCdf, beta: f64) -> f64 {
    cdf.value_at(beta)
}

/// Coverage probability at threshold `beta`.
pub fn coverage(cdf: &SinrCdf, beta: f64) -> f64 {
    1.0 - cdf.value_at(beta)
}
