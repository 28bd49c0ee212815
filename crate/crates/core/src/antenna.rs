//! Directional antenna gain models and the effective received power.
//!
//! Patterns are functions of the azimuth angle only, even around boresight
//! and periodic in 2*pi. The received power from an interferer combines the
//! receiver gain toward the interferer, the transmitter gain toward the
//! receiver, and exponential path loss:
//! `Omega = g_r(phi) * g_t(|phi - psi| - pi) * R^-alpha`.

use crate::geometry::{wrap_to_2pi, wrap_to_pi, TransmitterSite};
use rand::Rng;
use std::f64::consts::{PI, TAU};
use std::io::BufRead;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AntennaError {
    #[error("sectorized gains must satisfy main >= side > 0 (main = {main}, side = {side})")]
    InvalidSectorizedGains { main: f64, side: f64 },
    #[error("beamwidth must lie in (0, 2*pi], got {0}")]
    InvalidBeamwidth(f64),
    #[error("array needs at least one element")]
    EmptyArray,
    #[error("element spacing must be positive, got {0}")]
    InvalidSpacing(f64),
    #[error("transmitter site coincides with receiver")]
    SiteAtReceiver,
    #[error("tabulated pattern line {line}: {reason}")]
    TabulatedParse { line: usize, reason: String },
    #[error("tabulated pattern must cover [-180, 180] degrees with strictly increasing angles")]
    TabulatedCoverage,
    #[error("failed to read tabulated pattern: {0}")]
    TabulatedIo(#[from] std::io::Error),
}

/// Measured pattern loaded from a two-column `angle_deg,gain_linear` table,
/// evaluated by linear interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPattern {
    angles_deg: Vec<f64>,
    gains: Vec<f64>,
}

impl TabulatedPattern {
    pub fn new(angles_deg: Vec<f64>, gains: Vec<f64>) -> Result<Self, AntennaError> {
        if angles_deg.len() != gains.len() || angles_deg.len() < 2 {
            return Err(AntennaError::TabulatedCoverage);
        }
        if angles_deg.windows(2).any(|w| w[0] >= w[1])
            || angles_deg[0] > -180.0 + 1e-9
            || *angles_deg.last().unwrap() < 180.0 - 1e-9
        {
            return Err(AntennaError::TabulatedCoverage);
        }
        Ok(Self { angles_deg, gains })
    }

    /// Parse `angle_deg,gain_linear` rows; `#`-prefixed lines and an
    /// optional header row are skipped.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self, AntennaError> {
        let mut angles = Vec::new();
        let mut gains = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.split(',');
            let a = parts.next().map(str::trim);
            let g = parts.next().map(str::trim);
            match (a.and_then(|s| s.parse::<f64>().ok()), g.and_then(|s| s.parse::<f64>().ok())) {
                (Some(a), Some(g)) => {
                    angles.push(a);
                    gains.push(g);
                }
                _ if idx == 0 => continue, // header row
                _ => {
                    return Err(AntennaError::TabulatedParse {
                        line: idx + 1,
                        reason: format!("expected `angle_deg,gain_linear`, got `{trimmed}`"),
                    })
                }
            }
        }
        Self::new(angles, gains)
    }

    fn gain(&self, angle: f64) -> f64 {
        let deg = wrap_to_pi(angle).to_degrees();
        let i = self
            .angles_deg
            .partition_point(|a| *a <= deg)
            .clamp(1, self.angles_deg.len() - 1);
        let (a0, a1) = (self.angles_deg[i - 1], self.angles_deg[i]);
        let (g0, g1) = (self.gains[i - 1], self.gains[i]);
        g0 + (g1 - g0) * (deg - a0) / (a1 - a0)
    }
}

/// Azimuth gain pattern; gains are linear ratios.
#[derive(Debug, Clone, PartialEq)]
pub enum AntennaPattern {
    Omni,
    Sectorized {
        main_gain: f64,
        side_gain: f64,
        beamwidth: f64,
    },
    UniformArray {
        elements: u32,
        spacing: f64,
    },
    Tabulated(TabulatedPattern),
}

impl AntennaPattern {
    pub fn sectorized(main_gain: f64, side_gain: f64, beamwidth: f64) -> Result<Self, AntennaError> {
        if !(side_gain > 0.0 && main_gain >= side_gain) {
            return Err(AntennaError::InvalidSectorizedGains {
                main: main_gain,
                side: side_gain,
            });
        }
        if !(beamwidth > 0.0 && beamwidth <= TAU) {
            return Err(AntennaError::InvalidBeamwidth(beamwidth));
        }
        Ok(Self::Sectorized {
            main_gain,
            side_gain,
            beamwidth,
        })
    }

    /// Default two-level approximation: 10 dB main lobe, -10 dB side lobe,
    /// 60 degree beamwidth.
    pub fn sectorized_default() -> Self {
        Self::sectorized(10.0, 0.1, 60f64.to_radians()).unwrap()
    }

    pub fn uniform_array(elements: u32, spacing: f64) -> Result<Self, AntennaError> {
        if elements == 0 {
            return Err(AntennaError::EmptyArray);
        }
        if spacing <= 0.0 {
            return Err(AntennaError::InvalidSpacing(spacing));
        }
        Ok(Self::UniformArray { elements, spacing })
    }

    pub fn is_directional(&self) -> bool {
        !matches!(self, Self::Omni)
    }

    /// Gain at the given off-boresight angle (radians, wrapped).
    pub fn gain(&self, angle_off_boresight: f64) -> f64 {
        let a = wrap_to_pi(angle_off_boresight).abs();
        match self {
            Self::Omni => 1.0,
            Self::Sectorized {
                main_gain,
                side_gain,
                beamwidth,
            } => {
                if a <= 0.5 * beamwidth {
                    *main_gain
                } else {
                    *side_gain
                }
            }
            Self::UniformArray { elements, spacing } => array_gain(*elements, *spacing, a),
            Self::Tabulated(t) => t.gain(wrap_to_pi(angle_off_boresight)),
        }
    }
}

/// `N |AF|^2` with the normalized factor `AF = sin(N u) / (N sin u)`,
/// `u = pi d sin(angle)`. Where `sin u` vanishes the factor tends to one and
/// the gain to `N` (broadside and grating lobes).
fn array_gain(elements: u32, spacing: f64, angle: f64) -> f64 {
    let n = elements as f64;
    let u = PI * spacing * angle.sin();
    let den = u.sin();
    if den.abs() < 1e-9 {
        return n;
    }
    let af = (n * u).sin() / (n * den);
    n * af * af
}

/// An interferer with a pointing direction and a transmit pattern.
#[derive(Debug, Clone)]
pub struct OrientedTransmitter {
    pub site: TransmitterSite,
    pub boresight: f64,
    pub pattern: AntennaPattern,
}

impl OrientedTransmitter {
    pub fn new(
        site: TransmitterSite,
        boresight: f64,
        pattern: AntennaPattern,
    ) -> Result<Self, AntennaError> {
        if site.r() <= 0.0 {
            return Err(AntennaError::SiteAtReceiver);
        }
        Ok(Self {
            site,
            boresight: wrap_to_2pi(boresight),
            pattern,
        })
    }
}

/// Effective received power from an interferer under both antenna patterns.
///
/// The receiver gain is evaluated at the interferer azimuth relative to the
/// receiver boresight; the transmitter gain at `|phi - psi| - pi`.
pub fn received_power(
    tx: &OrientedTransmitter,
    rx_pattern: &AntennaPattern,
    rx_boresight: f64,
    alpha: f64,
) -> f64 {
    received_power_with(
        &tx.site,
        tx.boresight,
        &tx.pattern,
        rx_pattern,
        rx_boresight,
        alpha,
    )
}

/// Same as [`received_power`] without an owned transmitter value; the site
/// must not coincide with the receiver.
pub fn received_power_with(
    site: &TransmitterSite,
    tx_boresight: f64,
    tx_pattern: &AntennaPattern,
    rx_pattern: &AntennaPattern,
    rx_boresight: f64,
    alpha: f64,
) -> f64 {
    let phi = site.phi();
    let g_r = rx_pattern.gain(phi - rx_boresight);
    let g_t = tx_pattern.gain((phi - wrap_to_2pi(tx_boresight)).abs() - PI);
    g_r * g_t * site.r().powf(-alpha)
}

/// Uniform pointing direction in `[0, 2*pi)`.
pub fn draw_orientation<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    TAU * rng.random::<f64>()
}
