//! JSON scenario configuration.
//!
//! Angles are degrees and gains/powers are dB in the file; everything is
//! converted to radians and linear units at the boundary. See the README
//! for the full schema.

use crate::error::CliError;
use corrblock::antenna::{AntennaPattern, TabulatedPattern};
use corrblock::blocking::BlockageField;
use corrblock::geometry::{ConvexPolygon, DeploymentRegion, Point2, RegionModel, TransmitterSite};
use corrblock::montecarlo::{McControls, SinrScenario};
use corrblock::sinr::db_to_linear;
use serde::Deserialize;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub region: RegionSpec,
    pub sites: SitesSpec,
    #[serde(default = "default_omega0")]
    pub omega0: f64,
    pub snr_db: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub blockage: BlockageSpec,
    #[serde(default)]
    pub region_model: RegionModelSpec,
    /// Optional explicit area for the analytic formulas, replacing the
    /// geometric region area.
    #[serde(default)]
    pub area_override: Option<f64>,
    /// Force the analytic correlation instead of deriving it from geometry.
    #[serde(default)]
    pub rho_override: Option<f64>,
    /// `analyze` only: emit one curve per correlation value on this grid.
    #[serde(default)]
    pub rho_sweep: Option<RhoSweepSpec>,
    #[serde(default)]
    pub antennas: AntennasSpec,
    /// `rho-sweep` only.
    #[serde(default)]
    pub theta_sweep: Option<ThetaSweepSpec>,
    #[serde(default)]
    pub mc: McSpec,
}

fn default_omega0() -> f64 {
    1.0
}

fn default_alpha() -> f64 {
    2.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum RegionSpec {
    Circle { radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum SitesSpec {
    /// Fixed polar placements `(r, phi_deg)`.
    Fixed(Vec<SitePolar>),
    /// Uniformly random placements; must be 2.
    Random(u32),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SitePolar {
    pub r: f64,
    pub phi_deg: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockageSpec {
    pub count: u32,
    pub width: f64,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RegionModelSpec {
    #[default]
    Rectangle,
    Exact,
}

impl From<RegionModelSpec> for RegionModel {
    fn from(spec: RegionModelSpec) -> Self {
        match spec {
            RegionModelSpec::Rectangle => RegionModel::Rectangle,
            RegionModelSpec::Exact => RegionModel::Exact,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoSweepSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl RhoSweepSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        if self.step <= 0.0 || self.stop < self.start {
            return Err(CliError::config("rho_sweep needs step > 0 and stop >= start"));
        }
        let mut values = Vec::new();
        let mut i = 0u32;
        loop {
            let v = self.start + self.step * i as f64;
            if v > self.stop + 1e-12 {
                break;
            }
            values.push(v);
            i += 1;
        }
        Ok(values)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSweepSpec {
    #[serde(default)]
    pub start_deg: f64,
    #[serde(default = "default_stop_deg")]
    pub stop_deg: f64,
    pub points: usize,
    /// Sweep the blockage width over these values (one curve each).
    #[serde(default)]
    pub widths: Option<Vec<f64>>,
    /// Sweep the blockage count over these values (one curve each).
    #[serde(default)]
    pub counts: Option<Vec<u32>>,
    /// When set, add Monte-Carlo estimate columns at this trial count.
    #[serde(default)]
    pub mc_trials: Option<u64>,
}

fn default_stop_deg() -> f64 {
    180.0
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennasSpec {
    #[serde(default)]
    pub rx: RxSpec,
    /// One entry applies to both interferers; two entries are per-interferer.
    #[serde(default)]
    pub tx: Vec<TxSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RxSpec {
    #[serde(default)]
    pub pattern: PatternSpec,
    #[serde(default)]
    pub boresight_deg: f64,
}

impl Default for RxSpec {
    fn default() -> Self {
        Self {
            pattern: PatternSpec::Omni,
            boresight_deg: 0.0,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TxSpec {
    #[serde(default)]
    pub pattern: PatternSpec,
    /// Fixed pointing direction; omit for a random orientation.
    #[serde(default)]
    pub boresight_deg: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case", tag = "type")]
pub enum PatternSpec {
    #[default]
    Omni,
    Sectorized {
        #[serde(default = "default_main_db")]
        main_gain_db: f64,
        #[serde(default = "default_side_db")]
        side_gain_db: f64,
        #[serde(default = "default_beamwidth_deg")]
        beamwidth_deg: f64,
    },
    UniformArray {
        #[serde(default = "default_elements")]
        elements: u32,
        #[serde(default = "default_spacing")]
        spacing: f64,
    },
    Tabulated {
        path: PathBuf,
    },
}

fn default_main_db() -> f64 {
    10.0
}

fn default_side_db() -> f64 {
    -10.0
}

fn default_beamwidth_deg() -> f64 {
    60.0
}

fn default_elements() -> u32 {
    4
}

fn default_spacing() -> f64 {
    0.5
}

impl PatternSpec {
    /// Resolve to a pattern; tabulated paths are relative to the config file.
    pub fn build(&self, config_dir: &Path) -> Result<AntennaPattern, CliError> {
        match self {
            PatternSpec::Omni => Ok(AntennaPattern::Omni),
            PatternSpec::Sectorized {
                main_gain_db,
                side_gain_db,
                beamwidth_deg,
            } => AntennaPattern::sectorized(
                db_to_linear(*main_gain_db),
                db_to_linear(*side_gain_db),
                beamwidth_deg.to_radians(),
            )
            .map_err(|e| CliError::config(format!("antenna: {e}"))),
            PatternSpec::UniformArray { elements, spacing } => {
                AntennaPattern::uniform_array(*elements, *spacing)
                    .map_err(|e| CliError::config(format!("antenna: {e}")))
            }
            PatternSpec::Tabulated { path } => {
                let full = if path.is_absolute() {
                    path.clone()
                } else {
                    config_dir.join(path)
                };
                let file = File::open(&full).map_err(|e| {
                    CliError::config(format!("antenna table {}: {e}", full.display()))
                })?;
                let table = TabulatedPattern::from_reader(BufReader::new(file))
                    .map_err(|e| CliError::config(format!("antenna table: {e}")))?;
                Ok(AntennaPattern::Tabulated(table))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSpec {
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_realizations")]
    pub realizations: u64,
    #[serde(default)]
    pub seed: u64,
}

impl Default for McSpec {
    fn default() -> Self {
        Self {
            trials: default_trials(),
            realizations: default_realizations(),
            seed: 0,
        }
    }
}

fn default_trials() -> u64 {
    10_000
}

fn default_realizations() -> u64 {
    1_000
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<(Self, PathBuf), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let config: ScenarioConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        Ok((config, dir))
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.omega0 <= 0.0 {
            return Err(CliError::config("omega0 must be positive"));
        }
        if self.snr_db.is_nan() {
            return Err(CliError::config("snr_db must be a number"));
        }
        if self.alpha <= 0.0 {
            return Err(CliError::config("alpha must be positive"));
        }
        match &self.sites {
            SitesSpec::Fixed(list) => {
                if list.len() != 2 {
                    return Err(CliError::config("sites.fixed needs exactly 2 entries"));
                }
                for s in list {
                    if s.r <= 0.0 {
                        return Err(CliError::config("site distance must be positive"));
                    }
                }
            }
            SitesSpec::Random(n) => {
                if *n != 2 {
                    return Err(CliError::config("sites.random must be 2"));
                }
            }
        }
        if self.antennas.tx.len() > 2 {
            return Err(CliError::config("antennas.tx takes at most 2 entries"));
        }
        Ok(())
    }

    pub fn deployment_region(&self) -> Result<DeploymentRegion, CliError> {
        match &self.region {
            RegionSpec::Circle { radius } => DeploymentRegion::circle(*radius)
                .map_err(|e| CliError::config(format!("region: {e}"))),
            RegionSpec::Polygon { vertices } => {
                let points = vertices.iter().map(|[x, y]| Point2::new(*x, *y)).collect();
                let poly = ConvexPolygon::new(points)
                    .map_err(|e| CliError::config(format!("region: {e}")))?;
                Ok(DeploymentRegion::polygon(poly))
            }
        }
    }

    pub fn blockage_field(&self) -> Result<BlockageField, CliError> {
        let region = self.deployment_region()?;
        let mut field = BlockageField::new(self.blockage.count, self.blockage.width, region)
            .map_err(|e| CliError::config(format!("blockage: {e}")))?;
        if let Some(area) = self.area_override {
            field = field
                .with_area(area)
                .map_err(|e| CliError::config(format!("area_override: {e}")))?;
        }
        Ok(field)
    }

    pub fn fixed_sites(&self) -> Result<[TransmitterSite; 2], CliError> {
        match &self.sites {
            SitesSpec::Fixed(list) => Ok([
                TransmitterSite::new(list[0].r, list[0].phi_deg.to_radians()),
                TransmitterSite::new(list[1].r, list[1].phi_deg.to_radians()),
            ]),
            SitesSpec::Random(_) => Err(CliError::config(
                "this command needs fixed sites; got sites.random",
            )),
        }
    }

    pub fn controls(&self, seed_override: Option<u64>) -> Result<McControls, CliError> {
        McControls::new(
            self.mc.trials,
            self.mc.realizations,
            seed_override.unwrap_or(self.mc.seed),
        )
        .map_err(|e| CliError::config(format!("mc: {e}")))
    }

    /// Assemble the scenario used by both the analytic and simulation paths.
    pub fn scenario(
        &self,
        sites: [TransmitterSite; 2],
        config_dir: &Path,
    ) -> Result<SinrScenario, CliError> {
        let field = self.blockage_field()?;
        let rx_pattern = self.antennas.rx.pattern.build(config_dir)?;
        let rx_boresight = self.antennas.rx.boresight_deg.to_radians();
        let (tx_patterns, tx_boresights) = match self.antennas.tx.len() {
            0 => (
                [AntennaPattern::Omni, AntennaPattern::Omni],
                [None, None],
            ),
            1 => {
                let p = self.antennas.tx[0].pattern.build(config_dir)?;
                let b = self.antennas.tx[0].boresight_deg.map(f64::to_radians);
                ([p.clone(), p], [b, b])
            }
            _ => (
                [
                    self.antennas.tx[0].pattern.build(config_dir)?,
                    self.antennas.tx[1].pattern.build(config_dir)?,
                ],
                [
                    self.antennas.tx[0].boresight_deg.map(f64::to_radians),
                    self.antennas.tx[1].boresight_deg.map(f64::to_radians),
                ],
            ),
        };
        let scenario = SinrScenario {
            field,
            sites,
            tx_patterns,
            tx_boresights,
            rx_pattern,
            rx_boresight,
            omega0: self.omega0,
            snr: db_to_linear(self.snr_db),
            alpha: self.alpha,
        };
        scenario
            .validate()
            .map_err(|e| CliError::infeasible(e.to_string()))?;
        Ok(scenario)
    }
}
