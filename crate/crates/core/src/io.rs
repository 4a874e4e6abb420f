//! JSON file formats, scenarios and pattern-map serialization.
//!
//! Phases in files are radians. Angles everywhere else in files are degrees.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::array::{construct, Layout, UnimodularArray};
use crate::error::{Error, Result};
use crate::golay::{known_golay_pair, Alphabet, UnimodularSequence};
use crate::ris::{Direction, DualPolConfig, ElementGainParams, LinkBudget, RisGeometry};
use crate::sweep::{PatternMap, Scale};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub alphabet: Alphabet,
    pub phases: Vec<f64>,
}

impl SequenceFile {
    pub fn from_sequence(seq: &UnimodularSequence, alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            phases: seq.phases().to_vec(),
        }
    }

    pub fn to_sequence(&self) -> Result<UnimodularSequence> {
        let seq = UnimodularSequence::new(self.phases.clone())?;
        if let Some(q) = self.alphabet.size() {
            if seq.to_indices(q).is_none() {
                return Err(Error::invalid(format!(
                    "phases are not in the {} alphabet",
                    self.alphabet
                )));
            }
        }
        Ok(seq)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub u: SequenceFile,
    pub w: SequenceFile,
}

impl PairFile {
    pub fn to_pair(&self) -> Result<(UnimodularSequence, UnimodularSequence)> {
        let (u, w) = (self.u.to_sequence()?, self.w.to_sequence()?);
        if u.len() != w.len() {
            return Err(Error::invalid("pair sequences differ in length"));
        }
        Ok((u, w))
    }
}

/// Row-major array pair, `{ "dims": [N1, N2], "U_phases": [[..]], "W_phases": [[..]] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayPairFile {
    pub dims: [usize; 2],
    #[serde(rename = "U_phases")]
    pub u_phases: Vec<Vec<f64>>,
    #[serde(rename = "W_phases")]
    pub w_phases: Vec<Vec<f64>>,
}

impl ArrayPairFile {
    pub fn from_arrays(u: &UnimodularArray, w: &UnimodularArray) -> Self {
        let (n1, n2) = u.dims();
        Self {
            dims: [n1, n2],
            u_phases: u.phase_rows(),
            w_phases: w.phase_rows(),
        }
    }

    pub fn to_arrays(&self) -> Result<(UnimodularArray, UnimodularArray)> {
        let u = UnimodularArray::from_rows(self.u_phases.clone())?;
        let w = UnimodularArray::from_rows(self.w_phases.clone())?;
        let dims = (self.dims[0], self.dims[1]);
        if u.dims() != dims || w.dims() != dims {
            return Err(Error::invalid(format!(
                "declared dims {dims:?} but U is {:?} and W is {:?}",
                u.dims(),
                w.dims()
            )));
        }
        Ok((u, w))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleDeg {
    pub azimuth_deg: f64,
    pub elevation_deg: f64,
}

impl AngleDeg {
    pub fn to_direction(self) -> Result<Direction> {
        Direction::from_degrees(self.azimuth_deg, self.elevation_deg)
    }
}

/// Element pattern parameters with angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ElementGainDeg {
    pub phi0_deg: f64,
    pub theta0_deg: f64,
    pub delta_phi_deg: f64,
    pub delta_theta_deg: f64,
    pub peak_dbi: f64,
    pub floor_db: f64,
}

impl Default for ElementGainDeg {
    fn default() -> Self {
        let p = ElementGainParams::default();
        Self {
            phi0_deg: p.phi0.to_degrees(),
            theta0_deg: p.theta0.to_degrees(),
            delta_phi_deg: p.delta_phi.to_degrees(),
            delta_theta_deg: p.delta_theta.to_degrees(),
            peak_dbi: p.peak_dbi,
            floor_db: p.floor_db,
        }
    }
}

impl ElementGainDeg {
    pub fn to_params(self) -> Result<ElementGainParams> {
        let p = ElementGainParams {
            phi0: self.phi0_deg.to_radians(),
            theta0: self.theta0_deg.to_radians(),
            delta_phi: self.delta_phi_deg.to_radians(),
            delta_theta: self.delta_theta_deg.to_radians(),
            peak_dbi: self.peak_dbi,
            floor_db: self.floor_db,
        };
        p.validate()?;
        Ok(p)
    }
}

/// Golay seeds and block layout for a constructed configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructSpec {
    pub l1: usize,
    pub alphabet1: Alphabet,
    pub l2: usize,
    pub alphabet2: Alphabet,
    pub layout: Layout,
}

impl Default for ConstructSpec {
    /// Binary and quaternary length-8 seeds, stacked into 16x8.
    fn default() -> Self {
        Self {
            l1: 8,
            alphabet1: Alphabet::Binary,
            l2: 8,
            alphabet2: Alphabet::Quaternary,
            layout: Layout::Stacked,
        }
    }
}

impl ConstructSpec {
    pub fn build(&self) -> Result<(UnimodularArray, UnimodularArray)> {
        let (u1, w1) = known_golay_pair(self.l1, self.alphabet1)?;
        let (u2, w2) = known_golay_pair(self.l2, self.alphabet2)?;
        construct(self.layout, &u1, &w1, &u2, &w2)
    }

    pub fn id(&self) -> String {
        format!(
            "{}-{}{}x{}{}",
            match self.layout {
                Layout::Stacked => "stacked",
                Layout::Concat => "concat",
            },
            self.alphabet1,
            self.l1,
            self.alphabet2,
            self.l2
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigSource {
    Construct(ConstructSpec),
    /// Array-pair file, relative paths resolved against the scenario file.
    PairFile(PathBuf),
    Inline(ArrayPairFile),
}

impl Default for ConfigSource {
    fn default() -> Self {
        ConfigSource::Construct(ConstructSpec::default())
    }
}

/// Everything needed to evaluate a surface, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario {
    pub geometry: RisGeometry,
    pub config: ConfigSource,
    pub aoa: AngleDeg,
    pub element_gain: ElementGainDeg,
    pub link_budget: LinkBudget,
}

impl Default for Scenario {
    /// 16x16 surface at half-wavelength spacing (28 GHz carrier), AoA (-60°, 60°).
    fn default() -> Self {
        let wavelength = 299_792_458.0 / 28e9;
        Self {
            geometry: RisGeometry {
                n_y: 16,
                n_z: 16,
                delta_y: wavelength / 2.0,
                delta_z: wavelength / 2.0,
                wavelength,
            },
            config: ConfigSource::default(),
            aoa: AngleDeg {
                azimuth_deg: -60.0,
                elevation_deg: 60.0,
            },
            element_gain: ElementGainDeg::default(),
            link_budget: LinkBudget::default(),
        }
    }
}

/// A scenario with its configuration loaded and angles in radians.
#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub geometry: RisGeometry,
    pub config: DualPolConfig,
    pub config_id: String,
    pub aoa: Direction,
    pub element_gain: ElementGainParams,
    pub link_budget: LinkBudget,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }

    pub fn resolve(&self, base_dir: &Path) -> Result<ResolvedScenario> {
        self.geometry.validate()?;
        self.link_budget.validate()?;
        let ((u, w), config_id) = match &self.config {
            ConfigSource::Construct(spec) => (spec.build()?, spec.id()),
            ConfigSource::PairFile(p) => {
                let path = if p.is_absolute() { p.clone() } else { base_dir.join(p) };
                let file: ArrayPairFile = read_json(&path)?;
                (file.to_arrays()?, p.display().to_string())
            }
            ConfigSource::Inline(file) => (file.to_arrays()?, "inline".to_string()),
        };
        let config = DualPolConfig::new(u, w)?;
        config.check_geometry(&self.geometry)?;
        Ok(ResolvedScenario {
            geometry: self.geometry,
            config,
            config_id,
            aoa: self.aoa.to_direction()?,
            element_gain: self.element_gain.to_params()?,
            link_budget: self.link_budget,
        })
    }
}

// Fixed-precision formatting keeps CSV bytes stable; negative zero is folded.
fn fixed(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// CSV with header `azimuth_deg,elevation_deg,value`, elevation as the outer loop.
pub fn pattern_csv(map: &PatternMap) -> String {
    let mut out = String::from("azimuth_deg,elevation_deg,value\n");
    for (az, el, v) in map.iter() {
        let _ = writeln!(
            out,
            "{},{},{}",
            fixed(az.to_degrees(), 6),
            fixed(el.to_degrees(), 6),
            fixed(v, 12)
        );
    }
    out
}

pub fn write_pattern_csv(path: &Path, map: &PatternMap) -> Result<()> {
    fs::write(path, pattern_csv(map))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternJson {
    pub quantity: String,
    pub scale: Scale,
    pub config_id: String,
    pub aoa_deg: [f64; 2],
    pub azimuth_deg: Vec<f64>,
    pub elevation_deg: Vec<f64>,
    /// One row per elevation sample.
    pub values: Vec<Vec<f64>>,
}

impl PatternJson {
    pub fn from_map(map: &PatternMap) -> Self {
        let n_az = map.grid.azimuth().len();
        Self {
            quantity: map.quantity.name().to_string(),
            scale: map.scale,
            config_id: map.config_id.clone(),
            aoa_deg: [map.aoa.azimuth().to_degrees(), map.aoa.elevation().to_degrees()],
            azimuth_deg: map.grid.azimuth().iter().map(|a| a.to_degrees()).collect(),
            elevation_deg: map.grid.elevation().iter().map(|e| e.to_degrees()).collect(),
            values: map.values.chunks(n_az).map(<[f64]>::to_vec).collect(),
        }
    }
}

pub fn write_pattern_json(path: &Path, map: &PatternMap) -> Result<()> {
    write_json(path, &PatternJson::from_map(map))
}
