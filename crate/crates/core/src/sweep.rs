//! Angular-grid evaluation of array factors and radiation patterns.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ris::{
    db_to_linear, effective_shifts, element_gain, linear_to_db, ConfigPhasors, Direction,
    DualPolConfig, ElementGainParams, Polarization, RisGeometry,
};

/// Azimuth and elevation sample points in radians, each strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleGrid {
    azimuth: Vec<f64>,
    elevation: Vec<f64>,
}

fn check_axis(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::invalid(format!("{name} axis is empty")));
    }
    if v.iter().any(|x| !x.is_finite() || x.abs() > FRAC_PI_2) {
        return Err(Error::invalid(format!("{name} samples must lie in [-π/2, π/2]")));
    }
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("{name} samples must be strictly increasing")));
    }
    Ok(())
}

impl AngleGrid {
    pub fn new(azimuth: Vec<f64>, elevation: Vec<f64>) -> Result<Self> {
        check_axis("azimuth", &azimuth)?;
        check_axis("elevation", &elevation)?;
        Ok(Self { azimuth, elevation })
    }

    pub fn azimuth(&self) -> &[f64] {
        &self.azimuth
    }

    pub fn elevation(&self) -> &[f64] {
        &self.elevation
    }

    pub fn len(&self) -> usize {
        self.azimuth.len() * self.elevation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    // pin the last sample so the upper bound is hit exactly
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

fn clamp_bound(name: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || v.abs() > FRAC_PI_2 + 1e-12 {
        return Err(Error::invalid(format!("{name} bound {v} is outside [-π/2, π/2]")));
    }
    Ok(v.clamp(-FRAC_PI_2, FRAC_PI_2))
}

/// Uniform grid with inclusive endpoints. A count of 1 samples the lower bound.
pub fn make_grid(
    az_min: f64,
    az_max: f64,
    n_az: usize,
    el_min: f64,
    el_max: f64,
    n_el: usize,
) -> Result<AngleGrid> {
    let (az_min, az_max) = (clamp_bound("azimuth", az_min)?, clamp_bound("azimuth", az_max)?);
    let (el_min, el_max) = (clamp_bound("elevation", el_min)?, clamp_bound("elevation", el_max)?);
    if az_min > az_max || el_min > el_max {
        return Err(Error::invalid("grid bounds are inverted"));
    }
    if n_az == 0 || n_el == 0 {
        return Err(Error::invalid("grid counts must be at least 1"));
    }
    if (n_az > 1 && az_min == az_max) || (n_el > 1 && el_min == el_max) {
        return Err(Error::invalid("a degenerate range needs a count of 1"));
    }
    AngleGrid::new(linspace(az_min, az_max, n_az), linspace(el_min, el_max, n_el))
}

/// Same as [`make_grid`] with bounds in degrees.
pub fn make_grid_degrees(
    az_min: f64,
    az_max: f64,
    n_az: usize,
    el_min: f64,
    el_max: f64,
    n_el: usize,
) -> Result<AngleGrid> {
    make_grid(
        az_min.to_radians(),
        az_max.to_radians(),
        n_az,
        el_min.to_radians(),
        el_max.to_radians(),
        n_el,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Power-domain array factor, both polarizations.
    TotalAf,
    AfH,
    AfV,
    /// Array factor times element gain toward the AoA and the observer.
    TotalPattern,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::TotalAf => "total_af",
            Quantity::AfH => "af_h",
            Quantity::AfV => "af_v",
            Quantity::TotalPattern => "total_pattern",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total_af" => Ok(Quantity::TotalAf),
            "af_h" => Ok(Quantity::AfH),
            "af_v" => Ok(Quantity::AfV),
            "total_pattern" => Ok(Quantity::TotalPattern),
            other => Err(Error::invalid(format!("unknown quantity '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Db,
}

/// Values sampled on an [`AngleGrid`], stored row-major with elevation as
/// the outer index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternMap {
    pub grid: AngleGrid,
    pub values: Vec<f64>,
    pub scale: Scale,
    pub quantity: Quantity,
    pub config_id: String,
    pub aoa: Direction,
}

impl PatternMap {
    pub fn dims(&self) -> (usize, usize) {
        (self.grid.elevation.len(), self.grid.azimuth.len())
    }

    pub fn get(&self, i_el: usize, i_az: usize) -> f64 {
        self.values[i_el * self.grid.azimuth.len() + i_az]
    }

    /// `(azimuth, elevation, value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n_az = self.grid.azimuth.len();
        self.values.iter().enumerate().map(move |(i, &v)| {
            (self.grid.azimuth[i % n_az], self.grid.elevation[i / n_az], v)
        })
    }

    pub fn to_db(&self) -> PatternMap {
        match self.scale {
            Scale::Db => self.clone(),
            Scale::Linear => PatternMap {
                values: self.values.iter().map(|&v| linear_to_db(v)).collect(),
                scale: Scale::Db,
                ..self.clone()
            },
        }
    }

    pub fn to_linear(&self) -> PatternMap {
        match self.scale {
            Scale::Linear => self.clone(),
            Scale::Db => PatternMap {
                values: self.values.iter().map(|&v| db_to_linear(v)).collect(),
                scale: Scale::Linear,
                ..self.clone()
            },
        }
    }
}

fn evaluate(
    quantity: Quantity,
    phasors: &ConfigPhasors,
    geom: &RisGeometry,
    d: &Direction,
    aoa: &Direction,
    params: &ElementGainParams,
) -> f64 {
    let (py, pz) = effective_shifts(geom, d, aoa);
    match quantity {
        Quantity::AfH => phasors.af(py, pz, Polarization::H),
        Quantity::AfV => phasors.af(py, pz, Polarization::V),
        Quantity::TotalAf => phasors.af(py, pz, Polarization::H) + phasors.af(py, pz, Polarization::V),
        Quantity::TotalPattern => {
            let a = phasors.af(py, pz, Polarization::H) + phasors.af(py, pz, Polarization::V);
            a * db_to_linear(element_gain(aoa, params)) * db_to_linear(element_gain(d, params))
        }
    }
}

/// Evaluates `quantity` at every grid point in the linear domain on the
/// current rayon pool. Each point is computed independently with a fixed
/// summation order, so the output does not depend on the worker count.
pub fn sweep(
    quantity: Quantity,
    cfg: &DualPolConfig,
    geom: &RisGeometry,
    grid: &AngleGrid,
    aoa: &Direction,
    params: &ElementGainParams,
) -> Result<PatternMap> {
    let phasors = ConfigPhasors::new(cfg, geom)?;
    params.validate()?;
    let values: Vec<f64> = grid
        .elevation
        .par_iter()
        .flat_map_iter(|&el| {
            let phasors = &phasors;
            grid.azimuth.iter().map(move |&az| {
                let d = Direction::new(az, el).expect("grid samples are in range");
                evaluate(quantity, phasors, geom, &d, aoa, params)
            })
        })
        .collect();
    Ok(PatternMap {
        grid: grid.clone(),
        values,
        scale: Scale::Linear,
        quantity,
        config_id: String::new(),
        aoa: *aoa,
    })
}

/// [`sweep`] on a dedicated pool of `threads` workers.
pub fn sweep_with_threads(
    threads: usize,
    quantity: Quantity,
    cfg: &DualPolConfig,
    geom: &RisGeometry,
    grid: &AngleGrid,
    aoa: &Direction,
    params: &ElementGainParams,
) -> Result<PatternMap> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| sweep(quantity, cfg, geom, grid, aoa, params))
}

/// Summary statistics of a pattern map, in the map's own scale.
///
/// * `mean` is the arithmetic mean of the stored values.
/// * `max_abs_deviation` is `max |v - mean|`.
/// * `relative_ripple` is `(max - min) / |mean|`.
/// * `ripple_db` is `10 log10(max / min)` for linear maps and `max - min` for
///   dB maps; `None` when a linear map holds a nonpositive value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RippleStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub max_abs_deviation: f64,
    pub relative_ripple: f64,
    pub ripple_db: Option<f64>,
}

impl RippleStats {
    pub fn ripple_db(&self) -> Result<f64> {
        self.ripple_db
            .ok_or_else(|| Error::invalid("ripple in dB is undefined for nonpositive linear values"))
    }
}

pub fn ripple_stats(map: &PatternMap) -> Result<RippleStats> {
    if map.values.is_empty() {
        return Err(Error::invalid("pattern map is empty"));
    }
    let min = map.values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = map.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = map.values.iter().sum::<f64>() / map.values.len() as f64;
    let max_abs_deviation = map
        .values
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0, f64::max);
    let ripple_db = match map.scale {
        Scale::Db => Some(max - min),
        Scale::Linear if min > 0.0 => Some(linear_to_db(max / min)),
        Scale::Linear => None,
    };
    Ok(RippleStats {
        min,
        max,
        mean,
        max_abs_deviation,
        relative_ripple: (max - min) / mean.abs(),
        ripple_db,
    })
}
