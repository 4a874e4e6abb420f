//! Dual-polarized planar reflecting surface.
//!
//! Rows alternate between the H and V polarizations, so each polarization is
//! an `n_y × n_z/2` sub-array whose rows are two physical rows apart, and the
//! V sub-array sits one physical row above the H sub-array. Element `n` of a
//! configuration vector maps to `(n mod n_y, n / n_y)`, i.e. configuration
//! matrices are filled column by column.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array::UnimodularArray;
use crate::error::{Error, Result};
use crate::golay::UnimodularSequence;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RisGeometry {
    /// Elements per row.
    pub n_y: usize,
    /// Elements per column, even.
    pub n_z: usize,
    pub delta_y: f64,
    pub delta_z: f64,
    pub wavelength: f64,
}

impl RisGeometry {
    pub fn new(n_y: usize, n_z: usize, delta_y: f64, delta_z: f64, wavelength: f64) -> Result<Self> {
        let g = Self {
            n_y,
            n_z,
            delta_y,
            delta_z,
            wavelength,
        };
        g.validate()?;
        Ok(g)
    }

    /// Half-wavelength spacing in both dimensions.
    pub fn half_wavelength(n_y: usize, n_z: usize) -> Result<Self> {
        Self::new(n_y, n_z, 0.5, 0.5, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_y == 0 {
            return Err(Error::invalid("n_y must be at least 1"));
        }
        if self.n_z < 2 || !self.n_z.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "n_z must be an even number of at least 2, got {}",
                self.n_z
            )));
        }
        for (name, v) in [
            ("delta_y", self.delta_y),
            ("delta_z", self.delta_z),
            ("wavelength", self.wavelength),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Rows per polarization, `n_z / 2`.
    pub fn rows_per_polarization(&self) -> usize {
        self.n_z / 2
    }

    /// Elements per polarization, `n_y · n_z / 2`.
    pub fn elements_per_polarization(&self) -> usize {
        self.n_y * self.rows_per_polarization()
    }

    /// Dimensions of each configuration matrix, `(n_y, n_z / 2)`.
    pub fn config_dims(&self) -> (usize, usize) {
        (self.n_y, self.rows_per_polarization())
    }
}

/// Azimuth/elevation pair in radians, both within `[-π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    azimuth: f64,
    elevation: f64,
}

// degrees-to-radians conversion of ±90° can land one ulp outside ±π/2
const ANGLE_SLACK: f64 = 1e-12;

fn check_angle(name: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || v.abs() > FRAC_PI_2 + ANGLE_SLACK {
        return Err(Error::invalid(format!(
            "{name} {v} rad is outside [-π/2, π/2]"
        )));
    }
    Ok(v.clamp(-FRAC_PI_2, FRAC_PI_2))
}

impl Direction {
    pub fn new(azimuth: f64, elevation: f64) -> Result<Self> {
        Ok(Self {
            azimuth: check_angle("azimuth", azimuth)?,
            elevation: check_angle("elevation", elevation)?,
        })
    }

    pub fn from_degrees(azimuth_deg: f64, elevation_deg: f64) -> Result<Self> {
        Self::new(azimuth_deg.to_radians(), elevation_deg.to_radians())
    }

    pub fn boresight() -> Self {
        Self {
            azimuth: 0.0,
            elevation: 0.0,
        }
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    H,
    V,
}

/// Per-polarization configuration matrices, each `n_y × n_z/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPolConfig {
    upsilon_h: UnimodularArray,
    upsilon_v: UnimodularArray,
}

impl DualPolConfig {
    pub fn new(upsilon_h: UnimodularArray, upsilon_v: UnimodularArray) -> Result<Self> {
        if upsilon_h.dims() != upsilon_v.dims() {
            return Err(Error::invalid(format!(
                "H and V configurations differ in shape: {:?} vs {:?}",
                upsilon_h.dims(),
                upsilon_v.dims()
            )));
        }
        Ok(Self {
            upsilon_h,
            upsilon_v,
        })
    }

    pub fn h(&self) -> &UnimodularArray {
        &self.upsilon_h
    }

    pub fn v(&self) -> &UnimodularArray {
        &self.upsilon_v
    }

    pub fn get(&self, pol: Polarization) -> &UnimodularArray {
        match pol {
            Polarization::H => &self.upsilon_h,
            Polarization::V => &self.upsilon_v,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.upsilon_h.dims()
    }

    pub fn check_geometry(&self, geom: &RisGeometry) -> Result<()> {
        geom.validate()?;
        if self.dims() != geom.config_dims() {
            return Err(Error::invalid(format!(
                "configuration is {:?} but the geometry needs {:?} per polarization",
                self.dims(),
                geom.config_dims()
            )));
        }
        Ok(())
    }

    /// Same global phase added to both polarizations.
    pub fn rotated(&self, alpha: f64) -> Self {
        Self {
            upsilon_h: self.upsilon_h.rotated(alpha),
            upsilon_v: self.upsilon_v.rotated(alpha),
        }
    }
}

fn fold(phi: &UnimodularSequence, n_y: usize, cols: usize) -> Result<UnimodularArray> {
    if phi.len() != n_y * cols {
        return Err(Error::invalid(format!(
            "configuration vector has {} entries, geometry needs {}",
            phi.len(),
            n_y * cols
        )));
    }
    let p = phi.phases();
    let row_major = (0..n_y)
        .flat_map(|r| (0..cols).map(move |c| p[c * n_y + r]))
        .collect();
    UnimodularArray::from_row_major(n_y, cols, row_major)
}

fn unfold(a: &UnimodularArray) -> UnimodularSequence {
    let (rows, cols) = a.dims();
    let phases = (0..cols)
        .flat_map(|c| (0..rows).map(move |r| a.phase(r, c)))
        .collect();
    UnimodularSequence::new(phases).expect("array is nonempty")
}

/// Column-wise fill of configuration vectors into matrices.
pub fn fold_config(
    phi_h: &UnimodularSequence,
    phi_v: &UnimodularSequence,
    geom: &RisGeometry,
) -> Result<DualPolConfig> {
    geom.validate()?;
    let (n_y, cols) = geom.config_dims();
    DualPolConfig::new(fold(phi_h, n_y, cols)?, fold(phi_v, n_y, cols)?)
}

pub fn unfold_config(cfg: &DualPolConfig) -> (UnimodularSequence, UnimodularSequence) {
    (unfold(cfg.h()), unfold(cfg.v()))
}

/// `(ψ_y, ψ_z)`: phase advance between adjacent elements along y and z.
pub fn relative_phase_shifts(geom: &RisGeometry, d: &Direction) -> (f64, f64) {
    let k = 2.0 * PI / geom.wavelength;
    (
        k * geom.delta_y * d.azimuth.sin() * d.elevation.cos(),
        k * geom.delta_z * d.elevation.sin(),
    )
}

/// Array response of one polarization, length `n_y · n_z/2`,
/// ordered as the Kronecker product of the z-response with the y-response.
pub fn steering_vector(geom: &RisGeometry, d: &Direction, pol: Polarization) -> Vec<Complex64> {
    let (psi_y, psi_z) = relative_phase_shifts(geom, d);
    let a_y: Vec<Complex64> = (0..geom.n_y)
        .map(|n| Complex64::from_polar(1.0, -(n as f64) * psi_y))
        .collect();
    let a_z: Vec<Complex64> = (0..geom.rows_per_polarization())
        .map(|n| Complex64::from_polar(1.0, -2.0 * n as f64 * psi_z))
        .collect();
    let shift = match pol {
        Polarization::H => Complex64::new(1.0, 0.0),
        Polarization::V => Complex64::from_polar(1.0, -psi_z),
    };
    a_z.iter()
        .flat_map(|&z| a_y.iter().map(move |&y| shift * z * y))
        .collect()
}

/// Materialized configuration used by the hot evaluation path.
#[derive(Debug, Clone)]
pub(crate) struct ConfigPhasors {
    n_y: usize,
    cols: usize,
    h: Vec<Complex64>,
    v: Vec<Complex64>,
}

impl ConfigPhasors {
    pub(crate) fn new(cfg: &DualPolConfig, geom: &RisGeometry) -> Result<Self> {
        cfg.check_geometry(geom)?;
        let (n_y, cols) = cfg.dims();
        Ok(Self {
            n_y,
            cols,
            h: cfg.h().entries(),
            v: cfg.v().entries(),
        })
    }

    /// `|Σ_{ny,nz} Υ[ny,nz] e^{-j(ny ψ̂_y + 2 nz ψ̂_z)}|²` at effective phases.
    ///
    /// The V polarization carries an extra unit-modulus factor `e^{-jψ̂_z}`
    /// which drops out of the squared magnitude.
    pub(crate) fn af(&self, psi_y: f64, psi_z: f64, pol: Polarization) -> f64 {
        let entries = match pol {
            Polarization::H => &self.h,
            Polarization::V => &self.v,
        };
        let y_pows: Vec<Complex64> = (0..self.n_y)
            .map(|n| Complex64::from_polar(1.0, -(n as f64) * psi_y))
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for nz in 0..self.cols {
            let mut col = Complex64::new(0.0, 0.0);
            for (ny, yp) in y_pows.iter().enumerate() {
                col += entries[ny * self.cols + nz] * yp;
            }
            total += col * Complex64::from_polar(1.0, -2.0 * nz as f64 * psi_z);
        }
        total.norm_sqr()
    }
}

pub(crate) fn effective_shifts(geom: &RisGeometry, d: &Direction, aoa: &Direction) -> (f64, f64) {
    let (py, pz) = relative_phase_shifts(geom, d);
    let (ay, az) = relative_phase_shifts(geom, aoa);
    (py + ay, pz + az)
}

/// Single-polarization term of the power-domain array factor.
pub fn per_polarization_array_factor(
    cfg: &DualPolConfig,
    geom: &RisGeometry,
    d: &Direction,
    aoa: &Direction,
    pol: Polarization,
) -> Result<f64> {
    let phasors = ConfigPhasors::new(cfg, geom)?;
    let (py, pz) = effective_shifts(geom, d, aoa);
    Ok(phasors.af(py, pz, pol))
}

/// Power-domain array factor `A(φ, θ)` (linear), evaluated as the double sum
/// over each configuration matrix at the effective phase shifts.
pub fn power_domain_array_factor(
    cfg: &DualPolConfig,
    geom: &RisGeometry,
    d: &Direction,
    aoa: &Direction,
) -> Result<f64> {
    let phasors = ConfigPhasors::new(cfg, geom)?;
    let (py, pz) = effective_shifts(geom, d, aoa);
    Ok(phasors.af(py, pz, Polarization::H) + phasors.af(py, pz, Polarization::V))
}

/// Power-domain array factor through explicit steering vectors:
/// `Σ_p |φ_pᵀ (a_p(d) ⊙ a_p(aoa))|²`.
pub fn power_domain_array_factor_vector(
    cfg: &DualPolConfig,
    geom: &RisGeometry,
    d: &Direction,
    aoa: &Direction,
) -> Result<f64> {
    cfg.check_geometry(geom)?;
    let (phi_h, phi_v) = unfold_config(cfg);
    let term = |phi: &UnimodularSequence, pol| {
        let a = steering_vector(geom, d, pol);
        let a_in = steering_vector(geom, aoa, pol);
        phi.entries()
            .iter()
            .zip(a.iter().zip(&a_in))
            .map(|(&p, (&x, &y))| p * x * y)
            .sum::<Complex64>()
            .norm_sqr()
    };
    Ok(term(&phi_h, Polarization::H) + term(&phi_v, Polarization::V))
}

/// Single-element radiation pattern parameters (3GPP-style).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementGainParams {
    pub phi0: f64,
    pub theta0: f64,
    pub delta_phi: f64,
    pub delta_theta: f64,
    pub peak_dbi: f64,
    pub floor_db: f64,
}

impl Default for ElementGainParams {
    fn default() -> Self {
        Self {
            phi0: 0.0,
            theta0: 0.0,
            delta_phi: FRAC_PI_2,
            delta_theta: FRAC_PI_2,
            peak_dbi: 8.0,
            floor_db: 30.0,
        }
    }
}

impl ElementGainParams {
    /// Flat 0 dBi element.
    pub fn isotropic() -> Self {
        Self {
            peak_dbi: 0.0,
            floor_db: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta_phi > 0.0 && self.delta_theta > 0.0) {
            return Err(Error::invalid("element beamwidth parameters must be positive"));
        }
        if !(self.floor_db >= 0.0) || !self.peak_dbi.is_finite() {
            return Err(Error::invalid("element peak must be finite and floor depth nonnegative"));
        }
        Ok(())
    }
}

/// Element gain in dBi.
pub fn element_gain(d: &Direction, p: &ElementGainParams) -> f64 {
    let floor = p.floor_db;
    let az = 12.0 * ((d.azimuth - p.phi0) / p.delta_phi).powi(2);
    let el = 12.0 * ((d.elevation - p.theta0) / p.delta_theta).powi(2);
    p.peak_dbi - (az.min(floor) + el.min(floor)).min(floor)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Total radiation power pattern in dB: array factor plus the element gain
/// toward the incoming and the observed direction.
pub fn total_radiation_pattern(
    cfg: &DualPolConfig,
    geom: &RisGeometry,
    d: &Direction,
    aoa: &Direction,
    p: &ElementGainParams,
) -> Result<f64> {
    p.validate()?;
    let a = power_domain_array_factor(cfg, geom, d, aoa)?;
    Ok(linear_to_db(a) + element_gain(aoa, p) + element_gain(d, p))
}

/// Link parameters between the base station and the surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    /// Base-station antenna count.
    pub bs_antennas: u32,
    /// Transmit power, watts.
    pub transmit_power: f64,
    /// Path gain base station to surface element, linear.
    pub beta1: f64,
    /// Path gain surface element to user, linear.
    pub beta2: f64,
    /// Base-station antenna gain toward the surface, linear.
    pub bs_gain: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        Self {
            bs_antennas: 1,
            transmit_power: 1.0,
            beta1: 1.0,
            beta2: 1.0,
            bs_gain: 1.0,
        }
    }
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        if self.bs_antennas == 0 {
            return Err(Error::invalid("base-station antenna count must be positive"));
        }
        for (name, v) in [
            ("transmit power", self.transmit_power),
            ("beta1", self.beta1),
            ("beta2", self.beta2),
            ("bs gain", self.bs_gain),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Product of all scalar link factors.
    pub fn scale(&self) -> f64 {
        self.bs_antennas as f64 * self.transmit_power * self.beta1 * self.beta2 * self.bs_gain
    }
}

/// Noise-free received power in watts after combining both polarizations.
pub fn received_power(
    link: &LinkBudget,
    cfg: &DualPolConfig,
    geom: &RisGeometry,
    d: &Direction,
    aoa: &Direction,
    p: &ElementGainParams,
) -> Result<f64> {
    link.validate()?;
    p.validate()?;
    let a = power_domain_array_factor(cfg, geom, d, aoa)?;
    Ok(link.scale() * db_to_linear(element_gain(aoa, p)) * db_to_linear(element_gain(d, p)) * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::construct_stacked;
    use crate::golay::{known_golay_pair, Alphabet};

    fn surface() -> (DualPolConfig, RisGeometry) {
        let (u1, w1) = known_golay_pair(8, Alphabet::Binary).unwrap();
        let (u2, w2) = known_golay_pair(8, Alphabet::Quaternary).unwrap();
        let (u, w) = construct_stacked(&u1, &w1, &u2, &w2).unwrap();
        (
            DualPolConfig::new(u, w).unwrap(),
            RisGeometry::half_wavelength(16, 16).unwrap(),
        )
    }

    fn single() -> (DualPolConfig, RisGeometry) {
        let h = UnimodularArray::from_row_major(1, 1, vec![0.7]).unwrap();
        let v = UnimodularArray::from_row_major(1, 1, vec![-2.1]).unwrap();
        (
            DualPolConfig::new(h, v).unwrap(),
            RisGeometry::half_wavelength(1, 2).unwrap(),
        )
    }

    #[test]
    fn geometry_validation() {
        assert!(RisGeometry::half_wavelength(4, 3).is_err());
        assert!(RisGeometry::half_wavelength(0, 2).is_err());
        assert!(RisGeometry::half_wavelength(1, 0).is_err());
        assert!(RisGeometry::new(2, 2, 0.5, -0.5, 1.0).is_err());
        assert!(RisGeometry::new(2, 2, 0.5, 0.5, 0.0).is_err());
        assert_eq!(RisGeometry::half_wavelength(16, 16).unwrap().config_dims(), (16, 8));
    }

    #[test]
    fn direction_bounds() {
        assert!(Direction::new(FRAC_PI_2 + 0.01, 0.0).is_err());
        assert!(Direction::new(0.0, -2.0).is_err());
        assert!(Direction::new(f64::NAN, 0.0).is_err());
        let d = Direction::from_degrees(-90.0, 90.0).unwrap();
        assert_eq!(d.azimuth(), -FRAC_PI_2);
        assert_eq!(d.elevation(), FRAC_PI_2);
    }

    #[test]
    fn phase_shift_examples() {
        let g = RisGeometry::half_wavelength(4, 4).unwrap();
        assert_eq!(relative_phase_shifts(&g, &Direction::boresight()), (0.0, 0.0));
        let (py, _) = relative_phase_shifts(&g, &Direction::new(FRAC_PI_2, 0.0).unwrap());
        assert!((py - PI).abs() < 1e-15);
        let (py, pz) = relative_phase_shifts(&g, &Direction::new(PI / 3.0, PI / 6.0).unwrap());
        assert!((py - PI * (PI / 3.0).sin() * (PI / 6.0).cos()).abs() < 1e-15);
        assert!((pz - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn steering_vector_examples() {
        let g = RisGeometry::half_wavelength(3, 4).unwrap();
        let a = steering_vector(&g, &Direction::boresight(), Polarization::H);
        assert_eq!(a.len(), 6);
        assert!(a.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));

        // ψ_y = π/2 needs sin(φ) = 1/2 at half-wavelength spacing
        let g = RisGeometry::half_wavelength(2, 2).unwrap();
        let a = steering_vector(&g, &Direction::new(PI / 6.0, 0.0).unwrap(), Polarization::H);
        assert!((a[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((a[1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn v_polarization_is_shifted_h() {
        let g = RisGeometry::new(3, 6, 0.4, 0.6, 1.0).unwrap();
        for (az, el) in [(0.3, -0.2), (-1.2, 1.0), (0.0, 0.7)] {
            let d = Direction::new(az, el).unwrap();
            let (_, pz) = relative_phase_shifts(&g, &d);
            let h = steering_vector(&g, &d, Polarization::H);
            let v = steering_vector(&g, &d, Polarization::V);
            let s = Complex64::from_polar(1.0, -pz);
            for (a, b) in h.iter().zip(&v) {
                assert!((s * a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn fold_examples() {
        let g = RisGeometry::half_wavelength(2, 4).unwrap();
        let phi = UnimodularSequence::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let cfg = fold_config(&phi, &phi, &g).unwrap();
        assert_eq!(cfg.h().phase_rows(), vec![vec![0.1, 0.3], vec![0.2, 0.4]]);
        let (h, _) = unfold_config(&cfg);
        assert_eq!(h, phi);

        let g = RisGeometry::half_wavelength(1, 2).unwrap();
        let a = UnimodularSequence::new(vec![1.5]).unwrap();
        let cfg = fold_config(&a, &a, &g).unwrap();
        assert_eq!(cfg.h().phase_rows(), vec![vec![1.5]]);

        let short = UnimodularSequence::new(vec![0.0; 3]).unwrap();
        assert!(fold_config(&short, &a, &g).is_err());
    }

    #[test]
    fn fold_round_trip_on_surface() {
        let (cfg, g) = surface();
        let (h, v) = unfold_config(&cfg);
        assert_eq!(h.len(), 128);
        assert_eq!(fold_config(&h, &v, &g).unwrap(), cfg);
    }

    #[test]
    fn single_element_array_factor() {
        let (cfg, g) = single();
        for (az, el, aaz, ael) in [(0.0, 0.0, 0.0, 0.0), (0.4, -1.1, -1.0, 1.0)] {
            let d = Direction::new(az, el).unwrap();
            let aoa = Direction::new(aaz, ael).unwrap();
            let a = power_domain_array_factor(&cfg, &g, &d, &aoa).unwrap();
            assert!((a - 2.0).abs() < 1e-14);
            for pol in [Polarization::H, Polarization::V] {
                let t = per_polarization_array_factor(&cfg, &g, &d, &aoa, pol).unwrap();
                assert!((t - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn surface_is_flat_at_256() {
        let (cfg, g) = surface();
        let aoa = Direction::new(-PI / 3.0, PI / 3.0).unwrap();
        for (az, el) in [(0.0, 0.0), (0.5, 0.2), (-1.0, -0.5), (1.5, 1.5)] {
            let d = Direction::new(az, el).unwrap();
            let a = power_domain_array_factor(&cfg, &g, &d, &aoa).unwrap();
            assert!((a - 256.0).abs() < 1e-9, "{a}");
        }
        assert!((linear_to_db(256.0) - 24.08).abs() < 5e-3);
    }

    #[test]
    fn coherent_all_ones_polarization_term() {
        let ones = UnimodularArray::from_row_major(16, 8, vec![0.0; 128]).unwrap();
        let cfg = DualPolConfig::new(ones.clone(), ones).unwrap();
        let g = RisGeometry::half_wavelength(16, 16).unwrap();
        let b = Direction::boresight();
        let h = per_polarization_array_factor(&cfg, &g, &b, &b, Polarization::H).unwrap();
        assert_eq!(h, 16384.0);
    }

    #[test]
    fn polarization_terms_vary_on_surface() {
        let (cfg, g) = surface();
        let aoa = Direction::new(-PI / 3.0, PI / 3.0).unwrap();
        let vals: Vec<f64> = [(0.0, 0.0), (0.3, 0.1), (-0.6, -0.4)]
            .iter()
            .map(|&(a, e)| {
                let d = Direction::new(a, e).unwrap();
                per_polarization_array_factor(&cfg, &g, &d, &aoa, Polarization::H).unwrap()
            })
            .collect();
        assert!(vals.iter().any(|v| (v - vals[0]).abs() > 1.0));
    }

    #[test]
    fn dimension_mismatch() {
        let (cfg, _) = surface();
        let g = RisGeometry::half_wavelength(8, 8).unwrap();
        let b = Direction::boresight();
        assert!(matches!(
            power_domain_array_factor(&cfg, &g, &b, &b),
            Err(Error::InvalidInput(_))
        ));
        assert!(power_domain_array_factor_vector(&cfg, &g, &b, &b).is_err());
        let a = UnimodularArray::from_row_major(2, 1, vec![0.0; 2]).unwrap();
        let c = UnimodularArray::from_row_major(1, 2, vec![0.0; 2]).unwrap();
        assert!(DualPolConfig::new(a, c).is_err());
    }

    #[test]
    fn element_gain_examples() {
        let p = ElementGainParams::default();
        assert_eq!(element_gain(&Direction::boresight(), &p), 8.0);
        let g = element_gain(&Direction::new(FRAC_PI_2, 0.0).unwrap(), &p);
        assert!((g + 4.0).abs() < 1e-12);
        let g = element_gain(&Direction::new(FRAC_PI_2, FRAC_PI_2).unwrap(), &p);
        assert!((g + 16.0).abs() < 1e-12);
        // floor: 12 (φ/Δφ)² saturates at 30 when the beamwidth is narrow
        let narrow = ElementGainParams {
            delta_phi: 0.1,
            delta_theta: 0.1,
            ..p
        };
        let g = element_gain(&Direction::new(1.0, 1.0).unwrap(), &narrow);
        assert_eq!(g, -22.0);
    }

    #[test]
    fn pattern_composition() {
        let (cfg, g) = surface();
        let p = ElementGainParams::default();
        let b = Direction::boresight();
        let t = total_radiation_pattern(&cfg, &g, &b, &b, &p).unwrap();
        assert!((t - (linear_to_db(256.0) + 16.0)).abs() < 1e-9);
        let (cfg, g) = single();
        let t = total_radiation_pattern(&cfg, &g, &b, &b, &p).unwrap();
        assert!((t - (linear_to_db(2.0) + 16.0)).abs() < 1e-12);
    }

    #[test]
    fn received_power_examples() {
        let (cfg, g) = single();
        let b = Direction::boresight();
        let iso = ElementGainParams::isotropic();
        let link = LinkBudget::default();
        let p = received_power(&link, &cfg, &g, &b, &b, &iso).unwrap();
        assert!((p - 2.0).abs() < 1e-14);

        let doubled = LinkBudget {
            transmit_power: 2.0,
            ..link
        };
        let d = Direction::new(0.3, -0.2).unwrap();
        let aoa = Direction::new(-0.5, 0.9).unwrap();
        let p1 = received_power(&link, &cfg, &g, &d, &aoa, &ElementGainParams::default()).unwrap();
        let p2 = received_power(&doubled, &cfg, &g, &d, &aoa, &ElementGainParams::default()).unwrap();
        assert!((p2 - 2.0 * p1).abs() < 1e-12 * p2);

        let (cfg, g) = surface();
        let p = received_power(&link, &cfg, &g, &d, &aoa, &iso).unwrap();
        let a = power_domain_array_factor(&cfg, &g, &d, &aoa).unwrap();
        assert!((p - 256.0).abs() < 1e-9);
        assert_eq!(p, a);

        for bad in [
            LinkBudget { bs_antennas: 0, ..link },
            LinkBudget { beta1: 0.0, ..link },
            LinkBudget { transmit_power: -1.0, ..link },
        ] {
            assert!(received_power(&bad, &cfg, &g, &d, &aoa, &iso).is_err());
        }
    }
}
