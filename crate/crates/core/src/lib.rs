//! Broad-beam configurations for dual-polarized reflecting surfaces.
//!
//! A surface whose two per-polarization configuration matrices form a Golay
//! complementary array pair has a power-domain array factor equal to the
//! element count in every direction. This crate builds such pairs from
//! one-dimensional Golay seeds, checks complementarity through
//! autocorrelations, and evaluates the resulting patterns on angular grids.
//!
//! * [`golay`]: sequences, autocorrelation, spectra, catalog and exhaustive search
//! * [`array`]: 2D autocorrelation, complementarity and the two seed constructions
//! * [`ris`]: geometry, steering vectors, array factor, element gain, received power
//! * [`sweep`]: grids, pattern maps and ripple statistics
//! * [`io`], [`heatmap`]: file formats, CSV/JSON export and images

pub mod array;
pub mod error;
pub mod golay;
pub mod heatmap;
pub mod io;
pub mod ris;
pub mod sweep;

pub use array::{
    acf2d, construct, construct_concat, construct_stacked, is_golay_array_pair, psd2d,
    CorrelationSurface, Layout, UnimodularArray,
};
pub use error::{Error, Result};
pub use golay::{
    acf, is_golay_pair, known_golay_pair, psd, psd_direct, search_golay_pairs, transform_pair,
    Alphabet, ComplementarityReport, CorrelationFunction, PairTransform, SearchBudget,
    UnimodularSequence,
};
pub use ris::{
    element_gain, fold_config, per_polarization_array_factor, power_domain_array_factor,
    power_domain_array_factor_vector, received_power, relative_phase_shifts, steering_vector,
    total_radiation_pattern, unfold_config, Direction, DualPolConfig, ElementGainParams,
    LinkBudget, Polarization, RisGeometry,
};
pub use sweep::{make_grid, ripple_stats, sweep, AngleGrid, PatternMap, Quantity, RippleStats};
