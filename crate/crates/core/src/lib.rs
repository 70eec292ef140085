//! Nonlinear-interference engine for SPDC crystal superlattices.
//!
//! A superlattice of N nonlinear crystals separated by linear gaps, pumped by
//! a single cw laser, emits signal photons whose frequency-angular spectrum
//! carries multi-source interference fringes.  This crate computes those
//! spectra from first principles:
//!
//! * [`dispersion`] — refractive-index models (Sellmeier sets for the uniaxial
//!   crystal, Lorentz-line gas model for absorbing gaps),
//! * [`phasematch`] — per-node kinematics: energy conservation, transverse
//!   momentum matching, Snell refraction, and the longitudinal mismatches
//!   Δk (crystal) and Δk′ (gap),
//! * [`interference`] — per-crystal biphoton amplitudes, coherent summation
//!   over arbitrary lattice configurations with idler absorption between
//!   crystals, and the closed-form cross-checks,
//! * [`analysis`] — cross-sections, fringe peaks/widths/visibility, phase
//!   shift between patterns, slope gain,
//! * [`perturb`] — deterministic tolerance Monte Carlo over cut-angle,
//!   crystal-length, and gap-length errors.
//!
//! All computations are pure functions of immutable inputs; grid evaluations
//! parallelize over nodes with bit-reproducible results regardless of thread
//! count.

pub mod analysis;
pub mod dispersion;
pub mod interference;
pub mod perturb;
pub mod phasematch;

pub use analysis::{
    cross_section, fringe_metrics, fringe_metrics_windowed, phase_shift, slope_gain,
    width_ratio_curve, window_visibility, AnalysisError, AnalysisWindow, CrossSection,
    FringeMetrics, PhaseShift,
};
pub use dispersion::{DispersionError, GapMedium, GasModel, SellmeierTerm, UniaxialMedium};
pub use interference::{
    accumulated_phases, closed_form_intensity, defect_closed_form, fringe_model, pattern,
    single_crystal_amplitude, ConfigError, CrystalElement, Element, FringeModel, GapElement,
    Grid, InterferencePattern, PatternError, SuperlatticeConfig,
};
pub use perturb::{ensemble_pattern, sample_configs, PerturbationSpec, ToleranceDistribution};
pub use phasematch::{
    collinear_signal_wavelength, interaction_volume_check, kinematics, KinematicPoint,
    KinematicsError, PumpSpec, VolumeReport,
};
