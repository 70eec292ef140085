//! The biphoton amplitude engine.
//!
//! Each enabled crystal n contributes
//!
//! ```text
//! f_n = (1 − e^{−iΔk_n·l_n})/(iΔk_n·l_n) · e^{i·Re ψ_n},
//! ```
//!
//! where ψ_n is the mismatch phase accumulated along the lattice up to the
//! front edge of crystal n (ψ_1 = 0, ψ_{n+1} = ψ_n + Δk_n·l_n + Σ Δk′_g·l′_g
//! over the gaps and disabled-crystal slots in between).  The imaginary part
//! of ψ tracks idler absorption, and the signal intensity is the coherent
//! double sum
//!
//! ```text
//! I = Σ_{n,m} f_n·f_m* · T_{nm},    T_{nm} = exp(−|Im ψ_n − Im ψ_m|),
//! ```
//!
//! i.e. cross terms between two emission sites are damped by the idler
//! amplitude transmission through the gaps separating them, while the
//! diagonal single-crystal rates stay undamped.  For lossless gaps this
//! reduces to I = |Σ f_n|², whose uniform-lattice closed form
//! sinc²(Δkl/2)·[sin(Nφ/2)/sin(φ/2)]² is provided as a cross-check.
//!
//! Grid nodes are independent; evaluation parallelizes over wavelength rows
//! and is bit-reproducible for any thread count.

use crate::dispersion::{GapMedium, UniaxialMedium};
use crate::phasematch::{
    self, interaction_volume_check, KinematicPoint, KinematicsError, PumpSpec, VolumeReport,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("element sequence must start and end with a crystal and alternate crystal/gap")]
    BadAlternation,
    #[error("lattice needs at least one crystal")]
    NoCrystals,
    #[error("crystal length must be > 0, got {0}")]
    BadCrystalLength(f64),
    #[error("gap length must be >= 0, got {0}")]
    BadGapLength(f64),
    #[error("crystal index {0} out of range (lattice has {1} crystals)")]
    CrystalIndex(usize, usize),
    #[error("grid axis must be non-empty and strictly increasing")]
    BadAxis,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PatternError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("all crystals disabled")]
    AllDisabled,
    #[error("gap medium of a sample does not match the ensemble base configuration")]
    MediaMismatch,
}

/// One nonlinear crystal of the lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrystalElement {
    /// Length l, metres.
    pub length: f64,
    /// Per-crystal deviation of the phase-matching angle from the pump-level
    /// cut angle, radians.  Shifts this crystal's Δk through the pump index.
    pub cut_angle_offset: f64,
    /// Disabled crystals emit nothing; their length is traversed as vacuum.
    pub enabled: bool,
}

impl CrystalElement {
    pub fn new(length: f64) -> Self {
        Self { length, cut_angle_offset: 0.0, enabled: true }
    }
}

/// One linear gap of the lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapElement {
    /// Length l′, metres (zero allowed).
    pub length: f64,
    pub medium: GapMedium,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Element {
    Crystal(CrystalElement),
    Gap(GapElement),
}

/// The full lattice: pump, crystal medium, and the alternating
/// crystal/gap/…/crystal element sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperlatticeConfig {
    pub pump: PumpSpec,
    pub crystal_medium: UniaxialMedium,
    pub elements: Vec<Element>,
}

impl SuperlatticeConfig {
    pub fn new(
        pump: PumpSpec,
        crystal_medium: UniaxialMedium,
        elements: Vec<Element>,
    ) -> Result<Self, ConfigError> {
        if elements.is_empty() {
            return Err(ConfigError::NoCrystals);
        }
        for (i, el) in elements.iter().enumerate() {
            match (i % 2, el) {
                (0, Element::Crystal(c)) => {
                    if !(c.length > 0.0) {
                        return Err(ConfigError::BadCrystalLength(c.length));
                    }
                }
                (1, Element::Gap(g)) => {
                    if !(g.length >= 0.0) {
                        return Err(ConfigError::BadGapLength(g.length));
                    }
                }
                _ => return Err(ConfigError::BadAlternation),
            }
        }
        if elements.len() % 2 == 0 {
            return Err(ConfigError::BadAlternation);
        }
        Ok(Self { pump, crystal_medium, elements })
    }

    /// Uniform lattice: n crystals of length l separated by equal gaps.
    pub fn uniform(
        pump: PumpSpec,
        crystal_medium: UniaxialMedium,
        n_crystals: usize,
        crystal_length: f64,
        gap_length: f64,
        gap_medium: GapMedium,
    ) -> Result<Self, ConfigError> {
        if n_crystals == 0 {
            return Err(ConfigError::NoCrystals);
        }
        let mut elements = Vec::with_capacity(2 * n_crystals - 1);
        for i in 0..n_crystals {
            if i > 0 {
                elements.push(Element::Gap(GapElement {
                    length: gap_length,
                    medium: gap_medium.clone(),
                }));
            }
            elements.push(Element::Crystal(CrystalElement::new(crystal_length)));
        }
        Self::new(pump, crystal_medium, elements)
    }

    pub fn n_crystals(&self) -> usize {
        self.elements.len() / 2 + 1
    }

    pub fn n_enabled(&self) -> usize {
        self.crystals().filter(|c| c.enabled).count()
    }

    pub fn crystals(&self) -> impl Iterator<Item = &CrystalElement> {
        self.elements.iter().filter_map(|e| match e {
            Element::Crystal(c) => Some(c),
            _ => None,
        })
    }

    pub fn crystals_mut(&mut self) -> impl Iterator<Item = &mut CrystalElement> {
        self.elements.iter_mut().filter_map(|e| match e {
            Element::Crystal(c) => Some(c),
            _ => None,
        })
    }

    pub fn gaps(&self) -> impl Iterator<Item = &GapElement> {
        self.elements.iter().filter_map(|e| match e {
            Element::Gap(g) => Some(g),
            _ => None,
        })
    }

    pub fn gaps_mut(&mut self) -> impl Iterator<Item = &mut GapElement> {
        self.elements.iter_mut().filter_map(|e| match e {
            Element::Gap(g) => Some(g),
            _ => None,
        })
    }

    /// Disable crystal `index` (0-based).  Its slot is traversed as vacuum.
    pub fn disable_crystal(&mut self, index: usize) -> Result<(), ConfigError> {
        let n = self.n_crystals();
        self.crystals_mut()
            .nth(index)
            .map(|c| c.enabled = false)
            .ok_or(ConfigError::CrystalIndex(index, n))
    }

    /// Medium of the first gap (vacuum for a single-crystal lattice).
    pub fn primary_gap_medium(&self) -> GapMedium {
        self.gaps().next().map(|g| g.medium.clone()).unwrap_or(GapMedium::Vacuum)
    }

    /// Nominal period (first crystal length, first gap length).
    pub fn nominal_period(&self) -> (f64, f64) {
        let l = self.crystals().next().map(|c| c.length).unwrap_or(0.0);
        let lg = self.gaps().next().map(|g| g.length).unwrap_or(0.0);
        (l, lg)
    }

    /// Kinematics at one node using the nominal period and primary gap medium.
    pub fn kinematic_point(
        &self,
        signal_wavelength: f64,
        external_signal_angle: f64,
    ) -> Result<KinematicPoint, KinematicsError> {
        phasematch::kinematics(
            &self.pump,
            &self.crystal_medium,
            &self.primary_gap_medium(),
            signal_wavelength,
            external_signal_angle,
            self.nominal_period(),
        )
    }

    /// Interaction-volume condition at the largest element sizes.
    pub fn interaction_volume(&self, max_external_angle: f64) -> VolumeReport {
        let lmax = self.crystals().map(|c| c.length).fold(0.0, f64::max);
        let gmax = self.gaps().map(|g| g.length).fold(0.0, f64::max);
        interaction_volume_check(lmax, gmax, self.pump.beam_diameter, max_external_angle)
    }

    /// True when every gap medium (and, with disabled crystals, vacuum) is lossless.
    pub fn is_lossless(&self) -> bool {
        self.gaps().all(|g| g.medium.is_lossless())
    }
}

/// Evaluation grid: wavelength × external-angle axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub wavelengths: Vec<f64>,
    pub angles: Vec<f64>,
}

impl Grid {
    pub fn new(wavelengths: Vec<f64>, angles: Vec<f64>) -> Result<Self, ConfigError> {
        for axis in [&wavelengths, &angles] {
            if axis.is_empty() || axis.windows(2).any(|w| w[1] <= w[0]) {
                return Err(ConfigError::BadAxis);
            }
        }
        Ok(Self { wavelengths, angles })
    }

    /// Uniform wavelength axis and an exactly mirror-symmetric angle axis
    /// over ±`max_angle` (so even patterns come out bit-symmetric).
    pub fn symmetric(
        lambda_min: f64,
        lambda_max: f64,
        n_lambda: usize,
        max_angle: f64,
        n_angles: usize,
    ) -> Result<Self, ConfigError> {
        if n_lambda == 0 || n_angles == 0 || lambda_max < lambda_min {
            return Err(ConfigError::BadAxis);
        }
        let wavelengths = if n_lambda == 1 {
            vec![lambda_min]
        } else {
            (0..n_lambda)
                .map(|j| lambda_min + (lambda_max - lambda_min) * j as f64 / (n_lambda - 1) as f64)
                .collect()
        };
        let angles = if n_angles == 1 {
            vec![0.0]
        } else {
            let c = (n_angles - 1) as f64 / 2.0;
            let h = max_angle / c;
            (0..n_angles).map(|j| (j as f64 - c) * h).collect()
        };
        Self::new(wavelengths, angles)
    }

    pub fn wavelength_step(&self) -> f64 {
        if self.wavelengths.len() < 2 {
            0.0
        } else {
            (self.wavelengths[self.wavelengths.len() - 1] - self.wavelengths[0])
                / (self.wavelengths.len() - 1) as f64
        }
    }
}

/// Normalized frequency-angular intensity over a grid, row-major [λ][θ].
#[derive(Debug, Clone, PartialEq)]
pub struct InterferencePattern {
    pub signal_wavelengths: Vec<f64>,
    pub external_angles: Vec<f64>,
    /// Intensities in [0, 1], row-major (wavelength index × angle index).
    pub intensity: Vec<f64>,
    /// Maximum raw intensity before normalization (0 for an all-zero pattern).
    pub normalization: f64,
    /// Marks grid nodes excluded for lacking a real idler angle.
    pub evanescent: Vec<bool>,
}

impl InterferencePattern {
    pub fn n_wavelengths(&self) -> usize {
        self.signal_wavelengths.len()
    }

    pub fn n_angles(&self) -> usize {
        self.external_angles.len()
    }

    pub fn row(&self, wavelength_index: usize) -> &[f64] {
        let w = self.n_angles();
        &self.intensity[wavelength_index * w..(wavelength_index + 1) * w]
    }

    pub fn value(&self, wavelength_index: usize, angle_index: usize) -> f64 {
        self.intensity[wavelength_index * self.n_angles() + angle_index]
    }

    /// Raw (pre-normalization) intensity at a node.
    pub fn raw_value(&self, wavelength_index: usize, angle_index: usize) -> f64 {
        self.value(wavelength_index, angle_index) * self.normalization
    }
}

/// Per-crystal phase-matching envelope factor (1 − e^{−iΔk·l})/(iΔk·l).
/// Exactly 1 at Δk → 0 (series limit below |Δk·l| < 1e-8); the modulus is
/// |sinc(Δk·l/2)|.
pub fn single_crystal_amplitude(delta_k: f64, length: f64) -> Complex64 {
    let x = delta_k * length;
    if x.abs() < 1e-8 {
        return Complex64::new(1.0, 0.0);
    }
    let (s, c) = x.sin_cos();
    Complex64::new(s / x, -(1.0 - c) / x)
}

/// sin(x)/x with the same small-argument guard as the amplitude factor.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0
    } else {
        x.sin() / x
    }
}

/// sin(Nφ/2)/sin(φ/2) with the removable singularities at φ = 2πm replaced
/// by their limit ±N (sign immaterial once squared).
fn dirichlet_ratio(phi: f64, n: usize) -> f64 {
    let m = (phi / TAU).round();
    let delta = phi - TAU * m;
    if delta.abs() < 1e-8 {
        n as f64
    } else {
        (n as f64 * phi / 2.0).sin() / (phi / 2.0).sin()
    }
}

/// Closed-form uniform-lattice intensity {sinc(Δk·l/2)·sin(Nφ/2)/sin(φ/2)}².
pub fn closed_form_intensity(delta_k: f64, phi: f64, n_crystals: usize, length: f64) -> f64 {
    let s = sinc(delta_k * length / 2.0);
    let d = dirichlet_ratio(phi, n_crystals);
    (s * d) * (s * d)
}

/// Closed form for the five-crystal lattice with crystal 3 removed (lossless
/// gaps): the four-term sum factorizes as (1 + e^{iφ})(1 + e^{iψ₄})·f, giving
///
/// ```text
/// I = 16·sinc²(Δk·l/2)·cos²(φ/2)·cos²(ψ₄/2),
/// φ  = Δk·l + Δk′·l′,
/// ψ₄ = φ + Δk·l + Δk′·(l + 2l′)      (slot of length l traversed as gap).
/// ```
pub fn defect_closed_form(point: &KinematicPoint, l: f64, l_prime: f64) -> f64 {
    let dk = point.delta_k_crystal;
    let dkg = point.delta_k_gap.re;
    let phi = dk * l + dkg * l_prime;
    let psi4 = phi + dk * l + dkg * (l + 2.0 * l_prime);
    let s = sinc(dk * l / 2.0);
    let a = (phi / 2.0).cos();
    let b = (psi4 / 2.0).cos();
    16.0 * (s * s) * (a * a) * (b * b)
}

/// Accumulated complex phases ψ_n, one per enabled crystal, evaluated with
/// the point's Δk/Δk′ (all gaps and disabled-crystal slots at the point's
/// gap mismatch).  Im ψ grows monotonically with accumulated idler absorption.
pub fn accumulated_phases(
    config: &SuperlatticeConfig,
    point: &KinematicPoint,
) -> Result<Vec<Complex64>, PatternError> {
    let base_kp = phasematch::pump_kz(&config.pump, &config.crystal_medium, 0.0)
        .map_err(KinematicsError::from)?;
    let mut psi = Complex64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(config.n_enabled());
    for el in &config.elements {
        match el {
            Element::Crystal(c) if c.enabled => {
                let shift = if c.cut_angle_offset == 0.0 {
                    0.0
                } else {
                    phasematch::pump_kz(&config.pump, &config.crystal_medium, c.cut_angle_offset)
                        .map_err(KinematicsError::from)?
                        - base_kp
                };
                out.push(psi);
                psi += Complex64::new((point.delta_k_crystal + shift) * c.length, 0.0);
            }
            Element::Crystal(c) => {
                // disabled slot traversed at the gap mismatch
                psi += point.delta_k_gap * c.length;
            }
            Element::Gap(g) => {
                psi += point.delta_k_gap * g.length;
            }
        }
    }
    if out.is_empty() {
        return Err(PatternError::AllDisabled);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// grid engine

/// Per-node kinematics shared by every lattice built on the same pump,
/// crystal medium, and gap media set.
pub(crate) struct KinematicGrid {
    pub n_angles: usize,
    /// Δk per node, row-major.
    pub dk: Vec<f64>,
    /// Δk′ per medium per node: dkg[medium][node].
    pub dkg: Vec<Vec<Complex64>>,
    pub evanescent: Vec<bool>,
    pub media: Vec<GapMedium>,
}

/// Ordered walk of the lattice for the per-node amplitude sum.
pub(crate) struct AmplitudePlan {
    ops: Vec<PlanOp>,
    n_emitters: usize,
}

enum PlanOp {
    /// Enabled crystal: emit, then traverse with its own Δk.
    Emit { length: f64, pump_shift: f64 },
    /// Gap or disabled-crystal slot: advance ψ at a gap medium's mismatch.
    Advance { length: f64, medium: usize },
}

fn medium_index(media: &mut Vec<GapMedium>, m: &GapMedium, grow: bool) -> Option<usize> {
    if let Some(i) = media.iter().position(|x| x == m) {
        return Some(i);
    }
    if grow {
        media.push(m.clone());
        Some(media.len() - 1)
    } else {
        None
    }
}

impl AmplitudePlan {
    /// Builds the walk; new gap media are appended to `media` when `grow` is
    /// set (grid construction) and must already be present otherwise
    /// (ensemble samples reusing a base grid).
    pub(crate) fn build(
        config: &SuperlatticeConfig,
        media: &mut Vec<GapMedium>,
        grow: bool,
    ) -> Result<Self, PatternError> {
        let base_kp = phasematch::pump_kz(&config.pump, &config.crystal_medium, 0.0)
            .map_err(KinematicsError::from)?;
        let mut ops = Vec::with_capacity(config.elements.len());
        let mut n_emitters = 0;
        for el in &config.elements {
            match el {
                Element::Crystal(c) if c.enabled => {
                    let pump_shift = if c.cut_angle_offset == 0.0 {
                        0.0
                    } else {
                        phasematch::pump_kz(
                            &config.pump,
                            &config.crystal_medium,
                            c.cut_angle_offset,
                        )
                        .map_err(KinematicsError::from)?
                            - base_kp
                    };
                    ops.push(PlanOp::Emit { length: c.length, pump_shift });
                    n_emitters += 1;
                }
                Element::Crystal(c) => {
                    let idx = medium_index(media, &GapMedium::Vacuum, grow)
                        .ok_or(PatternError::MediaMismatch)?;
                    ops.push(PlanOp::Advance { length: c.length, medium: idx });
                }
                Element::Gap(g) => {
                    let idx = medium_index(media, &g.medium, grow)
                        .ok_or(PatternError::MediaMismatch)?;
                    ops.push(PlanOp::Advance { length: g.length, medium: idx });
                }
            }
        }
        if n_emitters == 0 {
            return Err(PatternError::AllDisabled);
        }
        Ok(Self { ops, n_emitters })
    }
}

pub(crate) fn kinematic_grid(
    config: &SuperlatticeConfig,
    grid: &Grid,
) -> Result<KinematicGrid, PatternError> {
    let mut media = Vec::new();
    AmplitudePlan::build(config, &mut media, true)?;
    let pump = &config.pump;
    let crystal = &config.crystal_medium;
    let kp = phasematch::pump_kz(pump, crystal, 0.0).map_err(KinematicsError::from)?;
    let n_theta = grid.angles.len();
    let n_media = media.len();

    struct Row {
        dk: Vec<f64>,
        dkg: Vec<Vec<Complex64>>,
        evan: Vec<bool>,
    }

    let rows: Result<Vec<Row>, PatternError> = grid
        .wavelengths
        .par_iter()
        .map(|&lam| {
            let mut row = Row {
                dk: vec![0.0; n_theta],
                dkg: vec![vec![Complex64::new(0.0, 0.0); n_theta]; n_media],
                evan: vec![false; n_theta],
            };
            // signal index in each gap medium fixes q at a given angle
            let ns_gap: Vec<f64> = media
                .iter()
                .map(|m| m.complex_index(lam).map(|n| n.re))
                .collect::<Result<_, _>>()
                .map_err(KinematicsError::from)?;
            for (j, &th) in grid.angles.iter().enumerate() {
                // q referenced to the primary (first) medium's signal index;
                // transverse momentum is conserved across all interfaces
                let q = TAU * ns_gap.first().copied().unwrap_or(1.0) / lam * th.sin();
                match phasematch::crystal_parts(kp, crystal, lam, pump.wavelength, q) {
                    Ok(parts) => {
                        row.dk[j] = parts.delta_k_crystal;
                        for (mi, m) in media.iter().enumerate() {
                            match phasematch::gap_mismatch(
                                m,
                                pump.wavelength,
                                lam,
                                parts.idler_wavelength,
                                q,
                            ) {
                                Ok(v) => row.dkg[mi][j] = v,
                                Err(KinematicsError::Evanescent { .. }) => {
                                    row.evan[j] = true;
                                }
                                Err(e) => return Err(e.into()),
                            }
                        }
                    }
                    Err(KinematicsError::Evanescent { .. }) => row.evan[j] = true,
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(row)
        })
        .collect();
    let rows = rows?;

    let n_nodes = grid.wavelengths.len() * n_theta;
    let mut out = KinematicGrid {
        n_angles: n_theta,
        dk: Vec::with_capacity(n_nodes),
        dkg: vec![Vec::with_capacity(n_nodes); n_media],
        evanescent: Vec::with_capacity(n_nodes),
        media,
    };
    for row in rows {
        out.dk.extend(row.dk);
        out.evanescent.extend(row.evan);
        for (mi, col) in row.dkg.into_iter().enumerate() {
            out.dkg[mi].extend(col);
        }
    }
    Ok(out)
}

/// Raw (unnormalized) intensities for one lattice over a precomputed grid.
pub(crate) fn raw_intensities(
    plan: &AmplitudePlan,
    kin: &KinematicGrid,
) -> Vec<f64> {
    let n_nodes = kin.dk.len();
    let mut out = vec![0.0; n_nodes];
    let chunk = kin.n_angles.max(1);
    out.par_chunks_mut(chunk).enumerate().for_each(|(row, slot)| {
        let base = row * chunk;
        let mut fs: Vec<(Complex64, f64)> = Vec::with_capacity(plan.n_emitters);
        for (off, v) in slot.iter_mut().enumerate() {
            let node = base + off;
            if kin.evanescent[node] {
                continue;
            }
            let dk = kin.dk[node];
            fs.clear();
            let mut psi_re = 0.0;
            let mut psi_im = 0.0;
            for op in &plan.ops {
                match *op {
                    PlanOp::Emit { length, pump_shift } => {
                        let dk_n = dk + pump_shift;
                        let amp = single_crystal_amplitude(dk_n, length);
                        let (s, c) = psi_re.sin_cos();
                        fs.push((amp * Complex64::new(c, s), psi_im));
                        psi_re += dk_n * length;
                    }
                    PlanOp::Advance { length, medium } => {
                        let dkg = kin.dkg[medium][node];
                        psi_re += dkg.re * length;
                        psi_im += dkg.im * length;
                    }
                }
            }
            let mut acc = 0.0;
            for (i, &(fi, imi)) in fs.iter().enumerate() {
                acc += fi.norm_sqr();
                for &(fj, imj) in &fs[i + 1..] {
                    let t = if imi == imj { 1.0 } else { (-(imi - imj).abs()).exp() };
                    acc += 2.0 * (fi * fj.conj()).re * t;
                }
            }
            *v = acc;
        }
    });
    out
}

pub(crate) fn normalize_raw(
    raw: Vec<f64>,
    kin: &KinematicGrid,
    grid: &Grid,
) -> InterferencePattern {
    let max = raw.iter().cloned().fold(0.0, f64::max);
    let intensity = if max > 0.0 {
        raw.into_iter().map(|v| v / max).collect()
    } else {
        raw
    };
    InterferencePattern {
        signal_wavelengths: grid.wavelengths.clone(),
        external_angles: grid.angles.clone(),
        intensity,
        normalization: max,
        evanescent: kin.evanescent.clone(),
    }
}

/// Frequency-angular intensity pattern of the lattice, normalized to its
/// maximum.
pub fn pattern(config: &SuperlatticeConfig, grid: &Grid) -> Result<InterferencePattern, PatternError> {
    let kin = kinematic_grid(config, grid)?;
    let plan = AmplitudePlan::build(config, &mut kin.media.clone(), false)?;
    let raw = raw_intensities(&plan, &kin);
    Ok(normalize_raw(raw, &kin, grid))
}

/// Closed-form fit context for a uniform lattice: Δk and φ along one
/// wavelength row, used by the fringe-phase fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeModel {
    pub n_crystals: usize,
    pub crystal_length: f64,
    /// Δk per angle sample, 1/m.
    pub delta_k: Vec<f64>,
    /// Re φ per angle sample, radians.
    pub phi: Vec<f64>,
    pub angles: Vec<f64>,
}

/// Builds the closed-form model for a *uniform* lattice (equal enabled
/// crystals, equal gaps of one medium, no per-crystal offsets) at a fixed
/// signal wavelength over the given angle axis.
pub fn fringe_model(
    config: &SuperlatticeConfig,
    signal_wavelength: f64,
    angles: &[f64],
) -> Result<FringeModel, PatternError> {
    let uniform = config.crystals().all(|c| c.enabled && c.cut_angle_offset == 0.0)
        && config
            .crystals()
            .all(|c| c.length == config.nominal_period().0)
        && config.gaps().all(|g| {
            g.length == config.nominal_period().1 && g.medium == config.primary_gap_medium()
        });
    if !uniform {
        return Err(ConfigError::BadAlternation.into());
    }
    let (l, _) = config.nominal_period();
    let mut delta_k = Vec::with_capacity(angles.len());
    let mut phi = Vec::with_capacity(angles.len());
    for &th in angles {
        let p = config.kinematic_point(signal_wavelength, th)?;
        delta_k.push(p.delta_k_crystal);
        phi.push(p.phi.re);
    }
    Ok(FringeModel {
        n_crystals: config.n_crystals(),
        crystal_length: l,
        delta_k,
        phi,
        angles: angles.to_vec(),
    })
}
