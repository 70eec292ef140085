//! Kinematics at one (λ_s, θ_s) node of the frequency-angular grid.
//!
//! Conventions (type-I, negative uniaxial crystal):
//! * the pump is a monochromatic plane wave along z, an extraordinary wave at
//!   `cut_angle` to the optic axis, so k_p^z = 2π·n_e(θ_c, λ_p)/λ_p;
//! * signal and idler are ordinary waves;
//! * crystal faces are planar and normal to z, so the transverse momentum
//!   q = k·sinθ is conserved across every interface (Snell's law);
//! * Δk = k_p^z − k_s^z − k_i^z inside the crystal, Δk′ the same combination
//!   with gap-medium indices.  Gap absorption acts on the idler only; the
//!   imaginary part of Δk′ is defined as +Im k_i′^z ≥ 0, the idler amplitude
//!   attenuation rate per metre, so accumulated phases carry a non-negative,
//!   growing imaginary part.

use crate::dispersion::{DispersionError, GapMedium, UniaxialMedium, BAND_MAX};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error(transparent)]
    Dispersion(#[from] DispersionError),
    #[error("signal wavelength {0:.4e} m must exceed the pump wavelength")]
    SignalBelowPump(f64),
    #[error("external signal angle {0:.4} rad exceeds the 5 degree support")]
    AngleTooLarge(f64),
    #[error("no real idler angle satisfies transverse matching at ({signal_wavelength:.4e} m, {external_signal_angle:.4} rad)")]
    Evanescent {
        signal_wavelength: f64,
        external_signal_angle: f64,
    },
    #[error("no collinear phase-matching root in the {lo:.3e}-{hi:.3e} m search band")]
    NoPhaseMatching { lo: f64, hi: f64 },
}

/// Pump laser and beam geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PumpSpec {
    /// Vacuum wavelength, metres.
    pub wavelength: f64,
    /// 1/e² beam diameter d, metres.
    pub beam_diameter: f64,
    /// Angle θ_c between pump propagation and the optic axis, radians.
    pub cut_angle: f64,
}

impl PumpSpec {
    pub fn new(wavelength: f64, beam_diameter: f64, cut_angle: f64) -> Self {
        Self { wavelength, beam_diameter, cut_angle }
    }
}

/// Everything the amplitude engine needs at one (λ_s, θ_s) node.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicPoint {
    pub signal_wavelength: f64,
    pub idler_wavelength: f64,
    pub external_signal_angle: f64,
    pub internal_signal_angle: f64,
    pub internal_idler_angle: f64,
    pub external_idler_angle: f64,
    /// Δk inside the crystal, 1/m.
    pub delta_k_crystal: f64,
    /// Δk′ in the gap, 1/m; Im ≥ 0 is the idler amplitude attenuation rate.
    pub delta_k_gap: Complex64,
    /// φ = Δk·l + Δk′·l′ for the nominal period supplied to [`kinematics`].
    pub phi: Complex64,
}

/// Conjugate idler wavelength from energy conservation.
pub fn idler_wavelength(pump_wavelength: f64, signal_wavelength: f64) -> f64 {
    1.0 / (1.0 / pump_wavelength - 1.0 / signal_wavelength)
}

pub(crate) fn pump_kz(
    pump: &PumpSpec,
    crystal: &UniaxialMedium,
    cut_angle_offset: f64,
) -> Result<f64, DispersionError> {
    let n = crystal.extraordinary_index_at_angle(pump.wavelength, pump.cut_angle + cut_angle_offset)?;
    Ok(TAU * n / pump.wavelength)
}

/// Longitudinal mismatches at a node, split out so grid evaluation can reuse
/// the crystal part across gap media.
pub(crate) struct NodeParts {
    pub q: f64,
    pub delta_k_crystal: f64,
    pub k_signal_crystal: f64,
    pub k_idler_crystal: f64,
    pub idler_wavelength: f64,
}

pub(crate) fn crystal_parts(
    pump_kz: f64,
    crystal: &UniaxialMedium,
    signal_wavelength: f64,
    pump_wavelength: f64,
    q: f64,
) -> Result<NodeParts, KinematicsError> {
    if signal_wavelength <= pump_wavelength {
        return Err(KinematicsError::SignalBelowPump(signal_wavelength));
    }
    let lam_i = idler_wavelength(pump_wavelength, signal_wavelength);
    let ks = TAU * crystal.ordinary_index(signal_wavelength)? / signal_wavelength;
    let ki = TAU * crystal.ordinary_index(lam_i)? / lam_i;
    let ksz2 = ks * ks - q * q;
    let kiz2 = ki * ki - q * q;
    if ksz2 <= 0.0 || kiz2 <= 0.0 {
        return Err(KinematicsError::Evanescent {
            signal_wavelength,
            external_signal_angle: f64::NAN,
        });
    }
    Ok(NodeParts {
        q,
        delta_k_crystal: pump_kz - ksz2.sqrt() - kiz2.sqrt(),
        k_signal_crystal: ks,
        k_idler_crystal: ki,
        idler_wavelength: lam_i,
    })
}

/// Gap mismatch Δk′ for one medium.  Pump and signal are treated as
/// unabsorbed; the idler's complex longitudinal wavevector supplies the
/// attenuation, entering with the Im ≥ 0 sign convention.
pub(crate) fn gap_mismatch(
    medium: &GapMedium,
    pump_wavelength: f64,
    signal_wavelength: f64,
    idler_wavelength: f64,
    q: f64,
) -> Result<Complex64, KinematicsError> {
    let np = medium.complex_index(pump_wavelength)?.re;
    let ns = medium.complex_index(signal_wavelength)?.re;
    let ni = medium.complex_index(idler_wavelength)?;
    let kp = TAU * np / pump_wavelength;
    let ks = TAU * ns / signal_wavelength;
    let ki = Complex64::new(TAU / idler_wavelength, 0.0) * ni;
    let ksz2 = ks * ks - q * q;
    if ksz2 <= 0.0 {
        return Err(KinematicsError::Evanescent {
            signal_wavelength,
            external_signal_angle: f64::NAN,
        });
    }
    let kiz = (ki * ki - q * q).sqrt();
    if kiz.re <= 0.0 {
        return Err(KinematicsError::Evanescent {
            signal_wavelength: idler_wavelength,
            external_signal_angle: f64::NAN,
        });
    }
    Ok(Complex64::new(kp - ksz2.sqrt() - kiz.re, kiz.im))
}

/// Full kinematics at one grid node.  `nominal_period` = (crystal length l,
/// gap length l′) defines the φ recorded on the point.
pub fn kinematics(
    pump: &PumpSpec,
    crystal: &UniaxialMedium,
    gap_medium: &GapMedium,
    signal_wavelength: f64,
    external_signal_angle: f64,
    nominal_period: (f64, f64),
) -> Result<KinematicPoint, KinematicsError> {
    if external_signal_angle.abs() > 5f64.to_radians() {
        return Err(KinematicsError::AngleTooLarge(external_signal_angle));
    }
    // transverse momentum from the external (gap-side) signal angle
    let ns_gap = gap_medium.complex_index(signal_wavelength)?.re;
    let q = TAU * ns_gap / signal_wavelength * external_signal_angle.sin();
    let kp = pump_kz(pump, crystal, 0.0)?;
    let parts = crystal_parts(kp, crystal, signal_wavelength, pump.wavelength, q)?;
    let dkg = gap_mismatch(
        gap_medium,
        pump.wavelength,
        signal_wavelength,
        parts.idler_wavelength,
        q,
    )
    .map_err(|e| match e {
        KinematicsError::Evanescent { signal_wavelength, .. } => KinematicsError::Evanescent {
            signal_wavelength,
            external_signal_angle,
        },
        other => other,
    })?;

    let sin_int_s = q / parts.k_signal_crystal;
    let sin_int_i = q / parts.k_idler_crystal;
    let ni_gap = gap_medium.complex_index(parts.idler_wavelength)?.re;
    let sin_ext_i = q / (TAU * ni_gap / parts.idler_wavelength);
    if sin_int_i.abs() > 1.0 || sin_ext_i.abs() > 1.0 {
        return Err(KinematicsError::Evanescent {
            signal_wavelength,
            external_signal_angle,
        });
    }
    let (l, l_gap) = nominal_period;
    let phi = Complex64::new(parts.delta_k_crystal * l, 0.0) + dkg * l_gap;
    Ok(KinematicPoint {
        signal_wavelength,
        idler_wavelength: parts.idler_wavelength,
        external_signal_angle,
        internal_signal_angle: sin_int_s.asin(),
        internal_idler_angle: sin_int_i.asin(),
        external_idler_angle: sin_ext_i.asin(),
        delta_k_crystal: parts.delta_k_crystal,
        delta_k_gap: dkg,
        phi,
    })
}

/// Collinear mismatch Δk(λ_s, θ_s = 0), used by the root finder.
fn collinear_mismatch(
    pump: &PumpSpec,
    crystal: &UniaxialMedium,
    signal_wavelength: f64,
) -> Result<f64, KinematicsError> {
    let kp = pump_kz(pump, crystal, 0.0)?;
    Ok(crystal_parts(kp, crystal, signal_wavelength, pump.wavelength, 0.0)?.delta_k_crystal)
}

/// Signal wavelength of collinear phase matching, Δk(λ_s, 0) = 0, found by
/// bracketed bisection over the 560–660 nm search band (clipped so the
/// conjugate idler stays inside the dispersion band).
pub fn collinear_signal_wavelength(
    pump: &PumpSpec,
    crystal: &UniaxialMedium,
) -> Result<f64, KinematicsError> {
    let band_lo = 560e-9f64;
    let band_hi = 660e-9f64;
    // idler in band: 1/lam_i = 1/lam_p - 1/lam_s <= 1/BAND_MAX
    let idler_limit = 1.0 / (1.0 / pump.wavelength - 1.0 / BAND_MAX);
    let lo = band_lo.max(idler_limit * (1.0 + 1e-9));
    let hi = band_hi;

    const SCAN: usize = 120;
    let f = |lam: f64| collinear_mismatch(pump, crystal, lam);
    let mut prev: Option<(f64, f64)> = None;
    let mut bracket = None;
    for i in 0..=SCAN {
        let lam = lo + (hi - lo) * i as f64 / SCAN as f64;
        let Ok(v) = f(lam) else { continue };
        if let Some((plam, pv)) = prev {
            if pv == 0.0 {
                return Ok(plam);
            }
            if pv * v <= 0.0 {
                bracket = Some((plam, pv, lam));
                break;
            }
        }
        prev = Some((lam, v));
    }
    let Some((mut a, mut fa, mut b)) = bracket else {
        return Err(KinematicsError::NoPhaseMatching { lo, hi });
    };
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid)?;
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let root = 0.5 * (a + b);
    let residual = f(root)?;
    if residual.abs() >= 1e-3 {
        return Err(KinematicsError::NoPhaseMatching { lo, hi });
    }
    Ok(root)
}

/// Result of the interaction-volume condition (2l + l′)·tanθ ≪ d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeReport {
    /// r = (2l + l′)·tan(θ_max)/d.
    pub ratio: f64,
    /// Pass/warn threshold on r; "much less than" is operationalized as 0.1.
    pub threshold: f64,
}

impl VolumeReport {
    pub fn pass(&self) -> bool {
        self.ratio <= self.threshold
    }
}

/// Check the interaction-volume condition for the largest crystal/gap in the
/// lattice at the largest detected angle.
pub fn interaction_volume_check(
    max_crystal_length: f64,
    max_gap_length: f64,
    beam_diameter: f64,
    max_external_angle: f64,
) -> VolumeReport {
    VolumeReport {
        ratio: (2.0 * max_crystal_length + max_gap_length) * max_external_angle.tan()
            / beam_diameter,
        threshold: 0.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::GasModel;
    use approx::assert_relative_eq;

    fn pump_5034() -> PumpSpec {
        PumpSpec::new(532e-9, 3e-3, 50.34f64.to_radians())
    }

    const PERIOD: (f64, f64) = (1e-3, 8.2e-3);

    #[test]
    fn collinear_solution_at_both_operating_points() {
        let crystal = UniaxialMedium::lithium_niobate();
        // golden values from an independent bisection on the same published
        // coefficient set
        let ls = collinear_signal_wavelength(&pump_5034(), &crystal).unwrap();
        assert_relative_eq!(ls, 6.108705998559951e-7, max_relative = 1e-10);
        let pump2 = PumpSpec::new(532e-9, 3e-3, 50.10f64.to_radians());
        let ls2 = collinear_signal_wavelength(&pump2, &crystal).unwrap();
        assert_relative_eq!(ls2, 6.089739919679876e-7, max_relative = 1e-10);
        // monotone: smaller cut angle, smaller signal wavelength
        assert!(ls2 < ls);
    }

    #[test]
    fn collinear_point_has_zero_mismatch_and_angles() {
        let crystal = UniaxialMedium::lithium_niobate();
        let pump = pump_5034();
        let ls = collinear_signal_wavelength(&pump, &crystal).unwrap();
        let p = kinematics(&pump, &crystal, &GapMedium::Vacuum, ls, 0.0, PERIOD).unwrap();
        assert!(p.delta_k_crystal.abs() < 1e-3, "dk = {}", p.delta_k_crystal);
        assert_eq!(p.internal_signal_angle, 0.0);
        assert_eq!(p.internal_idler_angle, 0.0);
        assert_eq!(p.external_idler_angle, 0.0);
    }

    #[test]
    fn kinematics_golden_point() {
        // independent scalar recomputation of k_p^z - k_s^z - k_i^z at
        // (610.4 nm, 0.5 deg external)
        let crystal = UniaxialMedium::lithium_niobate();
        let p = kinematics(
            &pump_5034(),
            &crystal,
            &GapMedium::Vacuum,
            610.4e-9,
            0.5f64.to_radians(),
            PERIOD,
        )
        .unwrap();
        assert_relative_eq!(p.delta_k_crystal, 354.5971300173551, max_relative = 1e-9);
        assert_relative_eq!(p.delta_k_gap.re, 3053.872222021688, max_relative = 1e-9);
        assert_eq!(p.delta_k_gap.im, 0.0);
        assert_eq!(p.phi.im, 0.0);
    }

    #[test]
    fn energy_and_momentum_conservation() {
        let crystal = UniaxialMedium::lithium_niobate();
        let pump = pump_5034();
        for lam in [602e-9, 607e-9, 610.4e-9, 615e-9] {
            for deg in [-0.85, -0.3, 0.0, 0.42, 0.85] {
                let p = kinematics(
                    &pump,
                    &crystal,
                    &GapMedium::Vacuum,
                    lam,
                    (deg as f64).to_radians(),
                    PERIOD,
                )
                .unwrap();
                // 1/lam_s + 1/lam_i = 1/lam_p to 1e-12 relative
                let inv = 1.0 / p.signal_wavelength + 1.0 / p.idler_wavelength;
                assert_relative_eq!(inv, 1.0 / pump.wavelength, max_relative = 1e-12);
                // transverse matching inside the crystal to 1e-10 relative
                let ks = TAU * crystal.ordinary_index(lam).unwrap() / lam;
                let ki = TAU * crystal.ordinary_index(p.idler_wavelength).unwrap()
                    / p.idler_wavelength;
                let qs = ks * p.internal_signal_angle.sin();
                let qi = ki * p.internal_idler_angle.sin();
                if qs != 0.0 {
                    assert_relative_eq!(qs, qi, max_relative = 1e-10);
                }
                // Snell at the crystal/gap interface to 1e-12
                let ns = crystal.ordinary_index(lam).unwrap();
                assert_relative_eq!(
                    ns * p.internal_signal_angle.sin(),
                    p.external_signal_angle.sin(),
                    max_relative = 1e-12,
                    epsilon = 1e-18
                );
            }
        }
    }

    #[test]
    fn kinematics_even_in_angle() {
        let crystal = UniaxialMedium::lithium_niobate();
        let pump = pump_5034();
        let a = kinematics(&pump, &crystal, &GapMedium::Vacuum, 610.4e-9, 0.31e-2, PERIOD).unwrap();
        let b =
            kinematics(&pump, &crystal, &GapMedium::Vacuum, 610.4e-9, -0.31e-2, PERIOD).unwrap();
        assert_eq!(a.delta_k_crystal, b.delta_k_crystal);
        assert_eq!(a.delta_k_gap, b.delta_k_gap);
        assert_eq!(a.phi, b.phi);
        assert_eq!(a.internal_signal_angle, -b.internal_signal_angle);
        assert_eq!(a.external_idler_angle, -b.external_idler_angle);
    }

    #[test]
    fn phi_quadratic_in_angle_within_one_percent() {
        // least-squares quadratic over |theta| <= 0.85 deg; residual < 1% of range
        let crystal = UniaxialMedium::lithium_niobate();
        let pump = pump_5034();
        let n = 201;
        let mut ths = Vec::new();
        let mut phis = Vec::new();
        for j in 0..n {
            let th = (-0.85 + 1.7 * j as f64 / (n - 1) as f64).to_radians();
            let p =
                kinematics(&pump, &crystal, &GapMedium::Vacuum, 610.4e-9, th, PERIOD).unwrap();
            ths.push(th);
            phis.push(p.phi.re);
        }
        // fit a + b*th^2 (odd term vanishes by symmetry)
        let (mut s0, mut s2, mut s4, mut sy, mut sy2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (&t, &y) in ths.iter().zip(&phis) {
            let t2 = t * t;
            s0 += 1.0;
            s2 += t2;
            s4 += t2 * t2;
            sy += y;
            sy2 += y * t2;
        }
        let det = s0 * s4 - s2 * s2;
        let a = (s4 * sy - s2 * sy2) / det;
        let b = (s0 * sy2 - s2 * sy) / det;
        let range = phis.iter().cloned().fold(f64::MIN, f64::max)
            - phis.iter().cloned().fold(f64::MAX, f64::min);
        let max_resid = ths
            .iter()
            .zip(&phis)
            .map(|(&t, &y)| (y - a - b * t * t).abs())
            .fold(0.0, f64::max);
        assert!(
            max_resid < 0.01 * range,
            "residual {max_resid} vs range {range}"
        );
    }

    #[test]
    fn gas_gap_gives_complex_mismatch_with_positive_im() {
        let crystal = UniaxialMedium::lithium_niobate();
        let pump = PumpSpec::new(532e-9, 3e-3, 50.10f64.to_radians());
        let gas = GapMedium::Gas(GasModel::co2(2e-4));
        let p = kinematics(&pump, &crystal, &gas, 608.9e-9, 0.2e-2, PERIOD).unwrap();
        assert!(p.delta_k_gap.im > 0.0);
        assert!(p.phi.im > 0.0);
        // with a purely real gap index the mismatch is purely real
        let vac = kinematics(&pump, &crystal, &GapMedium::Vacuum, 608.9e-9, 0.2e-2, PERIOD)
            .unwrap();
        assert_eq!(vac.delta_k_gap.im, 0.0);
    }

    #[test]
    fn idler_out_of_band_is_error() {
        let crystal = UniaxialMedium::lithium_niobate();
        // 590 nm signal puts the idler at 5.35 um, outside the band
        let err = kinematics(
            &pump_5034(),
            &crystal,
            &GapMedium::Vacuum,
            590e-9,
            0.0,
            PERIOD,
        )
        .unwrap_err();
        assert!(matches!(err, KinematicsError::Dispersion(_)));
    }

    #[test]
    fn angle_beyond_support_is_error() {
        let crystal = UniaxialMedium::lithium_niobate();
        let err = kinematics(
            &pump_5034(),
            &crystal,
            &GapMedium::Vacuum,
            610.4e-9,
            6f64.to_radians(),
            PERIOD,
        )
        .unwrap_err();
        assert!(matches!(err, KinematicsError::AngleTooLarge(_)));
    }

    #[test]
    fn no_phase_matching_reported() {
        let crystal = UniaxialMedium::lithium_niobate();
        // tiny cut angle: pump index far too high for any root in the band
        let pump = PumpSpec::new(532e-9, 3e-3, 0.05);
        assert!(matches!(
            collinear_signal_wavelength(&pump, &crystal),
            Err(KinematicsError::NoPhaseMatching { .. })
        ));
    }

    #[test]
    fn interaction_volume_examples() {
        // l = 1 mm, l' = 8.2 mm, d = 3 mm, theta = 0.85 deg -> r ~ 0.0505
        let r = interaction_volume_check(1e-3, 8.2e-3, 3e-3, 0.85f64.to_radians());
        assert!((r.ratio - 0.0505).abs() < 5e-4, "ratio {}", r.ratio);
        assert!(r.pass());
        let r0 = interaction_volume_check(1e-3, 8.2e-3, 3e-3, 0.0);
        assert_eq!(r0.ratio, 0.0);
        assert!(r0.pass());
        // l' = 100 mm, d = 1 mm: r ~ 1.5, warn
        let rw = interaction_volume_check(1e-3, 100e-3, 1e-3, 0.85f64.to_radians());
        assert!(rw.ratio > 1.0 && !rw.pass());
    }
}
