//! Refractive-index models for the nonlinear crystal and the gap media.
//!
//! The uniaxial crystal is described by Sellmeier sets of the general form
//!
//! ```text
//! n²(λ) = base + Σ_j (p_j + r_j·λ²)/(λ² − q_j) − d·λ²      (λ in µm)
//! ```
//!
//! which covers both the three-pole form of Zelmon et al. and the
//! constant-numerator form of Gayer et al.  Shipped coefficient sets:
//!
//! * [`UniaxialMedium::lithium_niobate`] — congruent LiNbO₃,
//!   D. E. Zelmon, D. L. Small, D. Jundt, J. Opt. Soc. Am. B **14**, 3319
//!   (1997), measured at 21 °C, valid 0.4–5.0 µm.
//! * [`UniaxialMedium::mgo_lithium_niobate`] — 5 mol% MgO-doped congruent
//!   LiNbO₃ from the same publication.
//!
//! Gap media are vacuum (air is treated as index exactly 1 by default), a
//! constant real index, or a single-Lorentz-line gas ([`GasModel`]) whose
//! dispersive real part and absorptive imaginary part come from the same
//! oscillator, so the pair is Kramers–Kronig consistent by construction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Supported wavelength band, metres.  Evaluation outside is an error.
pub const BAND_MIN: f64 = 0.4e-6;
/// Upper edge of the supported band, metres.
pub const BAND_MAX: f64 = 5.0e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DispersionError {
    #[error("wavelength {0:.4e} m outside supported band 0.4e-6..5.0e-6 m")]
    OutOfBand(f64),
    #[error("polar angle {0} rad outside [0, pi/2]")]
    AngleOutOfRange(f64),
    #[error("negative gas concentration {0}")]
    NegativeConcentration(f64),
    #[error("non-positive wavelength {0:.4e} m")]
    NonPositiveWavelength(f64),
    #[error("coefficient set yields non-physical n^2 = {n_squared:.4} at {wavelength:.4e} m")]
    NonPhysicalIndex { wavelength: f64, n_squared: f64 },
}

/// One pole of a Sellmeier expansion: `(numerator + numerator_lambda_sq·λ²)/(λ² − pole)`
/// with λ² in µm².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SellmeierTerm {
    pub numerator: f64,
    pub numerator_lambda_sq: f64,
    pub pole: f64,
}

impl SellmeierTerm {
    /// Zelmon-style term `b·λ²/(λ² − c)`.
    pub const fn pole_product(b: f64, c: f64) -> Self {
        Self { numerator: 0.0, numerator_lambda_sq: b, pole: c }
    }
}

/// A full n²(λ) expansion for one polarization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SellmeierSet {
    pub base: f64,
    pub terms: Vec<SellmeierTerm>,
    /// Coefficient of the subtractive `−d·λ²` infrared correction, 1/µm².
    pub lambda_sq_coeff: f64,
}

impl SellmeierSet {
    fn n_squared(&self, lambda_um: f64) -> f64 {
        let l2 = lambda_um * lambda_um;
        let mut n2 = self.base - self.lambda_sq_coeff * l2;
        for t in &self.terms {
            n2 += (t.numerator + t.numerator_lambda_sq * l2) / (l2 - t.pole);
        }
        n2
    }
}

/// A uniaxial crystal: principal ordinary and extraordinary Sellmeier sets.
///
/// `temperature` is a fixed parameter of the coefficient set (the temperature
/// at which the published fit holds), not a tuning knob.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniaxialMedium {
    pub sellmeier_ordinary: SellmeierSet,
    pub sellmeier_extraordinary: SellmeierSet,
    /// Kelvin; metadata of the coefficient set.
    pub temperature: f64,
    pub label: String,
}

impl UniaxialMedium {
    /// Congruent (undoped) LiNbO₃, Zelmon/Small/Jundt 1997, 21 °C.
    ///
    /// n_o² − 1 = 2.6734 λ²/(λ²−0.01764) + 1.2290 λ²/(λ²−0.05914) + 12.614 λ²/(λ²−474.60)
    /// n_e² − 1 = 2.9804 λ²/(λ²−0.02047) + 0.5981 λ²/(λ²−0.06660) +  8.9543 λ²/(λ²−416.08)
    pub fn lithium_niobate() -> Self {
        Self {
            sellmeier_ordinary: SellmeierSet {
                base: 1.0,
                terms: vec![
                    SellmeierTerm::pole_product(2.6734, 0.01764),
                    SellmeierTerm::pole_product(1.2290, 0.05914),
                    SellmeierTerm::pole_product(12.614, 474.60),
                ],
                lambda_sq_coeff: 0.0,
            },
            sellmeier_extraordinary: SellmeierSet {
                base: 1.0,
                terms: vec![
                    SellmeierTerm::pole_product(2.9804, 0.02047),
                    SellmeierTerm::pole_product(0.5981, 0.06660),
                    SellmeierTerm::pole_product(8.9543, 416.08),
                ],
                lambda_sq_coeff: 0.0,
            },
            temperature: 294.15,
            label: "LiNbO3 congruent (Zelmon 1997)".to_owned(),
        }
    }

    /// 5 mol% MgO-doped congruent LiNbO₃, Zelmon/Small/Jundt 1997, 21 °C.
    ///
    /// Note: with this set collinear degenerate-direction phase matching for a
    /// 532 nm extraordinary pump lands ~20 nm away from the undoped set at the
    /// same cut angle; the shipped scenarios use [`Self::lithium_niobate`].
    pub fn mgo_lithium_niobate() -> Self {
        Self {
            sellmeier_ordinary: SellmeierSet {
                base: 1.0,
                terms: vec![
                    SellmeierTerm::pole_product(2.4272, 0.01478),
                    SellmeierTerm::pole_product(1.4617, 0.05612),
                    SellmeierTerm::pole_product(9.6536, 371.216),
                ],
                lambda_sq_coeff: 0.0,
            },
            sellmeier_extraordinary: SellmeierSet {
                base: 1.0,
                terms: vec![
                    SellmeierTerm::pole_product(2.2454, 0.01242),
                    SellmeierTerm::pole_product(1.3005, 0.05313),
                    SellmeierTerm::pole_product(6.8972, 331.33),
                ],
                lambda_sq_coeff: 0.0,
            },
            temperature: 294.15,
            label: "LiNbO3 5% MgO (Zelmon 1997)".to_owned(),
        }
    }

    /// Built-in medium by name, as referenced from scenario files.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "linbo3" | "lithium_niobate" => Some(Self::lithium_niobate()),
            "mgo_linbo3" | "mgo_lithium_niobate" => Some(Self::mgo_lithium_niobate()),
            _ => None,
        }
    }

    fn check_band(wavelength: f64) -> Result<(), DispersionError> {
        if !(BAND_MIN..=BAND_MAX).contains(&wavelength) {
            return Err(DispersionError::OutOfBand(wavelength));
        }
        Ok(())
    }

    fn index_from(set: &SellmeierSet, wavelength: f64) -> Result<f64, DispersionError> {
        Self::check_band(wavelength)?;
        let n2 = set.n_squared(wavelength * 1e6);
        if !(n2.is_finite() && n2 > 0.0) {
            return Err(DispersionError::NonPhysicalIndex { wavelength, n_squared: n2 });
        }
        Ok(n2.sqrt())
    }

    /// Ordinary-ray index n_o(λ).
    pub fn ordinary_index(&self, wavelength: f64) -> Result<f64, DispersionError> {
        Self::index_from(&self.sellmeier_ordinary, wavelength)
    }

    /// Principal extraordinary index n_e(λ) (propagation ⟂ optic axis).
    pub fn extraordinary_index(&self, wavelength: f64) -> Result<f64, DispersionError> {
        Self::index_from(&self.sellmeier_extraordinary, wavelength)
    }

    /// Extraordinary-wave index at polar angle θ from the optic axis:
    /// 1/n²(θ) = cos²θ/n_o² + sin²θ/n_e².
    pub fn extraordinary_index_at_angle(
        &self,
        wavelength: f64,
        polar_angle: f64,
    ) -> Result<f64, DispersionError> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&polar_angle) {
            return Err(DispersionError::AngleOutOfRange(polar_angle));
        }
        let no = self.ordinary_index(wavelength)?;
        let ne = self.extraordinary_index(wavelength)?;
        let (s, c) = polar_angle.sin_cos();
        Ok(1.0 / (c * c / (no * no) + s * s / (ne * ne)).sqrt())
    }
}

/// Single-Lorentz-line gas: background index plus one resonance.
///
/// With x = 2(λ − λ₀)/Γ (detuning in half-widths) the complex index is
///
/// ```text
/// ñ(λ) = n_bg + κ₀·(x + i)/(1 + x²),
/// κ₀   = peak_absorption·(concentration/reference_concentration)·λ₀/(4π),
/// ```
///
/// so the intensity attenuation coefficient at resonance is exactly
/// `peak_absorption` scaled by concentration, the absorption profile is an
/// even Lorentzian of FWHM `linewidth` in wavelength detuning, and the real
/// part carries the matching odd dispersive profile (index raised on the
/// long-wavelength side, anomalous crossing at resonance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    /// Real index far from the line (≈1 for a dilute gas).
    pub background_index: f64,
    /// Line centre λ₀, metres.
    pub resonance_wavelength: f64,
    /// FWHM Γ of the absorption Lorentzian, metres.
    pub linewidth: f64,
    /// Intensity attenuation coefficient at resonance, 1/m, at `reference_concentration`.
    pub peak_absorption: f64,
    /// Concentration (volume fraction) at which `peak_absorption` holds.
    pub reference_concentration: f64,
    /// Current concentration (volume fraction).
    pub concentration: f64,
}

/// Effective CO₂ line used by the gas-sensing scenarios: centre 4.27 µm,
/// FWHM 20 nm, reference concentration 0.02%.  The peak absorption is a
/// calibrated value chosen so that, with 8.2 mm gaps probed at an idler
/// wavelength of 4.306 µm, the fringe phase shift per period is ≈0.23π.
pub const CO2_PEAK_ABSORPTION: f64 = 683.4285055148839;

impl GasModel {
    /// Effective single-line CO₂ model at the given concentration (fraction).
    pub fn co2(concentration: f64) -> Self {
        Self {
            background_index: 1.0,
            resonance_wavelength: 4.27e-6,
            linewidth: 20e-9,
            peak_absorption: CO2_PEAK_ABSORPTION,
            reference_concentration: 2e-4,
            concentration,
        }
    }

    /// Complex refractive index ñ = n + iκ at `wavelength`.
    pub fn complex_index(&self, wavelength: f64) -> Result<Complex64, DispersionError> {
        if wavelength <= 0.0 {
            return Err(DispersionError::NonPositiveWavelength(wavelength));
        }
        if self.concentration < 0.0 {
            return Err(DispersionError::NegativeConcentration(self.concentration));
        }
        let kappa0 = self.peak_absorption * (self.concentration / self.reference_concentration)
            * self.resonance_wavelength
            / (4.0 * std::f64::consts::PI);
        let x = 2.0 * (wavelength - self.resonance_wavelength) / self.linewidth;
        let lorentz = 1.0 + x * x;
        Ok(Complex64::new(
            self.background_index + kappa0 * x / lorentz,
            kappa0 / lorentz,
        ))
    }
}

/// Medium filling a gap between crystals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GapMedium {
    /// Index exactly 1 (the default model for air).
    Vacuum,
    /// Constant real index, e.g. for explicit air dispersion overrides.
    Constant(f64),
    Gas(GasModel),
}

impl GapMedium {
    pub fn complex_index(&self, wavelength: f64) -> Result<Complex64, DispersionError> {
        match self {
            GapMedium::Vacuum => Ok(Complex64::new(1.0, 0.0)),
            GapMedium::Constant(n) => Ok(Complex64::new(*n, 0.0)),
            GapMedium::Gas(gas) => gas.complex_index(wavelength),
        }
    }

    /// True when the medium absorbs nowhere (purely real index).
    pub fn is_lossless(&self) -> bool {
        match self {
            GapMedium::Vacuum | GapMedium::Constant(_) => true,
            GapMedium::Gas(g) => g.concentration == 0.0 || g.peak_absorption == 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Golden values from an independent scalar evaluation of the Zelmon 1997
    // coefficient sets.
    const N_O_532: f64 = 2.3231916549460148;
    const N_O_6104: f64 = 2.2928656234389;
    const N_E_532: f64 = 2.233567663820966;
    const N_E_AT_5034: f64 = 2.268806267688291;

    #[test]
    fn ordinary_index_golden_values() {
        let m = UniaxialMedium::lithium_niobate();
        assert_relative_eq!(m.ordinary_index(532e-9).unwrap(), N_O_532, max_relative = 1e-14);
        assert_relative_eq!(m.ordinary_index(610.4e-9).unwrap(), N_O_6104, max_relative = 1e-14);
    }

    #[test]
    fn out_of_band_is_domain_error() {
        let m = UniaxialMedium::lithium_niobate();
        let err = m.ordinary_index(300e-9).unwrap_err();
        assert!(matches!(err, DispersionError::OutOfBand(_)));
        assert!(err.to_string().contains("0.4e-6..5.0e-6"));
        assert!(m.ordinary_index(5.2e-6).is_err());
    }

    #[test]
    fn indices_real_and_bounded_over_band() {
        for m in [UniaxialMedium::lithium_niobate(), UniaxialMedium::mgo_lithium_niobate()] {
            for i in 0..=2000 {
                let lam = BAND_MIN + (BAND_MAX - BAND_MIN) * i as f64 / 2000.0;
                let no = m.ordinary_index(lam).unwrap();
                let ne = m.extraordinary_index(lam).unwrap();
                assert!(no > 1.0 && no < 4.0, "n_o({lam:e}) = {no}");
                assert!(ne > 1.0 && ne < 4.0, "n_e({lam:e}) = {ne}");
            }
        }
    }

    #[test]
    fn angle_limits_recover_principal_indices() {
        let m = UniaxialMedium::lithium_niobate();
        for lam in [0.45e-6, 0.532e-6, 0.6104e-6, 1.0e-6, 4.2e-6] {
            let no = m.ordinary_index(lam).unwrap();
            let ne = m.extraordinary_index(lam).unwrap();
            assert_relative_eq!(
                m.extraordinary_index_at_angle(lam, 0.0).unwrap(),
                no,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                m.extraordinary_index_at_angle(lam, std::f64::consts::FRAC_PI_2).unwrap(),
                ne,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn angle_index_monotone_and_bracketed() {
        let m = UniaxialMedium::lithium_niobate();
        let lam = 532e-9;
        let no = m.ordinary_index(lam).unwrap();
        let ne = m.extraordinary_index(lam).unwrap();
        let at = m
            .extraordinary_index_at_angle(lam, 50.34f64.to_radians())
            .unwrap();
        assert!(ne < at && at < no);
        assert_relative_eq!(at, N_E_AT_5034, max_relative = 1e-14);
        // monotone decreasing over a theta grid (negative uniaxial: n_e < n_o)
        let mut prev = no;
        for i in 1..=90 {
            let th = std::f64::consts::FRAC_PI_2 * i as f64 / 90.0;
            let n = m.extraordinary_index_at_angle(lam, th).unwrap();
            assert!(n < prev, "not monotone at step {i}");
            prev = n;
        }
        assert_relative_eq!(N_E_532, prev, max_relative = 1e-12);
    }

    #[test]
    fn gas_zero_concentration_is_exact_background() {
        let gas = GasModel::co2(0.0);
        for lam in [4.2e-6, 4.27e-6, 4.3e-6] {
            let n = gas.complex_index(lam).unwrap();
            assert_eq!(n, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn gas_resonant_absorption_matches_beer_lambert() {
        // invert Beer-Lambert by hand: per 8.2 mm gap the on-resonance intensity
        // transmission must be exp(-peak_absorption * l).
        let gas = GasModel::co2(2e-4);
        let n = gas.complex_index(4.27e-6).unwrap();
        let alpha = 4.0 * std::f64::consts::PI * n.im / 4.27e-6;
        assert_relative_eq!(alpha, CO2_PEAK_ABSORPTION, max_relative = 1e-12);
        let transmission = (-alpha * 8.2e-3).exp();
        assert_relative_eq!(transmission, 0.0036826828937146505, max_relative = 1e-9);
        // concentration scaling is linear
        let half = GasModel::co2(1e-4).complex_index(4.27e-6).unwrap();
        assert_relative_eq!(half.im, n.im / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn gas_detuned_wing_small_absorption_nonzero_dispersion() {
        // +40 nm off resonance: |kappa| under 10% of peak while the real part
        // still deviates from background (evaluate the Lorentzian wing).
        let gas = GasModel::co2(2e-4);
        let on = gas.complex_index(4.27e-6).unwrap();
        let off = gas.complex_index(4.31e-6).unwrap();
        assert!(off.im < 0.1 * on.im, "wing absorption too strong: {off}");
        assert!(off.im > 0.0);
        assert!((off.re - 1.0).abs() > 0.0);
        // x = 4 half-widths: kappa fraction is exactly 1/17
        assert_relative_eq!(off.im, on.im / 17.0, max_relative = 1e-9);
        assert_relative_eq!(off.re - 1.0, 4.0 * on.im / 17.0, max_relative = 1e-9);
    }

    #[test]
    fn gas_line_symmetry() {
        // imaginary part even, real-part deviation odd about the resonance
        let gas = GasModel::co2(2e-4);
        for d in [1e-9, 5e-9, 12e-9, 30e-9] {
            let hi = gas.complex_index(4.27e-6 + d).unwrap();
            let lo = gas.complex_index(4.27e-6 - d).unwrap();
            assert_relative_eq!(hi.im, lo.im, max_relative = 1e-12);
            assert_relative_eq!(hi.re - 1.0, -(lo.re - 1.0), max_relative = 1e-12);
            assert!(hi.im >= 0.0 && lo.im >= 0.0);
        }
    }

    #[test]
    fn negative_concentration_rejected() {
        let gas = GasModel::co2(-1e-4);
        assert!(matches!(
            gas.complex_index(4.27e-6),
            Err(DispersionError::NegativeConcentration(_))
        ));
    }

    #[test]
    fn evaluations_are_pure() {
        let m = UniaxialMedium::lithium_niobate();
        let a = m.ordinary_index(611.3e-9).unwrap();
        let b = m.ordinary_index(611.3e-9).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        let gas = GasModel::co2(2e-4);
        let x = gas.complex_index(4.281e-6).unwrap();
        let y = gas.complex_index(4.281e-6).unwrap();
        assert_eq!(x.re.to_bits(), y.re.to_bits());
        assert_eq!(x.im.to_bits(), y.im.to_bits());
    }
}
