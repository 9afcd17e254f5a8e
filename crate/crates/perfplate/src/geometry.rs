//! Value types for the perforation, the lattice and the incident wave.
//!
//! All lengths are SI meters and all angles are radians. Unit conversion
//! (mm, degrees) is a front-end concern.

use crate::elliptic::Eccentricity;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// A perforation through a plate of thickness `h`, cut along a straight axis
/// tilted by `theta` from the plate normal. Every plane parallel to the plate
/// intersects it along the same ellipse of semi-axes `a >= b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerforationGeometry {
    /// Semi-major axis of the opening (m), along the tilt direction.
    pub a: f64,
    /// Semi-minor axis of the opening (m).
    pub b: f64,
    /// Plate thickness (m).
    pub h: f64,
    /// Tilt angle from the plate normal (rad), `0 <= theta < π/2`.
    pub theta: f64,
}

impl PerforationGeometry {
    pub fn new(a: f64, b: f64, h: f64, theta: f64) -> Result<Self> {
        if !(a >= b && b > 0.0) {
            return Err(Error::Domain(format!(
                "semi-axes must satisfy a >= b > 0, got a={a}, b={b}"
            )));
        }
        if !(h >= 0.0) {
            return Err(Error::Domain(format!("thickness must be >= 0, got {h}")));
        }
        if !(0.0..PI / 2.0).contains(&theta) {
            return Err(Error::SingularGeometry(format!(
                "tilt must satisfy 0 <= theta < π/2, got {theta}"
            )));
        }
        Ok(Self { a, b, h, theta })
    }

    /// Eccentricity of the elliptical opening, `sqrt(1 - b²/a²)`.
    pub fn eccentricity(&self) -> Eccentricity {
        Eccentricity::from_semi_axes(self.a, self.b).expect("validated at construction")
    }

    /// Area of the elliptical opening, `π a b` (m²).
    pub fn opening_area(&self) -> f64 {
        PI * self.a * self.b
    }

    /// Cross-section area perpendicular to the bore axis, `π a b cos θ` (m²).
    /// For a drilled circular bore this is `π r²`.
    pub fn bore_area(&self) -> f64 {
        self.opening_area() * self.theta.cos()
    }

    /// A perforation is axisymmetric when untilted and circular.
    pub fn is_axisymmetric(&self) -> bool {
        self.theta == 0.0 && self.a == self.b
    }
}

/// A hole drilled with a cylindrical bit of radius `r` at tilt `theta`.
///
/// The resulting opening is the ellipse `a = r/cos θ`, `b = r`, with
/// eccentricity `sin θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularBoreSpec {
    /// Drill radius (m).
    pub r: f64,
    /// Plate thickness (m).
    pub h: f64,
    /// Tilt angle from the plate normal (rad).
    pub theta: f64,
}

impl CircularBoreSpec {
    pub fn new(r: f64, h: f64, theta: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("radius must be > 0, got {r}")));
        }
        // Delegate the h/theta checks to the ellipse constructor.
        PerforationGeometry::new(r / theta.cos(), r, h, theta)?;
        Ok(Self { r, h, theta })
    }

    pub fn to_perforation(&self) -> PerforationGeometry {
        PerforationGeometry::new(self.r / self.theta.cos(), self.r, self.h, self.theta)
            .expect("validated at construction")
    }
}

/// Doubly periodic lattice of perforations spanned by two in-plane vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeGeometry {
    /// First periodicity vector (m).
    pub xi1: [f64; 2],
    /// Second periodicity vector (m).
    pub xi2: [f64; 2],
}

impl LatticeGeometry {
    pub fn new(xi1: [f64; 2], xi2: [f64; 2]) -> Result<Self> {
        let lat = Self { xi1, xi2 };
        if lat.signed_cell_area().abs() <= 0.0 {
            return Err(Error::SingularGeometry(
                "lattice vectors are linearly dependent".into(),
            ));
        }
        Ok(lat)
    }

    fn signed_cell_area(&self) -> f64 {
        self.xi1[0] * self.xi2[1] - self.xi1[1] * self.xi2[0]
    }

    /// Area of the unit cell, `|ξ₁ × ξ₂|` (m²).
    pub fn cell_area(&self) -> f64 {
        self.signed_cell_area().abs()
    }

    /// Spacing between neighbouring perforations, `max(|ξ₁|, |ξ₂|)` (m).
    pub fn spacing(&self) -> f64 {
        let n1 = f64::hypot(self.xi1[0], self.xi1[1]);
        let n2 = f64::hypot(self.xi2[0], self.xi2[1]);
        n1.max(n2)
    }

    /// Dual basis `(ξ₁*, ξ₂*)` with `ξᵢ* · ξⱼ = δᵢⱼ`, from the 2x2 inverse.
    pub fn dual_basis(&self) -> ([f64; 2], [f64; 2]) {
        let det = self.signed_cell_area();
        (
            [self.xi2[1] / det, -self.xi2[0] / det],
            [-self.xi1[1] / det, self.xi1[0] / det],
        )
    }
}

/// A plane wave obliquely incident on the plate, time convention `e^{-iωt}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentWave {
    /// Frequency (Hz).
    pub frequency: f64,
    /// Speed of sound (m/s).
    pub c0: f64,
    /// Incidence angle from the plate normal (rad), `|Φ| < π/2`.
    pub phi: f64,
    /// In-plane direction cosines, `|τ'| = sin Φ`.
    pub tau_prime: [f64; 2],
}

pub const DEFAULT_SOUND_SPEED: f64 = 343.0;

impl IncidentWave {
    /// Incidence in the `x₁` plane of incidence (azimuth 0).
    pub fn new(frequency: f64, c0: f64, phi: f64) -> Result<Self> {
        Self::with_azimuth(frequency, c0, phi, 0.0)
    }

    /// Incidence with the in-plane wavevector rotated by `azimuth` from `x₁`.
    pub fn with_azimuth(frequency: f64, c0: f64, phi: f64, azimuth: f64) -> Result<Self> {
        if !(frequency > 0.0) {
            return Err(Error::Domain(format!(
                "frequency must be > 0, got {frequency}"
            )));
        }
        if !(c0 > 0.0) {
            return Err(Error::Domain(format!("sound speed must be > 0, got {c0}")));
        }
        if !(phi.abs() < PI / 2.0) {
            return Err(Error::Domain(format!(
                "incidence must satisfy |Φ| < π/2, got {phi}"
            )));
        }
        let s = phi.sin();
        Ok(Self {
            frequency,
            c0,
            phi,
            tau_prime: [s * azimuth.cos(), s * azimuth.sin()],
        })
    }

    /// Wavenumber `κ = 2πf/c₀` (1/m).
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI * self.frequency / self.c0
    }

    /// Wavelength `λ = c₀/f` (m).
    pub fn wavelength(&self) -> f64 {
        self.c0 / self.frequency
    }

    /// Bloch vector `β = κ τ'` (1/m).
    pub fn bloch_vector(&self) -> [f64; 2] {
        let k = self.wavenumber();
        [k * self.tau_prime[0], k * self.tau_prime[1]]
    }
}

/// A full plate configuration: one perforation shape, its lattice and the
/// incident wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateScenario {
    pub perforation: PerforationGeometry,
    /// Set when the perforation came from a drilled circular bore, so that
    /// bore-convention quantities can use `π r²` exactly.
    pub bore: Option<CircularBoreSpec>,
    pub lattice: LatticeGeometry,
    pub wave: IncidentWave,
}

impl PlateScenario {
    pub fn new(
        perforation: PerforationGeometry,
        lattice: LatticeGeometry,
        wave: IncidentWave,
    ) -> Self {
        Self {
            perforation,
            bore: None,
            lattice,
            wave,
        }
    }

    pub fn from_bore(bore: CircularBoreSpec, lattice: LatticeGeometry, wave: IncidentWave) -> Self {
        Self {
            perforation: bore.to_perforation(),
            bore: Some(bore),
            lattice,
            wave,
        }
    }
}

/// Open-area fractions of the plate, under both area conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Porosity {
    /// `π a b / A`: opening area over cell area.
    pub opening: f64,
    /// `π a b cos θ / A`: bore cross-section over cell area (`π r²/A` for a
    /// drilled hole).
    pub bore: f64,
}

/// Threshold above which short-range interaction between apertures is no
/// longer negligible and the isolated-perforation model degrades.
pub const LOW_POROSITY_LIMIT: f64 = 0.04;

impl Porosity {
    /// True when the opening-area fraction exceeds the low-porosity limit.
    /// The opening convention is the conservative one: it is never smaller
    /// than the bore convention.
    pub fn interaction_warning(&self) -> bool {
        self.opening > LOW_POROSITY_LIMIT
    }
}

/// Porosity of the scenario under both conventions.
pub fn porosity(s: &PlateScenario) -> Porosity {
    let cell = s.lattice.cell_area();
    Porosity {
        opening: s.perforation.opening_area() / cell,
        bore: s.perforation.bore_area() / cell,
    }
}

/// Outcome of the homogenization validity check `L < λ/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    /// Lattice spacing (m).
    pub spacing: f64,
    /// Acoustic wavelength (m).
    pub wavelength: f64,
    /// Ratio `L/λ`.
    pub spacing_over_wavelength: f64,
    /// Strict inequality `L < λ/2`.
    pub valid: bool,
    pub porosity: Porosity,
    pub low_porosity_warning: bool,
}

/// Checks the homogenization condition. Computation elsewhere proceeds even
/// when invalid; the flag travels with the results.
pub fn validate_homogenization(s: &PlateScenario) -> ValidityReport {
    let spacing = s.lattice.spacing();
    let wavelength = s.wave.wavelength();
    let por = porosity(s);
    ValidityReport {
        spacing,
        wavelength,
        spacing_over_wavelength: spacing / wavelength,
        valid: spacing < 0.5 * wavelength,
        porosity: por,
        low_porosity_warning: por.interaction_warning(),
    }
}
