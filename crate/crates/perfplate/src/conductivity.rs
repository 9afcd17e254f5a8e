//! Closed-form lower and upper bounds on the Rayleigh conductivity of a
//! perforation, with the associated effective lengths and end corrections,
//! for every geometry family: tilted or untilted, elliptical or circular.
//!
//! The bounds come from the dual pair of variational principles for the
//! potential-flow energy: any admissible scalar trial field gives an upper
//! bound (Dirichlet side), any admissible divergence-free vector field a
//! lower bound (Kelvin side). With one-parameter trial families built from
//! the elliptic-disk potentials, both optimizations are scalar quadratics
//! solved in closed form; [`j1_quadratic`] and [`j2_quadratic`] expose those
//! quadratics so the optimality can be checked directly.

use crate::elliptic::{ellip_d, ellip_k, Eccentricity};
use crate::error::{Error, Result};
use crate::geometry::{CircularBoreSpec, PerforationGeometry};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Eccentricities above this are rejected: K(e) grows only logarithmically
/// while the conditioning of 1 - b²/a² collapses, and the slit limit is a
/// qualitative statement only (the conductivity diverges).
pub const MAX_ECCENTRICITY: f64 = 0.999999;

/// Which aperture area the effective length `l = s/K_R` refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaConvention {
    /// Opening area `π a b` of the elliptical opening in the plate plane.
    Opening,
    /// Bore cross-section `π r²` perpendicular to the drill axis.
    Bore,
}

/// Two-sided bounds on the Rayleigh conductivity plus the derived piston
/// quantities.
///
/// Effective lengths invert the bounds: `l_lower = s/k_upper` and
/// `l_upper = s/k_lower`. End corrections split off the effective height,
/// `l = h_eff + l'`, so `h = 0` gives `l = l'` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConductivityBounds {
    /// Lower bound on K_R (m).
    pub k_lower: f64,
    /// Upper bound on K_R (m).
    pub k_upper: f64,
    /// Reference area `s` (m²) used for the effective lengths.
    pub reference_area: f64,
    pub area_convention: AreaConvention,
    /// Effective height (m): `h/cos²θ` under the opening convention,
    /// `h/cos θ` under the bore convention.
    pub h_eff: f64,
}

impl ConductivityBounds {
    /// Midpoint of the bounds, the conventional single-value estimate.
    pub fn mean_kr(&self) -> f64 {
        0.5 * (self.k_lower + self.k_upper)
    }

    /// Shorter effective length, from the upper conductivity bound (m).
    pub fn l_lower(&self) -> f64 {
        self.reference_area / self.k_upper
    }

    /// Longer effective length, from the lower conductivity bound (m).
    pub fn l_upper(&self) -> f64 {
        self.reference_area / self.k_lower
    }

    /// Lower end correction `l_lower - h_eff` (m). May be reduced below the
    /// untilted value by the non-positive tilt term.
    pub fn lprime_lower(&self) -> f64 {
        self.l_lower() - self.h_eff
    }

    /// Upper end correction `l_upper - h_eff` (m).
    pub fn lprime_upper(&self) -> f64 {
        self.l_upper() - self.h_eff
    }
}

fn k_ratio(eps: Eccentricity) -> f64 {
    // K(ε)/K(0)
    ellip_k(eps) / FRAC_PI_2
}

fn d_ratio_inv(eps: Eccentricity) -> f64 {
    // D(0)/D(ε)
    FRAC_PI_4 / ellip_d(eps)
}

fn checked_eccentricity(g: &PerforationGeometry) -> Result<Eccentricity> {
    let eps = g.eccentricity();
    if eps.value() > MAX_ECCENTRICITY {
        return Err(Error::SingularGeometry(format!(
            "eccentricity {} too close to the slit limit",
            eps.value()
        )));
    }
    Ok(eps)
}

/// Bounds for a tilted perforation with an elliptical opening (the general
/// case; every other family is a specialization). Opening-area convention:
/// `s = π a b`, `h_eff = h/cos²θ`.
///
/// ```text
///           π a b                                π a b
/// ----------------------------- <= K_R <= -------------------------------------------
/// h/cos²θ + (16b/3π) K(ε)/K(0)           (πb/2) K(ε)/K(0) + (h/cos²θ)/(1 + C/h)
/// ```
///
/// with `C/h = (16a²/(3πbh)) (D(0)/D(ε)) sin²θ`.
pub fn bounds_tilted_elliptical(g: &PerforationGeometry) -> Result<ConductivityBounds> {
    if g.theta > 0.0 && g.h == 0.0 {
        return Err(Error::SingularGeometry(
            "tilt through a zero-thickness plate is undefined; use the untilted thin-plate form"
                .into(),
        ));
    }
    let eps = checked_eccentricity(g)?;
    let kr = k_ratio(eps);
    let s = g.opening_area();
    let cos2 = g.theta.cos() * g.theta.cos();
    let h_eff = g.h / cos2;
    let k_lower = s / (h_eff + 16.0 * g.b / (3.0 * PI) * kr);
    let sin2 = g.theta.sin() * g.theta.sin();
    // C = (16a²/(3πb)) (D(0)/D(ε)) sin²θ, so the inner quotient is
    // h_eff/(1 + C/h); sin θ = 0 kills C before the division by h.
    let c = 16.0 * g.a * g.a / (3.0 * PI * g.b) * d_ratio_inv(eps) * sin2;
    let inner = if c == 0.0 { h_eff } else { h_eff / (1.0 + c / g.h) };
    let k_upper = s / (FRAC_PI_2 * g.b * kr + inner);
    Ok(ConductivityBounds {
        k_lower,
        k_upper,
        reference_area: s,
        area_convention: AreaConvention::Opening,
        h_eff,
    })
}

/// Bounds for a hole drilled with a circular bit of radius `r`, tilted by
/// `θ`. The conductivity bounds coincide with
/// [`bounds_tilted_elliptical`] at `a = r/cos θ`, `b = r`; only the
/// reporting convention changes: `s = π r²` and `h_eff = h/cos θ`, which is
/// the "intuitive" effective thickness.
pub fn bounds_circular_bore(spec: &CircularBoreSpec) -> Result<ConductivityBounds> {
    if spec.theta > 0.0 && spec.h == 0.0 {
        return Err(Error::SingularGeometry(
            "tilt through a zero-thickness plate is undefined".into(),
        ));
    }
    let g = spec.to_perforation();
    let ell = bounds_tilted_elliptical(&g)?;
    Ok(ConductivityBounds {
        k_lower: ell.k_lower,
        k_upper: ell.k_upper,
        reference_area: PI * spec.r * spec.r,
        area_convention: AreaConvention::Bore,
        h_eff: spec.h / spec.theta.cos(),
    })
}

/// Bounds for an untilted perforation with an elliptical opening:
/// `π a b/(h + (16b/3π) K(ε)/K(0)) <= K_R <= π a b/(h + (πb/2) K(ε)/K(0))`.
/// Allows `h = 0`, where the upper bound is the exact thin-plate value
/// `π a/K(ε)`.
pub fn bounds_untilted_elliptical(a: f64, b: f64, h: f64) -> Result<ConductivityBounds> {
    let g = PerforationGeometry::new(a, b, h, 0.0)?;
    let eps = checked_eccentricity(&g)?;
    let kr = k_ratio(eps);
    let s = g.opening_area();
    Ok(ConductivityBounds {
        k_lower: s / (h + 16.0 * b / (3.0 * PI) * kr),
        k_upper: s / (h + FRAC_PI_2 * b * kr),
        reference_area: s,
        area_convention: AreaConvention::Opening,
        h_eff: h,
    })
}

/// Bounds for a tilted perforation whose opening (not cross-section) is a
/// circle of radius `r` — the `ε = 0` member of the tilted family, free of
/// elliptic integrals:
///
/// ```text
/// π r²/(h/cos²θ + 16r/3π) <= K_R <= π r²/((h/cos²θ)/(1 + (16r/3πh) sin²θ) + πr/2)
/// ```
pub fn bounds_tilted_circular_opening(r: f64, h: f64, theta: f64) -> Result<ConductivityBounds> {
    let g = PerforationGeometry::new(r, r, h, theta)?;
    if theta > 0.0 && h == 0.0 {
        return Err(Error::SingularGeometry(
            "tilt through a zero-thickness plate is undefined".into(),
        ));
    }
    let s = PI * r * r;
    let cos2 = theta.cos() * theta.cos();
    let h_eff = h / cos2;
    let sin2 = theta.sin() * theta.sin();
    let inner = if sin2 == 0.0 {
        h_eff
    } else {
        h_eff / (1.0 + 16.0 * r / (3.0 * PI * h) * sin2)
    };
    let _ = g;
    Ok(ConductivityBounds {
        k_lower: s / (h_eff + 16.0 * r / (3.0 * PI)),
        k_upper: s / (inner + FRAC_PI_2 * r),
        reference_area: s,
        area_convention: AreaConvention::Opening,
        h_eff,
    })
}

/// Howe's bounds for the untilted cylindrical perforation:
/// `π r²/(h + 16r/3π) <= K_R <= π r²/(h + πr/2)`, end correction in
/// `[πr/2, 16r/3π]`. At `h = 0` this is the classical `[3π²r/16, 2r]`.
pub fn bounds_untilted_cylinder(r: f64, h: f64) -> Result<ConductivityBounds> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be > 0, got {r}")));
    }
    if !(h >= 0.0) {
        return Err(Error::Domain(format!("thickness must be >= 0, got {h}")));
    }
    let s = PI * r * r;
    Ok(ConductivityBounds {
        k_lower: s / (h + 16.0 * r / (3.0 * PI)),
        k_upper: s / (h + FRAC_PI_2 * r),
        reference_area: s,
        area_convention: AreaConvention::Opening,
        h_eff: h,
    })
}

/// The modified piston model used in the turbulent-liner literature:
/// `K_R = π r²/(h_eff + πr/2)`, i.e. Howe's upper bound with a caller-chosen
/// effective height (typically `h/cos θ` or a fraction of it).
pub fn eldredge_conductivity(r: f64, h_eff: f64) -> Result<f64> {
    if !(r > 0.0 && h_eff >= 0.0) {
        return Err(Error::Domain(format!(
            "need r > 0 and h_eff >= 0, got r={r}, h_eff={h_eff}"
        )));
    }
    Ok(PI * r * r / (h_eff + FRAC_PI_2 * r))
}

/// A scalar quadratic `q(x) = c0 + c1 x + c2 x²` arising from a
/// one-parameter variational trial family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationalQuadratic {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl VariationalQuadratic {
    pub fn eval(&self, x: f64) -> f64 {
        self.c0 + x * (self.c1 + x * self.c2)
    }

    /// Stationary point `-c1/(2 c2)`: the minimizer when `c2 > 0`, the
    /// maximizer when `c2 < 0`.
    pub fn extremum(&self) -> f64 {
        -self.c1 / (2.0 * self.c2)
    }
}

/// The Dirichlet-side quadratic whose minimum over the trial parameter α is
/// the upper conductivity bound:
///
/// ```text
/// J₁(α) = 2a K(0)/K(ε) (1 - 2α)²
///       + ((64a³/3h²) cos²θ sin²θ D(0)/D(ε) + (4πab/h) cos²θ) α²
/// ```
///
/// Returns the quadratic and its minimizer α*. `J₁(α*)` equals the
/// `k_upper` of [`bounds_tilted_elliptical`]; any other α gives a valid but
/// weaker upper bound.
pub fn j1_quadratic(g: &PerforationGeometry) -> Result<(VariationalQuadratic, f64)> {
    if !(g.h > 0.0) {
        return Err(Error::SingularGeometry(
            "the Dirichlet trial family needs h > 0 (h appears in denominators)".into(),
        ));
    }
    let eps = checked_eccentricity(g)?;
    let w = g.a / k_ratio(eps); // a K(0)/K(ε)
    let cos2 = g.theta.cos() * g.theta.cos();
    let sin2 = g.theta.sin() * g.theta.sin();
    let tilt = 64.0 * g.a.powi(3) / (3.0 * g.h * g.h) * cos2 * sin2 * d_ratio_inv(eps);
    let channel = 4.0 * PI * g.a * g.b * cos2 / g.h;
    let quad = VariationalQuadratic {
        c0: 2.0 * w,
        c1: -8.0 * w,
        c2: 8.0 * w + tilt + channel,
    };
    let alpha_star = quad.extremum();
    Ok((quad, alpha_star))
}

/// The Kelvin-side quadratic whose maximum over the trial parameter β is the
/// lower conductivity bound:
///
/// ```text
/// J₂(β) = 2β - β²/(π²a²b²) ((16/3) a b² K(ε)/K(0) + (1 + tan²θ) π a b h)
/// ```
///
/// Returns the quadratic and its maximizer
/// `β* = πab / ((16b/3π) K(ε)/K(0) + (1 + tan²θ) h)`, and `J₂(β*) = β*` is
/// the `k_lower` of [`bounds_tilted_elliptical`]. Any other β gives a valid
/// but weaker lower bound; β = 0 gives the trivial bound 0.
pub fn j2_quadratic(g: &PerforationGeometry) -> Result<(VariationalQuadratic, f64)> {
    let eps = checked_eccentricity(g)?;
    let tan2 = {
        let t = g.theta.tan();
        t * t
    };
    let m = 16.0 / 3.0 * g.a * g.b * g.b * k_ratio(eps) + (1.0 + tan2) * PI * g.a * g.b * g.h;
    let s = g.opening_area();
    let quad = VariationalQuadratic {
        c0: 0.0,
        c1: 2.0,
        c2: -m / (s * s),
    };
    let beta_star = quad.extremum();
    Ok((quad, beta_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const MM: f64 = 1e-3;

    #[test]
    fn eldredge_liner_bounds() {
        // r = 2.5 mm bore, h = 10 mm, θ = 60°.
        let theta = PI / 3.0;
        let bore = CircularBoreSpec::new(2.5 * MM, 10.0 * MM, theta).unwrap();
        let ell = bounds_tilted_elliptical(&bore.to_perforation()).unwrap();
        assert_relative_eq!(ell.k_lower, 8.5692228172515257e-4, max_relative = 1e-12);
        assert_relative_eq!(ell.k_upper, 1.4178412001779238e-3, max_relative = 1e-12);
        assert_relative_eq!(ell.mean_kr(), 1.1373817409515382e-3, max_relative = 1e-12);

        let circ = bounds_tilted_circular_opening(2.5 * MM, 10.0 * MM, theta).unwrap();
        assert_relative_eq!(circ.k_lower, 4.437866283982893e-4, max_relative = 1e-12);
        assert_relative_eq!(circ.k_upper, 5.7296764607002262e-4, max_relative = 1e-12);

        // Same K_R bounds through the bore convention, different s and h_eff.
        let as_bore = bounds_circular_bore(&bore).unwrap();
        assert_eq!(as_bore.k_lower, ell.k_lower);
        assert_eq!(as_bore.k_upper, ell.k_upper);
        assert_relative_eq!(as_bore.reference_area, PI * 6.25e-6, max_relative = 1e-15);
        assert_relative_eq!(as_bore.h_eff, 10.0 * MM / theta.cos(), max_relative = 1e-15);
        assert_relative_eq!(ell.h_eff, 10.0 * MM / (theta.cos() * theta.cos()));
    }

    #[test]
    fn eldredge_formula_values() {
        let r = 2.5 * MM;
        let h = 10.0 * MM;
        let theta = PI / 3.0;
        let k1 = eldredge_conductivity(r, h / theta.cos()).unwrap();
        assert_relative_eq!(k1, 8.2061945169453348e-4, max_relative = 1e-12);
        let k2 = eldredge_conductivity(r, 0.75 * h / theta.cos()).unwrap();
        assert_relative_eq!(k2, 1.037404956487513e-3, max_relative = 1e-12);
    }

    #[test]
    fn typical_plate_reference_values() {
        let b = bounds_untilted_cylinder(0.225 * MM, 2.0 * MM).unwrap();
        assert_relative_eq!(b.k_lower, 6.6769524246014756e-5, max_relative = 1e-12);
        assert_relative_eq!(b.k_upper, 6.7579313572248237e-5, max_relative = 1e-12);
        assert_relative_eq!(b.lprime_lower(), FRAC_PI_2 * 0.225 * MM, max_relative = 1e-12);
        assert_relative_eq!(
            b.lprime_upper(),
            16.0 * 0.225 * MM / (3.0 * PI),
            max_relative = 1e-12
        );
    }

    #[test]
    fn pinned_secondary_geometries() {
        // Tilted bore of the typical plate at 60°.
        let bore = CircularBoreSpec::new(0.225 * MM, 2.0 * MM, PI / 3.0).unwrap();
        let b = bounds_circular_bore(&bore).unwrap();
        assert_relative_eq!(b.k_lower, 3.7314789531203171e-5, max_relative = 1e-12);
        assert_relative_eq!(b.k_upper, 4.9851255127334768e-5, max_relative = 1e-12);

        let b = bounds_tilted_circular_opening(0.225 * MM, 2.0 * MM, PI / 6.0).unwrap();
        assert_relative_eq!(b.k_lower, 5.2168575092906595e-5, max_relative = 1e-12);
        assert_relative_eq!(b.k_upper, 5.4869436308863373e-5, max_relative = 1e-12);

        let b = bounds_untilted_elliptical(2.0 * MM, 1.0 * MM, 1.0 * MM).unwrap();
        assert_relative_eq!(b.k_lower, 1.886460426478176e-3, max_relative = 1e-12);
        assert_relative_eq!(b.k_upper, 1.9905446412586797e-3, max_relative = 1e-12);

        let g = PerforationGeometry::new(2.0 * MM, 1.0 * MM, 1.0 * MM, PI / 6.0).unwrap();
        let b = bounds_tilted_elliptical(&g).unwrap();
        assert_relative_eq!(b.k_lower, 1.7148395673439404e-3, max_relative = 1e-12);
        assert_relative_eq!(b.k_upper, 2.2404001001770152e-3, max_relative = 1e-12);
        assert!(b.k_lower < b.k_upper);
    }

    #[test]
    fn thin_plate_limits() {
        // Ellipse, h = 0: upper bound is Rayleigh's exact πa/K(ε).
        let (a, b) = (2.0 * MM, 1.0 * MM);
        let eps = Eccentricity::from_semi_axes(a, b).unwrap();
        let bd = bounds_untilted_elliptical(a, b, 0.0).unwrap();
        assert_relative_eq!(bd.k_upper, PI * a / ellip_k(eps), max_relative = 1e-13);
        assert_relative_eq!(
            bd.k_lower,
            3.0 * PI * PI * a / (32.0 * ellip_k(eps)),
            max_relative = 1e-13
        );
        // Circle, h = 0: [3π²r/16, 2r].
        let r = 0.5 * MM;
        let bd = bounds_untilted_cylinder(r, 0.0).unwrap();
        assert_relative_eq!(bd.k_upper, 2.0 * r, max_relative = 1e-13);
        assert_relative_eq!(bd.k_lower, 3.0 * PI * PI * r / 16.0, max_relative = 1e-13);
        assert_eq!(bd.h_eff, 0.0);
        assert_relative_eq!(bd.l_lower(), bd.lprime_lower(), max_relative = 1e-15);
    }

    #[test]
    fn reduction_chain_spot_checks() {
        let (r, h) = (0.7 * MM, 1.3 * MM);
        // θ = 0 collapses the tilted-elliptical family onto the untilted one.
        let g = PerforationGeometry::new(2.0 * r, r, h, 0.0).unwrap();
        let t = bounds_tilted_elliptical(&g).unwrap();
        let u = bounds_untilted_elliptical(2.0 * r, r, h).unwrap();
        assert_relative_eq!(t.k_lower, u.k_lower, max_relative = 1e-14);
        assert_relative_eq!(t.k_upper, u.k_upper, max_relative = 1e-14);
        // a = b collapses onto the circular-opening family.
        let g = PerforationGeometry::new(r, r, h, 0.6).unwrap();
        let t = bounds_tilted_elliptical(&g).unwrap();
        let c = bounds_tilted_circular_opening(r, h, 0.6).unwrap();
        assert_relative_eq!(t.k_lower, c.k_lower, max_relative = 1e-14);
        assert_relative_eq!(t.k_upper, c.k_upper, max_relative = 1e-14);
        // θ = 0, a = b is Howe.
        let c0 = bounds_tilted_circular_opening(r, h, 0.0).unwrap();
        let howe = bounds_untilted_cylinder(r, h).unwrap();
        assert_relative_eq!(c0.k_lower, howe.k_lower, max_relative = 1e-14);
        assert_relative_eq!(c0.k_upper, howe.k_upper, max_relative = 1e-14);
    }

    #[test]
    fn end_correction_sign_and_decomposition() {
        let g = PerforationGeometry::new(0.9 * MM, 0.45 * MM, 2.0 * MM, 1.0).unwrap();
        let b = bounds_tilted_elliptical(&g).unwrap();
        let eps = g.eccentricity();
        let ratio = ellip_k(eps) / FRAC_PI_2;
        // l' upper is exactly (16b/3π) K(ε)/K(0); the lower one sits below
        // (πb/2) K(ε)/K(0) by the non-positive tilt term.
        assert_relative_eq!(
            b.lprime_upper(),
            16.0 * g.b / (3.0 * PI) * ratio,
            max_relative = 1e-12
        );
        assert!(b.lprime_lower() <= FRAC_PI_2 * g.b * ratio + 1e-18);
        // l = h_eff + l' holds exactly by construction.
        assert_relative_eq!(b.l_upper(), b.h_eff + b.lprime_upper(), max_relative = 1e-15);

        // Circular-opening variant: same sign property.
        let c = bounds_tilted_circular_opening(0.45 * MM, 2.0 * MM, 1.0).unwrap();
        assert!(c.lprime_lower() <= FRAC_PI_2 * 0.45 * MM + 1e-18);
        assert_relative_eq!(
            c.lprime_upper(),
            16.0 * 0.45 * MM / (3.0 * PI),
            max_relative = 1e-12
        );
    }

    #[test]
    fn variational_extrema_reproduce_bounds() {
        let g = PerforationGeometry::new(2.0 * MM, 1.0 * MM, 1.5 * MM, 0.7).unwrap();
        let b = bounds_tilted_elliptical(&g).unwrap();
        let (j1, alpha) = j1_quadratic(&g).unwrap();
        assert!(j1.c2 > 0.0);
        assert_relative_eq!(j1.eval(alpha), b.k_upper, max_relative = 1e-12);
        // Any trial parameter bounds the minimum from above.
        assert!(j1.eval(0.0) >= b.k_upper);
        assert!(j1.eval(alpha * 1.1) >= j1.eval(alpha));
        assert!(j1.eval(alpha * 0.9) >= j1.eval(alpha));

        let (j2, beta) = j2_quadratic(&g).unwrap();
        assert!(j2.c2 < 0.0);
        assert_relative_eq!(j2.eval(beta), b.k_lower, max_relative = 1e-12);
        assert_eq!(j2.eval(0.0), 0.0);
        assert!(j2.eval(beta * 1.1) <= j2.eval(beta));
        assert!(j2.eval(beta * 0.9) <= j2.eval(beta));
    }

    #[test]
    fn j2_howe_reduction() {
        let (r, h) = (0.225 * MM, 2.0 * MM);
        let g = PerforationGeometry::new(r, r, h, 0.0).unwrap();
        let (_, beta) = j2_quadratic(&g).unwrap();
        assert_relative_eq!(
            beta,
            PI * r * r / (16.0 * r / (3.0 * PI) + h),
            max_relative = 1e-13
        );
    }

    #[test]
    fn rejections() {
        let g = PerforationGeometry::new(1.0 * MM, 0.5 * MM, 0.0, 0.3).unwrap();
        assert!(bounds_tilted_elliptical(&g).is_err());
        assert!(j1_quadratic(&g).is_err());
        assert!(bounds_tilted_circular_opening(1.0 * MM, 0.0, 0.3).is_err());
        assert!(bounds_untilted_cylinder(-1.0, 1.0).is_err());
        assert!(eldredge_conductivity(1.0 * MM, -1.0).is_err());
        // Slit-limit conditioning guard.
        let g = PerforationGeometry::new(1.0, 1e-7, 1.0, 0.0).unwrap();
        assert!(bounds_tilted_elliptical(&g).is_err());
    }
}
