//! Quasi-periodic Green's-function machinery for the perforation lattice:
//! Floquet mode data and the lattice constant `s₀`.
//!
//! `s₀` is what remains of the quasi-periodic kernel at the source after the
//! free-space singularity is removed,
//!
//! ```text
//! s₀ = lim_{x→0} [ G_Λ(x, 0) - 1/(4π|x|) ]
//!    = iκ/4π + Σ_{m≠0} e^{iβ·ξ_m} e^{iκ|ξ_m|} / (4π|ξ_m|)
//! ```
//!
//! where the conditionally convergent image series is given meaning by Ewald
//! splitting. The primary evaluator balances a Gaussian-screened image sum
//! against its spectral complement, both converging super-exponentially; an
//! independent cross-check evaluates the spectral representation on the
//! lattice axis at small heights and extrapolates to the plane.
//!
//! Under the validity condition `L < λ/2` only the fundamental Floquet order
//! propagates and `Im(2 s₀) = 1/(κ A cos Φ)` exactly.

use crate::error::{Error, Result};
use crate::geometry::{IncidentWave, LatticeGeometry};
use crate::quad::integrate;
use num_complex::Complex64;
use std::f64::consts::PI;

/// One Floquet order of the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData {
    /// Integer order `(m₁, m₂)`.
    pub m: (i32, i32),
    /// Transverse wavevector `β_m = β + 2π(m₁ξ₁* + m₂ξ₂*)` (1/m).
    pub beta_m: [f64; 2],
    /// Normal wavenumber `γ_m = sqrt(κ² - |β_m|²)` with `Re γ ≥ 0`,
    /// `Im γ ≥ 0`: real for propagating orders, positive imaginary for
    /// evanescent ones.
    pub gamma_m: Complex64,
    pub propagating: bool,
}

/// Modes with `|m₁|, |m₂| <= cutoff` for explicit wave parameters, in
/// lexicographic order.
pub fn enumerate_modes_raw(
    lat: &LatticeGeometry,
    kappa: f64,
    beta: [f64; 2],
    cutoff: u32,
) -> Vec<ModeData> {
    let (d1, d2) = lat.dual_basis();
    let c = cutoff as i32;
    let mut out = Vec::with_capacity(((2 * c + 1) * (2 * c + 1)) as usize);
    for m1 in -c..=c {
        for m2 in -c..=c {
            let bm = [
                beta[0] + 2.0 * PI * (m1 as f64 * d1[0] + m2 as f64 * d2[0]),
                beta[1] + 2.0 * PI * (m1 as f64 * d1[1] + m2 as f64 * d2[1]),
            ];
            let b2 = bm[0] * bm[0] + bm[1] * bm[1];
            let disc = kappa * kappa - b2;
            let (gamma, propagating) = if disc > 0.0 {
                (Complex64::new(disc.sqrt(), 0.0), true)
            } else {
                (Complex64::new(0.0, (-disc).sqrt()), false)
            };
            out.push(ModeData {
                m: (m1, m2),
                beta_m: bm,
                gamma_m: gamma,
                propagating,
            });
        }
    }
    out
}

/// Modes of an incident wave on the lattice.
pub fn enumerate_modes(lat: &LatticeGeometry, wave: &IncidentWave, cutoff: u32) -> Vec<ModeData> {
    enumerate_modes_raw(lat, wave.wavenumber(), wave.bloch_vector(), cutoff)
}

/// How a lattice constant was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeSumMethod {
    Ewald,
    DirectAccelerated,
}

/// The lattice constant with its provenance and error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSumResult {
    /// `s₀` in physical units (1/m).
    pub s0: Complex64,
    /// `s₀ · L`, the same constant nondimensionalized by the lattice
    /// spacing.
    pub s0_scaled: Complex64,
    pub method: LatticeSumMethod,
    /// Estimated absolute truncation error on `s0` (1/m).
    pub est_error: f64,
}

/// Default absolute tolerance on the nondimensional `s₀ · L`.
pub const DEFAULT_S0_TOL: f64 = 1e-8;

fn erfi(x: f64) -> f64 {
    // Maclaurin series; arguments stay below ~1 whenever L < λ/2.
    debug_assert!(x.abs() < 4.0);
    let x2 = x * x;
    let mut term = x;
    let mut acc = x;
    let mut n = 0usize;
    loop {
        n += 1;
        term *= x2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        acc += add;
        if add.abs() < 1e-18 * acc.abs().max(1e-300) || n > 60 {
            break;
        }
    }
    acc * 2.0 / PI.sqrt()
}

/// Shared validity gate: `L < λ/2`, exactly one propagating order, and no
/// Rayleigh-Wood anomaly (a mode grazing cutoff).
fn check_validity(lat: &LatticeGeometry, wave: &IncidentWave) -> Result<(f64, [f64; 2], f64)> {
    let spacing = lat.spacing();
    let lambda = wave.wavelength();
    if !(spacing < 0.5 * lambda) {
        return Err(Error::Validity(format!(
            "lattice spacing {spacing} m is not below half the wavelength {lambda} m"
        )));
    }
    let kappa = wave.wavenumber();
    let beta = wave.bloch_vector();
    let modes = enumerate_modes_raw(lat, kappa, beta, 3);
    let n_prop = modes.iter().filter(|m| m.propagating).count();
    if n_prop != 1 {
        return Err(Error::Validity(format!(
            "{n_prop} propagating orders within cutoff 3; homogenization requires exactly the fundamental"
        )));
    }
    for md in &modes {
        if md.gamma_m.norm() < 1e-8 * kappa {
            return Err(Error::Validity(format!(
                "order {:?} sits at grazing cutoff (Wood anomaly)",
                md.m
            )));
        }
    }
    Ok((spacing, beta, kappa))
}

/// Screened image term for one lattice point at distance `R`:
/// `(1/2π^{3/2}) ∫_E^∞ exp(-R²t² + κ²/4t²) dt`, the real long-range part of
/// `e^{iκR}/(4πR)` left after Ewald splitting.
fn screened_image(r: f64, kappa: f64, e_split: f64) -> f64 {
    let a0 = r * e_split;
    let umax = (a0 * a0 + 45.0).sqrt();
    let kr = kappa * r;
    let val = integrate(a0, umax, 48, |u| (-u * u + kr * kr / (4.0 * u * u)).exp());
    val / (2.0 * PI.powf(1.5) * r)
}

fn s0_ewald_at(
    lat: &LatticeGeometry,
    kappa: f64,
    beta: [f64; 2],
    e_split: f64,
    m_max: i32,
) -> Complex64 {
    let area = lat.cell_area();
    let (d1, d2) = lat.dual_basis();

    // Spectral half at the source point.
    let mut spectral = Complex64::new(0.0, 0.0);
    for m1 in -m_max..=m_max {
        for m2 in -m_max..=m_max {
            let bm = [
                beta[0] + 2.0 * PI * (m1 as f64 * d1[0] + m2 as f64 * d2[0]),
                beta[1] + 2.0 * PI * (m1 as f64 * d1[1] + m2 as f64 * d2[1]),
            ];
            let b2 = bm[0] * bm[0] + bm[1] * bm[1];
            let disc = b2 - kappa * kappa;
            if disc > 0.0 {
                let g = disc.sqrt();
                spectral.re += libm::erfc(g / (2.0 * e_split)) / g;
            } else {
                // Propagating: Γ = -iγ, erfc(-iy) = 1 + i·erfi(y).
                let gamma = (-disc).sqrt();
                spectral.re += -erfi(gamma / (2.0 * e_split)) / gamma;
                spectral.im += 1.0 / gamma;
            }
        }
    }
    spectral /= 2.0 * area;

    // Screened image half over lattice points, m = 0 excluded.
    let mut spatial = Complex64::new(0.0, 0.0);
    for m1 in -m_max..=m_max {
        for m2 in -m_max..=m_max {
            if m1 == 0 && m2 == 0 {
                continue;
            }
            let xi = [
                m1 as f64 * lat.xi1[0] + m2 as f64 * lat.xi2[0],
                m1 as f64 * lat.xi1[1] + m2 as f64 * lat.xi2[1],
            ];
            let r = f64::hypot(xi[0], xi[1]);
            let phase = beta[0] * xi[0] + beta[1] * xi[1];
            spatial += Complex64::from_polar(screened_image(r, kappa, e_split), phase);
        }
    }

    // Regularized self term of the excluded image.
    let zeta = kappa / (2.0 * e_split);
    let self_term = kappa / (4.0 * PI) * erfi(zeta)
        - e_split / (2.0 * PI.powf(1.5)) * (zeta * zeta).exp();

    spectral + spatial + Complex64::new(self_term, 0.0)
}

/// Lattice constant by Ewald summation. `tol` is an absolute tolerance on
/// the nondimensional `s₀ · L`; pass [`DEFAULT_S0_TOL`] when in doubt.
pub fn lattice_s0(
    lat: &LatticeGeometry,
    wave: &IncidentWave,
    tol: f64,
) -> Result<LatticeSumResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let (spacing, beta, kappa) = check_validity(lat, wave)?;
    let e_split = PI.sqrt() / lat.cell_area().sqrt();
    let tol_abs = tol / spacing;
    let mut prev: Option<Complex64> = None;
    let mut m_max = 4;
    while m_max <= 64 {
        let val = s0_ewald_at(lat, kappa, beta, e_split, m_max);
        if let Some(p) = prev {
            let delta = (val - p).norm();
            if delta < 0.5 * tol_abs {
                return Ok(LatticeSumResult {
                    s0: val,
                    s0_scaled: val * spacing,
                    method: LatticeSumMethod::Ewald,
                    est_error: delta,
                });
            }
        }
        prev = Some(val);
        m_max *= 2;
    }
    Err(Error::Convergence(format!(
        "Ewald sum did not reach tolerance {tol} within truncation 64"
    )))
}

/// Spectral Green's function on the lattice axis at height `z > 0`:
/// `G_Λ((0,0,z), 0) = (i/2A) Σ_m e^{iγ_m z}/γ_m`.
fn spectral_greens_on_axis(
    lat: &LatticeGeometry,
    kappa: f64,
    beta: [f64; 2],
    z: f64,
    tol_abs: f64,
) -> Result<Complex64> {
    let area = lat.cell_area();
    let (d1, d2) = lat.dual_basis();
    let mut total = Complex64::new(0.0, 0.0);
    let mut m_max = 8;
    let mut prev: Option<Complex64> = None;
    while m_max <= 4096 {
        total = Complex64::new(0.0, 0.0);
        for m1 in -m_max..=m_max {
            for m2 in -m_max..=m_max {
                let bm = [
                    beta[0] + 2.0 * PI * (m1 as f64 * d1[0] + m2 as f64 * d2[0]),
                    beta[1] + 2.0 * PI * (m1 as f64 * d1[1] + m2 as f64 * d2[1]),
                ];
                let b2 = bm[0] * bm[0] + bm[1] * bm[1];
                let disc = kappa * kappa - b2;
                if disc > 0.0 {
                    let g = disc.sqrt();
                    // i e^{iγz}/γ
                    total += Complex64::new(-(g * z).sin(), (g * z).cos()) / g;
                } else {
                    let g = (-disc).sqrt();
                    total += Complex64::new((-g * z).exp() / g, 0.0);
                }
            }
        }
        total /= 2.0 * area;
        if let Some(p) = prev {
            if (total - p).norm() < 0.01 * tol_abs {
                return Ok(total);
            }
        }
        prev = Some(total);
        m_max *= 2;
    }
    Err(Error::Convergence(
        "axis spectral sum did not converge".into(),
    ))
}

/// Independent lattice constant: evaluates `G_Λ - e^{iκz}/(4πz)` on the
/// axis at `z ∈ {L/8, L/16, L/32}`, extrapolates the even remainder to
/// `z → 0`, and restores the `iκ/4π` image limit.
pub fn lattice_s0_direct(
    lat: &LatticeGeometry,
    wave: &IncidentWave,
    tol: f64,
) -> Result<LatticeSumResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let (spacing, beta, kappa) = check_validity(lat, wave)?;
    let tol_abs = tol / spacing;
    let zs = [spacing / 8.0, spacing / 16.0, spacing / 32.0];
    let mut f = [Complex64::new(0.0, 0.0); 3];
    for (fi, &z) in f.iter_mut().zip(&zs) {
        let g = spectral_greens_on_axis(lat, kappa, beta, z, tol_abs)?;
        let free = Complex64::from_polar(1.0 / (4.0 * PI * z), kappa * z);
        *fi = g - free;
    }
    // The remainder is even and analytic in z: fit c0 + c2 z² + c4 z⁴
    // through the three samples and keep c0.
    let (x0, x1, x2) = (zs[0] * zs[0], zs[1] * zs[1], zs[2] * zs[2]);
    let l0 = (x1 * x2) / ((x0 - x1) * (x0 - x2));
    let l1 = (x0 * x2) / ((x1 - x0) * (x1 - x2));
    let l2 = (x0 * x1) / ((x2 - x0) * (x2 - x1));
    let c0 = f[0] * l0 + f[1] * l1 + f[2] * l2;
    // Error estimate: distance to the two-point (c4 = 0) extrapolation.
    let c0_two = (f[1] * x2 - f[2] * x1) / (x2 - x1);
    let s0 = c0 + Complex64::new(0.0, kappa / (4.0 * PI));
    Ok(LatticeSumResult {
        s0,
        s0_scaled: s0 * spacing,
        method: LatticeSumMethod::DirectAccelerated,
        est_error: (c0 - c0_two).norm(),
    })
}
