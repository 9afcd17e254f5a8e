//! Complete elliptic integrals of the first and second kind, plus the
//! derived integral D, in the eccentricity (modulus) convention:
//!
//! ```text
//! K(e) = ∫₀^{π/2} (1 - e² sin²φ)^{-1/2} dφ
//! E(e) = ∫₀^{π/2} (1 - e² sin²φ)^{+1/2} dφ
//! D(e) = ∫₀^{π/2} sin²φ (1 - e² sin²φ)^{-1/2} dφ = (K(e) - E(e))/e²
//! ```
//!
//! Evaluation is by arithmetic-geometric-mean iteration, which converges
//! quadratically and reaches f64 precision in a handful of steps. Note the
//! argument is the modulus `e`, not the parameter `m = e²` used by some
//! libraries.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const MAX_ITER: usize = 40;

/// Eccentricity of an elliptical opening, `e = sqrt(1 - b²/a²)`.
///
/// Valid range is `0 <= e < 1`. The slit limit `e = 1` is rejected because
/// K and D diverge logarithmically there.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Eccentricity(f64);

impl Eccentricity {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&value) {
            return Err(Error::Domain(format!(
                "eccentricity must satisfy 0 <= e < 1, got {value}"
            )));
        }
        Ok(Self(value))
    }

    /// Eccentricity of an ellipse with semi-axes `a >= b > 0`.
    pub fn from_semi_axes(a: f64, b: f64) -> Result<Self> {
        if !(a >= b && b > 0.0) {
            return Err(Error::Domain(format!(
                "semi-axes must satisfy a >= b > 0, got a={a}, b={b}"
            )));
        }
        Self::new((1.0 - (b / a) * (b / a)).max(0.0).sqrt())
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// AGM iteration. Returns (agm, sum of 2^{n-1} c_n²) needed by both K and E.
fn agm(e: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = (1.0 - e * e).sqrt();
    let mut c = e;
    let mut sum = 0.5 * c * c;
    let mut pow2 = 1.0;
    for _ in 0..MAX_ITER {
        if c.abs() < f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        pow2 *= 2.0;
        sum += 0.5 * pow2 * c * c;
        a = an;
        b = bn;
    }
    (a, sum)
}

/// Complete elliptic integral of the first kind, `K(e)`.
///
/// `K(0) = π/2`; strictly increasing on `[0, 1)`.
pub fn ellip_k(eps: Eccentricity) -> f64 {
    let (m, _) = agm(eps.value());
    PI / (2.0 * m)
}

/// Complete elliptic integral of the second kind, `E(e)`.
///
/// `E(0) = π/2`; strictly decreasing on `[0, 1)`. For the slit limit see
/// [`ellip_e_slit`].
pub fn ellip_e(eps: Eccentricity) -> f64 {
    let (m, sum) = agm(eps.value());
    PI / (2.0 * m) * (1.0 - sum)
}

/// Exact value `E(1) = 1`, the only point of `[0, 1]` where E is finite but
/// K is not. Kept separate so that [`Eccentricity`] can reject `e = 1`
/// uniformly.
pub fn ellip_e_slit() -> f64 {
    1.0
}

/// Switch point below which D is evaluated by its Maclaurin series; the
/// difference quotient (K - E)/e² loses roughly eight digits near zero.
const D_SERIES_CUTOFF: f64 = 1e-4;

/// The integral `D(e) = (K(e) - E(e))/e²`, with `D(0) = π/4`.
pub fn ellip_d(eps: Eccentricity) -> f64 {
    let e = eps.value();
    if e < D_SERIES_CUTOFF {
        // D(e) = π/4 + 3π/32 e² + 15π/256 e⁴ + 175π/4096 e⁶ + O(e⁸)
        let e2 = e * e;
        return PI * (0.25 + e2 * (3.0 / 32.0 + e2 * (15.0 / 256.0 + e2 * 175.0 / 4096.0)));
    }
    (ellip_k(eps) - ellip_e(eps)) / (e * e)
}
