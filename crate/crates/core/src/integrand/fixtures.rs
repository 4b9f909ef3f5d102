//! Named integrands with known closed-form behaviour.

use crate::error::{Error, Result};
use crate::integrand::{ClosedForm, FourierSeries, HarmonicSeries, Integrand};

/// γ ≡ 1 on Sⁿ; the Wulff shape is the unit ball.
pub fn ball(n: usize) -> Integrand {
    Integrand::constant(n, 1.0).expect("constant 1 is positive")
}

/// 1 + 0.2 cos θ: support function of the unit disc centred at (0.2, 0).
pub fn translated_disc() -> Integrand {
    Integrand::fourier(FourierSeries::new(1.0, &[0.2], &[]).expect("finite")).expect("positive")
}

/// √(4cos²θ + sin²θ): support function of the ellipse with semi-axes 2, 1.
pub fn ellipse() -> Integrand {
    Integrand::closed_form(ClosedForm::Ellipse { a: 2.0, b: 1.0 }).expect("positive")
}

/// 1 + 0.2 cos θ + 0.1 sin 2θ, whose critical point at 3π/2 is degenerate.
pub fn degenerate() -> Integrand {
    Integrand::fourier(FourierSeries::new(1.0, &[0.2], &[0.0, 0.1]).expect("finite")).expect("positive")
}

/// 1 + 0.5 cos 2θ, positive but not a convex integrand.
pub fn nonconvex() -> Integrand {
    Integrand::fourier(FourierSeries::new(1.0, &[0.0, 0.5], &[]).expect("finite")).expect("positive")
}

/// Smooth convex integrand that is affine (γ + γ″ = 0) on |θ| ≤ 0.5, so its
/// Wulff shape has a corner at (0.3, 0).
pub fn flat_blend() -> Integrand {
    let (p, w, mu): (f64, f64, f64) = (0.3, 0.5, 2.0);
    // Normalize so that γ(π) = 1.
    let lambda = (1.0 + p) / (-mu / (w.cos() + 1.0)).exp();
    Integrand::closed_form(ClosedForm::FlatBlend { p, w, lambda, mu }).expect("positive")
}

/// Coefficients of the stable n = 2 fixture.
pub const HARMONIC_STABLE_TERMS: [(usize, i64, f64); 6] = [
    (0, 0, 3.544907701811032),
    (1, 0, 0.1),
    (2, 1, 0.05),
    (1, -1, 0.03),
    (2, -2, 0.02),
    (2, 2, 0.015),
];

/// 1 + 0.1 Y₁₀ + 0.05 Y₂₁ + 0.03 Y₁,₋₁ + 0.02 Y₂,₋₂ + 0.015 Y₂₂ on S².
///
/// The last three terms break the y ↦ −y mirror symmetry that would
/// otherwise produce two critical points with equal value.
pub fn harmonic_stable() -> Integrand {
    Integrand::harmonic(HarmonicSeries::new(&HARMONIC_STABLE_TERMS).expect("finite")).expect("positive")
}

/// The symmetric two-term perturbation 1 + 0.1 Y₁₀ + 0.05 Y₂₁ (not stable).
pub fn harmonic_symmetric() -> Integrand {
    let terms = [(0, 0, HARMONIC_STABLE_TERMS[0].2), (1, 0, 0.1), (2, 1, 0.05)];
    Integrand::harmonic(HarmonicSeries::new(&terms).expect("finite")).expect("positive")
}

pub const NAMES: [&str; 9] = [
    "ball",
    "ball2",
    "translated_disc",
    "ellipse",
    "degenerate",
    "nonconvex",
    "flat_blend",
    "harmonic_stable",
    "harmonic_symmetric",
];

pub fn by_name(name: &str) -> Result<Integrand> {
    Ok(match name {
        "ball" => ball(1),
        "ball2" => ball(2),
        "translated_disc" => translated_disc(),
        "ellipse" => ellipse(),
        "degenerate" => degenerate(),
        "nonconvex" => nonconvex(),
        "flat_blend" => flat_blend(),
        "harmonic_stable" => harmonic_stable(),
        "harmonic_symmetric" => harmonic_symmetric(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown fixture `{other}` (known: {})",
                NAMES.join(", ")
            )))
        }
    })
}
