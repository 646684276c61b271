//! Free particle on a circle of radius ρ: the class sum over winding images
//! and its independent spectral (momentum-eigenstate) form. Poisson summation
//! makes the two routes agree, which is this module's ground truth.

use num_complex::Complex64;

use crate::characters::{char_eval, CharacterRep, GroupElement};
use crate::error::{Error, Result};
use crate::kernel::{free_kernel, PhysicalConstants, TimeParameter};

/// Point on a circle; the angle is reduced into [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    angle: f64,
    rho: f64,
}

impl CirclePoint {
    pub fn new(angle: f64, rho: f64) -> Result<Self> {
        if rho <= 0.0 || rho.is_nan() {
            return Err(Error::RadiusMismatch);
        }
        Ok(Self {
            angle: angle.rem_euclid(std::f64::consts::TAU),
            rho,
        })
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Truncation request for the two infinite sums. The sums grow beyond the
/// requested sizes until the tail condition holds, up to a hard cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub max_winding: usize,
    pub max_mode: usize,
}

impl Truncation {
    pub fn new(max_winding: usize, max_mode: usize) -> Result<Self> {
        if max_winding < 1 || max_mode < 1 {
            return Err(Error::TruncationInsufficient);
        }
        Ok(Self {
            max_winding,
            max_mode,
        })
    }
}

/// Hard cap on adaptive truncation growth.
const TRUNCATION_CAP: usize = 10_000;
/// Outermost term must fall below this fraction of the absolute running sum.
const TAIL_REL_TOL: f64 = 1e-14;

/// Sum of per-class terms phase(w) * K(rho*(dtheta + 2π w)) over w in
/// [-N, N] ascending, with N grown from `start` until the outermost kernel
/// moduli drop below TAIL_REL_TOL of the absolute sum.
///
/// Both the circle winding sum and the Aharonov-Bohm amplitude are this sum
/// with different per-class phases, so their zero-flux agreement is exact.
pub(crate) fn class_image_sum<F>(
    dtheta: f64,
    rho: f64,
    t: TimeParameter,
    c: &PhysicalConstants,
    start: usize,
    phase: F,
) -> Result<Complex64>
where
    F: Fn(i64) -> Complex64,
{
    let mut n = start.max(1);
    loop {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0f64;
        for w in -(n as i64)..=(n as i64) {
            let arc = rho * (dtheta + std::f64::consts::TAU * w as f64);
            let kernel = free_kernel(1, &[arc], t, c)?;
            sum += phase(w) * kernel;
            abs_sum += kernel.norm();
        }
        let tail = {
            let up = rho * (dtheta + std::f64::consts::TAU * n as f64);
            let dn = rho * (dtheta - std::f64::consts::TAU * n as f64);
            free_kernel(1, &[up], t, c)?
                .norm()
                .max(free_kernel(1, &[dn], t, c)?.norm())
        };
        if tail <= TAIL_REL_TOL * abs_sum {
            return Ok(sum);
        }
        if n >= TRUNCATION_CAP {
            return Err(Error::TruncationInsufficient);
        }
        n = (n * 2).min(TRUNCATION_CAP);
    }
}

/// Character-weighted winding sum Σ_w χ(w) K_w for a ℤ (or abelianized
/// braid) character.
pub fn winding_sum(
    from: CirclePoint,
    to: CirclePoint,
    t: TimeParameter,
    chi: &CharacterRep,
    trunc: Truncation,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    if from.rho != to.rho {
        return Err(Error::RadiusMismatch);
    }
    match chi {
        CharacterRep::IntegersZ { .. } | CharacterRep::BraidAbelian { .. } => {}
        _ => return Err(Error::ElementOutOfDomain),
    }
    let dtheta = to.angle - from.angle;
    class_image_sum(dtheta, from.rho, t, c, trunc.max_winding, |w| {
        char_eval(chi, &GroupElement::Integer(w)).expect("integer element")
    })
}

/// Spectral form: (2πρ)^{-1} Σ_m e^{i(m + δ/2π)Δθ} e^{-E_m τ/ħ} with
/// E_m = ħ²(m + δ/2π)²/(2 m ρ²), summed ascending in m.
pub fn spectral_sum(
    from: CirclePoint,
    to: CirclePoint,
    t: TimeParameter,
    delta: f64,
    trunc: Truncation,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    if from.rho != to.rho {
        return Err(Error::RadiusMismatch);
    }
    let rho = from.rho;
    let dtheta = to.angle - from.angle;
    let nu = delta / std::f64::consts::TAU;
    let tau = t.effective();
    let norm = 1.0 / (std::f64::consts::TAU * rho);
    let energy = |shift: f64| c.hbar * c.hbar * shift * shift / (2.0 * c.mass * rho * rho);
    let term = |m: i64| -> Complex64 {
        let shift = m as f64 + nu;
        let weight = (-Complex64::new(energy(shift), 0.0) * tau / c.hbar).exp();
        Complex64::cis(shift * dtheta) * weight * norm
    };
    let mut n = trunc.max_mode.max(1);
    loop {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0f64;
        for m in -(n as i64)..=(n as i64) {
            let v = term(m);
            sum += v;
            abs_sum += v.norm();
        }
        let tail = term(n as i64).norm().max(term(-(n as i64)).norm());
        if tail <= TAIL_REL_TOL * abs_sum {
            return Ok(sum);
        }
        if n >= TRUNCATION_CAP {
            return Err(Error::TruncationInsufficient);
        }
        n = (n * 2).min(TRUNCATION_CAP);
    }
}
