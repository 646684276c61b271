//! Bose/Fermi propagators for n free identical particles as character-
//! weighted sums over permutation classes, plus the two-particle abelian
//! anyon model on the relative-coordinate ring.

use itertools::Itertools;
use num_complex::Complex64;

use crate::characters::{parity, CharacterRep, Permutation};
use crate::circle::{winding_sum, CirclePoint, Truncation};
use crate::error::{Error, Result};
use crate::kernel::{free_kernel, PhysicalConstants, TimeParameter};

/// Factorial-enumeration cap.
const MAX_PARTICLES: usize = 10;
/// Relative tolerance for the common relative-ring radius in the anyon model.
const ANYON_RADIUS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Statistics {
    Bose,
    Fermi,
    /// Exchange phase e^{i θ} per elementary counterclockwise exchange;
    /// supported for two particles in two dimensions.
    Anyon { theta: f64 },
}

/// Ordered list of n distinct d-dimensional positions.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleConfig {
    positions: Vec<Vec<f64>>,
    d: usize,
}

impl ParticleConfig {
    pub fn new(positions: Vec<Vec<f64>>, d: usize) -> Result<Self> {
        if positions.is_empty() || positions.iter().any(|p| p.len() != d) {
            return Err(Error::SizeMismatch);
        }
        for i in 0..positions.len() {
            for j in i + 1..positions.len() {
                let dist2: f64 = positions[i]
                    .iter()
                    .zip(&positions[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if dist2 <= 0.0 {
                    return Err(Error::CoincidentPositions);
                }
            }
        }
        Ok(Self { positions, d })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        &self.positions
    }
}

/// Partial amplitude for one permutation class:
/// Π_i K(to[σ(i)] <- from[i]).
pub fn permutation_partial(
    from: &ParticleConfig,
    to: &ParticleConfig,
    sigma: &Permutation,
    t: TimeParameter,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    if from.n() != to.n() || from.d() != to.d() || sigma.n() != from.n() {
        return Err(Error::SizeMismatch);
    }
    let d = from.d();
    let mut product = Complex64::new(1.0, 0.0);
    for (i, x_i) in from.positions().iter().enumerate() {
        let target = &to.positions()[sigma.apply(i)];
        let displacement: Vec<f64> = target.iter().zip(x_i).map(|(a, b)| a - b).collect();
        product *= free_kernel(d, &displacement, t, c)?;
    }
    Ok(product)
}

/// Statistics-weighted propagator.
///
/// Bose and Fermi enumerate the n! permutation classes in lexicographic order
/// with the trivial and sign character respectively; the anyon case reduces
/// the two-particle problem to the center of mass times a winding sum on the
/// relative-coordinate ring with the exchange phase as a ℤ-character.
pub fn statistics_propagator(
    from: &ParticleConfig,
    to: &ParticleConfig,
    kind: Statistics,
    t: TimeParameter,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    if from.n() != to.n() || from.d() != to.d() {
        return Err(Error::SizeMismatch);
    }
    if from.d() == 1 && from.n() > 1 {
        return Err(Error::DisconnectedConfigSpace);
    }
    match kind {
        Statistics::Bose | Statistics::Fermi => {
            let n = from.n();
            if n > MAX_PARTICLES {
                return Err(Error::TooManyParticles);
            }
            let mut total = Complex64::new(0.0, 0.0);
            for images in (0..n).permutations(n) {
                let sigma = Permutation::new(images)?;
                let weight = match kind {
                    Statistics::Bose => 1.0,
                    Statistics::Fermi => parity(&sigma) as f64,
                    Statistics::Anyon { .. } => unreachable!(),
                };
                total += permutation_partial(from, to, &sigma, t, c)? * weight;
            }
            Ok(total)
        }
        Statistics::Anyon { theta } => anyon_propagator(from, to, theta, t, c),
    }
}

/// Two-particle anyon propagator on the ring model: the relative coordinate
/// lives on the punctured plane, frozen to a ring of the endpoints' common
/// relative radius, weighted by the abelianized braid character e^{i w θ};
/// the center of mass contributes a free two-dimensional kernel of mass 2m,
/// the relative motion carries the reduced mass m/2.
fn anyon_propagator(
    from: &ParticleConfig,
    to: &ParticleConfig,
    theta: f64,
    t: TimeParameter,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    if from.n() != 2 || from.d() != 2 {
        return Err(Error::AnyonUnsupportedConfig);
    }
    let rel = |cfg: &ParticleConfig| {
        let p = cfg.positions();
        [p[1][0] - p[0][0], p[1][1] - p[0][1]]
    };
    let r_i = rel(from);
    let r_f = rel(to);
    let rho_i = (r_i[0] * r_i[0] + r_i[1] * r_i[1]).sqrt();
    let rho_f = (r_f[0] * r_f[0] + r_f[1] * r_f[1]).sqrt();
    if (rho_i - rho_f).abs() > ANYON_RADIUS_TOL * rho_i.max(rho_f) {
        return Err(Error::AnyonUnsupportedConfig);
    }
    let com = |cfg: &ParticleConfig| {
        let p = cfg.positions();
        [(p[0][0] + p[1][0]) / 2.0, (p[0][1] + p[1][1]) / 2.0]
    };
    let com_i = com(from);
    let com_f = com(to);
    let com_displacement = [com_f[0] - com_i[0], com_f[1] - com_i[1]];
    let com_constants =
        PhysicalConstants::new(c.hbar, 2.0 * c.mass, c.inertia, c.charge_flux_ratio)?;
    let rel_constants =
        PhysicalConstants::new(c.hbar, 0.5 * c.mass, c.inertia, c.charge_flux_ratio)?;
    let k_com = free_kernel(2, &com_displacement, t, &com_constants)?;
    let chi = CharacterRep::BraidAbelian { theta };
    let from_point = CirclePoint::new(r_i[1].atan2(r_i[0]), rho_i)?;
    let to_point = CirclePoint::new(r_f[1].atan2(r_f[0]), rho_i)?;
    let k_rel = winding_sum(
        from_point,
        to_point,
        t,
        &chi,
        Truncation::new(8, 8)?,
        &rel_constants,
    )?;
    Ok(k_com * k_rel)
}
