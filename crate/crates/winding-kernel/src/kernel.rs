//! Free-particle short-time kernels in d dimensions.
//!
//! These Gaussian kernels are the building block for every class-partial
//! amplitude: each homotopy class contributes one kernel evaluated at the
//! class's lifted displacement.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Evolution interval, either as a heat kernel (imaginary time) or as a
/// regularized real-time propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeMode {
    ImaginaryTime,
    /// Real time with the regularization t -> t(1 - i*epsilon).
    RealTime { epsilon: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeParameter {
    value: f64,
    mode: TimeMode,
}

impl TimeParameter {
    pub fn imaginary(tau: f64) -> Result<Self> {
        if tau <= 0.0 || tau.is_nan() {
            return Err(Error::NonpositiveTime);
        }
        Ok(Self {
            value: tau,
            mode: TimeMode::ImaginaryTime,
        })
    }

    pub fn real(t: f64, epsilon: f64) -> Result<Self> {
        if t <= 0.0 || epsilon <= 0.0 || t.is_nan() || epsilon.is_nan() {
            return Err(Error::NonpositiveTime);
        }
        Ok(Self {
            value: t,
            mode: TimeMode::RealTime { epsilon },
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn mode(&self) -> TimeMode {
        self.mode
    }

    /// Complex time entering every Gaussian/spectral weight.
    ///
    /// Imaginary time keeps tau real; real time substitutes
    /// tau -> i*t*(1 - i*epsilon) = t*epsilon + i*t, whose positive real part
    /// makes the truncated class sums absolutely convergent.
    pub fn effective(&self) -> Complex64 {
        match self.mode {
            TimeMode::ImaginaryTime => Complex64::new(self.value, 0.0),
            TimeMode::RealTime { epsilon } => Complex64::new(self.value * epsilon, self.value),
        }
    }
}

/// Physical constants in natural units. Only the dimensionless flux ratio
/// eΦ/(2πħc) ever represents the electromagnetic quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    pub inertia: f64,
    pub charge_flux_ratio: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64, inertia: f64, charge_flux_ratio: f64) -> Result<Self> {
        if [hbar, mass, inertia].iter().any(|&v| v <= 0.0 || v.is_nan()) {
            return Err(Error::InvalidConstants);
        }
        Ok(Self {
            hbar,
            mass,
            inertia,
            charge_flux_ratio,
        })
    }

    /// hbar = mass = inertia = 1, zero flux.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            inertia: 1.0,
            charge_flux_ratio: 0.0,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

/// Free-particle kernel (m/(2π ħ τ))^{d/2} exp(-m |Δx|² / (2 ħ τ)) with the
/// principal branch of the power for complex τ.
pub fn free_kernel(
    d: usize,
    displacement: &[f64],
    t: TimeParameter,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    if d < 1 || displacement.len() != d {
        return Err(Error::SizeMismatch);
    }
    let tau = t.effective();
    let r2: f64 = displacement.iter().map(|x| x * x).sum();
    let base = Complex64::new(c.mass / (2.0 * std::f64::consts::PI * c.hbar), 0.0) / tau;
    let prefactor = base.powf(d as f64 / 2.0);
    let exponent = -Complex64::new(c.mass * r2 / (2.0 * c.hbar), 0.0) / tau;
    Ok(prefactor * exponent.exp())
}

/// One-dimensional trapezoidal grid for the composition check.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

/// Chapman-Kolmogorov composition check in imaginary time:
/// ∫ K(x_c, b; τ₂) K(b, x_a; τ₁) db by trapezoidal quadrature.
///
/// The quadrature error is estimated by comparing against the half-resolution
/// grid; if the estimate exceeds `tol` the grid is rejected.
pub fn compose_check(
    x_a: f64,
    x_c: f64,
    tau1: f64,
    tau2: f64,
    grid: QuadratureGrid,
    tol: f64,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    if grid.points < 5 || grid.hi <= grid.lo || grid.hi.is_nan() || grid.lo.is_nan() {
        return Err(Error::GridTooCoarse);
    }
    let t1 = TimeParameter::imaginary(tau1)?;
    let t2 = TimeParameter::imaginary(tau2)?;
    let integrand = |b: f64| -> Result<Complex64> {
        Ok(free_kernel(1, &[x_c - b], t2, c)? * free_kernel(1, &[b - x_a], t1, c)?)
    };
    let trapezoid = |n: usize| -> Result<Complex64> {
        let h = (grid.hi - grid.lo) / n as f64;
        let mut acc = (integrand(grid.lo)? + integrand(grid.hi)?) * 0.5;
        for i in 1..n {
            acc += integrand(grid.lo + i as f64 * h)?;
        }
        Ok(acc * h)
    };
    let n = grid.points - 1;
    let full = trapezoid(n)?;
    let half = trapezoid(n / 2)?;
    if (full - half).norm() > tol {
        return Err(Error::GridTooCoarse);
    }
    Ok(full)
}
