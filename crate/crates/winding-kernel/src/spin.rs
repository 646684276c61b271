//! Spectral propagators on SU(2) and SO(3) via Wigner D-matrix sums, the
//! class-I/class-II decomposition, and the quaternion double-cover map.
//!
//! Euler angles follow the z-y-z convention with
//! D^j_{mk}(φ,θ,ψ) = e^{-imφ} d^j_{mk}(θ) e^{-ikψ}.
//! Half-integer labels are stored as doubled integers (two_j = 2j).

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::kernel::{PhysicalConstants, TimeParameter};

const PI: f64 = std::f64::consts::PI;

/// ln(n!) table, enough for j up to 75.
static LN_FACTORIAL: Lazy<Vec<f64>> = Lazy::new(|| {
    let mut v = vec![0.0f64; 320];
    for n in 1..v.len() {
        v[n] = v[n - 1] + (n as f64).ln();
    }
    v
});

fn ln_fact(n: i32) -> f64 {
    LN_FACTORIAL[n as usize]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    SU2,
    SO3,
}

/// z-y-z Euler angles. SU(2) points take ψ in [0, 4π); the SO(3) range is
/// [0, 2π). The ranges are conventions of the caller; angle arithmetic here
/// never reduces them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

impl EulerAngles {
    pub fn new(phi: f64, theta: f64, psi: f64) -> Self {
        Self { phi, theta, psi }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// The other SU(2) preimage of the same SO(3) rotation: -q, reached by
    /// advancing ψ through a full 2π turn.
    pub fn antipode(&self) -> Self {
        Self::new(self.phi, self.theta, self.psi + std::f64::consts::TAU)
    }
}

/// Spin labels (j, m, k) stored doubled so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinLabel {
    two_j: i32,
    two_m: i32,
    two_k: i32,
}

impl SpinLabel {
    pub fn new(two_j: i32, two_m: i32, two_k: i32) -> Result<Self> {
        if two_j < 0
            || two_m.abs() > two_j
            || two_k.abs() > two_j
            || (two_j - two_m) % 2 != 0
            || (two_j - two_k) % 2 != 0
        {
            return Err(Error::InvalidSpinLabel);
        }
        Ok(Self {
            two_j,
            two_m,
            two_k,
        })
    }

    pub fn two_j(&self) -> i32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.two_m as f64 / 2.0
    }

    pub fn k(&self) -> f64 {
        self.two_k as f64 / 2.0
    }
}

/// Wigner little-d matrix element d^j_{mk}(θ) by the explicit factorial sum,
/// with log-factorials for stability at large j.
pub fn wigner_d(label: SpinLabel, theta: f64) -> f64 {
    let (tj, tm, tk) = (label.two_j, label.two_m, label.two_k);
    // integer factorial arguments (all are guaranteed integral)
    let j_plus_m = (tj + tm) / 2;
    let j_minus_m = (tj - tm) / 2;
    let j_plus_k = (tj + tk) / 2;
    let j_minus_k = (tj - tk) / 2;
    let ln_norm = 0.5
        * (ln_fact(j_plus_k) + ln_fact(j_minus_k) + ln_fact(j_plus_m) + ln_fact(j_minus_m));
    let half = 0.5 * theta;
    let cos_h = half.cos();
    let sin_h = half.sin();
    let s_min = 0.max((tk - tm) / 2);
    let s_max = j_plus_k.min(j_minus_m);
    let m_minus_k = (tm - tk) / 2;
    let mut acc = 0.0f64;
    for s in s_min..=s_max {
        let sign = if (m_minus_k + s) % 2 == 0 { 1.0 } else { -1.0 };
        let ln_den =
            ln_fact(j_plus_k - s) + ln_fact(s) + ln_fact(m_minus_k + s) + ln_fact(j_minus_m - s);
        // exponents: cos^(2j + k - m - 2s), sin^(m - k + 2s)
        let pc = tj + (tk - tm) / 2 - 2 * s;
        let ps = m_minus_k + 2 * s;
        acc += sign * (ln_norm - ln_den).exp() * cos_h.powi(pc) * sin_h.powi(ps);
    }
    acc
}

/// Full D-matrix element D^j_{mk}(φ,θ,ψ) = e^{-imφ} d^j_{mk}(θ) e^{-ikψ}.
pub fn wigner_big_d(label: SpinLabel, angles: EulerAngles) -> Complex64 {
    let d = wigner_d(label, angles.theta);
    Complex64::cis(-label.m() * angles.phi - label.k() * angles.psi) * d
}

fn normalization(space: Space, two_j: i32) -> Result<f64> {
    let denom = match space {
        Space::SU2 => 16.0 * PI * PI,
        Space::SO3 => {
            if two_j % 2 != 0 {
                return Err(Error::HalfIntegerOnSO3);
            }
            8.0 * PI * PI
        }
    };
    Ok(((two_j as f64 + 1.0) / denom).sqrt())
}

/// Normalized Laplacian eigenfunction Φ^j_{mk} = N √(2j+1)-style constant
/// times D^{j*}_{mk}, with the space-specific normalization.
pub fn eigenfunction(space: Space, label: SpinLabel, angles: EulerAngles) -> Result<Complex64> {
    let norm = normalization(space, label.two_j)?;
    Ok(wigner_big_d(label, angles).conj() * norm)
}

fn energy(two_j: i32, c: &PhysicalConstants) -> f64 {
    let j = two_j as f64 / 2.0;
    c.hbar * c.hbar * j * (j + 1.0) / (2.0 * c.inertia)
}

fn spectral_weight(two_j: i32, t: TimeParameter, c: &PhysicalConstants) -> Complex64 {
    (-Complex64::new(energy(two_j, c), 0.0) * t.effective() / c.hbar).exp()
}

/// One j-block of the propagator: N² Σ_{mk} D^j_{mk}(to) D^{j*}_{mk}(from)
/// times the spectral weight, m outer / k inner, ascending.
fn j_block(
    space: Space,
    two_j: i32,
    from: EulerAngles,
    to: EulerAngles,
    t: TimeParameter,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    let norm = normalization(space, two_j)?;
    let mut block = Complex64::new(0.0, 0.0);
    let mut two_m = -two_j;
    while two_m <= two_j {
        let mut two_k = -two_j;
        while two_k <= two_j {
            let label = SpinLabel::new(two_j, two_m, two_k)?;
            // Φ*(to) Φ(from) = N² D(to) D*(from)
            block += wigner_big_d(label, to) * wigner_big_d(label, from).conj();
            two_k += 2;
        }
        two_m += 2;
    }
    Ok(block * (norm * norm) * spectral_weight(two_j, t, c))
}

/// Integer-j and half-integer-j partial sums of the SU(2) propagator,
/// truncated at two_jmax (inclusive), j ascending.
pub fn split_by_spin(
    from: EulerAngles,
    to: EulerAngles,
    t: TimeParameter,
    two_jmax: i32,
    c: &PhysicalConstants,
) -> Result<(Complex64, Complex64)> {
    if two_jmax < 0 {
        return Err(Error::InvalidSpinLabel);
    }
    let mut k_integer = Complex64::new(0.0, 0.0);
    let mut k_half = Complex64::new(0.0, 0.0);
    for two_j in 0..=two_jmax {
        let block = j_block(Space::SU2, two_j, from, to, t, c)?;
        if two_j % 2 == 0 {
            k_integer += block;
        } else {
            k_half += block;
        }
    }
    Ok((k_integer, k_half))
}

/// Truncated spectral propagator. On SU(2) this is exactly the sum of the
/// split_by_spin parts; on SO(3) only integer j contributes, with the 8π²
/// normalization.
pub fn propagator(
    space: Space,
    from: EulerAngles,
    to: EulerAngles,
    t: TimeParameter,
    two_jmax: i32,
    c: &PhysicalConstants,
) -> Result<Complex64> {
    match space {
        Space::SU2 => {
            let (k_integer, k_half) = split_by_spin(from, to, t, two_jmax, c)?;
            Ok(k_integer + k_half)
        }
        Space::SO3 => {
            if two_jmax < 0 {
                return Err(Error::InvalidSpinLabel);
            }
            let mut sum = Complex64::new(0.0, 0.0);
            let mut two_j = 0;
            while two_j <= two_jmax {
                sum += j_block(Space::SO3, two_j, from, to, t, c)?;
                two_j += 2;
            }
            Ok(sum)
        }
    }
}

/// Smallest two_jmax whose spectral tail bound (2j+1)² e^{-E_j τ/ħ} drops
/// below `rel_tol` of the j = 0 weight, or TruncationInsufficient past the cap.
pub fn two_jmax_for_tolerance(
    t: TimeParameter,
    c: &PhysicalConstants,
    rel_tol: f64,
) -> Result<i32> {
    let tau_re = t.effective().re;
    for two_j in 0..=300 {
        let j = two_j as f64 / 2.0;
        let tail = (2.0 * j + 1.0).powi(2) * (-energy(two_j, c) * tau_re / c.hbar).exp();
        if tail < rel_tol {
            return Ok(two_j);
        }
    }
    Err(Error::TruncationInsufficient)
}

/// Class partial amplitudes (K_I, K_II) on SO(3), built from the SU(2)
/// propagator at the two preimages ±q of the target rotation:
/// K_II = K_SU(2)(q) and K_I = -K_SU(2)(-q), which solves
/// 2 K_int = K_II - K_I and 2 K_half = K_II + K_I.
pub fn class_partials(
    from: EulerAngles,
    to: EulerAngles,
    t: TimeParameter,
    two_jmax: i32,
    c: &PhysicalConstants,
) -> Result<(Complex64, Complex64)> {
    let k_at_q = propagator(Space::SU2, from, to, t, two_jmax, c)?;
    let k_at_minus_q = propagator(Space::SU2, from, to.antipode(), t, two_jmax, c)?;
    let k_ii = k_at_q;
    let k_i = -k_at_minus_q;
    Ok((k_i, k_ii))
}

/// Unit quaternion a + b i + c j + d k, renormalized on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl UnitQuaternion {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let norm = (a * a + b * b + c * c + d * d).sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::ZeroQuaternion);
        }
        Ok(Self {
            a: a / norm,
            b: b / norm,
            c: c / norm,
            d: d / norm,
        })
    }

    pub fn negated(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn mul(&self, o: &UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion {
            a: self.a * o.a - self.b * o.b - self.c * o.c - self.d * o.d,
            b: self.a * o.b + self.b * o.a + self.c * o.d - self.d * o.c,
            c: self.a * o.c - self.b * o.d + self.c * o.a + self.d * o.b,
            d: self.a * o.d + self.b * o.c - self.c * o.b + self.d * o.a,
        }
    }
}

/// SO(3) matrix obtained by conjugating the pure-quaternion basis: the image
/// of x -> q x q^{-1}. Satisfies R(q) == R(-q) exactly.
pub fn quaternion_to_rotation(q: &UnitQuaternion) -> [[f64; 3]; 3] {
    let (a, b, c, d) = (q.a, q.b, q.c, q.d);
    [
        [
            a * a + b * b - c * c - d * d,
            2.0 * (b * c - a * d),
            2.0 * (b * d + a * c),
        ],
        [
            2.0 * (b * c + a * d),
            a * a - b * b + c * c - d * d,
            2.0 * (c * d - a * b),
        ],
        [
            2.0 * (b * d - a * c),
            2.0 * (c * d + a * b),
            a * a - b * b - c * c + d * d,
        ],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn little_d_identity_rotation() {
        for two_j in 0..=12 {
            let mut two_m = -two_j;
            while two_m <= two_j {
                let mut two_k = -two_j;
                while two_k <= two_j {
                    let d = wigner_d(SpinLabel::new(two_j, two_m, two_k).unwrap(), 0.0);
                    let expected = if two_m == two_k { 1.0 } else { 0.0 };
                    assert!(
                        (d - expected).abs() < 1e-14,
                        "two_j={two_j} two_m={two_m} two_k={two_k}"
                    );
                    two_k += 2;
                }
                two_m += 2;
            }
        }
    }

    #[test]
    fn little_d_half_spin_is_cosine() {
        for theta in [0.0, 0.3, 1.0, 2.5, PI] {
            let d = wigner_d(SpinLabel::new(1, 1, 1).unwrap(), theta);
            assert!((d - (theta / 2.0).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn little_d_row_orthonormality() {
        for two_j in [1, 2, 3, 5, 8] {
            for theta in [0.4, 1.3, 2.9] {
                let mut two_m = -two_j;
                while two_m <= two_j {
                    let mut row = 0.0;
                    let mut two_k = -two_j;
                    while two_k <= two_j {
                        let d = wigner_d(SpinLabel::new(two_j, two_m, two_k).unwrap(), theta);
                        row += d * d;
                        two_k += 2;
                    }
                    assert!((row - 1.0).abs() < 1e-12, "two_j={two_j} two_m={two_m}");
                    two_m += 2;
                }
            }
        }
    }

    #[test]
    fn big_d_unitarity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for two_j in 0..=12 {
            let angles = EulerAngles::new(
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..2.0 * std::f64::consts::TAU),
            );
            let mut two_m = -two_j;
            while two_m <= two_j {
                let mut two_mp = -two_j;
                while two_mp <= two_j {
                    let mut acc = Complex64::new(0.0, 0.0);
                    let mut two_k = -two_j;
                    while two_k <= two_j {
                        let dm = wigner_big_d(SpinLabel::new(two_j, two_m, two_k).unwrap(), angles);
                        let dmp =
                            wigner_big_d(SpinLabel::new(two_j, two_mp, two_k).unwrap(), angles);
                        acc += dm * dmp.conj();
                        two_k += 2;
                    }
                    let expected = if two_m == two_mp { 1.0 } else { 0.0 };
                    assert!(
                        (acc - expected).norm() < 1e-10,
                        "two_j={two_j} m={two_m} m'={two_mp}"
                    );
                    two_mp += 2;
                }
                two_m += 2;
            }
        }
    }

    /// Independent oracle: d^j(θ) as the matrix exponential exp(-i θ J_y)
    /// built from angular momentum ladder matrix elements and a Taylor series.
    fn d_matrix_by_exponential(two_j: i32, theta: f64) -> Vec<Vec<f64>> {
        let dim = (two_j + 1) as usize;
        let j = two_j as f64 / 2.0;
        // Jy[m'][m], rows/cols indexed by m = -j + row
        let mut jy = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let m = -j + col as f64;
            // <m+1|J+|m> = sqrt(j(j+1) - m(m+1))
            if col + 1 < dim {
                let plus = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
                jy[col + 1][col] += Complex64::new(0.0, -0.5) * plus;
            }
            if col >= 1 {
                let minus = (j * (j + 1.0) - m * (m - 1.0)).sqrt();
                jy[col - 1][col] -= Complex64::new(0.0, -0.5) * minus;
            }
        }
        // exp(-i θ Jy) by scaling and squaring with a Taylor series
        let mut a = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        let squarings = 8u32;
        let scale = -theta / 2f64.powi(squarings as i32);
        for (r, row) in jy.iter().enumerate() {
            for (cc, &v) in row.iter().enumerate() {
                a[r][cc] = Complex64::new(0.0, 1.0) * v * scale;
            }
        }
        let matmul = |x: &Vec<Vec<Complex64>>, y: &Vec<Vec<Complex64>>| {
            let mut z = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
            for r in 0..dim {
                for k in 0..dim {
                    let xv = x[r][k];
                    if xv.norm_sqr() == 0.0 {
                        continue;
                    }
                    for cc in 0..dim {
                        z[r][cc] += xv * y[k][cc];
                    }
                }
            }
            z
        };
        let mut result = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for (r, row) in result.iter_mut().enumerate() {
            row[r] = Complex64::new(1.0, 0.0);
        }
        let mut term = result.clone();
        for order in 1..=24 {
            term = matmul(&term, &a);
            let inv = 1.0 / order as f64;
            for r in 0..dim {
                for cc in 0..dim {
                    term[r][cc] *= inv;
                    result[r][cc] += term[r][cc];
                }
            }
        }
        for _ in 0..squarings {
            result = matmul(&result, &result);
        }
        result
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.re).collect())
            .collect()
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn little_d_matches_matrix_exponential() {
        for two_j in 1..=6 {
            for theta in [0.2, 0.9, 1.7, 2.8] {
                let oracle = d_matrix_by_exponential(two_j, theta);
                let dim = (two_j + 1) as usize;
                for row in 0..dim {
                    for col in 0..dim {
                        // row index: m = -j + row (doubled: -two_j + 2 row)
                        let two_m = -two_j + 2 * row as i32;
                        let two_k = -two_j + 2 * col as i32;
                        let d = wigner_d(SpinLabel::new(two_j, two_m, two_k).unwrap(), theta);
                        assert!(
                            (d - oracle[row][col]).abs() < 1e-10,
                            "two_j={two_j} theta={theta} m={two_m} k={two_k}: {d} vs {}",
                            oracle[row][col]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eigenfunction_normalization_constants() {
        let id = EulerAngles::identity();
        let su2 = eigenfunction(Space::SU2, SpinLabel::new(0, 0, 0).unwrap(), id).unwrap();
        assert!((su2.re - (1.0 / (16.0 * PI * PI)).sqrt()).abs() < 1e-15);
        let so3 = eigenfunction(Space::SO3, SpinLabel::new(0, 0, 0).unwrap(), id).unwrap();
        assert!((so3.re - (1.0 / (8.0 * PI * PI)).sqrt()).abs() < 1e-15);
        let half = eigenfunction(Space::SU2, SpinLabel::new(1, 1, 1).unwrap(), id).unwrap();
        assert!((half.re - (2.0 / (16.0 * PI * PI)).sqrt()).abs() < 1e-15);
        assert_eq!(
            eigenfunction(Space::SO3, SpinLabel::new(1, 1, 1).unwrap(), id),
            Err(Error::HalfIntegerOnSO3)
        );
    }

    #[test]
    fn diagonal_propagator_collapses_to_degeneracy_sum() {
        let id = EulerAngles::identity();
        let c = PhysicalConstants::natural();
        let t = TimeParameter::imaginary(1.0).unwrap();
        let two_jmax = 20;
        let full = propagator(Space::SU2, id, id, t, two_jmax, &c).unwrap();
        let mut collapsed = 0.0f64;
        for two_j in 0..=two_jmax {
            let j = two_j as f64 / 2.0;
            collapsed += (2.0 * j + 1.0).powi(2) / (16.0 * PI * PI)
                * (-j * (j + 1.0) / 2.0).exp();
        }
        assert!((full.re - collapsed).abs() < 1e-12);
        assert!(full.im.abs() < 1e-15);
        let so3 = propagator(Space::SO3, id, id, t, two_jmax, &c).unwrap();
        let mut collapsed_so3 = 0.0f64;
        let mut two_j = 0;
        while two_j <= two_jmax {
            let j = two_j as f64 / 2.0;
            collapsed_so3 +=
                (2.0 * j + 1.0).powi(2) / (8.0 * PI * PI) * (-j * (j + 1.0) / 2.0).exp();
            two_j += 2;
        }
        assert!((so3.re - collapsed_so3).abs() < 1e-12);
    }

    #[test]
    fn long_time_constant_mode() {
        let id = EulerAngles::identity();
        let c = PhysicalConstants::natural();
        let t = TimeParameter::imaginary(500.0).unwrap();
        let su2 = propagator(Space::SU2, id, id, t, 8, &c).unwrap();
        assert!((su2.re - 1.0 / (16.0 * PI * PI)).abs() < 1e-14);
        let so3 = propagator(Space::SO3, id, id, t, 8, &c).unwrap();
        assert!((so3.re - 1.0 / (8.0 * PI * PI)).abs() < 1e-14);
    }

    #[test]
    fn split_parts_sum_to_whole() {
        let c = PhysicalConstants::natural();
        let t = TimeParameter::imaginary(0.7).unwrap();
        let from = EulerAngles::identity();
        let to = EulerAngles::new(0.5, 1.1, 2.3);
        let (k_int, k_half) = split_by_spin(from, to, t, 15, &c).unwrap();
        let whole = propagator(Space::SU2, from, to, t, 15, &c).unwrap();
        assert_eq!(k_int + k_half, whole);
        // large tau: half-integer part vanishes relative to integer part
        let t_long = TimeParameter::imaginary(200.0).unwrap();
        let (k_int, k_half) = split_by_spin(from, to, t_long, 8, &c).unwrap();
        assert!(k_half.norm() / k_int.norm() < 1e-10);
    }

    #[test]
    fn antipode_flips_half_integer_terms() {
        let c = PhysicalConstants::natural();
        let t = TimeParameter::imaginary(0.9).unwrap();
        let from = EulerAngles::identity();
        let to = EulerAngles::new(0.8, 0.6, 1.9);
        for two_j in 0..=9 {
            let direct = j_block(Space::SU2, two_j, from, to, t, &c).unwrap();
            let flipped = j_block(Space::SU2, two_j, from, to.antipode(), t, &c).unwrap();
            let sign = if two_j % 2 == 0 { 1.0 } else { -1.0 };
            assert!(
                (direct * sign - flipped).norm() < 1e-12 * direct.norm().max(1e-30),
                "two_j={two_j}"
            );
        }
    }

    #[test]
    fn class_partials_satisfy_three_relations() {
        let c = PhysicalConstants::natural();
        let t = TimeParameter::imaginary(1.0).unwrap();
        let from = EulerAngles::identity();
        let to = EulerAngles::new(0.3, 1.4, 0.7);
        let two_jmax = 16;
        let (k_i, k_ii) = class_partials(from, to, t, two_jmax, &c).unwrap();
        let (k_int, k_half) = split_by_spin(from, to, t, two_jmax, &c).unwrap();
        let scale = k_ii.norm();
        // 2 K_int = K_II - K_I
        assert!((k_int * 2.0 - (k_ii - k_i)).norm() < 1e-12 * scale);
        // 2 K_half = K_II + K_I
        assert!((k_half * 2.0 - (k_ii + k_i)).norm() < 1e-12 * scale);
        // K_SU(2) = K_II
        let whole = propagator(Space::SU2, from, to, t, two_jmax, &c).unwrap();
        assert!((whole - k_ii).norm() < 1e-12 * scale);
        // K_SO(3) = K_II - K_I (the 8π² normalization doubles the integer blocks)
        let so3 = propagator(Space::SO3, from, to, t, two_jmax, &c).unwrap();
        assert!((so3 - (k_ii - k_i)).norm() < 1e-10 * scale);
    }

    #[test]
    fn long_time_class_partials_tend_to_minus_k_integer() {
        let c = PhysicalConstants::natural();
        let t = TimeParameter::imaginary(100.0).unwrap();
        let id = EulerAngles::identity();
        let (k_i, _) = class_partials(id, id, t, 8, &c).unwrap();
        let (k_int, k_half) = split_by_spin(id, id, t, 8, &c).unwrap();
        assert!(k_half.norm() < 1e-10 * k_int.norm());
        assert!((k_i + k_int).norm() < 1e-12 * k_int.norm());
    }

    #[test]
    fn quaternion_rotation_examples() {
        let identity = UnitQuaternion::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let r = quaternion_to_rotation(&identity);
        for (i, row) in r.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((v - expected).abs() < 1e-15);
            }
        }
        // π/2 about z
        let h = std::f64::consts::FRAC_PI_4;
        let q = UnitQuaternion::new(h.cos(), 0.0, 0.0, h.sin()).unwrap();
        let r = quaternion_to_rotation(&q);
        let expected = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((r[i][j] - expected[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn double_cover_kernel_and_homomorphism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let random_q = |rng: &mut rand_chacha::ChaCha8Rng| {
            UnitQuaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .unwrap()
        };
        for _ in 0..1000 {
            let q1 = random_q(&mut rng);
            let q2 = random_q(&mut rng);
            // exact antipodal degeneracy
            assert_eq!(
                quaternion_to_rotation(&q1),
                quaternion_to_rotation(&q1.negated())
            );
            // homomorphism R(q1 q2) = R(q1) R(q2)
            let lhs = quaternion_to_rotation(&q1.mul(&q2));
            let r1 = quaternion_to_rotation(&q1);
            let r2 = quaternion_to_rotation(&q2);
            for i in 0..3 {
                for j in 0..3 {
                    let mut v = 0.0;
                    for k in 0..3 {
                        v += r1[i][k] * r2[k][j];
                    }
                    assert!((lhs[i][j] - v).abs() < 1e-12);
                }
            }
            // orthogonality and det +1
            let r = quaternion_to_rotation(&q1);
            for i in 0..3 {
                for j in 0..3 {
                    let v: f64 = (0..3).map(|k| r[k][i] * r[k][j]).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((v - expected).abs() < 1e-12);
                }
            }
            let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
            assert!((det - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_labels_rejected() {
        assert_eq!(SpinLabel::new(-1, 0, 0), Err(Error::InvalidSpinLabel));
        assert_eq!(SpinLabel::new(2, 3, 0), Err(Error::InvalidSpinLabel));
        assert_eq!(SpinLabel::new(2, 1, 0), Err(Error::InvalidSpinLabel));
        assert_eq!(UnitQuaternion::new(0.0, 0.0, 0.0, 0.0), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn jmax_helper_converges_and_caps() {
        let c = PhysicalConstants::natural();
        let t = TimeParameter::imaginary(1.0).unwrap();
        let two_jmax = two_jmax_for_tolerance(t, &c, 1e-12).unwrap();
        assert!(two_jmax > 0 && two_jmax < 60);
        let t_short = TimeParameter::imaginary(1e-9).unwrap();
        assert_eq!(
            two_jmax_for_tolerance(t_short, &c, 1e-12),
            Err(Error::TruncationInsufficient)
        );
    }
}
