//! Runtime self-verification. Each check re-derives a numerical identity
//! from scratch (including independent determinant/permanent evaluators) and
//! reports pass/fail with a short diagnostic. All randomness is seeded, so
//! the suite is deterministic across runs and thread counts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aharonov_bohm::{ab_amplitude, ABSetup};
use crate::characters::{assemble, char_eval, CharacterRep, GroupElement, Permutation, SnKind};
use crate::circle::{spectral_sum, winding_sum, CirclePoint, Truncation};
use crate::homotopy::{relabel, ClassLabeling, WindingClass};
use crate::kernel::{PhysicalConstants, TimeParameter};
use crate::many_body::{ParticleConfig, Statistics};
use crate::spin::{
    quaternion_to_rotation, wigner_big_d, EulerAngles, SpinLabel, UnitQuaternion,
};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_residual(name: &'static str, residual: f64, tol: f64) -> Check {
        Check {
            name,
            passed: residual <= tol,
            detail: format!("max residual {residual:.3e} (tolerance {tol:.1e})"),
        }
    }
}

/// Run every check with the given constants; returns them in a fixed order.
pub fn run_all(c: &PhysicalConstants) -> Vec<Check> {
    vec![
        poisson_duality(c),
        relabel_invariance(),
        character_multiplicativity(),
        statistics_vs_matrix_functions(c),
        big_d_unitarity(),
        quaternion_double_cover(),
        flux_periodicity(c),
        zero_flux_reduction(c),
        center_cancellation(c),
    ]
}

/// Winding and spectral forms of the circle propagator must agree pointwise.
fn poisson_duality(c: &PhysicalConstants) -> Check {
    let trunc = Truncation::new(8, 8).expect("valid truncation");
    let mut worst = 0.0f64;
    for &rho in &[0.7, 1.0] {
        for &dtheta in &[0.0, 0.9, 2.5, -1.3] {
            for &tau in &[0.2, 1.0, 3.0] {
                for &delta in &[0.0, 1.0, std::f64::consts::PI] {
                    let from = CirclePoint::new(0.0, rho).expect("valid point");
                    let to = CirclePoint::new(dtheta, rho).expect("valid point");
                    let t = TimeParameter::imaginary(tau).expect("positive time");
                    let chi = CharacterRep::IntegersZ { delta };
                    let lhs = winding_sum(from, to, t, &chi, trunc, c).expect("winding sum");
                    let rhs = spectral_sum(from, to, t, delta, trunc, c).expect("spectral sum");
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
    }
    Check::from_residual("poisson-duality", worst, 1e-10)
}

/// |Σ χ(α) K^α| is unchanged when every class label is shifted by the same
/// integer, because the shift only multiplies the sum by a unit phase.
fn relabel_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let delta: f64 = rng.gen_range(-3.0..3.0);
        let rep = CharacterRep::IntegersZ { delta };
        let len = rng.gen_range(1..=8);
        let classes: Vec<(WindingClass, Complex64)> = (0..len)
            .map(|_| {
                (
                    WindingClass(rng.gen_range(-20..=20)),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let shift = ClassLabeling {
            offset: rng.gen_range(-10..=10),
        };
        let before = assemble_classes(&rep, &classes);
        let after = assemble_classes(&rep, &relabel(&classes, shift));
        worst = worst.max((before.norm() - after.norm()).abs());
    }
    Check::from_residual("relabel-invariance", worst, 1e-12)
}

fn assemble_classes(rep: &CharacterRep, classes: &[(WindingClass, Complex64)]) -> Complex64 {
    let partials: Vec<(GroupElement, Complex64)> = classes
        .iter()
        .map(|&(WindingClass(w), k)| (GroupElement::Integer(w), k))
        .collect();
    assemble(rep, &partials).expect("integers in domain")
}

/// χ(gh) = χ(g)χ(h) for random pairs, per representation family.
fn character_multiplicativity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let delta: f64 = rng.gen_range(-4.0..4.0);
        let rep = CharacterRep::IntegersZ { delta };
        let a = rng.gen_range(-50..=50i64);
        let b = rng.gen_range(-50..=50i64);
        let prod = char_eval(&rep, &GroupElement::Integer(a + b)).expect("domain");
        let split = char_eval(&rep, &GroupElement::Integer(a)).expect("domain")
            * char_eval(&rep, &GroupElement::Integer(b)).expect("domain");
        worst = worst.max((prod - split).norm());
    }
    for _ in 0..300 {
        let n = rng.gen_range(2..=6usize);
        let rep = CharacterRep::SymmetricSn {
            n,
            kind: SnKind::Sign,
        };
        let p = random_permutation(&mut rng, n);
        let q = random_permutation(&mut rng, n);
        let pq = p.compose(&q).expect("same degree");
        let prod = char_eval(&rep, &GroupElement::Perm(pq)).expect("domain");
        let split = char_eval(&rep, &GroupElement::Perm(p)).expect("domain")
            * char_eval(&rep, &GroupElement::Perm(q)).expect("domain");
        worst = worst.max((prod - split).norm());
    }
    Check::from_residual("character-multiplicativity", worst, 1e-12)
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(images).expect("shuffle is a bijection")
}

/// Bose and Fermi propagators must equal the permanent and determinant of
/// the single-particle kernel matrix, computed here by Ryser's formula and
/// Laplace expansion respectively.
fn statistics_vs_matrix_functions(c: &PhysicalConstants) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut worst = 0.0f64;
    let t = TimeParameter::imaginary(0.8).expect("positive time");
    for n in 2..=5usize {
        for _ in 0..4 {
            let from = random_config(&mut rng, n);
            let to = random_config(&mut rng, n);
            let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    let dx: Vec<f64> = to.positions()[j]
                        .iter()
                        .zip(&from.positions()[i])
                        .map(|(a, b)| a - b)
                        .collect();
                    *entry = crate::kernel::free_kernel(2, &dx, t, c).expect("kernel");
                }
            }
            let bose = crate::many_body::statistics_propagator(&from, &to, Statistics::Bose, t, c)
                .expect("bose");
            let fermi =
                crate::many_body::statistics_propagator(&from, &to, Statistics::Fermi, t, c)
                    .expect("fermi");
            worst = worst.max((bose - permanent_ryser(&m)).norm());
            worst = worst.max((fermi - determinant_laplace(&m)).norm());
        }
    }
    Check::from_residual("statistics-matrix-functions", worst, 1e-10)
}

fn random_config(rng: &mut ChaCha8Rng, n: usize) -> ParticleConfig {
    let positions: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)])
        .collect();
    ParticleConfig::new(positions, 2).expect("distinct random positions")
}

fn permanent_ryser(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 1u32..(1 << n) {
        let mut product = Complex64::new(1.0, 0.0);
        for row in m.iter() {
            let mut row_sum = Complex64::new(0.0, 0.0);
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    row_sum += entry;
                }
            }
            product *= row_sum;
        }
        let sign = if (n as u32 - mask.count_ones()).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        total += product * sign;
    }
    total
}

fn determinant_laplace(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let minor: Vec<Vec<Complex64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += m[0][j] * determinant_laplace(&minor) * sign;
    }
    total
}

/// Rows of D^j are orthonormal: Σ_k D_{mk} conj(D_{m'k}) = δ_{mm'}.
fn big_d_unitarity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut worst = 0.0f64;
    for two_j in 0..=8i32 {
        for _ in 0..3 {
            let angles = EulerAngles::new(
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(0.0..std::f64::consts::PI),
                rng.gen_range(0.0..2.0 * std::f64::consts::TAU),
            );
            for two_m in (-two_j..=two_j).step_by(2) {
                for two_mp in (-two_j..=two_j).step_by(2) {
                    let mut dot = Complex64::new(0.0, 0.0);
                    for two_k in (-two_j..=two_j).step_by(2) {
                        let a = wigner_big_d(
                            SpinLabel::new(two_j, two_m, two_k).expect("valid label"),
                            angles,
                        );
                        let b = wigner_big_d(
                            SpinLabel::new(two_j, two_mp, two_k).expect("valid label"),
                            angles,
                        );
                        dot += a * b.conj();
                    }
                    let expected = if two_m == two_mp { 1.0 } else { 0.0 };
                    worst = worst.max((dot - expected).norm());
                }
            }
        }
    }
    Check::from_residual("big-d-unitarity", worst, 1e-10)
}

/// R(q) = R(-q) exactly, and R(pq) = R(p)R(q) numerically.
fn quaternion_double_cover() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let p = random_quaternion(&mut rng);
        let q = random_quaternion(&mut rng);
        let r_q = quaternion_to_rotation(&q);
        let r_neg = quaternion_to_rotation(&q.negated());
        for i in 0..3 {
            for j in 0..3 {
                if r_q[i][j] != r_neg[i][j] {
                    return Check {
                        name: "quaternion-double-cover",
                        passed: false,
                        detail: "R(q) and R(-q) differ bitwise".to_string(),
                    };
                }
            }
        }
        let r_pq = quaternion_to_rotation(&p.mul(&q));
        let r_p = quaternion_to_rotation(&p);
        for i in 0..3 {
            for j in 0..3 {
                let composed: f64 = (0..3).map(|k| r_p[i][k] * r_q[k][j]).sum();
                worst = worst.max((r_pq[i][j] - composed).abs());
            }
        }
    }
    Check::from_residual("quaternion-double-cover", worst, 1e-12)
}

fn random_quaternion(rng: &mut ChaCha8Rng) -> UnitQuaternion {
    loop {
        let components: [f64; 4] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        if components.iter().map(|x| x * x).sum::<f64>() > 1e-3 {
            return UnitQuaternion::new(
                components[0],
                components[1],
                components[2],
                components[3],
            )
            .expect("nonzero");
        }
    }
}

/// Shifting the flux parameter by an integer changes the amplitude by a
/// screen-independent unit phase, so the intensity is flux-periodic.
fn flux_periodicity(c: &PhysicalConstants) -> Check {
    let trunc = Truncation::new(8, 8).expect("valid truncation");
    let t = TimeParameter::imaginary(0.6).expect("positive time");
    let mut worst = 0.0f64;
    for &alpha in &[0.0, 0.23, 0.5] {
        for &phi in &[2.4, 3.0, std::f64::consts::PI, 4.1] {
            let base = ABSetup::new(1.0, 0.0, alpha, 0.0).expect("valid setup");
            let shifted = ABSetup::new(1.0, 0.0, alpha + 1.0, 0.0).expect("valid setup");
            let a = ab_amplitude(&base, phi, t, trunc, c).expect("amplitude");
            let b = ab_amplitude(&shifted, phi, t, trunc, c).expect("amplitude");
            worst = worst.max((a.norm_sqr() - b.norm_sqr()).abs());
        }
    }
    Check::from_residual("flux-periodicity", worst, 1e-12)
}

/// With zero flux and δ = 0 the interference amplitude must reproduce the
/// plain circle winding sum bit for bit.
fn zero_flux_reduction(c: &PhysicalConstants) -> Check {
    let trunc = Truncation::new(8, 8).expect("valid truncation");
    let t = TimeParameter::imaginary(0.6).expect("positive time");
    let chi = CharacterRep::IntegersZ { delta: 0.0 };
    for &phi in &[0.4, 1.9, 3.6, 5.5] {
        let setup = ABSetup::new(1.0, 0.0, 0.0, 0.0).expect("valid setup");
        let ab = ab_amplitude(&setup, phi, t, trunc, c).expect("amplitude");
        let from = CirclePoint::new(0.0, 1.0).expect("valid point");
        let to = CirclePoint::new(phi, 1.0).expect("valid point");
        let circle = winding_sum(from, to, t, &chi, trunc, c).expect("winding sum");
        if ab != circle {
            return Check {
                name: "zero-flux-reduction",
                passed: false,
                detail: format!("bitwise mismatch at screen angle {phi}"),
            };
        }
    }
    Check {
        name: "zero-flux-reduction",
        passed: true,
        detail: "bitwise equal on all sampled screen angles".to_string(),
    }
}

/// At δ = π and zero flux, images pair up with opposite signs at the point
/// diametrically opposite the source and the amplitude cancels.
fn center_cancellation(c: &PhysicalConstants) -> Check {
    let trunc = Truncation::new(8, 8).expect("valid truncation");
    let t = TimeParameter::imaginary(0.6).expect("positive time");
    let setup = ABSetup::new(1.0, 0.0, 0.0, std::f64::consts::PI).expect("valid setup");
    let center = std::f64::consts::PI;
    let k = ab_amplitude(&setup, center, t, trunc, c).expect("amplitude");
    Check::from_residual("center-cancellation", k.norm(), 1e-10)
}
