//! One-dimensional unitary representations of the fundamental groups that
//! appear in the class sums, and the character-weighted assembler
//! K = Σ χ(α) K^α.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The two 1-D characters every finite symmetric group carries. The enum is
/// exhaustive on purpose: S_n has no other one-dimensional unitary
/// representations, so none can be constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnKind {
    Trivial,
    Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z2Kind {
    Trivial,
    Sign,
}

/// A 1-D unitary representation of a fundamental group.
///
/// The ℤ character follows the sign convention χ_δ(n) = e^{-i n δ}; the
/// abelianized braid character uses χ_θ(w) = e^{+i w θ} per elementary
/// exchange winding, so the two conventions are related by θ = -δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacterRep {
    IntegersZ { delta: f64 },
    Z2 { kind: Z2Kind },
    SymmetricSn { n: usize, kind: SnKind },
    BraidAbelian { theta: f64 },
}

/// A permutation stored by its image list: i -> images[i].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::NotABijection);
        }
        Ok(Permutation {
            images: (0..self.n()).map(|i| self.images[other.images[i]]).collect(),
        })
    }
}

/// Sign of a permutation via cycle decomposition: (-1)^(n - #cycles).
pub fn parity(p: &Permutation) -> i32 {
    let n = p.n();
    let mut visited = vec![false; n];
    let mut cycles = 0usize;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = p.apply(i);
        }
    }
    if (n - cycles).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An element of one of the supported fundamental groups.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement {
    Integer(i64),
    Z2(u8),
    Perm(Permutation),
}

/// Evaluate the character on a group element. Always unit modulus.
pub fn char_eval(rep: &CharacterRep, element: &GroupElement) -> Result<Complex64> {
    match (rep, element) {
        (CharacterRep::IntegersZ { delta }, GroupElement::Integer(n)) => {
            Ok(Complex64::cis(-(*n as f64) * delta))
        }
        (CharacterRep::BraidAbelian { theta }, GroupElement::Integer(w)) => {
            Ok(Complex64::cis(*w as f64 * theta))
        }
        (CharacterRep::Z2 { kind }, GroupElement::Z2(g)) => {
            if *g > 1 {
                return Err(Error::ElementOutOfDomain);
            }
            let v = match kind {
                Z2Kind::Trivial => 1.0,
                Z2Kind::Sign => {
                    if *g == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                }
            };
            Ok(Complex64::new(v, 0.0))
        }
        (CharacterRep::SymmetricSn { n, kind }, GroupElement::Perm(p)) => {
            if p.n() != *n {
                return Err(Error::ElementOutOfDomain);
            }
            let v = match kind {
                SnKind::Trivial => 1.0,
                SnKind::Sign => parity(p) as f64,
            };
            Ok(Complex64::new(v, 0.0))
        }
        _ => Err(Error::ElementOutOfDomain),
    }
}

/// K = Σ χ(α) K^α over the given finite class list, summed in list order.
pub fn assemble(
    rep: &CharacterRep,
    partials: &[(GroupElement, Complex64)],
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (element, amplitude) in partials {
        acc += char_eval(rep, element)? * amplitude;
    }
    Ok(acc)
}
