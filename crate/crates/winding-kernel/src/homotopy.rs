//! Piecewise-linear paths in the punctured plane, winding numbers and the
//! label-shift transform behind the relabeling invariance of the class sum.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// Residual tolerance for the final winding-number rounding, as a fraction
/// of a full turn. A larger residual means the path grazes the puncture.
const WINDING_RESIDUAL_TOL: f64 = 1e-6;

/// A path represented by its ordered polyline vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylinePath {
    vertices: Vec<Point>,
}

impl PolylinePath {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::TooFewVertices);
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Closed up to a small gap relative to the path's coordinate scale, so
    /// trigonometric loops that miss bitwise closure by one ulp still count.
    pub fn is_closed(&self) -> bool {
        let first = self.vertices[0];
        let last = self.vertices[self.vertices.len() - 1];
        let scale = self
            .vertices
            .iter()
            .flatten()
            .fold(1.0f64, |m, &x| m.max(x.abs()));
        let gap = ((first[0] - last[0]).powi(2) + (first[1] - last[1]).powi(2)).sqrt();
        gap <= 1e-9 * scale
    }
}

/// Integer homotopy-class label: signed winding count about the puncture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindingClass(pub i64);

/// Integer shift applied to class labels when the basepoint reference paths
/// change. Two labelings compose by adding their offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassLabeling {
    pub offset: i64,
}

impl ClassLabeling {
    pub fn compose(self, other: ClassLabeling) -> ClassLabeling {
        ClassLabeling {
            offset: self.offset + other.offset,
        }
    }
}

fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return (ap[0] * ap[0] + ap[1] * ap[1]).sqrt();
    }
    let t = ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0);
    let dx = ap[0] - t * ab[0];
    let dy = ap[1] - t * ab[1];
    (dx * dx + dy * dy).sqrt()
}

/// Signed winding number of a closed polyline about `puncture`.
///
/// Per-segment angle increments, each in (-π, π), are accumulated and the
/// total is rounded to the nearest integer number of turns. A residual above
/// the internal tolerance is treated as a puncture-grazing path.
pub fn winding_number(path: &PolylinePath, puncture: Point) -> Result<i64> {
    if !path.is_closed() {
        return Err(Error::OpenPath);
    }
    for pair in path.vertices.windows(2) {
        if dist_point_segment(puncture, pair[0], pair[1]) <= 0.0 {
            return Err(Error::PunctureOnPath);
        }
    }
    let mut total = 0.0f64;
    let mut prev = f64::atan2(
        path.vertices[0][1] - puncture[1],
        path.vertices[0][0] - puncture[0],
    );
    for v in &path.vertices[1..] {
        let next = f64::atan2(v[1] - puncture[1], v[0] - puncture[0]);
        let mut inc = next - prev;
        if inc > std::f64::consts::PI {
            inc -= 2.0 * std::f64::consts::PI;
        } else if inc < -std::f64::consts::PI {
            inc += 2.0 * std::f64::consts::PI;
        }
        total += inc;
        prev = next;
    }
    let turns = total / (2.0 * std::f64::consts::PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > WINDING_RESIDUAL_TOL {
        return Err(Error::PunctureOnPath);
    }
    Ok(rounded as i64)
}

/// Concatenate two paths sharing an endpoint; the shared vertex appears once.
pub fn concat(a: &PolylinePath, b: &PolylinePath) -> Result<PolylinePath> {
    if a.vertices.last() != b.vertices.first() {
        return Err(Error::EndpointMismatch);
    }
    let mut vertices = a.vertices.clone();
    vertices.extend_from_slice(&b.vertices[1..]);
    PolylinePath::new(vertices)
}

/// Orientation-reversed path.
pub fn reverse(a: &PolylinePath) -> PolylinePath {
    let mut vertices = a.vertices.clone();
    vertices.reverse();
    PolylinePath { vertices }
}

/// Shift every class label by the labeling offset, leaving amplitudes alone.
pub fn relabel(
    classes: &[(WindingClass, Complex64)],
    labeling: ClassLabeling,
) -> Vec<(WindingClass, Complex64)> {
    classes
        .iter()
        .map(|&(WindingClass(w), k)| (WindingClass(w + labeling.offset), k))
        .collect()
}
