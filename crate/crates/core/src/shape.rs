//! Geometric classification of a pattern by its convex hull.
//!
//! The hull is computed over occupied cell centers with exact integer cross
//! products; collinear boundary points are elided, so a filled triangle with
//! many edge cells still reports three vertices. There is no epsilon
//! anywhere in this module.

use serde::Serialize;
use std::fmt;

use crate::error::CaError;
use crate::grid::PatternSnapshot;

/// Strictly convex hull of a point set. Degenerate inputs keep their
/// natural vertex count: one point for a singleton, the two extremes for a
/// collinear set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullPolygon {
    /// Extreme points in counter-clockwise order (treating (row, col) as
    /// mathematical (x, y)), starting from the lexicographic minimum.
    pub vertices: Vec<(i64, i64)>,
}

impl HullPolygon {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone-chain convex hull with strict turns: collinear points are
/// popped, so every returned vertex is a corner.
pub fn convex_hull(points: &[(i64, i64)]) -> Result<HullPolygon, CaError> {
    if points.is_empty() {
        return Err(CaError::EmptyPattern);
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(HullPolygon { vertices: pts });
    }

    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len() + 1);
    // Lower chain, then upper chain over the reversed order.
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop(); // first point repeated at the end
    Ok(HullPolygon { vertices: hull })
}

/// Pattern shape by hull vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeClass {
    Empty,
    Point,
    Line,
    Triangle,
    Quadrilateral,
    Pentagon,
    Hexagon,
    /// Hull with 7 or more vertices; carries the count.
    Other(u32),
}

impl ShapeClass {
    fn from_vertex_count(v: usize) -> ShapeClass {
        match v {
            0 => ShapeClass::Empty,
            1 => ShapeClass::Point,
            2 => ShapeClass::Line,
            3 => ShapeClass::Triangle,
            4 => ShapeClass::Quadrilateral,
            5 => ShapeClass::Pentagon,
            6 => ShapeClass::Hexagon,
            v => ShapeClass::Other(v as u32),
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeClass::Empty => write!(f, "empty"),
            ShapeClass::Point => write!(f, "point"),
            ShapeClass::Line => write!(f, "line"),
            ShapeClass::Triangle => write!(f, "triangle"),
            ShapeClass::Quadrilateral => write!(f, "quadrilateral"),
            ShapeClass::Pentagon => write!(f, "pentagon"),
            ShapeClass::Hexagon => write!(f, "hexagon"),
            ShapeClass::Other(v) => write!(f, "other-{v}"),
        }
    }
}

/// Classifies a coordinate set by the vertex count of its convex hull.
pub fn classify_points(points: &[(i64, i64)]) -> ShapeClass {
    match convex_hull(points) {
        Ok(hull) => ShapeClass::from_vertex_count(hull.vertex_count()),
        Err(_) => ShapeClass::Empty,
    }
}

pub fn classify_shape(snapshot: &PatternSnapshot) -> ShapeClass {
    let points: Vec<_> = snapshot
        .coords
        .iter()
        .map(|&(r, c)| (r as i64, c as i64))
        .collect();
    classify_points(&points)
}
