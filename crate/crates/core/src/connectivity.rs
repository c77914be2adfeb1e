//! Continuous/discrete classification of a pattern.
//!
//! A pattern is continuous when all of its convex-hull vertices sit in one
//! 8-connected component of the occupied set — every corner of the figure
//! can be walked to from every other through occupied cells, diagonal steps
//! allowed.

use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

use crate::grid::PatternSnapshot;
use crate::shape::convex_hull;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// Orthogonal neighbors only (Manhattan distance 1).
    Four,
    /// Orthogonal and diagonal neighbors (Chebyshev distance 1).
    Eight,
}

impl Adjacency {
    fn deltas(self) -> &'static [(i64, i64)] {
        match self {
            Adjacency::Four => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
            Adjacency::Eight => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        }
    }
}

/// Flood labeling of a coordinate set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabels {
    /// Component id per input coordinate, in input order. Ids are assigned
    /// by first discovery while scanning the input, so labeling is
    /// deterministic for a given input order.
    pub labels: Vec<usize>,
    pub count: usize,
}

pub fn connected_components(coords: &[(i64, i64)], adjacency: Adjacency) -> ComponentLabels {
    let index: HashMap<(i64, i64), usize> =
        coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut labels = vec![usize::MAX; coords.len()];
    let mut count = 0;
    let mut stack = Vec::new();

    for start in 0..coords.len() {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (r, c) = coords[i];
            for &(dr, dc) in adjacency.deltas() {
                if let Some(&j) = index.get(&(r + dr, c + dc)) {
                    if labels[j] == usize::MAX {
                        labels[j] = count;
                        stack.push(j);
                    }
                }
            }
        }
        count += 1;
    }
    ComponentLabels { labels, count }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectivityClass {
    Continuous,
    Discrete,
    Empty,
}

impl fmt::Display for ConnectivityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectivityClass::Continuous => write!(f, "continuous"),
            ConnectivityClass::Discrete => write!(f, "discrete"),
            ConnectivityClass::Empty => write!(f, "empty"),
        }
    }
}

/// Continuous iff all hull vertices of the point set share one 8-connected
/// component.
pub fn classify_point_connectivity(points: &[(i64, i64)]) -> ConnectivityClass {
    let hull = match convex_hull(points) {
        Ok(hull) => hull,
        Err(_) => return ConnectivityClass::Empty,
    };
    if hull.vertex_count() <= 1 {
        return ConnectivityClass::Continuous;
    }
    let components = connected_components(points, Adjacency::Eight);
    let index: HashMap<(i64, i64), usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let first = components.labels[index[&hull.vertices[0]]];
    let connected = hull
        .vertices
        .iter()
        .all(|v| components.labels[index[v]] == first);
    if connected {
        ConnectivityClass::Continuous
    } else {
        ConnectivityClass::Discrete
    }
}

pub fn classify_connectivity(snapshot: &PatternSnapshot) -> ConnectivityClass {
    let points: Vec<_> = snapshot
        .coords
        .iter()
        .map(|&(r, c)| (r as i64, c as i64))
        .collect();
    classify_point_connectivity(&points)
}
