//! Core geometric model: lattice points, sticks, polygons and their validation.
//!
//! A polygon is stored as its cyclic list of corner vertices. Consecutive
//! vertices differ in exactly one coordinate, consecutive edges lie on
//! different axes, and the whole cycle is self-avoiding. Collinear input
//! points are merged on construction so the vertex list holds corners only.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Maximum bounding-box extent per axis accepted at construction.
pub const MAX_EXTENT: i32 = 32;

/// One of the three coordinate axes, ordered X < Y < Z.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "z")]
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    /// The other two axes, in increasing order.
    pub fn others(self) -> [Axis; 2] {
        match self {
            Axis::X => [Axis::Y, Axis::Z],
            Axis::Y => [Axis::X, Axis::Z],
            Axis::Z => [Axis::X, Axis::Y],
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// A point of the integer lattice.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl LatticePoint {
    pub fn new(x: i32, y: i32, z: i32) -> Self {
        LatticePoint { x, y, z }
    }

    pub fn get(&self, a: Axis) -> i32 {
        match a {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn set(&mut self, a: Axis, v: i32) {
        match a {
            Axis::X => self.x = v,
            Axis::Y => self.y = v,
            Axis::Z => self.z = v,
        }
    }

    pub fn as_array(&self) -> [i32; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [i32; 3]) -> Self {
        LatticePoint::new(a[0], a[1], a[2])
    }
}

impl From<(i32, i32, i32)> for LatticePoint {
    fn from(t: (i32, i32, i32)) -> Self {
        LatticePoint::new(t.0, t.1, t.2)
    }
}

impl From<[i32; 3]> for LatticePoint {
    fn from(a: [i32; 3]) -> Self {
        LatticePoint::from_array(a)
    }
}

/// A maximal axis-parallel segment of a polygon.
///
/// `span` is the closed coordinate interval along `axis`; `cross` holds the
/// two fixed coordinates on the other axes, in axis order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Stick {
    pub axis: Axis,
    pub lo: i32,
    pub hi: i32,
    pub cross: [i32; 2],
}

impl Stick {
    /// The stick between two points differing only along one axis.
    pub fn between(p: LatticePoint, q: LatticePoint) -> Stick {
        let axis = Axis::ALL
            .into_iter()
            .find(|&a| p.get(a) != q.get(a))
            .expect("stick endpoints must differ");
        let [o1, o2] = axis.others();
        let (lo, hi) = {
            let (a, b) = (p.get(axis), q.get(axis));
            (a.min(b), a.max(b))
        };
        Stick {
            axis,
            lo,
            hi,
            cross: [p.get(o1), p.get(o2)],
        }
    }

    pub fn len(&self) -> i32 {
        self.hi - self.lo
    }

    /// Endpoints with the lower coordinate first.
    pub fn endpoints(&self) -> (LatticePoint, LatticePoint) {
        (self.point_at(self.lo), self.point_at(self.hi))
    }

    fn point_at(&self, c: i32) -> LatticePoint {
        let mut p = LatticePoint::new(0, 0, 0);
        p.set(self.axis, c);
        let [o1, o2] = self.axis.others();
        p.set(o1, self.cross[0]);
        p.set(o2, self.cross[1]);
        p
    }

    /// Whether the closed segment contains the lattice point.
    pub fn contains(&self, p: LatticePoint) -> bool {
        let [o1, o2] = self.axis.others();
        p.get(o1) == self.cross[0]
            && p.get(o2) == self.cross[1]
            && (self.lo..=self.hi).contains(&p.get(self.axis))
    }
}

/// Per-axis stick counts of a polygon.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Composition {
    pub n_x: usize,
    pub n_y: usize,
    pub n_z: usize,
}

impl Composition {
    pub fn new(n_x: usize, n_y: usize, n_z: usize) -> Self {
        Composition { n_x, n_y, n_z }
    }

    pub fn total(&self) -> usize {
        self.n_x + self.n_y + self.n_z
    }

    pub fn get(&self, a: Axis) -> usize {
        match a {
            Axis::X => self.n_x,
            Axis::Y => self.n_y,
            Axis::Z => self.n_z,
        }
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.n_x, self.n_y, self.n_z]
    }

    /// Counts in decreasing order.
    pub fn sorted(&self) -> [usize; 3] {
        let mut a = self.as_array();
        a.sort_unstable_by(|p, q| q.cmp(p));
        a
    }
}

/// Validation failure when constructing a polygon.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PolygonError {
    #[error("vertex list is empty")]
    Empty,
    #[error("fewer than 4 corners after merging collinear points")]
    TooFewVertices,
    #[error("closing edge from last to first vertex is not a unit-axis move")]
    NotClosed,
    #[error("consecutive vertices {0} and {1} do not differ in exactly one coordinate")]
    NotAxisAligned(usize, usize),
    #[error("consecutive edges at vertex {0} backtrack along the same axis")]
    DegenerateBacktrack(usize),
    #[error("sticks {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("bounding box extent exceeds {MAX_EXTENT} on some axis")]
    OutOfBounds,
}

/// A closed self-avoiding axis-aligned polygon in the cubic lattice.
///
/// Immutable after construction; the vertex list holds corners only.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// On-disk polygon format: `{"vertices": [[x,y,z], ...]}`.
#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[i32; 3]>,
}

impl LatticePolygon {
    /// Validates and normalizes a cyclic vertex list into a polygon.
    ///
    /// Collinear runs are merged; every listed vertex of the result is a
    /// genuine corner.
    pub fn from_vertices<I, P>(points: I) -> Result<Self, PolygonError>
    where
        I: IntoIterator<Item = P>,
        P: Into<LatticePoint>,
    {
        let raw: Vec<LatticePoint> = points.into_iter().map(Into::into).collect();
        if raw.is_empty() {
            return Err(PolygonError::Empty);
        }
        let n = raw.len();

        // Direction of each edge i: raw[i] -> raw[(i+1)%n]. Zero-length edges
        // (repeated points) are dropped; diagonal edges are rejected.
        let mut dirs: Vec<Option<(Axis, i32)>> = Vec::with_capacity(n);
        for i in 0..n {
            let p = raw[i];
            let q = raw[(i + 1) % n];
            let mut diff_axis = None;
            let mut diffs = 0;
            for a in Axis::ALL {
                if p.get(a) != q.get(a) {
                    diffs += 1;
                    diff_axis = Some((a, q.get(a) - p.get(a)));
                }
            }
            match diffs {
                0 => dirs.push(None),
                1 => dirs.push(diff_axis),
                _ => {
                    return Err(if (i + 1) % n == 0 {
                        PolygonError::NotClosed
                    } else {
                        PolygonError::NotAxisAligned(i, (i + 1) % n)
                    })
                }
            }
        }

        // Keep vertices where the direction genuinely turns; backtracks
        // (same axis, opposite sign) violate self-avoidance immediately.
        let mut corners: Vec<LatticePoint> = Vec::new();
        // The first vertex sees the final edge's direction as its predecessor.
        let Some(mut prev_dir) = dirs.iter().rev().find_map(|d| *d).map(Some) else {
            return Err(PolygonError::TooFewVertices);
        };
        for i in 0..n {
            let Some((axis, step)) = dirs[i] else {
                continue; // repeated point
            };
            let (paxis, pstep) = prev_dir.unwrap();
            if paxis == axis {
                if pstep.signum() != step.signum() {
                    return Err(PolygonError::DegenerateBacktrack(i));
                }
                // collinear continuation: raw[i] is not a corner
            } else {
                corners.push(raw[i]);
            }
            prev_dir = Some((axis, step));
        }

        if corners.len() < 4 {
            return Err(PolygonError::TooFewVertices);
        }

        let poly = LatticePolygon { vertices: corners };
        poly.check_corners()?;
        poly.check_bounds()?;
        poly.check_self_avoiding()?;
        Ok(poly)
    }

    fn check_corners(&self) -> Result<(), PolygonError> {
        let n = self.vertices.len();
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let mut diffs = 0;
            for a in Axis::ALL {
                if p.get(a) != q.get(a) {
                    diffs += 1;
                }
            }
            if diffs != 1 {
                return Err(if (i + 1) % n == 0 {
                    PolygonError::NotClosed
                } else {
                    PolygonError::NotAxisAligned(i, (i + 1) % n)
                });
            }
        }
        Ok(())
    }

    fn check_bounds(&self) -> Result<(), PolygonError> {
        for a in Axis::ALL {
            let lo = self.vertices.iter().map(|p| p.get(a)).min().unwrap();
            let hi = self.vertices.iter().map(|p| p.get(a)).max().unwrap();
            if hi - lo > MAX_EXTENT {
                return Err(PolygonError::OutOfBounds);
            }
        }
        Ok(())
    }

    /// Occupancy check: every lattice point of the cycle is covered exactly
    /// once (corner points belong to both incident sticks).
    fn check_self_avoiding(&self) -> Result<(), PolygonError> {
        let sticks = self.sticks();
        let mut seen: HashMap<LatticePoint, usize> = HashMap::new();
        for (i, s) in sticks.iter().enumerate() {
            let (p, _) = s.endpoints();
            let mut pt = p;
            for c in s.lo..=s.hi {
                pt.set(s.axis, c);
                let interior = c != s.lo && c != s.hi;
                if interior {
                    if let Some(&j) = seen.get(&pt) {
                        return Err(PolygonError::SelfIntersecting(j.min(i), j.max(i)));
                    }
                    seen.insert(pt, i);
                }
            }
        }
        // Vertices: each is shared by exactly its two incident sticks.
        let mut vset: HashMap<LatticePoint, usize> = HashMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            if let Some(&j) = seen.get(&v) {
                return Err(PolygonError::SelfIntersecting(j.min(i), j.max(i)));
            }
            if let Some(&j) = vset.get(&v) {
                return Err(PolygonError::SelfIntersecting(j.min(i), j.max(i)));
            }
            vset.insert(v, i);
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sticks in traversal order, one per edge of the corner cycle.
    pub fn sticks(&self) -> Vec<Stick> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| Stick::between(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Per-axis stick counts.
    pub fn stick_counts(&self) -> Composition {
        let mut c = [0usize; 3];
        for s in self.sticks() {
            c[s.axis.index()] += 1;
        }
        Composition::new(c[0], c[1], c[2])
    }

    /// Whether some axis carries no sticks, i.e. the polygon lies in a plane.
    pub fn is_planar(&self) -> bool {
        let c = self.stick_counts();
        c.n_x == 0 || c.n_y == 0 || c.n_z == 0
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            for a in Axis::ALL {
                lo.set(a, lo.get(a).min(v.get(a)));
                hi.set(a, hi.get(a).max(v.get(a)));
            }
        }
        (lo, hi)
    }

    /// Translate so the bounding-box minimum corner sits at the origin.
    pub fn normalize_translation(&self) -> LatticePolygon {
        let (lo, _) = self.bounding_box();
        let vertices = self
            .vertices
            .iter()
            .map(|v| LatticePoint::new(v.x - lo.x, v.y - lo.y, v.z - lo.z))
            .collect();
        LatticePolygon { vertices }
    }

    /// Constructor for internal transforms that preserve validity by
    /// construction; still checks in debug builds.
    pub(crate) fn from_corners_unchecked(vertices: Vec<LatticePoint>) -> LatticePolygon {
        let poly = LatticePolygon { vertices };
        debug_assert!(poly.check_corners().is_ok() && poly.check_self_avoiding().is_ok());
        poly
    }

    pub fn to_json(&self) -> String {
        let file = PolygonFile {
            vertices: self.vertices.iter().map(|v| v.as_array()).collect(),
        };
        serde_json::to_string(&file).expect("polygon serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, PolygonJsonError> {
        let file: PolygonFile = serde_json::from_str(s)?;
        let poly = LatticePolygon::from_vertices(
            file.vertices.into_iter().map(LatticePoint::from_array),
        )?;
        Ok(poly)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PolygonJsonError {
    #[error("invalid polygon JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] PolygonError),
}
