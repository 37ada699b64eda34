//! Level bookkeeping and the properly leveled normal form.
//!
//! An a-level is a plane of constant a-coordinate containing at least one
//! stick of the other two axes. A polygon is properly leveled when every
//! level on every axis contains exactly two endpoints of same-axis sticks.
//! Planar polygons are never properly leveled under this convention: their
//! single perpendicular level hosts zero endpoints.

use crate::lattice::{Axis, LatticePoint, LatticePolygon, Stick};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum LevelingError {
    #[error("polygon is planar; classify as unknot directly")]
    PlanarPolygon,
    #[error("polygon is not properly leveled")]
    NotProperlyLeveled,
}

/// Endpoint bookkeeping for one axis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LevelProfile {
    pub axis: Axis,
    pub levels: Vec<LevelInfo>,
}

/// One level: its coordinate, how many sticks of the other two axes lie in
/// the plane, and how many same-axis stick endpoints it hosts.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LevelInfo {
    pub coord: i32,
    pub in_plane_sticks: usize,
    pub endpoints: usize,
}

/// The two level coordinates spanned by a stick, lower first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LevelPair {
    pub axis: Axis,
    pub lo: i32,
    pub hi: i32,
}

impl LevelPair {
    pub fn of(stick: &Stick) -> LevelPair {
        LevelPair {
            axis: stick.axis,
            lo: stick.lo,
            hi: stick.hi,
        }
    }
}

/// Exact endpoint counts per level of `axis`. Planes without sticks of the
/// other two axes are not levels and are not listed.
pub fn level_profile(p: &LatticePolygon, axis: Axis) -> LevelProfile {
    let sticks = p.sticks();
    let mut in_plane: BTreeMap<i32, usize> = BTreeMap::new();
    for s in &sticks {
        if s.axis != axis {
            let coord = match (axis, s.axis) {
                (Axis::X, Axis::Y) => s.cross[0],
                (Axis::X, Axis::Z) => s.cross[0],
                (Axis::Y, Axis::X) => s.cross[0],
                (Axis::Y, Axis::Z) => s.cross[1],
                (Axis::Z, Axis::X) => s.cross[1],
                (Axis::Z, Axis::Y) => s.cross[1],
                _ => unreachable!(),
            };
            *in_plane.entry(coord).or_insert(0) += 1;
        }
    }
    let mut endpoints: BTreeMap<i32, usize> = BTreeMap::new();
    for s in &sticks {
        if s.axis == axis {
            *endpoints.entry(s.lo).or_insert(0) += 1;
            *endpoints.entry(s.hi).or_insert(0) += 1;
        }
    }
    let levels = in_plane
        .into_iter()
        .map(|(coord, n)| LevelInfo {
            coord,
            in_plane_sticks: n,
            endpoints: endpoints.get(&coord).copied().unwrap_or(0),
        })
        .collect();
    LevelProfile { axis, levels }
}

/// True iff every level of every axis hosts exactly two endpoints of
/// same-axis sticks.
pub fn is_properly_leveled(p: &LatticePolygon) -> bool {
    Axis::ALL
        .into_iter()
        .all(|a| level_profile(p, a).levels.iter().all(|l| l.endpoints == 2))
}

/// Normal form of the leveling transform: an equivalent properly leveled
/// polygon with the same per-axis stick counts.
///
/// Levels hosting more than two endpoints are split: each connected arc of
/// the polygon inside the plane moves to its own nearby plane, in traversal
/// order, lengthening or shortening the perpendicular sticks attached to it.
/// Coordinates are then compressed monotonically. Ambient isotopy is not
/// certified internally; tests check invariant preservation instead.
pub fn make_properly_leveled(p: &LatticePolygon) -> Result<LatticePolygon, LevelingError> {
    if p.is_planar() {
        return Err(LevelingError::PlanarPolygon);
    }
    if is_properly_leveled(p) {
        return Ok(p.normalize_translation());
    }
    let mut vertices: Vec<LatticePoint> = p.vertices().to_vec();
    let scale = 2 * vertices.len() as i64;
    for axis in Axis::ALL {
        split_axis(&mut vertices, axis, scale);
        compress_axis(&mut vertices, axis);
    }
    let out = LatticePolygon::from_vertices(vertices).expect("leveling preserves validity");
    debug_assert!(is_properly_leveled(&out));
    debug_assert_eq!(out.stick_counts(), p.stick_counts());
    Ok(out.normalize_translation())
}

/// Move each in-plane arc of every `axis`-plane to its own offset inside the
/// scaled slab around the plane. Arcs are ranked in the order they appear
/// along the polygon.
fn split_axis(vertices: &mut [LatticePoint], axis: Axis, scale: i64) {
    let n = vertices.len();
    // Runs of consecutive vertices (cyclically) sharing the axis coordinate.
    // run_id[i] identifies the run of vertex i; runs are numbered in the
    // order their first vertex appears scanning from a run boundary.
    let coord = |i: usize| vertices[i].get(axis);
    // Find a run boundary: a vertex whose predecessor has a different coord.
    // At least one exists because the polygon has sticks on this axis.
    let start = (0..n)
        .find(|&i| coord((i + n - 1) % n) != coord(i))
        .expect("nonplanar polygon has an axis stick");
    // rank[i]: index of vertex i's run among runs at the same coordinate.
    let mut rank = vec![0i64; n];
    let mut next_rank: BTreeMap<i32, i64> = BTreeMap::new();
    let mut i = start;
    loop {
        let c = coord(i);
        let r = {
            let e = next_rank.entry(c).or_insert(0);
            let r = *e;
            *e += 1;
            r
        };
        // Extend the run.
        let mut j = i;
        loop {
            rank[j] = r;
            let nj = (j + 1) % n;
            if coord(nj) != c {
                break;
            }
            j = nj;
        }
        i = (j + 1) % n;
        if i == start {
            break;
        }
    }
    for (i, v) in vertices.iter_mut().enumerate() {
        let c = v.get(axis) as i64 * scale + rank[i];
        v.set(axis, i32::try_from(c).expect("scaled coordinate fits i32"));
    }
}

/// Monotone remap of the axis coordinates onto 0..m-1.
fn compress_axis(vertices: &mut [LatticePoint], axis: Axis) {
    let mut coords: Vec<i32> = vertices.iter().map(|v| v.get(axis)).collect();
    coords.sort_unstable();
    coords.dedup();
    let map: BTreeMap<i32, i32> = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i as i32))
        .collect();
    for v in vertices.iter_mut() {
        let c = map[&v.get(axis)];
        v.set(axis, c);
    }
}

/// All unordered pairs of same-axis sticks spanning the same two levels.
/// Nonempty output forces the trivial knot type.
pub fn duplicate_level_pairs(p: &LatticePolygon) -> Result<Vec<(Stick, Stick)>, LevelingError> {
    if !is_properly_leveled(p) {
        return Err(LevelingError::NotProperlyLeveled);
    }
    let mut by_pair: BTreeMap<(usize, i32, i32), Vec<Stick>> = BTreeMap::new();
    for s in p.sticks() {
        by_pair
            .entry((s.axis.index(), s.lo, s.hi))
            .or_default()
            .push(s);
    }
    let mut out = Vec::new();
    for group in by_pair.values() {
        for i in 0..group.len() {
            for j in (i + 1)..group.len() {
                out.push((group[i], group[j]));
            }
        }
    }
    Ok(out)
}

/// Structure of one boundary level of one axis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BoundaryLevel {
    pub coord: i32,
    /// Sticks of the other two axes lying in the plane.
    pub stick_count: usize,
    /// When two sticks lie in the plane: whether they share a vertex.
    pub connected: bool,
    /// Minimum length over same-axis sticks with an endpoint on the level.
    pub min_incident_length: i32,
    /// One stick, or two connected sticks, and incident length at least two.
    pub conforms: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BoundaryReport {
    pub axis: Axis,
    pub boundary: [BoundaryLevel; 2],
}

/// Per-axis structure of the two boundary levels.
pub fn boundary_level_report(p: &LatticePolygon) -> Result<Vec<BoundaryReport>, LevelingError> {
    if !is_properly_leveled(p) {
        return Err(LevelingError::NotProperlyLeveled);
    }
    let sticks = p.sticks();
    let mut out = Vec::new();
    for axis in Axis::ALL {
        let profile = level_profile(p, axis);
        let lo = profile.levels.first().expect("leveled polygon has levels").coord;
        let hi = profile.levels.last().unwrap().coord;
        let boundary = [lo, hi].map(|coord| {
            let in_plane: Vec<&Stick> = sticks
                .iter()
                .filter(|s| s.axis != axis && plane_coord(s, axis) == coord)
                .collect();
            let connected = in_plane.len() == 2 && share_vertex(in_plane[0], in_plane[1]);
            let min_incident_length = sticks
                .iter()
                .filter(|s| s.axis == axis && (s.lo == coord || s.hi == coord))
                .map(|s| s.len())
                .min()
                .unwrap_or(0);
            let conforms = (in_plane.len() == 1 || (in_plane.len() == 2 && connected))
                && min_incident_length >= 2;
            BoundaryLevel {
                coord,
                stick_count: in_plane.len(),
                connected,
                min_incident_length,
                conforms,
            }
        });
        out.push(BoundaryReport { axis, boundary });
    }
    Ok(out)
}

fn plane_coord(s: &Stick, axis: Axis) -> i32 {
    let [o1, o2] = s.axis.others();
    if o1 == axis {
        s.cross[0]
    } else if o2 == axis {
        s.cross[1]
    } else {
        unreachable!("stick parallel to the level axis")
    }
}

fn share_vertex(a: &Stick, b: &Stick) -> bool {
    let (a0, a1) = a.endpoints();
    let (b0, b1) = b.endpoints();
    a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1
}
