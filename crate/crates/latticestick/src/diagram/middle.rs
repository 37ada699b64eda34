//! Middle-level crossing analysis and the lattice Reidemeister-II move.
//!
//! Both operations apply to properly leveled polygons in the four-z-stick
//! normal form: exactly four z-sticks whose level pairs, with z-levels
//! numbered 1..4 from below, are {(1,4),(1,3),(2,4),(2,3)}. The polygon then
//! meets each of the two middle z-levels in a single open arc, and the xy
//! projections of those arcs are compared with exact integer arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{project, DiagramError};
use crate::lattice::{Axis, LatticePoint, LatticePolygon};
use crate::leveling::{is_properly_leveled, make_properly_leveled};

/// Classified intersections between the projected open middle-level arcs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct MiddleLevelReport {
    pub transverse_count: usize,
    pub tangency_count: usize,
    pub overlap_count: usize,
}

/// Outcome of [`lattice_r2_reduce`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum R2Reduction {
    /// Equivalent properly leveled polygon, same stick count, two fewer
    /// projection crossings.
    Reduced(LatticePolygon),
    NoMove,
}

/// The two middle z-level coordinates when the polygon has the four-z-stick
/// structure, else None.
fn middle_z_levels(p: &LatticePolygon) -> Option<(i32, i32)> {
    let zsticks: Vec<_> = p
        .sticks()
        .into_iter()
        .filter(|s| s.axis == Axis::Z)
        .collect();
    if zsticks.len() != 4 {
        return None;
    }
    let levels: Vec<i32> = zsticks
        .iter()
        .flat_map(|s| [s.lo, s.hi])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if levels.len() != 4 {
        return None;
    }
    let idx = |c: i32| levels.iter().position(|&l| l == c).unwrap() + 1;
    let mut pairs: Vec<(usize, usize)> = zsticks.iter().map(|s| (idx(s.lo), idx(s.hi))).collect();
    pairs.sort_unstable();
    if pairs == [(1, 3), (1, 4), (2, 3), (2, 4)] {
        Some((levels[1], levels[2]))
    } else {
        None
    }
}

/// The polygon's single maximal arc in the plane z = `z`, as xy corner points
/// in traversal order. Panics if the plane holds no vertices.
fn plane_arc(p: &LatticePolygon, z: i32) -> Vec<[i32; 2]> {
    let v = p.vertices();
    let n = v.len();
    let start = (0..n)
        .find(|&i| v[i].z != z && v[(i + 1) % n].z == z)
        .expect("no arc in the requested plane");
    let mut arc = Vec::new();
    let mut i = (start + 1) % n;
    while v[i].z == z {
        arc.push([v[i].x, v[i].y]);
        i = (i + 1) % n;
    }
    debug_assert_eq!(
        arc.len(),
        v.iter().filter(|q| q.z == z).count(),
        "plane arc is not unique"
    );
    arc
}

/// Direction bitmask: +x = 1, +y = 2, -x = 4, -y = 8 (counterclockwise).
fn dir_bit(d: [i32; 2]) -> u8 {
    match d {
        [1, 0] => 1,
        [0, 1] => 2,
        [-1, 0] => 4,
        [0, -1] => 8,
        _ => unreachable!("not a unit axis direction"),
    }
}

/// Lattice points covered by the polyline, each mapped to the bitmask of
/// directions in which the polyline leaves that point.
fn cover(arc: &[[i32; 2]]) -> BTreeMap<[i32; 2], u8> {
    let mut m: BTreeMap<[i32; 2], u8> = BTreeMap::new();
    for w in arc.windows(2) {
        let (p, q) = (w[0], w[1]);
        let d = [(q[0] - p[0]).signum(), (q[1] - p[1]).signum()];
        let steps = (q[0] - p[0]).abs() + (q[1] - p[1]).abs();
        for k in 0..=steps {
            let pt = [p[0] + k * d[0], p[1] + k * d[1]];
            let mut bits = 0u8;
            if k < steps {
                bits |= dir_bit(d);
            }
            if k > 0 {
                bits |= dir_bit([-d[0], -d[1]]);
            }
            *m.entry(pt).or_insert(0) |= bits;
        }
    }
    m
}

/// Do two axis-parallel segments share a subsegment of positive length?
fn collinear_overlap(a: (&[i32; 2], &[i32; 2]), b: (&[i32; 2], &[i32; 2])) -> bool {
    let axis_of = |s: (&[i32; 2], &[i32; 2])| usize::from(s.0[0] == s.1[0]); // 0: x-dir, 1: y-dir
    let (ka, kb) = (axis_of(a), axis_of(b));
    if ka != kb {
        return false;
    }
    let fixed = 1 - ka;
    if a.0[fixed] != b.0[fixed] {
        return false;
    }
    let span = |s: (&[i32; 2], &[i32; 2])| (s.0[ka].min(s.1[ka]), s.0[ka].max(s.1[ka]));
    let (alo, ahi) = span(a);
    let (blo, bhi) = span(b);
    alo.max(blo) < ahi.min(bhi)
}

/// Classify every intersection between the projections of the open arcs in
/// the two middle z-levels.
pub fn middle_level_crossings(p: &LatticePolygon) -> Result<MiddleLevelReport, DiagramError> {
    if !is_properly_leveled(p) {
        return Err(DiagramError::NotProperlyLeveled);
    }
    let (l2, l3) = middle_z_levels(p).ok_or(DiagramError::WrongZStructure)?;
    let a2 = plane_arc(p, l2);
    let a3 = plane_arc(p, l3);

    let mut overlap_count = 0usize;
    for s in a2.windows(2) {
        for t in a3.windows(2) {
            if collinear_overlap((&s[0], &s[1]), (&t[0], &t[1])) {
                overlap_count += 1;
            }
        }
    }

    let m2 = cover(&a2);
    let m3 = cover(&a3);
    let closed: BTreeSet<[i32; 2]> = [a2[0], a2[a2.len() - 1], a3[0], a3[a3.len() - 1]]
        .into_iter()
        .collect();

    let mut transverse_count = 0usize;
    let mut tangency_count = 0usize;
    for (q, &da) in &m2 {
        let Some(&db) = m3.get(q) else { continue };
        if closed.contains(q) {
            continue; // open arcs exclude their endpoints
        }
        if da & db != 0 {
            continue; // interior of a collinear overlap, counted above
        }
        // Both arcs pass once through q; the four departure directions fill
        // the compass. The crossing is transverse exactly when the two arcs
        // alternate around q, i.e. each runs straight through.
        if da == 0b0101 || da == 0b1010 {
            transverse_count += 1;
        } else {
            tangency_count += 1;
        }
    }

    Ok(MiddleLevelReport {
        transverse_count,
        tangency_count,
        overlap_count,
    })
}

/// Try to slide one middle-level stick past a parallel 3-stick subarc of the
/// other middle level, undoing a Reidemeister-II pair in the projection.
///
/// The sweep happens inside the stick's own z-plane, so the move is an
/// isotopy as long as the swept rectangle avoids the rest of that plane's
/// arc and every z-stick puncturing the plane. Candidates are tried in
/// traversal order; the first that keeps the polygon valid, keeps the stick
/// count, and drops the projection crossing count by exactly two is
/// returned.
pub fn lattice_r2_reduce(p: &LatticePolygon) -> Result<R2Reduction, DiagramError> {
    if !is_properly_leveled(p) {
        return Err(DiagramError::NotProperlyLeveled);
    }
    let Some((l2, l3)) = middle_z_levels(p) else {
        return Ok(R2Reduction::NoMove);
    };
    let base = project(p).crossing_number();
    if base < 2 {
        return Ok(R2Reduction::NoMove);
    }

    for (ls, lb) in [(l2, l3), (l3, l2)] {
        let arc_s = plane_arc(p, ls);
        let arc_b = plane_arc(p, lb);
        if arc_s.len() < 4 {
            continue; // the moving stick needs in-plane neighbors
        }
        for si in 1..arc_s.len() - 2 {
            if let Some(moved) = try_slide(p, ls, &arc_s, si, &arc_b, base) {
                return Ok(R2Reduction::Reduced(moved));
            }
        }
    }
    Ok(R2Reduction::NoMove)
}

/// Attempt the Figure-3 slide for segment `si` of the arc at level `ls`
/// against every admissible 3-stick subarc of the other middle arc.
fn try_slide(
    p: &LatticePolygon,
    ls: i32,
    arc_s: &[[i32; 2]],
    si: usize,
    arc_b: &[[i32; 2]],
    base: usize,
) -> Option<LatticePolygon> {
    let (sp, sq) = (arc_s[si], arc_s[si + 1]);
    // In-plane coordinate indices: `k` along the stick, `m` the slide axis.
    let k = usize::from(sp[0] == sq[0]);
    let m = 1 - k;
    let u_s = sp[m];
    let (w_lo, w_hi) = (sp[k].min(sq[k]), sp[k].max(sq[k]));

    if arc_b.len() < 4 {
        return None;
    }
    for bj in 1..arc_b.len() - 2 {
        let (bp, bq) = (arc_b[bj], arc_b[bj + 1]);
        if bp[m] != bq[m] || bp[m] == u_s {
            continue; // not parallel to the slider, or same line
        }
        let u_b = bp[m];
        // Flanking sticks a (before b) and c (after b) must both cross the
        // slider's interior.
        let crosses = |far: [i32; 2], near: [i32; 2]| {
            let w = near[k];
            w_lo < w
                && w < w_hi
                && u_s > far[m].min(near[m])
                && u_s < far[m].max(near[m])
        };
        if !crosses(arc_b[bj - 1], bp) || !crosses(arc_b[bj + 2], bq) {
            continue;
        }
        if let Some(moved) = slide_past(p, ls, arc_s, si, k, u_s, u_b, (w_lo, w_hi), base) {
            return Some(moved);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn slide_past(
    p: &LatticePolygon,
    ls: i32,
    arc_s: &[[i32; 2]],
    si: usize,
    k: usize,
    u_s: i32,
    u_b: i32,
    w_span: (i32, i32),
    base: usize,
) -> Option<LatticePolygon> {
    let m = 1 - k;
    let dir = (u_b - u_s).signum();
    // Scale the slide axis by 4 so the landing line 4*u_b + 2*dir is fresh.
    let target = 4 * u_b + 2 * dir;
    let (mu_lo, mu_hi) = ((4 * u_s).min(target), (4 * u_s).max(target));
    let (w_lo, w_hi) = w_span;

    // The swept rectangle must avoid the rest of this plane's arc...
    for (j, w) in arc_s.windows(2).enumerate() {
        if j + 1 >= si && j <= si + 1 {
            continue; // the slider and its two adjusting neighbors
        }
        let (a, b) = (w[0], w[1]);
        let (jlo, jhi) = (a[k].min(b[k]), a[k].max(b[k]));
        let (jmlo, jmhi) = (4 * a[m].min(b[m]), 4 * a[m].max(b[m]));
        if jlo <= w_hi && w_lo <= jhi && jmlo <= mu_hi && mu_lo <= jmhi {
            return None;
        }
    }
    // ...and every z-stick puncturing the plane.
    for st in p.sticks() {
        if st.axis == Axis::Z && st.lo < ls && ls < st.hi {
            let pt = st.cross; // [x, y]
            if pt[k] >= w_lo && pt[k] <= w_hi && 4 * pt[m] >= mu_lo && 4 * pt[m] <= mu_hi {
                return None;
            }
        }
    }

    // Rebuild: scale the slide axis, reposition the slider's endpoints, then
    // compress the axis back to consecutive coordinates.
    let move_axis = if m == 0 { Axis::X } else { Axis::Y };
    let e0 = lift(arc_s[si], ls);
    let e1 = lift(arc_s[si + 1], ls);
    let scaled: Vec<i32> = p
        .vertices()
        .iter()
        .map(|&v| {
            if v == e0 || v == e1 {
                target
            } else {
                4 * v.get(move_axis)
            }
        })
        .collect();
    let levels: Vec<i32> = scaled.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let verts: Vec<LatticePoint> = p
        .vertices()
        .iter()
        .zip(&scaled)
        .map(|(&v, &c)| {
            let mut v = v;
            v.set(move_axis, levels.binary_search(&c).unwrap() as i32);
            v
        })
        .collect();

    let rebuilt = LatticePolygon::from_vertices(verts.iter().map(|v| v.as_array())).ok()?;
    if rebuilt.len() != p.len() {
        return None;
    }
    let leveled = make_properly_leveled(&rebuilt).ok()?;
    if leveled.len() != p.len() || project(&leveled).crossing_number() + 2 != base {
        return None;
    }
    Some(leveled)
}

fn lift(xy: [i32; 2], z: i32) -> LatticePoint {
    LatticePoint::new(xy[0], xy[1], z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolygon;

    /// 18-stick properly leveled unknot in the four-z-stick normal form. The
    /// lower middle level holds a single long x-stick `s` flanked by two
    /// y-sticks; the upper middle level holds a 3-stick U whose legs cross
    /// p(s) twice. Sliding s past the U removes exactly those two crossings.
    fn figure3_pattern() -> LatticePolygon {
        LatticePolygon::from_vertices([
            // arc at z = 1: left leg, slider s, right leg
            (0, 2, 1),
            (0, 3, 1),
            (6, 3, 1),
            (6, -1, 1),
            // z-stick 23, then the arc at z = 2 with the U (legs x=4 and
            // x=2, top y=5)
            (6, -1, 2),
            (5, -1, 2),
            (5, 1, 2),
            (4, 1, 2),
            (4, 5, 2),
            (2, 5, 2),
            (2, 0, 2),
            (1, 0, 2),
            // z-stick 13 down to the bottom level
            (1, 0, 0),
            (1, -2, 0),
            (8, -2, 0),
            // z-stick 14 up to the top level
            (8, -2, 3),
            (0, -2, 3),
            (0, 2, 3),
            // closes through z-stick 24 back to (0,2,1)
        ])
        .unwrap()
    }

    #[test]
    fn fixture_is_properly_leveled_with_the_z_structure() {
        let p = figure3_pattern();
        assert_eq!(p.len(), 18);
        assert!(is_properly_leveled(&p));
        assert_eq!(middle_z_levels(&p), Some((1, 2)));
    }

    #[test]
    fn middle_crossings_are_transverse_on_the_fixture() {
        let r = middle_level_crossings(&figure3_pattern()).unwrap();
        assert_eq!(
            r,
            MiddleLevelReport {
                transverse_count: 2,
                tangency_count: 0,
                overlap_count: 0,
            }
        );
    }

    #[test]
    fn wrong_z_structure_is_reported() {
        // Properly leveled hexagonal unknot: only two z-sticks.
        let hexagon = LatticePolygon::from_vertices([
            (0, 0, 0),
            (1, 0, 0),
            (1, 1, 0),
            (1, 1, 1),
            (0, 1, 1),
            (0, 0, 1),
        ])
        .unwrap();
        assert_eq!(
            middle_level_crossings(&hexagon).unwrap_err(),
            DiagramError::WrongZStructure
        );
        assert_eq!(lattice_r2_reduce(&hexagon).unwrap(), R2Reduction::NoMove);
    }

    #[test]
    fn planar_polygon_is_rejected() {
        let square =
            LatticePolygon::from_vertices([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]).unwrap();
        assert_eq!(
            middle_level_crossings(&square).unwrap_err(),
            DiagramError::NotProperlyLeveled
        );
        assert_eq!(
            lattice_r2_reduce(&square).unwrap_err(),
            DiagramError::NotProperlyLeveled
        );
    }

    #[test]
    fn figure3_slide_removes_two_crossings() {
        let p = figure3_pattern();
        let before = project(&p).crossing_number();
        let R2Reduction::Reduced(q) = lattice_r2_reduce(&p).unwrap() else {
            panic!("expected a reduction");
        };
        assert_eq!(q.len(), p.len());
        assert!(is_properly_leveled(&q));
        assert_eq!(project(&q).crossing_number() + 2, before);
        assert_eq!(q.stick_counts().sorted(), p.stick_counts().sorted());
    }
}
